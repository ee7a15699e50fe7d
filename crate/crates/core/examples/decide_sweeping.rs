//! How many sweeping passes the mirror function needs.

use untwist::{decide_sweeping_bounded, fixtures, DecideOptions, PassBound};

pub fn run_example() -> String {
    let t = fixtures::load("T_MIRROR");
    let opts = DecideOptions::new(5);
    let mut s = String::new();
    for passes in [
        PassBound::Finite(1),
        PassBound::Finite(2),
        PassBound::Symbolic,
    ] {
        let v = decide_sweeping_bounded(&t, passes, &opts).unwrap();
        s.push_str(&format!("{passes} pass(es): {}", v.summary()));
        if let Some(p) = &v.proxy {
            s.push_str(&format!(" (at {} passes: {})", opts.pass_cap, p.summary()));
        }
        s.push('\n');
    }
    s
}

fn main() {
    print!("{}", run_example());
}
