//! List the successful runs of the mirror transducer and dump one of them.

use untwist::{enumerate_runs, fixtures, Caps};

pub fn run_example() -> String {
    let t = fixtures::load("T_MIRROR");
    let u = t.parse_input("ab").unwrap();
    let runs = enumerate_runs(&t, &u, &Caps::default()).unwrap();
    let mut s = format!("{} run(s) on \"ab\"\n", runs.len());
    s.push_str(&runs[0].dump(&t));
    s
}

fn main() {
    print!("{}", run_example());
}
