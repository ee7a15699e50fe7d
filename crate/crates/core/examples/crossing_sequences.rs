//! Crossing sequences at every cut of a small two-way run.

use untwist::{enumerate_runs, fixtures, Caps};

pub fn run_example() -> String {
    let t = fixtures::load("FIG1");
    let u = t.parse_input("ab").unwrap();
    let run = enumerate_runs(&t, &u, &Caps::default()).unwrap().remove(0);
    let mut s = String::new();
    for x in 0..=run.omega() {
        let states: Vec<&str> = run
            .crossing_sequence(x)
            .iter()
            .map(|&q| t.state_name(q))
            .collect();
        s.push_str(&format!("cut {x}: [{}]\n", states.join(" ")));
    }
    s
}

fn main() {
    print!("{}", run_example());
}
