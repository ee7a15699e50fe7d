//! A minimum-height factorization forest over the cuts of a run.

use untwist::forest::{build_forest, verify_forest};
use untwist::{enumerate_runs, fixtures, Caps};

pub fn run_example() -> String {
    let t = fixtures::load("T_ID");
    let u = t.parse_input("abbab").unwrap();
    let run = enumerate_runs(&t, &u, &Caps::default()).unwrap().remove(0);
    let xs: Vec<usize> = (0..=run.omega()).collect();
    let forest = build_forest(&run, &xs).unwrap();
    format!(
        "height {} verified {}\n{}",
        forest.height(),
        verify_forest(&run, &forest),
        forest.render()
    )
}

fn main() {
    print!("{}", run_example());
}
