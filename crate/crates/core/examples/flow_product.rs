//! Compose a five-level flow with itself by following paths through the
//! shared border.

use untwist::Flow;

pub fn run_example() -> String {
    let f = Flow::new(5, 5, &[(0, 1), (1, 3), (3, 4), (4, 2), (2, 0)]).expect("well-formed flow");
    let ff = f.compose(&f).expect("borders match");
    format!("F     = {f}\nF ∘ F = {ff}\n")
}

fn main() {
    print!("{}", run_example());
}
