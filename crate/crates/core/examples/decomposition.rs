//! Split a run into diagonals and blocks.

use untwist::{
    build_decomposition, enumerate_runs, fixtures, Caps, Outcome, PeriodBound, RunAnalysis,
};

pub fn run_example() -> String {
    let t = fixtures::load("T_RUNNING");
    let u = t.parse_input("abc$ab$abc$ab").unwrap();
    let run = enumerate_runs(&t, &u, &Caps::default()).unwrap().remove(0);
    let analysis = RunAnalysis::new(&run);
    match build_decomposition(&analysis, PeriodBound::Symbolic).unwrap() {
        Outcome::Decomposed(d) => format!(
            "output \"{}\"\n{}",
            t.render_output(run.output()),
            d.render(&run)
        ),
        Outcome::Unsafe(_) => "unsafe inversion\n".to_string(),
    }
}

fn main() {
    print!("{}", run_example());
}
