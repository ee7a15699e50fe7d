//! Inversions of a run and whether their words are periodic enough to be
//! harmless.

use untwist::inversion::InversionKind;
use untwist::{enumerate_runs, fixtures, Caps, PeriodBound, RunAnalysis};

pub fn run_example() -> String {
    let mut s = String::new();
    for (name, input) in [("T_COPY_AB", "ab"), ("T_COPY_ABC", "abcabc")] {
        let t = fixtures::load(name);
        let u = t.parse_input(input).unwrap();
        let run = enumerate_runs(&t, &u, &Caps::default()).unwrap().remove(0);
        let a = RunAnalysis::new(&run);
        let invs = a.inversions(InversionKind::Inversion);
        s.push_str(&format!(
            "{name} on \"{input}\": {} inversion(s)\n",
            invs.len()
        ));
        for inv in invs.iter().take(3) {
            let r = a.period_report(inv, PeriodBound::Symbolic);
            let verdict = if r.safe { "safe" } else { "unsafe" };
            s.push_str(&format!(
                "  word \"{}\" gcd {} period {:?}: {verdict}\n",
                t.render_output(&r.word),
                r.gcd,
                r.found_period
            ));
        }
    }
    s
}

fn main() {
    print!("{}", run_example());
}
