//! Idempotent loops, their components and traces, and the output of a
//! pumped run against its prediction.

use untwist::loops::predicted_pump_output;
use untwist::{components_of, enumerate_loops, enumerate_runs, fixtures, pump, Caps};

pub fn run_example() -> String {
    let t = fixtures::load("T_COPY_AB");
    let u = t.parse_input("ab").unwrap();
    let run = enumerate_runs(&t, &u, &Caps::default()).unwrap().remove(0);
    let mut s = String::new();
    for lp in enumerate_loops(&run, true) {
        let comps = components_of(&run, &lp);
        s.push_str(&format!("loop [{},{}]\n", lp.x1, lp.x2));
        for c in &comps {
            let dir = if c.left_to_right {
                "left-to-right"
            } else {
                "right-to-left"
            };
            s.push_str(&format!(
                "  levels {:?} {dir} anchor {} trace \"{}\"\n",
                c.levels,
                c.anchor,
                t.render_output(&c.trace_output(&run))
            ));
        }
        let (word, pumped) = pump(&t, &run, &lp, 3).unwrap();
        let predicted = predicted_pump_output(&run, &comps, 2);
        s.push_str(&format!(
            "  pumped input \"{}\" -> \"{}\" (predicted \"{}\")\n",
            t.render_input(&word),
            t.render_output(pumped.output()),
            t.render_output(&predicted)
        ));
    }
    s
}

fn main() {
    print!("{}", run_example());
}
