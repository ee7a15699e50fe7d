//! Replay a two-way run left to right, the way a one-way machine would.

use untwist::{fixtures, simulate_oneway, Caps, PeriodBound};

pub fn run_example() -> String {
    let t = fixtures::load("T_COPY_ABC");
    let u = t.parse_input("abcabc").unwrap();
    let sim = simulate_oneway(&t, &u, PeriodBound::Symbolic, &Caps::default())
        .unwrap()
        .expect("in the domain");
    let mut s = sim.replay.render(&t);
    s.push_str(&format!(
        "output \"{}\", left to right: {}\n",
        t.render_output(sim.output()),
        sim.replay.is_left_to_right()
    ));
    let copy = fixtures::load("T_COPY_AB");
    let absent = simulate_oneway(
        &copy,
        &copy.parse_input("ab").unwrap(),
        PeriodBound::Symbolic,
        &Caps::default(),
    )
    .unwrap();
    s.push_str(&format!(
        "T_COPY_AB on \"ab\": {}\n",
        if absent.is_none() {
            "absent"
        } else {
            "simulated"
        }
    ));
    s
}

fn main() {
    print!("{}", run_example());
}
