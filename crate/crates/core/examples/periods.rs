//! Least periods, dividing periods and the Fine–Wilf check.

use untwist::period::{fine_wilf_check, has_dividing_period, smallest_period, Alignment};
use untwist::PeriodBound;

pub fn run_example() -> String {
    let w = b"abaabaab";
    let mut s = format!(
        "least period of abaabaab: {}\n",
        smallest_period(w).unwrap()
    );
    s.push_str(&format!(
        "dividing period for lengths 6 and 9: {:?}\n",
        has_dividing_period(w, 6, 9, PeriodBound::Symbolic)
    ));
    // `aabaa` has periods 3 and 4 but is one letter short of forcing period 1.
    let short = fine_wilf_check(
        b"aabaa",
        3,
        b"aabaa",
        4,
        Alignment {
            start1: 0,
            start2: 0,
            len: 5,
        },
    );
    let long = fine_wilf_check(
        b"aaaaaa",
        3,
        b"aaaaaa",
        4,
        Alignment {
            start1: 0,
            start2: 0,
            len: 6,
        },
    );
    s.push_str(&format!(
        "aabaa with periods 3, 4: {short:?}\naaaaaa with periods 3, 4: {long:?}\n"
    ));
    s
}

fn main() {
    print!("{}", run_example());
}
