//! The size constants of a transducer, kept exact and factored.

use untwist::constants::{constants, constants_for, DEFAULT_BIT_CAP};
use untwist::decide::symbolic_passes;
use untwist::fixtures;

pub fn run_example() -> String {
    let t = fixtures::load("T_MIRROR");
    let c = constants(&t, false, DEFAULT_BIT_CAP);
    let (factor, exponent) = symbolic_passes(&t);
    let tiny = constants_for(1, 1, true, DEFAULT_BIT_CAP);
    format!(
        "T_MIRROR: h_max {} e_max {} B = {}\nsweeping passes = {factor}·(2^{exponent}+1)\none state, one letter: B = {}\n",
        c.h_max,
        c.e_max,
        c.b_factored,
        tiny.b.expect("small enough to expand")
    )
}

fn main() {
    print!("{}", run_example());
}
