//! Effects of the one-letter intervals of a run and the finite semigroup
//! they generate.

use untwist::effect::EffectTable;
use untwist::{effect_of_interval, enumerate_runs, fixtures, Caps};

pub fn run_example() -> String {
    let t = fixtures::load("T_MIRROR");
    let u = t.parse_input("abab").unwrap();
    let run = enumerate_runs(&t, &u, &Caps::default()).unwrap().remove(0);
    let mut table = EffectTable::new();
    let gens: Vec<_> = (1..run.omega() - 1)
        .map(|x| table.intern(effect_of_interval(&run, x, x + 1)))
        .collect();
    let (members, bottom) = table.closure(&gens, 10_000).expect("small closure");
    let idempotents = members.iter().filter(|&&e| table.is_idempotent(e)).count();
    let whole = effect_of_interval(&run, 1, run.omega() - 1);
    format!(
        "generators: {}\nclosure size: {}, idempotents: {idempotents}, bottom reachable: {bottom}\neffect of [1,{}]: {whole}\n",
        gens.len(),
        members.len(),
        run.omega() - 1
    )
}

fn main() {
    print!("{}", run_example());
}
