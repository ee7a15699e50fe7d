//! Every shipped example runs and reports what it claims.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[allow(dead_code)]
        #[path = $path]
        mod $name;
    };
}

example!(constants, "../examples/constants.rs");
example!(crossing_sequences, "../examples/crossing_sequences.rs");
example!(decide_oneway, "../examples/decide_oneway.rs");
example!(decide_sweeping, "../examples/decide_sweeping.rs");
example!(decomposition, "../examples/decomposition.rs");
example!(effect_semigroup, "../examples/effect_semigroup.rs");
example!(enumerate_runs, "../examples/enumerate_runs.rs");
example!(factorization_forest, "../examples/factorization_forest.rs");
example!(flow_product, "../examples/flow_product.rs");
example!(inversions, "../examples/inversions.rs");
example!(loops_and_pumping, "../examples/loops_and_pumping.rs");
example!(oneway_simulation, "../examples/oneway_simulation.rs");
example!(parse_transducer, "../examples/parse_transducer.rs");
example!(periods, "../examples/periods.rs");

#[test]
fn reports() {
    assert!(constants::run_example().contains("B = 4100"));
    assert!(crossing_sequences::run_example().contains("cut 1: [q1 q4 q5]"));
    let d = decide_oneway::run_example();
    assert!(
        d.contains("T_COPY_AB: refuted on input \"ab\"") && d.contains("certificate valid: true"),
        "{d}"
    );
    let s = decide_sweeping::run_example();
    assert!(
        s.contains("1 pass(es): refuted") && s.contains("2 pass(es): no counterexample up to 5"),
        "{s}"
    );
    assert_eq!(decomposition::run_example().matches("piece").count(), 5);
    assert!(effect_semigroup::run_example().contains("bottom reachable: false"));
    assert!(enumerate_runs::run_example().contains("output: \"abba\""));
    assert!(factorization_forest::run_example().starts_with("height 3 verified true"));
    assert!(flow_product::run_example()
        .contains("F ∘ F = flow{LL:{(0,1),(2,3)}, LR:{(4,0)}, RL:{}, RR:{(1,2),(3,4)}}"));
    let i = inversions::run_example();
    assert!(
        i.contains("unsafe") && i.contains("period Some(3): safe"),
        "{i}"
    );
    for line in loops_and_pumping::run_example()
        .lines()
        .filter(|l| l.contains("pumped input"))
    {
        let quoted: Vec<&str> = line.split('"').collect();
        assert_eq!(quoted[3], quoted[5], "{line}");
    }
    let o = oneway_simulation::run_example();
    assert!(
        o.contains("output \"abcabcabcabc\", left to right: true") && o.contains("absent"),
        "{o}"
    );
    assert!(parse_transducer::run_example().contains("valid: true"));
    assert!(periods::run_example().contains("TooShort { len: 5, needed: 6 }"));
}
