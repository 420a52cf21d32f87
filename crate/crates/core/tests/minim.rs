use ssc_core::gen::{Gen, GenConfig};
use ssc_core::minim::*;
use ssc_core::Error;

#[test]
fn equivalence_at_depth_four() {
    let mut g = Gen::new(GenConfig { seed: 0, max_depth: 4, ..GenConfig::default() });
    let rows = equivalence_check(&mut g, 20, 4);
    for r in &rows {
        assert_eq!(r.failed, 0, "{} ({}): {:?}", r.name, r.direction, r.counterexample);
        assert_eq!(r.passed, 20);
    }
    assert_eq!(rows.len(), DERIVATIONS.len() + CONDITIONAL.len() + UNCONDITIONAL.len());
}

#[test]
fn empty_context_instances() {
    // contexts of length zero are drawn regularly; force a few by seed sweep
    for seed in 0..10 {
        let mut g = Gen::new(GenConfig { seed, max_depth: 2, ..GenConfig::default() });
        for d in DERIVATIONS {
            let s = d.site(&mut g, 2).unwrap();
            d.verify(&s).unwrap_or_else(|e| panic!("{}: {e}", d.name));
        }
    }
}

#[test]
fn builtin_chain_shapes() {
    let rules = |n: &str| -> Vec<String> { derive_full_axiom(n).unwrap().steps.iter().map(|s| s.rule.clone()).collect() };
    assert_eq!(rules("[p][+]:ty"), ["U-beta", "El[]", "El[]", "[p][+]'", "El[]", "El[]", "U-beta"]);
    assert_eq!(
        rules("[<>][]"),
        ["U-beta", "c[]", "c[]", "Pi-beta-U", "app[]'", "lam[]", "Pi-beta-U", "c[]", "c[]", "U-beta"]
    );
    assert_eq!(rules("Pi-beta-U"), ["q[<>]", "[p][<>]:tm", "app[]'", "Pi-beta'"]);
    assert_eq!(rules("[p+][<q>]"), ["U-beta", "El[]", "El[]", "Pi-beta-U", "lam[]", "Pi-beta'", "U-beta"]);
    assert_eq!(rules("q[+]"), ["q[+]'"]);
}

#[test]
fn corrupted_chains_are_rejected() {
    for d in DERIVATIONS {
        let chain = derive_full_axiom(d.name).unwrap();
        for k in 1..=chain.steps.len() {
            let bad = corrupt(&chain, k, "U-eta");
            match replay(&bad, &d.allowed()) {
                Err(Error::StepMismatch { index, .. }) => assert_eq!(index, k),
                other => panic!("{} step {k}: {other:?}", d.name),
            }
        }
    }
}
