//! Property tests over generated syntax. proptest drives the seed and the
//! depth; the generator builds well-typed samples from them.

use proptest::prelude::*;

use ssc_core::alphanorm::{alpha_norm_tm, alpha_norm_ty, is_alpha_tm, is_alpha_ty};
use ssc_core::check::{check_tm, infer_tm, infer_ty_level};
use ssc_core::eval::{conv_tm, conv_ty, normalize_tm, normalize_ty};
use ssc_core::gen::{Cx, Gen, GenConfig};
use ssc_core::par::{star_inst_tm, star_inst_ty, SubStar};
use ssc_core::{cwf, tel, SubS, Tm, Ty};

fn gen(seed: u64, depth: u32) -> Gen {
    Gen::new(GenConfig { seed, max_depth: depth, ..GenConfig::default() })
}

/// A context, a type in it and a term of that type.
fn sample(seed: u64, depth: u32) -> (Cx, Ty, Tm) {
    let mut g = gen(seed, depth);
    g.retry(|g| {
        let len = g.below(4);
        let cx = g.ctx(len, depth)?;
        let a = g.ty(&cx, depth)?;
        let t = g.tm(&cx, &a, depth)?;
        Ok((cx, a, t))
    })
    .expect("generator exhausted")
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generated_samples_check(seed in any::<u64>(), depth in 1u32..=4) {
        let (cx, a, t) = sample(seed, depth);
        infer_ty_level(&cx.ctx, &a).unwrap();
        check_tm(&cx.ctx, &t, &a).unwrap();
    }

    #[test]
    fn samples_are_deterministic(seed in any::<u64>(), depth in 1u32..=4) {
        let (x, y) = (sample(seed, depth), sample(seed, depth));
        prop_assert_eq!(format!("{} {} {}", x.0.ctx, x.1, x.2), format!("{} {} {}", y.0.ctx, y.1, y.2));
    }

    #[test]
    fn normal_forms_check_against_normal_types(seed in any::<u64>(), depth in 1u32..=4) {
        let (cx, a, t) = sample(seed, depth);
        let na: Ty = normalize_ty(&cx.ctx, &a).unwrap().to_ty();
        let nt: Tm = normalize_tm(&cx.ctx, &t, &a).unwrap().to_tm();
        check_tm(&cx.ctx, &nt, &na).unwrap();
    }

    #[test]
    fn normalisation_is_idempotent(seed in any::<u64>(), depth in 1u32..=4) {
        let (cx, a, t) = sample(seed, depth);
        let na = normalize_ty(&cx.ctx, &a).unwrap();
        prop_assert_eq!(&normalize_ty(&cx.ctx, &na.to_ty::<SubS>()).unwrap(), &na);
        let nt = normalize_tm(&cx.ctx, &t, &a).unwrap();
        prop_assert_eq!(normalize_tm(&cx.ctx, &nt.to_tm::<SubS>(), &a).unwrap(), nt);
    }

    #[test]
    fn inferred_types_agree(seed in any::<u64>(), depth in 1u32..=4) {
        let mut g = gen(seed, depth);
        let (cx, t) = g
            .retry(|g| {
                let len = g.below(4);
                let cx = g.ctx(len, depth)?;
                let (t, _) = g.infer(&cx, depth)?;
                Ok((cx, t))
            })
            .unwrap();
        let (a, b) = (infer_tm(&cx.ctx, &t).unwrap(), infer_tm(&cx.ctx, &t).unwrap());
        prop_assert!(conv_ty(&cx.ctx, &a, &b).unwrap());
    }

    /// `t`, its alpha normal form and its normal form are pairwise
    /// convertible, in both orders.
    #[test]
    fn conversion_is_an_equivalence(seed in any::<u64>(), depth in 1u32..=4) {
        let (cx, a, t) = sample(seed, depth);
        let c = &cx.ctx;
        let xs = [t.clone(), alpha_norm_tm(c, &t, &a).unwrap(), normalize_tm(c, &t, &a).unwrap().to_tm()];
        for x in &xs {
            for y in &xs {
                prop_assert!(conv_tm(c, x, y, &a).unwrap(), "{} vs {}", x, y);
            }
        }
    }

    #[test]
    fn alpha_normal_forms(seed in any::<u64>(), depth in 1u32..=4) {
        let (cx, a, t) = sample(seed, depth);
        let (na, nt) = (alpha_norm_ty(&cx.ctx, &a).unwrap(), alpha_norm_tm(&cx.ctx, &t, &a).unwrap());
        prop_assert!(is_alpha_ty(&na), "{}", na);
        prop_assert!(is_alpha_tm(&nt), "{}", nt);
        prop_assert!(conv_ty(&cx.ctx, &a, &na).unwrap());
        prop_assert!(conv_tm(&cx.ctx, &t, &nt, &a).unwrap());
        prop_assert_eq!(alpha_norm_tm(&cx.ctx, &nt, &na).unwrap(), nt);
    }

    #[test]
    fn embedded_single_substitutions_are_instantiations(seed in any::<u64>(), depth in 1u32..=3) {
        let mut g = gen(seed, depth);
        let (a, t, s) = g
            .retry(|g| {
                let len = g.below(4);
                let cx = g.ctx(len, depth)?;
                let (s, cod, _) = g.sub(&cx, depth)?;
                let a = g.ty(&cod, depth)?;
                let t = g.tm(&cod, &a, depth)?;
                Ok((a, t, s))
            })
            .unwrap();
        let e = SubStar::emb(s.clone());
        prop_assert_eq!(star_inst_ty(&a, &e), Ty::sub(a.clone(), s.clone()));
        prop_assert_eq!(star_inst_tm(&t, &e), Tm::sub(t, s));
    }

    #[test]
    fn lifted_equations(seed in any::<u64>(), n in 1u8..=4, len in 1usize..=3, term in any::<bool>()) {
        let mut g = gen(seed, 3);
        let (ctx, tl, pl) = tel::gen_lifted_eq(&mut g, n, len, term, 3).unwrap();
        prop_assert!(tel::check_lifted_eq(n, &ctx, &tl, &pl).unwrap());
    }

    #[test]
    fn translations_roundtrip(seed in any::<u64>(), depth in 1u32..=4) {
        let mut g = gen(seed, depth);
        let (ctx, a, t) = cwf::sample_ssc(&mut g, depth).unwrap();
        prop_assert!(cwf::roundtrip_ssc_ty(&ctx, &a).unwrap());
        prop_assert!(cwf::roundtrip_ssc_tm(&ctx, &t, &a).unwrap());
        let (ctx, a, t) = cwf::sample_cwf(&mut g, depth).unwrap();
        prop_assert!(cwf::roundtrip_cwf_ty(&ctx, &a).unwrap());
        prop_assert!(cwf::roundtrip_cwf_tm(&ctx, &t, &a).unwrap());
    }
}

