use ssc_core::cwf::*;
use ssc_core::gen::{Gen, GenConfig};

fn gen(seed: u64) -> Gen {
    Gen::new(GenConfig { seed, max_depth: 4, ..GenConfig::default() })
}

#[test]
fn ssc_side_roundtrips() {
    let mut g = gen(21);
    let mut cov = Coverage::default();
    for _ in 0..200 {
        let (ctx, a, t) = sample_ssc(&mut g, 4).unwrap();
        cov.ty(&a);
        cov.tm(&t);
        assert!(roundtrip_ssc_ty(&ctx, &a).unwrap(), "{ctx} |- {a}");
        assert!(roundtrip_ssc_tm(&ctx, &t, &a).unwrap(), "{ctx} |- {t} : {a}");
    }
    for k in TY_FORMERS.iter().chain(TM_FORMERS).chain(SSC_SUBS) {
        assert!(cov.count(k) >= 5, "{k}: {cov:?}");
    }
}

#[test]
fn cwf_side_roundtrips() {
    let mut g = gen(22);
    let mut cov = Coverage::default();
    for _ in 0..200 {
        let (ctx, a, t) = sample_cwf(&mut g, 4).unwrap();
        cwf_wf_ctx(&ctx).unwrap();
        cwf_level(&ctx, &a).unwrap_or_else(|e| panic!("{ctx} |- {a}: {e}"));
        cwf_check(&ctx, &t, &a).unwrap_or_else(|e| panic!("{ctx} |- {t} : {a}: {e}"));
        for e in &ctx.entries {
            cov.ty(e);
        }
        cov.ty(&a);
        cov.tm(&t);
        assert!(roundtrip_cwf_ty(&ctx, &a).unwrap(), "{ctx} |- {a}");
        assert!(roundtrip_cwf_tm(&ctx, &t, &a).unwrap(), "{ctx} |- {t} : {a}");
        let (dom, s) = sample_cwf_sub(&mut g, 4).unwrap();
        cov.sub(&s);
        assert!(roundtrip_cwf_sub(&dom, &s).unwrap(), "{dom} |- {s}");
    }
    for k in TY_FORMERS.iter().chain(TM_FORMERS).chain(CWF_SUBS) {
        assert!(cov.count(k) >= 5, "{k}: {cov:?}");
    }
}
