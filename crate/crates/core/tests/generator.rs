use ssc_core::check::{check_tm, infer_ty_level, wf_ctx};
use ssc_core::gen::{Cx, Gen, GenConfig};
use ssc_core::tel::{check_lifted_eq, gen_lifted_eq};
use ssc_core::Ty;

fn gen(seed: u64) -> Gen {
    Gen::new(GenConfig { seed, max_depth: 4, ..GenConfig::default() })
}

#[test]
fn samples_typecheck() {
    let mut g = gen(1);
    let mut ok = 0;
    for i in 0..1000 {
        let len = i % 3;
        let cx = g.retry(|g| g.ctx(len, 4)).unwrap();
        wf_ctx(&cx.ctx).unwrap();
        // uninhabited types are resampled
        let (a, t) = g
            .retry(|g| {
                let a = g.ty(&cx, 4)?;
                let t = g.tm(&cx, &a, 4)?;
                Ok((a, t))
            })
            .unwrap();
        infer_ty_level(&cx.ctx, &a).unwrap_or_else(|e| panic!("{a}: {e}"));
        check_tm(&cx.ctx, &t, &a).unwrap_or_else(|e| panic!("{} |- {t} : {a}: {e}", cx.ctx));
        ok += 1;
    }
    assert_eq!(ok, 1000);
}

#[test]
fn top_inhabitant() {
    let mut g = gen(3);
    let cx = Cx::empty();
    let t = g.tm(&cx, &Ty::Top, 1).unwrap();
    assert_eq!(t, ssc_core::Tm::Tt);
}

#[test]
fn determinism() {
    let run = |seed| {
        let mut g = gen(seed);
        let cx = g.retry(|g| g.ctx(2, 4)).unwrap();
        let a = g.retry(|g| g.ty(&cx, 4)).unwrap();
        format!("{} {}", cx.ctx, a)
    };
    assert_eq!(run(7), run(7));
    assert_ne!(run(7), run(8));
}

#[test]
fn lifted_equations() {
    let mut g = gen(11);
    for n in 1..=4u8 {
        for i in 0..60 {
            let term = i % 2 == 1;
            let (ctx, tel, pl) = gen_lifted_eq(&mut g, n, 1 + i % 3, term, 4).unwrap();
            let ok = check_lifted_eq(n, &ctx, &tel, &pl)
                .unwrap_or_else(|e| panic!("eq {n}: {ctx} {tel} {}: {e}", pl.body));
            assert!(ok, "eq {n}: {ctx} {tel} {}", pl.body);
        }
    }
}
