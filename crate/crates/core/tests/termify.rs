use ssc_core::check::infer_ty_level;
use ssc_core::gen::{Gen, GenConfig};
use ssc_core::syntax::{Ctx, Ty};
use ssc_core::termify::*;

fn gen(seed: u64) -> Gen {
    Gen::new(GenConfig { seed, max_depth: 3, ..GenConfig::default() })
}

const LEVEL_PAIRS: &[(u32, u32)] = &[(0, 1), (1, 2), (0, 2), (1, 1), (0, 0), (2, 2), (1, 0), (2, 0), (2, 1)];

/// Symbolic arguments at a pair of context levels: `a : Ty Γ i`,
/// `t : Tm a`, `g : Sub Δ Γ`, `d : Sub Θ Δ`.
struct Setup {
    params: Ctx,
    gam: TCon,
    a: TTy,
    t: TTm,
    g: TSub,
    d: TSub,
}

fn setup(gen: &mut Gen, lg: u32, ld: u32, i: u32) -> Setup {
    let gam = gen_con_at(gen, lg, 2).unwrap();
    let del = gen_con_at(gen, ld, 2).unwrap();
    let the = gen_con_at(gen, lg.max(ld), 2).unwrap();
    let mut ps = Params::default();
    let sa = ps.ty(&gam, i);
    let sg = ps.sub(&del, &gam);
    let sd = ps.sub(&the, &del);
    let a0 = ps.get_ty(sa, &gam, i);
    let st = ps.tm(&a0);
    let a = ps.get_ty(sa, &gam, i);
    let t = ps.get_tm(st, &a);
    let g = ps.get_sub(sg, &del, &gam);
    let d = ps.get_sub(sd, &the, &del);
    Setup { params: ps.ctx, gam, a, t, g, d }
}

fn same(what: &str, decorated: impl core::fmt::Display, plain: impl core::fmt::Display) {
    let (x, y) = (decorated.to_string(), plain.to_string());
    assert_eq!(x, y, "{what}: erased output differs from the plain display");
}

#[test]
fn erasure_matches_plain_definitions() {
    let mut r = gen(11);
    for &(lg, ld) in LEVEL_PAIRS {
        for i in 0..3 {
            let s = setup(&mut r, lg, ld, i);
            let (a, t, g, d) = (&s.a, &s.t, &s.g, &s.d);
            let e = erase_tm;
            same("id", e(&t_id(&s.gam).tm), plain::id());
            same("comp", e(&t_comp(g, d).unwrap().tm), plain::comp(&e(&g.tm), &e(&d.tm)));
            same("empty", erase_ty(&t_empty::<ssc_core::syntax::SubS>().ty), plain::empty());
            same("eps", e(&t_eps(&s.gam).tm), plain::eps());
            same("inst-ty", e(&t_inst_ty(a, g).unwrap().tm), plain::inst(&e(&a.tm), &e(&g.tm)));
            let tg = t_inst_tm(t, g).unwrap();
            same("inst-tm", e(&tg.tm), plain::inst(&e(&t.tm), &e(&g.tm)));
            same("ext", erase_ty(&t_ext(a).ty), plain::ext(&erase_ty(&s.gam.ty), &e(&a.tm)));
            let ag = t_inst_ty(a, g).unwrap();
            let tg = TTm { ty: ag.clone(), tm: tg.tm };
            let pr = t_pair(g, a, &tg).unwrap();
            same("pair", e(&pr.tm), plain::pair(&e(&g.tm), &e(&tg.tm)));
            same("p", e(&t_p(a).tm), plain::p());
            same("q", e(&t_q(a).tm), plain::q());
            let b = TTy { ctx: t_ext(a), level: i, tm: t_inst_ty(a, &t_p(a)).unwrap().tm };
            same("pi", e(&t_pi(a, &b).unwrap().tm), plain::pi(&e(&a.tm), &e(&b.tm)));
            let body = t_inst_tm(t, &t_p(a)).unwrap();
            let body = TTm { ty: b.clone(), tm: body.tm };
            same("lam", e(&t_lam(a, &body).unwrap().tm), plain::lam(&e(&body.tm)));
            same(
                "sub carrier",
                erase_ty(&g.carrier()),
                plain::sub_carrier(&erase_ty(&g.dom.ty), &erase_ty(&g.cod.ty)),
            );
            same("ty carrier", erase_ty(&a.carrier()), plain::ty_carrier(&erase_ty(&s.gam.ty), i));
            same("tm carrier", erase_ty(&t.carrier()), plain::tm_carrier(&erase_ty(&s.gam.ty), &e(&a.tm)));
        }
    }
}

#[test]
fn carrier_levels_follow_truncating_subtraction() {
    let mut r = gen(12);
    let empty = Ctx::empty();
    for &(l, i) in LEVEL_PAIRS {
        for _ in 0..4 {
            let gam = gen_con_at(&mut r, l, 3).unwrap();
            let del = gen_con_at(&mut r, i, 3).unwrap();
            assert_eq!(infer_ty_level(&empty, &gam.ty).unwrap(), l);
            let sub = infer_ty_level(&empty, &sub_carrier(&del, &gam)).unwrap();
            assert_eq!(sub, sub_carrier_level(i, l));
            assert_eq!(sub, (i + monus(l, i)).max(l + monus(i, l)));
            let ty = infer_ty_level(&empty, &ty_carrier(&gam, i)).unwrap();
            assert_eq!(ty, ty_carrier_level(l, i));
            assert_eq!(ty, (l + monus(i + 1, l)).max(i + 1 + monus(l, i + 1)));
            let a = t_u(&gam, i);
            check_ty(&empty, &a).unwrap();
            check_ty(&empty, &t_el(&t_c(&t_inst_ty(&a, &t_id(&gam)).unwrap())).unwrap()).unwrap();
            let mut ps = Params::default();
            let sa = ps.ty(&gam, i);
            let a = ps.get_ty(sa, &gam, i);
            let tm = infer_ty_level(&ps.ctx, &tm_carrier(&a)).unwrap();
            assert_eq!(tm, tm_carrier_level(l, i));
            assert_eq!(tm, (l + monus(i, l)).max(i + monus(l, i)));
        }
    }
}

#[test]
fn operations_typecheck_at_every_level_pair() {
    let mut r = gen(13);
    for &(lg, ld) in LEVEL_PAIRS {
        for i in 0..3 {
            let s = setup(&mut r, lg, ld, i);
            let ps = &s.params;
            check_sub(ps, &t_comp(&s.g, &s.d).unwrap()).unwrap();
            check_ty(ps, &t_inst_ty(&s.a, &s.g).unwrap()).unwrap();
            check_term(ps, &t_inst_tm(&s.t, &s.g).unwrap()).unwrap();
            check_con(ps, &t_ext(&s.a)).unwrap();
            check_sub(ps, &t_p(&s.a)).unwrap();
            check_term(ps, &t_q(&s.a)).unwrap();
            check_sub(ps, &t_lift_sub(&s.g, &s.a).unwrap()).unwrap();
            check_ty(ps, &t_lift(&s.a)).unwrap();
            check_ty(ps, &t_el(&t_c(&s.a)).unwrap()).unwrap();
        }
    }
}

#[test]
fn eps_on_the_empty_context_is_the_identity() {
    let top: TCon = t_empty();
    let empty = Ctx::empty();
    assert!(sides_conv(&empty, &Side::Sub(t_eps(&top)), &Side::Sub(t_id(&top))).unwrap());
    // not at a context with more than one element
    let u = TCon::new(1, Ty::U(0));
    assert!(!sides_conv(&empty, &Side::Sub(t_eps(&u)), &Side::Sub(t_id(&u))).unwrap_or(false));
}

#[test]
fn instantiation_by_identity() {
    let mut r = gen(14);
    for &(l, _) in LEVEL_PAIRS {
        for i in 0..3 {
            let gam = gen_con_at(&mut r, l, 3).unwrap();
            let mut ps = Params::default();
            let sa = ps.ty(&gam, i);
            let a = ps.get_ty(sa, &gam, i);
            let lhs = Side::Ty(t_inst_ty(&a, &t_id(&gam)).unwrap());
            assert!(sides_conv(&ps.ctx, &lhs, &Side::Ty(a)).unwrap());
            // closed: the universe below
            let u = t_u(&gam, i);
            let lhs = Side::Ty(t_inst_ty(&u, &t_id(&gam)).unwrap());
            assert!(sides_conv(&Ctx::empty(), &lhs, &Side::Ty(u)).unwrap());
        }
    }
}

#[test]
fn functor_law_endpoints() {
    let mut r = gen(15);
    for _ in 0..20 {
        let inst = functor_endpoints(&mut r, 3).unwrap();
        let (Side::Ty(l), Side::Ty(rt)) = (&inst.lhs, &inst.rhs) else { panic!("functor law is a type equation") };
        assert_eq!(l.level, rt.level);
        assert!(inst.holds().unwrap(), "A[γ∘δ] vs A[γ][δ]:\n{}\n{}", inst.lhs, inst.rhs);
    }
}

#[test]
fn law_table_is_complete() {
    let names = law_names();
    for n in [
        "assoc", "id-left", "id-right", "eps-eta", "ty-id", "ty-comp", "tm-id", "tm-comp", "ext-beta1",
        "ext-beta2", "ext-eta", "ext-nat", "Pi[]", "lam[]", "app[]", "Pi-beta", "Pi-eta", "U[]", "El[]", "c[]",
        "U-beta", "U-eta", "Lift[]", "mk[]", "un[]", "Lift-beta", "Lift-eta", "Top[]", "tt[]", "Top-eta",
        "Sigma[]", "pair[]", "fst[]", "snd[]", "Sigma-beta1", "Sigma-beta2", "Sigma-eta",
    ] {
        assert!(names.contains(&n), "missing law {n}");
        assert!(find(n).is_some());
    }
    assert_eq!(names.len(), 37);
}

#[test]
fn every_emitted_definition_checks() {
    let mut r = gen(16);
    for &(lg, ld) in LEVEL_PAIRS {
        for i in 0..3 {
            for op in EMIT_OPS {
                let e = emit(op, &mut r, lg, ld, i).unwrap_or_else(|err| panic!("{op} at {lg} {ld} {i}: {err}"));
                e.def.check(&e.params).unwrap_or_else(|err| panic!("{op} at {lg} {ld} {i}: {err}\n{}", e.def));
                if let Some(p) = &e.plain {
                    assert_eq!(e.erased().to_string(), p.to_string(), "{op} at {lg} {ld} {i}");
                }
            }
        }
    }
}
