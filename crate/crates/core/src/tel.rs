//! Telescopes, lifting over them, and the lifted substitution equations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::check::Scope;
use crate::error::{ill, Result};
use crate::eval::{conv_tm, conv_ty};
use crate::gen::{Cx, Gen};
use crate::par::{star_inst_tm, star_inst_ty, SubStar};
use crate::syntax::{Ctx, SubS, Tm, Ty};

pub use crate::gen::{gen_sub, gen_tel, gen_tm, gen_ty, GenConfig, Weights};

/// A telescope over `base`; entry `k` lives in `base` extended by the
/// entries before it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tel {
    pub base: Ctx,
    pub entries: Vec<Ty>,
}

impl Tel {
    pub fn empty(base: Ctx) -> Tel {
        Tel { base, entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Tel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(tel")?;
        for e in &self.entries {
            write!(f, " {e}")?;
        }
        write!(f, ")")
    }
}

pub fn tel_append(ctx: &Ctx, tel: &Tel) -> Ctx {
    let mut out = ctx.clone();
    for e in &tel.entries {
        out.push(e.clone());
    }
    out
}

/// Entry `k` instantiated by `s^{+k}`, without checking.
pub fn inst_entries(entries: &[Ty], s: &SubS) -> Vec<Ty> {
    entries.iter().enumerate().map(|(k, e)| Ty::sub(e.clone(), s.clone().plus_n(k))).collect()
}

/// `Ω[γ]` for `γ : Sub Δ Γ`, rebased at `dom`.
pub fn tel_inst(tel: &Tel, s: &SubS, dom: &Ctx) -> Result<Tel> {
    let out = Tel { base: dom.clone(), entries: inst_entries(&tel.entries, s) };
    Scope::from_ctx(&tel_append(dom, &out))?;
    Ok(out)
}

/// `γ^{+Ω}`.
pub fn lift_over(s: &SubS, tel: &Tel) -> SubS {
    s.clone().plus_n(tel.len())
}

/// A type, or a term with its type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Body {
    Ty(Ty),
    Tm(Tm, Ty),
}

impl Body {
    fn map(&self, f: &dyn Fn(Ty) -> Ty, g: &dyn Fn(Tm) -> Tm) -> Body {
        match self {
            Body::Ty(a) => Body::Ty(f(a.clone())),
            Body::Tm(t, a) => Body::Tm(g(t.clone()), f(a.clone())),
        }
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Ty(a) => write!(f, "{a}"),
            Body::Tm(t, a) => write!(f, "{t} : {a}"),
        }
    }
}

/// Data for one instance of a lifted equation. The telescope is based at
/// `Γ` for equations 1 and 2 and at `Γ▷A` for 3 and 4.
#[derive(Clone, Debug)]
pub struct Payload {
    pub a_ty: Ty,
    /// `a : A` (equations 2 and 3); must be inferable.
    pub a: Option<Tm>,
    /// `γ : Sub Δ Γ` and `Δ` (equations 1 and 3).
    pub sub: Option<(SubS, Ctx)>,
    pub body: Body,
}

/// Both sides of lifted equation `n` and the context they live in.
pub fn lifted_eq_sides(n: u8, ctx: &Ctx, tel: &Tel, pl: &Payload) -> Result<(Ctx, Body, Body)> {
    let m = tel.len();
    let sub = || pl.sub.clone().ok_or_else(|| ill!("equation {n} needs a substitution"));
    let arg = || pl.a.clone().ok_or_else(|| ill!("equation {n} needs a term"));
    let two = |b: &Body, s1: SubS, s2: SubS| {
        let (s1b, s2b) = (s1.clone(), s2.clone());
        b.map(
            &move |a| Ty::sub(Ty::sub(a, s1.clone()), s2.clone()),
            &move |t| Tm::sub(Tm::sub(t, s1b.clone()), s2b.clone()),
        )
    };
    let wk = SubS::P.plus_n(m);
    let b = &pl.body;
    let (out, lhs, rhs) = match n {
        1 => {
            let (g, dom) = sub()?;
            let mut c = dom.extend(Ty::sub(pl.a_ty.clone(), g.clone()));
            let tp = inst_entries(&tel.entries, &SubS::P);
            for (k, e) in tp.into_iter().enumerate() {
                c.push(Ty::sub(e, g.clone().plus().plus_n(k)));
            }
            (c, two(b, wk.clone(), g.clone().plus().plus_n(m)), two(b, g.plus_n(m), wk))
        }
        2 => {
            let a = arg()?;
            (tel_append(ctx, tel), two(b, wk, SubS::single(a).plus_n(m)), b.clone())
        }
        3 => {
            let (g, dom) = sub()?;
            let a = arg()?;
            let mut c = dom.clone();
            let ta = inst_entries(&tel.entries, &SubS::single(a.clone()));
            for (k, e) in ta.into_iter().enumerate() {
                c.push(Ty::sub(e, g.clone().plus_n(k)));
            }
            let ag = Tm::sub(a.clone(), g.clone());
            (
                c,
                two(b, SubS::single(a).plus_n(m), g.clone().plus_n(m)),
                two(b, g.plus().plus_n(m), SubS::single(ag).plus_n(m)),
            )
        }
        4 => (
            tel_append(&ctx.extend(pl.a_ty.clone()), tel),
            two(b, SubS::P.plus().plus_n(m), SubS::single(Tm::Q).plus_n(m)),
            b.clone(),
        ),
        _ => return Err(ill!("there is no lifted equation {n}")),
    };
    Ok((out, lhs, rhs))
}

/// Decides lifted equation `n` on one instance.
pub fn check_lifted_eq(n: u8, ctx: &Ctx, tel: &Tel, pl: &Payload) -> Result<bool> {
    let home = match n {
        1 | 2 => tel_append(ctx, tel),
        _ => tel_append(&ctx.extend(pl.a_ty.clone()), tel),
    };
    check_body(&home, &pl.body)?;
    let (out, lhs, rhs) = lifted_eq_sides(n, ctx, tel, pl)?;
    body_conv(&out, &lhs, &rhs)
}

fn check_body(ctx: &Ctx, b: &Body) -> Result<()> {
    let sc = Scope::from_ctx(ctx)?;
    match b {
        Body::Ty(a) => sc.level(a).map(|_| ()),
        Body::Tm(t, a) => {
            sc.level(a)?;
            sc.check(t, &sc.eval_ty(a))
        }
    }
}

/// Checks both sides and compares them: types by conversion, terms by
/// conversion of their types and then of the terms.
pub fn body_conv(ctx: &Ctx, lhs: &Body, rhs: &Body) -> Result<bool> {
    check_body(ctx, lhs)?;
    check_body(ctx, rhs)?;
    match (lhs, rhs) {
        (Body::Ty(a), Body::Ty(b)) => conv_ty(ctx, a, b),
        (Body::Tm(t, a), Body::Tm(u, b)) => Ok(conv_ty(ctx, a, b)? && conv_tm(ctx, t, u, a)?),
        _ => Err(ill!("comparing a type with a term")),
    }
}

/// Generates an instance of lifted equation `n` with a telescope of length
/// `tel_len`.
pub fn gen_lifted_eq(g: &mut Gen, n: u8, tel_len: usize, term: bool, depth: u32) -> Result<(Ctx, Tel, Payload)> {
    g.retry(|g| {
        let base_len = g.below(3);
        let (gam, sub) = match n {
            1 | 3 => {
                let dom = g.ctx(base_len, depth)?;
                let (s, gam, _) = g.sub(&dom, depth)?;
                (gam, Some((s, dom.ctx)))
            }
            _ => (g.ctx(base_len, depth)?, None),
        };
        let (a_ty, a) = match n {
            2 | 3 => {
                let (a, a_ty) = g.infer(&gam, depth)?;
                (a_ty, Some(a))
            }
            _ => (g.ty(&gam, depth)?, None),
        };
        let tel_base = if n <= 2 { gam.clone() } else { gam.extend(&a_ty) };
        let tel = g.tel(&tel_base, tel_len, depth)?;
        let home = Cx::new(tel_append(&tel_base.ctx, &tel))?;
        let body = gen_body(g, &home, term, depth)?;
        Ok((gam.ctx, tel, Payload { a_ty, a, sub, body }))
    })
}

pub fn gen_body(g: &mut Gen, cx: &Cx, term: bool, depth: u32) -> Result<Body> {
    let a = g.ty(cx, depth)?;
    if term {
        let t = g.tm(cx, &a, depth)?;
        Ok(Body::Tm(t, a))
    } else {
        Ok(Body::Ty(a))
    }
}

/// Outcome of checking the lifting lemma on samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub hypotheses_hold: bool,
    pub hypotheses_checked: usize,
    pub conclusions_checked: usize,
    pub counterexample: Option<String>,
}

fn star_body(b: &Body, s: &SubStar) -> Body {
    b.map(&|a| star_inst_ty(&a, s), &|t| star_inst_tm(&t, s))
}

/// Samples the lifting lemma for `g0, g1 : Sub* Δ Γ`: checks the hypotheses
/// on at least 50 types plus every variable of `Γ`, and if they hold checks
/// the three conclusions on `samples` random telescopes.
pub fn lift_lemma_verify(
    g0: &SubStar,
    g1: &SubStar,
    dom: &Ctx,
    cod: &Ctx,
    gen: &mut Gen,
    samples: usize,
) -> Result<LemmaReport> {
    let depth = gen.cfg.max_depth.min(4);
    let codx = Cx::new(cod.clone())?;
    Scope::from_ctx(dom)?;
    let mut rep = LemmaReport { hypotheses_hold: true, ..LemmaReport::default() };
    let fail = |rep: &mut LemmaReport, what: String| {
        rep.counterexample.get_or_insert(what);
    };

    for _ in 0..samples.max(50) {
        let a = gen.retry(|g| g.ty(&codx, depth))?;
        rep.hypotheses_checked += 1;
        if !conv_ty(dom, &star_inst_ty(&a, g0), &star_inst_ty(&a, g1))? {
            rep.hypotheses_hold = false;
            fail(&mut rep, format!("hypothesis fails on type {a}"));
        }
    }
    for k in 0..cod.len() {
        let x = Tm::var(k);
        let ty = crate::check::infer_tm(cod, &x)?;
        rep.hypotheses_checked += 1;
        if !body_conv(dom, &star_body(&Body::Tm(x.clone(), ty.clone()), g0), &star_body(&Body::Tm(x, ty), g1))? {
            rep.hypotheses_hold = false;
            fail(&mut rep, format!("hypothesis fails on variable {k}"));
        }
    }
    if !rep.hypotheses_hold {
        return Ok(rep);
    }

    for _ in 0..samples {
        let len = 1 + gen.below(3);
        let tel = gen.retry(|g| g.tel(&codx, len, depth))?;
        let mut ext = dom.clone();
        for (k, e) in tel.entries.iter().enumerate() {
            let l = star_inst_ty(e, &g0.plus_n(k));
            let r = star_inst_ty(e, &g1.plus_n(k));
            rep.conclusions_checked += 1;
            if !conv_ty(&ext, &l, &r)? {
                fail(&mut rep, format!("telescope entry {k} of {tel} differs"));
            }
            ext.push(l);
        }
        let home = Cx::new(tel_append(cod, &tel))?;
        let m = tel.len();
        for term in [false, true] {
            let b = gen.retry(|g| gen_body(g, &home, term, depth))?;
            rep.conclusions_checked += 1;
            if !body_conv(&ext, &star_body(&b, &g0.plus_n(m)), &star_body(&b, &g1.plus_n(m)))? {
                fail(&mut rep, format!("{b} over {tel} differs"));
            }
        }
    }
    Ok(rep)
}

impl From<Ty> for Body {
    fn from(a: Ty) -> Body {
        Body::Ty(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn append() {
        let a = Ty::U(0);
        let c = Ctx::new(vec![a.clone()]);
        assert_eq!(tel_append(&c, &Tel::empty(c.clone())), c);
        let t = Tel { base: Ctx::empty(), entries: vec![Ty::U(0), Ty::el(Tm::Q)] };
        assert_eq!(tel_append(&Ctx::empty(), &t), Ctx::new(vec![Ty::U(0), Ty::el(Tm::Q)]));
    }

    #[test]
    fn lifting_over() {
        let base = Ctx::new(vec![Ty::Top]);
        assert_eq!(lift_over(&SubS::P, &Tel::empty(base.clone())), SubS::P);
        let one = Tel { base: base.clone(), entries: vec![Ty::Top] };
        assert_eq!(lift_over(&SubS::P, &one), SubS::P.plus());
        let two = Tel { base, entries: vec![Ty::Top, Ty::Top] };
        assert_eq!(lift_over(&SubS::single(Tm::Tt), &two), SubS::single(Tm::Tt).plus().plus());
    }

    #[test]
    fn unlifted_instances() {
        let gam = Ctx::new(vec![Ty::U(0)]);
        let tel = Tel::empty(gam.clone());
        let pl = Payload { a_ty: Ty::U(0), a: Some(Tm::code(Ty::Top)), sub: None, body: Ty::el(Tm::Q).into() };
        assert!(check_lifted_eq(2, &gam, &tel, &pl).unwrap());
        let tel4 = Tel::empty(gam.extend(Ty::U(0)));
        let b = Ty::pi(Ty::el(Tm::Q), Ty::el(Tm::var(2)));
        let pl4 = Payload { a_ty: Ty::U(0), a: None, sub: None, body: b.into() };
        assert!(check_lifted_eq(4, &gam, &tel4, &pl4).unwrap());
    }

    #[test]
    fn telescope_instantiation() {
        let gam = Ctx::new(vec![Ty::U(0)]);
        let tel = Tel { base: gam.clone(), entries: vec![Ty::el(Tm::Q)] };
        let out = tel_inst(&tel, &SubS::single(Tm::code(Ty::Top)), &Ctx::empty()).unwrap();
        assert_eq!(out.entries, vec![Ty::sub(Ty::el(Tm::Q), SubS::single(Tm::code(Ty::Top)))]);
    }
}
