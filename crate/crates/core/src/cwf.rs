//! The parallel-substitution (CwF) presentation: its substitutions, the
//! translations to and from single substitutions, and roundtrip checks.
//!
//! Types and terms reuse [`Ty`] and [`Tm`] with [`CSub`] in the
//! instantiation nodes, so checking and conversion come from the shared
//! kernel.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::check::{check_sub_into, Scope};
use crate::error::{ill, Result};
use crate::eval::{conv_tm, conv_ty};
use crate::gen::{Cx, Gen};
use crate::par::{star_inst_tm, star_inst_ty, tms_comp, tms_embed, tms_eps, tms_ext, tms_id, tms_p, Tms};
use crate::syntax::{Ctx, SubS, SubView, Subst, Tm, Ty};
use crate::termify::{gen_con, monus, t_comp, t_empty, t_eps, t_ext, t_id, t_inst_tm, t_inst_ty, t_p, t_q, Params, TCon, TSub, TTm, TTy};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CSub {
    Id,
    /// `f ∘ g`
    Comp(Arc<CSub>, Arc<CSub>),
    Eps,
    P,
    Ext(Arc<CSub>, Arc<CTm>),
}

pub type CTy = Ty<CSub>;
pub type CTm = Tm<CSub>;
pub type CCtx = Ctx<CSub>;

impl CSub {
    pub fn comp(f: CSub, g: CSub) -> CSub {
        CSub::Comp(Arc::new(f), Arc::new(g))
    }

    pub fn ext(g: CSub, a: CTm) -> CSub {
        CSub::Ext(Arc::new(g), Arc::new(a))
    }

    /// Length of the codomain when the domain has length `n`.
    pub fn cod_len(&self, n: usize) -> Result<usize> {
        match self {
            CSub::Id => Ok(n),
            CSub::Comp(f, g) => f.cod_len(g.cod_len(n)?),
            CSub::Eps => Ok(0),
            CSub::P => n.checked_sub(1).ok_or_else(|| ill!("p out of an empty context")),
            CSub::Ext(g, _) => Ok(g.cod_len(n)? + 1),
        }
    }
}

impl Subst for CSub {
    fn weaken() -> Self {
        CSub::P
    }

    fn view(&self) -> SubView<'_, Self> {
        match self {
            CSub::Id => SubView::Id,
            CSub::Comp(f, g) => SubView::Comp(f, g),
            CSub::Eps => SubView::Eps,
            CSub::P => SubView::Weaken,
            CSub::Ext(g, a) => SubView::Ext(g, a),
        }
    }
}

impl fmt::Display for CSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CSub::Id => write!(f, "id"),
            CSub::Comp(a, b) => write!(f, "(comp {a} {b})"),
            CSub::Eps => write!(f, "eps"),
            CSub::P => write!(f, "p"),
            CSub::Ext(g, t) => write!(f, "(ext {g} {t})"),
        }
    }
}

// checking and conversion

pub fn cwf_wf_ctx(ctx: &CCtx) -> Result<()> {
    crate::check::wf_ctx(ctx)
}

pub fn cwf_level(ctx: &CCtx, a: &CTy) -> Result<u32> {
    crate::check::infer_ty_level(ctx, a)
}

pub fn cwf_infer(ctx: &CCtx, t: &CTm) -> Result<CTy> {
    crate::check::infer_tm(ctx, t)
}

pub fn cwf_check(ctx: &CCtx, t: &CTm, a: &CTy) -> Result<()> {
    crate::check::check_tm(ctx, t, a)
}

pub fn cwf_conv_ty(ctx: &CCtx, a: &CTy, b: &CTy) -> Result<bool> {
    conv_ty(ctx, a, b)
}

pub fn cwf_conv_tm(ctx: &CCtx, t: &CTm, u: &CTm, a: &CTy) -> Result<bool> {
    conv_tm(ctx, t, u, a)
}

/// Two substitutions out of `dom` are convertible when they send the
/// variables of `dom` to convertible lists of values, read back at the
/// entry types `f` produces. Typing is checked separately
/// ([`check_sub_into`]); inferred entry types may differ in presentation,
/// e.g. a literal pair infers a nondependent Sigma.
pub fn conv_sub<S: Subst>(dom: &Ctx<S>, f: &S, g: &S) -> Result<bool> {
    let sc = Scope::from_ctx(dom)?;
    let a = sc.act(f)?;
    let b = sc.act(g)?;
    if a.vars.len() != b.vars.len() {
        return Ok(false);
    }
    for ((v, t), (w, _)) in a.vars.iter().zip(&b.vars) {
        if sc.nf_tm(t, v)? != sc.nf_tm(t, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn cwf_conv_sub(dom: &CCtx, f: &CSub, g: &CSub) -> Result<bool> {
    conv_sub(dom, f, g)
}

// SSC to CwF: g+ := (g ∘ p, q) and <a> := (id, a)

pub fn ssc_to_cwf_sub(s: &SubS) -> CSub {
    match s {
        SubS::P => CSub::P,
        SubS::Single(a) => CSub::ext(CSub::Id, ssc_to_cwf_tm(a)),
        SubS::Plus(g) => CSub::ext(CSub::comp(ssc_to_cwf_sub(g), CSub::P), Tm::Q),
    }
}

pub fn ssc_to_cwf_ty(a: &Ty) -> CTy {
    match a {
        Ty::U(i) => Ty::U(*i),
        Ty::El(t) => Ty::el(ssc_to_cwf_tm(t)),
        Ty::Pi(x, y) => Ty::pi(ssc_to_cwf_ty(x), ssc_to_cwf_ty(y)),
        Ty::Sigma(x, y) => Ty::sigma(ssc_to_cwf_ty(x), ssc_to_cwf_ty(y)),
        Ty::Top => Ty::Top,
        Ty::Lift(x) => Ty::lift(ssc_to_cwf_ty(x)),
        Ty::Sub(x, s) => Ty::sub(ssc_to_cwf_ty(x), ssc_to_cwf_sub(s)),
    }
}

pub fn ssc_to_cwf_tm(t: &Tm) -> CTm {
    match t {
        Tm::Q => Tm::Q,
        Tm::Sub(u, s) => Tm::sub(ssc_to_cwf_tm(u), ssc_to_cwf_sub(s)),
        Tm::Lam(b) => Tm::lam(ssc_to_cwf_tm(b)),
        Tm::App(f, a) => Tm::app(ssc_to_cwf_tm(f), ssc_to_cwf_tm(a)),
        Tm::Code(a) => Tm::code(ssc_to_cwf_ty(a)),
        Tm::Mk(a) => Tm::mk(ssc_to_cwf_tm(a)),
        Tm::Un(a) => Tm::un(ssc_to_cwf_tm(a)),
        Tm::Tt => Tm::Tt,
        Tm::Pair(a, b) => Tm::pair(ssc_to_cwf_tm(a), ssc_to_cwf_tm(b)),
        Tm::Fst(a) => Tm::fst(ssc_to_cwf_tm(a)),
        Tm::Snd(a) => Tm::snd(ssc_to_cwf_tm(a)),
    }
}

pub fn ssc_to_cwf_ctx(ctx: &Ctx) -> CCtx {
    Ctx::new(ctx.entries.iter().map(ssc_to_cwf_ty).collect())
}

// CwF to SSC, through parallel substitutions; `n` is the length of the
// context the subject lives in

pub fn cwf_to_tms(s: &CSub, n: usize) -> Result<Tms> {
    Ok(match s {
        CSub::Id => tms_id(n),
        CSub::Comp(f, g) => {
            let m = g.cod_len(n)?;
            tms_comp(&cwf_to_tms(f, m)?, &cwf_to_tms(g, n)?)
        }
        CSub::Eps => tms_eps(n),
        CSub::P => {
            let m = n.checked_sub(1).ok_or_else(|| ill!("p out of an empty context"))?;
            tms_p(m)
        }
        CSub::Ext(g, a) => tms_ext(&cwf_to_tms(g, n)?, cwf_to_ssc_tm(a, n)?),
    })
}

pub fn tms_to_cwf(ts: &Tms) -> CSub {
    ts.terms.iter().fold(CSub::Eps, |acc, t| CSub::ext(acc, ssc_to_cwf_tm(t)))
}

pub fn cwf_to_ssc_ty(a: &CTy, n: usize) -> Result<Ty> {
    Ok(match a {
        Ty::U(i) => Ty::U(*i),
        Ty::El(t) => Ty::el(cwf_to_ssc_tm(t, n)?),
        Ty::Pi(x, y) => Ty::pi(cwf_to_ssc_ty(x, n)?, cwf_to_ssc_ty(y, n + 1)?),
        Ty::Sigma(x, y) => Ty::sigma(cwf_to_ssc_ty(x, n)?, cwf_to_ssc_ty(y, n + 1)?),
        Ty::Top => Ty::Top,
        Ty::Lift(x) => Ty::lift(cwf_to_ssc_ty(x, n)?),
        Ty::Sub(x, s) => {
            let inner = cwf_to_ssc_ty(x, s.cod_len(n)?)?;
            star_inst_ty(&inner, &tms_embed(&cwf_to_tms(s, n)?))
        }
    })
}

pub fn cwf_to_ssc_tm(t: &CTm, n: usize) -> Result<Tm> {
    Ok(match t {
        Tm::Q => Tm::Q,
        Tm::Sub(u, s) => {
            let inner = cwf_to_ssc_tm(u, s.cod_len(n)?)?;
            star_inst_tm(&inner, &tms_embed(&cwf_to_tms(s, n)?))
        }
        Tm::Lam(b) => Tm::lam(cwf_to_ssc_tm(b, n + 1)?),
        Tm::App(f, a) => Tm::app(cwf_to_ssc_tm(f, n)?, cwf_to_ssc_tm(a, n)?),
        Tm::Code(a) => Tm::code(cwf_to_ssc_ty(a, n)?),
        Tm::Mk(a) => Tm::mk(cwf_to_ssc_tm(a, n)?),
        Tm::Un(a) => Tm::un(cwf_to_ssc_tm(a, n)?),
        Tm::Tt => Tm::Tt,
        Tm::Pair(a, b) => Tm::pair(cwf_to_ssc_tm(a, n)?, cwf_to_ssc_tm(b, n)?),
        Tm::Fst(a) => Tm::fst(cwf_to_ssc_tm(a, n)?),
        Tm::Snd(a) => Tm::snd(cwf_to_ssc_tm(a, n)?),
    })
}

pub fn cwf_to_ssc_ctx(ctx: &CCtx) -> Result<Ctx> {
    let entries = ctx.entries.iter().enumerate().map(|(k, a)| cwf_to_ssc_ty(a, k)).collect::<Result<Vec<_>>>()?;
    Ok(Ctx::new(entries))
}

// roundtrips

/// SSC -> CwF -> SSC on a type well-formed in `ctx`.
pub fn roundtrip_ssc_ty(ctx: &Ctx, a: &Ty) -> Result<bool> {
    let back = cwf_to_ssc_ty(&ssc_to_cwf_ty(a), ctx.len())?;
    let cback = cwf_to_ssc_ctx(&ssc_to_cwf_ctx(ctx))?;
    Ok(ctx_conv(ctx, &cback)? && conv_ty(ctx, a, &back)?)
}

pub fn roundtrip_ssc_tm(ctx: &Ctx, t: &Tm, a: &Ty) -> Result<bool> {
    let back = cwf_to_ssc_tm(&ssc_to_cwf_tm(t), ctx.len())?;
    crate::check::check_tm(ctx, &back, a)?;
    conv_tm(ctx, t, &back, a)
}

/// CwF -> SSC -> CwF on a type well-formed in `ctx`.
pub fn roundtrip_cwf_ty(ctx: &CCtx, a: &CTy) -> Result<bool> {
    let back = ssc_to_cwf_ty(&cwf_to_ssc_ty(a, ctx.len())?);
    let cback = ssc_to_cwf_ctx(&cwf_to_ssc_ctx(ctx)?);
    Ok(ctx_conv(ctx, &cback)? && conv_ty(ctx, a, &back)?)
}

pub fn roundtrip_cwf_tm(ctx: &CCtx, t: &CTm, a: &CTy) -> Result<bool> {
    let back = ssc_to_cwf_tm(&cwf_to_ssc_tm(t, ctx.len())?);
    crate::check::check_tm(ctx, &back, a)?;
    conv_tm(ctx, t, &back, a)
}

/// CwF substitution -> Tms -> CwF substitution.
pub fn roundtrip_cwf_sub(dom: &CCtx, s: &CSub) -> Result<bool> {
    let back = tms_to_cwf(&cwf_to_tms(s, dom.len())?);
    conv_sub(dom, s, &back)
}

/// Entrywise conversion of two contexts of the same calculus.
pub fn ctx_conv<S: Subst>(a: &Ctx<S>, b: &Ctx<S>) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for k in 0..a.len() {
        if !conv_ty(&a.prefix(k), &a.entries[k], &b.entries[k])? {
            return Ok(false);
        }
    }
    Ok(true)
}

// sampling CwF syntax beyond the image of the translation

/// Rewrites some instantiation nodes into equivalent CwF-only forms:
/// `s ↦ s ∘ id`, `id ∘ s`, nested instantiations into one composite,
/// `p ↦ (p ∘ p, q[p])` and closed leaves `A ↦ A[ε]`.
pub fn perturb_ty(g: &mut Gen, a: &CTy, n: usize) -> CTy {
    let out = match a {
        Ty::U(_) | Ty::Top => a.clone(),
        Ty::El(t) => Ty::el(perturb_tm(g, t, n)),
        Ty::Pi(x, y) => Ty::pi(perturb_ty(g, x, n), perturb_ty(g, y, n + 1)),
        Ty::Sigma(x, y) => Ty::sigma(perturb_ty(g, x, n), perturb_ty(g, y, n + 1)),
        Ty::Lift(x) => Ty::lift(perturb_ty(g, x, n)),
        Ty::Sub(x, s) => {
            let m = s.cod_len(n).unwrap_or(0);
            let s2 = perturb_sub(g, s, n);
            match &**x {
                Ty::Sub(y, f) if g.chance(50) => {
                    let k = f.cod_len(m).unwrap_or(0);
                    Ty::sub(perturb_ty(g, y, k), CSub::comp(perturb_sub(g, f, m), s2))
                }
                _ => Ty::sub(perturb_ty(g, x, m), s2),
            }
        }
    };
    if matches!(a, Ty::U(_) | Ty::Top) && g.chance(30) {
        Ty::sub(out, CSub::Eps)
    } else {
        out
    }
}

pub fn perturb_tm(g: &mut Gen, t: &CTm, n: usize) -> CTm {
    let out = match t {
        Tm::Q | Tm::Tt => t.clone(),
        Tm::Sub(u, s) => {
            let m = s.cod_len(n).unwrap_or(0);
            let s2 = perturb_sub(g, s, n);
            match &**u {
                Tm::Sub(v, f) if g.chance(50) => {
                    let k = f.cod_len(m).unwrap_or(0);
                    Tm::sub(perturb_tm(g, v, k), CSub::comp(perturb_sub(g, f, m), s2))
                }
                _ => Tm::sub(perturb_tm(g, u, m), s2),
            }
        }
        Tm::Lam(b) => Tm::lam(perturb_tm(g, b, n + 1)),
        Tm::App(f, a) => Tm::app(perturb_tm(g, f, n), perturb_tm(g, a, n)),
        Tm::Code(a) => Tm::code(perturb_ty(g, a, n)),
        Tm::Mk(a) => Tm::mk(perturb_tm(g, a, n)),
        Tm::Un(a) => Tm::un(perturb_tm(g, a, n)),
        Tm::Pair(a, b) => Tm::pair(perturb_tm(g, a, n), perturb_tm(g, b, n)),
        Tm::Fst(a) => Tm::fst(perturb_tm(g, a, n)),
        Tm::Snd(a) => Tm::snd(perturb_tm(g, a, n)),
    };
    if matches!(t, Tm::Tt) && g.chance(30) {
        Tm::sub(out, CSub::Eps)
    } else {
        out
    }
}

pub fn perturb_sub(g: &mut Gen, s: &CSub, n: usize) -> CSub {
    let base = match s {
        CSub::P if n >= 2 && g.chance(30) => CSub::ext(CSub::comp(CSub::P, CSub::P), Tm::sub(Tm::Q, CSub::P)),
        CSub::Comp(f, h) => {
            let m = h.cod_len(n).unwrap_or(0);
            CSub::comp(perturb_sub(g, f, m), perturb_sub(g, h, n))
        }
        CSub::Ext(h, a) => CSub::ext(perturb_sub(g, h, n), perturb_tm(g, a, n)),
        _ => s.clone(),
    };
    match g.below(10) {
        0 => CSub::comp(base, CSub::Id),
        1 => CSub::comp(CSub::Id, base),
        _ => base,
    }
}

pub fn perturb_ctx(g: &mut Gen, ctx: &CCtx) -> CCtx {
    Ctx::new(ctx.entries.iter().enumerate().map(|(k, a)| perturb_ty(g, a, k)).collect())
}

/// A context, a type in it and a term of that type.
pub type Sample<S> = (Ctx<S>, Ty<S>, Tm<S>);

pub fn sample_ssc(g: &mut Gen, depth: u32) -> Result<Sample<SubS>> {
    g.retry(|g| {
        let len = g.below(3);
        let cx = g.ctx(len, depth)?;
        let a = g.ty(&cx, depth)?;
        let t = g.tm(&cx, &a, depth)?;
        Ok((cx.ctx, a, t))
    })
}

/// Translated SSC samples, perturbed into CwF-only shapes.
pub fn sample_cwf(g: &mut Gen, depth: u32) -> Result<Sample<CSub>> {
    let (ctx, a, t) = sample_ssc(g, depth)?;
    let n = ctx.len();
    let ctx = perturb_ctx(g, &ssc_to_cwf_ctx(&ctx));
    let a = perturb_ty(g, &ssc_to_cwf_ty(&a), n);
    let t = perturb_tm(g, &ssc_to_cwf_tm(&t), n);
    Ok((ctx, a, t))
}

/// A CwF substitution out of the returned context, possibly a composite
/// of two translated single substitutions.
pub fn sample_cwf_sub(g: &mut Gen, depth: u32) -> Result<(CCtx, CSub)> {
    g.retry(|g| {
        let len = 1 + g.below(3);
        let cx = g.ctx(len, depth)?;
        let (s1, cx1, _) = g.sub(&cx, depth)?;
        let mut s = ssc_to_cwf_sub(&s1);
        if !cx1.is_empty() && g.chance(50) {
            let (s2, _, _) = g.sub(&cx1, depth)?;
            s = CSub::comp(ssc_to_cwf_sub(&s2), s);
        }
        if g.chance(20) {
            s = CSub::comp(CSub::Eps, s);
        }
        let n = cx.len();
        Ok((perturb_ctx(g, &ssc_to_cwf_ctx(&cx.ctx)), perturb_sub(g, &s, n)))
    })
}

/// Constructor counts over sampled syntax.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coverage(pub BTreeMap<&'static str, usize>);

impl Coverage {
    fn bump(&mut self, k: &'static str) {
        *self.0.entry(k).or_insert(0) += 1;
    }

    pub fn count(&self, k: &str) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn ty<S: Subst>(&mut self, a: &Ty<S>) {
        match a {
            Ty::U(_) => self.bump("U"),
            Ty::El(t) => {
                self.bump("El");
                self.tm(t)
            }
            Ty::Pi(x, y) => {
                self.bump("Pi");
                self.ty(x);
                self.ty(y)
            }
            Ty::Sigma(x, y) => {
                self.bump("Sigma");
                self.ty(x);
                self.ty(y)
            }
            Ty::Top => self.bump("Top"),
            Ty::Lift(x) => {
                self.bump("Lift");
                self.ty(x)
            }
            Ty::Sub(x, s) => {
                self.bump("tysub");
                self.ty(x);
                self.sub(&**s)
            }
        }
    }

    pub fn tm<S: Subst>(&mut self, t: &Tm<S>) {
        match t {
            Tm::Q => self.bump("q"),
            Tm::Sub(u, s) => {
                self.bump("tmsub");
                self.tm(u);
                self.sub(&**s)
            }
            Tm::Lam(b) => {
                self.bump("lam");
                self.tm(b)
            }
            Tm::App(f, a) => {
                self.bump("app");
                self.tm(f);
                self.tm(a)
            }
            Tm::Code(a) => {
                self.bump("code");
                self.ty(a)
            }
            Tm::Mk(a) => {
                self.bump("mk");
                self.tm(a)
            }
            Tm::Un(a) => {
                self.bump("un");
                self.tm(a)
            }
            Tm::Tt => self.bump("tt"),
            Tm::Pair(a, b) => {
                self.bump("pair");
                self.tm(a);
                self.tm(b)
            }
            Tm::Fst(a) => {
                self.bump("fst");
                self.tm(a)
            }
            Tm::Snd(a) => {
                self.bump("snd");
                self.tm(a)
            }
        }
    }

    pub fn sub<S: Subst>(&mut self, s: &S) {
        match s.view() {
            SubView::Weaken => self.bump("p"),
            SubView::Single(a) => {
                self.bump("single");
                self.tm(a)
            }
            SubView::Plus(g) => {
                self.bump("plus");
                self.sub(g)
            }
            SubView::Id => self.bump("id"),
            SubView::Comp(f, g) => {
                self.bump("comp");
                self.sub(f);
                self.sub(g)
            }
            SubView::Eps => self.bump("eps"),
            SubView::Ext(g, a) => {
                self.bump("ext");
                self.sub(g);
                self.tm(a)
            }
        }
    }
}

pub const TY_FORMERS: &[&str] = &["U", "El", "Pi", "Sigma", "Top", "Lift", "tysub"];
pub const TM_FORMERS: &[&str] = &["q", "tmsub", "lam", "app", "code", "mk", "un", "tt", "pair", "fst", "snd"];
pub const SSC_SUBS: &[&str] = &["p", "single", "plus"];
pub const CWF_SUBS: &[&str] = &["id", "comp", "eps", "p", "ext"];

// The comparison map F from termification (run over the CwF syntax) back
// into the CwF syntax, relative to a parameter context Ξ:
// FΓ = Ξ▷Γ, Fγ = (p, γ[p]·q), FA = El (A[p]·q), Fa = a[p]·q, decorated.

pub fn con_to_cwf(c: &TCon) -> TCon<CSub> {
    TCon { level: c.level, ty: ssc_to_cwf_ty(&c.ty) }
}

pub fn sub_to_cwf(s: &TSub) -> TSub<CSub> {
    TSub { dom: con_to_cwf(&s.dom), cod: con_to_cwf(&s.cod), tm: ssc_to_cwf_tm(&s.tm) }
}

pub fn ty_to_cwf(a: &TTy) -> TTy<CSub> {
    TTy { ctx: con_to_cwf(&a.ctx), level: a.level, tm: ssc_to_cwf_tm(&a.tm) }
}

pub fn tm_to_cwf(a: &TTm) -> TTm<CSub> {
    TTm { ty: ty_to_cwf(&a.ty), tm: ssc_to_cwf_tm(&a.tm) }
}

pub fn f_con(params: &CCtx, g: &TCon<CSub>) -> CCtx {
    params.extend(g.ty.clone())
}

pub fn f_sub(s: &TSub<CSub>) -> CSub {
    let (d, g) = (s.dom.level, s.cod.level);
    let body = Tm::app(s.tm.clone().wk(), Tm::Q.mk_n(monus(g, d))).un_n(monus(d, g));
    CSub::ext(CSub::P, body)
}

pub fn f_ty(a: &TTy<CSub>) -> CTy {
    let (g, i) = (a.ctx.level, a.level);
    Ty::el(Tm::app(a.tm.clone().wk(), Tm::Q.mk_n(monus(1 + i, g))).un_n(monus(g, 1 + i)))
}

pub fn f_tm(a: &TTm<CSub>) -> CTm {
    let (g, i) = (a.ctx().level, a.ty.level);
    Tm::app(a.tm.clone().wk(), Tm::Q.mk_n(monus(i, g))).un_n(monus(g, i))
}

/// An equation in the CwF syntax.
#[derive(Clone, Debug)]
pub enum CwfEq {
    Ty { ctx: CCtx, lhs: CTy, rhs: CTy },
    Tm { ctx: CCtx, lhs: CTm, rhs: CTm, ty: CTy },
    Sub { dom: CCtx, cod: CCtx, lhs: CSub, rhs: CSub },
}

impl CwfEq {
    /// Both sides are well typed and convertible.
    pub fn holds(&self) -> Result<bool> {
        match self {
            CwfEq::Ty { ctx, lhs, rhs } => {
                cwf_level(ctx, lhs)?;
                cwf_level(ctx, rhs)?;
                cwf_conv_ty(ctx, lhs, rhs)
            }
            CwfEq::Tm { ctx, lhs, rhs, ty } => {
                cwf_check(ctx, lhs, ty)?;
                cwf_check(ctx, rhs, ty)?;
                cwf_conv_tm(ctx, lhs, rhs, ty)
            }
            CwfEq::Sub { dom, cod, lhs, rhs } => {
                check_sub_into(dom, lhs, cod)?;
                check_sub_into(dom, rhs, cod)?;
                conv_sub(dom, lhs, rhs)
            }
        }
    }
}

impl fmt::Display for CwfEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CwfEq::Ty { ctx, lhs, rhs } => write!(f, "{ctx} |- {lhs} = {rhs}"),
            CwfEq::Tm { ctx, lhs, rhs, ty } => write!(f, "{ctx} |- {lhs} = {rhs} : {ty}"),
            CwfEq::Sub { dom, cod, lhs, rhs } => write!(f, "{dom} |- {lhs} = {rhs} : {cod}"),
        }
    }
}

pub const ISO_EQUATIONS: &[&str] = &[
    "F-id", "F-comp", "F-eps", "eps-iso-l", "eps-iso-r", "F-ty-inst", "F-tm-inst", "ext-iso-l", "ext-iso-r",
];

/// One instance of every preservation equation of F, over generated
/// closed contexts and symbolic `A`, `a`, `γ`, `δ`.
pub fn contextual_iso_f(g: &mut Gen, depth: u32) -> Result<Vec<(&'static str, CwfEq)>> {
    let (c0, c1, c2) = (gen_con(g, depth)?, gen_con(g, depth)?, gen_con(g, depth)?);
    let i = g.below(2) as u32;
    let mut ps = Params::default();
    let a = ps.ty(&c0, i);
    let t = ps.tm(&ps.get_ty(a, &c0, i));
    let (x, y) = (ps.sub(&c1, &c0), ps.sub(&c2, &c1));
    let xi = ssc_to_cwf_ctx(&ps.ctx);
    let at = ty_to_cwf(&ps.get_ty(a, &c0, i));
    let (c0, c1, c2) = (con_to_cwf(&c0), con_to_cwf(&c1), con_to_cwf(&c2));
    let tt = TTm { ty: at.clone(), tm: ssc_to_cwf_tm(&ps.var(t)) };
    let gamma = TSub { dom: c1.clone(), cod: c0.clone(), tm: ssc_to_cwf_tm(&ps.var(x)) };
    let delta = TSub { dom: c2.clone(), cod: c1.clone(), tm: ssc_to_cwf_tm(&ps.var(y)) };
    let (f0, f1, f2) = (f_con(&xi, &c0), f_con(&xi, &c1), f_con(&xi, &c2));
    let mut out = Vec::new();

    out.push(("F-id", CwfEq::Sub { dom: f0.clone(), cod: f0.clone(), lhs: f_sub(&t_id(&c0)), rhs: CSub::Id }));
    let gd = t_comp(&gamma, &delta)?;
    out.push((
        "F-comp",
        CwfEq::Sub { dom: f2.clone(), cod: f0.clone(), lhs: f_sub(&gd), rhs: CSub::comp(f_sub(&gamma), f_sub(&delta)) },
    ));
    let top = f_con(&xi, &t_empty());
    let bang = CSub::ext(CSub::Id, Tm::Tt);
    out.push((
        "F-eps",
        CwfEq::Sub { dom: f0.clone(), cod: top.clone(), lhs: f_sub(&t_eps(&c0)), rhs: CSub::comp(bang.clone(), CSub::P) },
    ));
    out.push((
        "eps-iso-l",
        CwfEq::Sub { dom: xi.clone(), cod: xi.clone(), lhs: CSub::comp(CSub::P, bang.clone()), rhs: CSub::Id },
    ));
    out.push((
        "eps-iso-r",
        CwfEq::Sub { dom: top.clone(), cod: top.clone(), lhs: CSub::comp(bang, CSub::P), rhs: CSub::Id },
    ));
    let ag = t_inst_ty(&at, &gamma)?;
    out.push(("F-ty-inst", CwfEq::Ty { ctx: f1.clone(), lhs: f_ty(&ag), rhs: Ty::sub(f_ty(&at), f_sub(&gamma)) }));
    let tg = t_inst_tm(&tt, &gamma)?;
    out.push((
        "F-tm-inst",
        CwfEq::Tm { ctx: f1.clone(), lhs: f_tm(&tg), rhs: Tm::sub(f_tm(&tt), f_sub(&gamma)), ty: f_ty(&ag) },
    ));

    // F(Γ▷A) ≅ FΓ▷FA via (Fp, Fq), with inverse (p∘p, (q[p], q)) decorated.
    let ext = f_con(&xi, &t_ext(&at));
    let fext = f0.extend(f_ty(&at));
    let phi = CSub::ext(f_sub(&t_p(&at)), f_tm(&t_q(&at)));
    let (gl, il) = (c0.level, i);
    let psi = CSub::ext(
        CSub::comp(CSub::P, CSub::P),
        Tm::pair(Tm::Q.wk().mk_n(monus(il, gl)), Tm::Q.mk_n(monus(gl, il))),
    );
    out.push((
        "ext-iso-l",
        CwfEq::Sub { dom: fext.clone(), cod: fext.clone(), lhs: CSub::comp(phi.clone(), psi.clone()), rhs: CSub::Id },
    ));
    out.push(("ext-iso-r", CwfEq::Sub { dom: ext.clone(), cod: ext, lhs: CSub::comp(psi, phi), rhs: CSub::Id }));
    Ok(out)
}

// laws of the CwF syntax

pub const CWF_LAWS: &[&str] = &[
    "assoc", "id-left", "id-right", "eps-eta", "ty-id", "ty-comp", "tm-id", "tm-comp", "ext-beta1", "ext-beta2",
    "ext-eta", "ext-nat",
];

impl CwfEq {
    /// The equation after translating both sides to single substitutions:
    /// substitutions become parallel ones and are compared componentwise.
    pub fn holds_via_ssc(&self) -> Result<bool> {
        match self {
            CwfEq::Ty { ctx, lhs, rhs } => {
                let n = ctx.len();
                conv_ty(&cwf_to_ssc_ctx(ctx)?, &cwf_to_ssc_ty(lhs, n)?, &cwf_to_ssc_ty(rhs, n)?)
            }
            CwfEq::Tm { ctx, lhs, rhs, ty } => {
                let n = ctx.len();
                let c = cwf_to_ssc_ctx(ctx)?;
                conv_tm(&c, &cwf_to_ssc_tm(lhs, n)?, &cwf_to_ssc_tm(rhs, n)?, &cwf_to_ssc_ty(ty, n)?)
            }
            CwfEq::Sub { dom, cod, lhs, rhs } => {
                let n = dom.len();
                let (d, c) = (cwf_to_ssc_ctx(dom)?, cwf_to_ssc_ctx(cod)?);
                let (l, r) = (cwf_to_tms(lhs, n)?, cwf_to_tms(rhs, n)?);
                if l.terms.len() != c.len() || r.terms.len() != c.len() {
                    return Ok(false);
                }
                for (k, entry) in c.entries.iter().enumerate() {
                    let prefix = Tms { dom: n, terms: l.terms[..k].to_vec() };
                    let ty = star_inst_ty(entry, &tms_embed(&prefix));
                    if !conv_tm(&d, &l.terms[k], &r.terms[k], &ty)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// `Θ --δ--> Δ --γ--> Γ --ζ--> Ξ`, translated single substitutions.
struct Path {
    th: Cx,
    delta: SubS,
    dl: Cx,
    gamma: SubS,
    gm: Cx,
    zeta: SubS,
    xi: Cx,
}

fn path(g: &mut Gen, depth: u32) -> Result<Path> {
    let len = g.below(3);
    let th = g.ctx(len, depth)?;
    let (delta, dl, _) = g.sub(&th, depth)?;
    let (gamma, gm, _) = g.sub(&dl, depth)?;
    let (zeta, xi, _) = g.sub(&gm, depth)?;
    Ok(Path { th, delta, dl, gamma, gm, zeta, xi })
}

/// One generated instance of a law of the CwF syntax.
pub fn cwf_law(name: &str, g: &mut Gen, depth: u32) -> Result<CwfEq> {
    if !CWF_LAWS.contains(&name) {
        return Err(ill!("unknown CwF law {name}"));
    }
    g.retry(|g| {
        let p = path(g, depth)?;
        let c = |cx: &Cx| ssc_to_cwf_ctx(&cx.ctx);
        let (d, gm, z) = (ssc_to_cwf_sub(&p.delta), ssc_to_cwf_sub(&p.gamma), ssc_to_cwf_sub(&p.zeta));
        let sub = |dom: &Cx, cod: &Cx, lhs, rhs| CwfEq::Sub { dom: c(dom), cod: c(cod), lhs, rhs };
        let a = g.ty(&p.gm, depth)?;
        // a term of A[γ] over Δ, for the extension laws
        let a_g = Ty::sub(a.clone(), p.gamma.clone());
        let ext_cod = || c(&p.gm).extend(ssc_to_cwf_ty(&a));
        let eq = match name {
            "assoc" => sub(
                &p.th,
                &p.xi,
                CSub::comp(CSub::comp(z.clone(), gm.clone()), d.clone()),
                CSub::comp(z, CSub::comp(gm, d)),
            ),
            "id-left" => sub(&p.dl, &p.gm, CSub::comp(CSub::Id, gm.clone()), gm),
            "id-right" => sub(&p.dl, &p.gm, CSub::comp(gm.clone(), CSub::Id), gm),
            "eps-eta" => sub(&p.th, &Cx::empty(), CSub::comp(CSub::Eps, d), CSub::Eps),
            "ty-id" => {
                let a = ssc_to_cwf_ty(&a);
                CwfEq::Ty { ctx: c(&p.gm), lhs: Ty::sub(a.clone(), CSub::Id), rhs: a }
            }
            "ty-comp" => {
                let a = ssc_to_cwf_ty(&a);
                let lhs = Ty::sub(a.clone(), CSub::comp(gm.clone(), d.clone()));
                CwfEq::Ty { ctx: c(&p.th), lhs, rhs: Ty::sub(Ty::sub(a, gm), d) }
            }
            "tm-id" => {
                let t = ssc_to_cwf_tm(&g.tm(&p.gm, &a, depth)?);
                let a = ssc_to_cwf_ty(&a);
                CwfEq::Tm { ctx: c(&p.gm), lhs: Tm::sub(t.clone(), CSub::Id), rhs: t, ty: Ty::sub(a, CSub::Id) }
            }
            "tm-comp" => {
                let t = ssc_to_cwf_tm(&g.tm(&p.gm, &a, depth)?);
                let a = ssc_to_cwf_ty(&a);
                let gd = CSub::comp(gm.clone(), d.clone());
                let lhs = Tm::sub(t.clone(), gd.clone());
                CwfEq::Tm { ctx: c(&p.th), lhs, rhs: Tm::sub(Tm::sub(t, gm), d), ty: Ty::sub(a, gd) }
            }
            "ext-beta1" => {
                let x = ssc_to_cwf_tm(&g.tm(&p.dl, &a_g, depth)?);
                sub(&p.dl, &p.gm, CSub::comp(CSub::P, CSub::ext(gm.clone(), x)), gm)
            }
            "ext-beta2" => {
                let x = ssc_to_cwf_tm(&g.tm(&p.dl, &a_g, depth)?);
                let lhs = Tm::sub(Tm::Q, CSub::ext(gm.clone(), x.clone()));
                CwfEq::Tm { ctx: c(&p.dl), lhs, rhs: x, ty: ssc_to_cwf_ty(&a_g) }
            }
            "ext-eta" => {
                let x = ssc_to_cwf_tm(&g.tm(&p.dl, &a_g, depth)?);
                let s = CSub::comp(CSub::ext(gm, x), d);
                let lhs = CSub::ext(CSub::comp(CSub::P, s.clone()), Tm::sub(Tm::Q, s.clone()));
                CwfEq::Sub { dom: c(&p.th), cod: ext_cod(), lhs, rhs: s }
            }
            _ => {
                let x = ssc_to_cwf_tm(&g.tm(&p.dl, &a_g, depth)?);
                let lhs = CSub::comp(CSub::ext(gm.clone(), x.clone()), d.clone());
                let rhs = CSub::ext(CSub::comp(gm, d.clone()), Tm::sub(x, d));
                CwfEq::Sub { dom: c(&p.th), cod: ext_cod(), lhs, rhs }
            }
        };
        eq.holds()?;
        Ok(eq)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn translation_of_substitutions() {
        assert_eq!(ssc_to_cwf_sub(&SubS::P), CSub::P);
        let g = SubS::P.plus();
        assert_eq!(ssc_to_cwf_sub(&g), CSub::ext(CSub::comp(CSub::P, CSub::P), Tm::Q));
        assert_eq!(ssc_to_cwf_sub(&SubS::single(Tm::Tt)), CSub::ext(CSub::Id, Tm::Tt));
    }

    #[test]
    fn extension_laws() {
        let ctx: CCtx = Ctx::new(vec![Ty::U(0), Ty::el(Tm::Q)]);
        // p ∘ (g, a) = g and q[(g, a)] = a, with g = p and a = q
        let g = CSub::P;
        let e = CSub::ext(g.clone(), Tm::Q);
        assert!(conv_sub(&ctx, &CSub::comp(CSub::P, e.clone()), &g).unwrap());
        let ty = cwf_infer(&ctx, &Tm::Q).unwrap();
        assert!(cwf_conv_tm(&ctx, &Tm::sub(Tm::Q, e), &Tm::Q, &ty).unwrap());
        // (p ∘ d, q[d]) = d
        let d = CSub::Id;
        let eta = CSub::ext(CSub::comp(CSub::P, d.clone()), Tm::sub(Tm::Q, d.clone()));
        assert!(conv_sub(&ctx, &eta, &d).unwrap());
        // A[id] = A
        let a: CTy = Ty::el(Tm::sub(Tm::Q, CSub::P));
        assert!(cwf_conv_ty(&ctx, &Ty::sub(a.clone(), CSub::Id), &a).unwrap());
    }

    #[test]
    fn identity_translates_to_tms_id() {
        assert_eq!(cwf_to_tms(&CSub::Id, 2).unwrap(), tms_id(2));
        let ext = CSub::ext(CSub::Id, Tm::Tt);
        assert_eq!(cwf_to_tms(&ext, 1).unwrap(), tms_ext(&tms_id(1), Tm::Tt));
    }

    #[test]
    fn q_of_single_back_to_ssc() {
        let ctx = Ctx::empty();
        let t: CTm = Tm::sub(Tm::Q, CSub::ext(CSub::Id, Tm::Tt));
        let back = cwf_to_ssc_tm(&t, 0).unwrap();
        assert!(conv_tm(&ctx, &back, &Tm::Tt, &Ty::Top).unwrap());
    }

    #[test]
    fn iso_equations_hold() {
        let mut g = Gen::new(crate::gen::GenConfig { seed: 9, max_depth: 3, ..Default::default() });
        for _ in 0..5 {
            for (name, eq) in contextual_iso_f(&mut g, 3).unwrap() {
                assert!(eq.holds().unwrap_or_else(|e| panic!("{name}: {e}\n{eq}")), "{name}: {eq}");
            }
        }
    }

    #[test]
    fn cwf_laws_hold_both_ways() {
        let mut g = Gen::new(crate::gen::GenConfig { seed: 10, max_depth: 3, ..Default::default() });
        for name in CWF_LAWS {
            for _ in 0..10 {
                let eq = cwf_law(name, &mut g, 3).unwrap();
                assert!(eq.holds().unwrap(), "{name}: {eq}");
                assert!(eq.holds_via_ssc().unwrap(), "{name} via ssc: {eq}");
            }
        }
    }

    #[test]
    fn polymorphic_identity_roundtrips() {
        let a = Ty::lift(Ty::el(Tm::Q));
        let ty = Ty::pi(Ty::U(0), Ty::arrow(a.clone(), a));
        let t = Tm::lam(Tm::lam(Tm::Q));
        assert!(roundtrip_ssc_tm(&Ctx::empty(), &t, &ty).unwrap());
        assert!(roundtrip_ssc_ty(&Ctx::empty(), &ty).unwrap());
    }
}
