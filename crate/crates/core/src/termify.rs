//! Termification: the CwF whose contexts are closed types, whose
//! substitutions, types and terms are closed functions between them, with
//! the lifting decorations that keep every level in range.
//!
//! The construction is generic over the substitution calculus, so it runs
//! over single substitutions and over the CwF syntax alike. Payloads are
//! terms in a parameter context (empty for fully closed data); laws are
//! decided by conversion.

use alloc::vec::Vec;
use core::fmt;

use crate::check::{check_tm, infer_ty_level};
use crate::error::{ill, Result};
use crate::eval::{conv_tm, conv_ty};
use crate::gen::{Cx, Gen};
use crate::syntax::{Ctx, Level, SubS, Subst, Tm, Ty};

/// `a ∸ b`
pub fn monus(a: Level, b: Level) -> Level {
    a.saturating_sub(b)
}

pub fn lift_k<S: Subst>(k: Level, a: Ty<S>) -> Ty<S> {
    a.lift_n(k)
}

pub fn mk_k<S: Subst>(k: Level, t: Tm<S>) -> Tm<S> {
    t.mk_n(k)
}

pub fn un_k<S: Subst>(k: Level, t: Tm<S>) -> Tm<S> {
    t.un_n(k)
}

/// `mk^m (un^u t)`
fn cast<S: Subst>(t: Tm<S>, u: Level, m: Level) -> Tm<S> {
    mk_k(m, un_k(u, t))
}

fn wk<S: Subst>(t: &Tm<S>) -> Tm<S> {
    t.clone().wk()
}

fn wk2<S: Subst>(t: &Tm<S>) -> Tm<S> {
    t.clone().wk().wk()
}

#[derive(Clone, PartialEq, Debug)]
pub struct TCon<S = SubS> {
    pub level: Level,
    pub ty: Ty<S>,
}

/// `Sub dom cod`
#[derive(Clone, PartialEq, Debug)]
pub struct TSub<S = SubS> {
    pub dom: TCon<S>,
    pub cod: TCon<S>,
    pub tm: Tm<S>,
}

/// `Ty ctx level`
#[derive(Clone, PartialEq, Debug)]
pub struct TTy<S = SubS> {
    pub ctx: TCon<S>,
    pub level: Level,
    pub tm: Tm<S>,
}

/// `Tm ty.ctx ty`
#[derive(Clone, PartialEq, Debug)]
pub struct TTm<S = SubS> {
    pub ty: TTy<S>,
    pub tm: Tm<S>,
}

impl<S: Subst> TCon<S> {
    pub fn new(level: Level, ty: Ty<S>) -> Self {
        TCon { level, ty }
    }
}

impl<S: Subst> TSub<S> {
    /// `Lift^{Γ∸Δ} Δ ⇒ Lift^{Δ∸Γ} Γ`
    pub fn carrier(&self) -> Ty<S> {
        sub_carrier(&self.dom, &self.cod)
    }
}

impl<S: Subst> TTy<S> {
    /// `Lift^{(1+i)∸Γ} Γ ⇒ Lift^{Γ∸(1+i)} (U i)`
    pub fn carrier(&self) -> Ty<S> {
        ty_carrier(&self.ctx, self.level)
    }

    /// The family `Lift^{Γ∸i} (El (un^{Γ∸(1+i)} (A[p] · mk^{(1+i)∸Γ} (un^{i∸Γ} q))))`
    /// over `Lift^{i∸Γ} Γ`.
    pub fn family(&self) -> Ty<S> {
        let (g, i) = (self.ctx.level, self.level);
        let arg = cast(Tm::Q, monus(i, g), monus(1 + i, g));
        lift_k(monus(g, i), Ty::el(un_k(monus(g, 1 + i), Tm::app(wk(&self.tm), arg))))
    }
}

impl<S: Subst> TTm<S> {
    /// `Π (Lift^{i∸Γ} Γ) (family A)`
    pub fn carrier(&self) -> Ty<S> {
        tm_carrier(&self.ty)
    }

    pub fn ctx(&self) -> &TCon<S> {
        &self.ty.ctx
    }
}

pub fn sub_carrier<S: Subst>(dom: &TCon<S>, cod: &TCon<S>) -> Ty<S> {
    let (d, g) = (dom.level, cod.level);
    Ty::arrow(lift_k(monus(g, d), dom.ty.clone()), lift_k(monus(d, g), cod.ty.clone()))
}

pub fn ty_carrier<S: Subst>(ctx: &TCon<S>, i: Level) -> Ty<S> {
    let g = ctx.level;
    Ty::arrow(lift_k(monus(1 + i, g), ctx.ty.clone()), lift_k(monus(g, 1 + i), Ty::U(i)))
}

pub fn tm_carrier<S: Subst>(a: &TTy<S>) -> Ty<S> {
    Ty::pi(lift_k(monus(a.level, a.ctx.level), a.ctx.ty.clone()), a.family())
}

/// Levels of the carriers, as the truncating-subtraction formulas give
/// them: both sides of each function type sit at the maximum.
pub fn sub_carrier_level(dom: Level, cod: Level) -> Level {
    dom.max(cod)
}

pub fn ty_carrier_level(ctx: Level, i: Level) -> Level {
    ctx.max(1 + i)
}

pub fn tm_carrier_level(ctx: Level, i: Level) -> Level {
    ctx.max(i)
}

fn same_con<S: Subst>(what: &str, a: &TCon<S>, b: &TCon<S>) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(ill!("{what}: context {} at level {} does not match {} at level {}", a.ty, a.level, b.ty, b.level))
    }
}

fn same_level(what: &str, i: Level, j: Level) -> Result<()> {
    if i == j {
        Ok(())
    } else {
        Err(ill!("{what}: level {i} does not match {j}"))
    }
}

// the category and the terminal object

pub fn t_id<S: Subst>(g: &TCon<S>) -> TSub<S> {
    TSub { dom: g.clone(), cod: g.clone(), tm: Tm::lam(Tm::Q) }
}

/// `γ ∘ δ` for `γ : Sub Δ Γ` and `δ : Sub Θ Δ`.
pub fn t_comp<S: Subst>(gamma: &TSub<S>, delta: &TSub<S>) -> Result<TSub<S>> {
    same_con("composition", &delta.cod, &gamma.dom)?;
    let (g, d, th) = (gamma.cod.level, gamma.dom.level, delta.dom.level);
    let inner = Tm::app(wk(&delta.tm), cast(Tm::Q, monus(g, th), monus(d, th)));
    let outer = Tm::app(wk(&gamma.tm), cast(inner, monus(th, d), monus(g, d)));
    Ok(TSub { dom: delta.dom.clone(), cod: gamma.cod.clone(), tm: Tm::lam(cast(outer, monus(d, g), monus(th, g))) })
}

pub fn t_empty<S: Subst>() -> TCon<S> {
    TCon { level: 0, ty: Ty::Top }
}

pub fn t_eps<S: Subst>(g: &TCon<S>) -> TSub<S> {
    TSub { dom: g.clone(), cod: t_empty(), tm: Tm::lam(mk_k(g.level, Tm::Tt)) }
}

// types and terms under substitution

pub fn t_inst_ty<S: Subst>(a: &TTy<S>, gamma: &TSub<S>) -> Result<TTy<S>> {
    same_con("type instantiation", &gamma.cod, &a.ctx)?;
    let (g, d, i) = (gamma.cod.level, gamma.dom.level, a.level);
    let inner = Tm::app(wk(&gamma.tm), cast(Tm::Q, monus(1 + i, d), monus(g, d)));
    let outer = Tm::app(wk(&a.tm), cast(inner, monus(d, g), monus(1 + i, g)));
    Ok(TTy { ctx: gamma.dom.clone(), level: i, tm: Tm::lam(cast(outer, monus(g, 1 + i), monus(d, 1 + i))) })
}

pub fn t_inst_tm<S: Subst>(a: &TTm<S>, gamma: &TSub<S>) -> Result<TTm<S>> {
    let ty = t_inst_ty(&a.ty, gamma)?;
    let (g, d, i) = (gamma.cod.level, gamma.dom.level, a.ty.level);
    let inner = Tm::app(wk(&gamma.tm), cast(Tm::Q, monus(i, d), monus(g, d)));
    let outer = Tm::app(wk(&a.tm), cast(inner, monus(d, g), monus(i, g)));
    Ok(TTm { ty, tm: Tm::lam(cast(outer, monus(g, i), monus(d, i))) })
}

// context extension

/// `Γ ▷ A := Σ (Lift^{i∸Γ} Γ) (family A)` at level `max Γ i`.
pub fn t_ext<S: Subst>(a: &TTy<S>) -> TCon<S> {
    let (g, i) = (a.ctx.level, a.level);
    TCon { level: g.max(i), ty: Ty::sigma(lift_k(monus(i, g), a.ctx.ty.clone()), a.family()) }
}

pub fn t_p<S: Subst>(a: &TTy<S>) -> TSub<S> {
    TSub { dom: t_ext(a), cod: a.ctx.clone(), tm: Tm::lam(Tm::fst(Tm::Q)) }
}

pub fn t_q<S: Subst>(a: &TTy<S>) -> TTm<S> {
    let ty = t_inst_ty(a, &t_p(a)).expect("p has the codomain of its type");
    TTm { ty, tm: Tm::lam(Tm::snd(Tm::Q)) }
}

/// `(γ, a) : Sub Δ (Γ ▷ A)` for `γ : Sub Δ Γ` and `a : Tm Δ (A[γ])`.
pub fn t_pair<S: Subst>(gamma: &TSub<S>, a_ty: &TTy<S>, a: &TTm<S>) -> Result<TSub<S>> {
    same_con("extension", &gamma.cod, &a_ty.ctx)?;
    same_con("extension", &gamma.dom, a.ctx())?;
    same_level("extension", a_ty.level, a.ty.level)?;
    let (g, d, i) = (gamma.cod.level, gamma.dom.level, a_ty.level);
    let m = g.max(i);
    let first = Tm::app(wk(&gamma.tm), cast(Tm::Q, monus(m, d), monus(g, d)));
    let second = Tm::app(wk(&a.tm), cast(Tm::Q, monus(m, d), monus(i, d)));
    let body = Tm::pair(cast(first, monus(d, g), monus(i, g)), cast(second, monus(d, i), monus(g, i)));
    Ok(TSub { dom: gamma.dom.clone(), cod: t_ext(a_ty), tm: Tm::lam(mk_k(monus(d, m), body)) })
}

/// `γ↑ := (γ ∘ p, q) : Sub (Δ ▷ A[γ]) (Γ ▷ A)`
pub fn t_lift_sub<S: Subst>(gamma: &TSub<S>, a: &TTy<S>) -> Result<TSub<S>> {
    let ag = t_inst_ty(a, gamma)?;
    let gp = t_comp(gamma, &t_p(&ag))?;
    t_pair(&gp, a, &t_q(&ag))
}

/// The pair `(x, y)` over `x : Lift^{k∸Γ} Γ` two binders out and `y` the
/// innermost variable, as an element of `Γ ▷ A`.
fn ext_pair<S: Subst>(g: Level, i: Level, k: Level) -> Tm<S> {
    Tm::pair(cast(wk(&Tm::Q), monus(k, g), monus(i, g)), mk_k(monus(g, i), Tm::Q))
}

fn binder<S: Subst>(a: &TTy<S>, b: &TTy<S>, sigma: bool) -> Result<TTy<S>> {
    same_con("type former", &b.ctx, &t_ext(a))?;
    same_level("type former", a.level, b.level)?;
    let (g, i) = (a.ctx.level, a.level);
    let m = g.max(i);
    let dom = Ty::el(un_k(monus(g, 1 + i), Tm::app(wk(&a.tm), Tm::Q)));
    let cod = Ty::el(un_k(monus(m, 1 + i), Tm::app(wk2(&b.tm), mk_k(monus(1 + i, m), ext_pair(g, i, 1 + i)))));
    let ty = if sigma { Ty::sigma(dom, cod) } else { Ty::pi(dom, cod) };
    Ok(TTy { ctx: a.ctx.clone(), level: i, tm: Tm::lam(mk_k(monus(g, 1 + i), Tm::code(ty))) })
}

// Pi

pub fn t_pi<S: Subst>(a: &TTy<S>, b: &TTy<S>) -> Result<TTy<S>> {
    binder(a, b, false)
}

pub fn t_lam<S: Subst>(a: &TTy<S>, b: &TTm<S>) -> Result<TTm<S>> {
    let ty = t_pi(a, &b.ty)?;
    let (g, i) = (a.ctx.level, a.level);
    let m = g.max(i);
    let body = un_k(monus(m, i), Tm::app(wk2(&b.tm), ext_pair(g, i, i)));
    Ok(TTm { ty, tm: Tm::lam(mk_k(monus(g, i), Tm::lam(body))) })
}

/// `app t : Tm (Γ ▷ A) B` for `t : Tm Γ (Π A B)`.
pub fn t_app<S: Subst>(a: &TTy<S>, b: &TTy<S>, t: &TTm<S>) -> Result<TTm<S>> {
    same_con("application", t.ctx(), &a.ctx)?;
    t_pi(a, b)?;
    let (g, i) = (a.ctx.level, a.level);
    let m = g.max(i);
    let f = un_k(monus(g, i), Tm::app(wk(&t.tm), Tm::fst(Tm::Q)));
    let body = Tm::app(f, un_k(monus(g, i), Tm::snd(Tm::Q)));
    Ok(TTm { ty: b.clone(), tm: Tm::lam(mk_k(monus(m, i), body)) })
}

// universes

/// `U j : Ty Γ (1+j)`
pub fn t_u<S: Subst>(g: &TCon<S>, j: Level) -> TTy<S> {
    TTy { ctx: g.clone(), level: 1 + j, tm: Tm::lam(mk_k(monus(g.level, 2 + j), Tm::code(Ty::U(j)))) }
}

/// `El a : Ty Γ j` for `a : Tm Γ (U j)`; the carriers coincide, so this is
/// an eta-expansion.
pub fn t_el<S: Subst>(a: &TTm<S>) -> Result<TTy<S>> {
    let j = a.ty.level.checked_sub(1).ok_or_else(|| ill!("El of a term at level 0"))?;
    Ok(TTy { ctx: a.ctx().clone(), level: j, tm: Tm::lam(Tm::app(wk(&a.tm), Tm::Q)) })
}

/// `c A : Tm Γ (U i)`
pub fn t_c<S: Subst>(a: &TTy<S>) -> TTm<S> {
    TTm { ty: t_u(&a.ctx, a.level), tm: Tm::lam(Tm::app(wk(&a.tm), Tm::Q)) }
}

// Lift

pub fn t_lift<S: Subst>(a: &TTy<S>) -> TTy<S> {
    let (g, i) = (a.ctx.level, a.level);
    let arg = cast(Tm::Q, monus(2 + i, g), monus(1 + i, g));
    let inner = Ty::lift(Ty::el(un_k(monus(g, 1 + i), Tm::app(wk(&a.tm), arg))));
    TTy { ctx: a.ctx.clone(), level: 1 + i, tm: Tm::lam(mk_k(monus(g, 2 + i), Tm::code(inner))) }
}

pub fn t_mk<S: Subst>(a: &TTm<S>) -> TTm<S> {
    let (g, i) = (a.ctx().level, a.ty.level);
    let inner = un_k(monus(g, i), Tm::app(wk(&a.tm), cast(Tm::Q, monus(1 + i, g), monus(i, g))));
    TTm { ty: t_lift(&a.ty), tm: Tm::lam(mk_k(monus(g, 1 + i), Tm::mk(inner))) }
}

/// `un a : Tm Γ A` for `a : Tm Γ (Lift A)`.
pub fn t_un<S: Subst>(a_ty: &TTy<S>, a: &TTm<S>) -> Result<TTm<S>> {
    same_con("un", a.ctx(), &a_ty.ctx)?;
    same_level("un", 1 + a_ty.level, a.ty.level)?;
    let (g, i) = (a_ty.ctx.level, a_ty.level);
    let inner = un_k(monus(g, 1 + i), Tm::app(wk(&a.tm), cast(Tm::Q, monus(i, g), monus(1 + i, g))));
    Ok(TTm { ty: a_ty.clone(), tm: Tm::lam(mk_k(monus(g, i), Tm::un(inner))) })
}

// Top

pub fn t_top<S: Subst>(g: &TCon<S>) -> TTy<S> {
    TTy { ctx: g.clone(), level: 0, tm: Tm::lam(mk_k(monus(g.level, 1), Tm::code(Ty::Top))) }
}

pub fn t_tt<S: Subst>(g: &TCon<S>) -> TTm<S> {
    TTm { ty: t_top(g), tm: Tm::lam(mk_k(g.level, Tm::Tt)) }
}

// Sigma

pub fn t_sigma<S: Subst>(a: &TTy<S>, b: &TTy<S>) -> Result<TTy<S>> {
    binder(a, b, true)
}

/// `⟨a⟩ := (id, a)`
pub fn t_single<S: Subst>(a_ty: &TTy<S>, a: &TTm<S>) -> Result<TSub<S>> {
    t_pair(&t_id(&a_ty.ctx), a_ty, a)
}

/// `(a, b) : Tm Γ (Σ A B)` for `b : Tm Γ (B[⟨a⟩])`.
pub fn t_tpair<S: Subst>(a_ty: &TTy<S>, b_ty: &TTy<S>, a: &TTm<S>, b: &TTm<S>) -> Result<TTm<S>> {
    let ty = t_sigma(a_ty, b_ty)?;
    same_con("pair", b.ctx(), &a_ty.ctx)?;
    let (g, i) = (a_ty.ctx.level, a_ty.level);
    let body = Tm::pair(un_k(monus(g, i), Tm::app(wk(&a.tm), Tm::Q)), un_k(monus(g, i), Tm::app(wk(&b.tm), Tm::Q)));
    Ok(TTm { ty, tm: Tm::lam(mk_k(monus(g, i), body)) })
}

pub fn t_fst<S: Subst>(a_ty: &TTy<S>, b_ty: &TTy<S>, w: &TTm<S>) -> Result<TTm<S>> {
    t_sigma(a_ty, b_ty)?;
    let (g, i) = (a_ty.ctx.level, a_ty.level);
    let body = Tm::fst(un_k(monus(g, i), Tm::app(wk(&w.tm), Tm::Q)));
    Ok(TTm { ty: a_ty.clone(), tm: Tm::lam(mk_k(monus(g, i), body)) })
}

/// `snd w : Tm Γ (B[⟨fst w⟩])`
pub fn t_snd<S: Subst>(a_ty: &TTy<S>, b_ty: &TTy<S>, w: &TTm<S>) -> Result<TTm<S>> {
    let first = t_fst(a_ty, b_ty, w)?;
    let ty = t_inst_ty(b_ty, &t_single(a_ty, &first)?)?;
    let (g, i) = (a_ty.ctx.level, a_ty.level);
    let body = Tm::snd(un_k(monus(g, i), Tm::app(wk(&w.tm), Tm::Q)));
    Ok(TTm { ty, tm: Tm::lam(mk_k(monus(g, i), body)) })
}

// checking

/// The payload checks against its carrier over `params`.
pub fn check_con<S: Subst>(params: &Ctx<S>, g: &TCon<S>) -> Result<()> {
    let l = infer_ty_level(params, &g.ty)?;
    same_level("context", g.level, l)
}

pub fn check_sub<S: Subst>(params: &Ctx<S>, s: &TSub<S>) -> Result<()> {
    check_tm(params, &s.tm, &s.carrier())
}

pub fn check_ty<S: Subst>(params: &Ctx<S>, a: &TTy<S>) -> Result<()> {
    check_tm(params, &a.tm, &a.carrier())
}

pub fn check_term<S: Subst>(params: &Ctx<S>, a: &TTm<S>) -> Result<()> {
    check_ty(params, &a.ty)?;
    check_tm(params, &a.tm, &a.carrier())
}

/// One side of a termified equation.
#[derive(Clone, Debug)]
pub enum Side<S = SubS> {
    Con(TCon<S>),
    Sub(TSub<S>),
    Ty(TTy<S>),
    Tm(TTm<S>),
}

impl<S: Subst> Side<S> {
    pub fn check(&self, params: &Ctx<S>) -> Result<()> {
        match self {
            Side::Con(g) => check_con(params, g),
            Side::Sub(s) => check_sub(params, s),
            Side::Ty(a) => check_ty(params, a),
            Side::Tm(a) => check_term(params, a),
        }
    }

    fn carrier(&self) -> Option<Ty<S>> {
        match self {
            Side::Con(_) => None,
            Side::Sub(s) => Some(s.carrier()),
            Side::Ty(a) => Some(a.carrier()),
            Side::Tm(a) => Some(a.carrier()),
        }
    }

    fn payload(&self) -> &Tm<S> {
        match self {
            Side::Con(_) => &Tm::Tt,
            Side::Sub(s) => &s.tm,
            Side::Ty(a) => &a.tm,
            Side::Tm(a) => &a.tm,
        }
    }
}

impl<S: Subst> fmt::Display for Side<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Con(g) => write!(f, "{}", g.ty),
            _ => write!(f, "{}", self.payload()),
        }
    }
}

/// Both sides typecheck over `params`, their carriers are convertible, and
/// so are the payloads.
pub fn sides_conv<S: Subst>(params: &Ctx<S>, lhs: &Side<S>, rhs: &Side<S>) -> Result<bool> {
    lhs.check(params)?;
    rhs.check(params)?;
    match (lhs, rhs) {
        (Side::Con(a), Side::Con(b)) => Ok(a.level == b.level && conv_ty(params, &a.ty, &b.ty)?),
        (Side::Con(_), _) | (_, Side::Con(_)) => Ok(false),
        _ => {
            let (ca, cb) = (lhs.carrier().unwrap(), rhs.carrier().unwrap());
            Ok(conv_ty(params, &ca, &cb)? && conv_tm(params, lhs.payload(), rhs.payload(), &ca)?)
        }
    }
}

// erasure of the lifting decorations

/// Drops every `Lift`, `mk` and `un`.
pub fn erase_ty(a: &Ty) -> Ty {
    match a {
        Ty::U(i) => Ty::U(*i),
        Ty::El(t) => Ty::el(erase_tm(t)),
        Ty::Pi(x, y) => Ty::pi(erase_ty(x), erase_ty(y)),
        Ty::Sigma(x, y) => Ty::sigma(erase_ty(x), erase_ty(y)),
        Ty::Top => Ty::Top,
        Ty::Lift(x) => erase_ty(x),
        Ty::Sub(x, s) => Ty::sub(erase_ty(x), erase_sub(s)),
    }
}

pub fn erase_tm(t: &Tm) -> Tm {
    match t {
        Tm::Q => Tm::Q,
        Tm::Tt => Tm::Tt,
        Tm::Sub(u, s) => Tm::sub(erase_tm(u), erase_sub(s)),
        Tm::Lam(b) => Tm::lam(erase_tm(b)),
        Tm::App(f, a) => Tm::app(erase_tm(f), erase_tm(a)),
        Tm::Code(a) => Tm::code(erase_ty(a)),
        Tm::Mk(a) | Tm::Un(a) => erase_tm(a),
        Tm::Pair(a, b) => Tm::pair(erase_tm(a), erase_tm(b)),
        Tm::Fst(a) => Tm::fst(erase_tm(a)),
        Tm::Snd(a) => Tm::snd(erase_tm(a)),
    }
}

fn erase_sub(s: &SubS) -> SubS {
    match s {
        SubS::P => SubS::P,
        SubS::Single(a) => SubS::single(erase_tm(a)),
        SubS::Plus(g) => erase_sub(g).plus(),
    }
}

/// The undecorated definitions, written out directly.
pub mod plain {
    use super::*;

    fn q_p() -> Tm {
        Tm::Q.wk()
    }

    pub fn sub_carrier(dom: &Ty, cod: &Ty) -> Ty {
        Ty::arrow(dom.clone(), cod.clone())
    }

    pub fn ty_carrier(ctx: &Ty, i: Level) -> Ty {
        Ty::arrow(ctx.clone(), Ty::U(i))
    }

    pub fn tm_carrier(ctx: &Ty, a: &Tm) -> Ty {
        Ty::pi(ctx.clone(), Ty::el(Tm::app(a.clone().wk(), Tm::Q)))
    }

    pub fn id() -> Tm {
        Tm::lam(Tm::Q)
    }

    pub fn comp(g: &Tm, d: &Tm) -> Tm {
        Tm::lam(Tm::app(g.clone().wk(), Tm::app(d.clone().wk(), Tm::Q)))
    }

    pub fn empty() -> Ty {
        Ty::Top
    }

    pub fn eps() -> Tm {
        Tm::lam(Tm::Tt)
    }

    pub fn inst(a: &Tm, g: &Tm) -> Tm {
        Tm::lam(Tm::app(a.clone().wk(), Tm::app(g.clone().wk(), Tm::Q)))
    }

    pub fn ext(ctx: &Ty, a: &Tm) -> Ty {
        Ty::sigma(ctx.clone(), Ty::el(Tm::app(a.clone().wk(), Tm::Q)))
    }

    pub fn pair(g: &Tm, a: &Tm) -> Tm {
        Tm::lam(Tm::pair(Tm::app(g.clone().wk(), Tm::Q), Tm::app(a.clone().wk(), Tm::Q)))
    }

    pub fn p() -> Tm {
        Tm::lam(Tm::fst(Tm::Q))
    }

    pub fn q() -> Tm {
        Tm::lam(Tm::snd(Tm::Q))
    }

    pub fn pi(a: &Tm, b: &Tm) -> Tm {
        let dom = Ty::el(Tm::app(a.clone().wk(), Tm::Q));
        let cod = Ty::el(Tm::app(b.clone().wk().wk(), Tm::pair(q_p(), Tm::Q)));
        Tm::lam(Tm::code(Ty::pi(dom, cod)))
    }

    pub fn lam(b: &Tm) -> Tm {
        Tm::lam(Tm::lam(Tm::app(b.clone().wk().wk(), Tm::pair(q_p(), Tm::Q))))
    }
}

// generated law instances

/// A parameter context under construction. Slots are numbered by level;
/// `var` renders a slot as an index at the current length.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub ctx: Ctx,
}

impl Params {
    pub fn push(&mut self, carrier: Ty) -> usize {
        self.ctx.push(carrier);
        self.ctx.len() - 1
    }

    pub fn var(&self, slot: usize) -> Tm {
        Tm::var(self.ctx.len() - 1 - slot)
    }

    /// A fresh `Ty ctx i` parameter.
    pub fn ty(&mut self, ctx: &TCon, i: Level) -> usize {
        self.push(ty_carrier(ctx, i))
    }

    pub fn sub(&mut self, dom: &TCon, cod: &TCon) -> usize {
        self.push(sub_carrier(dom, cod))
    }

    pub fn tm(&mut self, ty: &TTy) -> usize {
        self.push(tm_carrier(ty))
    }

    pub fn get_ty(&self, slot: usize, ctx: &TCon, i: Level) -> TTy {
        TTy { ctx: ctx.clone(), level: i, tm: self.var(slot) }
    }

    pub fn get_sub(&self, slot: usize, dom: &TCon, cod: &TCon) -> TSub {
        TSub { dom: dom.clone(), cod: cod.clone(), tm: self.var(slot) }
    }

    pub fn get_tm(&self, slot: usize, ty: &TTy) -> TTm {
        TTm { ty: ty.clone(), tm: self.var(slot) }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub params: Ctx,
    pub lhs: Side,
    pub rhs: Side,
}

impl Instance {
    pub fn holds(&self) -> Result<bool> {
        sides_conv(&self.params, &self.lhs, &self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Category,
    Families,
    Former,
}

pub struct Law {
    pub name: &'static str,
    pub group: Group,
    pub generate: fn(&mut Gen, u32) -> Result<Instance>,
}

impl Law {
    pub fn instance(&self, g: &mut Gen, depth: u32) -> Result<Instance> {
        let f = self.generate;
        g.retry(|g| f(g, depth))
    }
}

impl fmt::Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Law({})", self.name)
    }
}

pub fn find(name: &str) -> Option<&'static Law> {
    LAWS.iter().find(|l| l.name == name)
}

/// Decides a law on one fresh instance.
pub fn check_cwf_law(name: &str, g: &mut Gen, depth: u32) -> Result<bool> {
    let law = find(name).ok_or_else(|| ill!("unknown termification law {name}"))?;
    law.instance(g, depth)?.holds()
}

/// A closed context at a random level.
pub fn gen_con(g: &mut Gen, depth: u32) -> Result<TCon> {
    let l = g.below(3) as Level;
    gen_con_at(g, l, depth)
}

pub fn gen_con_at(g: &mut Gen, l: Level, depth: u32) -> Result<TCon> {
    let ty = g.retry(|g| g.ty_at(&Cx::empty(), l, depth))?;
    Ok(TCon { level: l, ty })
}

fn level(g: &mut Gen) -> Level {
    g.below(2) as Level
}

fn inst(params: &Params, lhs: Side, rhs: Side) -> Result<Instance> {
    Ok(Instance { params: params.ctx.clone(), lhs, rhs })
}

fn cons3(g: &mut Gen, depth: u32) -> Result<(TCon, TCon, TCon)> {
    Ok((gen_con(g, depth)?, gen_con(g, depth)?, gen_con(g, depth)?))
}

// Category, terminal object, presheaves, extension.

fn law_assoc(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (c0, c1, c2) = cons3(g, depth)?;
    let c3 = gen_con(g, depth)?;
    let mut ps = Params::default();
    let (x, y, z) = (ps.sub(&c1, &c0), ps.sub(&c2, &c1), ps.sub(&c3, &c2));
    let (f, h, k) = (ps.get_sub(x, &c1, &c0), ps.get_sub(y, &c2, &c1), ps.get_sub(z, &c3, &c2));
    let lhs = t_comp(&t_comp(&f, &h)?, &k)?;
    let rhs = t_comp(&f, &t_comp(&h, &k)?)?;
    inst(&ps, Side::Sub(lhs), Side::Sub(rhs))
}

fn law_idl(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (c0, c1) = (gen_con(g, depth)?, gen_con(g, depth)?);
    let mut ps = Params::default();
    let x = ps.sub(&c1, &c0);
    let f = ps.get_sub(x, &c1, &c0);
    inst(&ps, Side::Sub(t_comp(&t_id(&c0), &f)?), Side::Sub(f))
}

fn law_idr(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (c0, c1) = (gen_con(g, depth)?, gen_con(g, depth)?);
    let mut ps = Params::default();
    let x = ps.sub(&c1, &c0);
    let f = ps.get_sub(x, &c1, &c0);
    inst(&ps, Side::Sub(t_comp(&f, &t_id(&c1))?), Side::Sub(f))
}

fn law_eps_eta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let c = gen_con(g, depth)?;
    let mut ps = Params::default();
    let x = ps.sub(&c, &t_empty());
    let f = ps.get_sub(x, &c, &t_empty());
    inst(&ps, Side::Sub(f), Side::Sub(t_eps(&c)))
}

fn law_ty_id(g: &mut Gen, depth: u32) -> Result<Instance> {
    let c = gen_con(g, depth)?;
    let i = level(g);
    let mut ps = Params::default();
    let a = ps.ty(&c, i);
    let a = ps.get_ty(a, &c, i);
    inst(&ps, Side::Ty(t_inst_ty(&a, &t_id(&c))?), Side::Ty(a))
}

fn law_ty_comp(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (c0, c1, c2) = cons3(g, depth)?;
    let i = level(g);
    let mut ps = Params::default();
    let (a, x, y) = (ps.ty(&c0, i), ps.sub(&c1, &c0), ps.sub(&c2, &c1));
    let a = ps.get_ty(a, &c0, i);
    let (f, h) = (ps.get_sub(x, &c1, &c0), ps.get_sub(y, &c2, &c1));
    let lhs = t_inst_ty(&a, &t_comp(&f, &h)?)?;
    let rhs = t_inst_ty(&t_inst_ty(&a, &f)?, &h)?;
    inst(&ps, Side::Ty(lhs), Side::Ty(rhs))
}

fn law_tm_id(g: &mut Gen, depth: u32) -> Result<Instance> {
    let c = gen_con(g, depth)?;
    let i = level(g);
    let mut ps = Params::default();
    let a = ps.ty(&c, i);
    let t = ps.tm(&ps.get_ty(a, &c, i));
    let t = ps.get_tm(t, &ps.get_ty(a, &c, i));
    inst(&ps, Side::Tm(t_inst_tm(&t, &t_id(&c))?), Side::Tm(t))
}

fn law_tm_comp(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (c0, c1, c2) = cons3(g, depth)?;
    let i = level(g);
    let mut ps = Params::default();
    let a = ps.ty(&c0, i);
    let t = ps.tm(&ps.get_ty(a, &c0, i));
    let (x, y) = (ps.sub(&c1, &c0), ps.sub(&c2, &c1));
    let t = ps.get_tm(t, &ps.get_ty(a, &c0, i));
    let (f, h) = (ps.get_sub(x, &c1, &c0), ps.get_sub(y, &c2, &c1));
    let lhs = t_inst_tm(&t, &t_comp(&f, &h)?)?;
    let rhs = t_inst_tm(&t_inst_tm(&t, &f)?, &h)?;
    inst(&ps, Side::Tm(lhs), Side::Tm(rhs))
}

/// `A : Ty Γ i`, `γ : Sub Δ Γ` and `a : Tm Δ (A[γ])`.
fn ext_data(g: &mut Gen, depth: u32) -> Result<(Params, TTy, TSub, TTm)> {
    let (c0, c1) = (gen_con(g, depth)?, gen_con(g, depth)?);
    let i = level(g);
    let mut ps = Params::default();
    let (a, x) = (ps.ty(&c0, i), ps.sub(&c1, &c0));
    let ag = t_inst_ty(&ps.get_ty(a, &c0, i), &ps.get_sub(x, &c1, &c0))?;
    let t = ps.tm(&ag);
    let (at, f) = (ps.get_ty(a, &c0, i), ps.get_sub(x, &c1, &c0));
    let t = ps.get_tm(t, &t_inst_ty(&at, &f)?);
    Ok((ps, at, f, t))
}

fn law_ext_beta1(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (ps, a, f, t) = ext_data(g, depth)?;
    let lhs = t_comp(&t_p(&a), &t_pair(&f, &a, &t)?)?;
    inst(&ps, Side::Sub(lhs), Side::Sub(f))
}

fn law_ext_beta2(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (ps, a, f, t) = ext_data(g, depth)?;
    let lhs = t_inst_tm(&t_q(&a), &t_pair(&f, &a, &t)?)?;
    inst(&ps, Side::Tm(lhs), Side::Tm(t))
}

fn law_ext_eta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (c0, c1) = (gen_con(g, depth)?, gen_con(g, depth)?);
    let i = level(g);
    let mut ps = Params::default();
    let a = ps.ty(&c0, i);
    let ext = t_ext(&ps.get_ty(a, &c0, i));
    let x = ps.sub(&c1, &ext);
    let at = ps.get_ty(a, &c0, i);
    let ext = t_ext(&at);
    let f = ps.get_sub(x, &c1, &ext);
    let rhs = t_pair(&t_comp(&t_p(&at), &f)?, &at, &t_inst_tm(&t_q(&at), &f)?)?;
    inst(&ps, Side::Sub(f), Side::Sub(rhs))
}

fn law_ext_nat(g: &mut Gen, depth: u32) -> Result<Instance> {
    let (c0, c1) = (gen_con(g, depth)?, gen_con(g, depth)?);
    let c2 = gen_con(g, depth)?;
    let i = level(g);
    let mut ps = Params::default();
    let (a, x) = (ps.ty(&c0, i), ps.sub(&c1, &c0));
    let t = ps.tm(&t_inst_ty(&ps.get_ty(a, &c0, i), &ps.get_sub(x, &c1, &c0))?);
    let y = ps.sub(&c2, &c1);
    let (at, f, h) = (ps.get_ty(a, &c0, i), ps.get_sub(x, &c1, &c0), ps.get_sub(y, &c2, &c1));
    let t = ps.get_tm(t, &t_inst_ty(&at, &f)?);
    let lhs = t_comp(&t_pair(&f, &at, &t)?, &h)?;
    let rhs = t_pair(&t_comp(&f, &h)?, &at, &t_inst_tm(&t, &h)?)?;
    inst(&ps, Side::Sub(lhs), Side::Sub(rhs))
}

// Formers. Each draws `A : Ty Γ i`, `B : Ty (Γ ▷ A) i` and `γ : Sub Δ Γ` as
// needed.

struct Fam {
    ps: Params,
    c0: TCon,
    c1: TCon,
    i: Level,
    a: usize,
    b: usize,
    x: usize,
}

impl Fam {
    fn new(g: &mut Gen, depth: u32, i: Level) -> Result<Fam> {
        let (c0, c1) = (gen_con(g, depth)?, gen_con(g, depth)?);
        let mut ps = Params::default();
        let a = ps.ty(&c0, i);
        let ext = t_ext(&ps.get_ty(a, &c0, i));
        let b = ps.ty(&ext, i);
        let x = ps.sub(&c1, &c0);
        Ok(Fam { ps, c0, c1, i, a, b, x })
    }

    fn a(&self) -> TTy {
        self.ps.get_ty(self.a, &self.c0, self.i)
    }

    fn b(&self) -> TTy {
        self.ps.get_ty(self.b, &t_ext(&self.a()), self.i)
    }

    fn gamma(&self) -> TSub {
        self.ps.get_sub(self.x, &self.c1, &self.c0)
    }

    fn lifted(&self) -> Result<TSub> {
        t_lift_sub(&self.gamma(), &self.a())
    }

    /// A term parameter of type `ty`, built from the current slots.
    fn tm(&mut self, ty: impl Fn(&Fam) -> Result<TTy>) -> Result<usize> {
        let t = ty(self)?;
        Ok(self.ps.tm(&t))
    }

    fn get_tm(&self, slot: usize, ty: impl Fn(&Fam) -> Result<TTy>) -> Result<TTm> {
        Ok(self.ps.get_tm(slot, &ty(self)?))
    }

    fn inst(&self, lhs: Side, rhs: Side) -> Result<Instance> {
        inst(&self.ps, lhs, rhs)
    }
}

fn law_pi_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let f = Fam::new(g, depth, i)?;
    let lhs = t_inst_ty(&t_pi(&f.a(), &f.b())?, &f.gamma())?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let rhs = t_pi(&ag, &t_inst_ty(&f.b(), &f.lifted()?)?)?;
    f.inst(Side::Ty(lhs), Side::Ty(rhs))
}

fn law_lam_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| Ok(f.b()))?;
    let b = f.get_tm(t, |f| Ok(f.b()))?;
    let lhs = t_inst_tm(&t_lam(&f.a(), &b)?, &f.gamma())?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let rhs = t_lam(&ag, &t_inst_tm(&b, &f.lifted()?)?)?;
    f.inst(Side::Tm(lhs), Side::Tm(rhs))
}

fn law_app_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| t_pi(&f.a(), &f.b()))?;
    let tt = f.get_tm(t, |f| t_pi(&f.a(), &f.b()))?;
    let lhs = t_inst_tm(&t_app(&f.a(), &f.b(), &tt)?, &f.lifted()?)?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let bg = t_inst_ty(&f.b(), &f.lifted()?)?;
    let tg = t_inst_tm(&tt, &f.gamma())?;
    let tg = TTm { ty: t_pi(&ag, &bg)?, tm: tg.tm };
    let rhs = t_app(&ag, &bg, &tg)?;
    f.inst(Side::Tm(lhs), Side::Tm(rhs))
}

fn law_pi_beta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| Ok(f.b()))?;
    let b = f.get_tm(t, |f| Ok(f.b()))?;
    let lhs = t_app(&f.a(), &f.b(), &t_lam(&f.a(), &b)?)?;
    f.inst(Side::Tm(lhs), Side::Tm(b))
}

fn law_pi_eta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| t_pi(&f.a(), &f.b()))?;
    let tt = f.get_tm(t, |f| t_pi(&f.a(), &f.b()))?;
    let lhs = t_lam(&f.a(), &t_app(&f.a(), &f.b(), &tt)?)?;
    f.inst(Side::Tm(lhs), Side::Tm(tt))
}

fn law_u_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let f = Fam::new(g, depth, 0)?;
    let j = level(g);
    let lhs = t_inst_ty(&t_u(&f.c0, j), &f.gamma())?;
    f.inst(Side::Ty(lhs), Side::Ty(t_u(&f.c1, j)))
}

fn law_el_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let j = level(g);
    let mut f = Fam::new(g, depth, 0)?;
    let t = f.tm(|f| Ok(t_u(&f.c0, j)))?;
    let a = f.get_tm(t, |f| Ok(t_u(&f.c0, j)))?;
    let lhs = t_inst_ty(&t_el(&a)?, &f.gamma())?;
    let rhs = t_el(&t_inst_tm(&a, &f.gamma())?)?;
    f.inst(Side::Ty(lhs), Side::Ty(rhs))
}

fn law_c_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let f = Fam::new(g, depth, i)?;
    let lhs = t_inst_tm(&t_c(&f.a()), &f.gamma())?;
    let rhs = t_c(&t_inst_ty(&f.a(), &f.gamma())?);
    f.inst(Side::Tm(lhs), Side::Tm(rhs))
}

fn law_u_beta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let f = Fam::new(g, depth, i)?;
    f.inst(Side::Ty(t_el(&t_c(&f.a()))?), Side::Ty(f.a()))
}

fn law_u_eta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let j = level(g);
    let mut f = Fam::new(g, depth, 0)?;
    let t = f.tm(|f| Ok(t_u(&f.c0, j)))?;
    let a = f.get_tm(t, |f| Ok(t_u(&f.c0, j)))?;
    f.inst(Side::Tm(t_c(&t_el(&a)?)), Side::Tm(a))
}

fn law_lift_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let f = Fam::new(g, depth, i)?;
    let lhs = t_inst_ty(&t_lift(&f.a()), &f.gamma())?;
    let rhs = t_lift(&t_inst_ty(&f.a(), &f.gamma())?);
    f.inst(Side::Ty(lhs), Side::Ty(rhs))
}

fn law_mk_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| Ok(f.a()))?;
    let a = f.get_tm(t, |f| Ok(f.a()))?;
    let lhs = t_inst_tm(&t_mk(&a), &f.gamma())?;
    let rhs = t_mk(&t_inst_tm(&a, &f.gamma())?);
    f.inst(Side::Tm(lhs), Side::Tm(rhs))
}

fn law_un_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| Ok(t_lift(&f.a())))?;
    let a = f.get_tm(t, |f| Ok(t_lift(&f.a())))?;
    let lhs = t_inst_tm(&t_un(&f.a(), &a)?, &f.gamma())?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let ag_l = TTm { ty: t_lift(&ag), tm: t_inst_tm(&a, &f.gamma())?.tm };
    let rhs = t_un(&ag, &ag_l)?;
    f.inst(Side::Tm(lhs), Side::Tm(rhs))
}

fn law_lift_beta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| Ok(f.a()))?;
    let a = f.get_tm(t, |f| Ok(f.a()))?;
    f.inst(Side::Tm(t_un(&f.a(), &t_mk(&a))?), Side::Tm(a))
}

fn law_lift_eta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| Ok(t_lift(&f.a())))?;
    let a = f.get_tm(t, |f| Ok(t_lift(&f.a())))?;
    f.inst(Side::Tm(t_mk(&t_un(&f.a(), &a)?)), Side::Tm(a))
}

fn law_top_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let f = Fam::new(g, depth, 0)?;
    let lhs = t_inst_ty(&t_top(&f.c0), &f.gamma())?;
    f.inst(Side::Ty(lhs), Side::Ty(t_top(&f.c1)))
}

fn law_tt_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let f = Fam::new(g, depth, 0)?;
    let lhs = t_inst_tm(&t_tt(&f.c0), &f.gamma())?;
    f.inst(Side::Tm(lhs), Side::Tm(t_tt(&f.c1)))
}

fn law_top_eta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let mut f = Fam::new(g, depth, 0)?;
    let t = f.tm(|f| Ok(t_top(&f.c0)))?;
    let a = f.get_tm(t, |f| Ok(t_top(&f.c0)))?;
    f.inst(Side::Tm(a), Side::Tm(t_tt(&f.c0)))
}

fn law_sigma_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let f = Fam::new(g, depth, i)?;
    let lhs = t_inst_ty(&t_sigma(&f.a(), &f.b())?, &f.gamma())?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let rhs = t_sigma(&ag, &t_inst_ty(&f.b(), &f.lifted()?)?)?;
    f.inst(Side::Ty(lhs), Side::Ty(rhs))
}

/// `a : Tm Γ A` and `b : Tm Γ (B[⟨a⟩])`.
fn pair_data(f: &mut Fam) -> Result<(TTm, TTm)> {
    let s = f.tm(|f| Ok(f.a()))?;
    let t = f.tm(|f| {
        let a = f.ps.get_tm(s, &f.a());
        t_inst_ty(&f.b(), &t_single(&f.a(), &a)?)
    })?;
    let a = f.get_tm(s, |f| Ok(f.a()))?;
    let b = f.get_tm(t, |f| t_inst_ty(&f.b(), &t_single(&f.a(), &f.ps.get_tm(s, &f.a()))?))?;
    Ok((a, b))
}

fn law_pair_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let (a, b) = pair_data(&mut f)?;
    let lhs = t_inst_tm(&t_tpair(&f.a(), &f.b(), &a, &b)?, &f.gamma())?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let bg = t_inst_ty(&f.b(), &f.lifted()?)?;
    let (ag_t, bg_t) = (t_inst_tm(&a, &f.gamma())?, t_inst_tm(&b, &f.gamma())?);
    let ag_t = TTm { ty: ag.clone(), tm: ag_t.tm };
    let bg_t = TTm { ty: t_inst_ty(&bg, &t_single(&ag, &ag_t)?)?, tm: bg_t.tm };
    let rhs = t_tpair(&ag, &bg, &ag_t, &bg_t)?;
    f.inst(Side::Tm(lhs), Side::Tm(rhs))
}

fn law_fst_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| t_sigma(&f.a(), &f.b()))?;
    let w = f.get_tm(t, |f| t_sigma(&f.a(), &f.b()))?;
    let lhs = t_inst_tm(&t_fst(&f.a(), &f.b(), &w)?, &f.gamma())?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let bg = t_inst_ty(&f.b(), &f.lifted()?)?;
    let wg = TTm { ty: t_sigma(&ag, &bg)?, tm: t_inst_tm(&w, &f.gamma())?.tm };
    f.inst(Side::Tm(lhs), Side::Tm(t_fst(&ag, &bg, &wg)?))
}

fn law_snd_sub(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| t_sigma(&f.a(), &f.b()))?;
    let w = f.get_tm(t, |f| t_sigma(&f.a(), &f.b()))?;
    let lhs = t_inst_tm(&t_snd(&f.a(), &f.b(), &w)?, &f.gamma())?;
    let ag = t_inst_ty(&f.a(), &f.gamma())?;
    let bg = t_inst_ty(&f.b(), &f.lifted()?)?;
    let wg = TTm { ty: t_sigma(&ag, &bg)?, tm: t_inst_tm(&w, &f.gamma())?.tm };
    f.inst(Side::Tm(lhs), Side::Tm(t_snd(&ag, &bg, &wg)?))
}

fn law_sigma_beta1(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let (a, b) = pair_data(&mut f)?;
    let lhs = t_fst(&f.a(), &f.b(), &t_tpair(&f.a(), &f.b(), &a, &b)?)?;
    f.inst(Side::Tm(lhs), Side::Tm(a))
}

fn law_sigma_beta2(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let (a, b) = pair_data(&mut f)?;
    let lhs = t_snd(&f.a(), &f.b(), &t_tpair(&f.a(), &f.b(), &a, &b)?)?;
    f.inst(Side::Tm(lhs), Side::Tm(b))
}

fn law_sigma_eta(g: &mut Gen, depth: u32) -> Result<Instance> {
    let i = level(g);
    let mut f = Fam::new(g, depth, i)?;
    let t = f.tm(|f| t_sigma(&f.a(), &f.b()))?;
    let w = f.get_tm(t, |f| t_sigma(&f.a(), &f.b()))?;
    let (a, b) = (f.a(), f.b());
    let lhs = t_tpair(&a, &b, &t_fst(&a, &b, &w)?, &t_snd(&a, &b, &w)?)?;
    f.inst(Side::Tm(lhs), Side::Tm(w))
}

macro_rules! law {
    ($name:expr, $group:ident, $f:ident) => {
        Law { name: $name, group: Group::$group, generate: $f }
    };
}

pub static LAWS: &[Law] = &[
    law!("assoc", Category, law_assoc),
    law!("id-left", Category, law_idl),
    law!("id-right", Category, law_idr),
    law!("eps-eta", Category, law_eps_eta),
    law!("ty-id", Families, law_ty_id),
    law!("ty-comp", Families, law_ty_comp),
    law!("tm-id", Families, law_tm_id),
    law!("tm-comp", Families, law_tm_comp),
    law!("ext-beta1", Families, law_ext_beta1),
    law!("ext-beta2", Families, law_ext_beta2),
    law!("ext-eta", Families, law_ext_eta),
    law!("ext-nat", Families, law_ext_nat),
    law!("Pi[]", Former, law_pi_sub),
    law!("lam[]", Former, law_lam_sub),
    law!("app[]", Former, law_app_sub),
    law!("Pi-beta", Former, law_pi_beta),
    law!("Pi-eta", Former, law_pi_eta),
    law!("U[]", Former, law_u_sub),
    law!("El[]", Former, law_el_sub),
    law!("c[]", Former, law_c_sub),
    law!("U-beta", Former, law_u_beta),
    law!("U-eta", Former, law_u_eta),
    law!("Lift[]", Former, law_lift_sub),
    law!("mk[]", Former, law_mk_sub),
    law!("un[]", Former, law_un_sub),
    law!("Lift-beta", Former, law_lift_beta),
    law!("Lift-eta", Former, law_lift_eta),
    law!("Top[]", Former, law_top_sub),
    law!("tt[]", Former, law_tt_sub),
    law!("Top-eta", Former, law_top_eta),
    law!("Sigma[]", Former, law_sigma_sub),
    law!("pair[]", Former, law_pair_sub),
    law!("fst[]", Former, law_fst_sub),
    law!("snd[]", Former, law_snd_sub),
    law!("Sigma-beta1", Former, law_sigma_beta1),
    law!("Sigma-beta2", Former, law_sigma_beta2),
    law!("Sigma-eta", Former, law_sigma_eta),
];

/// The functor law on symbolic `A`, `γ`, `δ`, both sides as raw terms.
pub fn functor_endpoints(g: &mut Gen, depth: u32) -> Result<Instance> {
    law_ty_comp(g, depth)
}

/// All names, in table order.
pub fn law_names() -> Vec<&'static str> {
    LAWS.iter().map(|l| l.name).collect()
}

// emission of single definitions

/// Operations `emit` knows, in display order.
pub const EMIT_OPS: &[&str] = &[
    "id", "comp", "empty", "eps", "inst-ty", "inst-tm", "ext", "pair", "p", "q", "lift-sub", "single", "Pi", "lam",
    "app", "U", "El", "c", "Lift", "mk", "un", "Top", "tt", "Sigma", "tpair", "fst", "snd",
];

/// One emitted definition over symbolic arguments, with the undecorated
/// display where one exists.
#[derive(Clone, Debug)]
pub struct Emission {
    pub params: Ctx,
    pub def: Side,
    pub plain: Option<Side>,
}

impl Emission {
    /// The definition with every decoration erased.
    pub fn erased(&self) -> Side {
        erase_side(&self.def)
    }
}

fn erase_side(s: &Side) -> Side {
    match s {
        Side::Con(g) => Side::Con(TCon { level: g.level, ty: erase_ty(&g.ty) }),
        Side::Sub(x) => Side::Sub(TSub { tm: erase_tm(&x.tm), ..x.clone() }),
        Side::Ty(x) => Side::Ty(TTy { tm: erase_tm(&x.tm), ..x.clone() }),
        Side::Tm(x) => Side::Tm(TTm { tm: erase_tm(&x.tm), ..x.clone() }),
    }
}

/// Emits `op` with `Γ` at level `lg`, `Δ` at level `ld` and types at level
/// `i`. The arguments are variables of the returned parameter context:
/// `A : Ty Γ i`, `B : Ty (Γ ▷ A) i`, `γ : Sub Δ Γ`, `δ : Sub Θ Δ`, `t : Tm Γ A`
/// and one term argument per remaining operand.
pub fn emit(op: &str, g: &mut Gen, lg: Level, ld: Level, i: Level) -> Result<Emission> {
    if !EMIT_OPS.contains(&op) {
        return Err(ill!("unknown termification operation {op}"));
    }
    let gam = gen_con_at(g, lg, 2)?;
    let del = gen_con_at(g, ld, 2)?;
    let the = gen_con_at(g, lg.max(ld), 2)?;
    let mut ps = Params::default();
    let sa = ps.ty(&gam, i);
    let a = ps.get_ty(sa, &gam, i);
    let gext = t_ext(&a);
    let sb = ps.ty(&gext, i);
    let sg = ps.sub(&del, &gam);
    let sd = ps.sub(&the, &del);
    let st = ps.tm(&ps.get_ty(sa, &gam, i));
    // each argument slot is read back at the final length
    let extra = |ps: &mut Params, ty: &TTy| ps.tm(ty);
    let b_at = |ps: &Params| ps.get_ty(sb, &t_ext(&ps.get_ty(sa, &gam, i)), i);
    let a_at = |ps: &Params| ps.get_ty(sa, &gam, i);
    let (def, plain) = match op {
        "id" => (Side::Sub(t_id(&gam)), Some(plain::id())),
        "comp" => {
            let (gm, dl) = (ps.get_sub(sg, &del, &gam), ps.get_sub(sd, &the, &del));
            let pl = plain::comp(&erase_tm(&gm.tm), &erase_tm(&dl.tm));
            (Side::Sub(t_comp(&gm, &dl)?), Some(pl))
        }
        "empty" => {
            let e: TCon = t_empty();
            return Ok(Emission { params: ps.ctx, def: Side::Con(e), plain: Some(Side::Con(TCon::new(0, plain::empty()))) });
        }
        "eps" => (Side::Sub(t_eps(&gam)), Some(plain::eps())),
        "inst-ty" => {
            let (a, gm) = (a_at(&ps), ps.get_sub(sg, &del, &gam));
            let pl = plain::inst(&erase_tm(&a.tm), &erase_tm(&gm.tm));
            (Side::Ty(t_inst_ty(&a, &gm)?), Some(pl))
        }
        "inst-tm" => {
            let (a, gm) = (a_at(&ps), ps.get_sub(sg, &del, &gam));
            let t = ps.get_tm(st, &a);
            let pl = plain::inst(&erase_tm(&t.tm), &erase_tm(&gm.tm));
            (Side::Tm(t_inst_tm(&t, &gm)?), Some(pl))
        }
        "ext" => {
            let a = a_at(&ps);
            let pl = plain::ext(&erase_ty(&gam.ty), &erase_tm(&a.tm));
            let c = t_ext(&a);
            let level = c.level;
            return Ok(Emission { params: ps.ctx, def: Side::Con(c), plain: Some(Side::Con(TCon::new(level, pl))) });
        }
        "pair" => {
            let gm0 = ps.get_sub(sg, &del, &gam);
            let ag0 = t_inst_ty(&a_at(&ps), &gm0)?;
            let sx = extra(&mut ps, &ag0);
            let (a, gm) = (a_at(&ps), ps.get_sub(sg, &del, &gam));
            let x = ps.get_tm(sx, &t_inst_ty(&a, &gm)?);
            let pl = plain::pair(&erase_tm(&gm.tm), &erase_tm(&x.tm));
            (Side::Sub(t_pair(&gm, &a, &x)?), Some(pl))
        }
        "p" => (Side::Sub(t_p(&a_at(&ps))), Some(plain::p())),
        "q" => (Side::Tm(t_q(&a_at(&ps))), Some(plain::q())),
        "lift-sub" => {
            let (a, gm) = (a_at(&ps), ps.get_sub(sg, &del, &gam));
            (Side::Sub(t_lift_sub(&gm, &a)?), None)
        }
        "single" => {
            let a = a_at(&ps);
            (Side::Sub(t_single(&a, &ps.get_tm(st, &a))?), None)
        }
        "Pi" | "Sigma" => {
            let (a, b) = (a_at(&ps), b_at(&ps));
            if op == "Pi" {
                let pl = plain::pi(&erase_tm(&a.tm), &erase_tm(&b.tm));
                (Side::Ty(t_pi(&a, &b)?), Some(pl))
            } else {
                (Side::Ty(t_sigma(&a, &b)?), None)
            }
        }
        "lam" => {
            let b0 = b_at(&ps);
            let sx = extra(&mut ps, &b0);
            let (a, b) = (a_at(&ps), b_at(&ps));
            let x = ps.get_tm(sx, &b);
            let pl = plain::lam(&erase_tm(&x.tm));
            (Side::Tm(t_lam(&a, &x)?), Some(pl))
        }
        "app" => {
            let f0 = t_pi(&a_at(&ps), &b_at(&ps))?;
            let sx = extra(&mut ps, &f0);
            let (a, b) = (a_at(&ps), b_at(&ps));
            let f = ps.get_tm(sx, &t_pi(&a, &b)?);
            (Side::Tm(t_app(&a, &b, &f)?), None)
        }
        "U" => (Side::Ty(t_u(&gam, i)), None),
        "El" => {
            let u0 = t_u(&gam, i);
            let sx = extra(&mut ps, &u0);
            (Side::Ty(t_el(&ps.get_tm(sx, &t_u(&gam, i)))?), None)
        }
        "c" => (Side::Tm(t_c(&a_at(&ps))), None),
        "Lift" => (Side::Ty(t_lift(&a_at(&ps))), None),
        "mk" => {
            let a = a_at(&ps);
            (Side::Tm(t_mk(&ps.get_tm(st, &a))), None)
        }
        "un" => {
            let l0 = t_lift(&a_at(&ps));
            let sx = extra(&mut ps, &l0);
            let a = a_at(&ps);
            (Side::Tm(t_un(&a, &ps.get_tm(sx, &t_lift(&a)))?), None)
        }
        "Top" => (Side::Ty(t_top(&gam)), None),
        "tt" => (Side::Tm(t_tt(&gam)), None),
        "tpair" | "fst" | "snd" => {
            if op == "tpair" {
                let a0 = a_at(&ps);
                let b1 = t_inst_ty(&b_at(&ps), &t_single(&a0, &ps.get_tm(st, &a0))?)?;
                let sx = extra(&mut ps, &b1);
                let (a, b) = (a_at(&ps), b_at(&ps));
                let t = ps.get_tm(st, &a);
                let y = ps.get_tm(sx, &t_inst_ty(&b, &t_single(&a, &t)?)?);
                (Side::Tm(t_tpair(&a, &b, &t, &y)?), None)
            } else {
                let s0 = t_sigma(&a_at(&ps), &b_at(&ps))?;
                let sx = extra(&mut ps, &s0);
                let (a, b) = (a_at(&ps), b_at(&ps));
                let w = ps.get_tm(sx, &t_sigma(&a, &b)?);
                let r = if op == "fst" { t_fst(&a, &b, &w)? } else { t_snd(&a, &b, &w)? };
                (Side::Tm(r), None)
            }
        }
        _ => unreachable!("checked against EMIT_OPS"),
    };
    let plain = plain.map(|tm| match &def {
        Side::Sub(x) => Side::Sub(TSub { tm, ..x.clone() }),
        Side::Ty(x) => Side::Ty(TTy { tm, ..x.clone() }),
        Side::Tm(x) => Side::Tm(TTm { tm, ..x.clone() }),
        Side::Con(x) => Side::Con(x.clone()),
    });
    Ok(Emission { params: ps.ctx, def, plain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::GenConfig;

    fn gen(seed: u64) -> Gen {
        Gen::new(GenConfig { seed, max_depth: 3, ..GenConfig::default() })
    }

    #[test]
    fn iterated_lifting() {
        assert_eq!(lift_k::<SubS>(0, Ty::Top), Ty::Top);
        assert_eq!(lift_k::<SubS>(1, Ty::Top), Ty::lift(Ty::Top));
        let t: Tm = Tm::Tt;
        let ctx = Ctx::empty();
        assert!(conv_tm(&ctx, &un_k(2, mk_k(2, t.clone())), &t, &Ty::Top).unwrap());
        assert_eq!(infer_ty_level(&ctx, &lift_k(1, Ty::Top)).unwrap(), 1);
    }

    #[test]
    fn closed_operations_typecheck() {
        let ctx = Ctx::empty();
        let g = TCon::new(1, Ty::U(0));
        let top: TCon = t_empty();
        check_sub(&ctx, &t_id(&g)).unwrap();
        check_sub(&ctx, &t_eps(&g)).unwrap();
        check_sub(&ctx, &t_comp(&t_eps(&g), &t_id(&g)).unwrap()).unwrap();
        let a = t_u(&g, 0);
        check_ty(&ctx, &a).unwrap();
        check_ty(&ctx, &t_top(&g)).unwrap();
        check_term(&ctx, &t_tt(&g)).unwrap();
        check_con(&ctx, &t_ext(&a)).unwrap();
        check_sub(&ctx, &t_p(&a)).unwrap();
        check_term(&ctx, &t_q(&a)).unwrap();
        let b = t_inst_ty(&a, &t_id(&g)).unwrap();
        check_ty(&ctx, &b).unwrap();
        let eq = sides_conv(&ctx, &Side::Sub(t_eps(&top)), &Side::Sub(t_id(&top))).unwrap();
        assert!(eq);
    }

    #[test]
    fn every_law_holds_on_samples() {
        let mut g = gen(5);
        for law in LAWS {
            for _ in 0..3 {
                let inst = law.instance(&mut g, 3).unwrap_or_else(|e| panic!("{}: {e}", law.name));
                let ok = inst.holds().unwrap_or_else(|e| panic!("{}: {e}\n{}\n{}", law.name, inst.lhs, inst.rhs));
                assert!(ok, "{} fails:\n{}\n{}", law.name, inst.lhs, inst.rhs);
            }
        }
    }
}
