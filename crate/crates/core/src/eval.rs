//! Normalisation by evaluation.
//!
//! Terms are evaluated into a semantic domain with closures; readback is
//! type-directed and produces eta-long normal forms with de Bruijn indices.
//! Substitutions of either calculus act on environments.

use alloc::boxed::Box;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{ill, Result};
use crate::syntax::{Level, SubView, Subst, Tm, Ty};

#[derive(Clone)]
pub struct Clo(Rc<dyn Fn(Val) -> Val>);

impl Clo {
    pub fn new(f: impl Fn(Val) -> Val + 'static) -> Self {
        Clo(Rc::new(f))
    }

    pub fn apply(&self, v: Val) -> Val {
        (self.0)(v)
    }
}

impl fmt::Debug for Clo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<closure>")
    }
}

/// Semantic values of types and terms.
#[derive(Clone, Debug)]
pub enum Val {
    U(Level),
    Pi(Rc<Val>, Clo),
    Sigma(Rc<Val>, Clo),
    Top,
    Lift(Rc<Val>),
    El(Rc<Ne>),
    Lam(Clo),
    Pair(Rc<Val>, Rc<Val>),
    Mk(Rc<Val>),
    Tt,
    Code(Rc<Val>),
    Ne(Rc<Ne>),
}

/// Neutral spines; variables are de Bruijn levels.
#[derive(Clone, Debug)]
pub enum Ne {
    Var(usize),
    App(Rc<Ne>, Val),
    Fst(Rc<Ne>),
    Snd(Rc<Ne>),
    Un(Rc<Ne>),
}

pub type Env = Vec<Val>;

impl Val {
    pub fn var(level: usize) -> Val {
        Val::Ne(Rc::new(Ne::Var(level)))
    }
}

pub fn app(f: &Val, x: Val) -> Val {
    match f {
        Val::Lam(c) => c.apply(x),
        Val::Ne(n) => Val::Ne(Rc::new(Ne::App(n.clone(), x))),
        _ => panic!("application of a non-function value"),
    }
}

pub fn fst(v: &Val) -> Val {
    match v {
        Val::Pair(a, _) => (**a).clone(),
        Val::Ne(n) => Val::Ne(Rc::new(Ne::Fst(n.clone()))),
        _ => panic!("projection from a non-pair value"),
    }
}

pub fn snd(v: &Val) -> Val {
    match v {
        Val::Pair(_, b) => (**b).clone(),
        Val::Ne(n) => Val::Ne(Rc::new(Ne::Snd(n.clone()))),
        _ => panic!("projection from a non-pair value"),
    }
}

pub fn un(v: &Val) -> Val {
    match v {
        Val::Mk(a) => (**a).clone(),
        Val::Ne(n) => Val::Ne(Rc::new(Ne::Un(n.clone()))),
        _ => panic!("un of a non-lifted value"),
    }
}

pub fn el(v: &Val) -> Val {
    match v {
        Val::Code(a) => (**a).clone(),
        Val::Ne(n) => Val::El(n.clone()),
        _ => panic!("El of a non-code value"),
    }
}

pub fn eval_sub<S: Subst>(env: &Env, s: &S) -> Env {
    match s.view() {
        SubView::Weaken => {
            let mut e = env.clone();
            e.pop();
            e
        }
        SubView::Single(a) => {
            let mut e = env.clone();
            e.push(eval_tm(env, a));
            e
        }
        SubView::Plus(g) => {
            let mut e = env.clone();
            let last = e.pop().expect("lifting applied to an empty environment");
            let mut e = eval_sub(&e, g);
            e.push(last);
            e
        }
        SubView::Id => env.clone(),
        SubView::Comp(f, g) => eval_sub(&eval_sub(env, g), f),
        SubView::Eps => Vec::new(),
        SubView::Ext(g, a) => {
            let v = eval_tm(env, a);
            let mut e = eval_sub(env, g);
            e.push(v);
            e
        }
    }
}

fn ty_clo<S: Subst>(env: &Env, body: &alloc::sync::Arc<Ty<S>>) -> Clo {
    let env = env.clone();
    let body = body.clone();
    Clo::new(move |x| {
        let mut e = env.clone();
        e.push(x);
        eval_ty(&e, &body)
    })
}

pub fn eval_ty<S: Subst>(env: &Env, t: &Ty<S>) -> Val {
    match t {
        Ty::U(i) => Val::U(*i),
        Ty::El(a) => el(&eval_tm(env, a)),
        Ty::Pi(a, b) => Val::Pi(Rc::new(eval_ty(env, a)), ty_clo(env, b)),
        Ty::Sigma(a, b) => Val::Sigma(Rc::new(eval_ty(env, a)), ty_clo(env, b)),
        Ty::Top => Val::Top,
        Ty::Lift(a) => Val::Lift(Rc::new(eval_ty(env, a))),
        Ty::Sub(a, s) => eval_ty(&eval_sub(env, &**s), a),
    }
}

pub fn eval_tm<S: Subst>(env: &Env, t: &Tm<S>) -> Val {
    match t {
        Tm::Q => env.last().cloned().expect("q evaluated in an empty environment"),
        Tm::Sub(t, s) => eval_tm(&eval_sub(env, &**s), t),
        Tm::Lam(b) => {
            let env = env.clone();
            let b = b.clone();
            Val::Lam(Clo::new(move |x| {
                let mut e = env.clone();
                e.push(x);
                eval_tm(&e, &b)
            }))
        }
        Tm::App(f, a) => app(&eval_tm(env, f), eval_tm(env, a)),
        Tm::Code(a) => Val::Code(Rc::new(eval_ty(env, a))),
        Tm::Mk(a) => Val::Mk(Rc::new(eval_tm(env, a))),
        Tm::Un(a) => un(&eval_tm(env, a)),
        Tm::Tt => Val::Tt,
        Tm::Pair(a, b) => Val::Pair(Rc::new(eval_tm(env, a)), Rc::new(eval_tm(env, b))),
        Tm::Fst(a) => fst(&eval_tm(env, a)),
        Tm::Snd(a) => snd(&eval_tm(env, a)),
    }
}

/// Normal types.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NfTy {
    U(Level),
    El(NfNe),
    Pi(Box<NfTy>, Box<NfTy>),
    Sigma(Box<NfTy>, Box<NfTy>),
    Top,
    Lift(Box<NfTy>),
}

/// Normal terms, eta-long.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NfTm {
    Lam(Box<NfTm>),
    Pair(Box<NfTm>, Box<NfTm>),
    Mk(Box<NfTm>),
    Tt,
    Code(Box<NfTy>),
    Ne(NfNe),
}

/// Neutral normal terms; variables are de Bruijn indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NfNe {
    Var(usize),
    App(Box<NfNe>, Box<NfTm>),
    Fst(Box<NfNe>),
    Snd(Box<NfNe>),
    Un(Box<NfNe>),
}

/// Readback state: the types of the variables in scope, as values.
pub struct Readback {
    pub tys: Vec<Val>,
}

impl Readback {
    pub fn new(tys: Vec<Val>) -> Self {
        Readback { tys }
    }

    fn depth(&self) -> usize {
        self.tys.len()
    }

    fn under<T>(&mut self, a: &Val, f: impl FnOnce(&mut Self, Val) -> Result<T>) -> Result<T> {
        let x = Val::var(self.depth());
        self.tys.push(a.clone());
        let r = f(self, x);
        self.tys.pop();
        r
    }

    pub fn ty(&mut self, v: &Val) -> Result<NfTy> {
        Ok(match v {
            Val::U(i) => NfTy::U(*i),
            Val::El(n) => NfTy::El(self.ne(n)?.0),
            Val::Pi(a, b) => {
                let na = self.ty(a)?;
                let nb = self.under(a, |rb, x| rb.ty(&b.apply(x)))?;
                NfTy::Pi(Box::new(na), Box::new(nb))
            }
            Val::Sigma(a, b) => {
                let na = self.ty(a)?;
                let nb = self.under(a, |rb, x| rb.ty(&b.apply(x)))?;
                NfTy::Sigma(Box::new(na), Box::new(nb))
            }
            Val::Top => NfTy::Top,
            Val::Lift(a) => NfTy::Lift(Box::new(self.ty(a)?)),
            _ => return Err(ill!("readback of a term value as a type")),
        })
    }

    /// Eta-long readback of `v` at type `ty`.
    pub fn tm(&mut self, ty: &Val, v: &Val) -> Result<NfTm> {
        Ok(match ty {
            Val::Pi(a, b) => {
                let body = self.under(a, |rb, x| rb.tm(&b.apply(x.clone()), &app(v, x)))?;
                NfTm::Lam(Box::new(body))
            }
            Val::Sigma(a, b) => {
                let v1 = fst(v);
                let n1 = self.tm(a, &v1)?;
                let n2 = self.tm(&b.apply(v1), &snd(v))?;
                NfTm::Pair(Box::new(n1), Box::new(n2))
            }
            Val::Top => NfTm::Tt,
            Val::Lift(a) => NfTm::Mk(Box::new(self.tm(a, &un(v))?)),
            Val::U(_) => match v {
                Val::Code(a) => NfTm::Code(Box::new(self.ty(a)?)),
                Val::Ne(n) => NfTm::Code(Box::new(NfTy::El(self.ne(n)?.0))),
                _ => return Err(ill!("readback of a non-code at a universe")),
            },
            Val::El(_) => match v {
                Val::Ne(n) => NfTm::Ne(self.ne(n)?.0),
                _ => return Err(ill!("readback of a canonical value at a neutral type")),
            },
            _ => return Err(ill!("readback at a non-type value")),
        })
    }

    /// Neutral readback, returning the neutral's type.
    pub fn ne(&mut self, n: &Ne) -> Result<(NfNe, Val)> {
        Ok(match n {
            Ne::Var(l) => {
                let ty = self.tys.get(*l).cloned().ok_or_else(|| ill!("variable out of scope"))?;
                (NfNe::Var(self.depth() - 1 - l), ty)
            }
            Ne::App(f, x) => {
                let (nf, ty) = self.ne(f)?;
                match ty {
                    Val::Pi(a, b) => {
                        let nx = self.tm(&a, x)?;
                        (NfNe::App(Box::new(nf), Box::new(nx)), b.apply(x.clone()))
                    }
                    _ => return Err(ill!("application of a neutral of non-function type")),
                }
            }
            Ne::Fst(w) => {
                let (nw, ty) = self.ne(w)?;
                match ty {
                    Val::Sigma(a, _) => (NfNe::Fst(Box::new(nw)), (*a).clone()),
                    _ => return Err(ill!("projection from a neutral of non-pair type")),
                }
            }
            Ne::Snd(w) => {
                let (nw, ty) = self.ne(w)?;
                match ty {
                    Val::Sigma(_, b) => {
                        let first = Val::Ne(Rc::new(Ne::Fst(w.clone())));
                        (NfNe::Snd(Box::new(nw)), b.apply(first))
                    }
                    _ => return Err(ill!("projection from a neutral of non-pair type")),
                }
            }
            Ne::Un(w) => {
                let (nw, ty) = self.ne(w)?;
                match ty {
                    Val::Lift(a) => (NfNe::Un(Box::new(nw)), (*a).clone()),
                    _ => return Err(ill!("un of a neutral of non-lifted type")),
                }
            }
        })
    }
}

impl NfTy {
    pub fn to_ty<S: Subst>(&self) -> Ty<S> {
        match self {
            NfTy::U(i) => Ty::U(*i),
            NfTy::El(n) => Ty::el(n.to_tm()),
            NfTy::Pi(a, b) => Ty::pi(a.to_ty(), b.to_ty()),
            NfTy::Sigma(a, b) => Ty::sigma(a.to_ty(), b.to_ty()),
            NfTy::Top => Ty::Top,
            NfTy::Lift(a) => Ty::lift(a.to_ty()),
        }
    }

    /// Renames free variables; `f` maps an index (relative to the outside)
    /// to its new index, or `None` when the variable must not occur.
    pub fn rename(&self, depth: usize, f: &dyn Fn(usize) -> Option<usize>) -> Option<NfTy> {
        Some(match self {
            NfTy::U(i) => NfTy::U(*i),
            NfTy::El(n) => NfTy::El(n.rename(depth, f)?),
            NfTy::Pi(a, b) => NfTy::Pi(Box::new(a.rename(depth, f)?), Box::new(b.rename(depth + 1, f)?)),
            NfTy::Sigma(a, b) => {
                NfTy::Sigma(Box::new(a.rename(depth, f)?), Box::new(b.rename(depth + 1, f)?))
            }
            NfTy::Top => NfTy::Top,
            NfTy::Lift(a) => NfTy::Lift(Box::new(a.rename(depth, f)?)),
        })
    }
}

impl NfTm {
    pub fn to_tm<S: Subst>(&self) -> Tm<S> {
        match self {
            NfTm::Lam(b) => Tm::lam(b.to_tm()),
            NfTm::Pair(a, b) => Tm::pair(a.to_tm(), b.to_tm()),
            NfTm::Mk(a) => Tm::mk(a.to_tm()),
            NfTm::Tt => Tm::Tt,
            NfTm::Code(a) => Tm::code(a.to_ty()),
            NfTm::Ne(n) => n.to_tm(),
        }
    }

    pub fn rename(&self, depth: usize, f: &dyn Fn(usize) -> Option<usize>) -> Option<NfTm> {
        Some(match self {
            NfTm::Lam(b) => NfTm::Lam(Box::new(b.rename(depth + 1, f)?)),
            NfTm::Pair(a, b) => NfTm::Pair(Box::new(a.rename(depth, f)?), Box::new(b.rename(depth, f)?)),
            NfTm::Mk(a) => NfTm::Mk(Box::new(a.rename(depth, f)?)),
            NfTm::Tt => NfTm::Tt,
            NfTm::Code(a) => NfTm::Code(Box::new(a.rename(depth, f)?)),
            NfTm::Ne(n) => NfTm::Ne(n.rename(depth, f)?),
        })
    }
}

impl NfNe {
    pub fn to_tm<S: Subst>(&self) -> Tm<S> {
        match self {
            NfNe::Var(k) => Tm::var(*k),
            NfNe::App(f, a) => Tm::app(f.to_tm(), a.to_tm()),
            NfNe::Fst(w) => Tm::fst(w.to_tm()),
            NfNe::Snd(w) => Tm::snd(w.to_tm()),
            NfNe::Un(w) => Tm::un(w.to_tm()),
        }
    }

    pub fn rename(&self, depth: usize, f: &dyn Fn(usize) -> Option<usize>) -> Option<NfNe> {
        Some(match self {
            NfNe::Var(k) if *k < depth => NfNe::Var(*k),
            NfNe::Var(k) => NfNe::Var(f(k - depth)? + depth),
            NfNe::App(g, a) => NfNe::App(Box::new(g.rename(depth, f)?), Box::new(a.rename(depth, f)?)),
            NfNe::Fst(w) => NfNe::Fst(Box::new(w.rename(depth, f)?)),
            NfNe::Snd(w) => NfNe::Snd(Box::new(w.rename(depth, f)?)),
            NfNe::Un(w) => NfNe::Un(Box::new(w.rename(depth, f)?)),
        })
    }
}

impl fmt::Display for NfTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_ty::<crate::syntax::SubS>(), f)
    }
}

impl fmt::Display for NfTm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_tm::<crate::syntax::SubS>(), f)
    }
}

use crate::check::Scope;
use crate::syntax::Ctx;

/// Normal form of a well-formed type.
pub fn normalize_ty<S: Subst>(ctx: &Ctx<S>, ty: &Ty<S>) -> Result<NfTy> {
    let sc = Scope::from_ctx(ctx)?;
    sc.level(ty)?;
    sc.nf_ty(&sc.eval_ty(ty))
}

/// Eta-long normal form of `tm : ty`.
pub fn normalize_tm<S: Subst>(ctx: &Ctx<S>, tm: &Tm<S>, ty: &Ty<S>) -> Result<NfTm> {
    let sc = Scope::from_ctx(ctx)?;
    sc.level(ty)?;
    let tv = sc.eval_ty(ty);
    sc.check(tm, &tv)?;
    sc.nf_tm(&tv, &sc.eval_tm(tm))
}

/// Normal form of an inferable term together with the normal form of its type.
pub fn normalize_inferred<S: Subst>(ctx: &Ctx<S>, tm: &Tm<S>) -> Result<(NfTm, NfTy)> {
    let sc = Scope::from_ctx(ctx)?;
    let tv = sc.infer(tm)?;
    Ok((sc.nf_tm(&tv, &sc.eval_tm(tm))?, sc.nf_ty(&tv)?))
}

/// Types at different levels are never convertible.
pub fn conv_ty<S: Subst>(ctx: &Ctx<S>, a: &Ty<S>, b: &Ty<S>) -> Result<bool> {
    let sc = Scope::from_ctx(ctx)?;
    if sc.level(a)? != sc.level(b)? {
        return Ok(false);
    }
    sc.conv_ty(&sc.eval_ty(a), &sc.eval_ty(b))
}

pub fn conv_tm<S: Subst>(ctx: &Ctx<S>, t: &Tm<S>, u: &Tm<S>, ty: &Ty<S>) -> Result<bool> {
    let sc = Scope::from_ctx(ctx)?;
    sc.level(ty)?;
    let tv = sc.eval_ty(ty);
    sc.check(t, &tv)?;
    sc.check(u, &tv)?;
    Ok(sc.nf_tm(&tv, &sc.eval_tm(t))? == sc.nf_tm(&tv, &sc.eval_tm(u))?)
}

/// Eta-expands a neutral at the given normal type.
pub fn eta_expand<S: Subst>(ctx: &Ctx<S>, ne: &NfNe, ty: &NfTy) -> Result<NfTm> {
    let sc = Scope::from_ctx(ctx)?;
    let t: Tm<S> = ne.to_tm();
    let a: Ty<S> = ty.to_ty();
    let tv = sc.eval_ty(&a);
    sc.check(&t, &tv)?;
    sc.nf_tm(&tv, &sc.eval_tm(&t))
}
