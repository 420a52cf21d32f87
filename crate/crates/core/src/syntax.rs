//! Raw syntax trees with explicit instantiation nodes.
//!
//! Types and terms are generic over the substitution calculus `S`. The
//! single substitution calculus uses [`SubS`]; the parallel presentation in
//! [`crate::cwf`] plugs in its own substitutions and reuses everything else.

use alloc::sync::Arc;
use alloc::vec::Vec;

/// Universe level.
pub type Level = u32;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ty<S = SubS> {
    U(Level),
    El(Arc<Tm<S>>),
    Pi(Arc<Ty<S>>, Arc<Ty<S>>),
    Sigma(Arc<Ty<S>>, Arc<Ty<S>>),
    Top,
    Lift(Arc<Ty<S>>),
    /// `A[s]`
    Sub(Arc<Ty<S>>, Arc<S>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Tm<S = SubS> {
    Q,
    /// `t[s]`
    Sub(Arc<Tm<S>>, Arc<S>),
    Lam(Arc<Tm<S>>),
    App(Arc<Tm<S>>, Arc<Tm<S>>),
    Code(Arc<Ty<S>>),
    Mk(Arc<Tm<S>>),
    Un(Arc<Tm<S>>),
    Tt,
    Pair(Arc<Tm<S>>, Arc<Tm<S>>),
    Fst(Arc<Tm<S>>),
    Snd(Arc<Tm<S>>),
}

/// Single substitutions: `p`, `<a>` and `g+`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SubS {
    P,
    Single(Arc<Tm>),
    Plus(Arc<SubS>),
}

/// Uniform view of the substitution forms of both calculi.
pub enum SubView<'a, S> {
    Weaken,
    Single(&'a Tm<S>),
    Plus(&'a S),
    Id,
    /// `Comp(f, g)` acts as `f` then `g`: `x[f . g] = x[f][g]`.
    Comp(&'a S, &'a S),
    Eps,
    Ext(&'a S, &'a Tm<S>),
}

/// A substitution calculus the kernel can check and evaluate.
pub trait Subst: Clone + PartialEq + core::fmt::Debug + core::fmt::Display + 'static {
    fn weaken() -> Self;
    fn view(&self) -> SubView<'_, Self>;
}

impl Subst for SubS {
    fn weaken() -> Self {
        SubS::P
    }

    fn view(&self) -> SubView<'_, Self> {
        match self {
            SubS::P => SubView::Weaken,
            SubS::Single(a) => SubView::Single(a),
            SubS::Plus(g) => SubView::Plus(g),
        }
    }
}

/// Context, oldest entry first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ctx<S = SubS> {
    pub entries: Vec<Ty<S>>,
}

impl<S> Default for Ctx<S> {
    fn default() -> Self {
        Ctx { entries: Vec::new() }
    }
}

impl<S: Clone> Ctx<S> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(entries: Vec<Ty<S>>) -> Self {
        Ctx { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, ty: Ty<S>) {
        self.entries.push(ty);
    }

    pub fn extend(&self, ty: Ty<S>) -> Self {
        let mut c = self.clone();
        c.push(ty);
        c
    }

    pub fn prefix(&self, n: usize) -> Self {
        Ctx { entries: self.entries[..n].to_vec() }
    }
}

impl<S: Subst> Ty<S> {
    pub fn u(i: Level) -> Self {
        Ty::U(i)
    }

    pub fn el(t: Tm<S>) -> Self {
        Ty::El(Arc::new(t))
    }

    pub fn pi(a: Ty<S>, b: Ty<S>) -> Self {
        Ty::Pi(Arc::new(a), Arc::new(b))
    }

    pub fn sigma(a: Ty<S>, b: Ty<S>) -> Self {
        Ty::Sigma(Arc::new(a), Arc::new(b))
    }

    pub fn lift(a: Ty<S>) -> Self {
        Ty::Lift(Arc::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Ty<S>, s: S) -> Self {
        Ty::Sub(Arc::new(a), Arc::new(s))
    }

    /// `A[p]`
    pub fn wk(self) -> Self {
        Ty::sub(self, S::weaken())
    }

    /// `A[p]` applied `k` times.
    pub fn wk_n(self, k: usize) -> Self {
        (0..k).fold(self, |a, _| a.wk())
    }

    /// Nondependent function type `A => B := Pi A (B[p])`.
    pub fn arrow(a: Ty<S>, b: Ty<S>) -> Self {
        Ty::pi(a, b.wk())
    }

    /// `Lift^k A`
    pub fn lift_n(self, k: u32) -> Self {
        (0..k).fold(self, |a, _| Ty::lift(a))
    }

    /// Number of nodes, substitution payloads included.
    pub fn size(&self) -> usize {
        match self {
            Ty::U(_) | Ty::Top => 1,
            Ty::El(t) => 1 + t.size(),
            Ty::Pi(a, b) | Ty::Sigma(a, b) => 1 + a.size() + b.size(),
            Ty::Lift(a) => 1 + a.size(),
            Ty::Sub(a, s) => 1 + a.size() + sub_size(&**s),
        }
    }
}

impl<S: Subst> Tm<S> {
    #[allow(clippy::should_implement_trait)]
    pub fn sub(t: Tm<S>, s: S) -> Self {
        Tm::Sub(Arc::new(t), Arc::new(s))
    }

    /// `t[p]`
    pub fn wk(self) -> Self {
        Tm::sub(self, S::weaken())
    }

    pub fn wk_n(self, k: usize) -> Self {
        (0..k).fold(self, |t, _| t.wk())
    }

    /// De Bruijn index `k`, written `q[p]...[p]`.
    pub fn var(k: usize) -> Self {
        Tm::Q.wk_n(k)
    }

    pub fn lam(b: Tm<S>) -> Self {
        Tm::Lam(Arc::new(b))
    }

    pub fn app(t: Tm<S>, u: Tm<S>) -> Self {
        Tm::App(Arc::new(t), Arc::new(u))
    }

    pub fn code(a: Ty<S>) -> Self {
        Tm::Code(Arc::new(a))
    }

    pub fn mk(t: Tm<S>) -> Self {
        Tm::Mk(Arc::new(t))
    }

    pub fn un(t: Tm<S>) -> Self {
        Tm::Un(Arc::new(t))
    }

    pub fn pair(a: Tm<S>, b: Tm<S>) -> Self {
        Tm::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn fst(t: Tm<S>) -> Self {
        Tm::Fst(Arc::new(t))
    }

    pub fn snd(t: Tm<S>) -> Self {
        Tm::Snd(Arc::new(t))
    }

    /// `mk^k t`
    pub fn mk_n(self, k: u32) -> Self {
        (0..k).fold(self, |t, _| Tm::mk(t))
    }

    /// `un^k t`
    pub fn un_n(self, k: u32) -> Self {
        (0..k).fold(self, |t, _| Tm::un(t))
    }

    pub fn size(&self) -> usize {
        match self {
            Tm::Q | Tm::Tt => 1,
            Tm::Sub(t, s) => 1 + t.size() + sub_size(&**s),
            Tm::Lam(t) | Tm::Mk(t) | Tm::Un(t) | Tm::Fst(t) | Tm::Snd(t) => 1 + t.size(),
            Tm::App(t, u) | Tm::Pair(t, u) => 1 + t.size() + u.size(),
            Tm::Code(a) => 1 + a.size(),
        }
    }

    /// `Some(k)` when the term is the variable `q[p]^k`.
    pub fn as_var(&self) -> Option<usize> {
        match self {
            Tm::Q => Some(0),
            Tm::Sub(t, s) => match s.view() {
                SubView::Weaken => t.as_var().map(|k| k + 1),
                _ => None,
            },
            _ => None,
        }
    }
}

pub fn sub_size<S: Subst>(s: &S) -> usize {
    match s.view() {
        SubView::Weaken | SubView::Id | SubView::Eps => 1,
        SubView::Single(a) => 1 + a.size(),
        SubView::Plus(g) => 1 + sub_size(g),
        SubView::Comp(f, g) => 1 + sub_size(f) + sub_size(g),
        SubView::Ext(g, a) => 1 + sub_size(g) + a.size(),
    }
}

impl SubS {
    pub fn single(a: Tm) -> Self {
        SubS::Single(Arc::new(a))
    }

    pub fn plus(self) -> Self {
        SubS::Plus(Arc::new(self))
    }

    /// `s^{+n}`
    pub fn plus_n(self, n: usize) -> Self {
        (0..n).fold(self, |s, _| s.plus())
    }

    /// True for `p` under any number of liftings.
    pub fn is_weakening(&self) -> bool {
        match self {
            SubS::P => true,
            SubS::Single(_) => false,
            SubS::Plus(g) => g.is_weakening(),
        }
    }
}
