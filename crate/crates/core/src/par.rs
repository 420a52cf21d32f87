//! Instantiation sequences and parallel substitutions on top of single
//! substitutions.
//!
//! `Comp(f, g)` means `f ∘ g`: the subject is instantiated by `f` first and
//! then by `g`, so `x[f ∘ g] = x[f][g]`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::check::Scope;
use crate::error::{ill, Result};
use crate::syntax::{Ctx, SubS, Tm, Ty};

/// Single substitutions with freely added identity and composition. No
/// category laws hold; two values are only ever compared by their action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SubStar {
    Id,
    Comp(Arc<SubStar>, Arc<SubStar>),
    Emb(SubS),
}

impl SubStar {
    pub fn comp(f: SubStar, g: SubStar) -> SubStar {
        SubStar::Comp(Arc::new(f), Arc::new(g))
    }

    pub fn emb(s: SubS) -> SubStar {
        SubStar::Emb(s)
    }

    /// Lifting, distributed over composition.
    pub fn plus(&self) -> SubStar {
        match self {
            SubStar::Id => SubStar::Id,
            SubStar::Comp(f, g) => SubStar::comp(f.plus(), g.plus()),
            SubStar::Emb(s) => SubStar::Emb(s.clone().plus()),
        }
    }

    pub fn plus_n(&self, n: usize) -> SubStar {
        (0..n).fold(self.clone(), |s, _| s.plus())
    }
}

impl fmt::Display for SubStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubStar::Id => write!(f, "id"),
            SubStar::Comp(a, b) => write!(f, "(comp {a} {b})"),
            SubStar::Emb(s) => write!(f, "{s}"),
        }
    }
}

pub fn star_inst_ty(a: &Ty, ss: &SubStar) -> Ty {
    match ss {
        SubStar::Id => a.clone(),
        SubStar::Comp(f, g) => star_inst_ty(&star_inst_ty(a, f), g),
        SubStar::Emb(s) => Ty::sub(a.clone(), s.clone()),
    }
}

pub fn star_inst_tm(t: &Tm, ss: &SubStar) -> Tm {
    match ss {
        SubStar::Id => t.clone(),
        SubStar::Comp(f, g) => star_inst_tm(&star_inst_tm(t, f), g),
        SubStar::Emb(s) => Tm::sub(t.clone(), s.clone()),
    }
}

/// A parallel substitution `Tms Δ Γ`: one term per entry of `Γ`, newest
/// last, all living in `Δ` (of length `dom`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tms {
    pub dom: usize,
    pub terms: Vec<Tm>,
}

impl fmt::Display for Tms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(tms")?;
        for t in &self.terms {
            write!(f, " {t}")?;
        }
        write!(f, ")")
    }
}

pub fn tms_eps(dom: usize) -> Tms {
    Tms { dom, terms: Vec::new() }
}

/// `⌞ε⌟ = id∘p∘…∘p` and `⌞γ,a⌟ = ⌞γ⌟⁺∘⟨a⟩`.
pub fn tms_embed(ts: &Tms) -> SubStar {
    let mut acc = SubStar::Id;
    for _ in 0..ts.dom {
        acc = SubStar::comp(acc, SubStar::Emb(SubS::P));
    }
    for a in &ts.terms {
        acc = SubStar::comp(acc.plus(), SubStar::Emb(SubS::single(a.clone())));
    }
    acc
}

/// The variables of a context of length `n`, oldest first.
pub fn tms_id(n: usize) -> Tms {
    Tms { dom: n, terms: (0..n).rev().map(Tm::var).collect() }
}

/// `p : Tms (Γ▷A) Γ` for `|Γ| = n`.
pub fn tms_p(n: usize) -> Tms {
    let mut id = tms_id(n + 1);
    id.terms.pop();
    id
}

pub fn tms_ext(g: &Tms, a: Tm) -> Tms {
    let mut terms = g.terms.clone();
    terms.push(a);
    Tms { dom: g.dom, terms }
}

pub fn tms_fst(g: &Tms) -> Result<Tms> {
    let mut terms = g.terms.clone();
    terms.pop().ok_or_else(|| ill!("fst of an empty parallel substitution"))?;
    Ok(Tms { dom: g.dom, terms })
}

pub fn tms_snd(g: &Tms) -> Result<Tm> {
    g.terms.last().cloned().ok_or_else(|| ill!("snd of an empty parallel substitution"))
}

/// `γ ∘ δ`: every component of `γ` instantiated by `⌞δ⌟`.
pub fn tms_comp(g: &Tms, d: &Tms) -> Tms {
    let e = tms_embed(d);
    Tms { dom: d.dom, terms: g.terms.iter().map(|t| star_inst_tm(t, &e)).collect() }
}

/// Checks `ts : Tms Δ Γ`, each component at its entry instantiated by the
/// embedding of the components before it.
pub fn check_tms(dom: &Ctx, ts: &Tms, cod: &Ctx) -> Result<()> {
    if ts.dom != dom.len() || ts.terms.len() != cod.len() {
        return Err(ill!("parallel substitution {ts} has the wrong shape"));
    }
    let sc = Scope::from_ctx(dom)?;
    Scope::from_ctx(cod)?;
    for (k, t) in ts.terms.iter().enumerate() {
        let prefix = Tms { dom: ts.dom, terms: ts.terms[..k].to_vec() };
        let want = star_inst_ty(&cod.entries[k], &tms_embed(&prefix));
        sc.check(t, &sc.eval_ty(&want))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::conv_ty;
    use alloc::vec;

    #[test]
    fn embedding_shapes() {
        assert_eq!(tms_embed(&tms_eps(0)), SubStar::Id);
        let p = SubStar::Emb(SubS::P);
        assert_eq!(
            tms_embed(&tms_eps(2)),
            SubStar::comp(SubStar::comp(SubStar::Id, p.clone()), p)
        );
    }

    #[test]
    fn identity_lists_variables() {
        assert_eq!(tms_id(2).terms, vec![Tm::var(1), Tm::Q]);
        assert_eq!(tms_p(1).terms, vec![Tm::var(1)]);
    }

    #[test]
    fn identity_acts_trivially() {
        let ctx = Ctx::new(vec![Ty::U(0), Ty::el(Tm::Q)]);
        check_tms(&ctx, &tms_id(2), &ctx).unwrap();
        let b = Ty::pi(Ty::el(Tm::var(1)), Ty::el(Tm::var(2)));
        let b2 = star_inst_ty(&b, &tms_embed(&tms_id(2)));
        assert!(conv_ty(&ctx, &b, &b2).unwrap());
    }

    #[test]
    fn comp_orientation() {
        let a = Ty::el(Tm::Q);
        let s = SubStar::comp(SubStar::Emb(SubS::P), SubStar::Emb(SubS::single(Tm::Tt)));
        assert_eq!(
            star_inst_ty(&a, &s),
            Ty::sub(Ty::sub(a.clone(), SubS::P), SubS::single(Tm::Tt))
        );
    }
}
