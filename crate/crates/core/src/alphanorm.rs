//! Alpha-normalisation: instantiations are pushed down to the variables,
//! leaving beta/eta redexes alone.

use crate::check::Scope;
use crate::error::Result;
use crate::syntax::{Ctx, SubS, Tm, Ty};

/// An alpha-normal substitution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NSub {
    /// `p` under liftings.
    Weakening(SubS),
    /// `<a>` under liftings, with `a` alpha-normal.
    NSingle(SubS),
}

impl NSub {
    pub fn sub(&self) -> &SubS {
        match self {
            NSub::Weakening(s) | NSub::NSingle(s) => s,
        }
    }
}

/// `q` or a variable weakened by `p`.
pub fn is_var(t: &Tm) -> bool {
    t.as_var().is_some()
}

/// Sorts a substitution into weakenings and alpha-normal single
/// substitutions; `None` when it is neither.
pub fn classify_sub(s: &SubS) -> Option<NSub> {
    match s {
        SubS::P => Some(NSub::Weakening(s.clone())),
        SubS::Single(a) if is_alpha_tm(a) => Some(NSub::NSingle(s.clone())),
        SubS::Single(_) => None,
        SubS::Plus(g) => match classify_sub(g)? {
            NSub::Weakening(_) => Some(NSub::Weakening(s.clone())),
            NSub::NSingle(_) => Some(NSub::NSingle(s.clone())),
        },
    }
}

pub fn is_alpha_ty(a: &Ty) -> bool {
    match a {
        Ty::U(_) | Ty::Top => true,
        Ty::El(t) => is_alpha_tm(t),
        Ty::Pi(x, y) | Ty::Sigma(x, y) => is_alpha_ty(x) && is_alpha_ty(y),
        Ty::Lift(x) => is_alpha_ty(x),
        Ty::Sub(..) => false,
    }
}

pub fn is_alpha_tm(t: &Tm) -> bool {
    match t {
        Tm::Q | Tm::Tt => true,
        Tm::Sub(..) => is_var(t),
        Tm::Lam(u) | Tm::Mk(u) | Tm::Un(u) | Tm::Fst(u) | Tm::Snd(u) => is_alpha_tm(u),
        Tm::App(u, v) | Tm::Pair(u, v) => is_alpha_tm(u) && is_alpha_tm(v),
        Tm::Code(a) => is_alpha_ty(a),
    }
}

/// Instantiates an alpha-normal type by an alpha-normal substitution.
pub fn inst_ty(a: &Ty, s: &SubS) -> Ty {
    match a {
        Ty::U(i) => Ty::U(*i),
        Ty::El(t) => Ty::el(inst_tm(t, s)),
        Ty::Pi(x, y) => Ty::pi(inst_ty(x, s), inst_ty(y, &s.clone().plus())),
        Ty::Sigma(x, y) => Ty::sigma(inst_ty(x, s), inst_ty(y, &s.clone().plus())),
        Ty::Top => Ty::Top,
        Ty::Lift(x) => Ty::lift(inst_ty(x, s)),
        // not alpha-normal; normalise first
        Ty::Sub(x, g) => inst_ty(&inst_ty(&alpha_ty(x), &alpha_sub(g)), s),
    }
}

/// Instantiates an alpha-normal term by an alpha-normal substitution.
pub fn inst_tm(t: &Tm, s: &SubS) -> Tm {
    if let Some(k) = t.as_var() {
        return inst_var(k, s);
    }
    match t {
        Tm::Q => unreachable!("q is a variable"),
        Tm::Sub(u, g) => inst_tm(&inst_tm(&alpha_tm(u), &alpha_sub(g)), s),
        Tm::Lam(b) => Tm::lam(inst_tm(b, &s.clone().plus())),
        Tm::App(f, a) => Tm::app(inst_tm(f, s), inst_tm(a, s)),
        Tm::Code(a) => Tm::code(inst_ty(a, s)),
        Tm::Mk(a) => Tm::mk(inst_tm(a, s)),
        Tm::Un(a) => Tm::un(inst_tm(a, s)),
        Tm::Tt => Tm::Tt,
        Tm::Pair(a, b) => Tm::pair(inst_tm(a, s), inst_tm(b, s)),
        Tm::Fst(a) => Tm::fst(inst_tm(a, s)),
        Tm::Snd(a) => Tm::snd(inst_tm(a, s)),
    }
}

fn inst_var(k: usize, s: &SubS) -> Tm {
    match s {
        SubS::P => Tm::var(k + 1),
        SubS::Single(a) => {
            if k == 0 {
                (**a).clone()
            } else {
                Tm::var(k - 1)
            }
        }
        SubS::Plus(g) => {
            if k == 0 {
                Tm::Q
            } else {
                inst_tm(&inst_var(k - 1, g), &SubS::P)
            }
        }
    }
}

pub fn alpha_sub(s: &SubS) -> SubS {
    match s {
        SubS::P => SubS::P,
        SubS::Single(a) => SubS::single(alpha_tm(a)),
        SubS::Plus(g) => alpha_sub(g).plus(),
    }
}

pub fn alpha_ty(a: &Ty) -> Ty {
    match a {
        Ty::U(i) => Ty::U(*i),
        Ty::El(t) => Ty::el(alpha_tm(t)),
        Ty::Pi(x, y) => Ty::pi(alpha_ty(x), alpha_ty(y)),
        Ty::Sigma(x, y) => Ty::sigma(alpha_ty(x), alpha_ty(y)),
        Ty::Top => Ty::Top,
        Ty::Lift(x) => Ty::lift(alpha_ty(x)),
        Ty::Sub(x, s) => inst_ty(&alpha_ty(x), &alpha_sub(s)),
    }
}

pub fn alpha_tm(t: &Tm) -> Tm {
    match t {
        Tm::Q => Tm::Q,
        Tm::Sub(u, s) => inst_tm(&alpha_tm(u), &alpha_sub(s)),
        Tm::Lam(b) => Tm::lam(alpha_tm(b)),
        Tm::App(f, a) => Tm::app(alpha_tm(f), alpha_tm(a)),
        Tm::Code(a) => Tm::code(alpha_ty(a)),
        Tm::Mk(a) => Tm::mk(alpha_tm(a)),
        Tm::Un(a) => Tm::un(alpha_tm(a)),
        Tm::Tt => Tm::Tt,
        Tm::Pair(a, b) => Tm::pair(alpha_tm(a), alpha_tm(b)),
        Tm::Fst(a) => Tm::fst(alpha_tm(a)),
        Tm::Snd(a) => Tm::snd(alpha_tm(a)),
    }
}

/// Alpha-normal form of a type well-formed in `ctx`.
pub fn alpha_norm_ty(ctx: &Ctx, a: &Ty) -> Result<Ty> {
    Scope::from_ctx(ctx)?.level(a)?;
    Ok(alpha_ty(a))
}

/// Alpha-normal form of a term; `ty` is the type it is checked against.
pub fn alpha_norm_tm(ctx: &Ctx, t: &Tm, ty: &Ty) -> Result<Tm> {
    crate::check::check_tm(ctx, t, ty)?;
    Ok(alpha_tm(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SubS {
        SubS::P.plus()
    }

    #[test]
    fn variables() {
        assert!(is_var(&Tm::Q));
        assert!(is_var(&Tm::sub(Tm::Q, SubS::P)));
        assert!(!is_var(&Tm::sub(Tm::Q, SubS::single(Tm::Tt))));
    }

    #[test]
    fn classification() {
        assert!(matches!(classify_sub(&SubS::P.plus()), Some(NSub::Weakening(_))));
        assert!(matches!(classify_sub(&SubS::single(Tm::Q).plus()), Some(NSub::NSingle(_))));
        let bad = SubS::single(Tm::sub(Tm::Q, SubS::single(Tm::Q)));
        assert_eq!(classify_sub(&bad), None);
    }

    #[test]
    fn pushes_through_formers() {
        let b = Tm::app(Tm::Q, Tm::Tt);
        let t = Tm::sub(Tm::lam(b.clone()), g());
        assert_eq!(alpha_tm(&t), Tm::lam(inst_tm(&b, &g().plus())));
        let pi = Ty::sub(Ty::pi(Ty::el(Tm::Q), Ty::Top), SubS::P);
        let out = alpha_ty(&pi);
        assert_eq!(out, Ty::pi(Ty::el(Tm::var(1)), Ty::Top));
        assert_eq!(alpha_tm(&Tm::Q), Tm::Q);
    }

    #[test]
    fn lifted_weakening_commutes() {
        // q[p][p+] = q[p][p]
        let t = Tm::sub(Tm::sub(Tm::Q, SubS::P), SubS::P.plus());
        assert_eq!(alpha_tm(&t), Tm::var(2));
    }

    #[test]
    fn keeps_redexes() {
        let t = Tm::app(Tm::lam(Tm::Q), Tm::Tt);
        assert_eq!(alpha_tm(&t), t);
    }
}
