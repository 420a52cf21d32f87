//! Small derived constructions: the polymorphic identity, the isomorphism
//! between terms over a variable and over its lifted version, and the
//! composite that commutes Lift with Pi. Each generator returns an
//! [`Instance`] whose sides must be convertible.

use alloc::format;

use crate::check::Scope;
use crate::error::{Error, Result};
use crate::eval::Val;
use crate::gen::{Cx, Gen};
use crate::laws::Instance;
use crate::syntax::{Ctx, SubS, Tm, Ty};
use crate::tel::Body;

/// `lam (lam q) : Pi (U 0) (Lift (El q) => Lift (El q))`.
pub fn poly_id() -> (Tm, Ty) {
    let a = Ty::lift(Ty::el(Tm::Q));
    (Tm::lam(Tm::lam(Tm::Q)), Ty::pi(Ty::U(0), Ty::arrow(a.clone(), a)))
}

/// `un (id . c A . mk a)` against `a`, for closed `A : Ty 0` and `a : A`.
/// The domain is `Lift (El q)`, so the argument goes in under `mk`.
#[derive(Clone, Debug)]
pub struct Applied {
    pub a_ty: Ty,
    pub a: Tm,
}

impl Applied {
    pub fn lhs(&self) -> Tm {
        let (id, _) = poly_id();
        Tm::un(Tm::app(Tm::app(id, Tm::code(self.a_ty.clone())), Tm::mk(self.a.clone())))
    }

    /// The checker types a literal `lam` head only at the inferred type of
    /// its argument, and `a` need not be inferable (`lam tt` is not). So the
    /// redex is typed by the application rule at the known type of `id`:
    /// `id`, `c A : U 0` and `mk a : Lift (El (c A))` are checked separately.
    pub fn holds(&self) -> Result<bool> {
        let sc = Scope::from_ctx(&Ctx::<SubS>::empty())?;
        let (id, id_ty) = poly_id();
        sc.level(&id_ty)?;
        sc.check(&id, &sc.eval_ty(&id_ty))?;
        if sc.level(&self.a_ty)? != 0 {
            return Err(Error::IllFormed(format!("{} is not a small type", self.a_ty)));
        }
        let code = Tm::code(self.a_ty.clone());
        sc.check(&code, &Val::U(0))?;
        sc.check(&Tm::mk(self.a.clone()), &sc.eval_ty(&Ty::lift(Ty::el(code))))?;
        let av = sc.eval_ty(&self.a_ty);
        Ok(sc.nf_tm(&av, &sc.eval_tm(&self.lhs()))? == sc.nf_tm(&av, &sc.eval_tm(&self.a))?)
    }
}

impl core::fmt::Display for Applied {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, ". |- {} = {} : {}", self.lhs(), self.a, self.a_ty)
    }
}

pub fn poly_id_applied(g: &mut Gen, depth: u32) -> Result<Applied> {
    g.retry(|g| {
        let cx = Cx::empty();
        let a_ty = g.ty_at(&cx, 0, depth)?;
        let a = g.tm(&cx, &a_ty, depth)?;
        Ok(Applied { a_ty, a })
    })
}

/// `id[p]` against `id` in a generated context `G, C`.
pub fn poly_id_weakened(g: &mut Gen, depth: u32) -> Result<Instance> {
    g.retry(|g| {
        let len = g.below(3);
        let cx = g.ctx(len, depth)?;
        let c = g.ty(&cx, depth)?;
        let cx = cx.extend(&c);
        let (id, ty) = poly_id();
        let ty = ty.wk();
        Ok(Instance { ctx: cx.ctx, lhs: Body::Tm(Tm::sub(id.clone(), SubS::P), ty.clone()), rhs: Body::Tm(id, ty) })
    })
}

/// `t[p+][<un q>]`: from `Tm (G, A) B` to `Tm (G, Lift A) (B[p+][<un q>])`.
pub fn liftvar_fwd(t: &Tm) -> Tm {
    Tm::sub(Tm::sub(t.clone(), SubS::P.plus()), SubS::single(Tm::un(Tm::Q)))
}

/// `t[p+][<mk q>]`, the inverse of [`liftvar_fwd`].
pub fn liftvar_bwd(t: &Tm) -> Tm {
    Tm::sub(Tm::sub(t.clone(), SubS::P.plus()), SubS::single(Tm::mk(Tm::Q)))
}

/// `B[p+][<un q>]`, the type of [`liftvar_fwd`] of a term of type `B`.
pub fn liftvar_ty(b: &Ty) -> Ty {
    Ty::sub(Ty::sub(b.clone(), SubS::P.plus()), SubS::single(Tm::un(Tm::Q)))
}

struct Over {
    cx: Cx,
    a: Ty,
    b: Ty,
}

fn over(g: &mut Gen, depth: u32, same_level: bool) -> Result<Over> {
    let len = g.below(3);
    let cx = g.ctx(len, depth)?;
    let i = g.below(3) as u32;
    let a = g.ty_at(&cx, i, depth)?;
    let b = if same_level { g.ty_at(&cx.extend(&a), i, depth)? } else { g.ty(&cx.extend(&a), depth)? };
    Ok(Over { cx, a, b })
}

/// Both roundtrips of the lifted-variable isomorphism: `bwd (fwd t) = t`
/// over `G, A` and `fwd (bwd s) = s` over `G, Lift A`.
pub fn liftvar_roundtrips(g: &mut Gen, depth: u32) -> Result<[Instance; 2]> {
    g.retry(|g| {
        let Over { cx, a, b } = over(g, depth, false)?;
        let ga = cx.extend(&a);
        let gl = cx.extend(&Ty::lift(a.clone()));
        let b2 = liftvar_ty(&b);
        let t = g.tm(&ga, &b, depth)?;
        let s = g.tm(&gl, &b2, depth)?;
        let there = Instance { ctx: ga.ctx, lhs: Body::Tm(liftvar_bwd(&liftvar_fwd(&t)), b.clone()), rhs: Body::Tm(t, b) };
        let back = Instance { ctx: gl.ctx, lhs: Body::Tm(liftvar_fwd(&liftvar_bwd(&s)), b2.clone()), rhs: Body::Tm(s, b2) };
        Ok([there, back])
    })
}

/// `Lift (Pi A B)` to `Pi (Lift A) ((Lift B)[p+][<un q>])`: unwrap, move
/// the argument into the context, lift the body, lift the variable,
/// abstract again.
pub fn lift_pi_fwd(f: &Tm) -> Tm {
    let body = Tm::app(Tm::sub(Tm::un(f.clone()), SubS::P), Tm::Q);
    Tm::lam(liftvar_fwd(&Tm::mk(body)))
}

/// The inverse of [`lift_pi_fwd`], composed from the inverse steps.
pub fn lift_pi_bwd(h: &Tm) -> Tm {
    let body = Tm::app(Tm::sub(h.clone(), SubS::P), Tm::Q);
    Tm::mk(Tm::lam(Tm::un(liftvar_bwd(&body))))
}

pub fn lift_pi_types(a: &Ty, b: &Ty) -> (Ty, Ty) {
    let src = Ty::lift(Ty::pi(a.clone(), b.clone()));
    let tgt = Ty::pi(Ty::lift(a.clone()), liftvar_ty(&Ty::lift(b.clone())));
    (src, tgt)
}

/// Both composites of the Lift/Pi commutation, each against the identity.
pub fn lift_pi_roundtrips(g: &mut Gen, depth: u32) -> Result<[Instance; 2]> {
    g.retry(|g| {
        let Over { cx, a, b } = over(g, depth, true)?;
        let (src, tgt) = lift_pi_types(&a, &b);
        let f = g.tm(&cx, &src, depth)?;
        let h = g.tm(&cx, &tgt, depth)?;
        let there = Instance { ctx: cx.ctx.clone(), lhs: Body::Tm(lift_pi_bwd(&lift_pi_fwd(&f)), src.clone()), rhs: Body::Tm(f, src) };
        let back = Instance { ctx: cx.ctx, lhs: Body::Tm(lift_pi_fwd(&lift_pi_bwd(&h)), tgt.clone()), rhs: Body::Tm(h, tgt) };
        Ok([there, back])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_tm;
    use crate::gen::GenConfig;
    use crate::syntax::Ctx;

    fn gen(seed: u64) -> Gen {
        Gen::new(GenConfig { seed, max_depth: 3, ..GenConfig::default() })
    }

    #[test]
    fn poly_id_checks() {
        let (t, ty) = poly_id();
        check_tm(&Ctx::empty(), &t, &ty).unwrap();
    }

    #[test]
    fn applied_to_a_function() {
        let a_ty = Ty::pi(Ty::Top, Ty::Top);
        assert!(Applied { a_ty: a_ty.clone(), a: Tm::lam(Tm::Tt) }.holds().unwrap());
        assert!(Applied { a_ty, a: Tm::Tt }.holds().is_err());
        assert!(Applied { a_ty: Ty::Top, a: Tm::lam(Tm::Tt) }.holds().is_err());
    }

    #[test]
    fn components_have_the_stated_types() {
        let mut g = gen(4);
        for _ in 0..10 {
            let Over { cx, a, b } = g.retry(|g| over(g, 3, true)).unwrap();
            let t = g.retry(|g| g.tm(&cx.extend(&a), &b, 3)).unwrap();
            let gl = cx.ctx.extend(Ty::lift(a.clone()));
            check_tm(&gl, &liftvar_fwd(&t), &liftvar_ty(&b)).unwrap();
            let (src, tgt) = lift_pi_types(&a, &b);
            let f = g.retry(|g| g.tm(&cx, &src, 3)).unwrap();
            check_tm(&cx.ctx, &lift_pi_fwd(&f), &tgt).unwrap();
            let h = g.retry(|g| g.tm(&cx, &tgt, 3)).unwrap();
            check_tm(&cx.ctx, &lift_pi_bwd(&h), &src).unwrap();
        }
    }

    #[test]
    fn roundtrips_hold() {
        let mut g = gen(5);
        for _ in 0..5 {
            assert!(poly_id_applied(&mut g, 3).unwrap().holds().unwrap());
            assert!(poly_id_weakened(&mut g, 3).unwrap().holds().unwrap());
            for i in liftvar_roundtrips(&mut g, 3).unwrap() {
                assert!(i.holds().unwrap());
            }
            for i in lift_pi_roundtrips(&mut g, 3).unwrap() {
                assert!(i.holds().unwrap());
            }
        }
    }
}
