//! The equations of the calculus as instance generators: the eight
//! structural equations and the substitution, beta and eta laws of every
//! type former.

use crate::error::{Error, Result};
use crate::eval::NfTy;
use crate::gen::{Cx, Gen};
use crate::syntax::{Ctx, SubS, Tm, Ty};
use crate::tel::{body_conv, Body};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// The eight equations of the substitution calculus.
    Structural,
    /// Laws of the type formers.
    Former,
}

/// One generated instance: both sides live in `ctx`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ctx: Ctx,
    pub lhs: Body,
    pub rhs: Body,
}

impl Instance {
    pub fn holds(&self) -> Result<bool> {
        body_conv(&self.ctx, &self.lhs, &self.rhs)
    }
}

pub struct Law {
    pub name: &'static str,
    pub group: Group,
    generate: fn(&mut Gen, u32) -> Result<Instance>,
}

impl Law {
    /// A well-typed instance; ill-typed or uninhabited draws are resampled.
    pub fn instance(&self, g: &mut Gen, depth: u32) -> Result<Instance> {
        let f = self.generate;
        g.retry(|g| {
            let inst = f(g, depth)?;
            inst.holds().map(|_| inst)
        })
    }
}

pub fn find(name: &str) -> Option<&'static Law> {
    LAWS.iter().find(|l| l.name == name)
}

pub static LAWS: &[Law] = &[
    Law { name: "[p][+]:ty", group: Group::Structural, generate: p_plus_ty },
    Law { name: "[p][+]:tm", group: Group::Structural, generate: p_plus_tm },
    Law { name: "q[+]", group: Group::Structural, generate: q_plus },
    Law { name: "[p][<>]:ty", group: Group::Structural, generate: p_single_ty },
    Law { name: "[p][<>]:tm", group: Group::Structural, generate: p_single_tm },
    Law { name: "q[<>]", group: Group::Structural, generate: q_single },
    Law { name: "[<>][]", group: Group::Structural, generate: single_sub },
    Law { name: "[p+][<q>]", group: Group::Structural, generate: p_plus_q },
    Law { name: "Pi[]", group: Group::Former, generate: pi_sub },
    Law { name: "lam[]", group: Group::Former, generate: lam_sub },
    Law { name: "app[]", group: Group::Former, generate: app_sub },
    Law { name: "Pi-beta", group: Group::Former, generate: pi_beta },
    Law { name: "Pi-eta", group: Group::Former, generate: pi_eta },
    Law { name: "U[]", group: Group::Former, generate: u_sub },
    Law { name: "El[]", group: Group::Former, generate: el_sub },
    Law { name: "c[]", group: Group::Former, generate: c_sub },
    Law { name: "U-beta", group: Group::Former, generate: u_beta },
    Law { name: "U-eta", group: Group::Former, generate: u_eta },
    Law { name: "Lift[]", group: Group::Former, generate: lift_sub },
    Law { name: "mk[]", group: Group::Former, generate: mk_sub },
    Law { name: "un[]", group: Group::Former, generate: un_sub },
    Law { name: "Lift-beta", group: Group::Former, generate: lift_beta },
    Law { name: "Lift-eta", group: Group::Former, generate: lift_eta },
    Law { name: "Top[]", group: Group::Former, generate: top_sub },
    Law { name: "tt[]", group: Group::Former, generate: tt_sub },
    Law { name: "Top-eta", group: Group::Former, generate: top_eta },
    Law { name: "Sigma[]", group: Group::Former, generate: sigma_sub },
    Law { name: "pair[]", group: Group::Former, generate: pair_sub },
    Law { name: "Sigma-beta1", group: Group::Former, generate: sigma_beta1 },
    Law { name: "Sigma-beta2", group: Group::Former, generate: sigma_beta2 },
    Law { name: "Sigma-eta", group: Group::Former, generate: sigma_eta },
];

fn ctx(g: &mut Gen, depth: u32) -> Result<Cx> {
    let n = g.below(3);
    g.ctx(n, depth)
}

/// `Δ` and `γ : Sub Δ Γ` with its codomain.
fn with_sub(g: &mut Gen, depth: u32) -> Result<(Cx, SubS, Cx)> {
    let d = ctx(g, depth)?;
    let (s, c, _) = g.sub(&d, depth)?;
    Ok((d, s, c))
}

fn ty_at_same_level(g: &mut Gen, cx: &Cx, a: &Ty, depth: u32) -> Result<Ty> {
    let l = cx.sc.level(a)?;
    g.ty_at(&cx.extend(a), l, depth)
}

fn tm_body(g: &mut Gen, cx: &Cx, depth: u32) -> Result<(Tm, Ty)> {
    let a = g.ty(cx, depth)?;
    let t = g.tm(cx, &a, depth)?;
    Ok((t, a))
}

/// An inferable term whose type has the given head.
fn infer_shaped(g: &mut Gen, cx: &Cx, depth: u32, shape: fn(&NfTy) -> bool) -> Result<(Tm, Ty)> {
    let (t, a) = g.infer(cx, depth)?;
    let nf = cx.sc.nf_ty(&cx.sc.eval_ty(&a))?;
    if shape(&nf) {
        Ok((t, a))
    } else {
        Err(Error::Exhausted)
    }
}

/// A context ending in a variable of some type with the given former, so
/// that `infer_shaped` always has a candidate.
fn shaped_ctx(g: &mut Gen, depth: u32, former: u8) -> Result<Cx> {
    let cx = ctx(g, depth)?;
    let a = g.ty(&cx, depth)?;
    let t = match former {
        0 => Ty::lift(a),
        1 => {
            let l = g.below(2) as u32;
            Ty::U(l)
        }
        _ => {
            let b = ty_at_same_level(g, &cx, &a, depth)?;
            Ty::sigma(a, b)
        }
    };
    Ok(cx.extend(&t))
}

fn tys(ctx: &Cx, l: Ty, r: Ty) -> Instance {
    Instance { ctx: ctx.ctx.clone(), lhs: Body::Ty(l), rhs: Body::Ty(r) }
}

fn tms(ctx: &Cx, l: Tm, lt: Ty, r: Tm, rt: Ty) -> Instance {
    Instance { ctx: ctx.ctx.clone(), lhs: Body::Tm(l, lt), rhs: Body::Tm(r, rt) }
}

fn sub_ty(a: Ty, s: &SubS) -> Ty {
    Ty::sub(a, s.clone())
}

fn sub_tm(t: Tm, s: &SubS) -> Tm {
    Tm::sub(t, s.clone())
}

// structural equations

fn p_plus_ty(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let b = g.ty(&gx, d)?;
    let out = dx.extend(&sub_ty(a, &s));
    Ok(tys(&out, sub_ty(sub_ty(b.clone(), &SubS::P), &s.clone().plus()), sub_ty(sub_ty(b, &s), &SubS::P)))
}

fn p_plus_tm(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let (b, bt) = tm_body(g, &gx, d)?;
    let out = dx.extend(&sub_ty(a, &s));
    let sp = s.clone().plus();
    Ok(tms(
        &out,
        sub_tm(sub_tm(b.clone(), &SubS::P), &sp),
        sub_ty(sub_ty(bt.clone(), &SubS::P), &sp),
        sub_tm(sub_tm(b, &s), &SubS::P),
        sub_ty(sub_ty(bt, &s), &SubS::P),
    ))
}

fn q_plus(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let out = dx.extend(&sub_ty(a.clone(), &s));
    Ok(tms(
        &out,
        sub_tm(Tm::Q, &s.clone().plus()),
        sub_ty(sub_ty(a.clone(), &SubS::P), &s.clone().plus()),
        Tm::Q,
        sub_ty(sub_ty(a, &s), &SubS::P),
    ))
}

fn p_single_ty(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let (a, _) = g.infer(&cx, d)?;
    let b = g.ty(&cx, d)?;
    Ok(tys(&cx, sub_ty(sub_ty(b.clone(), &SubS::P), &SubS::single(a)), b))
}

fn p_single_tm(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let (a, _) = g.infer(&cx, d)?;
    let (b, bt) = tm_body(g, &cx, d)?;
    let s = SubS::single(a);
    Ok(tms(
        &cx,
        sub_tm(sub_tm(b.clone(), &SubS::P), &s),
        sub_ty(sub_ty(bt.clone(), &SubS::P), &s),
        b,
        bt,
    ))
}

fn q_single(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let (a, at) = g.infer(&cx, d)?;
    let s = SubS::single(a.clone());
    Ok(tms(&cx, sub_tm(Tm::Q, &s), sub_ty(sub_ty(at.clone(), &SubS::P), &s), a, at))
}

fn single_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let (a, at) = g.infer(&gx, d)?;
    let b = g.ty(&gx.extend(&at), d)?;
    let l = sub_ty(sub_ty(b.clone(), &SubS::single(a.clone())), &s);
    let r = sub_ty(sub_ty(b, &s.clone().plus()), &SubS::single(sub_tm(a, &s)));
    Ok(tys(&dx, l, r))
}

fn p_plus_q(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let a = g.ty(&cx, d)?;
    let out = cx.extend(&a);
    let b = g.ty(&out, d)?;
    Ok(tys(&out, sub_ty(sub_ty(b.clone(), &SubS::P.plus()), &SubS::single(Tm::Q)), b))
}

// Pi

fn pi_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let b = ty_at_same_level(g, &gx, &a, d)?;
    let l = sub_ty(Ty::pi(a.clone(), b.clone()), &s);
    Ok(tys(&dx, l, Ty::pi(sub_ty(a, &s), sub_ty(b, &s.clone().plus()))))
}

fn lam_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let inner = gx.extend(&a);
    let bt = ty_at_same_level(g, &gx, &a, d)?;
    let b = g.tm(&inner, &bt, d)?;
    let pi = Ty::pi(a.clone(), bt.clone());
    Ok(tms(
        &dx,
        sub_tm(Tm::lam(b.clone()), &s),
        sub_ty(pi, &s),
        Tm::lam(sub_tm(b, &s.clone().plus())),
        Ty::pi(sub_ty(a, &s), sub_ty(bt, &s.clone().plus())),
    ))
}

fn app_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let (a, at) = g.infer(&gx, d)?;
    let b = ty_at_same_level(g, &gx, &at, d)?;
    let t = g.tm(&gx, &Ty::pi(at, b.clone()), d)?;
    let ba = sub_ty(b.clone(), &SubS::single(a.clone()));
    let ag = sub_tm(a.clone(), &s);
    Ok(tms(
        &dx,
        sub_tm(Tm::app(t.clone(), a), &s),
        sub_ty(ba, &s),
        Tm::app(sub_tm(t, &s), ag.clone()),
        sub_ty(sub_ty(b, &s.clone().plus()), &SubS::single(ag)),
    ))
}

fn pi_beta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let (a, at) = g.infer(&cx, d)?;
    let inner = cx.extend(&at);
    let (b, bt) = tm_body(g, &inner, d)?;
    let s = SubS::single(a.clone());
    let ty = sub_ty(bt, &s);
    Ok(tms(&cx, Tm::app(Tm::lam(b.clone()), a), ty.clone(), sub_tm(b, &s), ty))
}

fn pi_eta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let a = g.ty(&cx, d)?;
    let b = ty_at_same_level(g, &cx, &a, d)?;
    let pi = Ty::pi(a, b);
    let t = g.tm(&cx, &pi, d)?;
    let eta = Tm::lam(Tm::app(sub_tm(t.clone(), &SubS::P), Tm::Q));
    Ok(tms(&cx, t, pi.clone(), eta, pi))
}

// U

fn u_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, _) = with_sub(g, d)?;
    let i = g.below(3) as u32;
    Ok(tys(&dx, sub_ty(Ty::U(i), &s), Ty::U(i)))
}

fn code_term(g: &mut Gen, cx: &Cx, d: u32) -> Result<Tm> {
    let i = g.below(2) as u32;
    let t = g.tm(cx, &Ty::U(i), d)?;
    // El needs an inferable argument
    cx.sc.infer(&t)?;
    Ok(t)
}

fn el_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let t = code_term(g, &gx, d)?;
    Ok(tys(&dx, sub_ty(Ty::el(t.clone()), &s), Ty::el(sub_tm(t, &s))))
}

fn c_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let i = gx.sc.level(&a)?;
    Ok(tms(&dx, sub_tm(Tm::code(a.clone()), &s), sub_ty(Ty::U(i), &s), Tm::code(sub_ty(a, &s)), Ty::U(i)))
}

fn u_beta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let a = g.ty(&cx, d)?;
    Ok(tys(&cx, Ty::el(Tm::code(a.clone())), a))
}

fn u_eta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = shaped_ctx(g, d, 1)?;
    let (t, ty) = infer_shaped(g, &cx, d, |n| matches!(n, NfTy::U(_)))?;
    Ok(tms(&cx, Tm::code(Ty::el(t.clone())), ty.clone(), t, ty))
}

// Lift

fn lift_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    Ok(tys(&dx, sub_ty(Ty::lift(a.clone()), &s), Ty::lift(sub_ty(a, &s))))
}

fn mk_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let (a, at) = tm_body(g, &gx, d)?;
    Ok(tms(
        &dx,
        sub_tm(Tm::mk(a.clone()), &s),
        sub_ty(Ty::lift(at.clone()), &s),
        Tm::mk(sub_tm(a, &s)),
        Ty::lift(sub_ty(at, &s)),
    ))
}

fn un_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    // the codomain ends in a variable of lifted type, lifted over by the substitution
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let lifted = Ty::lift(a);
    let dx = dx.extend(&sub_ty(lifted.clone(), &s));
    let gx = gx.extend(&lifted);
    let s = s.plus();
    let (t, ty) = infer_shaped(g, &gx, d, |n| matches!(n, NfTy::Lift(_)))?;
    let inner = match gx.sc.nf_ty(&gx.sc.eval_ty(&ty))? {
        NfTy::Lift(x) => x.to_ty(),
        _ => return Err(Error::Exhausted),
    };
    Ok(tms(&dx, sub_tm(Tm::un(t.clone()), &s), sub_ty(inner.clone(), &s), Tm::un(sub_tm(t, &s)), sub_ty(inner, &s)))
}

fn lift_beta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let (a, at) = g.infer(&cx, d)?;
    Ok(tms(&cx, Tm::un(Tm::mk(a.clone())), at.clone(), a, at))
}

fn lift_eta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = shaped_ctx(g, d, 0)?;
    let (t, ty) = infer_shaped(g, &cx, d, |n| matches!(n, NfTy::Lift(_)))?;
    Ok(tms(&cx, Tm::mk(Tm::un(t.clone())), ty.clone(), t, ty))
}

// Top

fn top_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, _) = with_sub(g, d)?;
    Ok(tys(&dx, sub_ty(Ty::Top, &s), Ty::Top))
}

fn tt_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, _) = with_sub(g, d)?;
    Ok(tms(&dx, sub_tm(Tm::Tt, &s), sub_ty(Ty::Top, &s), Tm::Tt, Ty::Top))
}

fn top_eta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let t = g.tm(&cx, &Ty::Top, d)?;
    Ok(tms(&cx, t, Ty::Top, Tm::Tt, Ty::Top))
}

// Sigma

fn sigma_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let b = ty_at_same_level(g, &gx, &a, d)?;
    let l = sub_ty(Ty::sigma(a.clone(), b.clone()), &s);
    Ok(tys(&dx, l, Ty::sigma(sub_ty(a, &s), sub_ty(b, &s.clone().plus()))))
}

fn pair_sub(g: &mut Gen, d: u32) -> Result<Instance> {
    let (dx, s, gx) = with_sub(g, d)?;
    let a = g.ty(&gx, d)?;
    let b = ty_at_same_level(g, &gx, &a, d)?;
    let sig = Ty::sigma(a, b);
    let w = g.tm(&gx, &sig, d)?;
    let (x, y) = match w {
        Tm::Pair(x, y) => ((*x).clone(), (*y).clone()),
        _ => return Err(Error::Exhausted),
    };
    Ok(tms(
        &dx,
        sub_tm(Tm::pair(x.clone(), y.clone()), &s),
        sub_ty(sig.clone(), &s),
        Tm::pair(sub_tm(x, &s), sub_tm(y, &s)),
        sub_ty(sig, &s),
    ))
}

/// Two inferable components and the nondependent pair type they inhabit.
fn inferable_pair(g: &mut Gen, cx: &Cx, d: u32) -> Result<(Tm, Ty, Tm, Ty)> {
    let (a, at) = g.infer(cx, d)?;
    let (b, bt) = g.infer(cx, d)?;
    if cx.sc.level(&at)? != cx.sc.level(&bt)? {
        return Err(Error::Exhausted);
    }
    Ok((a, at, b, bt))
}

fn sigma_beta1(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let (a, at, b, _) = inferable_pair(g, &cx, d)?;
    Ok(tms(&cx, Tm::fst(Tm::pair(a.clone(), b)), at.clone(), a, at))
}

fn sigma_beta2(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = ctx(g, d)?;
    let (a, _, b, bt) = inferable_pair(g, &cx, d)?;
    Ok(tms(&cx, Tm::snd(Tm::pair(a, b.clone())), bt.clone(), b, bt))
}

fn sigma_eta(g: &mut Gen, d: u32) -> Result<Instance> {
    let cx = shaped_ctx(g, d, 2)?;
    let (w, ty) = infer_shaped(g, &cx, d, |n| matches!(n, NfTy::Sigma(..)))?;
    Ok(tms(&cx, w.clone(), ty.clone(), Tm::pair(Tm::fst(w.clone()), Tm::snd(w)), ty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::GenConfig;

    #[test]
    fn every_law_has_instances() {
        let mut g = Gen::new(GenConfig { seed: 3, max_depth: 4, ..GenConfig::default() });
        for law in LAWS {
            for _ in 0..5 {
                let inst = law.instance(&mut g, 4).unwrap_or_else(|e| panic!("{}: {e}", law.name));
                assert!(inst.holds().unwrap(), "{}: {} | {} = {}", law.name, inst.ctx, inst.lhs, inst.rhs);
            }
        }
        assert_eq!(LAWS.iter().filter(|l| l.group == Group::Structural).count(), 8);
    }
}
