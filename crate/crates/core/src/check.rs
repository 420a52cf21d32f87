//! Bidirectional typechecking.
//!
//! A [`Scope`] records, for each variable visible to the subject, the value
//! it denotes and its type, both living over the ambient bound variables.
//! Instantiation `t[s]` is checked by letting `s` act on the scope, so the
//! codomain of a substitution never has to be reconstructed as syntax. A
//! beta-redex whose head has no inferable type is checked the same way, by
//! binding the (inferable) argument.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{ill, Error, Result};
use crate::eval::{self, Env, NfTm, NfTy, Readback, Val};
use crate::syntax::{Ctx, Level, SubS, SubView, Subst, Tm, Ty};

/// One elimination on a spine; application arguments keep their scope.
enum Elim<S> {
    App(Tm<S>, Scope),
    Fst,
    Snd,
    Un,
}

impl<S> Elim<S> {
    fn wants(&self) -> &'static str {
        match self {
            Elim::App(..) => "a function type",
            Elim::Fst | Elim::Snd => "a pair type",
            Elim::Un => "a lifted type",
        }
    }
}

#[derive(Clone, Default)]
pub struct Scope {
    /// Types of the ambient bound variables, by de Bruijn level.
    pub tys: Vec<Val>,
    /// Value and type of each variable visible to the subject, oldest first.
    pub vars: Vec<(Val, Val)>,
}

impl Scope {
    pub fn empty() -> Self {
        Scope::default()
    }

    /// Checks every entry of `ctx` in its prefix and binds it.
    pub fn from_ctx<S: Subst>(ctx: &Ctx<S>) -> Result<Scope> {
        let mut sc = Scope::empty();
        for (k, a) in ctx.entries.iter().enumerate() {
            sc.level(a).map_err(|e| ill!("context entry {k} ({a}): {e}"))?;
            let v = sc.eval_ty(a);
            sc = sc.bind(v);
        }
        Ok(sc)
    }

    pub fn depth(&self) -> usize {
        self.tys.len()
    }

    /// Binds a fresh ambient variable of type `ty`.
    pub fn bind(&self, ty: Val) -> Scope {
        let mut sc = self.clone();
        sc.vars.push((Val::var(self.tys.len()), ty.clone()));
        sc.tys.push(ty);
        sc
    }

    /// Makes the newest visible variable denote `v : ty`.
    pub fn define(&self, v: Val, ty: Val) -> Scope {
        let mut sc = self.clone();
        sc.vars.push((v, ty));
        sc
    }

    pub fn env(&self) -> Env {
        self.vars.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn eval_ty<S: Subst>(&self, a: &Ty<S>) -> Val {
        eval::eval_ty(&self.env(), a)
    }

    pub fn eval_tm<S: Subst>(&self, t: &Tm<S>) -> Val {
        eval::eval_tm(&self.env(), t)
    }

    pub fn readback(&self) -> Readback {
        Readback::new(self.tys.clone())
    }

    pub fn nf_ty(&self, a: &Val) -> Result<NfTy> {
        self.readback().ty(a)
    }

    pub fn nf_tm(&self, ty: &Val, v: &Val) -> Result<NfTm> {
        self.readback().tm(ty, v)
    }

    pub fn conv_ty(&self, a: &Val, b: &Val) -> Result<bool> {
        Ok(self.nf_ty(a)? == self.nf_ty(b)?)
    }

    fn expect_ty(&self, expected: &Val, found: &Val) -> Result<()> {
        let e = self.nf_ty(expected)?;
        let f = self.nf_ty(found)?;
        if e == f {
            Ok(())
        } else {
            Err(Error::TypeMismatch { expected: e.to_string(), found: f.to_string() })
        }
    }

    /// The scope seen by `t` in `t[s]`.
    pub fn act<S: Subst>(&self, s: &S) -> Result<Scope> {
        match s.view() {
            SubView::Weaken => {
                let mut sc = self.clone();
                sc.vars.pop().ok_or_else(|| ill!("p in an empty context"))?;
                Ok(sc)
            }
            SubView::Single(a) => {
                let ty = self.infer(a)?;
                let v = self.eval_tm(a);
                Ok(self.define(v, ty))
            }
            SubView::Plus(g) => {
                let mut sc = self.clone();
                let last = sc.vars.pop().ok_or_else(|| ill!("lifting {s} in an empty context"))?;
                let mut sc = sc.act(g)?;
                sc.vars.push(last);
                Ok(sc)
            }
            SubView::Id => Ok(self.clone()),
            SubView::Comp(f, g) => self.act(g)?.act(f),
            SubView::Eps => {
                let mut sc = self.clone();
                sc.vars.clear();
                Ok(sc)
            }
            SubView::Ext(g, a) => {
                let ty = self.infer(a)?;
                let v = self.eval_tm(a);
                Ok(self.act(g)?.define(v, ty))
            }
        }
    }

    /// Level of a well-formed type.
    pub fn level<S: Subst>(&self, a: &Ty<S>) -> Result<Level> {
        match a {
            Ty::U(i) => Ok(i + 1),
            Ty::El(t) => match self.infer(t)? {
                Val::U(i) => Ok(i),
                other => Err(Error::TypeMismatch {
                    expected: "a universe".to_string(),
                    found: self.nf_ty(&other)?.to_string(),
                }),
            },
            Ty::Pi(x, y) | Ty::Sigma(x, y) => {
                let i = self.level(x)?;
                let j = self.bind(self.eval_ty(x)).level(y)?;
                if i == j {
                    Ok(i)
                } else {
                    Err(ill!("components of {a} live at levels {i} and {j}"))
                }
            }
            Ty::Top => Ok(0),
            Ty::Lift(x) => Ok(self.level(x)? + 1),
            Ty::Sub(x, s) => self.act(&**s)?.level(x),
        }
    }

    /// Infers the type of `t` as a value.
    pub fn infer<S: Subst>(&self, t: &Tm<S>) -> Result<Val> {
        match t {
            Tm::Q => {
                self.vars.last().map(|(_, ty)| ty.clone()).ok_or_else(|| ill!("q in an empty context"))
            }
            Tm::Sub(u, s) => self.act(&**s)?.infer(u),
            Tm::App(..) => self.spine(t, Vec::new(), None),
            Tm::Code(a) => Ok(Val::U(self.level(a)?)),
            Tm::Tt => Ok(Val::Top),
            Tm::Mk(a) => Ok(Val::Lift(alloc::rc::Rc::new(self.infer(a)?))),
            Tm::Un(_) | Tm::Fst(_) | Tm::Snd(_) => self.spine(t, Vec::new(), None),
            Tm::Pair(a, b) => {
                let x = self.infer(a)?;
                let y = self.infer(b)?;
                Ok(Val::Sigma(alloc::rc::Rc::new(x), eval::Clo::new(move |_| y.clone())))
            }
            Tm::Lam(_) => Err(Error::NotInferable(format!("{t}"))),
        }
    }

    fn mismatch(&self, expected: &str, found: &Val) -> Error {
        match self.nf_ty(found) {
            Ok(f) => Error::TypeMismatch { expected: expected.to_string(), found: f.to_string() },
            Err(e) => e,
        }
    }

    /// Checks `t` against the type value `ty`.
    pub fn check<S: Subst>(&self, t: &Tm<S>, ty: &Val) -> Result<()> {
        match (t, ty) {
            (Tm::Lam(b), Val::Pi(a, y)) => {
                let sc = self.bind((**a).clone());
                let x = Val::var(self.depth());
                sc.check(b, &y.apply(x))
            }
            (Tm::Pair(a, b), Val::Sigma(x, y)) => {
                self.check(a, x)?;
                self.check(b, &y.apply(self.eval_tm(a)))
            }
            (Tm::Mk(a), Val::Lift(x)) => self.check(a, x),
            (Tm::Tt, Val::Top) => Ok(()),
            (Tm::Sub(u, s), _) => self.act(&**s)?.check(u, ty),
            (Tm::Code(a), Val::U(i)) => {
                let j = self.level(a)?;
                if *i == j {
                    Ok(())
                } else {
                    Err(Error::TypeMismatch {
                        expected: format!("a type at level {i}"),
                        found: format!("{a} at level {j}"),
                    })
                }
            }
            (Tm::App(..) | Tm::Un(_), _) => self.spine(t, Vec::new(), Some(ty)).map(|_| ()),
            (Tm::Lam(_) | Tm::Pair(..) | Tm::Mk(_) | Tm::Tt | Tm::Code(_), _) => {
                Err(self.mismatch(&format!("a type for {t}"), ty))
            }
            _ => {
                let found = self.infer(t)?;
                match self.expect_ty(ty, &found) {
                    Err(e) => self.check_literal(t, ty).map_err(|_| e),
                    ok => ok,
                }
            }
        }
    }

    /// `v : found` also has type `want`; literal pairs and lifts are taken
    /// apart as in [`Scope::check_literal`].
    fn expect_value(&self, want: &Val, v: &Val, found: &Val) -> Result<()> {
        match self.expect_ty(want, found) {
            Ok(()) => Ok(()),
            Err(e) => match (want, v, found) {
                (Val::Sigma(x, y), Val::Pair(a, b), Val::Sigma(fx, fy)) => {
                    self.expect_value(x, a, fx).map_err(|_| e.clone())?;
                    self.expect_value(&y.apply((**a).clone()), b, &fy.apply((**a).clone())).map_err(|_| e)
                }
                (Val::Lift(x), Val::Mk(a), Val::Lift(fx)) => self.expect_value(x, a, fx).map_err(|_| e),
                _ => Err(e),
            },
        }
    }

    /// A subject whose value is a literal pair, possibly lifted, checks
    /// against any matching type its components fit, as its beta-reduct
    /// would. Needed when such a value was let-bound with a nondependent
    /// inferred type.
    fn check_literal<S: Subst>(&self, t: &Tm<S>, ty: &Val) -> Result<()> {
        match (ty, self.eval_tm(t)) {
            (Val::Sigma(x, y), Val::Pair(..)) => {
                let first = Tm::fst(t.clone());
                self.check(&first, x)?;
                self.check(&Tm::snd(t.clone()), &y.apply(self.eval_tm(&first)))
            }
            (Val::Lift(x), Val::Mk(_)) => self.check(&Tm::un(t.clone()), x),
            _ => Err(ill!("no literal view of {t}")),
        }
    }

    /// Types the elimination spine `elims` applied to `t`, innermost
    /// first. Against a literal head (a lambda applied to an argument, `un`
    /// of `mk`, a projection of a pair) the spine is consumed the way the
    /// reduct would be, with application arguments let-bound at their
    /// inferred types; any other head has to be inferable.
    fn spine<S: Subst>(&self, t: &Tm<S>, mut elims: Vec<Elim<S>>, expected: Option<&Val>) -> Result<Val> {
        match (t, elims.first()) {
            (Tm::App(f, a), _) => {
                elims.insert(0, Elim::App((**a).clone(), self.clone()));
                self.spine(f, elims, expected)
            }
            (Tm::Fst(w), _) => {
                elims.insert(0, Elim::Fst);
                self.spine(w, elims, expected)
            }
            (Tm::Snd(w), _) => {
                elims.insert(0, Elim::Snd);
                self.spine(w, elims, expected)
            }
            (Tm::Un(w), _) => {
                elims.insert(0, Elim::Un);
                self.spine(w, elims, expected)
            }
            (Tm::Sub(u, s), Some(_)) => self.act(&**s)?.spine(u, elims, expected),
            (Tm::Lam(b), Some(Elim::App(..))) => {
                let Elim::App(a, sc) = elims.remove(0) else { unreachable!() };
                let aty = sc.infer(&a)?;
                self.define(sc.eval_tm(&a), aty).spine(b, elims, expected)
            }
            (Tm::Mk(x), Some(Elim::Un)) => {
                elims.remove(0);
                self.spine(x, elims, expected)
            }
            (Tm::Pair(a, b), Some(Elim::Fst)) => {
                elims.remove(0);
                self.infer(b)?;
                self.spine(a, elims, expected)
            }
            (Tm::Pair(a, b), Some(Elim::Snd)) => {
                elims.remove(0);
                self.infer(a)?;
                self.spine(b, elims, expected)
            }
            (_, None) => match expected {
                Some(ty) => {
                    self.check(t, ty)?;
                    Ok(ty.clone())
                }
                None => self.infer(t),
            },
            _ => {
                let mut ty = self.infer(t)?;
                let mut v = self.eval_tm(t);
                for e in elims {
                    (ty, v) = match (e, ty) {
                        (Elim::App(a, sc), Val::Pi(x, y)) => {
                            sc.check(&a, &x)?;
                            let va = sc.eval_tm(&a);
                            (y.apply(va.clone()), eval::app(&v, va))
                        }
                        (Elim::Fst, Val::Sigma(x, _)) => ((*x).clone(), eval::fst(&v)),
                        (Elim::Snd, Val::Sigma(_, y)) => (y.apply(eval::fst(&v)), eval::snd(&v)),
                        (Elim::Un, Val::Lift(x)) => ((*x).clone(), eval::un(&v)),
                        (e, other) => return Err(self.mismatch(e.wants(), &other)),
                    };
                }
                if let Some(e) = expected {
                    self.expect_ty(e, &ty)?;
                }
                Ok(ty)
            }
        }
    }
}

/// Checks `s : Sub dom cod`: the scope `s` produces out of `dom` lists,
/// entry by entry, values whose types are those of `cod`.
pub fn check_sub_into<S: Subst>(dom: &Ctx<S>, s: &S, cod: &Ctx<S>) -> Result<()> {
    let sc = Scope::from_ctx(dom)?;
    Scope::from_ctx(cod)?;
    let out = sc.act(s)?;
    if out.vars.len() != cod.len() {
        return Err(ill!("{s} yields {} entries, codomain has {}", out.vars.len(), cod.len()));
    }
    let mut prefix = Scope { tys: sc.tys.clone(), vars: Vec::new() };
    for (k, (v, ty)) in out.vars.iter().enumerate() {
        let want = prefix.eval_ty(&cod.entries[k]);
        prefix.expect_value(&want, v, ty).map_err(|e| ill!("entry {k} of {s}: {e}"))?;
        prefix.vars.push((v.clone(), ty.clone()));
    }
    Ok(())
}

/// Well-formedness of a context; the error names the first bad entry.
pub fn wf_ctx<S: Subst>(ctx: &Ctx<S>) -> Result<()> {
    Scope::from_ctx(ctx).map(|_| ())
}

pub fn infer_ty_level<S: Subst>(ctx: &Ctx<S>, ty: &Ty<S>) -> Result<Level> {
    Scope::from_ctx(ctx)?.level(ty)
}

/// Infers a type for `tm`, returned in normal form.
pub fn infer_tm<S: Subst>(ctx: &Ctx<S>, tm: &Tm<S>) -> Result<Ty<S>> {
    let sc = Scope::from_ctx(ctx)?;
    let ty = sc.infer(tm)?;
    Ok(sc.nf_ty(&ty)?.to_ty())
}

pub fn check_tm<S: Subst>(ctx: &Ctx<S>, tm: &Tm<S>, ty: &Ty<S>) -> Result<()> {
    let sc = Scope::from_ctx(ctx)?;
    sc.level(ty)?;
    sc.check(tm, &sc.eval_ty(ty))
}

/// Codomain of a single substitution with domain `dom`.
///
/// The last codomain entry under a lifting is read off a domain entry of the
/// form `A[g]`, or recovered by strengthening when `g` is a weakening.
pub fn wf_sub(dom: &Ctx, s: &SubS) -> Result<Ctx> {
    Scope::from_ctx(dom)?.act(s)?;
    codomain(dom, s)
}

fn codomain(dom: &Ctx, s: &SubS) -> Result<Ctx> {
    match s {
        SubS::P => {
            if dom.is_empty() {
                return Err(ill!("p in an empty context"));
            }
            Ok(dom.prefix(dom.len() - 1))
        }
        SubS::Single(a) => Ok(dom.extend(infer_tm(dom, a)?)),
        SubS::Plus(g) => {
            let n = dom.len();
            if n == 0 {
                return Err(ill!("lifting {s} in an empty context"));
            }
            let rest = dom.prefix(n - 1);
            let gam = codomain(&rest, g)?;
            let last = &dom.entries[n - 1];
            let a = match last {
                Ty::Sub(a, g2) if **g2 == **g => (**a).clone(),
                _ if g.is_weakening() => strengthen(&rest, g, last)?,
                _ => return Err(ill!("cannot recover the codomain entry of {s} from {last}")),
            };
            Ok(gam.extend(a))
        }
    }
}

pub fn strengthen(dom: &Ctx, g: &SubS, a: &Ty) -> Result<Ty> {
    fn unwk(g: &SubS, j: usize) -> Option<usize> {
        match g {
            SubS::P => j.checked_sub(1),
            SubS::Plus(h) => {
                if j == 0 {
                    Some(0)
                } else {
                    unwk(h, j - 1).map(|i| i + 1)
                }
            }
            SubS::Single(_) => None,
        }
    }
    let sc = Scope::from_ctx(dom)?;
    let nf = sc.nf_ty(&sc.eval_ty(a))?;
    nf.rename(0, &|j| unwk(g, j))
        .map(|n| n.to_ty())
        .ok_or_else(|| ill!("{a} mentions a variable dropped by {g}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ctx(entries: Vec<Ty>) -> Ctx {
        Ctx::new(entries)
    }

    fn poly_id_ty() -> Ty {
        // Pi (U 0) (Lift (El q) => Lift (El q))
        let a = Ty::lift(Ty::el(Tm::Q));
        Ty::pi(Ty::U(0), Ty::arrow(a.clone(), a))
    }

    #[test]
    fn contexts() {
        assert!(wf_ctx(&ctx(vec![])).is_ok());
        assert!(wf_ctx(&ctx(vec![Ty::U(0), Ty::el(Tm::Q)])).is_ok());
        assert!(wf_ctx(&ctx(vec![Ty::el(Tm::Q)])).is_err());
    }

    #[test]
    fn levels() {
        let e = ctx(vec![]);
        assert_eq!(infer_ty_level(&e, &Ty::U(0)), Ok(1));
        let t = Ty::pi(Ty::U(0), Ty::lift(Ty::el(Tm::Q)));
        assert_eq!(infer_ty_level(&e, &t), Ok(1));
        assert_eq!(infer_ty_level(&e, &Ty::lift(Ty::Top)), Ok(1));
        // without the Lift the components live at different levels
        assert!(infer_ty_level(&e, &Ty::pi(Ty::U(0), Ty::el(Tm::Q))).is_err());
        assert_eq!(infer_ty_level(&e, &poly_id_ty()), Ok(1));
    }

    #[test]
    fn inference() {
        let c = ctx(vec![Ty::U(0)]);
        let ty = infer_tm(&c, &Tm::Q).unwrap();
        assert_eq!(ty, Ty::U(0));
        let c = ctx(vec![Ty::Top, Ty::U(0)]);
        assert_eq!(infer_tm(&c, &Tm::var(1)).unwrap(), Ty::Top);
        let bad = Tm::app(Tm::Tt, Tm::Tt);
        assert!(infer_tm(&ctx(vec![]), &bad).is_err());
        assert!(matches!(infer_tm(&ctx(vec![]), &Tm::lam(Tm::Q)), Err(Error::NotInferable(_))));
    }

    #[test]
    fn checking() {
        let e = ctx(vec![]);
        let id = Tm::lam(Tm::lam(Tm::Q));
        assert!(check_tm(&e, &id, &poly_id_ty()).is_ok());
        assert!(check_tm(&e, &Tm::Tt, &Ty::Top).is_ok());
        assert!(check_tm(&e, &Tm::lam(Tm::Q), &Ty::U(0)).is_err());
        // q : El q is not q : U 0
        let c = ctx(vec![Ty::U(0)]);
        assert!(check_tm(&c, &Tm::Q, &Ty::el(Tm::Q)).is_err());
    }

    #[test]
    fn substitutions() {
        let a = Ty::U(0);
        assert_eq!(wf_sub(&ctx(vec![a.clone()]), &SubS::P).unwrap(), ctx(vec![]));
        let cod = wf_sub(&ctx(vec![a.clone()]), &SubS::single(Tm::Q)).unwrap();
        assert_eq!(cod.len(), 2);
        assert!(crate::eval::conv_ty(&ctx(vec![a.clone()]), &cod.entries[1], &Ty::sub(Ty::U(0), SubS::P)).unwrap());
        assert!(wf_sub(&ctx(vec![]), &SubS::P).is_err());
        // lifting a weakening recovers the entry by strengthening
        let dom = ctx(vec![Ty::U(0), Ty::Top, Ty::el(Tm::var(1))]);
        let cod = wf_sub(&dom, &SubS::P.plus()).unwrap();
        assert_eq!(cod, ctx(vec![Ty::U(0), Ty::el(Tm::Q)]));
    }

    #[test]
    fn weakened_tower() {
        let c = ctx(vec![Ty::U(0), Ty::Top, Ty::lift(Ty::Top)]);
        for k in 0..3 {
            let ty = infer_tm(&c, &Tm::var(k)).unwrap();
            let expected = c.entries[2 - k].clone().wk_n(k + 1);
            assert!(crate::eval::conv_ty(&c, &ty, &expected).unwrap(), "index {k}");
        }
    }

    #[test]
    fn redex_with_uninferable_head() {
        // lam (lam q) . c Top . tt : Top
        let t = Tm::app(Tm::app(Tm::lam(Tm::lam(Tm::Q)), Tm::code(Ty::Top)), Tm::Tt);
        assert!(check_tm(&ctx(vec![]), &t, &Ty::Top).is_ok());
        assert_eq!(infer_tm(&ctx(vec![]), &t).unwrap(), Ty::Top);
    }
}
