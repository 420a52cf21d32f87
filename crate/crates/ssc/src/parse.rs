//! From s-expressions to kernel syntax: the inverse of the canonical
//! printer.

use std::collections::BTreeMap;
use std::sync::Arc;

use ssc_core::cwf::CSub;
use ssc_core::minim::{Chain, Dir, Discharge, Expr, Param, Params, Step};
use ssc_core::par::{star_inst_tm, star_inst_ty, tms_embed, Tms};
use ssc_core::syntax::{Ctx, Level, SubS, Tm, Ty};

use crate::error::{syntax, Error, Result};
use crate::sexp::Sexp;

/// Substitutions with a concrete syntax.
pub trait SubSyntax: Sized {
    fn parse(e: &Sexp) -> Result<Self>;
}

fn arity<'a>(what: &str, args: &'a [Sexp], n: usize) -> Result<&'a [Sexp]> {
    if args.len() == n {
        Ok(args)
    } else {
        Err(syntax(format!("`{what}` takes {n} argument(s), got {}", args.len())))
    }
}

fn a<T>(x: T) -> Arc<T> {
    Arc::new(x)
}

pub fn level(e: &Sexp) -> Result<Level> {
    e.atom().and_then(|a| a.parse().ok()).ok_or_else(|| syntax(format!("expected a level, got {e}")))
}

pub fn ty<S: SubSyntax>(e: &Sexp) -> Result<Ty<S>> {
    if e.atom() == Some("Top") {
        return Ok(Ty::Top);
    }
    let (h, args) = e.head().ok_or_else(|| syntax(format!("expected a type, got {e}")))?;
    Ok(match h {
        "U" => Ty::U(level(&arity(h, args, 1)?[0])?),
        "El" => Ty::El(a(tm(&arity(h, args, 1)?[0])?)),
        "Pi" | "Sigma" => {
            let xs = arity(h, args, 2)?;
            let (x, y) = (a(ty(&xs[0])?), a(ty(&xs[1])?));
            if h == "Pi" {
                Ty::Pi(x, y)
            } else {
                Ty::Sigma(x, y)
            }
        }
        "Lift" => Ty::Lift(a(ty(&arity(h, args, 1)?[0])?)),
        "tysub" => {
            let xs = arity(h, args, 2)?;
            Ty::Sub(a(ty(&xs[0])?), a(S::parse(&xs[1])?))
        }
        _ => return Err(syntax(format!("unknown type former `{h}` in {e}"))),
    })
}

pub fn tm<S: SubSyntax>(e: &Sexp) -> Result<Tm<S>> {
    match e.atom() {
        Some("q") => return Ok(Tm::Q),
        Some("tt") => return Ok(Tm::Tt),
        _ => {}
    }
    let (h, args) = e.head().ok_or_else(|| syntax(format!("expected a term, got {e}")))?;
    let one = |args: &[Sexp]| -> Result<Arc<Tm<S>>> { Ok(a(tm(&arity(h, args, 1)?[0])?)) };
    Ok(match h {
        "tmsub" => {
            let xs = arity(h, args, 2)?;
            Tm::Sub(a(tm(&xs[0])?), a(S::parse(&xs[1])?))
        }
        "lam" => Tm::Lam(one(args)?),
        "app" | "pair" => {
            let xs = arity(h, args, 2)?;
            let (x, y) = (a(tm(&xs[0])?), a(tm(&xs[1])?));
            if h == "app" {
                Tm::App(x, y)
            } else {
                Tm::Pair(x, y)
            }
        }
        "code" => Tm::Code(a(ty(&arity(h, args, 1)?[0])?)),
        "mk" => Tm::Mk(one(args)?),
        "un" => Tm::Un(one(args)?),
        "fst" => Tm::Fst(one(args)?),
        "snd" => Tm::Snd(one(args)?),
        _ => return Err(syntax(format!("unknown term former `{h}` in {e}"))),
    })
}

pub fn ctx<S: SubSyntax>(e: &Sexp) -> Result<Ctx<S>> {
    match e.head() {
        Some(("ctx", args)) => Ok(Ctx { entries: args.iter().map(ty).collect::<Result<_>>()? }),
        _ => Err(syntax(format!("expected (ctx ...), got {e}"))),
    }
}

impl SubSyntax for SubS {
    fn parse(e: &Sexp) -> Result<Self> {
        if e.atom() == Some("p") {
            return Ok(SubS::P);
        }
        match e.head() {
            Some(("single", args)) => Ok(SubS::Single(Arc::new(tm(&arity("single", args, 1)?[0])?))),
            Some(("plus", args)) => Ok(SubS::Plus(Arc::new(SubS::parse(&arity("plus", args, 1)?[0])?))),
            _ => Err(syntax(format!("expected a substitution (p, single, plus), got {e}"))),
        }
    }
}

impl SubSyntax for CSub {
    fn parse(e: &Sexp) -> Result<Self> {
        match e.atom() {
            Some("id") => return Ok(CSub::Id),
            Some("eps") => return Ok(CSub::Eps),
            Some("p") => return Ok(CSub::P),
            _ => {}
        }
        match e.head() {
            Some(("comp", args)) => {
                let xs = arity("comp", args, 2)?;
                Ok(CSub::comp(CSub::parse(&xs[0])?, CSub::parse(&xs[1])?))
            }
            Some(("ext", args)) => {
                let xs = arity("ext", args, 2)?;
                Ok(CSub::ext(CSub::parse(&xs[0])?, tm(&xs[1])?))
            }
            _ => Err(syntax(format!("expected a substitution (id, comp, eps, p, ext), got {e}"))),
        }
    }
}

/// Single substitutions plus parallel literals `(tms t1 ... tn)`, which are
/// instantiated through their embedding by [`resolve_ty`] and [`resolve_tm`].
#[derive(Clone, Debug, PartialEq)]
pub enum ViaSub {
    P,
    Single(Tm<ViaSub>),
    Plus(Box<ViaSub>),
    Tms(Vec<Tm<ViaSub>>),
}

impl SubSyntax for ViaSub {
    fn parse(e: &Sexp) -> Result<Self> {
        if e.atom() == Some("p") {
            return Ok(ViaSub::P);
        }
        match e.head() {
            Some(("single", args)) => Ok(ViaSub::Single(tm(&arity("single", args, 1)?[0])?)),
            Some(("plus", args)) => Ok(ViaSub::Plus(Box::new(ViaSub::parse(&arity("plus", args, 1)?[0])?))),
            Some(("tms", args)) => Ok(ViaSub::Tms(args.iter().map(tm).collect::<Result<_>>()?)),
            _ => Err(syntax(format!("expected a substitution (p, single, plus, tms), got {e}"))),
        }
    }
}

/// A single substitution out of a context of length `n`, and the length
/// of its codomain.
fn resolve_sub(s: &ViaSub, n: usize) -> Result<(SubS, usize)> {
    match s {
        ViaSub::P if n > 0 => Ok((SubS::P, n - 1)),
        ViaSub::Single(a) => Ok((SubS::single(resolve_tm(a, n)?), n + 1)),
        ViaSub::Plus(g) if n > 0 => {
            let (g, m) = resolve_sub(g, n - 1)?;
            Ok((g.plus(), m + 1))
        }
        ViaSub::Tms(_) => Err(syntax("a (tms ...) literal may only appear directly under tysub or tmsub")),
        _ => Err(scope("weakening out of the empty context")),
    }
}

fn scope(msg: &str) -> Error {
    Error::Kernel(ssc_core::Error::IllFormed(msg.to_owned()))
}

fn tms(ts: &[Tm<ViaSub>], n: usize) -> Result<Tms> {
    Ok(Tms { dom: n, terms: ts.iter().map(|t| resolve_tm(t, n)).collect::<Result<_>>()? })
}

/// A type over a context of length `n`, with parallel literals replaced by
/// their embedding.
pub fn resolve_ty(a: &Ty<ViaSub>, n: usize) -> Result<Ty> {
    Ok(match a {
        Ty::U(i) => Ty::U(*i),
        Ty::El(t) => Ty::el(resolve_tm(t, n)?),
        Ty::Pi(x, y) => Ty::pi(resolve_ty(x, n)?, resolve_ty(y, n + 1)?),
        Ty::Sigma(x, y) => Ty::sigma(resolve_ty(x, n)?, resolve_ty(y, n + 1)?),
        Ty::Top => Ty::Top,
        Ty::Lift(x) => Ty::lift(resolve_ty(x, n)?),
        Ty::Sub(x, s) => match &**s {
            ViaSub::Tms(ts) => {
                let ts = tms(ts, n)?;
                star_inst_ty(&resolve_ty(x, ts.terms.len())?, &tms_embed(&ts))
            }
            s => {
                let (s, m) = resolve_sub(s, n)?;
                Ty::sub(resolve_ty(x, m)?, s)
            }
        },
    })
}

pub fn resolve_tm(t: &Tm<ViaSub>, n: usize) -> Result<Tm> {
    let r = |u: &Tm<ViaSub>| resolve_tm(u, n);
    Ok(match t {
        Tm::Q if n > 0 => Tm::Q,
        Tm::Q => return Err(scope("q in the empty context")),
        Tm::Sub(x, s) => match &**s {
            ViaSub::Tms(ts) => {
                let ts = tms(ts, n)?;
                star_inst_tm(&resolve_tm(x, ts.terms.len())?, &tms_embed(&ts))
            }
            s => {
                let (s, m) = resolve_sub(s, n)?;
                Tm::sub(resolve_tm(x, m)?, s)
            }
        },
        Tm::Lam(b) => Tm::lam(resolve_tm(b, n + 1)?),
        Tm::App(f, a) => Tm::app(r(f)?, r(a)?),
        Tm::Code(a) => Tm::code(resolve_ty(a, n)?),
        Tm::Mk(a) => Tm::mk(r(a)?),
        Tm::Un(a) => Tm::un(r(a)?),
        Tm::Tt => Tm::Tt,
        Tm::Pair(a, b) => Tm::pair(r(a)?, r(b)?),
        Tm::Fst(a) => Tm::fst(r(a)?),
        Tm::Snd(a) => Tm::snd(r(a)?),
    })
}

pub fn resolve_ctx(c: &Ctx<ViaSub>) -> Result<Ctx> {
    Ok(Ctx::new(c.entries.iter().enumerate().map(|(k, a)| resolve_ty(a, k)).collect::<Result<_>>()?))
}

// chains

pub fn expr(e: &Sexp) -> Result<Expr> {
    match e.head() {
        Some(("ty", [a])) => Ok(Expr::Ty(ty(a)?)),
        Some(("tm", [t])) => Ok(Expr::Tm(tm(t)?)),
        _ => Err(syntax(format!("expected (ty X) or (tm X), got {e}"))),
    }
}

fn dir(e: &Sexp) -> Result<Dir> {
    match e.atom() {
        Some("fwd") => Ok(Dir::Fwd),
        Some("bwd") => Ok(Dir::Bwd),
        _ => Err(syntax(format!("expected fwd or bwd, got {e}"))),
    }
}

pub fn params(e: &Sexp) -> Result<Params> {
    let Sexp::List(xs) = e else { return Err(syntax(format!("expected a parameter list, got {e}"))) };
    let mut out = BTreeMap::new();
    for x in xs {
        let (k, v) = match x {
            Sexp::List(p) if p.len() == 3 => (p[0].atom(), (p[1].atom(), &p[2])),
            _ => return Err(syntax(format!("expected (name kind value), got {x}"))),
        };
        let k = k.ok_or_else(|| syntax(format!("parameter name must be an atom in {x}")))?;
        let v = match v {
            (Some("ty"), a) => Param::Ty(ty(a)?),
            (Some("tm"), t) => Param::Tm(tm(t)?),
            (Some("sub"), s) => Param::Sub(SubS::parse(s)?),
            (Some("level"), i) => Param::Level(level(i)?),
            _ => return Err(syntax(format!("unknown parameter kind in {x}"))),
        };
        if out.insert(k.to_owned(), v).is_some() {
            return Err(syntax(format!("parameter {k} given twice")));
        }
    }
    Ok(Params(out))
}

fn discharge(e: &Sexp) -> Result<Discharge> {
    match e.head() {
        Some(("by", [u])) if u.atom() == Some("U[]") => Ok(Discharge::U),
        Some(("by", [name, d, ps])) => {
            let name = name.atom().ok_or_else(|| syntax(format!("rule name must be an atom in {e}")))?;
            Ok(Discharge::Rule { name: name.to_owned(), dir: dir(d)?, params: params(ps)? })
        }
        _ => Err(syntax(format!("expected (by U[]) or (by RULE DIR PARAMS), got {e}"))),
    }
}

fn step(e: &Sexp) -> Result<Step> {
    let Some(("step", args)) = e.head() else { return Err(syntax(format!("expected (step ...), got {e}"))) };
    let (rule, d, ps, rest) = match args {
        [r, d, ps, rest @ ..] => (r, d, ps, rest),
        _ => return Err(syntax(format!("step needs a rule, a direction and parameters: {e}"))),
    };
    let rule = rule.atom().ok_or_else(|| syntax(format!("rule name must be an atom in {e}")))?;
    let (dis, ex) = match rest {
        [ex] => (None, ex),
        [dis, ex] => (Some(discharge(dis)?), ex),
        _ => return Err(syntax(format!("step takes an optional discharge and one expression: {e}"))),
    };
    Ok(Step { rule: rule.to_owned(), dir: dir(d)?, params: params(ps)?, discharge: dis, expr: expr(ex)? })
}

pub fn chain(e: &Sexp) -> Result<Chain> {
    let Some(("chain", args)) = e.head() else { return Err(syntax(format!("expected (chain ...), got {e}"))) };
    let (c, mut rest) = args.split_first().ok_or_else(|| syntax("chain without a context"))?;
    let c = ctx(c)?;
    let mut at = None;
    if let Some((x, r)) = rest.split_first() {
        if let Some(("at", [a])) = x.head() {
            at = Some(ty(a)?);
            rest = r;
        }
    }
    let (s, steps) = rest.split_first().ok_or_else(|| syntax("chain without (start ...)"))?;
    let start = match s.head() {
        Some(("start", [x])) => expr(x)?,
        _ => return Err(syntax(format!("expected (start E), got {s}"))),
    };
    Ok(Chain { ctx: c, ty: at, start, steps: steps.iter().map(step).collect::<Result<_>>()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sexp::read_one;

    fn rt_ty(src: &str) {
        let a: Ty = ty(&read_one(src).unwrap()).unwrap();
        assert_eq!(a.to_string(), src);
    }

    #[test]
    fn printer_inverse_on_examples() {
        rt_ty("(Pi (U 0) (Pi (Lift (El q)) (tysub (Lift (El q)) p)))");
        rt_ty("(Sigma Top (El (tmsub (fst q) (plus (single (mk tt))))))");
        let c: Ctx<CSub> = ctx(&read_one("(ctx (U 0) (tysub (El q) (comp p (ext id q))) Top)").unwrap()).unwrap();
        assert_eq!(c.to_string(), "(ctx (U 0) (tysub (El q) (comp p (ext id q))) Top)");
    }

    #[test]
    fn rejects_bad_arity_and_unknown_heads() {
        assert!(ty::<SubS>(&read_one("(Pi Top)").unwrap()).is_err());
        assert!(tm::<SubS>(&read_one("(foo q)").unwrap()).is_err());
        assert!(SubS::parse(&read_one("id").unwrap()).is_err());
    }

    #[test]
    fn tms_literal_instantiates_through_the_embedding() {
        let a: Ty<ViaSub> = ty(&read_one("(tysub (El q) (tms (code Top)))").unwrap()).unwrap();
        assert_eq!(resolve_ty(&a, 0).unwrap().to_string(), "(tysub (El q) (single (code Top)))");
        // over a context of length one the domain is weakened first
        let t: Tm<ViaSub> = tm(&read_one("(tmsub q (tms tt))").unwrap()).unwrap();
        assert_eq!(resolve_tm(&t, 1).unwrap().to_string(), "(tmsub (tmsub q (plus p)) (single tt))");
    }
}
