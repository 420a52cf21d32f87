//! The minimised calculus with Pi and universes, and a replayer for
//! equational chains.
//!
//! In the minimised calculus the structural equations on terms are
//! conditional on the corresponding equation on types, and the type
//! equations `[p][+]`, `[p][<>]`, `[<>][]` and `[p+][<q>]` are dropped.
//! The built-in chains derive every dropped equation back. A chain is
//! checked step by step: each step must rewrite exactly one subexpression
//! by a literal instance of a cited rule, oriented either way. Conversion
//! is never used to justify a step; it only typechecks the expressions and
//! confirms the hypothesis of a conditional rule.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::check::{check_tm, infer_tm, infer_ty_level, Scope};
use crate::error::{ill, Error, Result};
use crate::eval::{conv_tm, conv_ty};
use crate::gen::{Cx, Gen};
use crate::laws;
use crate::syntax::{Ctx, Level, SubS, Tm, Ty};

/// A chain entry: a type or a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ty(Ty),
    Tm(Tm),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Ty(a) => write!(f, "(ty {a})"),
            Expr::Tm(t) => write!(f, "(tm {t})"),
        }
    }
}

/// A value for a schema metavariable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Ty(Ty),
    Tm(Tm),
    Sub(SubS),
    Level(Level),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Ty(a) => write!(f, "ty {a}"),
            Param::Tm(t) => write!(f, "tm {t}"),
            Param::Sub(s) => write!(f, "sub {s}"),
            Param::Level(i) => write!(f, "level {i}"),
        }
    }
}

impl From<Ty> for Param {
    fn from(a: Ty) -> Self {
        Param::Ty(a)
    }
}

impl From<Tm> for Param {
    fn from(t: Tm) -> Self {
        Param::Tm(t)
    }
}

impl From<SubS> for Param {
    fn from(s: SubS) -> Self {
        Param::Sub(s)
    }
}

impl From<Level> for Param {
    fn from(i: Level) -> Self {
        Param::Level(i)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(pub BTreeMap<String, Param>);

impl Params {
    pub fn of<const N: usize>(entries: [(&str, Param); N]) -> Self {
        Params(entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect())
    }

    fn get(&self, k: &str) -> Result<&Param> {
        self.0.get(k).ok_or_else(|| ill!("missing parameter {k}"))
    }

    pub fn ty(&self, k: &str) -> Result<Ty> {
        match self.get(k)? {
            Param::Ty(a) => Ok(a.clone()),
            other => Err(ill!("parameter {k} is not a type: {other}")),
        }
    }

    pub fn tm(&self, k: &str) -> Result<Tm> {
        match self.get(k)? {
            Param::Tm(t) => Ok(t.clone()),
            other => Err(ill!("parameter {k} is not a term: {other}")),
        }
    }

    pub fn sub(&self, k: &str) -> Result<SubS> {
        match self.get(k)? {
            Param::Sub(s) => Ok(s.clone()),
            other => Err(ill!("parameter {k} is not a substitution: {other}")),
        }
    }

    pub fn level(&self, k: &str) -> Result<Level> {
        match self.get(k)? {
            Param::Level(i) => Ok(*i),
            other => Err(ill!("parameter {k} is not a level: {other}")),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, (k, v)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({k} {v})")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Fwd,
    Bwd,
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Fwd => "fwd",
            Dir::Bwd => "bwd",
        })
    }
}

type Concl = fn(&Params) -> Result<(Expr, Expr)>;

/// A type equation, stated in the context of the rewrite or in that
/// context extended by `ext`.
#[derive(Clone, Debug)]
pub struct Hyp {
    pub ext: Option<Ty>,
    pub lhs: Ty,
    pub rhs: Ty,
}

/// Side condition of a rule.
#[derive(Clone, Copy)]
pub enum Cond {
    None,
    /// A type equation that must be discharged.
    Hyp(fn(&Params) -> Result<Hyp>),
    /// A typing condition on the parameters, in the scope of the rewrite.
    Typed(fn(&Scope, &Params) -> Result<()>),
}

/// An equation schema, possibly conditional.
pub struct Rule {
    pub name: &'static str,
    pub metas: &'static [&'static str],
    pub concl: Concl,
    pub cond: Cond,
}

impl Rule {
    pub fn is_conditional(&self) -> bool {
        matches!(self.cond, Cond::Hyp(_))
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({})", self.name)
    }
}

/// How the hypothesis of a conditional step is established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discharge {
    /// Both sides are `U i` under instantiations, by `U[]`.
    U,
    /// An instance of an unconditional rule or derived lemma.
    Rule { name: String, dir: Dir, params: Params },
}

impl fmt::Display for Discharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discharge::U => f.write_str("(by U[])"),
            Discharge::Rule { name, dir, params } => write!(f, "(by {name} {dir} {params})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub dir: Dir,
    pub params: Params,
    pub discharge: Option<Discharge>,
    pub expr: Expr,
}

/// An equational chain in a subject context. Term chains carry the type
/// every entry is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub ctx: Ctx,
    pub ty: Option<Ty>,
    pub start: Expr,
    pub steps: Vec<Step>,
}

impl Chain {
    pub fn new(ctx: Ctx, ty: Option<Ty>, start: Expr) -> Self {
        Chain { ctx, ty, start, steps: Vec::new() }
    }

    pub fn last(&self) -> &Expr {
        self.steps.last().map(|s| &s.expr).unwrap_or(&self.start)
    }

    fn by(&mut self, rule: &str, dir: Dir, params: Params, discharge: Option<Discharge>, expr: Expr) {
        self.steps.push(Step { rule: rule.to_owned(), dir, params, discharge, expr });
    }

    fn ty_step(&mut self, rule: &str, dir: Dir, params: Params, discharge: Option<Discharge>, next: Ty) {
        self.by(rule, dir, params, discharge, Expr::Ty(next));
    }

    fn tm_step(&mut self, rule: &str, dir: Dir, params: Params, discharge: Option<Discharge>, next: Tm) {
        self.by(rule, dir, params, discharge, Expr::Tm(next));
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(chain {}", self.ctx)?;
        if let Some(a) = &self.ty {
            write!(f, "\n  (at {a})")?;
        }
        write!(f, "\n  (start {})", self.start)?;
        for s in &self.steps {
            write!(f, "\n  (step {} {} {}", s.rule, s.dir, s.params)?;
            if let Some(d) = &s.discharge {
                write!(f, " {d}")?;
            }
            write!(f, " {})", s.expr)?;
        }
        f.write_str(")")
    }
}

// schema helpers

fn ts(a: Ty, s: SubS) -> Ty {
    Ty::sub(a, s)
}

fn ms(t: Tm, s: SubS) -> Tm {
    Tm::sub(t, s)
}

fn p() -> SubS {
    SubS::P
}

fn one(a: Tm) -> SubS {
    SubS::single(a)
}

fn tys(l: Ty, r: Ty) -> Result<(Expr, Expr)> {
    Ok((Expr::Ty(l), Expr::Ty(r)))
}

fn tms(l: Tm, r: Tm) -> Result<(Expr, Expr)> {
    Ok((Expr::Tm(l), Expr::Tm(r)))
}

// hypotheses

fn here(lhs: Ty, rhs: Ty) -> Result<Hyp> {
    Ok(Hyp { ext: None, lhs, rhs })
}

fn hyp_p_plus(ps: &Params, b: &str) -> Result<Hyp> {
    let (bt, g) = (ps.ty(b)?, ps.sub("g")?);
    here(ts(ts(bt.clone(), p()), g.clone().plus()), ts(ts(bt, g), p()))
}

fn hyp_p_single(ps: &Params, b: &str) -> Result<Hyp> {
    let bt = ps.ty(b)?;
    here(ts(ts(bt.clone(), p()), one(ps.tm("a")?)), bt)
}

fn hyp_single_sub(ps: &Params) -> Result<Hyp> {
    let (bt, a, g) = (ps.ty("B")?, ps.tm("a")?, ps.sub("g")?);
    here(ts(ts(bt.clone(), one(a.clone())), g.clone()), ts(ts(bt, g.clone().plus()), one(ms(a, g))))
}

fn p_plus_q(b: Ty) -> Ty {
    ts(ts(b, p().plus()), one(Tm::Q))
}

// the minimised rules

/// The conditional rules of the minimised calculus.
pub static CONDITIONAL: &[Rule] = &[
    Rule {
        name: "[p][+]'",
        metas: &["B", "b", "g"],
        concl: |ps| {
            let (b, g) = (ps.tm("b")?, ps.sub("g")?);
            tms(ms(ms(b.clone(), p()), g.clone().plus()), ms(ms(b, g), p()))
        },
        cond: Cond::Hyp(|ps| hyp_p_plus(ps, "B")),
    },
    Rule {
        name: "q[+]'",
        metas: &["A", "g"],
        concl: |ps| tms(ms(Tm::Q, ps.sub("g")?.plus()), Tm::Q),
        cond: Cond::Hyp(|ps| hyp_p_plus(ps, "A")),
    },
    Rule {
        name: "[p][<>]'",
        metas: &["B", "b", "a"],
        concl: |ps| {
            let b = ps.tm("b")?;
            tms(ms(ms(b.clone(), p()), one(ps.tm("a")?)), b)
        },
        cond: Cond::Hyp(|ps| hyp_p_single(ps, "B")),
    },
    Rule {
        name: "q[<>]'",
        metas: &["A", "a"],
        concl: |ps| {
            let a = ps.tm("a")?;
            tms(ms(Tm::Q, one(a.clone())), a)
        },
        cond: Cond::Hyp(|ps| hyp_p_single(ps, "A")),
    },
    Rule {
        name: "app[]'",
        metas: &["B", "t", "a", "g"],
        concl: |ps| {
            let (t, a, g) = (ps.tm("t")?, ps.tm("a")?, ps.sub("g")?);
            tms(ms(Tm::app(t.clone(), a.clone()), g.clone()), Tm::app(ms(t, g.clone()), ms(a, g)))
        },
        cond: Cond::Hyp(hyp_single_sub),
    },
    Rule {
        name: "Pi-eta'",
        metas: &["A", "B", "t"],
        concl: |ps| {
            let t = ps.tm("t")?;
            tms(t.clone(), Tm::lam(Tm::app(ms(t, p()), Tm::Q)))
        },
        cond: Cond::Hyp(|ps| {
            let b = ps.ty("B")?;
            Ok(Hyp { ext: Some(ps.ty("A")?), lhs: p_plus_q(b.clone()), rhs: b })
        }),
    },
    Rule {
        name: "Pi-beta'",
        metas: &["B", "b"],
        concl: |ps| {
            let b = ps.tm("b")?;
            tms(Tm::app(ms(Tm::lam(b.clone()), p()), Tm::Q), b)
        },
        cond: Cond::Hyp(|ps| {
            let b = ps.ty("B")?;
            here(p_plus_q(b.clone()), b)
        }),
    },
];

/// The unconditional rules of the minimised calculus.
pub static UNCONDITIONAL: &[Rule] = &[
    Rule {
        name: "Pi[]",
        metas: &["A", "B", "g"],
        concl: |ps| {
            let (a, b, g) = (ps.ty("A")?, ps.ty("B")?, ps.sub("g")?);
            tys(ts(Ty::pi(a.clone(), b.clone()), g.clone()), Ty::pi(ts(a, g.clone()), ts(b, g.plus())))
        },
        cond: Cond::None,
    },
    Rule {
        name: "lam[]",
        metas: &["b", "g"],
        concl: |ps| {
            let (b, g) = (ps.tm("b")?, ps.sub("g")?);
            tms(ms(Tm::lam(b.clone()), g.clone()), Tm::lam(ms(b, g.plus())))
        },
        cond: Cond::None,
    },
    Rule {
        name: "U[]",
        metas: &["i", "g"],
        concl: |ps| {
            let i = ps.level("i")?;
            tys(ts(Ty::U(i), ps.sub("g")?), Ty::U(i))
        },
        cond: Cond::None,
    },
    Rule {
        name: "El[]",
        metas: &["t", "g"],
        concl: |ps| {
            let (t, g) = (ps.tm("t")?, ps.sub("g")?);
            tys(ts(Ty::el(t.clone()), g.clone()), Ty::el(ms(t, g)))
        },
        cond: Cond::None,
    },
    Rule {
        name: "c[]",
        metas: &["A", "g"],
        concl: |ps| {
            let (a, g) = (ps.ty("A")?, ps.sub("g")?);
            tms(ms(Tm::code(a.clone()), g.clone()), Tm::code(ts(a, g)))
        },
        cond: Cond::None,
    },
    Rule {
        name: "U-beta",
        metas: &["A"],
        concl: |ps| {
            let a = ps.ty("A")?;
            tys(Ty::el(Tm::code(a.clone())), a)
        },
        cond: Cond::None,
    },
    Rule {
        name: "U-eta",
        metas: &["t"],
        concl: |ps| {
            let t = ps.tm("t")?;
            tms(Tm::code(Ty::el(t.clone())), t)
        },
        cond: Cond::None,
    },
    Rule {
        name: "Lift[]",
        metas: &["A", "g"],
        concl: |ps| {
            let (a, g) = (ps.ty("A")?, ps.sub("g")?);
            tys(ts(Ty::lift(a.clone()), g.clone()), Ty::lift(ts(a, g)))
        },
        cond: Cond::None,
    },
    Rule {
        name: "mk[]",
        metas: &["a", "g"],
        concl: |ps| {
            let (a, g) = (ps.tm("a")?, ps.sub("g")?);
            tms(ms(Tm::mk(a.clone()), g.clone()), Tm::mk(ms(a, g)))
        },
        cond: Cond::None,
    },
    Rule {
        name: "un[]",
        metas: &["a", "g"],
        concl: |ps| {
            let (a, g) = (ps.tm("a")?, ps.sub("g")?);
            tms(ms(Tm::un(a.clone()), g.clone()), Tm::un(ms(a, g)))
        },
        cond: Cond::None,
    },
    Rule {
        name: "Lift-beta",
        metas: &["a"],
        concl: |ps| {
            let a = ps.tm("a")?;
            tms(Tm::un(Tm::mk(a.clone())), a)
        },
        cond: Cond::None,
    },
    Rule {
        name: "Lift-eta",
        metas: &["a"],
        concl: |ps| {
            let a = ps.tm("a")?;
            tms(Tm::mk(Tm::un(a.clone())), a)
        },
        cond: Cond::None,
    },
];

/// Equations of the full calculus recovered by the built-in chains, plus
/// the beta law for universe-valued bodies used on the way.
pub static DERIVED: &[Rule] = &[
    Rule {
        name: "[p][+]:ty",
        metas: &["B", "g"],
        concl: |ps| {
            let (b, g) = (ps.ty("B")?, ps.sub("g")?);
            tys(ts(ts(b.clone(), p()), g.clone().plus()), ts(ts(b, g), p()))
        },
        cond: Cond::None,
    },
    Rule {
        name: "[p][+]:tm",
        metas: &["b", "g"],
        concl: |ps| {
            let (b, g) = (ps.tm("b")?, ps.sub("g")?);
            tms(ms(ms(b.clone(), p()), g.clone().plus()), ms(ms(b, g), p()))
        },
        cond: Cond::None,
    },
    Rule { name: "q[+]", metas: &["g"], concl: |ps| tms(ms(Tm::Q, ps.sub("g")?.plus()), Tm::Q), cond: Cond::None },
    Rule {
        name: "[p][<>]:ty",
        metas: &["B", "a"],
        concl: |ps| {
            let b = ps.ty("B")?;
            tys(ts(ts(b.clone(), p()), one(ps.tm("a")?)), b)
        },
        cond: Cond::None,
    },
    Rule {
        name: "[p][<>]:tm",
        metas: &["b", "a"],
        concl: |ps| {
            let b = ps.tm("b")?;
            tms(ms(ms(b.clone(), p()), one(ps.tm("a")?)), b)
        },
        cond: Cond::None,
    },
    Rule {
        name: "q[<>]",
        metas: &["a"],
        concl: |ps| {
            let a = ps.tm("a")?;
            tms(ms(Tm::Q, one(a.clone())), a)
        },
        cond: Cond::None,
    },
    Rule {
        name: "Pi-beta-U",
        metas: &["A", "b", "a", "i"],
        concl: |ps| {
            let (b, a) = (ps.tm("b")?, ps.tm("a")?);
            tms(Tm::app(Tm::lam(b.clone()), a.clone()), ms(b, one(a)))
        },
        cond: Cond::Typed(|sc, ps| {
            let a = ps.ty("A")?;
            sc.level(&a)?;
            sc.bind(sc.eval_ty(&a)).check(&ps.tm("b")?, &crate::eval::Val::U(ps.level("i")?))
        }),
    },
    Rule {
        name: "[<>][]",
        metas: &["B", "a", "g"],
        concl: |ps| {
            let (b, a, g) = (ps.ty("B")?, ps.tm("a")?, ps.sub("g")?);
            tys(ts(ts(b.clone(), one(a.clone())), g.clone()), ts(ts(b, g.clone().plus()), one(ms(a, g))))
        },
        cond: Cond::None,
    },
    Rule {
        name: "app[]",
        metas: &["t", "a", "g"],
        concl: |ps| {
            let (t, a, g) = (ps.tm("t")?, ps.tm("a")?, ps.sub("g")?);
            tms(ms(Tm::app(t.clone(), a.clone()), g.clone()), Tm::app(ms(t, g.clone()), ms(a, g)))
        },
        cond: Cond::None,
    },
    Rule {
        name: "[p+][<q>]",
        metas: &["B"],
        concl: |ps| {
            let b = ps.ty("B")?;
            tys(p_plus_q(b.clone()), b)
        },
        cond: Cond::None,
    },
    Rule {
        name: "Pi-beta",
        metas: &["b", "a"],
        concl: |ps| {
            let (b, a) = (ps.tm("b")?, ps.tm("a")?);
            tms(Tm::app(Tm::lam(b.clone()), a.clone()), ms(b, one(a)))
        },
        cond: Cond::None,
    },
    Rule {
        name: "Pi-eta",
        metas: &["t"],
        concl: |ps| {
            let t = ps.tm("t")?;
            tms(t.clone(), Tm::lam(Tm::app(ms(t, p()), Tm::Q)))
        },
        cond: Cond::None,
    },
];

/// Names of the rules of the minimised calculus.
pub fn minimised_names() -> Vec<&'static str> {
    CONDITIONAL.iter().chain(UNCONDITIONAL).map(|r| r.name).collect()
}

/// Full-calculus equations that the minimised calculus drops or weakens.
pub const FULL_AXIOMS: &[&str] = &[
    "[p][+]:ty",
    "[p][+]:tm",
    "q[+]",
    "[p][<>]:ty",
    "[p][<>]:tm",
    "q[<>]",
    "[<>][]",
    "app[]",
    "[p+][<q>]",
    "Pi-beta",
    "Pi-eta",
];

pub fn rule(name: &str) -> Option<&'static Rule> {
    CONDITIONAL.iter().chain(UNCONDITIONAL).chain(DERIVED).find(|r| r.name == name)
}

// replay

#[derive(Clone, Copy)]
enum Node<'a> {
    Ty(&'a Ty),
    Tm(&'a Tm),
    Sub(&'a SubS),
}

impl PartialEq for Node<'_> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Node::Ty(a), Node::Ty(b)) => a == b,
            (Node::Tm(a), Node::Tm(b)) => a == b,
            (Node::Sub(a), Node::Sub(b)) => a == b,
            _ => false,
        }
    }
}

impl<'a> Node<'a> {
    fn of(e: &'a Expr) -> Self {
        match e {
            Expr::Ty(a) => Node::Ty(a),
            Expr::Tm(t) => Node::Tm(t),
        }
    }

    /// Constructor tag (with any level) and children, each paired with the
    /// context it lives in when that is known.
    fn split(self, sc: &Option<Scope>) -> (String, Vec<(Node<'a>, Option<Scope>)>) {
        let same = |n: Node<'a>| (n, sc.clone());
        let under = |a: &Ty| sc.as_ref().map(|c| c.bind(c.eval_ty(a)));
        let cod = |s: &SubS| sc.as_ref().and_then(|c| c.act(s).ok());
        match self {
            Node::Ty(a) => match a {
                Ty::U(i) => (format!("U{i}"), Vec::new()),
                Ty::Top => ("Top".into(), Vec::new()),
                Ty::El(t) => ("El".into(), alloc::vec![same(Node::Tm(t))]),
                Ty::Lift(x) => ("Lift".into(), alloc::vec![same(Node::Ty(x))]),
                Ty::Pi(x, y) => ("Pi".into(), alloc::vec![same(Node::Ty(x)), (Node::Ty(y), under(x))]),
                Ty::Sigma(x, y) => ("Sigma".into(), alloc::vec![same(Node::Ty(x)), (Node::Ty(y), under(x))]),
                Ty::Sub(x, s) => ("tysub".into(), alloc::vec![(Node::Ty(x), cod(s)), same(Node::Sub(s))]),
            },
            Node::Tm(t) => match t {
                Tm::Q => ("q".into(), Vec::new()),
                Tm::Tt => ("tt".into(), Vec::new()),
                Tm::Sub(u, s) => ("tmsub".into(), alloc::vec![(Node::Tm(u), cod(s)), same(Node::Sub(s))]),
                Tm::Lam(b) => ("lam".into(), alloc::vec![(Node::Tm(b), None)]),
                Tm::App(f, x) => ("app".into(), alloc::vec![same(Node::Tm(f)), same(Node::Tm(x))]),
                Tm::Code(a) => ("code".into(), alloc::vec![same(Node::Ty(a))]),
                Tm::Mk(x) => ("mk".into(), alloc::vec![same(Node::Tm(x))]),
                Tm::Un(x) => ("un".into(), alloc::vec![same(Node::Tm(x))]),
                Tm::Pair(x, y) => ("pair".into(), alloc::vec![same(Node::Tm(x)), same(Node::Tm(y))]),
                Tm::Fst(x) => ("fst".into(), alloc::vec![same(Node::Tm(x))]),
                Tm::Snd(x) => ("snd".into(), alloc::vec![same(Node::Tm(x))]),
            },
            Node::Sub(s) => match s {
                SubS::P => ("p".into(), Vec::new()),
                SubS::Single(a) => ("single".into(), alloc::vec![same(Node::Tm(a))]),
                SubS::Plus(g) => {
                    let dom = sc.as_ref().filter(|c| !c.vars.is_empty()).map(|c| {
                        let mut d = c.clone();
                        d.vars.pop();
                        d
                    });
                    ("plus".into(), alloc::vec![(Node::Sub(g), dom)])
                }
            },
        }
    }
}

/// Finds the single position where `a` turns into `b` by rewriting `l` to
/// `r`. Returns the scope of that position, if known.
fn site(a: Node, b: Node, l: Node, r: Node, sc: Option<Scope>) -> Option<Option<Scope>> {
    if a == l && b == r {
        return Some(sc);
    }
    let (ta, ca) = a.split(&sc);
    let (tb, cb) = b.split(&sc);
    if ta != tb || ca.len() != cb.len() {
        return None;
    }
    let mut differing = ca.into_iter().zip(cb).filter(|((x, _), (y, _))| x != y);
    let ((x, cx), (y, _)) = differing.next()?;
    if differing.next().is_some() {
        return None;
    }
    site(x, y, l, r, cx)
}

/// Pushes a type through instantiations while it is a universe.
fn universe_under_subs(a: &Ty) -> Option<Level> {
    match a {
        Ty::U(i) => Some(*i),
        Ty::Sub(x, _) => universe_under_subs(x),
        _ => None,
    }
}

fn mismatch(index: usize, message: String) -> Error {
    Error::StepMismatch { index, message }
}

fn check_expr(ctx: &Ctx, ty: &Option<Ty>, e: &Expr) -> Result<Option<Level>> {
    match (e, ty) {
        (Expr::Ty(a), _) => infer_ty_level(ctx, a).map(Some),
        (Expr::Tm(t), Some(a)) => check_tm(ctx, t, a).map(|_| None),
        (Expr::Tm(t), None) => infer_tm(ctx, t).map(|_| None),
    }
}

fn discharge(index: usize, allowed: &[&str], local: &Scope, hyp: &Hyp, d: Option<&Discharge>) -> Result<()> {
    let hsc = match &hyp.ext {
        None => local.clone(),
        Some(a) => {
            local.level(a)?;
            local.bind(local.eval_ty(a))
        }
    };
    let (hl, hr) = (&hyp.lhs, &hyp.rhs);
    match d {
        None => return Err(mismatch(index, format!("hypothesis {hl} = {hr} is not discharged"))),
        Some(Discharge::U) => {
            if !allowed.contains(&"U[]") {
                return Err(mismatch(index, "U[] is not allowed".to_string()));
            }
            match (universe_under_subs(hl), universe_under_subs(hr)) {
                (Some(i), Some(j)) if i == j => {}
                _ => return Err(mismatch(index, format!("U[] does not show {hl} = {hr}"))),
            }
        }
        Some(Discharge::Rule { name, dir, params }) => {
            if !allowed.contains(&name.as_str()) {
                return Err(mismatch(index, format!("{name} is not allowed")));
            }
            let r = rule(name).ok_or_else(|| mismatch(index, format!("unknown rule {name}")))?;
            match r.cond {
                Cond::None => {}
                Cond::Typed(f) => f(&hsc, params).map_err(|e| mismatch(index, format!("{name}: {e}")))?,
                Cond::Hyp(_) => return Err(mismatch(index, format!("{name} is conditional"))),
            }
            let (mut x, mut y) = (r.concl)(params)?;
            if *dir == Dir::Bwd {
                core::mem::swap(&mut x, &mut y);
            }
            if x != Expr::Ty(hl.clone()) || y != Expr::Ty(hr.clone()) {
                return Err(mismatch(
                    index,
                    format!("hypothesis {hl} = {hr} is not the instance {x} = {y} of {name}"),
                ));
            }
        }
    }
    // the hypothesis is a type equation of the context it is stated in
    let (li, ri) = (hsc.level(hl)?, hsc.level(hr)?);
    if li != ri || !hsc.conv_ty(&hsc.eval_ty(hl), &hsc.eval_ty(hr))? {
        return Err(mismatch(index, format!("hypothesis {hl} = {hr} fails")));
    }
    Ok(())
}

/// Replays `chain`, allowing only the named rules. Fails with
/// [`Error::StepMismatch`] at the first step that is not an instance.
pub fn replay(chain: &Chain, allowed: &[&str]) -> Result<()> {
    let ctx = &chain.ctx;
    let ty = match (&chain.ty, &chain.start) {
        (Some(a), _) => Some(a.clone()),
        (None, Expr::Tm(t)) => Some(infer_tm(ctx, t).map_err(|e| mismatch(0, format!("ill-typed: {e}")))?),
        (None, Expr::Ty(_)) => None,
    };
    let level = check_expr(ctx, &ty, &chain.start).map_err(|e| mismatch(0, format!("ill-typed: {e}")))?;
    let root = Scope::from_ctx(ctx)?;
    let mut prev = &chain.start;
    for (k, step) in chain.steps.iter().enumerate() {
        let index = k + 1;
        let l = check_expr(ctx, &ty, &step.expr).map_err(|e| mismatch(index, format!("ill-typed: {e}")))?;
        if l != level {
            return Err(mismatch(index, format!("level {l:?} differs from {level:?}")));
        }
        if !allowed.contains(&step.rule.as_str()) {
            return Err(mismatch(index, format!("{} is not allowed", step.rule)));
        }
        let r = rule(&step.rule).ok_or_else(|| mismatch(index, format!("unknown rule {}", step.rule)))?;
        let (mut x, mut y) = (r.concl)(&step.params).map_err(|e| mismatch(index, format!("{}: {e}", r.name)))?;
        if step.dir == Dir::Bwd {
            core::mem::swap(&mut x, &mut y);
        }
        let local = site(Node::of(prev), Node::of(&step.expr), Node::of(&x), Node::of(&y), Some(root.clone()))
            .ok_or_else(|| {
                mismatch(index, format!("expected an instance of {} {}: {x} ~> {y}; got {prev} ~> {}", r.name, step.dir, step.expr))
            })?;
        match r.cond {
            Cond::None => {}
            Cond::Typed(f) => {
                let local = local.ok_or_else(|| mismatch(index, format!("{}: context of the rewrite unknown", r.name)))?;
                f(&local, &step.params).map_err(|e| mismatch(index, format!("{}: {e}", r.name)))?;
            }
            Cond::Hyp(h) => {
                let local = local.ok_or_else(|| mismatch(index, format!("{}: context of the rewrite unknown", r.name)))?;
                let hyp = h(&step.params)?;
                discharge(index, allowed, &local, &hyp, step.discharge.as_ref())?;
            }
        }
        prev = &step.expr;
    }
    Ok(())
}

// built-in chains

/// A generated instance of a full-calculus equation: the context it lives
/// in and its metavariables.
#[derive(Clone, Debug)]
pub struct Site {
    pub ctx: Ctx,
    pub params: Params,
}

fn by_rule(name: &str, dir: Dir, params: Params) -> Option<Discharge> {
    Some(Discharge::Rule { name: name.to_owned(), dir, params })
}

fn chain_p_plus_ty(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (b, g, i) = (ps.ty("B")?, ps.sub("g")?, ps.level("i")?);
    let gp = g.clone().plus();
    let cb = Tm::code(b.clone());
    let mut c = Chain::new(s.ctx.clone(), None, Expr::Ty(ts(ts(b.clone(), p()), gp.clone())));
    use Dir::*;
    c.ty_step("U-beta", Bwd, Params::of([("A", b.clone().into())]), None, ts(ts(Ty::el(cb.clone()), p()), gp.clone()));
    c.ty_step("El[]", Fwd, Params::of([("t", cb.clone().into()), ("g", p().into())]), None, ts(Ty::el(ms(cb.clone(), p())), gp.clone()));
    c.ty_step(
        "El[]",
        Fwd,
        Params::of([("t", ms(cb.clone(), p()).into()), ("g", gp.clone().into())]),
        None,
        Ty::el(ms(ms(cb.clone(), p()), gp)),
    );
    c.ty_step(
        "[p][+]'",
        Fwd,
        Params::of([("B", Ty::U(i).into()), ("b", cb.clone().into()), ("g", g.clone().into())]),
        Some(Discharge::U),
        Ty::el(ms(ms(cb.clone(), g.clone()), p())),
    );
    c.ty_step(
        "El[]",
        Bwd,
        Params::of([("t", ms(cb.clone(), g.clone()).into()), ("g", p().into())]),
        None,
        ts(Ty::el(ms(cb.clone(), g.clone())), p()),
    );
    c.ty_step("El[]", Bwd, Params::of([("t", cb.clone().into()), ("g", g.clone().into())]), None, ts(ts(Ty::el(cb), g.clone()), p()));
    c.ty_step("U-beta", Fwd, Params::of([("A", b.clone().into())]), None, ts(ts(b, g), p()));
    Ok(c)
}

fn chain_p_plus_tm(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (bt, b, g) = (ps.ty("B")?, ps.tm("b")?, ps.sub("g")?);
    let at = ts(ts(bt.clone(), p()), g.clone().plus());
    let mut c = Chain::new(s.ctx.clone(), Some(at), Expr::Tm(ms(ms(b.clone(), p()), g.clone().plus())));
    let hyp = by_rule("[p][+]:ty", Dir::Fwd, Params::of([("B", bt.into()), ("g", g.clone().into())]));
    c.tm_step("[p][+]'", Dir::Fwd, ps.clone(), hyp, ms(ms(b, g), p()));
    Ok(c)
}

fn chain_q_plus(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (a, g) = (ps.ty("A")?, ps.sub("g")?);
    let at = ts(ts(a.clone(), p()), g.clone().plus());
    let mut c = Chain::new(s.ctx.clone(), Some(at), Expr::Tm(ms(Tm::Q, g.clone().plus())));
    let hyp = by_rule("[p][+]:ty", Dir::Fwd, Params::of([("B", a.clone().into()), ("g", g.clone().into())]));
    c.tm_step("q[+]'", Dir::Fwd, Params::of([("A", a.into()), ("g", g.into())]), hyp, Tm::Q);
    Ok(c)
}

fn chain_p_single_ty(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (b, a, i) = (ps.ty("B")?, ps.tm("a")?, ps.level("i")?);
    let sa = one(a.clone());
    let cb = Tm::code(b.clone());
    let mut c = Chain::new(s.ctx.clone(), None, Expr::Ty(ts(ts(b.clone(), p()), sa.clone())));
    use Dir::*;
    c.ty_step("U-beta", Bwd, Params::of([("A", b.clone().into())]), None, ts(ts(Ty::el(cb.clone()), p()), sa.clone()));
    c.ty_step("El[]", Fwd, Params::of([("t", cb.clone().into()), ("g", p().into())]), None, ts(Ty::el(ms(cb.clone(), p())), sa.clone()));
    c.ty_step(
        "El[]",
        Fwd,
        Params::of([("t", ms(cb.clone(), p()).into()), ("g", sa.clone().into())]),
        None,
        Ty::el(ms(ms(cb.clone(), p()), sa)),
    );
    c.ty_step(
        "[p][<>]'",
        Fwd,
        Params::of([("B", Ty::U(i).into()), ("b", cb.clone().into()), ("a", a.into())]),
        Some(Discharge::U),
        Ty::el(cb),
    );
    c.ty_step("U-beta", Fwd, Params::of([("A", b.clone().into())]), None, b);
    Ok(c)
}

fn chain_p_single_tm(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (bt, b, a) = (ps.ty("B")?, ps.tm("b")?, ps.tm("a")?);
    let mut c = Chain::new(s.ctx.clone(), Some(bt.clone()), Expr::Tm(ms(ms(b.clone(), p()), one(a.clone()))));
    let hyp = by_rule("[p][<>]:ty", Dir::Fwd, Params::of([("B", bt.into()), ("a", a.into())]));
    c.tm_step("[p][<>]'", Dir::Fwd, ps.clone(), hyp, b);
    Ok(c)
}

fn chain_q_single(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (at, a) = (ps.ty("A")?, ps.tm("a")?);
    let mut c = Chain::new(s.ctx.clone(), Some(at.clone()), Expr::Tm(ms(Tm::Q, one(a.clone()))));
    let hyp = by_rule("[p][<>]:ty", Dir::Fwd, Params::of([("B", at.clone().into()), ("a", a.clone().into())]));
    c.tm_step("q[<>]'", Dir::Fwd, Params::of([("A", at.into()), ("a", a.clone().into())]), hyp, a);
    Ok(c)
}

/// `lam b · a = b[<a>]` for `b : U i`, from the conditional rules.
fn chain_pi_beta_u(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (b, a, i) = (ps.tm("b")?, ps.tm("a")?, ps.level("i")?);
    let sa = one(a.clone());
    let lb = Tm::lam(b.clone());
    let qa = ms(Tm::Q, sa.clone());
    let mut c = Chain::new(s.ctx.clone(), Some(ts(Ty::U(i), sa.clone())), Expr::Tm(Tm::app(lb.clone(), a.clone())));
    use Dir::*;
    c.tm_step("q[<>]", Bwd, Params::of([("a", a.clone().into())]), None, Tm::app(lb.clone(), qa.clone()));
    c.tm_step(
        "[p][<>]:tm",
        Bwd,
        Params::of([("b", lb.clone().into()), ("a", a.clone().into())]),
        None,
        Tm::app(ms(ms(lb.clone(), p()), sa.clone()), qa),
    );
    c.tm_step(
        "app[]'",
        Bwd,
        Params::of([("B", Ty::U(i).into()), ("t", ms(lb.clone(), p()).into()), ("a", Tm::Q.into()), ("g", sa.clone().into())]),
        Some(Discharge::U),
        ms(Tm::app(ms(lb, p()), Tm::Q), sa.clone()),
    );
    c.tm_step(
        "Pi-beta'",
        Fwd,
        Params::of([("B", Ty::U(i).into()), ("b", b.clone().into())]),
        Some(Discharge::U),
        ms(b, sa),
    );
    Ok(c)
}

fn chain_single_sub(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (at, b, a, g, i) = (ps.ty("A")?, ps.ty("B")?, ps.tm("a")?, ps.sub("g")?, ps.level("i")?);
    let sa = one(a.clone());
    let ag = ms(a.clone(), g.clone());
    let gp = g.clone().plus();
    let cb = Tm::code(b.clone());
    let lcb = Tm::lam(cb.clone());
    let start = ts(ts(b.clone(), sa.clone()), g.clone());
    let mut c = Chain::new(s.ctx.clone(), None, Expr::Ty(start.clone()));
    use Dir::*;
    c.ty_step("U-beta", Bwd, Params::of([("A", start.into())]), None, Ty::el(Tm::code(ts(ts(b.clone(), sa.clone()), g.clone()))));
    c.ty_step(
        "c[]",
        Bwd,
        Params::of([("A", ts(b.clone(), sa.clone()).into()), ("g", g.clone().into())]),
        None,
        Ty::el(ms(Tm::code(ts(b.clone(), sa.clone())), g.clone())),
    );
    c.ty_step(
        "c[]",
        Bwd,
        Params::of([("A", b.clone().into()), ("g", sa.clone().into())]),
        None,
        Ty::el(ms(ms(cb.clone(), sa.clone()), g.clone())),
    );
    c.ty_step(
        "Pi-beta-U",
        Bwd,
        Params::of([("A", at.clone().into()), ("b", cb.clone().into()), ("a", a.clone().into()), ("i", i.into())]),
        None,
        Ty::el(ms(Tm::app(lcb.clone(), a.clone()), g.clone())),
    );
    c.ty_step(
        "app[]'",
        Fwd,
        Params::of([("B", Ty::U(i).into()), ("t", lcb.clone().into()), ("a", a.clone().into()), ("g", g.clone().into())]),
        Some(Discharge::U),
        Ty::el(Tm::app(ms(lcb.clone(), g.clone()), ag.clone())),
    );
    c.ty_step(
        "lam[]",
        Fwd,
        Params::of([("b", cb.clone().into()), ("g", g.clone().into())]),
        None,
        Ty::el(Tm::app(Tm::lam(ms(cb.clone(), gp.clone())), ag.clone())),
    );
    c.ty_step(
        "Pi-beta-U",
        Fwd,
        Params::of([
            ("A", ts(at, g.clone()).into()),
            ("b", ms(cb.clone(), gp.clone()).into()),
            ("a", ag.clone().into()),
            ("i", i.into()),
        ]),
        None,
        Ty::el(ms(ms(cb, gp.clone()), one(ag.clone()))),
    );
    c.ty_step(
        "c[]",
        Fwd,
        Params::of([("A", b.clone().into()), ("g", gp.clone().into())]),
        None,
        Ty::el(ms(Tm::code(ts(b.clone(), gp.clone())), one(ag.clone()))),
    );
    c.ty_step(
        "c[]",
        Fwd,
        Params::of([("A", ts(b.clone(), gp.clone()).into()), ("g", one(ag.clone()).into())]),
        None,
        Ty::el(Tm::code(ts(ts(b.clone(), gp.clone()), one(ag.clone())))),
    );
    c.ty_step("U-beta", Fwd, Params::of([("A", ts(ts(b.clone(), gp.clone()), one(ag.clone())).into())]), None, ts(ts(b, gp), one(ag)));
    Ok(c)
}

fn chain_app_sub(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (b, t, a, g) = (ps.ty("B")?, ps.tm("t")?, ps.tm("a")?, ps.sub("g")?);
    let at = ts(ts(b.clone(), one(a.clone())), g.clone());
    let mut c = Chain::new(s.ctx.clone(), Some(at), Expr::Tm(ms(Tm::app(t.clone(), a.clone()), g.clone())));
    let hyp = by_rule("[<>][]", Dir::Fwd, Params::of([("B", b.clone().into()), ("a", a.clone().into()), ("g", g.clone().into())]));
    let params = Params::of([("B", b.into()), ("t", t.clone().into()), ("a", a.clone().into()), ("g", g.clone().into())]);
    c.tm_step("app[]'", Dir::Fwd, params, hyp, Tm::app(ms(t, g.clone()), ms(a, g)));
    Ok(c)
}

fn chain_p_plus_q(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (at, b, i) = (ps.ty("A")?, ps.ty("B")?, ps.level("i")?);
    let pp = p().plus();
    let sq = one(Tm::Q);
    let cb = Tm::code(b.clone());
    let mut c = Chain::new(s.ctx.clone(), None, Expr::Ty(p_plus_q(b.clone())));
    use Dir::*;
    c.ty_step("U-beta", Bwd, Params::of([("A", b.clone().into())]), None, ts(ts(Ty::el(cb.clone()), pp.clone()), sq.clone()));
    c.ty_step("El[]", Fwd, Params::of([("t", cb.clone().into()), ("g", pp.clone().into())]), None, ts(Ty::el(ms(cb.clone(), pp.clone())), sq.clone()));
    c.ty_step(
        "El[]",
        Fwd,
        Params::of([("t", ms(cb.clone(), pp.clone()).into()), ("g", sq.clone().into())]),
        None,
        Ty::el(ms(ms(cb.clone(), pp.clone()), sq)),
    );
    c.ty_step(
        "Pi-beta-U",
        Bwd,
        Params::of([("A", ts(at, p()).into()), ("b", ms(cb.clone(), pp.clone()).into()), ("a", Tm::Q.into()), ("i", i.into())]),
        None,
        Ty::el(Tm::app(Tm::lam(ms(cb.clone(), pp)), Tm::Q)),
    );
    c.ty_step(
        "lam[]",
        Bwd,
        Params::of([("b", cb.clone().into()), ("g", p().into())]),
        None,
        Ty::el(Tm::app(ms(Tm::lam(cb.clone()), p()), Tm::Q)),
    );
    c.ty_step(
        "Pi-beta'",
        Fwd,
        Params::of([("B", Ty::U(i).into()), ("b", cb.clone().into())]),
        Some(Discharge::U),
        Ty::el(cb),
    );
    c.ty_step("U-beta", Fwd, Params::of([("A", b.clone().into())]), None, b);
    Ok(c)
}

fn chain_pi_beta(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (b_ty, b, a) = (ps.ty("B")?, ps.tm("b")?, ps.tm("a")?);
    let sa = one(a.clone());
    let lb = Tm::lam(b.clone());
    let qa = ms(Tm::Q, sa.clone());
    let mut c = Chain::new(s.ctx.clone(), Some(ts(b_ty.clone(), sa.clone())), Expr::Tm(Tm::app(lb.clone(), a.clone())));
    use Dir::*;
    c.tm_step("q[<>]", Bwd, Params::of([("a", a.clone().into())]), None, Tm::app(lb.clone(), qa.clone()));
    c.tm_step(
        "[p][<>]:tm",
        Bwd,
        Params::of([("b", lb.clone().into()), ("a", a.clone().into())]),
        None,
        Tm::app(ms(ms(lb.clone(), p()), sa.clone()), qa),
    );
    c.tm_step(
        "app[]",
        Bwd,
        Params::of([("t", ms(lb.clone(), p()).into()), ("a", Tm::Q.into()), ("g", sa.clone().into())]),
        None,
        ms(Tm::app(ms(lb, p()), Tm::Q), sa.clone()),
    );
    let hyp = by_rule("[p+][<q>]", Fwd, Params::of([("B", b_ty.clone().into())]));
    c.tm_step("Pi-beta'", Fwd, Params::of([("B", b_ty.into()), ("b", b.clone().into())]), hyp, ms(b, sa));
    Ok(c)
}

fn chain_pi_eta(s: &Site) -> Result<Chain> {
    let ps = &s.params;
    let (at, b, t) = (ps.ty("A")?, ps.ty("B")?, ps.tm("t")?);
    let mut c = Chain::new(s.ctx.clone(), Some(Ty::pi(at.clone(), b.clone())), Expr::Tm(t.clone()));
    let hyp = by_rule("[p+][<q>]", Dir::Fwd, Params::of([("B", b.clone().into())]));
    let params = Params::of([("A", at.into()), ("B", b.into()), ("t", t.clone().into())]);
    c.tm_step("Pi-eta'", Dir::Fwd, params, hyp, Tm::lam(Tm::app(ms(t, p()), Tm::Q)));
    Ok(c)
}

// instance generators

fn base(g: &mut Gen, depth: u32) -> Result<Cx> {
    let n = g.below(3);
    g.ctx(n, depth)
}

fn level_of(cx: &Cx, a: &Ty) -> Result<Level> {
    cx.sc.level(a)
}

/// `Δ▷A[g]` with `g : Sub Δ Γ`, `B : Ty Γ i`, `b : B`.
fn gen_plus(g: &mut Gen, d: u32) -> Result<Site> {
    let dx = base(g, d)?;
    let (s, gx, _) = g.sub(&dx, d)?;
    let a = g.ty(&gx, d)?;
    let b = g.ty(&gx, d)?;
    let i = level_of(&gx, &b)?;
    let t = g.tm(&gx, &b, d)?;
    let ctx = dx.ctx.extend(ts(a.clone(), s.clone()));
    let params = Params::of([("A", a.into()), ("B", b.into()), ("b", t.into()), ("g", s.into()), ("i", i.into())]);
    Ok(Site { ctx, params })
}

/// `Γ` with an inferable `a : A`, `B : Ty Γ i`, `b : B`.
fn gen_single(g: &mut Gen, d: u32) -> Result<Site> {
    let cx = base(g, d)?;
    let (a, at) = g.infer(&cx, d)?;
    let b = g.ty(&cx, d)?;
    let i = level_of(&cx, &b)?;
    let t = g.tm(&cx, &b, d)?;
    let params = Params::of([("A", at.into()), ("a", a.into()), ("B", b.into()), ("b", t.into()), ("i", i.into())]);
    Ok(Site { ctx: cx.ctx, params })
}

/// `Γ`, an inferable `a : A`, `B : Ty (Γ▷A) i`, `b : B` and, for the
/// universe-valued variant, `b : U i`.
fn gen_beta(g: &mut Gen, d: u32, universe: bool) -> Result<Site> {
    let cx = base(g, d)?;
    let (a, at) = g.infer(&cx, d)?;
    let ext = cx.extend(&at);
    let (b_ty, i) = if universe {
        let i = g.below(2) as Level;
        (Ty::U(i), i)
    } else {
        let b = g.ty(&ext, d)?;
        let i = level_of(&ext, &b)?;
        (b, i)
    };
    let b = g.tm(&ext, &b_ty, d)?;
    let params = Params::of([("A", at.into()), ("a", a.into()), ("B", b_ty.into()), ("b", b.into()), ("i", i.into())]);
    Ok(Site { ctx: cx.ctx, params })
}

/// `Δ`, `g : Sub Δ Γ`, an inferable `a : A` in `Γ`, `B : Ty (Γ▷A) i`,
/// `t : Pi A B`.
fn gen_single_sub(g: &mut Gen, d: u32) -> Result<Site> {
    let dx = base(g, d)?;
    let (s, gx, _) = g.sub(&dx, d)?;
    let (a, at) = g.infer(&gx, d)?;
    let ext = gx.extend(&at);
    let b = g.ty_at(&ext, level_of(&gx, &at)?, d)?;
    let i = level_of(&ext, &b)?;
    let t = g.tm(&gx, &Ty::pi(at.clone(), b.clone()), d)?;
    let params = Params::of([("A", at.into()), ("a", a.into()), ("B", b.into()), ("i", i.into()), ("g", s.into()), ("t", t.into())]);
    Ok(Site { ctx: dx.ctx, params })
}

/// `Γ▷A` (or `Γ` for eta) with `B : Ty (Γ▷A) i` and `t : Pi A B`.
fn gen_pi(g: &mut Gen, d: u32, extended: bool) -> Result<Site> {
    let cx = base(g, d)?;
    let a = g.ty(&cx, d)?;
    let ext = cx.extend(&a);
    let b = g.ty_at(&ext, level_of(&cx, &a)?, d)?;
    let i = level_of(&ext, &b)?;
    let t = g.tm(&cx, &Ty::pi(a.clone(), b.clone()), d)?;
    let ctx = if extended { ext.ctx } else { cx.ctx };
    let params = Params::of([("A", a.into()), ("B", b.into()), ("i", i.into()), ("t", t.into())]);
    Ok(Site { ctx, params })
}

/// A derivation of a dropped equation.
pub struct Derivation {
    pub name: &'static str,
    generate: fn(&mut Gen, u32) -> Result<Site>,
    build: fn(&Site) -> Result<Chain>,
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({})", self.name)
    }
}

impl Derivation {
    pub fn site(&self, g: &mut Gen, depth: u32) -> Result<Site> {
        let f = self.generate;
        let b = self.build;
        g.retry(|g| {
            let s = f(g, depth)?;
            b(&s)?;
            Ok(s)
        })
    }

    pub fn chain(&self, site: &Site) -> Result<Chain> {
        (self.build)(site)
    }

    /// Rules a replay of this derivation may use: the minimised calculus
    /// and the derivations before it.
    pub fn allowed(&self) -> Vec<&'static str> {
        let mut out = minimised_names();
        for d in DERIVATIONS {
            if d.name == self.name {
                break;
            }
            out.push(d.name);
        }
        out
    }

    /// Builds the chain at `site`, replays it and checks that its endpoints
    /// are the instance of the derived equation.
    pub fn verify(&self, site: &Site) -> Result<Chain> {
        let chain = self.chain(site)?;
        let r = rule(self.name).ok_or_else(|| ill!("no schema for {}", self.name))?;
        let (l, rr) = (r.concl)(&site.params)?;
        if chain.start != l || *chain.last() != rr {
            return Err(ill!("chain for {} proves {} = {}, not {l} = {rr}", self.name, chain.start, chain.last()));
        }
        replay(&chain, &self.allowed())?;
        Ok(chain)
    }
}

/// Every derivation, in dependency order.
pub static DERIVATIONS: &[Derivation] = &[
    Derivation { name: "[p][+]:ty", generate: gen_plus, build: chain_p_plus_ty },
    Derivation { name: "[p][+]:tm", generate: gen_plus, build: chain_p_plus_tm },
    Derivation { name: "q[+]", generate: gen_plus, build: chain_q_plus },
    Derivation { name: "[p][<>]:ty", generate: gen_single, build: chain_p_single_ty },
    Derivation { name: "[p][<>]:tm", generate: gen_single, build: chain_p_single_tm },
    Derivation { name: "q[<>]", generate: gen_single, build: chain_q_single },
    Derivation { name: "Pi-beta-U", generate: |g, d| gen_beta(g, d, true), build: chain_pi_beta_u },
    Derivation { name: "[<>][]", generate: gen_single_sub, build: chain_single_sub },
    Derivation { name: "app[]", generate: gen_single_sub, build: chain_app_sub },
    Derivation { name: "[p+][<q>]", generate: |g, d| gen_pi(g, d, true), build: chain_p_plus_q },
    Derivation { name: "Pi-beta", generate: |g, d| gen_beta(g, d, false), build: chain_pi_beta },
    Derivation { name: "Pi-eta", generate: |g, d| gen_pi(g, d, false), build: chain_pi_eta },
];

pub fn derivation(name: &str) -> Option<&'static Derivation> {
    DERIVATIONS.iter().find(|d| d.name == name)
}

/// The built-in chain for `name` at a generated instance (seed 0).
pub fn derive_full_axiom(name: &str) -> Result<Chain> {
    let d = derivation(name).ok_or_else(|| ill!("no derivation named {name}"))?;
    let mut g = Gen::new(crate::gen::GenConfig { seed: 0, max_depth: 3, ..Default::default() });
    let site = d.site(&mut g, 3)?;
    d.verify(&site)
}

/// The equation of a conditional rule together with its hypothesis, both
/// at a generated site.
#[derive(Clone, Debug)]
pub struct CondInstance {
    pub ctx: Ctx,
    pub hyp: (Ctx, Ty, Ty),
    pub lhs: Expr,
    pub rhs: Expr,
    pub ty: Option<Ty>,
}

impl CondInstance {
    /// Both the hypothesis and the conclusion hold by conversion.
    pub fn holds(&self) -> Result<bool> {
        let (hc, hl, hr) = &self.hyp;
        if !conv_ty(hc, hl, hr)? {
            return Ok(false);
        }
        match (&self.lhs, &self.rhs, &self.ty) {
            (Expr::Ty(a), Expr::Ty(b), _) => {
                Ok(infer_ty_level(&self.ctx, a)? == infer_ty_level(&self.ctx, b)? && conv_ty(&self.ctx, a, b)?)
            }
            (Expr::Tm(t), Expr::Tm(u), Some(a)) => {
                check_tm(&self.ctx, t, a)?;
                check_tm(&self.ctx, u, a)?;
                conv_tm(&self.ctx, t, u, a)
            }
            _ => Err(ill!("malformed instance")),
        }
    }
}

/// A generated instance of a conditional rule.
pub fn cond_instance(name: &str, g: &mut Gen, depth: u32) -> Result<CondInstance> {
    let r = CONDITIONAL.iter().find(|r| r.name == name).ok_or_else(|| ill!("no conditional rule {name}"))?;
    let Cond::Hyp(h) = r.cond else { unreachable!() };
    g.retry(|g| {
        let (site, ty) = match name {
            "[p][+]'" => {
                let s = gen_plus(g, depth)?;
                let at = ts(ts(s.params.ty("B")?, p()), s.params.sub("g")?.plus());
                (s, at)
            }
            "q[+]'" => {
                let s = gen_plus(g, depth)?;
                let at = ts(ts(s.params.ty("A")?, p()), s.params.sub("g")?.plus());
                (s, at)
            }
            "[p][<>]'" => {
                let s = gen_single(g, depth)?;
                let at = s.params.ty("B")?;
                (s, at)
            }
            "q[<>]'" => {
                let s = gen_single(g, depth)?;
                let at = s.params.ty("A")?;
                (s, at)
            }
            "app[]'" => {
                let s = gen_single_sub(g, depth)?;
                let ps = &s.params;
                let at = ts(ts(ps.ty("B")?, one(ps.tm("a")?)), ps.sub("g")?);
                (s, at)
            }
            "Pi-eta'" => {
                let s = gen_pi(g, depth, false)?;
                let at = Ty::pi(s.params.ty("A")?, s.params.ty("B")?);
                (s, at)
            }
            _ => {
                // Pi-beta' at Γ▷A, with the body b : B in Γ▷A
                let cx = base(g, depth)?;
                let a = g.ty(&cx, depth)?;
                let ext = cx.extend(&a);
                let b = g.ty_at(&ext, level_of(&cx, &a)?, depth)?;
                let t = g.tm(&ext, &b, depth)?;
                let s = Site { ctx: ext.ctx, params: Params::of([("A", a.into()), ("B", b.clone().into()), ("b", t.into())]) };
                (s, b)
            }
        };
        let (lhs, rhs) = (r.concl)(&site.params)?;
        let Hyp { ext, lhs: hl, rhs: hr } = h(&site.params)?;
        let hctx = match ext {
            None => site.ctx.clone(),
            Some(a) => site.ctx.extend(a),
        };
        let hyp = (hctx, hl, hr);
        let inst = CondInstance { ctx: site.ctx, hyp, lhs, rhs, ty: Some(ty) };
        inst.holds()?;
        Ok(inst)
    })
}

/// One row of an equivalence report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: &'static str,
    /// `derive` (replayed from the minimised calculus) or `conv` (accepted
    /// by conversion in the full calculus).
    pub direction: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<String>,
}

/// For `count` instances each: every derivation replays, and every rule of
/// the minimised calculus holds by conversion.
pub fn equivalence_check(g: &mut Gen, count: usize, depth: u32) -> Vec<Row> {
    let mut rows = Vec::new();
    for d in DERIVATIONS {
        let mut row = Row { name: d.name, direction: "derive", passed: 0, failed: 0, counterexample: None };
        for _ in 0..count {
            let outcome = d
                .site(g, depth)
                .and_then(|s| d.verify(&s).map(|_| true).map_err(|e| ill!("{e} at {} {}", s.ctx, s.params)));
            tally(&mut row, outcome);
        }
        rows.push(row);
    }
    for r in CONDITIONAL {
        let mut row = Row { name: r.name, direction: "conv", passed: 0, failed: 0, counterexample: None };
        for _ in 0..count {
            tally(&mut row, cond_instance(r.name, g, depth).and_then(|i| i.holds()));
        }
        rows.push(row);
    }
    for r in UNCONDITIONAL {
        let mut row = Row { name: r.name, direction: "conv", passed: 0, failed: 0, counterexample: None };
        let law = laws::find(r.name).expect("every unconditional rule is a law of the full calculus");
        for _ in 0..count {
            tally(&mut row, law.instance(g, depth).and_then(|i| i.holds()));
        }
        rows.push(row);
    }
    rows
}

fn tally(row: &mut Row, outcome: Result<bool>) {
    match outcome {
        Ok(true) => row.passed += 1,
        Ok(false) => {
            row.failed += 1;
            row.counterexample.get_or_insert_with(|| "conversion failed".to_string());
        }
        Err(e) => {
            row.failed += 1;
            row.counterexample.get_or_insert_with(|| e.to_string());
        }
    }
}

/// A copy of `chain` whose step `index` (1-based) cites `rule` instead.
pub fn corrupt(chain: &Chain, index: usize, rule: &str) -> Chain {
    let mut out = chain.clone();
    if let Some(s) = out.steps.get_mut(index.saturating_sub(1)) {
        s.rule = rule.to_owned();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::GenConfig;

    fn gen(seed: u64) -> Gen {
        Gen::new(GenConfig { seed, max_depth: 3, ..GenConfig::default() })
    }

    #[test]
    fn minimised_set_has_no_full_axiom() {
        let min = minimised_names();
        for n in FULL_AXIOMS {
            assert!(!min.contains(n), "{n}");
        }
        assert_eq!(CONDITIONAL.len(), 7);
        for d in DERIVATIONS {
            for n in FULL_AXIOMS {
                let pos = DERIVATIONS.iter().position(|x| x.name == *n).unwrap();
                let here = DERIVATIONS.iter().position(|x| x.name == d.name).unwrap();
                assert_eq!(d.allowed().contains(n), pos < here);
            }
        }
    }

    #[test]
    fn every_derivation_replays() {
        let mut g = gen(3);
        for d in DERIVATIONS {
            for _ in 0..5 {
                let s = d.site(&mut g, 3).unwrap();
                if let Err(e) = d.verify(&s) {
                    panic!("{}: {e}\n{}", d.name, d.chain(&s).unwrap());
                }
            }
        }
    }

    #[test]
    fn wrong_rule_is_a_step_mismatch() {
        let chain = derive_full_axiom("[p][+]:ty").unwrap();
        let bad = corrupt(&chain, 2, "c[]");
        let d = derivation("[p][+]:ty").unwrap();
        match replay(&bad, &d.allowed()) {
            Err(Error::StepMismatch { index: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn full_rules_are_not_allowed_before_derivation() {
        let chain = derive_full_axiom("Pi-beta").unwrap();
        let early = derivation("[p][<>]:ty").unwrap().allowed();
        assert!(matches!(replay(&chain, &early), Err(Error::StepMismatch { .. })));
    }

    #[test]
    fn conditional_instances_hold() {
        let mut g = gen(4);
        for r in CONDITIONAL {
            for _ in 0..5 {
                let i = cond_instance(r.name, &mut g, 3).unwrap();
                assert!(i.holds().unwrap(), "{}", r.name);
            }
        }
    }
}
