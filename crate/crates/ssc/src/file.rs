//! `.ssc` files: a sequence of `(def NAME KIND PAYLOAD...)` declarations.
//!
//! Payloads by kind, with `CTX` always an optional leading `(ctx ...)`:
//!
//! ```text
//! (def G ctx (ctx A1 ... An))
//! (def A ty  CTX TY)
//! (def t tm  CTX TM [TY])
//! (def s sub CTX SUB [COD])
//! (def c chain (chain ...))
//! ```
//!
//! A name may be used in any later declaration; it stands for the main
//! payload (the context, type, term, substitution or chain) of its
//! declaration, substituted before parsing.

use std::collections::HashMap;
use std::fmt;

use ssc_core::minim::Chain;
use ssc_core::syntax::{Ctx, SubS, Tm, Ty};

use crate::error::{syntax, Result};
use crate::parse::{self, resolve_ctx, resolve_tm, resolve_ty, SubSyntax, ViaSub};
use crate::sexp::{read_all, Sexp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ctx,
    Ty,
    Tm,
    Sub,
    Chain,
}

impl Kind {
    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "ctx" => Kind::Ctx,
            "ty" => Kind::Ty,
            "tm" => Kind::Tm,
            "sub" => Kind::Sub,
            "chain" => Kind::Chain,
            _ => return None,
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ctx => "ctx",
            Kind::Ty => "ty",
            Kind::Tm => "tm",
            Kind::Sub => "sub",
            Kind::Chain => "chain",
        })
    }
}

/// A declaration after name substitution, before interpretation.
#[derive(Clone, Debug)]
pub struct RawDef {
    pub name: String,
    pub kind: Kind,
    pub ctx: Option<Sexp>,
    pub parts: Vec<Sexp>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Entity<S = SubS> {
    Ctx(Ctx<S>),
    Ty { ctx: Option<Ctx<S>>, ty: Ty<S> },
    Tm { ctx: Option<Ctx<S>>, tm: Tm<S>, ty: Option<Ty<S>> },
    Sub { ctx: Option<Ctx<S>>, sub: S, cod: Option<Ctx<S>> },
    Chain(Chain),
}

impl<S> Entity<S> {
    pub fn kind(&self) -> Kind {
        match self {
            Entity::Ctx(_) => Kind::Ctx,
            Entity::Ty { .. } => Kind::Ty,
            Entity::Tm { .. } => Kind::Tm,
            Entity::Sub { .. } => Kind::Sub,
            Entity::Chain(_) => Kind::Chain,
        }
    }

    /// The explicit context, if the declaration gave one.
    pub fn ctx(&self) -> Option<&Ctx<S>> {
        match self {
            Entity::Ty { ctx, .. } | Entity::Tm { ctx, .. } | Entity::Sub { ctx, .. } => ctx.as_ref(),
            Entity::Ctx(_) | Entity::Chain(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Def<S = SubS> {
    pub name: String,
    pub entity: Entity<S>,
}

impl<S: fmt::Display> fmt::Display for Def<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(def {} {}", self.name, self.entity.kind())?;
        match &self.entity {
            Entity::Ctx(c) => write!(f, " {c}")?,
            Entity::Ty { ctx, ty } => {
                opt(f, ctx)?;
                write!(f, " {ty}")?;
            }
            Entity::Tm { ctx, tm, ty } => {
                opt(f, ctx)?;
                write!(f, " {tm}")?;
                opt(f, ty)?;
            }
            Entity::Sub { ctx, sub, cod } => {
                opt(f, ctx)?;
                write!(f, " {sub}")?;
                opt(f, cod)?;
            }
            Entity::Chain(c) => write!(f, " {c}")?,
        }
        f.write_str(")")
    }
}

fn opt(f: &mut fmt::Formatter<'_>, x: &Option<impl fmt::Display>) -> fmt::Result {
    match x {
        Some(x) => write!(f, " {x}"),
        None => Ok(()),
    }
}

const RESERVED: &[&str] = &[
    "U", "El", "Pi", "Sigma", "Top", "Lift", "tysub", "q", "tmsub", "lam", "app", "code", "mk", "un", "tt", "pair",
    "fst", "snd", "p", "single", "plus", "ctx", "id", "comp", "eps", "ext", "tms", "chain", "at", "start", "step",
    "by", "ty", "tm", "sub", "level", "fwd", "bwd", "def",
];

fn is_ctx_form(e: &Sexp) -> bool {
    matches!(e.head(), Some(("ctx", _)))
}

/// Reads declarations and substitutes earlier names into later ones.
pub fn read_defs(src: &str) -> Result<Vec<RawDef>> {
    let mut env: HashMap<String, Sexp> = HashMap::new();
    let mut out = Vec::new();
    for top in read_all(src)? {
        let Some(("def", args)) = top.head() else {
            return Err(syntax(format!("expected (def NAME KIND ...), got {top}")));
        };
        let (name, kind, rest) = match args {
            [Sexp::Atom(n), Sexp::Atom(k), rest @ ..] => (n.clone(), k, rest),
            _ => return Err(syntax(format!("expected (def NAME KIND ...), got {top}"))),
        };
        if RESERVED.contains(&name.as_str()) || name.parse::<u64>().is_ok() {
            return Err(syntax(format!("`{name}` cannot be used as a declaration name")));
        }
        if env.contains_key(&name) {
            return Err(syntax(format!("`{name}` is declared twice")));
        }
        let kind = Kind::parse(kind).ok_or_else(|| syntax(format!("unknown declaration kind `{kind}` in {top}")))?;
        let mut parts: Vec<Sexp> = rest.iter().map(|x| x.subst(&env)).collect();
        let ctx = match kind {
            Kind::Ty | Kind::Tm | Kind::Sub if parts.first().is_some_and(is_ctx_form) => Some(parts.remove(0)),
            _ => None,
        };
        let (lo, hi) = match kind {
            Kind::Ctx | Kind::Ty | Kind::Chain => (1, 1),
            Kind::Tm | Kind::Sub => (1, 2),
        };
        if parts.len() < lo || parts.len() > hi {
            return Err(syntax(format!("wrong number of parts in the {kind} declaration `{name}`")));
        }
        env.insert(name.clone(), parts[0].clone());
        out.push(RawDef { name, kind, ctx, parts });
    }
    Ok(out)
}

impl RawDef {
    pub fn interpret<S: SubSyntax>(&self) -> Result<Def<S>> {
        let ctx = self.ctx.as_ref().map(parse::ctx).transpose()?;
        let second = self.parts.get(1);
        let entity = match self.kind {
            Kind::Ctx => Entity::Ctx(parse::ctx(&self.parts[0])?),
            Kind::Ty => Entity::Ty { ctx, ty: parse::ty(&self.parts[0])? },
            Kind::Tm => Entity::Tm { ctx, tm: parse::tm(&self.parts[0])?, ty: second.map(parse::ty).transpose()? },
            Kind::Sub => Entity::Sub { ctx, sub: S::parse(&self.parts[0])?, cod: second.map(parse::ctx).transpose()? },
            Kind::Chain => Entity::Chain(parse::chain(&self.parts[0])?),
        };
        Ok(Def { name: self.name.clone(), entity })
    }
}

pub fn parse_file<S: SubSyntax>(src: &str) -> Result<Vec<Def<S>>> {
    read_defs(src)?.iter().map(RawDef::interpret).collect()
}

/// Parses with `(tms ...)` literals allowed under instantiations and
/// replaces them by their embedding.
pub fn parse_file_via_tms(src: &str) -> Result<Vec<Def>> {
    let defs: Vec<Def<ViaSub>> = parse_file(src)?;
    defs.into_iter()
        .map(|d| {
            let ctx = |c: &Option<Ctx<ViaSub>>| c.as_ref().map(resolve_ctx).transpose();
            let n = d.entity.ctx().map_or(0, |c| c.len());
            let entity = match &d.entity {
                Entity::Ctx(c) => Entity::Ctx(resolve_ctx(c)?),
                Entity::Ty { ctx: c, ty } => Entity::Ty { ctx: ctx(c)?, ty: resolve_ty(ty, n)? },
                Entity::Tm { ctx: c, tm, ty } => Entity::Tm {
                    ctx: ctx(c)?,
                    tm: resolve_tm(tm, n)?,
                    ty: ty.as_ref().map(|a| resolve_ty(a, n)).transpose()?,
                },
                Entity::Sub { .. } => {
                    return Err(syntax(format!("`{}`: substitution declarations are not instantiated via tms", d.name)))
                }
                Entity::Chain(c) => Entity::Chain(c.clone()),
            };
            Ok(Def { name: d.name, entity })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_substituted() {
        let src = "(def G ctx (ctx Top))\n(def A ty G (U 0))\n(def B ty G (tysub A p))";
        let defs: Vec<Def> = parse_file(src).unwrap();
        assert_eq!(defs[2].to_string(), "(def B ty (ctx Top) (tysub (U 0) p))");
    }

    #[test]
    fn printed_declarations_reparse() {
        let src = "(def t tm (ctx (U 0)) (lam q) (Pi (El q) (tysub (El q) p)))\n(def s sub (ctx Top) (single tt))";
        let defs: Vec<Def> = parse_file(src).unwrap();
        let again: Vec<Def> = parse_file(&defs.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n")).unwrap();
        assert_eq!(defs, again);
    }

    #[test]
    fn reserved_and_duplicate_names() {
        assert!(read_defs("(def q ty Top)").is_err());
        assert!(read_defs("(def a ty Top) (def a ty Top)").is_err());
        assert!(read_defs("(def a foo Top)").is_err());
        assert!(read_defs("(def a tm)").is_err());
    }
}
