//! Deterministic, type-directed generator of well-typed syntax.
//!
//! Substitutions are generated domain first, together with a codomain
//! context and a recipe for moving a type from the domain to the codomain;
//! that is what lets the generator wrap any subterm in an explicit
//! instantiation.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::{strengthen, Scope};
use crate::error::{Error, Result};
use crate::eval::{NfTy, Val};
use crate::syntax::{Ctx, Level, SubS, Tm, Ty};
use crate::tel::Tel;

/// Relative constructor frequencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    /// Percent chance of an explicit instantiation node at each step.
    pub wrap: u32,
    pub universe: u32,
    pub top: u32,
    pub lift: u32,
    pub el: u32,
    pub pi: u32,
    pub sigma: u32,
    /// Preference for variables and eliminations over introductions.
    pub neutral: u32,
    pub redex: u32,
}

impl Default for Weights {
    fn default() -> Self {
        Weights { wrap: 40, universe: 2, top: 1, lift: 2, el: 3, pi: 3, sigma: 2, neutral: 3, redex: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub max_depth: u32,
    pub max_level: Level,
    pub seed: u64,
    pub weights: Weights,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_depth: 5, max_level: 1, seed: 0, weights: Weights::default() }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let w = &self.weights;
        let total = w.universe + w.top + w.lift + w.el + w.pi + w.sigma;
        if self.max_depth == 0 || total == 0 || w.wrap > 100 {
            return Err(Error::IllFormed(alloc::string::String::from("invalid generator configuration")));
        }
        Ok(())
    }
}

/// How a type in the domain of a generated substitution is moved to its
/// codomain.
#[derive(Clone, Debug)]
pub enum Transport {
    /// `T[p^{+k}]`, for substitutions built on a single substitution.
    Weaken(usize),
    /// Strengthening through the weakening itself.
    Strengthen(SubS),
}

/// A context together with its checking scope.
#[derive(Clone)]
pub struct Cx {
    pub ctx: Ctx,
    pub sc: Scope,
}

impl Cx {
    pub fn new(ctx: Ctx) -> Result<Cx> {
        let sc = Scope::from_ctx(&ctx)?;
        Ok(Cx { ctx, sc })
    }

    pub fn empty() -> Cx {
        Cx { ctx: Ctx::empty(), sc: Scope::empty() }
    }

    pub fn extend(&self, a: &Ty) -> Cx {
        Cx { ctx: self.ctx.extend(a.clone()), sc: self.sc.bind(self.sc.eval_ty(a)) }
    }

    pub fn len(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctx.is_empty()
    }

    fn val(&self, a: &Ty) -> Val {
        self.sc.eval_ty(a)
    }

    fn syn(&self, v: &Val) -> Result<Ty> {
        Ok(self.sc.nf_ty(v)?.to_ty())
    }

    fn nf(&self, a: &Ty) -> Result<NfTy> {
        self.sc.nf_ty(&self.val(a))
    }
}

pub struct Gen {
    pub cfg: GenConfig,
    rng: ChaCha8Rng,
}

const RETRIES: usize = 64;

impl Gen {
    pub fn new(cfg: GenConfig) -> Gen {
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Gen { cfg, rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, percent: u32) -> bool {
        self.rng.gen_range(0..100) < percent
    }

    fn level(&mut self) -> Level {
        self.rng.gen_range(0..=self.cfg.max_level)
    }

    fn wrap(&mut self, depth: u32) -> bool {
        depth > 1 && self.chance(self.cfg.weights.wrap)
    }

    /// Retries `f` until it succeeds or the budget runs out.
    pub fn retry<T>(&mut self, mut f: impl FnMut(&mut Gen) -> Result<T>) -> Result<T> {
        let mut last = Error::Exhausted;
        for _ in 0..RETRIES {
            match f(self) {
                Ok(v) => return Ok(v),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    // contexts and telescopes

    pub fn ctx(&mut self, len: usize, depth: u32) -> Result<Cx> {
        let mut cx = Cx::empty();
        for _ in 0..len {
            let a = self.ty(&cx, depth)?;
            cx = cx.extend(&a);
        }
        Ok(cx)
    }

    pub fn tel(&mut self, cx: &Cx, len: usize, depth: u32) -> Result<Tel> {
        let mut entries = Vec::new();
        let mut cur = cx.clone();
        for _ in 0..len {
            let a = self.ty(&cur, depth)?;
            cur = cur.extend(&a);
            entries.push(a);
        }
        Ok(Tel { base: cx.ctx.clone(), entries })
    }

    // types

    /// A type at a random level.
    pub fn ty(&mut self, cx: &Cx, depth: u32) -> Result<Ty> {
        let l = self.level();
        self.ty_at(cx, l, depth)
    }

    /// A type at exactly level `l`.
    pub fn ty_at(&mut self, cx: &Cx, l: Level, depth: u32) -> Result<Ty> {
        if depth <= 1 {
            return Ok(if l == 0 { Ty::Top } else { Ty::U(l - 1) });
        }
        if self.wrap(depth) {
            if let Ok((s, gx, _)) = self.sub(cx, depth - 1) {
                let a = self.ty_at(&gx, l, depth - 1)?;
                return Ok(Ty::sub(a, s));
            }
        }
        let w = self.cfg.weights.clone();
        let mut opts: Vec<(u32, u8)> = Vec::new();
        if l == 0 {
            opts.push((w.top, 0));
        } else {
            opts.push((w.universe, 1));
            opts.push((w.lift, 2));
        }
        opts.push((w.el, 3));
        opts.push((w.pi, 4));
        opts.push((w.sigma, 5));
        match self.pick(&opts) {
            0 => Ok(Ty::Top),
            1 => Ok(Ty::U(l - 1)),
            2 => Ok(Ty::lift(self.ty_at(cx, l - 1, depth - 1)?)),
            3 => {
                let t = self.tm(cx, &Ty::U(l), depth - 1)?;
                Ok(Ty::el(t))
            }
            k => {
                let a = self.ty_at(cx, l, depth - 1)?;
                let b = self.ty_at(&cx.extend(&a), l, depth - 1)?;
                Ok(if k == 4 { Ty::pi(a, b) } else { Ty::sigma(a, b) })
            }
        }
    }

    fn pick(&mut self, opts: &[(u32, u8)]) -> u8 {
        let total: u32 = opts.iter().map(|o| o.0).sum();
        if total == 0 {
            return opts[0].1;
        }
        let mut r = self.rng.gen_range(0..total);
        for (w, k) in opts {
            if r < *w {
                return *k;
            }
            r -= w;
        }
        opts[opts.len() - 1].1
    }

    // substitutions

    /// A substitution out of `cx`, its codomain, and the transport recipe.
    pub fn sub(&mut self, cx: &Cx, depth: u32) -> Result<(SubS, Cx, Transport)> {
        let n = cx.len();
        if n == 0 || self.chance(50) {
            let k = if n == 0 { 0 } else { self.below(n.min(2) + 1) };
            self.single_sub(cx, k, depth)
        } else {
            let k = self.below(n.min(3));
            match self.weak_sub(cx, k) {
                Ok(r) => Ok(r),
                Err(_) => self.weak_sub(cx, 0),
            }
        }
    }

    /// `<a>^{+k}` with `a` inferable in the prefix before the last `k` entries.
    pub fn single_sub(&mut self, cx: &Cx, k: usize, depth: u32) -> Result<(SubS, Cx, Transport)> {
        let n = cx.len();
        let base = Cx::new(cx.ctx.prefix(n - k))?;
        let (a, aty) = self.infer(&base, depth.saturating_sub(1).max(1))?;
        let mut ctx = base.ctx.extend(aty);
        for m in 0..k {
            ctx.push(Ty::sub(cx.ctx.entries[n - k + m].clone(), SubS::P.plus_n(m)));
        }
        Ok((SubS::single(a).plus_n(k), Cx::new(ctx)?, Transport::Weaken(k)))
    }

    /// `p^{+k}`, dropping the entry `k` places from the end.
    pub fn weak_sub(&mut self, cx: &Cx, k: usize) -> Result<(SubS, Cx, Transport)> {
        let n = cx.len();
        if k >= n {
            return Err(Error::Exhausted);
        }
        let mut ctx = cx.ctx.prefix(n - 1 - k);
        for m in 0..k {
            let dom = cx.ctx.prefix(n - k + m);
            let e = strengthen(&dom, &SubS::P.plus_n(m), &cx.ctx.entries[n - k + m])?;
            ctx.push(e);
        }
        let s = SubS::P.plus_n(k);
        Ok((s.clone(), Cx::new(ctx)?, Transport::Strengthen(s)))
    }

    /// Moves a type of the domain to the codomain of a generated substitution.
    pub fn transport(&self, cx: &Cx, ty: &Ty, tr: &Transport) -> Result<Ty> {
        match tr {
            Transport::Weaken(k) => Ok(Ty::sub(ty.clone(), SubS::P.plus_n(*k))),
            Transport::Strengthen(g) => strengthen(&cx.ctx, g, ty),
        }
    }

    // terms

    /// A term of type `ty`.
    pub fn tm(&mut self, cx: &Cx, ty: &Ty, depth: u32) -> Result<Tm> {
        if self.wrap(depth) {
            if let Ok((s, gx, tr)) = self.sub(cx, depth - 1) {
                if let Ok(ty2) = self.transport(cx, ty, &tr) {
                    if let Ok(t) = self.tm(&gx, &ty2, depth - 1) {
                        return Ok(Tm::sub(t, s));
                    }
                }
            }
        }
        let nf = cx.nf(ty)?;
        let w = self.cfg.weights.clone();
        if !matches!(nf, NfTy::El(_)) && depth > 1 && self.chance(w.neutral * 10) {
            if let Some(t) = self.neutral(cx, ty, depth - 1) {
                return Ok(t);
            }
        }
        if depth > 1 && w.redex > 0 && self.chance(w.redex * 10) {
            if let Ok(t) = self.redex(cx, ty, depth - 1) {
                return Ok(t);
            }
        }
        let d = depth.saturating_sub(1).max(1);
        match nf {
            NfTy::Top => Ok(Tm::Tt),
            NfTy::Lift(a) => Ok(Tm::mk(self.tm(cx, &a.to_ty(), d)?)),
            NfTy::U(i) => {
                if self.chance(30) {
                    if let Some(t) = self.neutral(cx, ty, d) {
                        return Ok(t);
                    }
                }
                Ok(Tm::code(self.ty_at(cx, i, d)?))
            }
            NfTy::Pi(a, b) => {
                let inner = cx.extend(&a.to_ty());
                Ok(Tm::lam(self.tm(&inner, &b.to_ty(), d)?))
            }
            NfTy::Sigma(a, _) => {
                let fst = self.tm(cx, &a.to_ty(), d)?;
                let snd_ty = match cx.val(ty) {
                    Val::Sigma(_, y) => cx.syn(&y.apply(cx.sc.eval_tm(&fst)))?,
                    _ => return Err(Error::Exhausted),
                };
                let snd = self.tm(cx, &snd_ty, d)?;
                Ok(Tm::pair(fst, snd))
            }
            NfTy::El(_) => self.neutral(cx, ty, depth).ok_or(Error::Exhausted),
        }
    }

    /// `app (lam b) a` with `a` inferable.
    fn redex(&mut self, cx: &Cx, ty: &Ty, depth: u32) -> Result<Tm> {
        let (a, aty) = self.infer(cx, depth)?;
        let inner = cx.extend(&aty);
        let b = self.tm(&inner, &ty.clone().wk(), depth)?;
        Ok(Tm::app(Tm::lam(b), a))
    }

    /// A variable, possibly under eliminations, of type `ty`.
    fn neutral(&mut self, cx: &Cx, ty: &Ty, depth: u32) -> Option<Tm> {
        let target = cx.val(ty);
        let mut idx: Vec<usize> = (0..cx.len()).collect();
        idx.shuffle(&mut self.rng);
        for k in idx {
            let t = Tm::var(k);
            let tv = cx.sc.infer(&t).ok()?;
            if let Some(r) = self.reach(cx, &target, t, tv, 3, depth) {
                return Some(r);
            }
        }
        None
    }

    fn reach(&mut self, cx: &Cx, target: &Val, t: Tm, tv: Val, steps: u32, depth: u32) -> Option<Tm> {
        if cx.sc.conv_ty(&tv, target).ok()? {
            return Some(t);
        }
        if steps == 0 {
            return None;
        }
        match &tv {
            Val::Pi(a, b) if depth > 1 => {
                let aty = cx.syn(a).ok()?;
                let arg = self.tm(cx, &aty, depth - 1).ok()?;
                let rv = b.apply(cx.sc.eval_tm(&arg));
                self.reach(cx, target, Tm::app(t, arg), rv, steps - 1, depth)
            }
            Val::Sigma(a, b) => {
                let first = Tm::fst(t.clone());
                if let Some(r) = self.reach(cx, target, first.clone(), (**a).clone(), steps - 1, depth) {
                    return Some(r);
                }
                let rv = b.apply(cx.sc.eval_tm(&first));
                self.reach(cx, target, Tm::snd(t), rv, steps - 1, depth)
            }
            Val::Lift(a) => self.reach(cx, target, Tm::un(t), (**a).clone(), steps - 1, depth),
            _ => None,
        }
    }

    /// An inferable term together with its type.
    pub fn infer(&mut self, cx: &Cx, depth: u32) -> Result<(Tm, Ty)> {
        self.retry(|g| g.infer_once(cx, depth))
    }

    fn infer_once(&mut self, cx: &Cx, depth: u32) -> Result<(Tm, Ty)> {
        let t = match self.below(10) {
            0 | 1 if !cx.is_empty() => {
                let k = self.below(cx.len());
                let v = Tm::var(k);
                match cx.sc.infer(&v)? {
                    Val::Pi(..) | Val::Sigma(..) | Val::Lift(..) if depth > 1 && self.chance(50) => {
                        let mut t = v;
                        for _ in 0..3 {
                            let tv = cx.sc.infer(&t)?;
                            if !matches!(tv, Val::Pi(..) | Val::Sigma(..) | Val::Lift(..)) {
                                break;
                            }
                            t = self.eliminate(cx, t, tv, depth)?;
                            if self.chance(50) {
                                break;
                            }
                        }
                        t
                    }
                    _ => v,
                }
            }
            2 => {
                let l = self.level();
                Tm::code(self.ty_at(cx, l, depth)?)
            }
            3 if depth > 1 => {
                let (a, _) = self.infer(cx, depth - 1)?;
                Tm::mk(a)
            }
            4 if depth > 1 => {
                let (s, gx, _) = self.sub(cx, depth - 1)?;
                let (t, _) = self.infer(&gx, depth - 1)?;
                Tm::sub(t, s)
            }
            5 if depth > 1 => {
                let (a, aty) = self.infer(cx, depth - 1)?;
                let (b, _) = self.infer(&cx.extend(&aty), depth - 1)?;
                Tm::app(Tm::lam(b), a)
            }
            6 if !cx.is_empty() => Tm::var(self.below(cx.len())),
            7 if depth > 1 => {
                let (a, _) = self.infer(cx, depth - 1)?;
                Tm::un(Tm::mk(a))
            }
            8 | 9 if depth > 1 => {
                let (a, _) = self.infer(cx, depth - 1)?;
                let (b, _) = self.infer(cx, depth - 1)?;
                let p = Tm::pair(a, b);
                if self.chance(50) {
                    Tm::fst(p)
                } else {
                    Tm::snd(p)
                }
            }
            _ => Tm::Tt,
        };
        let ty = cx.sc.infer(&t)?;
        Ok((t, cx.syn(&ty)?))
    }

    fn eliminate(&mut self, cx: &Cx, t: Tm, tv: Val, depth: u32) -> Result<Tm> {
        Ok(match tv {
            Val::Pi(a, _) => {
                let aty = cx.syn(&a)?;
                let arg = self.tm(cx, &aty, depth - 1)?;
                Tm::app(t, arg)
            }
            Val::Sigma(..) => {
                if self.chance(50) {
                    Tm::fst(t)
                } else {
                    Tm::snd(t)
                }
            }
            Val::Lift(_) => Tm::un(t),
            _ => t,
        })
    }
}

/// Entry points with fresh generators.
pub fn gen_ty(cfg: &GenConfig, ctx: &Ctx) -> Result<Ty> {
    let cx = Cx::new(ctx.clone())?;
    let mut g = Gen::new(cfg.clone());
    let d = cfg.max_depth;
    g.retry(|g| g.ty(&cx, d))
}

pub fn gen_tm(cfg: &GenConfig, ctx: &Ctx, ty: &Ty) -> Result<Tm> {
    let cx = Cx::new(ctx.clone())?;
    cx.sc.level(ty)?;
    let mut g = Gen::new(cfg.clone());
    let d = cfg.max_depth;
    g.retry(|g| g.tm(&cx, ty, d))
}

pub fn gen_sub(cfg: &GenConfig, dom: &Ctx) -> Result<SubS> {
    let cx = Cx::new(dom.clone())?;
    let mut g = Gen::new(cfg.clone());
    let d = cfg.max_depth;
    g.retry(|g| g.sub(&cx, d)).map(|r| r.0)
}

pub fn gen_tel(cfg: &GenConfig, ctx: &Ctx, len: usize) -> Result<Tel> {
    let cx = Cx::new(ctx.clone())?;
    let mut g = Gen::new(cfg.clone());
    let d = cfg.max_depth;
    g.retry(|g| g.tel(&cx, len, d))
}
