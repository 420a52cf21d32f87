//! Command line verbs. [`run`] never touches the process: it returns the
//! exit code and both output streams, so tests drive it directly.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ssc_core::alphanorm::{alpha_norm_ty, alpha_norm_tm};
use ssc_core::check::{check_sub_into, check_tm, infer_tm, infer_ty_level, wf_ctx, wf_sub};
use ssc_core::cwf::{self, CSub};
use ssc_core::eval::{conv_tm, conv_ty, normalize_inferred, normalize_tm, normalize_ty};
use ssc_core::gen::{Gen, GenConfig};
use ssc_core::syntax::{Ctx, SubS, Subst};
use ssc_core::{iso, laws, minim, tel, termify};

use crate::error::{Error, Result};
use crate::file::{parse_file, parse_file_via_tms, Def, Entity, Kind};
use crate::parse::SubSyntax;

#[derive(Parser, Debug)]
#[command(name = "ssc", version, about = "Checker, normaliser and test driver for the single substitution calculus")]
pub struct Cli {
    /// Print one JSON object with fields verb, status and counterexample.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed of the sample generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every declaration of a file.
    Check {
        file: PathBuf,
        /// Read substitutions in the parallel (CwF) syntax.
        #[arg(long)]
        cwf: bool,
    },
    /// Print the normal form of every context, type and term.
    Normalize {
        file: PathBuf,
        /// Only push instantiations down to variables.
        #[arg(long, conflicts_with_all = ["via", "cwf"])]
        alpha: bool,
        /// Accept `(tms ...)` literals and instantiate through their embedding.
        #[arg(long, value_enum, conflicts_with = "cwf")]
        via: Option<Via>,
        #[arg(long)]
        cwf: bool,
    },
    /// Decide conversion of the last two declarations of a file.
    Conv {
        file: PathBuf,
        #[arg(long)]
        cwf: bool,
    },
    /// Translate every declaration between the two syntaxes.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        file: PathBuf,
    },
    /// Roundtrip generated entities through both translations.
    Roundtrip {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Fail unless every constructor occurs at least this often.
        #[arg(long, default_value_t = 0)]
        min_coverage: usize,
    },
    /// Check a family of equations on generated instances.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Largest telescope for the lifted equations (lengths 1..=tel).
        #[arg(long, default_value_t = 3)]
        tel: usize,
    },
    /// Derivations in the minimised calculus.
    Minim {
        #[command(subcommand)]
        command: MinimCommand,
    },
    /// Termification into closed types and functions.
    Termify {
        #[command(subcommand)]
        command: TermifyCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum MinimCommand {
    /// Print and replay the built-in chain for a rule of the full calculus.
    Derive {
        name: String,
        /// Replace the rule cited at this step (1-based) before replaying.
        #[arg(long)]
        corrupt: Option<usize>,
    },
    /// Replay every derivation and check every minimised rule by conversion.
    Verify {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum TermifyCommand {
    /// Print the closed-term definition of an operation.
    Emit {
        op: String,
        /// Also print the undecorated definition and compare erasure with it.
        #[arg(long)]
        plain: bool,
        /// Level of the context argument.
        #[arg(long, default_value_t = 0)]
        gamma: u32,
        /// Level of the domain of substitution arguments.
        #[arg(long, default_value_t = 1)]
        delta: u32,
        /// Level of type arguments.
        #[arg(long, default_value_t = 0)]
        level: u32,
    },
    /// Check the CwF laws in the termified model.
    Check {
        #[arg(long, default_value = "all")]
        laws: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Tms,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Cwf,
    Ssc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// The structural equations and the laws of every type former.
    Equations,
    /// The four lifted equations over nonempty telescopes.
    Lifted,
    /// The laws of the parallel syntax, also after translation.
    CwfLaws,
    /// Preservation equations of F and the derived isomorphisms.
    Iso,
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct Row {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Row {
    fn new(name: impl Into<String>) -> Row {
        Row { name: name.into(), passed: 0, failed: 0, counterexample: None }
    }

    fn record(&mut self, outcome: ssc_core::Result<bool>, show: impl FnOnce() -> String) {
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => {
                self.failed += 1;
                self.counterexample.get_or_insert_with(show);
            }
            Err(e) => {
                self.failed += 1;
                self.counterexample.get_or_insert_with(|| e.to_string());
            }
        }
    }
}

#[derive(Serialize, Debug)]
struct Report {
    verb: String,
    status: &'static str,
    counterexample: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rows: Vec<Row>,
    output: Vec<String>,
}

impl Report {
    fn new(verb: impl Into<String>) -> Report {
        Report { verb: verb.into(), status: "pass", counterexample: None, rows: Vec::new(), output: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.output.push(s.into());
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.status = "fail";
        self.counterexample.get_or_insert_with(|| what.into());
    }

    fn rows(&mut self, rows: Vec<Row>) {
        for r in &rows {
            if r.failed > 0 {
                let ce = r.counterexample.clone().unwrap_or_default();
                self.fail(format!("{}: {ce}", r.name));
            }
        }
        self.rows = rows;
    }

    fn code(&self) -> i32 {
        if self.status == "pass" {
            0
        } else {
            1
        }
    }

    fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string(self).expect("reports serialise") + "\n";
        }
        let mut s = String::new();
        for l in &self.output {
            s.push_str(l);
            s.push('\n');
        }
        if !self.rows.is_empty() {
            let w = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0).max(4);
            let _ = writeln!(s, "{:<w$}  {:>6}  {:>6}", "name", "passed", "failed");
            for r in &self.rows {
                let _ = writeln!(s, "{:<w$}  {:>6}  {:>6}", r.name, r.passed, r.failed);
            }
            for r in self.rows.iter().filter(|r| r.counterexample.is_some()) {
                let _ = writeln!(s, "counterexample {}: {}", r.name, r.counterexample.as_deref().unwrap_or(""));
            }
        }
        let _ = writeln!(s, "status: {}", self.status);
        s
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let verb = verb_name(&cli.command);
    match dispatch(&cli) {
        Ok(rep) => Outcome { code: rep.code(), stdout: rep.render(cli.json), stderr: String::new() },
        Err(e) => {
            let code = e.exit_code();
            let stdout = if cli.json {
                let status = if code == 2 { "error" } else { "fail" };
                let v = serde_json::json!({ "verb": verb, "status": status, "counterexample": e.to_string() });
                v.to_string() + "\n"
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("ssc {verb}: {e}\n") }
        }
    }
}

fn verb_name(c: &Command) -> String {
    match c {
        Command::Check { .. } => "check".into(),
        Command::Normalize { .. } => "normalize".into(),
        Command::Conv { .. } => "conv".into(),
        Command::Translate { .. } => "translate".into(),
        Command::Roundtrip { .. } => "roundtrip".into(),
        Command::Verify { suite, .. } => format!("verify {}", suite.to_possible_value().unwrap().get_name()),
        Command::Minim { command: MinimCommand::Derive { .. } } => "minim derive".into(),
        Command::Minim { command: MinimCommand::Verify { .. } } => "minim verify".into(),
        Command::Termify { command: TermifyCommand::Emit { .. } } => "termify emit".into(),
        Command::Termify { command: TermifyCommand::Check { .. } } => "termify check".into(),
    }
}

fn gen(seed: u64, depth: u32) -> Result<Gen> {
    let cfg = GenConfig { seed, max_depth: depth, ..GenConfig::default() };
    cfg.validate().map_err(|e| Error::Usage(format!("--depth {depth}: {e}")))?;
    Ok(Gen::new(cfg))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let verb = verb_name(&cli.command);
    let mut rep = Report::new(verb);
    match &cli.command {
        Command::Check { file, cwf } => {
            let src = read(file)?;
            if *cwf {
                check_defs::<CSub>(&parse_file(&src)?, &mut rep);
            } else {
                check_defs::<SubS>(&parse_file(&src)?, &mut rep);
            }
        }
        Command::Normalize { file, alpha, via, cwf } => {
            let src = read(file)?;
            match (alpha, via, cwf) {
                (true, _, _) => normalize_alpha(&parse_file(&src)?, &mut rep)?,
                (_, Some(Via::Tms), _) => normalize_defs::<SubS>(&parse_file_via_tms(&src)?, &mut rep)?,
                (_, None, true) => normalize_defs::<CSub>(&parse_file(&src)?, &mut rep)?,
                (_, None, false) => normalize_defs::<SubS>(&parse_file(&src)?, &mut rep)?,
            }
        }
        Command::Conv { file, cwf } => {
            let src = read(file)?;
            let yes = if *cwf { conv_last::<CSub>(&parse_file(&src)?)? } else { conv_last::<SubS>(&parse_file(&src)?)? };
            if yes {
                rep.line("convertible");
            } else {
                rep.line("not convertible");
                rep.fail("the two declarations are not convertible");
            }
        }
        Command::Translate { to, file } => {
            let src = read(file)?;
            match to {
                Target::Cwf => translate_to_cwf(&parse_file(&src)?, &mut rep),
                Target::Ssc => translate_to_ssc(&parse_file(&src)?, &mut rep)?,
            }
        }
        Command::Roundtrip { count, depth, min_coverage } => {
            roundtrip(&mut gen(cli.seed, *depth)?, *count, *depth, *min_coverage, &mut rep)?
        }
        Command::Verify { suite, count, depth, tel } => {
            if *tel == 0 {
                return Err(Error::Usage("--tel must be at least 1".into()));
            }
            let mut g = gen(cli.seed, *depth)?;
            let rows = match suite {
                Suite::Equations => verify_equations(&mut g, *count, *depth),
                Suite::Lifted => verify_lifted(&mut g, *count, *depth, *tel),
                Suite::CwfLaws => verify_cwf_laws(&mut g, *count, *depth),
                Suite::Iso => verify_iso(&mut g, *count, *depth),
            };
            rep.rows(rows);
        }
        Command::Minim { command } => match command {
            MinimCommand::Derive { name, corrupt } => minim_derive(name, *corrupt, &mut rep)?,
            MinimCommand::Verify { count, depth } => {
                let mut g = gen(cli.seed, *depth)?;
                let rows = minim::equivalence_check(&mut g, *count, *depth)
                    .into_iter()
                    .map(|r| Row {
                        name: format!("{} ({})", r.name, r.direction),
                        passed: r.passed,
                        failed: r.failed,
                        counterexample: r.counterexample,
                    })
                    .collect();
                rep.rows(rows);
            }
        },
        Command::Termify { command } => match command {
            TermifyCommand::Emit { op, plain, gamma, delta, level } => {
                termify_emit(&mut gen(cli.seed, 3)?, op, *plain, (*gamma, *delta, *level), &mut rep)?
            }
            TermifyCommand::Check { laws, count, depth } => {
                let names: Vec<&str> = if laws == "all" {
                    termify::law_names()
                } else {
                    let n = termify::find(laws).ok_or_else(|| unknown("termification law", laws, &termify::law_names()))?;
                    vec![n.name]
                };
                let mut g = gen(cli.seed, *depth)?;
                let mut rows = Vec::new();
                for name in names {
                    let law = termify::find(name).expect("listed");
                    let mut row = Row::new(name);
                    for _ in 0..*count {
                        match law.instance(&mut g, *depth) {
                            Ok(inst) => row.record(inst.holds(), || format!("{} |- {} = {}", inst.params, inst.lhs, inst.rhs)),
                            Err(e) => row.record(Err(e), String::new),
                        }
                    }
                    rows.push(row);
                }
                rep.rows(rows);
            }
        },
    }
    Ok(rep)
}

fn unknown(what: &str, name: &str, known: &[&str]) -> Error {
    Error::Usage(format!("unknown {what} `{name}`; known: {}", known.join(", ")))
}

// file verbs

/// What the CLI needs beyond the generic kernel: the codomain of a
/// substitution when the declaration leaves it out.
trait Calculus: Subst + SubSyntax {
    fn codomain(dom: &Ctx<Self>, s: &Self) -> ssc_core::Result<Ctx<Self>>;
}

impl Calculus for SubS {
    fn codomain(dom: &Ctx, s: &SubS) -> ssc_core::Result<Ctx> {
        wf_sub(dom, s)
    }
}

impl Calculus for CSub {
    fn codomain(_: &Ctx<CSub>, _: &CSub) -> ssc_core::Result<Ctx<CSub>> {
        Err(ssc_core::Error::IllFormed("a CwF substitution needs its codomain written out".into()))
    }
}

fn ctx_of<S: Subst>(e: &Entity<S>) -> Ctx<S> {
    e.ctx().cloned().unwrap_or_default()
}

fn check_entity<S: Calculus>(e: &Entity<S>) -> ssc_core::Result<String> {
    let c = ctx_of(e);
    match e {
        Entity::Ctx(c) => {
            wf_ctx(c)?;
            Ok(format!("context of length {}", c.len()))
        }
        Entity::Ty { ty, .. } => {
            wf_ctx(&c)?;
            Ok(format!("type at level {}", infer_ty_level(&c, ty)?))
        }
        Entity::Tm { tm, ty: Some(ty), .. } => {
            wf_ctx(&c)?;
            infer_ty_level(&c, ty)?;
            check_tm(&c, tm, ty)?;
            Ok(format!("term of type {ty}"))
        }
        Entity::Tm { tm, ty: None, .. } => {
            wf_ctx(&c)?;
            Ok(format!("term of type {}", infer_tm(&c, tm)?))
        }
        Entity::Sub { sub, cod: Some(cod), .. } => {
            wf_ctx(&c)?;
            wf_ctx(cod)?;
            check_sub_into(&c, sub, cod)?;
            Ok(format!("substitution {c} -> {cod}"))
        }
        Entity::Sub { sub, cod: None, .. } => {
            wf_ctx(&c)?;
            Ok(format!("substitution {c} -> {}", S::codomain(&c, sub)?))
        }
        Entity::Chain(ch) => {
            let mut allowed = minim::minimised_names();
            allowed.extend(minim::DERIVATIONS.iter().map(|d| d.name));
            minim::replay(ch, &allowed)?;
            Ok(format!("chain of {} steps", ch.steps.len()))
        }
    }
}

fn check_defs<S: Calculus>(defs: &[Def<S>], rep: &mut Report) {
    for d in defs {
        match check_entity(&d.entity) {
            Ok(what) => rep.line(format!("{} ok: {what}", d.name)),
            Err(e) => {
                rep.line(format!("{} error: {e}", d.name));
                rep.fail(format!("{}: {e}", d.name));
            }
        }
    }
}

fn normalize_defs<S: Calculus>(defs: &[Def<S>], rep: &mut Report) -> Result<()> {
    for d in defs {
        let c = ctx_of(&d.entity);
        let ctx = d.entity.ctx().cloned();
        let entity = match &d.entity {
            Entity::Ctx(c) => {
                let mut out = Ctx::empty();
                for a in &c.entries {
                    let nf = normalize_ty(&out, a)?.to_ty();
                    out.push(nf);
                }
                Entity::Ctx(out)
            }
            Entity::Ty { ty, .. } => Entity::Ty { ctx, ty: normalize_ty(&c, ty)?.to_ty() },
            Entity::Tm { tm, ty: Some(ty), .. } => {
                let nf = normalize_tm(&c, tm, ty)?.to_tm();
                Entity::Tm { ctx, tm: nf, ty: Some(normalize_ty(&c, ty)?.to_ty()) }
            }
            Entity::Tm { tm, ty: None, .. } => {
                let (nf, a) = normalize_inferred(&c, tm)?;
                Entity::Tm { ctx, tm: nf.to_tm(), ty: Some(a.to_ty()) }
            }
            Entity::Sub { .. } | Entity::Chain(_) => {
                rep.line(format!("; {}: {} declarations have no normal form", d.name, d.entity.kind()));
                continue;
            }
        };
        rep.line(Def { name: d.name.clone(), entity }.to_string());
    }
    Ok(())
}

fn normalize_alpha(defs: &[Def], rep: &mut Report) -> Result<()> {
    for d in defs {
        let c = ctx_of(&d.entity);
        let ctx = d.entity.ctx().cloned();
        let entity = match &d.entity {
            Entity::Ctx(c) => {
                let mut out = Ctx::empty();
                for a in &c.entries {
                    let nf = alpha_norm_ty(&out, a)?;
                    out.push(nf);
                }
                Entity::Ctx(out)
            }
            Entity::Ty { ty, .. } => Entity::Ty { ctx, ty: alpha_norm_ty(&c, ty)? },
            Entity::Tm { tm, ty, .. } => {
                let ty = match ty {
                    Some(a) => a.clone(),
                    None => infer_tm(&c, tm)?,
                };
                Entity::Tm { ctx, tm: alpha_norm_tm(&c, tm, &ty)?, ty: Some(alpha_norm_ty(&c, &ty)?) }
            }
            Entity::Sub { .. } | Entity::Chain(_) => {
                rep.line(format!("; {}: {} declarations have no normal form", d.name, d.entity.kind()));
                continue;
            }
        };
        rep.line(Def { name: d.name.clone(), entity }.to_string());
    }
    Ok(())
}

/// The last two declarations that are not contexts, compared in their
/// common context: the one they give explicitly, else the last context
/// declaration, else the empty context.
fn conv_last<S: Calculus>(defs: &[Def<S>]) -> Result<bool> {
    let items: Vec<&Def<S>> = defs.iter().filter(|d| !matches!(d.entity.kind(), Kind::Ctx | Kind::Chain)).collect();
    let [a, b] = items.as_slice()[items.len().saturating_sub(2)..] else {
        return Err(Error::Usage("conv needs two type, term or substitution declarations".into()));
    };
    let (x, y) = (&a.entity, &b.entity);
    if x.kind() != y.kind() {
        return Err(Error::Usage(format!("cannot compare a {} with a {}", x.kind(), y.kind())));
    }
    let ctx = match (x.ctx(), y.ctx()) {
        (Some(c), Some(d)) if c != d => {
            return Err(Error::Usage(format!("`{}` and `{}` are declared in different contexts", a.name, b.name)))
        }
        (Some(c), _) | (None, Some(c)) => c.clone(),
        (None, None) => defs
            .iter()
            .rev()
            .find_map(|d| match &d.entity {
                Entity::Ctx(c) => Some(c.clone()),
                _ => None,
            })
            .unwrap_or_default(),
    };
    wf_ctx(&ctx)?;
    Ok(match (x, y) {
        (Entity::Ty { ty: s, .. }, Entity::Ty { ty: t, .. }) => conv_ty(&ctx, s, t)?,
        (Entity::Tm { tm: s, ty: sa, .. }, Entity::Tm { tm: t, ty: ta, .. }) => {
            let ty = match (sa, ta) {
                (Some(a), Some(b)) if !conv_ty(&ctx, a, b)? => return Ok(false),
                (Some(a), _) | (None, Some(a)) => a.clone(),
                (None, None) => infer_tm(&ctx, s)?,
            };
            conv_tm(&ctx, s, t, &ty)?
        }
        (Entity::Sub { sub: s, cod: sc, .. }, Entity::Sub { sub: t, cod: tc, .. }) => {
            if let Some(cod) = sc.as_ref().or(tc.as_ref()) {
                check_sub_into(&ctx, s, cod)?;
                check_sub_into(&ctx, t, cod)?;
            }
            cwf::conv_sub(&ctx, s, t)?
        }
        _ => unreachable!("kinds agree"),
    })
}

fn translate_to_cwf(defs: &[Def], rep: &mut Report) {
    let ctx = |c: &Option<Ctx>| c.as_ref().map(cwf::ssc_to_cwf_ctx);
    for d in defs {
        let entity: Entity<CSub> = match &d.entity {
            Entity::Ctx(c) => Entity::Ctx(cwf::ssc_to_cwf_ctx(c)),
            Entity::Ty { ctx: c, ty } => Entity::Ty { ctx: ctx(c), ty: cwf::ssc_to_cwf_ty(ty) },
            Entity::Tm { ctx: c, tm, ty } => {
                Entity::Tm { ctx: ctx(c), tm: cwf::ssc_to_cwf_tm(tm), ty: ty.as_ref().map(cwf::ssc_to_cwf_ty) }
            }
            Entity::Sub { ctx: c, sub, cod } => {
                Entity::Sub { ctx: ctx(c), sub: cwf::ssc_to_cwf_sub(sub), cod: ctx(cod) }
            }
            Entity::Chain(_) => {
                rep.line(format!("; {}: chains are not translated", d.name));
                continue;
            }
        };
        rep.line(Def { name: d.name.clone(), entity }.to_string());
    }
}

fn translate_to_ssc(defs: &[Def<CSub>], rep: &mut Report) -> Result<()> {
    for d in defs {
        let n = d.entity.ctx().map_or(0, |c| c.len());
        let ctx = d.entity.ctx().map(cwf::cwf_to_ssc_ctx).transpose()?;
        let line = match &d.entity {
            Entity::Ctx(c) => Def { name: d.name.clone(), entity: Entity::Ctx(cwf::cwf_to_ssc_ctx(c)?) }.to_string(),
            Entity::Ty { ty, .. } => {
                Def { name: d.name.clone(), entity: Entity::Ty { ctx, ty: cwf::cwf_to_ssc_ty(ty, n)? } }.to_string()
            }
            Entity::Tm { tm, ty, .. } => {
                let ty = ty.as_ref().map(|a| cwf::cwf_to_ssc_ty(a, n)).transpose()?;
                let entity = Entity::Tm { ctx, tm: cwf::cwf_to_ssc_tm(tm, n)?, ty };
                Def { name: d.name.clone(), entity }.to_string()
            }
            // a parallel substitution has no single-substitution form; print its term list
            Entity::Sub { sub, cod, .. } => {
                let mut s = format!("(def {} sub", d.name);
                if let Some(c) = &ctx {
                    let _ = write!(s, " {c}");
                }
                let _ = write!(s, " {}", cwf::cwf_to_tms(sub, n)?);
                if let Some(c) = cod {
                    let _ = write!(s, " {}", cwf::cwf_to_ssc_ctx(c)?);
                }
                s + ")"
            }
            Entity::Chain(_) => format!("; {}: chains are not translated", d.name),
        };
        rep.line(line);
    }
    Ok(())
}

// generated suites

fn roundtrip(g: &mut Gen, count: usize, depth: u32, min_cov: usize, rep: &mut Report) -> Result<()> {
    let mut rows: Vec<Row> = ["ssc-ty", "ssc-tm", "cwf-ty", "cwf-tm", "cwf-sub"].into_iter().map(Row::new).collect();
    let (mut ssc_cov, mut cwf_cov) = (cwf::Coverage::default(), cwf::Coverage::default());
    for _ in 0..count {
        let (ctx, a, t) = cwf::sample_ssc(g, depth)?;
        ssc_cov.ty(&a);
        ssc_cov.tm(&t);
        rows[0].record(cwf::roundtrip_ssc_ty(&ctx, &a), || format!("{ctx} |- {a}"));
        rows[1].record(cwf::roundtrip_ssc_tm(&ctx, &t, &a), || format!("{ctx} |- {t} : {a}"));
        let (ctx, a, t) = cwf::sample_cwf(g, depth)?;
        for e in &ctx.entries {
            cwf_cov.ty(e);
        }
        cwf_cov.ty(&a);
        cwf_cov.tm(&t);
        rows[2].record(cwf::roundtrip_cwf_ty(&ctx, &a), || format!("{ctx} |- {a}"));
        rows[3].record(cwf::roundtrip_cwf_tm(&ctx, &t, &a), || format!("{ctx} |- {t} : {a}"));
        let (dom, s) = cwf::sample_cwf_sub(g, depth)?;
        cwf_cov.sub(&s);
        rows[4].record(cwf::roundtrip_cwf_sub(&dom, &s), || format!("{dom} |- {s}"));
    }
    let formers = || cwf::TY_FORMERS.iter().chain(cwf::TM_FORMERS);
    for (side, cov, subs) in [("ssc", &ssc_cov, cwf::SSC_SUBS), ("cwf", &cwf_cov, cwf::CWF_SUBS)] {
        let counts: Vec<String> = formers().chain(subs).map(|k| format!("{k}={}", cov.count(k))).collect();
        rep.line(format!("coverage {side}: {}", counts.join(" ")));
        if let Some(k) = formers().chain(subs).find(|k| cov.count(k) < min_cov) {
            rep.fail(format!("coverage {side}: {k} occurs {} times, fewer than {min_cov}", cov.count(k)));
        }
    }
    rep.rows(rows);
    Ok(())
}

fn verify_equations(g: &mut Gen, count: usize, depth: u32) -> Vec<Row> {
    laws::LAWS
        .iter()
        .map(|law| {
            let mut row = Row::new(law.name);
            for _ in 0..count {
                match law.instance(g, depth) {
                    Ok(i) => row.record(i.holds(), || format!("{} |- {} = {}", i.ctx, i.lhs, i.rhs)),
                    Err(e) => row.record(Err(e), String::new),
                }
            }
            row
        })
        .collect()
}

fn verify_lifted(g: &mut Gen, count: usize, depth: u32, max_tel: usize) -> Vec<Row> {
    let mut rows = Vec::new();
    for n in 1..=4u8 {
        for term in [false, true] {
            let mut row = Row::new(format!("lifted{n}:{}", if term { "tm" } else { "ty" }));
            for k in 0..count {
                let tel_len = 1 + k % max_tel;
                match tel::gen_lifted_eq(g, n, tel_len, term, depth) {
                    Ok((ctx, tl, pl)) => row.record(tel::check_lifted_eq(n, &ctx, &tl, &pl), || {
                        match tel::lifted_eq_sides(n, &ctx, &tl, &pl) {
                            Ok((c, l, r)) => format!("{c} |- {l} = {r}"),
                            Err(e) => e.to_string(),
                        }
                    }),
                    Err(e) => row.record(Err(e), String::new),
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn verify_cwf_laws(g: &mut Gen, count: usize, depth: u32) -> Vec<Row> {
    cwf::CWF_LAWS
        .iter()
        .map(|name| {
            let mut row = Row::new(*name);
            for _ in 0..count {
                match cwf::cwf_law(name, g, depth) {
                    Ok(eq) => {
                        let ok = eq.holds().and_then(|a| Ok(a && eq.holds_via_ssc()?));
                        row.record(ok, || eq.to_string())
                    }
                    Err(e) => row.record(Err(e), String::new),
                }
            }
            row
        })
        .collect()
}

fn verify_iso(g: &mut Gen, count: usize, depth: u32) -> Vec<Row> {
    let mut f_rows: Vec<Row> = cwf::ISO_EQUATIONS.iter().map(|n| Row::new(*n)).collect();
    for _ in 0..count {
        match cwf::contextual_iso_f(g, depth.min(3)) {
            Ok(eqs) => {
                for (row, (_, eq)) in f_rows.iter_mut().zip(eqs) {
                    row.record(eq.holds(), || eq.to_string());
                }
            }
            Err(e) => f_rows.iter_mut().for_each(|r| r.record(Err(e.clone()), String::new)),
        }
    }
    let mut row = Row::new("poly-id-apply");
    for _ in 0..count {
        match iso::poly_id_applied(g, depth) {
            Ok(i) => row.record(i.holds(), || i.to_string()),
            Err(e) => row.record(Err(e), String::new),
        }
    }
    f_rows.push(row);
    let show = |i: &laws::Instance| format!("{} |- {} = {}", i.ctx, i.lhs, i.rhs);
    let mut single = |name: &str, f: fn(&mut Gen, u32) -> ssc_core::Result<laws::Instance>, g: &mut Gen| {
        let mut row = Row::new(name);
        for _ in 0..count {
            match f(g, depth) {
                Ok(i) => row.record(i.holds(), || show(&i)),
                Err(e) => row.record(Err(e), String::new),
            }
        }
        f_rows.push(row);
    };
    single("poly-id-weaken", iso::poly_id_weakened, g);
    type Pair = fn(&mut Gen, u32) -> ssc_core::Result<[laws::Instance; 2]>;
    let pairs: [(&str, Pair); 2] = [("liftvar", iso::liftvar_roundtrips), ("lift-pi", iso::lift_pi_roundtrips)];
    for (name, f) in pairs {
        let (mut there, mut back) = (Row::new(format!("{name}-there")), Row::new(format!("{name}-back")));
        for _ in 0..count {
            match f(g, depth) {
                Ok([a, b]) => {
                    there.record(a.holds(), || show(&a));
                    back.record(b.holds(), || show(&b));
                }
                Err(e) => {
                    there.record(Err(e.clone()), String::new);
                    back.record(Err(e), String::new);
                }
            }
        }
        f_rows.push(there);
        f_rows.push(back);
    }
    f_rows
}

fn minim_derive(name: &str, corrupt: Option<usize>, rep: &mut Report) -> Result<()> {
    let names: Vec<&str> = minim::DERIVATIONS.iter().map(|d| d.name).collect();
    let d = minim::derivation(name).ok_or_else(|| unknown("derivation", name, &names))?;
    let chain = minim::derive_full_axiom(name);
    let chain = match (chain, corrupt) {
        (Ok(c), None) => c,
        (Err(e), None) => {
            rep.fail(format!("{name}: {e}"));
            rep.line(format!("replay: {e}"));
            return Ok(());
        }
        (_, Some(k)) => {
            // rebuild without verifying, then swap the cited rule
            let mut g = Gen::new(GenConfig { seed: 0, max_depth: 3, ..GenConfig::default() });
            let site = d.site(&mut g, 3)?;
            let chain = d.chain(&site)?;
            let Some(step) = chain.steps.get(k.wrapping_sub(1)) else {
                return Err(Error::Usage(format!("--corrupt {k}: the chain has {} steps", chain.steps.len())));
            };
            let other = if step.rule == "U-eta" { "U-beta" } else { "U-eta" };
            minim::corrupt(&chain, k, other)
        }
    };
    rep.line(chain.to_string());
    let mut allowed = d.allowed();
    allowed.sort_unstable();
    match minim::replay(&chain, &d.allowed()) {
        Ok(()) => rep.line(format!("replay: ok ({} steps, {} rules allowed)", chain.steps.len(), allowed.len())),
        Err(e) => {
            rep.line(format!("replay: {e}"));
            rep.fail(format!("{name}: {e}"));
        }
    }
    Ok(())
}

fn termify_emit(g: &mut Gen, op: &str, plain: bool, levels: (u32, u32, u32), rep: &mut Report) -> Result<()> {
    if !termify::EMIT_OPS.contains(&op) {
        return Err(unknown("operation", op, termify::EMIT_OPS));
    }
    let (lg, ld, i) = levels;
    let e = termify::emit(op, g, lg, ld, i)?;
    e.def.check(&e.params)?;
    rep.line(format!("(params {})", e.params));
    rep.line(format!("(def {op} {})", e.def));
    if plain {
        let erased = e.erased().to_string();
        rep.line(format!("(erased {op} {erased})"));
        match &e.plain {
            Some(p) => {
                let p = p.to_string();
                rep.line(format!("(plain {op} {p})"));
                if p == erased {
                    rep.line("erasure: matches");
                } else {
                    rep.line("erasure: differs");
                    rep.fail(format!("{op}: erased {erased} but undecorated {p}"));
                }
            }
            None => rep.line(format!("; {op} has no undecorated display to compare with")),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("ssc").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(go(&["frobnicate"]).code, 2);
        assert_eq!(go(&["verify", "equations", "--tel", "0"]).code, 2);
        assert_eq!(go(&["check", "/nonexistent/file.ssc"]).code, 2);
        assert_eq!(go(&["minim", "derive", "nope"]).code, 2);
    }

    #[test]
    fn empty_verify_passes() {
        let o = go(&["verify", "equations", "--count", "0"]);
        assert_eq!(o.code, 0, "{o:?}");
        let o = go(&["--json", "verify", "equations", "--count", "0"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["verb"], "verify equations");
        assert_eq!(v["status"], "pass");
        assert!(v["counterexample"].is_null());
    }
}
