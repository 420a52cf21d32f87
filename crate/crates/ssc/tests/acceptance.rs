//! Acceptance suite, run without the test harness so that every criterion
//! prints its `PASS`/`FAIL` line with the counts it ran. Exits nonzero if
//! any criterion fails.

use std::fmt::Display;
use std::process::Command;

use ssc_core::gen::{Gen, GenConfig};
use ssc_core::termify::{self, Emission, Side};
use ssc_core::{cwf, iso, laws, minim, tel};

fn gen(seed: u64, depth: u32) -> Gen {
    Gen::new(GenConfig { seed, max_depth: depth, ..GenConfig::default() })
}

/// Counts outcomes and keeps the first failure.
#[derive(Default)]
struct Tally {
    ran: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn add(&mut self, what: impl Display, r: ssc_core::Result<bool>) {
        self.ran += 1;
        let bad = match r {
            Ok(true) => return,
            Ok(false) => format!("failed: {what}"),
            Err(e) => format!("{e}: {what}"),
        };
        self.failed += 1;
        self.first.get_or_insert(bad);
    }

    fn fail(&mut self, why: impl Into<String>) {
        self.ran += 1;
        self.failed += 1;
        self.first.get_or_insert(why.into());
    }

    fn report(&self, n: u32, title: &str) -> bool {
        let verdict = if self.failed == 0 { "PASS" } else { "FAIL" };
        println!("{verdict} {n:>2} {title}: {} checked, {} failed", self.ran, self.failed);
        if let Some(f) = &self.first {
            println!("   first failure: {f}");
        }
        self.failed == 0
    }
}

fn ssc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ssc")).args(args).output().expect("run ssc");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

const AXIOM_COUNT: usize = 200;
const AXIOM_DEPTH: u32 = 4;

fn c01_axioms() -> bool {
    let mut t = Tally::default();
    let mut g = gen(101, AXIOM_DEPTH);
    for law in laws::LAWS {
        for _ in 0..AXIOM_COUNT {
            match law.instance(&mut g, AXIOM_DEPTH) {
                Ok(i) => t.add(format_args!("{} {} |- {} = {}", law.name, i.ctx, i.lhs, i.rhs), i.holds()),
                Err(e) => t.fail(format!("{}: {e}", law.name)),
            }
        }
    }
    assert_eq!(laws::LAWS.len(), 31);
    t.report(1, "equations and substitution laws, 200 instances each at depth 4")
}

fn c02_worked_example() -> bool {
    let mut t = Tally::default();
    let mut g = gen(102, 4);
    for _ in 0..20 {
        match iso::poly_id_applied(&mut g, 4) {
            Ok(i) => t.add(&i, i.holds()),
            Err(e) => t.fail(e.to_string()),
        }
        match iso::poly_id_weakened(&mut g, 4) {
            Ok(i) => t.add(format_args!("{} |- {} = {}", i.ctx, i.lhs, i.rhs), i.holds()),
            Err(e) => t.fail(e.to_string()),
        }
    }
    t.report(2, "polymorphic identity applied (20) and weakened (20)")
}

fn c03_lifted_equations() -> bool {
    let mut t = Tally::default();
    let mut g = gen(103, 4);
    for n in 1..=4u8 {
        for term in [false, true] {
            for k in 0..200 {
                let len = 1 + k % 3;
                match tel::gen_lifted_eq(&mut g, n, len, term, 4) {
                    Ok((ctx, tl, pl)) => {
                        assert!(!tl.is_empty());
                        t.add(format_args!("eq {n} tel {len} in {ctx}"), tel::check_lifted_eq(n, &ctx, &tl, &pl))
                    }
                    Err(e) => t.fail(format!("eq {n}: {e}")),
                }
            }
        }
    }
    t.report(3, "lifted equations 1-4, types and terms, telescopes 1-3, 200 each")
}

fn c04_lifted_variable() -> bool {
    let mut t = Tally::default();
    let mut g = gen(104, 4);
    for _ in 0..50 {
        match iso::liftvar_roundtrips(&mut g, 4) {
            Ok(pair) => {
                for i in pair {
                    t.add(format_args!("{} |- {} = {}", i.ctx, i.lhs, i.rhs), i.holds());
                }
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    t.report(4, "lifted variable, both roundtrips, 50 instances")
}

fn c05_lift_pi() -> bool {
    let mut t = Tally::default();
    let mut g = gen(105, 4);
    for _ in 0..20 {
        match iso::lift_pi_roundtrips(&mut g, 4) {
            Ok(pair) => {
                for i in pair {
                    t.add(format_args!("{} |- {} = {}", i.ctx, i.lhs, i.rhs), i.holds());
                }
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    t.report(5, "Lift/Pi commutation, both composites, 20 instances")
}

fn c06_syntax_roundtrips() -> bool {
    const MIN_COVERAGE: usize = 5;
    let mut t = Tally::default();
    let mut g = gen(106, 4);
    let (mut ssc_cov, mut cwf_cov) = (cwf::Coverage::default(), cwf::Coverage::default());
    for _ in 0..200 {
        match cwf::sample_ssc(&mut g, 4) {
            Ok((ctx, a, x)) => {
                ssc_cov.ty(&a);
                ssc_cov.tm(&x);
                t.add(format_args!("{ctx} |- {a}"), cwf::roundtrip_ssc_ty(&ctx, &a));
                t.add(format_args!("{ctx} |- {x} : {a}"), cwf::roundtrip_ssc_tm(&ctx, &x, &a));
            }
            Err(e) => t.fail(e.to_string()),
        }
        match cwf::sample_cwf(&mut g, 4) {
            Ok((ctx, a, x)) => {
                ctx.entries.iter().for_each(|e| cwf_cov.ty(e));
                cwf_cov.ty(&a);
                cwf_cov.tm(&x);
                t.add(format_args!("{ctx} |- {a}"), cwf::roundtrip_cwf_ty(&ctx, &a));
                t.add(format_args!("{ctx} |- {x} : {a}"), cwf::roundtrip_cwf_tm(&ctx, &x, &a));
            }
            Err(e) => t.fail(e.to_string()),
        }
        match cwf::sample_cwf_sub(&mut g, 4) {
            Ok((dom, s)) => {
                cwf_cov.sub(&s);
                t.add(format_args!("{dom} |- {s}"), cwf::roundtrip_cwf_sub(&dom, &s));
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    let formers: Vec<&str> = cwf::TY_FORMERS.iter().chain(cwf::TM_FORMERS).copied().collect();
    for (side, cov, subs) in [("ssc", &ssc_cov, cwf::SSC_SUBS), ("cwf", &cwf_cov, cwf::CWF_SUBS)] {
        for k in formers.iter().chain(subs) {
            if cov.count(k) < MIN_COVERAGE {
                t.fail(format!("{side} coverage of {k} is {} < {MIN_COVERAGE}", cov.count(k)));
            }
        }
    }
    t.report(6, "SSC->CwF->SSC and CwF->SSC->CwF, 200 entities each, coverage >= 5")
}

fn c07_minimisation() -> bool {
    let mut t = Tally::default();
    let mut g = gen(107, 3);
    for d in minim::DERIVATIONS {
        let replayed = d.site(&mut g, 3).and_then(|s| d.verify(&s)).and_then(|c| minim::replay(&c, &d.allowed()));
        t.add(d.name, replayed.map(|()| true));
    }
    let (code, out) = ssc(&["minim", "verify", "--count", "100"]);
    t.add(format_args!("`minim verify --count 100` exited {code}:\n{out}"), Ok(code == 0));
    for d in minim::DERIVATIONS {
        let (code, _) = ssc(&["minim", "derive", d.name, "--corrupt", "1"]);
        t.add(format_args!("corrupted `{}` exited {code}, expected 1", d.name), Ok(code == 1));
    }
    let (code, _) = ssc(&["minim", "derive", "Pi-beta"]);
    t.add(format_args!("uncorrupted derivation exited {code}"), Ok(code == 0));
    t.report(7, "chain replay, `minim verify --count 100`, corrupted chains exit 1")
}

fn c08_termification() -> bool {
    let mut t = Tally::default();
    let mut g = gen(108, 3);
    for name in termify::law_names() {
        for _ in 0..50 {
            t.add(name, termify::check_cwf_law(name, &mut g, 3));
        }
    }
    // A = q[p][p], γ = q[p], δ = q in the parameter context
    let want_l = "(lam (app (tmsub (tmsub (tmsub q p) p) p) (app (tmsub (lam (app (tmsub (tmsub q p) p) (app (tmsub q p) q))) p) q)))";
    let want_r = "(lam (app (tmsub (lam (app (tmsub (tmsub (tmsub q p) p) p) (app (tmsub (tmsub q p) p) q))) p) (app (tmsub q p) q)))";
    let erase = |params: &ssc_core::Ctx, s: &Side| Emission { params: params.clone(), def: s.clone(), plain: None }.erased();
    for _ in 0..20 {
        match termify::functor_endpoints(&mut g, 3) {
            Ok(i) => {
                let (l, r) = (erase(&i.params, &i.lhs).to_string(), erase(&i.params, &i.rhs).to_string());
                if l != want_l || r != want_r {
                    t.fail(format!("functor endpoints {l} = {r}"));
                } else {
                    t.add("functor law", i.holds());
                }
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    let mut compared = 0;
    for lg in 0..3 {
        for ld in 0..3 {
            for i in 0..3 {
                for op in termify::EMIT_OPS {
                    match termify::emit(op, &mut g, lg, ld, i) {
                        Ok(e) => {
                            if let Some(p) = &e.plain {
                                compared += 1;
                                let (x, y) = (e.erased().to_string(), p.to_string());
                                t.add(format_args!("{op} at {lg} {ld} {i}: {x} vs {y}"), Ok(x == y));
                            }
                        }
                        Err(err) => t.fail(format!("{op}: {err}")),
                    }
                }
            }
        }
    }
    assert!(compared > 0);
    t.report(8, "termified CwF laws (50 each), functor endpoints, erasure byte-match")
}

fn c09_contextual_iso() -> bool {
    let mut t = Tally::default();
    let mut g = gen(109, 3);
    for _ in 0..50 {
        match cwf::contextual_iso_f(&mut g, 3) {
            Ok(eqs) => {
                assert_eq!(eqs.len(), cwf::ISO_EQUATIONS.len());
                for (name, eq) in eqs {
                    t.add(format_args!("{name}: {eq}"), eq.holds());
                }
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    t.report(9, "F components and preservation equations, 50 instances")
}

fn c10_determinism() -> bool {
    let mut t = Tally::default();
    let runs: &[&[&str]] = &[
        &["verify", "equations", "--count", "10", "--seed", "7"],
        &["verify", "lifted", "--count", "10", "--seed", "7"],
        &["verify", "cwf-laws", "--count", "10", "--seed", "7"],
        &["verify", "iso", "--count", "5", "--seed", "7"],
        &["--json", "verify", "equations", "--count", "5", "--seed", "3", "--depth", "3", "--tel", "2"],
    ];
    for args in runs {
        let (a, b) = (ssc(args), ssc(args));
        t.add(format_args!("`ssc {}` differs between runs", args.join(" ")), Ok(a == b && !a.1.is_empty()));
    }
    t.report(10, "identical output from repeated seeded verify runs")
}

fn main() {
    let criteria: [fn() -> bool; 10] = [
        c01_axioms,
        c02_worked_example,
        c03_lifted_equations,
        c04_lifted_variable,
        c05_lift_pi,
        c06_syntax_roundtrips,
        c07_minimisation,
        c08_termification,
        c09_contextual_iso,
        c10_determinism,
    ];
    let passed = criteria.iter().filter(|c| c()).count();
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
