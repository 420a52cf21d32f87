use std::path::PathBuf;

use ssc::run;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn go(args: &[&str]) -> ssc::Outcome {
    run(std::iter::once("ssc").chain(args.iter().copied()))
}

fn scratch(name: &str, src: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ssc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, src).unwrap();
    p.display().to_string()
}

#[test]
fn identity_checks() {
    let o = go(&["check", &data("id.ssc")]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert!(o.stdout.contains("polyid ok"));
    assert!(o.stdout.ends_with("status: pass\n"));
}

#[test]
fn universe_is_stable_under_weakening() {
    let o = go(&["conv", &data("u_sub.ssc")]);
    assert_eq!((o.code, o.stdout.lines().next()), (0, Some("convertible")));
}

#[test]
fn different_terms_are_not_convertible() {
    let f = scratch("ne.ssc", "(def G ctx (ctx (U 0) (U 0)))\n(def a tm q)\n(def b tm (tmsub q p))");
    let o = go(&["conv", &f]);
    assert_eq!((o.code, o.stdout.lines().next()), (1, Some("not convertible")));
}

#[test]
fn empty_verify_table() {
    let o = go(&["verify", "equations", "--count", "0"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("[p][+]:ty"));
    assert!(o.stdout.ends_with("status: pass\n"));
}

#[test]
fn normalize_computes_the_worked_example() {
    let o = go(&["normalize", &data("id.ssc")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("(def r tm tt Top)"), "{}", o.stdout);
    let o = go(&["normalize", "--alpha", &data("id.ssc")]);
    assert!(o.stdout.contains("(def r tm (un (app (app (lam (lam q)) (code Top)) (mk tt))) Top)"), "{}", o.stdout);
}

#[test]
fn normalize_via_tms() {
    let f = scratch("tms.ssc", "(def x tm (ctx Top) (tmsub q (tms tt)) Top)\n(def A ty (tysub (El q) (tms (code Top))))");
    let o = go(&["normalize", "--via", "tms", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("(def x tm (ctx Top) tt Top)"), "{}", o.stdout);
    assert!(o.stdout.contains("(def A ty Top)"), "{}", o.stdout);
}

#[test]
fn translation_roundtrip_through_files() {
    let o = go(&["translate", "--to", "cwf", &data("id.ssc")]);
    assert_eq!(o.code, 0);
    let body: String = o.stdout.lines().filter(|l| l.starts_with("(def")).collect::<Vec<_>>().join("\n");
    let f = scratch("cwf.ssc", &body);
    let o = go(&["check", "--cwf", &f]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let o = go(&["translate", "--to", "ssc", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.ssc", "(def a tm (app tt tt) Top)");
    assert_eq!(go(&["check", &bad]).code, 1);
    let unparsable = scratch("unparsable.ssc", "(def a ty (Pi Top)");
    let o = go(&["check", &unparsable]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("1:"), "{}", o.stderr);
    assert_eq!(go(&["check", &scratch("arity.ssc", "(def a ty (Pi Top))")]).code, 2);
    assert_eq!(go(&["translate", &data("id.ssc")]).code, 2);
    assert_eq!(go(&["verify", "nothing"]).code, 2);
    assert_eq!(go(&["--help"]).code, 0);
    assert_eq!(go(&["--version"]).code, 0);
}

#[test]
fn json_verdicts() {
    let o = go(&["--json", "conv", &data("u_sub.ssc")]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!((v["verb"].as_str(), v["status"].as_str()), (Some("conv"), Some("pass")));
    let o = go(&["--json", "minim", "derive", "q[+]", "--corrupt", "1"]);
    assert_eq!(o.code, 1);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["counterexample"].as_str().unwrap().contains("step 1"));
}

#[test]
fn termify_verbs() {
    let o = go(&["termify", "emit", "comp", "--plain"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("erasure: matches"));
    let o = go(&["termify", "check", "--laws", "ty-comp", "--count", "3"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(go(&["termify", "check", "--laws", "nope"]).code, 2);
}

#[test]
fn roundtrip_verb() {
    let o = go(&["roundtrip", "--count", "30", "--seed", "4"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("coverage ssc:"));
    assert_eq!(go(&["roundtrip", "--count", "1", "--min-coverage", "1000"]).code, 1);
}
