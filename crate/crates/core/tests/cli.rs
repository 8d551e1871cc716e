mod common;

use std::path::Path;
use std::process::Command;

use settype::cli::run;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn settype(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["settype"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn corpus(name: &str) -> String {
    common::corpus_file(name).to_string_lossy().into_owned()
}

#[test]
fn check_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let prf = dir.path().join("p.prf");
    let r = settype(&["check", &corpus("comp"), "--emit-proof", path(&prf)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.ends_with("RESULT: ok\n"), "{}", r.out);
    assert!(r.out.contains("proved isUniverse(Typ), A in Typ"));
    let r = settype(&["verify", path(&prf), "--theory", "bootstrap"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.ends_with("RESULT: ok\n"));
}

#[test]
fn ill_typed_application_fails() {
    let r = settype(&["check", &corpus("illtyped")]);
    assert_eq!(r.code, 1);
    assert!(r.out.ends_with("RESULT: fail reason=DomainCheckFailure\n"), "{}", r.out);
    assert!(r.err.starts_with("error:"));
}

#[test]
fn negative_corpus_reasons() {
    for (name, reason) in common::NEGATIVE {
        let r = settype(&["check", &corpus(name)]);
        assert_eq!(r.code, 1, "{name}");
        assert!(r.out.contains(&format!("reason={reason}")), "{name}: {}", r.out);
    }
}

#[test]
fn oracle_suite_passes() {
    let r = settype(&["oracle", "--max-rank", "3", "--max-card", "4"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.contains("full contravariance"));
    assert!(r.out.contains("note: finite search only"));
}

#[test]
fn io_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.judg");
    let r = settype(&["check", path(&missing)]);
    assert_eq!(r.code, 2);
    assert!(r.out.contains("reason=IoError"));

    let bad = dir.path().join("bad.judg");
    std::fs::write(&bad, "var A\ngoal fun(x : A, x) in A\n").unwrap();
    let r = settype(&["check", path(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.out.contains("reason=ParseError"));
    assert!(r.err.contains("2:"), "{}", r.err);

    let garbage = dir.path().join("g.prf");
    std::fs::write(&garbage, "not a proof\n").unwrap();
    assert_eq!(settype(&["verify", path(&garbage)]).code, 2);
    assert_eq!(settype(&["frobnicate"]).code, 2);
}

#[test]
fn tampered_proof_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let prf = dir.path().join("p.prf");
    assert_eq!(settype(&["check", &corpus("application"), "--emit-proof", path(&prf)]).code, 0);
    let text = std::fs::read_to_string(&prf).unwrap();
    let tampered = text.replace("|- f(a) in B", "|- f(a) in A");
    assert_ne!(tampered, text);
    std::fs::write(&prf, tampered).unwrap();
    let r = settype(&["verify", path(&prf)]);
    assert_eq!(r.code, 1, "{}", r.out);
    assert!(r.out.contains("reason=ProofRejected"));
}

#[test]
fn print_normal_form() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("redex.judg");
    std::fs::write(&f, "var a, A\ncontext { a in A }\ngoal (\\y. y)(a) in A\n").unwrap();
    let r = settype(&["print", path(&f), "--normal-form"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("}\ngoal a in A\n"), "{}", r.out);
    let r = settype(&["print", path(&f)]);
    assert!(r.out.contains("goal (\\y. y)(a) in A"), "{}", r.out);
    let r = settype(&["print", &corpus("identity")]);
    assert!(r.out.contains("def Id = fun(X :: getUniverse(5, Typ), fun(x :: X, x))"), "{}", r.out);
}

#[test]
fn theory_dump_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let r = settype(&["theory"]);
    assert_eq!(r.code, 0);
    assert!(!r.out.contains("RESULT"));
    let th = dir.path().join("tg.theory");
    std::fs::write(&th, &r.out).unwrap();
    let prf = dir.path().join("p.prf");
    assert_eq!(settype(&["check", &corpus("comp"), "--emit-proof", path(&prf)]).code, 0);
    assert_eq!(settype(&["verify", path(&prf), "--theory", path(&th)]).code, 0);

    // Dropping a lemma the proof relies on makes verification fail.
    let without: String = r.out.lines().filter(|l| !l.starts_with("lemma T_app ")).map(|l| format!("{l}\n")).collect();
    std::fs::write(&th, without).unwrap();
    let v = settype(&["verify", path(&prf), "--theory", path(&th)]);
    assert_eq!(v.code, 1, "{}", v.out);
}

#[test]
fn fresh_process_verifies_emitted_proofs() {
    let bin = env!("CARGO_BIN_EXE_settype");
    let dir = tempfile::tempdir().unwrap();
    let prf = dir.path().join("comp.prf");
    let status = Command::new(bin)
        .args(["check", &corpus("comp"), "--emit-proof", path(&prf)])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let verify = Command::new(bin).args(["verify", path(&prf)]).output().unwrap();
    assert_eq!(verify.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&verify.stdout).ends_with("RESULT: ok\n"));

    // The environment variable selects the theory used by default.
    let th = dir.path().join("broken.theory");
    std::fs::write(&th, "axiom eq_refl : |- ?X = ?X\n").unwrap();
    let again = Command::new(bin)
        .args(["verify", path(&prf)])
        .env(settype::cli::THEORY_ENV, &th)
        .output()
        .unwrap();
    assert_eq!(again.status.code(), Some(1));
}
