use std::path::Path;

use symsemi::cli::{run_from, Report};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["symsemi"];
    full.extend_from_slice(args);
    let code = run_from(full, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let r = run(&a);
    serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out))
}

#[test]
fn compute_builtins() {
    let r = run(&["compute", "builtin:cp2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&["compute", "builtin:cp2"]);
    assert_eq!(v["k"], 1);
    assert_eq!(v["cone_betti"], serde_json::json!([1, 0, 0, 0, 0, 1]));
    let v = json(&["compute", "builtin:kodaira_thurston"]);
    assert_eq!(v["k"], 0);
    assert_eq!(v["cone_betti"], serde_json::json!([1, 3, 4, 4, 3, 1]));
    let v = json(&["compute", "builtin:t4", "--p", "1"]);
    assert_eq!(v["chi"], 0);
    assert_eq!(run(&["compute", "builtin:nope"]).code, 2);
}

#[test]
fn verify_with_censuses() {
    let dir = tempfile::tempdir().unwrap();
    let four = write(
        dir.path(),
        "four.json",
        r#"{"source":"height","zeros":[{"label":"a","det_sign":"+"},{"label":"b","det_sign":"+"},{"label":"c","det_sign":"+"},{"label":"d","det_sign":"+"}]}"#,
    );
    let r = run(&["verify", "builtin:s2xs2", "--census", &four]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);

    let t2 = write(
        dir.path(),
        "t2.json",
        r#"{"source":"height","zeros":[{"label":"max","det_sign":"+"},{"label":"s1","det_sign":"-"},{"label":"s2","det_sign":"-"},{"label":"min","det_sign":"+"}]}"#,
    );
    let r = run(&["verify", "builtin:t2", "--census", &t2]);
    assert_eq!(r.code, 0);
    assert!(
        r.err.contains("warning")
            || r.out.contains("not_applicable")
            || r.out.contains("not applicable")
    );

    let two = write(
        dir.path(),
        "two.json",
        r#"{"source":"x","zeros":[{"label":"a"},{"label":"b"}]}"#,
    );
    assert_eq!(run(&["verify", "builtin:cp2", "--census", &two]).code, 1);

    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(run(&["verify", "builtin:cp2", "--census", &bad]).code, 2);
    assert_eq!(
        run(&[
            "verify",
            "builtin:cp2",
            "--census",
            "/nonexistent/census.json"
        ])
        .code,
        2
    );
}

#[test]
fn broken_cdga_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "broken.json",
        r#"{"kind":"cdga","manifold_dim":4,
            "generators":[{"name":"e1","degree":1},{"name":"e2","degree":1},{"name":"e3","degree":1},{"name":"e4","degree":1}],
            "differential":{"e3":[["-1",["e1","e2"]]],"e4":[["-1",["e3","e4"]]]},
            "omega":[["1",["e1","e2"]],["1",["e3","e4"]]]}"#,
    );
    let r = run(&["compute", &model]);
    assert_eq!(r.code, 2);
    assert!(!r.err.is_empty());
}

#[test]
fn clifford_checks() {
    assert_eq!(run(&["clifford", "--n", "1"]).code, 0);
    let v = json(&["clifford", "--n", "2"]);
    assert_eq!(v["passed"], true);
    assert_eq!(run(&["clifford", "--n", "4"]).code, 2);
    assert_eq!(
        run(&["--mode", "float", "clifford", "--n", "3", "--checks", "car"]).code,
        0
    );
}

#[test]
fn oscillator_runs() {
    let v = json(&["oscillator", "--matrix", "identity:4"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["oscillator"]["eta"]["c1_squared"], "1/8");
    let v = json(&["oscillator", "--matrix", "diag:-1,1,1,1"]);
    assert_eq!(v["oscillator"]["kernel"]["parity"], "odd");
    assert_eq!(run(&["oscillator", "--matrix", "diag:1,0,1,1"]).code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["compute"]).code, 2);
    assert_eq!(run(&["compute", "builtin:cp2", "--bogus"]).code, 2);
    assert_eq!(run(&["--mode", "fuzzy", "suite", "--list"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    let r = run(&["suite", "--list"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().filter(|l| !l.trim().is_empty()).count(), 10);
}

#[test]
fn json_is_reproducible_and_round_trips() {
    let args = ["compute", "builtin:s2xs2", "--format", "json"];
    let a = run(&args).out;
    let b = run(&args).out;
    assert_eq!(a, b);
    let report: Report = serde_json::from_str(&a).unwrap();
    assert_eq!(report.to_json(), a);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = out.display().to_string();
    assert_eq!(
        run(&["clifford", "--n", "2", "--format", "json", "--out", &o]).code,
        0
    );
    let c1 = std::fs::read_to_string(&out).unwrap();
    run(&["clifford", "--n", "2", "--format", "json", "--out", &o]);
    assert_eq!(c1, std::fs::read_to_string(&out).unwrap());
}
