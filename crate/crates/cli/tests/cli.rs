use std::io::Write;
use std::process::{Command, Output};

fn ncimc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncimc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn euler_product_of_one_point() {
    let o = ncimc(&["lfun", "euler", "--precision", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "euler: 1 + T + T^2 + T^3\n");
}

#[test]
fn worked_main_conjecture_reports_unit() {
    let o = ncimc(&["imc", "verify", "--phi", "[[4]]", "--ell", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[PASS] main conjecture: (2 + T) | (1 + 5*T)"), "{out}");
    assert!(out.contains("unit: 2\n"));
}

#[test]
fn s3_fixture_verifies() {
    let o = ncimc(&["ncl", "verify", "--fixture", "s3-gamma"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("[PASS] interpolation")).count() == 4);
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(ncimc(&["kconnect", "d", "--alpha", "[[3]]"]).status.code(), Some(2));
    assert_eq!(ncimc(&["imc", "verify", "--phi", "[[1, 2]]"]).status.code(), Some(2));
    assert_eq!(ncimc(&["ncl", "verify", "--fixture", "/nonexistent.toml"]).status.code(), Some(2));
    assert_eq!(ncimc(&["lfun", "frobnicate"]).status.code(), Some(2));
}

#[test]
fn failed_verification_exits_1() {
    // stored cohomology that disagrees with the single rational point
    let mut f = tempfile();
    writeln!(
        f.1,
        "q = 2\nell = 3\nm = 2\n[[points]]\ndegree = 1\nfrobenius = [0, 1]\n[[cohomology]]\ndegree = 0\nfrobenius = [[2]]"
    )
    .unwrap();
    let o = ncimc(&["lfun", "check", "--fixture", f.0.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[PASS] trace formula derived"));
    assert!(out.contains("[FAIL] trace formula stored"));
    std::fs::remove_file(&f.0).unwrap();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("ncimc-cli-{}.toml", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn output_is_deterministic() {
    let args = ["suite", "run", "--precision", "16", "--parallel", "3"];
    let a = ncimc(&args);
    let b = ncimc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let json = ncimc(&["ncl", "evaluate", "--fixture", "z2-gamma", "--format", "json-lines"]);
    for line in stdout(&json).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
        assert_eq!(v["verdict"], "value");
    }
}
