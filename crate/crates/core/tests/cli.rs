use std::path::PathBuf;
use std::process::Command;

fn matpw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_matpw")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", "registry", name].iter().collect();
    p.to_str().expect("utf8").to_string()
}

#[test]
fn decide_exit_codes() {
    let u24 = data("u24.mat");
    assert_eq!(matpw(&["decide", "--t", "1", &u24]).0, 1);
    assert_eq!(matpw(&["decide", "--t", "2", &u24]), (0, "YES\n".into(), String::new()));
    assert_eq!(matpw(&["decide", "--t", "2", "missing.mat"]).0, 2);
}

#[test]
fn decompose_cycle() {
    let (code, out, _) = matpw(&["decompose", &data("c4.mat")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("width 1\norder "));
    assert!(out.ends_with("lambda 1 1 1\n"));
}

#[test]
fn stats_line() {
    let (code, out, _) = matpw(&["decompose", "--stats", "--method", "self-abstract", &data("k4.mat")]);
    assert_eq!(code, 0);
    let stats = out.lines().last().unwrap();
    assert!(stats.starts_with("stats oracle_calls="), "{stats}");
}

#[test]
fn width_of_free_matroid() {
    let (code, out, _) = matpw(&["width-of", "--order", "1,2,3", &data("i3.mat")]);
    assert_eq!((code, out.as_str()), (0, "width 0\norder 1 2 3\nlambda 0 0\n"));
}

#[test]
fn generated_instances_decompose() {
    let dir = tempfile::tempdir().unwrap();
    for (args, width) in [
        (vec!["gen", "uniform", "2", "4", "3"], 2),
        (vec!["gen", "uniform", "3", "5", "4"], 2),
        (vec!["gen", "cycle", "5"], 1),
    ] {
        let (code, text, _) = matpw(&args);
        assert_eq!(code, 0);
        let path = dir.path().join("g.mat");
        std::fs::write(&path, text).unwrap();
        let (code, out, _) = matpw(&["decompose", "--verify", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), format!("width {width}"), "{args:?}");
    }
    let a = matpw(&["gen", "random", "3", "6", "3", "--seed", "9"]);
    assert_eq!(a, matpw(&["gen", "random", "3", "6", "3", "--seed", "9"]));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.mat");
    std::fs::write(&path, "field 4\nmatrix 1 1\n1\n").unwrap();
    let (code, _, err) = matpw(&["decompose", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    assert_eq!(matpw(&["decompose", "--frobnicate", "x"]).0, 2);
}

#[test]
fn verify_rejects_tampered_results() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    std::fs::write(&path, "width 1\norder 1 2 3 4\nlambda 1 2 1\n").unwrap();
    assert_eq!(matpw(&["verify", &data("u24.mat"), path.to_str().unwrap()]).0, 1);
    std::fs::write(&path, "width 2\norder 1 1 3 4\nlambda 1 2 1\n").unwrap();
    assert_eq!(matpw(&["verify", &data("u24.mat"), path.to_str().unwrap()]).0, 1);
}
