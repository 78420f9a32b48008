use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = "p tss 3 3\ne 1 2\ne 2 3\ne 1 3\n";
const PATH: &str = "p tss 3 2\ne 1 2\ne 2 3\n";

fn tsskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsskit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Numeric `key value` lines of a text report.
fn numbers(text: &str) -> Vec<(String, f64)> {
    text.lines()
        .filter_map(|l| {
            let (k, v) = l.split_once(' ')?;
            Some((k.to_string(), v.parse().ok()?))
        })
        .filter(|(k, _)| k.len() > 1)
        .collect()
}

#[test]
fn verify_monopoly_on_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.tss", TRIANGLE);
    let out = tsskit(&["verify", "dyn", "--graph", s(&g), "--set", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("valid: true"));

    let g2 = write(&dir, "tri2.tss", &format!("{TRIANGLE}t 1 2\nt 2 2\nt 3 2\n"));
    let out = tsskit(&["verify", "dyn", "--graph", s(&g2), "--set", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("valid: false"));
}

#[test]
fn pi_tw_on_path_reports_weight_one() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "path.tss", PATH);
    let out = tsskit(&["solve", "pi-tw", "--graph", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "weight 1"));
    assert!(text.contains("verified: true"));

    // the report feeds straight back into the checker
    let sol = write(&dir, "sol.txt", &text);
    let out = tsskit(&["verify", "pi", "--graph", s(&g), "--sigma", s(&sol)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn generators_are_deterministic() {
    let a = tsskit(&["gen", "grid", "--rows", "2", "--cols", "2", "--seed", "1"]);
    let b = tsskit(&["gen", "grid", "--rows", "2", "--cols", "2", "--seed", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = tsskit(&["gen", "random", "--n", "9", "--seed", "4", "--tau-lo", "0", "--tau-hi", "3"]);
    let b = tsskit(&["gen", "random", "--n", "9", "--seed", "4", "--tau-lo", "0", "--tau-hi", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_agrees_with_text() {
    let dir = TempDir::new().unwrap();
    let gen = tsskit(&["gen", "random", "--n", "7", "--p", "0.4", "--seed", "2", "--tau-lo", "0", "--tau-hi", "2"]);
    let g = write(&dir, "g.tss", &stdout(&gen));
    for cmd in [&["solve", "pi-tw"][..], &["solve", "dyn-exact"], &["oracle", "pi"], &["oracle", "dyn"]] {
        let mut args = cmd.to_vec();
        args.extend(["--graph", s(&g)]);
        let text = stdout(&tsskit(&args));
        args.insert(0, "--json");
        let json: Value = serde_json::from_str(&stdout(&tsskit(&args))).unwrap();
        let fields = numbers(&text);
        assert!(!fields.is_empty());
        for (k, v) in fields {
            assert_eq!(json[&k].as_f64(), Some(v), "{cmd:?} field {k}");
        }
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let gen = tsskit(&["gen", "random", "--n", "9", "--p", "0.35", "--seed", "8", "--tau-lo", "0", "--tau-hi", "3"]);
    let g = write(&dir, "g.tss", &stdout(&gen));
    let one = tsskit(&["--threads", "1", "solve", "pi-tw", "--graph", s(&g)]);
    let four = tsskit(&["--threads", "4", "solve", "pi-tw", "--graph", s(&g)]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn usage_and_input_errors() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.tss", TRIANGLE);
    assert_eq!(tsskit(&["solve", "pi-tw", "--graph", s(&g), "--nope"]).status.code(), Some(2));
    assert_eq!(tsskit(&["frobnicate"]).status.code(), Some(2));

    let bad = write(&dir, "bad.tss", "p tss 2 1\ne 1 3\n");
    let out = tsskit(&["oracle", "dyn", "--graph", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = tsskit(&["solve", "pi-tw", "--graph", s(&g), "--max-states", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("states"));
}

#[test]
fn oracle_limit_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.tss", TRIANGLE);
    let out = Command::new(env!("CARGO_BIN_EXE_tsskit"))
        .args(["oracle", "vc", "--graph", s(&g)])
        .env("TSSKIT_ORACLE_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = tsskit(&["oracle", "vc", "--graph", s(&g)]);
    assert!(stdout(&out).starts_with("optimum 2\n"));
}

#[test]
fn interval_pipeline() {
    let dir = TempDir::new().unwrap();
    let iv = dir.path().join("iv.txt");
    let gen = tsskit(&[
        "gen",
        "interval",
        "--n",
        "8",
        "--seed",
        "5",
        "--tau-lo",
        "0",
        "--tau-hi",
        "2",
        "--intervals-out",
        s(&iv),
    ]);
    let g = write(&dir, "g.tss", &stdout(&gen));
    let interval = stdout(&tsskit(&["solve", "pi-interval", "--graph", s(&g), "--intervals", s(&iv), "--t", "2"]));
    let oracle = stdout(&tsskit(&["oracle", "pi", "--graph", s(&g)]));
    let weight = |t: &str| {
        t.lines()
            .find_map(|l| l.split_once(' ').filter(|(k, _)| *k == "weight" || *k == "optimum"))
            .unwrap()
            .1
            .to_string()
    };
    assert_eq!(weight(&interval), weight(&oracle));
    assert!(interval.contains("verified: true"));
}

#[test]
fn reductions_write_valid_files() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "path.tss", PATH);
    let td = write(&dir, "path.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    let td_out = dir.path().join("out.td");
    let out = tsskit(&["reduce", "dyn-pi", "--graph", s(&g), "--td", s(&td), "--td-out", s(&td_out)]);
    assert_eq!(out.status.code(), Some(0));
    let reduced = write(&dir, "reduced.tss", &stdout(&out));
    assert!(stdout(&out).starts_with("p tss 6 5\n"));
    let solved = tsskit(&["solve", "pi-tw", "--graph", s(&reduced), "--td", s(&td_out)]);
    assert!(stdout(&solved).lines().any(|l| l == "weight 1"));

    let out = tsskit(&["reduce", "vc-dyn", "--graph", s(&g)]);
    assert!(stdout(&out).starts_with("p tss 9 14\n"));
}

#[test]
fn approximations_self_verify() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "grid.tss", &stdout(&tsskit(&["gen", "grid", "--rows", "3", "--cols", "3"])));
    let out = tsskit(&[
        "approx",
        "degenerate",
        "--graph",
        s(&g),
        "--epsilon",
        "0.5",
        "--outer",
        "1,2,3,4,6,7,8,9",
        "--kappa-default",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verified: true"));

    let td = write(&dir, "tri.td", "s td 1 3 3\nb 1 1 2 3\n");
    let tri = write(&dir, "tri.tss", TRIANGLE);
    let out = tsskit(&["approx", "dyn-td", "--graph", s(&tri), "--td", s(&td)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("width 2") && text.contains("verified: true"));
}
