use std::path::Path;
use std::process::{Command, Output};

fn ratser(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratser")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eval_examples() {
    let o = ratser(&["eval", "a*", "--semiring", "n", "--alphabet", "a", "--maxlen", "2"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "{ε:1, a:1, aa:1}"));
    let o = ratser(&["eval", "1*", "--semiring", "ninf", "--alphabet", "a"]);
    assert_eq!(stdout(&o), "{ε:inf}");
    let o = ratser(&["eval", "1*", "--semiring", "n", "--alphabet", "a"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("star outside domain"));
    let o = ratser(&["eval", "(a+b)*", "--semiring", "k:2", "--maxlen", "1"]);
    assert_eq!(stdout(&o), "{ε:1, a:1, b:1}");
    let o = ratser(&["eval", "2a", "--semiring", "bool", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"a": "1"}));
}

#[test]
fn inf_only_over_ninf() {
    assert_eq!(code(&ratser(&["eval", "inf.a", "--semiring", "n"])), 2);
    assert_eq!(code(&ratser(&["eval", "inf", "--semiring", "bool"])), 2);
    assert_eq!(code(&ratser(&["eval", "inf.a"])), 0);
}

#[test]
fn errors_exit_two() {
    assert_eq!(code(&ratser(&["eval", "a+", "--alphabet", "a"])), 2);
    assert_eq!(code(&ratser(&["eval", "b", "--alphabet", "a"])), 2);
    assert_eq!(code(&ratser(&["eval", "a", "--semiring", "tropical"])), 2);
    assert_eq!(code(&ratser(&["equiv", "a", "a", "--semiring", "bool"])), 2);
    assert_eq!(code(&ratser(&["totterm", "/nonexistent.json"])), 2);
    assert_eq!(code(&ratser(&["check", "nonsense"])), 2);
}

#[test]
fn equiv_examples() {
    let ab = ["--semiring", "ninf", "--alphabet", "ab"];
    let o = ratser(&[&["equiv", "(ab)*", "1 + a.(ba)*.b"][..], &ab].concat());
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "equivalent"));
    let o = ratser(&[&["equiv", "a", "b"][..], &ab].concat());
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "inequivalent, witness a"));
    let o = ratser(&["equiv", "(1+a)*", "1*a*", "--semiring", "ninf"]);
    assert_eq!(code(&o), 0);
    let o = ratser(&["equiv", "a+a", "2a", "--semiring", "n", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"equivalent": true, "witness": null}));
    let o = ratser(&["equiv", "a", "a+a", "--semiring", "n"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "inequivalent, witness a"));
}

#[test]
fn normalize_examples() {
    let o = ratser(&["normalize", "a*", "--alphabet", "a"]);
    assert_eq!(stdout(&o), "tc=1, t0=a.a*, tinf=0");
    let o = ratser(&["normalize", "(1+a)*"]);
    assert_eq!(stdout(&o), "tc=0, t0=0, tinf=1+a.a*");
    let o = ratser(&["normalize", "a + 1*a", "--disjoint"]);
    assert_eq!(stdout(&o), "tc=0, t0=0, tinf=a");
}

fn compile_to(dir: &Path, name: &str, expr: &str, extra: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let o = ratser(&[&["compile", expr, "--out", &path][..], extra].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn compile_roundtrips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let m = compile_to(dir.path(), "m.json", "a+b", &["--alphabet", "ab"]);
    assert_eq!(code(&ratser(&["equiv-file", &m, &m])), 0);
    let star = compile_to(dir.path(), "s.json", "(a+b)*", &[]);
    let other = compile_to(dir.path(), "o.json", "a*.(b.a*)*", &[]);
    assert_eq!(code(&ratser(&["equiv-file", &star, &other])), 0);
    let o = ratser(&["equiv-file", &m, &star]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "inequivalent, witness ε"));

    let o = ratser(&["totterm", &star]);
    let term = stdout(&o);
    assert_eq!(code(&ratser(&["equiv", &term, "(a+b)*"])), 0, "{term}");

    let one = compile_to(dir.path(), "one.json", "1*a", &["--alphabet", "ab"]);
    let two = compile_to(dir.path(), "two.json", "a.1*", &["--alphabet", "ab"]);
    assert_eq!(code(&ratser(&["equiv-file", &one, &two])), 0);
    assert_eq!(code(&ratser(&["equiv-file", &one, &two, "--semiring", "n"])), 2);
}

#[test]
fn simulate_between_files() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.json");
    let small = dir.path().join("small.json");
    std::fs::write(
        &big,
        r#"{"dim": 2, "alphabet": ["a"], "alpha": ["1", "0"], "beta": ["1", "1"],
            "trans": {"a": [["0", "1"], ["0", "1"]]}}"#,
    )
    .unwrap();
    std::fs::write(&small, r#"{"dim": 1, "alphabet": ["a"], "alpha": ["1"], "beta": ["1"], "trans": {"a": [["1"]]}}"#)
        .unwrap();
    let (b, s) = (big.to_string_lossy(), small.to_string_lossy());
    let o = ratser(&["simulate", &b, &s, "--semiring", "n"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "forward simulation rho=[0, 0]"));
    let o = ratser(&["simulate", &s, &b, "--semiring", "n", "--output", "json"]);
    assert_eq!(code(&o), 1);
    let o = ratser(&["simulate", &s, &b, "--budget", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn check_suites() {
    let o = ratser(&["check", "group", "--group", "z3", "--semiring", "ninf"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.starts_with("pass group z3")), "{}", stdout(&o));

    let o = ratser(&["check", "inductive", "--semiring", "initial", "--trials", "2", "--output", "json"]);
    assert_eq!(code(&o), 1);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.iter().any(|v| v["verdict"] == "fail"));
    assert!(lines.iter().all(|v| v["identity"].is_string() && v["instance"].is_string()));

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("klein.json");
    std::fs::write(&table, "[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]").unwrap();
    let o = ratser(&["check", "group", "--group", &table.to_string_lossy(), "--trials", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("group klein"));
}

#[test]
fn seeded_output_is_byte_identical() {
    let args = ["check", "commutative", "--trials", "8", "--seed", "17", "--output", "json"];
    let first = ratser(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, ratser(&args).stdout);
    let seq = ratser(&[&args[..], &["--sequential"]].concat());
    assert_eq!(first.stdout, seq.stdout);
}
