//! The command-line tool end to end, run as a subprocess.

use std::path::PathBuf;
use std::process::{Command, Output};

use strandcat::cli::{parse_json_tables, parse_tsv, tables_to_json, tables_to_tsv, Report};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strandcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn torus_table() {
    let torus = data("torus.json");
    let o = run(&["algebra", &torus, "--objects", "1,2", "--mu", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let tables = parse_tsv(&stdout(&o)).unwrap();
    let basis = &tables[0];
    // id₁, id₂, α', β, α and the composites βα', αβ, αβα'
    let tokens: Vec<&str> = basis.rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(
        tokens,
        [
            "{(0, 1, 1, 0)}",
            "{(0, 2, 2, 0)}",
            "{(0, 1, 2, 0)}",
            "{(0, 2, 3, 0)}",
            "{(0, 3, 4, 0)}",
            "{(0, 1, 3, 0)}",
            "{(0, 2, 4, 0)}",
            "{(0, 1, 4, 0)}"
        ]
    );
    let product = &tables[1];
    let lookup = |g: &str, f: &str| {
        product.rows.iter().find(|r| r[0] == g && r[1] == f).map(|r| r[2].clone()).expect("composable pair")
    };
    let (alpha_p, beta, alpha) = ("{(0, 1, 2, 0)}", "{(0, 2, 3, 0)}", "{(0, 3, 4, 0)}");
    assert_eq!(lookup(beta, alpha), "0");
    assert_eq!(lookup(alpha_p, beta), "0");
    assert_eq!(lookup(beta, alpha_p), "{(0, 1, 3, 0)}");
    assert_eq!(lookup(alpha, beta), "{(0, 2, 4, 0)}");
}

#[test]
fn emitted_tables_round_trip() {
    let torus = data("torus.json");
    let circle = data("circle.json");
    let line = data("line.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["hecke", "4"],
        vec!["hecke", "2", "--affine", "--lmax", "3", "--cmax", "1"],
        vec!["affine", "2"],
        vec!["algebra", &torus, "--objects", "1,2", "--mu", "4"],
        vec!["algebra", &circle, "--objects", "1,2", "--mu", "3", "-W", "1", "--strands", "2"],
        vec!["dual", &line, "--n", "2"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let tables = parse_tsv(&text).unwrap();
        assert_eq!(tables_to_tsv(&tables), text, "{args:?}");
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        let j = stdout(&run(&json_args));
        if args[0] == "dual" {
            let v: serde_json::Value = serde_json::from_str(&j).unwrap();
            let back: Vec<Report> = serde_json::from_value(v["reports"].clone()).unwrap();
            assert!(back.iter().all(Report::ok));
        } else {
            let back = parse_json_tables(&j).unwrap();
            assert_eq!(back, tables, "{args:?}");
            assert_eq!(tables_to_json(&back), j);
        }
    }
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["selftest", "--seed", "1", "--format", "json"]);
    let b = run(&["selftest", "--seed", "1", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let reports: Vec<Report> = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(reports.len(), 12);
    let c = run(&["selftest", "--seed", "5", "--only", "7,8"]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn glue_reports_and_faults() {
    let (l, r, bad, circ) =
        (data("glue_left.json"), data("glue_right.json"), data("glue_right_corrupt.json"), data("self_glue.json"));
    let ok = run(&["glue", &l, &r, "--mu", "2", "-W", "2", "--format", "json"]);
    assert_eq!(ok.status.code(), Some(0));
    let ok = run(&["glue", &circ, "--mu", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let o = run(&["glue", &l, &bad, "--mu", "2", "-W", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let reports: Vec<Report> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!reports[0].ok());
    assert!(reports[0].counterexample.is_some());
}

#[test]
fn parse_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("strandcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, r#"{"components":[{"kind":"Spiral","marks":["1"]}]}"#).unwrap();
    let b = broken.display().to_string();
    assert_eq!(run(&["algebra", &b, "--objects", "1", "--mu", "2"]).status.code(), Some(2));
    assert_eq!(run(&["glue", &b, "--mu", "2"]).status.code(), Some(2));
    assert_eq!(run(&["algebra", &data("torus.json"), "--objects", "9", "--mu", "2"]).status.code(), Some(2));
    assert_eq!(run(&["algebra", &data("torus.json"), "--objects", "1", "--mu", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
