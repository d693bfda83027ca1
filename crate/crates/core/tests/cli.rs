use std::process::{Command, Output};

use multi_appell::io::{family_from_json, family_to_json, Basis};
use multi_appell::rational::int;
use multi_appell::{charlier_family, CharlierParams};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multi-appell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn charlier_in_both_bases() {
    let o = run(&[
        "charlier", "--n", "1,0", "--a", "1,2", "--basis", "monomial",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x - 1");

    let o = run(&["charlier", "--n", "0,0", "--a", "1,2"]);
    assert_eq!(stdout(&o).trim(), "1");

    let o = run(&["--format", "json", "charlier", "--n", "1,1", "--a", "1,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["basis"], "ff");
    assert_eq!(v["coeffs"], serde_json::json!(["2", "-3", "1"]));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        run(&["charlier", "--n", "1", "--a", "1,2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["charlier", "--n", "1,0", "--a", "1/0,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--omega", "0", "charlier", "--n", "1,0", "--a", "1,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "--degree-cap",
            "4",
            "verify",
            "--suite",
            "difference",
            "--a",
            "1,2",
            "--max-degree",
            "5"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn table_values() {
    let o = run(&["table", "--a", "1,2", "--n", "1,0", "--x-range", "0..2"]);
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_owned())
        .collect();
    assert_eq!(values, ["-1", "0", "1"]);

    let o = run(&["table", "--a", "1,2", "--n", "1,1;0,0", "--x", "0,7/3"]);
    let text = stdout(&o);
    assert!(text.contains("1,1,1,2,0,2"), "{text}");
    assert!(text.contains("0,0,1,2,7/3,1"), "{text}");
}

#[test]
fn verify_suites_pass_and_echo_the_seed() {
    for suite in [
        "difference",
        "inversion",
        "connection",
        "addition",
        "genfunc",
        "orthogonality",
        "classical",
        "appell",
    ] {
        let o = run(&[
            "--format",
            "json",
            "--max-degree",
            "4",
            "verify",
            "--suite",
            suite,
            "--a",
            "1,2",
        ]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
    let o = run(&[
        "--format",
        "json",
        "--seed",
        "42",
        "--max-degree",
        "3",
        "verify",
        "--suite",
        "inversion",
        "--random",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    for rec in lines {
        assert_eq!(rec["rng_seed"], 42);
        assert_eq!(rec["verdict"], "pass");
    }
}

#[test]
fn second_recurrence_fails_on_its_boundary_row() {
    let o = run(&[
        "--format",
        "json",
        "--max-degree",
        "3",
        "verify",
        "--suite",
        "recurrences",
        "--a",
        "1,2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let recs: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let rec2 = recs.iter().find(|r| r["check"] == "rec-2").unwrap();
    assert_eq!(rec2["verdict"], "fail");
    assert_eq!(rec2["failures"], 3);
    for check in ["rec-1", "rec-3"] {
        let r = recs.iter().find(|r| r["check"] == check).unwrap();
        assert_eq!(r["verdict"], "pass");
    }
}

#[test]
fn family_json_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let seed = write_temp(
        &dir,
        "seed.json",
        r#"{"omega":"-2","arity":2,"order":3,"coeffs":[["1","1/3","-5/7","2"],["3/2","0","4"],["-1","9/8"],["6"]]}"#,
    );
    let o = run(&["--format", "json", "appell", &seed, "--action", "build"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let fam = family_from_json(&text).unwrap();
    assert_eq!(family_to_json(&fam, Basis::Ff).trim(), text.trim());
    let again = write_temp(&dir, "family.json", &text);

    let o = run(&["--format", "json", "appell", &again, "--action", "recover"]);
    assert_eq!(o.status.code(), Some(0));
    let recovered: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(recovered["coeffs"][1][0], "3/2");
    assert_eq!(recovered["coeffs"][2][1], "9/8");
}

#[test]
fn seed_check_and_bad_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_temp(
        &dir,
        "good.json",
        r#"{"omega":"1/2","arity":2,"order":2,"coeffs":[["1","2","3"],["4","5"],["6"]]}"#,
    );
    assert_eq!(
        run(&["appell", &good, "--action", "check"]).status.code(),
        Some(0)
    );
    let degenerate = write_temp(
        &dir,
        "zero.json",
        r#"{"omega":"1","arity":2,"order":1,"coeffs":[["0","1"],["1"]]}"#,
    );
    assert_eq!(
        run(&["appell", &degenerate, "--action", "build"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["appell", "/nonexistent.json", "--action", "build"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn mutated_family_is_rejected_with_a_witness() {
    let a = CharlierParams::new(vec![int(1), int(2)]).unwrap();
    let fam = charlier_family(&a, 3);
    let mut v: serde_json::Value = serde_json::from_str(&family_to_json(&fam, Basis::Ff)).unwrap();
    let members = v["members"].as_array_mut().unwrap();
    let target = members
        .iter_mut()
        .find(|m| m["n"] == serde_json::json!([1, 1]))
        .unwrap();
    target["coeffs"][1] = "5".into();
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.json", &v.to_string());

    let o = run(&["--format", "json", "appell", &path, "--action", "check"]);
    assert_eq!(o.status.code(), Some(1));
    let failing: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|r| r["verdict"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing
        .iter()
        .any(|r| !r["witnesses"].as_array().unwrap().is_empty()));

    assert_eq!(
        run(&["appell", &path, "--action", "recover"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["--strict", "recurrence", "--family", &path, "--window", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn recurrence_table_and_footer() {
    let o = run(&["recurrence", "--a", "1,2", "--window", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,E,F,G,status"));
    for line in lines.by_ref().take(10) {
        let f: Vec<i64> = line
            .split(',')
            .take(5)
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(f[2], 1 + f[0] + f[1]);
        assert_eq!(f[3], f[0]);
        assert_eq!(f[4], 2 * f[1]);
    }
    assert!(
        text.contains("constraints=satisfied; b0=1; params=(1,2)"),
        "{text}"
    );

    let o = run(&["recurrence", "--a", "1,2", "--indices", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0,0,1,0,0,solved"));

    // {x^(|n|)}: rank-deficient rows are informational unless --strict
    let dir = tempfile::tempdir().unwrap();
    let delta = write_temp(
        &dir,
        "delta.json",
        r#"{"omega":"1","arity":2,"order":3,"coeffs":[["1","0","0","0"],["0","0","0"],["0","0"],["0"]]}"#,
    );
    let args = ["recurrence", "--family", &delta, "--window", "2"];
    assert_eq!(run(&args).status.code(), Some(0));
    let strict: Vec<&str> = std::iter::once("--strict").chain(args).collect();
    assert_eq!(run(&strict).status.code(), Some(1));
}
