use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hyperlevel::store::{parse_line, PayloadKind, PutOutcome, Store, StoreRecord};
use hyperlevel::{tame_prime_set, Budget, HypersurfaceClass};
use serde_json::Value;

const EPOCH: &str = "1700000000";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlevel"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", EPOCH)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn euler_and_betti() {
    let o = run(&["euler", "--degree", "4", "--dim", "2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "24\n"));
    let o = run(&["betti", "--degree", "3", "--dim", "3"]);
    assert_eq!(stdout(&o), "10\n");
    let o = run(&["--json", "euler", "--degree", "30", "--dim", "20"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chi"].to_string().len(), 31, "{v}");
}

#[test]
fn bad_arguments_exit_nonzero() {
    assert_eq!(run(&["euler", "--degree", "0", "--dim", "2"]).status.code(), Some(1));
    assert_eq!(run(&["audit", "--degree-range", "5..3", "--dim-range", "1"]).status.code(), Some(1));
    assert_eq!(run(&["primes", "--degree", "2", "--dim", "3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn node_budget_exit_code() {
    let o = run(&["--node-limit", "5", "primes", "--degree", "3", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));
}

#[test]
fn audit_reports_plane_cubics_only() {
    let o = run(&["audit", "--degree-range", "3..5", "--dim-range", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with("classes with trace-formula solutions: (3,1)\n"), "{text}");
    assert!(text.contains("d=5 n=1 profiles="), "{text}");
    assert!(text.contains("fixed-points=-10"), "{text}");
}

#[test]
fn audit_emit_lines_parse() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("profiles.jsonl");
    let o = run(&["audit", "--degree-range", "3", "--dim-range", "1..2", "--emit", path_str(&emit)]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = fs::read_to_string(&emit)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    let solutions: Vec<&Value> = lines.iter().filter(|v| v["solution"] == true).collect();
    assert!(solutions.iter().all(|v| v["d"] == 3 && v["n"] == 1));
    assert!(solutions.iter().all(|v| v["lhs"] == v["rhs"]));
}

#[test]
fn ms_check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let minus_one = dir.path().join("m.json");
    fs::write(&minus_one, "[[-1,0],[0,-1]]").unwrap();
    let o = run(&["ms-check", "--matrix", path_str(&minus_one), "--mod", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("mod-2 counterexample: order 2"), "{}", stdout(&o));
    let o = run(&["--json", "ms-check", "--matrix", path_str(&minus_one), "--mod", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "not_congruent");

    let unipotent = dir.path().join("u.json");
    fs::write(&unipotent, "[[1,3],[0,1]]").unwrap();
    let o = run(&["ms-check", "--matrix", path_str(&unipotent), "--mod", "3"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "[[1,2],[3]]").unwrap();
    let o = run(&["ms-check", "--matrix", path_str(&bad), "--mod", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ms_fuzz_summary() {
    let o = run(&["ms-fuzz", "--dim", "4", "--count", "200", "--mod", "3", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations=0"), "{}", stdout(&o));
    let a = run(&["--json", "ms-fuzz", "--dim", "3", "--count", "50", "--mod", "2", "--seed", "0"]);
    let b = run(&["--json", "ms-fuzz", "--dim", "3", "--count", "50", "--mod", "2", "--seed", "0"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn level_verdicts_and_exit_codes() {
    let o = run(&["--json", "level", "--degree", "3", "--dim", "3", "--level", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "scheme-hypotheses-met");
    assert_eq!(v["wild_caveat"], true);
    assert_eq!(v["a_tame"], 330);

    let o = run(&["level", "--degree", "3", "--dim", "3", "--level", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict     fails-coprimality"));
    let o = run(&["level", "--degree", "3", "--dim", "1", "--level", "7"]);
    assert!(stdout(&o).contains("excluded-case"));
    let o = run(&["--json", "level", "--degree", "4", "--dim", "2", "--level", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "fails-N-lower-bound");
}

#[test]
fn level_reuses_stored_prime_table() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s.jsonl");
    let o = run(&["primes", "--degree", "3", "--dim", "2", "--store", path_str(&store)]);
    assert_eq!(o.status.code(), Some(0));
    let before = fs::read(&store).unwrap();
    let o = run(&["level", "--degree", "3", "--dim", "2", "--level", "7", "--store", path_str(&store)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read(&store).unwrap(), before);
    let o = run(&["level", "--degree", "4", "--dim", "1", "--level", "5", "--store", path_str(&store)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(Store::open(&store).unwrap().records().len(), 2);
}

#[test]
fn store_round_trip_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let table = tame_prime_set(&HypersurfaceClass::new(4, 1).unwrap(), &Budget::default()).unwrap();
    let mut store = Store::open(&path).unwrap();
    assert_eq!(store.put(StoreRecord::prime_table(&table).unwrap()).unwrap(), PutOutcome::Appended);
    assert_eq!(store.put(StoreRecord::prime_table(&table).unwrap()).unwrap(), PutOutcome::Verified);
    let reopened = Store::open(&path).unwrap();
    let rec = reopened.latest(PayloadKind::PrimeTable, 4, 1).unwrap();
    assert_eq!(rec.as_prime_table().unwrap(), table);
    assert!(reopened.latest(PayloadKind::AuditSummary, 4, 1).is_none());
}

#[test]
fn tampered_store_diverges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let o = run(&["primes", "--degree", "3", "--dim", "1", "--store", path_str(&path)]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replace(r#""a_tame":6"#, r#""a_tame":30"#)).unwrap();
    let o = run(&["primes", "--degree", "3", "--dim", "1", "--store", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("diverge"), "{}", stderr(&o));
}

#[test]
fn corrupt_store_line_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    run(&["audit", "--degree-range", "3..4", "--dim-range", "2", "--store", path_str(&path)]);
    let mut text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    text.push_str("{\"schema_version\":1,\"kind\":\"audit_summary\"\n");
    fs::write(&path, text).unwrap();
    let o = run(&["audit", "--degree-range", "3", "--dim-range", "2", "--store", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("s.jsonl:3"), "{}", stderr(&o));
    assert!(parse_line("x", 9, "[]").unwrap_err().to_string().contains("x:9"));
}

#[test]
fn stores_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let stores: Vec<_> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("run{i}.jsonl"));
            run(&["audit", "--degree-range", "3..5", "--dim-range", "1..3", "--store", path_str(&path)]);
            run(&["primes", "--degree", "3", "--dim", "3", "--store", path_str(&path)]);
            fs::read(&path).unwrap()
        })
        .collect();
    assert!(!stores[0].is_empty());
    assert_eq!(stores[0], stores[1]);
    let first = String::from_utf8(stores[0].clone()).unwrap();
    assert!(first.contains("\"created_at\":\"2023-11-14T22:13:20Z\""), "{first}");
}
