use std::path::{Path, PathBuf};
use std::process::Command;

use magma_cli::{run, Report};
use serde_json::Value;

fn corpus(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn magma(args: &[&str]) -> (i32, Report) {
    let outcome = run(std::iter::once("magma").chain(args.iter().copied()));
    (outcome.code, outcome.report)
}

fn ok(args: &[&str]) -> Value {
    let (code, report) = magma(args);
    assert_eq!(code, 0, "{args:?}: {report:?}");
    report.result
}

#[test]
fn classify_group_table() {
    let r = ok(&["classify", &corpus("n3/z1.tbl")]);
    for key in ["nd", "sg", "mn", "gr", "commutative"] {
        assert_eq!(r[key], Value::Bool(true), "{key}");
    }
    assert_eq!(r["identity"], "a");
    assert_eq!(r["table"]["code"], "4069");
}

#[test]
fn classify_reports_witnesses() {
    let r = ok(&["classify", "--table", "b a / a a"]);
    assert_eq!(r["sg"], Value::Bool(false));
    assert_eq!(r["assoc_counterexample"], serde_json::json!(["a", "a", "b"]));
    assert_eq!(r["identity"], Value::Null);
}

#[test]
fn dual_of_the_degenerate_table_has_81_members() {
    let r = ok(&["dual", &corpus("n3/z6.tbl"), "--method", "exhaustive"]);
    assert_eq!(r["count"], "81");
    assert_eq!(r["method"], "EXHAUSTIVE");
    let r = ok(&["dual", &corpus("n3/z6.tbl"), "--method", "backtrack"]);
    assert_eq!(r["count"], "81");
}

#[test]
fn dual_method_selection() {
    let r = ok(&["dual", &corpus("n3/z4.tbl")]);
    assert_eq!(r["method"], "SANDWICH");
    assert_eq!(r["count"], "3");
    let (code, report) = magma(&["dual", &corpus("n3/z6.tbl"), "--method", "sandwich"]);
    assert_eq!(code, 2, "{report:?}");
    let (code, _) = magma(&["dual", &corpus("n3/z6.tbl"), "--method", "backtrack", "--budget", "10"]);
    assert_eq!(code, 2);
}

#[test]
fn count_groups_of_order_four() {
    assert_eq!(ok(&["count-groups", "4"])["count"], "2");
    assert_eq!(ok(&["count-groups", "3"])["count"], "1");
}

#[test]
fn hat_and_phi_follow_the_worked_tables() {
    // z1 ^a z2 = z2 and z1 ^b z2 = z1 on the cyclic group of order 3
    let r = ok(&["hat", &corpus("n3/z1.tbl"), "a", &corpus("n3/z2.tbl")]);
    assert_eq!(r["table"]["rows"], serde_json::json!(["c a b", "a b c", "b c a"]));
    let r = ok(&["hat", &corpus("n3/z1.tbl"), "b", &corpus("n3/z2.tbl")]);
    assert_eq!(r["table"]["rows"], serde_json::json!(["a b c", "b c a", "c a b"]));
    let r = ok(&["phi", &corpus("n3/z4.tbl"), "b"]);
    assert_eq!(r["table"]["rows"], serde_json::json!(["b a c", "a b c", "c c c"]));
    let (code, _) = magma(&["phi", &corpus("n3/z6.tbl"), "a"]);
    assert_eq!(code, 2);
}

#[test]
fn compatibility_witness() {
    let r = ok(&["compatible", &corpus("n3/z4.tbl"), &corpus("n3/z7.tbl")]);
    assert_eq!(r["compatible"], Value::Bool(false));
    assert_eq!(r["failing_equation"], "HAT_NE_CHECK_1");
    let r = ok(&["compatible", &corpus("n3/z4.tbl"), &corpus("n3/z6.tbl")]);
    assert_eq!(r["compatible"], Value::Bool(true));
    assert_eq!(r["witness"], Value::Null);
}

#[test]
fn conjugation_isomorphism_and_automorphisms() {
    let r = ok(&["conjugate", &corpus("n4/z1.tbl"), "--perm", "b<->c"]);
    assert_eq!(r["table"]["code"], ok(&["classify", &corpus("n4/z2.tbl")])["table"]["code"]);
    let r = ok(&["conjugate", &corpus("n4/z1.tbl"), "--perm", "(b d)(b c)"]);
    assert_eq!(r["table"]["code"], ok(&["classify", &corpus("n4/z3.tbl")])["table"]["code"]);
    let r = ok(&["iso", &corpus("n4/z1.tbl"), &corpus("n4/z2.tbl")]);
    assert_eq!(r["permutation"], "(b c)");
    let r = ok(&["iso", &corpus("n4/z1.tbl"), &corpus("n4/z4.tbl")]);
    assert_eq!(r["isomorphic"], Value::Bool(false));
    assert_eq!(ok(&["aut", &corpus("n4/z4.tbl")])["order"], "6");
    assert_eq!(ok(&["aut", &corpus("n4/z1.tbl")])["automorphisms"], serde_json::json!(["()", "(b d)"]));
}

#[test]
fn group_commands() {
    let r = ok(&["groups", "4"]);
    assert_eq!(r["count"], "4");
    let r = ok(&["groups", "4", "--identity", "c"]);
    assert_eq!(r["identity"], "c");
    assert_eq!(ok(&["partition", "4"])["total"], "16");
    let classes = ok(&["classes", "4"]);
    let mut sizes: Vec<&str> = classes["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_str().unwrap())
        .collect();
    sizes.sort();
    assert_eq!(sizes, ["1", "3"]);
}

#[test]
fn enumerate_groups_of_order_three() {
    let r = ok(&["enumerate", "3", "--filter", "gr"]);
    assert_eq!(r["count"], "3");
    let mut expected: Vec<String> = ["z1", "z2", "z3"]
        .iter()
        .map(|z| ok(&["classify", &corpus(&format!("n3/{z}.tbl"))])["table"]["code"].as_str().unwrap().to_string())
        .collect();
    expected.sort_by_key(|c| c.parse::<u64>().unwrap());
    assert_eq!(r["codes"], serde_json::json!(expected));
    let r = ok(&["enumerate", "3", "--filter", "all", "--count-only"]);
    assert_eq!(r["count"], "19683");
    assert!(r.get("codes").is_none());
}

#[test]
fn enumerate_is_independent_of_workers() {
    let one = ok(&["enumerate", "3", "--filter", "sg", "--workers", "1"]);
    let three = ok(&["enumerate", "3", "--filter", "sg", "--workers", "3"]);
    assert_eq!(one, three);
    assert_eq!(one["count"], "113");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(magma(&["classify", "/no/such/file.tbl"]).0, 2);
    assert_eq!(magma(&["enumerate", "4", "--filter", "all"]).0, 2);
    assert_eq!(magma(&["enumerate", "3", "--filter", "rings"]).0, 2);
    assert_eq!(magma(&["conjugate", &corpus("n3/z1.tbl"), "--perm", "a<->q"]).0, 2);
    assert_eq!(magma(&["hat", &corpus("n3/z1.tbl"), "q", &corpus("n3/z2.tbl")]).0, 2);
    assert_eq!(magma(&["compatible", &corpus("n3/z1.tbl"), &corpus("n4/z1.tbl")]).0, 2);
    assert_eq!(magma(&["groups", "0"]).0, 2);
    assert_eq!(magma(&["frobnicate"]).0, 2);
    assert_eq!(magma(&["enumerate", "3", "--workers", "0"]).0, 2);
}

#[test]
fn help_exits_with_zero() {
    let outcome = run(["magma", "--help"]);
    assert_eq!(outcome.code, 0);
    assert!(outcome.text.contains("verify-paper"));
}

#[test]
fn unknown_label_in_a_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tbl");
    std::fs::write(&path, "n=2\na b\nb x\n").unwrap();
    let outcome = run(["magma", "classify", path.to_str().unwrap()]);
    assert_eq!(outcome.code, 2);
    assert!(outcome.text.contains("line 3"), "{}", outcome.text);
}

#[test]
fn reports_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["classify".into(), corpus("n3/z7.tbl")],
        vec!["dual".into(), corpus("n3/z4.tbl")],
        vec!["classes".into(), "4".into()],
        vec!["explore-question".into(), "2".into()],
        vec!["enumerate".into(), "2".into(), "--filter".into(), "nd-not-sg".into()],
    ];
    for (i, args) in cases.iter().enumerate() {
        let out = dir.path().join(format!("r{i}.json"));
        let mut argv = vec!["magma".to_string()];
        argv.extend(args.iter().cloned());
        argv.extend(["--out".to_string(), out.to_string_lossy().into_owned()]);
        let first = run(argv.clone());
        assert_eq!(first.code, 0, "{args:?}");
        let written = std::fs::read_to_string(&out).unwrap();
        let parsed = Report::from_json(&written).unwrap();
        assert_eq!(parsed.to_json(), written);
        assert_eq!(parsed, first.report);
        // idempotent
        assert_eq!(run(argv).report.to_json(), written);
    }
}

#[test]
fn json_flag_prints_the_report() {
    let outcome = run(["magma", "count-groups", "4", "--json"]);
    let report = Report::from_json(&outcome.text).unwrap();
    assert_eq!(report.command, "count-groups");
    assert_eq!(report.inputs, ["count-groups", "4", "--json"]);
    assert_eq!(report.version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn explore_question_small_orders_complete() {
    for n in ["1", "2", "3"] {
        let r = ok(&["explore-question", n]);
        assert_eq!(r["status"], "COMPLETE");
        let missing = r["part1_missing"].as_array().unwrap().len();
        assert_eq!(r["part1"] == "HOLDS", missing == 0);
    }
}

#[test]
fn verify_paper_flags_a_corrupted_corpus() {
    let dir = tempfile::tempdir().unwrap();
    magma_dual::checklist::Corpus::bundled().save(dir.path()).unwrap();
    // z1 with (b, b) changed to a
    std::fs::write(dir.path().join("n3/z1.tbl"), "n=3\nlabels=a,b,c\na b c\nb a a\nc a b\n").unwrap();
    let (code, report) = magma(&[
        "verify-paper",
        "--corpus",
        dir.path().to_str().unwrap(),
        "--samples",
        "20",
    ]);
    assert_eq!(code, 1);
    let items = &report.result["items"];
    assert_eq!(items["A1"]["passed"], Value::Bool(false));
    for id in ["A5", "A6", "A7", "A8", "A9", "A10"] {
        assert_eq!(items[id]["passed"], Value::Bool(true), "{id}: {}", items[id]["detail"]);
    }
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_magma"))
}

#[test]
fn binary_exit_codes_and_streams() {
    let out = Command::new(bin()).args(["classify", &corpus("n3/z1.tbl")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("z | a b c\n--+------\na | a b c\n"), "{stdout}");
    assert!(stdout.contains("identity       a"));

    let out = Command::new(bin()).args(["classify", "missing.tbl"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("Usage: magma classify"));
}

#[test]
fn binary_reads_workers_from_the_environment() {
    let out = Command::new(bin())
        .args(["enumerate", "2", "--filter", "sg", "--count-only"])
        .env("MAGMA_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "8 tables of order 2 in class sg\n");
    let out = Command::new(bin())
        .args(["enumerate", "2", "--count-only"])
        .env("MAGMA_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_writes_the_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = Command::new(bin())
        .args(["dual", &corpus("n3/z6.tbl"), "--method", "exhaustive", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.result["count"], "81");
    assert_eq!(report.result["members"].as_array().unwrap().len(), 81);
}
