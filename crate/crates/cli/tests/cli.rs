use std::io::Write;
use std::process::{Command, Output, Stdio};

fn indom(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_indom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn gen_then_exact() {
    let g = indom(&["gen", "--family", "h:3,2"], "");
    assert!(g.status.success());
    let out = indom(&["exact", "--input", "-"], &String::from_utf8_lossy(&g.stdout));
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    for key in ["graph6", "n", "m", "i", "witness", "nodes", "ms"] {
        assert!(rec.get(key).is_some(), "missing {key}");
    }
    assert_eq!(rec["i"], 5);
    assert_eq!(rec["n"], 9);
}

#[test]
fn exact_budget_exhaustion_exits_2() {
    let g = indom(&["gen", "--family", "figure1:3"], "");
    let out = indom(&["exact", "--budget-nodes", "2"], &String::from_utf8_lossy(&g.stdout));
    assert_eq!(out.status.code(), Some(2));
    assert!(json_lines(&out)[0]["i"].is_null());
}

#[test]
fn construct_record_shape() {
    let out = indom(&["construct", "--delta", "4"], "D?{\n");
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    for key in [
        "graph6",
        "delta",
        "size",
        "bound_num",
        "bound_den",
        "witness",
        "trace",
        "discrepancy",
    ] {
        assert!(rec.get(key).is_some(), "missing {key}");
    }
    assert_eq!(rec["size"], 1);
    assert_eq!(
        (rec["bound_num"].as_i64(), rec["bound_den"].as_i64()),
        (Some(5), Some(2))
    );
    assert_eq!(rec["discrepancy"], false);
    assert_eq!(rec["trace"]["steps"][0]["rule"], "lemma26-select");
}

#[test]
fn special_verdicts() {
    let h = String::from_utf8_lossy(&indom(&["gen", "--family", "h:3,2"], "").stdout).to_string();
    let out = indom(&["special", "--delta", "4"], &format!("{h}D?{{\n"));
    let recs = json_lines(&out);
    assert_eq!(recs[0]["verdict"], "special");
    assert_eq!(recs[0]["witness_size"], 5);
    assert_eq!(recs[1]["verdict"], "rejected");
    assert_eq!(recs[1]["reason"], "edge-with-no-cycle-end");
}

#[test]
fn enumerate_counts() {
    let out = indom(&["enumerate", "--max-n", "6"], "");
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).lines().count(),
        1 + 1 + 2 + 6 + 21 + 112
    );
}

#[test]
fn campaigns_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let out = indom(
        &[
            "verify-theorems",
            "--delta",
            "4",
            "--max-n",
            "6",
            "--jobs",
            "2",
            "--json",
            json.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["checked"], 109);
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("kind,graph6,claim,lhs,rhs,detail"));

    let out = indom(&["verify-corollary", "--delta", "5", "--max-n", "5"], "");
    assert_eq!(out.status.code(), Some(0));
    let out = indom(&["verify-lemmas", "--range", "50", "--max-n", "5"], "");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn rejected_input_exits_2_unless_allowed() {
    // K2 plus an isolated vertex is not connected
    let out = indom(&["verify-theorems", "--delta", "4", "--input", "-"], "B_\n");
    assert_eq!(out.status.code(), Some(2));
    let out = indom(
        &["verify-theorems", "--delta", "4", "--input", "-", "--allow-skipped"],
        "B_\n",
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dimacs_input() {
    let out = indom(&["exact", "--format", "dimacs"], "c path\np edge 3 2\ne 1 2\ne 2 3\n");
    assert_eq!(json_lines(&out)[0]["i"], 1);
}

#[test]
fn bad_input_is_an_error() {
    let out = indom(&["exact"], "not graph6 at all\n");
    assert_eq!(out.status.code(), Some(3));
    let out = indom(&["construct"], "D?{\n");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn seeded_generation_is_reproducible() {
    let args = [
        "gen",
        "--family",
        "special-random",
        "--delta",
        "4",
        "--count",
        "5",
        "--seed",
        "11",
    ];
    let a = indom(&args, "");
    let b = indom(&args, "");
    assert_eq!(a.stdout, b.stdout);
    let out = indom(&["special", "--delta", "4"], &String::from_utf8_lossy(&a.stdout));
    assert!(json_lines(&out).iter().all(|r| r["verdict"] == "special"));
}
