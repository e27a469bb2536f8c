//! End-to-end tests of the `prnopt` binary: artifact shape, exit codes,
//! format round-trips, and cross-checks between `optimize` and `evaluate`.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn prnopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prnopt"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn optimize_artifacts_are_consistent_with_evaluate() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run");
    let res = prnopt(&[
        "optimize",
        "--n",
        "3",
        "--length",
        "16",
        "--p",
        "4",
        "--strategy",
        "greedy",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        res.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&res.stderr)
    );

    let summary = read_json(&out.join("summary.json"));
    assert_eq!(summary["n"], 3);
    assert_eq!(summary["strategy"], "greedy");
    assert_eq!(summary["best"]["termination"], "local-optimum");
    let final_objective = summary["best"]["final_objective"].as_f64().unwrap();
    let initial = summary["best"]["initial_objective"].as_f64().unwrap();
    assert!(final_objective < initial);

    // The written codes evaluate to exactly the objective the summary
    // reports: both paths recompute from exact integer correlations.
    let eval = prnopt(&[
        "evaluate",
        out.join("codes.csv").to_str().unwrap(),
        "--p",
        "4",
    ]);
    assert!(eval.status.success());
    let report = stdout_json(&eval);
    assert_eq!(report["objective"].as_f64().unwrap(), final_objective);
    assert_eq!(report["t"], 16);

    // The trace is line-delimited JSON with a non-increasing objective.
    let trace = fs::read_to_string(out.join("trace.jsonl")).unwrap();
    let mut last = f64::INFINITY;
    let mut accepted = 0;
    for line in trace.lines() {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        let objective = rec["objective"].as_f64().unwrap();
        assert!(objective <= last);
        last = objective;
        accepted += rec["accepted"].as_bool().unwrap() as u64;
    }
    assert_eq!(accepted, summary["best"]["flips_accepted"].as_u64().unwrap());
}

#[test]
fn packed_binary_round_trips_through_evaluate() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run");
    let res = prnopt(&[
        "optimize",
        "--n",
        "2",
        "--length",
        "12",
        "--strategy",
        "fixed",
        "--search-size",
        "6",
        "--seed",
        "3",
        "--max-iters",
        "150",
        "--format",
        "prn",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let summary = read_json(&out.join("summary.json"));
    let eval = prnopt(&["evaluate", out.join("codes.prn").to_str().unwrap()]);
    assert!(eval.status.success());
    let report = stdout_json(&eval);
    assert_eq!(
        report["objective"].as_f64().unwrap(),
        summary["best"]["final_objective"].as_f64().unwrap()
    );
}

#[test]
fn constrained_optimize_produces_feasible_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run");
    let res = prnopt(&[
        "optimize",
        "--n",
        "2",
        "--length",
        "8",
        "--balanced",
        "--acz",
        "--strategy",
        "fixed",
        "--search-size",
        "8",
        "--max-iters",
        "300",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        res.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&res.stderr)
    );
    let eval = prnopt(&["evaluate", out.join("codes.csv").to_str().unwrap()]);
    let report = stdout_json(&eval);
    assert_eq!(report["constraints"]["balanced_ok"], true);
    assert_eq!(report["constraints"]["acz_ok"], true);
}

#[test]
fn restarts_are_reported_per_run() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run");
    let res = prnopt(&[
        "optimize",
        "--n",
        "2",
        "--length",
        "8",
        "--strategy",
        "fixed",
        "--search-size",
        "4",
        "--max-iters",
        "100",
        "--restarts",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let summary = read_json(&out.join("summary.json"));
    let restarts = summary["restart_summaries"].as_array().unwrap();
    assert_eq!(restarts.len(), 3);
    let best_restart = summary["best_restart"].as_u64().unwrap();
    assert!(best_restart < 3);
    let best = summary["best"]["final_objective"].as_f64().unwrap();
    for r in restarts {
        assert!(best <= r["final_objective"].as_f64().unwrap());
    }
    // Trace records carry the restart index; every restart that accepted a
    // flip must appear (rejection-only runs may emit nothing but heartbeats).
    let trace = fs::read_to_string(out.join("trace.jsonl")).unwrap();
    let seen: std::collections::HashSet<u64> = trace
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["restart"]
            .as_u64()
            .unwrap())
        .collect();
    for (i, r) in restarts.iter().enumerate() {
        if r["flips_accepted"].as_u64().unwrap() > 0 {
            assert!(seen.contains(&(i as u64)), "restart {i} missing from trace");
        }
    }
}

#[test]
fn evaluate_reports_known_values_for_a_fixture() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("pair.csv");
    fs::write(&path, "1,1,1,-1\n1,-1,1,1\n").unwrap();
    let eval = prnopt(&["evaluate", path.to_str().unwrap(), "--p", "6"]);
    assert!(eval.status.success());
    let report = stdout_json(&eval);
    // The second row is the first circularly shifted by two, so the
    // cross-correlation peaks at |U| = T and the objective is dominated
    // by that single unit-magnitude term.
    assert_eq!(report["objective"].as_f64().unwrap(), 1.0);
    assert_eq!(report["correlation"]["max_abs"].as_f64().unwrap(), 1.0);
    assert_eq!(report["correlation"]["count"].as_u64().unwrap(), 10);
    // Both rows sum to 2 (unbalanced) but have zero shift-1 autocorrelation.
    assert_eq!(report["constraints"]["balanced_ok"], false);
    assert_eq!(report["constraints"]["acz_ok"], true);
    assert_eq!(report["constraints"]["codes"][0]["row_sum"], 2);
    assert_eq!(report["constraints"]["codes"][0]["shift1_autocorr"], 0);
}

#[test]
fn evaluate_single_all_ones_code() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("ones.csv");
    fs::write(&path, "1,1,1,1,1\n").unwrap();
    let report = stdout_json(&prnopt(&["evaluate", path.to_str().unwrap()]));
    // Every nonzero-shift autocorrelation of the constant code is T.
    assert_eq!(report["correlation"]["max_abs"].as_f64().unwrap(), 1.0);
    assert_eq!(report["correlation"]["count"].as_u64().unwrap(), 4);
}

#[test]
fn usage_errors_exit_1() {
    let missing = prnopt(&["optimize", "--n", "3", "--out", "/tmp/unused"]);
    assert_eq!(missing.status.code(), Some(1));

    let unknown = prnopt(&["optimize", "--preset", "nonsense", "--out", "/tmp/unused"]);
    assert_eq!(unknown.status.code(), Some(1));

    let neither = prnopt(&["optimize", "--out", "/tmp/unused"]);
    assert_eq!(neither.status.code(), Some(1));

    let absent = prnopt(&["evaluate", "/definitely/not/a/file.csv"]);
    assert_eq!(absent.status.code(), Some(1));

    let bad_p = prnopt(&[
        "optimize",
        "--n",
        "2",
        "--length",
        "4",
        "--p",
        "0.5",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(bad_p.status.code(), Some(1));

    let bad_limit = prnopt(&[
        "optimize",
        "--n",
        "2",
        "--length",
        "4",
        "--time-limit",
        "-3",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(bad_limit.status.code(), Some(1));
}

#[test]
fn infeasible_constraint_systems_exit_2() {
    // Balance needs even T; the gps-l1ca preset has T = 1023.
    let odd_balanced = prnopt(&[
        "optimize",
        "--preset",
        "gps-l1ca",
        "--balanced",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(odd_balanced.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&odd_balanced.stderr).to_lowercase();
    assert!(msg.contains("infeasible"), "stderr: {msg}");

    // A zero shift-1 autocorrelation is parity-impossible for T ≡ 2 (mod 4).
    let acz_bad_t = prnopt(&[
        "optimize",
        "--n",
        "2",
        "--length",
        "6",
        "--acz",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(acz_bad_t.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(prnopt(&["--help"]).status.code(), Some(0));
    assert_eq!(prnopt(&["optimize", "--help"]).status.code(), Some(0));
    assert_eq!(prnopt(&["--version"]).status.code(), Some(0));
}

#[test]
fn benchmark_suites_write_tables_and_traces() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bench");
    let res = prnopt(&[
        "benchmark",
        "--n",
        "3",
        "--length",
        "16",
        "--suite",
        "m-sweep",
        "--m-grid",
        "1,4",
        "--budget",
        "2",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        res.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&res.stderr)
    );
    let table = fs::read_to_string(out.join("m-sweep.csv")).unwrap();
    assert_eq!(table.lines().count(), 3);
    assert!(table.starts_with("m,"));
    assert!(out.join("trace-fixed-1.jsonl").exists());
    assert!(out.join("trace-fixed-4.jsonl").exists());

    let report = read_json(&out.join("benchmark.json"));
    assert_eq!(report["suite"], "m-sweep");
    let runs = report["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    // Shared initialization: every run starts from the same objective.
    let f0 = runs[0]["summary"]["initial_objective"].as_f64().unwrap();
    assert_eq!(runs[1]["summary"]["initial_objective"].as_f64().unwrap(), f0);
}

#[test]
fn p_sweep_emits_histograms() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bench");
    let res = prnopt(&[
        "benchmark",
        "--n",
        "2",
        "--length",
        "16",
        "--suite",
        "p-sweep",
        "--budget",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    for p in ["p2", "p4", "p6"] {
        let hist = fs::read_to_string(out.join(format!("hist-{p}.csv"))).unwrap();
        // Header plus one row per bin.
        assert_eq!(hist.lines().count(), 202);
    }
    let table = fs::read_to_string(out.join("p-sweep.csv")).unwrap();
    assert_eq!(table.lines().count(), 4);
}

#[test]
fn benchmark_rejects_a_useless_budget() {
    let zero = prnopt(&[
        "benchmark",
        "--n",
        "2",
        "--length",
        "8",
        "--suite",
        "m-sweep",
        "--budget",
        "0",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(zero.status.code(), Some(1));
}
