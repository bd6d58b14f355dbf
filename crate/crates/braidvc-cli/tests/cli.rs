//! End-to-end checks of the binary: exit codes, file formats, and the
//! machine-readable output round trip.

use std::path::Path;
use std::process::{Command, Output};

fn braidvc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidvc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_str().unwrap().to_string()
}

const K4: &str = "c complete graph\np edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";

#[test]
fn solve_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let k4 = write(tmp.path(), "k4.dimacs", K4);
    assert_eq!(
        braidvc(&["solve", &k4, "--budget", "3"], tmp.path())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        braidvc(&["solve", &k4, "--budget", "2"], tmp.path())
            .status
            .code(),
        Some(1)
    );

    let bad = write(tmp.path(), "bad.dimacs", "p edge 4 1\ne 0 5\n");
    let out = braidvc(&["solve", &bad, "--budget", "3"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("out of range at line 2"), "{}", stderr);
}

#[test]
fn permissive_degree_flag() {
    let tmp = tempfile::tempdir().unwrap();
    // a degree-5 star: rejected strictly, solvable permissively
    let star = write(
        tmp.path(),
        "star.dimacs",
        "p edge 6 5\ne 1 2\ne 1 3\ne 1 4\ne 1 5\ne 1 6\n",
    );
    let strict = braidvc(&["solve", &star, "--budget", "1"], tmp.path());
    assert_eq!(strict.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&strict.stderr).contains("degree 5"));
    let loose = braidvc(
        &["solve", &star, "--budget", "1", "--permissive-degree"],
        tmp.path(),
    );
    assert_eq!(loose.status.code(), Some(0));
}

#[test]
fn node_cap_exits_three() {
    let tmp = tempfile::tempdir().unwrap();
    // Petersen: infeasible at 5 requires more than 2 nodes
    let mut txt = String::from("p edge 10 15\n");
    for i in 0..5u32 {
        txt.push_str(&format!("e {} {}\n", i + 1, (i + 1) % 5 + 1));
        txt.push_str(&format!("e {} {}\n", i + 1, i + 6));
        txt.push_str(&format!("e {} {}\n", i + 6, (i + 2) % 5 + 6));
    }
    let p = write(tmp.path(), "petersen.dimacs", &txt);
    let out = braidvc(
        &["solve", &p, "--budget", "5", "--node-cap", "2"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn hit_slabs_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let diag = write(tmp.path(), "diag.pts", "1 1\n2 2\n3 3\n");
    assert_eq!(
        braidvc(&["hit-slabs", &diag, "--budget", "1"], tmp.path())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        braidvc(&["hit-slabs", &diag, "--budget", "0"], tmp.path())
            .status
            .code(),
        Some(1)
    );

    let dup = write(tmp.path(), "dup.pts", "1 1\n1.0 2\n");
    let out = braidvc(&["hit-slabs", &dup, "--budget", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points 0 and 1"));
}

#[test]
fn reduce_writes_files_and_ledger_sums() {
    let tmp = tempfile::tempdir().unwrap();
    let k4 = write(tmp.path(), "k4.dimacs", K4);
    let out = braidvc(
        &[
            "reduce", &k4, "--budget", "3", "--out", "red", "--format", "json",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let offset = report["offset"].as_u64().unwrap();
    let sum: u64 = report["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["budget_delta"].as_u64().unwrap())
        .sum();
    assert_eq!(sum, offset, "stage deltas must sum to the printed offset");
    assert_eq!(report["k_prime"].as_u64().unwrap(), 2 * 3 + offset);
    for ext in ["braid", "dimacs", "ledger.json"] {
        assert!(
            tmp.path().join(format!("red.{}", ext)).exists(),
            "missing red.{}",
            ext
        );
    }
    // the emitted braid verifies against the emitted graph
    let g = tmp.path().join("red.dimacs");
    let b = tmp.path().join("red.braid");
    let out = braidvc(
        &["verify", g.to_str().unwrap(), b.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reduce_rejects_non_cubic_with_diagnosis() {
    let tmp = tempfile::tempdir().unwrap();
    // Petersen minus one edge leaves two degree-2 vertices
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    edges.pop();
    let mut txt = format!("p edge 10 {}\n", edges.len());
    for (u, v) in edges {
        txt.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    let p = write(tmp.path(), "notcubic.dimacs", &txt);
    let out = braidvc(&["reduce", &p, "--out", "x"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 2"));
}

#[test]
fn reduce_then_solve_round_trips_the_budget() {
    let tmp = tempfile::tempdir().unwrap();
    let k4 = write(tmp.path(), "k4.dimacs", K4);
    let out = braidvc(
        &[
            "reduce", &k4, "--budget", "3", "--out", "red", "--format", "json",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let k_prime = report["k_prime"].as_u64().unwrap().to_string();
    let k_prime_less = (report["k_prime"].as_u64().unwrap() - 1).to_string();
    let braid_graph = tmp.path().join("red.dimacs");
    let braid_graph = braid_graph.to_str().unwrap();
    assert_eq!(
        braidvc(&["solve", braid_graph, "--budget", &k_prime], tmp.path())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        braidvc(
            &["solve", braid_graph, "--budget", &k_prime_less],
            tmp.path()
        )
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn bench_is_deterministic_and_empty_is_ok() {
    let tmp = tempfile::tempdir().unwrap();
    let args = [
        "bench", "--trials", "8", "--seed", "5", "--n-min", "4", "--n-max", "10",
    ];
    let a = braidvc(&args, tmp.path());
    let b = braidvc(&args, tmp.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let z = braidvc(&["bench", "--trials", "0"], tmp.path());
    assert_eq!(z.status.code(), Some(0));
}

#[test]
fn json_report_round_trips_and_witness_verifies() {
    let tmp = tempfile::tempdir().unwrap();
    let k4 = write(tmp.path(), "k4.dimacs", K4);
    let out = braidvc(
        &["solve", &k4, "--budget", "3", "--format", "json"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let report: braidvc_cli::report::SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.feasible);
    let witness: std::collections::BTreeSet<u32> = report.witness.unwrap().into_iter().collect();
    let g = braidvc_cli::dimacs::parse(K4).unwrap();
    assert!(braidvc_core::oracle::is_vertex_cover(&g, &witness));
    assert!(witness.len() as u32 <= report.budget);
}
