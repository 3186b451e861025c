//! End-to-end tests of the `oscnet` binary: the documented flag surface,
//! JSON schema, and exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn oscnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is JSON")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("oscnet-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file written");
    path
}

#[test]
fn entropy_complete_graph_matches_two_subset_form() {
    let out = oscnet(&[
        "entropy", "--family", "complete", "--params", "6", "--part-a", "0,1,2", "--g", "1",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let d_max = v["results"][0]["d"][0].as_f64().unwrap();
    // 2g sqrt(9) / sqrt((1+6g)^2) = 6/7 at g = 1.
    assert!((d_max - 6.0 / 7.0).abs() < 1e-12);
    assert_eq!(v["results"][0]["schmidt_rank"], 1);
}

#[test]
fn entropy_all_methods_agree_on_path() {
    let out = oscnet(&[
        "entropy", "--family", "path", "--params", "8", "--part-a", "0,1,2,3", "--g", "1",
        "--method", "all", "--format", "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 4, "direct, schur, oracle, closed_form");
    let max_dev = v["max_deviation"].as_f64().unwrap();
    assert!(max_dev < 1e-8, "max deviation {max_dev}");
}

#[test]
fn entropy_from_graph_file_at_zero_coupling() {
    let graph = write_temp("g.json", r#"{"n": 3, "edges": [[0,1],[1,2]]}"#);
    let out = oscnet(&[
        "entropy",
        "--graph",
        graph.to_str().unwrap(),
        "--part-a",
        "0",
        "--g",
        "0",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["results"][0]["total"].as_f64().unwrap(), 0.0);
    let _ = std::fs::remove_file(graph);
}

#[test]
fn entropy_partition_file_and_log_base() {
    let graph = write_temp("g2.json", r#"{"n": 2, "edges": [[0,1]]}"#);
    let part = write_temp("p2.json", r#"{"part_a": [0]}"#);
    let nats = oscnet(&[
        "entropy",
        "--graph",
        graph.to_str().unwrap(),
        "--partition",
        part.to_str().unwrap(),
        "--g",
        "0.5",
        "--format",
        "json",
    ]);
    let bits = oscnet(&[
        "entropy",
        "--graph",
        graph.to_str().unwrap(),
        "--partition",
        part.to_str().unwrap(),
        "--g",
        "0.5",
        "--log-base",
        "2",
        "--format",
        "json",
    ]);
    assert!(nats.status.success() && bits.status.success());
    let s_nats = json(&nats)["results"][0]["total"].as_f64().unwrap();
    let s_bits = json(&bits)["results"][0]["total"].as_f64().unwrap();
    assert!((s_nats - 0.27823866770789246).abs() < 1e-12);
    assert!((s_bits - s_nats / std::f64::consts::LN_2).abs() < 1e-12);
    let _ = std::fs::remove_file(graph);
    let _ = std::fs::remove_file(part);
}

#[test]
fn entropy_output_is_deterministic() {
    let args = [
        "entropy", "--family", "lollipop", "--params", "4,3", "--part-a", "0,1,2,3", "--g", "2.5",
        "--method", "all", "--format", "json",
    ];
    let a = oscnet(&args);
    let b = oscnet(&args);
    assert_eq!(stdout_str(&a), stdout_str(&b));
}

#[test]
fn sweep_single_edge_is_monotone_with_asymptote() {
    let out = oscnet(&[
        "sweep",
        "--family",
        "path",
        "--params",
        "2",
        "--part-a",
        "0",
        "--sweep",
        "0.01:1000000:17:log",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 17);
    let totals: Vec<f64> = rows.iter().map(|r| r["total"].as_f64().unwrap()).collect();
    assert!(totals.windows(2).all(|w| w[0] < w[1]), "S monotone in g");
    assert!(totals[0] < 1e-3, "S -> 0 at the weak-coupling end");
    // Single-edge split is a complete-connection shape, so the
    // asymptotic column is present, and S - ln(g)/2 flattens.
    let gs: Vec<f64> = rows.iter().map(|r| r["g"].as_f64().unwrap()).collect();
    assert!(rows.last().unwrap()["asymptotic_estimate"].is_f64());
    let shifted: Vec<f64> = totals
        .iter()
        .zip(&gs)
        .map(|(s, g)| s - 0.5 * g.ln())
        .collect();
    let tail_flat = (shifted[16] - shifted[15]).abs();
    assert!(tail_flat < 1e-3, "tail slope {tail_flat}");
}

#[test]
fn sweep_rejects_bad_specs() {
    for spec in ["1:2:3", "0:1:5:log", "1:2:0:log", "1:2:3:cubic"] {
        let out = oscnet(&[
            "sweep", "--family", "path", "--params", "2", "--part-a", "0", "--sweep", spec,
        ]);
        assert_eq!(out.status.code(), Some(2), "spec `{spec}`");
    }
}

#[test]
fn conductance_values_and_annotations() {
    let kite = oscnet(&["conductance", "--family", "kite", "--format", "json"]);
    assert!(kite.status.success());
    let v = json(&kite);
    assert_eq!(v["alpha"]["num"], 3);
    assert_eq!(v["alpha"]["den"], 2);

    let path = oscnet(&[
        "conductance",
        "--family",
        "path",
        "--params",
        "8",
        "--format",
        "json",
    ]);
    let v = json(&path);
    assert_eq!(v["alpha"]["num"], 1);
    assert_eq!(v["alpha"]["den"], 4);

    let star = oscnet(&[
        "conductance",
        "--family",
        "star",
        "--params",
        "4",
        "--with-entropy",
        "--g",
        "1",
        "--format",
        "json",
    ]);
    assert!(star.status.success());
    let v = json(&star);
    assert_eq!(v["alpha"]["num"], 1);
    assert_eq!(v["alpha"]["den"], 1);
    let argmin = v["argmin"].as_array().unwrap();
    assert!(argmin.len() > 1, "multiple minimizers");
    // The minimizers do not share one entropy value.
    let records = v["records"].as_array().unwrap();
    let entropy_of = |part: &serde_json::Value| -> f64 {
        records
            .iter()
            .find(|r| &r["part_a"] == part)
            .and_then(|r| r["entropy"].as_f64())
            .unwrap()
    };
    let entropies: Vec<f64> = argmin.iter().map(entropy_of).collect();
    let spread = entropies.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x))
        - entropies.iter().fold(f64::INFINITY, |m, &x| m.min(x));
    assert!(spread > 1e-3, "entropies differ across minimizers");
}

#[test]
fn verify_selected_criterion_is_deterministic() {
    let args = [
        "verify",
        "--criterion",
        "theorem1",
        "--trials",
        "50",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let a = oscnet(&args);
    assert!(a.status.success());
    let b = oscnet(&args);
    assert_eq!(stdout_str(&a), stdout_str(&b));
    let v = json(&a);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["criteria"][0]["name"], "theorem1");
}

#[test]
fn verify_perturbation_fails_with_exit_one() {
    let out = oscnet(&[
        "verify",
        "--criterion",
        "oracle-equivalence",
        "--trials",
        "5",
        "--inject-perturbation",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_str(&out).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    // No graph source.
    let out = oscnet(&["entropy", "--part-a", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown family.
    let out = oscnet(&[
        "entropy", "--family", "moebius", "--params", "4", "--part-a", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Invalid partition.
    let out = oscnet(&[
        "entropy", "--family", "path", "--params", "4", "--part-a", "0,1,2,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Negative coupling.
    let out = oscnet(&[
        "entropy", "--family", "path", "--params", "4", "--part-a", "0", "--g", "-1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Closed form requested where none applies.
    let out = oscnet(&[
        "entropy",
        "--family",
        "cycle",
        "--params",
        "6",
        "--part-a",
        "0,1,2",
        "--method",
        "closed-form",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Oversized conductance enumeration.
    let out = oscnet(&["conductance", "--family", "path", "--params", "24"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn closed_form_family_shortcuts() {
    // Mid-cut even path uses the continued-fraction value.
    let out = oscnet(&[
        "entropy",
        "--family",
        "path",
        "--params",
        "8",
        "--part-a",
        "4,5,6,7",
        "--method",
        "closed-form",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    let d = v["results"][0]["d"][0].as_f64().unwrap();
    // chain(4) at g=1: c1=3, c2=5-4/3, c3=5-4/c2, c4=5-4/c3; d=2/c4.
    let c2 = 5.0 - 4.0 / 3.0;
    let c3 = 5.0 - 4.0 / c2;
    let c4: f64 = 5.0 - 4.0 / c3;
    assert!((d - 2.0 / c4).abs() < 1e-12);

    // Lollipop bridge cut.
    let out = oscnet(&[
        "entropy",
        "--family",
        "lollipop",
        "--params",
        "5,4",
        "--part-a",
        "0,1,2,3,4",
        "--method",
        "closed-form",
        "--format",
        "json",
    ]);
    assert!(out.status.success());

    // Star leaf split resolves through the complete-connection shape.
    let out = oscnet(&[
        "entropy",
        "--family",
        "star",
        "--params",
        "6",
        "--part-a",
        "1,2",
        "--method",
        "closed-form",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
}
