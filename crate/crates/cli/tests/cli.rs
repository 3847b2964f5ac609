use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aoi-sched"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const TWO_LINK: &str = r#"{
  "name": "two-link-short",
  "network": {"gamma": [0.5, 0.5]},
  "interference": {"type": "k_of_n", "k": 1},
  "policies": [{"kind": "stationary_optimal"}, {"kind": "priority"}, {"kind": "virtual_queue", "v": 1.0}],
  "horizon": 5000,
  "seeds": [1, 2]
}"#;

#[test]
fn simulate_writes_reproducible_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", TWO_LINK);
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for out in [&csv_a, &csv_b] {
        let status = bin().arg("simulate").arg(&cfg).arg("--out").arg(out).output().unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    }
    let a = std::fs::read(&csv_a).unwrap();
    assert_eq!(a, std::fs::read(&csv_b).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 2);
    assert!(text.lines().next().unwrap().starts_with("sweep_variable,sweep_value,policy,seed,slot"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.summary.json")).unwrap()).unwrap();
    assert!((summary["bounds"][0]["peak_opt_unknown"].as_f64().unwrap() - 8.0).abs() < 1e-6);
}

#[test]
fn bounds_prints_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", TWO_LINK);
    let out = bin().arg("bounds").arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v[0]["report"];
    assert!((r["peak_opt_unknown"].as_f64().unwrap() - 8.0).abs() < 1e-6);
    assert!((r["peak_opt_known"].as_f64().unwrap() - 16.0 / 3.0).abs() < 1e-5);
    assert!((r["avg_age_lower_bound"].as_f64().unwrap() - 11.0 / 3.0).abs() < 1e-5);
    assert!((r["theorem2_bound"].as_f64().unwrap() - 22.0 / 3.0).abs() < 1e-5);
}

#[test]
fn bounds_on_large_instance_marks_known_not_computed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"network": {"links": 20, "gamma_good": 0.9, "gamma_bad": 0.1, "n_bad": 5},
            "interference": {"type": "k_of_n", "k": 5},
            "policies": [{"kind": "stationary_optimal"}],
            "horizon": 10, "seeds": [1]}"#,
    );
    let out = bin().arg("bounds").arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v[0]["report"];
    assert!((r["peak_opt_unknown"].as_f64().unwrap() - 200.0).abs() < 1e-4);
    assert_eq!(r["peak_opt_known"], "not computed: N too large");
    assert!((r["avg_age_lower_bound"].as_f64().unwrap() - 110.0).abs() < 1e-4);
}

#[test]
fn config_errors_exit_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", "{\n  \"network\": {\"gamma\": [0.5]},\n  \"oops\": 1\n}");
    let out = bin().arg("simulate").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn unschedulable_exit_3_names_link() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"network": {"gamma": [0.5, 0.5]},
            "interference": {"type": "explicit_sets", "sets": [[1]]},
            "policies": [{"kind": "stationary_optimal"}],
            "horizon": 10, "seeds": [1]}"#,
    );
    let out = bin().arg("bounds").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("link 0"));
}

#[test]
fn non_convergence_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"network": {"links": 20, "gamma_good": 0.9, "gamma_bad": 0.1, "n_bad": 5},
            "interference": {"type": "k_of_n", "k": 5},
            "policies": [{"kind": "stationary_optimal"}],
            "horizon": 10, "seeds": [1],
            "solver": {"max_iterations": 1, "gap_tolerance": 1e-15}}"#,
    );
    let out = bin().arg("simulate").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn diagnose_reports_pass() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", TWO_LINK);
    let out = bin().arg("diagnose").arg(&cfg).arg("--beta").arg("-2").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with("pass")).count(), 6);
}

#[test]
fn preset_runs_with_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["preset", "two-link", "--seeds", "1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("two-link.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 5);
    let unknown = bin().args(["preset", "fig99"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
}
