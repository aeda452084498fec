use std::path::Path;
use std::process::{Command, Output};

fn vsheets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsheets")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn spectrum_table() {
    let o = vsheets(&["spectrum", "--sigma", "1", "--nmax", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# format=1"));
    assert_eq!(lines.next(), Some("n,det,frequency_or_growth,stable"));
    let dets: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(dets, vec![0.0, 3.0, 12.0, 30.0]);
    assert!(text.contains("1,0.0000000000000000e0,0.0000000000000000e0,false"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(vsheets(&["spectrum", "--sigma", "1", "--nmax", "0"]).status.code(), Some(2));
    assert_eq!(vsheets(&["branch", "--kind", "speed", "--m", "2", "--steps", "0"]).status.code(), Some(2));
    assert_eq!(vsheets(&["thresholds", "--kind", "sideways", "--m", "2"]).status.code(), Some(2));
    assert_eq!(vsheets(&["spectrum", "--sigma", "-1", "--nmax", "2"]).status.code(), Some(2));
}

#[test]
fn threshold_reports() {
    let o = vsheets(&["thresholds", "--kind", "speed", "--m", "2", "--sigma", "1", "--gamma", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("threshold = 8.6602540378443860e-1"));
    assert!(text.contains("threshold = -8.6602540378443860e-1"));
    assert!(text.contains("k2 = -2.5000000000000000e-1"));

    let o = vsheets(&["kernel", "--kind", "tension", "--m", "2", "--c", "1", "--gamma", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("threshold = 3.0000000000000000e0"));

    let o = vsheets(&["thresholds", "--kind", "vorticity", "--m", "2", "--sigma", "1", "--sign", "minus"]);
    assert!(stdout(&o).contains("threshold = -1.7320508075688772e0"));
}

#[test]
fn inadmissible_points_are_refused() {
    let o = vsheets(&["thresholds", "--kind", "speed", "--m", "1", "--sigma", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("refused:"));
    let o = vsheets(&["branch", "--kind", "speed", "--m", "1", "--sigma", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

fn branch_into(dir: &Path, seed: &str) -> Output {
    vsheets(&[
        "branch", "--kind", "speed", "--m", "2", "--sigma", "1", "--gamma", "0", "--steps", "5",
        "--out", dir.to_str().unwrap(), "--seed", seed,
    ])
}

#[test]
fn branch_file_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = branch_into(dir.path(), "1");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["status"], "ok");
    assert_eq!(summary["steps"], 5);
    assert!(summary["max_residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(summary["certification"]["certified"], true);
    let text = std::fs::read_to_string(dir.path().join("branch_speed_2_plus.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# format=1");
    assert!(lines[1].starts_with("# point kind=speed m=2 sign=plus"));
    assert_eq!(lines.len(), 3 + 5);
    for row in &lines[3..] {
        let residual: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(residual <= 1e-10);
    }
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(branch_into(a.path(), "7").status.success());
    assert!(branch_into(b.path(), "7").status.success());
    let name = "branch_speed_2_plus.csv";
    assert_eq!(std::fs::read(a.path().join(name)).unwrap(), std::fs::read(b.path().join(name)).unwrap());
}

#[test]
fn evolve_stationary_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = vsheets(&["branch", "--kind", "vorticity", "--m", "2", "--sigma", "1", "--steps", "4", "--out", out]);
    assert!(o.status.success());
    let input = dir.path().join("branch_vorticity_2_plus.csv");
    let o = vsheets(&["evolve", "--input", input.to_str().unwrap(), "--t-final", "0.1", "--stride", "20", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["max_shape_error"].as_f64().unwrap() <= 1e-7);
    let traj = std::fs::read_to_string(dir.path().join("trajectory_branch_vorticity_2_plus_row3.csv")).unwrap();
    assert!(traj.starts_with("# format=1\nt,"));
    assert_eq!(traj.lines().count(), 2 + 6);

    let big = vsheets(&["evolve", "--input", input.to_str().unwrap(), "--dt", "0.5"]);
    assert_eq!(big.status.code(), Some(2));
}

#[test]
fn missing_input_is_an_io_error() {
    let o = vsheets(&["evolve", "--input", "/nonexistent/branch.csv"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# defaults\nmodes = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    let bad = vsheets(&["--config", c, "verify", "--suite", "operators"]);
    assert_eq!(bad.status.code(), Some(2));
    let good = vsheets(&["--config", c, "--modes", "8", "verify", "--suite", "operators"]);
    assert!(good.status.success());
}

#[test]
fn verify_suites_report_per_check_lines() {
    for suite in ["operators", "velocity", "trivial"] {
        let o = vsheets(&["verify", "--suite", suite, "--seed", "11"]);
        assert!(o.status.success(), "{suite}");
        let text = stdout(&o);
        assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
        assert!(text.contains("measured=") && text.contains("tol="));
    }
}
