use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frictionless")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows only, split into fields.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

fn col(text: &str, name: &str) -> Vec<f64> {
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    let i = header.split(',').position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows(text).iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn design_hits_the_boundary_values() {
    let text = stdout(&run(&["design", "--tf-ms", "6", "--samples", "101"]));
    assert!(text.starts_with("# frictionless "));
    let b = col(&text, "b");
    assert_eq!(b.len(), 101);
    assert!((b[0] - 1.0).abs() < 1e-12);
    assert!((b[100] - 10.0).abs() < 1e-11);
    let w2 = col(&text, "omega_sq_rad2_s2");
    let w0 = 2.0 * std::f64::consts::PI * 250.0;
    assert!((w2[0] / (w0 * w0) - 1.0).abs() < 1e-9);
    assert!((w2[100] / (w0 * w0 / 1e4) - 1.0).abs() < 1e-9);
}

#[test]
fn short_designs_pass_through_an_expulsive_trap() {
    let w2 = col(&stdout(&run(&["design", "--tf-ms", "2", "--samples", "200"])), "omega_sq_rad2_s2");
    assert!(w2.iter().any(|&w| w < 0.0));
    let w2 = col(&stdout(&run(&["design", "--tf-ms", "25", "--samples", "200"])), "omega_sq_rad2_s2");
    assert!(w2.iter().all(|&w| w > 0.0));
}

#[test]
fn simulate_ends_in_the_target_levels() {
    let text = stdout(&run(&["simulate", "--tf-ms", "6", "--n", "0", "--n", "3", "--samples", "50"]));
    let e0 = col(&text, "energy_n0_over_hbar_omega0");
    let e3 = col(&text, "energy_n3_over_hbar_omega0");
    assert!((e0[0] - 0.5).abs() < 1e-12 && (e3[0] - 3.5).abs() < 1e-12);
    assert!((e0[49] - 0.005).abs() < 1e-9);
    assert!((e3[49] - 0.035).abs() < 1e-9);
}

#[test]
fn simulate_verify_reports_fidelity() {
    let text = stdout(&run(&["simulate", "--tf-ms", "25", "--verify", "--samples", "3"]));
    let line = text.lines().find(|l| l.starts_with("# verify n=0")).expect("verify footer");
    let field = |key: &str| -> f64 {
        line.split_whitespace().find_map(|w| w.strip_prefix(key)).unwrap().parse().unwrap()
    };
    assert!(field("fidelity_final=") > 0.9999);
    assert!(field("p_0=") > 0.9999);
}

#[test]
fn bangbang_summary_matches_the_reference_plan() {
    let text = stdout(&run(&["bangbang", "--samples", "11"]));
    let summary = text.lines().find(|l| l.starts_with("# bangbang")).unwrap();
    let field = |key: &str| -> f64 {
        summary.split_whitespace().find_map(|w| w.strip_prefix(key)).unwrap().parse().unwrap()
    };
    assert!((field("tf_s=") - 2.0921e-3).abs() < 1e-7);
    assert!((field("tau1_s=") - 1.6249e-3).abs() < 1e-7);
    assert!((field("t_min_s=") - 6.3343e-3).abs() < 1e-7);
    assert!(field("tf_over_t_min=") < 1.0);
    let b = col(&text, "b");
    assert!((b[0] - 1.0).abs() < 1e-12 && (b[10] - 10.0).abs() < 1e-9);
}

#[test]
fn reference_ramps_approach_the_adiabatic_limit() {
    let text = stdout(&run(&["reference", "--ramp", "uniform", "--tf-min-ms", "10", "--tf-max-ms", "10000", "--tf-steps", "4"]));
    let excess = col(&text, "relative_excess");
    assert_eq!(excess.len(), 4);
    assert!(excess[3] < excess[0]);
    assert!(excess[3] < 1e-2);
}

#[test]
fn sweep_leaves_margin_empty_when_the_trap_inverts() {
    let text = stdout(&run(&["sweep", "--tf-list-ms", "2,25", "--n", "0", "--n", "1", "--samples", "300"]));
    let r = rows(&text);
    assert_eq!(r.len(), 4);
    assert_eq!((r[0][0].parse::<f64>().unwrap(), r[0][1].as_str()), (2e-3, "0"));
    assert!(r[0][6].is_empty() && r[0][3].is_empty());
    assert!(r[3][6].parse::<f64>().unwrap() > 0.0);
    assert!((r[3][2].parse::<f64>().unwrap() - 0.015).abs() < 1e-9);
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--tf-list-ms", "2,6,25", "--n", "0", "--n", "2", "--samples", "100"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn config_values_yield_to_the_command_line() {
    let dir = std::env::temp_dir().join(format!("frictionless-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "# trap\ntf-ms = 6\nsamples = 7\nomegaf-hz = 5\n").unwrap();
    let p = path.to_str().unwrap();
    let text = stdout(&run(&["design", "--config", p, "--samples", "3"]));
    let t = col(&text, "t_s");
    assert_eq!(t.len(), 3);
    assert!((t[2] - 6e-3).abs() < 1e-15);
    assert!((col(&text, "b")[2] - 50f64.sqrt()).abs() < 1e-9);

    let out = dir.join("out.csv");
    assert!(run(&["design", "--config", p, "--out", out.to_str().unwrap()]).status.success());
    assert_eq!(rows(&std::fs::read_to_string(&out).unwrap()).len(), 7);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_follow_the_failure_class() {
    assert_eq!(run(&["design", "--omegaf-hz", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["design", "--tf-ms", "0"]).status.code(), Some(2));
    assert_eq!(run(&["design", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(run(&["design", "--ansatz", "phase"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--tf-list-ms", ""]).status.code(), Some(2));
    assert_eq!(run(&["design", "--config", "/nonexistent/run.toml"]).status.code(), Some(2));
    assert_eq!(run(&["bangbang", "--omega2-frac", "0.005"]).status.code(), Some(3));
    let squeezed = ["simulate", "--verify", "--grid-points", "512", "--grid-halfwidth", "2e-6", "--samples", "2"];
    assert_eq!(run(&squeezed).status.code(), Some(4));
}
