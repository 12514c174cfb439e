use std::path::{Path, PathBuf};
use std::process::Command;

use rdstab::analysis::{classify_pde_stability, find_equilibrium, SpectrumConfig};
use rdstab::cli::{config_hash, read_manifest, read_sweep_csv, read_table, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rdstab"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn analyze_lengyel_epstein() {
    let cfg = config("lengyel_epstein.cfg");
    let (code, out, _) = run(&["analyze", "--config", cfg.to_str().unwrap(), "--json"]);
    // the kinetics are not activator-inhibitor, so the Turing step reports
    // a precondition failure while everything else is still emitted
    assert_eq!(code, 2);
    let v = json(&out);
    let alpha = v["equilibrium"]["alpha"].as_f64().unwrap();
    assert!((alpha - 1.118).abs() < 1e-3);
    assert_eq!(v["global_verdict"], "GlobalPDE");
    assert_eq!(v["hypotheses"]["con6"]["holds"], true);
    assert!(v["turing"].is_null());
    assert!((v["bounds"]["C2_box"].as_f64().unwrap() - 32.25).abs() < 1e-9);
}

#[test]
fn analyze_fitzhugh_nagumo() {
    let cfg = config("fitzhugh_nagumo.cfg");
    let (_, out, _) = run(&["analyze", "--config", cfg.to_str().unwrap(), "--json"]);
    let v = json(&out);
    assert!((v["delta"].as_f64().unwrap() - 1.7282).abs() < 1e-3);
    assert!(v["bounds"].is_null());
    assert!(v["bounds_error"].as_str().unwrap().contains("phi'(0)"));
}

#[test]
fn analyze_turing_config_is_clean() {
    let cfg = config("turing.cfg");
    let (code, out, err) = run(&["analyze", "--config", cfg.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["turing"]["verdict"], "StableCase2");
    assert_eq!(v["turing"]["i_alpha"], 1);
    let (code, out, _) = run(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("StableCase2"));
}

#[test]
fn load_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "a = 5\n").unwrap();
    let (code, _, err) = run(&["analyze", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("preset"));
    let (code, _, _) = run(&[
        "analyze",
        "--config",
        dir.path().join("missing.cfg").to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["analyze"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn root_failure_exits_3() {
    // weak stimulus and a slow inhibitor: three equilibria on (0, δ)
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("multi.cfg");
    std::fs::write(&cfg, "preset = fitzhugh_nagumo\nstim = 0.01\ngamma = 10\n").unwrap();
    let (code, out, err) = run(&["analyze", "--config", cfg.to_str().unwrap(), "--json"]);
    assert_eq!(code, 3, "{err}");
    let v = json(&out);
    assert!(v["equilibrium"].is_null());
    assert!(v["status"].as_str().unwrap().contains("3 sign changes"));
}

#[test]
fn bounds_command() {
    let cfg = config("lengyel_epstein.cfg");
    let (code, out, _) = run(&[
        "bounds",
        "--config",
        cfg.to_str().unwrap(),
        "--u0",
        "3.8:4.2",
        "--v0",
        "2.8:3.2",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    let a = (125.0f64 / 4.0).sqrt();
    assert!((v["u2"].as_f64().unwrap() - a).abs() < 1e-9);
    assert!((v["v2"].as_f64().unwrap() - (1.0 + a * a)).abs() < 1e-9);
    assert!((v["v1"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let (code, _, _) = run(&["bounds", "--config", cfg.to_str().unwrap(), "--u0", "5:4"]);
    assert_eq!(code, 1);
}

#[test]
fn simulate_writes_reproducible_run() {
    let cfg = config("lengyel_epstein.cfg");
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let (code, _, err) = run(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--mode",
            "ode",
            "--tend",
            "100",
            "--dt-out",
            "1",
            "--out",
            out.to_str().unwrap(),
            "--svg",
        ]);
        assert_eq!(code, 0, "{err}");
    }
    for file in ["trajectory.csv", "diagnostics.csv", "plot.svg"] {
        assert_eq!(
            std::fs::read(a.join(file)).unwrap(),
            std::fs::read(b.join(file)).unwrap(),
            "{file}"
        );
    }

    let diag = read_table(&a.join("diagnostics.csv")).unwrap();
    assert_eq!(diag.header, ["t", "dist_sup", "in_rect", "V"]);
    assert_eq!(diag.rows.len(), 101);
    let dist = diag.column("dist_sup").unwrap();
    assert!(dist.last().unwrap().unwrap() < 1e-2);
    let traj = read_table(&a.join("trajectory.csv")).unwrap();
    assert_eq!(traj.header, ["t", "u", "v"]);

    let manifest = read_manifest(&a.join("run.json")).unwrap();
    assert_eq!(manifest.config_sha256, config_hash(&manifest.config));
    let reparsed = RunConfig::parse(&manifest.config).unwrap();
    assert_eq!(reparsed.hash(), manifest.config_sha256);
    assert_eq!(reparsed.scenario.t_end, Some(100.0));
    assert_eq!(manifest.global_verdict.as_deref(), Some("GlobalPDE"));
    assert_eq!(manifest.lyapunov_monotone, Some(true));
    assert!(std::fs::read_to_string(a.join("plot.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn simulate_pde_columns() {
    let cfg = config("fitzhugh_nagumo.cfg");
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--L",
        "20",
        "--n",
        "16",
        "--tend",
        "2",
        "--dt-out",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let t = read_table(&dir.path().join("trajectory.csv")).unwrap();
    assert_eq!(t.header.len(), 1 + 2 * 16);
    assert_eq!(t.header[1], "u_0");
    assert_eq!(t.header[17], "v_0");
    assert_eq!(t.rows.len(), 3);
}

#[test]
fn simulate_rejects_zero_horizon() {
    let cfg = config("lengyel_epstein.cfg");
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--tend",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("t_end"));
}

#[test]
fn sweep_d2_crosses_threshold() {
    let cfg_path = config("turing.cfg");
    let cfg = RunConfig::load(&cfg_path).unwrap();
    let spec = cfg.spec().unwrap();
    let eq = find_equilibrium(&spec).unwrap();
    let rep = classify_pde_stability(
        &spec,
        &eq,
        &SpectrumConfig::interval(cfg.scenario.length, 200),
    )
    .unwrap();
    let d_crit = rep.d_crit.unwrap();
    let values = format!(
        "{},{}",
        0.5 * spec.sigma * d_crit,
        2.0 * spec.sigma * d_crit
    );
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "sweep",
            "--config",
            cfg_path.to_str().unwrap(),
            "--axis",
            "d2",
            "--values",
            &values,
        ])
        .args(["--out", dir.path().to_str().unwrap()])
        .env("RDSTAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let rows = read_sweep_csv(&dir.path().join("sweep.csv")).unwrap();
    let verdicts: Vec<&str> = rows.iter().map(|r| r.verdict.as_str()).collect();
    assert_eq!(verdicts, ["StableCase2", "Unstable"]);
    for r in &rows {
        assert!((r.d_crit.unwrap() - d_crit).abs() < 1e-12);
        assert_eq!(r.status, "ok");
    }
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap()
    );
}

#[test]
fn sweep_con6_column_and_errors() {
    let cfg = config("lengyel_epstein.cfg");
    let (code, out, _) = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--axis",
        "a",
        "--values",
        "5.59,6.0",
        "--mode",
        "ode",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    let con6: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(4).unwrap())
        .collect();
    assert_eq!(con6, ["true", "false"]);

    let (code, _, _) = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--axis",
        "a",
        "--values",
        "",
    ]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--axis",
        "beta",
        "--values",
        "1",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("beta"));
    let (code, out, _) = run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--axis",
        "mu",
        "--values",
        "-1,1",
        "--mode",
        "ode",
    ]);
    assert_eq!(code, 0);
    let first = out.lines().nth(1).unwrap();
    assert!(!first.ends_with(",ok"), "{first}");
}
