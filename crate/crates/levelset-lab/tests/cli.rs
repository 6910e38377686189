//! End-to-end checks of the command-line interface: exit codes, emitted file
//! formats, and the documented subcommand surfaces.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_levelset-lab"))
}

fn write(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn usage_error_is_exit_code_two() {
    let out = bin().arg("no-such-subcommand").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_config_is_exit_code_two_with_line_info() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", "{\"experiment\":\n \"oops\"}");
    let out = bin().arg("run").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "no line diagnostics: {err}");
}

#[test]
fn infeasible_parameters_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "polar.json",
        r#"{"experiment":"zero-level-dim","model":{"family":"stable","alpha":0.9},"paths":2,"steps":1024}"#,
    );
    let out = bin()
        .arg("zero-level-dim")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("polar"), "missing rejection reason: {err}");
}

#[test]
fn gate_failure_is_exit_code_one() {
    let dir = tempfile::tempdir().unwrap();
    // absurdly tight tolerance with a tiny budget: the gate must fail
    let cfg = write(
        dir.path(),
        "tight.json",
        r#"{"experiment":"zero-level-dim","model":{"family":"stable","alpha":1.5},
            "paths":2,"steps":4096,"tolerance":1e-9}"#,
    );
    let out = bin()
        .arg("run")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn symbol_report_emits_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "sym.json",
        r#"{"experiment":"symbol-report","model":{"family":"stable","alpha":1.5},
            "r_min":0.01,"r_max":100.0,"nodes_per_decade":6}"#,
    );
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["symbol", "report", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(out_dir.join("symbol.csv")).unwrap();
    assert!(csv.starts_with("r,q,qU,qL,qstar\n"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap())
            .unwrap();
    assert!(summary["results"]["kappa"].is_number());
    assert!(summary["results"]["beta_fit"].is_number());
    assert!(summary["config_hash"].is_string());
}

#[test]
fn indices_flag_surface_matches_contract() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "model.json",
        r#"{"family":"stable","alpha":1.5,"n":1,"intensity":1.0}"#,
    );
    let out_dir = dir.path().join("out");
    let out = bin()
        .arg("indices")
        .arg("--model")
        .arg(&model)
        .args(["--d", "0.6309", "--n", "1"])
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap())
            .unwrap();
    for key in ["gamma_star", "gamma_inf", "gamma_sup", "dim_lower", "dim_upper"] {
        assert!(summary["results"][key].is_number(), "missing {key}");
    }
    let gi = summary["results"]["gamma_inf"].as_f64().unwrap();
    assert!((gi - (1.0 - 0.6309) / 1.5).abs() < 0.01);
}

#[test]
fn simulate_then_dim_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sim_cfg = write(
        dir.path(),
        "sim.json",
        r#"{"scheme":{"kind":"symmetric-stable","alpha":1.5},
            "dt":0.00006103515625,"steps":16384,"paths":1,"seed":11,"format":"both"}"#,
    );
    let out_dir = dir.path().join("paths");
    let out = bin()
        .arg("simulate")
        .arg("--config")
        .arg(&sim_cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // binary header: magic + version + dim + dt + nodes
    let bin_file = out_dir.join("path-0000.bin");
    let bytes = std::fs::read(&bin_file).unwrap();
    assert_eq!(&bytes[0..4], b"LVLB");
    let dim = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    assert_eq!(dim, 1);
    let nodes = u64::from_le_bytes(bytes[20..28].try_into().unwrap());
    assert_eq!(nodes, 16385);

    // csv body: t,x1 with one row per node
    let csv = std::fs::read_to_string(out_dir.join("path-0000.csv")).unwrap();
    assert!(csv.starts_with("t,x1\n"));
    assert_eq!(csv.lines().count(), 16386);

    // dim subcommand on the stored path
    let dim_cfg = write(
        dir.path(),
        "dim.json",
        &format!(
            r#"{{"input":{:?},"target":{{"kind":"dirac","atom":0.0}},"method":"box"}}"#,
            bin_file
        ),
    );
    let dim_out = dir.path().join("dim_out");
    let out = bin()
        .arg("dim")
        .arg("--config")
        .arg(&dim_cfg)
        .arg("--out")
        .arg(&dim_out)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let scales = std::fs::read_to_string(dim_out.join("scales.csv")).unwrap();
    assert!(scales.starts_with("k,log2_count\n"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dim_out.join("dim.json")).unwrap()).unwrap();
    let est = summary["estimate"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&est));
}

#[test]
fn rerun_with_same_seed_is_byte_identical_across_worker_env() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "exp.json",
        r#"{"experiment":"zero-level-dim","model":{"family":"stable","alpha":1.5},
            "paths":4,"steps":16384,"seed":5}"#,
    );
    let mut bodies = Vec::new();
    for workers in ["1", "2", "8"] {
        let out_dir = dir.path().join(format!("out{workers}"));
        let out = bin()
            .arg("run")
            .arg("--config")
            .arg(&cfg)
            .arg("--out")
            .arg(&out_dir)
            .env("LEVELSET_LAB_THREADS", workers)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        bodies.push(std::fs::read(out_dir.join("paths.csv")).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    assert_eq!(bodies[0], bodies[2]);
}

#[test]
fn mismatched_subcommand_and_config_tag_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cls.json",
        r#"{"experiment":"classify","model":{"family":"stable","alpha":1.5}}"#,
    );
    let out = bin()
        .arg("zero-level-dim")
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
