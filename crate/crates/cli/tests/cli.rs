//! End-to-end tests driving the `padplan` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_padplan"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("padplan-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn generate_solve_verify_pipeline_succeeds() {
    let dir = tmp_dir("pipeline");
    let scn = dir.join("s.json");
    let dep = dir.join("d.json");

    let out = run(bin()
        .args([
            "generate", "--n", "200", "--side", "16000", "--bs", "center",
        ])
        .args(["--seed", "7", "-o"])
        .arg(&scn));
    assert!(out.status.success(), "{out:?}");

    let out = run(bin()
        .args(["solve", "--algo", "cdc-dsc", "--scenario"])
        .arg(&scn)
        .arg("-o")
        .arg(&dep));
    assert!(out.status.success(), "{out:?}");
    assert!(stdout_of(&out).contains("PADs"));

    let out = run(bin().arg("verify").arg(&scn).arg(&dep));
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout_of(&out).starts_with("OK"));

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_reports_violations_with_exit_one() {
    let dir = tmp_dir("violation");
    let scn = dir.join("s.json");
    let dep = dir.join("d.json");

    run(bin()
        .args([
            "generate", "--n", "50", "--side", "16000", "--seed", "3", "-o",
        ])
        .arg(&scn));
    // A BS-only deployment cannot cover a 16 km field.
    fs::write(
        &dep,
        r#"{"d_cover": 2828.0, "d_max": 6500.0, "stations": [[8000.0, 8000.0]]}"#,
    )
    .unwrap();

    let out = run(bin().arg("verify").arg(&scn).arg(&dep));
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(stdout_of(&out).contains("uncovered nodes"));

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_algorithm_is_a_usage_error() {
    let dir = tmp_dir("badalgo");
    let scn = dir.join("s.json");
    run(bin()
        .args([
            "generate", "--n", "10", "--side", "1000", "--seed", "1", "-o",
        ])
        .arg(&scn));

    let out = run(bin()
        .args(["solve", "--algo", "tnc", "--scenario"])
        .arg(&scn));
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn degenerate_arguments_are_usage_errors() {
    let dir = tmp_dir("badargs");
    let scn = dir.join("s.json");

    let out = run(bin().args(["generate", "--n", "0", "-o"]).arg(&scn));
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = run(bin().args(["generate", "--side", "0", "-o"]).arg(&scn));
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    run(bin()
        .args([
            "generate", "--n", "10", "--side", "1000", "--seed", "1", "-o",
        ])
        .arg(&scn));
    let out = run(bin()
        .args(["solve", "--algo", "cdc-dsc", "--d-delta", "0", "--scenario"])
        .arg(&scn));
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = run(bin()
        .args(["solve", "--algo", "cdc-dsc", "--alpha", "-1", "--scenario"])
        .arg(&scn));
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn cli_flags_override_config_file_values() {
    let dir = tmp_dir("precedence");
    let scn = dir.join("s.json");
    let cfg = dir.join("cfg.json");
    let dep = dir.join("d.json");

    run(bin()
        .args([
            "generate", "--n", "20", "--side", "4000", "--seed", "5", "-o",
        ])
        .arg(&scn));
    // Config file drops the battery; d_max in the output shows which value
    // won each layer.
    fs::write(&cfg, r#"{"uav": {"e_max": 60000.0, "v_u": 10.0, "p_mov": 120.0, "p_blade": 80.0, "p_induced": 70.0, "delta": 60.0, "e_node": 338.4, "eta": 0.3}}"#).unwrap();

    let out = run(bin()
        .args(["solve", "--algo", "dc", "--scenario"])
        .arg(&scn)
        .arg("--config")
        .arg(&cfg)
        .arg("-o")
        .arg(&dep));
    assert!(out.status.success(), "{out:?}");
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&dep).unwrap()).unwrap();
    assert_eq!(parsed["d_max"].as_f64().unwrap(), 5000.0);

    let out = run(bin()
        .args(["solve", "--algo", "dc", "--scenario"])
        .arg(&scn)
        .arg("--config")
        .arg(&cfg)
        .args(["--e-max", "78000", "-o"])
        .arg(&dep));
    assert!(out.status.success(), "{out:?}");
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&dep).unwrap()).unwrap();
    assert_eq!(parsed["d_max"].as_f64().unwrap(), 6500.0);

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn emit_stages_writes_the_pipeline_snapshots() {
    let dir = tmp_dir("stages");
    let scn = dir.join("s.json");
    let stages = dir.join("stages");

    run(bin()
        .args([
            "generate", "--n", "120", "--side", "16000", "--seed", "2", "-o",
        ])
        .arg(&scn));
    let out = run(bin()
        .args(["solve", "--algo", "cdc-dsc", "--scenario"])
        .arg(&scn)
        .arg("--emit-stages")
        .arg(&stages));
    assert!(out.status.success(), "{out:?}");
    for name in [
        "01-post-clustering.json",
        "02-post-coverage.json",
        "03-post-connectivity.json",
        "04-post-prune.json",
        "05-post-shift.json",
        "06-post-combine.json",
    ] {
        assert!(stages.join(name).exists(), "missing stage file {name}");
    }

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_writes_csv_and_charts_and_reruns_identically() {
    let dir = tmp_dir("sweep");
    let spec = dir.join("spec.json");
    let csv_a = dir.join("a.csv");
    let csv_b = dir.join("b.csv");
    let svg = dir.join("chart.svg");

    fs::write(
        &spec,
        r#"{
            "swept_parameter": "region_side",
            "values": [6000, 10000],
            "distribution": "uniform",
            "bs_mode": "center",
            "algorithms": ["cdc-dsc", "dc"],
            "trials": 2,
            "base_seed": 9,
            "node_count": 40
        }"#,
    )
    .unwrap();

    let out = run(bin()
        .args(["sweep", "--spec"])
        .arg(&spec)
        .arg("-o")
        .arg(&csv_a)
        .arg("--charts")
        .arg(&svg));
    assert!(out.status.success(), "{out:?}");
    let csv = fs::read_to_string(&csv_a).unwrap();
    assert!(csv.starts_with("param,algorithm,bs_mode,seed,pads,wall_ms\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 2);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let out = run(bin()
        .args(["sweep", "--spec"])
        .arg(&spec)
        .arg("-o")
        .arg(&csv_b));
    assert!(out.status.success(), "{out:?}");
    assert_eq!(fs::read(&csv_a).unwrap(), fs::read(&csv_b).unwrap());

    // Aggregating the CSV succeeds and prints one line per cell group.
    let out = run(bin().args(["report", "--csv"]).arg(&csv_a));
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout_of(&out).lines().count(), 1 + 4);

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn checked_in_defaults_are_usable_as_a_config_file() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../defaults.json");
    let scn = std::env::temp_dir().join(format!("padplan-defaults-{}.json", std::process::id()));
    let out = run(bin()
        .args(["generate", "--seed", "1", "-o"])
        .arg(&scn)
        .arg("--config")
        .arg(&path));
    assert!(out.status.success(), "defaults.json must parse: {out:?}");
    // Defaults: 200 nodes on a 16000 m region with a central BS.
    assert!(stdout_of(&out).contains("200 nodes"));
    assert!(stdout_of(&out).contains("bs (8000, 8000)"));
    fs::remove_file(&scn).ok();
}
