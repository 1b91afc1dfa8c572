//! End-to-end checks of the `seisplan` binary: subcommands, exit codes,
//! output formats, and the trace side channel.

use std::path::PathBuf;
use std::process::{Command, Output};

fn seisplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seisplan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("seisplan-test-{}-{name}", std::process::id()));
    p
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn rates_preset_json() {
    let out = seisplan(&["rates", "--preset", "groningen", "--format", "json"]);
    assert!(out.status.success(), "{out:?}");
    let json = stdout_json(&out);
    let total = json["rates"]["network_yearly_bytes"].as_f64().unwrap();
    assert!((total / 2.66e12 - 1.0).abs() < 0.01);
    let rows = json["rates"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
}

#[test]
fn design_preset_reports_infeasible_with_diagnosis() {
    let out = seisplan(&["design", "--preset", "groningen", "--format", "json"]);
    // the ten-hour working point fails the buffer criterion, which is a
    // diagnosis report with its own exit status
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let json = stdout_json(&out);
    assert!(json["design"]["chosen"].is_null());
    let rb = json["design"]["rejected"][0]["required_bitrate_bps"]
        .as_f64()
        .unwrap();
    assert!((rb - 10_770.0).abs() < 10.0);
}

#[test]
fn design_from_config_file_is_feasible_with_short_deadline() {
    let config_path = tmp_path("design.json");
    let mut cfg = seisplan_core::config::ProjectConfig::groningen();
    let mut point = cfg.sim.design;
    point.delivery_deadline_secs = 3600.0;
    cfg.design.ranges = seisplan_core::crosslayer::ParamRanges::singleton(&point);
    std::fs::write(&config_path, cfg.to_json()).unwrap();

    let out = seisplan(&[
        "design",
        "--config",
        config_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{out:?}");
    let json = stdout_json(&out);
    let rb = json["design"]["chosen"]["required_bitrate_bps"]
        .as_f64()
        .unwrap();
    assert!((rb - 107_700.0).abs() < 100.0);
    std::fs::remove_file(config_path).ok();
}

#[test]
fn plan_preset_text_contains_cost_rows() {
    let out = seisplan(&["plan", "--preset", "groningen"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("$61,000"), "{text}");
    assert!(text.contains("$156,000"), "{text}");
    assert!(text.contains("45"), "{text}");
}

#[test]
fn simulate_is_reproducible_and_writes_out_file() {
    let out_a = tmp_path("sim-a.json");
    let out_b = tmp_path("sim-b.json");
    for path in [&out_a, &out_b] {
        let out = seisplan(&[
            "simulate",
            "--preset",
            "groningen",
            "--seed",
            "7",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{out:?}");
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "seeded runs must be byte-identical");
    std::fs::remove_file(out_a).ok();
    std::fs::remove_file(out_b).ok();
}

#[test]
fn simulate_writes_frame_trace_csv() {
    let config_path = tmp_path("trace-config.json");
    let trace_path = tmp_path("trace.csv");
    let mut cfg = seisplan_core::config::ProjectConfig::groningen();
    cfg.sim.node_count = 1;
    cfg.sim.duration_secs = 200.0;
    cfg.sim.record_trace = true;
    cfg.sim.trace_path = Some(trace_path.to_str().unwrap().to_string());
    std::fs::write(&config_path, cfg.to_json()).unwrap();

    let out = seisplan(&[
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        tmp_path("trace-report.json").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(&trace_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "time,node,frame_no,flag,d1_bytes,d2_bytes,damaged,retry"
    );
    assert!(lines.next().is_some());
    std::fs::remove_file(config_path).ok();
    std::fs::remove_file(trace_path).ok();
    std::fs::remove_file(tmp_path("trace-report.json")).ok();
}

#[test]
fn invalid_config_exits_2() {
    let config_path = tmp_path("broken.json");
    std::fs::write(&config_path, "{ not json").unwrap();
    let out = seisplan(&["rates", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(config_path).ok();
}

#[test]
fn unknown_preset_exits_2() {
    let out = seisplan(&["rates", "--preset", "atlantis"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown preset"));
}

#[test]
fn missing_config_and_preset_exits_2() {
    let out = seisplan(&["plan"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_example_config_matches_preset() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/groningen.json");
    let cfg = seisplan_core::config::ProjectConfig::from_json_file(&path).unwrap();
    assert_eq!(cfg, seisplan_core::config::ProjectConfig::groningen());
}

#[test]
fn validation_error_names_the_field() {
    let config_path = tmp_path("invalid-field.json");
    let mut cfg = seisplan_core::config::ProjectConfig::groningen();
    cfg.sim.bitrate_bps = -1.0;
    std::fs::write(&config_path, cfg.to_json()).unwrap();
    let out = seisplan(&["simulate", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sim.bitrate_bps"), "{err}");
    std::fs::remove_file(config_path).ok();
}
