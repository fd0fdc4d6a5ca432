//! End-to-end tests driving the compiled binary: presets, state files,
//! report determinism, table round-trips, scan summaries, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use steerscope_cli::report::{parse_f64, ReportFile, StateFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_steerscope"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("steerscope-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn analyze_boundary_isotropic_preset_reports_seven_copies() {
    let output = run(&["analyze", "iso:d=2,F=0.625", "--format", "json"]);
    let file: ReportFile = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(file.report.k_min_proj, Some(7));
    assert_eq!(file.report.k_min_eq10, Some(1));
    assert!(!file.report.hashing_distillable);
    assert!(file
        .report
        .notes
        .iter()
        .any(|n| n.contains("proof-consistent")));
    let window = file.report.window.expect("boundary state has a window");
    assert_eq!(window.k, 7);
    assert_eq!(window.f_high_exact.as_deref(), Some("5/8"));
}

#[test]
fn analyze_phi_plus_qutrit_activates_at_one_copy() {
    let output = run(&["analyze", "phi+:d=3", "--format", "json"]);
    let file: ReportFile = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(file.report.k_min_proj, Some(1));
    assert!(file.report.hashing_distillable);
    assert!(file.report.window.is_none());
}

#[test]
fn analyze_names_the_violated_invariant_and_exits_two() {
    // trace 0.9: validation must name the trace invariant with its magnitude
    let path = temp_path("bad-trace.json");
    let rows: Vec<Vec<[f64; 2]>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    if i == j && i < 2 {
                        [0.45, 0.0]
                    } else {
                        [0.0, 0.0]
                    }
                })
                .collect()
        })
        .collect();
    let state = StateFile {
        dims: [2, 2],
        matrix: rows,
    };
    std::fs::write(&path, serde_json::to_string(&state).unwrap()).unwrap();

    let output = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("trace"), "stderr was: {stderr}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn analyze_accepts_valid_state_files() {
    let rho = steerscope::states::random_density(2, 3, 6, 9).unwrap();
    let path = temp_path("valid-state.json");
    std::fs::write(
        &path,
        serde_json::to_string(&StateFile::from_density(&rho)).unwrap(),
    )
    .unwrap();
    let output = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    let file: ReportFile = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(file.report.dim, 3);
    assert!(file
        .report
        .notes
        .iter()
        .any(|n| n.contains("zero-padded to 3x3")));
    std::fs::remove_file(&path).ok();
}

#[test]
fn report_files_are_byte_identical_across_runs_and_round_trip() {
    let first = temp_path("report-a.json");
    let second = temp_path("report-b.json");
    for path in [&first, &second] {
        let output = run(&[
            "analyze",
            "random:2,2,4,1234",
            "--seed",
            "7",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    }
    let bytes_a = std::fs::read(&first).unwrap();
    let bytes_b = std::fs::read(&second).unwrap();
    assert_eq!(
        bytes_a, bytes_b,
        "identical inputs must give identical bytes"
    );

    let parsed: ReportFile = serde_json::from_slice(&bytes_a).unwrap();
    let reserialized = parsed.to_json();
    assert_eq!(
        reserialized.as_bytes(),
        &bytes_a[..],
        "parse/serialize round-trip"
    );
    let report = parsed.report.clone().into_report().unwrap();
    assert_eq!(Some(report.dim), Some(2));
    std::fs::remove_file(&first).ok();
    std::fs::remove_file(&second).ok();
}

#[test]
fn thresholds_csv_contains_known_rows_and_round_trips() {
    let output = run(&[
        "thresholds",
        "--dmax",
        "2",
        "--kmax",
        "1",
        "--format",
        "csv",
    ]);
    let csv = stdout_of(&output);
    assert!(csv.contains("f_proj,2,,,6.2500000000000000e-1,5/8"));
    assert!(csv.contains("f_povm,2,,,5.6250000000000000e-1,9/16"));
    assert!(csv.contains("kcopy,2,1,proof,6.2500000000000000e-1,5/8"));

    // every value column survives a parse/format round trip
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let value_idx = header.iter().position(|c| *c == "value").unwrap();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let value = fields[value_idx];
        let parsed = parse_f64(value).unwrap();
        assert_eq!(format!("{parsed:.16e}"), value);
    }
}

#[test]
fn thresholds_printed_eq16_emits_warning_column() {
    let output = run(&[
        "thresholds",
        "--dmax",
        "2",
        "--kmax",
        "1",
        "--printed-eq16",
        "--format",
        "csv",
    ]);
    let csv = stdout_of(&output);
    assert!(csv.contains("3.0625000000000000e0"));
    assert!(csv.contains("49/16"));
    assert!(csv.contains("exceeds 1"));
}

#[test]
fn scan_reports_minimal_dimension_with_reference_note() {
    let output = run(&[
        "scan", "--dmin", "2", "--dmax", "8", "--kmin", "2", "--kmax", "2", "--format", "csv",
    ]);
    let csv = stdout_of(&output);
    assert!(csv.contains("nonempty projective window at k=2: 5"));
    assert!(
        csv.contains("d >= 6"),
        "discrepancy note must cite the d >= 6 claim"
    );
    // d=4 row empty, d=5 row nonempty
    assert!(csv.contains("window,4,2,projective,no"));
    assert!(csv.contains("window,5,2,projective,yes"));
}

#[test]
fn scan_first_success_matches_published_copy_counts() {
    let output = run(&[
        "scan", "--dmin", "2", "--dmax", "2", "--kmin", "1", "--kmax", "30", "--format", "csv",
    ]);
    let csv = stdout_of(&output);
    assert!(csv.contains("first k in [1, 30] with a nonempty projective window at d=2: 7"));

    let output = run(&[
        "scan", "--dmin", "2", "--dmax", "2", "--kmin", "1", "--kmax", "30", "--mclass", "povm",
        "--format", "csv",
    ]);
    let csv = stdout_of(&output);
    assert!(csv.contains("first k in [1, 30] with a nonempty povm window at d=2: 24"));
}

#[test]
fn analyze_povm_boundary_reports_povm_window() {
    let output = run(&[
        "analyze",
        "iso:d=2,F=9/16",
        "--mclass",
        "povm",
        "--format",
        "json",
    ]);
    let file: ReportFile = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(file.report.k_min_proj, Some(24));
    let window = file.report.window.expect("POVM boundary has a k=24 window");
    assert_eq!(window.k, 24);
    assert_eq!(window.f_high_exact.as_deref(), Some("9/16"));
    assert!(file.report.notes.iter().any(|n| n.contains("POVM windows")));
}

#[test]
fn starved_precision_exits_three() {
    // fraction pinned to the k=14 threshold root: undecidable at 2 digits
    let boundary = steerscope::activation::kcopy_threshold(
        2,
        14,
        steerscope::activation::KcopyVariant::ProofForm,
        &steerscope::activation::Precision::default(),
    )
    .value()
    .powf(1.0 / 14.0);
    let preset = format!("iso:d=2,F={boundary:.16e}");
    let output = bin()
        .args(["analyze", &preset])
        .env("STEERSCOPE_PRECISION", "2")
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("precision"), "stderr was: {stderr}");

    // the same analysis succeeds at the default ceiling
    let output = bin().args(["analyze", &preset]).output().unwrap();
    assert!(output.status.success());
}

#[test]
fn invalid_precision_env_exits_two() {
    let output = bin()
        .args(["analyze", "phi+:d=2"])
        .env("STEERSCOPE_PRECISION", "many")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn malformed_presets_exit_two() {
    for preset in ["iso:d=2", "iso:d=2,F=1.5", "schmidt:0.5,0.5", "nope:d=2"] {
        let output = run(&["analyze", preset]);
        assert_eq!(output.status.code(), Some(2), "preset {preset}");
    }
}
