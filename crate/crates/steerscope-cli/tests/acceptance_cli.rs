//! Command-level acceptance checks: the scan command must report the
//! exact-arithmetic minimal two-copy dimension and carry the reference-claim
//! discrepancy note in its output.

use std::process::Command;

fn run_csv(args: &[&str]) -> String {
    let output = Command::new(env!("CARGO_BIN_EXE_steerscope"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).unwrap()
}

#[test]
fn acceptance_cli_minimal_dimension_scan() {
    let csv = run_csv(&[
        "scan", "--dmin", "2", "--dmax", "8", "--kmin", "2", "--kmax", "2", "--format", "csv",
    ]);
    // window verdicts straddle d = 4 / d = 5
    assert!(csv.contains("window,4,2,projective,no"));
    assert!(csv.contains("window,5,2,projective,yes"));
    // exact-arithmetic minimal d, with the discrepancy note in the output
    assert!(csv.contains("minimal d in [2, 8] with a nonempty projective window at k=2: 5"));
    assert!(csv.contains("d >= 6"));
    assert!(csv.contains("0.121104"));
    println!(
        "ACCEPTANCE scan command minimal-dimension report (d=5 with d >= 6 discrepancy note): PASS"
    );
}

#[test]
fn acceptance_cli_scan_copy_count_summaries() {
    let projective = run_csv(&[
        "scan", "--dmin", "2", "--dmax", "2", "--kmin", "1", "--kmax", "30", "--format", "csv",
    ]);
    assert!(projective.contains("first k in [1, 30] with a nonempty projective window at d=2: 7"));

    let povm = run_csv(&[
        "scan", "--dmin", "2", "--dmax", "2", "--kmin", "1", "--kmax", "30", "--mclass", "povm",
        "--format", "csv",
    ]);
    assert!(povm.contains("first k in [1, 30] with a nonempty povm window at d=2: 24"));
    println!("ACCEPTANCE scan command copy-count summaries (k=7 projective, k=24 POVM): PASS");
}
