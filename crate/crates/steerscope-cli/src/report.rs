//! State files, report files, and the decimal-string number convention.
//!
//! Numbers are serialized as decimal strings with 17 significant digits,
//! which round-trip `f64` exactly; exact rationals ride along as `p/q`
//! strings where available.

use serde::{Deserialize, Serialize};
use steerscope::activation::{ActivationReport, WindowSummary};
use steerscope::linalg::{Complex64, ComplexMatrix, DensityMatrix};

use crate::{CliError, CliResult};

/// 17 significant digits: enough to reproduce the double bit-for-bit.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_f64(s: &str) -> CliResult<f64> {
    s.parse::<f64>()
        .map_err(|_| CliError::Input(format!("not a decimal number: {s}")))
}

/// On-disk density matrix: dimensions plus a row-major nested array of
/// `[re, im]` pairs in the `i * dim_b + j` flat basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let n = rho.total_dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = rho.matrix().get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self {
            dims: [rho.dim_a(), rho.dim_b()],
            matrix,
        }
    }

    /// Validate into a density matrix; errors name the violated invariant.
    pub fn into_density(self) -> CliResult<DensityMatrix> {
        let [dim_a, dim_b] = self.dims;
        let n = dim_a * dim_b;
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(CliError::Input(format!(
                "matrix must be {n}x{n} for dims [{dim_a}, {dim_b}]"
            )));
        }
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, pair) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(pair[0], pair[1]));
            }
        }
        Ok(DensityMatrix::new(dim_a, dim_b, m)?)
    }
}

pub fn load_state_file(path: &std::path::Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path)?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("state file does not parse: {e}")))?;
    file.into_density()
}

/// Flags in force for a run, recorded verbatim in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagRecord {
    pub kmax: u32,
    pub optimize: bool,
    pub window_class: String,
    pub seed: u64,
    pub precision_ceiling_digits: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowDto {
    pub k: u32,
    pub f_low: String,
    pub f_low_error: String,
    pub f_high: String,
    pub f_high_exact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDto {
    pub dim: u64,
    pub fraction: String,
    pub reduction_min_eigenvalue: String,
    pub k_min_proj: Option<u32>,
    pub k_min_eq10: Option<u32>,
    pub window: Option<WindowDto>,
    pub hashing_distillable: bool,
    pub notes: Vec<String>,
}

/// Serialized analysis: the report plus tool version and flags in force.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool_version: String,
    pub flags: FlagRecord,
    pub report: ReportDto,
}

impl ReportDto {
    pub fn from_report(report: &ActivationReport) -> Self {
        Self {
            dim: report.dim,
            fraction: format_f64(report.fraction),
            reduction_min_eigenvalue: format_f64(report.reduction_min_eigenvalue),
            k_min_proj: report.k_min_proj,
            k_min_eq10: report.k_min_eq10,
            window: report.window.as_ref().map(|w| WindowDto {
                k: w.k,
                f_low: format_f64(w.f_low),
                f_low_error: format_f64(w.f_low_error),
                f_high: format_f64(w.f_high),
                f_high_exact: w.f_high_exact.clone(),
            }),
            hashing_distillable: report.hashing_distillable,
            notes: report.notes.clone(),
        }
    }

    /// Inverse of `from_report`; exact because the strings carry 17
    /// significant digits.
    pub fn into_report(self) -> CliResult<ActivationReport> {
        Ok(ActivationReport {
            dim: self.dim,
            fraction: parse_f64(&self.fraction)?,
            reduction_min_eigenvalue: parse_f64(&self.reduction_min_eigenvalue)?,
            k_min_proj: self.k_min_proj,
            k_min_eq10: self.k_min_eq10,
            window: match self.window {
                Some(w) => Some(WindowSummary {
                    k: w.k,
                    f_low: parse_f64(&w.f_low)?,
                    f_low_error: parse_f64(&w.f_low_error)?,
                    f_high: parse_f64(&w.f_high)?,
                    f_high_exact: w.f_high_exact,
                }),
                None => None,
            },
            hashing_distillable: self.hashing_distillable,
            notes: self.notes,
        })
    }
}

impl ReportFile {
    pub fn new(report: &ActivationReport, flags: FlagRecord) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            flags,
            report: ReportDto::from_report(report),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digit_strings_round_trip_doubles() {
        for x in [0.625, 1.0 / 3.0, 5.182710453934e-5, -0.1, f64::MIN_POSITIVE] {
            let s = format_f64(x);
            assert_eq!(parse_f64(&s).unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }
}
