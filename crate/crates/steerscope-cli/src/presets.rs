//! Preset state grammar: `phi+:d=N`, `iso:d=N,F=X`, `schmidt:c1,c2,...`,
//! `random:dA,dB,rank,seed`. Anything else is treated as a state-file path.

use steerscope::activation::{parse_rational, ratio_to_f64};
use steerscope::linalg::DensityMatrix;
use steerscope::states::{isotropic, phi_plus, pure_schmidt, random_density};

use crate::{CliError, CliResult};

pub fn is_preset(input: &str) -> bool {
    ["phi+:", "iso:", "schmidt:", "random:"]
        .iter()
        .any(|p| input.starts_with(p))
}

pub fn build_preset(input: &str) -> CliResult<DensityMatrix> {
    let (kind, rest) = input
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("preset missing ':' in {input}")))?;
    match kind {
        "phi+" => {
            let d = parse_key_usize(rest, "d")?;
            let psi = phi_plus(d)?;
            Ok(DensityMatrix::from_pure(&psi, d, d)?)
        }
        "iso" => {
            let mut d = None;
            let mut fraction = None;
            for part in rest.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| CliError::Input(format!("expected key=value, got {part}")))?;
                match key.trim() {
                    "d" => d = Some(parse_usize(value)?),
                    "F" | "f" => {
                        let rational = parse_rational(value).ok_or_else(|| {
                            CliError::Input(format!("fraction does not parse: {value}"))
                        })?;
                        fraction = Some(ratio_to_f64(&rational));
                    }
                    other => {
                        return Err(CliError::Input(format!("unknown iso field: {other}")));
                    }
                }
            }
            let d = d.ok_or_else(|| CliError::Input("iso preset needs d=N".into()))?;
            let fraction =
                fraction.ok_or_else(|| CliError::Input("iso preset needs F=X".into()))?;
            Ok(isotropic(d, fraction)?)
        }
        "schmidt" => {
            let coeffs: Vec<f64> = rest
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Input(format!("coefficient does not parse: {c}")))
                })
                .collect::<CliResult<_>>()?;
            Ok(pure_schmidt(&coeffs)?)
        }
        "random" => {
            let fields: Vec<&str> = rest.split(',').collect();
            if fields.len() != 4 {
                return Err(CliError::Input(
                    "random preset needs dA,dB,rank,seed".into(),
                ));
            }
            let dim_a = parse_usize(fields[0])?;
            let dim_b = parse_usize(fields[1])?;
            let rank = parse_usize(fields[2])?;
            let seed: u64 = fields[3]
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("seed does not parse: {}", fields[3])))?;
            Ok(random_density(dim_a, dim_b, rank, seed)?)
        }
        other => Err(CliError::Input(format!("unknown preset kind: {other}"))),
    }
}

fn parse_usize(s: &str) -> CliResult<usize> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("not a positive integer: {s}")))
}

fn parse_key_usize(rest: &str, key: &str) -> CliResult<usize> {
    let (k, v) = rest
        .split_once('=')
        .ok_or_else(|| CliError::Input(format!("expected {key}=N, got {rest}")))?;
    if k.trim() != key {
        return Err(CliError::Input(format!("expected {key}=N, got {rest}")));
    }
    parse_usize(v)
}
