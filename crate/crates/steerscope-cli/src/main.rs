//! `steerscope`: analyze bipartite states for multi-copy steering
//! activation, tabulate LHS thresholds, and scan super-activation windows.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use steerscope::activation::{KcopyVariant, MeasurementClass, Precision};
use steerscope_cli::commands::{
    run_analyze, scan_table, thresholds_table, AnalyzeArgs, ScanArgs, ThresholdArgs,
};
use steerscope_cli::{exit_code_for, CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "steerscope",
    version,
    about = "Multi-copy steering activation analysis for bipartite quantum states",
    long_about = "Checks the reduction criterion, builds the one-sided local filter, twirls to \
                  the isotropic family, and searches minimal copy counts and super-activation \
                  windows against exact-rational / certified-float LHS thresholds.\n\n\
                  The environment variable STEERSCOPE_PRECISION (decimal digits, 1..=100) \
                  overrides the certified-float escalation ceiling."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one state: a preset (phi+:d=N | iso:d=N,F=X | schmidt:c1,c2,... |
    /// random:dA,dB,rank,seed) or a JSON state-file path.
    Analyze {
        input: String,
        /// Copy-count search cap.
        #[arg(long, default_value_t = 64)]
        kmax: u32,
        /// Use the local-unitary optimizer for the twirl fraction instead of
        /// the canonical fidelity.
        #[arg(long)]
        optimize: bool,
        /// Measurement class for the reported window.
        #[arg(long, value_enum, default_value_t = MclassArg::Projective)]
        mclass: MclassArg,
        /// Output format on stdout (reports always write as JSON with --out).
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Also write the JSON report file here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the optimizer restarts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tabulate single-copy LHS bounds and multi-copy thresholds.
    Thresholds {
        #[arg(long, default_value_t = 4)]
        dmax: u64,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// Tabulate the misprinted POVM bound instead of the
        /// fraction-converted default (adds a warning column entry).
        #[arg(long)]
        printed_eq16: bool,
        /// Which multi-copy threshold variant to tabulate.
        #[arg(long, value_enum, default_value_t = VariantArg::Proof)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan super-activation windows over a (d, k) grid, with minimal-d and
    /// first-k summaries and reference-claim audit notes.
    Scan {
        #[arg(long, default_value_t = 2)]
        dmin: u64,
        #[arg(long, default_value_t = 8)]
        dmax: u64,
        #[arg(long, default_value_t = 2)]
        kmin: u32,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = MclassArg::Projective)]
        mclass: MclassArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MclassArg {
    Projective,
    Povm,
}

impl From<MclassArg> for MeasurementClass {
    fn from(v: MclassArg) -> Self {
        match v {
            MclassArg::Projective => MeasurementClass::Projective,
            MclassArg::Povm => MeasurementClass::Povm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Proof,
    #[value(name = "printed-eq10")]
    PrintedEq10,
}

impl From<VariantArg> for KcopyVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Proof => KcopyVariant::ProofForm,
            VariantArg::PrintedEq10 => KcopyVariant::PrintedEq10,
        }
    }
}

fn precision_from_env() -> CliResult<Precision> {
    match std::env::var("STEERSCOPE_PRECISION") {
        Ok(raw) => {
            let digits: u32 = raw.trim().parse().map_err(|_| {
                CliError::Input(format!(
                    "STEERSCOPE_PRECISION must be an integer digit count, got {raw}"
                ))
            })?;
            if !(1..=100).contains(&digits) {
                return Err(CliError::Input(format!(
                    "STEERSCOPE_PRECISION must lie in 1..=100, got {digits}"
                )));
            }
            Ok(Precision::with_ceiling(digits))
        }
        Err(_) => Ok(Precision::default()),
    }
}

fn write_output(stdout_text: &str, out: &Option<PathBuf>, file_text: &str) -> CliResult<()> {
    print!("{stdout_text}");
    std::io::stdout().flush()?;
    if let Some(path) = out {
        std::fs::write(path, file_text)?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let precision = precision_from_env()?;
    match cli.command {
        Command::Analyze {
            input,
            kmax,
            optimize,
            mclass,
            format,
            out,
            seed,
        } => {
            let outcome = run_analyze(&AnalyzeArgs {
                input,
                kmax,
                optimize,
                mclass: mclass.into(),
                seed,
                precision,
            })?;
            let json = outcome.file.to_json();
            let stdout_text = match format {
                FormatArg::Table => outcome.table.clone(),
                FormatArg::Json => json.clone(),
                FormatArg::Csv => {
                    return Err(CliError::Input(
                        "analyze emits a report, not a table; use --format json or table".into(),
                    ))
                }
            };
            write_output(&stdout_text, &out, &json)
        }
        Command::Thresholds {
            dmax,
            kmax,
            printed_eq16,
            variant,
            format,
            out,
        } => {
            let table = thresholds_table(&ThresholdArgs {
                dmax,
                kmax,
                printed_eq16,
                variant: variant.into(),
                precision,
            })?;
            let text = match format {
                FormatArg::Csv => table.to_csv(),
                FormatArg::Json => table.to_json(),
                FormatArg::Table => table.to_text(),
            };
            write_output(&text, &out, &text)
        }
        Command::Scan {
            dmin,
            dmax,
            kmin,
            kmax,
            mclass,
            format,
            out,
        } => {
            let table = scan_table(&ScanArgs {
                dmin,
                dmax,
                kmin,
                kmax,
                mclass: mclass.into(),
                precision,
            })?;
            let text = match format {
                FormatArg::Csv => table.to_csv(),
                FormatArg::Json => table.to_json(),
                FormatArg::Table => table.to_text(),
            };
            write_output(&text, &out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error) as u8)
        }
    }
}
