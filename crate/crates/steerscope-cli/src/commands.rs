//! The three commands: analyze, thresholds, scan.

use steerscope::activation::{
    analyze, f_povm, f_proj, kcopy_threshold, minimal_d_two_copies, ratio_to_f64,
    superactivation_window, ActivationReport, AnalyzeOptions, KcopyVariant, MeasurementClass,
    PovmForm, Precision, ThresholdValue,
};
use steerscope::criteria::OptimizerOptions;
use steerscope::linalg::DensityMatrix;

use crate::presets::{build_preset, is_preset};
use crate::report::{format_f64, load_state_file, FlagRecord, ReportFile};
use crate::tables::Table;
use crate::{CliError, CliResult};

pub struct AnalyzeArgs {
    pub input: String,
    pub kmax: u32,
    pub optimize: bool,
    pub mclass: MeasurementClass,
    pub seed: u64,
    pub precision: Precision,
}

pub struct AnalyzeOutcome {
    pub report: ActivationReport,
    pub file: ReportFile,
    pub table: String,
}

pub fn run_analyze(args: &AnalyzeArgs) -> CliResult<AnalyzeOutcome> {
    let rho = load_input(&args.input)?;
    let opts = AnalyzeOptions {
        k_max: args.kmax,
        use_optimizer: args.optimize,
        optimizer: OptimizerOptions {
            seed: args.seed,
            ..OptimizerOptions::default()
        },
        window_class: args.mclass,
        precision: args.precision.clone(),
    };
    let report = analyze(&rho, &opts)?;
    let flags = FlagRecord {
        kmax: args.kmax,
        optimize: args.optimize,
        window_class: mclass_name(args.mclass).to_string(),
        seed: args.seed,
        precision_ceiling_digits: args.precision.ceiling_digits,
    };
    let file = ReportFile::new(&report, flags);
    let table = render_report(&args.input, &rho, &report);
    Ok(AnalyzeOutcome {
        report,
        file,
        table,
    })
}

fn load_input(input: &str) -> CliResult<DensityMatrix> {
    if is_preset(input) {
        build_preset(input)
    } else {
        load_state_file(std::path::Path::new(input))
    }
}

fn render_report(input: &str, rho: &DensityMatrix, report: &ActivationReport) -> String {
    let mut out = String::new();
    out.push_str("steerscope analysis\n");
    out.push_str(&format!("  input:                {input}\n"));
    out.push_str(&format!(
        "  dims:                 {} x {}\n",
        rho.dim_a(),
        rho.dim_b()
    ));
    out.push_str(&format!("  effective dim:        {}\n", report.dim));
    out.push_str(&format!(
        "  reduction min eig:    {}  (violated: {})\n",
        format_f64(report.reduction_min_eigenvalue),
        report.reduction_min_eigenvalue < -1e-9
    ));
    out.push_str(&format!(
        "  fraction:             {}\n",
        format_f64(report.fraction)
    ));
    out.push_str(&format!(
        "  k_min (proof form):   {}\n",
        opt_to_string(report.k_min_proj)
    ));
    out.push_str(&format!(
        "  k_min (printed form): {}\n",
        opt_to_string(report.k_min_eq10)
    ));
    match &report.window {
        Some(w) => {
            let exact = w
                .f_high_exact
                .as_ref()
                .map(|e| format!("  (exact {e})"))
                .unwrap_or_default();
            out.push_str(&format!(
                "  window at k={}:        ({}, {}]{}\n",
                w.k,
                format_f64(w.f_low),
                format_f64(w.f_high),
                exact
            ));
        }
        None => out.push_str("  window:               none\n"),
    }
    out.push_str(&format!(
        "  hashing distillable:  {}\n",
        report.hashing_distillable
    ));
    out.push_str("  notes:\n");
    for note in &report.notes {
        out.push_str(&format!("    - {note}\n"));
    }
    out
}

fn opt_to_string(v: Option<u32>) -> String {
    v.map(|k| k.to_string()).unwrap_or_else(|| "none".into())
}

pub struct ThresholdArgs {
    pub dmax: u64,
    pub kmax: u32,
    pub printed_eq16: bool,
    pub variant: KcopyVariant,
    pub precision: Precision,
}

pub fn thresholds_table(args: &ThresholdArgs) -> CliResult<Table> {
    if args.dmax < 2 {
        return Err(CliError::Input("--dmax must be at least 2".into()));
    }
    if args.kmax < 1 {
        return Err(CliError::Input("--kmax must be at least 1".into()));
    }
    let mut table = Table::new(vec![
        "kind",
        "d",
        "k",
        "variant",
        "value",
        "exact",
        "error_bound",
        "representation",
        "warning",
    ]);
    for d in 2..=args.dmax {
        let t = f_proj(d, &args.precision);
        table.push(threshold_row("f_proj", d, None, "", &t, String::new()));
    }
    let povm_form = if args.printed_eq16 {
        PovmForm::PrintedEq16
    } else {
        PovmForm::FractionConverted
    };
    for d in 2..=args.dmax {
        let t = f_povm(d, povm_form);
        let warning = if args.printed_eq16 {
            let mut w = String::from("misprinted bound kept for audit");
            if t.value() > 1.0 {
                w.push_str("; value exceeds 1, not a valid fraction");
            }
            w
        } else {
            String::new()
        };
        table.push(threshold_row("f_povm", d, None, "", &t, warning));
    }
    let variant_name = variant_label(args.variant);
    for d in 2..=args.dmax {
        for k in 1..=args.kmax {
            let t = kcopy_threshold(d, k, args.variant, &args.precision);
            table.push(threshold_row(
                "kcopy",
                d,
                Some(k),
                variant_name,
                &t,
                String::new(),
            ));
        }
    }
    Ok(table)
}

fn threshold_row(
    kind: &str,
    d: u64,
    k: Option<u32>,
    variant: &str,
    t: &ThresholdValue,
    warning: String,
) -> Vec<String> {
    vec![
        kind.to_string(),
        d.to_string(),
        k.map(|v| v.to_string()).unwrap_or_default(),
        variant.to_string(),
        format_f64(t.value()),
        t.exact_string().unwrap_or_default(),
        format_f64(t.error_bound()),
        if t.is_exact() {
            "exact-rational".into()
        } else {
            "certified-float".into()
        },
        warning,
    ]
}

pub fn variant_label(variant: KcopyVariant) -> &'static str {
    match variant {
        KcopyVariant::ProofForm => "proof",
        KcopyVariant::PrintedEq10 => "printed-eq10",
    }
}

pub fn mclass_name(mclass: MeasurementClass) -> &'static str {
    match mclass {
        MeasurementClass::Projective => "projective",
        MeasurementClass::Povm => "povm",
    }
}

pub struct ScanArgs {
    pub dmin: u64,
    pub dmax: u64,
    pub kmin: u32,
    pub kmax: u32,
    pub mclass: MeasurementClass,
    pub precision: Precision,
}

pub fn scan_table(args: &ScanArgs) -> CliResult<Table> {
    if args.dmin < 2 || args.dmax < args.dmin {
        return Err(CliError::Input(
            "dimension range must satisfy 2 <= dmin <= dmax".into(),
        ));
    }
    if args.kmin < 1 || args.kmax < args.kmin {
        return Err(CliError::Input(
            "copy range must satisfy 1 <= kmin <= kmax".into(),
        ));
    }
    let mut table = Table::new(vec![
        "row_type",
        "d",
        "k",
        "mclass",
        "nonempty",
        "f_low",
        "f_low_error",
        "f_high",
        "f_high_exact",
        "note",
    ]);
    let mclass = mclass_name(args.mclass).to_string();
    let mut first_nonempty_d_per_k: Vec<(u32, Option<u64>)> = Vec::new();
    let mut first_nonempty_k_per_d: Vec<(u64, Option<u32>)> = Vec::new();

    for d in args.dmin..=args.dmax {
        let mut first_k: Option<u32> = None;
        for k in args.kmin..=args.kmax {
            if k < 2 {
                table.push(vec![
                    "window".into(),
                    d.to_string(),
                    k.to_string(),
                    mclass.clone(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    "single-copy regime: no super-activation window is defined".into(),
                ]);
                continue;
            }
            let window = superactivation_window(d, k, args.mclass, &args.precision)?;
            match window {
                Some(w) => {
                    if first_k.is_none() {
                        first_k = Some(k);
                    }
                    table.push(vec![
                        "window".into(),
                        d.to_string(),
                        k.to_string(),
                        mclass.clone(),
                        "yes".into(),
                        format_f64(w.f_low.value()),
                        format_f64(w.f_low.error_bound()),
                        format_f64(ratio_to_f64(w.f_high.midpoint())),
                        w.f_high.exact_string().unwrap_or_default(),
                        String::new(),
                    ]);
                }
                None => table.push(vec![
                    "window".into(),
                    d.to_string(),
                    k.to_string(),
                    mclass.clone(),
                    "no".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]),
            }
        }
        first_nonempty_k_per_d.push((d, first_k));
    }

    for k in args.kmin.max(2)..=args.kmax.max(args.kmin) {
        if k > args.kmax {
            break;
        }
        let mut first_d = None;
        for d in args.dmin..=args.dmax {
            if superactivation_window(d, k, args.mclass, &args.precision)?.is_some() {
                first_d = Some(d);
                break;
            }
        }
        first_nonempty_d_per_k.push((k, first_d));
    }

    for (k, first_d) in &first_nonempty_d_per_k {
        let mut note = match first_d {
            Some(d) => format!(
                "minimal d in [{}, {}] with a nonempty {mclass} window at k={k}: {d}",
                args.dmin, args.dmax
            ),
            None => format!(
                "no d in [{}, {}] yields a nonempty {mclass} window at k={k}",
                args.dmin, args.dmax
            ),
        };
        if *k == 2 {
            note.push_str("; ");
            note.push_str(&two_copy_reference_note(args.mclass, &args.precision)?);
        }
        table.push(vec![
            "summary".into(),
            String::new(),
            k.to_string(),
            mclass.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            note,
        ]);
    }
    for (d, first_k) in &first_nonempty_k_per_d {
        let note = match first_k {
            Some(k) => format!(
                "first k in [{}, {}] with a nonempty {mclass} window at d={d}: {k}",
                args.kmin, args.kmax
            ),
            None => format!(
                "no k in [{}, {}] yields a nonempty {mclass} window at d={d}",
                args.kmin, args.kmax
            ),
        };
        table.push(vec![
            "summary".into(),
            d.to_string(),
            String::new(),
            mclass.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            note,
        ]);
    }
    Ok(table)
}

/// Reference-claim audit for the two-copy scan: the exact-arithmetic minimal
/// dimension disagrees with the commonly cited projective bound.
fn two_copy_reference_note(mclass: MeasurementClass, precision: &Precision) -> CliResult<String> {
    match mclass {
        MeasurementClass::Projective => {
            let minimal = minimal_d_two_copies(MeasurementClass::Projective, 64, precision)?;
            match minimal {
                Some(d) if d < 6 => Ok(format!(
                    "exact-arithmetic minimal dimension over 2..64 is {d}, below the commonly cited sufficient bound d >= 6 \
                     (at d=5 the exact comparison reads 7569/62500 = 0.121104 > 0.11874386 = f_proj(25))"
                )),
                Some(d) => Ok(format!(
                    "exact-arithmetic minimal dimension over 2..64 is {d}"
                )),
                None => Ok("no dimension up to 64 yields a nonempty two-copy projective window".into()),
            }
        }
        MeasurementClass::Povm => {
            let minimal = minimal_d_two_copies(MeasurementClass::Povm, 64, precision)?;
            match minimal {
                Some(d) => Ok(format!(
                    "exact-arithmetic minimal dimension over 2..64 is {d}"
                )),
                None => Ok(
                    "no dimension up to 64 yields a nonempty two-copy POVM window; the POVM bound decays too fast for this route"
                        .into(),
                ),
            }
        }
    }
}
