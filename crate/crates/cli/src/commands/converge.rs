//! `converge`: error of one tracked mode against its continuum value over a
//! sweep of grid sizes, with the fitted order.

use anyhow::{bail, Result};
use num_complex::Complex64;
use serde::Serialize;

use strobo_core::lattice::{centered_first_row, forward_first_row, AngularGrid};
use strobo_core::spectral::{circulant_eig, convergence_study, ConvergenceReport, FitOutcome};

use crate::args::{ConvergeArgs, Format, OscModel};
use crate::commands::parse_site_counts;
use crate::output::{emit, fmt_f64, svg_loglog, CsvDoc};

#[derive(Serialize)]
struct Doc {
    schema_version: u32,
    config: Config,
    report: ConvergenceReport,
}

#[derive(Serialize)]
struct Config {
    command: &'static str,
    model: String,
    mode: usize,
    omega: f64,
    delta: f64,
    ns: Vec<usize>,
}

pub fn run(args: &ConvergeArgs) -> Result<()> {
    let ns = parse_site_counts(&args.ns)?;
    if args.mode == 0 {
        bail!("mode labels are 1-based");
    }
    if let Some(&smallest) = ns.first() {
        if args.mode > smallest {
            bail!("mode {} does not exist on the coarsest grid (N = {smallest})", args.mode);
        }
    }
    let model = args.model;
    let omega = args.omega;
    let delta = args.delta;
    let mode = args.mode;
    let target = Complex64::new(omega * (mode as f64 + delta), 0.0);

    let report = convergence_study(
        |n| {
            let grid = AngularGrid::new(n, omega, delta)?;
            let row = match model {
                OscModel::OscA => forward_first_row(&grid),
                OscModel::OscB => centered_first_row(&grid),
            };
            Ok(vec![circulant_eig(&row, delta)[mode - 1]])
        },
        |_| vec![target],
        &ns,
    )?;

    let model_name = match model {
        OscModel::OscA => "osc-a",
        OscModel::OscB => "osc-b",
    };
    let config_pairs = [
        ("command", "converge".to_string()),
        ("model", model_name.to_string()),
        ("mode", mode.to_string()),
        ("omega", fmt_f64(omega)),
        ("delta", fmt_f64(delta)),
        ("Ns", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")),
    ];

    match args.output.format {
        Format::Csv => {
            let mut doc = CsvDoc::new(
                &config_pairs.iter().map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>(),
                &["N", "abs_error"],
            );
            for (n, e) in report.ns.iter().zip(report.errors.iter()) {
                doc.row(&[n.to_string(), fmt_f64(*e)]);
            }
            match &report.fit {
                FitOutcome::Fitted { order, r_squared } => {
                    doc.comment(&format!("fitted_order={}", fmt_f64(*order)));
                    doc.comment(&format!("r_squared={}", fmt_f64(*r_squared)));
                }
                FitOutcome::Rejected { reason } => doc.comment(&format!("fit_rejected={reason}")),
            }
            emit(args.output.out.as_deref(), &doc.finish())?;
        }
        Format::Json => {
            let doc = Doc {
                schema_version: 1,
                config: Config {
                    command: "converge",
                    model: model_name.into(),
                    mode,
                    omega,
                    delta,
                    ns: ns.clone(),
                },
                report,
            };
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            emit(args.output.out.as_deref(), &text)?;
        }
        Format::Svg => {
            let xs: Vec<f64> = report.ns.iter().map(|&n| n as f64).collect();
            let title = match &report.fit {
                FitOutcome::Fitted { order, .. } => {
                    format!("{model_name} mode {mode}: fitted order {order:.3}")
                }
                FitOutcome::Rejected { reason } => {
                    format!("{model_name} mode {mode}: fit rejected ({reason})")
                }
            };
            let svg = svg_loglog(&title, &xs, &report.errors, "N", "error");
            emit(args.output.out.as_deref(), &svg)?;
        }
    }
    Ok(())
}
