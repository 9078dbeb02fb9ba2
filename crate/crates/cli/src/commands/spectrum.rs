//! `spectrum`: numerical eigenvalues of one oscillator discretization next to
//! the closed form, per mode.

use anyhow::{bail, Result};
use num_complex::Complex64;
use serde::Serialize;

use strobo_core::lattice::{
    centered_eigenvalues, centered_first_row, centered_generator, forward_eigenvalues,
    forward_first_row, forward_generator, AngularGrid,
};
use strobo_core::spectral::{circulant_eig, eig, match_nearest_bijective, nearest_to};

use crate::args::{Format, OscModel, SpectrumArgs};
use crate::output::{emit, fmt_f64, CsvDoc};

/// The dense solver is used up to this size; beyond it the certified
/// twisted-symbol route takes over.
const DENSE_LIMIT: usize = 1024;

#[derive(Serialize)]
struct Row {
    m: usize,
    re_numeric: f64,
    im_numeric: f64,
    re_formula: f64,
    im_formula: f64,
    abs_error: f64,
}

#[derive(Serialize)]
struct Doc {
    schema_version: u32,
    config: Config,
    solver: &'static str,
    max_abs_error: f64,
    rows: Vec<Row>,
}

#[derive(Serialize)]
struct Config {
    command: &'static str,
    model: String,
    n: usize,
    omega: f64,
    delta: f64,
}

pub fn run(args: &SpectrumArgs) -> Result<()> {
    let grid = AngularGrid::new(args.n, args.omega, args.delta)?;
    let formula: Vec<Complex64> = match args.model {
        OscModel::OscA => forward_eigenvalues(&grid),
        OscModel::OscB => centered_eigenvalues(&grid)
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect(),
    };

    let (numeric, solver): (Vec<Complex64>, &'static str) = if args.n <= DENSE_LIMIT {
        let op = match args.model {
            OscModel::OscA => forward_generator(&grid),
            OscModel::OscB => centered_generator(&grid),
        };
        let spectrum = eig(&op)?.eigenvalues;
        // Order numerically found values by mode label.
        let matched = match args.model {
            OscModel::OscA => match_nearest_bijective(&spectrum, &formula)?,
            OscModel::OscB => formula
                .iter()
                .map(|&label| nearest_to(&spectrum, label).expect("nonempty"))
                .collect(),
        };
        (matched, "dense")
    } else {
        let row = match args.model {
            OscModel::OscA => forward_first_row(&grid),
            OscModel::OscB => centered_first_row(&grid),
        };
        (circulant_eig(&row, args.delta), "symbol")
    };

    let rows: Vec<Row> = formula
        .iter()
        .zip(numeric.iter())
        .enumerate()
        .map(|(i, (f, n))| Row {
            m: i + 1,
            re_numeric: n.re,
            im_numeric: n.im,
            re_formula: f.re,
            im_formula: f.im,
            abs_error: (n - f).norm(),
        })
        .collect();
    let max_abs_error = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);

    let model_name = match args.model {
        OscModel::OscA => "osc-a",
        OscModel::OscB => "osc-b",
    };
    match args.output.format {
        Format::Csv => {
            let mut doc = CsvDoc::new(
                &[
                    ("command", "spectrum".into()),
                    ("model", model_name.into()),
                    ("N", args.n.to_string()),
                    ("omega", fmt_f64(args.omega)),
                    ("delta", fmt_f64(args.delta)),
                    ("solver", solver.into()),
                ],
                &["m", "re_numeric", "im_numeric", "re_formula", "im_formula", "abs_error"],
            );
            for r in &rows {
                doc.row(&[
                    r.m.to_string(),
                    fmt_f64(r.re_numeric),
                    fmt_f64(r.im_numeric),
                    fmt_f64(r.re_formula),
                    fmt_f64(r.im_formula),
                    fmt_f64(r.abs_error),
                ]);
            }
            emit(args.output.out.as_deref(), &doc.finish())?;
        }
        Format::Json => {
            let doc = Doc {
                schema_version: 1,
                config: Config {
                    command: "spectrum",
                    model: model_name.into(),
                    n: args.n,
                    omega: args.omega,
                    delta: args.delta,
                },
                solver,
                max_abs_error,
                rows,
            };
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            emit(args.output.out.as_deref(), &text)?;
        }
        Format::Svg => bail!("spectrum has no svg rendering; use csv or json"),
    }
    Ok(())
}
