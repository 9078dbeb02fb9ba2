//! `su2-check`: identity residuals, the deformed oscillator spectrum against
//! its closed form, and positivity of the coupled-oscillator spectrum.

use anyhow::{bail, Result};
use num_complex::Complex64;
use serde::Serialize;

use strobo_core::spectral::{eig, max_sorted_real_deviation};
use strobo_core::su2::{
    deformed_oscillator_eigenvalues, emergent_spectrum, qp_operators, spin_matrices,
    verify_identities, OscCoefficients,
};

use crate::args::{Format, Su2Args};
use crate::commands::parse_two_s;
use crate::output::{emit, fmt_f64, CsvDoc};

#[derive(Serialize)]
struct Doc {
    schema_version: u32,
    config: Config,
    residuals: Residuals,
    deformed_spectrum_max_error: f64,
    emergent_min_eigenvalue: f64,
    emergent_positive: bool,
    indefinite_min_eigenvalue: f64,
}

#[derive(Serialize)]
struct Config {
    command: &'static str,
    s: String,
    two_s: u32,
    omega: f64,
}

#[derive(Serialize)]
struct Residuals {
    h_from_casimir: f64,
    qp_commutator: f64,
    ladder_square_sum: f64,
    oscillator_closure: f64,
}

pub fn run(args: &Su2Args) -> Result<()> {
    let two_s = parse_two_s(&args.s)?;
    let rep = spin_matrices(two_s);
    let coeffs = OscCoefficients::canonical(two_s, args.omega)?;
    let residuals = verify_identities(&rep, &coeffs)?;

    let (q, p) = qp_operators(&rep, &coeffs)?;
    let osc = p
        .matmul(&p)?
        .scaled(Complex64::new(0.5, 0.0))
        .add(&q.matmul(&q)?.scaled(Complex64::new(0.5 * args.omega * args.omega, 0.0)))?;
    let numeric: Vec<f64> = eig(&osc)?.eigenvalues.iter().map(|z| z.re).collect();
    let formula = deformed_oscillator_eigenvalues(two_s, args.omega);
    let deformed_err = max_sorted_real_deviation(&numeric, &formula)?;

    // Spectra by diagonal enumeration; no tensor cube is materialized.
    let spectrum = emergent_spectrum(&rep, args.omega);
    let emergent_min = spectrum.iter().copied().fold(f64::INFINITY, f64::min);
    let h_values: Vec<f64> = (0..rep.dim()).map(|i| rep.sz_value(i) + rep.s() + 0.5).collect();
    let indefinite_min = h_values
        .iter()
        .flat_map(|&hb| {
            h_values.iter().flat_map(move |&h0| {
                h_values.iter().map(move |&h1| args.omega * (1.0 + hb) * (h0 - h1))
            })
        })
        .fold(f64::INFINITY, f64::min);

    match args.output.format {
        Format::Json => {
            let doc = Doc {
                schema_version: 1,
                config: Config {
                    command: "su2-check",
                    s: args.s.clone(),
                    two_s,
                    omega: args.omega,
                },
                residuals: Residuals {
                    h_from_casimir: residuals.h_from_casimir,
                    qp_commutator: residuals.qp_commutator,
                    ladder_square_sum: residuals.ladder_square_sum,
                    oscillator_closure: residuals.oscillator_closure,
                },
                deformed_spectrum_max_error: deformed_err,
                emergent_min_eigenvalue: emergent_min,
                emergent_positive: emergent_min > 0.0,
                indefinite_min_eigenvalue: indefinite_min,
            };
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            emit(args.output.out.as_deref(), &text)?;
        }
        Format::Csv => {
            let mut doc = CsvDoc::new(
                &[
                    ("command", "su2-check".into()),
                    ("s", args.s.clone()),
                    ("two_s", two_s.to_string()),
                    ("omega", fmt_f64(args.omega)),
                ],
                &["quantity", "value"],
            );
            for (k, v) in [
                ("h_from_casimir", residuals.h_from_casimir),
                ("qp_commutator", residuals.qp_commutator),
                ("ladder_square_sum", residuals.ladder_square_sum),
                ("oscillator_closure", residuals.oscillator_closure),
                ("deformed_spectrum_max_error", deformed_err),
                ("emergent_min_eigenvalue", emergent_min),
                ("indefinite_min_eigenvalue", indefinite_min),
            ] {
                doc.row(&[k.to_string(), fmt_f64(v)]);
            }
            emit(args.output.out.as_deref(), &doc.finish())?;
        }
        Format::Svg => bail!("su2-check has no svg rendering; use csv or json"),
    }
    Ok(())
}
