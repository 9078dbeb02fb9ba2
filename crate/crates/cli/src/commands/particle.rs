//! `particle`: free-particle lattice modes with canonical boundary phases,
//! optional on-shell selection, and the cross-check against the spin
//! spectrum.

use anyhow::{bail, Result};
use serde::Serialize;

use strobo_core::lattice::{
    free_particle_spectrum, onshell_select, EnergyModel, HypercubicLattice,
};
use strobo_core::su2::{emergent_spectrum, spin_matrices};

use crate::args::{EnergyKind, Format, ParticleArgs};
use crate::commands::parse_two_s;
use crate::output::{emit, fmt_f64, CsvDoc};

#[derive(Serialize)]
struct Doc {
    schema_version: u32,
    config: Config,
    mode_count: usize,
    min_re_energy: f64,
    max_re_energy: f64,
    positive_definite: bool,
    matches_spin_spectrum: Option<bool>,
    rows: Vec<Row>,
}

#[derive(Serialize)]
struct Row {
    k0: u32,
    k1: u32,
    kbar0: u32,
    kbar1: u32,
    re_energy: f64,
    im_energy: f64,
}

#[derive(Serialize)]
struct Config {
    command: &'static str,
    s: String,
    two_s: u32,
    mass: f64,
    box_length: f64,
    energy: String,
    onshell: bool,
}

pub fn run(args: &ParticleArgs) -> Result<()> {
    let two_s = parse_two_s(&args.s)?;
    let lat = HypercubicLattice::with_canonical_phases(two_s, args.mass, args.box_length)?;
    let model = match args.energy {
        EnergyKind::Lattice => EnergyModel::FiniteSpacing,
        EnergyKind::Continuum => EnergyModel::ContinuumLimit,
    };
    let mut modes = free_particle_spectrum(&lat, model)?;
    if args.onshell {
        modes = onshell_select(&lat, &modes)?;
    }

    let min_re = modes.iter().map(|m| m.energy.re).fold(f64::INFINITY, f64::min);
    let max_re = modes.iter().map(|m| m.energy.re).fold(f64::NEG_INFINITY, f64::max);

    // On-shell continuum energies must coincide with the spin spectrum, up to
    // the common prefactor; compare doubled dimensionless values exactly.
    let matches_spin = if args.onshell && model == EnergyModel::ContinuumLimit {
        let omega = lat.omega_prefactor();
        let mut lattice: Vec<i64> = modes
            .iter()
            .map(|m| (2.0 * m.energy.re / omega).round() as i64)
            .collect();
        let rep = spin_matrices(two_s);
        let mut spin: Vec<i64> = emergent_spectrum(&rep, 1.0)
            .iter()
            .map(|&e| (2.0 * e).round() as i64)
            .collect();
        lattice.sort_unstable();
        spin.sort_unstable();
        Some(lattice == spin)
    } else {
        None
    };

    let shown: Vec<&strobo_core::lattice::LatticeMode> = if args.limit > 0 {
        modes.iter().take(args.limit).collect()
    } else {
        modes.iter().collect()
    };
    let rows: Vec<Row> = shown
        .iter()
        .map(|m| Row {
            k0: m.k[0],
            k1: m.k[1],
            kbar0: m.kbar[0],
            kbar1: m.kbar[1],
            re_energy: m.energy.re,
            im_energy: m.energy.im,
        })
        .collect();

    let energy_name = match args.energy {
        EnergyKind::Lattice => "lattice",
        EnergyKind::Continuum => "continuum",
    };
    match args.output.format {
        Format::Csv => {
            let mut doc = CsvDoc::new(
                &[
                    ("command", "particle".into()),
                    ("s", args.s.clone()),
                    ("two_s", two_s.to_string()),
                    ("mass", fmt_f64(args.mass)),
                    ("box_length", fmt_f64(args.box_length)),
                    ("energy", energy_name.into()),
                    ("onshell", args.onshell.to_string()),
                ],
                &["k0", "k1", "kbar0", "kbar1", "re_energy", "im_energy"],
            );
            for r in &rows {
                doc.row(&[
                    r.k0.to_string(),
                    r.k1.to_string(),
                    r.kbar0.to_string(),
                    r.kbar1.to_string(),
                    fmt_f64(r.re_energy),
                    fmt_f64(r.im_energy),
                ]);
            }
            doc.comment(&format!("mode_count={}", modes.len()));
            doc.comment(&format!("min_re_energy={}", fmt_f64(min_re)));
            doc.comment(&format!("max_re_energy={}", fmt_f64(max_re)));
            if let Some(eq) = matches_spin {
                doc.comment(&format!("matches_spin_spectrum={eq}"));
            }
            emit(args.output.out.as_deref(), &doc.finish())?;
        }
        Format::Json => {
            let doc = Doc {
                schema_version: 1,
                config: Config {
                    command: "particle",
                    s: args.s.clone(),
                    two_s,
                    mass: args.mass,
                    box_length: args.box_length,
                    energy: energy_name.into(),
                    onshell: args.onshell,
                },
                mode_count: modes.len(),
                min_re_energy: min_re,
                max_re_energy: max_re,
                positive_definite: min_re > 0.0,
                matches_spin_spectrum: matches_spin,
                rows,
            };
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            emit(args.output.out.as_deref(), &text)?;
        }
        Format::Svg => bail!("particle has no svg rendering; use csv or json"),
    }
    Ok(())
}
