//! Free-particle spectrum on a hypercubic phase-space lattice with periodic
//! boundary phases, its continuum limit, and the on-shell mode selection that
//! feeds the spin-regularized cross-check.
//!
//! Everything here is closed-form per mode; the lattice is never materialized
//! as a matrix. Vector products use the metric signature `(+, -, ..., -)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Enumeration cap: mode lists above this size must be streamed, not
/// collected.
pub const ENUMERATION_CAP: usize = 1 << 24;

/// Which energy expression to attach to enumerated modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyModel {
    /// Exact finite-spacing expression built from one-sided differences;
    /// complex at finite spacing.
    FiniteSpacing,
    /// Its `l -> 0` limit at fixed box length: the Minkowski bilinear
    /// `m^-1 (k_x + d_x) . (k_xbar + d_xbar)` in physical momentum units.
    ContinuumLimit,
}

/// Hypercubic lattice over the doubled coordinates `(x, xbar)` with `N` sites
/// per axis, spacing `l`, and per-axis boundary phase constants.
#[derive(Clone, Debug, PartialEq)]
pub struct HypercubicLattice {
    sites_per_axis: usize,
    spacing: f64,
    dims: usize,
    mass: f64,
    delta_x: Vec<f64>,
    delta_xbar: Vec<f64>,
}

impl HypercubicLattice {
    pub fn new(
        sites_per_axis: usize,
        spacing: f64,
        dims: usize,
        mass: f64,
        delta_x: Vec<f64>,
        delta_xbar: Vec<f64>,
    ) -> Result<Self> {
        if dims != 2 && dims != 4 {
            return Err(Error::InvalidParameter("dims must be 2 or 4".into()));
        }
        if sites_per_axis == 0 {
            return Err(Error::InvalidParameter("need at least 1 site per axis".into()));
        }
        if dims == 4 && sites_per_axis > 16 {
            // Closed-form enumeration only; 16^8 modes is already the limit of
            // what streaming makes sense for.
            return Err(Error::ResourceLimit { requested: sites_per_axis, cap: 16 });
        }
        if spacing <= 0.0 || !spacing.is_finite() {
            return Err(Error::InvalidParameter("spacing must be positive".into()));
        }
        if mass <= 0.0 || !mass.is_finite() {
            return Err(Error::InvalidParameter("mass must be positive".into()));
        }
        if delta_x.len() != dims || delta_xbar.len() != dims {
            return Err(Error::DimensionMismatch { expected: dims, found: delta_x.len() });
        }
        Ok(Self { sites_per_axis, spacing, dims, mass, delta_x, delta_xbar })
    }

    /// The 1+1-dimensional lattice with the phase choice that makes the
    /// massless on-shell spectrum positive: `dbar^0 = 1/2`,
    /// `dbar^1 = 1/2 - (2s + 3)`, unbarred phases zero, on `N = 2s + 1` sites.
    pub fn with_canonical_phases(two_s: u32, mass: f64, box_length: f64) -> Result<Self> {
        let n = two_s as usize + 1;
        let s = two_s as f64 / 2.0;
        Self::new(
            n,
            box_length / n as f64,
            2,
            mass,
            vec![0.0, 0.0],
            vec![0.5, 0.5 - (2.0 * s + 3.0)],
        )
    }

    pub fn sites_per_axis(&self) -> usize {
        self.sites_per_axis
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn delta_x(&self) -> &[f64] {
        &self.delta_x
    }

    pub fn delta_xbar(&self) -> &[f64] {
        &self.delta_xbar
    }

    /// `L = N l`, exactly.
    pub fn box_length(&self) -> f64 {
        self.sites_per_axis as f64 * self.spacing
    }

    /// `(2 pi / (sqrt(m) L))^2`, the frequency scale of the emergent model.
    pub fn omega_prefactor(&self) -> f64 {
        let l = self.box_length();
        let v = 2.0 * std::f64::consts::PI / (self.mass.sqrt() * l);
        v * v
    }

    fn metric(&self, mu: usize) -> f64 {
        if mu == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Total number of `(k, kbar)` mode pairs.
    pub fn mode_count(&self) -> usize {
        self.sites_per_axis.pow(2 * self.dims as u32)
    }
}

/// One lattice eigenmode: integer momentum labels in `1..=N` per axis for the
/// unbarred and barred sectors, and the attached energy.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeMode {
    pub k: Vec<u32>,
    pub kbar: Vec<u32>,
    pub energy: Complex64,
}

/// Energy of one mode pair under the requested model.
pub fn mode_energy(
    lat: &HypercubicLattice,
    k: &[u32],
    kbar: &[u32],
    model: EnergyModel,
) -> Result<Complex64> {
    if k.len() != lat.dims() || kbar.len() != lat.dims() {
        return Err(Error::DimensionMismatch { expected: lat.dims(), found: k.len() });
    }
    let n = lat.sites_per_axis() as f64;
    match model {
        EnergyModel::FiniteSpacing => {
            let l = lat.spacing();
            let mut acc = Complex64::new(0.0, 0.0);
            for mu in 0..lat.dims() {
                // l * (k_x + d_x)^mu = 2 pi (k^mu + d^mu) / N
                let a = 2.0 * std::f64::consts::PI * (k[mu] as f64 + lat.delta_x[mu]) / n;
                let b = 2.0 * std::f64::consts::PI * (kbar[mu] as f64 + lat.delta_xbar[mu]) / n;
                let fa = Complex64::from_polar(1.0, a) - 1.0;
                let fb = Complex64::from_polar(1.0, b) - 1.0;
                acc += lat.metric(mu) * fa * fb;
            }
            Ok(-acc / (lat.mass() * l * l))
        }
        EnergyModel::ContinuumLimit => {
            let scale = (2.0 * std::f64::consts::PI / lat.box_length()).powi(2) / lat.mass();
            let mut acc = 0.0;
            for mu in 0..lat.dims() {
                acc += lat.metric(mu)
                    * (k[mu] as f64 + lat.delta_x[mu])
                    * (kbar[mu] as f64 + lat.delta_xbar[mu]);
            }
            Ok(Complex64::new(scale * acc, 0.0))
        }
    }
}

/// Streams every `(k, kbar)` mode pair without collecting.
pub fn for_each_mode<F: FnMut(&[u32], &[u32], Complex64)>(
    lat: &HypercubicLattice,
    model: EnergyModel,
    mut f: F,
) -> Result<()> {
    let d = lat.dims();
    let n = lat.sites_per_axis() as u32;
    let mut labels = vec![1u32; 2 * d];
    loop {
        let (k, kbar) = labels.split_at(d);
        let e = mode_energy(lat, k, kbar, model)?;
        f(k, kbar, e);
        // odometer increment over 1..=N per slot
        let mut slot = 0;
        loop {
            if slot == 2 * d {
                return Ok(());
            }
            if labels[slot] < n {
                labels[slot] += 1;
                break;
            }
            labels[slot] = 1;
            slot += 1;
        }
    }
}

/// Full enumeration of the spectrum over `k, kbar in {1..N}^dims`. Refused
/// above the collection cap; stream with [`for_each_mode`] instead.
pub fn free_particle_spectrum(
    lat: &HypercubicLattice,
    model: EnergyModel,
) -> Result<Vec<LatticeMode>> {
    let count = lat.mode_count();
    if count > ENUMERATION_CAP {
        return Err(Error::ResourceLimit { requested: count, cap: ENUMERATION_CAP });
    }
    let mut out = Vec::with_capacity(count);
    for_each_mode(lat, model, |k, kbar, energy| {
        out.push(LatticeMode { k: k.to_vec(), kbar: kbar.to_vec(), energy });
    })?;
    Ok(out)
}

/// Keeps the modes whose barred momentum satisfies the massless positive-root
/// on-shell relation `(kbar^0 + dbar^0) = -(kbar^1 + dbar^1)` within 1e-9.
/// Only defined for the 1+1-dimensional lattice.
pub fn onshell_select(lat: &HypercubicLattice, modes: &[LatticeMode]) -> Result<Vec<LatticeMode>> {
    if lat.dims() != 2 {
        return Err(Error::UnsupportedQuery(
            "on-shell selection is defined for dims = 2".into(),
        ));
    }
    Ok(modes
        .iter()
        .filter(|m| {
            let lhs = m.kbar[0] as f64 + lat.delta_xbar[0];
            let rhs = -(m.kbar[1] as f64 + lat.delta_xbar[1]);
            (lhs - rhs).abs() <= 1e-9
        })
        .cloned()
        .collect())
}
