//! Hypercubic grids over the momentum-like coordinates conjugate to phase
//! space, and the operators living on them.
//!
//! On these grids the phase-space coordinate operators act as
//! `-i d/d pi_a`, realized by spectral (Fourier) differentiation — exact on
//! band-limited functions — while multiplication by `pi_a` is diagonal in the
//! principal-value (sawtooth) grid coordinate. The generator of physical-time
//! evolution for a classical system with polynomial gradient components is
//! assembled as `-sum_{a,b} pi_a omega^{ab} (d_b H)(phi_hat)`.

use std::sync::Arc;

use ndarray::Array1;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::classical::ClassicalSystem;
use crate::error::{Error, Result};
use crate::types::{BasisTag, OperatorMatrix, PhasePolynomial, StateVector};

/// Largest operator dimension that may be materialized densely.
pub const DENSE_DIM_CAP: usize = 1 << 14;

/// One axis of a grid over conjugate-momentum space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiAxis {
    pub sites: usize,
    pub extent: f64,
}

/// Grid over the 2n conjugate coordinates, ordered like phase space itself:
/// the axis conjugate to `q^i` first, then those conjugate to `p^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiGrid {
    axes: Vec<PiAxis>,
}

impl PiGrid {
    pub fn new(axes: Vec<PiAxis>) -> Result<Self> {
        if axes.is_empty() || axes.len() % 2 != 0 {
            return Err(Error::InvalidParameter(
                "grid needs an even, positive number of axes".into(),
            ));
        }
        for ax in &axes {
            if ax.sites < 2 {
                return Err(Error::InvalidParameter("each axis needs >= 2 sites".into()));
            }
            if ax.extent <= 0.0 || !ax.extent.is_finite() {
                return Err(Error::InvalidParameter("axis extent must be positive".into()));
            }
        }
        Ok(Self { axes })
    }

    /// Square grid: `axes` axes with identical site count and extent.
    pub fn square(axes: usize, sites: usize, extent: f64) -> Result<Self> {
        Self::new(vec![PiAxis { sites, extent }; axes])
    }

    pub fn axes(&self) -> &[PiAxis] {
        &self.axes
    }

    pub fn num_axes(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.sites).collect()
    }

    pub fn dim(&self) -> usize {
        self.axes.iter().map(|a| a.sites).product()
    }

    pub fn basis(&self) -> BasisTag {
        BasisTag::Hypercubic { shape: self.shape() }
    }

    /// Principal-value coordinate of site `j` on `axis`:
    /// `(j - floor(M/2)) * extent / M`.
    pub fn site_coordinate(&self, axis: usize, j: usize) -> f64 {
        let ax = self.axes[axis];
        (j as f64 - (ax.sites / 2) as f64) * ax.extent / ax.sites as f64
    }

    /// Fourier frequency of bin `k` on `axis`: `2 pi f / extent` with the
    /// integer `f` in the symmetric principal band.
    pub fn frequency(&self, axis: usize, k: usize) -> f64 {
        let ax = self.axes[axis];
        let m = ax.sites;
        let f = if k < m - m / 2 { k as i64 } else { k as i64 - m as i64 };
        2.0 * std::f64::consts::PI * f as f64 / ax.extent
    }

    fn coordinates(&self, axis: usize) -> Vec<f64> {
        (0..self.axes[axis].sites).map(|j| self.site_coordinate(axis, j)).collect()
    }

    fn frequencies(&self, axis: usize) -> Vec<f64> {
        (0..self.axes[axis].sites).map(|k| self.frequency(axis, k)).collect()
    }

    /// Row-major multi-index of a flattened position.
    fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.axes.len()];
        for (a, ax) in self.axes.iter().enumerate().rev() {
            idx[a] = flat % ax.sites;
            flat /= ax.sites;
        }
        idx
    }

    /// Plane wave `exp(i sum_a kappa_a pi_a)` with on-grid frequencies given
    /// by their integer band indices.
    pub fn plane_wave(&self, freq_indices: &[i64]) -> Result<StateVector> {
        if freq_indices.len() != self.axes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.axes.len(),
                found: freq_indices.len(),
            });
        }
        for (a, (&f, ax)) in freq_indices.iter().zip(&self.axes).enumerate() {
            let m = ax.sites as i64;
            if f < -(m / 2) || f >= m - m / 2 {
                return Err(Error::InvalidParameter(format!(
                    "frequency index {f} outside the principal band on axis {a}"
                )));
            }
        }
        let kappas: Vec<f64> = freq_indices
            .iter()
            .zip(&self.axes)
            .map(|(&f, ax)| 2.0 * std::f64::consts::PI * f as f64 / ax.extent)
            .collect();
        let dim = self.dim();
        let mut amp = Array1::zeros(dim);
        for flat in 0..dim {
            let idx = self.unravel(flat);
            let phase: f64 = idx
                .iter()
                .enumerate()
                .map(|(a, &j)| kappas[a] * self.site_coordinate(a, j))
                .sum();
            amp[flat] = Complex64::from_polar(1.0, phase);
        }
        StateVector::new(amp, self.basis())
    }

    /// Normalized isotropic Gaussian centered at the origin of the grid.
    pub fn gaussian_state(&self, sigma: f64) -> Result<StateVector> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidParameter("sigma must be positive".into()));
        }
        let dim = self.dim();
        let mut amp = Array1::zeros(dim);
        for flat in 0..dim {
            let idx = self.unravel(flat);
            let r2: f64 = idx
                .iter()
                .enumerate()
                .map(|(a, &j)| self.site_coordinate(a, j).powi(2))
                .sum();
            amp[flat] = Complex64::new((-r2 / (2.0 * sigma * sigma)).exp(), 0.0);
        }
        let state = StateVector::new(amp, self.basis())?;
        Ok(state.normalized())
    }
}

/// In-place FFT along one axis of a row-major flattened hypercubic array.
fn fft_axis(
    data: &mut [Complex64],
    shape: &[usize],
    axis: usize,
    fft: &Arc<dyn Fft<f64>>,
    normalize: Option<f64>,
) {
    let m = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let mut lane = vec![Complex64::new(0.0, 0.0); m];
    for o in 0..outer {
        for i in 0..inner {
            let base = o * m * inner + i;
            for (r, slot) in lane.iter_mut().enumerate() {
                *slot = data[base + r * inner];
            }
            fft.process(&mut lane);
            match normalize {
                Some(scale) => {
                    for (r, &v) in lane.iter().enumerate() {
                        data[base + r * inner] = v * scale;
                    }
                }
                None => {
                    for (r, &v) in lane.iter().enumerate() {
                        data[base + r * inner] = v;
                    }
                }
            }
        }
    }
}

struct FftSet {
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
    shape: Vec<usize>,
}

impl FftSet {
    fn for_grid(grid: &PiGrid) -> Self {
        let mut planner = FftPlanner::new();
        let shape = grid.shape();
        let forward = shape.iter().map(|&m| planner.plan_fft_forward(m)).collect();
        let inverse = shape.iter().map(|&m| planner.plan_fft_inverse(m)).collect();
        Self { forward, inverse, shape }
    }

    fn forward_all(&self, data: &mut [Complex64]) {
        for axis in 0..self.shape.len() {
            fft_axis(data, &self.shape, axis, &self.forward[axis], None);
        }
    }

    fn inverse_all(&self, data: &mut [Complex64]) {
        for axis in 0..self.shape.len() {
            let scale = 1.0 / self.shape[axis] as f64;
            fft_axis(data, &self.shape, axis, &self.inverse[axis], Some(scale));
        }
    }
}

/// Checks that a polynomial respects the band limit of the grid: degree on
/// each axis at most half the site count.
fn check_band_limit(poly: &PhasePolynomial, grid: &PiGrid) -> Result<()> {
    if poly.vars() != grid.num_axes() {
        return Err(Error::DimensionMismatch {
            expected: grid.num_axes(),
            found: poly.vars(),
        });
    }
    for (a, ax) in grid.axes().iter().enumerate() {
        let deg = poly.degree_in(a);
        let limit = (ax.sites / 2) as u32;
        if deg > limit {
            return Err(Error::Resolution { degree: deg, limit });
        }
    }
    Ok(())
}

/// Evaluates a polynomial at the frequency vector of every flattened grid bin.
fn multiplier_table(poly: &PhasePolynomial, grid: &PiGrid) -> Vec<f64> {
    let freqs: Vec<Vec<f64>> = (0..grid.num_axes()).map(|a| grid.frequencies(a)).collect();
    let dim = grid.dim();
    let mut table = vec![0.0; dim];
    let mut point = vec![0.0; grid.num_axes()];
    for (flat, slot) in table.iter_mut().enumerate() {
        let idx = grid.unravel(flat);
        for (a, &k) in idx.iter().enumerate() {
            point[a] = freqs[a][k];
        }
        *slot = poly.eval(&point);
    }
    table
}

struct DiagTerm {
    /// Axis whose sawtooth coordinate multiplies pointwise.
    pi_axis: usize,
    /// Sign from the symplectic pairing, including the overall minus.
    coeff: f64,
    /// Gradient component as a Fourier multiplier over the frequency grid.
    multiplier: Vec<f64>,
}

/// Generator of physical-time evolution for `system` on `grid`:
/// `-sum_{a,b} pi_a omega^{ab} (d_b H)(phi_hat)`, applied matrix-free through
/// FFTs and materialized densely on demand.
pub struct EffectiveHamiltonian {
    grid: PiGrid,
    terms: Vec<DiagTerm>,
    ffts: FftSet,
    coords: Vec<Vec<f64>>,
}

impl EffectiveHamiltonian {
    pub fn new(system: &ClassicalSystem, grid: PiGrid) -> Result<Self> {
        let components = system.polynomial_gradient().ok_or_else(|| {
            Error::UnsupportedSystem(format!(
                "'{}' has no polynomial gradient registered",
                system.label()
            ))
        })?;
        if grid.num_axes() != system.phase_dim() {
            return Err(Error::DimensionMismatch {
                expected: system.phase_dim(),
                found: grid.num_axes(),
            });
        }
        let n = system.dof();
        let mut terms = Vec::new();
        // -pi.omega.gradH: the (q_i, p_i) pairing contributes
        // -pi_{q_i} g_{p_i} + pi_{p_i} g_{q_i}.
        for i in 0..n {
            for (pi_axis, grad_axis, coeff) in
                [(i, n + i, -1.0), (n + i, i, 1.0)]
            {
                let g = &components[grad_axis];
                if g.terms().is_empty() {
                    continue;
                }
                check_band_limit(g, &grid)?;
                terms.push(DiagTerm {
                    pi_axis,
                    coeff,
                    multiplier: multiplier_table(g, &grid),
                });
            }
        }
        let ffts = FftSet::for_grid(&grid);
        let coords = (0..grid.num_axes()).map(|a| grid.coordinates(a)).collect();
        Ok(Self { grid, terms, ffts, coords })
    }

    pub fn grid(&self) -> &PiGrid {
        &self.grid
    }

    /// Applies the generator to a state without materializing the matrix.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.basis() != &self.grid.basis() {
            return Err(Error::BasisMismatch);
        }
        let dim = self.grid.dim();
        let mut hat: Vec<Complex64> = state.amplitudes().to_vec();
        self.ffts.forward_all(&mut hat);

        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        let mut work = vec![Complex64::new(0.0, 0.0); dim];
        for term in &self.terms {
            work.copy_from_slice(&hat);
            for (w, &m) in work.iter_mut().zip(term.multiplier.iter()) {
                *w *= m;
            }
            self.ffts.inverse_all(&mut work);
            // Pointwise sawtooth coordinate along the term's pi axis.
            let inner: usize =
                self.grid.shape()[term.pi_axis + 1..].iter().product();
            let m_axis = self.grid.shape()[term.pi_axis];
            for (flat, w) in work.iter().enumerate() {
                let j = (flat / inner) % m_axis;
                out[flat] += *w * (term.coeff * self.coords[term.pi_axis][j]);
            }
        }
        StateVector::result(Array1::from_vec(out), self.grid.basis())
    }

    /// Dense matrix of the generator; refused above the dense-dimension cap.
    pub fn to_matrix(&self) -> Result<OperatorMatrix> {
        materialize(self.grid.dim(), self.grid.basis(), |basis_state| self.apply(basis_state))
    }
}

/// Builds the dense effective Hamiltonian in one call.
pub fn effective_hamiltonian(system: &ClassicalSystem, grid: &PiGrid) -> Result<OperatorMatrix> {
    EffectiveHamiltonian::new(system, grid.clone())?.to_matrix()
}

fn materialize(
    dim: usize,
    basis: BasisTag,
    mut apply: impl FnMut(&StateVector) -> Result<StateVector>,
) -> Result<OperatorMatrix> {
    if dim > DENSE_DIM_CAP {
        return Err(Error::ResourceLimit { requested: dim, cap: DENSE_DIM_CAP });
    }
    let mut cols = ndarray::Array2::zeros((dim, dim));
    for j in 0..dim {
        let mut e = Array1::zeros(dim);
        e[j] = Complex64::new(1.0, 0.0);
        let col = apply(&StateVector::new(e, basis.clone())?)?;
        cols.column_mut(j).assign(col.amplitudes());
    }
    OperatorMatrix::new(cols, basis)
}

/// Applies `poly(phi_hat)` to a state by Fourier multiplication.
pub fn apply_observable(
    poly: &PhasePolynomial,
    grid: &PiGrid,
    state: &StateVector,
) -> Result<StateVector> {
    if state.basis() != &grid.basis() {
        return Err(Error::BasisMismatch);
    }
    check_band_limit(poly, grid)?;
    let ffts = FftSet::for_grid(grid);
    let table = multiplier_table(poly, grid);
    let mut data: Vec<Complex64> = state.amplitudes().to_vec();
    ffts.forward_all(&mut data);
    for (d, &m) in data.iter_mut().zip(table.iter()) {
        *d *= m;
    }
    ffts.inverse_all(&mut data);
    StateVector::result(Array1::from_vec(data), grid.basis())
}

/// Dense matrix of the observable `poly(phi_hat)` built by spectral
/// differentiation. Degrees beyond the grid band limit are refused.
pub fn observable_operator(poly: &PhasePolynomial, grid: &PiGrid) -> Result<OperatorMatrix> {
    check_band_limit(poly, grid)?;
    let ffts = FftSet::for_grid(grid);
    let table = multiplier_table(poly, grid);
    materialize(grid.dim(), grid.basis(), |state| {
        let mut data: Vec<Complex64> = state.amplitudes().to_vec();
        ffts.forward_all(&mut data);
        for (d, &m) in data.iter_mut().zip(table.iter()) {
            *d *= m;
        }
        ffts.inverse_all(&mut data);
        StateVector::result(Array1::from_vec(data), grid.basis())
    })
}

/// `-pi . omega . gradH(kappa)` evaluated from the registered polynomial
/// gradient, at the sawtooth coordinates of a flattened grid site. This is the
/// multiplication symbol a band-limited plane wave of frequency `kappa` picks
/// up under the effective Hamiltonian.
pub fn plane_wave_symbol(
    system: &ClassicalSystem,
    grid: &PiGrid,
    flat_site: usize,
    kappa: &[f64],
) -> Result<f64> {
    let components = system.polynomial_gradient().ok_or_else(|| {
        Error::UnsupportedSystem(format!(
            "'{}' has no polynomial gradient registered",
            system.label()
        ))
    })?;
    let n = system.dof();
    let idx = grid.unravel(flat_site);
    let mut total = 0.0;
    for i in 0..n {
        let pi_q = grid.site_coordinate(i, idx[i]);
        let pi_p = grid.site_coordinate(n + i, idx[n + i]);
        total += -pi_q * components[n + i].eval(kappa) + pi_p * components[i].eval(kappa);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{free_particle, harmonic_oscillator};
    use crate::types::PolyTerm;

    #[test]
    fn frequencies_match_fft_convention() {
        let grid = PiGrid::square(2, 8, 4.0).unwrap();
        let f: Vec<f64> = (0..8).map(|k| grid.frequency(0, k)).collect();
        let scale = 2.0 * std::f64::consts::PI / 4.0;
        let want = [0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0];
        for (got, w) in f.iter().zip(want.iter()) {
            assert!((got - w * scale).abs() < 1e-15);
        }
    }

    #[test]
    fn coordinates_are_sawtooth_centered() {
        let grid = PiGrid::square(2, 4, 8.0).unwrap();
        let c: Vec<f64> = (0..4).map(|j| grid.site_coordinate(0, j)).collect();
        assert_eq!(c, vec![-4.0, -2.0, 0.0, 2.0]);
    }

    #[test]
    fn observable_multiplies_plane_wave_by_polynomial_value() {
        let grid = PiGrid::square(2, 16, 10.0).unwrap();
        let wave = grid.plane_wave(&[3, -2]).unwrap();
        // O = phi_q (first coordinate operator)
        let poly = PhasePolynomial::linear(2, 0, 1.0);
        let out = apply_observable(&poly, &grid, &wave).unwrap();
        let kq = grid.frequency(0, 3);
        for i in 0..grid.dim() {
            let want = wave.amplitudes()[i] * kq;
            assert!((out.amplitudes()[i] - want).norm() < 1e-10);
        }
    }

    #[test]
    fn constant_observable_is_identity() {
        let grid = PiGrid::square(2, 8, 5.0).unwrap();
        let poly = PhasePolynomial::constant(2, 1.0);
        let op = observable_operator(&poly, &grid).unwrap();
        let id = OperatorMatrix::identity(grid.dim(), grid.basis()).unwrap();
        assert!(op.max_abs_diff(&id) < 1e-12);
    }

    #[test]
    fn band_limit_enforced() {
        let grid = PiGrid::square(2, 8, 5.0).unwrap();
        let poly = PhasePolynomial::new(
            2,
            vec![PolyTerm { coeff: 1.0, powers: vec![5, 0] }],
        )
        .unwrap();
        assert!(matches!(
            observable_operator(&poly, &grid),
            Err(Error::Resolution { .. })
        ));
    }

    #[test]
    fn oscillator_generator_matches_structural_form() {
        // i diag(pi_q) D_pi_p - i Om^2 diag(pi_p) D_pi_q, with D the spectral
        // derivative: checked entrywise against the assembled matrix.
        let omega = 1.3f64;
        let sys = harmonic_oscillator(omega, 0.5);
        let grid = PiGrid::square(2, 8, 6.0).unwrap();
        let built = effective_hamiltonian(&sys, &grid).unwrap();

        // Assemble independently from 1-D pieces: D = F^-1 diag(kappa) F by a
        // direct DFT sum.
        let m = 8usize;
        let mut d = ndarray::Array2::<Complex64>::zeros((m, m));
        for r in 0..m {
            for c in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..m {
                    let fm = if k < m - m / 2 { k as i64 } else { k as i64 - m as i64 };
                    let phase =
                        2.0 * std::f64::consts::PI * (r as f64 - c as f64) * fm as f64 / m as f64;
                    acc += Complex64::from_polar(1.0, phase) * grid.frequency(0, k);
                }
                d[(r, c)] = acc / m as f64;
            }
        }
        let coords: Vec<f64> = (0..m).map(|j| grid.site_coordinate(0, j)).collect();
        let dim = m * m;
        let mut want = ndarray::Array2::<Complex64>::zeros((dim, dim));
        for r0 in 0..m {
            for c0 in 0..m {
                for r1 in 0..m {
                    for c1 in 0..m {
                        let mut v = Complex64::new(0.0, 0.0);
                        // -pi_q * phi_p : phi_p acts on axis 1
                        if r0 == c0 {
                            v += -coords[r0] * d[(r1, c1)];
                        }
                        // +Om^2 pi_p * phi_q : phi_q acts on axis 0
                        if r1 == c1 {
                            v += omega * omega * coords[r1] * d[(r0, c0)];
                        }
                        want[(r0 * m + r1, c0 * m + c1)] = v;
                    }
                }
            }
        }
        let want_op = OperatorMatrix::new(want, grid.basis()).unwrap();
        assert!(
            built.max_abs_diff(&want_op) < 1e-10,
            "structural mismatch {}",
            built.max_abs_diff(&want_op)
        );
    }

    #[test]
    fn constant_hamiltonian_gives_zero_operator() {
        let sys = crate::classical::ClassicalSystem::new(
            "const",
            1,
            0.0,
            |_| 1.0,
            |_| vec![0.0, 0.0],
        )
        .with_polynomial_gradient(vec![PhasePolynomial::zero(2), PhasePolynomial::zero(2)])
        .unwrap();
        let grid = PiGrid::square(2, 4, 3.0).unwrap();
        let op = effective_hamiltonian(&sys, &grid).unwrap();
        assert!(op.max_abs() < 1e-15);
    }

    #[test]
    fn plane_wave_picks_up_symbol() {
        for sys in [harmonic_oscillator(1.0, 0.5), free_particle(1, 1.0)] {
            let grid = PiGrid::square(2, 32, 20.0).unwrap();
            let op = EffectiveHamiltonian::new(&sys, grid.clone()).unwrap();
            let wave = grid.plane_wave(&[3, -5]).unwrap();
            let kappa = [grid.frequency(0, 3), grid.frequency(1, 32 - 5)];
            let out = op.apply(&wave).unwrap();
            // interior sites only: skip the two outermost layers per axis
            for flat in 0..grid.dim() {
                let idx = grid.unravel(flat);
                if idx.iter().any(|&j| j < 2 || j >= 30) {
                    continue;
                }
                let sym = plane_wave_symbol(&sys, &grid, flat, &kappa).unwrap();
                let want = wave.amplitudes()[flat] * sym;
                assert!(
                    (out.amplitudes()[flat] - want).norm() < 1e-8,
                    "site {idx:?}"
                );
            }
        }
    }

    #[test]
    fn dense_cap_enforced() {
        let sys = harmonic_oscillator(1.0, 0.5);
        let grid = PiGrid::square(2, 256, 10.0).unwrap(); // dim 65536 > 2^14
        let op = EffectiveHamiltonian::new(&sys, grid).unwrap();
        assert!(matches!(op.to_matrix(), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn rejects_system_without_polynomial_gradient() {
        let sys = crate::classical::ClassicalSystem::new(
            "opaque",
            1,
            0.0,
            |x| x[0].sin(),
            |x| vec![x[0].cos(), 0.0],
        );
        let grid = PiGrid::square(2, 8, 5.0).unwrap();
        assert!(matches!(
            EffectiveHamiltonian::new(&sys, grid),
            Err(Error::UnsupportedSystem(_))
        ));
    }
}
