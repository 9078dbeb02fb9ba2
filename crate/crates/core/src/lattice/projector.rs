//! Spectral-window realization of the constraint projector: the projector
//! onto the span of eigenvectors whose eigenvalue falls within a window
//! around the constraint energy.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::hermitian_eigenpairs;
use crate::types::OperatorMatrix;

/// Projector onto the eigenspace of a Hermitian operator with eigenvalues in
/// `[epsilon - window, epsilon + window]`, together with how many modes the
/// window caught. An empty window is legal and yields the zero matrix;
/// callers should surface `selected == 0` in their reports.
#[derive(Clone, Debug)]
pub struct ConstraintProjector {
    matrix: OperatorMatrix,
    selected: usize,
    epsilon: f64,
    window: f64,
}

impl ConstraintProjector {
    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> OperatorMatrix {
        self.matrix
    }

    pub fn selected(&self) -> usize {
        self.selected
    }

    pub fn is_empty(&self) -> bool {
        self.selected == 0
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn window(&self) -> f64 {
        self.window
    }
}

/// Builds the spectral-window projector for a Hermitian operator.
pub fn constraint_projector(
    ham: &OperatorMatrix,
    epsilon: f64,
    window: f64,
) -> Result<ConstraintProjector> {
    if window <= 0.0 || !window.is_finite() {
        return Err(Error::InvalidParameter("window must be positive".into()));
    }
    if !ham.is_hermitian() {
        let defect = ham.max_abs_diff(&ham.adjoint());
        return Err(Error::NotHermitian { defect });
    }
    let (values, vectors) = hermitian_eigenpairs(ham)?;
    let n = ham.dim();
    let picked: Vec<usize> = (0..n)
        .filter(|&i| (values[i] - epsilon).abs() <= window)
        .collect();

    let mut p = Array2::<Complex64>::zeros((n, n));
    for &idx in &picked {
        let v = vectors.column(idx);
        for r in 0..n {
            for c in 0..n {
                p[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    // Symmetrize away rounding; the projector is Hermitian by construction.
    for r in 0..n {
        for c in 0..r {
            let avg = 0.5 * (p[(r, c)] + p[(c, r)].conj());
            p[(r, c)] = avg;
            p[(c, r)] = avg.conj();
        }
        p[(r, r)] = Complex64::new(p[(r, r)].re, 0.0);
    }
    let matrix = OperatorMatrix::new(p, ham.basis().clone())?;
    Ok(ConstraintProjector { matrix, selected: picked.len(), epsilon, window })
}

/// Default window for a given constraint energy: half the gap between the
/// eigenvalue closest to `epsilon` and its nearest spectrally distinct
/// neighbor.
pub fn default_window(ham: &OperatorMatrix, epsilon: f64) -> Result<f64> {
    let (values, _) = hermitian_eigenpairs(ham)?;
    let mut sorted = values;
    sorted.sort_by(f64::total_cmp);
    let nearest = sorted
        .iter()
        .copied()
        .min_by(|a, b| (a - epsilon).abs().total_cmp(&(b - epsilon).abs()))
        .expect("nonempty spectrum");
    let gap = sorted
        .iter()
        .map(|&v| (v - nearest).abs())
        .filter(|&d| d > 1e-12)
        .fold(f64::INFINITY, f64::min);
    if gap.is_finite() {
        Ok(0.5 * gap)
    } else {
        // Single distinct eigenvalue: any positive window selects everything.
        Ok(1e-6 * nearest.abs().max(1.0))
    }
}
