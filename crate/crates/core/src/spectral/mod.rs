//! Eigensolvers, spectral matching, and convergence analysis shared by the
//! operator modules.
//!
//! Dense solves are delegated to faer (self-adjoint path when the cached
//! Hermiticity flag is set); every reported spectrum carries a certified
//! residual. The twisted-circulant fast path evaluates the symbol at twisted
//! Fourier frequencies and serves as the second, independent route for shift
//! generators.

mod expm;

pub use expm::expm;

use faer::prelude::*;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::OperatorMatrix;

/// Full spectrum with a certified worst-case eigenpair residual.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    /// Eigenvalues sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Whether the Hermitian solver path was used.
    pub hermitian: bool,
    /// `max_i ||A v_i - lambda_i v_i||_inf` over unit-norm eigenvectors.
    pub residual_max: f64,
}

fn to_faer(a: &Array2<Complex64>) -> Mat<c64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Eigenpairs of a Hermitian operator: ascending real eigenvalues and the
/// matching orthonormal eigenvector columns.
pub fn hermitian_eigenpairs(op: &OperatorMatrix) -> Result<(Vec<f64>, Array2<Complex64>)> {
    if !op.is_hermitian() {
        let defect = op.max_abs_diff(&op.adjoint());
        return Err(Error::NotHermitian { defect });
    }
    let evd = to_faer(op.entries())
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Solver(format!("{e:?}")))?;
    let n = op.dim();
    let values: Vec<f64> = (0..n).map(|i| evd.S().column_vector()[i].re).collect();
    let vectors = Array2::from_shape_fn((n, n), |(i, j)| evd.U()[(i, j)]);
    Ok((values, vectors))
}

/// Eigenpairs of a general complex operator (right eigenvectors).
pub fn general_eigenpairs(op: &OperatorMatrix) -> Result<(Vec<Complex64>, Array2<Complex64>)> {
    let evd = to_faer(op.entries())
        .eigen()
        .map_err(|e| Error::Solver(format!("{e:?}")))?;
    let n = op.dim();
    let values: Vec<Complex64> = (0..n).map(|i| evd.S().column_vector()[i]).collect();
    let vectors = Array2::from_shape_fn((n, n), |(i, j)| evd.U()[(i, j)]);
    Ok((values, vectors))
}

fn certify_residual(
    a: &Array2<Complex64>,
    values: &[Complex64],
    vectors: &Array2<Complex64>,
) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for (j, &lambda) in values.iter().enumerate() {
        let v = vectors.column(j);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return f64::INFINITY;
        }
        let av = a.dot(&v.to_owned());
        let mut r = 0.0f64;
        for i in 0..n {
            r = r.max((av[i] - lambda * v[i]).norm());
        }
        worst = worst.max(r / norm);
    }
    worst
}

/// Full spectrum of `op`, Hermitian path when the flag is set, with the
/// eigenpair residuals certified rather than assumed.
pub fn eig(op: &OperatorMatrix) -> Result<SpectrumReport> {
    let (values, vectors) = if op.is_hermitian() {
        let (vals, vecs) = hermitian_eigenpairs(op)?;
        (vals.into_iter().map(|x| Complex64::new(x, 0.0)).collect::<Vec<_>>(), vecs)
    } else {
        general_eigenpairs(op)?
    };
    let residual_max = certify_residual(op.entries(), &values, &vectors);
    let bound = 1e-9 * op.max_abs().max(1e-300);
    if residual_max > bound {
        return Err(Error::Solver(format!(
            "eigenpair residual {residual_max:.3e} exceeds certification bound {bound:.3e}"
        )));
    }
    let mut eigenvalues = values;
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(SpectrumReport { eigenvalues, hermitian: op.is_hermitian(), residual_max })
}

/// Eigenvalues of the twisted circulant with the given first row: the symbol
/// `sum_j c_j z^j` evaluated at `z = exp(2 pi i (m + twist)/N)`, `m = 1..=N`.
///
/// Plane waves with a twisted wavenumber diagonalize every twisted cyclic
/// shift, so this is exact for any generator assembled from such shifts.
pub fn circulant_eig(first_row: &[Complex64], twist: f64) -> Vec<Complex64> {
    let n = first_row.len();
    let tau = 2.0 * std::f64::consts::PI;
    (1..=n)
        .map(|m| {
            let theta = tau * (m as f64 + twist) / n as f64;
            first_row
                .iter()
                .enumerate()
                .map(|(j, &cj)| cj * Complex64::from_polar(1.0, theta * j as f64))
                .sum()
        })
        .collect()
}

/// Matches each label to its nearest numeric eigenvalue, bijectively; fails
/// if two labels claim the same numeric value (degenerate label sets should
/// use sorted pairing instead). Returns the matched numeric values in label
/// order.
pub fn match_nearest_bijective(
    numeric: &[Complex64],
    labels: &[Complex64],
) -> Result<Vec<Complex64>> {
    if numeric.len() != labels.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), found: numeric.len() });
    }
    let mut used = vec![false; numeric.len()];
    let mut out = Vec::with_capacity(labels.len());
    for &label in labels {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (i, &v) in numeric.iter().enumerate() {
            let d = (v - label).norm();
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        if used[best] {
            return Err(Error::Solver(format!(
                "ambiguous eigenvalue assignment near {label}"
            )));
        }
        used[best] = true;
        out.push(numeric[best]);
    }
    Ok(out)
}

/// Pairs two real spectra in sorted order and returns the worst absolute
/// deviation. Exact degeneracies pair harmlessly.
pub fn max_sorted_real_deviation(numeric: &[f64], labels: &[f64]) -> Result<f64> {
    if numeric.len() != labels.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), found: numeric.len() });
    }
    let mut a = numeric.to_vec();
    let mut b = labels.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    Ok(a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// Nearest numeric value to a single label (non-bijective); used for tracking
/// a fixed low mode across grid refinements where the local gap dwarfs the
/// solver error.
pub fn nearest_to(numeric: &[Complex64], label: Complex64) -> Option<Complex64> {
    numeric
        .iter()
        .copied()
        .min_by(|a, b| (a - label).norm().total_cmp(&(b - label).norm()))
}

/// Outcome of the log-log order fit.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FitOutcome {
    /// Least-squares slope over the largest decade of N.
    Fitted { order: f64, r_squared: f64 },
    /// Raw data kept, fit refused.
    Rejected { reason: String },
}

/// Per-resolution errors against a reference together with the fitted
/// convergence order.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub ns: Vec<usize>,
    pub errors: Vec<f64>,
    pub fit: FitOutcome,
}

impl ConvergenceReport {
    pub fn fitted_order(&self) -> Option<f64> {
        match &self.fit {
            FitOutcome::Fitted { order, .. } => Some(*order),
            FitOutcome::Rejected { .. } => None,
        }
    }
}

/// Floor below which errors are treated as rounding noise and the fit is
/// rejected as degenerate.
const DEGENERATE_ERROR_FLOOR: f64 = 1e-14;

/// Runs `tracked_at` against `reference_at` over the resolutions `ns`
/// (in parallel), records the worst tracked-mode error per resolution, and
/// fits the convergence order by ordinary least squares on log-log axes over
/// the largest decade of N. Non-monotone or floor-level errors reject the
/// fit; the raw data is reported either way.
pub fn convergence_study<S, R>(
    tracked_at: S,
    reference_at: R,
    ns: &[usize],
) -> Result<ConvergenceReport>
where
    S: Fn(usize) -> Result<Vec<Complex64>> + Sync,
    R: Fn(usize) -> Vec<Complex64> + Sync,
{
    if ns.len() < 2 {
        return Err(Error::InvalidParameter("need at least 2 resolutions".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("resolutions must be strictly increasing".into()));
    }
    let errors: Vec<f64> = ns
        .par_iter()
        .map(|&n| -> Result<f64> {
            let got = tracked_at(n)?;
            let want = reference_at(n);
            if got.len() != want.len() {
                return Err(Error::DimensionMismatch { expected: want.len(), found: got.len() });
            }
            Ok(got
                .iter()
                .zip(want.iter())
                .map(|(g, w)| (g - w).norm())
                .fold(0.0, f64::max))
        })
        .collect::<Result<Vec<_>>>()?;

    let fit = fit_order(ns, &errors);
    Ok(ConvergenceReport { ns: ns.to_vec(), errors, fit })
}

fn fit_order(ns: &[usize], errors: &[f64]) -> FitOutcome {
    if errors.iter().all(|&e| e <= DEGENERATE_ERROR_FLOOR) {
        return FitOutcome::Rejected { reason: "errors at rounding floor; fit degenerate".into() };
    }
    if errors.iter().any(|&e| e <= 0.0) {
        return FitOutcome::Rejected { reason: "non-positive error in sequence".into() };
    }
    if errors.windows(2).any(|w| w[1] > w[0]) {
        return FitOutcome::Rejected { reason: "errors not monotonically decreasing".into() };
    }

    // Largest decade only; coarser resolutions are pre-asymptotic.
    let n_max = *ns.last().expect("nonempty") as f64;
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(errors.iter())
        .filter(|(&n, _)| n as f64 >= n_max / 10.0)
        .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
        .collect();
    let pts = if pts.len() >= 2 {
        pts
    } else {
        let k = ns.len();
        ns[k - 2..]
            .iter()
            .zip(errors[k - 2..].iter())
            .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
            .collect()
    };

    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return FitOutcome::Rejected { reason: "degenerate abscissae".into() };
    }
    let slope = (m * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / m;
    let mean_y = sy / m;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if ss_tot < 1e-300 {
        return FitOutcome::Rejected { reason: "flat error sequence".into() };
    }
    let r_squared = 1.0 - ss_res / ss_tot;
    if r_squared < 0.99 {
        return FitOutcome::Rejected {
            reason: format!("r_squared {r_squared:.4} below 0.99"),
        };
    }
    FitOutcome::Fitted { order: slope, r_squared }
}

/// Unitarity defect `||U† U - I||_max`.
pub fn unitarity_defect(u: &Array2<Complex64>) -> f64 {
    let n = u.nrows();
    let udag = u.t().mapv(|z| z.conj());
    let prod = udag.dot(u);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((prod[(i, j)] - want).norm());
        }
    }
    worst
}

/// Applies a function to the eigenvalues of a Hermitian operator:
/// `f(H) = V f(Lambda) V†`.
pub fn hermitian_function(
    op: &OperatorMatrix,
    f: impl Fn(f64) -> Complex64,
) -> Result<Array2<Complex64>> {
    let (values, vectors) = hermitian_eigenpairs(op)?;
    let fv: Array1<Complex64> = values.iter().map(|&x| f(x)).collect();
    let mut scaled = vectors.clone();
    for (j, mut col) in scaled.columns_mut().into_iter().enumerate() {
        let factor = fv[j];
        col.map_inplace(|z| *z *= factor);
    }
    let vdag = vectors.t().mapv(|z| z.conj());
    Ok(scaled.dot(&vdag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::BasisTag;

    fn op_from(entries: Array2<Complex64>) -> OperatorMatrix {
        let dim = entries.nrows();
        OperatorMatrix::new(entries, BasisTag::Generic { dim }).unwrap()
    }

    #[test]
    fn diagonal_spectrum() {
        let mut d = Array2::<Complex64>::zeros((3, 3));
        for (i, v) in [1.0, 2.0, 3.0].iter().enumerate() {
            d[(i, i)] = Complex64::new(*v, 0.0);
        }
        let report = eig(&op_from(d)).unwrap();
        assert!(report.hermitian);
        for (got, want) in report.eigenvalues.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got.re - want).abs() < 1e-14);
            assert!(got.im.abs() < 1e-14);
        }
    }

    #[test]
    fn hermitian_spectrum_is_real() {
        let n = 24;
        let h = Array2::from_shape_fn((n, n), |(i, j)| {
            let re = (((i * 13 + j * 5) % 9) as f64 - 4.0) / 3.0;
            let im = if i == j { 0.0 } else { ((i + 2 * j) % 7) as f64 - 3.0 };
            Complex64::new(re, im)
        });
        let herm = (&h + &h.t().mapv(|z: Complex64| z.conj())).mapv(|z| z * 0.5);
        let report = eig(&op_from(herm)).unwrap();
        assert!(report.hermitian);
        assert!(report.eigenvalues.iter().all(|z| z.im.abs() <= 1e-10));
    }

    #[test]
    fn plain_shift_symbol_gives_roots_of_unity() {
        let n = 6;
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        row[1] = Complex64::new(1.0, 0.0);
        let eigs = circulant_eig(&row, 0.0);
        for (m, e) in (1..=n).zip(eigs) {
            let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / n as f64);
            assert!((e - want).norm() < 1e-14);
        }
    }

    #[test]
    fn integer_twist_reproduces_untwisted_set() {
        let n = 8;
        let row: Vec<Complex64> =
            (0..n).map(|j| Complex64::new(j as f64 * 0.3 - 1.0, 0.1 * j as f64)).collect();
        let mut a = circulant_eig(&row, 0.0);
        let mut b = circulant_eig(&row, 1.0);
        let key = |z: &Complex64| (z.re, z.im);
        a.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        b.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn bijective_matching_rejects_collisions() {
        let numeric = [Complex64::new(1.0, 0.0), Complex64::new(5.0, 0.0)];
        let labels = [Complex64::new(1.0, 0.0), Complex64::new(1.1, 0.0)];
        assert!(match_nearest_bijective(&numeric, &labels).is_err());
    }

    #[test]
    fn convergence_fit_recovers_known_order() {
        let ns = [64usize, 128, 256, 512, 1024, 2048, 4096];
        let report = convergence_study(
            |n| Ok(vec![Complex64::new(1.0 + 3.0 / (n as f64).powi(2), 0.0)]),
            |_| vec![Complex64::new(1.0, 0.0)],
            &ns,
        )
        .unwrap();
        match report.fit {
            FitOutcome::Fitted { order, r_squared } => {
                assert!((order + 2.0).abs() < 1e-6, "order {order}");
                assert!(r_squared > 0.999999);
            }
            FitOutcome::Rejected { reason } => panic!("fit rejected: {reason}"),
        }
    }

    #[test]
    fn exact_sequence_rejected_as_degenerate() {
        let ns = [16usize, 32, 64];
        let report = convergence_study(
            |_| Ok(vec![Complex64::new(2.0, 0.0)]),
            |_| vec![Complex64::new(2.0, 0.0)],
            &ns,
        )
        .unwrap();
        assert!(matches!(report.fit, FitOutcome::Rejected { .. }));
        assert!(report.errors.iter().all(|&e| e <= 1e-14));
    }

    #[test]
    fn non_monotone_errors_reject_fit() {
        let ns = [16usize, 32, 64, 128];
        let seq = [1e-2, 1e-3, 5e-3, 1e-4];
        let report = convergence_study(
            |n| {
                let idx = ns.iter().position(|&x| x == n).unwrap();
                Ok(vec![Complex64::new(1.0 + seq[idx], 0.0)])
            },
            |_| vec![Complex64::new(1.0, 0.0)],
            &ns,
        )
        .unwrap();
        assert!(matches!(report.fit, FitOutcome::Rejected { .. }));
        assert_eq!(report.errors.len(), 4);
    }
}
