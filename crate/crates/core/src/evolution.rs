//! Evolution matrices, the composition rule, the clock-averaged discrete time
//! step, stationary-state residuals, and (constrained) expectation values.

use num_complex::Complex64;

use crate::clock::{quadrature, ClockDistribution};
use crate::error::{Error, Result};
use crate::spectral::{expm, hermitian_function, unitarity_defect};
use crate::types::{OperatorMatrix, StateVector};

/// Outcome of applying an evolution matrix to a state.
#[derive(Clone, Debug)]
pub struct EvolutionResult {
    pub state: StateVector,
    /// Post/pre norm ratio; 1 within 1e-12 for Hermitian generators.
    pub norm_ratio: f64,
    /// `||U† U - I||_max` of the evolution matrix used.
    pub unitarity_defect: f64,
}

/// `exp(-i tau H)`: eigendecomposition when the generator is Hermitian,
/// scaling-and-squaring otherwise.
pub fn evolution_matrix(h: &OperatorMatrix, tau: f64) -> Result<OperatorMatrix> {
    if !tau.is_finite() {
        return Err(Error::InvalidParameter("tau must be finite".into()));
    }
    let u = if h.is_hermitian() {
        hermitian_function(h, |x| Complex64::from_polar(1.0, -tau * x))?
    } else {
        let gen = h.entries().mapv(|z| z * Complex64::new(0.0, -tau));
        expm(&gen)
    };
    OperatorMatrix::new(u, h.basis().clone())
}

/// Applies `exp(-i tau H)` to a state, reporting the norm ratio and the
/// unitarity defect of the matrix used.
pub fn evolve(psi: &StateVector, h: &OperatorMatrix, tau: f64) -> Result<EvolutionResult> {
    let u = evolution_matrix(h, tau)?;
    let state = u.apply(psi)?;
    Ok(EvolutionResult {
        norm_ratio: state.norm() / psi.norm(),
        unitarity_defect: unitarity_defect(u.entries()),
        state,
    })
}

/// `||U(a) U(b) - U(a+b)||_max` for the evolution generated by `h`.
pub fn compose_residual(h: &OperatorMatrix, a: f64, b: f64) -> Result<f64> {
    let ua = evolution_matrix(h, a)?;
    let ub = evolution_matrix(h, b)?;
    let uab = evolution_matrix(h, a + b)?;
    Ok(ua.matmul(&ub)?.max_abs_diff(&uab))
}

/// One discrete physical-time step of size `t_step` under the clock
/// distribution: the proper-time offset is quadrature-averaged,
///
/// `psi' = sum_k w_k exp(-i (T - tau_k) H) psi(tau_k)`,
///
/// with the history states supplied by the proper-time translation property
/// `psi(tau) = exp(-i tau H) psi`. Under that property the average telescopes
/// to `exp(-i T H) psi` for any normalized clock, which is exactly what makes
/// the step well-defined; the reference proper-time offset is gauge and fixed
/// to zero.
pub fn discrete_step(
    psi: &StateVector,
    h: &OperatorMatrix,
    clock: &ClockDistribution,
    t_step: f64,
    quad_nodes: usize,
) -> Result<StateVector> {
    if psi.basis() != h.basis() {
        return Err(Error::BasisMismatch);
    }
    if t_step <= 0.0 || !t_step.is_finite() {
        return Err(Error::InvalidParameter("t_step must be positive".into()));
    }
    let rule = quadrature(clock, quad_nodes)?;
    let dim = psi.dim();
    let mut acc = ndarray::Array1::<Complex64>::zeros(dim);
    for (&tau_k, &w_k) in rule.nodes().iter().zip(rule.weights()) {
        let history = evolution_matrix(h, tau_k)?.apply(psi)?;
        let stepped = evolution_matrix(h, t_step - tau_k)?.apply(&history)?;
        acc.scaled_add(Complex64::new(w_k, 0.0), stepped.amplitudes());
    }
    StateVector::result(acc, psi.basis().clone())
}

/// `||H psi - E psi|| / ||psi||`.
pub fn stationary_residual(psi: &StateVector, h: &OperatorMatrix, energy: f64) -> Result<f64> {
    let hpsi = h.apply(psi)?;
    let dim = psi.dim();
    let mut num = 0.0f64;
    for i in 0..dim {
        num += (hpsi.amplitudes()[i] - energy * psi.amplitudes()[i]).norm_sqr();
    }
    Ok(num.sqrt() / psi.norm())
}

fn require_normalized(psi: &StateVector) -> Result<()> {
    if (psi.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "state norm {} is not 1",
            psi.norm()
        )));
    }
    Ok(())
}

/// `<psi| O |psi>` for a normalized state; real within 1e-12 when O is
/// Hermitian.
pub fn expectation(psi: &StateVector, o: &OperatorMatrix) -> Result<Complex64> {
    require_normalized(psi)?;
    let opsi = o.apply(psi)?;
    Ok(psi.inner(&opsi))
}

/// Constrained expectation `<psi| O C |psi>` with C a spectral-window
/// projector: C must be Hermitian and idempotent.
pub fn constrained_expectation(
    psi: &StateVector,
    o: &OperatorMatrix,
    c: &OperatorMatrix,
) -> Result<Complex64> {
    require_normalized(psi)?;
    if !c.is_hermitian() {
        let defect = c.max_abs_diff(&c.adjoint());
        return Err(Error::NotHermitian { defect });
    }
    let c2 = c.matmul(c)?;
    let defect = c2.max_abs_diff(c);
    if defect > 1e-10 {
        return Err(Error::NotIdempotent { defect });
    }
    let cpsi = c.apply(psi)?;
    let ocpsi = o.apply(&cpsi)?;
    Ok(psi.inner(&ocpsi))
}

/// Per-mode norm-growth factors `exp(tau Im E_m)` implied by a complex
/// spectrum; 1 for every mode iff the spectrum is real.
pub fn mode_growth_factors(eigenvalues: &[Complex64], tau: f64) -> Vec<f64> {
    eigenvalues.iter().map(|e| (tau * e.im).exp()).collect()
}
