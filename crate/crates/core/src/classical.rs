//! Reparametrization-invariant classical systems: phase space, symplectic
//! structure, Hamiltonian constraint, and proper-time propagation both by
//! fixed-step integration and by the exponentiated linear flow.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::spectral::expm;
use crate::types::PhasePolynomial;

/// Point on 2n-dimensional phase space, ordered `(q^1..q^n, p^1..p^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    coords: Vec<f64>,
}

impl PhasePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() % 2 != 0 || coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: coords.len() + 1,
                found: coords.len(),
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite { context: "phase point" });
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// The block form `omega = [[0, I], [-I, 0]]` acting on 2n components.
#[derive(Clone, Copy, Debug)]
pub struct SymplecticForm {
    dof: usize,
}

impl SymplecticForm {
    pub fn new(dof: usize) -> Self {
        Self { dof }
    }

    pub fn dof(&self) -> usize {
        self.dof
    }

    /// `(omega v)^a = sum_b omega^{ab} v_b`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dof;
        debug_assert_eq!(v.len(), 2 * n);
        let mut out = vec![0.0; 2 * n];
        for i in 0..n {
            out[i] = v[n + i];
            out[n + i] = -v[i];
        }
        out
    }

    pub fn matrix(&self) -> Array2<f64> {
        let n = self.dof;
        let mut m = Array2::zeros((2 * n, 2 * n));
        for i in 0..n {
            m[(i, n + i)] = 1.0;
            m[(n + i, i)] = -1.0;
        }
        m
    }
}

type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type VectorFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A proper-time-independent Hamiltonian on 2n-dimensional phase space with
/// its gradient and the constraint energy `epsilon`.
///
/// The Hamiltonian and gradient are plain callbacks; systems whose gradient
/// components are polynomials in the coordinates can additionally register
/// coefficient tables, which the grid-operator builders require.
#[derive(Clone)]
pub struct ClassicalSystem {
    label: String,
    dof: usize,
    epsilon: f64,
    hamiltonian: ScalarFn,
    gradient: VectorFn,
    polynomial_gradient: Option<Vec<PhasePolynomial>>,
}

impl std::fmt::Debug for ClassicalSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassicalSystem")
            .field("label", &self.label)
            .field("dof", &self.dof)
            .field("epsilon", &self.epsilon)
            .finish()
    }
}

impl ClassicalSystem {
    pub fn new<H, G>(label: &str, dof: usize, epsilon: f64, hamiltonian: H, gradient: G) -> Self
    where
        H: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Self {
            label: label.to_string(),
            dof,
            epsilon,
            hamiltonian: Arc::new(hamiltonian),
            gradient: Arc::new(gradient),
            polynomial_gradient: None,
        }
    }

    /// Registers the gradient components as polynomials in the phase-space
    /// coordinates; required by the effective-Hamiltonian grid builder.
    pub fn with_polynomial_gradient(mut self, components: Vec<PhasePolynomial>) -> Result<Self> {
        if components.len() != 2 * self.dof {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.dof,
                found: components.len(),
            });
        }
        self.polynomial_gradient = Some(components);
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dof(&self) -> usize {
        self.dof
    }

    pub fn phase_dim(&self) -> usize {
        2 * self.dof
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn hamiltonian(&self, point: &PhasePoint) -> f64 {
        (self.hamiltonian)(point.coords())
    }

    pub fn gradient(&self, point: &PhasePoint) -> Vec<f64> {
        (self.gradient)(point.coords())
    }

    pub fn polynomial_gradient(&self) -> Option<&[PhasePolynomial]> {
        self.polynomial_gradient.as_deref()
    }

    fn check_dim(&self, point: &PhasePoint) -> Result<()> {
        if point.dim() != self.phase_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.phase_dim(),
                found: point.dim(),
            });
        }
        Ok(())
    }

    /// Worst relative deviation between the registered gradient and a central
    /// finite-difference estimate over `probes` random points.
    pub fn gradient_consistency<R: Rng>(&self, probes: usize, rng: &mut R) -> f64 {
        let dim = self.phase_dim();
        let h = 1e-6;
        let mut worst = 0.0f64;
        for _ in 0..probes {
            let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let grad = (self.gradient)(&x);
            let scale = grad.iter().map(|g| g.abs()).fold(1.0, f64::max);
            for a in 0..dim {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[a] += h;
                xm[a] -= h;
                let fd = ((self.hamiltonian)(&xp) - (self.hamiltonian)(&xm)) / (2.0 * h);
                worst = worst.max((grad[a] - fd).abs() / scale);
            }
        }
        worst
    }
}

/// Harmonic oscillator `H = (p^2 + Omega^2 q^2)/2` with constraint energy
/// `epsilon`.
pub fn harmonic_oscillator(omega: f64, epsilon: f64) -> ClassicalSystem {
    let om2 = omega * omega;
    ClassicalSystem::new(
        "harmonic-oscillator",
        1,
        epsilon,
        move |x| 0.5 * (x[1] * x[1] + om2 * x[0] * x[0]),
        move |x| vec![om2 * x[0], x[1]],
    )
    .with_polynomial_gradient(vec![
        PhasePolynomial::linear(2, 0, om2),
        PhasePolynomial::linear(2, 1, 1.0),
    ])
    .expect("component count matches")
}

/// Free nonrelativistic particle with `dof` degrees of freedom,
/// `H = sum_i p_i^2 / (2m)`.
pub fn free_particle(dof: usize, mass: f64) -> ClassicalSystem {
    let dim = 2 * dof;
    ClassicalSystem::new(
        "free-particle",
        dof,
        0.0,
        move |x| x[dof..].iter().map(|p| p * p).sum::<f64>() / (2.0 * mass),
        move |x| {
            let mut g = vec![0.0; dim];
            for i in 0..dof {
                g[dof + i] = x[dof + i] / mass;
            }
            g
        },
    )
    .with_polynomial_gradient(
        (0..dim)
            .map(|a| {
                if a < dof {
                    PhasePolynomial::zero(dim)
                } else {
                    PhasePolynomial::linear(dim, a, 1.0 / mass)
                }
            })
            .collect(),
    )
    .expect("component count matches")
}

/// Free relativistic particle in `spacetime_dims` (2 or 4) dimensions,
/// `H = g^{mu nu} p_mu p_nu / (2m)` with metric signature `(+, -, ..., -)`
/// and covariant momentum components stored. On the constraint surface
/// `H = m/2`, equivalent to the mass-shell condition `p.p = m^2`.
pub fn relativistic_particle(mass: f64, spacetime_dims: usize) -> Result<ClassicalSystem> {
    if spacetime_dims != 2 && spacetime_dims != 4 {
        return Err(Error::InvalidParameter(format!(
            "spacetime_dims must be 2 or 4, got {spacetime_dims}"
        )));
    }
    let dof = spacetime_dims;
    let dim = 2 * dof;
    let metric: Vec<f64> = (0..dof).map(|mu| if mu == 0 { 1.0 } else { -1.0 }).collect();
    let metric_h = metric.clone();
    let metric_g = metric.clone();
    let sys = ClassicalSystem::new(
        "relativistic-particle",
        dof,
        mass / 2.0,
        move |x| {
            (0..dof).map(|mu| metric_h[mu] * x[dof + mu] * x[dof + mu]).sum::<f64>()
                / (2.0 * mass)
        },
        move |x| {
            let mut g = vec![0.0; dim];
            for mu in 0..dof {
                g[dof + mu] = metric_g[mu] * x[dof + mu] / mass;
            }
            g
        },
    );
    sys.with_polynomial_gradient(
        (0..dim)
            .map(|a| {
                if a < dof {
                    PhasePolynomial::zero(dim)
                } else {
                    PhasePolynomial::linear(dim, a, metric[a - dof] / mass)
                }
            })
            .collect(),
    )
}

/// Right-hand side of the proper-time equations of motion,
/// `d phi^a / d tau = omega^{ab} d_b H`.
pub fn eom_rhs(system: &ClassicalSystem, point: &PhasePoint) -> Result<Vec<f64>> {
    system.check_dim(point)?;
    let grad = system.gradient(point);
    Ok(SymplecticForm::new(system.dof()).apply(&grad))
}

/// `H(point) - epsilon`; vanishes on the constraint surface.
pub fn constraint_residual(system: &ClassicalSystem, point: &PhasePoint) -> Result<f64> {
    system.check_dim(point)?;
    Ok(system.hamiltonian(point) - system.epsilon())
}

/// Classical state at proper time `tau` by fixed-step 4th-order integration.
/// The final step is shortened so the trajectory lands exactly on `tau`.
pub fn integrate_trajectory(
    system: &ClassicalSystem,
    start: &PhasePoint,
    tau: f64,
    step: f64,
) -> Result<PhasePoint> {
    system.check_dim(start)?;
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::InvalidParameter("tau must be nonnegative".into()));
    }
    let dim = system.phase_dim();
    let rhs = |x: &[f64]| -> Vec<f64> {
        SymplecticForm::new(system.dof()).apply(&(system.gradient)(x))
    };

    let mut x = start.coords().to_vec();
    let mut t = 0.0;
    while t < tau {
        let dt = step.min(tau - t);
        let k1 = rhs(&x);
        let x2: Vec<f64> = (0..dim).map(|i| x[i] + 0.5 * dt * k1[i]).collect();
        let k2 = rhs(&x2);
        let x3: Vec<f64> = (0..dim).map(|i| x[i] + 0.5 * dt * k2[i]).collect();
        let k3 = rhs(&x3);
        let x4: Vec<f64> = (0..dim).map(|i| x[i] + dt * k3[i]).collect();
        let k4 = rhs(&x4);
        for i in 0..dim {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { tau: t + dt });
        }
        t += dt;
    }
    PhasePoint::new(x)
}

/// Hessian of H by central differences of the gradient, step 1e-5.
fn hessian_at(system: &ClassicalSystem, x: &[f64]) -> Array2<f64> {
    let dim = system.phase_dim();
    let h = 1e-5;
    let mut hess = Array2::zeros((dim, dim));
    for b in 0..dim {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[b] += h;
        xm[b] -= h;
        let gp = (system.gradient)(&xp);
        let gm = (system.gradient)(&xm);
        for a in 0..dim {
            hess[(a, b)] = (gp[a] - gm[a]) / (2.0 * h);
        }
    }
    // Symmetrize: mixed partials commute, finite differences only almost.
    for a in 0..dim {
        for b in 0..a {
            let s = 0.5 * (hess[(a, b)] + hess[(b, a)]);
            hess[(a, b)] = s;
            hess[(b, a)] = s;
        }
    }
    hess
}

/// Transports `start` along the flow by `exp(M tau)` with
/// `M = omega . Hessian(H)`. The closed-form exponential applies to quadratic
/// Hamiltonians (linear equations of motion) only; anything else is refused
/// and remains the business of `integrate_trajectory`.
pub fn liouville_propagate(
    system: &ClassicalSystem,
    start: &PhasePoint,
    tau: f64,
) -> Result<PhasePoint> {
    system.check_dim(start)?;
    let dim = system.phase_dim();

    // Probe quadratic structure: constant Hessian and vanishing gradient at 0.
    let origin = vec![0.0; dim];
    let probe: Vec<f64> = (0..dim).map(|i| 0.37 + 0.21 * i as f64).collect();
    let h0 = hessian_at(system, &origin);
    let h1 = hessian_at(system, &probe);
    let scale = h0.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let hess_drift = h0
        .iter()
        .zip(h1.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let grad0 = (system.gradient)(&origin)
        .iter()
        .map(|g| g.abs())
        .fold(0.0, f64::max);
    if hess_drift > 1e-4 * scale || grad0 > 1e-8 * scale {
        return Err(Error::UnsupportedSystem(format!(
            "'{}' is not quadratic; the exponential flow needs linear equations of motion",
            system.label()
        )));
    }

    let omega = SymplecticForm::new(system.dof()).matrix();
    let m = omega.dot(&h0).mapv(|x| Complex64::new(x * tau, 0.0));
    let u = expm(&m);
    let mut out = vec![0.0; dim];
    for a in 0..dim {
        let mut acc = 0.0;
        for b in 0..dim {
            acc += u[(a, b)].re * start.coords()[b];
        }
        out[a] = acc;
    }
    PhasePoint::new(out)
}
