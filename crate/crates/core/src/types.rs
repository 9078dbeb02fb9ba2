//! Shared carriers: complex operator matrices with basis metadata, state
//! vectors, and multivariate phase-space polynomials.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance defining the cached Hermiticity flag: `max|A - A†| <= HERMITIAN_TOL`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Identifies the basis an operator or state is expressed in. Operators only
/// act on states carrying the same tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisTag {
    /// Equidistant angular grid with `sites` points on the circle.
    Angular { sites: usize },
    /// Hypercubic grid over momentum-like coordinates, one entry per axis.
    Hypercubic { shape: Vec<usize> },
    /// Spin representation of dimension `two_s + 1`, `s_z` descending.
    Spin { two_s: u32 },
    /// Tensor product of factor bases, slowest index first.
    Tensor(Vec<BasisTag>),
    /// No structure beyond the dimension.
    Generic { dim: usize },
}

impl BasisTag {
    pub fn dim(&self) -> usize {
        match self {
            BasisTag::Angular { sites } => *sites,
            BasisTag::Hypercubic { shape } => shape.iter().product(),
            BasisTag::Spin { two_s } => *two_s as usize + 1,
            BasisTag::Tensor(factors) => factors.iter().map(BasisTag::dim).product(),
            BasisTag::Generic { dim } => *dim,
        }
    }
}

/// Dense complex square matrix together with its basis and a verified
/// Hermiticity flag.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    entries: Array2<Complex64>,
    basis: BasisTag,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wraps a dense matrix, verifying squareness, finiteness and basis
    /// dimension, and caching the Hermiticity flag.
    pub fn new(entries: Array2<Complex64>, basis: BasisTag) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != c {
            return Err(Error::DimensionMismatch { expected: r, found: c });
        }
        if basis.dim() != r {
            return Err(Error::DimensionMismatch { expected: basis.dim(), found: r });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { context: "operator entries" });
        }
        let hermitian = hermiticity_defect(&entries) <= HERMITIAN_TOL;
        Ok(Self { entries, basis, hermitian })
    }

    pub fn identity(dim: usize, basis: BasisTag) -> Result<Self> {
        Self::new(Array2::eye(dim).mapv(|x: f64| Complex64::new(x, 0.0)), basis)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn basis(&self) -> &BasisTag {
        &self.basis
    }

    /// True iff `max|A - A†| <= 1e-12`, established at construction.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn adjoint(&self) -> Self {
        let adj = self.entries.t().mapv(|z| z.conj());
        Self { entries: adj, basis: self.basis.clone(), hermitian: self.hermitian }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        Self::new(self.entries.dot(&rhs.entries), self.basis.clone())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let entries = self.entries.mapv(|z| z * factor);
        let hermitian = hermiticity_defect(&entries) <= HERMITIAN_TOL;
        Self { entries, basis: self.basis.clone(), hermitian }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        Self::new(&self.entries + &rhs.entries, self.basis.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        Self::new(&self.entries - &rhs.entries, self.basis.clone())
    }

    /// Max-norm of the difference, the workhorse of all residual checks.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Commutator `[self, rhs]`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        let ab = self.entries.dot(&rhs.entries);
        let ba = rhs.entries.dot(&self.entries);
        Self::new(ab - ba, self.basis.clone())
    }

    /// Kronecker product; the result carries a tensor basis.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let (n, m) = (self.dim(), rhs.dim());
        let mut out = Array2::zeros((n * m, n * m));
        for i in 0..n {
            for j in 0..n {
                let a = self.entries[(i, j)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * rhs.entries[(k, l)];
                    }
                }
            }
        }
        let basis = BasisTag::Tensor(vec![self.basis.clone(), rhs.basis.clone()]);
        Self::new(out, basis)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.basis() != self.basis() {
            return Err(Error::BasisMismatch);
        }
        StateVector::result(self.entries.dot(state.amplitudes()), self.basis.clone())
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }
}

pub(crate) fn hermiticity_defect(a: &Array2<Complex64>) -> f64 {
    let n = a.nrows();
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in i..n {
            defect = defect.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    defect
}

/// Complex amplitude vector tagged with the basis it lives in.
#[derive(Clone, Debug)]
pub struct StateVector {
    amplitudes: Array1<Complex64>,
    basis: BasisTag,
}

impl StateVector {
    pub fn new(amplitudes: Array1<Complex64>, basis: BasisTag) -> Result<Self> {
        let state = Self::result(amplitudes, basis)?;
        if state.norm() <= 0.0 {
            return Err(Error::InvalidParameter("state has zero norm".into()));
        }
        Ok(state)
    }

    /// Constructor for operator outputs, which may legitimately vanish.
    pub(crate) fn result(amplitudes: Array1<Complex64>, basis: BasisTag) -> Result<Self> {
        if basis.dim() != amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { context: "state amplitudes" });
        }
        Ok(Self { amplitudes, basis })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn basis(&self) -> &BasisTag {
        &self.basis
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amplitudes: self.amplitudes.mapv(|z| z / n),
            basis: self.basis.clone(),
        }
    }

    pub fn inner(&self, rhs: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(rhs.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.basis != rhs.basis {
            return Err(Error::BasisMismatch);
        }
        // Bypass the zero-norm guard: differences of nearby states are legal.
        Ok(Self {
            amplitudes: &self.amplitudes - &rhs.amplitudes,
            basis: self.basis.clone(),
        })
    }
}

/// A single monomial `coeff * prod_a x_a^{powers[a]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTerm {
    pub coeff: f64,
    pub powers: Vec<u32>,
}

/// Real multivariate polynomial over phase-space coordinates, used both for
/// registered Hamiltonian gradients and for observables built from the
/// phase-space operator components.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePolynomial {
    vars: usize,
    terms: Vec<PolyTerm>,
}

impl PhasePolynomial {
    pub fn new(vars: usize, terms: Vec<PolyTerm>) -> Result<Self> {
        for t in &terms {
            if t.powers.len() != vars {
                return Err(Error::DimensionMismatch { expected: vars, found: t.powers.len() });
            }
            if !t.coeff.is_finite() {
                return Err(Error::NonFinite { context: "polynomial coefficient" });
            }
        }
        Ok(Self { vars, terms })
    }

    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: Vec::new() }
    }

    pub fn constant(vars: usize, value: f64) -> Self {
        Self { vars, terms: vec![PolyTerm { coeff: value, powers: vec![0; vars] }] }
    }

    /// Monomial `coeff * x_var` in `vars` variables.
    pub fn linear(vars: usize, var: usize, coeff: f64) -> Self {
        let mut powers = vec![0; vars];
        powers[var] = 1;
        Self { vars, terms: vec![PolyTerm { coeff, powers }] }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &[PolyTerm] {
        &self.terms
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.coeff
                    * t.powers
                        .iter()
                        .zip(x.iter())
                        .map(|(&p, &v)| v.powi(p as i32))
                        .product::<f64>()
            })
            .sum()
    }

    /// Largest exponent appearing on variable `var`.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.powers[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.powers.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_flag_reflects_defect() {
        let mut a = Array2::zeros((2, 2));
        a[(0, 1)] = Complex64::new(0.0, 1.0);
        a[(1, 0)] = Complex64::new(0.0, -1.0);
        let op = OperatorMatrix::new(a.clone(), BasisTag::Generic { dim: 2 }).unwrap();
        assert!(op.is_hermitian());

        a[(1, 0)] = Complex64::new(0.0, -1.0 + 1e-6);
        let op = OperatorMatrix::new(a, BasisTag::Generic { dim: 2 }).unwrap();
        assert!(!op.is_hermitian());
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        let a = Array2::<Complex64>::zeros((2, 3));
        assert!(OperatorMatrix::new(a, BasisTag::Generic { dim: 2 }).is_err());

        let mut b = Array2::<Complex64>::zeros((2, 2));
        b[(0, 0)] = Complex64::new(f64::NAN, 0.0);
        assert!(OperatorMatrix::new(b, BasisTag::Generic { dim: 2 }).is_err());
    }

    #[test]
    fn kron_dimensions_and_values() {
        let i2 = OperatorMatrix::identity(2, BasisTag::Generic { dim: 2 }).unwrap();
        let mut a = Array2::zeros((2, 2));
        a[(0, 0)] = Complex64::new(2.0, 0.0);
        a[(1, 1)] = Complex64::new(3.0, 0.0);
        let d = OperatorMatrix::new(a, BasisTag::Generic { dim: 2 }).unwrap();
        let k = d.kron(&i2).unwrap();
        assert_eq!(k.dim(), 4);
        assert_eq!(k.entries()[(0, 0)], Complex64::new(2.0, 0.0));
        assert_eq!(k.entries()[(3, 3)], Complex64::new(3.0, 0.0));
    }

    #[test]
    fn polynomial_eval_and_degrees() {
        // 3 x^2 y + 0.5 y
        let p = PhasePolynomial::new(
            2,
            vec![
                PolyTerm { coeff: 3.0, powers: vec![2, 1] },
                PolyTerm { coeff: 0.5, powers: vec![0, 1] },
            ],
        )
        .unwrap();
        assert_eq!(p.eval(&[2.0, 1.0]), 12.5);
        assert_eq!(p.degree_in(0), 2);
        assert_eq!(p.degree_in(1), 1);
        assert_eq!(p.total_degree(), 3);
    }
}
