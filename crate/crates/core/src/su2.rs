//! Spin-representation regularization of the free-particle model: spin
//! matrices, the shifted number operator `h = S_z + s + 1/2`, coordinate and
//! momentum operators built from the ladder pair, the exact finite-s operator
//! identities behind them, and the regularized Hamiltonian of three coupled
//! oscillators with its indefinite counterpart.
//!
//! All identities checked here are exact matrix statements at every finite s;
//! the continuum limit only removes the 1/(2s+1) deformations.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{BasisTag, OperatorMatrix};

/// Cap on the tensor-cube dimension of the coupled-oscillator Hamiltonian.
pub const TENSOR_DIM_CAP: usize = 1 << 15;

/// Spin-s representation in the `S_z` eigenbasis, `s_z` descending from `s`
/// to `-s`. The ladder matrices are real.
#[derive(Clone, Debug)]
pub struct SpinRep {
    two_s: u32,
    sz: Array2<f64>,
    splus: Array2<f64>,
    sminus: Array2<f64>,
}

impl SpinRep {
    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn s(&self) -> f64 {
        self.two_s as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.two_s as usize + 1
    }

    pub fn sz(&self) -> &Array2<f64> {
        &self.sz
    }

    pub fn splus(&self) -> &Array2<f64> {
        &self.splus
    }

    pub fn sminus(&self) -> &Array2<f64> {
        &self.sminus
    }

    /// `s_z` value at basis slot `i` (descending).
    pub fn sz_value(&self, i: usize) -> f64 {
        self.s() - i as f64
    }

    fn basis(&self) -> BasisTag {
        BasisTag::Spin { two_s: self.two_s }
    }

    /// `S_x = (S_+ + S_-)/2` as a complex operator.
    pub fn sx(&self) -> OperatorMatrix {
        let m = (&self.splus + &self.sminus).mapv(|x| Complex64::new(0.5 * x, 0.0));
        OperatorMatrix::new(m, self.basis()).expect("finite")
    }

    /// `S_y = (S_+ - S_-)/(2i)` as a complex operator.
    pub fn sy(&self) -> OperatorMatrix {
        let m = (&self.splus - &self.sminus).mapv(|x| Complex64::new(0.0, -0.5 * x));
        OperatorMatrix::new(m, self.basis()).expect("finite")
    }

    pub fn sz_complex(&self) -> OperatorMatrix {
        let m = self.sz.mapv(|x| Complex64::new(x, 0.0));
        OperatorMatrix::new(m, self.basis()).expect("finite")
    }
}

/// Standard spin-s matrices for `2s = two_s`.
pub fn spin_matrices(two_s: u32) -> SpinRep {
    let dim = two_s as usize + 1;
    let s = two_s as f64 / 2.0;
    let mut sz = Array2::zeros((dim, dim));
    let mut splus = Array2::zeros((dim, dim));
    for i in 0..dim {
        let m = s - i as f64;
        sz[(i, i)] = m;
        if i > 0 {
            // <m+1 | S_+ | m> with m the value at column i
            splus[(i - 1, i)] = (s * (s + 1.0) - m * (m + 1.0)).sqrt();
        }
    }
    let sminus = splus.t().to_owned();
    SpinRep { two_s, sz, splus, sminus }
}

/// Diagonal operator `h = S_z + s + 1/2` with spectrum
/// `{2s + 1/2, ..., 3/2, 1/2}` down the basis.
pub fn h_operator(rep: &SpinRep) -> OperatorMatrix {
    let dim = rep.dim();
    let mut m = Array2::zeros((dim, dim));
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rep.sz_value(i) + rep.s() + 0.5, 0.0);
    }
    OperatorMatrix::new(m, BasisTag::Spin { two_s: rep.two_s() }).expect("finite")
}

/// Ladder coefficients `(a, b)` entering the coordinate/momentum pair, with
/// the constraint `Im(a* b) = -2/(2s+1)` that fixes their commutator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub omega: f64,
}

impl OscCoefficients {
    /// The canonical choice `a = i Omega^{-1/2} / sqrt(s + 1/2)`,
    /// `b = Omega^{1/2} / sqrt(s + 1/2)`.
    pub fn canonical(two_s: u32, omega: f64) -> Result<Self> {
        if omega <= 0.0 || !omega.is_finite() {
            return Err(Error::InvalidParameter("omega must be positive".into()));
        }
        let root = (two_s as f64 / 2.0 + 0.5).sqrt();
        Ok(Self {
            a: Complex64::new(0.0, 1.0 / (omega.sqrt() * root)),
            b: Complex64::new(omega.sqrt() / root, 0.0),
            omega,
        })
    }

    /// Checks `Im(a* b) = -2/(2s+1)` to 1e-14.
    pub fn validate(&self, two_s: u32) -> Result<()> {
        let want = -2.0 / (two_s as f64 + 1.0);
        let got = (self.a.conj() * self.b).im;
        if (got - want).abs() > 1e-14 {
            return Err(Error::InvalidParameter(format!(
                "Im(a* b) = {got:.17e}, required {want:.17e}"
            )));
        }
        Ok(())
    }
}

/// Coordinate and momentum operators `q = (a S_- + a* S_+)/2`,
/// `p = (b S_- + b* S_+)/2`; both Hermitian by construction.
pub fn qp_operators(rep: &SpinRep, coeffs: &OscCoefficients) -> Result<(OperatorMatrix, OperatorMatrix)> {
    coeffs.validate(rep.two_s())?;
    let build = |c: Complex64| -> OperatorMatrix {
        let dim = rep.dim();
        let mut m = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = 0.5
                    * (c * rep.sminus()[(i, j)] + c.conj() * rep.splus()[(i, j)]);
            }
        }
        OperatorMatrix::new(m, BasisTag::Spin { two_s: rep.two_s() }).expect("finite")
    };
    let qhat = build(coeffs.a);
    let phat = build(coeffs.b);
    debug_assert!(qhat.is_hermitian() && phat.is_hermitian());
    Ok((qhat, phat))
}

/// Max-norm residuals of the exact finite-s operator identities.
#[derive(Clone, Copy, Debug)]
pub struct IdentityResiduals {
    /// `h - (S_x^2 + S_y^2 + 1/4 + h^2)/(2s+1)`.
    pub h_from_casimir: f64,
    /// `[q, p] - i (1 - 2h/(2s+1))`.
    pub qp_commutator: f64,
    /// `S_x^2 + S_y^2` against its expansion in `p^2`, `q^2` and `{q, p}`.
    pub ladder_square_sum: f64,
    /// `Omega h` against the deformed oscillator form
    /// `p^2/2 + Omega^2 q^2/2 + (Omega^2/4 + (Omega h)^2)/((2s+1) Omega)`.
    pub oscillator_closure: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.h_from_casimir
            .max(self.qp_commutator)
            .max(self.ladder_square_sum)
            .max(self.oscillator_closure)
    }
}

/// Evaluates all four identities as matrix residuals.
pub fn verify_identities(rep: &SpinRep, coeffs: &OscCoefficients) -> Result<IdentityResiduals> {
    coeffs.validate(rep.two_s())?;
    let n1 = rep.two_s() as f64 + 1.0; // 2s + 1
    let omega = coeffs.omega;
    let h = h_operator(rep);
    let sx = rep.sx();
    let sy = rep.sy();
    let sx2 = sx.matmul(&sx)?;
    let sy2 = sy.matmul(&sy)?;
    let sum_sq = sx2.add(&sy2)?;
    let h2 = h.matmul(&h)?;
    let id = OperatorMatrix::identity(rep.dim(), h.basis().clone())?;

    // (i) h = (S_x^2 + S_y^2 + 1/4 + h^2)/(2s+1)
    let rhs = sum_sq
        .add(&id.scaled(Complex64::new(0.25, 0.0)))?
        .add(&h2)?
        .scaled(Complex64::new(1.0 / n1, 0.0));
    let h_from_casimir = h.max_abs_diff(&rhs);

    let (qhat, phat) = qp_operators(rep, coeffs)?;

    // (ii) [q, p] = i (1 - 2h/(2s+1))
    let comm = qhat.commutator(&phat)?;
    let want = id
        .sub(&h.scaled(Complex64::new(2.0 / n1, 0.0)))?
        .scaled(Complex64::new(0.0, 1.0));
    let qp_commutator = comm.max_abs_diff(&want);

    // (iii) S_x^2 + S_y^2 = ((2s+1)^2/4) (|a|^2 p^2 + |b|^2 q^2 - (Im a Im b + Re a Re b) {q, p})
    let p2 = phat.matmul(&phat)?;
    let q2 = qhat.matmul(&qhat)?;
    let anti = qhat.matmul(&phat)?.add(&phat.matmul(&qhat)?)?;
    let cross = coeffs.a.im * coeffs.b.im + coeffs.a.re * coeffs.b.re;
    let rhs = p2
        .scaled(Complex64::new(coeffs.a.norm_sqr(), 0.0))
        .add(&q2.scaled(Complex64::new(coeffs.b.norm_sqr(), 0.0)))?
        .sub(&anti.scaled(Complex64::new(cross, 0.0)))?
        .scaled(Complex64::new(n1 * n1 / 4.0, 0.0));
    let ladder_square_sum = sum_sq.max_abs_diff(&rhs);

    // (iv) Omega h = p^2/2 + Omega^2 q^2/2 + (Omega^2/4 + (Omega h)^2)/((2s+1) Omega)
    let osc = p2
        .scaled(Complex64::new(0.5, 0.0))
        .add(&q2.scaled(Complex64::new(0.5 * omega * omega, 0.0)))?;
    let nonlinear = id
        .scaled(Complex64::new(omega * omega / 4.0, 0.0))
        .add(&h2.scaled(Complex64::new(omega * omega, 0.0)))?
        .scaled(Complex64::new(1.0 / (n1 * omega), 0.0));
    let lhs = h.scaled(Complex64::new(omega, 0.0));
    let oscillator_closure = lhs.max_abs_diff(&osc.add(&nonlinear)?);

    Ok(IdentityResiduals { h_from_casimir, qp_commutator, ladder_square_sum, oscillator_closure })
}

/// Closed-form eigenvalues of `p^2/2 + Omega^2 q^2/2` at finite s:
/// `Omega (n + 1/2) - (Omega/4 + Omega (n + 1/2)^2)/(2s+1)` for `n = 0..=2s`.
pub fn deformed_oscillator_eigenvalues(two_s: u32, omega: f64) -> Vec<f64> {
    let n1 = two_s as f64 + 1.0;
    (0..=two_s)
        .map(|n| {
            let x = n as f64 + 0.5;
            omega * x - (omega / 4.0 + omega * x * x) / n1
        })
        .collect()
}

fn tensor_cap_check(dim: usize) -> Result<usize> {
    let cube = dim * dim * dim;
    if cube > TENSOR_DIM_CAP {
        return Err(Error::ResourceLimit { requested: cube, cap: TENSOR_DIM_CAP });
    }
    Ok(cube)
}

/// Builds `Omega (1 + hbar + h_0 + h_1 + hbar (h_0 + h_1))` on the tensor
/// cube, factor order `(hbar, h_0, h_1)`; diagonal with a strictly positive
/// spectrum bounded below by `3 Omega`, and equal to the factorized form
/// `Omega (1 + hbar)(1 + h_0 + h_1)` exactly.
///
/// The matrix is diagonal; for large s prefer [`emergent_spectrum`], which
/// never materializes the dense cube.
pub fn emergent_hamiltonian(rep: &SpinRep, omega: f64) -> Result<OperatorMatrix> {
    tensor_cap_check(rep.dim())?;
    let h = h_operator(rep);
    let id = OperatorMatrix::identity(rep.dim(), h.basis().clone())?;
    let id2 = id.kron(&id)?;
    let h0_plus_h1 = h.kron(&id)?.add(&id.kron(&h)?)?;
    let sum = id
        .kron(&id2)?
        .add(&h.kron(&id2)?)?
        .add(&id.kron(&h0_plus_h1)?)?
        .add(&h.kron(&h0_plus_h1)?)?;
    Ok(sum.scaled(Complex64::new(omega, 0.0)))
}

/// The factorized form `Omega (1 + hbar)(1 + h_0 + h_1)` assembled as an
/// actual Kronecker product of the two factors; agrees with
/// [`emergent_hamiltonian`] exactly, entry by entry.
pub fn factorized_hamiltonian(rep: &SpinRep, omega: f64) -> Result<OperatorMatrix> {
    tensor_cap_check(rep.dim())?;
    let h = h_operator(rep);
    let id = OperatorMatrix::identity(rep.dim(), h.basis().clone())?;
    let one_plus_hbar = id.add(&h)?;
    let h0_plus_h1 = h.kron(&id)?.add(&id.kron(&h)?)?;
    let inner_dim = rep.dim() * rep.dim();
    let inner_id = OperatorMatrix::identity(inner_dim, h0_plus_h1.basis().clone())?;
    let one_plus_inner = inner_id.add(&h0_plus_h1)?;
    Ok(one_plus_hbar.kron(&one_plus_inner)?.scaled(Complex64::new(omega, 0.0)))
}

/// Spectrum of the coupled-oscillator Hamiltonian by direct enumeration of
/// the diagonal, in tensor order `(hbar, h0, h1)`.
pub fn emergent_spectrum(rep: &SpinRep, omega: f64) -> Vec<f64> {
    let dim = rep.dim();
    let hval = |i: usize| rep.sz_value(i) + rep.s() + 0.5;
    let mut out = Vec::with_capacity(dim * dim * dim);
    for ib in 0..dim {
        for i0 in 0..dim {
            for i1 in 0..dim {
                // dyadic product first, one rounding on the Omega scale
                out.push((1.0 + hval(ib)) * (1.0 + hval(i0) + hval(i1)) * omega);
            }
        }
    }
    out
}

/// The symmetric-phase counterpart `Omega (1 + hbar)(h_0 - h_1)`: the metric
/// leaves a relative sign and the spectrum is not positive definite.
pub fn indefinite_hamiltonian(rep: &SpinRep, omega: f64) -> Result<OperatorMatrix> {
    tensor_cap_check(rep.dim())?;
    let h = h_operator(rep);
    let id = OperatorMatrix::identity(rep.dim(), h.basis().clone())?;
    let one_plus_hbar = id.add(&h)?.scaled(Complex64::new(omega, 0.0));
    let h0_minus_h1 = h.kron(&id)?.sub(&id.kron(&h)?)?;
    one_plus_hbar.kron(&h0_minus_h1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{eig, hermitian_eigenpairs, max_sorted_real_deviation};
    use crate::types::StateVector;
    use ndarray::Array1;

    #[test]
    fn spin_half_matrices_are_pauli_over_two() {
        let rep = spin_matrices(1);
        assert_eq!(rep.sz()[(0, 0)], 0.5);
        assert_eq!(rep.sz()[(1, 1)], -0.5);
        assert_eq!(rep.splus()[(0, 1)], 1.0);
        assert_eq!(rep.splus()[(1, 0)], 0.0);
    }

    #[test]
    fn spin_one_ladder_entries() {
        let rep = spin_matrices(2);
        let want = 2f64.sqrt();
        assert!((rep.splus()[(0, 1)] - want).abs() < 1e-15);
        assert!((rep.splus()[(1, 2)] - want).abs() < 1e-15);
        assert_eq!(rep.sz()[(0, 0)], 1.0);
        assert_eq!(rep.sz()[(1, 1)], 0.0);
        assert_eq!(rep.sz()[(2, 2)], -1.0);
    }

    #[test]
    fn ladder_commutator_and_casimir() {
        for two_s in [1u32, 2, 3, 7, 20] {
            let rep = spin_matrices(two_s);
            let s = rep.s();
            // [S_+, S_-] = 2 S_z
            let sp = rep.splus();
            let sm = rep.sminus();
            let comm = sp.dot(sm) - sm.dot(sp);
            let defect = comm
                .indexed_iter()
                .map(|((i, j), v)| (v - 2.0 * if i == j { rep.sz_value(i) } else { 0.0 }).abs())
                .fold(0.0f64, f64::max);
            assert!(defect <= 1e-12, "2s={two_s}: ladder commutator defect {defect}");

            // S^2 = s(s+1) I
            let sx = rep.sx();
            let sy = rep.sy();
            let sz = rep.sz_complex();
            let s2 = sx
                .matmul(&sx)
                .unwrap()
                .add(&sy.matmul(&sy).unwrap())
                .unwrap()
                .add(&sz.matmul(&sz).unwrap())
                .unwrap();
            let want = OperatorMatrix::identity(rep.dim(), s2.basis().clone())
                .unwrap()
                .scaled(Complex64::new(s * (s + 1.0), 0.0));
            assert!(s2.max_abs_diff(&want) <= 1e-12, "2s={two_s} Casimir");
        }
    }

    #[test]
    fn h_operator_small_cases() {
        let h = h_operator(&spin_matrices(1));
        assert_eq!(h.entries()[(0, 0)], Complex64::new(1.5, 0.0));
        assert_eq!(h.entries()[(1, 1)], Complex64::new(0.5, 0.0));

        let h = h_operator(&spin_matrices(2));
        for (i, want) in [2.5, 1.5, 0.5].iter().enumerate() {
            assert_eq!(h.entries()[(i, i)], Complex64::new(*want, 0.0));
        }
    }

    #[test]
    fn groundstate_offset_is_half_for_any_s() {
        for two_s in [1u32, 4, 9, 31] {
            let h = h_operator(&spin_matrices(two_s));
            let min = (0..h.dim()).map(|i| h.entries()[(i, i)].re).fold(f64::INFINITY, f64::min);
            assert!((min - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn spin_half_qp_matrices_and_commutator() {
        let rep = spin_matrices(1);
        let coeffs = OscCoefficients::canonical(1, 1.0).unwrap();
        let (q, p) = qp_operators(&rep, &coeffs).unwrap();
        assert!((q.entries()[(0, 1)] - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        assert!((q.entries()[(1, 0)] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert!((p.entries()[(0, 1)] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((p.entries()[(1, 0)] - Complex64::new(0.5, 0.0)).norm() < 1e-15);

        // [q, p] = diag(-i/2, +i/2) = i(1 - h)
        let comm = q.commutator(&p).unwrap();
        assert!((comm.entries()[(0, 0)] - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        assert!((comm.entries()[(1, 1)] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn qp_traceless_and_deformed_commutator_at_s_ten() {
        let rep = spin_matrices(20);
        let coeffs = OscCoefficients::canonical(20, 2.0).unwrap();
        let (q, p) = qp_operators(&rep, &coeffs).unwrap();
        assert!(q.trace().norm() < 1e-14);
        assert!(p.trace().norm() < 1e-14);

        let comm = q.commutator(&p).unwrap();
        let h = h_operator(&rep);
        let id = OperatorMatrix::identity(rep.dim(), h.basis().clone()).unwrap();
        let want = id
            .sub(&h.scaled(Complex64::new(2.0 / 21.0, 0.0)))
            .unwrap()
            .scaled(Complex64::new(0.0, 1.0));
        assert!(comm.max_abs_diff(&want) <= 1e-12);
    }

    #[test]
    fn rejects_coefficients_violating_commutator_condition() {
        let rep = spin_matrices(3);
        let bad = OscCoefficients {
            a: Complex64::new(0.0, 1.0),
            b: Complex64::new(1.0, 0.0),
            omega: 1.0,
        };
        assert!(qp_operators(&rep, &bad).is_err());
    }

    #[test]
    fn identities_tight_at_spin_half_and_fifty() {
        let r = verify_identities(&spin_matrices(1), &OscCoefficients::canonical(1, 1.0).unwrap())
            .unwrap();
        assert!(r.max() <= 1e-14, "spin 1/2 residual {}", r.max());

        let r =
            verify_identities(&spin_matrices(100), &OscCoefficients::canonical(100, 1.0).unwrap())
                .unwrap();
        assert!(r.max() <= 1e-10, "s=50 residual {}", r.max());
    }

    #[test]
    fn deformed_eigenvalues_match_eigensolver() {
        for (two_s, omega) in [(1u32, 1.0), (5, 1.0), (20, 2.0)] {
            let rep = spin_matrices(two_s);
            let coeffs = OscCoefficients::canonical(two_s, omega).unwrap();
            let (q, p) = qp_operators(&rep, &coeffs).unwrap();
            let osc = p
                .matmul(&p)
                .unwrap()
                .scaled(Complex64::new(0.5, 0.0))
                .add(&q.matmul(&q).unwrap().scaled(Complex64::new(0.5 * omega * omega, 0.0)))
                .unwrap();
            let numeric: Vec<f64> =
                eig(&osc).unwrap().eigenvalues.iter().map(|z| z.re).collect();
            let formula = deformed_oscillator_eigenvalues(two_s, omega);
            assert!(
                max_sorted_real_deviation(&numeric, &formula).unwrap() <= 1e-10,
                "2s={two_s}"
            );
        }
    }

    #[test]
    fn continuum_commutator_residual_per_level() {
        // ||([q,p] - i I) v_n|| = (2n+1)/(2s+1) on the h-eigenvector with
        // eigenvalue n + 1/2 (slot dim-1-n in the descending basis).
        let two_s = 9u32;
        let rep = spin_matrices(two_s);
        let coeffs = OscCoefficients::canonical(two_s, 1.0).unwrap();
        let (q, p) = qp_operators(&rep, &coeffs).unwrap();
        let comm = q.commutator(&p).unwrap();
        let id = OperatorMatrix::identity(rep.dim(), comm.basis().clone()).unwrap();
        let dev = comm.sub(&id.scaled(Complex64::new(0.0, 1.0))).unwrap();
        for n in 0..rep.dim() {
            let mut v = Array1::zeros(rep.dim());
            v[rep.dim() - 1 - n] = Complex64::new(1.0, 0.0);
            let state = StateVector::new(v, comm.basis().clone()).unwrap();
            let out = dev.apply(&state).unwrap();
            let want = (2 * n + 1) as f64 / (two_s as f64 + 1.0);
            assert!((out.norm() - want).abs() <= 1e-12, "n={n}");
        }
    }

    #[test]
    fn emergent_spectrum_spin_half() {
        let rep = spin_matrices(1);
        let mut spec = emergent_spectrum(&rep, 1.0);
        spec.sort_by(f64::total_cmp);
        let want = [3.0, 4.5, 4.5, 5.0, 6.0, 7.5, 7.5, 10.0];
        for (got, w) in spec.iter().zip(want.iter()) {
            assert!((got - w).abs() < 1e-14);
        }
    }

    #[test]
    fn emergent_matrix_is_diagonal_factorized_and_bounded() {
        for two_s in [1u32, 2, 3] {
            let rep = spin_matrices(two_s);
            let omega = 1.7;
            let ham = emergent_hamiltonian(&rep, omega).unwrap();
            // diagonal
            for i in 0..ham.dim() {
                for j in 0..ham.dim() {
                    if i != j {
                        assert_eq!(ham.entries()[(i, j)], Complex64::new(0.0, 0.0));
                    }
                }
            }
            // matches the enumerated diagonal and the factorized form exactly
            let spec = emergent_spectrum(&rep, omega);
            for (i, &want) in spec.iter().enumerate() {
                assert_eq!(ham.entries()[(i, i)].re, want);
            }
            let factored = factorized_hamiltonian(&rep, omega).unwrap();
            assert_eq!(ham.max_abs_diff(&factored), 0.0);
            // bounded below by 3 Omega
            let min = spec.iter().copied().fold(f64::INFINITY, f64::min);
            assert!(min >= 3.0 * omega - 1e-12);
            assert!((min - 3.0 * omega).abs() < 1e-12);
        }
    }

    #[test]
    fn indefinite_counterpart_has_negative_part_and_zero_trace() {
        for two_s in [1u32, 2, 3] {
            let rep = spin_matrices(two_s);
            let ham = indefinite_hamiltonian(&rep, 1.0).unwrap();
            assert!(ham.trace().norm() < 1e-12);
            let (values, _) = hermitian_eigenpairs(&ham).unwrap();
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            assert!(min <= -1.0, "2s={two_s}: min {min}");
        }
        // spin 1/2 contains -3/2 Omega
        let rep = spin_matrices(1);
        let ham = indefinite_hamiltonian(&rep, 1.0).unwrap();
        let has = (0..ham.dim()).any(|i| (ham.entries()[(i, i)].re + 1.5).abs() < 1e-12);
        assert!(has);
    }

    #[test]
    fn tensor_cap_enforced() {
        let rep = spin_matrices(63); // dim 64, cube 262144 > 2^15
        assert!(matches!(
            emergent_hamiltonian(&rep, 1.0),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
