//! Matrix exponential by scaling-and-squaring with a degree-13 Padé
//! approximant (Higham 2005). Used for non-Hermitian generators and for the
//! classical linear-flow exponential; Hermitian generators go through the
//! eigendecomposition path in the evolution module instead.

use faer::prelude::*;
use ndarray::Array2;
use num_complex::Complex64;

/// Padé(13) numerator coefficients b_0..b_13.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled Padé(13) approximant holds full
/// accuracy.
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for col in a.columns() {
        let s: f64 = col.iter().map(|z| z.norm()).sum();
        max = max.max(s);
    }
    max
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `exp(a)` for a dense complex square matrix.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    if n == 0 {
        return Array2::zeros((0, 0));
    }
    if n == 1 {
        let mut out = Array2::zeros((1, 1));
        out[(0, 0)] = a[(0, 0)].exp();
        return out;
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = c(0.5f64.powi(squarings as i32));
    let a1 = a.mapv(|z| z * scale);

    let eye: Array2<Complex64> = Array2::eye(n);
    let a2 = a1.dot(&a1);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let w1 = &a6 * c(PADE13[13]) + &a4 * c(PADE13[11]) + &a2 * c(PADE13[9]);
    let w2 = w1.dot(&a6)
        + &a6 * c(PADE13[7])
        + &a4 * c(PADE13[5])
        + &a2 * c(PADE13[3])
        + &eye * c(PADE13[1]);
    let u = a1.dot(&w2);

    let z1 = &a6 * c(PADE13[12]) + &a4 * c(PADE13[10]) + &a2 * c(PADE13[8]);
    let v = z1.dot(&a6)
        + &a6 * c(PADE13[6])
        + &a4 * c(PADE13[4])
        + &a2 * c(PADE13[2])
        + &eye * c(PADE13[0]);

    // (v - u) x = (v + u)
    let num = &v + &u;
    let den = &v - &u;
    let den_f = Mat::from_fn(n, n, |i, j| den[(i, j)]);
    let num_f = Mat::from_fn(n, n, |i, j| num[(i, j)]);
    let solved = den_f.partial_piv_lu().solve(&num_f);
    let mut r = Array2::from_shape_fn((n, n), |(i, j)| solved[(i, j)]);

    for _ in 0..squarings {
        r = r.dot(&r);
    }
    r
}
