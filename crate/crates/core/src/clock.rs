//! Stationary clock distributions relating discrete physical time to proper
//! time, and normalized quadrature rules for averaging over the proper-time
//! offset.
//!
//! Only translation-invariant distributions exist here: the density is a pure
//! function of the offset `tau - t`, so a clock described this way does not
//! age. All kinds are centered at offset 0.

use crate::error::{Error, Result};

/// Half-width of the Gaussian truncation window in standard deviations.
///
/// Neglected mass at 8 sigma is ~1.2e-15 and trapezoid moments through order 4
/// stay within 1e-8 at 64 nodes; a 6-sigma window would already leak ~2e-9 of
/// mass and ~7e-7 of the fourth moment.
const GAUSSIAN_WINDOW_SIGMAS: f64 = 8.0;

/// Probability distribution of the proper-time offset `tau - t`.
#[derive(Clone, Debug, PartialEq)]
pub enum ClockDistribution {
    /// Deterministic clock: all weight at offset 0.
    Delta,
    /// Density proportional to `exp(-gamma x^2)`, `gamma > 0`.
    Gaussian { gamma: f64 },
    /// Constant density `1/width` on `[-width/2, width/2]`, `width > 0`.
    Uniform { width: f64 },
}

impl ClockDistribution {
    pub fn gaussian(gamma: f64) -> Result<Self> {
        if gamma <= 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidParameter("gamma must be positive".into()));
        }
        Ok(Self::Gaussian { gamma })
    }

    pub fn uniform(width: f64) -> Result<Self> {
        if width <= 0.0 || !width.is_finite() {
            return Err(Error::InvalidParameter("width must be positive".into()));
        }
        Ok(Self::Uniform { width })
    }

    /// Standard deviation where defined (delta: 0).
    pub fn sigma(&self) -> f64 {
        match self {
            Self::Delta => 0.0,
            Self::Gaussian { gamma } => (0.5 / gamma).sqrt(),
            Self::Uniform { width } => width / 12f64.sqrt(),
        }
    }
}

/// Normalized nodes and weights realizing the average over the clock offset.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        debug_assert_eq!(nodes.len(), weights.len());
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_k w_k f(x_k)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `sum_k w_k x_k^order`.
    pub fn moment(&self, order: u32) -> f64 {
        self.integrate(|x| x.powi(order as i32))
    }
}

/// Pointwise density `P(offset)`. The delta kind has no pointwise density and
/// is refused.
pub fn density(dist: &ClockDistribution, offset: f64) -> Result<f64> {
    match dist {
        ClockDistribution::Delta => Err(Error::UnsupportedQuery(
            "delta clock has no pointwise density".into(),
        )),
        ClockDistribution::Gaussian { gamma } => {
            Ok((gamma / std::f64::consts::PI).sqrt() * (-gamma * offset * offset).exp())
        }
        ClockDistribution::Uniform { width } => {
            Ok(if offset.abs() <= width / 2.0 { 1.0 / width } else { 0.0 })
        }
    }
}

/// Builds a normalized quadrature rule for the distribution.
///
/// Gaussian and uniform kinds use density-weighted trapezoid nodes over the
/// truncation window (8 sigma for the Gaussian, the exact support for the
/// uniform), renormalized so the weights sum to exactly 1; the trapezoid rule
/// is spectrally accurate for the Gaussian at these widths. The delta kind is
/// the single node 0 with unit weight regardless of the requested count.
pub fn quadrature(dist: &ClockDistribution, node_count: usize) -> Result<QuadratureRule> {
    if node_count == 0 {
        return Err(Error::InvalidParameter("node_count must be >= 1".into()));
    }
    match dist {
        ClockDistribution::Delta => Ok(QuadratureRule::new(vec![0.0], vec![1.0])),
        ClockDistribution::Gaussian { .. } | ClockDistribution::Uniform { .. } => {
            let half = match dist {
                ClockDistribution::Gaussian { .. } => GAUSSIAN_WINDOW_SIGMAS * dist.sigma(),
                ClockDistribution::Uniform { width } => width / 2.0,
                ClockDistribution::Delta => unreachable!(),
            };
            if node_count == 1 {
                return Ok(QuadratureRule::new(vec![0.0], vec![1.0]));
            }
            let n = node_count;
            let h = 2.0 * half / (n - 1) as f64;
            let nodes: Vec<f64> = (0..n).map(|k| -half + h * k as f64).collect();
            let mut weights: Vec<f64> = nodes
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    let trap = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
                    trap * density(dist, x).expect("pointwise kinds only")
                })
                .collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            Ok(QuadratureRule::new(nodes, weights))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_density_normalization_value() {
        let d = ClockDistribution::gaussian(1.0).unwrap();
        let v = density(&d, 0.0).unwrap();
        assert!((v - 0.5641895835477563).abs() < 1e-15);
    }

    #[test]
    fn uniform_density_inside_and_outside() {
        let d = ClockDistribution::uniform(2.0).unwrap();
        assert_eq!(density(&d, 0.5).unwrap(), 0.5);
        assert_eq!(density(&d, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn delta_density_is_refused() {
        assert!(matches!(
            density(&ClockDistribution::Delta, 0.0),
            Err(Error::UnsupportedQuery(_))
        ));
    }

    #[test]
    fn delta_quadrature_is_single_unit_node() {
        for count in [1usize, 5, 64] {
            let rule = quadrature(&ClockDistribution::Delta, count).unwrap();
            assert_eq!(rule.nodes(), &[0.0]);
            assert_eq!(rule.weights(), &[1.0]);
        }
    }

    #[test]
    fn uniform_two_nodes_split_evenly() {
        let rule = quadrature(&ClockDistribution::uniform(1.0).unwrap(), 2).unwrap();
        assert_eq!(rule.weights(), &[0.5, 0.5]);
        assert_eq!(rule.nodes(), &[-0.5, 0.5]);
    }

    #[test]
    fn gaussian_quadrature_weight_sum_and_second_moment() {
        let d = ClockDistribution::gaussian(1.0).unwrap();
        let rule = quadrature(&d, 64).unwrap();
        assert!((rule.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((rule.moment(2) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn gaussian_moments_through_order_four() {
        for gamma in [0.25, 1.0, 4.0] {
            let d = ClockDistribution::gaussian(gamma).unwrap();
            let rule = quadrature(&d, 64).unwrap();
            let sig2 = 0.5 / gamma;
            let exact = [1.0, 0.0, sig2, 0.0, 3.0 * sig2 * sig2];
            for (order, want) in exact.iter().enumerate() {
                let got = rule.moment(order as u32);
                assert!(
                    (got - want).abs() < 1e-8,
                    "gamma={gamma} order={order}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn truncated_gaussian_mass_within_tolerance() {
        // Riemann-sum check that the density over the window integrates to 1
        // within 1e-10 (the trapezoid weights before renormalization).
        let d = ClockDistribution::gaussian(0.7).unwrap();
        let sigma = d.sigma();
        let half = 8.0 * sigma;
        let n = 20_001;
        let h = 2.0 * half / (n - 1) as f64;
        let mass: f64 = (0..n)
            .map(|k| {
                let x = -half + h * k as f64;
                let trap = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
                trap * density(&d, x).unwrap() * h
            })
            .sum();
        assert!((mass - 1.0).abs() < 1e-10, "window mass {mass}");
    }

    #[test]
    fn nodes_strictly_increasing() {
        for dist in [
            ClockDistribution::gaussian(2.0).unwrap(),
            ClockDistribution::uniform(3.0).unwrap(),
        ] {
            let rule = quadrature(&dist, 33).unwrap();
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ClockDistribution::gaussian(0.0).is_err());
        assert!(ClockDistribution::uniform(-1.0).is_err());
        assert!(quadrature(&ClockDistribution::Delta, 0).is_err());
    }
}
