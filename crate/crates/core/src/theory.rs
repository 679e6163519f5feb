//! Closed-form predictions for the face-count processes.
//!
//! The exact mean is `E f_j = C(n, j+1) prod_{i=q}^{j} p_i^{C(j+1, i+1)}`,
//! asymptotically `n^{tau_j} / (j+1)!`. Covariances at lag `t` are
//! asymptotically the larger of two displayed terms, and at the critical
//! dimension the first term wins, giving the limiting stationary Gaussian
//! process `Z_k` with covariance `R_k(t) = 1 - (G_q)_e(t)`. Scaling by
//! `n^{tau_k - tau_q/2}` instead of the standard deviation picks up the
//! constant `sqrt((q+1)!) (k-q)!`.

use crate::params::{binomial, AlphaSequence, RegimeReport};
use crate::renewal::LifetimeDistribution;
use crate::rng::Stream;
use nalgebra::DMatrix;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TheoryError {
    #[error("dimension {j} is below the first random dimension q = {q}")]
    DimensionBelowQ { j: usize, q: usize },
    #[error("no distribution configured for dimension {0}")]
    MissingDistribution(usize),
    #[error("the basic regime assumption fails: no critical dimension")]
    BasicAssumptionFails,
    #[error("jittered covariance matrix is not positive semidefinite")]
    FactorizationFailure,
    #[error("grid of {0} points exceeds the sampler limit of 2000")]
    GridTooLarge(usize),
}

pub fn factorial(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

/// Exact finite-n expectation of the `j`-face count. Deterministic
/// dimensions below `q` give `C(n, j+1)` exactly; any contributing infinite
/// exponent gives zero.
pub fn expected_face_count(n: u32, alpha: &AlphaSequence, j: usize) -> f64 {
    let q = alpha.q();
    let choose = binomial(n as usize, j + 1);
    if j < q {
        return choose;
    }
    let mut value = choose;
    for i in q..=j {
        let p = alpha.face_probability(i, n);
        if p == 0.0 {
            return 0.0;
        }
        value *= p.powf(binomial(j + 1, i + 1));
    }
    value
}

/// Leading-order mean `n^{tau_j} / (j+1)!`.
pub fn asymptotic_mean(n: u32, alpha: &AlphaSequence, j: usize) -> f64 {
    let tau = alpha.tau(j);
    if tau == f64::NEG_INFINITY {
        return 0.0;
    }
    (n as f64).powf(tau) / factorial(j + 1)
}

/// The two-term asymptotic covariance of `(f_j(t), f_j(s))` at `lag = t - s`,
/// reported as the larger term. At `j = k` the first term dominates and is
/// the critical-variance scale.
pub fn asymptotic_covariance(
    n: u32,
    alpha: &AlphaSequence,
    dists: &BTreeMap<usize, LifetimeDistribution>,
    j: usize,
    lag: f64,
) -> Result<f64, TheoryError> {
    assert!(lag >= 0.0, "lag must be nonnegative");
    let q = alpha.q();
    if j < q {
        return Err(TheoryError::DimensionBelowQ { j, q });
    }
    let nf = n as f64;
    let tau_j = alpha.tau(j);
    let tau_q = alpha.tau(q);
    if tau_j == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let dist_q = dists.get(&q).ok_or(TheoryError::MissingDistribution(q))?;
    let first = nf.powf(2.0 * tau_j - tau_q)
        / (factorial(q + 1) * factorial(j - q).powi(2))
        * (1.0 - dist_q.equilibrium_cdf(lag));

    let mut product = 1.0;
    for i in q..=j {
        let p = alpha.face_probability(i, n);
        if p == 1.0 {
            continue; // deterministic-on dimensions contribute factor 1
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        let dist = dists.get(&i).ok_or(TheoryError::MissingDistribution(i))?;
        let factor = 1.0 - (1.0 - p) * dist.equilibrium_cdf(lag);
        product *= factor.powf(binomial(j + 1, i + 1));
    }
    let second = nf.powf(tau_j) / factorial(j + 1) * product;
    Ok(first.max(second))
}

/// Critical-variance scale `n^{2 tau_k - tau_q} / ((q+1)! ((k-q)!)^2)`.
pub fn critical_variance(n: u32, regime: &RegimeReport) -> Result<f64, TheoryError> {
    let k = regime.critical_k.ok_or(TheoryError::BasicAssumptionFails)?;
    let q = regime.q;
    Ok((n as f64).powf(2.0 * regime.tau_at(k) - regime.tau_at(q))
        / (factorial(q + 1) * factorial(k - q).powi(2)))
}

/// The displayed critical-dimension covariance: the critical-variance scale
/// damped by `R_k(lag) = 1 - (G_q)_e(lag)`. This is the single-term form the
/// verification suites test against; [`asymptotic_covariance`] reports the
/// two-term maximum instead.
pub fn critical_covariance(
    n: u32,
    regime: &RegimeReport,
    dist_q: &LifetimeDistribution,
    lag: f64,
) -> Result<f64, TheoryError> {
    Ok(critical_variance(n, regime)? * limit_covariance_rk(dist_q, lag))
}

/// Covariance of the limiting Gaussian process: `R_k(t) = 1 - (G_q)_e(t)`.
pub fn limit_covariance_rk(dist_q: &LifetimeDistribution, t: f64) -> f64 {
    assert!(t >= 0.0);
    1.0 - dist_q.equilibrium_cdf(t)
}

/// One sampled path of the limit process on a time grid.
#[derive(Debug, Clone)]
pub struct GaussianPathSample {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Draws `Z_k` on the grid via Cholesky factorization of
/// `[R_k(|t_a - t_b|)]` with a fixed diagonal jitter of 1e-10.
pub fn sample_gaussian_limit(
    dist_q: &LifetimeDistribution,
    grid: &[f64],
    rng: &mut Stream,
) -> Result<GaussianPathSample, TheoryError> {
    let factor = gaussian_limit_factor(dist_q, grid)?;
    Ok(draw_gaussian_path(&factor, grid, rng))
}

/// Precomputed Cholesky factor for repeated draws on a fixed grid.
pub fn gaussian_limit_factor(
    dist_q: &LifetimeDistribution,
    grid: &[f64],
) -> Result<DMatrix<f64>, TheoryError> {
    let m = grid.len();
    if m > 2000 {
        return Err(TheoryError::GridTooLarge(m));
    }
    assert!(grid.windows(2).all(|w| w[0] < w[1]), "grid must be increasing");
    let mut cov = DMatrix::<f64>::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            cov[(a, b)] = limit_covariance_rk(dist_q, (grid[a] - grid[b]).abs());
        }
        cov[(a, a)] += 1e-10;
    }
    nalgebra::Cholesky::new(cov)
        .map(|c| c.l())
        .ok_or(TheoryError::FactorizationFailure)
}

pub fn draw_gaussian_path(
    factor: &DMatrix<f64>,
    grid: &[f64],
    rng: &mut Stream,
) -> GaussianPathSample {
    let m = grid.len();
    let z = DMatrix::from_fn(m, 1, |_, _| rng.standard_normal());
    let values = (factor * z).column(0).iter().copied().collect();
    GaussianPathSample { times: grid.to_vec(), values }
}

/// SLLN limits and FCLT normalization for the critical dimension.
#[derive(Debug, Clone, Serialize)]
pub struct LimitLaw {
    pub q: usize,
    pub critical_k: usize,
    /// `chi_n / n^{tau_k} -> (-1)^k / (k+1)!`
    pub slln_chi_limit: f64,
    /// `beta_{k,n} / n^{tau_k} -> 1 / (k+1)!`
    pub slln_betti_limit: f64,
    /// `tau_k`, the SLLN scale exponent.
    pub slln_exponent: f64,
    /// `tau_k - tau_q / 2`, the explicit FCLT scale exponent.
    pub fclt_exponent: f64,
    /// `sqrt((q+1)!) (k-q)!`, the constant in the explicit restatement.
    pub fclt_constant: f64,
}

pub fn limit_constants(regime: &RegimeReport) -> Result<LimitLaw, TheoryError> {
    let k = regime.critical_k.ok_or(TheoryError::BasicAssumptionFails)?;
    let q = regime.q;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(LimitLaw {
        q,
        critical_k: k,
        slln_chi_limit: sign / factorial(k + 1),
        slln_betti_limit: 1.0 / factorial(k + 1),
        slln_exponent: regime.tau_at(k),
        fclt_exponent: regime.tau_at(k) - regime.tau_at(q) / 2.0,
        fclt_constant: factorial(q + 1).sqrt() * factorial(k - q),
    })
}

/// Everything the verification harness compares against, for one `n`.
#[derive(Debug, Clone, Serialize)]
pub struct MomentPredictions {
    pub n: u32,
    pub q: usize,
    pub critical_k: Option<usize>,
    pub m_alpha: usize,
    /// Exact means for dimensions `0..=horizon`.
    pub exact_means: Vec<f64>,
    pub asymptotic_means: Vec<f64>,
    /// `E f_j / E f_k` for `j != k`, keyed by `j`.
    pub dominance_ratios: BTreeMap<usize, f64>,
    /// `sum_{j >= M} E f_j` up to dimension `n - 1`.
    pub tail_sum: f64,
    pub critical_variance: Option<f64>,
}

pub fn moment_predictions(
    n: u32,
    alpha: &AlphaSequence,
    regime: &RegimeReport,
) -> MomentPredictions {
    let horizon = regime.horizon;
    let exact_means: Vec<f64> =
        (0..=horizon).map(|j| expected_face_count(n, alpha, j)).collect();
    let asymptotic_means: Vec<f64> =
        (0..=horizon).map(|j| asymptotic_mean(n, alpha, j)).collect();
    let mut dominance_ratios = BTreeMap::new();
    if let Some(k) = regime.critical_k {
        let ek = expected_face_count(n, alpha, k);
        for j in 0..=regime.m_alpha {
            if j != k && ek > 0.0 {
                dominance_ratios.insert(j, expected_face_count(n, alpha, j) / ek);
            }
        }
    }
    let tail_sum: f64 = (regime.m_alpha..n as usize)
        .map(|j| expected_face_count(n, alpha, j))
        .sum();
    MomentPredictions {
        n,
        q: regime.q,
        critical_k: regime.critical_k,
        m_alpha: regime.m_alpha,
        exact_means,
        asymptotic_means,
        dominance_ratios,
        tail_sum,
        critical_variance: critical_variance(n, regime).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Tail;

    fn clique09() -> AlphaSequence {
        AlphaSequence::clique(0.9).unwrap()
    }

    fn exp_dists(dim: usize, rate: f64) -> BTreeMap<usize, LifetimeDistribution> {
        let mut m = BTreeMap::new();
        m.insert(dim, LifetimeDistribution::exponential(rate).unwrap());
        m
    }

    #[test]
    fn exact_mean_clique_edges() {
        // 66 * 12^{-0.9} = 7.0516
        let e = expected_face_count(12, &clique09(), 1);
        assert!((e - 66.0 * 12f64.powf(-0.9)).abs() < 1e-12);
        assert!((e - 7.05).abs() < 1e-2);
    }

    #[test]
    fn exact_mean_below_q_and_blocked() {
        assert_eq!(expected_face_count(12, &clique09(), 0), 12.0);
        let lm = AlphaSequence::linial_meshulam(2, 0.6).unwrap();
        assert_eq!(expected_face_count(10, &lm, 1), 45.0);
        assert_eq!(expected_face_count(10, &lm, 3), 0.0);
    }

    #[test]
    fn exact_mean_matches_independent_product() {
        // Oracle: evaluate the defining product over subface counts directly.
        // A j-face needs all C(j+1, i+1) i-subfaces on, independently.
        let alpha = AlphaSequence::new(vec![0.5, 0.3], Tail::Zero).unwrap();
        let n = 9u32;
        for j in 0..=4usize {
            let mut expected = binomial(9, j + 1);
            for i in 1..=j {
                let count = binomial(j + 1, i + 1);
                expected *= alpha.face_probability(i, n).powf(count);
            }
            assert!(
                (expected_face_count(n, &alpha, j) - expected).abs() < 1e-9,
                "j = {j}"
            );
        }
    }

    #[test]
    fn asymptotic_mean_ratio_approaches_one() {
        let alpha = clique09();
        let mut prev_gap = f64::MAX;
        for &n in &[50u32, 200, 800, 3200] {
            let ratio = expected_face_count(n, &alpha, 1) / asymptotic_mean(n, &alpha, 1);
            let gap = (ratio - 1.0).abs();
            assert!(gap < prev_gap);
            prev_gap = gap;
        }
        assert!(prev_gap < 0.01);
    }

    #[test]
    fn covariance_below_q_rejected() {
        let lm = AlphaSequence::linial_meshulam(2, 0.6).unwrap();
        assert_eq!(
            asymptotic_covariance(10, &lm, &exp_dists(2, 1.0), 1, 0.0).unwrap_err(),
            TheoryError::DimensionBelowQ { j: 1, q: 2 }
        );
    }

    #[test]
    fn covariance_exponential_lag_factor() {
        // The displayed critical covariance carries the factor e^{-lambda lag}.
        let alpha = clique09();
        let regime = alpha.regime().unwrap();
        let exp = LifetimeDistribution::exponential(1.0).unwrap();
        let v0 = critical_variance(60, &regime).unwrap();
        let c = critical_covariance(60, &regime, &exp, 0.5).unwrap();
        assert!((c / v0 - (-0.5f64).exp()).abs() < 1e-12);

        // The two-term maximum agrees at lag 0 and, with q = k, follows the
        // second (product-form) term at positive lags: its ratio to the
        // variance is 1 - (1-p)(G)_e(lag) >= e^{-lag}.
        let dists = exp_dists(1, 1.0);
        let at = |lag: f64| asymptotic_covariance(60, &alpha, &dists, 1, lag).unwrap();
        assert!((at(0.0) - v0).abs() < 1e-9);
        let p = alpha.face_probability(1, 60);
        let expected_ratio = 1.0 - (1.0 - p) * (1.0 - (-0.5f64).exp());
        assert!((at(0.5) / at(0.0) - expected_ratio).abs() < 1e-9);
        assert!(at(0.5) >= c);
    }

    #[test]
    fn covariance_two_term_maximum() {
        // At large lags the first term dies and the second term's stationary
        // floor takes over: n^{tau_1}/2 * p for the clique model.
        let alpha = clique09();
        let dists = exp_dists(1, 1.0);
        let n = 60;
        let far = asymptotic_covariance(n, &alpha, &dists, 1, 50.0).unwrap();
        let p = alpha.face_probability(1, n);
        let second_floor = (n as f64).powf(alpha.tau(1)) / 2.0 * p;
        assert!((far - second_floor).abs() / second_floor < 1e-6);
    }

    #[test]
    fn critical_variance_values() {
        let regime = clique09().regime().unwrap();
        let v = critical_variance(60, &regime).unwrap();
        assert!((v - 60f64.powf(1.1) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn rk_values() {
        let exp = LifetimeDistribution::exponential(1.0).unwrap();
        assert_eq!(limit_covariance_rk(&exp, 0.0), 1.0);
        assert!((limit_covariance_rk(&exp, 0.5) - (-0.5f64).exp()).abs() < 1e-12);
        let unif = LifetimeDistribution::uniform(2.0).unwrap();
        assert_eq!(limit_covariance_rk(&unif, 2.0), 0.0);
        assert_eq!(limit_covariance_rk(&unif, 3.5), 0.0);
    }

    #[test]
    fn rk_monotone_and_bounded() {
        for dist in [
            LifetimeDistribution::exponential(0.7).unwrap(),
            LifetimeDistribution::uniform(1.3).unwrap(),
        ] {
            let mut prev = 1.0 + 1e-12;
            for i in 0..=60 {
                let t = i as f64 * 0.1;
                let r = limit_covariance_rk(&dist, t);
                assert!(r <= prev && (0.0..=1.0).contains(&r), "t={t}");
                prev = r;
            }
        }
    }

    #[test]
    fn gaussian_sampler_single_point_is_standard_normal() {
        let exp = LifetimeDistribution::exponential(1.0).unwrap();
        let mut rng = Stream::seed_from(8);
        let n = 50_000;
        let factor = gaussian_limit_factor(&exp, &[0.0]).unwrap();
        let (mut sum, mut sumsq) = (0.0, 0.0);
        for _ in 0..n {
            let v = draw_gaussian_path(&factor, &[0.0], &mut rng).values[0];
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.02);
        assert!((var - 1.0).abs() < 0.03);
    }

    #[test]
    fn gaussian_sampler_correlations_match_rk() {
        let exp = LifetimeDistribution::exponential(1.0).unwrap();
        let grid = [0.0, 0.25, 0.5, 1.0];
        let factor = gaussian_limit_factor(&exp, &grid).unwrap();
        let mut rng = Stream::seed_from(99);
        let n = 100_000;
        let mut samples: Vec<Vec<f64>> = vec![Vec::with_capacity(n); grid.len()];
        for _ in 0..n {
            let path = draw_gaussian_path(&factor, &grid, &mut rng);
            for (slot, v) in samples.iter_mut().zip(path.values) {
                slot.push(v);
            }
        }
        for b in 1..grid.len() {
            let lag = grid[b] - grid[0];
            let r = crate::stats::correlation(&samples[0], &samples[b]);
            let target = (-lag).exp();
            assert!((r - target).abs() < 0.01, "lag {lag}: {r} vs {target}");
        }
    }

    #[test]
    fn perfectly_correlated_at_zero_lag() {
        // Two grid points at essentially the same time: correlation 1.
        let exp = LifetimeDistribution::exponential(1.0).unwrap();
        let grid = [0.0, 1e-13];
        let factor = gaussian_limit_factor(&exp, &grid).unwrap();
        let mut rng = Stream::seed_from(4);
        let path = draw_gaussian_path(&factor, &grid, &mut rng);
        assert!((path.values[0] - path.values[1]).abs() < 1e-4);
    }

    #[test]
    fn limit_constants_worked_models() {
        // Clique at alpha_1 = 0.9: q = k = 1, constant sqrt(2) * 0! = sqrt(2).
        let clique = limit_constants(&clique09().regime().unwrap()).unwrap();
        assert_eq!(clique.slln_chi_limit, -0.5);
        assert_eq!(clique.slln_betti_limit, 0.5);
        assert!((clique.fclt_constant - 2f64.sqrt()).abs() < 1e-12);
        assert!((clique.fclt_exponent - (1.1 - 0.55)).abs() < 1e-12);

        // Linial-Meshulam at k = 2: constant sqrt((k+1)!) = sqrt(6).
        let lm = AlphaSequence::linial_meshulam(2, 0.6).unwrap();
        let lm_law = limit_constants(&lm.regime().unwrap()).unwrap();
        assert!((lm_law.fclt_constant - 6f64.sqrt()).abs() < 1e-12);
        assert_eq!(lm_law.slln_chi_limit, 1.0 / 6.0);
        assert_eq!(lm_law.slln_betti_limit, 1.0 / 6.0);

        let d0 = AlphaSequence::clique(1.5).unwrap();
        assert_eq!(
            limit_constants(&d0.regime().unwrap()).unwrap_err(),
            TheoryError::BasicAssumptionFails
        );
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(3), 6.0);
        assert_eq!(factorial(10), 3628800.0);
    }

    #[test]
    fn dominance_and_tail_trend() {
        // Ratios E f_j / E f_k decrease along n; the tail sum vanishes.
        let alpha = clique09();
        let regime = alpha.regime().unwrap();
        let grid = [20u32, 40, 80, 160];
        let preds: Vec<MomentPredictions> =
            grid.iter().map(|&n| moment_predictions(n, &alpha, &regime)).collect();
        for j in [0usize, 2, 3] {
            for w in preds.windows(2) {
                let a = w[0].dominance_ratios.get(&j);
                let b = w[1].dominance_ratios.get(&j);
                if let (Some(x), Some(y)) = (a, b) {
                    assert!(y < x, "dominance ratio at j={j} must shrink");
                }
            }
        }
        for w in preds.windows(2) {
            assert!(w[1].tail_sum < w[0].tail_sum);
        }
        assert!(preds.last().unwrap().tail_sum < 0.1);
    }
}
