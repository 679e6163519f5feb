//! Statistical helpers for the Monte Carlo suites: summary statistics,
//! Kolmogorov-Smirnov tests, and the Holm multiplicity correction.

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Standard error of the sample mean.
pub fn standard_error(xs: &[f64]) -> f64 {
    (sample_variance(xs) / xs.len() as f64).sqrt()
}

pub fn covariance(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let (mx, my) = (mean(xs), mean(ys));
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / (xs.len() as f64 - 1.0)
}

pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    covariance(xs, ys) / (sample_variance(xs) * sample_variance(ys)).sqrt()
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let up = (i as f64 + 1.0) / n - f;
        let down = f - i as f64 / n;
        d = d.max(up).max(down);
    }
    d
}

/// Asymptotic Kolmogorov survival function `Q(lambda)` with the Stephens
/// small-sample correction `lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) d`.
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    kolmogorov_survival(lambda)
}

fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-8 {
        return 1.0;
    }
    let mut total = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = (-2.0 * (j as f64 * lambda).powi(2)).exp();
        total += sign * term;
        sign = -sign;
        if term < 1e-12 {
            break;
        }
    }
    (2.0 * total).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample_statistic(xs: &[f64], ys: &[f64]) -> f64 {
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut ia, mut ib) = (0usize, 0usize);
    let mut d = 0.0f64;
    while ia < a.len() && ib < b.len() {
        let v = a[ia].min(b[ib]);
        while ia < a.len() && a[ia] <= v {
            ia += 1;
        }
        while ib < b.len() && b[ib] <= v {
            ib += 1;
        }
        d = d.max((ia as f64 / na - ib as f64 / nb).abs());
    }
    d
}

pub fn ks_two_sample_pvalue(d: f64, nx: usize, ny: usize) -> f64 {
    let ne = (nx * ny) as f64 / (nx + ny) as f64;
    let sn = ne.sqrt();
    kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d)
}

/// Holm step-down correction: returns the per-test rejection flags at
/// family level `alpha`. A family "passes" when nothing is rejected.
pub fn holm_rejections(pvalues: &[f64], alpha: f64) -> Vec<bool> {
    let m = pvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by(|&a, &b| pvalues[a].partial_cmp(&pvalues[b]).unwrap());
    let mut reject = vec![false; m];
    for (rank, &idx) in order.iter().enumerate() {
        if pvalues[idx] < alpha / (m - rank) as f64 {
            reject[idx] = true;
        } else {
            break; // step-down stops at the first acceptance
        }
    }
    reject
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    #[test]
    fn normal_cdf_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.959963984540054) - 0.975).abs() < 1e-9);
        assert!((normal_cdf(-1.0) - 0.15865525393145707).abs() < 1e-12);
    }

    #[test]
    fn summary_statistics() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&xs), 2.5);
        assert!((sample_variance(&xs) - 5.0 / 3.0).abs() < 1e-12);
        let ys = [2.0, 4.0, 6.0, 8.0];
        assert!((correlation(&xs, &ys) - 1.0).abs() < 1e-12);
        let zs = [8.0, 6.0, 4.0, 2.0];
        assert!((correlation(&xs, &zs) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ks_statistic_known_case() {
        // Empirical {0.1, 0.2, ..., 1.0} against Uniform(0,1): D = 0.1.
        let xs: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
        let d = ks_statistic(&xs, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.1).abs() < 1e-12);
    }

    #[test]
    fn ks_accepts_true_normal_sample() {
        let mut rng = Stream::seed_from(17);
        let xs: Vec<f64> = (0..5000).map(|_| rng.standard_normal()).collect();
        let d = ks_statistic(&xs, normal_cdf);
        let p = ks_pvalue(d, xs.len());
        assert!(p > 0.01, "p = {p}");
    }

    #[test]
    fn ks_rejects_shifted_sample() {
        let mut rng = Stream::seed_from(18);
        let xs: Vec<f64> = (0..5000).map(|_| rng.standard_normal() + 0.2).collect();
        let p = ks_pvalue(ks_statistic(&xs, normal_cdf), xs.len());
        assert!(p < 1e-6, "p = {p}");
    }

    #[test]
    fn ks_pvalues_roughly_uniform_under_null() {
        // Repeated null samples: the p-value should be small about as often
        // as its level says.
        let mut rng = Stream::seed_from(19);
        let runs = 200;
        let below_half = (0..runs)
            .filter(|_| {
                let xs: Vec<f64> = (0..400).map(|_| rng.standard_normal()).collect();
                ks_pvalue(ks_statistic(&xs, normal_cdf), xs.len()) < 0.5
            })
            .count();
        let freq = below_half as f64 / runs as f64;
        assert!((freq - 0.5).abs() < 0.15, "freq = {freq}");
    }

    #[test]
    fn two_sample_ks() {
        let mut rng = Stream::seed_from(20);
        let xs: Vec<f64> = (0..3000).map(|_| rng.standard_normal()).collect();
        let ys: Vec<f64> = (0..3000).map(|_| rng.standard_normal()).collect();
        let d = ks_two_sample_statistic(&xs, &ys);
        assert!(ks_two_sample_pvalue(d, xs.len(), ys.len()) > 0.01);
        let zs: Vec<f64> = (0..3000).map(|_| rng.standard_normal() * 1.5).collect();
        let d2 = ks_two_sample_statistic(&xs, &zs);
        assert!(ks_two_sample_pvalue(d2, xs.len(), zs.len()) < 1e-6);
    }

    #[test]
    fn holm_correction() {
        let ps = [0.001, 0.02, 0.04, 0.5];
        let rejected = holm_rejections(&ps, 0.05);
        // 0.001 < 0.05/4 rejects; 0.02 > 0.05/3 stops the walk.
        assert_eq!(rejected, vec![true, false, false, false]);
        let all = holm_rejections(&[0.001, 0.002, 0.003], 0.05);
        assert!(all.iter().all(|&r| r));
        let none = holm_rejections(&[0.2, 0.9], 0.05);
        assert!(none.iter().all(|&r| !r));
    }
}
