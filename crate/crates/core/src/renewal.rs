//! Stationary {0,1}-valued renewal marking processes.
//!
//! A face's process is built from iid interarrival lifetimes with
//! distribution `G` (finite positive mean `mu`), an initial delay drawn from
//! the equilibrium distribution `(G)_e(x) = (1/mu) int_0^x (1 - G)`, and iid
//! Bernoulli(p) marks, one per renewal epoch. Starting from the equilibrium
//! delay makes the on/off state stationary, with `P(state = 1) = p` at every
//! time and conditional law `P(on at t | on at 0) = 1 - (1-p)(G)_e(t)`.

use crate::rng::Stream;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RenewalError {
    #[error("lifetime sampler returned a non-positive or non-finite value")]
    NonFiniteSample,
    #[error("time {t} is beyond the timeline horizon {horizon}")]
    OutOfHorizon { t: f64, horizon: f64 },
    #[error("G(T) = 1: the supremum bound denominator vanishes")]
    DenominatorVanishes,
    #[error("distribution declares no regularity data (c, gamma, a)")]
    MissingRegularityData,
    #[error("invalid distribution parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid timeline: {0}")]
    InvalidTimeline(String),
}

/// Hölder regularity data for the triple-probability bounds: exponent
/// `gamma`, constant `c`, and a support witness `a` with `G(a) <= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regularity {
    pub gamma: f64,
    pub c: f64,
    pub a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Kind {
    Exponential { rate: f64 },
    Uniform { b: f64 },
}

/// An interarrival lifetime distribution with its equilibrium companion.
///
/// Built-ins are the exponential (whose equilibrium law is itself, by
/// memorylessness) and the uniform on `(0, b)`. Regularity data is declared,
/// not inferred; the constructors fill in the exact values and a caller may
/// override or remove them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LifetimeDistribution {
    #[serde(flatten)]
    kind: Kind,
    regularity: Option<Regularity>,
}

impl LifetimeDistribution {
    pub fn exponential(rate: f64) -> Result<Self, RenewalError> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(RenewalError::InvalidParameter(format!(
                "exponential rate must be positive and finite, got {rate}"
            )));
        }
        Ok(Self {
            kind: Kind::Exponential { rate },
            // Density bound c = rate; G(ln 2 / rate) = 1/2 exactly.
            regularity: Some(Regularity {
                gamma: 1.0,
                c: rate,
                a: std::f64::consts::LN_2 / rate,
            }),
        })
    }

    pub fn uniform(b: f64) -> Result<Self, RenewalError> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(RenewalError::InvalidParameter(format!(
                "uniform upper endpoint must be positive and finite, got {b}"
            )));
        }
        Ok(Self {
            kind: Kind::Uniform { b },
            regularity: Some(Regularity { gamma: 1.0, c: 1.0 / b, a: b / 2.0 }),
        })
    }

    /// Replaces the declared regularity data. `Some` values are validated
    /// against `G(a) <= 1/2`.
    pub fn with_regularity(mut self, reg: Option<Regularity>) -> Result<Self, RenewalError> {
        if let Some(r) = reg {
            let well_formed = r.gamma > 0.0 && r.gamma <= 1.0 && r.c > 0.0 && r.a > 0.0;
            if !well_formed {
                return Err(RenewalError::InvalidParameter(
                    "regularity requires gamma in (0,1], c > 0, a > 0".into(),
                ));
            }
            if self.cdf(r.a) > 0.5 + 1e-12 {
                return Err(RenewalError::InvalidParameter(format!(
                    "witness a = {} has G(a) = {} > 1/2",
                    r.a,
                    self.cdf(r.a)
                )));
            }
        }
        self.regularity = reg;
        Ok(self)
    }

    pub fn regularity(&self) -> Option<Regularity> {
        self.regularity
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match self.kind {
            Kind::Exponential { rate } => 1.0 - (-rate * x).exp(),
            Kind::Uniform { b } => (x / b).min(1.0),
        }
    }

    pub fn mean(&self) -> f64 {
        match self.kind {
            Kind::Exponential { rate } => 1.0 / rate,
            Kind::Uniform { b } => b / 2.0,
        }
    }

    pub fn sample(&self, rng: &mut Stream) -> f64 {
        let u = rng.uniform_open();
        match self.kind {
            Kind::Exponential { rate } => -u.ln() / rate,
            Kind::Uniform { b } => u * b,
        }
    }

    /// `(G)_e(x) = (1/mu) int_0^x (1 - G(y)) dy`.
    pub fn equilibrium_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match self.kind {
            Kind::Exponential { rate } => 1.0 - (-rate * x).exp(),
            Kind::Uniform { b } => {
                if x >= b {
                    1.0
                } else {
                    let r = x / b;
                    2.0 * r - r * r
                }
            }
        }
    }

    /// Draw from the equilibrium distribution, using the closed form.
    pub fn equilibrium_sample(&self, rng: &mut Stream) -> f64 {
        let u = rng.uniform_open();
        match self.kind {
            Kind::Exponential { rate } => -u.ln() / rate,
            Kind::Uniform { b } => b * (1.0 - (1.0 - u).sqrt()),
        }
    }

    /// Fallback equilibrium sampler: numeric inverse of `equilibrium_cdf`
    /// by bisection to absolute tolerance 1e-10. The built-ins have closed
    /// forms; this path exists for distributions that do not.
    pub fn equilibrium_sample_numeric(&self, rng: &mut Stream) -> f64 {
        let u = rng.uniform_open();
        let mut hi = self.mean().max(1e-6);
        while self.equilibrium_cdf(hi) < u {
            hi *= 2.0;
            if hi > 1e300 {
                break;
            }
        }
        let mut lo = 0.0;
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if self.equilibrium_cdf(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// One face's sampled on/off path on `[0, horizon]`.
///
/// `arrivals` holds the renewal times `S_1 < S_2 < ...`; `marks[j]` is the
/// Bernoulli state on the epoch starting at `S_j` (with `marks[0]` covering
/// `[0, S_1)`), so `marks.len() == arrivals.len() + 1`. Sampled timelines
/// store exactly one arrival beyond the horizon, making the state total on
/// the whole window. The state is piecewise constant and right-continuous.
#[derive(Debug, Clone, PartialEq)]
pub struct OnOffTimeline {
    arrivals: Vec<f64>,
    marks: Vec<bool>,
    p: f64,
    horizon: f64,
}

impl OnOffTimeline {
    /// Samples a stationary timeline: equilibrium first arrival, iid
    /// lifetimes afterwards, one Bernoulli(p) mark per epoch.
    pub fn sample(
        dist: &LifetimeDistribution,
        p: f64,
        horizon: f64,
        rng: &mut Stream,
    ) -> Result<Self, RenewalError> {
        assert!((0.0..=1.0).contains(&p), "p must be a probability");
        assert!(horizon > 0.0, "horizon must be positive");
        let mut arrivals = Vec::new();
        let mut t = dist.equilibrium_sample(rng);
        if !(t > 0.0 && t.is_finite()) {
            return Err(RenewalError::NonFiniteSample);
        }
        arrivals.push(t);
        while t <= horizon {
            let z = dist.sample(rng);
            if !(z > 0.0 && z.is_finite()) {
                return Err(RenewalError::NonFiniteSample);
            }
            t += z;
            arrivals.push(t);
        }
        let marks = (0..=arrivals.len()).map(|_| rng.bernoulli(p)).collect();
        Ok(Self { arrivals, marks, p, horizon })
    }

    /// Builds a timeline from explicit parts (mostly for tests and golden
    /// cases). Validates monotonicity and the epoch/mark count relation.
    pub fn from_parts(
        arrivals: Vec<f64>,
        marks: Vec<bool>,
        p: f64,
        horizon: f64,
    ) -> Result<Self, RenewalError> {
        if marks.len() != arrivals.len() + 1 {
            return Err(RenewalError::InvalidTimeline(format!(
                "need one mark per epoch: {} arrivals require {} marks, got {}",
                arrivals.len(),
                arrivals.len() + 1,
                marks.len()
            )));
        }
        let horizon_ok = horizon > 0.0;
        if !horizon_ok {
            return Err(RenewalError::InvalidTimeline("horizon must be positive".into()));
        }
        let mut prev = 0.0;
        for &s in &arrivals {
            if !(s > prev && s.is_finite()) {
                return Err(RenewalError::InvalidTimeline(
                    "arrivals must be strictly increasing and positive".into(),
                ));
            }
            prev = s;
        }
        Ok(Self { arrivals, marks, p, horizon })
    }

    pub fn arrivals(&self) -> &[f64] {
        &self.arrivals
    }

    pub fn marks(&self) -> &[bool] {
        &self.marks
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// State at time `t`: the mark of the epoch containing `t`
    /// (right-continuous, so `t = S_j` reads mark `j`).
    pub fn state_at(&self, t: f64) -> Result<bool, RenewalError> {
        if t > self.horizon {
            return Err(RenewalError::OutOfHorizon { t, horizon: self.horizon });
        }
        let idx = self.arrivals.partition_point(|&s| s <= t);
        Ok(self.marks[idx])
    }

    /// The arrival times within the horizon at which the state actually
    /// changes. The state is constant between consecutive returned times.
    pub fn toggle_times(&self) -> Vec<f64> {
        (0..self.arrivals.len())
            .filter(|&j| self.arrivals[j] <= self.horizon && self.marks[j + 1] != self.marks[j])
            .map(|j| self.arrivals[j])
            .collect()
    }
}

/// Lemma-style conditional law: `P(on at t | on at 0) = 1 - (1-p)(G)_e(t)`.
pub fn cond_on_probability(dist: &LifetimeDistribution, p: f64, t: f64) -> f64 {
    1.0 - (1.0 - p) * dist.equilibrium_cdf(t)
}

/// Upper bound on `P(sup_{0 <= t <= T} state(t) = 1)`:
/// `p (1 + (1-p) (G)_e(T) / (1 - G(T)))`. Requires `G(T) < 1`.
pub fn sup_on_probability_bound(
    dist: &LifetimeDistribution,
    p: f64,
    t_max: f64,
) -> Result<f64, RenewalError> {
    let g = dist.cdf(t_max);
    if g >= 1.0 {
        return Err(RenewalError::DenominatorVanishes);
    }
    Ok(p * (1.0 + (1.0 - p) * dist.equilibrium_cdf(t_max) / (1.0 - g)))
}

/// Bounds on the off-on-off and on-off-on patterns at `r < s < t <= 1`:
/// `((2c/a) p (t-r)^{1+gamma}, (2c/a) p^2 (t-r)^{1+gamma})`.
pub fn triple_probability_bounds(
    dist: &LifetimeDistribution,
    p: f64,
    r: f64,
    s: f64,
    t: f64,
) -> Result<(f64, f64), RenewalError> {
    assert!(0.0 <= r && r < s && s < t && t <= 1.0, "need 0 <= r < s < t <= 1");
    let reg = dist.regularity().ok_or(RenewalError::MissingRegularityData)?;
    let base = 2.0 * reg.c / reg.a * (t - r).powf(1.0 + reg.gamma);
    Ok((base * p, base * p * p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp1() -> LifetimeDistribution {
        LifetimeDistribution::exponential(1.0).unwrap()
    }

    fn unif(b: f64) -> LifetimeDistribution {
        LifetimeDistribution::uniform(b).unwrap()
    }

    /// Simpson quadrature of (1/mu) int_0^x (1 - G).
    fn equilibrium_cdf_numeric(dist: &LifetimeDistribution, x: f64) -> f64 {
        let n = 2000;
        let h = x / n as f64;
        let f = |y: f64| 1.0 - dist.cdf(y);
        let mut acc = f(0.0) + f(x);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0 / dist.mean()
    }

    #[test]
    fn exponential_equilibrium_is_itself() {
        let d = exp1();
        for i in 0..=40 {
            let x = i as f64 * 0.25;
            assert!((d.equilibrium_cdf(x) - d.cdf(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_equilibrium_matches_quadrature() {
        let d = unif(2.0);
        for i in 1..=10 {
            let x = i as f64 * 0.2;
            let exact = d.equilibrium_cdf(x);
            let numeric = equilibrium_cdf_numeric(&d, x);
            assert!((exact - numeric).abs() < 1e-8, "x={x}: {exact} vs {numeric}");
        }
        assert_eq!(d.equilibrium_cdf(2.0), 1.0);
        assert_eq!(d.equilibrium_cdf(5.0), 1.0);
    }

    #[test]
    fn declared_mean_matches_survival_integral() {
        for d in [exp1(), unif(0.7), LifetimeDistribution::exponential(3.0).unwrap()] {
            // mu = int_0^inf (1 - G); truncate where the tail is negligible.
            let hi = 40.0 * d.mean();
            let n = 400_000;
            let h = hi / n as f64;
            let mut acc = 0.0;
            for i in 0..n {
                acc += (1.0 - d.cdf((i as f64 + 0.5) * h)) * h;
            }
            assert!(
                (acc - d.mean()).abs() / d.mean() < 1e-6,
                "integral {acc} vs mean {}",
                d.mean()
            );
        }
    }

    #[test]
    fn equilibrium_numeric_inverse_agrees() {
        let d = unif(1.5);
        let mut rng = crate::rng::Stream::seed_from(5);
        for _ in 0..200 {
            let x = d.equilibrium_sample_numeric(&mut rng);
            // Push the sample back through the CDF: must be in (0,1) and the
            // closed-form inverse of that value must return x.
            let u = d.equilibrium_cdf(x);
            let back = 1.5 * (1.0 - (1.0 - u).sqrt());
            assert!((back - x).abs() < 1e-8);
        }
    }

    #[test]
    fn timeline_extremes() {
        let d = exp1();
        let mut rng = crate::rng::Stream::seed_from(11);
        let on = OnOffTimeline::sample(&d, 1.0, 5.0, &mut rng).unwrap();
        let off = OnOffTimeline::sample(&d, 0.0, 5.0, &mut rng).unwrap();
        for i in 0..=50 {
            let t = i as f64 * 0.1;
            assert!(on.state_at(t).unwrap());
            assert!(!off.state_at(t).unwrap());
        }
    }

    #[test]
    fn timeline_overshoot_and_horizon() {
        let d = exp1();
        let mut rng = crate::rng::Stream::seed_from(3);
        let tl = OnOffTimeline::sample(&d, 0.5, 2.0, &mut rng).unwrap();
        let last = *tl.arrivals().last().unwrap();
        assert!(last > 2.0, "one arrival beyond the horizon is stored");
        assert_eq!(tl.arrivals().iter().filter(|&&s| s > 2.0).count(), 1);
        assert!(matches!(
            tl.state_at(2.5),
            Err(RenewalError::OutOfHorizon { .. })
        ));
    }

    #[test]
    fn state_lookup_examples() {
        let tl = OnOffTimeline::from_parts(
            vec![0.4, 1.3],
            vec![true, false, true],
            0.5,
            2.0,
        )
        .unwrap();
        assert!(tl.state_at(0.0).unwrap()); // I_0 before S_1
        assert!(!tl.state_at(0.7).unwrap()); // spec example: 0
        assert!(!tl.state_at(0.4).unwrap()); // right-continuity at S_1
        assert!(tl.state_at(1.3).unwrap()); // right-continuity at S_2
        assert_eq!(tl.toggle_times(), vec![0.4, 1.3]);
    }

    #[test]
    fn toggle_times_examples() {
        let constant =
            OnOffTimeline::from_parts(vec![0.4, 1.3], vec![true, true, true], 0.5, 2.0).unwrap();
        assert!(constant.toggle_times().is_empty());
        let one =
            OnOffTimeline::from_parts(vec![0.4, 1.3], vec![true, true, false], 0.5, 2.0).unwrap();
        assert_eq!(one.toggle_times(), vec![1.3]);
    }

    #[test]
    fn from_parts_validation() {
        assert!(matches!(
            OnOffTimeline::from_parts(vec![0.4, 0.4], vec![true, false, true], 0.5, 2.0),
            Err(RenewalError::InvalidTimeline(_))
        ));
        assert!(matches!(
            OnOffTimeline::from_parts(vec![0.4], vec![true], 0.5, 2.0),
            Err(RenewalError::InvalidTimeline(_))
        ));
    }

    #[test]
    fn conditional_law_values() {
        let d = exp1();
        assert!((cond_on_probability(&d, 0.5, std::f64::consts::LN_2) - 0.75).abs() < 1e-12);
        assert_eq!(cond_on_probability(&d, 0.3, 0.0), 1.0);
        assert_eq!(cond_on_probability(&d, 1.0, 7.0), 1.0);
    }

    #[test]
    fn sup_bound_values() {
        let d = exp1();
        let b = sup_on_probability_bound(&d, 0.5, 0.1).unwrap();
        assert!((b - 0.52629).abs() < 1e-4, "{b}");
        assert_eq!(sup_on_probability_bound(&d, 0.0, 0.1).unwrap(), 0.0);
        assert_eq!(
            sup_on_probability_bound(&unif(0.5), 0.5, 0.6).unwrap_err(),
            RenewalError::DenominatorVanishes
        );
    }

    #[test]
    fn triple_bound_values() {
        let d = exp1();
        let (b1, b2) = triple_probability_bounds(&d, 0.3, 0.0, 0.1, 0.2).unwrap();
        assert!((b1 - 2.0 / std::f64::consts::LN_2 * 0.3 * 0.04).abs() < 1e-12);
        assert!((b1 - 0.0346).abs() < 5e-4);
        assert!((b2 - b1 * 0.3).abs() < 1e-12);
        let (z1, z2) = triple_probability_bounds(&d, 0.0, 0.0, 0.1, 0.2).unwrap();
        assert_eq!((z1, z2), (0.0, 0.0));
    }

    #[test]
    fn missing_regularity_is_an_error() {
        let d = exp1().with_regularity(None).unwrap();
        assert_eq!(
            triple_probability_bounds(&d, 0.3, 0.0, 0.1, 0.2).unwrap_err(),
            RenewalError::MissingRegularityData
        );
    }

    #[test]
    fn bad_witness_rejected() {
        // G(a) = 1 - e^{-2} > 1/2 for rate 1, a = 2.
        let err = exp1()
            .with_regularity(Some(Regularity { gamma: 1.0, c: 1.0, a: 2.0 }))
            .unwrap_err();
        assert!(matches!(err, RenewalError::InvalidParameter(_)));
    }

    #[test]
    fn stationarity_smoke() {
        // Fraction of on-states at fixed times over replications stays near p.
        let d = exp1();
        let p = 0.5;
        let reps = 4000;
        for &t in &[0.0, 5.0, 10.0] {
            let mut on = 0usize;
            for r in 0..reps {
                let mut rng = crate::rng::Stream::seed_from(1000 + r);
                let tl = OnOffTimeline::sample(&d, p, 10.0, &mut rng).unwrap();
                if tl.state_at(t).unwrap() {
                    on += 1;
                }
            }
            let freq = on as f64 / reps as f64;
            let se = (p * (1.0 - p) / reps as f64).sqrt();
            assert!((freq - p).abs() < 4.0 * se, "t={t}: freq {freq}");
        }
    }

    #[test]
    fn renewal_mean_smoke() {
        // E N(t) = t / mu for the stationary process.
        let d = unif(2.0); // mu = 1
        let t = 6.0;
        let reps = 3000;
        let mut total = 0usize;
        for r in 0..reps {
            let mut rng = crate::rng::Stream::seed_from(7000 + r);
            let tl = OnOffTimeline::sample(&d, 0.5, t, &mut rng).unwrap();
            total += tl.arrivals().iter().filter(|&&s| s <= t).count();
        }
        let mean = total as f64 / reps as f64;
        // Var N(t) is close to t/mu for these lifetimes; 4 sigma with slack.
        let se = (t / d.mean() / reps as f64).sqrt();
        assert!((mean - t / d.mean()).abs() < 5.0 * se, "mean {mean}");
    }
}
