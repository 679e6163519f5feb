//! The verification suites behind `verify --suite ...`.
//!
//! The tolerance ladder separates what is exact from what is asymptotic:
//! exact identities demand equality, closed-form finite-n formulas get four
//! standard errors, asymptotic formulas get documented relative tolerances
//! that widen at small n, and limit-theorem trends are monotone-deviation
//! checks with one permitted inversion.

use crate::complex::{ComplexSnapshot, CouplingMode, DynamicComplexModel};
use crate::homology::{
    betti_both_fields, betti_numbers, betti_via_decomposition, morse_sandwich_holds,
    vanishing_diagnostic, BoundaryMatrix, CoefficientField,
};
use crate::renewal::{cond_on_probability, OnOffTimeline};
use crate::rng::{replication_seed, Stream};
use crate::stats;
use crate::theory;
use std::time::Instant;

use super::runner::run_replications;
use super::{CheckRecord, ExperimentConfig, ExperimentError, StatReport, SuiteKind};

pub fn run_suite(cfg: &ExperimentConfig, suite: SuiteKind) -> Result<StatReport, ExperimentError> {
    match suite {
        SuiteKind::Moments => verify_moments(cfg),
        SuiteKind::Slln => verify_slln(cfg),
        SuiteKind::Fclt => verify_fclt(cfg),
        SuiteKind::Identities => verify_identities(cfg),
    }
}

/// Times at which the moments and FCLT suites evaluate the complex: the
/// first grid point plus its lagged companions.
fn lagged_times(cfg: &ExperimentConfig) -> Result<Vec<f64>, ExperimentError> {
    let t0 = cfg.grid[0];
    let mut times = vec![t0];
    for &lag in &cfg.lags {
        if lag > 0.0 {
            times.push(t0 + lag);
        }
    }
    times.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    times.dedup();
    if times.last().is_some_and(|&t| t > cfg.horizon) {
        return Err(ExperimentError::Config(format!(
            "lagged evaluation time {} exceeds the horizon {}",
            times.last().unwrap(),
            cfg.horizon
        )));
    }
    Ok(times)
}

/// Monte Carlo means against the exact product formula, the critical-lag
/// covariance against its displayed asymptotic form, and the stationary
/// renewal laws.
pub fn verify_moments(cfg: &ExperimentConfig) -> Result<StatReport, ExperimentError> {
    let start = Instant::now();
    if cfg.replications < 500 {
        return Err(ExperimentError::Config(
            "the moments suite needs at least 500 replications".into(),
        ));
    }
    let n = cfg.single_n()?;
    let alpha = cfg.alpha.build()?;
    let regime = alpha.regime().map_err(|e| ExperimentError::Config(e.to_string()))?;
    let dists = cfg.built_distributions()?;
    let times = lagged_times(cfg)?;
    let t0 = times[0];
    let dim_cap = cfg.resolve_dim_cap(n, regime.m_alpha);
    let report_dims = regime.m_alpha.min(dim_cap);

    let mut report = StatReport::new("moments");

    // counts[rep][time][dim]
    let counts = run_replications(cfg, n, cfg.replications, |_, model| {
        Ok(model.face_counts_path(&times)?.counts)
    })?;

    for j in 0..=report_dims {
        let sample: Vec<f64> = counts.iter().map(|c| c[0][j] as f64).collect();
        let theory_mean = theory::expected_face_count(n, &alpha, j);
        // Rare high dimensions can produce an all-zero sample; a Poisson
        // floor on the standard error keeps the z-score meaningful there
        // (deterministic dimensions have theory == estimate exactly).
        let se_floor = if theory_mean > 0.0 && j >= alpha.q() {
            (theory_mean / sample.len() as f64).sqrt()
        } else {
            0.0
        };
        report.push_four_se(
            format!("mean f_{j} at t={t0}"),
            stats::mean(&sample),
            stats::standard_error(&sample).max(se_floor),
            theory_mean,
        );
    }

    if let Some(k) = regime.critical_k.filter(|&k| k <= dim_cap) {
        if let Some(dist_q) = dists.get(&regime.q) {
            let base: Vec<f64> = counts.iter().map(|c| c[0][k] as f64).collect();
            for &lag in &cfg.lags {
                let lagged: Vec<f64> = if lag == 0.0 {
                    base.clone()
                } else {
                    let idx = times
                        .iter()
                        .position(|&t| (t - (t0 + lag)).abs() < 1e-12)
                        .expect("lagged time was scheduled");
                    counts.iter().map(|c| c[idx][k] as f64).collect()
                };
                let cov = stats::covariance(&base, &lagged);
                let cov_theory = theory::critical_covariance(n, &regime, dist_q, lag)
                    .map_err(|e| ExperimentError::Config(e.to_string()))?;
                report.push_relative(
                    format!("cov f_{k} lag {lag}"),
                    cov,
                    cov_theory,
                    ExperimentConfig::covariance_rel_tolerance(n),
                );
                let corr = stats::correlation(&base, &lagged);
                report.push_absolute(
                    format!("corr f_{k} lag {lag}"),
                    corr,
                    theory::limit_covariance_rk(dist_q, lag),
                    cfg.correlation_tolerance,
                    true,
                );
            }
        }
    }

    if let Some(spec) = &cfg.renewal_checks {
        renewal_law_checks(cfg, spec, n, &alpha, &regime, &mut report)?;
    }

    report.runtime = start.elapsed();
    Ok(report)
}

/// Stationarity and the conditional on-law for raw timelines.
fn renewal_law_checks(
    cfg: &ExperimentConfig,
    spec: &super::RenewalChecksSpec,
    n: u32,
    alpha: &crate::params::AlphaSequence,
    regime: &crate::params::RegimeReport,
    report: &mut StatReport,
) -> Result<(), ExperimentError> {
    let p = spec.p.unwrap_or_else(|| alpha.face_probability(regime.q, n));
    let reps = spec.replications;
    let max_lag = spec.lags.iter().cloned().fold(0.0f64, f64::max);
    let horizon = (max_lag * 1.5).max(1.0);
    for (di, dist_spec) in spec.distributions.iter().enumerate() {
        let dist = dist_spec.build()?;
        let label = &dist_spec.kind;
        // One pass of timelines; per lag, measure marginal and conditional
        // on-frequencies.
        let mut on0 = 0u64;
        let mut on_at = vec![0u64; spec.lags.len()];
        let mut cond_n = vec![0u64; spec.lags.len()];
        let mut cond_on = vec![0u64; spec.lags.len()];
        for r in 0..reps {
            let mut rng = Stream::seed_from(replication_seed(
                cfg.seed ^ (0x9e37 + di as u64),
                r as u64,
            ));
            let tl = OnOffTimeline::sample(&dist, p, horizon, &mut rng)
                .map_err(ExperimentError::from)?;
            let s0 = tl.state_at(0.0).map_err(ExperimentError::from)?;
            if s0 {
                on0 += 1;
            }
            for (li, &lag) in spec.lags.iter().enumerate() {
                let st = tl.state_at(lag).map_err(ExperimentError::from)?;
                if st {
                    on_at[li] += 1;
                }
                if s0 {
                    cond_n[li] += 1;
                    if st {
                        cond_on[li] += 1;
                    }
                }
            }
        }
        let binom_se = |freq: f64, m: u64| (freq * (1.0 - freq) / m as f64).max(0.0).sqrt();
        let f0 = on0 as f64 / reps as f64;
        report.push_four_se(
            format!("{label}: stationary P(on) at t=0"),
            f0,
            binom_se(p, reps as u64),
            p,
        );
        for (li, &lag) in spec.lags.iter().enumerate() {
            let freq = on_at[li] as f64 / reps as f64;
            report.push_four_se(
                format!("{label}: stationary P(on) at t={lag}"),
                freq,
                binom_se(p, reps as u64),
                p,
            );
            let target = cond_on_probability(&dist, p, lag);
            if cond_n[li] > 0 {
                let cfreq = cond_on[li] as f64 / cond_n[li] as f64;
                report.push_four_se(
                    format!("{label}: P(on at {lag} | on at 0)"),
                    cfreq,
                    binom_se(target, cond_n[li]),
                    target,
                );
            }
        }
    }
    Ok(())
}

/// Deviation of scaled invariants from their limits along an n-grid:
/// decreasing with at most one inversion and a capped final value.
pub fn verify_slln(cfg: &ExperimentConfig) -> Result<StatReport, ExperimentError> {
    let start = Instant::now();
    let n_grid = cfg
        .n_grid
        .clone()
        .ok_or_else(|| ExperimentError::Config("the slln suite needs an n_grid".into()))?;
    if n_grid.len() < 3 || !n_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(ExperimentError::Config(
            "slln n_grid must be increasing with at least 3 points".into(),
        ));
    }
    let alpha = cfg.alpha.build()?;
    let regime = alpha.regime().map_err(|e| ExperimentError::Config(e.to_string()))?;
    let law = theory::limit_constants(&regime)
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let k = law.critical_k;

    let mut report = StatReport::new("slln");
    let mut dev_beta = Vec::with_capacity(n_grid.len());
    let mut dev_chi = Vec::with_capacity(n_grid.len());

    for (idx, &n) in n_grid.iter().enumerate() {
        let spec = cfg.model_spec(n, replication_seed(cfg.seed, idx as u64))?;
        let model = DynamicComplexModel::build(spec)?;
        let scale = (n as f64).powf(law.slln_exponent);
        let mut worst_beta = 0.0f64;
        let mut worst_chi = 0.0f64;
        for &t in &cfg.grid {
            let snap = model.snapshot_at(t)?;
            let beta_k = betti_numbers(&snap, cfg.field).betti_at(k) as f64;
            let chi = snap.euler_characteristic_faces() as f64;
            worst_beta = worst_beta.max((beta_k / scale - law.slln_betti_limit).abs());
            worst_chi = worst_chi.max((chi / scale - law.slln_chi_limit).abs());
        }
        report.push(CheckRecord {
            name: format!("slln deviation at n={n} (beta_{k})"),
            estimate: worst_beta,
            std_error: None,
            theoretical: 0.0,
            z_score: None,
            p_value: None,
            rule: "informational".into(),
            hard: false,
            pass: true,
        });
        report.push(CheckRecord {
            name: format!("slln deviation at n={n} (chi)"),
            estimate: worst_chi,
            std_error: None,
            theoretical: 0.0,
            z_score: None,
            p_value: None,
            rule: "informational".into(),
            hard: false,
            pass: true,
        });
        dev_beta.push(worst_beta);
        dev_chi.push(worst_chi);
    }

    let trend = |devs: &[f64]| devs.windows(2).filter(|w| w[1] > w[0]).count();
    for (quantity, devs) in [("beta", &dev_beta), ("chi", &dev_chi)] {
        let inversions = trend(devs);
        report.push(CheckRecord {
            name: format!("slln {quantity} deviations decreasing (<= 1 inversion)"),
            estimate: inversions as f64,
            std_error: None,
            theoretical: 0.0,
            z_score: None,
            p_value: None,
            rule: "inversions <= 1".into(),
            hard: true,
            pass: inversions <= 1,
        });
        report.push_absolute(
            format!("slln {quantity} final deviation"),
            *devs.last().unwrap(),
            0.0,
            cfg.slln_final_cap,
            true,
        );
    }

    report.runtime = start.elapsed();
    Ok(report)
}

/// Marginal normality of the standardized critical face count, lag
/// correlations against `R_k`, and the explicit normalization constant.
pub fn verify_fclt(cfg: &ExperimentConfig) -> Result<StatReport, ExperimentError> {
    let start = Instant::now();
    if cfg.replications < 1000 {
        return Err(ExperimentError::Config(
            "the fclt suite needs at least 1000 replications".into(),
        ));
    }
    let n = cfg.single_n()?;
    let alpha = cfg.alpha.build()?;
    let regime = alpha.regime().map_err(|e| ExperimentError::Config(e.to_string()))?;
    let law = theory::limit_constants(&regime)
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let k = law.critical_k;
    let dists = cfg.built_distributions()?;
    let dist_q = dists
        .get(&regime.q)
        .ok_or_else(|| ExperimentError::Config("fclt needs the q-dimension distribution".into()))?
        .clone();
    let var_theory = theory::critical_variance(n, &regime)
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let sd_theory = var_theory.sqrt();

    // Evaluation grid: the configured grid plus lag companions of its first
    // point.
    let t0 = cfg.grid[0];
    let mut times = cfg.grid.clone();
    for &lag in &cfg.lags {
        if lag > 0.0 {
            times.push(t0 + lag);
        }
    }
    times.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    times.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if *times.last().unwrap() > cfg.horizon {
        return Err(ExperimentError::Config(
            "fclt lag times exceed the horizon".into(),
        ));
    }

    let field = cfg.field;
    // Per replication: (f_k, beta_k, chi) at every evaluation time.
    let eval_times = times.clone();
    let samples = run_replications(cfg, n, cfg.replications, move |_, model| {
        let mut rows = Vec::with_capacity(eval_times.len());
        for &t in &eval_times {
            let snap = model.snapshot_at(t)?;
            let f_k = snap.face_count(k) as f64;
            let beta_k = betti_numbers(&snap, field).betti_at(k) as f64;
            let chi = snap.euler_characteristic_faces() as f64;
            rows.push((f_k, beta_k, chi));
        }
        Ok(rows)
    })?;

    let column = |sel: fn(&(f64, f64, f64)) -> f64, idx: usize| -> Vec<f64> {
        samples.iter().map(|rows| sel(&rows[idx])).collect()
    };

    let mut report = StatReport::new("fclt");

    // Kolmogorov-Smirnov marginals on the configured grid points, Holm
    // corrected at the family level.
    let mut pvalues = Vec::new();
    let mut names = Vec::new();
    for &t in &cfg.grid {
        let idx = times.iter().position(|&x| (x - t).abs() < 1e-12).unwrap();
        let sample = column(|r| r.0, idx);
        let m = stats::mean(&sample);
        let standardized: Vec<f64> = sample.iter().map(|x| (x - m) / sd_theory).collect();
        let d = stats::ks_statistic(&standardized, stats::normal_cdf);
        let p = stats::ks_pvalue(d, standardized.len());
        pvalues.push(p);
        names.push(format!("ks standardized f_{k} at t={t}"));
    }
    let rejections = stats::holm_rejections(&pvalues, cfg.ks_family_level);
    let family_pass = rejections.iter().all(|&r| !r);
    for ((name, p), rej) in names.iter().zip(&pvalues).zip(&rejections) {
        report.push(CheckRecord {
            name: name.clone(),
            estimate: *p,
            std_error: None,
            theoretical: cfg.ks_family_level,
            z_score: None,
            p_value: Some(*p),
            rule: format!("holm family level {}", cfg.ks_family_level),
            hard: true,
            pass: !rej,
        });
    }
    report.push(CheckRecord {
        name: format!("ks family over {} grid times", cfg.grid.len()),
        estimate: if family_pass { 0.0 } else { 1.0 },
        std_error: None,
        theoretical: 0.0,
        z_score: None,
        p_value: None,
        rule: "no holm rejection".into(),
        hard: true,
        pass: family_pass,
    });

    // Lag correlations for f_k, beta_k and chi against R_k.
    let idx0 = times.iter().position(|&x| (x - t0).abs() < 1e-12).unwrap();
    for &lag in cfg.lags.iter().filter(|&&l| l > 0.0) {
        let idx = times
            .iter()
            .position(|&x| (x - (t0 + lag)).abs() < 1e-12)
            .unwrap();
        let target = theory::limit_covariance_rk(&dist_q, lag);
        for (label, sel) in [
            ("f", (|r: &(f64, f64, f64)| r.0) as fn(&(f64, f64, f64)) -> f64),
            ("beta", |r| r.1),
            ("chi", |r| r.2),
        ] {
            let a = column(sel, idx0);
            let b = column(sel, idx);
            let corr = stats::correlation(&a, &b);
            report.push_absolute(
                format!("corr {label}_{k} lag {lag}"),
                corr,
                target,
                cfg.correlation_tolerance,
                true,
            );
        }
    }

    // Explicit normalization of the scaled restatement: the empirical
    // standard deviation times sqrt((q+1)!) (k-q)! must match
    // n^{tau_k - tau_q/2} within 10%.
    let sd_emp = stats::sample_variance(&column(|r| r.0, idx0)).sqrt();
    let explicit_scale = (n as f64).powf(law.fclt_exponent);
    report.push_relative(
        "explicit normalization constant",
        sd_emp * law.fclt_constant,
        explicit_scale,
        0.10,
    );

    // Standardized chi against standardized (-1)^k f_k: same limit process,
    // so the two distributions should be close (informational).
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let chi_sample = column(|r| r.2, idx0);
    let chi_mean = stats::mean(&chi_sample);
    let chi_std: Vec<f64> = chi_sample.iter().map(|x| (x - chi_mean) / sd_theory).collect();
    let f_sample = column(|r| r.0, idx0);
    let f_mean = stats::mean(&f_sample);
    let f_std: Vec<f64> = f_sample
        .iter()
        .map(|x| sign * (x - f_mean) / sd_theory)
        .collect();
    let d2 = stats::ks_two_sample_statistic(&chi_std, &f_std);
    report.push_absolute(
        format!("two-sample ks: standardized chi vs (-1)^{k} f_{k}"),
        d2,
        0.0,
        0.1,
        false,
    );

    report.runtime = start.elapsed();
    Ok(report)
}

/// Exact structural identities on sampled snapshots, plus the coupling
/// dominance and vanishing diagnostics as informational records.
pub fn verify_identities(cfg: &ExperimentConfig) -> Result<StatReport, ExperimentError> {
    let start = Instant::now();
    let n = cfg.single_n()?;
    if n > 25 {
        return Err(ExperimentError::Config(
            "identity checks run exact snapshots and are limited to n <= 25".into(),
        ));
    }
    let alpha = cfg.alpha.build()?;
    let regime = alpha.regime().map_err(|e| ExperimentError::Config(e.to_string()))?;
    let mut exact_cfg = cfg.clone();
    exact_cfg.exact = true;

    let mut report = StatReport::new("identities");

    if cfg.snapshot_count > 0 {
        let grid = cfg.grid.clone();
        let scc_orders = cfg.scc_orders.clone();
        let field = cfg.field;
        let per_snapshot = run_replications(&exact_cfg, n, cfg.snapshot_count, move |rep, model| {
            let t = grid[rep as usize % grid.len()];
            let snap = model.snapshot_at(t)?;
            Ok(identity_violations(&snap, field, &scc_orders))
        })?;

        let mut totals = IdentityViolations::default();
        let mut torsion_count = 0u64;
        for v in &per_snapshot {
            totals.chi += v.chi;
            totals.morse += v.morse;
            totals.scc += v.scc;
            totals.boundary += v.boundary;
            totals.closure += v.closure;
            torsion_count += v.torsion as u64;
        }
        report.push_exact("chi via faces == chi via betti", totals.chi);
        report.push_exact("morse sandwich", totals.morse);
        report.push_exact("betti via scc decomposition == global", totals.scc);
        report.push_exact("boundary composition d.d = 0", totals.boundary);
        report.push_exact("downward closure", totals.closure);
        report.push(CheckRecord {
            name: "snapshots with 2-torsion (gf2 vs rational disagreement)".into(),
            estimate: torsion_count as f64,
            std_error: None,
            theoretical: 0.0,
            z_score: None,
            p_value: None,
            rule: "informational".into(),
            hard: false,
            pass: true,
        });

        // Vanishing diagnostic on a deterministic subsample.
        if let Some(k) = regime.critical_k {
            if k >= 2 {
                let sample = cfg.snapshot_count.min(10);
                let mut applicable = 0u64;
                let mut confirmed = 0u64;
                let outcomes = run_replications(&exact_cfg, n, sample, move |_, model| {
                    let snap = model.snapshot_at(cfg.grid[0])?;
                    let rep = vanishing_diagnostic(&snap, k);
                    Ok((rep.applicable, rep.confirmed))
                })?;
                for (app, conf) in outcomes {
                    if app {
                        applicable += 1;
                        if conf == Some(true) {
                            confirmed += 1;
                        }
                    }
                }
                report.push(CheckRecord {
                    name: format!("vanishing diagnostic at k={k}: applicable/confirmed"),
                    estimate: applicable as f64,
                    std_error: None,
                    theoretical: confirmed as f64,
                    z_score: None,
                    p_value: None,
                    rule: "informational (confirmed must equal applicable)".into(),
                    hard: applicable != confirmed,
                    pass: applicable == confirmed,
                });
            }
        }
    }

    // Coupling dominance over windows: E sup f_j <= E f_j^{(sup-static)}
    // within Monte Carlo resolution.
    if !cfg.windows.is_empty() {
        coupling_dominance_checks(&exact_cfg, n, &regime, &mut report)?;
    }

    report.runtime = start.elapsed();
    Ok(report)
}

#[derive(Default, Clone, Copy)]
struct IdentityViolations {
    chi: u64,
    morse: u64,
    scc: u64,
    boundary: u64,
    closure: u64,
    torsion: bool,
}

fn identity_violations(
    snap: &ComplexSnapshot,
    field: CoefficientField,
    scc_orders: &[usize],
) -> IdentityViolations {
    let mut v = IdentityViolations::default();
    let profile = betti_numbers(snap, field);
    if profile.chi_faces != profile.chi_betti {
        v.chi += 1;
    }
    if !morse_sandwich_holds(snap, &profile) {
        v.morse += 1;
    }
    for &ell in scc_orders {
        if ell >= 1 && betti_via_decomposition(snap, ell, field) != profile.betti_at(ell) {
            v.scc += 1;
        }
    }
    for i in 1..=snap.top_dimension() {
        let upper = BoundaryMatrix::of_snapshot(snap, i);
        let lower = BoundaryMatrix::of_snapshot(snap, i - 1);
        if !upper.composes_to_zero_with(&lower) {
            v.boundary += 1;
        }
    }
    if ComplexSnapshot::from_faces(
        snap.n(),
        snap.time(),
        (0..=snap.top_dimension()).map(|d| snap.faces(d).to_vec()).collect(),
    )
    .is_err()
    {
        v.closure += 1;
    }
    if snap.n() <= 10 {
        let (_, _, torsion) = betti_both_fields(snap);
        v.torsion = torsion;
    }
    v
}

fn coupling_dominance_checks(
    cfg: &ExperimentConfig,
    n: u32,
    regime: &crate::params::RegimeReport,
    report: &mut StatReport,
) -> Result<(), ExperimentError> {
    let dim_cap = cfg.resolve_dim_cap(n, regime.m_alpha);
    let report_dims = regime.m_alpha.min(dim_cap);
    for (wi, &w) in cfg.windows.iter().enumerate() {
        if w > cfg.horizon {
            return Err(ExperimentError::Config(format!(
                "coupling window {w} exceeds the horizon"
            )));
        }
        // Per replication: sup of f_j over [0, w] and one static coupled
        // complex count.
        let rows = run_replications(cfg, n, cfg.replications, move |_rep, model| {
            let dims: Vec<usize> = (1..=report_dims).collect();
            let mut eval_times = vec![0.0];
            eval_times.extend(
                model
                    .event_times(&dims)
                    .into_iter()
                    .filter(|&e| e > 0.0 && e <= w),
            );
            let mut sup = vec![0u64; dim_cap + 1];
            for &t in &eval_times {
                let snap = model.snapshot_at(t)?;
                for (d, s) in sup.iter_mut().enumerate() {
                    *s = (*s).max(snap.face_count(d) as u64);
                }
            }
            // model.seed() is already replication-specific; remix it so the
            // static coupling draw gets an independent stream per window.
            let mut rng = Stream::seed_from(crate::rng::mix64(
                model.seed() ^ 0xc01d_c0de ^ ((wi as u64) << 32),
            ));
            let static_counts = model.coupled_static_counts(w, CouplingMode::Sup, &mut rng)?;
            Ok((sup, static_counts))
        })?;

        for j in 1..=report_dims {
            let sup_sample: Vec<f64> = rows.iter().map(|(s, _)| s[j] as f64).collect();
            let static_sample: Vec<f64> = rows.iter().map(|(_, c)| c[j] as f64).collect();
            let diff = stats::mean(&sup_sample) - stats::mean(&static_sample);
            let se = (stats::sample_variance(&sup_sample) / sup_sample.len() as f64
                + stats::sample_variance(&static_sample) / static_sample.len() as f64)
                .sqrt();
            report.push(CheckRecord {
                name: format!("coupling: E sup f_{j} <= E static f_{j} (w={w})"),
                estimate: diff,
                std_error: Some(se),
                theoretical: 0.0,
                z_score: if se > 0.0 { Some(diff / se) } else { None },
                p_value: None,
                rule: "diff <= 4 se".into(),
                hard: false,
                pass: diff <= 4.0 * se,
            });
        }
    }
    Ok(())
}
