//! Experiment configuration: one JSON document drives every subcommand.

use crate::complex::{ModelSpec, DEFAULT_FACE_BUDGET};
use crate::homology::CoefficientField;
use crate::params::{AlphaSequence, Tail};
use crate::renewal::{LifetimeDistribution, Regularity};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::ExperimentError;

/// Alpha entry: a number or the token "inf".
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaEntry {
    Number(f64),
    Word(String),
}

impl AlphaEntry {
    fn value(&self) -> Result<f64, ExperimentError> {
        match self {
            AlphaEntry::Number(x) => Ok(*x),
            AlphaEntry::Word(w) if w == "inf" => Ok(f64::INFINITY),
            AlphaEntry::Word(w) => {
                Err(ExperimentError::Config(format!("unknown alpha entry token {w:?}")))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaSpec {
    pub entries: Vec<AlphaEntry>,
    pub tail: Tail,
}

impl AlphaSpec {
    pub fn build(&self) -> Result<AlphaSequence, ExperimentError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.value())
            .collect::<Result<Vec<_>, _>>()?;
        AlphaSequence::new(entries, self.tail)
            .map_err(|e| ExperimentError::Config(e.to_string()))
    }
}

/// `{"type":"exponential","rate":l}` or `{"type":"uniform","b":b}`, with an
/// optional `{"gamma":..,"c":..,"a":..}` regularity override.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
}

impl DistributionSpec {
    pub fn build(&self) -> Result<LifetimeDistribution, ExperimentError> {
        let base = match self.kind.as_str() {
            "exponential" => {
                let rate = self.rate.ok_or_else(|| {
                    ExperimentError::Config("exponential distribution needs a rate".into())
                })?;
                LifetimeDistribution::exponential(rate)
            }
            "uniform" => {
                let b = self.b.ok_or_else(|| {
                    ExperimentError::Config("uniform distribution needs an endpoint b".into())
                })?;
                LifetimeDistribution::uniform(b)
            }
            other => {
                return Err(ExperimentError::Config(format!(
                    "unknown distribution type {other:?}"
                )))
            }
        }
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
        match (self.gamma, self.c, self.a) {
            (None, None, None) => Ok(base),
            (Some(gamma), Some(c), Some(a)) => base
                .with_regularity(Some(Regularity { gamma, c, a }))
                .map_err(|e| ExperimentError::Config(e.to_string())),
            _ => Err(ExperimentError::Config(
                "regularity override needs all of gamma, c, a".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Moments,
    Slln,
    Fclt,
    Identities,
}

impl std::str::FromStr for SuiteKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "moments" => Ok(SuiteKind::Moments),
            "slln" => Ok(SuiteKind::Slln),
            "fclt" => Ok(SuiteKind::Fclt),
            "identities" => Ok(SuiteKind::Identities),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

/// Standalone renewal-law checks folded into the moments suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RenewalChecksSpec {
    pub distributions: Vec<DistributionSpec>,
    /// On-probability; defaults to `p_q(n)` of the main model.
    #[serde(default)]
    pub p: Option<f64>,
    pub lags: Vec<f64>,
    pub replications: u32,
}

fn default_slln_cap() -> f64 {
    0.15
}

fn default_snapshot_count() -> u32 {
    0
}

fn default_ks_level() -> f64 {
    0.01
}

fn default_correlation_tolerance() -> f64 {
    0.05
}

fn default_scc_orders() -> Vec<usize> {
    vec![1, 2, 3]
}

fn default_field() -> CoefficientField {
    CoefficientField::Gf2
}

fn default_face_budget() -> u64 {
    DEFAULT_FACE_BUDGET
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Vertex count; exactly one of `n` / `n_grid` must be present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<Vec<u32>>,
    pub alpha: AlphaSpec,
    /// Lifetime distribution per random dimension.
    #[serde(default)]
    pub distributions: BTreeMap<usize, DistributionSpec>,
    pub horizon: f64,
    /// Evaluation grid, increasing, inside `[0, horizon]`.
    pub grid: Vec<f64>,
    pub replications: u32,
    pub seed: u64,
    #[serde(default = "default_field")]
    pub field: CoefficientField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_cap: Option<usize>,
    /// Exact mode: simulate every dimension up to `n - 1`.
    #[serde(default)]
    pub exact: bool,
    #[serde(default)]
    pub lags: Vec<f64>,
    /// Coupling-dominance windows (identities suite).
    #[serde(default)]
    pub windows: Vec<f64>,
    /// Compute Betti profiles along trajectories where optional.
    #[serde(default)]
    pub betti: bool,
    #[serde(default = "default_slln_cap")]
    pub slln_final_cap: f64,
    /// Snapshots examined by the identities suite.
    #[serde(default = "default_snapshot_count")]
    pub snapshot_count: u32,
    #[serde(default = "default_scc_orders")]
    pub scc_orders: Vec<usize>,
    #[serde(default = "default_ks_level")]
    pub ks_family_level: f64,
    #[serde(default = "default_correlation_tolerance")]
    pub correlation_tolerance: f64,
    #[serde(default = "default_face_budget")]
    pub face_budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub renewal_checks: Option<RenewalChecksSpec>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        match (self.n, &self.n_grid) {
            (Some(_), None) => {}
            (None, Some(grid)) if !grid.is_empty() => {}
            _ => {
                return Err(ExperimentError::Config(
                    "exactly one of n / n_grid must be set".into(),
                ))
            }
        }
        let horizon_ok = self.horizon > 0.0;
        if !horizon_ok {
            return Err(ExperimentError::Config("horizon must be positive".into()));
        }
        if self.grid.is_empty() {
            return Err(ExperimentError::Config("evaluation grid is empty".into()));
        }
        if !self.grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(ExperimentError::Config("grid must be strictly increasing".into()));
        }
        if self.grid[0] < 0.0 || *self.grid.last().unwrap() > self.horizon {
            return Err(ExperimentError::Config(format!(
                "grid must sit inside [0, {}]",
                self.horizon
            )));
        }
        if self.replications < 1 {
            return Err(ExperimentError::Config("need at least one replication".into()));
        }
        if self.lags.iter().any(|&l| l < 0.0) {
            return Err(ExperimentError::Config("lags must be nonnegative".into()));
        }
        self.alpha.build()?;
        for spec in self.distributions.values() {
            spec.build()?;
        }
        Ok(())
    }

    /// The single vertex count, erroring when an n-grid was configured.
    pub fn single_n(&self) -> Result<u32, ExperimentError> {
        self.n
            .ok_or_else(|| ExperimentError::Config("this suite needs a single n".into()))
    }

    pub fn built_distributions(
        &self,
    ) -> Result<BTreeMap<usize, LifetimeDistribution>, ExperimentError> {
        self.distributions
            .iter()
            .map(|(&dim, spec)| spec.build().map(|d| (dim, d)))
            .collect()
    }

    pub fn resolve_dim_cap(&self, n: u32, m_alpha: usize) -> usize {
        if self.exact {
            (n as usize).saturating_sub(1).max(1)
        } else {
            self.dim_cap.unwrap_or(m_alpha + 2).min((n as usize).saturating_sub(1)).max(1)
        }
    }

    /// The fully resolved model inputs for vertex count `n` and a seed.
    pub fn model_spec(&self, n: u32, seed: u64) -> Result<ModelSpec, ExperimentError> {
        let alpha = self.alpha.build()?;
        let regime = alpha.regime().map_err(|e| ExperimentError::Config(e.to_string()))?;
        Ok(ModelSpec {
            n,
            alpha,
            distributions: self.built_distributions()?,
            horizon: self.horizon,
            seed,
            dim_cap: self.resolve_dim_cap(n, regime.m_alpha),
            face_budget: self.face_budget,
        })
    }

    /// Relative tolerance for asymptotic covariance comparisons, widening at
    /// small n: 15% from n = 60 up, 25% from n = 30, 35% below.
    pub fn covariance_rel_tolerance(n: u32) -> f64 {
        if n >= 60 {
            0.15
        } else if n >= 30 {
            0.25
        } else {
            0.35
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique_json() -> String {
        r#"{
            "n": 12,
            "alpha": {"entries": [0.9], "tail": "zero"},
            "distributions": {"1": {"type": "exponential", "rate": 1.0}},
            "horizon": 2.0,
            "grid": [0.5, 1.0],
            "replications": 100,
            "seed": 7
        }"#
        .to_string()
    }

    #[test]
    fn parse_minimal_config() {
        let cfg = ExperimentConfig::from_json(&clique_json()).unwrap();
        assert_eq!(cfg.n, Some(12));
        assert_eq!(cfg.field, CoefficientField::Gf2);
        assert_eq!(cfg.slln_final_cap, 0.15);
        let spec = cfg.model_spec(12, cfg.seed).unwrap();
        assert_eq!(spec.dim_cap, 5); // M(alpha) + 2
    }

    #[test]
    fn alpha_inf_token() {
        let cfg = ExperimentConfig::from_json(
            r#"{
                "n": 8,
                "alpha": {"entries": [0, 0.6, "inf"], "tail": "inf"},
                "distributions": {"2": {"type": "uniform", "b": 1.5}},
                "horizon": 1.0,
                "grid": [0.25],
                "replications": 10,
                "seed": 1
            }"#,
        )
        .unwrap();
        let alpha = cfg.alpha.build().unwrap();
        assert_eq!(alpha.alpha(3), f64::INFINITY);
        assert_eq!(alpha.q(), 2);
    }

    #[test]
    fn bad_alpha_token_rejected() {
        let err = ExperimentConfig::from_json(
            r#"{
                "n": 8,
                "alpha": {"entries": ["infinite"], "tail": "zero"},
                "horizon": 1.0,
                "grid": [0.25],
                "replications": 10,
                "seed": 1
            }"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown alpha entry"));
    }

    #[test]
    fn grid_validation() {
        let mut bad = clique_json().replace("[0.5, 1.0]", "[1.0, 0.5]");
        assert!(ExperimentConfig::from_json(&bad).is_err());
        bad = clique_json().replace("[0.5, 1.0]", "[0.5, 3.0]");
        assert!(ExperimentConfig::from_json(&bad).is_err());
    }

    #[test]
    fn n_and_grid_mutually_exclusive() {
        let both = clique_json().replace("\"n\": 12,", "\"n\": 12, \"n_grid\": [10, 20],");
        assert!(ExperimentConfig::from_json(&both).is_err());
    }

    #[test]
    fn regularity_override_needs_all_three() {
        let partial = clique_json().replace(
            r#"{"type": "exponential", "rate": 1.0}"#,
            r#"{"type": "exponential", "rate": 1.0, "gamma": 1.0}"#,
        );
        assert!(ExperimentConfig::from_json(&partial).is_err());
        let full = clique_json().replace(
            r#"{"type": "exponential", "rate": 1.0}"#,
            r#"{"type": "exponential", "rate": 1.0, "gamma": 1.0, "c": 1.0, "a": 0.5}"#,
        );
        let cfg = ExperimentConfig::from_json(&full).unwrap();
        let dist = cfg.distributions[&1].build().unwrap();
        assert_eq!(dist.regularity().unwrap().a, 0.5);
    }

    #[test]
    fn exact_mode_resolution() {
        let exact = clique_json().replace("\"seed\": 7", "\"seed\": 7, \"exact\": true");
        let cfg = ExperimentConfig::from_json(&exact).unwrap();
        assert_eq!(cfg.resolve_dim_cap(12, 3), 11);
    }

    #[test]
    fn tolerance_ladder() {
        assert_eq!(ExperimentConfig::covariance_rel_tolerance(12), 0.35);
        assert_eq!(ExperimentConfig::covariance_rel_tolerance(30), 0.25);
        assert_eq!(ExperimentConfig::covariance_rel_tolerance(60), 0.15);
        assert_eq!(ExperimentConfig::covariance_rel_tolerance(200), 0.15);
    }
}
