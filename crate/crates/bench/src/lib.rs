//! Shared fixtures for the criterion benchmarks.

use dyntopo::complex::{DynamicComplexModel, ModelSpec, DEFAULT_FACE_BUDGET};
use dyntopo::{AlphaSequence, LifetimeDistribution};
use std::collections::BTreeMap;

/// A clique-regime model at the given size, exact dimension cap.
pub fn clique_model(n: u32, seed: u64) -> DynamicComplexModel {
    let mut distributions = BTreeMap::new();
    distributions.insert(1, LifetimeDistribution::exponential(1.0).unwrap());
    DynamicComplexModel::build(ModelSpec {
        n,
        alpha: AlphaSequence::clique(0.9).unwrap(),
        distributions,
        horizon: 2.0,
        seed,
        dim_cap: (n - 1) as usize,
        face_budget: DEFAULT_FACE_BUDGET,
    })
    .unwrap()
}

/// A Linial-Meshulam model (full 1-skeleton, random triangles).
pub fn lm_model(n: u32, seed: u64) -> DynamicComplexModel {
    let mut distributions = BTreeMap::new();
    distributions.insert(2, LifetimeDistribution::exponential(1.0).unwrap());
    DynamicComplexModel::build(ModelSpec {
        n,
        alpha: AlphaSequence::linial_meshulam(2, 0.6).unwrap(),
        distributions,
        horizon: 2.0,
        seed,
        dim_cap: (n - 1) as usize,
        face_budget: DEFAULT_FACE_BUDGET,
    })
    .unwrap()
}
