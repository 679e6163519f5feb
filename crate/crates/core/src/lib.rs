//! Dynamic multi-parameter random simplicial complexes.
//!
//! The library simulates a complex on `n` vertices in which every potential
//! face of dimension `i` carries an independent stationary on/off renewal
//! process, with on-probability `p_i = n^{-alpha_i}`. It computes exact
//! topological invariants (reduced Betti numbers, Euler characteristic) of
//! snapshots, evaluates the closed-form moment predictions and limiting
//! Gaussian structure of the face-count processes, and ships a Monte Carlo
//! harness that verifies the predictions statistically.
//!
//! Modules:
//! - [`params`]: the exponent vector `alpha` and the combinatorics derived
//!   from it (`psi`, `tau`, critical dimension, regime report).
//! - [`renewal`]: interarrival distributions, equilibrium delays, and the
//!   sampled on/off timelines.
//! - [`complex`]: the dynamic complex itself, snapshots and face-count paths.
//! - [`homology`]: boundary matrices, Betti numbers over GF(2) and the
//!   rationals, strongly connected decompositions, links, spectral gaps.
//! - [`theory`]: exact and asymptotic moments, SLLN/FCLT constants, and the
//!   limiting Gaussian process sampler.
//! - [`experiments`]: configuration, replication runner, statistical tests
//!   and the verification suites behind the CLI.

pub mod complex;
pub mod experiments;
pub mod homology;
pub mod params;
pub mod renewal;
pub mod rng;
pub mod stats;
pub mod theory;

pub use complex::{ComplexSnapshot, DynamicComplexModel, FaceCountPath, FaceId};

pub use params::{AlphaSequence, RegimeReport, Tail};
pub use renewal::{LifetimeDistribution, OnOffTimeline, Regularity};

