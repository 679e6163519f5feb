//! The dynamic multi-parameter complex: one timeline per potential face in
//! each random dimension, activation bottom-up, snapshots and face-count
//! paths.
//!
//! A set `A` of `i+1` vertices forms an `i`-face at time `t` exactly when
//! every subface process of every dimension up to `i` is on at `t`.
//! Dimensions with `p_i = 1` are deterministically on and dimensions with
//! `p_i = 0` are deterministically off; neither stores timelines. Candidate
//! faces in dimension `i` are generated only by extending present
//! `(i-1)`-faces, so snapshot cost tracks the realized complex rather than
//! `C(n, i+1)`.

use crate::params::{AlphaSequence, RegimeReport};
use crate::renewal::{LifetimeDistribution, OnOffTimeline, RenewalError};
use crate::rng::{face_stream_key, Stream};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;
use thiserror::Error;

pub const DEFAULT_FACE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("model needs {needed} timelines, over the face budget {budget}")]
    CapacityExceeded { needed: u64, budget: u64 },
    #[error("time {t} is beyond the model horizon {horizon}")]
    OutOfHorizon { t: f64, horizon: f64 },
    #[error("dimension cap {dim_cap} is below the first random dimension q = {q}")]
    DimCapBelowQ { dim_cap: usize, q: usize },
    #[error("no lifetime distribution configured for random dimension {0}")]
    MissingDistribution(usize),
    #[error("invalid face: {0}")]
    InvalidFace(String),
    #[error("invalid snapshot: {0}")]
    InvalidSnapshot(String),
    #[error(transparent)]
    Renewal(#[from] RenewalError),
}

/// A face: a strictly increasing tuple of vertex labels in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId {
    vertices: Vec<u32>,
}

impl FaceId {
    pub fn new(vertices: Vec<u32>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::InvalidFace("empty vertex set".into()));
        }
        if vertices.contains(&0) {
            return Err(ComplexError::InvalidFace("vertex labels are 1-based".into()));
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(ComplexError::InvalidFace(format!(
                "vertices must be strictly increasing, got {vertices:?}"
            )));
        }
        Ok(Self { vertices })
    }

    /// Builds a face from any distinct vertex collection, sorting first.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Self, ComplexError> {
        vertices.sort_unstable();
        vertices.dedup();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn max_vertex(&self) -> u32 {
        *self.vertices.last().unwrap()
    }

    pub fn contains(&self, other: &FaceId) -> bool {
        let mut it = self.vertices.iter();
        other.vertices.iter().all(|v| it.any(|w| w == v))
    }

    /// The codimension-1 subfaces, each omitting one vertex.
    pub fn subfaces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.vertices.len()).filter_map(move |skip| {
            if self.vertices.len() == 1 {
                return None;
            }
            let mut v = Vec::with_capacity(self.vertices.len() - 1);
            v.extend(self.vertices.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x));
            Some(FaceId { vertices: v })
        })
    }

    fn extend_with(&self, v: u32) -> FaceId {
        let mut vertices = self.vertices.clone();
        vertices.push(v);
        FaceId { vertices }
    }
}

impl std::fmt::Display for FaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.vertices.iter().join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DimensionKind {
    /// `p_i = 1`.
    DeterministicOn,
    /// `p_i = 0`.
    DeterministicOff,
    /// `0 < p_i < 1`: carries timelines.
    Random,
}

/// Inputs to [`DynamicComplexModel::build`].
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub n: u32,
    pub alpha: AlphaSequence,
    /// Lifetime distribution per random dimension.
    pub distributions: BTreeMap<usize, LifetimeDistribution>,
    pub horizon: f64,
    pub seed: u64,
    /// Highest simulated dimension; defaults to `M(alpha) + 2` via
    /// [`ModelSpec::default_dim_cap`].
    pub dim_cap: usize,
    pub face_budget: u64,
}

impl ModelSpec {
    pub fn default_dim_cap(regime: &RegimeReport) -> usize {
        regime.m_alpha + 2
    }
}

/// The sampled dynamic complex: immutable after construction, snapshots at
/// distinct times may be taken concurrently.
#[derive(Debug)]
pub struct DynamicComplexModel {
    n: u32,
    alpha: AlphaSequence,
    regime: RegimeReport,
    horizon: f64,
    seed: u64,
    dim_cap: usize,
    kinds: Vec<DimensionKind>,
    timelines: HashMap<FaceId, OnOffTimeline>,
    distributions: BTreeMap<usize, LifetimeDistribution>,
}

impl DynamicComplexModel {
    pub fn build(spec: ModelSpec) -> Result<Self, ComplexError> {
        assert!(spec.n >= 2, "need at least two vertices");
        assert!(spec.horizon > 0.0, "horizon must be positive");
        let regime = spec
            .alpha
            .regime()
            .map_err(|e| ComplexError::InvalidSnapshot(e.to_string()))?;
        let q = regime.q;
        if spec.dim_cap < q {
            return Err(ComplexError::DimCapBelowQ { dim_cap: spec.dim_cap, q });
        }

        let mut kinds = vec![DimensionKind::DeterministicOn]; // dimension 0
        for i in 1..=spec.dim_cap {
            let a = spec.alpha.alpha(i);
            kinds.push(if a == 0.0 {
                DimensionKind::DeterministicOn
            } else if a.is_infinite() {
                DimensionKind::DeterministicOff
            } else {
                DimensionKind::Random
            });
        }

        let mut needed: u64 = 0;
        for (i, kind) in kinds.iter().enumerate().skip(1) {
            if *kind == DimensionKind::Random {
                needed = needed.saturating_add(binomial_u64(spec.n as u64, i as u64 + 1));
            }
        }
        if needed > spec.face_budget {
            return Err(ComplexError::CapacityExceeded { needed, budget: spec.face_budget });
        }

        let mut timelines = HashMap::with_capacity(needed as usize);
        for i in 1..=spec.dim_cap {
            if kinds[i] != DimensionKind::Random {
                continue;
            }
            // A deterministically-off dimension below kills everything above
            // it; timelines there would never be consulted.
            if (1..i).any(|d| kinds[d] == DimensionKind::DeterministicOff) {
                continue;
            }
            let dist = spec
                .distributions
                .get(&i)
                .ok_or(ComplexError::MissingDistribution(i))?;
            let p = spec.alpha.face_probability(i, spec.n);
            for combo in (1..=spec.n).combinations(i + 1) {
                let face = FaceId { vertices: combo };
                let key = face_stream_key(spec.seed, i, face.vertices());
                let mut rng = Stream::seed_from(key);
                let tl = OnOffTimeline::sample(dist, p, spec.horizon, &mut rng)?;
                timelines.insert(face, tl);
            }
        }

        Ok(Self {
            n: spec.n,
            alpha: spec.alpha,
            regime,
            horizon: spec.horizon,
            seed: spec.seed,
            dim_cap: spec.dim_cap,
            kinds,
            timelines,
            distributions: spec.distributions,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> &AlphaSequence {
        &self.alpha
    }

    pub fn regime(&self) -> &RegimeReport {
        &self.regime
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn timeline(&self, face: &FaceId) -> Option<&OnOffTimeline> {
        self.timelines.get(face)
    }

    pub fn timeline_count(&self) -> usize {
        self.timelines.len()
    }

    /// The complex at time `t`, built one dimension at a time.
    pub fn snapshot_at(&self, t: f64) -> Result<ComplexSnapshot, ComplexError> {
        if !(0.0..=self.horizon).contains(&t) {
            return Err(ComplexError::OutOfHorizon { t, horizon: self.horizon });
        }
        let mut levels: Vec<Vec<FaceId>> = Vec::with_capacity(self.dim_cap + 1);
        levels.push((1..=self.n).map(|v| FaceId { vertices: vec![v] }).collect());

        let mut reached_cap_full = false;
        for i in 1..=self.dim_cap {
            match self.kinds[i] {
                DimensionKind::DeterministicOff => break,
                kind => {
                    let below: HashSet<&FaceId> = levels[i - 1].iter().collect();
                    let mut level = Vec::new();
                    for face in &levels[i - 1] {
                        for v in (face.max_vertex() + 1)..=self.n {
                            let candidate = face.extend_with(v);
                            // `face` itself is one of the subfaces; check the rest.
                            let closed = candidate
                                .subfaces()
                                .all(|sf| &sf == face || below.contains(&sf));
                            if !closed {
                                continue;
                            }
                            let on = match kind {
                                DimensionKind::DeterministicOn => true,
                                DimensionKind::Random => {
                                    self.timelines[&candidate].state_at(t)?
                                }
                                DimensionKind::DeterministicOff => unreachable!(),
                            };
                            if on {
                                level.push(candidate);
                            }
                        }
                    }
                    if level.is_empty() {
                        break;
                    }
                    level.sort_unstable();
                    levels.push(level);
                    if i == self.dim_cap {
                        reached_cap_full = true;
                    }
                }
            }
        }
        let truncated = reached_cap_full && self.dim_cap < (self.n as usize - 1);
        let snap = ComplexSnapshot { n: self.n, time: t, truncated, levels };
        debug_assert!(snap.validate().is_ok());
        Ok(snap)
    }

    /// Face counts and Euler characteristic along an increasing time grid.
    /// The count vector is zero-padded to `dim_cap + 1` entries.
    pub fn face_counts_path(&self, times: &[f64]) -> Result<FaceCountPath, ComplexError> {
        assert!(times.windows(2).all(|w| w[0] < w[1]), "times must be increasing");
        let width = self.dim_cap + 1;
        let mut counts = Vec::with_capacity(times.len());
        let mut chi = Vec::with_capacity(times.len());
        for &t in times {
            let snap = self.snapshot_at(t)?;
            let row: Vec<u64> =
                (0..width).map(|dim| snap.face_count(dim) as u64).collect();
            chi.push(snap.euler_characteristic_faces());
            counts.push(row);
        }
        Ok(FaceCountPath { times: times.to_vec(), counts, chi })
    }

    /// Sorted, deduplicated union of toggle times over all faces in the
    /// requested dimensions. The complex restricted to those dimensions is
    /// constant between consecutive returned times.
    pub fn event_times(&self, dims: &[usize]) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .timelines
            .iter()
            .filter(|(face, _)| dims.contains(&face.dimension()))
            .flat_map(|(_, tl)| tl.toggle_times())
            .collect();
        out.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }

    /// On-probability of the static coupling complex over a window `[0, w]`:
    /// `P(sup state = 1)` in `Sup` mode, `P(inf state = 1)` in `Inf` mode.
    ///
    /// Exponential lifetimes admit a closed form (the stationary renewal
    /// process is Poisson); anything else is estimated from `mc_timelines`
    /// freshly sampled timelines, since the coupling needs the probability
    /// itself rather than a bound.
    pub fn coupled_on_probability(
        &self,
        dim: usize,
        w: f64,
        mode: CouplingMode,
        rng: &mut Stream,
        mc_timelines: u32,
    ) -> Result<f64, ComplexError> {
        let p = self.alpha.face_probability(dim, self.n);
        match self.kinds.get(dim) {
            Some(DimensionKind::DeterministicOn) => return Ok(1.0),
            Some(DimensionKind::DeterministicOff) => return Ok(0.0),
            _ => {}
        }
        let dist = self
            .distributions
            .get(&dim)
            .ok_or(ComplexError::MissingDistribution(dim))?;
        if let Some(rate) = dist_exponential_rate(dist) {
            // N(w) ~ Poisson(rate * w); the window spans N(w) + 1 epochs.
            return Ok(match mode {
                CouplingMode::Sup => 1.0 - (1.0 - p) * (-rate * w * p).exp(),
                CouplingMode::Inf => p * (-rate * w * (1.0 - p)).exp(),
            });
        }
        let mut hit = 0u32;
        for _ in 0..mc_timelines {
            let tl = OnOffTimeline::sample(dist, p, w.max(1e-12), rng)?;
            let toggles = tl.toggle_times();
            let start = tl.state_at(0.0)?;
            let any_on = start || toggles.iter().any(|&s| s <= w);
            let all_on = start && toggles.iter().all(|&s| s > w);
            let ok = match mode {
                CouplingMode::Sup => any_on,
                CouplingMode::Inf => all_on,
            };
            if ok {
                hit += 1;
            }
        }
        Ok(hit as f64 / mc_timelines as f64)
    }

    /// Samples one static multi-parameter complex with the windowed
    /// probabilities `p^{(sup)}` or `p^{(inf)}` and returns its face counts,
    /// zero-padded to `dim_cap + 1` entries.
    pub fn coupled_static_counts(
        &self,
        w: f64,
        mode: CouplingMode,
        rng: &mut Stream,
    ) -> Result<Vec<u64>, ComplexError> {
        assert!(w <= self.horizon, "window must fit the horizon");
        let mut probs = vec![1.0f64];
        for i in 1..=self.dim_cap {
            probs.push(match self.kinds[i] {
                DimensionKind::DeterministicOn => 1.0,
                DimensionKind::DeterministicOff => 0.0,
                DimensionKind::Random => {
                    self.coupled_on_probability(i, w, mode, rng, 100_000)?
                }
            });
        }

        let mut counts = vec![0u64; self.dim_cap + 1];
        counts[0] = self.n as u64;
        let mut below: Vec<FaceId> = (1..=self.n).map(|v| FaceId { vertices: vec![v] }).collect();
        for i in 1..=self.dim_cap {
            if probs[i] == 0.0 {
                break;
            }
            let below_set: HashSet<&FaceId> = below.iter().collect();
            let mut level = Vec::new();
            for face in &below {
                for v in (face.max_vertex() + 1)..=self.n {
                    let candidate = face.extend_with(v);
                    let closed = candidate
                        .subfaces()
                        .all(|sf| &sf == face || below_set.contains(&sf));
                    if closed && (probs[i] >= 1.0 || rng.bernoulli(probs[i])) {
                        level.push(candidate);
                    }
                }
            }
            counts[i] = level.len() as u64;
            if level.is_empty() {
                break;
            }
            below = level;
        }
        Ok(counts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingMode {
    Sup,
    Inf,
}

/// The set of active faces per dimension at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSnapshot {
    n: u32,
    time: f64,
    truncated: bool,
    /// `levels[d]` lists the `d`-faces, sorted lexicographically.
    levels: Vec<Vec<FaceId>>,
}

impl ComplexSnapshot {
    /// Builds a snapshot from explicit per-dimension face lists, validating
    /// downward closure and the level-kill property.
    pub fn from_faces(
        n: u32,
        time: f64,
        mut levels: Vec<Vec<FaceId>>,
    ) -> Result<Self, ComplexError> {
        for level in &mut levels {
            level.sort_unstable();
            level.dedup();
        }
        while levels.last().is_some_and(|l| l.is_empty()) {
            levels.pop();
        }
        let snap = Self { n, time, truncated: false, levels };
        snap.validate()?;
        Ok(snap)
    }

    fn validate(&self) -> Result<(), ComplexError> {
        if self.levels.is_empty() || self.levels[0].is_empty() {
            return Err(ComplexError::InvalidSnapshot("no vertices".into()));
        }
        for (dim, level) in self.levels.iter().enumerate() {
            if level.is_empty() {
                return Err(ComplexError::InvalidSnapshot(format!(
                    "empty level {dim} below a nonempty one"
                )));
            }
            for face in level {
                if face.dimension() != dim {
                    return Err(ComplexError::InvalidSnapshot(format!(
                        "face {face} listed at dimension {dim}"
                    )));
                }
                if face.max_vertex() > self.n {
                    return Err(ComplexError::InvalidSnapshot(format!(
                        "face {face} outside vertex range 1..={}",
                        self.n
                    )));
                }
            }
            if dim > 0 {
                let below: HashSet<&FaceId> = self.levels[dim - 1].iter().collect();
                for face in level {
                    for sf in face.subfaces() {
                        if !below.contains(&sf) {
                            return Err(ComplexError::InvalidSnapshot(format!(
                                "face {face} present but subface {sf} missing"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Top dimension with any face.
    pub fn top_dimension(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn faces(&self, dim: usize) -> &[FaceId] {
        self.levels.get(dim).map_or(&[], |l| l.as_slice())
    }

    pub fn face_count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.len())
    }

    pub fn contains(&self, face: &FaceId) -> bool {
        self.levels
            .get(face.dimension())
            .is_some_and(|l| l.binary_search(face).is_ok())
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &FaceId> {
        self.levels.iter().flatten()
    }

    /// `chi = sum_j (-1)^j f_j`.
    pub fn euler_characteristic_faces(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(dim, level)| {
                let c = level.len() as i64;
                if dim % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// The subcomplex of faces with dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> ComplexSnapshot {
        ComplexSnapshot {
            n: self.n,
            time: self.time,
            truncated: false,
            levels: self.levels.iter().take(k + 1).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = SnapshotDoc {
            n: self.n,
            time: self.time,
            truncated: self.truncated,
            faces: self
                .levels
                .iter()
                .map(|l| l.iter().map(|f| f.vertices.clone()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("snapshot serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let doc: SnapshotDoc = serde_json::from_str(text)
            .map_err(|e| ComplexError::InvalidSnapshot(e.to_string()))?;
        let levels = doc
            .faces
            .into_iter()
            .map(|level| level.into_iter().map(FaceId::new).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut snap = Self::from_faces(doc.n, doc.time, levels)?;
        snap.truncated = doc.truncated;
        Ok(snap)
    }
}

#[derive(Serialize, Deserialize)]
struct SnapshotDoc {
    n: u32,
    time: f64,
    #[serde(default)]
    truncated: bool,
    faces: Vec<Vec<Vec<u32>>>,
}

/// Face counts over an evaluation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceCountPath {
    pub times: Vec<f64>,
    /// `counts[row][dim]`, one row per grid time.
    pub counts: Vec<Vec<u64>>,
    pub chi: Vec<i64>,
}

impl FaceCountPath {
    /// CSV with header `t,f_0,...,f_D,chi`, one row per grid time.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let width = self.counts.first().map_or(0, |row| row.len());
        write!(out, "t")?;
        for d in 0..width {
            write!(out, ",f_{d}")?;
        }
        writeln!(out, ",chi")?;
        for ((t, row), chi) in self.times.iter().zip(&self.counts).zip(&self.chi) {
            write!(out, "{t}")?;
            for c in row {
                write!(out, ",{c}")?;
            }
            writeln!(out, ",{chi}")?;
        }
        Ok(())
    }
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn dist_exponential_rate(dist: &LifetimeDistribution) -> Option<f64> {
    // The serialized form is the stable public surface; reuse it to avoid a
    // second enum.
    let v = serde_json::to_value(dist).ok()?;
    if v.get("type")?.as_str()? == "exponential" {
        v.get("rate")?.as_f64()
    } else {
        None
    }
}
