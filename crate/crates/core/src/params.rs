//! The exponent vector `alpha` and the deterministic combinatorics derived
//! from it.
//!
//! All face probabilities are coupled to the vertex count through
//! `p_i = n^{-alpha_i}`, where each `alpha_i` lives on the extended
//! nonnegative half-line `[0, inf]`. A finite prefix of entries plus a
//! repeated tail value (0 or infinity) represents the whole infinite
//! sequence. Everything downstream -- which dimensions are random, which
//! dimension dominates, how fast expected face counts decay -- is a function
//! of the exponents:
//!
//! - `psi_j = sum_i C(j, i) alpha_i`,
//! - `tau_j = j + 1 - sum_i C(j+1, i+1) alpha_i`,
//! - the critical dimension `k` is the unique `j` with `psi_j < 1 < psi_{j+1}`,
//! - `M = min {i : tau_i < 0}` bounds the dimensions that matter in mean.
//!
//! Infinity absorbs addition and positive scaling, and comparisons stay
//! total because no operation here can produce a NaN: zero-weight terms are
//! skipped rather than multiplied.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the dimension scans for the critical dimension and `M`.
/// Exponent vectors whose crossings lie beyond this are far outside desk
/// scale and are rejected instead of searched for.
const MAX_SCAN_DIMENSION: usize = 512;

#[derive(Debug, Error, PartialEq)]
pub enum AlphaError {
    #[error("alpha entries must be nonnegative (entry {index} is {value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("alpha entries must not be NaN (entry {index})")]
    NanEntry { index: usize },
    #[error("every alpha entry is zero: q is undefined and the complex is the full simplex")]
    AllZero,
}

#[derive(Debug, Error, PartialEq)]
pub enum RegimeError {
    #[error("psi_{j} = 1 exactly: the parameter sits on a regime boundary")]
    BoundaryDegeneracy { j: usize },
    #[error("no dimension with tau < 0 (or no psi crossing) found below {0}; exponents too small for desk scale")]
    ScanExhausted(usize),
    #[error("evaluation horizon J = {0} is below the minimum of 2")]
    HorizonTooSmall(usize),
}

/// Tail value repeated beyond the explicit entries of an [`AlphaSequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    Zero,
    #[serde(alias = "infinity")]
    Inf,
}

/// The exponent vector `alpha = (alpha_1, alpha_2, ...)`.
///
/// Entries are indexed by dimension starting at 1; `alpha(i)` for `i` beyond
/// the explicit prefix returns the tail value. At least one entry (explicit
/// or tail) must be strictly positive, so that `q = min {i : alpha_i > 0}`
/// is defined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSequence {
    entries: Vec<f64>,
    tail: Tail,
}

impl AlphaSequence {
    pub fn new(entries: Vec<f64>, tail: Tail) -> Result<Self, AlphaError> {
        for (idx, &a) in entries.iter().enumerate() {
            if a.is_nan() {
                return Err(AlphaError::NanEntry { index: idx + 1 });
            }
            if a < 0.0 {
                return Err(AlphaError::NegativeEntry { index: idx + 1, value: a });
            }
        }
        if entries.iter().all(|&a| a == 0.0) && tail == Tail::Zero {
            return Err(AlphaError::AllZero);
        }
        Ok(Self { entries, tail })
    }

    /// Clique-style exponents: `(alpha_1, 0, 0, ...)`.
    pub fn clique(alpha_1: f64) -> Result<Self, AlphaError> {
        Self::new(vec![alpha_1], Tail::Zero)
    }

    /// Linial-Meshulam-style exponents: full skeleton below `k`, exponent
    /// `alpha_k` in dimension `k`, nothing above.
    pub fn linial_meshulam(k: usize, alpha_k: f64) -> Result<Self, AlphaError> {
        assert!(k >= 1, "dimension must be at least 1");
        let mut entries = vec![0.0; k];
        entries[k - 1] = alpha_k;
        Self::new(entries, Tail::Inf)
    }

    /// Number of explicit entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `alpha_i` for a 1-based dimension index.
    pub fn alpha(&self, i: usize) -> f64 {
        assert!(i >= 1, "dimensions are 1-based");
        match self.entries.get(i - 1) {
            Some(&a) => a,
            None => match self.tail {
                Tail::Zero => 0.0,
                Tail::Inf => f64::INFINITY,
            },
        }
    }

    /// `q = min {i >= 1 : alpha_i > 0}`: the lowest random dimension.
    pub fn q(&self) -> usize {
        for (idx, &a) in self.entries.iter().enumerate() {
            if a > 0.0 {
                return idx + 1;
            }
        }
        // Construction guarantees the tail is infinite here.
        self.entries.len() + 1
    }

    /// `psi_j = sum_{i=1}^{j} C(j, i) alpha_i`. Infinite as soon as an
    /// infinite entry has positive binomial weight.
    pub fn psi(&self, j: usize) -> f64 {
        assert!(j >= 1, "psi is defined for j >= 1");
        let mut total = 0.0;
        for i in 1..=j {
            let a = self.alpha(i);
            if a == 0.0 {
                continue;
            }
            if a.is_infinite() {
                return f64::INFINITY;
            }
            total += binomial(j, i) * a;
        }
        total
    }

    /// `tau_j = j + 1 - sum_{i=1}^{j} C(j+1, i+1) alpha_i`, with `tau_0 = 1`.
    /// Negative infinity as soon as an infinite entry contributes.
    pub fn tau(&self, j: usize) -> f64 {
        let mut total = (j + 1) as f64;
        for i in 1..=j {
            let a = self.alpha(i);
            if a == 0.0 {
                continue;
            }
            if a.is_infinite() {
                return f64::NEG_INFINITY;
            }
            total -= binomial(j + 1, i + 1) * a;
        }
        total
    }

    /// `p_i = n^{-alpha_i}`: exactly 1 when the exponent is 0, exactly 0
    /// when it is infinite.
    pub fn face_probability(&self, i: usize, n: u32) -> f64 {
        assert!(n >= 2, "need at least two vertices");
        let a = self.alpha(i);
        if a == 0.0 {
            1.0
        } else if a.is_infinite() {
            0.0
        } else {
            (n as f64).powf(-a)
        }
    }

    /// `M = min {i : tau_i < 0}`.
    pub fn m_alpha(&self) -> Result<usize, RegimeError> {
        for j in 0..=MAX_SCAN_DIMENSION {
            if self.tau(j) < 0.0 {
                return Ok(j);
            }
        }
        Err(RegimeError::ScanExhausted(MAX_SCAN_DIMENSION))
    }

    /// Regime detection at the default horizon
    /// `J = max(M + 2, number of explicit entries)`.
    pub fn regime(&self) -> Result<RegimeReport, RegimeError> {
        let horizon = (self.m_alpha()? + 2).max(self.len()).max(2);
        self.detect_regime(horizon)
    }

    /// Materializes `psi`, `tau` and the regime data up to dimension `J`.
    ///
    /// The critical dimension is the unique `j` with `psi_j < 1 < psi_{j+1}`;
    /// it is only reported when `j >= q`. A `psi_j` exactly equal to 1 for
    /// some `j <= J` is a knife edge the theory excludes and is rejected.
    pub fn detect_regime(&self, j_horizon: usize) -> Result<RegimeReport, RegimeError> {
        if j_horizon < 2 {
            return Err(RegimeError::HorizonTooSmall(j_horizon));
        }
        let q = self.q();
        let m_alpha = self.m_alpha()?;

        let psi: Vec<f64> = (1..=j_horizon).map(|j| self.psi(j)).collect();
        let tau: Vec<f64> = (0..=j_horizon).map(|j| self.tau(j)).collect();
        for (idx, &p) in psi.iter().enumerate() {
            if p == 1.0 {
                return Err(RegimeError::BoundaryDegeneracy { j: idx + 1 });
            }
        }

        // The psi crossing: last j with psi_j < 1, provided psi_{j+1} > 1.
        // psi is non-decreasing and eventually exceeds 1 (alpha_q > 0), so a
        // bounded scan suffices.
        let crossing = {
            let mut found = None;
            for j in 1..=MAX_SCAN_DIMENSION {
                let p = self.psi(j);
                if p == 1.0 {
                    return Err(RegimeError::BoundaryDegeneracy { j });
                }
                if p > 1.0 {
                    found = Some(j - 1);
                    break;
                }
            }
            found.ok_or(RegimeError::ScanExhausted(MAX_SCAN_DIMENSION))?
        };
        // crossing = 0 means psi_1 > 1 already (the D_0 regime): no critical
        // dimension. A crossing below q also falls outside the basic
        // assumption.
        let critical_k = if crossing >= q.max(1) { Some(crossing) } else { None };
        let basic_assumption_holds = critical_k.is_some();

        let m1_alpha = match critical_k {
            Some(k) => {
                let tau_q = self.tau(q);
                let mut m1 = None;
                for i in (k + 1)..=m_alpha {
                    if self.tau(i) < tau_q {
                        m1 = Some(i);
                        break;
                    }
                }
                debug_assert!(m1.is_some(), "tau_M < 0 < tau_q guarantees a witness");
                m1
            }
            None => None,
        };

        let sharp_drop_holds = match critical_k {
            // tau_{k+1} = -inf satisfies the strict inequality automatically.
            Some(k) => self.tau(k) - self.tau(q) / 2.0 > self.tau(k + 1),
            None => false,
        };

        let report = RegimeReport {
            q,
            horizon: j_horizon,
            psi,
            tau,
            critical_k,
            m_alpha,
            m1_alpha,
            basic_assumption_holds,
            sharp_drop_holds,
        };
        report.debug_validate(self);
        Ok(report)
    }
}

/// Derived regime data for one exponent vector.
///
/// `psi[j-1]` holds `psi_j` for `1 <= j <= horizon` and `tau[j]` holds
/// `tau_j` for `0 <= j <= horizon`.
#[derive(Debug, Clone, Serialize)]
pub struct RegimeReport {
    pub q: usize,
    pub horizon: usize,
    #[serde(serialize_with = "ser_extended_vec")]
    pub psi: Vec<f64>,
    #[serde(serialize_with = "ser_extended_vec")]
    pub tau: Vec<f64>,
    pub critical_k: Option<usize>,
    pub m_alpha: usize,
    pub m1_alpha: Option<usize>,
    pub basic_assumption_holds: bool,
    pub sharp_drop_holds: bool,
}

impl RegimeReport {
    pub fn psi_at(&self, j: usize) -> f64 {
        assert!(j >= 1 && j <= self.horizon);
        self.psi[j - 1]
    }

    pub fn tau_at(&self, j: usize) -> f64 {
        assert!(j <= self.horizon);
        self.tau[j]
    }

    /// Critical dimension, or an error when the basic assumption fails.
    pub fn require_critical_k(&self) -> Result<usize, RegimeError> {
        self.critical_k.ok_or(RegimeError::ScanExhausted(0)).map_err(|_| {
            // A missing k is not a scan problem; report it as a boundary of
            // the assumption instead. Callers needing a distinct error wrap
            // this in their own type.
            RegimeError::BoundaryDegeneracy { j: 0 }
        })
    }

    fn debug_validate(&self, alpha: &AlphaSequence) {
        // tau_j = j + 1 and psi_j = 0 below q.
        for j in 1..self.q.min(self.horizon + 1) {
            debug_assert_eq!(self.psi_at(j), 0.0);
            debug_assert_eq!(self.tau_at(j), (j + 1) as f64);
        }
        if let Some(k) = self.critical_k {
            // Strict unimodality around the critical dimension.
            let top = self.horizon.min(alpha.m_alpha().unwrap_or(self.horizon));
            for j in self.q..=k.min(self.horizon - 1) {
                debug_assert!(self.psi_at(j) < 1.0);
            }
            if k < self.horizon {
                debug_assert!(self.psi_at(k + 1) > 1.0);
            }
            for j in self.q..k.min(top) {
                debug_assert!(self.tau_at(j) < self.tau_at(j + 1));
            }
            if k < self.horizon {
                debug_assert!(self.tau_at(k) > self.tau_at(k + 1));
            }
        }
    }
}

/// Binomial coefficient as a float; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * ((n - i) as f64) / ((i + 1) as f64);
    }
    acc.round()
}

fn ser_extended_vec<S: serde::Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &x in v {
        if x == f64::INFINITY {
            seq.serialize_element("inf")?;
        } else if x == f64::NEG_INFINITY {
            seq.serialize_element("-inf")?;
        } else {
            seq.serialize_element(&x)?;
        }
    }
    seq.end()
}
