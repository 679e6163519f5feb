//! Suite reports: one record per checked quantity.

use serde::Serialize;
use std::time::Duration;

/// One verified quantity. `hard` checks decide the suite outcome;
/// informational records carry diagnostics without gating it.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    pub theoretical: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    /// Human-readable tolerance rule, e.g. "exact", "|z| <= 4",
    /// "rel <= 0.15", "holm p >= 0.01".
    pub rule: String,
    pub hard: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    /// Wall-clock runtime; excluded from serialization so report files stay
    /// byte-identical across reruns.
    #[serde(skip)]
    pub runtime: Duration,
}

impl StatReport {
    pub fn new(suite: &str) -> Self {
        StatReport {
            suite: suite.to_string(),
            passed: true,
            checks: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        if record.hard && !record.pass {
            self.passed = false;
        }
        self.checks.push(record);
    }

    /// Four-standard-error agreement between an estimate and an exact value.
    pub fn push_four_se(
        &mut self,
        name: impl Into<String>,
        estimate: f64,
        std_error: f64,
        theoretical: f64,
    ) {
        let (z_score, pass) = if std_error > 0.0 {
            let z = (estimate - theoretical) / std_error;
            (Some(z), z.abs() <= 4.0)
        } else {
            (None, estimate == theoretical)
        };
        self.push(CheckRecord {
            name: name.into(),
            estimate,
            std_error: Some(std_error),
            theoretical,
            z_score,
            p_value: None,
            rule: "|z| <= 4".into(),
            hard: true,
            pass,
        });
    }

    /// Relative-tolerance agreement for asymptotic formulas.
    pub fn push_relative(
        &mut self,
        name: impl Into<String>,
        estimate: f64,
        theoretical: f64,
        rel_tol: f64,
    ) {
        let pass = theoretical != 0.0 && (estimate / theoretical - 1.0).abs() <= rel_tol;
        self.push(CheckRecord {
            name: name.into(),
            estimate,
            std_error: None,
            theoretical,
            z_score: None,
            p_value: None,
            rule: format!("rel <= {rel_tol}"),
            hard: true,
            pass,
        });
    }

    /// Absolute-difference agreement.
    pub fn push_absolute(
        &mut self,
        name: impl Into<String>,
        estimate: f64,
        theoretical: f64,
        abs_tol: f64,
        hard: bool,
    ) {
        self.push(CheckRecord {
            name: name.into(),
            estimate,
            std_error: None,
            theoretical,
            z_score: None,
            p_value: None,
            rule: format!("abs <= {abs_tol}"),
            hard,
            pass: (estimate - theoretical).abs() <= abs_tol,
        });
    }

    /// Exact integer identity, recorded as a violation count.
    pub fn push_exact(&mut self, name: impl Into<String>, violations: u64) {
        self.push(CheckRecord {
            name: name.into(),
            estimate: violations as f64,
            std_error: None,
            theoretical: 0.0,
            z_score: None,
            p_value: None,
            rule: "exact".into(),
            hard: true,
            pass: violations == 0,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check plus a suite verdict, for terminal output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let flag = if c.pass { "pass" } else { "FAIL" };
            let kind = if c.hard { "" } else { " (info)" };
            out.push_str(&format!(
                "  [{flag}]{kind} {}: estimate {:.6}, target {:.6} ({})\n",
                c.name, c.estimate, c.theoretical, c.rule
            ));
        }
        out.push_str(&format!(
            "suite {}: {} ({} checks, {:.2}s)\n",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.runtime.as_secs_f64()
        ));
        out
    }
}
