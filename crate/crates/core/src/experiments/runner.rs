//! Replication runner: deterministic seeds, wave-parallel execution,
//! order-preserving streaming.
//!
//! Replications are processed in fixed-size waves. Within a wave the work is
//! parallel; the wave's results come back in replication order, so streamed
//! output is byte-identical no matter the thread count, and at most one wave
//! of trajectories is ever held in memory.

use crate::complex::{DynamicComplexModel, FaceCountPath};
use crate::rng::replication_seed;
use rayon::prelude::*;
use std::io::Write;

use super::{ExperimentConfig, ExperimentError};

/// Runs `f` for replications `0..reps`, each on its own deterministically
/// seeded model, returning results in replication order.
pub fn run_replications<T, F>(
    cfg: &ExperimentConfig,
    n: u32,
    reps: u32,
    f: F,
) -> Result<Vec<T>, ExperimentError>
where
    T: Send,
    F: Fn(u32, &DynamicComplexModel) -> Result<T, ExperimentError> + Sync,
{
    let wave = wave_size();
    let mut out = Vec::with_capacity(reps as usize);
    for start in (0..reps).step_by(wave) {
        let end = (start + wave as u32).min(reps);
        let chunk: Result<Vec<T>, ExperimentError> = (start..end)
            .into_par_iter()
            .map(|rep| {
                let spec = cfg.model_spec(n, replication_seed(cfg.seed, rep as u64))?;
                let model = DynamicComplexModel::build(spec)?;
                f(rep, &model)
            })
            .collect();
        out.extend(chunk?);
    }
    Ok(out)
}

fn wave_size() -> usize {
    (rayon::current_num_threads() * 4).max(4)
}

/// Aggregates of a trajectory run.
#[derive(Debug, Clone)]
pub struct MonteCarloSummary {
    pub replications: u32,
    pub times: Vec<f64>,
    /// Mean face count per `[time][dimension]`.
    pub mean_counts: Vec<Vec<f64>>,
    pub mean_chi: Vec<f64>,
    /// Largest number of trajectories buffered at once; bounded by the wave
    /// size, not by the replication count.
    pub max_buffered: usize,
    pub rows_written: u64,
}

/// Runs the configured replications, streaming trajectory CSV rows to `out`
/// as each wave completes. With one replication the stream is exactly
/// `t,f_0,...,f_D,chi`; more replications prepend a `rep` column. A run that
/// fails midway leaves a `# FAILED` marker at the end of the stream.
pub fn run_monte_carlo(
    cfg: &ExperimentConfig,
    mut out: Option<&mut dyn Write>,
) -> Result<MonteCarloSummary, ExperimentError> {
    let n = cfg.single_n()?;
    let reps = cfg.replications;
    let times = cfg.grid.clone();
    let width = {
        let spec = cfg.model_spec(n, cfg.seed)?;
        spec.dim_cap + 1
    };

    if let Some(w) = out.as_deref_mut() {
        let mut header = String::new();
        if reps > 1 {
            header.push_str("rep,");
        }
        header.push('t');
        for d in 0..width {
            header.push_str(&format!(",f_{d}"));
        }
        header.push_str(",chi\n");
        w.write_all(header.as_bytes())?;
    }

    let mut sum_counts = vec![vec![0.0f64; width]; times.len()];
    let mut sum_chi = vec![0.0f64; times.len()];
    let mut rows_written = 0u64;
    let mut max_buffered = 0usize;

    let wave = wave_size();
    for start in (0..reps).step_by(wave) {
        let end = (start + wave as u32).min(reps);
        let chunk: Result<Vec<(u32, FaceCountPath)>, ExperimentError> = (start..end)
            .into_par_iter()
            .map(|rep| {
                let spec = cfg.model_spec(n, replication_seed(cfg.seed, rep as u64))?;
                let model = DynamicComplexModel::build(spec)?;
                let path = model.face_counts_path(&times)?;
                Ok((rep, path))
            })
            .collect();
        let chunk = match chunk {
            Ok(c) => c,
            Err(e) => {
                if let Some(w) = out.as_deref_mut() {
                    writeln!(w, "# FAILED: {e}")?;
                }
                return Err(e);
            }
        };
        max_buffered = max_buffered.max(chunk.len());
        for (rep, path) in &chunk {
            for (row, (counts, chi)) in path.counts.iter().zip(&path.chi).enumerate() {
                for (d, &c) in counts.iter().enumerate() {
                    sum_counts[row][d] += c as f64;
                }
                sum_chi[row] += *chi as f64;
                if let Some(w) = out.as_deref_mut() {
                    let mut line = String::new();
                    if reps > 1 {
                        line.push_str(&format!("{rep},"));
                    }
                    line.push_str(&format!("{}", times[row]));
                    for &c in counts {
                        line.push_str(&format!(",{c}"));
                    }
                    line.push_str(&format!(",{}\n", path.chi[row]));
                    w.write_all(line.as_bytes())?;
                    rows_written += 1;
                }
            }
        }
    }

    let r = reps as f64;
    Ok(MonteCarloSummary {
        replications: reps,
        times,
        mean_counts: sum_counts
            .into_iter()
            .map(|row| row.into_iter().map(|s| s / r).collect())
            .collect(),
        mean_chi: sum_chi.into_iter().map(|s| s / r).collect(),
        max_buffered,
        rows_written,
    })
}
