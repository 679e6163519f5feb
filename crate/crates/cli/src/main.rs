//! Command-line interface: regime inspection, moment predictions,
//! trajectory simulation, verification suites, and snapshot homology.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use dyntopo::complex::ComplexSnapshot;
use dyntopo::experiments::{run_monte_carlo, run_suite, ExperimentConfig, SuiteKind};
use dyntopo::homology::{betti_numbers, CoefficientField};
use dyntopo::theory;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

/// Master-seed override; takes precedence over the config file.
const SEED_ENV: &str = "DYNTOPO_SEED";

#[derive(Parser)]
#[command(name = "dyntopo", version, about = "Dynamic multi-parameter simplicial complexes")]
struct Cli {
    /// Cap the worker thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the regime report (q, psi, tau, critical dimension, M).
    Regime { config: PathBuf },
    /// Print exact and asymptotic moment predictions with limit constants.
    Moments { config: PathBuf },
    /// Simulate replications and write the trajectory CSV.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite and write its JSON report.
    Verify {
        config: PathBuf,
        #[arg(long)]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the Betti profile of a snapshot JSON file.
    Homology {
        snapshot: PathBuf,
        #[arg(long, default_value = "gf2")]
        field: String,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("worker pool already initialized")?;
    }
    match cli.command {
        Command::Regime { config } => {
            let cfg = load_config(&config)?;
            let alpha = cfg.alpha.build()?;
            let regime = alpha.regime().map_err(|e| anyhow::anyhow!(e.to_string()))?;
            println!("{}", serde_json::to_string_pretty(&regime)?);
        }
        Command::Moments { config } => {
            let cfg = load_config(&config)?;
            let alpha = cfg.alpha.build()?;
            let regime = alpha.regime().map_err(|e| anyhow::anyhow!(e.to_string()))?;
            let n = cfg
                .n
                .or_else(|| cfg.n_grid.as_ref().and_then(|g| g.first().copied()))
                .context("config needs n or a nonempty n_grid")?;
            let predictions = theory::moment_predictions(n, &alpha, &regime);
            let law = theory::limit_constants(&regime).ok();
            let doc = serde_json::json!({
                "regime": regime,
                "predictions": predictions,
                "limit_law": law,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Command::Simulate { config, out } => {
            let cfg = load_config(&config)?;
            let mut file = fs::File::create(&out)
                .with_context(|| format!("cannot create {}", out.display()))?;
            let summary = run_monte_carlo(&cfg, Some(&mut file))?;
            file.flush()?;
            eprintln!(
                "wrote {} rows for {} replications to {}",
                summary.rows_written,
                summary.replications,
                out.display()
            );
        }
        Command::Verify { config, suite, out } => {
            let cfg = load_config(&config)?;
            let kind: SuiteKind = suite
                .parse()
                .or_else(|e: String| cfg.suite.ok_or(e))
                .map_err(|e| anyhow::anyhow!(e))?;
            let report = run_suite(&cfg, kind)?;
            let json = report.to_json();
            if let Some(path) = out {
                fs::write(&path, &json)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            print!("{}", report.render_text());
            if !report.passed {
                std::process::exit(1);
            }
        }
        Command::Homology { snapshot, field } => {
            let text = fs::read_to_string(&snapshot)
                .with_context(|| format!("cannot read {}", snapshot.display()))?;
            let snap = ComplexSnapshot::from_json(&text)
                .map_err(|e| anyhow::anyhow!(e.to_string()))?;
            let field = match field.as_str() {
                "gf2" => CoefficientField::Gf2,
                "rational" => CoefficientField::Rational,
                other => bail!("unknown field {other:?} (use gf2 or rational)"),
            };
            let profile = betti_numbers(&snap, field);
            println!("{}", serde_json::to_string_pretty(&profile)?);
        }
    }
    Ok(())
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if let Ok(seed) = std::env::var(SEED_ENV) {
        cfg.seed = seed
            .parse()
            .with_context(|| format!("{SEED_ENV} must be an unsigned integer"))?;
    }
    Ok(cfg)
}
