use cherednik::groups::build_real;
use cherednik::groups::degrees::degrees;
use cherednik::mehta::{mm_mc_estimate, mm_rhs};
use clap::Args;
use serde_json::json;

use super::Outcome;
use crate::args::sweep;
use crate::artifact::Artifact;
use crate::error::CliError;

/// Pass threshold on `|z|`.
const Z_MAX: f64 = 3.0;

#[derive(Debug, Args)]
pub struct MmArgs {
    #[arg(long)]
    group: String,
    /// k >= 0.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// Several values of k, computed concurrently.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "k")]
    sweep: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long)]
    seed: u64,
}

pub fn run(a: &MmArgs) -> Result<Outcome, CliError> {
    let ks = match (a.k, a.sweep.is_empty()) {
        (Some(k), _) => vec![k],
        (None, false) => a.sweep.clone(),
        (None, true) => return Err(CliError::Config("give --k or --sweep".into())),
    };
    if a.samples < 2 {
        return Err(CliError::Config("--samples must be at least 2".into()));
    }
    let g = build_real(&a.group)?;
    let d = degrees(&g)?;
    let rows = sweep(&ks, |&k| {
        let e = mm_mc_estimate(&g, k, a.samples, a.seed)?;
        let rhs = mm_rhs(&d, k);
        Ok((k, rhs, e.mean, e.std_error, e.z_score(rhs)))
    })?;
    let passed = rows.iter().all(|r| r.4.abs() <= Z_MAX);
    let records = rows
        .iter()
        .map(|&(k, rhs, mean, se, z)| json!({"group": g.label(), "k": k, "rhs": rhs, "mc_mean": mean, "mc_stderr": se, "z": z}))
        .collect();
    let summary = rows
        .iter()
        .map(|&(k, rhs, mean, se, z)| {
            format!("{} k = {k}: Gamma product {rhs}, Monte Carlo {mean} +- {se} (z = {z:.3})", g.label())
        })
        .collect();
    Ok(Outcome {
        artifact: Artifact::json("mm", records),
        summary,
        passed,
    })
}
