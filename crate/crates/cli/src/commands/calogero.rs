use cherednik::calogero::{
    coordinate_poisson_check, flow_invariance_check, necklace_random_words_check, sample_real_chart, trajectories_ode,
    trajectories_spectral, CmConfig, CoordChart, Trajectory,
};
use cherednik::Error;
use clap::Args;
use serde_json::json;

use super::{pass_fail, Outcome};
use crate::artifact::Artifact;
use crate::error::CliError;

/// Spectral and integrated positions must agree to this.
const DEVIATION_TOL: f64 = 1e-6;
/// Relative energy drift allowed along the integrated trajectory.
const DRIFT_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Args)]
pub struct CmSimArgs {
    /// Number of particles; inferred from --x when given.
    #[arg(long)]
    n: Option<usize>,
    /// Initial positions; sampled from --seed when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "p")]
    x: Vec<f64>,
    /// Initial momenta.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "x")]
    p: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    t1: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Seed for sampled initial data.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CmCheckArgs {
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Random word pairs for the necklace bracket.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    /// Coordinate brackets {a_m, b_k} for m, k up to this.
    #[arg(long, default_value_t = 3)]
    max_index: usize,
    #[arg(long)]
    seed: u64,
}

fn initial_chart(a: &CmSimArgs) -> Result<CoordChart, CliError> {
    if !a.x.is_empty() {
        if a.x.len() != a.p.len() || a.n.is_some_and(|n| n != a.x.len()) {
            return Err(CliError::Config("--x and --p need n values each".into()));
        }
        return Ok(CoordChart::real(&a.x, &a.p)?);
    }
    match (a.n, a.seed) {
        (Some(n), Some(seed)) if n >= 1 => Ok(sample_real_chart(n, seed)?),
        _ => Err(CliError::Config("give --x and --p, or --n and --seed to sample them".into())),
    }
}

fn max_deviation(a: &Trajectory, b: &Trajectory, upto: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..upto {
        for (u, v) in a.x[k].iter().zip(&b.x[k]) {
            worst = worst.max((u - v).norm());
        }
    }
    worst
}

pub fn run_sim(a: &CmSimArgs) -> Result<Outcome, CliError> {
    if a.steps == 0 || a.t1.partial_cmp(&a.t0) != Some(std::cmp::Ordering::Greater) {
        return Err(CliError::Config("need --steps >= 1 and --t1 > --t0".into()));
    }
    let chart = initial_chart(a)?;
    let cfg = CmConfig::default();
    // the initial data sit at t0; the solvers start at 0
    let rel: Vec<f64> = (0..=a.steps).map(|k| (a.t1 - a.t0) * k as f64 / a.steps as f64).collect();
    let mut spectral = trajectories_spectral(&chart, &rel, &cfg)?;
    spectral.times = rel.iter().map(|t| t + a.t0).collect();

    let mut summary = vec![format!("n = {}, t in [{}, {}], {} steps", chart.n(), a.t0, a.t1, a.steps)];
    let (ode, stopped) = match trajectories_ode(&chart, &rel, &cfg) {
        Ok(o) => (o, None),
        Err(Error::StepFailure { t }) => {
            // compare on the grid before the integrator stopped
            let prefix: Vec<f64> = rel.iter().copied().filter(|&s| s < t).collect();
            (trajectories_ode(&chart, &prefix, &cfg)?, Some(t + a.t0))
        }
        Err(e) => return Err(e.into()),
    };
    let compared = ode.times.len();
    let deviation = max_deviation(&spectral, &ode, compared);
    let drift = ode.energy_drift();
    let passed = deviation <= DEVIATION_TOL && drift <= DRIFT_TOL;
    if let Some(t) = stopped {
        summary.push(format!(
            "direct integration stopped at t = {t:.6}: particles collide; the spectral solution continues through complex positions"
        ));
    }
    let last = spectral.times[compared - 1];
    summary.push(format!("spectral vs ODE max deviation {deviation:.3e} on [{}, {last}] ({compared} grid points)", a.t0));
    summary.push(format!("ODE energy drift {drift:.3e}"));
    if !spectral.collisions.is_empty() {
        let ts: Vec<String> = spectral.collisions.iter().map(|&k| spectral.times[k].to_string()).collect();
        summary.push(format!("collisions flagged at t = {}", ts.join(", ")));
    }
    summary.push(format!(
        "deviation <= {DEVIATION_TOL:e} and drift <= {DRIFT_TOL:e}: {}",
        pass_fail(passed)
    ));
    Ok(Outcome {
        artifact: Artifact::csv("cm-sim", spectral.csv_header(), spectral.csv_records()),
        summary,
        passed,
    })
}

pub fn run_check(a: &CmCheckArgs) -> Result<Outcome, CliError> {
    if a.n == 0 || a.max_len == 0 {
        return Err(CliError::Config("--n and --max-len must be positive".into()));
    }
    let flows = flow_invariance_check(a.n, 20, a.seed)?;
    let necklace = necklace_random_words_check(a.n, a.samples, a.max_len, a.seed);
    let poisson = coordinate_poisson_check(a.n, a.max_index);
    let passed = flows.passed(RESIDUAL_TOL) && necklace.passed && poisson.passed();
    let record = json!({
        "n": a.n,
        "seed": a.seed,
        "flows": flows,
        "necklace": necklace,
        "poisson": poisson,
        "status": if passed { "pass" } else { "fail" },
    });
    let summary = vec![
        format!(
            "flows and conjugation: max rank-one residual {:.2e}, Tr Y^j constant {}: {}",
            flows.max_rank_one_residual,
            flows.hamiltonians_constant,
            pass_fail(flows.passed(RESIDUAL_TOL))
        ),
        format!(
            "necklace bracket on {} word pairs: max relative error {:.2e}: {}",
            necklace.samples,
            necklace.max_rel_error,
            pass_fail(necklace.passed)
        ),
        format!(
            "coordinate brackets, {} exact identities: {}",
            poisson.checked,
            pass_fail(poisson.passed())
        ),
    ];
    Ok(Outcome {
        artifact: Artifact::json("cm-check", vec![record]),
        summary,
        passed,
    })
}
