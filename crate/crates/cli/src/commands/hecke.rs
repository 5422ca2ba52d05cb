use std::collections::BTreeMap;

use cherednik::exact::Scalar;
use cherednik::groups::{build_real, GroupSpec, ReflectionGroup};
use cherednik::hecke::rewrite::DEFAULT_MOVE_CAP;
use cherednik::hecke::{
    classical_specialization_check, cyclic_monodromy, hecke_dim_check, monodromy_eigencheck, KzConfig, RewriteSystem,
};
use clap::{Args, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{pass_fail, Outcome};
use crate::args::{rational, sweep};
use crate::artifact::Artifact;
use crate::error::CliError;

#[derive(Debug, Subcommand)]
pub enum HeckeMode {
    /// H_q(S_n) in the regular representation: dimension, relations, associativity.
    Dim(DimArgs),
    /// Normal form of a word in A(W), or in H_q(W) with --hecke.
    Rewrite(RewriteArgs),
    /// All products w(x) w(y) specialize to the group algebra.
    Classical(ClassicalArgs),
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long)]
    n: usize,
    /// Exact q as p/q.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    q: BigRational,
    /// Random basis triples for associativity when n >= 4.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Needed when n >= 4.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RewriteArgs {
    #[arg(long)]
    group: String,
    /// Generators, 1-based, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    word: Vec<usize>,
    /// Use the quadratic relation (T - 1)(T + q) = 0 instead of the deformed braid moves.
    #[arg(long)]
    hecke: bool,
    /// Give up after this many rewriting moves.
    #[arg(long, default_value_t = DEFAULT_MOVE_CAP)]
    move_cap: usize,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    #[arg(long)]
    group: String,
}

#[derive(Debug, Args)]
pub struct KzArgs {
    #[arg(long)]
    group: String,
    /// Couplings, one per reflection class or one for all.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    c: Vec<f64>,
    /// Simple reflection whose braid generator is reported (1-based).
    #[arg(long, default_value_t = 1)]
    class: usize,
    /// Several equal couplings, computed concurrently.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "c")]
    sweep: Vec<f64>,
    /// Pass threshold on eigenvalue error and relation residuals.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Integrator relative tolerance.
    #[arg(long)]
    rtol: Option<f64>,
}

pub fn run(mode: &HeckeMode) -> Result<Outcome, CliError> {
    match mode {
        HeckeMode::Dim(a) => dim(a),
        HeckeMode::Rewrite(a) => rewrite(a),
        HeckeMode::Classical(a) => classical(a),
    }
}

fn dim(a: &DimArgs) -> Result<Outcome, CliError> {
    let seed = match (a.seed, a.n >= 4) {
        (Some(s), _) => s,
        (None, false) => 0,
        (None, true) => return Err(CliError::Config("--seed is required for n >= 4".into())),
    };
    let report = hecke_dim_check(a.n, &Scalar::from_rational(a.q.clone()), a.samples, seed)?;
    let passed = report.passed();
    let triples = if report.associativity_exhaustive { "all" } else { "sampled" };
    let summary = vec![
        format!("H_q(S_{}) at q = {}: dimension {} (expected {})", a.n, report.q, report.dim, report.expected_dim),
        format!(
            "quadratic relations: {}, braid relations: {}",
            pass_fail(report.quadratic_ok),
            pass_fail(report.braid_ok)
        ),
        format!(
            "associativity on {} {triples} triples: {}",
            report.associativity_triples,
            pass_fail(report.associativity_ok)
        ),
        format!("overall: {}", pass_fail(passed)),
    ];
    Ok(Outcome {
        artifact: Artifact::json("hecke", vec![serde_json::to_value(&report).expect("report serializes")]),
        summary,
        passed,
    })
}

fn word_text(g: &ReflectionGroup, w: usize) -> String {
    let letters: Vec<String> = g.word(w).iter().map(|i| (i + 1).to_string()).collect();
    format!("T[{}]", letters.join(" "))
}

/// Which parameter each printed symbol stands for.
fn legend(sys: &RewriteSystem, hecke: bool) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    if hecke {
        out.insert("c1".to_string(), "q".to_string());
        return out;
    }
    let rank = sys.group().rank();
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            for r in 1..=sys.coxeter(i, j) {
                if let Some(p) = sys.parameter(i, j, r) {
                    out.entry(p.to_string())
                        .or_insert_with(|| format!("e_{r}(t_{}{})", i + 1, j + 1));
                }
            }
        }
    }
    out
}

fn rewrite(a: &RewriteArgs) -> Result<Outcome, CliError> {
    let g = build_real(&a.group)?;
    if let Some(&bad) = a.word.iter().find(|&&i| i == 0 || i > g.rank()) {
        return Err(CliError::Config(format!("generator {bad} out of range 1..={}", g.rank())));
    }
    let word: Vec<usize> = a.word.iter().map(|i| i - 1).collect();
    let mut sys = if a.hecke {
        RewriteSystem::hecke(g.clone())
    } else {
        RewriteSystem::deformed(g.clone())
    };
    sys.move_cap = a.move_cap;
    let nf = sys.rewrite(&word)?;
    let terms: Vec<Value> = nf
        .terms
        .iter()
        .map(|(&w, c)| json!({"word": g.word(w).iter().map(|i| i + 1).collect::<Vec<_>>(), "coeff": c.to_string()}))
        .collect();
    // at the classical values only the group product survives, with coefficient 1
    let product = g.from_word(&word);
    let special = nf.substitute(&sys.classical_values());
    let passed = special.len() == 1 && special.get(&product).is_some_and(Scalar::is_one);
    let legend = legend(&sys, a.hecke);
    let record = json!({
        "group": g.label(),
        "algebra": if a.hecke { "hecke" } else { "deformed" },
        "word": a.word,
        "terms": terms,
        "moves": nf.moves,
        "legend": legend,
        "classical_ok": passed,
    });
    let body: Vec<String> = nf.terms.iter().map(|(&w, c)| format!("({c}) {}", word_text(&g, w))).collect();
    let input: Vec<String> = a.word.iter().map(ToString::to_string).collect();
    let mut summary = vec![format!("T[{}] = {}", input.join(" "), body.join(" + "))];
    summary.extend(legend.iter().map(|(k, v)| format!("  {k} = {v}")));
    summary.push(format!("{} moves", nf.moves));
    summary.push(format!("classical specialization is the group product: {}", pass_fail(passed)));
    Ok(Outcome {
        artifact: Artifact::json("hecke", vec![record]),
        summary,
        passed,
    })
}

fn classical(a: &ClassicalArgs) -> Result<Outcome, CliError> {
    let g = build_real(&a.group)?;
    let report = classical_specialization_check(&g)?;
    let passed = report.passed();
    let summary = vec![
        format!(
            "{} (order {}): {} products rewritten, {} failures, at most {} moves",
            report.group, report.order, report.pairs, report.failures, report.max_moves
        ),
        format!("classical specialization: {}", pass_fail(passed)),
    ];
    Ok(Outcome {
        artifact: Artifact::json("hecke", vec![serde_json::to_value(&report).expect("report serializes")]),
        summary,
        passed,
    })
}

pub fn run_kz(a: &KzArgs) -> Result<Outcome, CliError> {
    let points: Vec<Vec<f64>> = if !a.sweep.is_empty() {
        a.sweep.iter().map(|&c| vec![c]).collect()
    } else if !a.c.is_empty() {
        vec![a.c.clone()]
    } else {
        return Err(CliError::Config("give --c or --sweep".into()));
    };
    if a.class == 0 {
        return Err(CliError::Config("--class is 1-based".into()));
    }
    let mut cfg = KzConfig::default();
    if let Some(r) = a.rtol {
        cfg.rtol = r;
    }
    if let Ok(GroupSpec::Cyclic(m)) = a.group.parse::<GroupSpec>() {
        if m >= 3 {
            return kz_cyclic(a, m, &points, &cfg);
        }
    }
    let g = build_real(&a.group)?;
    let reports = sweep(&points, |c| Ok(monodromy_eigencheck(&g, c, a.class - 1, &cfg)?))?;
    let passed = reports.iter().all(|r| r.passed(a.tol));
    let mut summary = Vec::new();
    for r in &reports {
        let eig: Vec<String> = r
            .eigenvalues
            .iter()
            .map(|e| format!("{:.6}{:+.6}i (x{})", e.re, e.im, e.mult))
            .collect();
        summary.push(format!("{} c = {:?}, T_{}: eigenvalues {}", r.group, r.c, r.class, eig.join(", ")));
        summary.push(format!(
            "  eigenvalue error {:.2e}, (T-1)(T+q) {:.2e}, braid {:.2e}, multiplicities {}: {}",
            r.eigenvalue_error,
            r.relation_residual,
            r.braid_residual,
            r.multiplicities_ok,
            pass_fail(r.passed(a.tol))
        ));
    }
    let records = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("report serializes"))
        .collect();
    Ok(Outcome {
        artifact: Artifact::json("kz", records),
        summary,
        passed,
    })
}

/// Z/m for m >= 3 is not a real group: one generator, m distinct eigenvalues.
fn kz_cyclic(a: &KzArgs, m: usize, points: &[Vec<f64>], cfg: &KzConfig) -> Result<Outcome, CliError> {
    if a.class != 1 {
        return Err(CliError::Config(format!("Zm:{m} has a single generator")));
    }
    if let Some(c) = points.iter().find(|c| c.len() != 1 && c.len() != m - 1) {
        return Err(CliError::Config(format!("Zm:{m} takes 1 or {} couplings, got {}", m - 1, c.len())));
    }
    let reports = sweep(points, |c| Ok(cyclic_monodromy(m, c, cfg)?))?;
    let passed = reports.iter().all(|r| r.passed(a.tol));
    let mut summary = Vec::new();
    for r in &reports {
        let eig: Vec<String> = r
            .eigenvalues
            .iter()
            .map(|e| format!("{:.6}{:+.6}i (x{})", e.re, e.im, e.mult))
            .collect();
        summary.push(format!("{} c = {:?}, T: eigenvalues {}", r.group, r.c, eig.join(", ")));
        summary.push(format!(
            "  eigenvalue error {:.2e}, prod (T - q_j) {:.2e}: {}",
            r.eigenvalue_error,
            r.relation_residual,
            pass_fail(r.passed(a.tol))
        ));
    }
    let records = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("report serializes"))
        .collect();
    Ok(Outcome {
        artifact: Artifact::json("kz", records),
        summary,
        passed,
    })
}
