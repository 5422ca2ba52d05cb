use cherednik::dunkl::DunklContext;
use cherednik::exact::{MPoly, Scalar};
use cherednik::groups::build_real;
use cherednik::verma::{
    contravariant_gram, power_condition, rank1_spectrum, singular_vectors, typea_expected_hilbert, typea_quotient,
    typea_singular_vectors, typea_support_membership, verma_report,
};
use clap::{Args, Subcommand};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use super::{pass_fail, Outcome};
use crate::args::{per_class, rational};
use crate::artifact::Artifact;
use crate::error::CliError;

#[derive(Debug, Subcommand)]
pub enum VermaMode {
    /// Contravariant form on one degree of M_c(triv).
    Gram(GradedArgs),
    /// Singular vectors in one degree.
    Singular(GradedArgs),
    /// Rank one, W = Z/m: the numbers b_n and the dimension of L_c.
    Rank1(Rank1Args),
    /// Type A at c = r/n: the singular vectors f_i and the quotient.
    TypeA(TypeAArgs),
}

#[derive(Debug, Args)]
pub struct GradedArgs {
    #[arg(long)]
    group: String,
    /// Couplings as p/q, one per reflection class or one for all.
    #[arg(long, required = true, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
    c: Vec<BigRational>,
    #[arg(long)]
    degree: u32,
}

#[derive(Debug, Args)]
pub struct Rank1Args {
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Equal coupling as p/q.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: BigRational,
    /// Largest degree computed.
    #[arg(long, default_value_t = 20)]
    n_max: u32,
}

#[derive(Debug, Args)]
pub struct TypeAArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Degree cap for the quotient computation.
    #[arg(long, default_value_t = 20)]
    cap: u32,
    /// Also test a point of C^n (rationals) for membership in the support.
    #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
    point: Vec<BigRational>,
}

pub fn run(mode: &VermaMode) -> Result<Outcome, CliError> {
    match mode {
        VermaMode::Gram(a) => gram(a),
        VermaMode::Singular(a) => singular(a),
        VermaMode::Rank1(a) => rank1(a),
        VermaMode::TypeA(a) => type_a(a),
    }
}

fn c_label(c: &[BigRational]) -> String {
    c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn numeric_values(a: &GradedArgs, classes: usize) -> Result<Vec<Scalar>, CliError> {
    Ok(per_class(&a.c, classes, "--c")?.into_iter().map(Scalar::from_rational).collect())
}

/// Every Dunkl operator kills `f`.
fn is_singular(ctx: &DunklContext, f: &MPoly) -> Result<bool, CliError> {
    for i in 0..ctx.dim() {
        if !ctx.apply_basis(i, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gram(a: &GradedArgs) -> Result<Outcome, CliError> {
    let g = build_real(&a.group)?;
    let ctx = DunklContext::numeric(&g, &numeric_values(a, g.num_classes())?);
    let gram = contravariant_gram(&ctx, a.degree)?;
    let report = verma_report(&ctx, &c_label(&a.c), a.degree)?;
    let dim = gram.piece.dim();
    // singular vectors lie in the radical of the form
    let passed = gram.is_symmetric() && report.singular_dim <= dim - report.gram_rank;
    let matrix: Vec<Vec<String>> = gram
        .substitute(&[])
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let mut record = serde_json::to_value(&report).expect("report serializes");
    record["dim"] = json!(dim);
    record["gram"] = json!(matrix);
    let summary = vec![
        format!("{} c = {} degree {}: dim {dim}, Gram rank {}", report.group, report.c, a.degree, report.gram_rank),
        format!("singular vectors: {}", report.singular_dim),
        format!("symmetric form, singular vectors in radical: {}", pass_fail(passed)),
    ];
    Ok(Outcome {
        artifact: Artifact::json("verma", vec![record]),
        summary,
        passed,
    })
}

fn singular(a: &GradedArgs) -> Result<Outcome, CliError> {
    let g = build_real(&a.group)?;
    let ctx = DunklContext::numeric(&g, &numeric_values(a, g.num_classes())?);
    let vs = singular_vectors(&ctx, a.degree)?;
    let mut passed = true;
    for v in &vs {
        passed &= is_singular(&ctx, v)?;
    }
    let texts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    let record = json!({
        "group": g.label(),
        "tau": "trivial",
        "c": c_label(&a.c),
        "degree": a.degree,
        "singular_dim": vs.len(),
        "singular_vectors": texts,
    });
    let mut summary = vec![format!("{} c = {} degree {}: {} singular vectors", g.label(), c_label(&a.c), a.degree, vs.len())];
    summary.extend(texts.iter().map(|t| format!("  {t}")));
    summary.push(format!("killed by every Dunkl operator: {}", pass_fail(passed)));
    Ok(Outcome {
        artifact: Artifact::json("verma", vec![record]),
        summary,
        passed,
    })
}

fn rank1(a: &Rank1Args) -> Result<Outcome, CliError> {
    if a.m < 2 {
        return Err(CliError::Config("--m must be at least 2".into()));
    }
    let spec = rank1_spectrum(a.m, &a.c, a.n_max);
    let passed = spec.r.is_none_or(|r| spec.a[r as usize].is_zero());
    let strs = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let record = json!({
        "m": a.m,
        "c": a.c.to_string(),
        "b": strs(&spec.b),
        "a": strs(&spec.a),
        "r": spec.r,
        "dim": spec.r,
    });
    let dim = match spec.r {
        Some(r) => format!("L_c has dimension {r}"),
        None => format!("no r <= {} with b_r = r: L_c is infinite-dimensional up to this degree", a.n_max),
    };
    Ok(Outcome {
        artifact: Artifact::json("verma", vec![record]),
        summary: vec![format!("Z/{} c = {}: {dim}", a.m, a.c), format!("form vanishes at degree r: {}", pass_fail(passed))],
        passed,
    })
}

fn type_a(a: &TypeAArgs) -> Result<Outcome, CliError> {
    if a.n < 2 {
        return Err(CliError::Config("--n must be at least 2".into()));
    }
    let fs = typea_singular_vectors(a.n, a.r)?;
    let g = build_real(&format!("A{}", a.n - 1))?;
    let ctx = DunklContext::numeric(&g, &[Scalar::from_ratio(a.r as i64, a.n as i64)]);
    let mut singular_ok = true;
    for f in &fs {
        singular_ok &= is_singular(&ctx, f)?;
    }
    let sum_zero = fs.iter().fold(MPoly::zero_in(a.n), |acc, f| &acc + f).is_zero();
    let q = typea_quotient(a.n, a.r, a.cap)?;
    let expected = typea_expected_hilbert(a.n, a.r);
    let dim_ok = q.dim == a.r.pow(a.n as u32 - 1);
    let mut passed = singular_ok && sum_zero && dim_ok && q.palindromic() && q.matches_expected();
    let mut record = json!({
        "n": a.n,
        "r": a.r,
        "c": format!("{}/{}", a.r, a.n),
        "singular_vectors": fs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "singular_ok": singular_ok,
        "sum_zero": sum_zero,
        "hilbert": q.hilbert,
        "expected_hilbert": expected,
        "dim": q.dim,
        "palindromic": q.palindromic(),
    });
    let mut summary = vec![
        format!("type A, n = {}, r = {}: quotient dimension {} (expected {})", a.n, a.r, q.dim, a.r.pow(a.n as u32 - 1)),
        format!("Hilbert series {:?}", q.hilbert),
        format!("f_i singular: {}, sum f_i = 0: {}", pass_fail(singular_ok), pass_fail(sum_zero)),
        format!("palindromic and matches (1-t^r)^(n-1)/(1-t)^(n-1): {}", pass_fail(q.palindromic() && q.matches_expected())),
    ];
    if !a.point.is_empty() {
        if a.point.len() != a.n {
            return Err(CliError::Config(format!("--point needs {} coordinates", a.n)));
        }
        let member = typea_support_membership(a.n, a.r, &a.point)?;
        let power = power_condition(a.n, a.r, &a.point);
        passed &= member == power;
        record["point"] = json!(c_label(&a.point));
        record["in_support"] = json!(member);
        record["power_condition"] = json!(power);
        summary.push(format!("point in support: {member}, power criterion: {power}"));
    }
    Ok(Outcome {
        artifact: Artifact::json("verma", vec![record]),
        summary,
        passed,
    })
}
