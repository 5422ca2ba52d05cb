use cherednik::dunkl::classical::{classical_op_check, ClassicalContext};
use cherednik::dunkl::{sigma_vanish_check, x_commutator_check, DunklContext};
use cherednik::exact::Scalar;
use cherednik::groups::build_real;
use cherednik::report::CheckReport;
use clap::{Args, ValueEnum};
use num_rational::BigRational;

use super::{pass_fail, Outcome};
use crate::args::{per_class, rational};
use crate::artifact::Artifact;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DunklCheck {
    Commutativity,
    Equivariance,
    Sl2,
    XCommutator,
    Sigma,
    Classical,
    ClassicalOp,
}

#[derive(Debug, Args)]
pub struct DunklArgs {
    /// Group label, e.g. A2, B2, I2(6), Zm:2.
    #[arg(long)]
    group: String,
    /// Checks run on all monomials up to this degree.
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Couplings as p/q, one per reflection class or one for all; symbolic
    /// parameters when omitted.
    #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
    c: Vec<BigRational>,
    /// Checks to run; all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<DunklCheck>,
}

pub fn run(a: &DunklArgs) -> Result<Outcome, CliError> {
    let g = build_real(&a.group)?;
    let ctx = if a.c.is_empty() {
        DunklContext::symbolic(&g)
    } else {
        let values: Vec<Scalar> = per_class(&a.c, g.num_classes(), "--c")?
            .into_iter()
            .map(Scalar::from_rational)
            .collect();
        DunklContext::numeric(&g, &values)
    };
    let checks = if a.checks.is_empty() {
        DunklCheck::value_variants().to_vec()
    } else {
        a.checks.clone()
    };
    let d = a.max_degree;
    let mut reports = Vec::new();
    for check in checks {
        let r = match check {
            DunklCheck::Commutativity => ctx.commutativity_check(d)?,
            DunklCheck::Equivariance => ctx.equivariance_check(d)?,
            DunklCheck::Sl2 => ctx.sl2_check(d)?,
            DunklCheck::XCommutator => x_commutator_check(&ctx, d)?,
            DunklCheck::Sigma => {
                let mut r = CheckReport::new("sigma_vanish", g.label(), None);
                let sum = sigma_vanish_check(&g);
                if !sum.is_zero() {
                    r.fail(sum.to_string());
                }
                r
            }
            DunklCheck::Classical => ClassicalContext::new(&ctx).commutativity_check(d),
            DunklCheck::ClassicalOp => classical_op_check(&ctx)?.report,
        };
        reports.push(r);
    }
    let passed = reports.iter().all(CheckReport::passed);
    let couplings = if a.c.is_empty() {
        "symbolic".to_string()
    } else {
        a.c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    };
    let mut summary = vec![format!("{} with c = {couplings}", g.label())];
    for r in &reports {
        let deg = r.max_degree.map(|d| format!(" (degree <= {d})")).unwrap_or_default();
        let witness = r.witness.as_deref().map(|w| format!(": {w}")).unwrap_or_default();
        summary.push(format!("  {}{deg}: {}{witness}", r.check, pass_fail(r.passed())));
    }
    let records = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("reports serialize"))
        .collect();
    Ok(Outcome {
        artifact: Artifact::json("dunkl-check", records),
        summary,
        passed,
    })
}
