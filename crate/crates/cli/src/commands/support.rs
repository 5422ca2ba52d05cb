use std::collections::BTreeSet;

use cherednik::groups::degrees::degrees_of_label;
use cherednik::support::{support_report, SupportReport};
use clap::Args;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::Outcome;
use crate::args::{rational, sweep};
use crate::artifact::Artifact;
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct SupportArgs {
    /// Group label; tabulated exceptional types (E6..E8, F4, H3, H4, G2) included.
    #[arg(long)]
    group: String,
    /// Coupling as p/q.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: Option<BigRational>,
    /// Every c = 1/m, m from 2 to the largest degree.
    #[arg(long, conflicts_with_all = ["c", "sweep"])]
    table: bool,
    /// Several couplings, computed concurrently.
    #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true, conflicts_with = "c")]
    sweep: Vec<BigRational>,
}

const HEADER: [&str; 8] = ["group", "c", "m", "stratum", "deg_count_W", "deg_count_Wa", "in_support", "finite_dim"];

/// Known finite-dimensionality denominators to assert against.
fn known_denominators(label: &str) -> Option<BTreeSet<u64>> {
    if label == "E7" {
        return Some(BTreeSet::from([2, 6, 14, 18]));
    }
    // S_n: exactly denominator n
    let n: u64 = label.strip_prefix('A')?.parse().ok()?;
    Some(BTreeSet::from([n + 1]))
}

pub fn run(a: &SupportArgs) -> Result<Outcome, CliError> {
    let cs: Vec<BigRational> = if a.table {
        let top = degrees_of_label(&a.group)?.into_iter().max().unwrap_or(1) as i64;
        (2..=top).map(|m| BigRational::new(BigInt::from(1), BigInt::from(m))).collect()
    } else if let Some(c) = &a.c {
        vec![c.clone()]
    } else if !a.sweep.is_empty() {
        a.sweep.clone()
    } else {
        return Err(CliError::Config("give --c, --sweep or --table".into()));
    };
    let reports: Vec<SupportReport> = sweep(&cs, |c| Ok(support_report(&a.group, c)?))?;

    let mut rows = Vec::new();
    for r in &reports {
        for row in r.rows() {
            rows.push(vec![
                row.group,
                row.c,
                row.m.to_string(),
                row.stratum,
                row.deg_count_w.to_string(),
                row.deg_count_wa.to_string(),
                row.in_support.to_string(),
                r.finite_dim.to_string(),
            ]);
        }
    }
    let finite: BTreeSet<u64> = reports.iter().filter(|r| r.finite_dim).map(|r| r.m).collect();
    let mut summary = Vec::new();
    let mut passed = true;
    if a.table {
        let list: Vec<String> = finite.iter().map(ToString::to_string).collect();
        summary.push(format!("{}: L_(1/m)(triv) finite-dimensional for m in {{{}}}", a.group, list.join(", ")));
        if let Some(known) = known_denominators(&a.group) {
            passed = finite == known;
            summary.push(format!("agrees with the known denominators: {}", super::pass_fail(passed)));
        }
    } else {
        for r in &reports {
            summary.push(format!(
                "{} c = {} (m = {}): finite-dimensional {}, strata in support: {}",
                r.group,
                r.c,
                r.m,
                r.finite_dim,
                r.strata_in_support.join(" ")
            ));
        }
    }
    Ok(Outcome {
        artifact: Artifact::csv("support", HEADER.iter().map(ToString::to_string).collect(), rows),
        summary,
        passed,
    })
}
