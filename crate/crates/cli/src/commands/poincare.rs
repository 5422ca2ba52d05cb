use cherednik::exact::IntPoly;
use cherednik::groups::degrees::{degrees, poincare_polynomial};
use cherednik::groups::{build_real, degree_table};
use clap::Args;
use num_bigint::BigInt;
use serde_json::json;

use super::{pass_fail, Outcome};
use crate::artifact::Artifact;
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct PoincareArgs {
    /// A buildable group (A3, B2, D4, I2(6), Zm:5) or a tabulated one (E7, H4).
    #[arg(long)]
    group: String,
}

fn q_product(d: &[usize]) -> IntPoly {
    d.iter().fold(IntPoly::one(), |acc, &di| &acc * &IntPoly::q_integer(di))
}

pub fn run(a: &PoincareArgs) -> Result<Outcome, CliError> {
    let table = degree_table().degrees(&a.group).map(<[usize]>::to_vec);
    let (source, order, degs, poly, mut passed) = match build_real(&a.group) {
        Ok(g) => {
            // sum over elements of t^length, then its q-integer factorization
            let p = poincare_polynomial(&g);
            let d = degrees(&g)?;
            let ok = q_product(&d) == p && d.iter().product::<usize>() == g.order();
            ("enumerated", g.order(), d, p, ok)
        }
        Err(_) => match &table {
            Some(d) => ("table", d.iter().product(), d.clone(), q_product(d), true),
            None => return Err(CliError::Config(format!("unknown group {:?}", a.group))),
        },
    };
    let mut summary = Vec::new();
    if let (Some(t), "enumerated") = (&table, source) {
        let mut a_sorted = degs.clone();
        let mut b_sorted = t.clone();
        a_sorted.sort_unstable();
        b_sorted.sort_unstable();
        let agree = a_sorted == b_sorted;
        passed &= agree;
        summary.push(format!("degrees agree with the shipped table: {}", pass_fail(agree)));
    }
    let coeffs: Vec<String> = poly.coeffs().iter().map(BigInt::to_string).collect();
    let record = json!({
        "group": a.group,
        "source": source,
        "order": order,
        "degrees": degs,
        "poincare": coeffs,
        "polynomial": poly.to_string_in("t"),
    });
    summary.insert(0, format!("{} ({source}): |W| = {order}, degrees {degs:?}", a.group));
    summary.insert(1, format!("P(t) = {}", poly.to_string_in("t")));
    summary.push(format!("P(t) = prod [d_i]_t and prod d_i = |W|: {}", pass_fail(passed)));
    Ok(Outcome {
        artifact: Artifact::json("poincare", vec![record]),
        summary,
        passed,
    })
}
