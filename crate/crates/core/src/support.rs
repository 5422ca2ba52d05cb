//! Supports of `L_c(C)` from degree divisibility counts.
//!
//! A point with stabilizer `W_a` lies in the support iff `P_W / P_{W_a}` does
//! not vanish at `e^{2 pi i c}`, which happens iff the denominator `m` of `c`
//! divides as many degrees of `W` as of `W_a`. Signed `c` is accepted and
//! only its denominator is used.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::scalar::denominator;
use crate::groups::degrees::{degrees, degrees_of_label, maximal_parabolics};
use crate::groups::{build_real, degree_table, standard_parabolic};

/// `#{i : m | d_i}`.
pub fn divisible_degree_count(degrees: &[usize], m: u64) -> usize {
    assert!(m >= 1, "m must be positive");
    degrees.iter().filter(|&&d| (d as u64).is_multiple_of(m)).count()
}

fn support_denominator(c: &BigRational) -> u64 {
    denominator(c)
}

pub fn stratum_in_support(w_degrees: &[usize], wa_degrees: &[usize], c: &BigRational) -> bool {
    let m = support_denominator(c);
    if m == 1 {
        return true;
    }
    divisible_degree_count(w_degrees, m) == divisible_degree_count(wa_degrees, m)
}

/// `L_c(C)` is finite-dimensional iff every maximal parabolic has strictly
/// fewer degrees divisible by the denominator of `c`.
pub fn finite_dim_criterion(label: &str, c: &BigRational) -> Result<bool> {
    let m = support_denominator(c);
    if m == 1 {
        return Ok(false);
    }
    let w = degrees_of_label(label)?;
    let count = divisible_degree_count(&w, m);
    Ok(maximal_parabolics(label)?
        .iter()
        .all(|(_, d)| count > divisible_degree_count(d, m)))
}

/// Denominators `m >= 2` for which `L_{1/m}(C)` of `label` is finite-dimensional.
pub fn finite_dim_denominators(label: &str) -> Result<BTreeSet<u64>> {
    let w = degrees_of_label(label)?;
    let top = *w.iter().max().unwrap_or(&1) as u64;
    let mut out = BTreeSet::new();
    for m in 2..=top {
        if finite_dim_criterion(label, &BigRational::new(1.into(), m.into()))? {
            out.insert(m);
        }
    }
    Ok(out)
}

pub fn e7_table() -> BTreeSet<u64> {
    finite_dim_denominators("E7").expect("E7 table is shipped")
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumEntry {
    pub label: String,
    pub degrees: Vec<usize>,
    pub div_count: usize,
    pub in_support: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub group: String,
    pub c: String,
    pub m: u64,
    pub entries: Vec<StratumEntry>,
    pub strata_in_support: Vec<String>,
    pub finite_dim: bool,
}

/// `group,c,m,stratum,deg_count_W,deg_count_Wa,in_support`.
#[derive(Clone, Debug, Serialize)]
pub struct SupportRow {
    pub group: String,
    pub c: String,
    pub m: u64,
    pub stratum: String,
    pub deg_count_w: usize,
    pub deg_count_wa: usize,
    pub in_support: bool,
}

impl SupportReport {
    pub fn rows(&self) -> Vec<SupportRow> {
        let count_w = self.entries.first().map_or(0, |e| e.div_count);
        self.entries
            .iter()
            .map(|e| SupportRow {
                group: self.group.clone(),
                c: self.c.clone(),
                m: self.m,
                stratum: e.label.clone(),
                deg_count_w: count_w,
                deg_count_wa: e.div_count,
                in_support: e.in_support,
            })
            .collect()
    }
}

/// Parabolic classes `(label, degrees)`, starting with `W` itself and ending
/// with the trivial group. Classical types enumerate every standard parabolic
/// (one entry per distinct degree list); tabulated types use the maximal ones.
pub fn parabolic_strata(label: &str) -> Result<Vec<(String, Vec<usize>)>> {
    let w = degrees_of_label(label)?;
    let mut out = vec![(label.to_string(), w)];
    if label.starts_with("Zm:") || degree_table().degrees(label).is_some() {
        out.extend(maximal_parabolics(label)?);
    } else {
        let g = build_real(label)?;
        let rank = g.rank();
        let mut seen = BTreeSet::new();
        seen.insert(sorted(&out[0].1));
        for mask in (1..(1u32 << rank) - 1).rev() {
            let nodes: Vec<usize> = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
            let p = standard_parabolic(&g, &nodes)?;
            let d = degrees(&p)?;
            if seen.insert(sorted(&d)) {
                out.push((p.label().to_string(), d));
            }
        }
    }
    if out.last().is_none_or(|(_, d)| !d.is_empty()) {
        out.push(("1".to_string(), Vec::new()));
    }
    Ok(out)
}

fn sorted(d: &[usize]) -> Vec<usize> {
    let mut d = d.to_vec();
    d.sort_unstable();
    d
}

pub fn support_report(label: &str, c: &BigRational) -> Result<SupportReport> {
    let m = support_denominator(c);
    let strata = parabolic_strata(label)?;
    let w = strata[0].1.clone();
    let entries: Vec<StratumEntry> = strata
        .into_iter()
        .map(|(l, d)| StratumEntry {
            div_count: divisible_degree_count(&d, m),
            in_support: stratum_in_support(&w, &d, c),
            label: l,
            degrees: d,
        })
        .collect();
    let strata_in_support = entries.iter().filter(|e| e.in_support).map(|e| e.label.clone()).collect();
    let finite_dim = finite_dim_criterion(label, c)?;
    if finite_dim && entries.iter().skip(1).any(|e| e.in_support) {
        return Err(Error::Config(format!("{label}: support data inconsistent at c = {c}")));
    }
    Ok(SupportReport {
        group: label.to_string(),
        c: c.to_string(),
        m,
        entries,
        strata_in_support,
        finite_dim,
    })
}
