//! Poincare polynomials, degrees, and the shipped table for groups that are
//! not enumerated.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;

use super::{build_real, standard_parabolic, ReflectionGroup};
use crate::error::{Error, Result};
use crate::exact::IntPoly;

const TABLE_SOURCE: &str = include_str!("../../data/degrees.txt");

/// Degrees of exceptional groups and of their maximal parabolic subgroups.
#[derive(Clone, Debug, Default)]
pub struct DegreeTable {
    groups: BTreeMap<String, Vec<usize>>,
    parabolics: BTreeMap<String, Vec<(String, Vec<usize>)>>,
}

impl DegreeTable {
    pub fn parse(src: &str) -> Result<Self> {
        let mut t = DegreeTable::default();
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Config(format!("degree table line {}: {raw:?}", lineno + 1));
            let (key, list) = line.split_once(':').ok_or_else(bad)?;
            let degrees = list
                .split(',')
                .map(|d| d.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            match key.split_once('>') {
                Some((g, p)) => t
                    .parabolics
                    .entry(g.trim().to_string())
                    .or_default()
                    .push((p.trim().to_string(), degrees)),
                None => {
                    let mut d = degrees;
                    d.sort_unstable();
                    t.groups.insert(key.trim().to_string(), d);
                }
            }
        }
        for (g, ps) in &t.parabolics {
            let rank = t.groups.get(g).ok_or_else(|| Error::MissingDegrees(g.clone()))?.len();
            if ps.iter().any(|(_, d)| d.len() != rank - 1) {
                return Err(Error::Config(format!("parabolic of {g} with wrong rank")));
            }
        }
        Ok(t)
    }

    pub fn degrees(&self, label: &str) -> Option<&[usize]> {
        self.groups.get(label).map(|v| v.as_slice())
    }

    pub fn maximal_parabolics(&self, label: &str) -> Option<&[(String, Vec<usize>)]> {
        self.parabolics.get(label).map(|v| v.as_slice())
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.groups.keys().map(|s| s.as_str())
    }
}

/// The shipped degree table.
pub fn degree_table() -> &'static DegreeTable {
    static TABLE: OnceLock<DegreeTable> = OnceLock::new();
    TABLE.get_or_init(|| DegreeTable::parse(TABLE_SOURCE).expect("shipped degree table parses"))
}

/// `sum_w q^{l(w)}` from the length census.
pub fn poincare_polynomial(g: &ReflectionGroup) -> IntPoly {
    let max = (0..g.order()).map(|w| g.length(w)).max().unwrap_or(0);
    let mut c = vec![0i64; max + 1];
    for w in 0..g.order() {
        c[g.length(w)] += 1;
    }
    IntPoly::from_i64(&c)
}

/// Split a product of q-integers into its factors `[d]_q`.
///
/// The largest `d` with `[d]_q` dividing the product is always a factor,
/// since the cyclotomic factor of `[d]_q` of order `d` must come from a
/// factor `[e]_q` with `d | e`. Peeling the largest factor first is
/// therefore safe, where smallest-first is not (`[2]` divides `[4]`).
pub fn factor_q_integers(p: &IntPoly) -> Option<Vec<usize>> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    loop {
        let deg = rest.degree()?;
        if deg == 0 {
            return (rest.coeffs()[0] == BigInt::from(1)).then(|| {
                out.sort_unstable();
                out
            });
        }
        let mut found = false;
        for d in (2..=deg + 1).rev() {
            if let Some(q) = rest.div_exact(&IntPoly::q_integer(d)) {
                rest = q;
                out.push(d);
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
}

/// Degrees of a built group, from its Poincare polynomial.
pub fn degrees(g: &ReflectionGroup) -> Result<Vec<usize>> {
    let p = poincare_polynomial(g);
    let fail = || Error::FactorizationFailed {
        label: g.label().to_string(),
    };
    let d = factor_q_integers(&p).ok_or_else(fail)?;
    let product: usize = d.iter().product();
    if product != g.order() || d.len() != g.rank() {
        return Err(fail());
    }
    Ok(d)
}

/// Degrees by label: the shipped table for exceptional types, otherwise by
/// building the group.
pub fn degrees_of_label(label: &str) -> Result<Vec<usize>> {
    if let Some(d) = degree_table().degrees(label) {
        return Ok(d.to_vec());
    }
    if let Some(m) = label.strip_prefix("Zm:") {
        let m: usize = m.parse().map_err(|_| Error::BadGroupLabel(label.to_string()))?;
        return Ok(vec![m]);
    }
    degrees(&build_real(label)?)
}

/// `(label, degrees)` of each maximal standard parabolic (one per node).
pub fn maximal_parabolics(label: &str) -> Result<Vec<(String, Vec<usize>)>> {
    if let Some(ps) = degree_table().maximal_parabolics(label) {
        return Ok(ps.to_vec());
    }
    if degree_table().degrees(label).is_some() {
        return Err(Error::MissingParabolicTable(label.to_string()));
    }
    if label.starts_with("Zm:") {
        return Ok(vec![("1".to_string(), Vec::new())]);
    }
    let g = build_real(label)?;
    let mut out = Vec::new();
    for drop in 0..g.rank() {
        let nodes: Vec<usize> = (0..g.rank()).filter(|&i| i != drop).collect();
        let p = standard_parabolic(&g, &nodes)?;
        out.push((p.label().to_string(), degrees(&p)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses_with_products() {
        let t = degree_table();
        for label in t.labels() {
            let d = t.degrees(label).unwrap();
            assert!(d.iter().all(|&x| x >= 2));
        }
        assert_eq!(t.degrees("E7").unwrap(), &[2, 6, 8, 10, 12, 14, 18]);
        assert_eq!(t.maximal_parabolics("E7").unwrap().len(), 7);
        let e8: usize = t.degrees("E8").unwrap().iter().product();
        assert_eq!(e8, 696_729_600);
    }

    #[test]
    fn smallest_first_would_fail_for_b2() {
        let p = &IntPoly::q_integer(2) * &IntPoly::q_integer(4);
        assert_eq!(factor_q_integers(&p), Some(vec![2, 4]));
        // [2] divides [2][4] twice over, leaving a non-q-integer
        let once = p.div_exact(&IntPoly::q_integer(2)).unwrap();
        let twice = once.div_exact(&IntPoly::q_integer(2)).unwrap();
        assert!(factor_q_integers(&twice).is_none());
    }
}
