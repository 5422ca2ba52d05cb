use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{Coefficient, MPoly, ParamScalar};
use crate::groups::ReflectionGroup;

/// Finite combination `sum_g a_g g` with parameter-polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<usize, ParamScalar>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(g, &ParamScalar::int(1));
        e
    }

    pub fn add_term(&mut self, g: usize, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(ParamScalar::zero);
        entry.add_assign_ref(c);
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn coeff(&self, g: usize) -> ParamScalar {
        self.terms.get(&g).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &ParamScalar)> {
        self.terms.iter().map(|(&g, c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&g, c) in &other.terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn mul(&self, other: &Self, group: &ReflectionGroup) -> Self {
        let mut out = Self::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(group.mul(a, b), &(ca * cb));
            }
        }
        out
    }

    /// Action on polynomials, with `(g f)(x) = f(g^{-1} x)`.
    pub fn apply(&self, group: &ReflectionGroup, f: &MPoly) -> MPoly {
        let mut out = MPoly::zero_in(f.nvars());
        for (&g, c) in &self.terms {
            let moved = group.act_on_poly(g, f);
            out = &out + &moved.scale(c);
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("({c})*[g{g}]"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}
