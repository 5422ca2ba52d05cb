//! Sparse multivariate polynomials in graded-lexicographic order.
//!
//! [`Poly<C>`] is generic over its coefficient ring. Two instantiations are
//! used throughout the crate: [`ParamScalar`] (polynomials in the coupling
//! parameters `c1..cp` with [`Scalar`] coefficients) and [`MPoly`]
//! (polynomials in `x1..xr` with `ParamScalar` coefficients).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;
use thiserror::Error;

use super::scalar::Scalar;

/// Ring operations needed from a coefficient type.
///
/// Methods take references so nested coefficient rings compose without
/// higher-ranked operator bounds.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    /// Nesting depth: 0 for scalars, one more for each polynomial layer.
    const DEPTH: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: Scalar) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_scalar(&self, s: &Scalar) -> Self;
    /// Flattened `(scalar, monomial text)` terms for printing.
    fn push_terms(&self, out: &mut Vec<(Scalar, String)>);

    fn from_int(n: i64) -> Self {
        Self::from_scalar(Scalar::from_int(n))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

impl Coefficient for Scalar {
    const DEPTH: usize = 0;

    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_scalar(&self, s: &Scalar) -> Self {
        self * s
    }
    fn push_terms(&self, out: &mut Vec<(Scalar, String)>) {
        if !self.is_zero() {
            out.push((self.clone(), String::new()));
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// Exponent vector with trailing zeros trimmed, ordered graded-lex with
/// `x1 > x2 > ...`.
///
/// Field order matters: the derived `Ord` compares total degree first, then
/// the trimmed exponent slices lexicographically, which agrees with
/// zero-padded lex comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(exps: &[u16]) -> Self {
        let mut v: SmallVec<[u16; 8]> = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        let deg = v.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps: v }
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0u16; i + 1];
        v[i] = 1;
        Self::new(&v)
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    /// Exponents, trimmed of trailing zeros.
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    /// Number of variables actually occurring (index of last nonzero + 1).
    pub fn support_len(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut v: SmallVec<[u16; 8]> = SmallVec::with_capacity(n);
        for i in 0..n {
            v.push(self.exp(i) + other.exp(i));
        }
        Monomial {
            deg: self.deg + other.deg,
            exps: v,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.exps.len() > self.exps.len() {
            return None;
        }
        let mut v: SmallVec<[u16; 8]> = self.exps.clone();
        for (i, &e) in other.exps.iter().enumerate() {
            if v[i] < e {
                return None;
            }
            v[i] -= e;
        }
        Some(Monomial::new(&v))
    }

    /// Exponents reindexed: variable `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut v = vec![0u16; perm.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            v[perm[i]] = e;
        }
        Monomial::new(&v)
    }

    fn render(&self, depth: usize) -> String {
        self.render_with(&|i| default_var_name(depth, i))
    }

    pub fn render_with(&self, name: &dyn Fn(usize) -> String) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(name(i)),
                _ => parts.push(format!("{}^{}", name(i), e)),
            }
        }
        parts.join("*")
    }
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// graded-lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left as u16;
            out.push(Monomial::new(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, nvars, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut cur = vec![0u16; nvars];
    rec(0, nvars, d, &mut cur, &mut out);
    out
}

/// All monomials of degree at most `d`, ascending in degree.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

fn default_var_name(depth: usize, i: usize) -> String {
    match depth {
        1 => format!("c{}", i + 1),
        2 => format!("x{}", i + 1),
        _ => format!("v{}_{}", depth, i + 1),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomials over {left} and {right} variables cannot be combined")]
pub struct VariableMismatch {
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomial is not divisible by the linear form (remainder {remainder})")]
pub struct NotDivisible<C: Coefficient> {
    pub remainder: Poly<C>,
}

/// Sparse polynomial; zero coefficients are never stored.
///
/// `nvars == 0` marks a polynomial built without a declared variable set
/// (such as the ring constants); it combines with any other arity.
/// Equality compares terms only.
#[derive(Clone, Debug)]
pub struct Poly<C: Coefficient> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for Poly<C> {}

impl<C: Coefficient + std::hash::Hash> std::hash::Hash for Poly<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub type ParamScalar = Poly<Scalar>;
pub type MPoly = Poly<ParamScalar>;

impl<C: Coefficient> Poly<C> {
    pub fn zero_in(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in(nvars: usize, c: C) -> Self {
        let mut p = Self::zero_in(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::term(nvars, Monomial::var(i), C::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: C) -> Self {
        assert!(m.support_len() <= nvars || nvars == 0);
        let mut p = Self::zero_in(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero_in(n);
        for (i, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                p.terms.insert(Monomial::var(i), C::from_scalar(a.clone()));
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero_in(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Re-declare the variable count (must cover every occurring variable).
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        assert!(self.terms.keys().all(|m| m.support_len() <= nvars));
        self.nvars = nvars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn joined_nvars(&self, other: &Self) -> Result<usize, VariableMismatch> {
        match (self.nvars, other.nvars) {
            (0, n) | (n, 0) => Ok(n),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(VariableMismatch { left: a, right: b }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, VariableMismatch> {
        let nvars = self.joined_nvars(other)?;
        let mut out = self.clone();
        out.nvars = nvars;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, VariableMismatch> {
        let nvars = self.joined_nvars(other)?;
        let mut out = self.clone();
        out.nvars = nvars;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg_ref());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, VariableMismatch> {
        let nvars = self.joined_nvars(other)?;
        let mut out = Self::zero_in(nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.nvars);
        }
        let mut out = Self::zero_in(self.nvars);
        for (m, v) in &self.terms {
            let w = v.mul_ref(c);
            if !w.is_zero() {
                out.terms.insert(m.clone(), w);
            }
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero_in(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul_scalar(s)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant_in(self.nvars, C::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero_in(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut v: Vec<u16> = m.exps().to_vec();
            v[i] -= 1;
            out.add_term(Monomial::new(&v), &c.mul_scalar(&Scalar::from_int(e as i64)));
        }
        out
    }

    /// Directional derivative `sum_i a_i d/dx_i`.
    pub fn directional(&self, a: &[Scalar]) -> Self {
        let mut out = Self::zero_in(self.nvars);
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                out = &out + &self.partial(i).scale_scalar(ai);
            }
        }
        out
    }

    /// Evaluate at a point with coordinates in the coefficient ring.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul_ref(&point[i]);
                }
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Substitute polynomials for the variables.
    pub fn compose(&self, images: &[Poly<C>]) -> Poly<C> {
        let nvars = images.iter().map(|p| p.nvars).max().unwrap_or(0);
        let mut powers: Vec<Vec<Poly<C>>> = images
            .iter()
            .map(|p| vec![Poly::constant_in(p.nvars, C::one()), p.clone()])
            .collect();
        let mut out = Poly::zero_in(nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant_in(nvars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Relabel variables: `x_i -> x_{perm[i]}`, with signs `x_i -> sign[i] x_{perm[i]}`.
    pub fn signed_permute(&self, perm: &[usize], signs: &[i8]) -> Self {
        let mut out = Self::zero_in(self.nvars);
        for (m, c) in &self.terms {
            let mut odd = false;
            for (i, &e) in m.exps().iter().enumerate() {
                if signs[i] < 0 && e % 2 == 1 {
                    odd = !odd;
                }
            }
            let c = if odd { c.neg_ref() } else { c.clone() };
            out.terms.insert(m.permuted(perm), c);
        }
        out
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero_in(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Exact quotient by a linear form given by its coefficient vector.
    ///
    /// Uses the division algorithm with respect to the graded-lex leading
    /// variable of `l`; a single generator is its own Groebner basis, so a
    /// zero remainder is equivalent to divisibility.
    pub fn divide_exact_by_linear(&self, l: &[Scalar]) -> Result<Self, NotDivisible<C>> {
        let lead = l
            .iter()
            .position(|a| !a.is_zero())
            .expect("linear form must be nonzero");
        let lead_inv = l[lead].inv();
        let lead_mono = Monomial::var(lead);
        let mut rest = self.clone();
        let mut quotient = Self::zero_in(self.nvars);
        let mut remainder = Self::zero_in(self.nvars);
        while let Some((m, c)) = rest.terms.pop_last() {
            match m.div(&lead_mono) {
                Some(qm) => {
                    let qc = c.mul_scalar(&lead_inv);
                    for (j, a) in l.iter().enumerate() {
                        if j == lead || a.is_zero() {
                            continue;
                        }
                        rest.add_term(qm.mul(&Monomial::var(j)), &qc.mul_scalar(a).neg_ref());
                    }
                    quotient.add_term(qm, &qc);
                }
                None => {
                    remainder.terms.insert(m, c);
                }
            }
        }
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(NotDivisible { remainder })
        }
    }

    pub fn to_string_with(&self, names: &dyn Fn(usize) -> String) -> String {
        let mut terms = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let outer = m.render_with(names);
            let mut inner = Vec::new();
            c.push_terms(&mut inner);
            for (s, mono) in inner {
                let full = match (mono.is_empty(), outer.is_empty()) {
                    (true, _) => outer.clone(),
                    (false, true) => mono,
                    (false, false) => format!("{mono}*{outer}"),
                };
                terms.push(render_term(&s, &full));
            }
        }
        join_terms(terms)
    }
}

fn render_term(s: &Scalar, mono: &str) -> String {
    if mono.is_empty() {
        return s.to_string();
    }
    if s.is_one() {
        return mono.to_string();
    }
    if (-s).is_one() {
        return format!("-{mono}");
    }
    if !s.is_rational() && !num_traits::Zero::is_zero(s.rational_part()) {
        return format!("({s})*{mono}");
    }
    format!("{s}*{mono}")
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

impl<C: Coefficient> Coefficient for Poly<C> {
    const DEPTH: usize = C::DEPTH + 1;

    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn one() -> Self {
        Self::constant_in(0, C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_scalar(s: Scalar) -> Self {
        Self::constant_in(0, C::from_scalar(s))
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_scalar(&self, s: &Scalar) -> Self {
        self.scale_scalar(s)
    }
    fn push_terms(&self, out: &mut Vec<(Scalar, String)>) {
        for (m, c) in self.terms.iter().rev() {
            let outer = m.render(Self::DEPTH);
            let mut inner = Vec::new();
            c.push_terms(&mut inner);
            for (s, mono) in inner {
                let full = match (mono.is_empty(), outer.is_empty()) {
                    (true, _) => outer.clone(),
                    (false, true) => mono,
                    (false, false) => format!("{mono}*{outer}"),
                };
                out.push((s, full));
            }
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        let nvars = self.joined_nvars(other).unwrap_or_else(|e| panic!("{e}"));
        self.nvars = nvars;
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        self.push_terms(&mut terms);
        let rendered = terms.iter().map(|(s, m)| render_term(s, m)).collect();
        write!(f, "{}", join_terms(rendered))
    }
}

impl<'a, C: Coefficient> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, C: Coefficient> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, C: Coefficient> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl ParamScalar {
    /// The parameter `c_{i+1}` among `p` parameters.
    pub fn param(p: usize, i: usize) -> Self {
        Self::var(p, i)
    }

    pub fn scalar(s: Scalar) -> Self {
        Self::constant_in(0, s)
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(Scalar::from_int(n))
    }

    /// Substitute a value for every parameter.
    pub fn substitute(&self, values: &[Scalar]) -> Scalar {
        self.eval(values)
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.degree() {
            None => Some(Scalar::zero()),
            Some(0) => Some(self.constant_term()),
            _ => None,
        }
    }
}

impl MPoly {
    pub fn x(nvars: usize, i: usize) -> Self {
        Self::var(nvars, i)
    }

    pub fn from_param(nvars: usize, c: ParamScalar) -> Self {
        Self::constant_in(nvars, c)
    }

    pub fn from_scalar_in(nvars: usize, s: Scalar) -> Self {
        Self::constant_in(nvars, ParamScalar::scalar(s))
    }

    /// Substitute values for the parameters, keeping the variables.
    pub fn substitute_params(&self, values: &[Scalar]) -> MPoly {
        self.map_coeffs(|c| ParamScalar::scalar(c.substitute(values)))
    }

    /// Evaluate at a point, keeping the parameters symbolic.
    pub fn eval_point(&self, point: &[Scalar]) -> ParamScalar {
        let pt: Vec<ParamScalar> = point.iter().cloned().map(ParamScalar::scalar).collect();
        self.eval(&pt)
    }

    /// Substitute parameters and evaluate at a point.
    pub fn substitute(&self, values: &[Scalar], point: &[Scalar]) -> Scalar {
        self.eval_point(point).substitute(values)
    }

    /// Apply a map to each parameter-coefficient.
    pub fn map_params(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> MPoly {
        self.map_coeffs(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::x(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p.to_string(), "x1^2-x2^2");
    }

    #[test]
    fn parameter_coefficients_multiply() {
        let c = MPoly::from_param(2, ParamScalar::param(1, 0));
        let cx = &c * &x(0);
        assert_eq!((&cx * &cx).to_string(), "c1^2*x1^2");
    }

    #[test]
    fn canonical_text_matches_expected_layout() {
        let c = ParamScalar::param(1, 0);
        let coef = c.pow(2).scale_scalar(&Scalar::from_ratio(3, 2));
        let m = Monomial::new(&[1, 3]);
        let p = MPoly::term(2, m, coef);
        assert_eq!(p.to_string(), "3/2*c1^2*x1*x2^3");
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(&[1, 0]);
        let b = Monomial::new(&[0, 1]);
        let c = Monomial::new(&[0, 2]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::new(&[1, 1]) > Monomial::new(&[0, 2]));
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(3, 2);
        assert_eq!(m.len(), 6);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(monomials_up_to(2, 3).len(), 10);
    }

    #[test]
    fn division_by_linear_form() {
        let p = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let l = [Scalar::from_int(1), Scalar::from_int(-1)];
        assert_eq!(p.divide_exact_by_linear(&l).unwrap(), &x(0) + &x(1));
        assert!(MPoly::zero_in(2)
            .divide_exact_by_linear(&[Scalar::one(), Scalar::zero()])
            .unwrap()
            .is_zero());
        let err = x(0)
            .divide_exact_by_linear(&[Scalar::zero(), Scalar::one()])
            .unwrap_err();
        assert_eq!(err.remainder, x(0));
    }

    #[test]
    fn mismatched_variables_rejected() {
        let a = MPoly::x(2, 0);
        let b = MPoly::x(3, 0);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn substitution_examples() {
        let c = ParamScalar::param(1, 0);
        let coef = &ParamScalar::int(1) - &c.scale_scalar(&Scalar::from_int(2));
        let p = MPoly::term(1, Monomial::var(0), coef);
        assert!(p.substitute_params(&[Scalar::from_ratio(1, 2)]).is_zero());
        let q = &x(0) * &x(1);
        assert_eq!(
            q.substitute(&[], &[Scalar::from_int(2), Scalar::from_int(3)]),
            Scalar::from_int(6)
        );
    }

    #[test]
    fn signed_permutation_action() {
        let p = &(&x(0) * &x(0)) * &x(1);
        let q = p.signed_permute(&[1, 0], &[1, -1]);
        assert_eq!(q, (&(&x(1) * &x(1)) * &x(0)).neg());
    }

    #[test]
    fn compose_with_linear_images() {
        let p = &x(0) * &x(1);
        let images = [&x(0) + &x(1), &x(0) - &x(1)];
        assert_eq!(p.compose(&images), &(&x(0) * &x(0)) - &(&x(1) * &x(1)));
    }
}
