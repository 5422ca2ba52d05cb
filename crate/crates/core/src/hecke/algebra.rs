//! The Hecke algebra `H_q(W)` of a finite Coxeter group in the basis `T_w`,
//! with the quadratic relation `(T_s - 1)(T_s + q) = 0`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Coefficient, ParamScalar, Scalar};
use crate::groups::{build_real, ReflectionGroup};

/// `sum_w a_w T_w`, keyed by group element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement<C> {
    terms: BTreeMap<usize, C>,
}

impl<C: Coefficient> HeckeElement<C> {
    pub fn zero() -> Self {
        HeckeElement { terms: BTreeMap::new() }
    }

    pub fn basis(w: usize) -> Self {
        Self::term(w, C::one())
    }

    pub fn term(w: usize, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn add_term(&mut self, w: usize, c: &C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(old) => old.add_ref(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn coeff(&self, w: usize) -> C {
        self.terms.get(&w).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.terms.iter().map(|(&w, c)| (w, c))
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, &c.neg_ref());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (w, a) in self.terms() {
            out.add_term(w, &a.mul_ref(c));
        }
        out
    }

    /// Render with the canonical words of `g`, e.g. `(1-q) T[1] + q T[]`.
    pub fn display<'a>(&'a self, g: &'a ReflectionGroup) -> impl fmt::Display + 'a
    where
        C: fmt::Display,
    {
        DisplayHecke { elt: self, group: g }
    }
}

impl HeckeElement<ParamScalar> {
    pub fn substitute(&self, values: &[Scalar]) -> HeckeElement<Scalar> {
        let mut out = HeckeElement::zero();
        for (w, c) in self.terms() {
            out.add_term(w, &c.substitute(values));
        }
        out
    }
}

struct DisplayHecke<'a, C> {
    elt: &'a HeckeElement<C>,
    group: &'a ReflectionGroup,
}

impl<C: Coefficient + fmt::Display> fmt::Display for DisplayHecke<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elt.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.elt.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = self.group.word(w).iter().map(|g| (g + 1).to_string()).collect();
            write!(f, "({c}) T[{}]", word.join(" "))?;
        }
        Ok(())
    }
}

/// `H_q(W)` for a fixed value or symbol `q` in the coefficient ring.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<C> {
    group: ReflectionGroup,
    q: C,
}

impl<C: Coefficient> HeckeAlgebra<C> {
    pub fn new(group: ReflectionGroup, q: C) -> Self {
        HeckeAlgebra { group, q }
    }

    /// `H_q(S_n)`, built on the Coxeter group `A_{n-1}`.
    pub fn type_a(n: usize, q: C) -> Result<Self> {
        if !(2..=6).contains(&n) {
            return Err(Error::Config(format!("type A Hecke algebras need 2 <= n <= 6, got {n}")));
        }
        Ok(Self::new(build_real(&format!("A{}", n - 1))?, q))
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn q(&self) -> &C {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn one(&self) -> HeckeElement<C> {
        HeckeElement::basis(self.group.identity())
    }

    /// `T_{s_g}` for the generator in position `g`.
    pub fn generator(&self, g: usize) -> HeckeElement<C> {
        HeckeElement::basis(self.group.generators()[g])
    }

    /// `T_s T_w = T_{sw}` when `l(sw) > l(w)`, else `(1 - q) T_w + q T_{sw}`.
    pub fn mul_generator_left(&self, g: usize, a: &HeckeElement<C>) -> HeckeElement<C> {
        let one_minus_q = C::one().sub_ref(&self.q);
        let mut out = HeckeElement::zero();
        for (w, c) in a.terms() {
            let sw = self.group.mul_gen_left(g, w);
            if self.group.length(sw) > self.group.length(w) {
                out.add_term(sw, c);
            } else {
                out.add_term(w, &c.mul_ref(&one_minus_q));
                out.add_term(sw, &c.mul_ref(&self.q));
            }
        }
        out
    }

    pub fn mul(&self, a: &HeckeElement<C>, b: &HeckeElement<C>) -> HeckeElement<C> {
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            let t = self
                .group
                .word(x)
                .iter()
                .rev()
                .fold(b.clone(), |acc, &g| self.mul_generator_left(g, &acc));
            out = out.add(&t.scale(c));
        }
        out
    }

    /// Matrix of left multiplication by `a` on the basis `T_w`, as rows.
    pub fn left_matrix(&self, a: &HeckeElement<C>) -> Vec<Vec<C>> {
        let n = self.dim();
        let cols: Vec<HeckeElement<C>> = (0..n).map(|w| self.mul(a, &HeckeElement::basis(w))).collect();
        (0..n).map(|v| cols.iter().map(|col| col.coeff(v)).collect()).collect()
    }
}

/// `H_q(S_n)` product with symbolic `q`.
pub fn hecke_mul_type_a(
    n: usize,
    a: &HeckeElement<ParamScalar>,
    b: &HeckeElement<ParamScalar>,
) -> Result<HeckeElement<ParamScalar>> {
    let h = HeckeAlgebra::type_a(n, ParamScalar::param(1, 0))?;
    Ok(h.mul(a, b))
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

fn shifted(a: &[Vec<Scalar>], s: &Scalar) -> Vec<Vec<Scalar>> {
    let mut out = a.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] += s;
    }
    out
}

fn is_zero_matrix(a: &[Vec<Scalar>]) -> bool {
    a.iter().all(|r| r.iter().all(Scalar::is_zero))
}

/// Order of `s_i s_j`.
pub fn coxeter_entry(g: &ReflectionGroup, i: usize, j: usize) -> usize {
    let e = g.identity();
    let mut x = g.from_word(&[i, j]);
    let mut m = 1;
    while x != e {
        x = g.mul(x, g.from_word(&[i, j]));
        m += 1;
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeDimReport {
    pub n: usize,
    pub q: String,
    pub dim: usize,
    pub expected_dim: usize,
    /// `(L_i - 1)(L_i + q) = 0` for every generator.
    pub quadratic_ok: bool,
    /// Braid relations of length `m_ij` for every pair.
    pub braid_ok: bool,
    pub associativity_triples: usize,
    pub associativity_exhaustive: bool,
    pub associativity_ok: bool,
    /// At `q = 1`, `T_x T_y = T_{xy}` for all pairs; `None` otherwise.
    pub group_algebra_ok: Option<bool>,
}

impl HeckeDimReport {
    pub fn passed(&self) -> bool {
        self.dim == self.expected_dim
            && self.quadratic_ok
            && self.braid_ok
            && self.associativity_ok
            && self.group_algebra_ok.unwrap_or(true)
    }
}

/// Relations of `H_q(S_n)` in the regular representation and associativity
/// on basis triples, exhaustive for `n <= 3` and `samples` random triples
/// otherwise.
pub fn hecke_dim_check(n: usize, q: &Scalar, samples: usize, seed: u64) -> Result<HeckeDimReport> {
    if n > 5 {
        return Err(Error::Config(format!("the dimension check supports n <= 5, got {n}")));
    }
    let h = HeckeAlgebra::type_a(n, q.clone())?;
    let g = h.group();
    let rank = g.rank();
    let gens: Vec<Vec<Vec<Scalar>>> = (0..rank).map(|i| h.left_matrix(&h.generator(i))).collect();

    let quadratic_ok = gens.iter().all(|l| {
        let a = shifted(l, &Scalar::from_int(-1));
        let b = shifted(l, q);
        is_zero_matrix(&mat_mul(&a, &b))
    });

    let mut braid_ok = true;
    for i in 0..rank {
        for j in i + 1..rank {
            let m = coxeter_entry(g, i, j);
            let alternating = |a: usize, b: usize| {
                (1..m).fold(gens[a].clone(), |acc, k| mat_mul(&acc, &gens[if k % 2 == 1 { b } else { a }]))
            };
            braid_ok &= alternating(i, j) == alternating(j, i);
        }
    }

    let order = g.order();
    let exhaustive = n <= 3;
    let triples: Vec<(usize, usize, usize)> = if exhaustive {
        (0..order)
            .flat_map(|a| (0..order).flat_map(move |b| (0..order).map(move |c| (a, b, c))))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                (
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                )
            })
            .collect()
    };
    let basis = |w| HeckeElement::<Scalar>::basis(w);
    let associativity_ok = triples.iter().all(|&(a, b, c)| {
        let left = h.mul(&h.mul(&basis(a), &basis(b)), &basis(c));
        let right = h.mul(&basis(a), &h.mul(&basis(b), &basis(c)));
        left == right
    });

    let group_algebra_ok = q.is_one().then(|| {
        (0..order).all(|x| (0..order).all(|y| h.mul(&basis(x), &basis(y)) == basis(g.mul(x, y))))
    });

    Ok(HeckeDimReport {
        n,
        q: q.to_string(),
        dim: h.dim(),
        expected_dim: (1..=n).product(),
        quadratic_ok,
        braid_ok,
        associativity_triples: triples.len(),
        associativity_exhaustive: exhaustive,
        associativity_ok,
        group_algebra_ok,
    })
}
