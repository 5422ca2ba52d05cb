//! Type `A_{n-1}` at `c = r/n`: the singular vectors
//! `f_i = Res_inf [(z - x_1)...(z - x_n)]^{r/n} dz / (z - x_i)`
//! and the quotient of the translation-invariant polynomials by them.
//!
//! Sign convention: `Res_inf w = -(coefficient of z^{-1})`. For `n = 2, r = 1`
//! this gives `f_1 = (x_2 - x_1)/2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::GradedPiece;
use crate::error::{Error, Result};
use crate::exact::linalg::rank;
use crate::exact::{monomials_of_degree, MPoly, Monomial, ParamScalar, Scalar};

/// `a (a-1) ... (a-k+1) / k!`
fn binom(a: &BigRational, k: usize) -> BigRational {
    let mut out = BigRational::one();
    for i in 0..k {
        let i = BigRational::from_integer(BigInt::from(i));
        out = out * (a - &i) / (&i + BigRational::one());
    }
    out
}

fn var_power(i: usize, k: u32) -> Monomial {
    let mut e = vec![0u16; i + 1];
    e[i] = k as u16;
    Monomial::new(&e)
}

fn truncate(f: &MPoly, max_degree: u32) -> MPoly {
    MPoly::from_terms(
        f.nvars(),
        f.terms()
            .filter(|(m, _)| m.degree() <= max_degree)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// `f_1..f_n`, homogeneous of degree `r` with rational coefficients.
pub fn typea_singular_vectors(n: usize, r: usize) -> Result<Vec<MPoly>> {
    if n < 2 || r == 0 {
        return Err(Error::Config(format!("need n >= 2 and r >= 1, got n = {n}, r = {r}")));
    }
    if r.is_multiple_of(n) {
        return Err(Error::RDivisibleByN { n, r });
    }
    let a = BigRational::new(BigInt::from(r), BigInt::from(n));
    let rd = r as u32;
    // prod_j (1 - x_j/z)^{r/n}, with 1/z tracked by total degree
    let mut g = MPoly::from_scalar_in(n, Scalar::one());
    for j in 0..n {
        let mut series = MPoly::zero_in(n);
        for k in 0..=r {
            let mut c = Scalar::from_rational(binom(&a, k));
            if k % 2 == 1 {
                c = -&c;
            }
            series = &series + &MPoly::term(n, var_power(j, k as u32), ParamScalar::scalar(c));
        }
        g = truncate(&(&g * &series), rd);
    }
    let parts: Vec<MPoly> = (0..=rd).map(|k| g.homogeneous_component(k)).collect();
    Ok((0..n)
        .map(|i| {
            let mut f = MPoly::zero_in(n);
            for k in 0..=rd {
                let xk = MPoly::term(n, var_power(i, k), ParamScalar::int(1));
                f = &f + &(&xk * &parts[(rd - k) as usize]);
            }
            f.neg().with_nvars(n)
        })
        .collect())
}

/// Coefficients of `((1 - t^r)/(1 - t))^{n-1}`.
pub fn typea_expected_hilbert(n: usize, r: usize) -> Vec<usize> {
    let mut out = vec![1usize];
    for _ in 1..n {
        let mut next = vec![0; out.len() + r - 1];
        for (i, &c) in out.iter().enumerate() {
            for slot in &mut next[i..i + r] {
                *slot += c;
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAQuotient {
    pub n: usize,
    pub r: usize,
    /// Graded dimensions up to the top nonzero degree.
    pub hilbert: Vec<usize>,
    pub dim: usize,
}

impl TypeAQuotient {
    pub fn palindromic(&self) -> bool {
        self.hilbert.iter().eq(self.hilbert.iter().rev())
    }

    /// Palindromic with a one-dimensional top degree.
    pub fn frobenius_ok(&self) -> bool {
        self.palindromic() && self.hilbert.last() == Some(&1)
    }

    pub fn matches_expected(&self) -> bool {
        self.hilbert == typea_expected_hilbert(self.n, self.r)
    }
}

/// `C[x_1..x_n]^T / <f_i>` in the coordinates `u_i = x_i - x_n`, degree by
/// degree until a degree vanishes; `cap` bounds the search.
pub fn typea_quotient(n: usize, r: usize, cap: u32) -> Result<TypeAQuotient> {
    let fs = typea_singular_vectors(n, r)?;
    let nu = n - 1;
    let images: Vec<MPoly> = (0..n)
        .map(|i| if i < nu { MPoly::x(nu, i) } else { MPoly::zero_in(nu) })
        .collect();
    let gens: Vec<MPoly> = fs
        .iter()
        .map(|f| f.compose(&images).with_nvars(nu))
        .filter(|g| !g.is_zero())
        .collect();
    let rd = r as u32;
    let mut hilbert = Vec::new();
    for d in 0..=cap {
        let piece = GradedPiece::new(nu, d);
        let ideal_rank = if d < rd {
            0
        } else {
            let mut rows = Vec::new();
            for m in monomials_of_degree(nu, d - rd) {
                for g in &gens {
                    rows.push(piece.coords(&g.mul_monomial(&m))?);
                }
            }
            rank(&rows)
        };
        let q = piece.dim() - ideal_rank;
        if q == 0 {
            let dim = hilbert.iter().sum();
            return Ok(TypeAQuotient { n, r, hilbert, dim });
        }
        hilbert.push(q);
    }
    Err(Error::NonTerminating { cap: cap as usize })
}

/// Whether every `f_i` vanishes at `x`.
pub fn typea_support_membership(n: usize, r: usize, x: &[BigRational]) -> Result<bool> {
    assert_eq!(x.len(), n);
    let point: Vec<Scalar> = x.iter().cloned().map(Scalar::from_rational).collect();
    Ok(typea_singular_vectors(n, r)?
        .iter()
        .all(|f| f.substitute(&[], &point).is_zero()))
}

/// `(z - x_1)...(z - x_n)` is an `(n/d)`-th power, `d = gcd(r, n)`:
/// every distinct coordinate occurs a multiple of `n/d` times.
pub fn power_condition(n: usize, r: usize, x: &[BigRational]) -> bool {
    let k = n / n.gcd(&r);
    let mut counts: BTreeMap<&BigRational, usize> = BTreeMap::new();
    for v in x {
        *counts.entry(v).or_default() += 1;
    }
    counts.values().all(|c| c % k == 0)
}
