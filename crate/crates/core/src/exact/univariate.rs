//! Dense univariate polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `[d]_q = 1 + q + ... + q^{d-1}`.
    pub fn q_integer(d: usize) -> Self {
        Self::new(vec![BigInt::one(); d])
    }

    /// `a*k + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_i64(&[b, a])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect()
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact quotient by a divisor whose leading coefficient divides evenly;
    /// `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(|c| c.is_zero()).then(IntPoly::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(quot))
    }

    /// Rational roots with multiplicity, and the cofactor left after
    /// removing the corresponding linear factors.
    pub fn rational_roots(&self) -> (Vec<BigRational>, IntPoly) {
        let mut roots = Vec::new();
        let mut p = self.clone();
        while let Some(d) = p.degree().filter(|&d| d > 0) {
            if p.coeffs[0].is_zero() {
                roots.push(BigRational::zero());
                p = IntPoly::new(p.coeffs[1..].to_vec());
                continue;
            }
            let a0 = p.coeffs[0].abs();
            let an = p.coeffs[d].abs();
            let mut found = None;
            'search: for num in divisors(&a0) {
                for den in divisors(&an) {
                    for sign in [-1, 1] {
                        let r = BigRational::new(BigInt::from(sign) * &num, den.clone());
                        if p.eval_rational(&r).is_zero() {
                            found = Some(r);
                            break 'search;
                        }
                    }
                }
            }
            let Some(r) = found else { break };
            // divide by (den*k - num)
            let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
            p = p.div_exact(&lin).expect("rational root gives an exact factor");
            roots.push(r);
        }
        (roots, p)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().expect("constant term small enough to factor");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    out
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "q")
    }
}

impl IntPoly {
    pub fn to_string_in(&self, var: &str) -> String {
        struct W<'a>(&'a IntPoly, &'a str);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_var(f, self.1)
            }
        }
        W(self, var).to_string()
    }

    fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integer_product() {
        let p = &IntPoly::q_integer(2) * &IntPoly::q_integer(3);
        assert_eq!(p, IntPoly::from_i64(&[1, 2, 2, 1]));
        assert_eq!(p.to_string(), "1+2*q+2*q^2+q^3");
        assert_eq!(p.div_exact(&IntPoly::q_integer(3)), Some(IntPoly::q_integer(2)));
        assert_eq!(p.div_exact(&IntPoly::q_integer(4)), None);
    }

    #[test]
    fn finds_rational_roots() {
        // 6(2k+1)(3k+1)(3k+2)
        let p = &(&(&IntPoly::from_i64(&[6]) * &IntPoly::linear(2, 1)) * &IntPoly::linear(3, 1))
            * &IntPoly::linear(3, 2);
        let (roots, rest) = p.rational_roots();
        assert_eq!(rest.degree(), Some(0));
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.is_negative()));
    }
}
