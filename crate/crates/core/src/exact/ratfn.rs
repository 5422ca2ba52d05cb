//! Quotients of polynomials, compared by cross-multiplication.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::{MPoly, ParamScalar};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `num / den` with `den` never zero. Not reduced to lowest terms.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MPoly,
    den: MPoly,
}

impl RationalFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RationalFn {
            num: p,
            den: MPoly::from_scalar_in(n, Scalar::one()),
        }
    }

    pub fn zero_in(nvars: usize) -> Self {
        Self::from_poly(MPoly::zero_in(nvars))
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Partial derivative in variable `i` by the quotient rule.
    pub fn partial(&self, i: usize) -> Self {
        let num = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        RationalFn {
            num,
            den: &self.den * &self.den,
        }
    }

    /// Evaluate parameters and point; fails if the denominator vanishes there.
    pub fn substitute(&self, params: &[Scalar], point: &[Scalar]) -> Result<Scalar> {
        let d = self.den.substitute(params, point);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(&self.num.substitute(params, point) / &d)
    }

    pub fn substitute_params(&self, params: &[Scalar]) -> Result<Self> {
        Self::new(
            self.num.substitute_params(params),
            self.den.substitute_params(params),
        )
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<'a> Add<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &'a RationalFn) -> RationalFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFn {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RationalFn {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<'a> Sub<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &'a RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &'a RationalFn) -> RationalFn {
        RationalFn {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl<'a> Div<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &'a RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFn {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        }
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_ignores_common_factors() {
        let x1 = MPoly::x(2, 0);
        let x2 = MPoly::x(2, 1);
        let a = RationalFn::new(x1.clone(), x2.clone()).unwrap();
        let b = RationalFn::new(&x1 * &x1, &x1 * &x2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pole_detected() {
        let x1 = MPoly::x(2, 0);
        let x2 = MPoly::x(2, 1);
        let f = RationalFn::new(MPoly::from_scalar_in(2, Scalar::one()), &x1 - &x2).unwrap();
        let one = Scalar::one();
        assert!(matches!(
            f.substitute(&[], &[one.clone(), one]),
            Err(Error::PoleAtPoint)
        ));
        assert_eq!(
            f.substitute(&[], &[Scalar::from_int(3), Scalar::one()]).unwrap(),
            Scalar::from_ratio(1, 2)
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFn::new(MPoly::x(1, 0), MPoly::zero_in(1)).is_err());
    }

    #[test]
    fn quotient_rule() {
        let x = MPoly::x(1, 0);
        let f = RationalFn::new(MPoly::from_scalar_in(1, Scalar::one()), x.clone()).unwrap();
        let expected = RationalFn::new(MPoly::from_scalar_in(1, Scalar::from_int(-1)), &x * &x).unwrap();
        assert_eq!(f.partial(0), expected);
    }
}
