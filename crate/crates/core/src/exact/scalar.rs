//! Exact scalars: rationals, optionally extended by a single square root.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with `a, b` rational and `d` a squarefree
//! integer greater than one. Whenever `b == 0` the value is stored with
//! `d == 1`, so equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u32,
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = square^2 * free
    let mut square = 1u64;
    let mut free = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= rest;
    (square, free)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    /// `a + b*sqrt(d)`; `d` is reduced to its squarefree part.
    pub fn quadratic(a: BigRational, b: BigRational, d: u32) -> Self {
        assert!(d >= 1, "radicand must be positive");
        let (sq, free) = squarefree_split(d as u64);
        let b = b * BigRational::from_integer(BigInt::from(sq));
        if free == 1 {
            return Self::from_rational(a + b);
        }
        let mut s = Scalar {
            a,
            b,
            d: free as u32,
        };
        s.normalize();
        s
    }

    /// `sqrt(n)` for a nonnegative integer `n`.
    pub fn sqrt_int(n: u32) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self::quadratic(BigRational::zero(), BigRational::one(), n)
    }

    /// Square root of a nonnegative rational, which always lands in some Q(sqrt(d)).
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(n/m) = sqrt(n*m)/m
        let prod = (q.numer() * q.denom()).to_u64()?;
        let (sq, free) = squarefree_split(prod);
        let coeff = BigRational::new(BigInt::from(sq), q.denom().clone());
        if free == 1 {
            Some(Self::from_rational(coeff))
        } else {
            Some(Scalar {
                a: BigRational::zero(),
                b: coeff,
                d: u32::try_from(free).ok()?,
            })
        }
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = 1;
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand `d`, or 1 for a rational value.
    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn join(d1: u32, d2: u32) -> u32 {
        match (d1, d2) {
            (1, d) | (d, 1) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixing Q(sqrt({x})) and Q(sqrt({y})) is not supported"),
        }
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with d*b^2
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * dd;
        let mut s = Scalar {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            d: self.d,
        };
        s.normalize();
        s
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let root = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-&self.b).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rational(&self.b), self.d)
        };
        if self.a.is_zero() {
            write!(f, "{root}")
        } else if self.b.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.a), root)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.a), root)
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let d = Scalar::join(self.d, rhs.d);
        let mut s = Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        };
        s.normalize();
        s
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let d = Scalar::join(self.d, rhs.d);
        let mut s = Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d,
        };
        s.normalize();
        s
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let d = Scalar::join(self.d, rhs.d);
        let dd = BigRational::from_integer(BigInt::from(d));
        let mut s = Scalar {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dd,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        };
        s.normalize();
        s
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "division by zero scalar");
            let mut s = Scalar {
                a: &self.a / &rhs.a,
                b: &self.b / &rhs.a,
                d: self.d,
            };
            s.normalize();
            return s;
        }
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Parse `p/q` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Convenience constructor for `n/d` as a `BigRational`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Denominator of a rational in lowest terms, as `u64`.
pub fn denominator(q: &BigRational) -> u64 {
    q.denom().to_u64().expect("denominator fits in u64")
}

/// gcd for small integers.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
