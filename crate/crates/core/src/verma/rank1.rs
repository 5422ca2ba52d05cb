//! Rank one: `W = Z/m` acting on `C`, with `y x^n = (n - b_n) x^{n-1}`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Equal-parameter `b_n = 2c (m ceil(n/m) - n)`.
pub fn rank1_b(m: u32, c: &BigRational, n: u32) -> BigRational {
    let k = n.div_ceil(m) * m - n;
    c * BigRational::from_integer(BigInt::from(2 * k))
}

/// `b_n = 2 sum_{j=1}^{m-1} (1 - l^{jn}) / (1 - l^j) c_j` with `l = e^{2 pi i/m}`,
/// summed directly in floating point; `cs[j-1] = c_j`.
pub fn rank1_b_float(m: u32, cs: &[f64], n: u32) -> Complex64 {
    assert_eq!(cs.len() as u32, m - 1, "one parameter per nontrivial element");
    let l = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / m as f64);
    let mut acc = Complex64::zero();
    for (j, c) in (1..m).zip(cs) {
        let lj = l.powu(j);
        acc += (Complex64::one() - l.powu(j * n)) / (Complex64::one() - lj) * c;
    }
    acc * 2.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rank1Spectrum {
    pub m: u32,
    pub c: BigRational,
    /// `b_0..=b_{n_max}`
    pub b: Vec<BigRational>,
    /// `a_n = prod_{k<=n} (k - b_k)`, so `beta(x^n, x^n) = a_n`.
    pub a: Vec<BigRational>,
    /// First `r >= 1` with `r = b_r`; then `L_c` has dimension `r`.
    pub r: Option<u32>,
}

pub fn rank1_spectrum(m: u32, c: &BigRational, n_max: u32) -> Rank1Spectrum {
    let b: Vec<BigRational> = (0..=n_max).map(|n| rank1_b(m, c, n)).collect();
    let mut a = vec![BigRational::one()];
    for n in 1..=n_max as usize {
        let f = BigRational::from_integer(BigInt::from(n)) - &b[n];
        a.push(&a[n - 1] * f);
    }
    let r = (1..=n_max).find(|&n| BigRational::from_integer(BigInt::from(n)) == b[n as usize]);
    if let Some(r) = r {
        assert!(r % m != 0, "b_r vanishes when m divides r");
    }
    Rank1Spectrum {
        m,
        c: c.clone(),
        b,
        a,
        r,
    }
}
