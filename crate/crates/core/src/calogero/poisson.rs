//! Exact pullbacks of trace functions through `xi` and the canonical bracket
//! `{f, g} = sum_i (df/dp_i dg/dx_i - df/dx_i dg/dp_i)` on `(x, p)`.

use std::cmp::Ordering;

use serde::Serialize;

use super::necklace::{Letter, Word};
use crate::exact::{MPoly, RationalFn, Scalar};

/// `Delta = prod_{i<j} (x_i - x_j)` over the variables `x_1..x_n, p_1..p_n`,
/// skipping the factor `(i, j)` when given.
fn vandermonde(n: usize, skip: Option<(usize, usize)>) -> MPoly {
    let mut acc = MPoly::from_scalar_in(2 * n, Scalar::one());
    for i in 0..n {
        for j in i + 1..n {
            if skip != Some((i, j)) {
                acc = &acc * &(&MPoly::x(2 * n, i) - &MPoly::x(2 * n, j));
            }
        }
    }
    acc
}

/// `X` and `Delta * Y` with polynomial entries.
fn xi_matrices(n: usize) -> (Vec<Vec<MPoly>>, Vec<Vec<MPoly>>) {
    let zero = MPoly::zero_in(2 * n);
    let delta = vandermonde(n, None);
    let x = (0..n)
        .map(|i| (0..n).map(|j| if i == j { MPoly::x(2 * n, i) } else { zero.clone() }).collect())
        .collect();
    let y = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    Ordering::Equal => &delta * &MPoly::x(2 * n, n + i),
                    Ordering::Less => vandermonde(n, Some((i, j))),
                    Ordering::Greater => vandermonde(n, Some((j, i))).neg(),
                })
                .collect()
        })
        .collect();
    (x, y)
}

fn mat_mul(a: &[Vec<MPoly>], b: &[Vec<MPoly>], n: usize) -> Vec<Vec<MPoly>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = MPoly::zero_in(2 * n);
                    for k in 0..n {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `xi^* Tr(w) = num / Delta^power`.
struct DeltaFraction {
    num: MPoly,
    power: u32,
}

fn pullback_fraction(w: &Word, n: usize) -> DeltaFraction {
    let (x, y) = xi_matrices(n);
    let mut acc: Option<Vec<Vec<MPoly>>> = None;
    let mut power = 0;
    for l in &w.0 {
        let m = if *l == Letter::X {
            &x
        } else {
            power += 1;
            &y
        };
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => mat_mul(&a, m, n),
        });
    }
    let num = match acc {
        None => MPoly::from_scalar_in(2 * n, Scalar::from_int(n as i64)),
        Some(a) => (0..n).fold(MPoly::zero_in(2 * n), |s, i| &s + &a[i][i]),
    };
    DeltaFraction { num, power }.reduced(n)
}

fn delta_power(n: usize, k: u32) -> MPoly {
    let delta = vandermonde(n, None);
    (0..k).fold(MPoly::from_scalar_in(2 * n, Scalar::one()), |acc, _| &acc * &delta)
}

impl DeltaFraction {
    /// Cancel whole factors of `Delta` from the numerator.
    fn reduced(mut self, n: usize) -> Self {
        'outer: while self.power > 0 && !self.num.is_zero() {
            let mut q = self.num.clone();
            for i in 0..n {
                for j in i + 1..n {
                    let mut l = vec![Scalar::zero(); 2 * n];
                    l[i] = Scalar::one();
                    l[j] = Scalar::from_int(-1);
                    match q.divide_exact_by_linear(&l) {
                        Ok(r) => q = r,
                        Err(_) => break 'outer,
                    }
                }
            }
            self.num = q;
            self.power -= 1;
        }
        if self.num.is_zero() {
            self.power = 0;
        }
        self
    }

    fn into_rational(self, n: usize) -> RationalFn {
        RationalFn::new(self.num, delta_power(n, self.power)).expect("Delta is nonzero")
    }

    /// Numerator of `d/dv (num / Delta^a)` over `Delta^(a+1)`.
    fn partial_num(&self, v: usize, delta: &MPoly) -> MPoly {
        let a = Scalar::from_int(i64::from(self.power));
        &(&self.num.partial(v) * delta) - &(&self.num * &delta.partial(v)).scale_scalar(&a)
    }
}

/// `xi^* Tr(w)` as a rational function of `(x, p)`, with denominator
/// `Delta^(number of Y in w)`.
pub fn pullback_trace(w: &Word, n: usize) -> RationalFn {
    pullback_fraction(w, n).into_rational(n)
}

/// `{xi^* Tr u, xi^* Tr v}` for the canonical bracket, keeping every
/// denominator a power of `Delta`.
pub fn trace_bracket(u: &Word, v: &Word, n: usize) -> RationalFn {
    let (f, g) = (pullback_fraction(u, n), pullback_fraction(v, n));
    let delta = vandermonde(n, None);
    let mut num = MPoly::zero_in(2 * n);
    for i in 0..n {
        let t1 = &f.partial_num(n + i, &delta) * &g.partial_num(i, &delta);
        let t2 = &f.partial_num(i, &delta) * &g.partial_num(n + i, &delta);
        num = &(&num + &t1) - &t2;
    }
    DeltaFraction {
        num,
        power: f.power + g.power + 2,
    }
    .reduced(n)
    .into_rational(n)
}

pub fn canonical_bracket(f: &RationalFn, g: &RationalFn, n: usize) -> RationalFn {
    let mut acc = RationalFn::zero_in(2 * n);
    for i in 0..n {
        let t1 = &f.partial(n + i) * &g.partial(i);
        let t2 = &f.partial(i) * &g.partial(n + i);
        acc = &(&acc + &t1) - &t2;
    }
    acc
}

fn a_word(k: usize) -> Word {
    Word(vec![Letter::X; k])
}

fn b_word(k: usize) -> Word {
    let mut w = vec![Letter::X; k];
    w.push(Letter::Y);
    Word(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonReport {
    pub n: usize,
    pub max_index: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PoissonReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `{a_m, a_k} = 0`, `{b_m, a_k} = k a_{m+k-1}`, `{b_m, b_k} = (k - m) b_{m+k-1}`
/// for `a_k = Tr X^k`, `b_k = Tr X^k Y`, pulled back through `xi`, for
/// `0 <= m, k <= max_index`.
pub fn coordinate_poisson_check(n: usize, max_index: usize) -> PoissonReport {
    let a: Vec<RationalFn> = (0..2 * max_index).map(|k| pullback_trace(&a_word(k), n)).collect();
    let b: Vec<RationalFn> = (0..2 * max_index).map(|k| pullback_trace(&b_word(k), n)).collect();
    let zero = RationalFn::zero_in(2 * n);
    let scaled = |f: &RationalFn, c: i64| f.scale(&crate::exact::ParamScalar::int(c));
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in 0..=max_index {
        for k in 0..=max_index {
            let lower = (m + k).checked_sub(1);
            let cases = [
                ("{a_m,a_k}", trace_bracket(&a_word(m), &a_word(k), n), zero.clone()),
                (
                    "{b_m,a_k}",
                    trace_bracket(&b_word(m), &a_word(k), n),
                    lower.map_or(zero.clone(), |j| scaled(&a[j], k as i64)),
                ),
                (
                    "{b_m,b_k}",
                    trace_bracket(&b_word(m), &b_word(k), n),
                    lower.map_or(zero.clone(), |j| scaled(&b[j], k as i64 - m as i64)),
                ),
            ];
            for (name, lhs, rhs) in cases {
                checked += 1;
                if lhs != rhs {
                    failures.push(format!("{name} with m={m}, k={k}: {lhs} != {rhs}"));
                }
            }
        }
    }
    PoissonReport {
        n,
        max_index,
        checked,
        failures,
    }
}
