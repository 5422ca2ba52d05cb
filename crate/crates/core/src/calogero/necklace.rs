//! Poisson brackets of trace functions `Tr(w)`, words `w` in `X, Y`, for the
//! form `Tr(dY ^ dX)` with `{Y_ab, X_cd} = delta_ad delta_bc`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::CMatrix;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|ch| match ch {
                'X' | 'x' => Ok(Letter::X),
                'Y' | 'y' => Ok(Letter::Y),
                _ => Err(Error::Config(format!("word letters must be X or Y, got {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::X { 'X' } else { 'Y' })?;
        }
        Ok(())
    }
}

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the letters after position `i`, then those before it.
    fn cyclic_complement(&self, i: usize) -> Vec<Letter> {
        self.0[i + 1..].iter().chain(&self.0[..i]).copied().collect()
    }
}

fn product(letters: &[Letter], x: &CMatrix, y: &CMatrix) -> CMatrix {
    let n = x.nrows();
    letters.iter().fold(CMatrix::identity(n, n), |acc, l| {
        acc * if *l == Letter::X { x } else { y }
    })
}

/// `d Tr(w) / d M_ab` for `M` the matrix of `which`, by forward-mode dual
/// numbers: the product is carried with its derivative in direction `E_ab`.
fn trace_gradient(w: &Word, which: Letter, x: &CMatrix, y: &CMatrix) -> CMatrix {
    let n = x.nrows();
    CMatrix::from_fn(n, n, |a, b| {
        let mut val = CMatrix::identity(n, n);
        let mut der = CMatrix::zeros(n, n);
        for l in &w.0 {
            let m = if *l == Letter::X { x } else { y };
            if *l == which {
                // der * M + val * E_ab: column b of the second term is column a of val
                let mut d = &der * m;
                for r in 0..n {
                    d[(r, b)] += val[(r, a)];
                }
                der = d;
            } else {
                der = &der * m;
            }
            val = &val * m;
        }
        der.trace()
    })
}

/// `sum_ab (dF/dY_ab dG/dX_ba - dF/dX_ba dG/dY_ab)` for `F = Tr u`, `G = Tr v`.
pub fn necklace_numeric(u: &Word, v: &Word, x: &CMatrix, y: &CMatrix) -> Complex64 {
    let fy = trace_gradient(u, Letter::Y, x, y);
    let fx = trace_gradient(u, Letter::X, x, y);
    let gx = trace_gradient(v, Letter::X, x, y);
    let gy = trace_gradient(v, Letter::Y, x, y);
    let n = x.nrows();
    let mut acc = Complex64::default();
    for a in 0..n {
        for b in 0..n {
            acc += fy[(a, b)] * gx[(b, a)] - fx[(b, a)] * gy[(a, b)];
        }
    }
    acc
}

/// The necklace formula: a sum over pairs of a `Y` in `u` with an `X` in `v`
/// minus pairs of an `X` in `u` with a `Y` in `v`, each contributing the trace
/// of the two cyclic complements. Also returns the sum of the term moduli.
pub fn necklace_formula(u: &Word, v: &Word, x: &CMatrix, y: &CMatrix) -> (Complex64, f64) {
    let mut acc = Complex64::default();
    let mut scale = 0.0;
    for (i, a) in u.0.iter().enumerate() {
        for (j, b) in v.0.iter().enumerate() {
            let sign = match (a, b) {
                (Letter::Y, Letter::X) => 1.0,
                (Letter::X, Letter::Y) => -1.0,
                _ => continue,
            };
            let mut letters = u.cyclic_complement(i);
            letters.extend(v.cyclic_complement(j));
            let t = product(&letters, x, y).trace();
            scale += t.norm();
            acc += t * sign;
        }
    }
    (acc, scale)
}

#[derive(Clone, Debug, Serialize)]
pub struct NecklaceReport {
    pub samples: usize,
    /// `max |a - b| / max(|a|, |b|, sum of formula term moduli)`.
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<String>,
}

pub const NECKLACE_TOLERANCE: f64 = 1e-9;

fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

fn random_word(max_len: usize, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.random_range(1..=max_len);
    Word((0..len).map(|_| if rng.random_bool(0.5) { Letter::X } else { Letter::Y }).collect())
}

fn relative_error(a: Complex64, b: Complex64, scale: f64) -> f64 {
    let denom = a.norm().max(b.norm()).max(scale);
    if denom == 0.0 {
        0.0
    } else {
        (a - b).norm() / denom
    }
}

/// `{Tr u, Tr v}` both ways at `samples` random complex matrix pairs.
pub fn necklace_bracket_check(u: &Word, v: &Word, n: usize, samples: usize, seed: u64) -> NecklaceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Word, Word)> = (0..samples).map(|_| (u.clone(), v.clone())).collect();
    run_check(&pairs, n, &mut rng)
}

/// Random word pairs of length at most `max_len`, one matrix pair each.
pub fn necklace_random_words_check(n: usize, samples: usize, max_len: usize, seed: u64) -> NecklaceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Word, Word)> = (0..samples)
        .map(|_| (random_word(max_len, &mut rng), random_word(max_len, &mut rng)))
        .collect();
    run_check(&pairs, n, &mut rng)
}

fn run_check(pairs: &[(Word, Word)], n: usize, rng: &mut ChaCha8Rng) -> NecklaceReport {
    let mut worst = 0.0;
    let mut witness = None;
    for (u, v) in pairs {
        let x = random_matrix(n, rng);
        let y = random_matrix(n, rng);
        let a = necklace_numeric(u, v, &x, &y);
        let (b, scale) = necklace_formula(u, v, &x, &y);
        let e = relative_error(a, b, scale);
        if e > worst || witness.is_none() {
            worst = e;
            witness = Some(format!("{{Tr {u}, Tr {v}}}: {a} vs {b}"));
        }
    }
    let passed = worst <= NECKLACE_TOLERANCE;
    NecklaceReport {
        samples: pairs.len(),
        max_rel_error: worst,
        tolerance: NECKLACE_TOLERANCE,
        passed,
        worst: if passed { None } else { witness },
    }
}
