//! The Macdonald-Mehta integral
//! `F(k) = (2 pi)^{-r/2} int e^{-(x,x)/2} |delta(x)|^{2k} dx = prod_i Gamma(1 + k d_i) / Gamma(1 + k)`,
//! its companion `b(k) = beta_{-k}(delta, delta)`, and the Gaussian pairing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::dunkl::{apply_dunkl_monomial, DunklContext};
use crate::error::{Error, Result};
use crate::exact::{IntPoly, MPoly, ParamScalar, Scalar};
use crate::groups::ReflectionGroup;

/// Independent sampling streams; fixed so results do not depend on threads.
pub const MC_STREAMS: u64 = 64;

/// `prod_i Gamma(1 + k d_i) / Gamma(1 + k)`.
pub fn mm_rhs(degrees: &[usize], k: f64) -> f64 {
    let base = ln_gamma(1.0 + k);
    degrees
        .iter()
        .map(|&d| ln_gamma(1.0 + k * d as f64) - base)
        .sum::<f64>()
        .exp()
}

/// `delta(x) = prod_s (alpha_s, x)` over the positive roots.
pub fn delta(g: &ReflectionGroup) -> MPoly {
    g.reflections()
        .iter()
        .fold(MPoly::from_scalar_in(g.dim(), Scalar::one()), |acc, r| {
            &acc * &MPoly::linear(&r.root)
        })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    pub fn z_score(&self, target: f64) -> f64 {
        if self.std_error == 0.0 {
            if self.mean == target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - target) / self.std_error
        }
    }
}

/// Running count, means and co-moments of a pair `(a, b)`.
#[derive(Clone, Copy, Debug, Default)]
struct PairMoments {
    n: f64,
    mean_a: f64,
    mean_b: f64,
    m2_a: f64,
    m2_b: f64,
    c_ab: f64,
}

impl PairMoments {
    fn push(&mut self, a: f64, b: f64) {
        self.n += 1.0;
        let da = a - self.mean_a;
        let db = b - self.mean_b;
        self.mean_a += da / self.n;
        self.mean_b += db / self.n;
        self.m2_a += da * (a - self.mean_a);
        self.m2_b += db * (b - self.mean_b);
        self.c_ab += da * (b - self.mean_b);
    }

    fn merge(self, o: Self) -> Self {
        if self.n == 0.0 {
            return o;
        }
        if o.n == 0.0 {
            return self;
        }
        let n = self.n + o.n;
        let da = o.mean_a - self.mean_a;
        let db = o.mean_b - self.mean_b;
        let w = self.n * o.n / n;
        PairMoments {
            n,
            mean_a: self.mean_a + da * o.n / n,
            mean_b: self.mean_b + db * o.n / n,
            m2_a: self.m2_a + o.m2_a + da * da * w,
            m2_b: self.m2_b + o.m2_b + db * db * w,
            c_ab: self.c_ab + o.c_ab + da * db * w,
        }
    }
}

/// Standard-normal samples in the ambient space, split into `MC_STREAMS`
/// streams keyed by `(seed, stream)`; `f` maps a point to `(a, b)`.
fn sample_pairs<F>(dim: usize, n_samples: u64, seed: u64, f: F) -> PairMoments
where
    F: Fn(&[f64]) -> (f64, f64) + Sync,
{
    (0..MC_STREAMS)
        .into_par_iter()
        .map(|stream| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let count = n_samples / MC_STREAMS + u64::from(stream < n_samples % MC_STREAMS);
            let mut x = vec![0.0; dim];
            let mut acc = PairMoments::default();
            for _ in 0..count {
                for v in x.iter_mut() {
                    *v = StandardNormal.sample(&mut rng);
                }
                let (a, b) = f(&x);
                acc.push(a, b);
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        // merge in stream order so the result is independent of the thread count
        .fold(PairMoments::default(), PairMoments::merge)
}

fn roots_f64(g: &ReflectionGroup) -> Vec<Vec<f64>> {
    g.reflections()
        .iter()
        .map(|r| r.root.iter().map(Scalar::to_f64).collect())
        .collect()
}

fn delta_f64(roots: &[Vec<f64>], x: &[f64]) -> f64 {
    roots
        .iter()
        .map(|a| a.iter().zip(x).map(|(u, v)| u * v).sum::<f64>())
        .product()
}

/// Monte Carlo estimate of `E[|delta(x)|^{2k}]` for standard normal `x`.
pub fn mm_mc_estimate(g: &ReflectionGroup, k: f64, n_samples: u64, seed: u64) -> Result<MCEstimate> {
    if k < 0.0 || !k.is_finite() {
        return Err(Error::Config(format!("k must be a finite nonnegative number, got {k}")));
    }
    if n_samples < 2 {
        return Err(Error::Config("at least two samples are needed".into()));
    }
    let roots = roots_f64(g);
    let m = sample_pairs(g.dim(), n_samples, seed, |x| {
        (delta_f64(&roots, x).abs().powf(2.0 * k), 0.0)
    });
    let var = m.m2_a / (m.n - 1.0);
    Ok(MCEstimate {
        mean: m.mean_a,
        std_error: (var / m.n).sqrt(),
        n_samples,
        seed,
    })
}

fn double_factorial_odd(e: u16) -> BigInt {
    // (e-1)!! for even e
    (1..e as i64).step_by(2).map(BigInt::from).product()
}

/// `E[p(x)]` for standard normal `x`, by Wick's theorem on each monomial.
pub fn gaussian_expectation(p: &MPoly) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        if m.exps().iter().any(|e| e % 2 == 1) {
            continue;
        }
        let w: BigInt = m.exps().iter().map(|&e| double_factorial_odd(e)).product();
        let c = c.as_scalar().expect("numeric coefficients");
        acc += &(&c * &Scalar::from_rational(BigRational::from_integer(w)));
    }
    acc
}

/// Exact `E[delta^{2k}]` at integer `k`.
pub fn mm_wick_moment(g: &ReflectionGroup, k: u32) -> Scalar {
    let d2 = {
        let d = delta(g);
        &d * &d
    };
    gaussian_expectation(&d2.pow(k))
}

/// `|W| prod_i prod_{m=1}^{d_i - 1} (k d_i + m)`.
pub fn bk_closed(degrees: &[usize], order: usize) -> IntPoly {
    let mut out = IntPoly::from_i64(&[order as i64]);
    for &d in degrees {
        for m in 1..d {
            out = &out * &IntPoly::linear(d as i64, m as i64);
        }
    }
    out
}

/// `sum_B q_B D^B p`.
fn apply_poly_of_dunkl(ctx: &DunklContext, q: &MPoly, p: &MPoly) -> Result<MPoly> {
    let mut out = MPoly::zero_in(ctx.dim());
    for (m, c) in q.terms() {
        let mut exps = m.exps().to_vec();
        exps.resize(ctx.dim(), 0);
        out = &out + &apply_dunkl_monomial(ctx, &exps, p)?.scale(c);
    }
    Ok(out)
}

/// `beta_c(p, q)`, pairing homogeneous components of equal degree.
pub fn contravariant_pairing(ctx: &DunklContext, p: &MPoly, q: &MPoly) -> Result<ParamScalar> {
    let top = p.degree().unwrap_or(0).min(q.degree().unwrap_or(0));
    let mut acc = ParamScalar::int(0);
    for d in 0..=top {
        let pd = p.homogeneous_component(d);
        let qd = q.homogeneous_component(d);
        if pd.is_zero() || qd.is_zero() {
            continue;
        }
        acc = &acc + &apply_poly_of_dunkl(ctx, &qd, &pd)?.constant_term();
    }
    Ok(acc)
}

/// `beta_c(delta, delta) = (delta(D) delta)(0)` as a polynomial in the couplings.
pub fn bk_exact_via_form(ctx: &DunklContext) -> Result<ParamScalar> {
    let mut f = delta(ctx.group());
    for r in ctx.group().reflections() {
        f = ctx.apply(&r.root, &f)?;
    }
    Ok(f.constant_term())
}

/// Substitute `c_1 = -k` in a one-parameter polynomial with integer
/// coefficients.
pub fn to_k_polynomial(b: &ParamScalar) -> Result<IntPoly> {
    let top = b.degree().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::from(0); top + 1];
    for (m, c) in b.terms() {
        if m.support_len() > 1 {
            return Err(Error::Config("expected a single parameter".into()));
        }
        let j = m.degree() as usize;
        let q = c
            .as_rational()
            .filter(|q| q.is_integer())
            .ok_or_else(|| Error::Config(format!("coefficient {c} is not an integer")))?;
        let v = q.to_integer();
        coeffs[j] = if j % 2 == 1 { -v } else { v };
    }
    Ok(IntPoly::new(coeffs))
}

/// `exp(F) p` with `F = (1/2) sum_i D_i^2`, a finite sum since `F` lowers degree.
pub fn exp_f(ctx: &DunklContext, p: &MPoly) -> Result<MPoly> {
    let mut out = p.clone();
    let mut term = p.clone();
    let mut j = 1i64;
    loop {
        term = ctx.sl2_f(&term)?.scale_scalar(&Scalar::from_ratio(1, j));
        if term.is_zero() {
            return Ok(out);
        }
        out = &out + &term;
        j += 1;
    }
}

/// `gamma_c(p, q) = beta_c(exp(F) p, exp(F) q)`.
pub fn gaussian_pairing(ctx: &DunklContext, p: &MPoly, q: &MPoly) -> Result<ParamScalar> {
    contravariant_pairing(ctx, &exp_f(ctx, p)?, &exp_f(ctx, q)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingCheck {
    pub exact: f64,
    pub mc_ratio: f64,
    pub std_error: f64,
    pub z: f64,
}

/// `gamma_{-k}(p, q)` against `E[p q |delta|^{2k}] / E[|delta|^{2k}]`.
pub fn gaussian_pairing_mc_check(
    g: &ReflectionGroup,
    k: &BigRational,
    p: &MPoly,
    q: &MPoly,
    n_samples: u64,
    seed: u64,
) -> Result<PairingCheck> {
    let c = Scalar::from_rational(-k.clone());
    let ctx = DunklContext::numeric(g, &vec![c; g.num_classes()]);
    let exact = gaussian_pairing(&ctx, p, q)?
        .as_scalar()
        .expect("numeric couplings")
        .to_f64();
    let kf = k.to_f64().expect("k fits in f64");
    let roots = roots_f64(g);
    let to_f = |f: &MPoly| -> Vec<(Vec<u16>, f64)> {
        f.terms()
            .map(|(m, c)| (m.exps().to_vec(), c.as_scalar().expect("numeric").to_f64()))
            .collect()
    };
    let (pf, qf) = (to_f(p), to_f(q));
    let eval = |terms: &[(Vec<u16>, f64)], x: &[f64]| -> f64 {
        terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, v)| v.powi(k as i32)).product::<f64>())
            .sum()
    };
    let m = sample_pairs(g.dim(), n_samples, seed, |x| {
        let w = delta_f64(&roots, x).abs().powf(2.0 * kf);
        (eval(&pf, x) * eval(&qf, x) * w, w)
    });
    // ratio estimator with delta-method error
    let r = m.mean_a / m.mean_b;
    let var = (m.m2_a - 2.0 * r * m.c_ab + r * r * m.m2_b) / (m.n - 1.0);
    let std_error = (var / m.n).sqrt() / m.mean_b;
    let z = if std_error == 0.0 { 0.0 } else { (r - exact) / std_error };
    Ok(PairingCheck {
        exact,
        mc_ratio: r,
        std_error,
        z,
    })
}
