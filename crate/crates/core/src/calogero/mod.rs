//! The Calogero-Moser space `{(X, Y) : XY - YX + 1 has rank one}`, the
//! coordinate chart `xi`, the flows `X -> X + i t Y^{i-1}`, trajectories of
//! the Calogero-Moser system and its Poisson structure.

pub mod necklace;
pub mod poisson;
pub mod trajectory;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

pub use necklace::{
    necklace_bracket_check, necklace_formula, necklace_numeric, necklace_random_words_check, NecklaceReport, Word,
};
pub use poisson::{coordinate_poisson_check, PoissonReport};
pub use trajectory::{trajectories_ode, trajectories_spectral, Trajectory};

pub type CMatrix = DMatrix<Complex64>;

/// Tolerances shared by the Calogero-Moser computations.
#[derive(Clone, Copy, Debug)]
pub struct CmConfig {
    /// Minimal particle separation.
    pub tau_sep: f64,
    /// Rank threshold, relative to the norm of `XY - YX + g`.
    pub tau_rank: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Coupling `g`: `y_ij = g/(x_i - x_j)` and `H = sum p^2 - g^2 sum 1/(x_i - x_j)^2`.
    pub coupling: f64,
}

impl Default for CmConfig {
    fn default() -> Self {
        CmConfig {
            tau_sep: 1e-8,
            tau_rank: 1e-8,
            rtol: 1e-10,
            atol: 1e-12,
            coupling: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CMPoint {
    pub x: CMatrix,
    pub y: CMatrix,
    pub coupling: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoordChart {
    pub x: Vec<Complex64>,
    pub p: Vec<Complex64>,
}

pub fn min_separation(x: &[Complex64]) -> f64 {
    let mut sep = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            sep = sep.min((x[i] - x[j]).norm());
        }
    }
    sep
}

impl CoordChart {
    pub fn new(x: Vec<Complex64>, p: Vec<Complex64>, tau_sep: f64) -> Result<Self> {
        if x.len() != p.len() || x.is_empty() {
            return Err(Error::Config("x and p must have the same positive length".into()));
        }
        let sep = min_separation(&x);
        if sep <= tau_sep {
            return Err(Error::SeparationTooSmall { sep });
        }
        Ok(CoordChart { x, p })
    }

    pub fn real(x: &[f64], p: &[f64]) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Self::new(c(x), c(p), CmConfig::default().tau_sep)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }
}

/// `X = diag(x)`, `y_ij = g/(x_i - x_j)`, `y_ii = p_i`.
pub fn xi_map(chart: &CoordChart, coupling: f64) -> Result<CMPoint> {
    let n = chart.n();
    let sep = min_separation(&chart.x);
    if sep <= CmConfig::default().tau_sep {
        return Err(Error::SeparationTooSmall { sep });
    }
    let x = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(chart.x.clone()));
    let y = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            chart.p[i]
        } else {
            Complex64::new(coupling, 0.0) / (chart.x[i] - chart.x[j])
        }
    });
    Ok(CMPoint { x, y, coupling })
}

impl CMPoint {
    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    /// `XY - YX + g`.
    pub fn moment(&self) -> CMatrix {
        let n = self.n();
        &self.x * &self.y - &self.y * &self.x + CMatrix::identity(n, n) * Complex64::new(self.coupling, 0.0)
    }

    /// `Tr Y^j` for `j = 1..=n`.
    pub fn hamiltonians(&self) -> Vec<Complex64> {
        let mut pow = self.y.clone();
        let mut out = Vec::with_capacity(self.n());
        for _ in 0..self.n() {
            out.push(pow.trace());
            pow = &pow * &self.y;
        }
        out
    }

    /// `(X + i t Y^{i-1}, Y)`.
    pub fn flow(&self, i: u32, t: f64) -> CMPoint {
        assert!(i >= 1, "flows are indexed from 1");
        let n = self.n();
        let mut pow = CMatrix::identity(n, n);
        for _ in 1..i {
            pow = &pow * &self.y;
        }
        CMPoint {
            x: &self.x + pow * Complex64::new(i as f64 * t, 0.0),
            y: self.y.clone(),
            coupling: self.coupling,
        }
    }

    /// `(g X g^{-1}, g Y g^{-1})`.
    pub fn conjugate(&self, g: &CMatrix) -> Option<CMPoint> {
        let inv = g.clone().try_inverse()?;
        Some(CMPoint {
            x: g * &self.x * &inv,
            y: g * &self.y * &inv,
            coupling: self.coupling,
        })
    }
}

/// Singular values of a complex matrix, largest first.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Second largest singular value of `XY - YX + g`; zero on the variety.
pub fn rank_one_residual(p: &CMPoint) -> f64 {
    singular_values(&p.moment()).get(1).copied().unwrap_or(0.0)
}

/// Numerical rank of `XY - YX + g` with the relative threshold `tau_rank`.
pub fn moment_rank(p: &CMPoint, tau_rank: f64) -> usize {
    let s = singular_values(&p.moment());
    let top = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&v| v > tau_rank * top).count()
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Real initial data with particles about 1.5 apart and momenta growing along
/// the line. The real-data interaction is attractive, so spreading momenta
/// keep such data collision free on `[0, 1]` in practice.
pub fn sample_real_chart(n: usize, seed: u64) -> Result<CoordChart> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<f64> = (0..n).map(|i| i as f64 * 1.5 + normal(&mut rng) * 0.3).collect();
    let p: Vec<f64> = (0..n).map(|i| i as f64 * 1.5 + normal(&mut rng) * 0.2).collect();
    CoordChart::real(&x, &p)
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Largest rank-one residual over flows `1..=n` at `t in {0, 0.1, .., 1}`
    /// and one random conjugation per sample.
    pub max_rank_one_residual: f64,
    /// `Tr Y^j` bitwise unchanged along every flow.
    pub hamiltonians_constant: bool,
}

impl FlowReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.hamiltonians_constant && self.max_rank_one_residual <= tol
    }
}

/// Flows and conjugations of `xi` images of random real data.
pub fn flow_invariance_check(n: usize, samples: usize, seed: u64) -> Result<FlowReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut constant = true;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|i| i as f64 * 1.5 + normal(&mut rng) * 0.3).collect();
        let p: Vec<f64> = (0..n).map(|_| normal(&mut rng)).collect();
        let pt = xi_map(&CoordChart::real(&x, &p)?, 1.0)?;
        let h0 = pt.hamiltonians();
        for i in 1..=n as u32 {
            for k in 0..=10 {
                let q = pt.flow(i, k as f64 / 10.0);
                constant &= q.hamiltonians() == h0;
                worst = worst.max(rank_one_residual(&q));
            }
        }
        let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(&mut rng), normal(&mut rng)));
        let q = pt
            .conjugate(&g)
            .ok_or_else(|| Error::Config("singular conjugating matrix".into()))?;
        worst = worst.max(rank_one_residual(&q));
    }
    Ok(FlowReport {
        n,
        samples,
        seed,
        max_rank_one_residual: worst,
        hamiltonians_constant: constant,
    })
}
