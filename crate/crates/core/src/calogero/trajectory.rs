//! Solutions of the Calogero-Moser system two ways: as eigenvalues of
//! `X_0 + 2t Y_0`, and by integrating Hamilton's equations for
//! `H = sum p_i^2 - g^2 sum_{i != j} 1/(x_i - x_j)^2`.

use nalgebra::DVector;
use num_complex::Complex64;

use super::{min_separation, xi_map, CMatrix, CmConfig, CoordChart};
use crate::error::{Error, Result};
use crate::ode::{integrate, OdeOptions};

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub x: Vec<Vec<Complex64>>,
    pub p: Vec<Vec<Complex64>>,
    /// `Tr Y^j`, `j = 1..=n`, at each time.
    pub h: Vec<Vec<Complex64>>,
    /// `Tr Y^2` at each time.
    pub energy: Vec<Complex64>,
    /// Grid indices where two particles come closer than `tau_sep`.
    pub collisions: Vec<usize>,
}

impl Trajectory {
    pub fn n(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }

    /// `max_t |E(t) - E(0)| / |E(0)|` (absolute when `E(0) = 0`).
    pub fn energy_drift(&self) -> f64 {
        let Some(e0) = self.energy.first() else { return 0.0 };
        let scale = if e0.norm() > 0.0 { e0.norm() } else { 1.0 };
        self.energy.iter().map(|e| (e - e0).norm() / scale).fold(0.0, f64::max)
    }

    pub fn max_position_deviation(&self, other: &Trajectory) -> f64 {
        self.x
            .iter()
            .zip(&other.x)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(u, v)| (u - v).norm()))
            .fold(0.0, f64::max)
    }

    pub fn csv_header(&self) -> Vec<String> {
        let n = self.n();
        let mut h = vec!["t".to_string()];
        for prefix in ["x", "p", "H"] {
            h.extend((1..=n).map(|i| format!("{prefix}{i}")));
        }
        h
    }

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        (0..self.times.len())
            .map(|k| {
                let mut row = vec![self.times[k].to_string()];
                for v in self.x[k].iter().chain(&self.p[k]).chain(&self.h[k]) {
                    row.push(format_complex(*v));
                }
                row
            })
            .collect()
    }
}

/// Real part alone when the imaginary part is negligible, else `a+bi`.
pub fn format_complex(z: Complex64) -> String {
    if z.im.abs() <= 1e-12 * z.re.abs().max(1.0) {
        z.re.to_string()
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn traces_from_chart(x: &[Complex64], p: &[Complex64], coupling: f64) -> (Vec<Complex64>, Complex64) {
    let chart = CoordChart {
        x: x.to_vec(),
        p: p.to_vec(),
    };
    match xi_map(&chart, coupling) {
        Ok(pt) => {
            let h = pt.hamiltonians();
            let e = (&pt.y * &pt.y).trace();
            (h, e)
        }
        Err(_) => {
            let nan = Complex64::new(f64::NAN, f64::NAN);
            (vec![nan; x.len()], nan)
        }
    }
}

/// Assignment of `next` to `prev` minimizing the total displacement;
/// returns `next` reordered.
fn match_min_displacement(prev: &[Complex64], next: &[Complex64]) -> Vec<Complex64> {
    let n = prev.len();
    let full = (1usize << n) - 1;
    let mut cost = vec![f64::INFINITY; 1 << n];
    let mut choice = vec![usize::MAX; 1 << n];
    cost[0] = 0.0;
    for mask in 0..full {
        if !cost[mask].is_finite() {
            continue;
        }
        let i = mask.count_ones() as usize;
        for j in (0..n).filter(|j| mask & (1 << j) == 0) {
            let m2 = mask | (1 << j);
            let c = cost[mask] + (prev[i] - next[j]).norm();
            if c < cost[m2] {
                cost[m2] = c;
                choice[m2] = j;
            }
        }
    }
    let mut out = vec![Complex64::default(); n];
    let mut mask = full;
    for i in (0..n).rev() {
        let j = choice[mask];
        out[i] = next[j];
        mask &= !(1 << j);
    }
    out
}

fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    m.clone()
        .schur()
        .eigenvalues()
        .map(|v: DVector<Complex64>| v.iter().copied().collect())
        .ok_or_else(|| Error::Config("Schur form did not converge".into()))
}

/// Right null vector of `X_t - lambda`.
fn eigenvector(xt: &CMatrix, lambda: Complex64) -> DVector<Complex64> {
    let n = xt.nrows();
    let svd = (xt - CMatrix::identity(n, n) * lambda).svd(false, true);
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .expect("nonempty");
    svd.v_t.expect("requested").row(k).adjoint()
}

/// `x_i'(t)/2`: with `X_t = V diag(x) V^{-1}`, the derivative of the
/// eigenvalues along `2 Y_0` is twice the diagonal of `V^{-1} Y_0 V`.
fn hellmann_feynman_momenta(xt: &CMatrix, y0: &CMatrix, xs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = xs.len();
    let mut v = CMatrix::zeros(n, n);
    for (i, &l) in xs.iter().enumerate() {
        v.set_column(i, &eigenvector(xt, l));
    }
    let inv = v
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Config("eigenvectors are not independent".into()))?;
    let d = inv * y0 * v;
    Ok((0..n).map(|i| d[(i, i)]).collect())
}

/// Positions as eigenvalues of `X_0 + 2t Y_0`, tracked from the initial
/// labelling by minimal total displacement; momenta from first-order
/// eigenvalue perturbation.
pub fn trajectories_spectral(chart0: &CoordChart, t_grid: &[f64], cfg: &CmConfig) -> Result<Trajectory> {
    let pt = xi_map(chart0, cfg.coupling)?;
    let (x0, y0) = (pt.x, pt.y);
    let mut traj = Trajectory {
        times: t_grid.to_vec(),
        x: Vec::new(),
        p: Vec::new(),
        h: Vec::new(),
        energy: Vec::new(),
        collisions: Vec::new(),
    };
    let mut prev = chart0.x.clone();
    for (k, &t) in t_grid.iter().enumerate() {
        let xt = &x0 + &y0 * Complex64::new(2.0 * t, 0.0);
        let xs = match_min_displacement(&prev, &eigenvalues(&xt)?);
        if min_separation(&xs) < cfg.tau_sep {
            traj.collisions.push(k);
        }
        let ps = if traj.collisions.last() == Some(&k) {
            vec![Complex64::new(f64::NAN, f64::NAN); xs.len()]
        } else {
            hellmann_feynman_momenta(&xt, &y0, &xs)?
        };
        let (h, e) = traces_from_chart(&xs, &ps, cfg.coupling);
        traj.h.push(h);
        traj.energy.push(e);
        prev = xs.clone();
        traj.x.push(xs);
        traj.p.push(ps);
    }
    Ok(traj)
}

/// Hamilton's equations `x' = 2p`, `p_i' = -4 g^2 sum_{j != i} 1/(x_i - x_j)^3`.
pub fn trajectories_ode(chart0: &CoordChart, t_grid: &[f64], cfg: &CmConfig) -> Result<Trajectory> {
    let n = chart0.n();
    let g2 = cfg.coupling * cfg.coupling;
    let rhs = |t: f64, y: &[Complex64]| -> Result<Vec<Complex64>> {
        let (x, p) = y.split_at(n);
        if min_separation(x) < cfg.tau_sep {
            return Err(Error::StepFailure { t });
        }
        let mut out = Vec::with_capacity(2 * n);
        out.extend(p.iter().map(|v| v * 2.0));
        for i in 0..n {
            let mut f = Complex64::default();
            for j in (0..n).filter(|&j| j != i) {
                let d = x[i] - x[j];
                f += (d * d * d).inv();
            }
            out.push(f * (-4.0 * g2));
        }
        Ok(out)
    };
    let y0: Vec<Complex64> = chart0.x.iter().chain(&chart0.p).copied().collect();
    let opts = OdeOptions {
        rtol: cfg.rtol,
        atol: cfg.atol,
        ..OdeOptions::default()
    };
    let states = integrate(rhs, &y0, t_grid, opts)?;
    let mut traj = Trajectory {
        times: t_grid.to_vec(),
        x: Vec::new(),
        p: Vec::new(),
        h: Vec::new(),
        energy: Vec::new(),
        collisions: Vec::new(),
    };
    for s in states {
        let (x, p) = s.split_at(n);
        let (h, e) = traces_from_chart(x, p, cfg.coupling);
        traj.h.push(h);
        traj.energy.push(e);
        traj.x.push(x.to_vec());
        traj.p.push(p.to_vec());
    }
    Ok(traj)
}
