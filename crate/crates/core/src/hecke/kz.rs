//! Parallel transport for the KZ connection
//! `d - sum_s c_s (d alpha_s / alpha_s) (1 - s)` of a real reflection group,
//! on the trivial bundle with fiber the regular representation, and the
//! rank-one complex case `Z/m`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::algebra::coxeter_entry;
use crate::error::{Error, Result};
use crate::groups::ReflectionGroup;
use crate::ode::{integrate, OdeOptions};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Clone, Copy, Debug)]
pub struct KzConfig {
    /// Minimal `|alpha_s(x)|` along a path.
    pub tau_sep: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Eigenvalues closer than this are merged into one cluster.
    pub cluster_tol: f64,
}

impl Default for KzConfig {
    fn default() -> Self {
        KzConfig {
            tau_sep: 1e-6,
            rtol: 1e-11,
            atol: 1e-13,
            cluster_tol: 1e-5,
        }
    }
}

/// One piece of a path in the complexified reflection representation.
#[derive(Clone, Debug)]
pub enum PathPiece {
    Segment { from: Vec<Complex64>, to: Vec<Complex64> },
    /// `x(t) = start - (amount/2)(1 - e^{i pi t}) direction`, `t in [0, 1]`:
    /// when `direction` is a coroot `alpha` with `alpha(direction) = 2` and
    /// `amount = alpha(start)`, `alpha(x(t)) = alpha(start) e^{i pi t}` runs
    /// counterclockwise half way around the hyperplane.
    HalfTurn {
        start: Vec<Complex64>,
        direction: Vec<Complex64>,
        amount: Complex64,
    },
}

impl PathPiece {
    fn point(&self, t: f64) -> Vec<Complex64> {
        match self {
            PathPiece::Segment { from, to } => from.iter().zip(to).map(|(a, b)| a + (b - a) * t).collect(),
            PathPiece::HalfTurn {
                start,
                direction,
                amount,
            } => {
                let f = amount * 0.5 * (1.0 - Complex64::from_polar(1.0, PI * t));
                start.iter().zip(direction).map(|(a, d)| a - f * d).collect()
            }
        }
    }

    fn velocity(&self, t: f64) -> Vec<Complex64> {
        match self {
            PathPiece::Segment { from, to } => from.iter().zip(to).map(|(a, b)| b - a).collect(),
            PathPiece::HalfTurn { direction, amount, .. } => {
                let f = amount * 0.5 * Complex64::new(0.0, PI) * Complex64::from_polar(1.0, PI * t);
                direction.iter().map(|d| f * d).collect()
            }
        }
    }

    pub fn reversed(&self) -> Vec<PathPiece> {
        match self {
            PathPiece::Segment { from, to } => vec![PathPiece::Segment {
                from: to.clone(),
                to: from.clone(),
            }],
            PathPiece::HalfTurn { .. } => {
                // approximate the reversed arc by a fine polyline of the same points
                let pts: Vec<Vec<Complex64>> = (0..=256).rev().map(|k| self.point(k as f64 / 256.0)).collect();
                polyline(&pts)
            }
        }
    }
}

pub fn polyline(points: &[Vec<Complex64>]) -> Vec<PathPiece> {
    points
        .windows(2)
        .map(|w| PathPiece::Segment {
            from: w[0].clone(),
            to: w[1].clone(),
        })
        .collect()
}

/// The connection data of a real reflection group.
#[derive(Clone, Debug)]
pub struct KzSystem {
    order: usize,
    roots: Vec<Vec<f64>>,
    /// `perm[g]` sends basis element `g` to `s g`, per reflection.
    perms: Vec<Vec<usize>>,
    coeffs: Vec<f64>,
    generators: Vec<usize>,
    /// Reflection indices of the simple reflections.
    simple: Vec<usize>,
    coxeter: Vec<Vec<usize>>,
    /// Left multiplication permutations of the simple reflections.
    simple_perms: Vec<Vec<usize>>,
}

fn dot(a: &[f64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| y * *x).sum()
}

fn perm_matrix(p: &[usize]) -> CMatrix {
    let n = p.len();
    let mut m = CMatrix::zeros(n, n);
    for (g, &sg) in p.iter().enumerate() {
        m[(sg, g)] = Complex64::new(1.0, 0.0);
    }
    m
}

impl KzSystem {
    /// `c` holds one value per reflection class, or a single value for all.
    pub fn new(g: &ReflectionGroup, c: &[f64]) -> Result<Self> {
        let classes = g.num_classes();
        if c.len() != classes && c.len() != 1 {
            return Err(Error::Config(format!(
                "{} has {classes} reflection classes, got {} parameters",
                g.label(),
                c.len()
            )));
        }
        let order = g.order();
        let left = |e: usize| (0..order).map(|x| g.mul(e, x)).collect::<Vec<_>>();
        let mut roots = Vec::new();
        let mut perms = Vec::new();
        let mut coeffs = Vec::new();
        for r in g.reflections() {
            roots.push(r.root.iter().map(|v| v.to_f64()).collect());
            perms.push(left(r.element));
            coeffs.push(if c.len() == 1 { c[0] } else { c[r.class] });
        }
        let simple: Vec<usize> = g
            .generators()
            .iter()
            .map(|&e| {
                g.reflections()
                    .iter()
                    .position(|r| r.element == e)
                    .expect("generators are reflections")
            })
            .collect();
        let rank = g.rank();
        let coxeter = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { 1 } else { coxeter_entry(g, i, j) }).collect())
            .collect();
        Ok(KzSystem {
            order,
            roots,
            simple_perms: simple.iter().map(|&k| perms[k].clone()).collect(),
            perms,
            coeffs,
            generators: g.generators().to_vec(),
            simple,
            coxeter,
        })
    }

    pub fn fiber_dim(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Smallest `|alpha_s(x)|` along a piece.
    fn clearance(&self, piece: &PathPiece) -> f64 {
        let mut best = f64::INFINITY;
        for root in &self.roots {
            let d = match piece {
                PathPiece::Segment { from, to } => {
                    // |a + (b - a) t| minimized over [0, 1]
                    let a = dot(root, from);
                    let v = dot(root, to) - a;
                    let t = if v.norm_sqr() == 0.0 {
                        0.0
                    } else {
                        (-(a.conj() * v).re / v.norm_sqr()).clamp(0.0, 1.0)
                    };
                    (a + v * t).norm()
                }
                PathPiece::HalfTurn { .. } => (0..=512)
                    .map(|k| dot(root, &piece.point(k as f64 / 512.0)).norm())
                    .fold(f64::INFINITY, f64::min),
            };
            best = best.min(d);
        }
        best
    }

    /// `F' = sum_s c_s (alpha_s(x')/alpha_s(x)) (F - P_s F)`.
    fn rhs(&self, piece: &PathPiece, t: f64, y: &[Complex64]) -> Vec<Complex64> {
        let n = self.order;
        let x = piece.point(t);
        let v = piece.velocity(t);
        let mut out = vec![Complex64::default(); n * n];
        for ((root, perm), &c) in self.roots.iter().zip(&self.perms).zip(&self.coeffs) {
            if c == 0.0 {
                continue;
            }
            let w = dot(root, &v) / dot(root, &x) * c;
            // column-major n x n: entry (row, col) at col * n + row
            for col in 0..n {
                for row in 0..n {
                    let f = y[col * n + row];
                    out[col * n + row] += w * f;
                    out[col * n + perm[row]] -= w * f;
                }
            }
        }
        out
    }

    /// Transport along a path: the matrix taking initial to final values of
    /// horizontal sections.
    pub fn transport(&self, path: &[PathPiece], cfg: &KzConfig) -> Result<CMatrix> {
        let n = self.order;
        let mut total = CMatrix::identity(n, n);
        for piece in path {
            let d = self.clearance(piece);
            if d < cfg.tau_sep {
                return Err(Error::HyperplaneTooClose { distance: d });
            }
            let y0: Vec<Complex64> = CMatrix::identity(n, n).as_slice().to_vec();
            let opts = OdeOptions {
                rtol: cfg.rtol,
                atol: cfg.atol,
                ..OdeOptions::default()
            };
            let states = integrate(|t, y| Ok(self.rhs(piece, t, y)), &y0, &[0.0, 1.0], opts)
                .map_err(|e| Error::ToleranceNotMet(e.to_string()))?;
            let m = CMatrix::from_column_slice(n, n, &states[1]);
            total = m * total;
        }
        Ok(total)
    }

    /// A point of the dominant chamber with `alpha_i(x) = 1` for every simple
    /// root, in the span of the roots.
    pub fn dominant_basepoint(&self) -> Vec<Complex64> {
        let r = self.rank();
        let simple: Vec<&Vec<f64>> = self.simple.iter().map(|&k| &self.roots[k]).collect();
        let gram = DMatrix::from_fn(r, r, |i, j| simple[i].iter().zip(simple[j]).map(|(a, b)| a * b).sum::<f64>());
        let coef = gram
            .lu()
            .solve(&DVector::from_element(r, 1.0))
            .expect("simple roots are independent");
        let dim = simple[0].len();
        (0..dim)
            .map(|k| Complex64::new((0..r).map(|i| coef[i] * simple[i][k]).sum(), 0.0))
            .collect()
    }

    /// The braid generator for simple reflection `i` at basepoint `x0`: the
    /// half turn from `x0` to `s_i x0`, followed by the identification of the
    /// fiber at `s_i x0` with the one at `x0` through `s_i^{-1}`.
    pub fn braid_generator(&self, i: usize, x0: &[Complex64], cfg: &KzConfig) -> Result<CMatrix> {
        let root = &self.roots[self.simple[i]];
        let direction: Vec<Complex64> = root.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        let piece = PathPiece::HalfTurn {
            start: x0.to_vec(),
            amount: dot(root, x0),
            direction,
        };
        let m = self.transport(&[piece], cfg)?;
        // s_i is an involution, so its permutation matrix is its own inverse
        Ok(perm_matrix(&self.simple_perms[i]) * m)
    }
}

pub fn kz_transport(g: &ReflectionGroup, c: &[f64], path: &[PathPiece], cfg: &KzConfig) -> Result<CMatrix> {
    KzSystem::new(g, c)?.transport(path, cfg)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenCluster {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub group: String,
    pub c: Vec<f64>,
    /// Simple reflection whose braid generator was computed (1-based).
    pub class: usize,
    pub eigenvalues: Vec<EigenCluster>,
    /// `{1, -e^{2 pi i c}}`.
    pub expected: Vec<EigenCluster>,
    /// Largest distance of an eigenvalue from the expected set.
    pub eigenvalue_error: f64,
    /// `|(T - 1)(T + q)|`, Frobenius norm, `q = e^{2 pi i c}`.
    pub relation_residual: f64,
    /// Largest braid relation residual over pairs of generators.
    pub braid_residual: f64,
    /// Whether the multiplicity of 1 is the dimension of the `s`-invariants.
    pub multiplicities_ok: bool,
}

impl MonodromyReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.eigenvalue_error <= tol && self.relation_residual <= tol && self.braid_residual <= tol && self.multiplicities_ok
    }
}

const SCHUR_MAX_ITER: usize = 10_000;

fn schur_eigenvalues(m: &CMatrix) -> Option<Vec<Complex64>> {
    nalgebra::Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER)?
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
}

pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    if let Some(v) = schur_eigenvalues(m) {
        return Ok(v);
    }
    // unshifted QR stalls on exact permutation matrices; a similarity by
    // I + N/2 (N the shift below the diagonal) breaks the symmetry
    let n = m.nrows();
    let s = CMatrix::from_fn(n, n, |r, k| {
        Complex64::new(if r == k { 1.0 } else if r == k + 1 { 0.5 } else { 0.0 }, 0.0)
    });
    let s_inv = s.clone().try_inverse().expect("unit triangular");
    schur_eigenvalues(&(&s * m * s_inv)).ok_or_else(|| Error::ToleranceNotMet("Schur form did not converge".into()))
}

fn cluster(vals: &[Complex64], tol: f64) -> Vec<EigenCluster> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &v in vals {
        match groups.iter_mut().find(|(c, _)| (c - v).norm() <= tol) {
            Some(g) => g.1 += 1,
            None => groups.push((v, 1)),
        }
    }
    groups.sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));
    groups
        .into_iter()
        .map(|(c, mult)| EigenCluster {
            re: c.re,
            im: c.im,
            mult,
        })
        .collect()
}

/// Braid generator of simple reflection `generator` (0-based): eigenvalues,
/// the Hecke relation `(T - 1)(T + q) = 0` with `q = e^{2 pi i c_s}`, and the
/// braid relations among all simple generators.
pub fn monodromy_eigencheck(
    g: &ReflectionGroup,
    c: &[f64],
    generator: usize,
    cfg: &KzConfig,
) -> Result<MonodromyReport> {
    if generator >= g.rank() {
        return Err(Error::Config(format!("generator {} out of range", generator + 1)));
    }
    let sys = KzSystem::new(g, c)?;
    let x0 = sys.dominant_basepoint();
    let gens: Vec<CMatrix> = (0..g.rank())
        .map(|i| sys.braid_generator(i, &x0, cfg))
        .collect::<Result<_>>()?;
    let t = &gens[generator];
    let n = sys.fiber_dim();
    let cs = sys.coeffs[sys.simple[generator]];
    let q = Complex64::from_polar(1.0, 2.0 * PI * cs);
    let eye = CMatrix::identity(n, n);
    let relation_residual = ((t - &eye) * (t + &eye * q)).norm();

    let vals = eigenvalues(t)?;
    let targets = [Complex64::new(1.0, 0.0), -q];
    let eigenvalue_error = vals
        .iter()
        .map(|v| targets.iter().map(|e| (v - e).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    // on the regular representation each eigenspace of s has dimension |W|/2
    let near = |e: Complex64| vals.iter().filter(|v| (*v - e).norm() <= cfg.cluster_tol).count();
    let distinct = (targets[1] - targets[0]).norm() > cfg.cluster_tol;
    let multiplicities_ok = if distinct {
        near(targets[0]) == n / 2 && near(targets[1]) == n / 2
    } else {
        near(targets[0]) == n
    };
    let expected = if distinct {
        targets.iter().map(|e| EigenCluster { re: e.re, im: e.im, mult: n / 2 }).collect()
    } else {
        vec![EigenCluster { re: 1.0, im: 0.0, mult: n }]
    };

    let mut braid_residual: f64 = 0.0;
    for i in 0..g.rank() {
        for j in i + 1..g.rank() {
            let m = sys.coxeter[i][j];
            let word = |a: usize, b: usize| {
                (1..m).fold(gens[a].clone(), |acc, k| acc * &gens[if k % 2 == 1 { b } else { a }])
            };
            braid_residual = braid_residual.max((word(i, j) - word(j, i)).norm());
        }
    }

    Ok(MonodromyReport {
        group: g.label().to_string(),
        c: c.to_vec(),
        class: generator + 1,
        eigenvalues: cluster(&vals, cfg.cluster_tol),
        expected,
        eigenvalue_error,
        relation_residual,
        braid_residual,
        multiplicities_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicMonodromyReport {
    pub group: String,
    /// `c_l` for the reflection `g^l`, `l = 1..m-1`.
    pub c: Vec<f64>,
    /// Unordered: the labelling of eigenvalues by characters is a convention.
    pub eigenvalues: Vec<EigenCluster>,
    /// `exp(2 pi i j/m) exp(2 pi i b_j/m)`, `j = 0..m-1`.
    pub expected: Vec<EigenCluster>,
    pub eigenvalue_error: f64,
    /// `|prod_j (T - expected_j)|`, Frobenius norm.
    pub relation_residual: f64,
}

impl CyclicMonodromyReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.eigenvalue_error <= tol && self.relation_residual <= tol
    }
}

/// `b_j = 2 sum_l c_l (1 - e^{2 pi i j l/m}) / (1 - e^{-2 pi i l/m})`, the
/// residue of the connection on the `j`-th character of `Z/m`.
pub fn cyclic_residue(m: usize, c: &[f64], j: usize) -> Complex64 {
    let e = |x: f64| Complex64::from_polar(1.0, 2.0 * PI * x);
    (1..m)
        .map(|l| {
            let cl = if c.len() == 1 { c[0] } else { c[l - 1] };
            2.0 * cl * (1.0 - e((j * l) as f64 / m as f64)) / (1.0 - e(-(l as f64) / m as f64))
        })
        .sum()
}

/// Rank one, `W = Z/m` acting on `C` by `e^{2 pi i/m}`, one coupling per
/// reflection `g^l` or one for all. The generator of the braid group is
/// transport along the arc from `1` to `e^{2 pi i/m}` followed by `g`.
pub fn cyclic_monodromy(m: usize, c: &[f64], cfg: &KzConfig) -> Result<CyclicMonodromyReport> {
    if m < 2 {
        return Err(Error::Config(format!("Z/m needs m >= 2, got {m}")));
    }
    if c.len() != 1 && c.len() != m - 1 {
        return Err(Error::Config(format!("Zm:{m} has {} reflections, got {} parameters", m - 1, c.len())));
    }
    let coupling = |l: usize| if c.len() == 1 { c[0] } else { c[l - 1] };
    // residue matrix sum_l 2 c_l / (1 - e^{-2 pi i l/m}) (1 - P_l), P_l e_k = e_{k+l}
    let mut res = CMatrix::zeros(m, m);
    for l in 1..m {
        let w = 2.0 * coupling(l) / (1.0 - Complex64::from_polar(1.0, -2.0 * PI * l as f64 / m as f64));
        for k in 0..m {
            res[(k, k)] += w;
            res[((k + l) % m, k)] -= w;
        }
    }
    // along x(t) = e^{2 pi i t/m}: dx/x = (2 pi i/m) dt
    let speed = Complex64::new(0.0, 2.0 * PI / m as f64);
    let opts = OdeOptions {
        rtol: cfg.rtol,
        atol: cfg.atol,
        ..OdeOptions::default()
    };
    let y0: Vec<Complex64> = CMatrix::identity(m, m).as_slice().to_vec();
    let states = integrate(
        |_, y| {
            let f = CMatrix::from_column_slice(m, m, y);
            Ok((&res * f * speed).as_slice().to_vec())
        },
        &y0,
        &[0.0, 1.0],
        opts,
    )
    .map_err(|e| Error::ToleranceNotMet(e.to_string()))?;
    let transport = CMatrix::from_column_slice(m, m, &states[1]);
    let shift = CMatrix::from_fn(m, m, |r, k| Complex64::new(if r == (k + 1) % m { 1.0 } else { 0.0 }, 0.0));
    let t = shift * transport;

    let targets: Vec<Complex64> = (0..m)
        .map(|j| {
            let b = cyclic_residue(m, c, j);
            Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64) * (Complex64::new(0.0, 2.0 * PI) * b / m as f64).exp()
        })
        .collect();
    let vals = eigenvalues(&t)?;
    let eigenvalue_error = vals
        .iter()
        .map(|v| targets.iter().map(|e| (v - e).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let eye = CMatrix::identity(m, m);
    let relation = targets.iter().fold(eye.clone(), |acc, &q| acc * (&t - &eye * q));
    Ok(CyclicMonodromyReport {
        group: format!("Zm:{m}"),
        c: (1..m).map(coupling).collect(),
        eigenvalues: cluster(&vals, cfg.cluster_tol),
        expected: cluster(&targets, cfg.cluster_tol),
        eigenvalue_error,
        relation_residual: relation.norm(),
    })
}
