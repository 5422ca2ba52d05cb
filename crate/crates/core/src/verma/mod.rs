//! Graded pieces of the polynomial standard module: the contravariant form,
//! singular vectors, the maximal proper submodule, rank-one spectra, the
//! type-A finite-dimensional quotients and characters.

pub mod character;
pub mod rank1;
pub mod type_a;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::exact::linalg::{nullspace, rank, rref};
use crate::exact::{monomials_of_degree, MPoly, Monomial, ParamScalar, Scalar};

pub use character::{character_verma, LowestWeight, VermaCharacter};
pub use rank1::{rank1_b, rank1_b_float, rank1_spectrum, Rank1Spectrum};
pub use type_a::{
    power_condition, typea_expected_hilbert, typea_quotient, typea_singular_vectors, typea_support_membership,
    TypeAQuotient,
};

/// Degree-`d` polynomials in `nvars` variables with the monomial basis,
/// ordered graded-lex descending.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub nvars: usize,
    pub degree: u32,
    pub basis: Vec<Monomial>,
}

impl GradedPiece {
    pub fn new(nvars: usize, degree: u32) -> Self {
        GradedPiece {
            nvars,
            degree,
            basis: monomials_of_degree(nvars, degree),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn position(&self) -> BTreeMap<&Monomial, usize> {
        self.basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// Coordinates of a homogeneous polynomial with numeric coefficients.
    pub fn coords(&self, f: &MPoly) -> Result<Vec<Scalar>> {
        let pos = self.position();
        let mut v = vec![Scalar::zero(); self.dim()];
        for (m, c) in f.terms() {
            let i = *pos
                .get(m)
                .ok_or_else(|| Error::Config(format!("term {m:?} is not of degree {}", self.degree)))?;
            v[i] = numeric(c)?;
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[Scalar]) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.basis
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), ParamScalar::scalar(c.clone()))),
        )
    }
}

fn numeric(c: &ParamScalar) -> Result<Scalar> {
    c.as_scalar()
        .ok_or_else(|| Error::Config("numeric couplings required".into()))
}

/// `beta_c(m_i, m_j)` on a graded piece.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub piece: GradedPiece,
    pub entries: Vec<Vec<ParamScalar>>,
}

impl GramMatrix {
    pub fn degree(&self) -> u32 {
        self.piece.degree
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn substitute(&self, values: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(values)).collect())
            .collect()
    }

    pub fn rank_at(&self, values: &[Scalar]) -> usize {
        rank(&self.substitute(values))
    }

    pub fn kernel_at(&self, values: &[Scalar]) -> Vec<MPoly> {
        nullspace(&self.substitute(values), self.piece.dim())
            .iter()
            .map(|v| self.piece.from_coords(v))
            .collect()
    }
}

/// `D^B p` for every monomial `B` of degree `d`, sharing prefixes.
fn dunkl_images(ctx: &DunklContext, p: &MPoly, d: u32) -> Result<BTreeMap<Monomial, MPoly>> {
    let n = ctx.dim();
    let mut level: BTreeMap<Monomial, MPoly> = BTreeMap::new();
    level.insert(Monomial::one(), p.clone());
    for k in 1..=d {
        let mut next = BTreeMap::new();
        for b in monomials_of_degree(n, k) {
            let i = (0..n).find(|&i| b.exp(i) > 0).expect("positive degree");
            let prev = b.div(&Monomial::var(i)).expect("divisible");
            next.insert(b, ctx.apply_basis(i, &level[&prev])?);
        }
        level = next;
    }
    Ok(level)
}

/// Gram matrix of the contravariant form, `beta_c(p, q) = (q(D) p)(0)`,
/// on the degree-`d` piece of the polynomial representation.
pub fn contravariant_gram(ctx: &DunklContext, d: u32) -> Result<GramMatrix> {
    let piece = GradedPiece::new(ctx.dim(), d);
    let mut entries = Vec::with_capacity(piece.dim());
    for a in &piece.basis {
        let p = MPoly::term(ctx.dim(), a.clone(), ParamScalar::int(1));
        let images = dunkl_images(ctx, &p, d)?;
        entries.push(piece.basis.iter().map(|b| images[b].constant_term()).collect());
    }
    Ok(GramMatrix { piece, entries })
}

/// Rows of the stacked maps `D_i`: degree `d` to degree `d - 1`.
fn dunkl_rows(ctx: &DunklContext, d: u32) -> Result<(GradedPiece, Vec<Vec<Vec<Scalar>>>)> {
    let source = GradedPiece::new(ctx.dim(), d);
    let target = GradedPiece::new(ctx.dim(), d - 1);
    // columns[i][j] = coordinates of D_i m_j
    let mut maps = Vec::with_capacity(ctx.dim());
    for i in 0..ctx.dim() {
        let mut cols = Vec::with_capacity(source.dim());
        for m in &source.basis {
            let f = MPoly::term(ctx.dim(), m.clone(), ParamScalar::int(1));
            cols.push(target.coords(&ctx.apply_basis(i, &f)?)?);
        }
        maps.push(cols);
    }
    Ok((source, maps))
}

/// Homogeneous degree-`d` vectors killed by every Dunkl operator.
pub fn singular_vectors(ctx: &DunklContext, d: u32) -> Result<Vec<MPoly>> {
    if d == 0 {
        return Ok(vec![ctx.one()]);
    }
    let (source, maps) = dunkl_rows(ctx, d)?;
    let tdim = GradedPiece::new(ctx.dim(), d - 1).dim();
    let mut rows = Vec::new();
    for cols in &maps {
        for t in 0..tdim {
            rows.push(cols.iter().map(|c| c[t].clone()).collect::<Vec<_>>());
        }
    }
    Ok(nullspace(&rows, source.dim())
        .iter()
        .map(|v| source.from_coords(v))
        .collect())
}

/// Dimensions of the maximal proper submodule `J_c` in degrees `0..=max_degree`,
/// from `J_d = {v : D_i v in J_{d-1} for all i}` with `J_0 = 0`.
pub fn submodule_dims(ctx: &DunklContext, max_degree: u32) -> Result<Vec<usize>> {
    let mut dims = vec![0];
    // rref basis of J_{d-1} in coordinates of degree d-1, with pivots
    let mut prev: Vec<Vec<Scalar>> = Vec::new();
    let mut prev_pivots: Vec<usize> = Vec::new();
    for d in 1..=max_degree {
        let (source, maps) = dunkl_rows(ctx, d)?;
        let tdim = GradedPiece::new(ctx.dim(), d - 1).dim();
        let mut rows = Vec::new();
        for cols in &maps {
            let reduced: Vec<Vec<Scalar>> = cols
                .iter()
                .map(|c| {
                    let mut v = c.clone();
                    for (row, &p) in prev.iter().zip(&prev_pivots) {
                        if !v[p].is_zero() {
                            let f = v[p].clone();
                            for (x, y) in v.iter_mut().zip(row) {
                                if !y.is_zero() {
                                    *x = &*x - &(&f * y);
                                }
                            }
                        }
                    }
                    v
                })
                .collect();
            for t in (0..tdim).filter(|t| !prev_pivots.contains(t)) {
                rows.push(reduced.iter().map(|c| c[t].clone()).collect::<Vec<_>>());
            }
        }
        let mut basis = nullspace(&rows, source.dim());
        dims.push(basis.len());
        prev_pivots = rref(&mut basis);
        prev = basis;
    }
    Ok(dims)
}

/// Graded dimensions of `L_c = M_c / J_c` if it vanishes by `cap`.
pub fn terminating_quotient(ctx: &DunklContext, cap: u32) -> Result<Option<Vec<usize>>> {
    let j = submodule_dims(ctx, cap)?;
    let mut out = Vec::new();
    for (d, &jd) in j.iter().enumerate() {
        let q = GradedPiece::new(ctx.dim(), d as u32).dim() - jd;
        if q == 0 {
            return Ok(Some(out));
        }
        out.push(q);
    }
    Ok(None)
}

/// `{group, tau, c, degree, gram_rank, singular_dim}`.
#[derive(Clone, Debug, Serialize)]
pub struct VermaReport {
    pub group: String,
    pub tau: String,
    pub c: String,
    pub degree: u32,
    pub gram_rank: usize,
    pub singular_dim: usize,
}

/// Gram rank and singular-vector count for numeric couplings.
pub fn verma_report(ctx: &DunklContext, c_label: &str, d: u32) -> Result<VermaReport> {
    let gram = contravariant_gram(ctx, d)?;
    Ok(VermaReport {
        group: ctx.group().label().to_string(),
        tau: "trivial".into(),
        c: c_label.to_string(),
        degree: d,
        gram_rank: gram.rank_at(&[]),
        singular_dim: singular_vectors(ctx, d)?.len(),
    })
}
