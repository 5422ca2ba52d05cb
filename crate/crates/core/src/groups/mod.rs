//! Finite real reflection groups given by explicit matrices, and rank-one
//! cyclic complex reflection groups.

mod build;
pub mod degrees;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Coefficient, Poly, SMatrix, Scalar};

pub use build::DEFAULT_ORDER_CAP;
pub use degrees::{degree_table, DegreeTable};

/// Group spec strings: `A3`, `B2`, `D4`, `I2(6)`, `Zm:5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupSpec {
    A(usize),
    B(usize),
    D(usize),
    I2(usize),
    Cyclic(usize),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::A(n) => write!(f, "A{n}"),
            GroupSpec::B(n) => write!(f, "B{n}"),
            GroupSpec::D(n) => write!(f, "D{n}"),
            GroupSpec::I2(m) => write!(f, "I2({m})"),
            GroupSpec::Cyclic(m) => write!(f, "Zm:{m}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGroupLabel(s.to_string());
        let s = s.trim();
        if let Some(m) = s.strip_prefix("Zm:") {
            let m: usize = m.parse().map_err(|_| bad())?;
            return if m >= 2 { Ok(GroupSpec::Cyclic(m)) } else { Err(bad()) };
        }
        if let Some(rest) = s.strip_prefix("I2(") {
            let m: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            return Ok(GroupSpec::I2(m));
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match head {
            "A" => Ok(GroupSpec::A(n)),
            "B" => Ok(GroupSpec::B(n)),
            "D" => Ok(GroupSpec::D(n)),
            _ => Err(bad()),
        }
    }
}

/// One reflection with its normalized root.
#[derive(Clone, Debug)]
pub struct Reflection {
    /// Index of the reflection in the group's element list.
    pub element: usize,
    /// Positive root with `(root, root) = 2`.
    pub root: Vec<Scalar>,
    /// Coroot; equal to the root under the standard form.
    pub coroot: Vec<Scalar>,
    /// Eigenvalue on the root line.
    pub eigenvalue: i32,
    /// Conjugacy class id, numbered by first appearance among the generators.
    pub class: usize,
}

/// Finite real reflection group with all elements enumerated.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    pub(crate) label: String,
    pub(crate) dim: usize,
    pub(crate) rank: usize,
    pub(crate) radicand: u32,
    pub(crate) elements: Vec<SMatrix>,
    pub(crate) index: HashMap<SMatrix, usize>,
    pub(crate) simple_roots: Vec<Vec<Scalar>>,
    pub(crate) generators: Vec<usize>,
    pub(crate) words: Vec<Vec<usize>>,
    /// `right_mul[g][w]` is the index of `w * s_g`.
    pub(crate) right_mul: Vec<Vec<usize>>,
    /// `left_mul[g][w]` is the index of `s_g * w`.
    pub(crate) left_mul: Vec<Vec<usize>>,
    pub(crate) reflections: Vec<Reflection>,
    pub(crate) num_classes: usize,
}

impl ReflectionGroup {
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Dimension of the space the matrices act on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Radicand of the quadratic field holding every entry (1 for Q).
    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &SMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[SMatrix] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, m: &SMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn simple_roots(&self) -> &[Vec<Scalar>] {
        &self.simple_roots
    }

    /// Element indices of the simple reflections.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Canonical reduced word (lexicographically smallest) of an element,
    /// as generator positions.
    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn mul_gen_right(&self, w: usize, g: usize) -> usize {
        self.right_mul[g][w]
    }

    pub fn mul_gen_left(&self, g: usize, w: usize) -> usize {
        self.left_mul[g][w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b]
            .iter()
            .fold(a, |acc, &g| self.right_mul[g][acc])
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.words[a]
            .iter()
            .rev()
            .fold(self.identity(), |acc, &g| self.right_mul[g][acc])
    }

    /// Element for a word in generator positions.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity(), |acc, &g| self.right_mul[g][acc])
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Class id of a generator.
    pub fn generator_class(&self, g: usize) -> usize {
        let e = self.generators[g];
        self.reflections
            .iter()
            .find(|r| r.element == e)
            .map(|r| r.class)
            .expect("generators are reflections")
    }

    pub fn reflection_by_element(&self, e: usize) -> Option<&Reflection> {
        self.reflections.iter().find(|r| r.element == e)
    }

    /// Full multiplication table; intended for small groups.
    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Apply group element `g` to a vector.
    pub fn act(&self, g: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.elements[g].apply(v)
    }

    /// `f(M x)` for a matrix `M`, with `blocks` consecutive copies of the
    /// coordinates (e.g. positions and momenta) transformed simultaneously.
    pub fn pullback<C: Coefficient>(m: &SMatrix, f: &Poly<C>, blocks: usize) -> Poly<C> {
        let dim = m.rows();
        if let Some((perm, signs)) = m.as_signed_permutation() {
            // (Mx)_{perm[j]} = signs[j] x_j, so x_{perm[j]} -> signs[j] x_j
            let mut target = vec![0usize; dim * blocks];
            let mut sign = vec![1i8; dim * blocks];
            for b in 0..blocks {
                for j in 0..dim {
                    target[b * dim + perm[j]] = b * dim + j;
                    sign[b * dim + perm[j]] = signs[j];
                }
            }
            return f.signed_permute(&target, &sign);
        }
        let nv = dim * blocks;
        let images: Vec<Poly<C>> = (0..nv)
            .map(|v| {
                let (b, i) = (v / dim, v % dim);
                let mut coeffs = vec![Scalar::zero(); nv];
                for j in 0..dim {
                    coeffs[b * dim + j] = m.get(i, j).clone();
                }
                Poly::linear(&coeffs)
            })
            .collect();
        f.compose(&images).with_nvars(f.nvars().max(nv))
    }

    /// `(g . f)(x) = f(g^{-1} x)`.
    pub fn act_on_poly<C: Coefficient>(&self, g: usize, f: &Poly<C>) -> Poly<C> {
        let ginv = &self.elements[self.inverse(g)];
        Self::pullback(ginv, f, 1)
    }

    /// Elements fixing `a`.
    pub fn fixer(&self, a: &[Scalar]) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| self.elements[w].apply(a) == a)
            .collect()
    }
}

/// Rank-one cyclic group `Z/m` acting on C by `m`-th roots of unity.
///
/// Element `g^j` acts by `exp(2 pi i j / m)`; the reflections are `g^j`
/// for `j = 1..m-1`, each its own conjugacy class. Eigenvalues are kept as
/// exponents `j`, never as numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicGroup {
    pub m: usize,
}

impl CyclicGroup {
    pub fn order(&self) -> usize {
        self.m
    }

    /// Exponents `j` of the reflections `g^j` (eigenvalue `exp(2 pi i j/m)`).
    pub fn reflection_exponents(&self) -> Vec<usize> {
        (1..self.m).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        vec![self.m]
    }
}

/// Either kind of group produced by [`build_group`]. Built once per job, so
/// the size difference between variants does not matter.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Group {
    Real(ReflectionGroup),
    Cyclic(CyclicGroup),
}

impl Group {
    pub fn order(&self) -> usize {
        match self {
            Group::Real(g) => g.order(),
            Group::Cyclic(c) => c.order(),
        }
    }

    pub fn as_real(&self) -> Option<&ReflectionGroup> {
        match self {
            Group::Real(g) => Some(g),
            Group::Cyclic(_) => None,
        }
    }

    pub fn into_real(self) -> Option<ReflectionGroup> {
        match self {
            Group::Real(g) => Some(g),
            Group::Cyclic(_) => None,
        }
    }
}

pub fn build_group(spec: GroupSpec) -> Result<Group> {
    build_group_capped(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_capped(spec: GroupSpec, cap: usize) -> Result<Group> {
    build::build(spec, cap)
}

/// Build a real group; `Zm:2` is real, larger cyclic groups are not.
pub fn build_real(label: &str) -> Result<ReflectionGroup> {
    let spec: GroupSpec = label.parse()?;
    build_group(spec)?
        .into_real()
        .ok_or_else(|| Error::UnsupportedType(format!("{label} is not a real reflection group")))
}

pub use build::{from_simple_roots, standard_parabolic, stabilizer};
