//! Rewriting words in the simple reflections to the canonical reduced words
//! `w(x)`, in the deformed group algebra `A(W)` or in `H_q(W)`.
//!
//! `A(W)` has `s_i^2 = 1` and `prod_k (s_i s_j - t_{ij,k}) = 0`, and every
//! `s_p` swaps `t_{ij,k}` with `t_{ji,k}`. Only the elementary symmetric
//! functions `e_r(t_{ij,.})` enter the rewriting, so those are the
//! parameters: one per ordered pair `(i, j)` and `1 <= r <= m_ij`.
//!
//! Expanding the relation in `a = s_i s_j` (which commutes with the `t_{ij}`)
//! and multiplying by a power of `a` gives the deformed braid move
//! `P_i(m) = t_{ij} P_j(m) + (shorter terms)`, where `P_i(m) = s_i s_j s_i...`
//! has `m` letters and `t_{ij} = (-1)^(m+1) e_m(t_{ij,.})`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use super::algebra::coxeter_entry;
use crate::error::{Error, Result};
use crate::exact::{ParamScalar, Scalar};
use crate::groups::ReflectionGroup;

pub const DEFAULT_MOVE_CAP: usize = 200_000;

/// A word in the simple reflections, as generator positions.
pub type Word = Vec<usize>;

fn alternating(i: usize, j: usize, len: usize) -> Word {
    (0..len).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    group: ReflectionGroup,
    coxeter: Vec<Vec<usize>>,
    nparams: usize,
    /// `e_0..e_m` of `t_{ij,.}` per ordered pair.
    braid: HashMap<(usize, usize), Vec<ParamScalar>>,
    /// `s^2 = alpha s + beta`.
    alpha: ParamScalar,
    beta: ParamScalar,
    /// Action of any `s_p` on the parameters, as a variable permutation.
    swap: Vec<usize>,
    /// Index of `e_1(t_{ij,.})` per ordered pair; empty for `H_q(W)`.
    param_start: HashMap<(usize, usize), usize>,
    pub move_cap: usize,
}

/// Coefficients of the canonical words.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub terms: BTreeMap<usize, ParamScalar>,
    pub moves: usize,
}

impl NormalForm {
    pub fn substitute(&self, values: &[Scalar]) -> BTreeMap<usize, Scalar> {
        self.terms
            .iter()
            .map(|(&w, c)| (w, c.substitute(values)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

fn classical_e(m: usize, r: usize) -> Scalar {
    if r == 0 {
        Scalar::one()
    } else if r == m {
        Scalar::from_int(if m % 2 == 1 { 1 } else { -1 })
    } else {
        Scalar::zero()
    }
}

impl RewriteSystem {
    fn coxeter_matrix(group: &ReflectionGroup) -> Vec<Vec<usize>> {
        let r = group.rank();
        (0..r)
            .map(|i| (0..r).map(|j| if i == j { 1 } else { coxeter_entry(group, i, j) }).collect())
            .collect()
    }

    /// `A(W)` with a free parameter for each `e_r(t_{ij,.})`.
    pub fn deformed(group: ReflectionGroup) -> Self {
        let coxeter = Self::coxeter_matrix(&group);
        let r = group.rank();
        let mut index = HashMap::new();
        let mut nparams = 0;
        for (i, row) in coxeter.iter().enumerate() {
            for j in (0..r).filter(|&j| j != i) {
                index.insert((i, j), nparams);
                nparams += row[j];
            }
        }
        let mut braid = HashMap::new();
        let mut swap = vec![0; nparams];
        for (&(i, j), &start) in &index {
            let m = coxeter[i][j];
            let mut e = vec![ParamScalar::int(1)];
            e.extend((0..m).map(|k| ParamScalar::param(nparams, start + k)));
            braid.insert((i, j), e);
            let other = index[&(j, i)];
            for k in 0..m {
                swap[start + k] = other + k;
            }
        }
        RewriteSystem {
            group,
            coxeter,
            nparams,
            braid,
            alpha: ParamScalar::int(0),
            beta: ParamScalar::int(1),
            swap,
            param_start: index,
            move_cap: DEFAULT_MOVE_CAP,
        }
    }

    /// `H_q(W)`: undeformed braid relations and `(T - 1)(T + q) = 0`, with
    /// `q` the only parameter.
    pub fn hecke(group: ReflectionGroup) -> Self {
        let coxeter = Self::coxeter_matrix(&group);
        let r = group.rank();
        let mut braid = HashMap::new();
        for (i, row) in coxeter.iter().enumerate() {
            for j in (0..r).filter(|&j| j != i) {
                let m = row[j];
                braid.insert((i, j), (0..=m).map(|k| ParamScalar::scalar(classical_e(m, k))).collect());
            }
        }
        let q = ParamScalar::param(1, 0);
        RewriteSystem {
            group,
            coxeter,
            nparams: 1,
            braid,
            alpha: &ParamScalar::int(1) - &q,
            beta: q,
            swap: vec![0],
            param_start: HashMap::new(),
            move_cap: DEFAULT_MOVE_CAP,
        }
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn coxeter(&self, i: usize, j: usize) -> usize {
        self.coxeter[i][j]
    }

    /// The parameter `e_r(t_{ij,.})`, `1 <= r <= m_ij`.
    pub fn parameter(&self, i: usize, j: usize, r: usize) -> Option<&ParamScalar> {
        self.braid.get(&(i, j)).and_then(|e| e.get(r)).filter(|_| r > 0)
    }

    /// `t_{ij} = (-1)^(m+1) e_m(t_{ij,.})`, the leading coefficient of the
    /// deformed braid move `P_i(m) -> t_{ij} P_j(m)`.
    pub fn leading_coefficient(&self, i: usize, j: usize) -> ParamScalar {
        let m = self.coxeter[i][j];
        let e = &self.braid[&(i, j)][m];
        if m % 2 == 1 {
            e.clone()
        } else {
            e.neg()
        }
    }

    /// Values making the algebra the group algebra. For `A(W)` these are
    /// `t_{ij,k} = exp(2 pi i k/m_ij)`, so `e_r = 0` for `0 < r < m` and
    /// `e_m = (-1)^(m+1)`; for `H_q(W)` it is `q = 1`.
    pub fn classical_values(&self) -> Vec<Scalar> {
        if self.param_start.is_empty() {
            return vec![Scalar::one(); self.nparams];
        }
        let mut values = vec![Scalar::zero(); self.nparams];
        for (&(i, j), &start) in &self.param_start {
            let m = self.coxeter[i][j];
            for r in 1..=m {
                values[start + r - 1] = classical_e(m, r);
            }
        }
        values
    }

    fn act(&self, c: &ParamScalar, letters: usize) -> ParamScalar {
        if letters.is_multiple_of(2) || self.nparams == 0 {
            c.clone()
        } else {
            c.signed_permute(&self.swap, &vec![1; self.nparams])
        }
    }

    /// Right-hand side of `P_i(m) = t_{ij} P_j(m) + ...`.
    fn braid_move(&self, i: usize, j: usize) -> Vec<(ParamScalar, Word)> {
        let m = self.coxeter[i][j];
        let e = &self.braid[&(i, j)];
        let h = m / 2;
        let mut out = vec![(self.leading_coefficient(i, j), alternating(j, i, m))];
        for l in 1..m {
            let c = &e[m - l];
            if c.is_zero() {
                continue;
            }
            let c = if (m - l).is_multiple_of(2) { c.neg() } else { c.clone() };
            let word = if m.is_multiple_of(2) {
                let r = l as isize - h as isize;
                match r.signum() {
                    1 => alternating(i, j, 2 * r as usize),
                    -1 => alternating(j, i, 2 * (-r) as usize),
                    _ => Vec::new(),
                }
            } else {
                let r = l as isize - h as isize - 1;
                if r >= 0 {
                    alternating(i, j, 2 * r as usize + 1)
                } else {
                    alternating(j, i, 2 * (-r) as usize - 1)
                }
            };
            out.push((c, word));
        }
        out
    }

    fn braid_neighbors(&self, w: &[usize]) -> Vec<(usize, usize, usize, Word)> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            let i = w[pos];
            for j in (0..self.group.rank()).filter(|&j| j != i) {
                let m = self.coxeter[i][j];
                if pos + m <= w.len() && w[pos..pos + m] == alternating(i, j, m)[..] {
                    let mut next = w.to_vec();
                    next[pos..pos + m].copy_from_slice(&alternating(j, i, m));
                    out.push((pos, i, j, next));
                }
            }
        }
        out
    }

    /// First braid move `(pos, i, j)` on a shortest path from `start` to a
    /// word satisfying `goal`.
    fn first_move(&self, start: &[usize], goal: impl Fn(&[usize]) -> bool) -> Option<(usize, usize, usize)> {
        let mut first: HashMap<Word, (usize, usize, usize)> = HashMap::new();
        let mut queue = VecDeque::new();
        for (pos, i, j, next) in self.braid_neighbors(start) {
            if goal(&next) {
                return Some((pos, i, j));
            }
            if next[..] != *start && !first.contains_key(&next) {
                first.insert(next.clone(), (pos, i, j));
                queue.push_back(next);
            }
        }
        while let Some(w) = queue.pop_front() {
            let mv = first[&w];
            for (_, _, _, next) in self.braid_neighbors(&w) {
                if goal(&next) {
                    return Some(mv);
                }
                if next[..] != *start && !first.contains_key(&next) {
                    first.insert(next.clone(), mv);
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Position of the first letter making the prefix non-reduced.
    fn first_descent(&self, w: &[usize]) -> (usize, Option<usize>) {
        let g = &self.group;
        let mut x = g.identity();
        for (k, &s) in w.iter().enumerate() {
            let y = g.mul_gen_right(x, s);
            if g.length(y) < g.length(x) {
                return (x, Some(k));
            }
            x = y;
        }
        (x, None)
    }

    /// Express `T_word` through the canonical words `T_{w(x)}`.
    pub fn rewrite(&self, word: &[usize]) -> Result<NormalForm> {
        if let Some(&bad) = word.iter().find(|&&s| s >= self.group.rank()) {
            return Err(Error::Config(format!("generator {} out of range", bad + 1)));
        }
        let mut pool: BTreeMap<(usize, Word), ParamScalar> = BTreeMap::new();
        pool.insert((word.len(), word.to_vec()), ParamScalar::int(1));
        let mut terms: BTreeMap<usize, ParamScalar> = BTreeMap::new();
        let mut moves = 0;
        let push = |pool: &mut BTreeMap<(usize, Word), ParamScalar>, w: Word, c: ParamScalar| {
            if c.is_zero() {
                return;
            }
            let key = (w.len(), w);
            let sum = match pool.remove(&key) {
                Some(old) => &old + &c,
                None => c,
            };
            if !sum.is_zero() {
                pool.insert(key, sum);
            }
        };
        while let Some(((_, w), c)) = pool.pop_last() {
            let (x, descent) = self.first_descent(&w);
            let splice = |pos: usize, len: usize, coef: &ParamScalar, mid: &[usize]| -> (Word, ParamScalar) {
                let mut next = w[..pos].to_vec();
                next.extend_from_slice(mid);
                next.extend_from_slice(&w[pos + len..]);
                (next, &c * &self.act(coef, pos))
            };
            match descent {
                None if w[..] == *self.group.word(x) => {
                    let e = terms.entry(x).or_insert_with(|| ParamScalar::int(0));
                    *e = &*e + &c;
                    if e.is_zero() {
                        terms.remove(&x);
                    }
                    continue;
                }
                None => {
                    let target = self.group.word(x).to_vec();
                    let (pos, i, j) = self
                        .first_move(&w, |u| u == target)
                        .expect("reduced words of one element are braid-connected");
                    for (coef, mid) in self.braid_move(i, j) {
                        let (next, c2) = splice(pos, self.coxeter[i][j], &coef, &mid);
                        push(&mut pool, next, c2);
                    }
                }
                Some(k) if k > 0 && w[k - 1] == w[k] => {
                    let s = w[k];
                    let (a, ca) = splice(k - 1, 2, &self.alpha, &[s]);
                    push(&mut pool, a, ca);
                    let (b, cb) = splice(k - 1, 2, &self.beta, &[]);
                    push(&mut pool, b, cb);
                }
                Some(k) => {
                    let s = w[k];
                    let (pos, i, j) = self
                        .first_move(&w[..k], |u| u.last() == Some(&s))
                        .expect("exchange condition");
                    for (coef, mid) in self.braid_move(i, j) {
                        let (next, c2) = splice(pos, self.coxeter[i][j], &coef, &mid);
                        push(&mut pool, next, c2);
                    }
                }
            }
            moves += 1;
            if moves > self.move_cap {
                return Err(Error::MoveCapExceeded { cap: self.move_cap });
            }
        }
        Ok(NormalForm { terms, moves })
    }
}

pub fn rewrite_canonical(system: &RewriteSystem, word: &[usize]) -> Result<NormalForm> {
    system.rewrite(word)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub group: String,
    pub order: usize,
    pub pairs: usize,
    pub failures: usize,
    pub max_moves: usize,
}

impl ClassicalReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Rewrite `w(x) w(y)` for all pairs and specialize to the group algebra:
/// the result must be exactly `T_{w(xy)}`.
pub fn classical_specialization_check(group: &ReflectionGroup) -> Result<ClassicalReport> {
    let sys = RewriteSystem::deformed(group.clone());
    let values = sys.classical_values();
    let n = group.order();
    let mut failures = 0;
    let mut max_moves = 0;
    for x in 0..n {
        for y in 0..n {
            let mut w = group.word(x).to_vec();
            w.extend_from_slice(group.word(y));
            let nf = sys.rewrite(&w)?;
            max_moves = max_moves.max(nf.moves);
            let got = nf.substitute(&values);
            let xy = group.mul(x, y);
            if got.len() != 1 || !got.get(&xy).is_some_and(Scalar::is_one) {
                failures += 1;
            }
        }
    }
    Ok(ClassicalReport {
        group: group.label().to_string(),
        order: n,
        pairs: n * n,
        failures,
        max_moves,
    })
}
