//! Exact dense linear algebra over [`Scalar`].

use std::ops::Mul;

use super::scalar::Scalar;

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl SMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        SMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rank(&self.to_rows())
    }

    /// For a signed permutation matrix, `(perm, signs)` with
    /// `M e_i = signs[i] e_{perm[i]}`.
    pub fn as_signed_permutation(&self) -> Option<(Vec<usize>, Vec<i8>)> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.cols;
        let mut perm = vec![0; n];
        let mut signs = vec![0i8; n];
        for j in 0..n {
            let mut found = None;
            for i in 0..n {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if found.is_some() {
                    return None;
                }
                if v.is_one() {
                    found = Some((i, 1));
                } else if (-v).is_one() {
                    found = Some((i, -1));
                } else {
                    return None;
                }
            }
            let (i, s) = found?;
            perm[j] = i;
            signs[j] = s;
        }
        Some((perm, signs))
    }

    /// Coefficients of `det(1 - t M)` in increasing powers of `t`,
    /// by the Faddeev-LeVerrier recursion.
    pub fn det_one_minus_t(&self) -> Vec<Scalar> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        // characteristic polynomial det(lambda - M) = sum c_k lambda^{n-k}
        let mut coeffs = vec![Scalar::one()];
        let mut mk = SMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = M * M_{k-1} + c_{k-1} I
            let mut next = self * &mk;
            let prev = &coeffs[k - 1];
            for i in 0..n {
                let v = next.get(i, i) + prev;
                next.set(i, i, v);
            }
            mk = next;
            let tr = (self * &mk).trace();
            let ck = -(&tr / &Scalar::from_int(k as i64));
            coeffs.push(ck);
        }
        // det(1 - tM) = t^n det(1/t - M) = sum c_k t^k
        coeffs
    }
}

impl Mul for &SMatrix {
    type Output = SMatrix;
    fn mul(self, rhs: &SMatrix) -> SMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = SMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        for v in rows[r].iter_mut().skip(col) {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    row[j] = &row[j] - &(&f * pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{v : M v = 0}` for `M` given by rows with `ncols` columns.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    if m.is_empty() {
        return (0..ncols)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ncols];
                v[i] = Scalar::one();
                v
            })
            .collect();
    }
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[r][free];
        }
        basis.push(v);
    }
    basis
}
