//! Positive definite integral quadratic forms: exact short-vector
//! enumeration and integral equivalence testing.
//!
//! Enumeration follows Fincke-Pohst over an exact rational LDLᵀ
//! decomposition, so no vector is ever lost to rounding.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("entry does not fit in 64 bits")]
    Overflow,
}

/// A symmetric positive definite integer Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGram {
    dim: usize,
    entries: Vec<i64>,
    // rows of the exact Cholesky form; diag[i] = q_ii, upper[i][j] = q_ij
    chol: Vec<Vec<Q>>,
}

impl SmallGram {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self, FormError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(FormError::NotSquare);
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(FormError::NotSymmetric);
                }
            }
        }
        let entries: Vec<i64> = rows.iter().flatten().copied().collect();
        let chol = cholesky(dim, &entries).ok_or(FormError::NotPositiveDefinite)?;
        Ok(SmallGram { dim, entries, chol })
    }

    pub fn from_array<const N: usize>(rows: [[i64; N]; N]) -> Result<Self, FormError> {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::new(&v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn norm(&self, v: &[i64]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.dim {
            let mut t = 0i64;
            for j in 0..self.dim {
                t += self.get(i, j) * v[j];
            }
            s += v[i] * t;
        }
        s
    }

    pub fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += u[i] * self.get(i, j) * v[j];
            }
        }
        s
    }

    pub fn det(&self) -> i128 {
        let rows: Vec<Vec<i128>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        bareiss_det(rows)
    }

    pub fn max_diagonal(&self) -> i64 {
        (0..self.dim).map(|i| self.get(i, i)).max().unwrap_or(0)
    }

    /// Calls `visit` on every nonzero `v` with `vᵀGv <= bound`, in a fixed
    /// order (last coordinate outermost, each coordinate ascending).
    pub fn for_each_vector(&self, bound: i64, mut visit: impl FnMut(&[i64], i64)) {
        if bound <= 0 || self.dim == 0 {
            return;
        }
        let mut x = vec![0i64; self.dim];
        self.descend(self.dim - 1, Q::from_integer(bound as i128), &mut x, &mut visit);
    }

    fn descend(&self, i: usize, rem: Q, x: &mut [i64], visit: &mut impl FnMut(&[i64], i64)) {
        let qii = self.chol[i][i];
        let mut center = Q::zero();
        for j in i + 1..self.dim {
            center -= self.chol[i][j] * Q::from_integer(x[j] as i128);
        }
        let cost = |xi: i64| {
            let d = Q::from_integer(xi as i128) - center;
            qii * d * d
        };
        let start = center.floor().to_integer() as i64;
        let mut lo = start + 1;
        while cost(lo - 1) <= rem {
            lo -= 1;
        }
        let mut hi = start;
        while cost(hi + 1) <= rem {
            hi += 1;
        }
        for xi in lo..=hi {
            x[i] = xi;
            let r = rem - cost(xi);
            if i == 0 {
                if x.iter().any(|&c| c != 0) {
                    let n = self.norm(x);
                    visit(x, n);
                }
            } else {
                self.descend(i - 1, r, x, visit);
            }
        }
        x[i] = 0;
    }

    /// All nonzero vectors with `vᵀGv <= bound`, both members of each ±pair.
    pub fn all_vectors(&self, bound: i64) -> Vec<(Vec<i64>, i64)> {
        let mut out = Vec::new();
        self.for_each_vector(bound, |v, n| out.push((v.to_vec(), n)));
        out
    }

    /// Nonzero vectors with `vᵀGv <= bound`, one per ±pair (the member whose
    /// last nonzero coordinate is positive).
    pub fn short_vectors(&self, bound: i64) -> Vec<(Vec<i64>, i64)> {
        let mut out = Vec::new();
        self.for_each_vector(bound, |v, n| {
            if v.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
                out.push((v.to_vec(), n));
            }
        });
        out
    }

    /// Number of vectors (both signs) of each norm up to `bound`.
    pub fn theta_counts(&self, bound: i64) -> BTreeMap<i64, usize> {
        let mut counts = BTreeMap::new();
        self.for_each_vector(bound, |_, n| *counts.entry(n).or_insert(0) += 1);
        counts
    }

    /// Whether some unimodular `U` satisfies `Uᵀ·self·U = other`.
    pub fn is_equivalent(&self, other: &SmallGram) -> Result<bool, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch(self.dim, other.dim));
        }
        if self.det() != other.det() {
            return Ok(false);
        }
        let bound = other.max_diagonal();
        if self.theta_counts(bound) != other.theta_counts(bound) {
            return Ok(false);
        }
        Ok(self.find_isometry(other).is_some())
    }

    /// Columns `u_j` with `u_iᵀ·self·u_j = other[i][j]`; equal determinants
    /// then force `det U = ±1`.
    pub fn find_isometry(&self, other: &SmallGram) -> Option<Vec<Vec<i64>>> {
        let n = self.dim;
        let bound = other.max_diagonal();
        let vecs = self.all_vectors(bound);
        // G·v, cached for the pairwise inner products
        let gv: Vec<Vec<i64>> = vecs
            .iter()
            .map(|(v, _)| (0..n).map(|i| (0..n).map(|j| self.get(i, j) * v[j]).sum()).collect())
            .collect();
        let cands: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                (0..vecs.len())
                    .filter(|&k| vecs[k].1 == other.get(j, j))
                    .collect()
            })
            .collect();
        let mut chosen = Vec::with_capacity(n);
        if self.backtrack(other, &vecs, &gv, &cands, &mut chosen) {
            Some(chosen.iter().map(|&k| vecs[k].0.clone()).collect())
        } else {
            None
        }
    }

    fn backtrack(
        &self,
        other: &SmallGram,
        vecs: &[(Vec<i64>, i64)],
        gv: &[Vec<i64>],
        cands: &[Vec<usize>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let j = chosen.len();
        if j == self.dim {
            return true;
        }
        for &k in &cands[j] {
            let ok = chosen.iter().enumerate().all(|(i, &c)| {
                let ip: i64 = vecs[k].0.iter().zip(&gv[c]).map(|(a, b)| a * b).sum();
                ip == other.get(i, j)
            });
            if ok {
                chosen.push(k);
                if self.backtrack(other, vecs, gv, cands, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

fn cholesky(n: usize, g: &[i64]) -> Option<Vec<Vec<Q>>> {
    let mut q: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| Q::from_integer(g[i * n + j] as i128)).collect())
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = q[k][i] * q[i][l];
                q[k][l] -= t;
            }
        }
    }
    Some(q)
}

/// Fraction-free determinant of a square integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Exact check that `HᵀGH` (rows of `h` as basis vectors, i.e. `H G Hᵀ`)
/// is divisible by `m`; returns the quotient Gram rows.
pub fn scaled_sublattice_gram(g: &SmallGram, h: &[Vec<i64>], m: i64) -> Option<Vec<Vec<i64>>> {
    let n = g.dim();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = g.inner(&h[i], &h[j]);
            if v % m != 0 {
                return None;
            }
            out[i][j] = v / m;
            out[j][i] = v / m;
        }
    }
    Some(out)
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
