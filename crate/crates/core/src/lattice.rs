//! Exact integer and rational linear algebra for lattices.
//!
//! Lattices are row spans. The canonical form of a lattice in `Qᵈ` is the
//! row Hermite normal form of its basis scaled by the least common
//! denominator, which makes structural equality coincide with equality of
//! lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generators are not linearly independent or do not have the required rank")]
    Degenerate,
    #[error("not a sublattice")]
    NotSublattice,
    #[error("matrix is singular")]
    Singular,
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        IntMatrix { rows, ncols }
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(rows, ncols)
    }

    pub fn from_i128<R: AsRef<[i128]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(rows, ncols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        IntMatrix::new(rows, n)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix::new(rows, self.nrows())
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, o.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..o.ncols)
                    .map(|j| r.iter().zip(&o.rows).map(|(a, orow)| a * &orow[j]).sum())
                    .collect()
            })
            .collect();
        IntMatrix::new(rows, o.ncols)
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.nrows(), self.ncols, "determinant of a non-square matrix");
        let n = self.ncols;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Row Hermite normal form with zero rows dropped: upper echelon,
    /// positive pivots, entries above each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> IntMatrix {
        let mut a = self.rows.clone();
        let m = a.len();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == m {
                break;
            }
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                if a[r][c].is_zero() {
                    a.swap(r, i);
                    continue;
                }
                let e = a[r][c].extended_gcd(&a[i][c]);
                let u = &a[r][c] / &e.gcd;
                let v = &a[i][c] / &e.gcd;
                let (top, bottom): (Vec<BigInt>, Vec<BigInt>) = a[r]
                    .iter()
                    .zip(&a[i])
                    .map(|(p, q)| (&e.x * p + &e.y * q, &u * q - &v * p))
                    .unzip();
                a[r] = top;
                a[i] = bottom;
            }
            if a[r][c].is_zero() {
                continue;
            }
            if a[r][c].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -&*x);
            }
            let (head, tail) = a.split_at_mut(r);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let q = row[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, p) in row.iter_mut().zip(pivot_row) {
                        *x -= &q * p;
                    }
                }
            }
            r += 1;
        }
        a.truncate(r);
        IntMatrix::new(a, self.ncols)
    }

    pub fn rank(&self) -> usize {
        self.hnf().nrows()
    }

    /// Z-basis (in HNF) of the left kernel `{a : a·M = 0}`.
    pub fn left_kernel(&self) -> IntMatrix {
        let k = self.nrows();
        let aug: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..k).map(|j| BigInt::from((i == j) as i32)));
                row
            })
            .collect();
        let h = IntMatrix::new(aug, self.ncols + k).hnf();
        let ker: Vec<Vec<BigInt>> = h
            .rows
            .into_iter()
            .filter(|r| r[..self.ncols].iter().all(Zero::is_zero))
            .map(|r| r[self.ncols..].to_vec())
            .collect();
        IntMatrix::new(ker, k).hnf()
    }

    /// Content: gcd of all entries.
    pub fn content(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: Vec<Vec<BigRational>>,
    ncols: usize,
}

pub fn rat(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        RatMatrix { rows, ncols }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let rows = m
            .rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        RatMatrix::new(rows, m.ncols)
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        RatMatrix::from_int(&IntMatrix::from_i64(rows))
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_int(&IntMatrix::identity(n))
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn transpose(&self) -> RatMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        RatMatrix::new(rows, self.nrows())
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.ncols, o.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..o.ncols)
                    .map(|j| {
                        r.iter()
                            .zip(&o.rows)
                            .fold(BigRational::zero(), |acc, (a, orow)| acc + a * &orow[j])
                    })
                    .collect()
            })
            .collect();
        RatMatrix::new(rows, o.ncols)
    }

    pub fn scale(&self, s: &BigRational) -> RatMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x * s).collect())
            .collect();
        RatMatrix::new(rows, self.ncols)
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    }

    /// `(D, D·self)` with `D` the common denominator.
    pub fn clear_denominators(&self) -> (BigInt, IntMatrix) {
        let d = self.common_denominator();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| (x * &d).to_integer()).collect())
            .collect();
        (d, IntMatrix::new(rows, self.ncols))
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.nrows(), self.ncols);
        let (d, m) = self.clear_denominators();
        BigRational::new(m.det(), num_traits::pow(d, self.ncols))
    }

    pub fn inverse(&self) -> Result<RatMatrix, LatticeError> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(LatticeError::Singular);
        }
        let mut a = self.rows.clone();
        let mut out = RatMatrix::identity(n).rows;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(LatticeError::Singular)?;
            a.swap(piv, col);
            out.swap(piv, col);
            let inv = a[col][col].recip();
            for c in 0..n {
                a[col][c] = &a[col][c] * &inv;
                out[col][c] = &out[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                    let t = &f * &out[col][c];
                    out[r][c] -= t;
                }
            }
        }
        Ok(RatMatrix::new(out, n))
    }

    /// Coefficients `c` with `c·self = x`, if `x` lies in the row space.
    pub fn solve_left(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let (r, d) = (self.nrows(), self.ncols);
        // reduce [selfᵀ | x], d equations in r unknowns
        let mut a: Vec<Vec<BigRational>> = (0..d)
            .map(|j| {
                let mut row: Vec<BigRational> = self.rows.iter().map(|row| row[j].clone()).collect();
                row.push(x[j].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..r {
            let Some(p) = (row..d).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(p, row);
            let inv = a[row][col].recip();
            for c in col..=r {
                a[row][c] = &a[row][c] * &inv;
            }
            for i in 0..d {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for c in col..=r {
                        let t = &f * &a[row][c];
                        a[i][c] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if a[row..].iter().any(|rw| !rw[r].is_zero()) {
            return None;
        }
        let mut c = vec![BigRational::zero(); r];
        for (i, &col) in pivots.iter().enumerate() {
            c[col] = a[i][r].clone();
        }
        Some(c)
    }
}

/// A lattice in `Qᵈ`, stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactLattice {
    ambient_dim: usize,
    denominator: BigInt,
    hnf: IntMatrix,
}

impl ExactLattice {
    /// The lattice spanned by the given rational rows.
    pub fn from_generators(gens: &RatMatrix) -> Self {
        let (d, m) = gens.clear_denominators();
        let hnf = m.hnf();
        // shrink the denominator if the HNF has a common factor with it
        let g = hnf.content().gcd(&d);
        let (denominator, hnf) = if g > BigInt::one() {
            let rows = hnf.rows.iter().map(|r| r.iter().map(|x| x / &g).collect()).collect();
            (&d / &g, IntMatrix::new(rows, hnf.ncols))
        } else {
            (d, hnf)
        };
        ExactLattice {
            ambient_dim: gens.ncols(),
            denominator,
            hnf,
        }
    }

    pub fn from_integer_generators(gens: &IntMatrix) -> Self {
        ExactLattice::from_generators(&RatMatrix::from_int(gens))
    }

    pub fn standard(d: usize) -> Self {
        ExactLattice::from_integer_generators(&IntMatrix::identity(d))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.hnf.nrows()
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> RatMatrix {
        let d = BigRational::from_integer(self.denominator.clone()).recip();
        RatMatrix::from_int(&self.hnf).scale(&d)
    }

    /// The canonical integer HNF when the lattice lies in `Zᵈ`.
    pub fn integer_hnf(&self) -> Option<&IntMatrix> {
        self.denominator.is_one().then_some(&self.hnf)
    }

    pub fn coordinates(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        let c = self.basis().solve_left(x)?;
        c.iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_lattice(&self, other: &ExactLattice) -> bool {
        other.basis().rows().iter().all(|r| self.contains(r))
    }

    /// Gram matrix `B G Bᵀ` of the canonical basis.
    pub fn gram(&self, inner: &RatMatrix) -> RatMatrix {
        let b = self.basis();
        b.mul(inner).mul(&b.transpose())
    }
}

pub fn lattice_intersect(l1: &ExactLattice, l2: &ExactLattice) -> Result<ExactLattice, LatticeError> {
    if l1.ambient_dim != l2.ambient_dim {
        return Err(LatticeError::AmbientMismatch(l1.ambient_dim, l2.ambient_dim));
    }
    // a·B1 = b·B2  <=>  (a, -b)·[B1; B2] = 0
    let b1 = l1.basis();
    let b2 = l2.basis();
    let stacked: Vec<Vec<BigRational>> = b1.rows().iter().chain(b2.rows()).cloned().collect();
    let (_, m) = RatMatrix::new(stacked, l1.ambient_dim).clear_denominators();
    let ker = m.left_kernel();
    let r1 = l1.rank();
    let gens: Vec<Vec<BigRational>> = ker
        .rows()
        .iter()
        .map(|k| {
            (0..l1.ambient_dim)
                .map(|j| {
                    k[..r1]
                        .iter()
                        .zip(b1.rows())
                        .fold(BigRational::zero(), |acc, (c, row)| acc + BigRational::from_integer(c.clone()) * &row[j])
                })
                .collect()
        })
        .collect();
    if gens.is_empty() {
        return Ok(ExactLattice::from_generators(&RatMatrix::new(vec![], l1.ambient_dim)));
    }
    Ok(ExactLattice::from_generators(&RatMatrix::new(gens, l1.ambient_dim)))
}

/// `[sup : sub]` for a sublattice of equal rank.
pub fn lattice_index(sub: &ExactLattice, sup: &ExactLattice) -> Result<BigInt, LatticeError> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(LatticeError::AmbientMismatch(sub.ambient_dim, sup.ambient_dim));
    }
    if sub.rank() != sup.rank() {
        return Err(LatticeError::RankMismatch(sub.rank(), sup.rank()));
    }
    let coords: Option<Vec<Vec<BigInt>>> = sub.basis().rows().iter().map(|r| sup.coordinates(r)).collect();
    let coords = coords.ok_or(LatticeError::NotSublattice)?;
    let n = coords.len();
    Ok(IntMatrix::new(coords, n).det().abs())
}

/// Dual lattice `{x : x·G·yᵀ ∈ Z for all y ∈ L}` of a full-rank lattice.
pub fn lattice_dual(l: &ExactLattice, inner: &RatMatrix) -> Result<ExactLattice, LatticeError> {
    if l.rank() != l.ambient_dim {
        return Err(LatticeError::Degenerate);
    }
    if inner.nrows() != l.ambient_dim || inner.ncols() != l.ambient_dim {
        return Err(LatticeError::AmbientMismatch(inner.nrows(), l.ambient_dim));
    }
    // rows d_j with d_j·G·b_iᵀ = δ_ij, i.e. D = (G·Bᵀ)⁻¹
    let d = inner.mul(&l.basis().transpose()).inverse()?;
    Ok(ExactLattice::from_generators(&d))
}

/// All ordered factorizations of `n` into `k` positive factors.
pub fn ordered_factorizations(n: u64, k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return if n == 1 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for d in crate::arith::divisors(n) {
        for mut rest in ordered_factorizations(n / d, k - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// Calls `visit` on every upper-triangular row HNF of the given diagonal,
/// with the entry at row 0 of the last column fixed to `top` when given.
pub fn for_each_hnf_with_diagonal(diag: &[u64], top: Option<i64>, mut visit: impl FnMut(&[Vec<i64>])) {
    let n = diag.len();
    let mut h = vec![vec![0i64; n]; n];
    for i in 0..n {
        h[i][i] = diag[i] as i64;
    }
    // free entries (i, j), i < j, each in [0, diag[j])
    let mut slots: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    if let Some(t) = top {
        if n > 1 {
            h[0][n - 1] = t;
            slots.retain(|&s| s != (0, n - 1));
        }
    }
    fn rec(k: usize, slots: &[(usize, usize)], diag: &[u64], h: &mut Vec<Vec<i64>>, visit: &mut impl FnMut(&[Vec<i64>])) {
        if k == slots.len() {
            visit(h);
            return;
        }
        let (i, j) = slots[k];
        for v in 0..diag[j] as i64 {
            h[i][j] = v;
            rec(k + 1, slots, diag, h, visit);
        }
        h[i][j] = 0;
    }
    rec(0, &slots, diag, &mut h, &mut visit);
}

/// Every row HNF of rank `rank` with determinant `index`: all sublattices of
/// index `index` in `Z^rank`, each exactly once.
pub fn for_each_sublattice(rank: usize, index: u64, mut visit: impl FnMut(&[Vec<i64>])) {
    for diag in ordered_factorizations(index, rank) {
        for_each_hnf_with_diagonal(&diag, None, &mut visit);
    }
}

pub fn enumerate_sublattices(rank: usize, index: u64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for_each_sublattice(rank, index, |h| out.push(IntMatrix::from_i64(h)));
    out
}

/// `Σ_{d1⋯dk = n} d2·d3²⋯dk^{k-1}`, the number of index-`n` sublattices of `Zᵏ`.
pub fn sublattice_count(rank: usize, index: u64) -> u128 {
    ordered_factorizations(index, rank)
        .iter()
        .map(|d| d.iter().enumerate().map(|(j, &x)| (x as u128).pow(j as u32)).product::<u128>())
        .sum()
}
