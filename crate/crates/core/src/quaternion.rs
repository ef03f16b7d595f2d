//! Hamilton's quaternions over the golden field, the twist involution and
//! rotation matrices of maps `x ↦ q x q̃ / n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::golden::{GoldenError, GoldenInt, GoldenRat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuatError {
    #[error("quaternion is zero")]
    Zero,
    #[error("scale {scale} does not satisfy scale² = N(nr q) = {norm}")]
    BadScale { scale: u64, norm: i128 },
    #[error(transparent)]
    Golden(#[from] GoldenError),
    #[error("cannot parse quaternion {0:?}")]
    Parse(String),
}

/// `a + ib + jc + kd` with components in `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quat(pub [GoldenRat; 4]);

impl Quat {
    pub const ZERO: Quat = Quat([GoldenRat::ZERO; 4]);
    pub const ONE: Quat = Quat([GoldenRat::ONE, GoldenRat::ZERO, GoldenRat::ZERO, GoldenRat::ZERO]);

    pub fn new(a: GoldenRat, b: GoldenRat, c: GoldenRat, d: GoldenRat) -> Self {
        Quat([a, b, c, d])
    }

    /// Quaternion with integer components.
    pub fn from_ints(c: [i128; 4]) -> Self {
        Quat(c.map(GoldenRat::from))
    }

    pub fn scalar(x: GoldenRat) -> Self {
        Quat([x, GoldenRat::ZERO, GoldenRat::ZERO, GoldenRat::ZERO])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GoldenRat::is_zero)
    }

    pub fn scale(&self, s: GoldenRat) -> Self {
        Quat(self.0.map(|c| c * s))
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.0;
        Quat([a, -b, -c, -d])
    }

    /// Reduced norm `q q̄`.
    pub fn nr(&self) -> GoldenRat {
        self.0
            .iter()
            .fold(GoldenRat::ZERO, |acc, &c| acc + c * c)
    }

    /// Reduced trace `q + q̄`.
    pub fn tr(&self) -> GoldenRat {
        self.0[0] + self.0[0]
    }

    pub fn inv(&self) -> Result<Self, QuatError> {
        if self.is_zero() {
            return Err(QuatError::Zero);
        }
        Ok(self.conj().scale(self.nr().recip()?))
    }

    /// The twist map `(a, b, c, d) ↦ (a', b', d', c')`.
    pub fn twist(&self) -> Self {
        let [a, b, c, d] = self.0;
        Quat([a.conj(), b.conj(), d.conj(), c.conj()])
    }

    /// Euclidean inner product `⟨x|y⟩` as an element of `K`.
    pub fn dot(&self, o: &Quat) -> GoldenRat {
        (0..4).fold(GoldenRat::ZERO, |acc, i| acc + self.0[i] * o.0[i])
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat(self.0.map(|c| -c))
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quat([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl FromStr for Quat {
    type Err = QuatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| QuatError::Parse(s.to_string()))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(QuatError::Parse(s.to_string()));
        }
        let mut out = [GoldenRat::ZERO; 4];
        for (o, p) in out.iter_mut().zip(parts) {
            *o = p.parse()?;
        }
        Ok(Quat(out))
    }
}

impl Serialize for Quat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub type KMatrix = [[GoldenRat; 4]; 4];

/// Determinant of a 4×4 matrix over `K` by Gaussian elimination.
pub fn det4(m: &KMatrix) -> GoldenRat {
    let mut a = *m;
    let mut det = GoldenRat::ONE;
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&r| !a[r][col].is_zero()) else {
            return GoldenRat::ZERO;
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = det * a[col][col];
        let inv = a[col][col].recip().expect("nonzero pivot");
        for r in col + 1..4 {
            let f = a[r][col] * inv;
            if f.is_zero() {
                continue;
            }
            for c in col..4 {
                a[r][c] = a[r][c] - f * a[col][c];
            }
        }
    }
    det
}

/// Inverse of a 4×4 matrix over `K` (Gauss-Jordan). `None` if singular.
pub fn inv4(m: &KMatrix) -> Option<KMatrix> {
    let mut a = *m;
    let mut out: KMatrix = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { GoldenRat::ONE } else { GoldenRat::ZERO })
    });
    for col in 0..4 {
        let piv = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        out.swap(piv, col);
        let inv = a[col][col].recip().ok()?;
        for c in 0..4 {
            a[col][c] = a[col][c] * inv;
            out[col][c] = out[col][c] * inv;
        }
        for r in 0..4 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for c in 0..4 {
                a[r][c] = a[r][c] - f * a[col][c];
                out[r][c] = out[r][c] - f * out[col][c];
            }
        }
    }
    Some(out)
}

/// Matrix of `x ↦ q x q̃ / scale` in the coordinates `(1, i, j, k)`;
/// column `c` is the image of the `c`-th unit quaternion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationMatrix {
    pub entries: KMatrix,
    pub scale: u64,
}

impl RotationMatrix {
    pub fn new(q: &Quat, scale: u64) -> Result<Self, QuatError> {
        if q.is_zero() {
            return Err(QuatError::Zero);
        }
        let nr = q.nr();
        // nr(q)·nr(q)' = |q q̃|²; both factors are in K, the product in Q
        let norm = nr * nr.conj();
        let expected = GoldenRat::from(scale as i128 * scale as i128);
        if norm != expected {
            let norm = norm.to_rational().map_or(0, |(n, d)| n / d);
            return Err(QuatError::BadScale { scale, norm });
        }
        let qt = q.twist();
        let inv_scale = GoldenRat::from_parts(1, 0, scale as i128);
        let mut entries = [[GoldenRat::ZERO; 4]; 4];
        for c in 0..4 {
            let mut e = Quat::ZERO;
            e.0[c] = GoldenRat::ONE;
            let img = (*q * e * qt).scale(inv_scale);
            for r in 0..4 {
                entries[r][c] = img.0[r];
            }
        }
        Ok(RotationMatrix { entries, scale })
    }

    pub fn apply(&self, x: &Quat) -> Quat {
        Quat(std::array::from_fn(|r| {
            (0..4).fold(GoldenRat::ZERO, |acc, c| acc + self.entries[r][c] * x.0[c])
        }))
    }

    pub fn transpose(&self) -> KMatrix {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[j][i]))
    }

    pub fn is_orthogonal(&self) -> bool {
        let t = self.transpose();
        (0..4).all(|i| {
            (0..4).all(|j| {
                let s = (0..4).fold(GoldenRat::ZERO, |acc, k| acc + t[i][k] * self.entries[k][j]);
                s == if i == j { GoldenRat::ONE } else { GoldenRat::ZERO }
            })
        })
    }

    pub fn det(&self) -> GoldenRat {
        det4(&self.entries)
    }

    /// `-M`, the rotation obtained from `τ q` instead of `q`.
    pub fn negated(&self) -> Self {
        RotationMatrix {
            entries: self.entries.map(|row| row.map(|x| -x)),
            scale: self.scale,
        }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Serialize for RotationMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// `q` as a quaternion whose components are elements of `o`.
pub fn quat_from_golden(c: [GoldenInt; 4]) -> Quat {
    Quat(c.map(GoldenRat::from))
}
