//! The icosian ring `I`, a maximal order of `H(K)`.
//!
//! `I` is free over `o = Z[τ]` on
//! `β₁ = (1,0,0,0)`, `β₂ = (0,1,0,0)`, `β₃ = ½(1,1,1,1)`, `β₄ = ½(1-τ,τ,0,1)`.
//! The fixed Z-basis is `β₁…β₄, τβ₁…τβ₄`; an icosian's 8 integer
//! coordinates refer to that order.

use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use crate::arith;
use crate::forms::SmallGram;
use crate::golden::{self, GoldenError, GoldenInt, GoldenRat, TAU};
use crate::quaternion::{inv4, KMatrix, Quat, QuatError, RotationMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IcosianError {
    #[error("icosian is zero")]
    Zero,
    #[error("{0} is not an icosian")]
    NotMember(Quat),
    #[error("icosian is not primitive (coordinate gcd {0})")]
    NotPrimitive(GoldenInt),
    #[error("icosian is not admissible: N(nr q) = {0} is not a perfect square")]
    NotAdmissible(i128),
    #[error("lcm(nr q, nr q')/nr q = {0} is not a square in Z[t]")]
    ExtensionNotSquare(GoldenInt),
    #[error("standardised lcm {0} is not a positive rational integer")]
    SigmaNotRational(GoldenInt),
    #[error(transparent)]
    Golden(#[from] GoldenError),
    #[error(transparent)]
    Quat(#[from] QuatError),
}

fn half(a: i128, b: i128) -> GoldenRat {
    GoldenRat::from_parts(a, b, 2)
}

/// The o-basis `β₁…β₄`.
pub fn o_basis() -> [Quat; 4] {
    [
        Quat::from_ints([1, 0, 0, 0]),
        Quat::from_ints([0, 1, 0, 0]),
        Quat::new(half(1, 0), half(1, 0), half(1, 0), half(1, 0)),
        Quat::new(half(1, -1), half(0, 1), GoldenRat::ZERO, half(1, 0)),
    ]
}

/// The Z-basis `β₁…β₄, τβ₁…τβ₄`.
pub fn z_basis() -> [Quat; 8] {
    let b = o_basis();
    let t = GoldenRat::from(TAU);
    std::array::from_fn(|i| if i < 4 { b[i] } else { b[i - 4].scale(t) })
}

fn o_basis_inverse() -> &'static KMatrix {
    static INV: OnceLock<KMatrix> = OnceLock::new();
    INV.get_or_init(|| {
        let b = o_basis();
        let m: KMatrix = std::array::from_fn(|r| std::array::from_fn(|c| b[c].0[r]));
        inv4(&m).expect("icosian basis is a K-basis")
    })
}

/// Coordinates of `q` over `K` relative to the o-basis.
fn k_coords(q: &Quat) -> [GoldenRat; 4] {
    let inv = o_basis_inverse();
    std::array::from_fn(|r| (0..4).fold(GoldenRat::ZERO, |acc, c| acc + inv[r][c] * q.0[c]))
}

/// Gram matrix of the Z-basis under `(x, y) ↦ Tr_{K/Q} tr(x ȳ)`; the
/// associated quadratic form is `2·Tr_{K/Q}(nr x)`.
pub fn trace_gram() -> &'static SmallGram {
    static G: OnceLock<SmallGram> = OnceLock::new();
    G.get_or_init(|| {
        let e = z_basis();
        let rows: Vec<Vec<i64>> = (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| {
                        let t = e[i].dot(&e[j]) + e[i].dot(&e[j]);
                        let t = t.to_golden_int().expect("icosians are integral");
                        t.trace() as i64
                    })
                    .collect()
            })
            .collect();
        SmallGram::new(&rows).expect("trace form is positive definite")
    })
}

/// An element of the icosian ring with its o-coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Icosian {
    coords: [GoldenInt; 4],
    quat: Quat,
}

pub fn contains(q: &Quat) -> bool {
    k_coords(q).iter().all(|c| c.to_golden_int().is_some())
}

impl Icosian {
    pub fn from_quat(q: &Quat) -> Result<Self, IcosianError> {
        let k = k_coords(q);
        let mut coords = [GoldenInt::ZERO; 4];
        for (c, v) in coords.iter_mut().zip(k) {
            *c = v.to_golden_int().ok_or(IcosianError::NotMember(*q))?;
        }
        Ok(Icosian { coords, quat: *q })
    }

    pub fn from_coords(coords: [GoldenInt; 4]) -> Self {
        let b = o_basis();
        let quat = (0..4).fold(Quat::ZERO, |acc, i| acc + b[i].scale(coords[i].into()));
        Icosian { coords, quat }
    }

    pub fn from_z_coords(c: [i128; 8]) -> Self {
        Icosian::from_coords(std::array::from_fn(|i| GoldenInt::new(c[i], c[i + 4])))
    }

    pub fn one() -> Self {
        Icosian::from_z_coords([1, 0, 0, 0, 0, 0, 0, 0])
    }

    pub fn quat(&self) -> &Quat {
        &self.quat
    }

    pub fn coords(&self) -> [GoldenInt; 4] {
        self.coords
    }

    pub fn z_coords(&self) -> [i128; 8] {
        std::array::from_fn(|i| if i < 4 { self.coords[i].a } else { self.coords[i - 4].b })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Reduced norm, an element of `o`.
    pub fn nr(&self) -> GoldenInt {
        self.quat.nr().to_golden_int().expect("icosians are integral")
    }

    pub fn tr(&self) -> GoldenInt {
        self.quat.tr().to_golden_int().expect("icosians are integral")
    }

    /// `nr(q) + nr(q)'`.
    pub fn trace_norm(&self) -> i128 {
        self.nr().trace()
    }

    pub fn mul(&self, o: &Icosian) -> Icosian {
        Icosian::from_quat(&(self.quat * o.quat)).expect("I is a ring")
    }

    pub fn scale(&self, s: GoldenInt) -> Icosian {
        Icosian::from_coords(self.coords.map(|c| c * s))
    }

    pub fn neg(&self) -> Icosian {
        self.scale(GoldenInt::int(-1))
    }

    pub fn twist(&self) -> Icosian {
        Icosian::from_quat(&self.quat.twist()).expect("the twist map preserves I")
    }

    fn nonzero(&self) -> Result<(), IcosianError> {
        if self.is_zero() {
            Err(IcosianError::Zero)
        } else {
            Ok(())
        }
    }

    /// gcd of the four o-coordinates.
    pub fn content(&self) -> Result<GoldenInt, IcosianError> {
        self.nonzero()?;
        let g = self
            .coords
            .iter()
            .try_fold(GoldenInt::ZERO, |g, &c| golden::gcd(g, c).or(Ok::<_, GoldenError>(g)))?;
        Ok(g)
    }

    pub fn is_primitive(&self) -> Result<bool, IcosianError> {
        Ok(self.content()?.is_unit())
    }

    pub fn is_unit(&self) -> bool {
        self.nr().norm() == 1
    }

    /// `|q q̃|` when it is a positive integer, i.e. when `N(nr q)` is a square.
    pub fn admissible_scale(&self) -> Result<Option<u64>, IcosianError> {
        self.nonzero()?;
        Ok(arith::exact_sqrt(self.nr().norm() as u128).map(|s| s as u64))
    }

    pub fn is_admissible(&self) -> Result<bool, IcosianError> {
        Ok(self.admissible_scale()?.is_some())
    }

    /// `[I : qI] = N(nr q)²`.
    pub fn ideal_index(&self) -> Result<u128, IcosianError> {
        self.nonzero()?;
        let n = self.nr().norm() as u128;
        Ok(n * n)
    }

    /// `lcm(nr q, nr q')` in the standardised form, as a positive integer.
    pub fn sigma(&self) -> Result<u64, IcosianError> {
        self.nonzero()?;
        let nr = self.nr();
        let m = golden::lcm_std(nr, nr.conj())?;
        match m.is_rational() && m.a > 0 {
            true => Ok(m.a as u64),
            false => Err(IcosianError::SigmaNotRational(m)),
        }
    }

    pub fn extension(&self) -> Result<ExtensionPair, IcosianError> {
        if !self.is_primitive()? {
            return Err(IcosianError::NotPrimitive(self.content()?));
        }
        if !self.is_admissible()? {
            return Err(IcosianError::NotAdmissible(self.nr().norm()));
        }
        let nr = self.nr();
        let sigma = self.sigma()?;
        let quotient = GoldenInt::int(sigma as i128)
            .div_exact(nr)
            .expect("nr q divides its lcm");
        let alpha = golden::sqrt(quotient).ok_or(IcosianError::ExtensionNotSquare(quotient))?;
        let q_ext = self.scale(alpha);
        Ok(ExtensionPair {
            alpha,
            q_ext_twist: q_ext.twist(),
            q_ext,
            sigma,
        })
    }

    /// Whether `qI = rI`, i.e. `q⁻¹r` is a unit of `I`.
    pub fn right_ideal_equal(&self, r: &Icosian) -> Result<bool, IcosianError> {
        self.nonzero()?;
        r.nonzero()?;
        let x = self.quat.inv()? * r.quat;
        Ok(match Icosian::from_quat(&x) {
            Ok(u) => u.is_unit(),
            Err(_) => false,
        })
    }

    /// Rotation `x ↦ q x q̃ / |q q̃|`; requires admissibility.
    pub fn rotation(&self) -> Result<RotationMatrix, IcosianError> {
        let scale = self
            .admissible_scale()?
            .ok_or(IcosianError::NotAdmissible(self.nr().norm()))?;
        Ok(RotationMatrix::new(&self.quat, scale)?)
    }

    pub fn random<R: Rng>(rng: &mut R, bound: i128) -> Icosian {
        Icosian::from_z_coords(std::array::from_fn(|_| rng.gen_range(-bound..=bound)))
    }
}

impl Serialize for Icosian {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.z_coords().serialize(s)
    }
}

/// `(α q, α' q̃)` with `nr(α q) = lcm(nr q, nr q')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionPair {
    pub alpha: GoldenInt,
    pub q_ext: Icosian,
    pub q_ext_twist: Icosian,
    pub sigma: u64,
}

/// All icosians with `nr(q) + nr(q)' = t`, sorted by Z-coordinates.
pub fn enumerate_by_trace_norm(t: i64) -> Vec<Icosian> {
    let mut out = Vec::new();
    if t <= 0 {
        return out;
    }
    trace_gram().for_each_vector(2 * t, |v, n| {
        if n == 2 * t {
            out.push(Icosian::from_z_coords(std::array::from_fn(|i| v[i] as i128)));
        }
    });
    out.sort_by_key(Icosian::z_coords);
    out
}

/// All icosians with `nr(q) = g` exactly.
pub fn enumerate_by_reduced_norm(g: GoldenInt) -> Vec<Icosian> {
    if !g.is_totally_positive() {
        return Vec::new();
    }
    enumerate_by_trace_norm(g.trace() as i64)
        .into_iter()
        .filter(|q| q.nr() == g)
        .collect()
}

/// The 120 units of reduced norm 1 (the binary icosahedral group).
pub fn norm_one_units() -> &'static [Icosian] {
    static U: OnceLock<Vec<Icosian>> = OnceLock::new();
    U.get_or_init(|| enumerate_by_trace_norm(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(c: [i128; 4]) -> Quat {
        Quat::from_ints(c)
    }

    fn ico(c: [i128; 4]) -> Icosian {
        Icosian::from_quat(&q(c)).unwrap()
    }

    #[test]
    fn membership() {
        let h = Quat::new(half(1, 0), half(1, 0), half(1, 0), half(1, 0));
        let x = Icosian::from_quat(&h).unwrap();
        assert_eq!(x.coords(), [GoldenInt::ZERO, GoldenInt::ZERO, GoldenInt::ONE, GoldenInt::ZERO]);
        let not = Quat::new(half(1, 0), half(1, 0), GoldenRat::ZERO, GoldenRat::ZERO);
        assert!(!contains(&not));
        assert!(matches!(Icosian::from_quat(&not), Err(IcosianError::NotMember(_))));
        let t = Quat::scalar(TAU.into());
        assert!(contains(&t));
        assert_eq!(Icosian::from_quat(&t).unwrap().z_coords(), [0, 0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn z_coords_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = Icosian::random(&mut rng, 4);
            assert_eq!(Icosian::from_z_coords(x.z_coords()), x);
            assert_eq!(Icosian::from_quat(x.quat()).unwrap(), x);
        }
    }

    #[test]
    fn primitivity() {
        assert!(ico([1, 1, 0, 0]).is_primitive().unwrap());
        assert!(!ico([2, 0, 0, 0]).is_primitive().unwrap());
        assert!(ico([1, 1, 0, 0]).scale(TAU).is_primitive().unwrap());
        assert_eq!(Icosian::from_z_coords([0; 8]).is_primitive(), Err(IcosianError::Zero));
    }

    #[test]
    fn units_and_admissibility() {
        let h = Icosian::from_z_coords([0, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(h.nr(), GoldenInt::ONE);
        assert!(h.is_unit());
        let t = Icosian::from_z_coords([0, 0, 0, 0, 1, 0, 0, 0]);
        assert!(t.is_unit());
        assert_eq!(t.admissible_scale().unwrap(), Some(1));
        let p = ico([1, 1, 0, 0]);
        assert!(!p.is_unit());
        assert_eq!(p.admissible_scale().unwrap(), Some(2));
        assert_eq!(h.admissible_scale().unwrap(), Some(1));
    }

    #[test]
    fn extensions() {
        let e = ico([1, 1, 0, 0]).extension().unwrap();
        assert_eq!(e.alpha, GoldenInt::ONE);
        assert_eq!(e.sigma, 2);
        let u = Icosian::from_z_coords([0, 0, 1, 0, 0, 0, 0, 0]);
        let e = u.extension().unwrap();
        assert_eq!((e.alpha, e.sigma), (GoldenInt::ONE, 1));
        assert!(matches!(ico([2, 0, 0, 0]).extension(), Err(IcosianError::NotPrimitive(_))));
    }

    #[test]
    fn ideal_index() {
        assert_eq!(ico([1, 1, 0, 0]).ideal_index().unwrap(), 16);
        assert_eq!(ico([2, 0, 0, 0]).ideal_index().unwrap(), 256);
        assert_eq!(Icosian::one().ideal_index().unwrap(), 1);
    }

    #[test]
    fn right_ideals() {
        let p = ico([1, 1, 0, 0]);
        for u in norm_one_units().iter().step_by(7) {
            assert!(p.right_ideal_equal(&p.mul(u)).unwrap());
        }
        assert!(!p.right_ideal_equal(&p.scale(GoldenInt::int(2))).unwrap());
        // (1-i) = (1+i)·(-i), and -i is a unit
        assert!(p.right_ideal_equal(&ico([1, -1, 0, 0])).unwrap());
        assert!(!p.right_ideal_equal(&ico([1, 0, 1, 1])).unwrap());
    }

    #[test]
    fn trace_shells() {
        assert!(enumerate_by_trace_norm(0).is_empty());
        let units = enumerate_by_trace_norm(2);
        assert_eq!(units.len(), 120);
        assert!(units.iter().all(|u| u.nr() == GoldenInt::ONE));
        let shell4 = enumerate_by_trace_norm(4);
        assert!(shell4.contains(&ico([1, 1, 0, 0])));
        assert!(shell4.iter().all(|x| x.trace_norm() == 4));
        // the 120 right multiples of (1,1,0,0) by norm-one units lie in this shell
        let p = ico([1, 1, 0, 0]);
        assert!(norm_one_units().iter().all(|u| shell4.contains(&p.mul(u))));
        assert_eq!(trace_gram().short_vectors(4).len(), 60);
    }

    /// Independent box search for Tr(nr) <= 8. Cauchy-Schwarz bounds each
    /// coordinate of a vector with vᵀGv <= B by √(B·(G⁻¹)ᵢᵢ).
    #[test]
    fn shell_enumeration_matches_box_search() {
        let g = trace_gram();
        let max_form = 16i64;
        let inv = crate::lattice::RatMatrix::from_i64(&g.rows()).inverse().unwrap();
        let bounds: Vec<i64> = (0..8)
            .map(|i| {
                let b = &inv.rows()[i][i] * num_rational::BigRational::from_integer(max_form.into());
                let fl: i64 = num_traits::ToPrimitive::to_i64(&b.floor().to_integer()).unwrap();
                crate::arith::isqrt(fl as u128) as i64
            })
            .collect();
        let mut counts = [0usize; 9];
        let mut v = [0i64; 8];
        fn rec(i: usize, v: &mut [i64; 8], bounds: &[i64], g: &SmallGram, counts: &mut [usize; 9]) {
            if i == 8 {
                let n = g.norm(v);
                if n > 0 && n <= 16 {
                    counts[(n / 2) as usize] += 1;
                }
                return;
            }
            for x in -bounds[i]..=bounds[i] {
                v[i] = x;
                rec(i + 1, v, bounds, g, counts);
            }
        }
        rec(0, &mut v, &bounds, g, &mut counts);
        for t in 1..=8 {
            assert_eq!(enumerate_by_trace_norm(t as i64).len(), counts[t], "t = {t}");
        }
        assert_eq!(counts[1], 0);
        assert_eq!(counts[2], 120);
    }

    #[test]
    fn twist_preserves_ring_and_integrality() {
        for b in z_basis() {
            assert!(contains(&b.twist()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let x = Icosian::random(&mut rng, 5);
            assert!(contains(&x.quat().twist()));
            assert!(x.quat().nr().to_golden_int().is_some());
            assert!(x.quat().tr().to_golden_int().is_some());
            if !x.is_zero() {
                assert_eq!(x.is_unit(), x.ideal_index().unwrap() == 1);
            }
        }
    }
}
