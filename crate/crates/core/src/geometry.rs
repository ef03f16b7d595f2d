//! The root lattice `L ≅ A4` inside `I`, its similar and coincidence
//! sublattices.
//!
//! `L = {x ∈ I : x̃ = x} = φ₊(I)` with `φ₊(x) = x + x̃`. Every sublattice is
//! stored as an integer HNF in coordinates relative to [`l_basis`].

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::arith;
use crate::forms::{FormError, SmallGram};
use crate::golden::{GoldenInt, GoldenRat};
use crate::icosian::{ExtensionPair, Icosian, IcosianError};
use crate::lattice::{lattice_intersect, ExactLattice, IntMatrix, RatMatrix};
use crate::quaternion::{inv4, KMatrix, Quat, RotationMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("{0} is not in L")]
    NotInL(Quat),
    #[error("icosian is zero")]
    Zero,
    #[error("icosian is not primitive (content {0})")]
    NotPrimitive(GoldenInt),
    #[error("icosian is not admissible: N(nr q) = {0} is not a perfect square")]
    NotAdmissible(i128),
    #[error("L(q_a) and the direct intersection differ:\n{ideal}\nvs\n{direct}")]
    DualPathMismatch { ideal: IntMatrix, direct: IntMatrix },
    #[error("CSL index {index} differs from lcm(nr q, nr q') = {sigma}")]
    IndexMismatch { index: u64, sigma: u64 },
    #[error("denominator from the definition is {found}, expected |q q~| = {expected}")]
    DenominatorMismatch { found: u64, expected: u64 },
    #[error("sublattice index does not fit in u64")]
    IndexOverflow,
    #[error(transparent)]
    Icosian(#[from] IcosianError),
}

fn half(a: i128, b: i128) -> GoldenRat {
    GoldenRat::from_parts(a, b, 2)
}

/// `b₁ = (1,0,0,0)`, `b₂ = ½(-1,1,1,1)`, `b₃ = (0,-1,0,0)`, `b₄ = ½(0,1,τ-1,-τ)`.
pub fn l_basis() -> [Quat; 4] {
    [
        Quat::from_ints([1, 0, 0, 0]),
        Quat::new(half(-1, 0), half(1, 0), half(1, 0), half(1, 0)),
        Quat::from_ints([0, -1, 0, 0]),
        Quat::new(GoldenRat::ZERO, half(1, 0), half(-1, 1), half(0, -1)),
    ]
}

fn l_basis_inverse() -> &'static KMatrix {
    static INV: OnceLock<KMatrix> = OnceLock::new();
    INV.get_or_init(|| {
        let b = l_basis();
        let m: KMatrix = std::array::from_fn(|r| std::array::from_fn(|c| b[c].0[r]));
        inv4(&m).expect("L spans K⁴")
    })
}

/// Coordinates over `K` relative to the L basis.
pub fn l_coords_k(x: &Quat) -> [GoldenRat; 4] {
    let inv = l_basis_inverse();
    std::array::from_fn(|r| (0..4).fold(GoldenRat::ZERO, |acc, c| acc + inv[r][c] * x.0[c]))
}

pub fn l_contains(x: &Quat) -> bool {
    l_coords(x).is_ok()
}

/// Integer coordinates of a member of `L`.
pub fn l_coords(x: &Quat) -> Result<[i128; 4], GeometryError> {
    let k = l_coords_k(x);
    let mut out = [0i128; 4];
    for (o, c) in out.iter_mut().zip(k) {
        let (n, d) = c.to_rational().ok_or(GeometryError::NotInL(*x))?;
        if d != 1 {
            return Err(GeometryError::NotInL(*x));
        }
        *o = n;
    }
    Ok(out)
}

pub fn phi_plus(x: &Icosian) -> Quat {
    *x.quat() + x.quat().twist()
}

/// Cartan matrix of A4.
pub fn cartan_a4() -> SmallGram {
    SmallGram::from_array([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]])
        .expect("A4 is positive definite")
}

/// `5·C⁻¹`, an integral Gram of `L*` scaled by `det C = 5`.
pub fn dual_lattice_gram() -> SmallGram {
    SmallGram::from_array([[4, 3, 2, 1], [3, 6, 4, 2], [2, 4, 6, 3], [1, 2, 3, 4]])
        .expect("dual Gram is positive definite")
}

/// Gram of the L basis under `tr(x ȳ) = 2⟨x, y⟩`.
pub fn l_gram() -> Vec<Vec<i64>> {
    let b = l_basis();
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let t = b[i].dot(&b[j]) + b[i].dot(&b[j]);
                    let (n, d) = t.to_rational().expect("L is a rational lattice");
                    assert_eq!(d, 1);
                    n as i64
                })
                .collect()
        })
        .collect()
}

/// A full-rank sublattice of `L` in L-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordSublattice {
    pub hnf: IntMatrix,
    pub index: u64,
}

impl CoordSublattice {
    /// Canonicalises the span of integer generator rows; `None` unless of rank 4.
    pub fn from_generators(gens: &IntMatrix) -> Result<Option<Self>, GeometryError> {
        let hnf = gens.hnf();
        if hnf.nrows() != 4 {
            return Ok(None);
        }
        let index = hnf.det().abs().to_u64().ok_or(GeometryError::IndexOverflow)?;
        Ok(Some(CoordSublattice { hnf, index }))
    }

    /// No rational prime divides every vector.
    pub fn is_l_primitive(&self) -> bool {
        self.hnf.content().is_one()
    }

    /// Gram of the HNF basis in the doubled form.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let c = IntMatrix::from_i64(&cartan_a4().rows());
        let g = self.hnf.mul(&c).mul(&self.hnf.transpose());
        g.to_i64().expect("Gram entries fit in i64")
    }

    pub fn contains(&self, other: &CoordSublattice) -> bool {
        let me = ExactLattice::from_integer_generators(&self.hnf);
        me.contains_lattice(&ExactLattice::from_integer_generators(&other.hnf))
    }

    /// Whether the Gram equals `m` times Cartan(A4) up to integral equivalence.
    pub fn is_similar_with_factor(&self, m: i64) -> Result<bool, FormError> {
        let scaled: Vec<Vec<i64>> = cartan_a4()
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * m).collect())
            .collect();
        SmallGram::new(&self.gram())?.is_equivalent(&SmallGram::new(&scaled)?)
    }

    fn row_quats(&self) -> Vec<Quat> {
        let b = l_basis();
        self.hnf
            .rows()
            .iter()
            .map(|r| {
                (0..4).fold(Quat::ZERO, |acc, i| {
                    acc + b[i].scale(GoldenRat::from(r[i].to_i128().expect("small coordinates")))
                })
            })
            .collect()
    }

    /// Image under the twist map, re-canonicalised.
    pub fn twisted(&self) -> Result<CoordSublattice, GeometryError> {
        let rows: Result<Vec<[i128; 4]>, _> = self.row_quats().iter().map(|x| l_coords(&x.twist())).collect();
        let m = IntMatrix::from_i128(&rows?);
        Ok(CoordSublattice::from_generators(&m)?.expect("twist is injective"))
    }

    pub fn hnf_i64(&self) -> Vec<Vec<i64>> {
        self.hnf.to_i64().expect("HNF entries fit in i64")
    }
}

impl Serialize for CoordSublattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.hnf.serialize(s)
    }
}

fn nonzero(q: &Icosian) -> Result<(), GeometryError> {
    if q.is_zero() {
        Err(GeometryError::Zero)
    } else {
        Ok(())
    }
}

/// `p L p̃`, a similar sublattice of index `N(nr p)²`.
pub fn ssl_of(p: &Icosian) -> Result<CoordSublattice, GeometryError> {
    nonzero(p)?;
    let pt = p.quat().twist();
    let rows: Result<Vec<[i128; 4]>, _> = l_basis().iter().map(|b| l_coords(&(*p.quat() * *b * pt))).collect();
    Ok(CoordSublattice::from_generators(&IntMatrix::from_i128(&rows?))?.expect("p L p~ has full rank"))
}

/// `L(q) = φ₊(q I)`.
pub fn l_of_ideal(q: &Icosian) -> Result<CoordSublattice, GeometryError> {
    nonzero(q)?;
    let basis = crate::icosian::z_basis();
    let rows: Result<Vec<[i128; 4]>, _> = basis
        .iter()
        .map(|e| {
            let x = Icosian::from_quat(&(*q.quat() * *e)).expect("I is a ring");
            l_coords(&phi_plus(&x))
        })
        .collect();
    Ok(CoordSublattice::from_generators(&IntMatrix::from_i128(&rows?))?.expect("L(q) has full rank"))
}

fn golden_rat_parts(x: &GoldenRat) -> (BigRational, BigRational) {
    let d = BigInt::from(x.den());
    let n = x.num();
    (
        BigRational::new(BigInt::from(n.a), d.clone()),
        BigRational::new(BigInt::from(n.b), d),
    )
}

/// Rows of the rotation's L-coordinate matrix: row `i` holds the
/// coordinates of `R bᵢ` over `K`.
fn rotation_l_rows(r: &RotationMatrix) -> [[GoldenRat; 4]; 4] {
    l_basis().map(|b| l_coords_k(&r.apply(&b)))
}

/// `L ∩ R L` computed in `Q⁸`, where a K-coordinate `u + vτ` becomes `(u, v)`.
pub fn direct_csl(r: &RotationMatrix) -> Result<CoordSublattice, GeometryError> {
    let to_q8 = |c: &[GoldenRat; 4]| -> Vec<BigRational> {
        let (us, vs): (Vec<_>, Vec<_>) = c.iter().map(golden_rat_parts).unzip();
        us.into_iter().chain(vs).collect()
    };
    let images: Vec<Vec<BigRational>> = rotation_l_rows(r).iter().map(to_q8).collect();
    let rotated = ExactLattice::from_generators(&RatMatrix::new(images, 8));
    let l_rows: Vec<Vec<i64>> = (0..4).map(|i| (0..8).map(|j| (i == j) as i64).collect()).collect();
    let l = ExactLattice::from_integer_generators(&IntMatrix::from_i64(&l_rows));
    let meet = lattice_intersect(&l, &rotated).expect("same ambient space");
    let gens = meet
        .integer_hnf()
        .expect("a sublattice of L has integer coordinates")
        .rows()
        .iter()
        .map(|row| row[..4].to_vec())
        .collect();
    Ok(CoordSublattice::from_generators(&IntMatrix::new(gens, 4))?
        .expect("coincidence rotations have a full-rank CSL"))
}

/// A coincidence site lattice with both of its constructions checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CslResult {
    pub q: Icosian,
    pub csl: CoordSublattice,
    pub sigma: u64,
    pub rotation: RotationMatrix,
    pub extension: ExtensionPair,
}

impl Serialize for CslResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CslResult", 4)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("sigma", &self.sigma)?;
        st.serialize_field("hnf", &self.csl.hnf_i64())?;
        st.serialize_field("rotation", &self.rotation)?;
        st.end()
    }
}

fn require_primitive(q: &Icosian) -> Result<(), GeometryError> {
    nonzero(q)?;
    if !q.is_primitive()? {
        return Err(GeometryError::NotPrimitive(q.content()?));
    }
    Ok(())
}

/// `L ∩ (1/|qq̃|) q L q̃`, built as `L(α q)` and as a direct intersection.
pub fn csl_of(q: &Icosian) -> Result<CslResult, GeometryError> {
    require_primitive(q)?;
    if !q.is_admissible()? {
        return Err(GeometryError::NotAdmissible(q.nr().norm()));
    }
    let extension = q.extension()?;
    let rotation = q.rotation()?;
    let ideal = l_of_ideal(&extension.q_ext)?;
    let direct = direct_csl(&rotation)?;
    if ideal != direct {
        return Err(GeometryError::DualPathMismatch {
            ideal: ideal.hnf,
            direct: direct.hnf,
        });
    }
    if ideal.index != extension.sigma {
        return Err(GeometryError::IndexMismatch {
            index: ideal.index,
            sigma: extension.sigma,
        });
    }
    Ok(CslResult {
        q: *q,
        sigma: ideal.index,
        csl: ideal,
        rotation,
        extension,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Denominator {
    Integer { value: u64 },
    /// The denominator is `√square`, irrational.
    Irrational { square: i128 },
}

/// Least `n` with `n R(q) L ⊆ L`, checked against `|q q̃|`.
pub fn denominator_of(q: &Icosian) -> Result<Denominator, GeometryError> {
    require_primitive(q)?;
    let Some(n) = q.admissible_scale()? else {
        return Ok(Denominator::Irrational { square: q.nr().norm() });
    };
    let rows = rotation_l_rows(&q.rotation()?);
    let integral_with = |d: u64| {
        let d = GoldenRat::from(d as i128);
        rows.iter().flatten().all(|x| {
            (*x * d)
                .to_rational()
                .is_some_and(|(_, den)| den == 1)
        })
    };
    let found = arith::divisors(n)
        .into_iter()
        .find(|&d| integral_with(d))
        .unwrap_or(0);
    if found != n {
        return Err(GeometryError::DenominatorMismatch { found, expected: n });
    }
    Ok(Denominator::Integer { value: n })
}

/// Canonical sublattice spanned by integer rows of full rank.
pub fn hnf_from_rows(rows: &[Vec<i64>]) -> CoordSublattice {
    let m = IntMatrix::from_i64(rows);
    CoordSublattice::from_generators(&m)
        .expect("index fits")
        .expect("full rank")
}

/// `n·L` in L-coordinates.
pub fn scaled_l(n: i64) -> CoordSublattice {
    let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if i == j { n } else { 0 }).collect()).collect();
    hnf_from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosian::{enumerate_by_reduced_norm, norm_one_units, z_basis};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ico(c: [i128; 4]) -> Icosian {
        Icosian::from_quat(&Quat::from_ints(c)).unwrap()
    }

    fn random_nonzero(rng: &mut ChaCha8Rng, bound: i128) -> Icosian {
        loop {
            let q = Icosian::random(rng, bound);
            if !q.is_zero() {
                return q;
            }
        }
    }

    #[test]
    fn basis_gram_is_cartan() {
        assert_eq!(l_gram(), cartan_a4().rows());
        for b in l_basis() {
            assert!(crate::icosian::contains(&b));
            assert_eq!(b.twist(), b);
        }
        assert_eq!(cartan_a4().det(), 5);
        assert_eq!(dual_lattice_gram().det(), 125);
    }

    #[test]
    fn dual_gram_is_five_times_inverse_cartan() {
        let c = RatMatrix::from_i64(&cartan_a4().rows());
        let five = BigRational::from_integer(5.into());
        assert_eq!(c.inverse().unwrap().scale(&five), RatMatrix::from_i64(&dual_lattice_gram().rows()));
        assert_eq!(c.det().recip(), BigRational::new(1.into(), 5.into()));
    }

    #[test]
    fn phi_plus_examples() {
        assert_eq!(phi_plus(&Icosian::one()), Quat::from_ints([2, 0, 0, 0]));
        assert_eq!(phi_plus(&ico([0, 1, 0, 0])), Quat::from_ints([0, 2, 0, 0]));
        let b4 = Icosian::from_quat(&crate::icosian::o_basis()[3]).unwrap();
        let h = half(1, 0);
        assert_eq!(phi_plus(&b4), Quat::new(h, h, h, h));
        assert!(l_contains(&phi_plus(&b4)));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(l_coords(&l_basis()[1]).unwrap(), [0, 1, 0, 0]);
        let h = half(1, 0);
        let x = Quat::new(h, h, h, h);
        let c = l_coords(&x).unwrap();
        let b = l_basis();
        let back = (0..4).fold(Quat::ZERO, |acc, i| acc + b[i].scale(GoldenRat::from(c[i])));
        assert_eq!(back, x);
        let tau = Quat::new(GoldenRat::from(crate::golden::TAU), GoldenRat::ZERO, GoldenRat::ZERO, GoldenRat::ZERO);
        assert!(!l_contains(&tau));
        assert!(matches!(l_coords(&tau), Err(GeometryError::NotInL(_))));
    }

    #[test]
    fn l_is_the_twist_fixed_part_of_i() {
        for e in z_basis() {
            let x = Icosian::from_quat(&e).unwrap();
            assert!(l_contains(&phi_plus(&x)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x = Icosian::random(&mut rng, 5);
            let y = phi_plus(&x);
            assert!(l_contains(&y));
            assert_eq!(y.twist(), y);
            // twist-fixed icosians are exactly the members of L
            assert_eq!(l_contains(x.quat()), x.twist() == x);
        }
    }

    #[test]
    fn ssl_examples() {
        for u in norm_one_units().iter().step_by(7) {
            assert_eq!(ssl_of(u).unwrap(), scaled_l(1));
        }
        assert_eq!(ssl_of(&ico([1, 1, 0, 0])).unwrap().index, 16);
        assert_eq!(ssl_of(&ico([2, 0, 0, 0])).unwrap(), scaled_l(4));
        assert_eq!(ssl_of(&ico([2, 0, 0, 0])).unwrap().index, 256);
        assert_eq!(ssl_of(&Icosian::from_z_coords([0; 8])), Err(GeometryError::Zero));
    }

    #[test]
    fn ssl_properties_on_random_icosians() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let full = scaled_l(1);
        let mut primitive_seen = 0;
        for i in 0..1000 {
            let p = random_nonzero(&mut rng, 2);
            let s = ssl_of(&p).unwrap();
            let m = p.nr().norm();
            assert!(full.contains(&s));
            assert_eq!(s.index as i128, m * m);
            assert_eq!(s.index == 1, p.is_unit());
            if p.is_primitive().unwrap() {
                primitive_seen += 1;
                assert!(s.is_l_primitive(), "p = {}", p.quat());
            }
            if i % 10 == 0 {
                assert!(s.is_similar_with_factor(m as i64).unwrap());
            }
        }
        assert!(primitive_seen > 500);
    }

    #[test]
    fn l_of_ideal_examples() {
        assert_eq!(l_of_ideal(&Icosian::one()).unwrap(), scaled_l(1));
        for u in norm_one_units().iter().step_by(11) {
            assert_eq!(l_of_ideal(u).unwrap(), scaled_l(1));
        }
        let ext = ico([1, 1, 0, 0]).extension().unwrap();
        let l = l_of_ideal(&ext.q_ext).unwrap();
        assert_eq!(l.index, 2);
        assert_eq!(l.twisted().unwrap(), l);
    }

    #[test]
    fn csl_examples() {
        let u = csl_of(&norm_one_units()[17]).unwrap();
        assert_eq!((u.sigma, u.csl.clone()), (1, scaled_l(1)));
        let c = csl_of(&ico([1, 1, 0, 0])).unwrap();
        assert_eq!(c.sigma, 2);
        assert!(c.rotation.is_orthogonal());
        assert_eq!(c.rotation.det(), GoldenRat::ONE);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["sigma"], 2);
        assert_eq!(json["q"].as_array().unwrap().len(), 8);
        assert_eq!(json["hnf"].as_array().unwrap().len(), 4);
        assert_eq!(json["rotation"][0].as_array().unwrap().len(), 4);
    }

    #[test]
    fn csl_errors_are_distinct() {
        assert!(matches!(csl_of(&ico([2, 2, 0, 0])), Err(GeometryError::NotPrimitive(_))));
        let tau = GoldenRat::from(crate::golden::TAU);
        let q = Icosian::from_quat(&Quat::new(tau, GoldenRat::ONE, GoldenRat::ZERO, GoldenRat::ZERO)).unwrap();
        assert!(matches!(csl_of(&q), Err(GeometryError::NotAdmissible(5))));
    }

    #[test]
    fn csl_is_constant_on_right_ideal_classes() {
        let q = ico([1, 1, 1, 0]);
        let base = csl_of(&q).unwrap();
        for u in norm_one_units().iter().step_by(5) {
            let r = q.mul(u);
            assert!(q.right_ideal_equal(&r).unwrap());
            assert_eq!(csl_of(&r).unwrap().csl, base.csl);
        }
        for k in [-2, -1, 1, 3] {
            let r = q.scale(GoldenInt::tau_pow(k));
            let c = csl_of(&r).unwrap();
            assert_eq!(c.csl, base.csl);
            assert_eq!(c.rotation, if k % 2 == 0 { base.rotation.clone() } else { base.rotation.negated() });
        }
    }

    #[test]
    fn denominators() {
        assert_eq!(denominator_of(&Icosian::one()).unwrap(), Denominator::Integer { value: 1 });
        assert_eq!(denominator_of(&ico([1, 1, 0, 0])).unwrap(), Denominator::Integer { value: 2 });
        let tau = GoldenRat::from(crate::golden::TAU);
        let q = Icosian::from_quat(&Quat::new(tau, GoldenRat::ONE, GoldenRat::ZERO, GoldenRat::ZERO)).unwrap();
        assert_eq!(q.nr(), GoldenInt::new(2, 1));
        assert_eq!(denominator_of(&q).unwrap(), Denominator::Irrational { square: 5 });
        assert!(matches!(denominator_of(&ico([0, 2, 2, 0])), Err(GeometryError::NotPrimitive(_))));
    }

    #[test]
    fn csl_by_reduced_norm_shell() {
        // every primitive icosian of reduced norm 3 gives Σ = lcm(3, 3) = 3
        let g = GoldenInt::int(3);
        let qs = enumerate_by_reduced_norm(g);
        assert!(!qs.is_empty());
        for q in qs.iter().filter(|q| q.is_primitive().unwrap()).take(40) {
            let c = csl_of(q).unwrap();
            assert_eq!(c.sigma, 3);
            assert_eq!(denominator_of(q).unwrap(), Denominator::Integer { value: 3 });
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ssl_index_is_squared_norm(c in proptest::array::uniform8(-3i128..=3)) {
            let p = Icosian::from_z_coords(c);
            prop_assume!(!p.is_zero());
            let m = p.nr().norm();
            prop_assert_eq!(ssl_of(&p).unwrap().index as i128, m * m);
        }

        #[test]
        fn csl_dual_path_and_twist_stability(c in proptest::array::uniform8(-2i128..=2)) {
            let q = Icosian::from_z_coords(c);
            prop_assume!(!q.is_zero() && q.is_primitive().unwrap() && q.is_admissible().unwrap());
            let r = csl_of(&q).unwrap();
            prop_assert_eq!(r.sigma, q.sigma().unwrap());
            prop_assert_eq!(r.csl.twisted().unwrap(), r.csl.clone());
            prop_assert!(r.rotation.is_orthogonal());
        }
    }
}
