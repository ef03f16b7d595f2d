//! Exact arithmetic in the golden field `K = Q(√5)` and its ring of integers
//! `o = Z[τ]`, `τ = (1 + √5) / 2`.
//!
//! Elements of `o` are stored as `a + bτ`. Real embeddings are never
//! evaluated in floating point: every sign test reduces to comparing
//! `u + v√5` against zero with integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GoldenError {
    #[error("zero input")]
    Zero,
    #[error("both arguments are zero")]
    BothZero,
    #[error("norm {0} is too large to factor")]
    NormTooLarge(i128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },
    #[error("{0} is not an element of Z[t]")]
    NotIntegral(GoldenRat),
}

/// Sign of `u + v√5`.
fn sign_sqrt5(u: i128, v: i128) -> Ordering {
    let su = u.cmp(&0);
    let sv = v.cmp(&0);
    if su == sv || sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal {
        return sv;
    }
    // opposite signs: the larger magnitude wins (equality is impossible)
    if u * u > 5 * v * v {
        su
    } else {
        sv
    }
}

/// Round-to-nearest division, ties toward +infinity.
fn div_round(u: i128, n: i128) -> i128 {
    let (u, n) = if n < 0 { (-u, -n) } else { (u, n) };
    Integer::div_floor(&(2 * u + n), &(2 * n))
}

/// An element `a + bτ` of `Z[τ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GoldenInt {
    pub a: i128,
    pub b: i128,
}

pub const TAU: GoldenInt = GoldenInt { a: 0, b: 1 };
const TAU_SQ: GoldenInt = GoldenInt { a: 1, b: 1 };
const TAU_INV_SQ: GoldenInt = GoldenInt { a: 2, b: -1 };
const TAU_FOURTH: GoldenInt = GoldenInt { a: 2, b: 3 };
/// `2τ - 1 = √5`, generator of the prime over 5.
pub const SQRT5: GoldenInt = GoldenInt { a: -1, b: 2 };

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };

    pub const fn new(a: i128, b: i128) -> Self {
        GoldenInt { a, b }
    }

    pub const fn int(a: i128) -> Self {
        GoldenInt { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(self) -> bool {
        self.b == 0
    }

    /// Galois conjugate: `τ ↦ 1 - τ`.
    pub fn conj(self) -> Self {
        GoldenInt::new(self.a + self.b, -self.b)
    }

    /// `x·x'`, which may be negative.
    pub fn norm_signed(self) -> i128 {
        self.a * self.a + self.a * self.b - self.b * self.b
    }

    /// Absolute norm `|x·x'|`.
    pub fn norm(self) -> i128 {
        self.norm_signed().abs()
    }

    /// Field trace `x + x'`.
    pub fn trace(self) -> i128 {
        2 * self.a + self.b
    }

    /// Sign of the real embedding (τ ↦ 1.618…).
    pub fn sign(self) -> Ordering {
        sign_sqrt5(2 * self.a + self.b, self.b)
    }

    /// Sign of the conjugate embedding (τ ↦ -0.618…).
    pub fn conj_sign(self) -> Ordering {
        sign_sqrt5(2 * self.a + self.b, -self.b)
    }

    /// Compares real embeddings.
    pub fn cmp_real(self, other: Self) -> Ordering {
        (self - other).sign()
    }

    pub fn is_totally_positive(self) -> bool {
        self.sign() == Ordering::Greater && self.conj_sign() == Ordering::Greater
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn pow(self, mut exp: u32) -> Self {
        let mut base = self;
        let mut acc = GoldenInt::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// `τ^k` for any integer `k`.
    pub fn tau_pow(k: i32) -> Self {
        if k >= 0 {
            TAU.pow(k as u32)
        } else {
            GoldenInt::new(-1, 1).pow((-k) as u32)
        }
    }

    /// Exact quotient `self / d` if it lies in `Z[τ]`.
    pub fn div_exact(self, d: Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm_signed();
        let p = self * d.conj();
        (p.a % n == 0 && p.b % n == 0).then(|| GoldenInt::new(p.a / n, p.b / n))
    }

    pub fn divides(self, x: Self) -> bool {
        x.div_exact(self).is_some()
    }

    /// Euclidean division with remainder of strictly smaller absolute norm.
    pub fn div_rem(self, d: Self) -> (Self, Self) {
        let n = d.norm_signed();
        let p = self * d.conj();
        let q = GoldenInt::new(div_round(p.a, n), div_round(p.b, n));
        (q, self - q * d)
    }

    /// The canonical associate: the unique totally positive associate `x`
    /// whose real embedding satisfies `1 <= x / √N(x) < τ²`.
    pub fn canonical(self) -> Self {
        assert!(!self.is_zero(), "canonical associate of zero");
        let mut x = self;
        if x.norm_signed() < 0 {
            x = x * TAU;
        }
        if x.sign() == Ordering::Less {
            x = -x;
        }
        let n = GoldenInt::int(x.norm_signed());
        let upper = n * TAU_FOURTH;
        loop {
            let sq = x * x;
            if sq.cmp_real(n) == Ordering::Less {
                x = x * TAU_SQ;
            } else if sq.cmp_real(upper) != Ordering::Less {
                x = x * TAU_INV_SQ;
            } else {
                return x;
            }
        }
    }

    pub fn is_associate(self, other: Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.canonical() == other.canonical(),
            _ => false,
        }
    }
}

impl From<i128> for GoldenInt {
    fn from(a: i128) -> Self {
        GoldenInt::int(a)
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, o: Self) -> Self {
        GoldenInt::new(self.a + o.a, self.b + o.b)
    }
}

impl AddAssign for GoldenInt {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, o: Self) -> Self {
        GoldenInt::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> Self {
        GoldenInt::new(-self.a, -self.b)
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, o: Self) -> Self {
        // τ² = τ + 1
        let bd = self.b * o.b;
        GoldenInt::new(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)
    }
}

/// Generator of the ideal `(x, y)`, as a canonical associate.
pub fn gcd(x: GoldenInt, y: GoldenInt) -> Result<GoldenInt, GoldenError> {
    if x.is_zero() && y.is_zero() {
        return Err(GoldenError::BothZero);
    }
    let (mut x, mut y) = (x, y);
    while !y.is_zero() {
        let (_, r) = x.div_rem(y);
        (x, y) = (y, r);
    }
    Ok(x.canonical())
}

/// Square root in `Z[τ]`, normalised to a positive real embedding.
/// Returns `None` when `x` is not a square.
pub fn sqrt(x: GoldenInt) -> Option<GoldenInt> {
    if x.is_zero() {
        return Some(x);
    }
    if x.sign() == Ordering::Less || x.conj_sign() == Ordering::Less {
        return None;
    }
    // (a + bτ)² = (a² + b²) + (2ab + b²)τ; both embeddings of the root are
    // bounded by √(|u| + 2|v|), hence |b| = |y - y'|/√5 < bound.
    let (u, v) = (x.a, x.b);
    let bound = arith::isqrt((u.unsigned_abs()) + 2 * v.unsigned_abs()) as i128 + 1;
    for b in -bound..=bound {
        let a = if b == 0 {
            if v != 0 || u < 0 {
                continue;
            }
            match arith::exact_sqrt(u as u128) {
                Some(r) => r as i128,
                None => continue,
            }
        } else {
            let num = v - b * b;
            if num % (2 * b) != 0 {
                continue;
            }
            num / (2 * b)
        };
        if a * a + b * b == u {
            let y = GoldenInt::new(a, b);
            return Some(if y.sign() == Ordering::Less { -y } else { y });
        }
    }
    None
}

/// Canonical primes of `o` lying over the rational prime `p`.
pub fn primes_over(p: u64) -> Vec<GoldenInt> {
    debug_assert!(arith::is_prime(p));
    match p % 5 {
        0 => vec![SQRT5.canonical()],
        1 | 4 => {
            // τ ≡ r (mod π) where r is a root of t² - t - 1 modulo p
            let s = arith::sqrt_mod(5, p).expect("5 is a square modulo p ≡ ±1 (5)");
            let inv2 = p.div_ceil(2);
            let r = ((1 + s as u128) * inv2 as u128 % p as u128) as i128;
            let pi = gcd(GoldenInt::int(p as i128), GoldenInt::new(-r, 1)).unwrap();
            debug_assert_eq!(pi.norm(), p as i128);
            let mut v = vec![pi, pi.conj().canonical()];
            v.sort();
            v
        }
        _ => vec![GoldenInt::int(p as i128)],
    }
}

/// Unique factorization `unit · ∏ prime^exp` with canonical primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenFactorization {
    pub unit: GoldenInt,
    pub factors: Vec<(GoldenInt, u32)>,
}

impl GoldenFactorization {
    pub fn product(&self) -> GoldenInt {
        self.factors
            .iter()
            .fold(self.unit, |acc, &(p, e)| acc * p.pow(e))
    }

    pub fn exponent_of(&self, prime: GoldenInt) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| *p == prime)
            .map_or(0, |&(_, e)| e)
    }
}

pub fn factor(x: GoldenInt) -> Result<GoldenFactorization, GoldenError> {
    if x.is_zero() {
        return Err(GoldenError::Zero);
    }
    let n = x.norm();
    let n64 = u64::try_from(n).map_err(|_| GoldenError::NormTooLarge(n))?;
    let mut rest = x;
    let mut factors = Vec::new();
    for (p, _) in arith::factor(n64) {
        for pi in primes_over(p) {
            let mut e = 0;
            while let Some(q) = rest.div_exact(pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((pi, e));
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by_key(|&(p, _)| (p.norm(), p));
    Ok(GoldenFactorization {
        unit: rest,
        factors,
    })
}

/// Generator of the ideal `lcm(x, y)` (exponentwise maximum), standardised
/// to its canonical associate; a rational integer ideal `(n)` yields `n > 0`.
pub fn lcm_std(x: GoldenInt, y: GoldenInt) -> Result<GoldenInt, GoldenError> {
    let fx = factor(x)?;
    let fy = factor(y)?;
    let mut primes: Vec<GoldenInt> = fx.factors.iter().chain(&fy.factors).map(|f| f.0).collect();
    primes.sort();
    primes.dedup();
    let m = primes.into_iter().fold(GoldenInt::ONE, |acc, p| {
        acc * p.pow(fx.exponent_of(p).max(fy.exponent_of(p)))
    });
    Ok(m.canonical())
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        GoldenRat::from(*self).fmt(f)
    }
}

impl FromStr for GoldenInt {
    type Err = GoldenError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r: GoldenRat = s.parse()?;
        r.to_golden_int().ok_or(GoldenError::NotIntegral(r))
    }
}

impl Serialize for GoldenInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GoldenInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element `num / den` of `K`, in lowest terms with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoldenRat {
    num: GoldenInt,
    den: i128,
}

impl GoldenRat {
    pub const ZERO: GoldenRat = GoldenRat {
        num: GoldenInt::ZERO,
        den: 1,
    };
    pub const ONE: GoldenRat = GoldenRat {
        num: GoldenInt::ONE,
        den: 1,
    };

    pub fn new(num: GoldenInt, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.a.gcd(&num.b).gcd(&den);
        let s = den.signum();
        GoldenRat {
            num: GoldenInt::new(s * num.a / g, s * num.b / g),
            den: s * den / g,
        }
    }

    /// `(a + bτ) / den`.
    pub fn from_parts(a: i128, b: i128, den: i128) -> Self {
        GoldenRat::new(GoldenInt::new(a, b), den)
    }

    pub fn num(&self) -> GoldenInt {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_golden_int(&self) -> Option<GoldenInt> {
        (self.den == 1).then_some(self.num)
    }

    /// `(numerator, denominator)` when the value is rational.
    pub fn to_rational(&self) -> Option<(i128, i128)> {
        self.num.is_rational().then_some((self.num.a, self.den))
    }

    pub fn conj(&self) -> Self {
        GoldenRat {
            num: self.num.conj(),
            den: self.den,
        }
    }

    pub fn sign(&self) -> Ordering {
        self.num.sign()
    }

    pub fn conj_sign(&self) -> Ordering {
        self.num.conj_sign()
    }

    pub fn recip(&self) -> Result<Self, GoldenError> {
        if self.is_zero() {
            return Err(GoldenError::DivisionByZero);
        }
        let n = self.num.norm_signed();
        Ok(GoldenRat::new(self.num.conj() * GoldenInt::int(self.den), n))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, GoldenError> {
        Ok(*self * o.recip()?)
    }

    fn parts(&self) -> ((i128, i128), (i128, i128)) {
        let ga = self.num.a.gcd(&self.den);
        let gb = self.num.b.gcd(&self.den);
        (
            (self.num.a / ga.max(1), self.den / ga.max(1)),
            (self.num.b / gb.max(1), self.den / gb.max(1)),
        )
    }
}

impl From<GoldenInt> for GoldenRat {
    fn from(x: GoldenInt) -> Self {
        GoldenRat { num: x, den: 1 }
    }
}

impl From<i128> for GoldenRat {
    fn from(a: i128) -> Self {
        GoldenRat::from(GoldenInt::int(a))
    }
}

impl Add for GoldenRat {
    type Output = GoldenRat;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return GoldenRat::new(self.num + o.num, self.den);
        }
        let l = self.den.lcm(&o.den);
        GoldenRat::new(
            self.num * GoldenInt::int(l / self.den) + o.num * GoldenInt::int(l / o.den),
            l,
        )
    }
}

impl AddAssign for GoldenRat {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for GoldenRat {
    type Output = GoldenRat;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> Self {
        GoldenRat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for GoldenRat {
    type Output = GoldenRat;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return GoldenRat::ZERO;
        }
        GoldenRat::new(self.num * o.num, self.den * o.den)
    }
}

fn fmt_frac(f: &mut fmt::Formatter<'_>, (n, d): (i128, i128)) -> fmt::Result {
    if d == 1 {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

impl fmt::Display for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ra, rb) = self.parts();
        if rb.0 == 0 {
            return fmt_frac(f, ra);
        }
        if ra.0 != 0 {
            fmt_frac(f, ra)?;
            if rb.0 > 0 {
                f.write_str("+")?;
            }
        }
        fmt_frac(f, rb)?;
        f.write_str("*t")
    }
}

fn parse_rational(s: &str, input: &str) -> Result<(i128, i128), GoldenError> {
    let bad = |reason| GoldenError::Parse {
        input: input.to_string(),
        reason,
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if n.is_empty() || d.is_empty() || !n.bytes().chain(d.bytes()).all(|c| c.is_ascii_digit()) {
        return Err(bad("malformed rational coefficient"));
    }
    let n: i128 = n.parse().map_err(|_| bad("coefficient out of range"))?;
    let d: i128 = d.parse().map_err(|_| bad("coefficient out of range"))?;
    if d == 0 {
        return Err(bad("zero denominator"));
    }
    Ok((n, d))
}

impl FromStr for GoldenRat {
    type Err = GoldenError;

    /// Accepts sums of signed terms `p`, `p/q`, `p/q*t`, `t`, e.g. `-1/2+3*t`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(GoldenError::Parse {
                input: input.to_string(),
                reason: "empty",
            });
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in s.char_indices() {
            if i > 0 && (c == '+' || c == '-') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = GoldenRat::ZERO;
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, is_tau) = if body == "t" {
                ((1, 1), true)
            } else if let Some(c) = body.strip_suffix("*t") {
                (parse_rational(c, input)?, true)
            } else {
                (parse_rational(body, input)?, false)
            };
            let n = if neg { -coef.0 } else { coef.0 };
            acc += if is_tau {
                GoldenRat::from_parts(0, n, coef.1)
            } else {
                GoldenRat::from_parts(n, 0, coef.1)
            };
        }
        Ok(acc)
    }
}

impl Serialize for GoldenRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GoldenRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i128, b: i128) -> GoldenInt {
        GoldenInt::new(a, b)
    }

    #[test]
    fn conjugation() {
        assert_eq!(TAU.conj(), g(1, -1));
        assert_eq!(g(5, 0).conj(), g(5, 0));
        assert_eq!(SQRT5.conj(), -SQRT5);
        assert_eq!(TAU * TAU, g(1, 1));
    }

    #[test]
    fn norms() {
        assert_eq!(TAU.norm(), 1);
        assert_eq!(TAU.norm_signed(), -1);
        // (τ + 2)(3 - τ) = 6 + τ - τ² = 5
        assert_eq!(g(2, 1) * g(2, 1).conj(), g(5, 0));
        assert_eq!(g(2, 1).norm(), 5);
        assert_eq!(g(2, 0).norm(), 4);
    }

    #[test]
    fn gcds() {
        assert_eq!(SQRT5 * SQRT5, g(5, 0));
        assert!(gcd(SQRT5, g(5, 0)).unwrap().is_associate(SQRT5));
        assert_eq!(gcd(g(2, 0), g(3, 0)).unwrap(), GoldenInt::ONE);
        assert_eq!(gcd(g(-7, 3), GoldenInt::ZERO).unwrap(), g(-7, 3).canonical());
        assert_eq!(gcd(GoldenInt::ZERO, GoldenInt::ZERO), Err(GoldenError::BothZero));
    }

    #[test]
    fn canonical_associates() {
        assert_eq!(TAU.canonical(), GoldenInt::ONE);
        assert_eq!(g(-3, 0).canonical(), g(3, 0));
        assert_eq!(SQRT5.canonical(), g(2, 1));
        for k in -6..=6 {
            let x = g(3, 1) * GoldenInt::tau_pow(k);
            assert_eq!(x.canonical(), (-x).canonical());
            assert_eq!(x.canonical(), g(3, 1).canonical());
        }
        assert!(g(3, 1).canonical().is_totally_positive());
    }

    #[test]
    fn factorizations() {
        let f = factor(g(5, 0)).unwrap();
        assert_eq!(f.factors, vec![(g(2, 1), 2)]);
        assert_eq!(f.product(), g(5, 0));

        let f = factor(g(11, 0)).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|&(p, e)| e == 1 && p.norm() == 11));
        let (p1, p2) = (f.factors[0].0, f.factors[1].0);
        assert!(p1.is_associate(g(3, 1)) || p2.is_associate(g(3, 1)));
        assert!(p1.is_associate(g(4, -1)) || p2.is_associate(g(4, -1)));
        assert_eq!(f.product(), g(11, 0));

        let f = factor(g(2, 0)).unwrap();
        assert_eq!(f.factors, vec![(g(2, 0), 1)]);
        // no element of norm ±2
        for a in -20..=20 {
            for b in -20..=20 {
                assert_ne!(g(a, b).norm(), 2);
            }
        }
        assert_eq!(factor(GoldenInt::ZERO), Err(GoldenError::Zero));
        assert_eq!(factor(TAU).unwrap().factors, vec![]);
    }

    #[test]
    fn lcms() {
        assert_eq!(lcm_std(g(2, 0), g(3, 0)).unwrap(), g(6, 0));
        let l = lcm_std(g(2, 1), g(2, 1).conj()).unwrap();
        assert!(l.is_associate(SQRT5));
        assert_eq!(lcm_std(g(3, 1), g(3, 1)).unwrap(), g(3, 1).canonical());
        // split prime and its conjugate: lcm is the rational prime
        assert_eq!(lcm_std(g(3, 1), g(4, -1)).unwrap(), g(11, 0));
        assert_eq!(lcm_std(g(3, 1).pow(2), g(3, 1).conj().pow(2)).unwrap(), g(121, 0));
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt(g(5, 0)), Some(SQRT5));
        assert_eq!(sqrt(g(1, 1)), Some(TAU));
        assert_eq!(sqrt(g(2, 0)), None);
        assert_eq!(sqrt(g(-4, 0)), None);
        assert_eq!(sqrt(g(0, 0)), Some(GoldenInt::ZERO));
        assert_eq!(sqrt(g(9, 0)), Some(g(3, 0)));
    }

    #[test]
    fn unit_and_positivity() {
        assert!(TAU.is_unit());
        assert!(!TAU.is_totally_positive());
        assert!((TAU * TAU).is_totally_positive());
        assert!(!g(5, 0).is_unit());
    }

    #[test]
    fn text_forms() {
        for (s, v) in [("-1+2*t", g(-1, 2)), ("3", g(3, 0)), ("t", TAU), ("-t", -TAU), ("4-1*t", g(4, -1))] {
            let x: GoldenInt = s.parse().unwrap();
            assert_eq!(x, v);
            assert_eq!(x.to_string().parse::<GoldenInt>().unwrap(), x);
        }
        assert_eq!(g(-1, 2).to_string(), "-1+2*t");
        let r: GoldenRat = "1/2-1/2*t".parse().unwrap();
        assert_eq!(r, GoldenRat::from_parts(1, -1, 2));
        assert_eq!(r.to_string(), "1/2-1/2*t");
        assert_eq!(GoldenRat::from_parts(1, 3, 6).to_string(), "1/6+1/2*t");
        assert!("1/0".parse::<GoldenRat>().is_err());
        assert!("x".parse::<GoldenRat>().is_err());
        assert!("1/2".parse::<GoldenInt>().is_err());
    }

    #[test]
    fn rational_field_ops() {
        let x = GoldenRat::from_parts(3, -2, 7);
        let y = GoldenRat::from_parts(1, 1, 2);
        assert_eq!((x * y).checked_div(&y).unwrap(), x);
        assert_eq!(x * x.recip().unwrap(), GoldenRat::ONE);
        assert_eq!(x - x, GoldenRat::ZERO);
        assert!(GoldenRat::ZERO.recip().is_err());
    }

    fn small() -> impl Strategy<Value = GoldenInt> {
        (-1000i128..1000, -1000i128..1000).prop_map(|(a, b)| GoldenInt::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_laws(x in small(), y in small(), z in small()) {
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
            prop_assert_eq!(x.conj().conj(), x);
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn factor_round_trip(x in small()) {
            prop_assume!(!x.is_zero());
            let f = factor(x).unwrap();
            prop_assert_eq!(f.product(), x);
            prop_assert!(f.unit.is_unit());
            for &(p, _) in &f.factors {
                let n = p.norm() as u64;
                prop_assert!(arith::is_prime(n) || arith::exact_sqrt(n as u128).is_some_and(|r| arith::is_prime(r as u64)));
                prop_assert_eq!(p.canonical(), p);
            }
        }

        #[test]
        fn gcd_lcm_relations(x in small(), y in small()) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            let d = gcd(x, y).unwrap();
            prop_assert!(d.divides(x) && d.divides(y));
            let l = lcm_std(x, y).unwrap();
            let quotient = (x * y).div_exact(d).unwrap();
            prop_assert!(quotient.is_associate(l));
            prop_assert!(l.is_totally_positive());
        }

        #[test]
        fn sqrt_inverts_squaring(x in small()) {
            let y = sqrt(x * x).unwrap();
            prop_assert_eq!(y * y, x * x);
            prop_assert!(y == x || y == -x);
            prop_assert_ne!(y.sign(), Ordering::Less);
        }

        #[test]
        fn canonical_is_idempotent(x in small(), k in -5i32..5) {
            prop_assume!(!x.is_zero());
            let c = x.canonical();
            prop_assert_eq!(c.canonical(), c);
            prop_assert_eq!((x * GoldenInt::tau_pow(k)).canonical(), c);
            prop_assert!(c.is_totally_positive());
        }
    }
}
