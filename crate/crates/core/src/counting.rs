//! Closed forms for the number of similar sublattices and coincidence
//! rotations of A4, and their Dirichlet series identities.
//!
//! `f_ssl(m)` counts SSLs of index `m²`; `120·f_soc(n)` counts coincidence
//! rotations of index `n`. Both are multiplicative.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith;
use crate::dirichlet::{DirichletCoeffs, MultFn, PowerSeries};

/// Splitting class of a rational prime in `Z[τ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeClass {
    Ramified,
    Split,
    Inert,
}

pub fn prime_class(p: u64) -> PrimeClass {
    match p % 5 {
        0 => PrimeClass::Ramified,
        1 | 4 => PrimeClass::Split,
        _ => PrimeClass::Inert,
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn pow(p: u64, e: u32) -> BigInt {
    big(p).pow(e)
}

/// `f_ssl(p^r)` for `r ≥ 1`.
pub fn f_ssl_prime_power(p: u64, r: u32) -> BigInt {
    match prime_class(p) {
        PrimeClass::Ramified => (pow(5, r + 1) - 1) / 4,
        PrimeClass::Split => {
            let num = BigInt::from(2) * (BigInt::one() - pow(p, r + 1))
                - BigInt::from(r + 1) * (BigInt::one() - pow(p, 2)) * pow(p, r);
            num / (BigInt::one() - big(p)).pow(2)
        }
        PrimeClass::Inert if r % 2 == 0 => (BigInt::from(2) - pow(p, r) - pow(p, r + 2)) / (BigInt::one() - pow(p, 2)),
        PrimeClass::Inert => BigInt::zero(),
    }
}

/// `f_soc(p^r)` for `r ≥ 1`.
pub fn f_soc_prime_power(p: u64, r: u32) -> BigInt {
    match prime_class(p) {
        PrimeClass::Ramified => BigInt::from(6) * pow(5, 2 * r - 1),
        PrimeClass::Split => {
            let num = big(p + 1) * pow(p, r - 1) * (pow(p, r + 1) + pow(p, r - 1) - 2);
            num / big(p - 1)
        }
        PrimeClass::Inert => pow(p, 2 * r) + pow(p, 2 * r - 2),
    }
}

/// Local factor of the Dedekind zeta function of `K`: the number of ideals of norm `p^r`.
pub fn zeta_k_prime_power(p: u64, r: u32) -> BigInt {
    match prime_class(p) {
        PrimeClass::Ramified => BigInt::one(),
        PrimeClass::Split => BigInt::from(r + 1),
        PrimeClass::Inert => BigInt::from((r % 2 == 0) as u8),
    }
}

pub fn ssl_rule() -> MultFn {
    MultFn::new("f_SSL", f_ssl_prime_power)
}

pub fn soc_rule() -> MultFn {
    MultFn::new("f_SOC", f_soc_prime_power)
}

pub fn zeta_k_rule() -> MultFn {
    MultFn::new("zeta_K", zeta_k_prime_power)
}

fn to_biguint(x: BigInt) -> BigUint {
    x.to_biguint().expect("counting functions are non-negative")
}

/// Number of SSLs of `L` of index `m²`.
pub fn f_ssl(m: u64) -> BigUint {
    assert!(m >= 1, "f_ssl is defined for m >= 1");
    to_biguint(ssl_rule().eval(m))
}

/// `1/120` of the number of coincidence rotations of index `n`.
pub fn f_soc(n: u64) -> BigUint {
    assert!(n >= 1, "f_soc is defined for n >= 1");
    to_biguint(soc_rule().eval(n))
}

pub fn expand_mult(f: &MultFn, n: usize) -> DirichletCoeffs {
    DirichletCoeffs::expand_mult(f, n)
}

pub fn zeta_coeffs(n: usize) -> DirichletCoeffs {
    DirichletCoeffs::expand_mult(&MultFn::new("zeta", |_, _| BigInt::one()), n)
}

pub fn zeta_k_coeffs(n: usize) -> DirichletCoeffs {
    DirichletCoeffs::expand_mult(&zeta_k_rule(), n)
}

/// `ζ_I(s) = ζ_K(2s) ζ_K(2s-1)`, indexed by `n` in `n^{-s}`.
pub fn zeta_i_coeffs(n: usize) -> DirichletCoeffs {
    let root = crate::arith::isqrt(n as u128) as usize;
    let zk = zeta_k_coeffs(root.max(1));
    zk.reindex_power(2, n).convolve(&zk.weight(1).reindex_power(2, n))
}

/// Where and how an identity check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
pub enum IdentityMismatch {
    #[error("coefficient at index {index}: series gives {series}, rule gives {rule}")]
    Coefficient { index: u64, series: BigInt, rule: BigInt },
    #[error("series has nonzero coefficient {series} at {n}, which is not an index of the form m^2")]
    NonSquareTerm { n: u64, series: BigInt },
    #[error("local factor at p = {p}, exponent {r}: Euler product gives {series}, rule gives {rule}")]
    LocalFactor { p: u64, r: u32, series: BigInt, rule: BigInt },
}

impl IdentityMismatch {
    /// The index of the counting function where the mismatch shows.
    pub fn index(&self) -> u64 {
        match self {
            IdentityMismatch::Coefficient { index, .. } => *index,
            IdentityMismatch::NonSquareTerm { n, .. } => *n,
            IdentityMismatch::LocalFactor { p, r, .. } => p.pow(*r),
        }
    }
}

/// `ζ(4s) ζ_I(s) / ζ_K(4s)` with coefficients indexed by `n` in `n^{-s}`, up to `limit`.
pub fn ssl_series(limit: usize) -> DirichletCoeffs {
    let zeta = zeta_coeffs(limit);
    let zk = zeta_k_coeffs(limit);
    let zeta_4s = zeta.reindex_power(4, limit);
    let zk_4s_inv = zk.reindex_power(4, limit).inverse().expect("leading coefficient 1");
    zeta_4s.convolve(&zeta_i_coeffs(limit)).convolve(&zk_4s_inv)
}

/// `ζ_K(s-1)/(1+5^{-s}) · ζ(s)ζ(s-2) / (ζ(2s)ζ(2s-2))`, up to `limit`.
pub fn soc_series(limit: usize) -> DirichletCoeffs {
    let zeta = zeta_coeffs(limit);
    let mu = zeta.inverse().expect("leading coefficient 1");
    // 1/(1 + 5^{-s}) = Σ (-1)^k 5^{-ks}
    let mut five = DirichletCoeffs::zeros(limit);
    let (mut pk, mut sign) = (1usize, 1i32);
    while pk <= limit {
        five.set(pk, BigInt::from(sign));
        pk *= 5;
        sign = -sign;
    }
    zeta_k_coeffs(limit)
        .weight(1)
        .convolve(&five)
        .convolve(&zeta)
        .convolve(&zeta.weight(2))
        .convolve(&mu.reindex_power(2, limit))
        .convolve(&mu.weight(2).reindex_power(2, limit))
}

fn exponent_limit(p: u64, n: u64) -> u32 {
    let mut r = 0;
    let mut pk = 1u64;
    while pk.saturating_mul(p) <= n {
        pk *= p;
        r += 1;
    }
    r.max(4)
}

fn primes_up_to(n: u64) -> impl Iterator<Item = u64> {
    (2..=n).filter(|&p| arith::is_prime(p))
}

/// Local Euler factor of `D_SSL` at `p`, in `X = p^{-2s}`.
pub fn ssl_local_factor(p: u64, len: usize) -> PowerSeries {
    let p = p as i128;
    let inv = |s: PowerSeries| s.inverse().expect("constant term 1");
    match prime_class(p as u64) {
        PrimeClass::Ramified => inv(PowerSeries::binomial(-1, 1, len).mul(&PowerSeries::binomial(-5, 1, len))),
        PrimeClass::Split => {
            let d = PowerSeries::binomial(-1, 1, len).mul(&PowerSeries::binomial(-p, 1, len).mul(&PowerSeries::binomial(-p, 1, len)));
            PowerSeries::binomial(1, 1, len).mul(&inv(d))
        }
        PrimeClass::Inert => {
            let d = PowerSeries::binomial(-1, 2, len).mul(&PowerSeries::binomial(-p * p, 2, len));
            PowerSeries::binomial(1, 2, len).mul(&inv(d))
        }
    }
}

/// Local Euler factor of `D_SOC` at `p`, in `X = p^{-s}`.
pub fn soc_local_factor(p: u64, len: usize) -> PowerSeries {
    let p = p as i128;
    let inv = |s: PowerSeries| s.inverse().expect("constant term 1");
    match prime_class(p as u64) {
        PrimeClass::Ramified => PowerSeries::binomial(5, 1, len).mul(&inv(PowerSeries::binomial(-25, 1, len))),
        PrimeClass::Split => {
            let num = PowerSeries::binomial(1, 1, len).mul(&PowerSeries::binomial(p, 1, len));
            let den = PowerSeries::binomial(-p, 1, len).mul(&PowerSeries::binomial(-p * p, 1, len));
            num.mul(&inv(den))
        }
        PrimeClass::Inert => PowerSeries::binomial(1, 1, len).mul(&inv(PowerSeries::binomial(-p * p, 1, len))),
    }
}

fn check_local(rule: &MultFn, n: u64, factor: impl Fn(u64, usize) -> PowerSeries) -> Result<(), IdentityMismatch> {
    for p in primes_up_to(n) {
        let rmax = exponent_limit(p, n);
        let series = factor(p, rmax as usize + 1);
        for r in 0..=rmax {
            let expected = rule.at_prime_power(p, r);
            if series.0[r as usize] != expected {
                return Err(IdentityMismatch::LocalFactor {
                    p,
                    r,
                    series: series.0[r as usize].clone(),
                    rule: expected,
                });
            }
        }
    }
    Ok(())
}

/// Checks `Σ f(m) m^{-2s} = ζ(4s) ζ_I(s)/ζ_K(4s)` for `m ≤ n`, and the local
/// Euler factors at every prime `p ≤ n`.
pub fn check_ssl_identity_with(rule: &MultFn, n: u64) -> Result<(), IdentityMismatch> {
    let limit = (n * n) as usize;
    let series = ssl_series(limit);
    let expected = DirichletCoeffs::expand_mult(rule, n as usize);
    for j in 1..=limit {
        let root = arith::exact_sqrt(j as u128);
        match root {
            Some(m) => {
                let e = expected.get(m as usize);
                if series.get(j) != e {
                    return Err(IdentityMismatch::Coefficient {
                        index: m as u64,
                        series: series.get(j).clone(),
                        rule: e.clone(),
                    });
                }
            }
            None if !series.get(j).is_zero() => {
                return Err(IdentityMismatch::NonSquareTerm {
                    n: j as u64,
                    series: series.get(j).clone(),
                });
            }
            None => {}
        }
    }
    check_local(rule, n, ssl_local_factor)
}

pub fn check_ssl_identity(n: u64) -> Result<(), IdentityMismatch> {
    check_ssl_identity_with(&ssl_rule(), n)
}

/// Checks `Σ f(n) n^{-s} = ζ_K(s-1)/(1+5^{-s}) · ζ(s)ζ(s-2)/(ζ(2s)ζ(2s-2))`
/// up to `n`, and the local Euler factors at every prime `p ≤ n`.
pub fn check_soc_identity_with(rule: &MultFn, n: u64) -> Result<(), IdentityMismatch> {
    let series = soc_series(n as usize);
    let expected = DirichletCoeffs::expand_mult(rule, n as usize);
    if let Some(i) = series.first_mismatch(&expected) {
        return Err(IdentityMismatch::Coefficient {
            index: i as u64,
            series: series.get(i).clone(),
            rule: expected.get(i).clone(),
        });
    }
    check_local(rule, n, soc_local_factor)
}

pub fn check_soc_identity(n: u64) -> Result<(), IdentityMismatch> {
    check_soc_identity_with(&soc_rule(), n)
}

/// All `m ≤ n` of the form `|k² + kℓ - ℓ²|` with `m > 0`.
pub fn representable_ssl_indices(n: u64) -> Vec<u64> {
    // every value has a representative with |k|, |ℓ| < 3√n
    let b = 3 * arith::isqrt(n as u128) as i128 + 2;
    let mut out = BTreeSet::new();
    for k in -b..=b {
        for l in -b..=b {
            let v = (k * k + k * l - l * l).abs();
            if v > 0 && v as u64 <= n {
                out.insert(v as u64);
            }
        }
    }
    out.into_iter().collect()
}
