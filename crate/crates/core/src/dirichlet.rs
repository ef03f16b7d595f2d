//! Truncated Dirichlet series and local power series with exact integer
//! coefficients.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// A multiplicative function given by its values at prime powers `p^r`, `r ≥ 1`.
#[derive(Clone)]
pub struct MultFn {
    pub name: String,
    rule: Arc<dyn Fn(u64, u32) -> BigInt + Send + Sync>,
}

impl MultFn {
    pub fn new(name: impl Into<String>, rule: impl Fn(u64, u32) -> BigInt + Send + Sync + 'static) -> Self {
        MultFn {
            name: name.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn at_prime_power(&self, p: u64, r: u32) -> BigInt {
        if r == 0 {
            BigInt::one()
        } else {
            (self.rule)(p, r)
        }
    }

    /// Value at any `n ≥ 1` by factoring.
    pub fn eval(&self, n: u64) -> BigInt {
        crate::arith::factor(n)
            .into_iter()
            .map(|(p, r)| self.at_prime_power(p, r))
            .product()
    }

    /// The same rule with the value at `p^r` replaced.
    pub fn with_override(&self, p: u64, r: u32, value: BigInt) -> MultFn {
        let base = self.rule.clone();
        MultFn {
            name: format!("{} (modified at {p}^{r})", self.name),
            rule: Arc::new(move |q, s| if (q, s) == (p, r) { value.clone() } else { base(q, s) }),
        }
    }
}

impl fmt::Debug for MultFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultFn").field("name", &self.name).finish()
    }
}

/// Smallest prime factor of every `n ≤ limit` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Coefficients `a_1 … a_N` of `Σ a_n n^{-s}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletCoeffs {
    coeffs: Vec<BigInt>,
}

impl DirichletCoeffs {
    /// From `a_1 … a_N`.
    pub fn from_vec(values: Vec<BigInt>) -> Self {
        let mut coeffs = Vec::with_capacity(values.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(values);
        DirichletCoeffs { coeffs }
    }

    pub fn zeros(n: usize) -> Self {
        DirichletCoeffs {
            coeffs: vec![BigInt::zero(); n + 1],
        }
    }

    /// The series `1`.
    pub fn one(n: usize) -> Self {
        let mut d = Self::zeros(n);
        if n >= 1 {
            d.coeffs[1] = BigInt::one();
        }
        d
    }

    pub fn len(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `a_n`, for `1 ≤ n ≤ N`.
    pub fn get(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn set(&mut self, n: usize, v: BigInt) {
        self.coeffs[n] = v;
    }

    pub fn values(&self) -> &[BigInt] {
        &self.coeffs[1..]
    }

    /// `a_n = ∏ f(p^r)` over the factorization of `n`.
    pub fn expand_mult(f: &MultFn, n: usize) -> Self {
        let spf = smallest_prime_factors(n);
        let mut d = Self::one(n);
        for m in 2..=n {
            let p = spf[m] as usize;
            let (mut rest, mut r) = (m, 0u32);
            while rest % p == 0 {
                rest /= p;
                r += 1;
            }
            d.coeffs[m] = f.at_prime_power(p as u64, r) * &d.coeffs[rest];
        }
        d
    }

    /// Dirichlet convolution truncated at the shorter length.
    pub fn convolve(&self, o: &DirichletCoeffs) -> DirichletCoeffs {
        let n = self.len().min(o.len());
        let mut out = Self::zeros(n);
        for i in 1..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 1..=n / i {
                if !o.coeffs[j].is_zero() {
                    out.coeffs[i * j] += &self.coeffs[i] * &o.coeffs[j];
                }
            }
        }
        out
    }

    /// Dirichlet inverse; requires `a_1 = ±1` so the result stays integral.
    pub fn inverse(&self) -> Option<DirichletCoeffs> {
        let n = self.len();
        let a1 = self.coeffs.get(1)?;
        if a1.abs() != BigInt::one() {
            return None;
        }
        let mut out = Self::zeros(n);
        out.coeffs[1] = a1.clone();
        for m in 2..=n {
            let mut s = BigInt::zero();
            for d in divisors_up_to(m) {
                if d > 1 && !self.coeffs[d].is_zero() {
                    s += &self.coeffs[d] * &out.coeffs[m / d];
                }
            }
            out.coeffs[m] = -(s * a1);
        }
        Some(out)
    }

    /// The series in `s ↦ k·s`: coefficient of `n` moves to `n^k`, truncated at `limit`.
    pub fn reindex_power(&self, k: u32, limit: usize) -> DirichletCoeffs {
        let mut out = Self::zeros(limit);
        for n in 1..=self.len() {
            match n.checked_pow(k) {
                Some(m) if m <= limit => out.coeffs[m] = self.coeffs[n].clone(),
                _ => break,
            }
        }
        out
    }

    /// The series in `s ↦ s - e`: coefficient of `n` multiplied by `n^e`.
    pub fn weight(&self, e: u32) -> DirichletCoeffs {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * BigInt::from(n).pow(e))
            .collect();
        DirichletCoeffs { coeffs }
    }

    pub fn first_mismatch(&self, o: &DirichletCoeffs) -> Option<usize> {
        (1..=self.len().min(o.len())).find(|&n| self.coeffs[n] != o.coeffs[n])
    }
}

fn divisors_up_to(m: usize) -> impl Iterator<Item = usize> {
    let mut small: Vec<usize> = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                small.push(m / d);
            }
        }
        d += 1;
    }
    small.into_iter()
}

/// Truncated power series `Σ c_r X^r`, used for local Euler factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries(pub Vec<BigInt>);

impl PowerSeries {
    /// A polynomial given by its coefficients, truncated to `len` terms.
    pub fn poly(coeffs: &[i128], len: usize) -> Self {
        let mut v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        v.resize(len, BigInt::zero());
        v.truncate(len);
        PowerSeries(v)
    }

    /// `1 + a X^k` truncated to `len` terms.
    pub fn binomial(a: i128, k: usize, len: usize) -> Self {
        let mut v = vec![BigInt::zero(); len];
        v[0] = BigInt::one();
        if k < len {
            v[k] += BigInt::from(a);
        }
        PowerSeries(v)
    }

    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let n = self.0.len().min(o.0.len());
        let mut v = vec![BigInt::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                v[i + j] += &self.0[i] * &o.0[j];
            }
        }
        PowerSeries(v)
    }

    /// Inverse of a series with constant term `±1`.
    pub fn inverse(&self) -> Option<PowerSeries> {
        let c0 = self.0.first()?;
        if c0.abs() != BigInt::one() {
            return None;
        }
        let n = self.0.len();
        let mut v = vec![BigInt::zero(); n];
        v[0] = c0.clone();
        for k in 1..n {
            let s: BigInt = (1..=k).map(|i| &self.0[i] * &v[k - i]).sum();
            v[k] = -(s * c0);
        }
        Some(PowerSeries(v))
    }

    pub fn div(&self, o: &PowerSeries) -> Option<PowerSeries> {
        Some(self.mul(&o.inverse()?))
    }
}
