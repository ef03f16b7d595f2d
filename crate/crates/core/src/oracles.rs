//! Brute-force checks of the closed-form counts.
//!
//! SSLs are counted by enumerating every HNF sublattice of index `m²` and
//! testing its Gram for equivalence with `m·G`. Coincidence rotations are
//! counted by enumerating icosian shells and deduplicating exact rotation
//! matrices. Neither oracle uses the counting formulas.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{soc_rule, ssl_rule};
use crate::dirichlet::MultFn;
use crate::forms::{scaled_sublattice_gram, SmallGram};
use crate::geometry::{csl_of, l_of_ideal, CoordSublattice};
use crate::golden::{self, GoldenInt};
use crate::icosian::{norm_one_units, trace_gram, Icosian};
use crate::lattice::{for_each_hnf_with_diagonal, ordered_factorizations};
use crate::quaternion::RotationMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{rotations} distinct rotations of index {n} is not a multiple of 120")]
    NotMultipleOf120 { n: u64, rotations: u64 },
    #[error("gram must be 4x4 positive definite")]
    BadGram,
}

/// Counters from one SSL oracle run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SslOracleCount {
    pub count: u64,
    pub candidates: u64,
    pub divisible: u64,
    pub theta_matched: u64,
}

impl std::ops::Add for SslOracleCount {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        SslOracleCount {
            count: self.count + o.count,
            candidates: self.candidates + o.candidates,
            divisible: self.divisible + o.divisible,
            theta_matched: self.theta_matched + o.theta_matched,
        }
    }
}

/// Sublattices of index `m²` whose Gram `H G Hᵀ` is integrally equivalent to `m·G`.
pub fn oracle_ssl_count_detailed(m: u64, gram: &SmallGram) -> SslOracleCount {
    assert!(m >= 1, "index must be positive");
    let n = gram.dim();
    let bound = gram.max_diagonal();
    let target_theta = gram.theta_counts(bound);
    let index = m * m;
    let tasks: Vec<(Vec<u64>, Option<i64>)> = ordered_factorizations(index, n)
        .into_iter()
        .flat_map(|d| {
            let last = d[n - 1] as i64;
            let tops: Vec<Option<i64>> = if n > 1 { (0..last).map(Some).collect() } else { vec![None] };
            tops.into_iter().map(move |t| (d.clone(), t))
        })
        .collect();
    tasks
        .par_iter()
        .map(|(diag, top)| {
            let mut c = SslOracleCount::default();
            for_each_hnf_with_diagonal(diag, *top, |h| {
                c.candidates += 1;
                let Some(q) = scaled_sublattice_gram(gram, h, m as i64) else {
                    return;
                };
                c.divisible += 1;
                let Ok(q) = SmallGram::new(&q) else {
                    return;
                };
                if q.theta_counts(bound) != target_theta {
                    return;
                }
                c.theta_matched += 1;
                if q.find_isometry(gram).is_some() {
                    c.count += 1;
                }
            });
            c
        })
        .reduce(SslOracleCount::default, |a, b| a + b)
}

pub fn oracle_ssl_count(m: u64, gram: &SmallGram) -> u64 {
    oracle_ssl_count_detailed(m, gram).count
}

/// Result of one SOC oracle run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocOracleCount {
    pub n: u64,
    pub rotations: u64,
    pub f_soc: u64,
    pub icosians: u64,
    /// Distinct CSLs among these rotations; exploratory, no closed form.
    pub distinct_csls: u64,
}

/// Totally positive divisors of `n` in `o`, one per associate class.
pub fn golden_divisors(n: u64) -> Vec<GoldenInt> {
    let f = golden::factor(GoldenInt::int(n as i128)).expect("n is nonzero");
    let mut out = vec![GoldenInt::ONE];
    for &(p, e) in &f.factors {
        let len = out.len();
        let mut pk = GoldenInt::ONE;
        for _ in 0..e {
            pk = pk * p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    let mut out: Vec<GoldenInt> = out.into_iter().map(GoldenInt::canonical).collect();
    out.sort_by(|a, b| a.norm().cmp(&b.norm()).then(a.cmp(b)));
    out.dedup();
    out
}

/// Primitive admissible icosians with `Σ(q) = n` and canonical reduced norm.
pub fn coincidence_icosians(n: u64) -> Vec<Icosian> {
    let norms: Vec<GoldenInt> = golden_divisors(n)
        .into_iter()
        .filter(|g| crate::arith::exact_sqrt(g.norm() as u128).is_some())
        .collect();
    let traces: BTreeSet<i64> = norms.iter().map(|g| g.trace() as i64).collect();
    let Some(&max_t) = traces.last() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    trace_gram().for_each_vector(2 * max_t, |v, form| {
        if form % 2 != 0 || !traces.contains(&(form / 2)) {
            return;
        }
        let q = Icosian::from_z_coords(std::array::from_fn(|i| v[i] as i128));
        if !norms.contains(&q.nr()) {
            return;
        }
        if q.is_primitive().unwrap_or(false) && q.sigma().ok() == Some(n) {
            out.push(q);
        }
    });
    out.sort_by_key(Icosian::z_coords);
    out
}

/// `120·f_soc(n)` counted as distinct exact rotation matrices.
pub fn oracle_soc_count_detailed(n: u64) -> Result<SocOracleCount, OracleError> {
    assert!(n >= 1, "index must be positive");
    let qs = coincidence_icosians(n);
    let mut rotations: HashSet<RotationMatrix> = HashSet::new();
    let mut csls: HashSet<CoordSublattice> = HashSet::new();
    for q in &qs {
        let r = q.rotation().expect("admissible");
        // τ^k q (k odd) has a non-canonical norm and gives -R
        rotations.insert(r.negated());
        rotations.insert(r);
        let ext = q.extension().expect("primitive and admissible");
        csls.insert(l_of_ideal(&ext.q_ext).expect("nonzero"));
    }
    let count = rotations.len() as u64;
    if count % 120 != 0 {
        return Err(OracleError::NotMultipleOf120 { n, rotations: count });
    }
    Ok(SocOracleCount {
        n,
        rotations: count,
        f_soc: count / 120,
        icosians: qs.len() as u64,
        distinct_csls: csls.len() as u64,
    })
}

pub fn oracle_soc_count(n: u64) -> Result<u64, OracleError> {
    Ok(oracle_soc_count_detailed(n)?.f_soc)
}

/// One formula-vs-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub range: Vec<u64>,
    pub formula_values: Vec<u64>,
    pub oracle_values: Vec<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub first_mismatch: Option<u64>,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    pub enumerated: BTreeMap<String, u64>,
}

impl VerificationReport {
    fn new(target: &str, range: Vec<u64>, formula: Vec<u64>, oracle: Vec<u64>, failures: Vec<String>, elapsed: Duration, enumerated: BTreeMap<String, u64>) -> Self {
        let first_mismatch = range
            .iter()
            .zip(formula.iter().zip(&oracle))
            .find(|(_, (a, b))| a != b)
            .map(|(i, _)| *i);
        VerificationReport {
            target: target.to_string(),
            matches: first_mismatch.is_none() && failures.is_empty() && formula.len() == oracle.len(),
            range,
            formula_values: formula,
            oracle_values: oracle,
            first_mismatch,
            failures,
            elapsed,
            enumerated,
        }
    }

    pub fn summary_line(&self) -> String {
        let status = if self.matches { "PASS" } else { "FAIL" };
        let mut s = format!("{status} {}: {} indices", self.target, self.range.len());
        if let Some(i) = self.first_mismatch {
            s.push_str(&format!(", first mismatch at {i}"));
        }
        if !self.failures.is_empty() {
            s.push_str(&format!(", {} failures", self.failures.len()));
        }
        s
    }
}

fn eval_u64(f: &MultFn, n: u64) -> u64 {
    u64::try_from(f.eval(n)).expect("counts in the oracle range fit in u64")
}

/// Compare a rule against the SSL oracle for `m = 1..=max_m`.
pub fn verify_ssl(rule: &MultFn, max_m: u64, gram: &SmallGram, target: &str) -> VerificationReport {
    let start = Instant::now();
    let range: Vec<u64> = (1..=max_m).collect();
    let formula: Vec<u64> = range.iter().map(|&m| eval_u64(rule, m)).collect();
    let mut total = SslOracleCount::default();
    let oracle: Vec<u64> = range
        .iter()
        .map(|&m| {
            let c = oracle_ssl_count_detailed(m, gram);
            total = total + c;
            c.count
        })
        .collect();
    let enumerated = BTreeMap::from([
        ("hnf_candidates".to_string(), total.candidates),
        ("divisible_grams".to_string(), total.divisible),
        ("theta_matched".to_string(), total.theta_matched),
    ]);
    VerificationReport::new(target, range, formula, oracle, Vec::new(), start.elapsed(), enumerated)
}

/// Compare a rule against the SOC oracle for `n = 1..=max_n`.
pub fn verify_soc(rule: &MultFn, max_n: u64) -> VerificationReport {
    let start = Instant::now();
    let range: Vec<u64> = (1..=max_n).collect();
    let formula: Vec<u64> = range.iter().map(|&n| eval_u64(rule, n)).collect();
    let results: Vec<Result<SocOracleCount, OracleError>> = range.par_iter().map(|&n| oracle_soc_count_detailed(n)).collect();
    let mut failures = Vec::new();
    let mut oracle = Vec::new();
    let mut enumerated = BTreeMap::new();
    for r in results {
        match r {
            Ok(c) => {
                oracle.push(c.f_soc);
                *enumerated.entry("icosians".to_string()).or_insert(0) += c.icosians;
                *enumerated.entry("rotations".to_string()).or_insert(0) += c.rotations;
                enumerated.insert(format!("distinct_csls_at_{}", c.n), c.distinct_csls);
            }
            Err(e) => {
                oracle.push(0);
                failures.push(e.to_string());
            }
        }
    }
    VerificationReport::new("f_soc vs rotation oracle", range, formula, oracle, failures, start.elapsed(), enumerated)
}

/// Draws primitive admissible icosians with `1 < Σ ≤ max_sigma`, deterministically.
pub fn sample_admissible(count: usize, seed: u64, max_sigma: u64) -> Vec<Icosian> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = Icosian::random(&mut rng, 3);
        if q.is_zero() || !q.is_primitive().unwrap_or(false) || !q.is_admissible().unwrap_or(false) {
            continue;
        }
        if q.sigma().is_ok_and(|s| s > 1 && s <= max_sigma) {
            out.push(q);
        }
    }
    out
}

/// Dual-path CSL identity, index formula, twist stability and right-ideal
/// invariance on seeded samples.
pub fn oracle_csl_properties(sample_size: usize, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let samples = sample_admissible(sample_size, seed, 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let units = norm_one_units();
    let checks: Vec<(Icosian, usize, i32)> = samples
        .iter()
        .map(|q| (*q, rng.gen_range(0..units.len()), rng.gen_range(-3..=3)))
        .collect();
    let outcomes: Vec<(u64, u64, Vec<String>)> = checks
        .par_iter()
        .map(|(q, ui, k)| {
            let coords = format!("{:?}", q.z_coords());
            let lcm = q.sigma().unwrap_or(0);
            let r = match csl_of(q) {
                Ok(r) => r,
                Err(e) => return (lcm, 0, vec![format!("{coords}: {e}")]),
            };
            let mut failures = Vec::new();
            match r.csl.twisted() {
                Ok(t) if t == r.csl => {}
                _ => failures.push(format!("{coords}: CSL is not twist-stable")),
            }
            let other = q.mul(&units[*ui]).scale(GoldenInt::tau_pow(*k));
            match csl_of(&other) {
                Ok(o) if o.csl == r.csl => {}
                _ => failures.push(format!("{coords}: right-ideal partner gives a different CSL")),
            }
            (lcm, r.sigma, failures)
        })
        .collect();
    let range: Vec<u64> = (1..=samples.len() as u64).collect();
    let formula = outcomes.iter().map(|o| o.0).collect();
    let oracle = outcomes.iter().map(|o| o.1).collect();
    let failures = outcomes.into_iter().flat_map(|o| o.2).collect();
    let enumerated = BTreeMap::from([("samples".to_string(), samples.len() as u64), ("seed".to_string(), seed)]);
    VerificationReport::new("CSL index lcm(nr q, nr q') vs both constructions", range, formula, oracle, failures, start.elapsed(), enumerated)
}

/// The aggregate of all verification runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub parameters: BTreeMap<String, u64>,
    pub reports: Vec<VerificationReport>,
    pub all_match: bool,
}

impl SuiteReport {
    pub fn elapsed(&self) -> Duration {
        self.reports.iter().map(|r| r.elapsed).sum()
    }
}

/// Rules under test; swapped for corrupted tables in negative controls.
#[derive(Debug, Clone)]
pub struct Rules {
    pub ssl: MultFn,
    pub soc: MultFn,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            ssl: ssl_rule(),
            soc: soc_rule(),
        }
    }
}

pub fn verify_all_with(rules: &Rules, max_ssl_m: u64, max_soc_n: u64, csl_samples: usize, seed: u64) -> SuiteReport {
    let cartan = crate::geometry::cartan_a4();
    let dual = crate::geometry::dual_lattice_gram();
    let reports = vec![
        verify_ssl(&rules.ssl, max_ssl_m, &cartan, "f_ssl vs HNF oracle on A4"),
        verify_ssl(&rules.ssl, max_ssl_m.min(9), &dual, "f_ssl vs HNF oracle on A4*"),
        verify_soc(&rules.soc, max_soc_n),
        oracle_csl_properties(csl_samples, seed),
    ];
    let parameters = BTreeMap::from([
        ("max_ssl_m".to_string(), max_ssl_m),
        ("max_soc_n".to_string(), max_soc_n),
        ("csl_samples".to_string(), csl_samples as u64),
        ("seed".to_string(), seed),
    ]);
    SuiteReport {
        all_match: reports.iter().all(|r| r.matches),
        parameters,
        reports,
    }
}

pub fn verify_all(max_ssl_m: u64, max_soc_n: u64, csl_samples: usize, seed: u64) -> SuiteReport {
    verify_all_with(&Rules::default(), max_ssl_m, max_soc_n, csl_samples, seed)
}
