//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::Instant;

use a4_core::counting::{check_soc_identity, check_ssl_identity, f_soc, f_ssl, representable_ssl_indices};
use a4_core::geometry::{cartan_a4, dual_lattice_gram, l_basis, l_coords, l_of_ideal, phi_plus, scaled_l, ssl_of};
use a4_core::icosian::{contains, norm_one_units, z_basis, Icosian};
use a4_core::lattice::{sublattice_count, IntMatrix};
use a4_core::oracles::{oracle_csl_properties, oracle_soc_count_detailed, oracle_ssl_count_detailed};
use a4_core::quaternion::Quat;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, err: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(err)
    }
}

fn ssl_series() -> Outcome {
    let ms = [1u64, 4, 5, 9, 11, 16, 19, 20, 25, 29, 31, 36];
    let want = [1u64, 6, 6, 11, 24, 26, 40, 36, 31, 60, 64, 66];
    let got: Vec<BigUint> = ms.iter().map(|&m| f_ssl(m)).collect();
    let want: Vec<BigUint> = want.iter().map(|&v| BigUint::from(v)).collect();
    check(got == want, format!("{got:?}"), format!("got {got:?}, want {want:?}"))
}

fn soc_series() -> Outcome {
    let want: Vec<BigUint> = [1u64, 5, 10, 20, 30, 50, 50, 80, 90, 150, 144].iter().map(|&v| BigUint::from(v)).collect();
    let got: Vec<BigUint> = (1..=11).map(f_soc).collect();
    check(got == want, format!("{got:?}"), format!("got {got:?}, want {want:?}"))
}

fn identities() -> Outcome {
    check_ssl_identity(200).map_err(|e| format!("SSL: {e}"))?;
    check_soc_identity(200).map_err(|e| format!("SOC: {e}"))?;
    Ok("D_SSL and D_SOC identities exact up to N = 200".into())
}

fn ssl_oracle(max_m: u64, gram: &a4_core::forms::SmallGram) -> Outcome {
    let mut rows = Vec::new();
    for m in 1..=max_m {
        let c = oracle_ssl_count_detailed(m, gram);
        if c.candidates as u128 != sublattice_count(4, m * m) {
            return Err(format!("m = {m}: enumerated {} HNFs, expected {}", c.candidates, sublattice_count(4, m * m)));
        }
        let (oracle, formula) = (c.count, f_ssl(m));
        if BigUint::from(oracle) != formula {
            return Err(format!("m = {m}: oracle {oracle}, formula {formula}"));
        }
        rows.push(oracle);
    }
    Ok(format!("oracle counts {rows:?}, every HNF of index m^2 enumerated"))
}

fn soc_oracle() -> Outcome {
    let mut rows = Vec::new();
    for n in 1..=5 {
        let c = oracle_soc_count_detailed(n).map_err(|e| e.to_string())?;
        if BigUint::from(c.f_soc) != f_soc(n) {
            return Err(format!("n = {n}: {} rotations, formula {}", c.rotations, f_soc(n)));
        }
        rows.push(c.rotations);
    }
    Ok(format!("rotation counts {rows:?}, each divisible by 120"))
}

fn csl_theorems() -> Outcome {
    let r = oracle_csl_properties(100, 0);
    check(
        r.matches && r.range.len() == 100,
        format!("100 samples, Σ values up to {}", r.formula_values.iter().max().unwrap_or(&0)),
        format!("first mismatch {:?}, failures {:?}", r.first_mismatch, r.failures),
    )
}

fn twist_matrix_kernel_is_l() -> Result<(), String> {
    // fixed points of the twist on I, computed exactly as the kernel of T - 1
    let rows: Vec<Vec<i64>> = z_basis()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let t = Icosian::from_quat(&e.twist()).expect("twist preserves I").z_coords();
            (0..8).map(|j| t[j] as i64 - (i == j) as i64).collect()
        })
        .collect();
    let kernel = IntMatrix::from_i64(&rows).left_kernel();
    let basis = z_basis();
    let fixed: Vec<[i128; 4]> = kernel
        .rows()
        .iter()
        .map(|k| {
            let x = (0..8).fold(Quat::ZERO, |acc, j| {
                acc + basis[j].scale(i128::try_from(&k[j]).expect("small").into())
            });
            l_coords(&x).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let fixed = IntMatrix::from_i128(&fixed).hnf();
    if fixed != IntMatrix::identity(4) {
        return Err(format!("twist-fixed part of I is {fixed}, not L"));
    }
    if l_of_ideal(&Icosian::one()).map_err(|e| e.to_string())? != scaled_l(1) {
        return Err("φ₊(I) differs from L".into());
    }
    Ok(())
}

fn algebraic_invariants() -> Outcome {
    const N: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let units = norm_one_units();
    let mut primitive = 0;
    let mut unit_samples = 0;
    for i in 0..N {
        let x = Icosian::random(&mut rng, 4);
        let y = Icosian::random(&mut rng, 4);
        let (xq, yq) = (*x.quat(), *y.quat());
        if xq.twist().twist() != xq {
            return Err(format!("twist is not an involution at {xq}"));
        }
        if (xq * yq).twist() != yq.twist() * xq.twist() {
            return Err(format!("twist is not anti-multiplicative at {xq}, {yq}"));
        }
        if !contains(&xq.twist()) {
            return Err(format!("twist of {xq} leaves I"));
        }
        let phi = phi_plus(&x);
        if l_coords(&phi).is_err() || phi.twist() != phi {
            return Err(format!("φ₊({xq}) is not in L"));
        }
        let l_elem = {
            let b = l_basis();
            (0..4).fold(Quat::ZERO, |acc, j| acc + b[j].scale(rng.gen_range(-9i128..=9).into()))
        };
        if !contains(&l_elem) || l_elem.twist() != l_elem {
            return Err(format!("{l_elem} in L is not a twist-fixed icosian"));
        }
        // every fourth sample is a unit times τ^k, so both sides of the unit criterion occur
        let p = if i % 4 == 0 {
            unit_samples += 1;
            units[rng.gen_range(0..units.len())].scale(a4_core::golden::GoldenInt::tau_pow(rng.gen_range(-3..=3)))
        } else if x.is_zero() {
            continue;
        } else {
            x
        };
        let s = ssl_of(&p).map_err(|e| e.to_string())?;
        let m = p.nr().norm();
        if !scaled_l(1).contains(&s) || s.index as i128 != m * m {
            return Err(format!("pLp~ for p = {} has index {}, expected {}", p.quat(), s.index, m * m));
        }
        if (s.index == 1) != p.is_unit() {
            return Err(format!("unit criterion fails at {}", p.quat()));
        }
        if p.is_primitive().map_err(|e| e.to_string())? {
            primitive += 1;
            if !s.is_l_primitive() {
                return Err(format!("pLp~ is not L-primitive for primitive p = {}", p.quat()));
            }
        }
    }
    twist_matrix_kernel_is_l()?;
    Ok(format!("{N} samples ({unit_samples} units, {primitive} primitive); fixed part of I equals L exactly"))
}

fn representable() -> Outcome {
    let rep = representable_ssl_indices(500);
    let pos: Vec<u64> = (1..=500).filter(|&m| f_ssl(m) > BigUint::from(0u8)).collect();
    check(rep == pos, format!("{} indices agree", rep.len()), "sets differ".into())
}

fn main() -> ExitCode {
    let cartan = cartan_a4();
    let dual = dual_lattice_gram();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 SSL series reproduction", Box::new(ssl_series)),
        ("2 SOC series reproduction", Box::new(soc_series)),
        ("3 generating-function identities", Box::new(identities)),
        ("4 SSL oracle on A4, m <= 11", Box::new(move || ssl_oracle(11, &cartan))),
        ("5 SSL oracle on A4*, m <= 9", Box::new(move || ssl_oracle(9, &dual))),
        ("6 SOC rotation oracle, n <= 5", Box::new(soc_oracle)),
        ("7 CSL structure theorems", Box::new(csl_theorems)),
        ("8 algebraic invariants", Box::new(algebraic_invariants)),
        ("9 representable indices <= 500", Box::new(representable)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
