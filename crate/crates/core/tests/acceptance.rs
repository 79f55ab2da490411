//! Acceptance criteria 1–8. Runs without the libtest harness and prints one
//! `PASS`/`FAIL` line per criterion; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qquarter::arith::{hilbert_symbol, int, rat, squarefree_part, Place, Rational};
use qquarter::curvelab::{
    find_q14_curve, trace_census, verify_frobenius_scalar, verify_frobenius_scalar_over_extension,
    FiniteField,
};
use qquarter::isogeny::{enumerate_classes, trace_set, IsogenyClass};
use qquarter::lfunc::{l_values, verify_identity_exact, Fixed};
use qquarter::qquarter::{
    construct_arithmetic_spin, construct_arithmetic_spin_randomized, has_arithmetic_spin,
    realizations, similitude_rep, spin_lift, SpinStructure,
};
use qquarter::quat::{b_p_infty, Quaternion};
use qquarter::spinspace::{covering_map, OrthogonalInvolution};

use common::*;

/// Pinned tolerances and budgets.
mod tol {
    use super::*;

    /// Numeric L-function gap: `10⁻¹²`.
    pub fn l_numeric() -> Rational {
        rat(1, 1_000_000_000_000)
    }
    pub const CENSUS_QS: [u64; 10] = [4, 5, 7, 8, 9, 11, 13, 25, 27, 49];
    pub const SPIN_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    pub const FROBENIUS_PRIMES: [u64; 4] = [5, 7, 11, 13];
    /// Field size cap for the `𝔽_{p⁴}` base-change check (`13⁴ = 28561`).
    pub const EXTENSION_FIELD_LIMIT: u64 = 30_000;
    pub const RANDOMIZED_SEEDS: u64 = 5;
    pub const RANDOMIZED_BOX: i64 = 3;
    pub const L_MAX_P: u64 = 50;
    pub const L_NS: [u32; 5] = [1, 2, 3, 4, 5];
    pub const L_SAMPLE_PN: [(u64, u32); 4] = [(3, 1), (5, 1), (7, 1), (3, 3)];
    pub const PRODUCT_FORMULA_PAIRS: usize = 200;
    pub const PRODUCT_FORMULA_BOUND: i64 = 100;
    pub const ORACLE_MAX_P: u64 = 50;
    pub const ORACLE_BOUND: i64 = 20;
    pub const INVOLUTION_SAMPLES: usize = 500;
    pub const NRD_SAMPLES: usize = 500;
    pub const DEFINITE_SAMPLES: usize = 200;
    pub const SEED: u64 = 0x05ee_d1a4;

    pub const BUDGET_1: Duration = Duration::from_secs(60);
    pub const BUDGET_2: Duration = Duration::from_secs(5);
    pub const BUDGET_3: Duration = Duration::from_secs(1);
    pub const BUDGET_4: Duration = Duration::from_secs(1);
    pub const BUDGET_5: Duration = Duration::from_secs(1);
    pub const BUDGET_6: Duration = Duration::from_secs(30);
    pub const BUDGET_7: Duration = Duration::from_secs(60);
    pub const BUDGET_8: Duration = Duration::from_secs(30);
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prime_power(q: u64) -> (u64, u32) {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q > 1");
    let mut a = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        a += 1;
    }
    assert_eq!(r, 1, "{q} is not a prime power");
    (p, a)
}

fn criterion_1() -> Outcome {
    for q in tol::CENSUS_QS {
        let (p, a) = prime_power(q);
        let field = Arc::new(FiniteField::new(p, a).map_err(|e| e.to_string())?);
        let counted: BTreeSet<i64> = trace_census(&field).into_keys().collect();
        let expected: BTreeSet<i64> = trace_set(p, a)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        ensure(counted == expected, || {
            let extra: Vec<_> = counted.difference(&expected).collect();
            let missing: Vec<_> = expected.difference(&counted).collect();
            format!("q = {q}: counted-only {extra:?}, classified-only {missing:?}")
        })?;
    }
    Ok(format!("{} fields, set equality", tol::CENSUS_QS.len()))
}

fn criterion_2(structures: &mut Vec<SpinStructure>) -> Outcome {
    for p in tol::SPIN_PRIMES {
        let pp = p as i64;
        let spinorial: Vec<IsogenyClass> = enumerate_classes(p, 2)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(IsogenyClass::is_spinorial)
            .collect();
        let betas: Vec<i64> = spinorial.iter().map(IsogenyClass::beta).collect();
        ensure(betas == [-2 * pp, 2 * pp], || {
            format!("p = {p}: spinorial traces {betas:?}")
        })?;
        let mut arithmetic = Vec::new();
        for class in &spinorial {
            let cert = has_arithmetic_spin(class).map_err(|e| e.to_string())?;
            if let Some(s) = cert.structure() {
                arithmetic.push(s.clone());
            }
        }
        ensure(
            arithmetic.len() == 1 && arithmetic[0].class().beta() == -2 * pp,
            || format!("p = {p}: {} arithmetic classes", arithmetic.len()),
        )?;
        let s = arithmetic.pop().expect("one structure");
        let disc = s.sigma().discriminant().map_err(|e| e.to_string())?;
        let want = squarefree_part(&int(-pp)).map_err(|e| e.to_string())?;
        ensure(disc == want && s.clifford().delta() == &want, || {
            format!("p = {p}: disc {disc}, expected {want}")
        })?;
        let canonical = construct_arithmetic_spin(p, 1).map_err(|e| e.to_string())?;
        ensure(
            canonical
                .sigma()
                .same_involution(s.sigma())
                .map_err(|e| e.to_string())?,
            || format!("p = {p}: existence test and constructor disagree"),
        )?;
        for seed in 0..tol::RANDOMIZED_SEEDS {
            let mut rng = ChaCha8Rng::seed_from_u64(tol::SEED ^ (p << 8) ^ seed);
            let r = construct_arithmetic_spin_randomized(p, 1, tol::RANDOMIZED_BOX, &mut rng)
                .map_err(|e| e.to_string())?;
            let iso = r
                .sigma()
                .is_isomorphic(canonical.sigma())
                .map_err(|e| e.to_string())?;
            ensure(iso, || {
                format!("p = {p}, seed {seed}: randomized structure not isomorphic")
            })?;
        }
        structures.push(s);
    }
    Ok(format!(
        "p in {:?}: unique arithmetic class beta = -2p",
        tol::SPIN_PRIMES
    ))
}

fn criterion_3(structures: &[SpinStructure]) -> Outcome {
    for s in structures {
        let p = s.class().p();
        let pp = p as i64;
        let lift = spin_lift(&similitude_rep(s)).ok_or_else(|| format!("p = {p}: no lift"))?;
        let z2 = covering_map(lift.z()).map_err(|e| e.to_string())?;
        ensure(z2.as_rational() == Some(&int(-pp)), || {
            format!("p = {p}: z^2 = {z2}")
        })?;

        // τ = +p with the same involution.
        let plus = SpinStructure::new(
            IsogenyClass::new(p, 2, 2 * pp).map_err(|e| e.to_string())?,
            s.sigma().clone(),
        )
        .map_err(|e| e.to_string())?;
        ensure(spin_lift(&similitude_rep(&plus)).is_none(), || {
            format!("p = {p}: tau = +p lifted")
        })?;

        // int(i)∘γ on the arithmetic class.
        let alg = b_p_infty(p).map_err(|e| e.to_string())?.into_shared();
        let sigma_i = OrthogonalInvolution::new(Quaternion::i(&alg)).map_err(|e| e.to_string())?;
        let disc_i = sigma_i.discriminant().map_err(|e| e.to_string())?;
        let minus_p = squarefree_part(&int(-pp)).map_err(|e| e.to_string())?;
        if disc_i != minus_p {
            let other = SpinStructure::new(*s.class(), sigma_i).map_err(|e| e.to_string())?;
            ensure(spin_lift(&similitude_rep(&other)).is_none(), || {
                format!("p = {p}: int(i) o gamma with disc {disc_i} lifted")
            })?;
        }
    }
    Ok("covering(z) = tau; tau = +p and disc != -p do not lift".to_string())
}

fn criterion_4(structures: &[SpinStructure]) -> Outcome {
    for s in structures {
        let p = s.class().p();
        let lift = spin_lift(&similitude_rep(s)).ok_or_else(|| format!("p = {p}: no lift"))?;
        let ell = if p == 2 { 3 } else { 2 };
        let r = realizations(&lift, ell).map_err(|e| e.to_string())?;
        ensure(r.eigen_abs_sq == int(p as i64), || {
            format!("p = {p}: |z|^2 = {}", r.eigen_abs_sq)
        })?;
        ensure(r.normalized_slope == rat(1, 4), || {
            format!("p = {p}: slope {}", r.normalized_slope)
        })?;
    }
    Ok("|z|^2 = p, slope = 1/4".to_string())
}

fn criterion_5() -> Outcome {
    let mut proofs = 0;
    let mut vacuous = 0;
    for p in primes_up_to(tol::L_MAX_P) {
        for n in tol::L_NS {
            let proof = verify_identity_exact(p, n).map_err(|e| e.to_string())?;
            ensure(proof.holds, || {
                format!("({p}, {n}): {} != {}", proof.lhs, proof.rhs)
            })?;
            proofs += 1;
            vacuous += usize::from(proof.vacuous);
        }
    }
    let tolerance = Fixed::from_rational(&tol::l_numeric());
    let mut worst = Fixed::zero();
    for (p, n) in tol::L_SAMPLE_PN {
        for s in [rat(1, 2), rat(3, 4), rat(1, 1), rat(2, 1)] {
            let v = l_values(p, n, &s).map_err(|e| e.to_string())?;
            let gap = v.identity_gap().max(v.closed_form_gap());
            ensure(gap < tolerance, || {
                format!("({p}, {n}, s = {s}): gap {gap}")
            })?;
            worst = worst.max(gap);
        }
    }
    let v = l_values(3, 1, &int(1)).map_err(|e| e.to_string())?;
    ensure(v.l_e.exact == Some(rat(9, 16)), || {
        format!("L_E(1) = {:?}", v.l_e.exact)
    })?;
    ensure(v.l_spin_half.exact == Some(rat(3, 4)), || {
        format!("L(rho, 1/2) = {:?}", v.l_spin_half.exact)
    })?;
    Ok(format!(
        "{proofs} exact identities ({vacuous} vacuous), worst numeric gap {:e}",
        worst.to_f64()
    ))
}

fn criterion_6() -> Outcome {
    for p in tol::FROBENIUS_PRIMES {
        let e = find_q14_curve(p).map_err(|e| e.to_string())?;
        ensure(e.count_points() == (p + 1) * (p + 1), || {
            format!("p = {p}: wrong count")
        })?;
        ensure(
            verify_frobenius_scalar(&e).map_err(|e| e.to_string())?,
            || format!("p = {p}: Frobenius != [-p] on E(F_p^2)"),
        )?;
        let ext = verify_frobenius_scalar_over_extension(&e, 2, tol::EXTENSION_FIELD_LIMIT)
            .map_err(|e| e.to_string())?;
        ensure(ext, || format!("p = {p}: Frobenius != [-p] on E(F_p^4)"))?;
    }
    Ok(format!(
        "p in {:?}, over F_p^2 and F_p^4",
        tol::FROBENIUS_PRIMES
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(tol::SEED);
    for _ in 0..tol::PRODUCT_FORMULA_PAIRS {
        let a = nonzero(&mut rng, tol::PRODUCT_FORMULA_BOUND);
        let b = nonzero(&mut rng, tol::PRODUCT_FORMULA_BOUND);
        let mut places: Vec<Place> = primes_up_to(tol::PRODUCT_FORMULA_BOUND as u64)
            .into_iter()
            .filter(|&p| p == 2 || a % p as i64 == 0 || b % p as i64 == 0)
            .map(|p| Place::prime(p).expect("prime"))
            .collect();
        places.push(Place::Infinity);
        let mut product = 1i8;
        for v in places {
            product *= hilbert_symbol(&int(a), &int(b), v).map_err(|e| e.to_string())?;
        }
        ensure(product == 1, || {
            format!("product formula fails for ({a}, {b})")
        })?;
    }
    let mut compared = 0;
    for p in primes_up_to(tol::ORACLE_MAX_P)
        .into_iter()
        .filter(|&p| p > 2)
    {
        let place = Place::prime(p).expect("prime");
        for a in -tol::ORACLE_BOUND..=tol::ORACLE_BOUND {
            for b in -tol::ORACLE_BOUND..=tol::ORACLE_BOUND {
                if a == 0 || b == 0 {
                    continue;
                }
                let got = hilbert_symbol(&int(a), &int(b), place).map_err(|e| e.to_string())?;
                let want = hilbert_oracle_odd(a, b, p as i64);
                ensure(got == want, || {
                    format!("({a}, {b})_{p}: {got}, oracle {want}")
                })?;
                compared += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs reciprocity, {compared} oracle comparisons",
        tol::PRODUCT_FORMULA_PAIRS
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(tol::SEED + 8);
    let e = |e: qquarter::spinspace::SpinError| e.to_string();
    for i in 0..tol::INVOLUTION_SAMPLES {
        let alg = random_algebra(&mut rng, 12);
        let sigma =
            OrthogonalInvolution::new(random_invertible_pure(&mut rng, &alg, 6)).map_err(e)?;
        let x = random_quaternion(&mut rng, &alg, 6);
        let y = random_quaternion(&mut rng, &alg, 6);
        let xy = x.mul(&y).map_err(|e| e.to_string())?;
        let anti = sigma.apply(&xy).map_err(e)?
            == sigma
                .apply(&y)
                .map_err(e)?
                .mul(&sigma.apply(&x).map_err(e)?)
                .map_err(|e| e.to_string())?;
        let sum = x.add(&y).map_err(|e| e.to_string())?;
        let additive = sigma.apply(&sum).map_err(e)?
            == sigma
                .apply(&x)
                .map_err(e)?
                .add(&sigma.apply(&y).map_err(e)?)
                .map_err(|e| e.to_string())?;
        let order_two = sigma.apply(&sigma.apply(&x).map_err(e)?).map_err(e)? == x;
        let c = Quaternion::scalar(&alg, small_rational(&mut rng, 9));
        let fixes_center = sigma.apply(&c).map_err(e)? == c;
        // Orthogonal: symmetric part of dimension 3, so the trace of σ on
        // {1, i, j, k} is 3 − 1 = 2 (γ has trace −2).
        let basis = [
            Quaternion::one(&alg),
            Quaternion::i(&alg),
            Quaternion::j(&alg),
            Quaternion::k(&alg),
        ];
        let mut trace = int(0);
        for (idx, bv) in basis.iter().enumerate() {
            trace += sigma.apply(bv).map_err(e)?.coords()[idx].clone();
        }
        let skew_u = sigma.apply(sigma.u()).map_err(e)? == sigma.u().neg();
        ensure(
            anti && additive && order_two && fixes_center && trace == int(2) && skew_u,
            || format!("sample {i}: involution axiom fails for {sigma:?}"),
        )?;
    }
    for i in 0..tol::NRD_SAMPLES {
        let alg = random_algebra(&mut rng, 30);
        let x = random_quaternion(&mut rng, &alg, 20);
        let y = random_quaternion(&mut rng, &alg, 20);
        let lhs = x.mul(&y).map_err(|e| e.to_string())?.nrd();
        ensure(lhs == x.nrd() * y.nrd(), || {
            format!("sample {i}: Nrd(xy) != Nrd(x)Nrd(y)")
        })?;
    }
    for i in 0..tol::DEFINITE_SAMPLES {
        let alg = random_definite_algebra(&mut rng, 30);
        let sigma =
            OrthogonalInvolution::new(random_invertible_pure(&mut rng, &alg, 10)).map_err(e)?;
        let disc = sigma.discriminant().map_err(e)?;
        let k = sigma.clifford_algebra().map_err(e)?;
        ensure(disc.is_negative() && k.is_imaginary(), || {
            format!("sample {i}: disc {disc} on definite {alg}")
        })?;
    }
    let mut curves = 0;
    for q in tol::CENSUS_QS {
        let (p, a) = prime_power(q);
        let field = Arc::new(FiniteField::new(p, a).map_err(|e| e.to_string())?);
        for t in trace_census(&field).into_keys() {
            ensure(t * t <= 4 * q as i64, || {
                format!("q = {q}: trace {t} violates the Hasse bound")
            })?;
            curves += 1;
        }
    }
    Ok(format!(
        "{} involutions, {} norms, {} definite discriminants, {curves} traces in the Hasse range",
        tol::INVOLUTION_SAMPLES,
        tol::NRD_SAMPLES,
        tol::DEFINITE_SAMPLES
    ))
}

fn report(id: u32, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over budget")),
        Err(d) => (false, d),
    };
    println!(
        "criterion {id}: {} ({:.3}s / {}s budget) {detail}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn main() -> ExitCode {
    let mut structures = Vec::new();
    let results = [
        report(1, tol::BUDGET_1, criterion_1),
        report(2, tol::BUDGET_2, || criterion_2(&mut structures)),
        report(3, tol::BUDGET_3, || criterion_3(&structures)),
        report(4, tol::BUDGET_4, || criterion_4(&structures)),
        report(5, tol::BUDGET_5, criterion_5),
        report(6, tol::BUDGET_6, criterion_6),
        report(7, tol::BUDGET_7, criterion_7),
        report(8, tol::BUDGET_8, criterion_8),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
