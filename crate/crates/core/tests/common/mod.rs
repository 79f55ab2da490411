//! Independent oracles and random generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use qquarter::arith::{int, rat, Rational};
use qquarter::quat::{Quaternion, QuaternionAlgebra};

fn v_p(mut n: i64, p: i64, cap: u32) -> u32 {
    if n == 0 {
        return cap;
    }
    let mut v = 0;
    while n % p == 0 && v < cap {
        n /= p;
        v += 1;
    }
    v
}

/// `(a, b)_p` for odd `p` by searching for a primitive zero of
/// `a x² + b y² − z²` modulo `p^k` that Hensel's lemma lifts to `ℤ_p`.
///
/// After removing even powers of `p`, coefficient valuations are 0 or 1.
/// Any primitive `p`-adic zero has some coordinate with `v(cᵢxᵢ) ≤ 1`,
/// and a zero mod `p³` with that property lifts; with unit coefficients
/// `k = 1` suffices.
pub fn hilbert_oracle_odd(a: i64, b: i64, p: i64) -> i8 {
    assert!(a != 0 && b != 0 && p > 2);
    let strip = |mut n: i64| {
        while n % (p * p) == 0 {
            n /= p * p;
        }
        n
    };
    let coeffs = [strip(a), strip(b), -1];
    let k = if coeffs.iter().any(|c| c % p == 0) {
        3
    } else {
        1
    };
    let m = p.pow(k);
    let md = |x: i64| x.rem_euclid(m);
    // Fix coordinate `c` to 1; solve c_s·s² + c_t·t² ≡ −c_c for the other two.
    for chart in 0..3 {
        let (s_idx, t_idx) = match chart {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut by_residue: HashMap<i64, Vec<i64>> = HashMap::new();
        for t in 0..m {
            by_residue
                .entry(md(coeffs[t_idx] * t * t))
                .or_default()
                .push(t);
        }
        for s in 0..m {
            let need = md(-coeffs[chart] - coeffs[s_idx] * s * s);
            let Some(ts) = by_residue.get(&need) else {
                continue;
            };
            for &t in ts {
                let mut x = [0i64; 3];
                x[chart] = 1;
                x[s_idx] = s;
                x[t_idx] = t;
                let delta = (0..3)
                    .map(|i| v_p(coeffs[i], p, k) + v_p(x[i], p, k))
                    .min()
                    .expect("three coordinates");
                if 2 * delta < k {
                    return 1;
                }
            }
        }
    }
    -1
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

/// A nonzero integer in `[−bound, bound]`.
pub fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// A rational with numerator in `[−bound, bound]` and denominator in `[1, 4]`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=4))
}

pub fn random_algebra<R: Rng>(rng: &mut R, bound: i64) -> Arc<QuaternionAlgebra> {
    QuaternionAlgebra::from_integers(nonzero(rng, bound), nonzero(rng, bound))
        .expect("nonzero symbol")
        .into_shared()
}

/// Definite algebra `(a, b)` with `a, b < 0`.
pub fn random_definite_algebra<R: Rng>(rng: &mut R, bound: i64) -> Arc<QuaternionAlgebra> {
    QuaternionAlgebra::from_integers(-rng.gen_range(1..=bound), -rng.gen_range(1..=bound))
        .expect("nonzero symbol")
        .into_shared()
}

pub fn random_quaternion<R: Rng>(
    rng: &mut R,
    alg: &Arc<QuaternionAlgebra>,
    bound: i64,
) -> Quaternion {
    let c = [(); 4].map(|_| small_rational(rng, bound));
    Quaternion::new(alg.clone(), c)
}

/// A pure quaternion with nonzero reduced norm.
pub fn random_invertible_pure<R: Rng>(
    rng: &mut R,
    alg: &Arc<QuaternionAlgebra>,
    bound: i64,
) -> Quaternion {
    loop {
        let c = [
            int(0),
            small_rational(rng, bound),
            small_rational(rng, bound),
            small_rational(rng, bound),
        ];
        let u = Quaternion::new(alg.clone(), c);
        if u.nrd() != int(0) {
            return u;
        }
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
