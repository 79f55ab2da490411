use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use super::{factor_bound, ArithError};

/// Signed prime factorization: `n = sign · Π p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    /// Primes in increasing order with positive exponents.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for &(p, e) in &self.factors {
            acc *= BigInt::from(p).pow(e);
        }
        acc
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

/// Factorizes a nonzero integer with the process-wide bound.
pub fn factorize(n: &BigInt) -> Result<Factorization, ArithError> {
    factorize_with_bound(n, factor_bound())
}

/// Trial division up to `√bound`. A leftover cofactor is accepted when it is
/// at most `bound` (then it must be prime) or when it fits in a `u64` and
/// passes deterministic Miller–Rabin; otherwise `BoundExceeded`.
pub fn factorize_with_bound(n: &BigInt, bound: u64) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m: BigUint = n.magnitude().clone();
    let limit = isqrt_u64(bound);
    let mut factors = Vec::new();

    // Strip small primes on the big representation until it fits in a u64.
    let mut d: u64 = 2;
    while m.to_u64().is_none() {
        if d > limit {
            return Err(ArithError::BoundExceeded(m.to_string()));
        }
        let mut e = 0;
        while (&m % d).is_zero() {
            m /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }

    let mut m = m.to_u64().expect("fits after reduction");
    while m > 1 {
        if d > limit || d.saturating_mul(d) > m {
            break;
        }
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if m > 1 {
        if d.saturating_mul(d) > m || m <= bound || is_prime_u64(m) {
            push_factor(&mut factors, m);
        } else {
            return Err(ArithError::BoundExceeded(m.to_string()));
        }
    }
    Ok(Factorization { sign, factors })
}

fn push_factor(factors: &mut Vec<(u64, u32)>, p: u64) {
    match factors.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => {
            factors.push((p, 1));
            factors.sort_unstable();
        }
    }
}

fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        out
    }

    #[test]
    fn factorize_examples() {
        let one = factorize(&BigInt::from(1)).unwrap();
        assert_eq!(one.sign, 1);
        assert!(one.factors.is_empty());

        let f = factorize(&BigInt::from(-12)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(2, 2), (3, 1)]);

        assert_eq!(trial_division_oracle(9409), vec![(97, 2)]);
        assert_eq!(
            factorize(&BigInt::from(9409)).unwrap().factors,
            vec![(97, 2)]
        );

        assert_eq!(factorize(&BigInt::from(0)), Err(ArithError::ZeroInput));
    }

    #[test]
    fn bound_violations_are_errors() {
        // 1_000_003 * 1_000_033 has no factor below √10^6.
        let n = BigInt::from(1_000_003u64 * 1_000_033u64);
        assert!(matches!(
            factorize_with_bound(&n, 1_000_000),
            Err(ArithError::BoundExceeded(_))
        ));
        // A large prime cofactor is still certified.
        let p = BigInt::from(1_000_000_007u64);
        let f = factorize_with_bound(&(BigInt::from(4) * &p), 1_000_000).unwrap();
        assert_eq!(f.factors, vec![(2, 2), (1_000_000_007, 1)]);
    }

    #[test]
    fn big_inputs_above_u64() {
        let n = BigInt::from(3u64).pow(50) * BigInt::from(7);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors, vec![(3, 50), (7, 1)]);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn miller_rabin_matches_sieve() {
        let mut sieve = vec![true; 5000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..5000 {
            if sieve[i] {
                for j in (i * i..5000).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &is_p) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), is_p, "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in -5_000_000i64..5_000_000) {
            prop_assume!(n != 0);
            let f = factorize(&BigInt::from(n)).unwrap();
            prop_assert_eq!(f.product(), BigInt::from(n));
            for &(p, _) in &f.factors {
                prop_assert!(is_prime_u64(p));
            }
            prop_assert_eq!(f.factors, trial_division_oracle(n.unsigned_abs()));
        }
    }
}
