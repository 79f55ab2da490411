use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::factor::pow_mod;
use super::{integral_class_rep, is_prime_u64, ArithError, Place, Rational};

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8, ArithError> {
    if p == 2 || !is_prime_u64(p) {
        return Err(ArithError::NotOddPrime(p.to_string()));
    }
    let r = a
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p");
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

/// `p`-adic valuation of a nonzero integer, and the remaining unit part.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

fn residue(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("small residue")
}

// ε(u) = (u−1)/2 mod 2 and ω(u) = (u²−1)/8 mod 2 for odd u.
fn epsilon(u: &BigInt) -> u32 {
    u32::from(residue(u, 4) == 3)
}

fn omega(u: &BigInt) -> u32 {
    let r = residue(u, 8);
    u32::from(r == 3 || r == 5)
}

fn hilbert_integral(a: &BigInt, b: &BigInt, v: Place) -> i8 {
    match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) if p.get() == 2 => {
            let (alpha, u) = valuation(a, 2);
            let (beta, w) = valuation(b, 2);
            let e = epsilon(&u) * epsilon(&w) + alpha * omega(&w) + beta * omega(&u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let p = p.get();
            let (alpha, u) = valuation(a, p);
            let (beta, w) = valuation(b, p);
            let mut s: i8 = if (alpha as u64 * beta as u64 * ((p - 1) / 2)).is_multiple_of(2) {
                1
            } else {
                -1
            };
            if beta % 2 == 1 {
                s *= legendre(&u, p).expect("odd prime");
            }
            if alpha % 2 == 1 {
                s *= legendre(&w, p).expect("odd prime");
            }
            s
        }
    }
}

/// Hilbert symbol `(a, b)_v`: `+1` iff `z² = a x² + b y²` has a nontrivial
/// solution over the completion of ℚ at `v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    Ok(hilbert_integral(
        &integral_class_rep(a),
        &integral_class_rep(b),
        v,
    ))
}

/// Whether a nonzero rational is a square in ℚ_v.
pub fn is_local_square(x: &Rational, v: Place) -> Result<bool, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let n = integral_class_rep(x);
    Ok(match v {
        Place::Infinity => n.is_positive(),
        Place::Finite(p) => {
            let p = p.get();
            let (e, u) = valuation(&n, p);
            if e % 2 == 1 {
                false
            } else if p == 2 {
                residue(&u, 8) == 1
            } else {
                legendre(&u, p).expect("odd prime") == 1
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn place(p: u64) -> Place {
        Place::prime(p).unwrap()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&BigInt::from(1), 7), Ok(1));
        assert_eq!(legendre(&BigInt::from(-1), 3), Ok(-1));
        assert_eq!(legendre(&BigInt::from(-2), 5), Ok(-1));
        assert_eq!(legendre(&BigInt::from(14), 7), Ok(0));
        assert!(matches!(
            legendre(&BigInt::from(1), 2),
            Err(ArithError::NotOddPrime(_))
        ));
        assert!(legendre(&BigInt::from(1), 9).is_err());
    }

    #[test]
    fn legendre_matches_squares_mod_p() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in -30i64..30 {
                let r = (a.rem_euclid(p as i64)) as u64;
                let expected = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(&BigInt::from(a), p).unwrap(), expected);
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), Place::Infinity), Ok(-1));
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), place(2)), Ok(-1));
        for p in [2u64, 3, 5, 7, 11] {
            for b in [-7i64, -3, -1, 2, 5, 12] {
                assert_eq!(hilbert_symbol(&int(1), &int(b), place(p)), Ok(1));
            }
        }
        assert_eq!(
            hilbert_symbol(&int(0), &int(3), Place::Infinity),
            Err(ArithError::ZeroInput)
        );
    }

    #[test]
    fn hilbert_uses_square_classes_of_rationals() {
        // −9/4 ~ −1 and 12/25 ~ 3.
        for v in [place(2), place(3), place(5), Place::Infinity] {
            assert_eq!(
                hilbert_symbol(&rat(-9, 4), &rat(12, 25), v),
                hilbert_symbol(&int(-1), &int(3), v)
            );
        }
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&int(17), place(2)).unwrap());
        assert!(!is_local_square(&int(5), place(2)).unwrap());
        assert!(is_local_square(&int(-1), place(5)).unwrap());
        assert!(!is_local_square(&int(-1), place(3)).unwrap());
        assert!(is_local_square(&rat(9, 4), Place::Infinity).unwrap());
        assert!(!is_local_square(&int(3), place(3)).unwrap());
    }
}
