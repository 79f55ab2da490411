use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{QuatError, Quaternion, QuaternionAlgebra};
use crate::arith::{ArithError, Rational};

/// Default box size for witness searches (the CLI reads `SEARCH_BOUND`).
pub const DEFAULT_SEARCH_BOUND: u64 = 50;

const MAX_BOUND: u64 = 1 << 20;

fn isqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    height: i64,
    denominator: i64,
    // Negated so that larger coordinates sort first.
    neg_coords: [i64; 3],
}

/// Searches for a pure quaternion `u = (x₁i + x₂j + x₃k)/d` with
/// `Nrd(u) = m`, over integers `|xᵢ| ≤ bound`, `1 ≤ d ≤ bound`.
///
/// Candidates are ordered by height `max(|x₁|, |x₂|, |x₃|, d)`, then by `d`,
/// then lexicographically on `(x₁, x₂, x₃)` with larger entries first, so
/// `i` precedes `−i` and `i + j` precedes `j + k`. `None` only means no
/// witness inside the box.
pub fn find_pure_of_norm(
    algebra: &Arc<QuaternionAlgebra>,
    m: &Rational,
    bound: u64,
) -> Result<Option<Quaternion>, QuatError> {
    if m.is_zero() {
        return Err(ArithError::ZeroInput.into());
    }
    if bound > MAX_BOUND {
        return Err(QuatError::CoefficientOverflow);
    }
    let form = algebra.pure_norm_form();
    let lcm = form
        .iter()
        .chain(std::iter::once(m))
        .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let to_int = |r: &Rational| -> Result<i128, QuatError> {
        (r * Rational::from_integer(lcm.clone()))
            .to_integer()
            .to_i64()
            .map(i128::from)
            .ok_or(QuatError::CoefficientOverflow)
    };
    let c = [to_int(&form[0])?, to_int(&form[1])?, to_int(&form[2])?];
    let target = to_int(m)?;
    let bound = bound as i64;

    let candidate = |x: [i64; 3], height: i64| -> Option<Key> {
        let lhs: i128 = (0..3)
            .map(|t| c[t] * i128::from(x[t]) * i128::from(x[t]))
            .sum();
        if lhs % target != 0 {
            return None;
        }
        let d = isqrt_i128(lhs / target)?;
        if d < 1 || d > i128::from(bound) {
            return None;
        }
        let d = d as i64;
        Some(Key {
            height: height.max(d),
            denominator: d,
            neg_coords: x.map(|v| -v),
        })
    };
    let mut best: Option<Key> = None;
    let consider = |x: [i64; 3], height: i64, best: &mut Option<Key>| {
        if let Some(key) = candidate(x, height) {
            if best.is_none_or(|b| key < b) {
                *best = Some(key);
            }
        }
    };

    for s in 1..=bound {
        for x1 in -s..=s {
            for x2 in -s..=s {
                if x1.abs() == s || x2.abs() == s {
                    for x3 in -s..=s {
                        consider([x1, x2, x3], s, &mut best);
                    }
                } else {
                    consider([x1, x2, -s], s, &mut best);
                    consider([x1, x2, s], s, &mut best);
                }
            }
        }
        // Every later triple has height above s.
        if let Some(key) = best.filter(|k| k.height <= s) {
            let d = Rational::from_integer(key.denominator.into());
            let coords = key
                .neg_coords
                .map(|v| Rational::from_integer((-v).into()) / &d);
            let [u1, u2, u3] = coords;
            return Ok(Some(Quaternion::new(
                algebra.clone(),
                [Rational::zero(), u1, u2, u3],
            )));
        }
    }
    Ok(None)
}
