use num_traits::{Signed, Zero};

use super::{hilbert_symbol, is_local_square, primes_dividing, ArithError, Place, Rational};

/// Whether `c₀ x² + c₁ y² + c₂ z² = t` has a solution over ℚ_v.
///
/// For a ternary form of discriminant `d` and Hasse invariant
/// `ε = Π_{i<j} (cᵢ, cⱼ)_v`, `t` is represented unless `t ≡ −d` modulo
/// squares and `(−1, −d)_v ≠ ε`.
fn represents_locally(coeffs: &[Rational; 3], t: &Rational, v: Place) -> Result<bool, ArithError> {
    if v == Place::Infinity {
        return Ok(coeffs.iter().any(|c| c.is_positive() == t.is_positive()));
    }
    let d = &coeffs[0] * &coeffs[1] * &coeffs[2];
    let minus_d = -d.clone();
    if !is_local_square(&(t * &minus_d), v)? {
        return Ok(true);
    }
    let mut hasse = 1;
    for i in 0..3 {
        for j in (i + 1)..3 {
            hasse *= hilbert_symbol(&coeffs[i], &coeffs[j], v)?;
        }
    }
    Ok(hilbert_symbol(&Rational::from_integer((-1).into()), &minus_d, v)? == hasse)
}

/// First place (in the order 2, odd primes ascending, ∞) at which the
/// diagonal form `⟨c₀, c₁, c₂⟩` fails to represent `t`, or `None` when it
/// represents `t` everywhere and hence over ℚ.
pub fn ternary_local_obstruction(
    coeffs: [&Rational; 3],
    t: &Rational,
) -> Result<Option<Place>, ArithError> {
    if coeffs.iter().any(|c| c.is_zero()) || t.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let owned = [coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()];
    let mut places: Vec<Place> = vec![Place::prime(2)?];
    for p in primes_dividing(&[coeffs[0], coeffs[1], coeffs[2], t])? {
        if p != 2 {
            places.push(Place::prime(p)?);
        }
    }
    places.push(Place::Infinity);
    for v in places {
        if !represents_locally(&owned, t, v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Whether the diagonal ternary form represents `t` over ℚ, decided by the
/// local–global principle.
pub fn ternary_represents(coeffs: [&Rational; 3], t: &Rational) -> Result<bool, ArithError> {
    ternary_local_obstruction(coeffs, t).map(|o| o.is_none())
}
