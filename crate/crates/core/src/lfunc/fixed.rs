use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;

/// Fractional bits carried by [`Fixed`].
pub const FRAC_BITS: u32 = 128;

/// Binary fixed-point real `value / 2^128`, truncated toward zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn one() -> Self {
        Fixed(BigInt::one() << FRAC_BITS)
    }

    pub fn from_integer(n: &BigInt) -> Self {
        Fixed(n << FRAC_BITS)
    }

    pub fn from_rational(r: &Rational) -> Self {
        Fixed((r.numer() << FRAC_BITS) / r.denom())
    }

    pub fn raw(&self) -> &BigInt {
        &self.0
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        Fixed(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        Fixed(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        Fixed((&self.0 * &other.0) >> FRAC_BITS)
    }

    /// `None` on division by zero.
    pub fn div(&self, other: &Fixed) -> Option<Fixed> {
        (!other.0.is_zero()).then(|| Fixed((&self.0 << FRAC_BITS) / &other.0))
    }

    pub fn abs(&self) -> Fixed {
        Fixed(self.0.abs())
    }

    /// `base^(a/b)` for a positive integer base and `b > 0`.
    pub fn rational_power(base: &BigInt, exponent: &Rational) -> Fixed {
        assert!(base.is_positive(), "positive base required");
        let (a, b) = (exponent.numer(), exponent.denom());
        let b_u32 = b.to_u32().expect("root degree fits in u32");
        let x = num_traits::pow(
            base.clone(),
            a.abs().to_usize().expect("exponent fits in usize"),
        );
        if !a.is_negative() {
            Fixed((x << (FRAC_BITS * b_u32)).nth_root(b_u32))
        } else {
            // 2^128·x^(−1/b), with 64 guard bits.
            let guard = 64;
            let scaled = (BigInt::one() << ((2 * FRAC_BITS + guard) * b_u32)) / x;
            Fixed(scaled.nth_root(b_u32) >> (FRAC_BITS + guard))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN) / 2f64.powi(FRAC_BITS as i32)
    }

    /// Decimal expansion rounded to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.0.is_negative();
        let ten_d = num_traits::pow(BigInt::from(10), digits);
        let half = BigInt::one() << (FRAC_BITS - 1);
        let total = (self.0.abs() * &ten_d + half) >> FRAC_BITS;
        let int_part = &total / &ten_d;
        let scaled = &total % &ten_d;
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{scaled:0>digits$}")
        }
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(30))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn close(a: &Fixed, b: f64) -> bool {
        (a.to_f64() - b).abs() < 1e-14 * b.abs().max(1.0)
    }

    #[test]
    fn powers() {
        let three = BigInt::from(3);
        assert_eq!(
            Fixed::rational_power(&three, &rat(2, 1)),
            Fixed::from_integer(&BigInt::from(9))
        );
        assert!(close(
            &Fixed::rational_power(&three, &rat(1, 2)),
            3f64.sqrt()
        ));
        assert!(close(
            &Fixed::rational_power(&three, &rat(-3, 2)),
            3f64.powf(-1.5)
        ));
        assert!(close(
            &Fixed::rational_power(&three, &rat(-1, 1)),
            1.0 / 3.0
        ));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Fixed::from_rational(&rat(9, 16)).to_decimal(4), "0.5625");
        assert_eq!(Fixed::from_rational(&rat(-5, 4)).to_decimal(2), "-1.25");
        assert_eq!(Fixed::from_rational(&rat(1, 3)).to_decimal(5), "0.33333");
        assert_eq!(Fixed::from_rational(&rat(1, 100)).to_decimal(3), "0.010");
    }

    #[test]
    fn division() {
        let a = Fixed::from_rational(&rat(3, 4));
        let b = Fixed::from_rational(&rat(1, 2));
        assert_eq!(a.div(&b).unwrap(), Fixed::from_rational(&rat(3, 2)));
        assert!(a.div(&Fixed::zero()).is_none());
    }
}
