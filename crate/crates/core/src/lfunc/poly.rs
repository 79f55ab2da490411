use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fixed::Fixed;
use crate::arith::Rational;

/// A polynomial with integer coefficients, lowest degree first, with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(T) ↦ f(c·T)`.
    pub fn rescale_variable(&self, c: &BigInt) -> IntPoly {
        let mut power = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        IntPoly::new(out)
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let sign = if self.coeffs.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        IntPoly::new(self.coeffs.iter().map(|a| a / &c * &sign).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * t + Rational::from_integer(c.clone())
        })
    }

    pub fn eval_fixed(&self, t: &Fixed) -> Fixed {
        self.coeffs.iter().rev().fold(Fixed::zero(), |acc, c| {
            acc.mul(t).add(&Fixed::from_integer(c))
        })
    }

    /// `g` with `f(T) = g(T²)`, when `f` has only even powers.
    pub fn in_square(&self) -> Option<IntPoly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(
            self.coeffs.iter().step_by(2).cloned().collect(),
        ))
    }

    /// Exact division over ℚ; `None` if `divisor` does not divide `self`
    /// with an integral quotient.
    fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let d = divisor.degree()?;
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return self.is_zero().then(|| self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + d];
            if !(top % &lead).is_zero() {
                return None;
            }
            let c = top / &lead;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let d = divisor.degree().expect("nonzero divisor");
        let lead = &divisor.coeffs[d];
        let mut rem = self.clone();
        while let Some(r) = rem.degree().filter(|&r| r >= d) {
            let top = rem.coeffs[r].clone();
            let shifted: Vec<BigInt> = std::iter::repeat_n(BigInt::zero(), r - d)
                .chain(divisor.coeffs.iter().map(|b| b * &top))
                .collect();
            rem = rem
                .scale(lead)
                .add(&IntPoly::new(shifted).scale(&-BigInt::one()));
        }
        rem
    }

    /// Primitive gcd over ℚ[T], normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}{mono}")
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("T"))
    }
}

/// `num/den` in lowest terms, the denominator primitive with positive
/// lowest-order coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
    var: &'static str,
}

impl RationalFunction {
    /// Panics on a zero denominator.
    pub fn new(num: IntPoly, den: IntPoly, var: &'static str) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: IntPoly::one(),
                var,
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        num = IntPoly::new(num.coeffs.iter().map(|a| a / &c).collect());
        den = IntPoly::new(den.coeffs.iter().map(|a| a / &c).collect());
        let lowest = den.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero");
        if lowest.is_negative() {
            let minus = -BigInt::one();
            num = num.scale(&minus);
            den = den.scale(&minus);
        }
        RationalFunction { num, den, var }
    }

    pub fn polynomial(p: IntPoly, var: &'static str) -> Self {
        Self::new(p, IntPoly::one(), var)
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone(), self.var)
    }

    pub fn mul(&self, other: &RationalFunction) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den), self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.num.pow(e), self.den.pow(e), self.var)
    }

    /// Rename the variable.
    pub fn with_var(&self, var: &'static str) -> Self {
        RationalFunction {
            var,
            ..self.clone()
        }
    }

    /// `g` with `f(T) = g(T²)`, in the variable `var`.
    pub fn in_square(&self, var: &'static str) -> Option<Self> {
        Some(Self::new(self.num.in_square()?, self.den.in_square()?, var))
    }

    /// `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    pub fn eval_fixed(&self, t: &Fixed) -> Option<Fixed> {
        self.num.eval_fixed(t).div(&self.den.eval_fixed(t))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| {
            let s = p.to_string_in(self.var);
            if p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den == IntPoly::one() {
            write!(f, "{}", self.num.to_string_in(self.var))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let f = p(&[1, 3]).pow(2);
        assert_eq!(f, p(&[1, 6, 9]));
        assert_eq!(f.to_string(), "1+6T+9T^2");
        assert_eq!(p(&[1, 0, -3]).to_string(), "1-3T^2");
        assert_eq!(p(&[0, -1]).to_string(), "-T");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[1, 0, 3]).in_square(), Some(p(&[1, 3])));
        assert_eq!(p(&[1, 1]).in_square(), None);
        assert_eq!(p(&[1, 6, 9]).eval(&rat(1, 3)), rat(4, 1));
    }

    #[test]
    fn gcd_and_reduction() {
        let a = p(&[1, 3]).mul(&p(&[2, -1]));
        let b = p(&[1, 3]).mul(&p(&[5, 0, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 3]));
        let r = RationalFunction::new(a, b, "T");
        assert_eq!(r.numerator(), &p(&[2, -1]));
        assert_eq!(r.denominator(), &p(&[5, 0, 1]));
        let r = RationalFunction::new(p(&[-2]), p(&[-2, 0, -6]), "T");
        assert_eq!(r.to_string(), "1/(1+3T^2)");
        let r = RationalFunction::new(p(&[4, 4]), p(&[2]), "U");
        assert_eq!(r.to_string(), "2+2U");
    }

    proptest! {
        #[test]
        fn reduction_preserves_value(
            a in prop::collection::vec(-5i64..5, 1..4),
            b in prop::collection::vec(-5i64..5, 1..4),
            c in prop::collection::vec(-5i64..5, 1..3),
            t in (-7i64..7, 1i64..5),
        ) {
            let (a, b, c) = (p(&a), p(&b), p(&c));
            prop_assume!(!b.is_zero() && !c.is_zero());
            let t = rat(t.0, t.1);
            let num = a.mul(&c);
            let den = b.mul(&c);
            let r = RationalFunction::new(num.clone(), den.clone(), "T");
            let dv = den.eval(&t);
            if !dv.is_zero() {
                prop_assert_eq!(r.eval(&t), Some(num.eval(&t) / dv));
            }
            let direct = RationalFunction::new(a, b, "T");
            prop_assert_eq!(r, direct);
        }
    }
}
