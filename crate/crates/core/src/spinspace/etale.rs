use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::SpinError;
use crate::arith::{
    format_rational, rational_sqrt, squarefree_part, ArithError, Rational, SquareClass,
};

/// The quadratic étale algebra `ℚ[x]/(x² − δ)`, with `δ` a squarefree
/// integer. Split (`ℚ × ℚ`) exactly when `δ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticEtale {
    delta: SquareClass,
}

impl QuadraticEtale {
    pub fn new(delta: SquareClass) -> Self {
        QuadraticEtale { delta }
    }

    /// `ℚ[x]/(x² − n)` up to isomorphism, i.e. with `δ` the square class of `n`.
    pub fn from_integer(n: i64) -> Result<Self, SpinError> {
        Ok(Self::new(squarefree_part(&Rational::from_integer(
            n.into(),
        ))?))
    }

    pub fn delta(&self) -> &SquareClass {
        &self.delta
    }

    pub fn is_split(&self) -> bool {
        self.delta.is_trivial()
    }

    pub fn is_field(&self) -> bool {
        !self.is_split()
    }

    pub fn is_imaginary(&self) -> bool {
        self.delta.is_negative()
    }

    pub fn element(&self, c: Rational, d: Rational) -> EtaleElement {
        EtaleElement {
            c,
            d,
            delta: self.delta.clone(),
        }
    }

    pub fn rational(&self, c: Rational) -> EtaleElement {
        self.element(c, Rational::zero())
    }

    pub fn one(&self) -> EtaleElement {
        self.rational(Rational::one())
    }

    /// The generator `x` with `x² = δ`.
    pub fn x(&self) -> EtaleElement {
        self.element(Rational::zero(), Rational::one())
    }
}

impl fmt::Display for QuadraticEtale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.delta.representative();
        if d.is_negative() {
            write!(f, "Q[x]/(x^2+{})", -d)
        } else {
            write!(f, "Q[x]/(x^2-{})", d)
        }
    }
}

impl Serialize for QuadraticEtale {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticEtale", 1)?;
        st.serialize_field(
            "delta",
            &crate::arith::BigIntJson(self.delta.representative()),
        )?;
        st.end()
    }
}

/// `c + d·x` in a quadratic étale algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaleElement {
    c: Rational,
    d: Rational,
    delta: SquareClass,
}

impl EtaleElement {
    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn delta(&self) -> &SquareClass {
        &self.delta
    }

    pub fn algebra(&self) -> QuadraticEtale {
        QuadraticEtale::new(self.delta.clone())
    }

    fn check(&self, other: &EtaleElement) -> Result<(), SpinError> {
        if self.delta == other.delta {
            Ok(())
        } else {
            Err(SpinError::DeltaMismatch)
        }
    }

    fn with(&self, c: Rational, d: Rational) -> EtaleElement {
        EtaleElement {
            c,
            d,
            delta: self.delta.clone(),
        }
    }

    pub fn add(&self, other: &EtaleElement) -> Result<EtaleElement, SpinError> {
        self.check(other)?;
        Ok(self.with(&self.c + &other.c, &self.d + &other.d))
    }

    pub fn neg(&self) -> EtaleElement {
        self.with(-self.c.clone(), -self.d.clone())
    }

    pub fn scale(&self, s: &Rational) -> EtaleElement {
        self.with(&self.c * s, &self.d * s)
    }

    /// `(c₁ + d₁x)(c₂ + d₂x) = (c₁c₂ + δd₁d₂) + (c₁d₂ + c₂d₁)x`.
    pub fn mul(&self, other: &EtaleElement) -> Result<EtaleElement, SpinError> {
        self.check(other)?;
        let delta = self.delta.as_rational();
        Ok(self.with(
            &self.c * &other.c + delta * &self.d * &other.d,
            &self.c * &other.d + &other.c * &self.d,
        ))
    }

    /// `c − d·x`.
    pub fn conjugate(&self) -> EtaleElement {
        self.with(self.c.clone(), -self.d.clone())
    }

    /// `c² − δd²`.
    pub fn norm(&self) -> Rational {
        &self.c * &self.c - self.delta.as_rational() * &self.d * &self.d
    }

    pub fn trace(&self) -> Rational {
        &self.c * Rational::from_integer(2.into())
    }

    pub fn is_unit(&self) -> bool {
        !self.norm().is_zero()
    }

    pub fn inverse(&self) -> Result<EtaleElement, SpinError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(SpinError::NotUnit);
        }
        Ok(self.conjugate().scale(&n.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<EtaleElement, SpinError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.algebra().one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.d.is_zero().then_some(&self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.d.is_zero()
    }

    /// Sign-normalized so that the first nonzero coordinate is positive.
    fn normalized_sign(self) -> EtaleElement {
        let leading = if self.c.is_zero() { &self.d } else { &self.c };
        if leading.is_negative() {
            self.neg()
        } else {
            self
        }
    }
}

impl fmt::Display for EtaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x_term = if self.d.is_zero() {
            None
        } else if self.d.is_one() {
            Some("x".to_string())
        } else if self.d == -Rational::one() {
            Some("-x".to_string())
        } else {
            Some(format!("{}x", format_rational(&self.d)))
        };
        match (self.c.is_zero(), x_term) {
            (_, None) => write!(f, "{}", format_rational(&self.c)),
            (true, Some(t)) => write!(f, "{t}"),
            (false, Some(t)) => match t.strip_prefix('-') {
                Some(rest) => write!(f, "{} - {rest}", format_rational(&self.c)),
                None => write!(f, "{} + {t}", format_rational(&self.c)),
            },
        }
    }
}

impl Serialize for EtaleElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Square root of a rational `t` inside `K`: `√t` when `t` is a rational
/// square, else `√(t/δ)·x` when `t/δ` is one, else `None`.
pub fn rational_square_root_in_k(
    t: &Rational,
    k: &QuadraticEtale,
) -> Result<Option<EtaleElement>, SpinError> {
    if t.is_zero() {
        return Err(ArithError::ZeroInput.into());
    }
    if let Some(s) = rational_sqrt(t) {
        return Ok(Some(k.rational(s)));
    }
    let quotient = t / k.delta().as_rational();
    Ok(rational_sqrt(&quotient).map(|s| k.element(Rational::zero(), s)))
}

/// Square root of an arbitrary element `w = R + I·x`: solves
/// `c² + δd² = R`, `2cd = I` over ℚ.
pub fn square_root(w: &EtaleElement) -> Option<EtaleElement> {
    let k = w.algebra();
    if w.is_zero() {
        return Some(w.clone());
    }
    if let Some(t) = w.as_rational() {
        return rational_square_root_in_k(t, &k)
            .ok()
            .flatten()
            .map(EtaleElement::normalized_sign);
    }
    let delta = k.delta().as_rational();
    // N(z)² = N(w), so N(w) must be a rational square s².
    let s = rational_sqrt(&w.norm())?;
    let two = Rational::from_integer(2.into());
    for candidate in [&w.c + &s, &w.c - &s] {
        let d_sq = candidate / (&two * &delta);
        if let Some(d) = rational_sqrt(&d_sq) {
            if d.is_zero() {
                continue;
            }
            let c = &w.d / (&two * &d);
            let z = k.element(c, d);
            if z.mul(&z).ok().as_ref() == Some(w) {
                return Some(z.normalized_sign());
            }
        }
    }
    None
}
