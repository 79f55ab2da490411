//! Zeta and L-functions of the spin representation and of `H¹(E)`.
//!
//! With `q = p^{2n}` and `τ = −pⁿ`, the spin representation has Frobenius
//! eigenvalues `±√(−pⁿ)`, so `Z(ρ^spin, T) = 1/(1 + pⁿT²)`, while
//! `Z(H¹(E), T) = (1 + pⁿT)²`. Substituting `U = q^{−s}` turns the identity
//! `L(E, s) = L(ρ^spin, s/2)²` into an equality of rational functions in
//! `U`, which is checked exactly. Numerical values use 128-bit fixed point.

mod fixed;
mod poly;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::arith::{format_rational, is_prime_u64, squarefree_part, ArithError, Rational};
use crate::isogeny::IsogenyClass;
use crate::qquarter::{has_arithmetic_spin, QQuarterError};
use crate::spinspace::{rational_square_root_in_k, EtaleElement, QuadraticEtale, SpinError};

pub use fixed::{Fixed, FRAC_BITS};
pub use poly::{IntPoly, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LFuncError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("n must be positive")]
    ZeroExponent,
    #[error("evaluation point is a pole")]
    Pole,
    #[error("s is too large to evaluate")]
    ArgumentTooLarge,
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    QQuarter(#[from] QQuarterError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn check(p: u64, n: u32) -> Result<BigInt, LFuncError> {
    if !is_prime_u64(p) {
        return Err(LFuncError::NotPrime(p));
    }
    if n == 0 {
        return Err(LFuncError::ZeroExponent);
    }
    Ok(num_traits::pow(BigInt::from(p), n as usize))
}

/// Polynomial product over a quadratic étale algebra, lowest degree first.
fn k_poly_mul(a: &[EtaleElement], b: &[EtaleElement]) -> Result<Vec<EtaleElement>, SpinError> {
    let k = a[0].algebra();
    let mut out = vec![k.rational(Rational::zero()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y)?)?;
        }
    }
    Ok(out)
}

/// Integer polynomial from `K`-coefficients that happen to be integers.
fn descend(coeffs: &[EtaleElement]) -> Option<IntPoly> {
    coeffs
        .iter()
        .map(|c| {
            c.as_rational()
                .filter(|r| r.is_integer())
                .map(|r| r.to_integer())
        })
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::new)
}

/// The two linear factors `1 − zT` and `1 + zT` with `z = √(−pⁿ) ∈ K`.
pub fn spin_eigen_factors(p: u64, n: u32) -> Result<[Vec<EtaleElement>; 2], LFuncError> {
    let pn = check(p, n)?;
    let minus_pn = Rational::from_integer(-pn);
    let k = QuadraticEtale::new(squarefree_part(&minus_pn)?);
    let z = rational_square_root_in_k(&minus_pn, &k)?.expect("−pⁿ/δ is a square");
    Ok([vec![k.one(), z.neg()], vec![k.one(), z]])
}

/// `Z(ρ^spin, T) = 1/((1 − √(−pⁿ)T)(1 + √(−pⁿ)T)) = 1/(1 + pⁿT²)`.
pub fn zeta_spin(p: u64, n: u32) -> Result<RationalFunction, LFuncError> {
    let [f, g] = spin_eigen_factors(p, n)?;
    let den = descend(&k_poly_mul(&f, &g)?).expect("conjugate factors multiply into Z[T]");
    Ok(RationalFunction::new(IntPoly::one(), den, "T"))
}

/// `Z(H¹(E), T) = (1 + pⁿT)²`, with `√q = pⁿ`.
pub fn zeta_h1(p: u64, n: u32) -> Result<RationalFunction, LFuncError> {
    let pn = check(p, n)?;
    let linear = IntPoly::new(vec![BigInt::one(), pn]);
    Ok(RationalFunction::polynomial(linear.pow(2), "T"))
}

/// `base^e` when it is rational.
fn exact_power(base: &BigInt, e: &Rational) -> Option<Rational> {
    let b = e.denom().to_u32()?;
    let x = num_traits::pow(base.clone(), e.numer().abs().to_usize()?);
    let root = x.nth_root(b);
    if num_traits::pow(root.clone(), b as usize) != x {
        return None;
    }
    let r = Rational::from_integer(root);
    Some(if e.numer().is_negative() {
        r.recip()
    } else {
        r
    })
}

/// A real number: always a fixed-point approximation, plus the exact value
/// when it is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LValue {
    pub approx: Fixed,
    pub exact: Option<Rational>,
}

impl LValue {
    fn eval(
        f: &RationalFunction,
        exact_point: &Option<Rational>,
        approx_point: &Fixed,
    ) -> Result<Self, LFuncError> {
        let exact = match exact_point {
            Some(t) => Some(f.eval(t).ok_or(LFuncError::Pole)?),
            None => None,
        };
        let approx = match &exact {
            Some(v) => Fixed::from_rational(v),
            None => f.eval_fixed(approx_point).ok_or(LFuncError::Pole)?,
        };
        Ok(LValue { approx, exact })
    }

    fn square(&self) -> LValue {
        LValue {
            approx: self.approx.mul(&self.approx),
            exact: self.exact.as_ref().map(|v| v * v),
        }
    }
}

impl Serialize for LValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LValue", 2)?;
        st.serialize_field("exact", &self.exact.as_ref().map(format_rational))?;
        st.serialize_field("approx", &self.approx.to_decimal(30))?;
        st.end()
    }
}

/// `L(E, s)`, `L(ρ^spin, s)`, `L(ρ^spin, s/2)` and its square, alongside
/// the closed forms `1/(1 + q^{1/2−s})²` and `1/(1 + q^{1/2−2s})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LValues {
    pub s: Rational,
    pub l_e: LValue,
    pub l_spin: LValue,
    pub l_spin_half: LValue,
    pub l_spin_half_sq: LValue,
    pub l_e_closed_form: Fixed,
    pub l_spin_closed_form: Fixed,
}

impl LValues {
    /// `|L(E, s) − L(ρ^spin, s/2)²|`.
    pub fn identity_gap(&self) -> Fixed {
        self.l_e.approx.sub(&self.l_spin_half_sq.approx).abs()
    }

    /// Largest gap between the zeta-function evaluations and the closed forms.
    pub fn closed_form_gap(&self) -> Fixed {
        let a = self.l_e.approx.sub(&self.l_e_closed_form).abs();
        let b = self.l_spin.approx.sub(&self.l_spin_closed_form).abs();
        a.max(b)
    }
}

impl Serialize for LValues {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LValues", 6)?;
        st.serialize_field("s", &format_rational(&self.s))?;
        st.serialize_field("L_E", &self.l_e)?;
        st.serialize_field("L_spin", &self.l_spin)?;
        st.serialize_field("L_spin_half", &self.l_spin_half)?;
        st.serialize_field("L_spin_half_sq", &self.l_spin_half_sq)?;
        st.serialize_field("gap", &self.identity_gap().to_decimal(40))?;
        st.end()
    }
}

/// Limit on `|2ns|` to keep `q^{−s}` representable.
const MAX_EXPONENT: i64 = 4096;

/// `q^{c}` with `q = p^{2n}`, exactly when rational and in fixed point.
fn q_power(p: &BigInt, n: u32, c: &Rational) -> Result<(Option<Rational>, Fixed), LFuncError> {
    let e = c * Rational::from_integer((2 * n).into());
    let fits = e.numer().abs().to_i64().is_some_and(|v| v <= MAX_EXPONENT)
        && e.denom().to_i64().is_some_and(|v| v <= 64);
    if !fits {
        return Err(LFuncError::ArgumentTooLarge);
    }
    Ok((exact_power(p, &e), Fixed::rational_power(p, &e)))
}

/// Evaluates both sides of `L(E, s) = L(ρ^spin, s/2)²` at a rational `s`.
pub fn l_values(p: u64, n: u32, s: &Rational) -> Result<LValues, LFuncError> {
    check(p, n)?;
    let base = BigInt::from(p);
    // L(E, s) = 1/Z(H¹, U) at U = q^{−s}.
    let (u_exact, u_approx) = q_power(&base, n, &-s.clone())?;
    let l_e = LValue::eval(&zeta_h1(p, n)?.recip(), &u_exact, &u_approx)?;
    // Z(ρ^spin, T) depends only on T²; L(ρ, s/2) takes T² = q^{−s}.
    let spin_in_square = zeta_spin(p, n)?.in_square("U").expect("even in T");
    let l_spin_half = LValue::eval(&spin_in_square, &u_exact, &u_approx)?;
    let (u2_exact, u2_approx) = q_power(&base, n, &(-s * Rational::from_integer(2.into())))?;
    let l_spin = LValue::eval(&spin_in_square, &u2_exact, &u2_approx)?;
    let l_spin_half_sq = l_spin_half.square();

    let half = Rational::new(1.into(), 2.into());
    let one = Fixed::one();
    let (_, a) = q_power(&base, n, &(&half - s))?;
    let l_e_closed_form = {
        let d = one.add(&a);
        one.div(&d.mul(&d)).ok_or(LFuncError::Pole)?
    };
    let (_, b) = q_power(&base, n, &(&half - s * Rational::from_integer(2.into())))?;
    let l_spin_closed_form = one.div(&one.add(&b)).ok_or(LFuncError::Pole)?;
    Ok(LValues {
        s: s.clone(),
        l_e,
        l_spin,
        l_spin_half,
        l_spin_half_sq,
        l_e_closed_form,
        l_spin_closed_form,
    })
}

/// The exact identity in `U = q^{−s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityProof {
    pub p: u64,
    pub n: u32,
    pub pn: BigInt,
    /// `L(E)` as a function of `U`.
    pub lhs: RationalFunction,
    /// `L(ρ^spin, s/2)²` as a function of `U`.
    pub rhs: RationalFunction,
    pub holds: bool,
    /// No arithmetic spin structure exists, so the identity is formal only.
    pub vacuous: bool,
}

impl Serialize for IdentityProof {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IdentityProof", 5)?;
        st.serialize_field("pn", &self.pn.to_string())?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("vacuous", &self.vacuous)?;
        st.end()
    }
}

pub fn verify_identity_exact(p: u64, n: u32) -> Result<IdentityProof, LFuncError> {
    let pn = check(p, n)?;
    let lhs = zeta_h1(p, n)?.recip().with_var("U");
    let rhs = zeta_spin(p, n)?.in_square("U").expect("even in T").pow(2);
    let holds = lhs == rhs;
    let vacuous = match pn.to_i64().and_then(|v| v.checked_mul(-2)) {
        Some(beta) => {
            let class = IsogenyClass::new(p, 2 * n, beta).map_err(QQuarterError::from)?;
            !has_arithmetic_spin(&class)?.is_arithmetic()
        }
        None => {
            let too_large = crate::isogeny::IsogenyError::QTooLarge { p, a: 2 * n };
            return Err(QQuarterError::from(too_large).into());
        }
    };
    Ok(IdentityProof {
        p,
        n,
        pn,
        lhs,
        rhs,
        holds,
        vacuous,
    })
}

/// `L(ρ^spin, s) = 1/((1 + iV)(1 − iV))` with `V = q^{1/4 − s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorsOverI {
    pub factors: [Vec<EtaleElement>; 2],
    /// `(1 + iV)(1 − iV)` in `ℤ[V]`.
    pub product: IntPoly,
    /// `V = q^{c₀ + c₁s}` as `(c₀, c₁)`.
    pub v_exponent: (Rational, Rational),
    pub v_squared_exponent: (Rational, Rational),
    /// The product agrees with the denominator of `Z(ρ^spin)` after
    /// `V² = pⁿT²`.
    pub matches_zeta_spin: bool,
}

pub fn factor_over_i(p: u64, n: u32) -> Result<FactorsOverI, LFuncError> {
    let pn = check(p, n)?;
    let k = QuadraticEtale::from_integer(-1)?;
    let i = k.x();
    let factors = [vec![k.one(), i.clone()], vec![k.one(), i.neg()]];
    let product = descend(&k_poly_mul(&factors[0], &factors[1])?).expect("conjugate pair");
    let quarter = Rational::new(1.into(), 4.into());
    let v_exponent = (quarter, -Rational::one());
    let v_squared_exponent = (
        &v_exponent.0 * Rational::from_integer(2.into()),
        &v_exponent.1 * Rational::from_integer(2.into()),
    );
    // V² = q^{1/2}·q^{−2s} = pⁿ·T² at T = q^{−s}.
    let in_t_squared = product.in_square().map(|g| g.rescale_variable(&pn));
    let spin_den = zeta_spin(p, n)?.denominator().in_square();
    Ok(FactorsOverI {
        factors,
        product,
        v_exponent,
        v_squared_exponent,
        matches_zeta_spin: in_t_squared.is_some() && in_t_squared == spin_den,
    })
}
