//! Isogeny classes of elliptic curves over `𝔽_q`, `q = pᵃ`.
//!
//! Classes are indexed by the trace of Frobenius `β`, subject to the
//! Waterhouse membership conditions. A class is spinorial when its
//! endomorphism algebra is the quaternion algebra `B_{p,∞}`, which happens
//! exactly for `a` even and `β = ±2√q`.

use std::fmt;

use num_integer::Roots;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::arith::is_prime_u64;

/// Largest `q` accepted; keeps `β` and `β² − 4q` inside `i64`.
pub const MAX_Q: u64 = 1 << 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsogenyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the exponent a must be positive")]
    ZeroExponent,
    #[error("q = {p}^{a} exceeds the supported range")]
    QTooLarge { p: u64, a: u32 },
    #[error("{beta} is not the trace of an elliptic curve over F_{q}")]
    NotInIsogenySet { beta: i64, q: u64 },
    #[error("isogeny class with trace {0} is not spinorial")]
    NotSpinorial(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Ordinary,
    Supersingular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndomorphismAlgebra {
    ImaginaryQuadratic,
    Quaternion,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::Ordinary => "ordinary",
            CurveKind::Supersingular => "supersingular",
        })
    }
}

impl fmt::Display for EndomorphismAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndomorphismAlgebra::ImaginaryQuadratic => "imaginary-quadratic",
            EndomorphismAlgebra::Quaternion => "quaternion",
        })
    }
}

/// Which clause of the membership list admits `β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MembershipCase {
    /// `p ∤ β`.
    Coprime,
    /// `a` even, `β = ±2√q`.
    TwiceRootQ,
    /// `a` even, `β = ±√q`, `p ≢ 1 (mod 3)`.
    RootQ,
    /// `a` odd, `p ∈ {2, 3}`, `β = ±p^((a+1)/2)`.
    RootPq,
    /// `a` odd, `β = 0`.
    ZeroOdd,
    /// `a` even, `β = 0`, `p ≢ 1 (mod 4)`.
    ZeroEven,
}

/// `(p, q)` after validation.
fn prime_power(p: u64, a: u32) -> Result<u64, IsogenyError> {
    if !is_prime_u64(p) {
        return Err(IsogenyError::NotPrime(p));
    }
    if a == 0 {
        return Err(IsogenyError::ZeroExponent);
    }
    p.checked_pow(a)
        .filter(|&q| q <= MAX_Q)
        .ok_or(IsogenyError::QTooLarge { p, a })
}

fn membership(p: u64, a: u32, q: u64, beta: i64) -> Option<MembershipCase> {
    let b = beta.unsigned_abs();
    if u128::from(b) * u128::from(b) > 4 * u128::from(q) {
        return None;
    }
    if !b.is_multiple_of(p) {
        return Some(MembershipCase::Coprime);
    }
    if a.is_multiple_of(2) {
        let root = p.pow(a / 2);
        if b == 2 * root {
            Some(MembershipCase::TwiceRootQ)
        } else if b == root && p % 3 != 1 {
            Some(MembershipCase::RootQ)
        } else if b == 0 && p % 4 != 1 {
            Some(MembershipCase::ZeroEven)
        } else {
            None
        }
    } else if b == 0 {
        Some(MembershipCase::ZeroOdd)
    } else if (p == 2 || p == 3) && b == p.pow(a.div_ceil(2)) {
        Some(MembershipCase::RootPq)
    } else {
        None
    }
}

/// An isogeny class over `𝔽_{pᵃ}`, identified by its trace `β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IsogenyClass {
    p: u64,
    a: u32,
    q: u64,
    beta: i64,
    case: MembershipCase,
}

impl IsogenyClass {
    pub fn new(p: u64, a: u32, beta: i64) -> Result<Self, IsogenyError> {
        let q = prime_power(p, a)?;
        let case = membership(p, a, q, beta).ok_or(IsogenyError::NotInIsogenySet { beta, q })?;
        Ok(IsogenyClass {
            p,
            a,
            q,
            beta,
            case,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn case(&self) -> MembershipCase {
        self.case
    }

    pub fn kind(&self) -> CurveKind {
        if self.case == MembershipCase::Coprime {
            CurveKind::Ordinary
        } else {
            CurveKind::Supersingular
        }
    }

    pub fn endo(&self) -> EndomorphismAlgebra {
        if self.case == MembershipCase::TwiceRootQ {
            EndomorphismAlgebra::Quaternion
        } else {
            EndomorphismAlgebra::ImaginaryQuadratic
        }
    }

    /// `β² − 4q`: the discriminant of the Frobenius polynomial, which is
    /// zero exactly for spinorial classes.
    pub fn frobenius_discriminant(&self) -> i128 {
        i128::from(self.beta) * i128::from(self.beta) - 4 * i128::from(self.q)
    }

    pub fn is_spinorial(&self) -> bool {
        self.endo() == EndomorphismAlgebra::Quaternion
    }

    /// `τ = β/2`, the central Frobenius of a spinorial class.
    pub fn frobenius_scalar(&self) -> Result<FrobeniusScalar, IsogenyError> {
        if !self.is_spinorial() {
            return Err(IsogenyError::NotSpinorial(self.beta));
        }
        Ok(FrobeniusScalar {
            tau: self.beta / 2,
            q: self.q,
        })
    }
}

impl fmt::Display for IsogenyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}^{} beta={} ({}, {})",
            self.p,
            self.a,
            self.beta,
            self.kind(),
            self.endo()
        )
    }
}

impl Serialize for IsogenyClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IsogenyClass", 6)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("kind", &self.kind().to_string())?;
        st.serialize_field("endo", &self.endo().to_string())?;
        st.serialize_field("spinorial", &self.is_spinorial())?;
        st.end()
    }
}

/// Whether the class is spinorial.
pub fn is_spinorial(class: &IsogenyClass) -> bool {
    class.is_spinorial()
}

/// The Frobenius of a spinorial class, central in `B_{p,∞}`: `τ = ±p^(a/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrobeniusScalar {
    tau: i64,
    q: u64,
}

impl FrobeniusScalar {
    pub fn tau(&self) -> i64 {
        self.tau
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `(Nrd τ, Trd τ) = (τ², 2τ) = (q, β)`.
    pub fn reduced_invariants(&self) -> (i128, i128) {
        let t = i128::from(self.tau);
        (t * t, 2 * t)
    }
}

/// Every isogeny class over `𝔽_{pᵃ}`, in increasing order of `β`.
pub fn enumerate_classes(p: u64, a: u32) -> Result<Vec<IsogenyClass>, IsogenyError> {
    let q = prime_power(p, a)?;
    let bound = (4 * q).sqrt() as i64;
    Ok((-bound..=bound)
        .filter_map(|beta| {
            membership(p, a, q, beta).map(|case| IsogenyClass {
                p,
                a,
                q,
                beta,
                case,
            })
        })
        .collect())
}

/// The traces in `I_q`.
pub fn trace_set(p: u64, a: u32) -> Result<Vec<i64>, IsogenyError> {
    Ok(enumerate_classes(p, a)?
        .iter()
        .map(IsogenyClass::beta)
        .collect())
}
