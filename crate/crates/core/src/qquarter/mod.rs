//! Spin structures on spinorial elliptic curves and the object ℚ(1/4).
//!
//! A spin structure on a spinorial class over `𝔽_{p^{2n}}` is an orthogonal
//! involution `σ` on `B = B_{p,∞}`. It is arithmetic when the Frobenius
//! `τ = β/2`, a rational scalar, has a square root in `K = C⁺(B, σ)`; this
//! happens exactly for `τ = −pⁿ` and `disc σ ~ −pⁿ`.

mod rep;

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::arith::{
    int, squarefree_part, ternary_local_obstruction, ArithError, BigIntJson, Place, Rational,
};
use crate::isogeny::{IsogenyClass, IsogenyError};
use crate::quat::{
    b_p_infty, find_pure_of_norm, QuatError, Quaternion, QuaternionAlgebra, DEFAULT_SEARCH_BOUND,
};
use crate::spinspace::{OrthogonalInvolution, QuadraticEtale, SpinError};

pub use rep::{
    evaluate_spin, realizations, similitude_rep, spin_lift, RealizationData, SpinLift, WeilElement,
    WeilRep,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QQuarterError {
    #[error("isogeny class is not spinorial")]
    NotSpinorial,
    #[error("n must be positive and {0}")]
    BadExponent(&'static str),
    #[error("involution lives on {found}, expected B_{{{p},inf}} = {expected}")]
    WrongAlgebra {
        p: u64,
        expected: String,
        found: String,
    },
    #[error("the even Clifford algebra of a division algebra cannot be split")]
    SplitClifford,
    #[error(
        "local-global test predicts a witness of norm {norm} but none lies within bound {bound}"
    )]
    NoWitness { norm: String, bound: u64 },
    #[error("ell must be a prime different from p (got ell = {ell}, p = {p})")]
    BadEll { ell: u64, p: u64 },
    #[error(transparent)]
    Isogeny(#[from] IsogenyError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A spinorial isogeny class with an orthogonal involution on `B_{p,∞}`.
#[derive(Debug, Clone)]
pub struct SpinStructure {
    class: IsogenyClass,
    sigma: OrthogonalInvolution,
    clifford: QuadraticEtale,
}

impl SpinStructure {
    pub fn new(class: IsogenyClass, sigma: OrthogonalInvolution) -> Result<Self, QQuarterError> {
        if !class.is_spinorial() {
            return Err(QQuarterError::NotSpinorial);
        }
        let expected = b_p_infty(class.p())?;
        if **sigma.algebra() != expected {
            return Err(QQuarterError::WrongAlgebra {
                p: class.p(),
                expected: expected.to_string(),
                found: sigma.algebra().to_string(),
            });
        }
        let clifford = sigma.clifford_algebra()?;
        if clifford.is_split() {
            return Err(QQuarterError::SplitClifford);
        }
        Ok(SpinStructure {
            class,
            sigma,
            clifford,
        })
    }

    pub fn class(&self) -> &IsogenyClass {
        &self.class
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        self.sigma.algebra()
    }

    pub fn sigma(&self) -> &OrthogonalInvolution {
        &self.sigma
    }

    pub fn clifford(&self) -> &QuadraticEtale {
        &self.clifford
    }

    /// `n` with `q = p^{2n}`.
    pub fn n(&self) -> u32 {
        self.class.a() / 2
    }
}

impl Serialize for SpinStructure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpinStructure", 5)?;
        st.serialize_field("class", &self.class)?;
        st.serialize_field("algebra", self.algebra().as_ref())?;
        st.serialize_field("u", self.sigma.u())?;
        st.serialize_field("disc", &BigIntJson(self.clifford.delta().representative()))?;
        st.serialize_field("delta", &BigIntJson(self.clifford.delta().representative()))?;
        st.end()
    }
}

/// Outcome of the existence test for an arithmetic spin structure.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum SpinCertificate {
    /// An arithmetic structure together with its witness `u`.
    Arithmetic {
        structure: SpinStructure,
        witness: Quaternion,
    },
    /// `τ = +pⁿ`: never arithmetic under the `τ = −pⁿ` requirement.
    PositiveFrobenius,
    /// `n` even and `B` has no pure quaternion of norm 1, refuted at the
    /// given place.
    NoNormOnePure(Place),
}

impl SpinCertificate {
    pub fn is_arithmetic(&self) -> bool {
        matches!(self, SpinCertificate::Arithmetic { .. })
    }

    pub fn structure(&self) -> Option<&SpinStructure> {
        match self {
            SpinCertificate::Arithmetic { structure, .. } => Some(structure),
            _ => None,
        }
    }
}

fn p_power(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn arithmetic_class(p: u64, n: u32) -> Result<IsogenyClass, QQuarterError> {
    let q_root: i64 = p_power(p, n)
        .try_into()
        .map_err(|_| IsogenyError::QTooLarge { p, a: 2 * n })?;
    Ok(IsogenyClass::new(p, 2 * n, -2 * q_root)?)
}

fn structure_from_u(p: u64, n: u32, u: Quaternion) -> Result<SpinStructure, QQuarterError> {
    SpinStructure::new(arithmetic_class(p, n)?, OrthogonalInvolution::new(u)?)
}

/// Existence test for an arithmetic spin structure on a spinorial class.
pub fn has_arithmetic_spin(class: &IsogenyClass) -> Result<SpinCertificate, QQuarterError> {
    has_arithmetic_spin_with_bound(class, DEFAULT_SEARCH_BOUND)
}

pub fn has_arithmetic_spin_with_bound(
    class: &IsogenyClass,
    bound: u64,
) -> Result<SpinCertificate, QQuarterError> {
    let tau = class
        .frobenius_scalar()
        .map_err(|_| QQuarterError::NotSpinorial)?;
    if tau.tau() > 0 {
        return Ok(SpinCertificate::PositiveFrobenius);
    }
    let (p, n) = (class.p(), class.a() / 2);
    let structure = if n % 2 == 1 {
        construct_arithmetic_spin_with_bound(p, n, bound)?
    } else {
        let algebra = b_p_infty(p)?;
        let form = algebra.pure_norm_form();
        if let Some(place) = ternary_local_obstruction([&form[0], &form[1], &form[2]], &int(1))? {
            return Ok(SpinCertificate::NoNormOnePure(place));
        }
        construct_arithmetic_spin_even_with_bound(p, n, bound)?.ok_or_else(|| {
            QQuarterError::NoWitness {
                norm: "1".to_string(),
                bound,
            }
        })?
    };
    let witness = structure.sigma().u().clone();
    Ok(SpinCertificate::Arithmetic { structure, witness })
}

/// The arithmetic spin structure for `n` odd: `σ = int(p^{(n−1)/2}·v)∘γ`
/// with `v` pure of norm `p`. For odd `p` the symbol `(−a, −p)` gives
/// `v = j`; for `p = 2` the witness comes from a search.
pub fn construct_arithmetic_spin(p: u64, n: u32) -> Result<SpinStructure, QQuarterError> {
    construct_arithmetic_spin_with_bound(p, n, DEFAULT_SEARCH_BOUND)
}

pub fn construct_arithmetic_spin_with_bound(
    p: u64,
    n: u32,
    bound: u64,
) -> Result<SpinStructure, QQuarterError> {
    if n.is_multiple_of(2) {
        return Err(QQuarterError::BadExponent("odd"));
    }
    let class = arithmetic_class(p, n)?;
    let algebra = b_p_infty(p)?.into_shared();
    let norm_p = Rational::from_integer(p.into());
    let j = Quaternion::j(&algebra);
    let v = if j.nrd() == norm_p {
        j
    } else {
        find_pure_of_norm(&algebra, &norm_p, bound)?.ok_or_else(|| QQuarterError::NoWitness {
            norm: p.to_string(),
            bound,
        })?
    };
    let u = v.scale(&Rational::from_integer(p_power(p, (n - 1) / 2)));
    SpinStructure::new(class, OrthogonalInvolution::new(u)?)
}

/// The arithmetic spin structure for `n` even, `σ = int(p^{n/2}·v)∘γ` with
/// `v` pure of norm 1, or `None` when `B` has no such `v`.
pub fn construct_arithmetic_spin_even(
    p: u64,
    n: u32,
) -> Result<Option<SpinStructure>, QQuarterError> {
    construct_arithmetic_spin_even_with_bound(p, n, DEFAULT_SEARCH_BOUND)
}

pub fn construct_arithmetic_spin_even_with_bound(
    p: u64,
    n: u32,
    bound: u64,
) -> Result<Option<SpinStructure>, QQuarterError> {
    if n == 0 || n % 2 == 1 {
        return Err(QQuarterError::BadExponent("even"));
    }
    let class = arithmetic_class(p, n)?;
    let algebra = b_p_infty(p)?.into_shared();
    let form = algebra.pure_norm_form();
    if ternary_local_obstruction([&form[0], &form[1], &form[2]], &int(1))?.is_some() {
        return Ok(None);
    }
    let v =
        find_pure_of_norm(&algebra, &int(1), bound)?.ok_or_else(|| QQuarterError::NoWitness {
            norm: "1".to_string(),
            bound,
        })?;
    let u = v.scale(&Rational::from_integer(p_power(p, n / 2)));
    Ok(Some(SpinStructure::new(
        class,
        OrthogonalInvolution::new(u)?,
    )?))
}

/// Same structure as [`construct_arithmetic_spin`], found by scanning
/// `[−bound, bound]³` in a random order for a pure `u` with
/// `Nrd(u) ~ pⁿ` modulo squares. Any two results are isomorphic.
pub fn construct_arithmetic_spin_randomized<R: Rng + ?Sized>(
    p: u64,
    n: u32,
    bound: i64,
    rng: &mut R,
) -> Result<SpinStructure, QQuarterError> {
    if n == 0 {
        return Err(QQuarterError::BadExponent("positive"));
    }
    let algebra = b_p_infty(p)?.into_shared();
    let target = squarefree_part(&Rational::from_integer(p_power(p, n)))?;
    let mut triples: Vec<[i64; 3]> = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            for z in -bound..=bound {
                if (x, y, z) != (0, 0, 0) {
                    triples.push([x, y, z]);
                }
            }
        }
    }
    triples.shuffle(rng);
    for [x, y, z] in triples {
        let u = Quaternion::from_integers(&algebra, [0, x, y, z]);
        if squarefree_part(&u.nrd())? == target {
            return structure_from_u(p, n, u);
        }
    }
    Err(QQuarterError::NoWitness {
        norm: format!("{p}^{n}"),
        bound: bound.unsigned_abs(),
    })
}
