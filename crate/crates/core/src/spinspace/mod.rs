//! Twisted quadratic spaces `(B, σ)` on a quaternion algebra.
//!
//! An orthogonal involution is `σ = int(u)∘γ` for a pure invertible `u`.
//! Its discriminant is the class of `−Nrd(u)`, and the even Clifford
//! algebra is the quadratic étale algebra `K = ℚ(u)`. The similitude and
//! spin groups are tori inside `K*`, so they are described by membership
//! predicates rather than element lists.

mod etale;
mod groups;

use std::sync::Arc;

use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::arith::{rational_sqrt, squarefree_part, ArithError, BigIntJson, Rational, SquareClass};
use crate::quat::{QuatError, Quaternion, QuaternionAlgebra};

pub use etale::{rational_square_root_in_k, square_root, EtaleElement, QuadraticEtale};
pub use groups::{
    covering_map, is_proper_similitude, multiplier, spinor_norm, GroupDescriptor, GroupKind,
    KSquareClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("involution generator must be a pure quaternion")]
    NotPure,
    #[error("involution generator must be invertible")]
    NotInvertible,
    #[error("involutions or quaternions live in different algebras")]
    AlgebraMismatch,
    #[error("elements of different quadratic algebras")]
    DeltaMismatch,
    #[error("element is not a similitude: sigma(g)*g is not a nonzero scalar")]
    NotSimilitude,
    #[error("element has norm zero")]
    NotUnit,
    #[error(transparent)]
    Quat(QuatError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl From<QuatError> for SpinError {
    fn from(e: QuatError) -> Self {
        match e {
            QuatError::AlgebraMismatch => SpinError::AlgebraMismatch,
            QuatError::Arith(a) => SpinError::Arith(a),
            other => SpinError::Quat(other),
        }
    }
}

/// The orthogonal involution `x ↦ u·γ(x)·u⁻¹`. `u` is determined up to ℚ*.
#[derive(Debug, Clone)]
pub struct OrthogonalInvolution {
    u: Quaternion,
    u_inv: Quaternion,
}

impl OrthogonalInvolution {
    pub fn new(u: Quaternion) -> Result<Self, SpinError> {
        if !u.is_pure() {
            return Err(SpinError::NotPure);
        }
        let u_inv = u.inverse().map_err(|_| SpinError::NotInvertible)?;
        Ok(OrthogonalInvolution { u, u_inv })
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        self.u.algebra()
    }

    pub fn u(&self) -> &Quaternion {
        &self.u
    }

    /// `σ(x) = u·γ(x)·u⁻¹`.
    pub fn apply(&self, x: &Quaternion) -> Result<Quaternion, SpinError> {
        Ok(self.u.mul(&x.gamma())?.mul(&self.u_inv)?)
    }

    /// Square class of `−Nrd(u)`.
    pub fn discriminant(&self) -> Result<SquareClass, SpinError> {
        Ok(squarefree_part(&-self.u.nrd())?)
    }

    /// Involutions on a quaternion algebra are classified by discriminant.
    pub fn is_isomorphic(&self, other: &OrthogonalInvolution) -> Result<bool, SpinError> {
        if !self.u.same_algebra(&other.u) {
            return Err(SpinError::AlgebraMismatch);
        }
        Ok(self.discriminant()? == other.discriminant()?)
    }

    /// Equality as involutions: `u₁·u₂⁻¹` is a scalar.
    pub fn same_involution(&self, other: &OrthogonalInvolution) -> Result<bool, SpinError> {
        Ok(self.u.mul(&other.u_inv)?.as_scalar().is_some())
    }

    /// `K = C⁺(B, σ) = ℚ[x]/(x² − disc σ)`.
    pub fn clifford_algebra(&self) -> Result<QuadraticEtale, SpinError> {
        Ok(QuadraticEtale::new(self.discriminant()?))
    }

    /// The image of `x` under `K ≅ ℚ(u)`: `u` rescaled so that its square is
    /// exactly the squarefree `δ`.
    pub fn clifford_generator(&self) -> Result<Quaternion, SpinError> {
        let delta = self.discriminant()?.as_rational();
        // u² = −Nrd(u), which lies in the class of δ.
        let ratio = -self.u.nrd() / &delta;
        let s = rational_sqrt(&ratio).ok_or(SpinError::NotInvertible)?;
        Ok(self.u.scale(&s.recip()))
    }

    /// The embedding `K → B`, `c + d·x ↦ c + d·u'`.
    pub fn embed(&self, z: &EtaleElement) -> Result<Quaternion, SpinError> {
        if z.delta() != &self.discriminant()? {
            return Err(SpinError::DeltaMismatch);
        }
        let generator = self.clifford_generator()?;
        let scalar = Quaternion::scalar(self.algebra(), z.c().clone());
        Ok(scalar.add(&generator.scale(z.d()))?)
    }

    /// Inverse of [`embed`](Self::embed) on `ℚ(u)`; `None` for `g ∉ ℚ(u)`.
    pub fn pull_back(&self, g: &Quaternion) -> Result<Option<EtaleElement>, SpinError> {
        if !g.same_algebra(&self.u) {
            return Err(SpinError::AlgebraMismatch);
        }
        let k = self.clifford_algebra()?;
        let generator = self.clifford_generator()?;
        let c = g.coords()[0].clone();
        let pure = g.sub(&Quaternion::scalar(self.algebra(), c.clone()))?;
        // pure = d·u' for some d, detected coordinatewise.
        let mut d: Option<Rational> = None;
        for (x, y) in pure.coords()[1..].iter().zip(&generator.coords()[1..]) {
            if y.is_zero() {
                if !x.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let ratio = x / y;
            match &d {
                Some(prev) if *prev != ratio => return Ok(None),
                _ => d = Some(ratio),
            }
        }
        Ok(Some(k.element(c, d.unwrap_or_default())))
    }
}

impl Serialize for OrthogonalInvolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let disc = self.discriminant().map_err(serde::ser::Error::custom)?;
        let mut st = s.serialize_struct("OrthogonalInvolution", 2)?;
        st.serialize_field("u", &self.u)?;
        st.serialize_field("disc", &BigIntJson(disc.representative()))?;
        st.end()
    }
}
