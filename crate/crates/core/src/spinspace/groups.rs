use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{square_root, EtaleElement, OrthogonalInvolution, QuadraticEtale, SpinError};
use crate::arith::Rational;
use crate::quat::Quaternion;

/// `μ(g) = σ(g)·g`, defined when it is a nonzero scalar.
pub fn multiplier(g: &Quaternion, sigma: &OrthogonalInvolution) -> Result<Rational, SpinError> {
    let product = sigma.apply(g)?.mul(g)?;
    match product.as_scalar() {
        Some(mu) if !mu.is_zero() => Ok(mu.clone()),
        _ => Err(SpinError::NotSimilitude),
    }
}

/// `g` is a similitude with `Nrd(g) = μ(g)`.
pub fn is_proper_similitude(g: &Quaternion, sigma: &OrthogonalInvolution) -> bool {
    multiplier(g, sigma).is_ok_and(|mu| g.nrd() == mu)
}

/// The squaring isogeny `GSpin → GO⁺` on rational points of `K*`.
pub fn covering_map(z: &EtaleElement) -> Result<EtaleElement, SpinError> {
    if !z.is_unit() {
        return Err(SpinError::NotUnit);
    }
    z.mul(z)
}

/// A class in `K*/K*²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KSquareClass {
    /// A square, with a square root.
    Trivial {
        root: EtaleElement,
    },
    Nontrivial,
}

impl KSquareClass {
    pub fn is_trivial(&self) -> bool {
        matches!(self, KSquareClass::Trivial { .. })
    }
}

impl fmt::Display for KSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSquareClass::Trivial { .. } => write!(f, "trivial"),
            KSquareClass::Nontrivial => write!(f, "nontrivial"),
        }
    }
}

/// Class of `g` in `K*/K*²`, the connecting map of the Kummer sequence for
/// the covering.
pub fn spinor_norm(g: &EtaleElement) -> Result<KSquareClass, SpinError> {
    if !g.is_unit() {
        return Err(SpinError::NotUnit);
    }
    Ok(match square_root(g) {
        Some(root) => KSquareClass::Trivial { root },
        None => KSquareClass::Nontrivial,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    #[serde(rename = "GO")]
    GO,
    #[serde(rename = "GO+")]
    GOPlus,
    #[serde(rename = "O")]
    O,
    #[serde(rename = "O+")]
    OPlus,
    #[serde(rename = "GSpin")]
    GSpin,
    #[serde(rename = "Spin")]
    Spin,
    #[serde(rename = "SpecialClifford")]
    SpecialClifford,
}

impl GroupKind {
    pub const ALL: [GroupKind; 7] = [
        GroupKind::GO,
        GroupKind::GOPlus,
        GroupKind::O,
        GroupKind::OPlus,
        GroupKind::GSpin,
        GroupKind::Spin,
        GroupKind::SpecialClifford,
    ];

    /// Whether the group is a torus inside `K*` (all kinds except `GO`, `O`).
    pub fn is_torus(self) -> bool {
        !matches!(self, GroupKind::GO | GroupKind::O)
    }

    /// Whether membership requires norm or multiplier one.
    pub fn is_norm_one(self) -> bool {
        matches!(self, GroupKind::O | GroupKind::OPlus | GroupKind::Spin)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::GO => "GO",
            GroupKind::GOPlus => "GO+",
            GroupKind::O => "O",
            GroupKind::OPlus => "O+",
            GroupKind::GSpin => "GSpin",
            GroupKind::Spin => "Spin",
            GroupKind::SpecialClifford => "SpecialClifford",
        };
        f.write_str(s)
    }
}

/// One of the similitude or spin groups of `(B, σ)`, given by membership.
#[derive(Debug, Clone)]
pub struct GroupDescriptor {
    kind: GroupKind,
    sigma: OrthogonalInvolution,
    clifford: QuadraticEtale,
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind, sigma: OrthogonalInvolution) -> Result<Self, SpinError> {
        let clifford = sigma.clifford_algebra()?;
        Ok(GroupDescriptor {
            kind,
            sigma,
            clifford,
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn clifford(&self) -> &QuadraticEtale {
        &self.clifford
    }

    pub fn involution(&self) -> &OrthogonalInvolution {
        &self.sigma
    }

    /// Membership of an element of `K*`, viewed in `B` through `K ≅ ℚ(u)`
    /// for the orthogonal kinds.
    pub fn contains(&self, z: &EtaleElement) -> Result<bool, SpinError> {
        if z.delta() != self.clifford.delta() {
            return Err(SpinError::DeltaMismatch);
        }
        if !z.is_unit() {
            return Ok(false);
        }
        // On ℚ(u), σ restricts to conjugation, so μ(z) = N(z).
        Ok(!self.kind.is_norm_one() || z.norm().is_one())
    }

    /// Membership of a quaternion.
    pub fn contains_quaternion(&self, g: &Quaternion) -> Result<bool, SpinError> {
        if !g.same_algebra(self.sigma.u()) {
            return Err(SpinError::AlgebraMismatch);
        }
        if self.kind.is_torus() && !is_proper_similitude(g, &self.sigma) {
            return Ok(false);
        }
        match multiplier(g, &self.sigma) {
            Ok(mu) => Ok(!self.kind.is_norm_one() || mu.is_one()),
            Err(SpinError::NotSimilitude) => Ok(false),
            Err(e) => Err(e),
        }
    }
}
