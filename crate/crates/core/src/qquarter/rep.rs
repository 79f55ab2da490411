use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{QQuarterError, SpinStructure};
use crate::arith::{format_rational, is_prime_u64, rational_pow, valuation, BigIntJson, Rational};
use crate::isogeny::FrobeniusScalar;
use crate::quat::Quaternion;
use crate::spinspace::{
    covering_map, is_proper_similitude, multiplier, rational_square_root_in_k, EtaleElement,
};

/// `Frob_geom^m` in the Weil group `W ≅ ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilElement(pub i64);

impl WeilElement {
    pub fn identity() -> Self {
        WeilElement(0)
    }

    pub fn frobenius() -> Self {
        WeilElement(1)
    }

    pub fn exponent(self) -> i64 {
        self.0
    }

    pub fn compose(self, other: WeilElement) -> WeilElement {
        WeilElement(self.0 + other.0)
    }
}

/// The similitude representation `W → GO⁺(B, σ)`, `Frob ↦ τ`.
#[derive(Debug, Clone)]
pub struct WeilRep {
    structure: SpinStructure,
    tau: FrobeniusScalar,
}

pub fn similitude_rep(structure: &SpinStructure) -> WeilRep {
    let tau = structure
        .class()
        .frobenius_scalar()
        .expect("spin structures carry spinorial classes");
    WeilRep {
        structure: structure.clone(),
        tau,
    }
}

impl WeilRep {
    pub fn structure(&self) -> &SpinStructure {
        &self.structure
    }

    pub fn tau(&self) -> &FrobeniusScalar {
        &self.tau
    }

    fn tau_rational(&self) -> Rational {
        Rational::from_integer(self.tau.tau().into())
    }

    /// `τ` as a central element of `B`.
    pub fn tau_in_b(&self) -> Quaternion {
        Quaternion::scalar(self.structure.algebra(), self.tau_rational())
    }

    /// `τ` as a rational point of `K*`.
    pub fn tau_in_k(&self) -> EtaleElement {
        self.structure.clifford().rational(self.tau_rational())
    }

    /// `μ(τ) = σ(τ)·τ`, equal to `q`.
    pub fn multiplier(&self) -> Result<Rational, QQuarterError> {
        Ok(multiplier(&self.tau_in_b(), self.structure.sigma())?)
    }

    pub fn is_proper(&self) -> bool {
        is_proper_similitude(&self.tau_in_b(), self.structure.sigma())
    }

    /// `ρ(Frob^m) = τ^m`.
    pub fn evaluate(&self, w: WeilElement) -> EtaleElement {
        let value = rational_pow(&self.tau_rational(), w.exponent());
        self.structure.clifford().rational(value)
    }
}

/// A lift of the similitude representation through `GSpin → GO⁺`,
/// `Frob ↦ (z, −z)` with `z² = τ`.
#[derive(Debug, Clone)]
pub struct SpinLift {
    rep: WeilRep,
    z: EtaleElement,
}

impl SpinLift {
    pub fn rep(&self) -> &WeilRep {
        &self.rep
    }

    /// The canonical square root of `τ`, positive in its leading coordinate.
    pub fn z(&self) -> &EtaleElement {
        &self.z
    }
}

/// `√τ` in `K`, when it exists.
pub fn spin_lift(rep: &WeilRep) -> Option<SpinLift> {
    let z = rational_square_root_in_k(&rep.tau_rational(), rep.structure.clifford()).ok()??;
    debug_assert_eq!(covering_map(&z).ok(), Some(rep.tau_in_k()));
    Some(SpinLift {
        rep: rep.clone(),
        z,
    })
}

/// `ρ^spin(Frob^m) = (z^m, (−z)^m)`.
pub fn evaluate_spin(lift: &SpinLift, w: WeilElement) -> (EtaleElement, EtaleElement) {
    let m = w.exponent();
    let plus = lift.z.pow(m).expect("z is a unit");
    let minus = lift.z.neg().pow(m).expect("z is a unit");
    (plus, minus)
}

/// The `ℓ`-adic and crystalline data attached to a spin lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationData {
    pub ell: u64,
    /// Frobenius eigenvalues `z` and `−z`.
    pub eigenvalues: [EtaleElement; 2],
    /// `|z|² = N(z)` under any complex embedding of `K`.
    pub eigen_abs_sq: Rational,
    /// `φ² = −pⁿ` on the rank-one crystal `ℚ_p[x]/(x² + pⁿ)`.
    pub delta_p: BigInt,
    pub phi_description: String,
    pub v_p_phi_squared: i64,
    pub v_p_q: i64,
    /// `v_p(z²) / (2·v_p(q))`.
    pub normalized_slope: Rational,
}

fn v_p(r: &Rational, p: u64) -> i64 {
    i64::from(valuation(r.numer(), p).0) - i64::from(valuation(r.denom(), p).0)
}

/// Realizations of ℚ(1/4) at `ℓ ≠ p`; `ℓ` is a label only.
pub fn realizations(lift: &SpinLift, ell: u64) -> Result<RealizationData, QQuarterError> {
    let class = lift.rep.structure.class();
    let p = class.p();
    if ell == p || !is_prime_u64(ell) {
        return Err(QQuarterError::BadEll { ell, p });
    }
    let z_sq = covering_map(&lift.z)?;
    let z_sq = z_sq.as_rational().expect("z² = τ is rational").clone();
    debug_assert!(!z_sq.is_zero());
    let q = Rational::from_integer(class.q().into());
    let v_z_sq = v_p(&z_sq, p);
    let v_q = v_p(&q, p);
    Ok(RealizationData {
        ell,
        eigenvalues: [lift.z.clone(), lift.z.neg()],
        eigen_abs_sq: lift.z.norm(),
        delta_p: z_sq.to_integer(),
        phi_description: "multiplication by x".to_string(),
        v_p_phi_squared: v_z_sq,
        v_p_q: v_q,
        normalized_slope: Rational::new(v_z_sq.into(), (2 * v_q).into()),
    })
}

impl Serialize for RealizationData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RealizationData", 8)?;
        st.serialize_field("ell", &self.ell)?;
        st.serialize_field("eigenvalues", &self.eigenvalues)?;
        st.serialize_field("eigen_abs_sq", &format_rational(&self.eigen_abs_sq))?;
        st.serialize_field("delta_p", &BigIntJson(&self.delta_p))?;
        st.serialize_field("phi", &self.phi_description)?;
        st.serialize_field("v_p_phi_squared", &self.v_p_phi_squared)?;
        st.serialize_field("v_p_q", &self.v_p_q)?;
        st.serialize_field("slope", &format_rational(&self.normalized_slope))?;
        st.end()
    }
}
