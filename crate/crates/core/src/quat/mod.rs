//! Quaternion algebras `B = (a, b / ℚ)` with basis `1, i, j, k`,
//! `i² = a`, `j² = b`, `ij = k = −ji`.

mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, SerializeTuple, Serializer};
use thiserror::Error;

use crate::arith::{
    format_rational, hilbert_symbol, int, is_prime_u64, primes_dividing, ArithError, Place,
    Rational,
};

pub use search::{find_pure_of_norm, DEFAULT_SEARCH_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error("quaternions belong to different algebras")]
    AlgebraMismatch,
    #[error("quaternion has reduced norm zero")]
    NotInvertible,
    #[error("symbol entries must be nonzero")]
    ZeroSymbol,
    #[error("no presentation of B_{{{0},∞}} found within the search range")]
    SearchExhausted(u64),
    #[error("search coefficients too large for the witness search")]
    CoefficientOverflow,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The quaternion algebra `(a, b / ℚ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra {
    a: Rational,
    b: Rational,
}

impl QuaternionAlgebra {
    pub fn new(a: Rational, b: Rational) -> Result<Self, QuatError> {
        if a.is_zero() || b.is_zero() {
            return Err(QuatError::ZeroSymbol);
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn from_integers(a: i64, b: i64) -> Result<Self, QuatError> {
        Self::new(int(a), int(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Coefficients `(−a, −b, ab)` of the reduced norm on pure quaternions.
    pub fn pure_norm_form(&self) -> [Rational; 3] {
        [-self.a.clone(), -self.b.clone(), &self.a * &self.b]
    }

    pub fn into_shared(self) -> Arc<QuaternionAlgebra> {
        Arc::new(self)
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.a),
            format_rational(&self.b)
        )
    }
}

impl Serialize for QuaternionAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuaternionAlgebra", 2)?;
        st.serialize_field("a", &format_rational(&self.a))?;
        st.serialize_field("b", &format_rational(&self.b))?;
        st.end()
    }
}

/// An element `x₀ + x₁i + x₂j + x₃k` of a quaternion algebra.
#[derive(Debug, Clone)]
pub struct Quaternion {
    algebra: Arc<QuaternionAlgebra>,
    coords: [Rational; 4],
}

impl PartialEq for Quaternion {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coords == other.coords
    }
}

impl Eq for Quaternion {}

impl Quaternion {
    pub fn new(algebra: Arc<QuaternionAlgebra>, coords: [Rational; 4]) -> Self {
        Quaternion { algebra, coords }
    }

    pub fn from_integers(algebra: &Arc<QuaternionAlgebra>, c: [i64; 4]) -> Self {
        Self::new(algebra.clone(), c.map(int))
    }

    pub fn scalar(algebra: &Arc<QuaternionAlgebra>, c: Rational) -> Self {
        Self::new(
            algebra.clone(),
            [c, Rational::zero(), Rational::zero(), Rational::zero()],
        )
    }

    pub fn one(algebra: &Arc<QuaternionAlgebra>) -> Self {
        Self::from_integers(algebra, [1, 0, 0, 0])
    }

    pub fn zero(algebra: &Arc<QuaternionAlgebra>) -> Self {
        Self::from_integers(algebra, [0, 0, 0, 0])
    }

    pub fn i(algebra: &Arc<QuaternionAlgebra>) -> Self {
        Self::from_integers(algebra, [0, 1, 0, 0])
    }

    pub fn j(algebra: &Arc<QuaternionAlgebra>) -> Self {
        Self::from_integers(algebra, [0, 0, 1, 0])
    }

    pub fn k(algebra: &Arc<QuaternionAlgebra>) -> Self {
        Self::from_integers(algebra, [0, 0, 0, 1])
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn same_algebra(&self, other: &Quaternion) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    fn check(&self, other: &Quaternion) -> Result<(), QuatError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(QuatError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        let c = &self.coords;
        let d = &other.coords;
        Ok(Self::new(
            self.algebra.clone(),
            [&c[0] + &d[0], &c[1] + &d[1], &c[2] + &d[2], &c[3] + &d[3]],
        ))
    }

    pub fn sub(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Quaternion {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Quaternion {
        Self::new(self.algebra.clone(), self.coords.clone().map(|c| c * s))
    }

    pub fn mul(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        let a = &self.algebra.a;
        let b = &self.algebra.b;
        let ab = a * b;
        let [x0, x1, x2, x3] = &self.coords;
        let [y0, y1, y2, y3] = &other.coords;
        let r0 = x0 * y0 + a * x1 * y1 + b * x2 * y2 - &ab * x3 * y3;
        let r1 = x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2;
        let r2 = x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1;
        let r3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
        Ok(Self::new(self.algebra.clone(), [r0, r1, r2, r3]))
    }

    /// The canonical symplectic involution `x₀ + x₁i + x₂j + x₃k ↦ x₀ − x₁i − x₂j − x₃k`.
    pub fn gamma(&self) -> Quaternion {
        let [x0, x1, x2, x3] = &self.coords;
        Self::new(
            self.algebra.clone(),
            [x0.clone(), -x1.clone(), -x2.clone(), -x3.clone()],
        )
    }

    /// `Nrd(x) = x γ(x) = x₀² − a x₁² − b x₂² + ab x₃²`.
    pub fn nrd(&self) -> Rational {
        let a = &self.algebra.a;
        let b = &self.algebra.b;
        let [x0, x1, x2, x3] = &self.coords;
        x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3
    }

    /// `Trd(x) = x + γ(x) = 2x₀`.
    pub fn trd(&self) -> Rational {
        &self.coords[0] * int(2)
    }

    pub fn reduced_invariants(&self) -> (Rational, Rational) {
        (self.nrd(), self.trd())
    }

    /// `x⁻¹ = γ(x) / Nrd(x)`.
    pub fn inverse(&self) -> Result<Quaternion, QuatError> {
        let n = self.nrd();
        if n.is_zero() {
            return Err(QuatError::NotInvertible);
        }
        Ok(self.gamma().scale(&n.recip()))
    }

    pub fn is_pure(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The scalar value if `x` lies in the center ℚ.
    pub fn as_scalar(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (c, unit) in self.coords.iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let body = if unit.is_empty() {
                format_rational(c)
            } else if c.is_one() {
                unit.to_string()
            } else if *c == -Rational::one() {
                format!("-{unit}")
            } else {
                format!("{}{unit}", format_rational(c))
            };
            terms.push(body);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        write!(f, "{out}")
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(4)?;
        for c in &self.coords {
            t.serialize_element(&format_rational(c))?;
        }
        t.end()
    }
}

/// Places where a quaternion algebra is ramified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationSet {
    places: BTreeSet<Place>,
}

impl RamificationSet {
    pub fn places(&self) -> &BTreeSet<Place> {
        &self.places
    }

    pub fn contains(&self, v: Place) -> bool {
        self.places.contains(&v)
    }

    pub fn is_split(&self) -> bool {
        self.places.is_empty()
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }
}

impl fmt::Display for RamificationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.places.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Places `v` with `(a, b)_v = −1`. Only `∞`, `2` and primes dividing `ab`
/// can ramify.
pub fn ramified_places(algebra: &QuaternionAlgebra) -> Result<RamificationSet, QuatError> {
    let mut candidates = vec![Place::prime(2)?];
    for p in primes_dividing(&[&algebra.a, &algebra.b])? {
        if p != 2 {
            candidates.push(Place::prime(p)?);
        }
    }
    candidates.push(Place::Infinity);
    let mut places = BTreeSet::new();
    for v in candidates {
        if hilbert_symbol(&algebra.a, &algebra.b, v)? == -1 {
            places.insert(v);
        }
    }
    debug_assert!(places.len() % 2 == 0, "Hilbert reciprocity");
    Ok(RamificationSet { places })
}

/// Largest `a` tried when presenting `B_{p,∞}` as `(−a, −p)`.
const PRESENTATION_SEARCH_LIMIT: i64 = 100_000;

/// The quaternion algebra ramified exactly at `p` and `∞`, presented as
/// `(−1, −1)` for `p = 2` and otherwise as `(−a, −p)` with the least `a ≥ 1`.
pub fn b_p_infty(p: u64) -> Result<QuaternionAlgebra, QuatError> {
    if !is_prime_u64(p) {
        return Err(ArithError::NotPrime(p.to_string()).into());
    }
    if p == 2 {
        return QuaternionAlgebra::from_integers(-1, -1);
    }
    let target: BTreeSet<Place> = [Place::prime(p)?, Place::Infinity].into_iter().collect();
    let minus_p = -Rational::from_integer(p.into());
    for a in 1..=PRESENTATION_SEARCH_LIMIT {
        let candidate = QuaternionAlgebra::new(int(-a), minus_p.clone())?;
        if ramified_places(&candidate)?.places == target {
            return Ok(candidate);
        }
    }
    Err(QuatError::SearchExhausted(p))
}
