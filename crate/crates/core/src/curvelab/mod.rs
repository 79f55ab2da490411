//! Elliptic curves over small finite fields by brute force.
//!
//! Point counts give the set of Frobenius traces realized over `𝔽_q`,
//! which is compared with the isogeny-class enumeration, and an explicit
//! group law checks that Frobenius acts on a `(p+1)²`-point curve over
//! `𝔽_{p²}` as the scalar `−p`.

mod curve;
mod field;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use curve::{Point, WeierstrassCurve};
pub use field::{Elem, Embedding, FiniteField, DEFAULT_MAX_FIELD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {q} exceeds the limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("coefficient outside the field")]
    NotInField,
    #[error("curve is singular")]
    Singular,
    #[error("group law is implemented for short Weierstrass form with p >= 5")]
    NotShortForm,
    #[error("no curve over F_{q} with {points} points")]
    SearchExhausted { q: u64, points: u64 },
    #[error("precondition failed: {0}")]
    PrecheckFailed(String),
}

/// One counted curve, as reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub coeffs: [Elem; 5],
    pub points: u64,
    pub trace: i64,
    pub supersingular: bool,
}

impl CurveRecord {
    pub fn of(curve: &WeierstrassCurve) -> Self {
        let points = curve.count_points();
        let trace = i64::from(curve.field().q()) + 1 - points as i64;
        CurveRecord {
            coeffs: curve.coeffs(),
            points,
            trace,
            supersingular: trace % i64::from(curve.field().p()) == 0,
        }
    }
}

/// Coefficient vectors covering every isomorphism class: `(A, B)` short
/// form for `p ≥ 5`, `y² = x³ + a₂x² + a₄x + a₆` for `p = 3`, and the
/// general form for `p = 2`. Ordered lexicographically.
fn family(field: &FiniteField) -> Vec<[Elem; 5]> {
    let q = field.q();
    let free: &[usize] = match field.p() {
        2 => &[0, 1, 2, 3, 4],
        3 => &[1, 3, 4],
        _ => &[3, 4],
    };
    let total = (q as usize).pow(free.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = [0; 5];
            for &slot in free.iter().rev() {
                c[slot] = (idx % q as usize) as Elem;
                idx /= q as usize;
            }
            c
        })
        .collect()
}

/// Every trace `q + 1 − #E(𝔽_q)` over nonsingular curves, each with its
/// first curve in coefficient order.
pub fn trace_census(field: &Arc<FiniteField>) -> BTreeMap<i64, CurveRecord> {
    family(field)
        .into_par_iter()
        .filter_map(|c| WeierstrassCurve::new(field.clone(), c).ok())
        .map(|e| CurveRecord::of(&e))
        .fold(BTreeMap::new, |mut acc: BTreeMap<i64, CurveRecord>, rec| {
            acc.entry(rec.trace)
                .and_modify(|r| {
                    if rec.coeffs < r.coeffs {
                        *r = rec.clone();
                    }
                })
                .or_insert(rec);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (t, rec) in b {
                a.entry(t)
                    .and_modify(|r| {
                        if rec.coeffs < r.coeffs {
                            *r = rec.clone();
                        }
                    })
                    .or_insert(rec);
            }
            a
        })
}

/// The first curve over `𝔽_{p²}` with exactly `(p + 1)²` points, i.e. trace `−2p`.
pub fn find_q14_curve(p: u64) -> Result<WeierstrassCurve, CurveError> {
    if p > 100 {
        return Err(CurveError::FieldTooLarge {
            q: p.saturating_mul(p),
            limit: DEFAULT_MAX_FIELD,
        });
    }
    let field = Arc::new(FiniteField::new(p, 2)?);
    let target = (p + 1) * (p + 1);
    family(&field)
        .into_iter()
        .filter_map(|c| WeierstrassCurve::new(field.clone(), c).ok())
        .find(|e| e.count_points() == target)
        .ok_or(CurveError::SearchExhausted {
            q: p * p,
            points: target,
        })
}

fn frobenius_precheck(curve: &WeierstrassCurve) -> Result<u64, CurveError> {
    let f = curve.field();
    let p = u64::from(f.p());
    if !curve.is_short() || p < 5 {
        return Err(CurveError::NotShortForm);
    }
    if f.a() != 2 {
        return Err(CurveError::PrecheckFailed(format!("{f} is not F_(p^2)")));
    }
    let points = curve.count_points();
    if points != (p + 1) * (p + 1) {
        return Err(CurveError::PrecheckFailed(format!(
            "#E = {points}, expected (p+1)^2 = {}",
            (p + 1) * (p + 1)
        )));
    }
    Ok(p)
}

/// Checks `(x^{p²}, y^{p²}) = [−p]P` for every `P ∈ E(𝔽_{p²})`.
pub fn verify_frobenius_scalar(curve: &WeierstrassCurve) -> Result<bool, CurveError> {
    let p = frobenius_precheck(curve)?;
    for pt in curve.points()? {
        if curve.frobenius(pt, 2) != curve.multiply(pt, -(p as i64))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same check on `E(𝔽_{p^{2k}})`, where the `p²`-power Frobenius
/// moves points. `limit` caps the extension size.
pub fn verify_frobenius_scalar_over_extension(
    curve: &WeierstrassCurve,
    k: u32,
    limit: u64,
) -> Result<bool, CurveError> {
    let p = frobenius_precheck(curve)?;
    let larger = Arc::new(FiniteField::with_limit(p, 2 * k, limit)?);
    let embedding = curve
        .field()
        .embedding_into(&larger)
        .ok_or_else(|| CurveError::PrecheckFailed("no embedding".to_string()))?;
    let lifted = curve.base_change(&larger, &embedding)?;
    for pt in lifted.points()? {
        if lifted.frobenius(pt, 2) != lifted.multiply(pt, -(p as i64))? {
            return Ok(false);
        }
    }
    Ok(true)
}
