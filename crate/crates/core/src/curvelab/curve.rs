use std::fmt;
use std::sync::Arc;

use super::field::{Elem, Embedding, FiniteField};
use super::CurveError;

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆` over a finite field.
#[derive(Debug, Clone)]
pub struct WeierstrassCurve {
    field: Arc<FiniteField>,
    /// `[a₁, a₂, a₃, a₄, a₆]`.
    coeffs: [Elem; 5],
}

/// A point on a curve in short form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(Elem, Elem),
}

impl WeierstrassCurve {
    pub fn new(field: Arc<FiniteField>, coeffs: [Elem; 5]) -> Result<Self, CurveError> {
        if coeffs.iter().any(|&c| c >= field.q()) {
            return Err(CurveError::NotInField);
        }
        let curve = WeierstrassCurve { field, coeffs };
        if curve.discriminant() == 0 {
            return Err(CurveError::Singular);
        }
        Ok(curve)
    }

    /// `y² = x³ + Ax + B`.
    pub fn short(field: Arc<FiniteField>, a4: Elem, a6: Elem) -> Result<Self, CurveError> {
        Self::new(field, [0, 0, 0, a4, a6])
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> [Elem; 5] {
        self.coeffs
    }

    pub fn is_short(&self) -> bool {
        self.coeffs[0] == 0 && self.coeffs[1] == 0 && self.coeffs[2] == 0
    }

    /// `Δ = −b₂²b₈ − 8b₄³ − 27b₆² + 9b₂b₄b₆`.
    pub fn discriminant(&self) -> Elem {
        let f = &*self.field;
        let [a1, a2, a3, a4, a6] = self.coeffs;
        let k = |n: i64| f.from_int(n);
        let m = |x, y| f.mul(x, y);
        let b2 = f.add(m(a1, a1), m(k(4), a2));
        let b4 = f.add(m(k(2), a4), m(a1, a3));
        let b6 = f.add(m(a3, a3), m(k(4), a6));
        let b8 = [
            m(m(a1, a1), a6),
            m(k(4), m(a2, a6)),
            f.neg(m(a1, m(a3, a4))),
            m(a2, m(a3, a3)),
            f.neg(m(a4, a4)),
        ]
        .into_iter()
        .fold(0, |acc, t| f.add(acc, t));
        [
            f.neg(m(m(b2, b2), b8)),
            m(k(-8), m(b4, m(b4, b4))),
            m(k(-27), m(b6, b6)),
            m(k(9), m(b2, m(b4, b6))),
        ]
        .into_iter()
        .fold(0, |acc, t| f.add(acc, t))
    }

    /// `x³ + a₂x² + a₄x + a₆`.
    fn cubic(&self, x: Elem) -> Elem {
        let f = &*self.field;
        let [_, a2, _, a4, a6] = self.coeffs;
        let x2 = f.mul(x, x);
        let x3 = f.mul(x2, x);
        f.add(f.add(x3, f.mul(a2, x2)), f.add(f.mul(a4, x), a6))
    }

    /// `#E(𝔽_q)`, the point at infinity included.
    pub fn count_points(&self) -> u64 {
        let f = &*self.field;
        let [a1, _, a3, _, _] = self.coeffs;
        let mut affine: u64 = 0;
        if f.p() == 2 {
            for x in f.elements() {
                let b = f.add(f.mul(a1, x), a3);
                let c = self.cubic(x);
                affine += if b == 0 {
                    1
                } else {
                    // y = b·w turns the equation into w² + w = c/b².
                    let inv = f.inv(b).expect("b ≠ 0");
                    let rhs = f.mul(c, f.mul(inv, inv));
                    if f.trace(rhs) == 0 {
                        2
                    } else {
                        0
                    }
                };
            }
        } else {
            let half = f.inv(f.from_int(2)).expect("odd characteristic");
            for x in f.elements() {
                // (y + (a₁x + a₃)/2)² = cubic(x) + ((a₁x + a₃)/2)².
                let shift = f.mul(f.add(f.mul(a1, x), a3), half);
                let rhs = f.add(self.cubic(x), f.mul(shift, shift));
                affine += (1 + f.chi(rhs)) as u64;
            }
        }
        affine + 1
    }

    /// `β = q + 1 − #E`.
    pub fn trace(&self) -> i64 {
        i64::from(self.field.q()) + 1 - self.count_points() as i64
    }

    pub fn is_supersingular(&self) -> bool {
        self.trace() % i64::from(self.field.p()) == 0
    }

    pub fn base_change(
        &self,
        larger: &Arc<FiniteField>,
        embedding: &Embedding,
    ) -> Result<WeierstrassCurve, CurveError> {
        WeierstrassCurve::new(
            larger.clone(),
            self.coeffs.map(|c| embedding.apply(larger, c)),
        )
    }

    fn require_short(&self) -> Result<(), CurveError> {
        if self.is_short() && self.field.p() >= 5 {
            Ok(())
        } else {
            Err(CurveError::NotShortForm)
        }
    }

    /// All points of a short-form curve.
    pub fn points(&self) -> Result<Vec<Point>, CurveError> {
        self.require_short()?;
        let f = &*self.field;
        let mut out = vec![Point::Infinity];
        for x in f.elements() {
            if let Some(y) = f.sqrt(self.cubic(x)) {
                out.push(Point::Affine(x, y));
                if y != 0 {
                    out.push(Point::Affine(x, f.neg(y)));
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, pt: Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let f = &*self.field;
                let [a1, _, a3, _, _] = self.coeffs;
                let lhs = f.add(f.mul(y, y), f.mul(y, f.add(f.mul(a1, x), a3)));
                lhs == self.cubic(x)
            }
        }
    }

    pub fn negate(&self, pt: Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, self.field.neg(y)),
        }
    }

    /// Chord-and-tangent addition on a short-form curve.
    pub fn add_points(&self, p1: Point, p2: Point) -> Result<Point, CurveError> {
        self.require_short()?;
        let f = &*self.field;
        let (x1, y1, x2, y2) = match (p1, p2) {
            (Point::Infinity, q) | (q, Point::Infinity) => return Ok(q),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return Ok(Point::Infinity);
            }
            // (3x² + A) / 2y
            let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.coeffs[3]);
            f.mul(num, f.inv(f.mul(f.from_int(2), y1)).expect("y ≠ 0"))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).expect("x₁ ≠ x₂"))
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        Ok(Point::Affine(x3, y3))
    }

    /// `[k]P` by double-and-add.
    pub fn multiply(&self, pt: Point, k: i64) -> Result<Point, CurveError> {
        let base = if k < 0 { self.negate(pt) } else { pt };
        let mut n = k.unsigned_abs();
        let (mut acc, mut dbl) = (Point::Infinity, base);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_points(acc, dbl)?;
            }
            dbl = self.add_points(dbl, dbl)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// `(x, y) ↦ (x^{p^e}, y^{p^e})`.
    pub fn frobenius(&self, pt: Point, e: u32) -> Point {
        let f = &*self.field;
        let power = u64::from(f.p()).pow(e);
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(f.pow(x, power), f.pow(y, power)),
        }
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fld = &*self.field;
        let [a1, a2, a3, a4, a6] = self.coeffs.map(|c| fld.format(c));
        write!(f, "[{a1}, {a2}, {a3}, {a4}, {a6}] over {}", self.field)
    }
}
