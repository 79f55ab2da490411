use std::fmt;

use super::CurveError;
use crate::arith::is_prime_u64;

/// Largest field built by [`FiniteField::new`].
pub const DEFAULT_MAX_FIELD: u64 = 10_000;

/// An element of `𝔽_q`, encoded by its coefficient vector in base `p`:
/// `c₀ + c₁x + … ↦ c₀ + c₁p + …`.
pub type Elem = u32;

/// `𝔽_{pᵃ} = 𝔽_p[x]/(f)` with `f` the smallest monic irreducible of degree
/// `a` (coefficient vectors compared from the top down), plus log/exp
/// tables for a primitive element.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    a: u32,
    q: u32,
    /// Low-order coefficients of the monic modulus (degree `a` implicit).
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    generator: Elem,
}

fn digits(mut e: Elem, p: u32, a: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(a as usize);
    for _ in 0..a {
        out.push(e % p);
        e /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> Elem {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `f` modulo the monic `g`, coefficients low first.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let top = r.pop().expect("nonempty");
        if top != 0 {
            let off = r.len() - dg;
            for (i, &c) in g[..dg].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - top) * c % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(modulus_full: &[u32], p: u32) -> bool {
    let a = modulus_full.len() as u32 - 1;
    for d in 1..=a / 2 {
        for idx in 0..p.pow(d) {
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem(modulus_full, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, a: u32) -> Result<Self, CurveError> {
        Self::with_limit(p, a, DEFAULT_MAX_FIELD)
    }

    pub fn with_limit(p: u64, a: u32, limit: u64) -> Result<Self, CurveError> {
        if !is_prime_u64(p) {
            return Err(CurveError::NotPrime(p));
        }
        if a == 0 {
            return Err(CurveError::FieldTooLarge { q: 0, limit });
        }
        let q = p
            .checked_pow(a)
            .filter(|&q| q <= limit)
            .ok_or(CurveError::FieldTooLarge {
                q: p.saturating_pow(a),
                limit,
            })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = (0..q)
            .map(|idx| digits(idx, p, a))
            .find(|low| {
                let mut full = low.clone();
                full.push(1);
                is_irreducible(&full, p)
            })
            .expect("irreducible polynomials exist in every degree");
        let mut field = FiniteField {
            p,
            a,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            generator: 0,
        };
        field.build_tables();
        Ok(field)
    }

    fn slow_mul(&self, x: Elem, y: Elem) -> Elem {
        let (dx, dy) = (digits(x, self.p, self.a), digits(y, self.p, self.a));
        let mut prod = vec![0u32; 2 * self.a as usize];
        for (i, &c) in dx.iter().enumerate() {
            for (j, &d) in dy.iter().enumerate() {
                prod[i + j] = (prod[i + j] + c * d) % self.p;
            }
        }
        let mut full = self.modulus.clone();
        full.push(1);
        undigits(&poly_rem(&prod, &full, self.p), self.p)
    }

    fn build_tables(&mut self) {
        let order = self.q - 1;
        for g in 1..self.q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut acc: Elem = 1;
            loop {
                exp.push(acc);
                acc = self.slow_mul(acc, g);
                if acc == 1 {
                    break;
                }
            }
            if exp.len() as u32 == order {
                let mut log = vec![0u32; self.q as usize];
                for (k, &e) in exp.iter().enumerate() {
                    log[e as usize] = k as u32;
                }
                self.exp = exp;
                self.log = log;
                self.generator = g;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients lowest first.
    pub fn modulus(&self) -> Vec<u32> {
        let mut full = self.modulus.clone();
        full.push(1);
        full
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(i64::from(self.p)) as Elem
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.a == 1 {
            return (x + y) % self.p;
        }
        let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, x: Elem) -> Elem {
        if self.a == 1 {
            return (self.p - x) % self.p;
        }
        let (mut x, mut out, mut place) = (x, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            return 0;
        }
        let k = (self.log[x as usize] + self.log[y as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    /// `None` for zero.
    pub fn inv(&self, x: Elem) -> Option<Elem> {
        if x == 0 {
            return None;
        }
        let order = self.q - 1;
        Some(self.exp[((order - self.log[x as usize]) % order) as usize])
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if x == 0 {
            return u32::from(e == 0);
        }
        let order = u64::from(self.q - 1);
        let k = (u64::from(self.log[x as usize]) * (e % order)) % order;
        self.exp[k as usize]
    }

    /// Quadratic character for odd `q`: 0, 1 or −1.
    pub fn chi(&self, x: Elem) -> i64 {
        if x == 0 {
            0
        } else if self.log[x as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// A square root, if one exists.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if x == 0 {
            return Some(0);
        }
        let k = self.log[x as usize];
        if self.p == 2 {
            // Squaring is a bijection; q − 1 is odd.
            let half = (u64::from(k) * u64::from(self.q / 2)) % u64::from(self.q - 1);
            return Some(self.exp[half as usize]);
        }
        k.is_multiple_of(2).then(|| self.exp[(k / 2) as usize])
    }

    /// Absolute trace to `𝔽_p`.
    pub fn trace(&self, x: Elem) -> Elem {
        let mut acc = 0;
        let mut conj = x;
        for _ in 0..self.a {
            acc = self.add(acc, conj);
            conj = self.pow(conj, u64::from(self.p));
        }
        acc
    }

    /// Root of `self`'s modulus inside `larger`, giving an embedding.
    pub fn embedding_into(&self, larger: &FiniteField) -> Option<Embedding> {
        if larger.p != self.p || !larger.a.is_multiple_of(self.a) {
            return None;
        }
        let full = self.modulus();
        let root = larger.elements().find(|&r| {
            let value = full
                .iter()
                .rev()
                .fold(0, |acc, &c| larger.add(larger.mul(acc, r), c));
            value == 0
        })?;
        Some(Embedding {
            root,
            p: self.p,
            a: self.a,
        })
    }

    pub fn format(&self, x: Elem) -> String {
        if self.a == 1 {
            return x.to_string();
        }
        let terms: Vec<String> = digits(x, self.p, self.a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.a == other.a && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// `𝔽_{pᵃ} → 𝔽_{pᴬ}` sending `x` to a chosen root of the modulus.
#[derive(Debug, Clone, Copy)]
pub struct Embedding {
    root: Elem,
    p: u32,
    a: u32,
}

impl Embedding {
    pub fn apply(&self, larger: &FiniteField, x: Elem) -> Elem {
        digits(x, self.p, self.a)
            .iter()
            .rev()
            .fold(0, |acc, &c| larger.add(larger.mul(acc, self.root), c))
    }
}
