//! Exact integer and rational arithmetic.
//!
//! Everything downstream works over ℚ, so this module carries the number
//! theory the rest of the crate leans on: trial-division factorization,
//! square classes in ℚ*/ℚ*², Legendre and Hilbert symbols, and the
//! local–global representation test for diagonal ternary forms.

mod factor;
mod hilbert;
mod ternary;

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use factor::{factorize, factorize_with_bound, is_prime_u64, Factorization};
pub use hilbert::{hilbert_symbol, is_local_square, legendre, valuation};
pub use ternary::{ternary_local_obstruction, ternary_represents};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Default trial-division bound for [`factorize`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1 << 48;

static FACTOR_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_BOUND);

/// Current process-wide factorization bound.
pub fn factor_bound() -> u64 {
    FACTOR_BOUND.load(AtomicOrdering::Relaxed)
}

/// Replace the process-wide factorization bound (the CLI reads it from
/// `FACTOR_BOUND`).
pub fn set_factor_bound(bound: u64) {
    FACTOR_BOUND.store(bound.max(4), AtomicOrdering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("composite cofactor {0} exceeds the factorization bound")]
    BoundExceeded(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("{0} is not prime")]
    NotPrime(String),
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `"n"` or `"n/d"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Serializes an integer as a JSON number when it fits in `i64`, otherwise
/// as a decimal string.
pub struct BigIntJson<'a>(pub &'a BigInt);

impl serde::Serialize for BigIntJson<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().to_biguint()?;
    let d = r.denom().to_biguint()?;
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &sn * &sn == n && &sd * &sd == d {
        Some(Rational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// `r^e` for a signed exponent. Panics if `r == 0` and `e < 0`.
pub fn rational_pow(r: &Rational, e: i64) -> Rational {
    let base = if e < 0 { r.recip() } else { r.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Class of a nonzero rational in ℚ*/ℚ*², represented by the unique
/// squarefree integer (sign included) in that class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    /// Class of a nonzero integer.
    pub fn of_integer(n: &BigInt) -> Result<Self, ArithError> {
        squarefree_part(&Rational::from_integer(n.clone()))
    }

    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn as_rational(&self) -> Rational {
        Rational::from_integer(self.0.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Product of classes.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&other.0);
        SquareClass((&self.0 / &g) * (&other.0 / &g))
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The squarefree representative of `r` modulo nonzero rational squares.
pub fn squarefree_part(r: &Rational) -> Result<SquareClass, ArithError> {
    if r.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    // n/d and n·d differ by the square d².
    let m = r.numer() * r.denom();
    let f = factorize(&m)?;
    let mut rep = BigInt::from(f.sign);
    for (p, e) in f.factors {
        if e % 2 == 1 {
            rep *= p;
        }
    }
    Ok(SquareClass(rep))
}

/// A prime number certified at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(ArithError::NotPrime(p.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// A place of ℚ: a finite prime or the archimedean place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Prime),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Result<Self, ArithError> {
        Prime::new(p).map(Place::Finite)
    }

    pub fn as_prime(&self) -> Option<u64> {
        match self {
            Place::Finite(p) => Some(p.get()),
            Place::Infinity => None,
        }
    }
}

// Finite places first, in increasing order, then ∞.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p.get()),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Place::Infinity),
            other => {
                let p: u64 = other
                    .parse()
                    .map_err(|_| ArithError::NotPrime(other.to_string()))?;
                Place::prime(p)
            }
        }
    }
}

/// Primes dividing the numerator or denominator of any of the inputs.
pub(crate) fn primes_dividing(values: &[&Rational]) -> Result<Vec<u64>, ArithError> {
    let mut primes = Vec::new();
    for r in values {
        for part in [r.numer(), r.denom()] {
            if part.is_zero() {
                return Err(ArithError::ZeroInput);
            }
            for (p, _) in factorize(part)?.factors {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// Integer in the same square class as `r` (numerator times denominator).
pub(crate) fn integral_class_rep(r: &Rational) -> BigInt {
    r.numer() * r.denom()
}
