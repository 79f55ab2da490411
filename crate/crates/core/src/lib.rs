//! Arithmetic spin structures on supersingular elliptic curves over finite
//! fields, computed with exact arithmetic.
//!
//! The modules build on each other bottom-up:
//!
//! * [`arith`]: rationals, factorization, square classes, Hilbert symbols,
//!   ternary representation.
//! * [`quat`]: quaternion algebras `(a, b / ℚ)`, the canonical involution,
//!   reduced norm and trace, ramification, `B_{p,∞}`.
//! * [`spinspace`]: orthogonal involutions, discriminants, the even Clifford
//!   algebra and the similitude/spin tori.
//! * [`isogeny`]: isogeny classes of elliptic curves over `𝔽_q` by trace.
//! * [`qquarter`]: spin structures, the Weil representations, spinorial
//!   lifts and their ℓ-adic/crystalline data.
//! * [`lfunc`]: zeta and L-functions of the spin representation and `H¹(E)`.
//! * [`curvelab`]: brute-force curves over small finite fields.

pub mod arith;
pub mod curvelab;
pub mod isogeny;
pub mod lfunc;
pub mod qquarter;
pub mod quat;
pub mod spinspace;
