//! Norm-equation triples `(A, B, C)` attached to dihedral quintic fields.
//!
//! A quintic field whose Galois closure has group `D5` gives, through the
//! Lagrange resolvents of a trace-zero generator, a triple with
//! `A, B` in `Z[phi]` and `C` in `Z` satisfying
//!
//! ```text
//! Nm(B^2 - 4 conj(A) A^2) = 5 C^2
//! ```
//!
//! and the triple determines the field. The crate provides:
//!
//! * [`ring_q5`]: exact `Z[phi]` / `Q(sqrt5)` arithmetic,
//! * [`enumerator`]: counting triples in discriminant boxes and fitting the
//!   log-log growth exponent,
//! * [`galois_map`]: quintic to triple and back, plus the quadratic
//!   subfield witness,
//! * [`a4_wong`]: the analogous norm identity for `A4` quartics over
//!   `Q(sqrt-3)`.

pub mod a4_wong;
pub mod enumerator;
mod error;
pub mod galois_map;
pub mod numeric;
pub mod poly;
pub mod ring_q5;

pub use error::Error;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Element of `Z[phi]` with arbitrary-precision coordinates.
pub type QuadInt = ring_q5::ZPhi<BigInt>;
/// Element of `Z[phi]` with machine coordinates (enumeration hot loop).
pub type QuadInt64 = ring_q5::ZPhi<i64>;
/// Element of `Q(sqrt5)` in the `sqrt5` basis.
pub type QuadRat = ring_q5::QSqrt5<BigRational>;
/// Multiprecision real used for resolvent computations.
pub type MpReal = numeric::MpReal;
/// Multiprecision complex number.
pub type MpComplex = num_complex::Complex<MpReal>;

pub use enumerator::{BoxConfig, CountRow, FitResult};
pub use galois_map::{QuinticPoly, Triple};

pub type Result<T, E = Error> = std::result::Result<T, E>;
