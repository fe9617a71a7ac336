//! Exact and numerical machinery for thermal correlators of the periodic XX0
//! chain: Schur functions, Bethe states, walker determinants, boxed plane
//! partitions and low-temperature asymptotics.
//!
//! Numeric code is generic over [`Scalar`]; the aliases below fix the common
//! instantiations.

pub mod asym;
pub mod boxcount;
pub mod chain;
pub mod combinat;
pub mod linalg;
pub mod oracle;
pub mod qexact;
pub mod scalar;
pub mod schur;

pub use linalg::SquareMatrix;
pub use qexact::LaurentPoly;
pub use scalar::{Real, Scalar};

/// Double-precision complex numbers, the default numeric track.
pub type C64 = num_complex::Complex<f64>;
/// Single-precision complex numbers.
pub type C32 = num_complex::Complex<f32>;
/// Exact polynomials in the formal variable `q`.
pub type QPoly = qexact::LaurentPoly;
/// Arbitrary-precision rationals, used to evaluate q-identities at rational q.
pub type Rational = num_rational::BigRational;
