//! Scalar abstraction shared by the exact and the floating-point tracks.
//!
//! Schur functions, Vandermonde products and determinants are written once
//! against [`Scalar`]. The exact track instantiates them with
//! [`LaurentPoly`](crate::qexact::LaurentPoly), `BigInt` or `BigRational`; the
//! numeric track with `f32`, `f64` or `Complex<f32>`/`Complex<f64>`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::linalg::{self, SquareMatrix};

/// A commutative ring element usable by the generic determinant and Schur code.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// `true` for types whose arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Exact quotient, or `None` when `self / divisor` does not exist in the
    /// ring (or `divisor` is zero).
    fn checked_div(&self, divisor: &Self) -> Option<Self>;

    /// Size used for pivot selection and coincidence tests. Exact types
    /// return a rough size that is zero iff the element is zero.
    fn magnitude(&self) -> f64;

    fn determinant(m: SquareMatrix<Self>) -> Self {
        linalg::det_bareiss(m)
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// True when `self` and `other` must be treated as the same point.
    /// `scale` is the largest modulus in the point set being tested.
    fn coincides(&self, other: &Self, scale: f64) -> bool {
        let diff = self.clone() - other.clone();
        if Self::EXACT {
            diff.is_zero()
        } else {
            diff.magnitude() <= COINCIDENCE_RTOL * scale.max(f64::MIN_POSITIVE)
        }
    }
}

/// Relative threshold below which two floating-point coordinates coincide.
pub const COINCIDENCE_RTOL: f64 = 1e-10;

/// Real floating-point scalar (`f32` or `f64`) for the numeric track.
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + ToPrimitive + Default + 'static {
    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64")
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;
            fn from_int(n: i64) -> Self {
                n as $t
            }
            fn checked_div(&self, divisor: &Self) -> Option<Self> {
                (*divisor != 0.0).then(|| self / divisor)
            }
            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
            fn determinant(m: SquareMatrix<Self>) -> Self {
                linalg::det_lu(m).value
            }
        }
        impl Real for $t {}
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl<R: Real> Scalar for Complex<R> {
    const EXACT: bool = false;
    fn from_int(n: i64) -> Self {
        Complex::new(<R as Scalar>::from_int(n), R::zero())
    }
    fn checked_div(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| *self / *divisor)
    }
    fn magnitude(&self) -> f64 {
        self.norm().to_f64().unwrap_or(f64::INFINITY)
    }
    fn determinant(m: SquareMatrix<Self>) -> Self {
        linalg::det_lu(m).value
    }
}

impl Scalar for BigInt {
    const EXACT: bool = true;
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, divisor);
        r.is_zero().then_some(q)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn checked_div(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| self / divisor)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Largest magnitude in a point set, the scale for coincidence tests.
pub fn max_magnitude<S: Scalar>(points: &[S]) -> f64 {
    points.iter().map(Scalar::magnitude).fold(0.0, f64::max)
}

/// Index pair of the first two coinciding points, if any.
pub fn find_coincidence<S: Scalar>(points: &[S]) -> Option<(usize, usize)> {
    let scale = max_magnitude(points);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].coincides(&points[j], scale) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Vandermonde determinant `det(x_j^{N-k})`, i.e. `prod_{m<l} (x_m - x_l)`.
///
/// This is the normalization that makes `det(x_j^{lambda_k+N-k}) / V(x)` the
/// Schur function with a positive leading coefficient.
pub fn vandermonde<S: Scalar>(x: &[S]) -> S {
    let mut acc = S::one();
    for m in 0..x.len() {
        for l in m + 1..x.len() {
            acc = acc * (x[m].clone() - x[l].clone());
        }
    }
    acc
}

/// `sum_{m=0}^{terms-1} w^m` by Horner's rule; equals `(1-w^terms)/(1-w)`
/// away from `w = 1` and the limit `terms` at `w = 1`.
pub fn geometric_sum<S: Scalar>(w: &S, terms: usize) -> S {
    if terms == 0 {
        return S::zero();
    }
    let mut acc = S::one();
    for _ in 1..terms {
        acc = acc * w.clone() + S::one();
    }
    acc
}

pub fn product<S: Scalar>(x: &[S]) -> S {
    x.iter().cloned().fold(S::one(), |a, b| a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vandermonde_sign_convention() {
        // det [[x1, 1], [x2, 1]] = x1 - x2
        assert_eq!(vandermonde(&[5.0_f64, 2.0]), 3.0);
        let x = [2.0_f64, 3.0, 7.0];
        let m = SquareMatrix::from_fn(3, |j, k| x[j].powi((2 - k) as i32));
        assert!((linalg::det_lu(m).value - vandermonde(&x)).abs() < 1e-12);
    }

    #[test]
    fn geometric_sum_limit() {
        assert_eq!(geometric_sum(&1.0_f64, 7), 7.0);
        assert_eq!(geometric_sum(&BigInt::from(2), 4), BigInt::from(15));
        assert_eq!(geometric_sum(&3.0_f64, 0), 0.0);
    }

    #[test]
    fn coincidence_relative_threshold() {
        let pts = [Complex::new(1.0_f64, 0.0), Complex::new(1.0 + 1e-12, 0.0)];
        assert_eq!(find_coincidence(&pts), Some((0, 1)));
        let pts = [Complex::new(1.0_f64, 0.0), Complex::new(1.0 + 1e-6, 0.0)];
        assert_eq!(find_coincidence(&pts), None);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(Scalar::pow(&BigInt::from(3), 5), BigInt::from(243));
        assert_eq!(Scalar::pow(&2.0_f64, 0), 1.0);
    }
}
