//! Scalar abstraction shared by every floating-point construction.
//!
//! Exact quantities (conformal dimensions, monodromy charges, lattice data)
//! stay in [`Rational`]; they are converted to a [`Scalar`] only at the
//! moment a sine or an exponential has to be evaluated.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, Signed, Zero};

/// Exact rational number used for dimensions, phases and lattice data.
pub type Rational = Ratio<i64>;

/// Floating-point type a matrix can be evaluated in.
pub trait Scalar: Float + FloatConst + Debug + Display + Send + Sync + 'static {
    /// Default entrywise tolerance for unitarity and equality checks.
    fn default_tolerance() -> Self;

    /// Largest distance to the nearest integer accepted for a Verlinde coefficient.
    fn fusion_threshold() -> Self;

    fn from_f64(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 is representable")
    }

    fn from_i64(x: i64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("i64 is representable")
    }

    fn from_usize(x: usize) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("usize is representable")
    }

    fn from_ratio(q: Rational) -> Self {
        Self::from_i64(*q.numer()) / Self::from_i64(*q.denom())
    }

    fn to_f64(self) -> f64 {
        <f64 as num_traits::NumCast>::from(self).expect("finite scalar")
    }
}

impl Scalar for f64 {
    fn default_tolerance() -> Self {
        1e-10
    }

    fn fusion_threshold() -> Self {
        1e-8
    }
}

impl Scalar for f32 {
    fn default_tolerance() -> Self {
        1e-4
    }

    fn fusion_threshold() -> Self {
        1e-3
    }
}

/// Reduces `q` into `[0, 1)`.
pub fn frac(q: Rational) -> Rational {
    let f = q - q.floor();
    if f.is_negative() {
        f + 1
    } else {
        f
    }
}

/// Reduces `q` into `(-1, 0]`.
pub fn frac_nonpositive(q: Rational) -> Rational {
    let f = frac(q);
    if f.is_zero() {
        f
    } else {
        f - 1
    }
}

/// `exp(2πi q)`, with `q` reduced exactly before the exponential is taken.
pub fn phase<T: Scalar>(q: Rational) -> Complex<T> {
    let angle = T::TAU() * T::from_ratio(frac(q));
    Complex::new(angle.cos(), angle.sin())
}

/// `sin(π q)` for rational `q`, reduced mod 2 first.
pub fn sin_pi<T: Scalar>(q: Rational) -> T {
    let reduced = frac(q / 2) * 2;
    (T::PI() * T::from_ratio(reduced)).sin()
}

/// Table of `exp(-2πi j / n)` for `j = 0..n`.
pub(crate) fn inverse_roots_of_unity<T: Scalar>(n: usize) -> Vec<Complex<T>> {
    (0..n)
        .map(|j| phase::<T>(-Rational::new(j as i64, n as i64)))
        .collect()
}
