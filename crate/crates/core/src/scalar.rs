//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All algorithms are written against [`Real`], which is implemented for `f32`
//! and `f64`. Spectral quantities live in `Complex<T>`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

use crate::error::{Error, Result};

/// Floating point type usable by the library.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count into `Self`.
    #[inline]
    fn of(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count representable")
    }

    /// Lossy conversion to `f64`, used for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for the complex type over a real scalar.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

/// Demotes a complex value to its real part when the imaginary residue is
/// at most `rel * (1 + |re|)`; otherwise reports the residue.
pub fn demote<T: Real>(z: Cx<T>, rel: T) -> Result<T> {
    if z.im.abs() <= rel * (T::one() + z.re.abs()) {
        Ok(z.re)
    } else {
        Err(Error::ComplexResidue {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
        })
    }
}

/// `n!` as a scalar. Exact in `f64` for `n <= 22`.
pub(crate) fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::of(k))
}

/// Binomial coefficient `C(n, k)` as a scalar.
pub(crate) fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| acc * T::of(n - i) / T::of(i + 1))
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub(crate) fn falling<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    (0..k).fold(T::one(), |acc, i| acc * T::of(n - i))
}

/// `x^k` for a non-negative integer exponent, with `0^0 = 1`.
#[inline]
pub(crate) fn powu<T: Real>(x: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x)
}

#[inline]
pub(crate) fn cpowu<T: Real>(z: Cx<T>, k: usize) -> Cx<T> {
    (0..k).fold(cr(T::one()), |acc, _| acc * z)
}
