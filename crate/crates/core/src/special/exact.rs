//! Scalar-generic evaluation of terminating series.
//!
//! The same code runs on `Complex64` for the float path and on `BigRational`
//! for exact identity checks, so a rational input produces a rational result
//! with no rounding at all.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};

/// Field-like scalar accepted by the generic series.
pub trait Scalar: Clone + Num + FromPrimitive {}

impl<T: Clone + Num + FromPrimitive> Scalar for T {}

pub fn from_u64<T: Scalar>(n: u64) -> T {
    T::from_u64(n).expect("integer is representable")
}

/// Rising factorial `a (a+1) ... (a+m-1)`, `1` for `m = 0`.
pub fn pochhammer<T: Scalar>(a: &T, m: usize) -> T {
    let mut acc = T::one();
    let mut factor = a.clone();
    for _ in 0..m {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

/// `F(a, -n; c; z)` summed over its `n + 1` terms.
///
/// `c` must not make any `(c)_m` with `m <= n` vanish; the caller checks.
pub fn gauss_2f1_terminating<T: Scalar>(a: &T, n: u64, c: &T, z: &T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    let b = T::zero() - from_u64::<T>(n);
    for m in 0..n {
        let mm = from_u64::<T>(m);
        let num = (a.clone() + mm.clone()) * (b.clone() + mm.clone());
        let den = (c.clone() + mm.clone()) * (mm + T::one());
        term = term * num / den * z.clone();
        sum = sum + term.clone();
    }
    sum
}

/// `phi(-n; c; z)` summed over its `n + 1` terms.
pub fn kummer_1f1_terminating<T: Scalar>(n: u64, c: &T, z: &T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    let a = T::zero() - from_u64::<T>(n);
    for m in 0..n {
        let mm = from_u64::<T>(m);
        let num = a.clone() + mm.clone();
        let den = (c.clone() + mm.clone()) * (mm + T::one());
        term = term * num / den * z.clone();
        sum = sum + term.clone();
    }
    sum
}

/// Integer power by repeated squaring; negative exponents invert.
pub fn powi<T: Scalar>(base: &T, exp: i64) -> T {
    let mut result = T::one();
    let mut b = base.clone();
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    if exp < 0 {
        T::one() / result
    } else {
        result
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators overflow the direct conversion.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}
