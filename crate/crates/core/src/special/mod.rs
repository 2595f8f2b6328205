//! Special-function kernel: Pochhammer symbols, complex log-gamma, hypergeometric
//! series (Gauss, Kummer, Tricomi asymptotics), Bessel series and Bernoulli
//! polynomials.
//!
//! Every series uses the same stopping rule: summation ends once two consecutive
//! terms satisfy `|term| <= SERIES_EPS * |sum|`, and more than `MAX_SERIES_TERMS`
//! terms is reported as divergence.

mod bernoulli;
mod bessel;
pub mod exact;
mod gamma;
mod hypergeometric;
mod precise;

pub use bernoulli::{bernoulli_numbers_f64, bernoulli_poly, BernoulliTable, BERNOULLI_MAX_DEGREE};
pub use bessel::bessel_j;
pub use precise::{gauss_2f1_terminating_accurate, kummer_1f1_terminating_accurate};
pub use gamma::{log_gamma, log_gamma_asymptotic};
pub use hypergeometric::{
    gauss_2f1, gauss_2f1_with_terms, kummer_1f1, tricomi_psi_asymptotic, AsymptoticSum,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the kernel. NaN components are treated as an
/// error state by every public function.
pub type ComplexValue = Complex64;

pub const SERIES_EPS: f64 = 1e-16;
pub const MAX_SERIES_TERMS: usize = 100_000;

/// Rising factorial `a (a+1) ... (a+m-1)` by direct product, so that a factor
/// hitting zero gives an exact zero.
pub fn pochhammer(a: ComplexValue, m: usize) -> ComplexValue {
    exact::pochhammer(&a, m)
}

/// Returns `Some(n)` when `z` is exactly the non-positive integer `-n`.
pub fn nonpositive_integer(z: ComplexValue) -> Option<u64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re > -(u64::MAX as f64) {
        Some((-z.re) as u64)
    } else {
        None
    }
}

pub(crate) fn ensure_finite(z: ComplexValue, what: &str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// Sums `first + t_1 + t_2 + ...` where `t_{m+1} = t_m * ratio(m)`.
pub(crate) fn sum_series<F>(first: ComplexValue, mut ratio: F, context: &str) -> Result<ComplexValue>
where
    F: FnMut(usize) -> ComplexValue,
{
    let mut sum = first;
    let mut term = first;
    let mut small_run = 0;
    for m in 0..MAX_SERIES_TERMS {
        term *= ratio(m);
        sum += term;
        if term.norm() <= SERIES_EPS * sum.norm() {
            small_run += 1;
            if small_run >= 2 {
                return ensure_finite(sum, context);
            }
        } else {
            small_run = 0;
        }
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::NonFinite(context.to_string()));
        }
    }
    Err(Error::Divergence {
        terms: MAX_SERIES_TERMS,
        context: context.to_string(),
    })
}
