use std::f64::consts::PI;
use std::sync::OnceLock;

use super::bernoulli::{bernoulli_numbers_f64, BernoulliTable};
use super::{ensure_finite, nonpositive_integer, ComplexValue};
use crate::error::{Error, Result};

// Stirling series is used once Re z reaches this value.
const STIRLING_MIN_RE: f64 = 15.0;
const STIRLING_TERMS: usize = 10;
const MAX_SHIFT: f64 = 1.0e6;

fn stirling_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        bernoulli_numbers_f64(STIRLING_TERMS)
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                let k = (i + 1) as f64;
                b / (2.0 * k * (2.0 * k - 1.0))
            })
            .collect()
    })
}

/// Principal branch of `ln Gamma(z)`, analytic on the plane cut along
/// `(-inf, 0]`.
///
/// The argument is shifted upward with principal logarithms until the Stirling
/// series applies, which keeps the branch continuous off the negative axis and
/// gives `log_gamma(conj z) = conj(log_gamma(z))` exactly.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(z, "log_gamma argument")?;
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::Pole(format!("log_gamma at -{n}")));
    }
    if z.re < -MAX_SHIFT {
        return Err(Error::Precondition(format!(
            "log_gamma argument real part {} below supported range",
            z.re
        )));
    }

    let mut w = z;
    let mut shift = ComplexValue::new(0.0, 0.0);
    while w.re < STIRLING_MIN_RE {
        shift += w.ln();
        w += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = ComplexValue::new(0.0, 0.0);
    let mut power = inv;
    for c in stirling_coefficients() {
        series += power * *c;
        power *= inv2;
    }
    let value = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift;
    ensure_finite(value, "log_gamma")
}

/// Asymptotic form
/// `ln Gamma(z + a) ~ (z + a - 1/2) ln z - z + ln(2 pi)/2 + sum_n (-1)^(n+1) B_{n+1}(a) / (n (n+1)) z^-n`
/// truncated after `terms` correction terms.
///
/// The alternating sign matters only for odd-degree `B_{n+1}(a)`, i.e. when
/// `a` is not 0 or 1; dropping it costs accuracy already at order `z^-2`.
pub fn log_gamma_asymptotic(z: ComplexValue, a: ComplexValue, terms: usize) -> Result<ComplexValue> {
    let table = BernoulliTable::shared();
    if terms + 1 > table.max_degree() {
        return Err(Error::Range {
            index: terms + 1,
            max: table.max_degree(),
        });
    }
    let lnz = z.ln();
    let mut value = (z + a - 0.5) * lnz - z + 0.5 * (2.0 * PI).ln();
    let inv = z.inv();
    let mut power = inv;
    for n in 1..=terms {
        let nf = n as f64;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        value += sign * table.eval(n + 1, a)? / (nf * (nf + 1.0)) * power;
        power *= inv;
    }
    ensure_finite(value, "log_gamma_asymptotic")
}
