use serde::Serialize;

use crate::fuzzy::Params;
use crate::radial::RadialSeq;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormReport {
    /// Truncated sum (including the prefactor).
    pub value: f64,
    /// Geometric bound on the omitted terms; infinite when the ratio test fails.
    pub tail_bound: f64,
    /// The ratio test failed: the sequence is not normalizable (scattering).
    pub diverged: bool,
    /// Last term is below `1e-16` and the tail below `1e-14` of the sum.
    pub converged: bool,
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum()
}

/// Reduced radial norm
/// `4 pi lambda^{3+2j} / (j!)^2 sum_n (n+j+1) C(n+2j+1, 2j+1) |R_j(n)|^2`.
///
/// This is the weighted trace norm of `Psi_jm` for `m = +-j`; other `m`
/// carry the extra factor of [`psi_norm_sq`].
pub fn radial_norm_sq(radial: &RadialSeq, params: &Params) -> NormReport {
    let j = radial.j as u64;
    let ln_pref = (4.0 * std::f64::consts::PI).ln() + (3 + 2 * j) as f64 * params.lambda.ln()
        - 2.0 * (1..=j).map(|i| (i as f64).ln()).sum::<f64>();
    let terms: Vec<f64> = radial
        .values
        .iter()
        .enumerate()
        .map(|(n, r)| {
            let n = n as u64;
            let norm_sq = r.norm_sqr();
            if norm_sq == 0.0 {
                0.0
            } else {
                (ln_pref + ((n + j + 1) as f64).ln() + ln_binomial(n + 2 * j + 1, 2 * j + 1) + norm_sq.ln()).exp()
            }
        })
        .collect();
    let value: f64 = terms.iter().sum();

    // Decay ratio from the last few terms; the worst one bounds the tail.
    let tail_window = terms.len().saturating_sub(1).min(4);
    let ratio = (terms.len() - tail_window..terms.len())
        .filter(|&i| i > 0 && terms[i - 1] > 0.0)
        .map(|i| terms[i] / terms[i - 1])
        .fold(0.0, f64::max);
    let last = terms.last().copied().unwrap_or(0.0);
    let diverged = terms.len() >= 2 && last > 0.0 && ratio >= 1.0;
    let tail_bound = if last == 0.0 {
        0.0
    } else if diverged {
        f64::INFINITY
    } else {
        last * ratio / (1.0 - ratio)
    };
    let converged = !diverged && last <= 1e-16 * value && tail_bound <= 1e-14 * value;
    NormReport { value, tail_bound, diverged, converged }
}

/// `C(2j, j - m)`: the `m`-dependence of `||Psi_jm||^2` at fixed radial part.
pub fn m_factor(j: u32, m: i32) -> f64 {
    if m.unsigned_abs() > j {
        return 0.0;
    }
    ln_binomial(2 * j as u64, (j as i64 - m as i64) as u64).exp().round()
}

/// Weighted trace norm `4 pi lambda^3 Tr[(N+1) Psi_jm^+ Psi_jm]` from the
/// radial sum.
pub fn psi_norm_sq(radial: &RadialSeq, m: i32, params: &Params) -> NormReport {
    let f = m_factor(radial.j, m);
    let r = radial_norm_sq(radial, params);
    NormReport { value: f * r.value, tail_bound: f * r.tail_bound, ..r }
}
