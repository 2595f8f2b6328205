use num_complex::Complex64;

use super::closed::{radial_closed_form, Sign};
use super::seq::{Provenance, RadialSeq};
use crate::error::{Error, Result};
use crate::fuzzy::Params;

/// Coefficients of the level recurrence
/// `lead R(n+1) = diag R(n) + lower R(n-1)` obtained from
/// `(1/lambda)[a^+,[a,Psi]] - 2 alpha Psi - k^2 r Psi = 0` on level `n + j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    pub lead: Complex64,
    pub diag: Complex64,
    pub lower: Complex64,
}

pub fn stencil(j: u32, n: usize, energy: Complex64, params: &Params) -> Stencil {
    let (nf, jf, lam) = (n as f64, j as f64, params.lambda);
    let k_sq = 2.0 * energy;
    Stencil {
        lead: Complex64::new(nf + 2.0 * jf + 2.0, 0.0),
        diag: 2.0 * nf + 2.0 * (jf + 1.0) - 2.0 * params.alpha * lam - k_sq * lam * lam * (nf + jf + 1.0),
        lower: Complex64::new(-nf, 0.0),
    }
}

/// Forward run of the level recurrence from the closed-form seed `R(0)`
/// (or `1` when that seed vanishes).
///
/// Forward iteration follows the dominant solution; at bound-state energies
/// the regular solution is recessive and round-off grows like `Omega^-2n`.
pub fn radial_from_recurrence(j: u32, energy: f64, params: &Params, n_max: usize) -> Result<RadialSeq> {
    let seed = radial_closed_form(j, energy, params, 0, Sign::Plus)?.get(0);
    let seed = if seed == Complex64::new(0.0, 0.0) { Complex64::new(1.0, 0.0) } else { seed };
    radial_from_recurrence_seeded(j, Complex64::new(energy, 0.0), params, n_max, seed)
}

pub fn radial_from_recurrence_seeded(
    j: u32,
    energy: Complex64,
    params: &Params,
    n_max: usize,
    seed: Complex64,
) -> Result<RadialSeq> {
    params.validate()?;
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(seed);
    for n in 0..n_max {
        let s = stencil(j, n, energy, params);
        if s.lead == Complex64::new(0.0, 0.0) {
            return Err(Error::Breakdown { level: n });
        }
        let prev = if n > 0 { values[n - 1] } else { Complex64::new(0.0, 0.0) };
        values.push((s.diag * values[n] + s.lower * prev) / s.lead);
    }
    Ok(RadialSeq::new(j, values, Provenance::Recurrence))
}

/// Per-level relative residual of the recurrence for `n = 0..n_max-1`.
pub fn recurrence_residuals(radial: &RadialSeq, energy: Complex64, params: &Params) -> Vec<f64> {
    let v = &radial.values;
    (0..v.len().saturating_sub(1))
        .map(|n| {
            let s = stencil(radial.j, n, energy, params);
            let prev = if n > 0 { v[n - 1] } else { Complex64::new(0.0, 0.0) };
            let terms = [s.lead * v[n + 1], s.diag * v[n], s.lower * prev];
            let scale: f64 = terms.iter().map(|t| t.norm()).sum();
            let r = (terms[0] - terms[1] - terms[2]).norm();
            if scale == 0.0 {
                0.0
            } else {
                r / scale
            }
        })
        .collect()
}
