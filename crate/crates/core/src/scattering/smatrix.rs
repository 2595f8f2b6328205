use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::momentum::{e_of_p, p_of_e, Edge, Momentum};
use crate::error::{Error, Result};
use crate::fuzzy::Params;
use crate::special::log_gamma;

/// Distance of `j + 1 - i alpha/p` from a non-positive integer that counts as
/// hitting a pole.
pub const POLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SMatrixValue {
    pub s: Complex64,
    /// `Im ln S / 2`, with `ln S` built from principal `ln Gamma`; equals
    /// `delta_j` modulo `pi` when `|S| = 1`.
    pub phase_shift: f64,
}

/// `Gamma(j+1 - i alpha/p) / Gamma(j+1 + i alpha/p)` from a difference of
/// `ln Gamma`.
fn gamma_ratio(j: u32, alpha: f64, p: Complex64) -> Result<SMatrixValue> {
    if p.norm() == 0.0 {
        return Err(Error::Precondition("S-matrix undefined at p = 0".into()));
    }
    let shift = Complex64::i() * alpha / p;
    let a = j as f64 + 1.0 - shift;
    let k = a.re.round();
    if k <= 0.0 && (a - k).norm() <= POLE_TOLERANCE * a.norm().max(1.0) {
        return Err(Error::Pole(format!("j + 1 - i alpha/p = {a} at p = {p}")));
    }
    let ln_s = log_gamma(a)? - log_gamma(j as f64 + 1.0 + shift)?;
    Ok(SMatrixValue { s: ln_s.exp(), phase_shift: 0.5 * ln_s.im })
}

/// NC partial-wave S-matrix at a real or complex energy.
pub fn smatrix_nc(j: u32, energy: Complex64, params: &Params) -> Result<SMatrixValue> {
    params.validate()?;
    gamma_ratio(j, params.alpha, p_of_e(energy, params).p)
}

/// Ordinary Coulomb S-matrix with `k = sqrt(2E)`.
pub fn smatrix_qm(j: u32, energy: f64, alpha: f64) -> Result<SMatrixValue> {
    if energy.is_nan() || energy <= 0.0 {
        return Err(Error::Precondition(format!("ordinary S-matrix needs E > 0, got {energy}")));
    }
    gamma_ratio(j, alpha, Complex64::new((2.0 * energy).sqrt(), 0.0))
}

/// Energies of the poles `p = i alpha/n`, `n = j+1 ..= j+count`, through the
/// inverse momentum map.
pub fn pole_energies(j: u32, params: &Params, count: u32) -> Vec<(u32, f64)> {
    (j + 1..=j + count)
        .map(|n| {
            let m = Momentum { p: Complex64::new(0.0, params.alpha / n as f64), edge: Edge::OffCut };
            (n, e_of_p(m, params).re)
        })
        .collect()
}

/// Shifts each phase by a multiple of `pi` to the value closest to its
/// predecessor. Returns the unwrapped phases and the indices where the raw
/// input jumped by more than `pi/2`, i.e. where the branch was chosen by
/// continuity rather than read off.
pub fn unwrap_phases(raw: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut out: Vec<f64> = Vec::with_capacity(raw.len());
    let mut jumps = Vec::new();
    for (i, &d) in raw.iter().enumerate() {
        let v = match out.last() {
            Some(&prev) => d + ((prev - d) / PI).round() * PI,
            None => d,
        };
        if i > 0 && (d - raw[i - 1]).abs() > FRAC_PI_2 {
            jumps.push(i);
        }
        out.push(v);
    }
    (out, jumps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseSweep {
    pub energies: Vec<f64>,
    pub momenta: Vec<Momentum>,
    pub values: Vec<SMatrixValue>,
    /// Continuous `delta_j` along the sweep.
    pub delta: Vec<f64>,
    pub delta_qm: Vec<f64>,
    pub flagged_jumps: Vec<usize>,
}

/// Evaluates both S-matrices on an energy grid (concurrently) and unwraps the
/// phases in grid order.
pub fn phase_sweep(j: u32, energies: &[f64], params: &Params) -> Result<PhaseSweep> {
    let rows: Vec<(Momentum, SMatrixValue, SMatrixValue)> = energies
        .par_iter()
        .map(|&e| {
            let e_c = Complex64::new(e, 0.0);
            Ok((p_of_e(e_c, params), smatrix_nc(j, e_c, params)?, smatrix_qm(j, e, params.alpha)?))
        })
        .collect::<Result<_>>()?;
    let (delta, mut flagged) = unwrap_phases(&rows.iter().map(|r| r.1.phase_shift).collect::<Vec<_>>());
    let (delta_qm, flagged_qm) = unwrap_phases(&rows.iter().map(|r| r.2.phase_shift).collect::<Vec<_>>());
    flagged.extend(flagged_qm);
    flagged.sort_unstable();
    flagged.dedup();
    Ok(PhaseSweep {
        energies: energies.to_vec(),
        momenta: rows.iter().map(|r| r.0).collect(),
        values: rows.iter().map(|r| r.1).collect(),
        delta,
        delta_qm,
        flagged_jumps: flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{bound_energies_i, bound_energies_ii};

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn free_case_is_identity() {
        let p = Params::new(0.4, 0.0);
        for e in [0.1, 3.0, 12.4] {
            assert_eq!(smatrix_nc(2, real(e), &p).unwrap().s, real(1.0));
            assert_eq!(smatrix_qm(2, e, 0.0).unwrap().s, real(1.0));
        }
    }

    #[test]
    fn unitarity_on_both_edges() {
        for alpha in [1.0, -0.6, 3.0] {
            let p = Params::new(0.3, alpha);
            let crit = p.critical_energy();
            for j in 0..=4 {
                for i in 1..=100 {
                    let e = crit * i as f64 / 101.0;
                    let s = smatrix_nc(j, real(e), &p).unwrap().s;
                    assert!((s.norm() - 1.0).abs() < 1e-12, "j={j} E={e}: {}", s.norm());
                }
            }
        }
    }

    #[test]
    fn poles_are_bound_states() {
        for (lam, alpha) in [(0.2, 1.0), (0.7, 2.0), (0.2, -1.0), (1.1, -0.4)] {
            let p = Params::new(lam, alpha);
            for j in 0..=2 {
                let poles = pole_energies(j, &p, 4);
                let levels = if alpha > 0.0 { bound_energies_i(&p, j, 4) } else { bound_energies_ii(&p, j, 4) };
                for ((n, e), lvl) in poles.iter().zip(levels.unwrap()) {
                    assert_eq!(*n, lvl.n);
                    assert!((e - lvl.energy).abs() <= 1e-12 * lvl.energy.abs(), "{e} vs {}", lvl.energy);
                    assert!(matches!(smatrix_nc(j, real(lvl.energy), &p), Err(Error::Pole(_))));
                }
                // n <= j is not a pole of this partial wave.
                if j > 0 {
                    let m = Momentum { p: Complex64::new(0.0, alpha / j as f64), edge: Edge::OffCut };
                    assert!(smatrix_nc(j, e_of_p(m, &p), &p).is_ok());
                }
            }
        }
    }

    #[test]
    fn qm_poles_and_high_energy() {
        let a = 1.3;
        // k = i alpha / n  <=>  E = -alpha^2/(2 n^2)
        assert!(matches!(smatrix_qm(0, 1.0, a).map(|v| v.s.norm()), Ok(x) if (x - 1.0).abs() < 1e-14));
        assert!(matches!(gamma_ratio(1, a, Complex64::new(0.0, a / 3.0)), Err(Error::Pole(_))));
        assert!(smatrix_qm(0, 1e8, a).unwrap().phase_shift.abs() < 1e-3);
    }

    #[test]
    fn commutative_limit_order() {
        let (e, alpha) = (0.8, 1.0);
        for j in 0..=2 {
            let qm = smatrix_qm(j, e, alpha).unwrap().phase_shift;
            let pts: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3]
                .iter()
                .map(|&lam| {
                    let nc = smatrix_nc(j, real(e), &Params::new(lam, alpha)).unwrap().phase_shift;
                    (lam.ln(), (nc - qm).abs().ln())
                })
                .collect();
            let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);
            assert!((1.8..=2.2).contains(&slope), "j={j}: order {slope}");
        }
    }

    #[test]
    fn unwrap_removes_pi_jumps() {
        let (u, flagged) = unwrap_phases(&[1.4, 1.5, 1.6 - PI, 1.7 - PI]);
        assert!((u[3] - 1.7).abs() < 1e-15);
        assert_eq!(flagged, vec![2]);
        let (u, flagged) = unwrap_phases(&[0.0, 0.4, 0.8]);
        assert_eq!(u, vec![0.0, 0.4, 0.8]);
        assert!(flagged.is_empty());
    }

    #[test]
    fn sweep_is_continuous() {
        let p = Params::new(0.5, 1.5);
        let grid: Vec<f64> = (1..200).map(|i| p.critical_energy() * i as f64 / 200.0).collect();
        let s = phase_sweep(0, &grid, &p).unwrap();
        // The Coulomb phase grows like ln p near both band edges, where the
        // coarse grid jumps; the interior is smooth.
        assert!(s.flagged_jumps.iter().all(|&i| !(3..=195).contains(&i)), "{:?}", s.flagged_jumps);
        // Both edges share p, hence the phase.
        for i in 3..99 {
            assert!((s.delta[i] - s.delta[198 - i]).abs() < 1e-12);
        }
        assert_eq!(s.momenta[50].edge, Edge::Upper);
        assert_eq!(s.momenta[150].edge, Edge::Lower);
    }
}
