use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::Params;

/// Bound-state branch: below zero for attraction, above `2/lambda^2` for repulsion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub branch: Branch,
    /// Principal number, `n >= j + 1`.
    pub n: u32,
    pub j: u32,
    pub energy: f64,
    /// `kappa = lambda alpha / n`, negative on branch II.
    pub kappa: f64,
    /// Geometric decay ratio `sqrt(1 + kappa^2) - |kappa|`.
    pub omega: f64,
    pub lambda: f64,
}

/// `sqrt(1 + kappa^2) - |kappa|`, written without cancellation.
pub fn omega(kappa: f64) -> f64 {
    1.0 / ((1.0 + kappa * kappa).sqrt() + kappa.abs())
}

/// `E^I = (1 - sqrt(1 + kappa^2)) / lambda^2`, evaluated as
/// `-kappa^2 / ((1 + sqrt(1 + kappa^2)) lambda^2)`.
pub fn energy_branch_i(kappa: f64, lambda: f64) -> f64 {
    -kappa * kappa / ((1.0 + (1.0 + kappa * kappa).sqrt()) * lambda * lambda)
}

/// `E^II = (1 + sqrt(1 + kappa^2)) / lambda^2`.
pub fn energy_branch_ii(kappa: f64, lambda: f64) -> f64 {
    (1.0 + (1.0 + kappa * kappa).sqrt()) / (lambda * lambda)
}

/// Ordinary hydrogen-like level `-alpha^2 / (2 n^2)`.
pub fn bohr_energy(alpha: f64, n: u32) -> f64 {
    -alpha * alpha / (2.0 * (n as f64).powi(2))
}

fn level(branch: Branch, n: u32, j: u32, params: &Params) -> EnergyLevel {
    let kappa = params.lambda * params.alpha / n as f64;
    let energy = match branch {
        Branch::I => energy_branch_i(kappa, params.lambda),
        Branch::II => energy_branch_ii(kappa, params.lambda),
    };
    EnergyLevel { branch, n, j, energy, kappa, omega: omega(kappa), lambda: params.lambda }
}

/// Attractive-Coulomb levels `n = j+1 ..= j+n_count` below zero.
pub fn bound_energies_i(params: &Params, j: u32, n_count: u32) -> Result<Vec<EnergyLevel>> {
    params.validate()?;
    if params.alpha <= 0.0 {
        return Err(Error::Precondition(format!("branch I needs alpha > 0, got {}", params.alpha)));
    }
    Ok((j + 1..=j + n_count).map(|n| level(Branch::I, n, j, params)).collect())
}

/// Repulsive-Coulomb levels above `2/lambda^2`, the mirror of branch I:
/// `E^II(alpha) = 2/lambda^2 - E^I(|alpha|)`.
pub fn bound_energies_ii(params: &Params, j: u32, n_count: u32) -> Result<Vec<EnergyLevel>> {
    params.validate()?;
    if params.alpha >= 0.0 {
        return Err(Error::Precondition(format!("branch II needs alpha < 0, got {}", params.alpha)));
    }
    Ok((j + 1..=j + n_count).map(|n| level(Branch::II, n, j, params)).collect())
}

/// Levels of whichever branch the sign of `alpha` allows.
pub fn bound_energies(params: &Params, j: u32, n_count: u32) -> Result<Vec<EnergyLevel>> {
    if params.alpha > 0.0 {
        bound_energies_i(params, j, n_count)
    } else {
        bound_energies_ii(params, j, n_count)
    }
}

/// Bisection down to a relative width of `1e-6`, then Illinois-safeguarded
/// secant steps inside the bracket.
pub fn bracketed_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() || !f_hi.is_finite() {
        return Err(Error::NoRoot(format!("[{lo}, {hi}] gives f = {f_lo}, {f_hi}")));
    }
    while (hi - lo).abs() > 1e-6 * lo.abs().max(hi.abs()) {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            (lo, f_lo) = (mid, f_mid);
        } else {
            (hi, f_hi) = (mid, f_mid);
        }
    }
    let mut side = 0;
    for _ in 0..200 {
        let x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        let fx = f(x);
        if fx == 0.0 || (hi - lo).abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            (lo, f_lo) = (x, fx);
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            (hi, f_hi) = (x, fx);
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locates bound energies independently of the closed forms by solving the
/// termination condition `alpha lambda / (2 eta sqrt(eta^2 - 1)) = -/+ n` in
/// `E`. Brackets are the closed-form energies with their distance from the
/// regime edge (`0` or `2/lambda^2`) scaled by `0.9` and `1.1`.
pub fn termination_roots(j: u32, params: &Params, n_count: u32) -> Result<Vec<EnergyLevel>> {
    params.validate()?;
    if params.alpha == 0.0 {
        return Err(Error::Precondition("termination roots need alpha != 0".into()));
    }
    let (lam, alpha) = (params.lambda, params.alpha);
    let closed = bound_energies(params, j, n_count)?;
    closed
        .iter()
        .map(|lvl| {
            let n = lvl.n as f64;
            let energy = match lvl.branch {
                Branch::I => {
                    // |eta|^2 = -E lambda^2 / 2
                    let cond = |e: f64| {
                        let x = -0.5 * e * lam * lam;
                        alpha * lam / (2.0 * (x * (1.0 + x)).sqrt()) - n
                    };
                    bracketed_root(cond, 1.1 * lvl.energy, 0.9 * lvl.energy)?
                }
                Branch::II => {
                    let crit = params.critical_energy();
                    // eta^2 - 1 = (E - 2/lambda^2) lambda^2 / 2, kept as a difference
                    let cond = |d: f64| {
                        let y_minus_1 = 0.5 * d * lam * lam;
                        -alpha * lam / (2.0 * ((1.0 + y_minus_1) * y_minus_1).sqrt()) - n
                    };
                    let d0 = lvl.energy - crit;
                    crit + bracketed_root(cond, 0.9 * d0, 1.1 * d0)?
                }
            };
            Ok(EnergyLevel { energy, ..*lvl })
        })
        .collect()
}

/// Least-squares fit of `(E^I - E^Bohr) = c2 lambda^2 + c4 lambda^4` over the
/// given `lambda` values; returns `c2`.
pub fn commutative_limit_coefficient(alpha: f64, n: u32, lambdas: &[f64]) -> f64 {
    // Normal equations for y/lambda^2 = c2 + c4 lambda^2.
    let pts: Vec<(f64, f64)> = lambdas
        .iter()
        .map(|&lam| {
            let e = energy_branch_i(lam * alpha / n as f64, lam);
            (lam * lam, (e - bohr_energy(alpha, n)) / (lam * lam))
        })
        .collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (sxx, sxy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x * x, b + x * y));
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    (sy - slope * sx) / m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_i_example() {
        let lv = bound_energies_i(&Params::new(0.2, 1.0), 0, 3).unwrap();
        assert!((lv[0].energy - 25.0 * (1.0 - 1.04f64.sqrt())).abs() < 1e-13);
        assert!((lv[0].energy + 0.495_097_57).abs() < 1e-8);
        assert!(lv.windows(2).all(|w| w[0].energy < w[1].energy && w[1].energy < 0.0));
        assert!(lv.iter().all(|l| l.omega > 0.0 && l.omega < 1.0));
    }

    #[test]
    fn branch_ii_example_and_mirror() {
        let p = Params::new(0.2, -1.0);
        let lv = bound_energies_ii(&p, 0, 4).unwrap();
        assert!((lv[0].energy - 25.0 * (1.0 + 1.04f64.sqrt())).abs() < 1e-12);
        let attractive = bound_energies_i(&p.with_alpha(1.0), 0, 4).unwrap();
        for (a, b) in attractive.iter().zip(&lv) {
            assert!(b.energy > p.critical_energy());
            assert!((a.energy + b.energy - p.critical_energy()).abs() < 1e-12 * p.critical_energy());
        }
    }

    #[test]
    fn sign_preconditions() {
        assert!(bound_energies_i(&Params::new(0.2, -1.0), 0, 1).is_err());
        assert!(bound_energies_ii(&Params::new(0.2, 0.0), 0, 1).is_err());
        assert!(termination_roots(0, &Params::new(0.2, 0.0), 1).is_err());
    }

    #[test]
    fn commutative_limit() {
        let lv = bound_energies_i(&Params::new(1e-7, 1.0), 0, 1).unwrap();
        assert!((lv[0].energy + 0.5).abs() < 1e-12);
    }

    #[test]
    fn bracketed_root_examples() {
        let r = bracketed_root(|x| x * x - 2.0, 1.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 4e-16);
        assert!(matches!(bracketed_root(|x| x * x + 1.0, -1.0, 1.0), Err(Error::NoRoot(_))));
    }

    #[test]
    fn roots_reproduce_closed_forms() {
        for &(lam, alpha) in &[(0.2, 1.0), (0.05, 2.5), (1.3, -0.7)] {
            let p = Params::new(lam, alpha);
            for j in 0..3 {
                let closed = bound_energies(&p, j, 4).unwrap();
                let roots = termination_roots(j, &p, 4).unwrap();
                for (c, r) in closed.iter().zip(&roots) {
                    assert!((c.energy - r.energy).abs() <= 1e-12 * c.energy.abs(), "{c:?} vs {r:?}");
                }
            }
        }
    }
}
