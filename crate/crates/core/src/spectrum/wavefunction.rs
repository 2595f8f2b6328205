use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::levels::{Branch, EnergyLevel};
use crate::error::{Error, Result};
use crate::fuzzy::Params;
use crate::radial::{radial_closed_form_exact, rational_sqrt, Provenance, RadialSeq, Sign};
use crate::special::exact::{from_u64, gauss_2f1_terminating, powi};
use crate::special::gauss_2f1_terminating_accurate;

/// Bound-state radial sequence.
///
/// Branch I: `Omega^N F(j+1-n, -N; 2j+2; -2 kappa/Omega)`;
/// branch II: `(-Omega)^N F(j+1-n, -N; 2j+2; 2 kappa/Omega)` with `kappa < 0`.
/// The first parameter is the termination value `-(n - j - 1)`, so the
/// polynomial has degree `min(n - j - 1, N)`.
pub fn bound_wavefunction(level: &EnergyLevel, n_max: usize) -> Result<RadialSeq> {
    if level.n <= level.j {
        return Err(Error::Precondition(format!("principal number {} must exceed j = {}", level.n, level.j)));
    }
    let a = Complex64::new(level.j as f64 + 1.0 - level.n as f64, 0.0);
    let c = 2 * level.j as u64 + 2;
    let (base, z, provenance) = match level.branch {
        Branch::I => (level.omega, -2.0 * level.kappa / level.omega, Provenance::BoundStateI),
        Branch::II => (-level.omega, 2.0 * level.kappa / level.omega, Provenance::BoundStateII),
    };
    let mut power = 1.0;
    let values = (0..=n_max as u64)
        .map(|n| {
            let v = power * gauss_2f1_terminating_accurate(a, n, c, Complex64::new(z, 0.0));
            power *= base;
            v
        })
        .collect();
    Ok(RadialSeq::new(level.j, values, provenance))
}

/// `sqrt(1 + kappa^2)` when it is rational.
pub fn pythagorean_root(kappa: &BigRational) -> Option<BigRational> {
    rational_sqrt(&(BigRational::one() + kappa * kappa))
}

/// Exact bound-state sequence for a rational `kappa` with rational
/// `sqrt(1 + kappa^2)`; the sign of `kappa` selects nothing, the branch does.
pub fn bound_wavefunction_exact(branch: Branch, n: u32, j: u32, kappa: &BigRational, n_max: usize) -> Result<Vec<BigRational>> {
    if n <= j {
        return Err(Error::Precondition(format!("principal number {n} must exceed j = {j}")));
    }
    let s = pythagorean_root(kappa)
        .ok_or_else(|| Error::Precondition(format!("sqrt(1 + kappa^2) is irrational for kappa = {kappa}")))?;
    let omega = &s - kappa.abs();
    let two = BigRational::from_integer(BigInt::from(2));
    let (base, z) = match branch {
        Branch::I => (omega.clone(), -&two * kappa / &omega),
        Branch::II => (-omega.clone(), &two * kappa / &omega),
    };
    let a = BigRational::from_integer(BigInt::from(j as i64 + 1 - n as i64));
    let c: BigRational = from_u64(2 * j as u64 + 2);
    Ok((0..=n_max as u64)
        .map(|k| powi(&base, k as i64) * gauss_2f1_terminating(&a, k, &c, &z))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MirrorReport {
    pub n: u32,
    pub j: u32,
    pub exact: bool,
    pub equal: bool,
    pub max_deviation: f64,
}

/// `R^II_{nj}(-alpha)(N) = (-1)^N R^I_{nj}(alpha)(N)` in rational arithmetic.
///
/// The right side is the branch-I polynomial. The left side is computed twice:
/// from the branch-II polynomial at `-kappa`, and from the generic closed form
/// at `E^II` with `lambda = 1`, `alpha = -n kappa`. Requires `kappa > 0` with
/// `sqrt(1 + kappa^2)` rational.
pub fn mirror_check(n: u32, j: u32, kappa: &BigRational, n_max: usize) -> Result<MirrorReport> {
    if !kappa.is_positive() {
        return Err(Error::Precondition("mirror check needs kappa > 0".into()));
    }
    let s = pythagorean_root(kappa)
        .ok_or_else(|| Error::Precondition(format!("sqrt(1 + kappa^2) is irrational for kappa = {kappa}")))?;
    let lambda = BigRational::one();
    let alpha = -(kappa * BigRational::from_integer(BigInt::from(n)));
    let energy = BigRational::one() + &s;
    let generic = radial_closed_form_exact(j, &energy, &lambda, &alpha, n_max, Sign::Plus)?;
    let branch_ii = bound_wavefunction_exact(Branch::II, n, j, &-kappa.clone(), n_max)?;
    let rhs = bound_wavefunction_exact(Branch::I, n, j, kappa, n_max)?;
    let mut max_dev = 0.0f64;
    let mut equal = true;
    for (k, r) in rhs.iter().enumerate() {
        let signed = if k % 2 == 0 { r.clone() } else { -r.clone() };
        for lhs in [&generic[k], &branch_ii[k]] {
            let diff = lhs - &signed;
            if !diff.is_zero() {
                equal = false;
                max_dev = max_dev.max(crate::special::exact::rational_to_f64(&diff.abs()));
            }
        }
    }
    Ok(MirrorReport { n, j, exact: true, equal, max_deviation: max_dev })
}

/// Float version of [`mirror_check`] for any `kappa > 0`: the branch-II
/// polynomial at `-alpha` against the signed branch-I polynomial, per-level
/// relative deviation.
pub fn mirror_check_float(n: u32, j: u32, kappa: f64, n_max: usize, tolerance: f64) -> Result<MirrorReport> {
    if kappa <= 0.0 {
        return Err(Error::Precondition("mirror check needs kappa > 0".into()));
    }
    if n <= j {
        return Err(Error::Precondition(format!("principal number {n} must exceed j = {j}")));
    }
    let attractive = Params::new(1.0, kappa * n as f64);
    let level_i = super::levels::bound_energies_i(&attractive, j, n - j)?.pop().expect("n > j");
    let level_ii = super::levels::bound_energies_ii(&attractive.with_alpha(-kappa * n as f64), j, n - j)?
        .pop()
        .expect("n > j");
    let lhs = bound_wavefunction(&level_ii, n_max)?;
    let rhs = bound_wavefunction(&level_i, n_max)?;
    let max_dev = lhs
        .values
        .iter()
        .zip(&rhs.values)
        .enumerate()
        .map(|(k, (l, r))| {
            let signed = if k % 2 == 0 { *r } else { -r };
            (l - signed).norm() / l.norm().max(r.norm()).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    Ok(MirrorReport { n, j, exact: false, equal: max_dev <= tolerance, max_deviation: max_dev })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{build_ladder, build_psi_jm, eigen_residual, TruncatedFock};
    use crate::special::exact::rational;
    use crate::spectrum::levels::{bound_energies_i, bound_energies_ii};

    #[test]
    fn degree_and_decay() {
        let p = Params::new(0.2, 1.0);
        for lvl in bound_energies_i(&p, 1, 3).unwrap() {
            let r = bound_wavefunction(&lvl, 400).unwrap();
            let ratio = (r.get(400) / r.get(399)).norm();
            assert!((ratio - lvl.omega).abs() < 0.02 * lvl.omega, "{ratio} vs {}", lvl.omega);
        }
        // n = j + 1: pure geometric sequence.
        let lvl = bound_energies_i(&p, 2, 1).unwrap()[0];
        let r = bound_wavefunction(&lvl, 6).unwrap();
        for (k, v) in r.values.iter().enumerate() {
            assert!((v.re - lvl.omega.powi(k as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_matches_float() {
        let kappa = rational(3, 4);
        let exact = bound_wavefunction_exact(Branch::I, 3, 1, &kappa, 12).unwrap();
        let lvl = bound_energies_i(&Params::new(1.0, 3.0 * 0.75), 1, 2).unwrap()[1];
        assert_eq!(lvl.n, 3);
        assert_eq!(lvl.omega, 0.5);
        let float = bound_wavefunction(&lvl, 12).unwrap();
        for (e, f) in exact.iter().zip(&float.values) {
            assert!((crate::special::exact::rational_to_f64(e) - f.re).abs() < 1e-15);
        }
    }

    #[test]
    fn eigen_equation_both_branches() {
        let space = TruncatedFock::new(30);
        let ladder = build_ladder(space);
        for alpha in [1.0, -1.0] {
            let p = Params::new(0.2, alpha);
            let levels = if alpha > 0.0 { bound_energies_i(&p, 1, 2) } else { bound_energies_ii(&p, 1, 2) };
            for lvl in levels.unwrap() {
                let r = bound_wavefunction(&lvl, 30).unwrap();
                for m in [-1, 0, 1] {
                    let psi = build_psi_jm(1, m, &r, space, &p).unwrap();
                    let res = eigen_residual(&psi, lvl.energy, &p, &ladder);
                    assert!(res < 1e-10, "{lvl:?} m={m}: {res:e}");
                }
            }
        }
    }

    #[test]
    fn mirror_exact_pythagorean() {
        for n in 1..=3 {
            for j in 0..n {
                let rep = mirror_check(n, j, &rational(3, 4), 20).unwrap();
                assert!(rep.equal && rep.max_deviation == 0.0, "{rep:?}");
            }
        }
        assert!(mirror_check(2, 0, &rational(1, 2), 5).is_err());
    }

    #[test]
    fn mirror_float() {
        let rep = mirror_check_float(3, 1, 0.37, 40, 1e-12).unwrap();
        assert!(rep.equal, "{rep:?}");
    }
}
