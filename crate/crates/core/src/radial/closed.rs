use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::context::{classify, exact_eta_data, EnergyContext, Regime};
use super::seq::{Provenance, RadialSeq};
use crate::error::{Error, Result};
use crate::fuzzy::Params;
use crate::special::exact::{from_u64, gauss_2f1_terminating, powi};
use crate::special::{gauss_2f1_terminating_accurate, kummer_1f1_terminating_accurate};

/// Which sign of `D` the closed form is built from. Both give the same
/// function; the redundancy is used as a consistency check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `|eta|` closer than this to 0 or 1 triggers the degenerate-branch cross-check.
pub const NEAR_BOUNDARY: f64 = 1e-8;
/// Allowed relative gap between generic and degenerate forms near a boundary.
pub const NEAR_BOUNDARY_AGREEMENT: f64 = 1e-6;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `base^N F(a, -N; 2j+2; z)` for `N = 0..=n_max`.
fn power_times_terminating(base: Complex64, a: Complex64, j: u32, z: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut power = c(1.0);
    (0..=n_max as u64)
        .map(|n| {
            let v = power * gauss_2f1_terminating_accurate(a, n, 2 * j as u64 + 2, z);
            power *= base;
            v
        })
        .collect()
}

/// `t = eta sqrt(eta^2 - 1)` on the principal branches, written per regime so
/// that no signed zero decides a branch.
pub fn eta_product(ctx: &EnergyContext) -> Complex64 {
    let eta = ctx.eta;
    match ctx.regime {
        Regime::NegativeE => c(-eta.im * (eta.im * eta.im + 1.0).sqrt()),
        Regime::LowScattering => Complex64::new(0.0, eta.re * (1.0 - eta.re * eta.re).sqrt()),
        Regime::UltraHigh => c(eta.re * (eta.re * eta.re - 1.0).sqrt()),
        Regime::EtaZero | Regime::EtaOne => c(0.0),
    }
}

/// Generic closed form
/// `[1 +- 2t - 2 eta^2]^N F(j+1 +- alpha lambda/(2t), -N; 2j+2; +-4t/(1 +- 2t - 2 eta^2))`.
fn generic(j: u32, ctx: &EnergyContext, params: &Params, sign: Sign, n_max: usize) -> Vec<Complex64> {
    let s = sign.factor();
    let t = eta_product(ctx);
    let eta_sq = ctx.eta * ctx.eta;
    let base = 1.0 + 2.0 * s * t - 2.0 * eta_sq;
    let a = j as f64 + 1.0 + s * params.alpha * params.lambda / (2.0 * t);
    let z = 4.0 * s * t / base;
    power_times_terminating(base, a, j, z, n_max)
}

/// Regime-specific forms of the plus branch, written in real variables where
/// the closed form admits them.
fn specialized_plus(j: u32, ctx: &EnergyContext, params: &Params, n_max: usize) -> Vec<Complex64> {
    let (lam, alpha) = (params.lambda, params.alpha);
    let jp1 = j as f64 + 1.0;
    match ctx.regime {
        Regime::NegativeE => {
            let e = ctx.eta.im;
            let q = e * (e * e + 1.0).sqrt();
            let base = 1.0 - 2.0 * q + 2.0 * e * e;
            power_times_terminating(c(base), c(jp1 - alpha * lam / (2.0 * q)), j, c(-4.0 * q / base), n_max)
        }
        Regime::UltraHigh => {
            let e = ctx.eta.re;
            let q = e * (e * e - 1.0).sqrt();
            let base = 1.0 + 2.0 * q - 2.0 * e * e;
            power_times_terminating(c(base), c(jp1 + alpha * lam / (2.0 * q)), j, c(4.0 * q / base), n_max)
        }
        Regime::LowScattering => {
            let energy = ctx.energy;
            let p = (2.0 * energy * (1.0 - 0.5 * lam * lam * energy)).sqrt();
            let w = Complex64::new(p, lam * energy) / Complex64::new(p, -lam * energy);
            let a = Complex64::new(jp1, -alpha / p);
            let z = Complex64::new(0.0, 2.0 * lam * p) / w;
            power_times_terminating(w, a, j, z, n_max)
        }
        Regime::EtaZero | Regime::EtaOne => unreachable!("degenerate regimes handled separately"),
    }
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// `-(2 alpha)^{j+1/2} / (2j+1)!`, principal power for negative `alpha`.
fn degenerate_prefactor(j: u32, alpha: f64) -> Complex64 {
    -c(2.0 * alpha).powf(j as f64 + 0.5) / factorial(2 * j as u64 + 1)
}

/// `E = 0`: `-(2 alpha)^{j+1/2}/(2j+1)! phi(-N, 2j+2, 2 alpha lambda)`.
pub fn eta_zero_form(j: u32, params: &Params, n_max: usize) -> Vec<Complex64> {
    let pref = degenerate_prefactor(j, params.alpha);
    let z = c(2.0 * params.alpha * params.lambda);
    (0..=n_max as u64)
        .map(|n| pref * kummer_1f1_terminating_accurate(n, 2 * j as u64 + 2, z))
        .collect()
}

/// `E = 2/lambda^2`: `-(-1)^N (2 alpha)^{j+1/2}/(2j+1)! phi(-N, 2j+2, -2 alpha lambda)`.
pub fn eta_one_form(j: u32, params: &Params, n_max: usize) -> Vec<Complex64> {
    let pref = degenerate_prefactor(j, params.alpha);
    let z = c(-2.0 * params.alpha * params.lambda);
    (0..=n_max as u64)
        .map(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            pref * sign * kummer_1f1_terminating_accurate(n, 2 * j as u64 + 2, z)
        })
        .collect()
}

/// Closed-form radial solution regular at the origin, `R_j(N)` for
/// `N = 0..=n_max`.
///
/// Generic energies give `R(0) = 1`; the degenerate branches carry the
/// prefactor `-(2 alpha)^{j+1/2}/(2j+1)!`. Within [`NEAR_BOUNDARY`] of
/// `eta = 0` or `eta = 1` both forms are evaluated, compared after
/// normalization, and the degenerate one is returned.
pub fn radial_closed_form(j: u32, energy: f64, params: &Params, n_max: usize, sign: Sign) -> Result<RadialSeq> {
    params.validate()?;
    if !energy.is_finite() {
        return Err(Error::NonFinite("energy".into()));
    }
    let ctx = classify(energy, params);
    let near_zero = ctx.regime != Regime::EtaZero && ctx.eta.norm() < NEAR_BOUNDARY;
    let near_one = matches!(ctx.regime, Regime::LowScattering | Regime::UltraHigh)
        && (ctx.eta.re - 1.0).abs() < NEAR_BOUNDARY;

    let (values, provenance) = match ctx.regime {
        Regime::EtaZero => (eta_zero_form(j, params, n_max), Provenance::EtaZero),
        Regime::EtaOne => (eta_one_form(j, params, n_max), Provenance::EtaOne),
        _ => {
            let generic_values = match sign {
                Sign::Plus => specialized_plus(j, &ctx, params, n_max),
                Sign::Minus => generic(j, &ctx, params, sign, n_max),
            };
            if near_zero || near_one {
                let (degenerate, provenance) = if near_zero {
                    (eta_zero_form(j, params, n_max), Provenance::EtaZero)
                } else {
                    (eta_one_form(j, params, n_max), Provenance::EtaOne)
                };
                cross_check_near_boundary(&generic_values, &degenerate)?;
                (degenerate, provenance)
            } else {
                let provenance = match sign {
                    Sign::Plus => Provenance::ClosedFormPlus,
                    Sign::Minus => Provenance::ClosedFormMinus,
                };
                (generic_values, provenance)
            }
        }
    };
    if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("closed form at level {bad}")));
    }
    Ok(RadialSeq::new(j, values, provenance))
}

fn cross_check_near_boundary(generic: &[Complex64], degenerate: &[Complex64]) -> Result<()> {
    let (g0, d0) = (generic[0], degenerate[0]);
    if d0 == c(0.0) {
        // alpha = 0 makes the degenerate form vanish identically; nothing to compare.
        return Ok(());
    }
    let worst = generic
        .iter()
        .zip(degenerate)
        .map(|(g, d)| {
            let (g, d) = (g / g0, d / d0);
            (g - d).norm() / g.norm().max(d.norm()).max(1e-300)
        })
        .fold(0.0, f64::max);
    if worst > NEAR_BOUNDARY_AGREEMENT {
        return Err(Error::RegimeMismatch(format!(
            "generic and degenerate forms disagree near the regime boundary (relative gap {worst:e})"
        )));
    }
    Ok(())
}

/// Exact-rational generic closed form for rational `E`, `lambda`, `alpha`
/// whenever `eta sqrt(eta^2 - 1)` is rational (outside the scattering band).
pub fn radial_closed_form_exact(
    j: u32,
    energy: &BigRational,
    lambda: &BigRational,
    alpha: &BigRational,
    n_max: usize,
    sign: Sign,
) -> Result<Vec<BigRational>> {
    let (eta_sq, t) = exact_eta_data(energy, lambda).ok_or_else(|| {
        Error::RegimeMismatch(format!(
            "eta sqrt(eta^2 - 1) is not a real rational at E = {energy}, lambda = {lambda}"
        ))
    })?;
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let s = match sign {
        Sign::Plus => one.clone(),
        Sign::Minus => -one.clone(),
    };
    let base = &one + &two * &s * &t - &two * &eta_sq;
    if base.is_zero() {
        return Err(Error::Pole("vanishing closed-form base".into()));
    }
    let a = BigRational::from_integer(BigInt::from(j + 1)) + &s * alpha * lambda / (&two * &t);
    let z = BigRational::from_integer(BigInt::from(4)) * &s * &t / &base;
    let cc: BigRational = from_u64(2 * j as u64 + 2);
    Ok((0..=n_max as u64)
        .map(|n| powi(&base, n as i64) * gauss_2f1_terminating(&a, n, &cc, &z))
        .collect())
}
