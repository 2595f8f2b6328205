use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::fuzzy::Params;

/// The five energy regimes of the NC radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `E < 0`, `eta` imaginary.
    NegativeE,
    /// `0 < E < 2/lambda^2`, `0 < eta < 1`.
    LowScattering,
    /// `E = 0`.
    EtaZero,
    /// `E = 2/lambda^2`.
    EtaOne,
    /// `E > 2/lambda^2`, `eta > 1`.
    UltraHigh,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::NegativeE => "negative_e",
            Regime::LowScattering => "low_scattering",
            Regime::EtaZero => "eta_zero",
            Regime::EtaOne => "eta_one",
            Regime::UltraHigh => "ultra_high",
        }
    }
}

/// Energy together with `k = sqrt(2E)` (principal branch), `eta = k lambda / 2`
/// and the regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyContext {
    pub energy: f64,
    #[serde(skip)]
    pub k: Complex64,
    #[serde(skip)]
    pub eta: Complex64,
    pub regime: Regime,
}

/// Relative width of the regime boundaries at `E = 0` and `E = 2/lambda^2`.
pub const BOUNDARY_TOLERANCE: f64 = 1e-14;

pub fn classify(energy: f64, params: &Params) -> EnergyContext {
    let crit = params.critical_energy();
    let tol = BOUNDARY_TOLERANCE * crit;
    let regime = if energy.abs() <= tol {
        Regime::EtaZero
    } else if (energy - crit).abs() <= tol {
        Regime::EtaOne
    } else if energy < 0.0 {
        Regime::NegativeE
    } else if energy < crit {
        Regime::LowScattering
    } else {
        Regime::UltraHigh
    };
    let (k, eta) = match regime {
        Regime::EtaZero => (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
        Regime::EtaOne => (Complex64::new(2.0 / params.lambda, 0.0), Complex64::new(1.0, 0.0)),
        Regime::NegativeE => {
            let k = (-2.0 * energy).sqrt();
            (Complex64::new(0.0, k), Complex64::new(0.0, 0.5 * k * params.lambda))
        }
        _ => {
            let k = (2.0 * energy).sqrt();
            (Complex64::new(k, 0.0), Complex64::new(0.5 * k * params.lambda, 0.0))
        }
    };
    EnergyContext { energy, k, eta, regime }
}

/// Exact classification for rational energy and NC length.
pub fn classify_exact(energy: &BigRational, lambda: &BigRational) -> Regime {
    let crit = BigRational::from_integer(BigInt::from(2)) / (lambda * lambda);
    if energy.is_zero() {
        Regime::EtaZero
    } else if *energy == crit {
        Regime::EtaOne
    } else if energy.is_negative() {
        Regime::NegativeE
    } else if *energy < crit {
        Regime::LowScattering
    } else {
        Regime::UltraHigh
    }
}

/// Coefficients of `(a0 x + b0) y'' + (a1 x + b1) y' + (a2 x + b2) y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCoefficients {
    pub a0: Complex64,
    pub a1: Complex64,
    pub a2: Complex64,
    pub b0: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub d_sq: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeKind {
    /// `D^2 != 0`: confluent hypergeometric solutions.
    Confluent,
    /// `D^2 = 0`: Bessel-type solutions.
    Bessel,
}

impl OdeCoefficients {
    pub fn kind(&self) -> OdeKind {
        let scale = self.a1.norm_sqr() + (4.0 * self.a0 * self.a2).norm();
        if self.d_sq.norm() <= 1e-14 * scale || scale == 0.0 {
            OdeKind::Bessel
        } else {
            OdeKind::Confluent
        }
    }
}

/// Coefficients of the ordinary ODE associated with the radial equation:
/// `a1 = lambda k^2`, `a2 = k^2`, `b1 = 2(j+1)`, `b2 = lambda k^2 (j+1) + 2 alpha`.
pub fn ode_coefficients(j: u32, energy: f64, params: &Params) -> OdeCoefficients {
    let k_sq = Complex64::new(2.0 * energy, 0.0);
    let lam = params.lambda;
    let jp1 = j as f64 + 1.0;
    let a0 = Complex64::new(1.0, 0.0);
    let a1 = lam * k_sq;
    let a2 = k_sq;
    OdeCoefficients {
        a0,
        a1,
        a2,
        b0: Complex64::new(0.0, 0.0),
        b1: Complex64::new(2.0 * jp1, 0.0),
        b2: lam * k_sq * jp1 + 2.0 * params.alpha,
        d_sq: a1 * a1 - 4.0 * a0 * a2,
    }
}

/// Square root of a non-negative rational when it is rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// `eta^2 = E lambda^2 / 2` and `t = eta sqrt(eta^2 - 1)` (principal branches)
/// as rationals, when `t` is real and rational. This holds only off the
/// scattering band, where `t` is real.
pub fn exact_eta_data(energy: &BigRational, lambda: &BigRational) -> Option<(BigRational, BigRational)> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let eta_sq = energy * lambda * lambda * half;
    let one = BigRational::from_integer(BigInt::from(1));
    match classify_exact(energy, lambda) {
        // eta = i|eta|, sqrt(eta^2 - 1) = i sqrt(|eta|^2 + 1): t = -|eta| sqrt(|eta|^2 + 1)
        Regime::NegativeE => {
            let t_sq = -&eta_sq * (one - &eta_sq);
            rational_sqrt(&t_sq).map(|t| (eta_sq, -t))
        }
        Regime::UltraHigh => {
            let t_sq = &eta_sq * (&eta_sq - one);
            rational_sqrt(&t_sq).map(|t| (eta_sq, t))
        }
        _ => None,
    }
}
