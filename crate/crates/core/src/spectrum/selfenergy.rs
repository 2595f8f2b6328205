use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::Params;

/// Environment variable naming an alternative constants file.
pub const CONSTANTS_ENV: &str = "NCCOULOMB_CONSTANTS";

const DEFAULT_CONSTANTS: &str = include_str!("../../data/constants.txt");

/// CGS-Gaussian constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// `e^2` in erg cm.
    pub e_squared_gaussian: f64,
    /// Electron mass in g.
    pub m_electron: f64,
    /// Speed of light in cm/s.
    pub c: f64,
    /// Reduced Planck constant in erg s.
    pub hbar: f64,
}

impl Constants {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("line {}: bad number `{}`", lineno + 1, value.trim())))?;
            map.insert(key.trim().to_string(), value);
        }
        let get = |k: &str| {
            map.get(k)
                .copied()
                .filter(|v| v.is_finite() && *v > 0.0)
                .ok_or_else(|| Error::Config(format!("missing or non-positive constant `{k}`")))
        };
        Ok(Constants {
            e_squared_gaussian: get("e_squared_gaussian")?,
            m_electron: get("m_electron")?,
            c: get("c")?,
            hbar: get("hbar")?,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by [`CONSTANTS_ENV`] if set, else the bundled defaults.
    pub fn load() -> Result<Self> {
        match std::env::var_os(CONSTANTS_ENV) {
            Some(path) => Self::from_file(Path::new(&path)),
            None => Self::bundled(),
        }
    }

    pub fn bundled() -> Result<Self> {
        Self::parse(DEFAULT_CONSTANTS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lambda0Report {
    /// Classical electron radius `e^2/(m c^2)` in m.
    pub classical_radius_m: f64,
    /// `lambda_0 = (3/8) e^2/(m c^2)` in m.
    pub lambda0_m: f64,
    pub fine_structure: f64,
    pub bohr_radius_m: f64,
    /// `lambda_0 / a_0 = (3/8) alpha_0^2`.
    pub lambda0_over_bohr: f64,
    /// `(9/64) alpha_0^2` as quoted for the correction scale.
    pub correction_scale: f64,
    /// `(lambda_0/a_0)^2 = (9/64) alpha_0^4`, the actual relative size of
    /// the `lambda^2` level shift.
    pub correction_scale_squared: f64,
}

pub fn lambda0_estimate(constants: &Constants) -> Lambda0Report {
    let Constants { e_squared_gaussian: e2, m_electron: m, c, hbar } = *constants;
    let r0_cm = e2 / (m * c * c);
    let fine = e2 / (hbar * c);
    let a0_cm = hbar * hbar / (m * e2);
    let lambda0_cm = 0.375 * r0_cm;
    Lambda0Report {
        classical_radius_m: r0_cm * 1e-2,
        lambda0_m: lambda0_cm * 1e-2,
        fine_structure: fine,
        bohr_radius_m: a0_cm * 1e-2,
        lambda0_over_bohr: lambda0_cm / a0_cm,
        correction_scale: 9.0 / 64.0 * fine * fine,
        correction_scale_squared: (lambda0_cm / a0_cm).powi(2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfEnergyReport {
    pub n_max: usize,
    pub trace: f64,
    /// `(3/8) q^2 / lambda`.
    pub target: f64,
    /// Exact value of the omitted levels.
    pub tail: f64,
    pub relative_gap: f64,
}

/// `(4 pi lambda^3 / 8 pi) Tr[(N+1) E_j E_j]` over levels `1..=n_max` with
/// `E_j = (q/lambda^3) x_j / (N (N+1) (N+2))` and `q = alpha`.
///
/// On level `n` the trace has `n + 1` states, `sum_j x_j^2 = r^2 - lambda^2 =
/// lambda^2 n (n+2)`, so each level contributes `q^2/(2 lambda) / (n (n+2))`.
pub fn self_energy_trace(n_max: usize, params: &Params) -> Result<SelfEnergyReport> {
    params.validate()?;
    if n_max < 2 {
        return Err(Error::Precondition("self-energy trace needs n_max >= 2".into()));
    }
    let (lam, q) = (params.lambda, params.alpha);
    let mut trace = 0.0;
    // Smallest terms first.
    for n in (1..=n_max).rev() {
        let nf = n as f64;
        let x_sq = lam * lam * nf * (nf + 2.0);
        let field_sq = (q / lam.powi(3)).powi(2) * x_sq / (nf * (nf + 1.0) * (nf + 2.0)).powi(2);
        trace += (nf + 1.0) * (nf + 1.0) * field_sq;
    }
    trace *= 0.5 * lam.powi(3);
    let target = 0.375 * q * q / lam;
    let m = n_max as f64;
    // sum_{n > n_max} 1/(n(n+2)) = (1/(n_max+1) + 1/(n_max+2)) / 2
    let tail = q * q / (2.0 * lam) * 0.5 * (1.0 / (m + 1.0) + 1.0 / (m + 2.0));
    Ok(SelfEnergyReport { n_max, trace, target, tail, relative_gap: (target - trace).abs() / target.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{coordinates, TruncatedFock};
    use num_complex::Complex64;

    #[test]
    fn bundled_constants_give_lambda0() {
        let r = lambda0_estimate(&Constants::bundled().unwrap());
        assert!((r.lambda0_m / 1.06e-15 - 1.0).abs() < 0.01, "{}", r.lambda0_m);
        assert!((r.lambda0_m / r.classical_radius_m - 0.375).abs() < 1e-15);
        assert!((1.0 / r.fine_structure - 137.036).abs() < 1e-2);
        assert!((r.lambda0_over_bohr - 0.375 * r.fine_structure.powi(2)).abs() < 1e-12 * r.lambda0_over_bohr);
    }

    #[test]
    fn constants_parse_errors() {
        assert!(Constants::parse("c = 1").is_err());
        assert!(Constants::parse("e_squared_gaussian 1").is_err());
        let ok = Constants::parse("e_squared_gaussian=1\nm_electron=2 # g\nc=3\nhbar=4\n").unwrap();
        assert_eq!(ok.hbar, 4.0);
    }

    #[test]
    fn telescoping_sum() {
        let p = Params::new(1.0, 1.0);
        let r = self_energy_trace(2000, &p).unwrap();
        assert!(r.relative_gap < 1e-3);
        assert!((r.trace + r.tail - r.target).abs() < 1e-14);
        let scaled = self_energy_trace(2000, &Params::new(0.5, 3.0)).unwrap();
        assert!((scaled.trace / r.trace - 18.0).abs() < 1e-12);
    }

    #[test]
    fn matches_operator_trace() {
        let p = Params::new(0.6, 1.3);
        let n_max = 8;
        let space = TruncatedFock::new(n_max);
        let coords = coordinates(space, &p);
        let lam = p.lambda;
        let mut total = 0.0;
        for x in &coords.x {
            let field = x.left_level_scale(|n| {
                let nf = n as f64;
                let f = if n == 0 { 0.0 } else { p.alpha / lam.powi(3) / (nf * (nf + 1.0) * (nf + 2.0)) };
                Complex64::new(f, 0.0)
            });
            total += field.weighted_column_norm_sq(n_max, |n| (n + 1) as f64);
        }
        total *= 0.5 * lam.powi(3);
        let r = self_energy_trace(n_max, &p).unwrap();
        assert!((total - r.trace).abs() < 1e-13 * r.trace, "{total} vs {}", r.trace);
    }
}
