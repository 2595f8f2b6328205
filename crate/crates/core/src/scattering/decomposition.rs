use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::momentum::p_of_e;
use crate::error::{Error, Result};
use crate::fuzzy::Params;
use crate::radial::{radial_closed_form, Provenance, RadialSeq, Sign};
use crate::special::{gauss_2f1_terminating_accurate, gauss_2f1_with_terms, log_gamma, BernoulliTable};

/// `R(N) = w^N F(j+1 - i alpha/p, -N; 2j+2; 2 i lambda p / w)` with
/// `w = (p + i lambda E)/(p - i lambda E)`, for an explicitly chosen `p`.
pub fn radial_with_momentum(j: u32, energy: f64, p: Complex64, params: &Params, n_max: usize) -> Result<RadialSeq> {
    params.validate()?;
    let lam = params.lambda;
    let den = p - Complex64::i() * lam * energy;
    if den.norm() == 0.0 || p.norm() == 0.0 {
        return Err(Error::Precondition(format!("degenerate momentum p = {p} at E = {energy}")));
    }
    let w = (p + Complex64::i() * lam * energy) / den;
    let a = j as f64 + 1.0 - Complex64::i() * params.alpha / p;
    let z = 2.0 * Complex64::i() * lam * p / w;
    let mut power = Complex64::new(1.0, 0.0);
    let values = (0..=n_max as u64)
        .map(|n| {
            let v = power * gauss_2f1_terminating_accurate(a, n, 2 * j as u64 + 2, z);
            power *= w;
            v
        })
        .collect();
    Ok(RadialSeq::new(j, values, Provenance::Supplied))
}

/// The in/out split of the scattering solution at one Fock level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    pub level: usize,
    pub p: f64,
    pub term_in: Complex64,
    pub term_out: Complex64,
    /// The closed-form value the two terms must add up to.
    pub direct: Complex64,
    pub closure: f64,
    /// Level-independent amplitudes multiplying
    /// `(2pr)^{-j-1} e^{-+ i (alpha/p) ln 2pr} w^{-+(r/lambda + j)} w^{-i alpha/p}`,
    /// the Gamma-ratio factor and the connection-formula series.
    pub amp_in: Complex64,
    pub amp_out: Complex64,
    /// `(-1)^{j+1} amp_out / amp_in`; equals the S-matrix.
    pub smatrix: Complex64,
    pub series_terms: (usize, usize),
}

fn connection_series(a: Complex64, b: Complex64, c: Complex64, x: Complex64, which: &str) -> Result<(Complex64, usize)> {
    gauss_2f1_with_terms(a, b, c, x).map_err(|e| match e {
        Error::Divergence { terms, context } => Error::Divergence { terms, context: format!("{which} series: {context}") },
        other => other,
    })
}

/// Splits `R_j(N)` on the scattering band into incoming and outgoing parts by
/// the `z -> 1/z` connection formula of the terminating `F(a, -N; c; z)`.
///
/// With `z = 2 i lambda p / w`, `1 - z = w^{-2}` and `sigma = sign(Im z)`:
///
/// ```text
/// term_in  = w^N e^{i pi sigma (c-a)} G(c) G(N+1) / (G(a) G(N+1+c-a))
///            z^{a-c} (1-z)^{c-a+N} F(c-a, 1-a; N+1+c-a; 1 - 1/z)
/// term_out = w^N e^{-i pi sigma a} G(c) G(N+1) / (G(c-a) G(N+1+a))
///            (-z)^{-a} F(a, a+1-c; N+1+a; 1/z)
/// ```
///
/// Both series are summed only where they converge (`|1/z| = 1/(2 lambda p)`);
/// otherwise a divergence error is returned.
pub fn asymptotic_decomposition(j: u32, energy: f64, params: &Params, level: usize) -> Result<Decomposition> {
    params.validate()?;
    let lam = params.lambda;
    if !(energy > 0.0 && energy < params.critical_energy()) {
        return Err(Error::RegimeMismatch(format!("decomposition needs 0 < E < 2/lambda^2, got {energy}")));
    }
    let p = p_of_e(Complex64::new(energy, 0.0), params).p.re;
    let i = Complex64::i();
    let lg = log_gamma;
    let nf = level as f64;
    let jf = j as f64;
    let w = Complex64::new(1.0 - lam * lam * energy, lam * p);
    let a = Complex64::new(jf + 1.0, -params.alpha / p);
    let b = Complex64::new(-nf, 0.0);
    let c = Complex64::new(2.0 * jf + 2.0, 0.0);
    let z = 2.0 * i * lam * p / w;
    let sigma = z.im.signum();
    let ln_w = w.ln();

    let (f_in, n_in) = connection_series(c - a, 1.0 - a, c + 1.0 - a - b, 1.0 - 1.0 / z, "incoming")?;
    let (f_out, n_out) = connection_series(a, a + 1.0 - c, a + 1.0 - b, 1.0 / z, "outgoing")?;
    let ln_k_in = i * PI * sigma * (c - a) + lg(c)? + lg(1.0 - b)? - lg(a)? - lg(c + 1.0 - a - b)?;
    let ln_k_out = -i * PI * sigma * a + lg(c)? + lg(1.0 - b)? - lg(c - a)? - lg(a + 1.0 - b)?;
    let pre_in = (ln_k_in + nf * ln_w + (a - c) * z.ln() + (c - a - b) * (1.0 - z).ln()).exp();
    let pre_out = (ln_k_out + nf * ln_w - a * (-z).ln()).exp();
    let term_in = pre_in * f_in;
    let term_out = pre_out * f_out;

    let direct = radial_closed_form(j, energy, params, level, Sign::Plus)?.get(level);
    let closure = (term_in + term_out - direct).norm() / direct.norm();

    // Strip the r-dependence: wave factors and Gamma(N+1)/Gamma(N+1+h) (r/lambda)^h.
    let r = lam * (nf + 1.0);
    let ln_2pr = (2.0 * p * r).ln();
    let eta = params.alpha / p;
    let wave_in = (-(jf + 1.0) * ln_2pr - i * eta * ln_2pr - (r / lam + jf + i * eta) * ln_w).exp();
    let wave_out = (-(jf + 1.0) * ln_2pr + i * eta * ln_2pr + (r / lam + jf - i * eta) * ln_w).exp();
    let ratio_in = (lg(1.0 - b)? - lg(c + 1.0 - a - b)? + (c - a) * (r / lam).ln()).exp();
    let ratio_out = (lg(1.0 - b)? - lg(a + 1.0 - b)? + a * (r / lam).ln()).exp();
    let amp_in = pre_in / (wave_in * ratio_in);
    let amp_out = pre_out / (wave_out * ratio_out);
    let kinematic = if j.is_multiple_of(2) { -1.0 } else { 1.0 };

    Ok(Decomposition {
        level,
        p,
        term_in,
        term_out,
        direct,
        closure,
        amp_in,
        amp_out,
        smatrix: kinematic * amp_out / amp_in,
        series_terms: (n_in, n_out),
    })
}

/// `sum_{n=1}^{terms} (-1)^{n+1} (B_{n+1}(h) - B_{n+1}(0)) / (n (n+1)) x^n`
/// and the size of its last term.
pub fn bernoulli_correction(h: Complex64, x: f64, terms: usize) -> Result<(Complex64, f64)> {
    let table = BernoulliTable::shared();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = 0.0;
    let mut power = 1.0;
    for n in 1..=terms {
        power *= x;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let diff = table.eval(n + 1, h)? - table.eval(n + 1, Complex64::new(0.0, 0.0))?;
        let t = sign * diff * power / (n * (n + 1)) as f64;
        sum += t;
        last = t.norm();
    }
    Ok((sum, last))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrefactorReport {
    /// `(r/lambda)^{-h} exp[-sum ...]` with `h = j + 1 + i alpha/p`.
    pub bernoulli: Complex64,
    /// `Gamma(N+1) / Gamma(N+1+h)` from `ln Gamma`.
    pub exact: Complex64,
    pub relative_deviation: f64,
    /// Size of the last retained correction term.
    pub truncation_estimate: f64,
    pub terms: usize,
}

/// The incoming-wave factor `Gamma(N+1)/Gamma(N+1+j+1+i alpha/p)` at
/// `r = lambda (N+1)` in its exponential Bernoulli form, next to the exact
/// Gamma ratio. `terms = 0` leaves the pure power `(r/lambda)^{-h}`.
pub fn prefactor_via_lngamma(j: u32, energy: f64, params: &Params, level: usize, terms: usize) -> Result<PrefactorReport> {
    params.validate()?;
    if terms + 1 > BernoulliTable::shared().max_degree() {
        return Err(Error::Range { index: terms + 1, max: BernoulliTable::shared().max_degree() });
    }
    let p = p_of_e(Complex64::new(energy, 0.0), params).p;
    if p.im != 0.0 || p.re <= 0.0 {
        return Err(Error::RegimeMismatch(format!("prefactor needs a real momentum, got {p}")));
    }
    let h = Complex64::new(j as f64 + 1.0, params.alpha / p.re);
    let z = level as f64 + 1.0;
    let (corr, last) = bernoulli_correction(h, 1.0 / z, terms)?;
    let bernoulli = (-h * z.ln() - corr).exp();
    let exact = (log_gamma(Complex64::new(z, 0.0))? - log_gamma(z + h)?).exp();
    Ok(PrefactorReport {
        bernoulli,
        exact,
        relative_deviation: (bernoulli - exact).norm() / exact.norm(),
        truncation_estimate: last * bernoulli.norm(),
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringMirrorReport {
    pub j: u32,
    pub eps: f64,
    /// Largest `|R^II(N) - (-1)^N R^I(N)| / max(|R^I(N)|, |R^II(N)|)`.
    pub max_deviation: f64,
    /// `|w^I + w^II|` for the prefactors `w = (p + i lambda E)/(p - i lambda E)`.
    pub prefactor_deviation: f64,
}

/// Builds `R` at `E^I = 1/lambda^2 - eps` with `+p, alpha` and at
/// `E^II = 1/lambda^2 + eps` with `-p, -alpha`, and compares them up to `(-1)^N`.
pub fn scattering_mirror_check(j: u32, eps: f64, params: &Params, n_max: usize) -> Result<ScatteringMirrorReport> {
    params.validate()?;
    let mid = 1.0 / (params.lambda * params.lambda);
    if !(eps > 0.0 && eps < mid) {
        return Err(Error::Precondition(format!("eps must lie in (0, 1/lambda^2), got {eps}")));
    }
    let (e1, e2) = (mid - eps, mid + eps);
    let p = p_of_e(Complex64::new(e1, 0.0), params).p;
    let r1 = radial_with_momentum(j, e1, p, params, n_max)?;
    let r2 = radial_with_momentum(j, e2, -p, &params.with_alpha(-params.alpha), n_max)?;
    let max_deviation = r1
        .values
        .iter()
        .zip(&r2.values)
        .enumerate()
        .map(|(n, (x, y))| {
            let signed = if n % 2 == 0 { *x } else { -x };
            (y - signed).norm() / x.norm().max(y.norm()).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    let i_lam = Complex64::i() * params.lambda;
    let w1 = (p + i_lam * e1) / (p - i_lam * e1);
    let w2 = (-p + i_lam * e2) / (-p - i_lam * e2);
    Ok(ScatteringMirrorReport { j, eps, max_deviation, prefactor_deviation: (w1 + w2).norm() })
}
