//! Command-line front end. [`run`] parses arguments, dispatches, writes the
//! table and returns the process exit code: 0 success, 1 verification or
//! internal failure, 2 usage or configuration error.

pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use crate::error::Error;
use crate::fuzzy::Params;
use crate::radial::{radial_closed_form, radial_closed_form_exact, Sign};
use crate::scattering::{phase_sweep, Edge};
use crate::special::exact::rational_to_f64;
use crate::spectrum::{
    bohr_energy, bound_energies, bound_wavefunction, lambda0_estimate, radial_norm_sq, self_energy_trace, Branch,
    Constants,
};
use table::{col, num, Table};
use verify::{Precision as VerifyPrecision, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "nccoulomb", version, about = "Exact Coulomb problem on the fuzzy space R^3_lambda (hbar = m = 1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Precision::Double)]
    precision: Precision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Precision {
    Double,
    Extended,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound-state energies of the branch allowed by the sign of alpha.
    Spectrum {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = 0)]
        j: u32,
        #[arg(long, default_value_t = 3)]
        count: u32,
    },
    /// Radial sequence R_j(n) at a given energy or for a bound state.
    Wavefn {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = 0)]
        j: u32,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        /// Energy (a fraction like 3/8 is accepted with --precision rational).
        #[arg(long, conflicts_with = "bound", required_unless_present = "bound")]
        energy: Option<String>,
        /// Principal number of a bound state instead of an energy.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
    /// NC and ordinary S-matrix along an energy grid inside (0, 2/lambda^2).
    Smatrix {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = 0)]
        j: u32,
        /// Defaults to 2/lambda^2 / (count + 1).
        #[arg(long)]
        emin: Option<f64>,
        /// Defaults to 2/lambda^2 * count / (count + 1).
        #[arg(long)]
        emax: Option<f64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Spacing::Linear)]
        spacing: Spacing,
    },
    /// Runs the oracle and invariant suites.
    Verify {
        /// `all` or one of the suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, default_value_t = 60)]
        fock_n_max: usize,
    },
    /// Self-energy trace and the lambda_0 estimate.
    Selfenergy {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Charge q (equal to alpha).
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[arg(long, default_value_t = 2000)]
        n_max: usize,
        /// Constants file; overrides the NCCOULOMB_CONSTANTS variable.
        #[arg(long)]
        constants: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Physics {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

/// Failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) | Error::RegimeMismatch(_) | Error::Config(_) | Error::Range { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Decimal or `p/q` literal as an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p.trim().parse().ok()?, q));
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(numer);
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    value = if scale >= 0 { value * factor } else { value / factor };
    Some(if neg { -value } else { value })
}

fn parse_real(name: &str, text: &str) -> Result<f64, Failure> {
    let value = match text.parse::<f64>() {
        Ok(v) => v,
        Err(_) => parse_rational(text).map(|r| rational_to_f64(&r)).ok_or_else(|| usage(format!("--{name}: cannot parse `{text}`")))?,
    };
    if !value.is_finite() {
        return Err(usage(format!("--{name} must be finite")));
    }
    Ok(value)
}

fn physics_params(p: &Physics) -> Result<Params, Failure> {
    let params = Params::new(parse_real("lambda", &p.lambda)?, parse_real("alpha", &p.alpha)?);
    if params.lambda <= 0.0 {
        return Err(usage(format!("--lambda must be positive, got {}", params.lambda)));
    }
    Ok(params)
}

fn echo_params(t: &mut Table, params: &Params) {
    t.set("lambda", num(params.lambda));
    t.set("alpha", num(params.alpha));
}

fn cmd_spectrum(params: &Params, j: u32, count: u32) -> Result<Table, Failure> {
    if params.alpha == 0.0 {
        return Err(usage("spectrum needs alpha != 0: there are no bound states without the Coulomb term"));
    }
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let levels = bound_energies(params, j, count)?;
    let mut t = Table::new(
        "spectrum",
        vec![
            col("branch", ""),
            col("n", ""),
            col("j", ""),
            col("E", "energy"),
            col("kappa", "dimensionless"),
            col("omega", "dimensionless"),
            col("E_commutative", "energy"),
            col("delta_E", "energy"),
        ],
    );
    echo_params(&mut t, params);
    t.set("j", j);
    t.set("count", count);
    t.notes.push("branch I: E_commutative is the Bohr level -alpha^2/(2 n^2)".into());
    t.notes.push("branch II: E_commutative is its mirror image 2/lambda^2 + alpha^2/(2 n^2)".into());
    for lvl in levels {
        let reference = match lvl.branch {
            Branch::I => bohr_energy(params.alpha, lvl.n),
            Branch::II => params.critical_energy() - bohr_energy(params.alpha, lvl.n),
        };
        t.rows.push(vec![
            json!(if lvl.branch == Branch::I { "I" } else { "II" }),
            json!(lvl.n),
            json!(lvl.j),
            num(lvl.energy),
            num(lvl.kappa),
            num(lvl.omega),
            num(reference),
            num(lvl.energy - reference),
        ]);
    }
    Ok(t)
}

fn wavefn_columns(exact: bool) -> Vec<table::Column> {
    let mut cols = vec![col("n", ""), col("r", "length")];
    if exact {
        cols.push(col("R_exact", "unnormalized"));
    }
    cols.extend([col("Re_R", "unnormalized"), col("Im_R", "unnormalized")]);
    cols
}

fn cmd_wavefn(
    physics: &Physics,
    j: u32,
    n_max: usize,
    energy: Option<&str>,
    bound: Option<u32>,
    sign: SignArg,
    precision: Precision,
) -> Result<Table, Failure> {
    let params = physics_params(physics)?;
    let sign = if sign == SignArg::Plus { Sign::Plus } else { Sign::Minus };
    let mut t = Table::new("wavefn", wavefn_columns(precision == Precision::Rational));
    echo_params(&mut t, &params);
    t.set("j", j);
    t.set("n_max", n_max);
    let r_of = |n: usize| num(params.lambda * (n as f64 + 1.0));

    if precision == Precision::Rational {
        let energy = energy.ok_or_else(|| usage("--precision rational needs --energy"))?;
        let parse = |name: &str, s: &str| parse_rational(s).ok_or_else(|| usage(format!("--{name}: `{s}` is not a rational literal")));
        let (e, lam, alpha) = (parse("energy", energy)?, parse("lambda", &physics.lambda)?, parse("alpha", &physics.alpha)?);
        if lam <= BigRational::zero() {
            return Err(usage("--lambda must be positive"));
        }
        let values = radial_closed_form_exact(j, &e, &lam, &alpha, n_max, sign)?;
        t.set("energy", e.to_string());
        t.set("precision", "rational");
        t.notes.push("normalization: R(0) = 1 (closed form as printed, unnormalized)".into());
        for (n, v) in values.iter().enumerate() {
            t.rows.push(vec![json!(n), r_of(n), json!(v.to_string()), num(rational_to_f64(v)), num(0.0)]);
        }
        return Ok(t);
    }

    let radial = match (energy, bound) {
        (Some(e), _) => {
            let e = parse_real("energy", e)?;
            t.set("energy", num(e));
            t.notes.push("normalization: closed form as printed (R(0) = 1 for generic energies), unnormalized".into());
            radial_closed_form(j, e, &params, n_max, sign)?
        }
        (None, Some(n)) => {
            if params.alpha == 0.0 {
                return Err(usage("bound states need alpha != 0"));
            }
            if n <= j {
                return Err(usage(format!("--bound {n} must exceed j = {j}")));
            }
            let level = bound_energies(&params, j, n - j)?.pop().expect("n > j");
            let radial = bound_wavefunction(&level, n_max)?;
            let norm = radial_norm_sq(&radial, &params);
            t.set("bound_n", n);
            t.set("energy", num(level.energy));
            t.set("omega", num(level.omega));
            t.notes.push("normalization: R(0) = 1, unnormalized; norm_sq is the weighted trace norm of the truncated sequence".into());
            t.residuals = Some(json!({ "norm_sq": num(norm.value), "norm_tail_bound": num(norm.tail_bound), "norm_converged": norm.converged }));
            radial
        }
        (None, None) => return Err(usage("give --energy or --bound")),
    };
    t.set("provenance", serde_json::to_value(radial.provenance).expect("enum serializes"));
    for (n, v) in radial.values.iter().enumerate() {
        t.rows.push(vec![json!(n), r_of(n), num(v.re), num(v.im)]);
    }
    Ok(t)
}

fn energy_grid(emin: f64, emax: f64, count: usize, spacing: Spacing) -> Result<Vec<f64>, Failure> {
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    if !(emin.is_finite() && emax.is_finite()) || emin > emax {
        return Err(usage(format!("bad energy range [{emin}, {emax}]")));
    }
    if count == 1 {
        return Ok(vec![emin]);
    }
    let step = |i: usize| i as f64 / (count - 1) as f64;
    Ok(match spacing {
        Spacing::Linear => (0..count).map(|i| emin + (emax - emin) * step(i)).collect(),
        Spacing::Log => {
            if emin <= 0.0 {
                return Err(usage("log spacing needs emin > 0"));
            }
            (0..count).map(|i| (emin.ln() + (emax.ln() - emin.ln()) * step(i)).exp()).collect()
        }
    })
}

fn cmd_smatrix(
    params: &Params,
    j: u32,
    emin: Option<f64>,
    emax: Option<f64>,
    count: usize,
    spacing: Spacing,
) -> Result<Table, Failure> {
    let crit = params.critical_energy();
    let edge_margin = crit / (count.max(1) as f64 + 1.0);
    let (lo, hi) = (emin.unwrap_or(edge_margin), emax.unwrap_or(crit - edge_margin));
    let grid = energy_grid(lo, hi, count, spacing)?;
    if grid.iter().any(|&e| !(e > 0.0 && e < crit)) {
        return Err(usage(format!("energies must lie inside (0, 2/lambda^2) = (0, {crit})")));
    }
    let sweep = phase_sweep(j, &grid, params)?;
    let mut t = Table::new(
        "smatrix",
        vec![
            col("E", "energy"),
            col("p", "1/length"),
            col("edge", ""),
            col("Re_S", ""),
            col("Im_S", ""),
            col("abs_S", ""),
            col("delta_j", "rad"),
            col("delta_j_QM", "rad"),
        ],
    );
    echo_params(&mut t, params);
    t.set("j", j);
    t.set("emin", num(lo));
    t.set("emax", num(hi));
    t.set("count", count);
    t.set("spacing", if spacing == Spacing::Linear { "linear" } else { "log" });
    t.notes.push("phases unwrapped by continuity along the grid; delta_j_QM uses k = sqrt(2E)".into());
    let mut worst: f64 = 0.0;
    for (i, &e) in grid.iter().enumerate() {
        let (m, v) = (sweep.momenta[i], sweep.values[i]);
        worst = worst.max((v.s.norm() - 1.0).abs());
        let edge = match m.edge {
            Edge::Upper => "upper",
            Edge::Lower => "lower",
            Edge::OffCut => "off-cut",
        };
        t.rows.push(vec![
            num(e),
            num(m.p.re),
            json!(edge),
            num(v.s.re),
            num(v.s.im),
            num(v.s.norm()),
            num(sweep.delta[i]),
            num(sweep.delta_qm[i]),
        ]);
    }
    t.residuals = Some(json!({ "max_unitarity_defect": num(worst), "flagged_phase_jumps": sweep.flagged_jumps }));
    Ok(t)
}

fn cmd_selfenergy(lambda: f64, q: f64, n_max: usize, constants: Option<&PathBuf>) -> Result<Table, Failure> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(usage(format!("--lambda must be positive, got {lambda}")));
    }
    let constants = match constants {
        Some(path) => Constants::from_file(path)?,
        None => Constants::load()?,
    };
    let trace = self_energy_trace(n_max, &Params::new(lambda, q))?;
    let scale = lambda0_estimate(&constants);
    let mut t = Table::new("selfenergy", vec![col("quantity", ""), col("value", ""), col("unit", "")]);
    t.set("lambda", num(lambda));
    t.set("q", num(q));
    t.set("n_max", n_max);
    t.notes.push("trace in hbar = m = 1 units; length scales in SI metres from CGS-Gaussian constants".into());
    let rows: [(&str, f64, &str); 11] = [
        ("trace", trace.trace, "energy"),
        ("target_3q2_over_8lambda", trace.target, "energy"),
        ("omitted_levels", trace.tail, "energy"),
        ("relative_gap", trace.relative_gap, "1"),
        ("classical_radius", scale.classical_radius_m, "m"),
        ("lambda0", scale.lambda0_m, "m"),
        ("fine_structure", scale.fine_structure, "1"),
        ("bohr_radius", scale.bohr_radius_m, "m"),
        ("lambda0_over_bohr", scale.lambda0_over_bohr, "1"),
        ("correction_scale_9_64_alpha2", scale.correction_scale, "1"),
        ("correction_scale_squared", scale.correction_scale_squared, "1"),
    ];
    for (name, value, unit) in rows {
        t.rows.push(vec![json!(name), num(value), json!(unit)]);
    }
    Ok(t)
}

fn cmd_verify(suite: &str, n_max: usize, fock_n_max: usize, precision: Precision, err: &mut dyn Write) -> Result<(Table, bool), Failure> {
    let precision = match precision {
        Precision::Double => VerifyPrecision::Double,
        Precision::Rational => VerifyPrecision::Rational,
        Precision::Extended => unreachable!("rejected before dispatch"),
    };
    let all = verify::suite_names();
    let names: Vec<&str> = if suite == "all" {
        all.iter().copied().filter(|n| precision == VerifyPrecision::Double || verify::exact_capable(n)).collect()
    } else if let Some(n) = all.iter().find(|n| **n == suite) {
        if precision == VerifyPrecision::Rational && !verify::exact_capable(n) {
            return Err(usage(format!("suite `{suite}` has no exact-arithmetic path")));
        }
        vec![*n]
    } else {
        return Err(usage(format!("unknown suite `{suite}`; expected all or one of {}", all.join(", "))));
    };
    if n_max < 40 {
        return Err(usage("--n-max must be at least 40 (the checks sample levels up to 40)"));
    }
    if fock_n_max < 8 {
        return Err(usage("--fock-n-max must be at least 8"));
    }
    let start = Instant::now();
    let results = verify::run_suites(&names, &VerifyConfig { n_max, fock_n_max, precision });
    let elapsed = start.elapsed();
    let mut t = Table::new(
        "verify",
        vec![
            col("suite", ""),
            col("check", ""),
            col("criterion", ""),
            col("passed", ""),
            col("residual", ""),
            col("tolerance", ""),
            col("detail", ""),
        ],
    );
    t.set("suite", suite);
    t.set("n_max", n_max);
    t.set("fock_n_max", fock_n_max);
    t.set("precision", if precision == VerifyPrecision::Rational { "rational" } else { "double" });
    let failed: Vec<&verify::CheckResult> = results.iter().filter(|r| !r.passed).collect();
    for r in &results {
        t.rows.push(vec![
            json!(r.suite),
            json!(r.name),
            r.criterion.map_or(json!(""), |c| json!(c)),
            json!(r.passed),
            num(r.residual),
            num(r.tolerance),
            json!(r.detail),
        ]);
    }
    t.residuals = Some(json!({ "checks": results.len(), "failed": failed.len() }));
    // Wall time goes to stderr so that the table stays byte-identical across runs.
    let _ = writeln!(err, "verify: {} checks, {} failed, wall time {:.2} s", results.len(), failed.len(), elapsed.as_secs_f64());
    for f in &failed {
        let _ = writeln!(err, "FAILED {}::{} (residual {:e}, tolerance {:e}) {}", f.suite, f.name, f.residual, f.tolerance, f.detail);
    }
    Ok((t, failed.is_empty()))
}

fn dispatch(cli: &Cli, err: &mut dyn Write) -> Result<(Table, bool), Failure> {
    if cli.precision == Precision::Extended {
        return Err(usage("extended precision is not implemented; use double or rational"));
    }
    let double_only = |name: &str| {
        if cli.precision == Precision::Rational {
            Err(usage(format!("{name} has no exact-arithmetic path; use --precision double")))
        } else {
            Ok(())
        }
    };
    let ok = |t: Table| Ok((t, true));
    match &cli.command {
        Command::Spectrum { physics, j, count } => {
            double_only("spectrum")?;
            ok(cmd_spectrum(&physics_params(physics)?, *j, *count)?)
        }
        Command::Wavefn { physics, j, n_max, energy, bound, sign } => {
            ok(cmd_wavefn(physics, *j, *n_max, energy.as_deref(), *bound, *sign, cli.precision)?)
        }
        Command::Smatrix { physics, j, emin, emax, count, spacing } => {
            double_only("smatrix")?;
            ok(cmd_smatrix(&physics_params(physics)?, *j, *emin, *emax, *count, *spacing)?)
        }
        Command::Verify { suite, n_max, fock_n_max } => cmd_verify(suite, *n_max, *fock_n_max, cli.precision, err),
        Command::Selfenergy { lambda, q, n_max, constants } => {
            double_only("selfenergy")?;
            ok(cmd_selfenergy(*lambda, *q, *n_max, constants.as_ref())?)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (table, passed) = match dispatch(&cli, err) {
        Ok(v) => v,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let text = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 2;
    }
    if passed {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_traits::One;

    #[test]
    fn rational_literals() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(parse_rational("3/8"), Some(r(3, 8)));
        assert_eq!(parse_rational("-0.25"), Some(r(-1, 4)));
        assert_eq!(parse_rational("1.5e2"), Some(r(150, 1)));
        assert_eq!(parse_rational("2e-3"), Some(r(1, 500)));
        assert_eq!(parse_rational("7"), Some(BigRational::one() * r(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn grids() {
        assert_eq!(energy_grid(1.0, 3.0, 3, Spacing::Linear).ok(), Some(vec![1.0, 2.0, 3.0]));
        let g = energy_grid(1.0, 100.0, 3, Spacing::Log).ok().unwrap();
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert!(energy_grid(0.0, 1.0, 3, Spacing::Log).is_err());
        assert!(energy_grid(1.0, 2.0, 0, Spacing::Linear).is_err());
        assert_eq!(energy_grid(0.5, 0.5, 1, Spacing::Linear).ok(), Some(vec![0.5]));
    }

    #[test]
    fn complex_values_are_not_needed_in_tables() {
        // Rows carry real and imaginary parts separately.
        let z = Complex64::new(1.0, -2.0);
        assert_eq!((num(z.re), num(z.im)), (json!(1.0), json!(-2.0)));
    }
}
