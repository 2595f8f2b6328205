use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::fock::TruncatedFock;
use super::operator::OperatorMatrix;
use super::Params;
use crate::radial::{Provenance, RadialSeq};

/// Eigenvalue of the normal power `:N^k:` on level `n`.
///
/// For `k >= 0` this is `n!/(n-k)!` (zero when `k > n`); for `k < 0` it is
/// `n!/(n+|k|)!`, the scaling of `:rho^k:` apart from `lambda^k`.
pub fn normal_power_apply(k: i64, n: u64) -> f64 {
    if k >= 0 {
        let k = k as u64;
        if k > n {
            return 0.0;
        }
        ((n - k + 1)..=n).map(|x| x as f64).product()
    } else {
        let k = k.unsigned_abs();
        1.0 / ((n + 1)..=(n + k)).map(|x| x as f64).product::<f64>()
    }
}

/// `:rho^k:` on level `n`, i.e. `lambda^k` times [`normal_power_apply`].
pub fn normal_rho_power(k: i64, n: u64, lambda: f64) -> f64 {
    lambda.powi(k as i32) * normal_power_apply(k, n)
}

/// `:e^{beta rho}: = (1 + lambda beta)^N` as a level-diagonal operator.
pub fn normal_ordered_exp(beta: Complex64, space: TruncatedFock, params: &Params) -> OperatorMatrix {
    let base = 1.0 + params.lambda * beta;
    OperatorMatrix::level_diagonal(space, |n| base.powu(n as u32))
}

/// `:rho^k e^{beta rho}:` on level `n` for either sign of `k`:
/// `lambda^k N!/(N-k)! (1 + lambda beta)^(N-k)`.
pub fn normal_rho_power_exp(k: i64, beta: Complex64, n: u64, lambda: f64) -> Complex64 {
    let base = 1.0 + lambda * beta;
    let shift = n as i64 - k;
    if k >= 0 && shift < 0 {
        return Complex64::new(0.0, 0.0);
    }
    base.powi(shift as i32) * normal_rho_power(k, n, lambda)
}

/// Volume `4 pi lambda^3 sum_{k<=n} (k+1)^2` enclosed by level `n`.
pub fn ball_volume(n: u64, params: &Params) -> f64 {
    let count: f64 = (0..=n).map(|k| ((k + 1) * (k + 1)) as f64).sum();
    4.0 * std::f64::consts::PI * params.lambda.powi(3) * count
}

/// Coulomb potential from the Laplace recurrence
/// `(N+2)V(N+1) - (N+1)V(N) = (N+1)V(N) - N V(N-1)`, `V(0) = q0 - q/lambda`.
pub fn laplace_potential(space: TruncatedFock, params: &Params) -> RadialSeq {
    let q = params.alpha;
    let n_max = space.n_max();
    let mut v = Vec::with_capacity(n_max + 1);
    v.push(params.q0 - q / params.lambda);
    if n_max >= 1 {
        // From 2 V(1) - V(0) = q0.
        v.push(0.5 * (params.q0 + v[0]));
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 * (nf + 1.0) * v[n] - nf * v[n - 1]) / (nf + 2.0);
        v.push(next);
    }
    let mut seq = RadialSeq::from_real(0, v);
    seq.provenance = Provenance::Potential;
    seq
}

/// Exact-rational run of the same recurrence.
pub fn laplace_potential_exact(n_max: usize, q: &BigRational, lambda: &BigRational, q0: &BigRational) -> Vec<BigRational> {
    let int = |x: usize| BigRational::from_integer(BigInt::from(x));
    let mut v = Vec::with_capacity(n_max + 1);
    v.push(q0 - q / lambda);
    if n_max >= 1 {
        v.push((q0 + &v[0]) / int(2));
    }
    for n in 1..n_max {
        let next = (int(2 * (n + 1)) * &v[n] - int(n) * &v[n - 1]) / int(n + 2);
        v.push(next);
    }
    v
}

/// Normal-ordered polynomial `sum_k c_k :rho^k:`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalPolynomial {
    pub coeffs: Vec<Complex64>,
}

impl NormalPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        NormalPolynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn level_value(&self, n: u64, lambda: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * normal_rho_power(k as i64, n, lambda))
            .sum()
    }

    /// Formal derivative in `rho`, acting on normal powers like on ordinary ones.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// `:rho R:`
    pub fn times_rho(&self) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or_default()
                        + other.coeffs.get(k).copied().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn to_radial(&self, j: u32, n_max: usize, lambda: f64) -> RadialSeq {
        RadialSeq::new(
            j,
            (0..=n_max as u64).map(|n| self.level_value(n, lambda)).collect(),
            Provenance::Supplied,
        )
    }

    /// Radial factor of `[a^+_a, [a_a, Psi_jm[R]]]`: `:-lambda rho R'' - 2(j+1) lambda R':`.
    pub fn double_commutator_image(&self, j: u32, lambda: f64) -> Self {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        d2.times_rho()
            .scale(Complex64::new(-lambda, 0.0))
            .add(&d1.scale(Complex64::new(-2.0 * (j as f64 + 1.0) * lambda, 0.0)))
    }

    /// Radial factor of `r Psi_jm[R]`: `:(rho + lambda j + lambda) R + lambda rho R':`.
    pub fn radius_image(&self, j: u32, lambda: f64) -> Self {
        self.times_rho()
            .add(&self.scale(Complex64::new(lambda * (j as f64 + 1.0), 0.0)))
            .add(&self.derivative().times_rho().scale(Complex64::new(lambda, 0.0)))
    }
}
