//! Truncated two-mode Fock realization of the fuzzy space: ladder operators,
//! coordinates, angular momentum, the NC Laplacian and Coulomb Hamiltonian,
//! norms and normal-ordering identities. This is the brute-force oracle for
//! every closed-form result elsewhere in the crate.

mod fock;
mod ladder;
mod normal;
mod operator;
mod wave;

use serde::Serialize;

pub use fock::TruncatedFock;
pub use ladder::{
    angular_generators, angular_momentum_apply, angular_momentum_squared_apply, build_ladder, coordinates,
    normal_number_power_matrix, Coordinates, Ladder, Mode,
};
pub use normal::{
    ball_volume, laplace_potential, laplace_potential_exact, normal_ordered_exp, normal_power_apply,
    normal_rho_power, normal_rho_power_exp, NormalPolynomial,
};
pub use operator::{OperatorMatrix, WaveOperator};
pub use wave::{
    build_psi_jm, double_commutator, eigen_residual, hamiltonian_apply, hamiltonian_apply_with, hs_norm_sq,
    hs_norm_sq_up_to, laplacian_apply, HsNorm,
};

/// Physical inputs in units hbar = m = 1: the NC length `lambda`, the
/// Coulomb strength `alpha` (equal to the charge `q`) and the additive
/// potential constant `q0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    pub lambda: f64,
    pub alpha: f64,
    pub q0: f64,
}

impl Params {
    pub fn new(lambda: f64, alpha: f64) -> Self {
        Params { lambda, alpha, q0: 0.0 }
    }

    pub fn with_q0(self, q0: f64) -> Self {
        Params { q0, ..self }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Params { alpha, ..self }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(crate::Error::Precondition(format!("lambda must be positive, got {}", self.lambda)));
        }
        if !self.alpha.is_finite() || !self.q0.is_finite() {
            return Err(crate::Error::NonFinite("alpha or q0".into()));
        }
        Ok(())
    }

    /// `2 / lambda^2`, the top of the scattering band.
    pub fn critical_energy(&self) -> f64 {
        2.0 / (self.lambda * self.lambda)
    }
}

/// `C(n, k)` exactly, `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// `sum_{k=0}^{n-j} C(k+j, j) C(n-k, j) = C(n+j+1, 2j+1)`, the identity that
/// reduces the trace norm of `Psi_jm` to a single radial sum.
pub fn degeneracy_identity_holds(j: u64, n: u64) -> bool {
    if n < j {
        return true;
    }
    let lhs: Option<u128> = (0..=(n - j)).try_fold(0u128, |acc, k| {
        acc.checked_add(binomial_u128(k + j, j)?.checked_mul(binomial_u128(n - k, j)?)?)
    });
    lhs.is_some() && lhs == binomial_u128(n + j + 1, 2 * j + 1)
}
