//! Bound states on both branches (attractive below zero, repulsive above
//! `2/lambda^2`), their wave functions and norms, the mirror symmetry between
//! the branches, and the electron self-energy estimate of `lambda`.

mod levels;
mod norm;
mod selfenergy;
mod wavefunction;

pub use levels::{
    bohr_energy, bound_energies, bound_energies_i, bound_energies_ii, bracketed_root, commutative_limit_coefficient,
    energy_branch_i, energy_branch_ii, omega, termination_roots, Branch, EnergyLevel,
};
pub use norm::{m_factor, psi_norm_sq, radial_norm_sq, NormReport};
pub use selfenergy::{
    lambda0_estimate, self_energy_trace, Constants, Lambda0Report, SelfEnergyReport, CONSTANTS_ENV,
};
pub use wavefunction::{
    bound_wavefunction, bound_wavefunction_exact, mirror_check, mirror_check_float, pythagorean_root, MirrorReport,
};
