//! Partial-wave scattering: the conformal momentum map, NC and ordinary
//! S-matrices with phase tracking, and the large-`r` in/out decomposition of
//! the radial solution.

mod decomposition;
mod momentum;
mod smatrix;

pub use decomposition::{
    asymptotic_decomposition, bernoulli_correction, prefactor_via_lngamma, radial_with_momentum,
    scattering_mirror_check, Decomposition, PrefactorReport, ScatteringMirrorReport,
};
pub use momentum::{e_of_p, p_of_e, Edge, Momentum};
pub use smatrix::{
    phase_sweep, pole_energies, smatrix_nc, smatrix_qm, unwrap_phases, PhaseSweep, SMatrixValue, POLE_TOLERANCE,
};
