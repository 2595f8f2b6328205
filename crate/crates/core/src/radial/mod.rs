//! Closed-form radial solutions of the NC radial equation in every energy
//! regime, the level recurrence used as their oracle, and the commutative
//! reference solution.

mod closed;
mod commutative;
mod context;
mod recurrence;
mod seq;

pub use closed::{
    eta_one_form, eta_product, eta_zero_form, radial_closed_form, radial_closed_form_exact, Sign, NEAR_BOUNDARY,
    NEAR_BOUNDARY_AGREEMENT,
};
pub use commutative::{commutative_bound_state, commutative_radial};
pub use context::{
    classify, classify_exact, exact_eta_data, ode_coefficients, rational_sqrt, EnergyContext, OdeCoefficients, OdeKind,
    Regime, BOUNDARY_TOLERANCE,
};
pub use recurrence::{radial_from_recurrence, radial_from_recurrence_seeded, recurrence_residuals, stencil, Stencil};
pub use seq::{Provenance, RadialSeq};
