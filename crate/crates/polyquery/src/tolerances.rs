//! Numeric tolerances used across the crate, collected in one place so that
//! tests and the CLI agree on what "equal" means.

/// Simulated success probability must match the exact ratio this closely.
pub const SUCCESS_MATCH: f64 = 1e-10;

/// Maximum allowed spread of the success probability across secrets.
pub const SECRET_INDEPENDENCE: f64 = 1e-10;

/// A full outcome distribution must sum to one within this.
pub const DISTRIBUTION_SUM: f64 = 1e-9;

/// A complete character sum over a field must vanish within this.
pub const CHARACTER_SUM: f64 = 1e-12;

/// Relative eigenvalue cutoff for the numerical rank of a Gram matrix.
pub const SPECTRAL_CUTOFF: f64 = 1e-8;

/// Relative residual bound for real linear solves.
pub const REAL_SOLVE_RESIDUAL: f64 = 1e-8;

/// Relative agreement required between analytic and finite-difference
/// Jacobians.
pub const JACOBIAN_AGREEMENT: f64 = 1e-5;

/// Step size for central finite differences in Jacobian checks.
pub const JACOBIAN_STEP: f64 = 1e-6;

/// Default relative residual threshold for rank membership.
pub const FIT_TOLERANCE: f64 = 1e-6;
