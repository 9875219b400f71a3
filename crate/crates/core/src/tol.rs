//! Numerical tolerances. All values are relative to the norm of the
//! quantity being tested unless stated otherwise.

/// Self-adjointness: `‖a − a*‖ ≤ HERMITIAN·‖a‖`.
pub const HERMITIAN: f64 = 1e-9;

/// Eigen-decomposition round trip: `‖U·diag(λ)·U* − a‖ ≤ EIGEN·‖a‖`.
pub const EIGEN: f64 = 1e-10;

/// Default positivity / classification tolerance.
pub const DEFAULT: f64 = 1e-9;

/// Jacobi sweeps stop once every off-diagonal entry is below
/// `JACOBI_OFFDIAG·‖a‖_F`.
pub const JACOBI_OFFDIAG: f64 = 1e-13;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of the Gram operator below `PSEUDO_INVERSE·‖G‖` are treated
/// as zero when pseudo-inverting.
pub const PSEUDO_INVERSE: f64 = 1e-10;

/// Operator-norm distance under which two range projections are the same.
pub const PROJECTION_EQUALITY: f64 = 1e-8;

/// Distance of a trace-sum component to the nearest integer.
pub const INTEGER: f64 = 1e-6;
