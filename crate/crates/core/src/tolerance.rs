//! Numerical tolerances shared across modules.

/// Absolute slack for "F = 0" frontier tests and closed-form boundary equalities.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Smallest admissible eigenvalue of `B` is `-PSD_TOL`.
pub const PSD_TOL: f64 = 1e-10;

/// Slack in midpoint-convexity checks of `F`.
pub const CONV_TOL: f64 = 1e-12;

/// Slack for componentwise comparisons between grid points.
pub const DOM_EPS: f64 = 1e-9;

/// Symmetry check for `B` (absolute, entrywise).
pub const SYMMETRY_TOL: f64 = 1e-12;
