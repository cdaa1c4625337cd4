//! Tolerance ladder shared by every stage.

/// Residual accepted from the nonlinear solvers.
pub const CONSTRUCT: f64 = 1e-10;
/// Residual accepted when checking modular data axioms.
pub const VERIFY: f64 = 1e-8;
/// Distance from an integer accepted by Verlinde rounding.
pub const INTEGER: f64 = 1e-6;
/// Largest move allowed when snapping to a root of unity.
pub const SNAP: f64 = 1e-7;
/// Largest root-of-unity order tried by solver-side snapping.
pub const SNAP_MAX_ORDER: i64 = 240;
/// Largest T order accepted by the verifier.
pub const MAX_T_ORDER: i64 = 10_000;
/// Phase distance under which two solutions are identified.
pub const DEDUPE: f64 = 1e-4;
