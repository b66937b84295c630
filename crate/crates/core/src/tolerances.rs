//! Pinned numerical tolerances used across solvers, certificates and tests.
//!
//! Keeping them in one place makes the acceptance thresholds auditable and
//! prevents ad-hoc magic numbers from drifting apart between a check and the
//! test that relies on it.

/// Membership test slack for feasible sets.
pub const FEASIBILITY: f64 = 1e-12;

/// Slack allowed when verifying the per-iteration certificate inequalities
/// (the three-point inequality and the strict non-productive decrease).
pub const CERTIFICATE: f64 = 1e-9;

/// First-order optimality slack for the mirror step:
/// `⟨p + ∇d(z) − ∇d(x), u − z⟩ ≥ −OPTIMALITY` for feasible `u`.
pub const OPTIMALITY: f64 = 1e-9;

/// Coordinate-wise agreement between the euclidean mirror step and the
/// direct projection of `x − p`.
pub const PROJECTION_EQUIV: f64 = 1e-10;

/// Agreement between the entropy mirror step and the normalized
/// multiplicative-weights closed form.
pub const ENTROPY_CLOSED_FORM: f64 = 1e-10;

/// Agreement between the entropy mirror step and a numeric inner minimizer.
pub const ENTROPY_NUMERIC: f64 = 1e-8;

/// Slack for sampled subgradient and Lipschitz checks.
pub const SUBGRADIENT: f64 = 1e-7;

/// Slack for the sampled 1-strong-convexity and Bregman lower-bound checks.
pub const STRONG_CONVEXITY: f64 = 1e-9;

/// Round-trip accuracy of `tau(phi_hat(ε)) = ε`.
pub const TAU_ROUNDTRIP: f64 = 1e-10;

/// Coordinates of entropy iterates are floored at this value to keep the
/// gradient of the entropy d.g.f. finite.
pub const ENTROPY_FLOOR: f64 = 1e-300;
