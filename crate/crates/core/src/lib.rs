//! Constrained non-smooth optimization by adaptive Mirror Descent.
//!
//! The crate solves problems of the form
//!
//! ```text
//! minimize f(x)   subject to  g(x) ≤ 0,  x ∈ Q
//! ```
//!
//! where `f` is convex or quasi-convex (possibly non-smooth), `g` is a
//! Lipschitz functional constraint, and `Q` is a simple closed convex set
//! handled through a proximal (mirror) step.
//!
//! Three solver loops are provided, differing in their step-size strategy
//! and stopping rule:
//!
//! - [`solvers::solve_prior_adaptive`] — adaptive stopping criterion, with
//!   non-productive steps `h = ε/‖∇g‖²`;
//! - [`solvers::solve_new_adaptive`] — fixed iteration budget `⌈2Θ₀²/ε²⌉`,
//!   with normalized steps `h = ε/‖·‖` on both branches (much faster when
//!   constraint subgradients are large);
//! - [`solvers::solve_quasiconvex`] — the normalized-step loop driven by
//!   quasi-convex direction oracles for both objective and constraint.
//!
//! On top of these, [`restart::restart_solve`] accelerates strongly
//! (quasi-)convex problems by repeatedly halving the distance bound, and
//! [`bench`] reproduces the iteration-count tables for the bundled
//! geometric benchmark problems (see the `mdbench` binary).
//!
//! Every run can record a full per-iteration trace; [`solvers::certify_run`]
//! re-checks the inequalities that drive the convergence proofs against a
//! known solution, so a green run is backed by machine-verified certificates
//! rather than trust in the implementation.

pub mod bench;
pub mod oracles;
pub mod problems;
pub mod prox;
pub mod restart;
pub mod rng;
pub mod solvers;
pub mod tolerances;
pub mod vecmath;

pub use oracles::{ConstrainedProblem, ConvexClass, KnownSolution, Provenance, Smoothness};
pub use prox::{FeasibleSet, ProxError, ProxSetup};
pub use solvers::{
    certify_run, solve_new_adaptive, solve_prior_adaptive, solve_quasiconvex, Algorithm,
    Certificate, IterationRecord, RunReport, SolverConfig, SolverError, StepKind, StopReason,
};
