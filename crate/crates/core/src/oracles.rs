//! Problem abstraction: value/subgradient oracles, smoothness metadata,
//! quasi-convex direction oracles, and diagnostic quantities.
//!
//! A [`ConstrainedProblem`] bundles the objective `f`, the functional
//! constraint `g`, their (sub)gradient oracles, the feasible set `Q`, and
//! whatever smoothness constants are known (`M_f`, `M_g`, `L`, Hölder data,
//! `μ`). Oracles are plain closures and must be pure: the batch runner may
//! evaluate a shared problem from several threads.
//!
//! For quasi-convex functionals the step direction does not have to be a
//! subgradient; any nonzero element of
//! `D̂f(x) = {p : ⟨p, x−y⟩ ≥ 0 ∀y with f(y) ≤ f(x)}` works (level-set
//! normals, Clarke subgradients). The default direction oracle is the
//! problem's subgradient oracle; [`ConstrainedProblem::with_direction_f`]
//! overrides it.

use crate::prox::{FeasibleSet, ProxSetup};
use crate::rng::SplitMix64;
use crate::tolerances;
use crate::vecmath::{dot, sub};

pub type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
pub type GradFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// Convexity class of a functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexClass {
    Convex,
    QuasiConvex,
    StronglyConvex,
    StronglyQuasiConvex,
}

impl ConvexClass {
    pub fn is_quasi(self) -> bool {
        matches!(
            self,
            ConvexClass::QuasiConvex | ConvexClass::StronglyQuasiConvex
        )
    }
}

/// Hölder continuity data: `|f(x) − f(y)| ≤ M_ν ‖x − y‖^ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderData {
    pub nu: f64,
    pub m_nu: f64,
}

/// Optional smoothness constants attached to a problem.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Smoothness {
    /// Lipschitz constant of `f`.
    pub m_f: Option<f64>,
    /// Lipschitz constant of `g`.
    pub m_g: Option<f64>,
    /// Lipschitz constant of `∇f`.
    pub grad_lipschitz: Option<f64>,
    /// Hölder data `(ν, M_ν)` of `f`.
    pub holder: Option<HolderData>,
    /// Strong convexity parameter shared by `f` and `g`.
    pub mu: Option<f64>,
}

/// How a known solution was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Analytic,
    BruteForce {
        resolution: f64,
        /// Certified bound on `f(x̂*) − f*`.
        certified_gap: f64,
    },
}

/// A reference solution used by certificates and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownSolution {
    pub x_star: Vec<f64>,
    pub f_star: f64,
    pub provenance: Provenance,
}

/// A constrained minimization problem `min f(x) s.t. g(x) ≤ 0, x ∈ Q`.
pub struct ConstrainedProblem {
    dim: usize,
    objective: Box<ValueFn>,
    objective_subgrad: Box<GradFn>,
    constraint: Box<ValueFn>,
    constraint_subgrad: Box<GradFn>,
    direction_f: Option<Box<GradFn>>,
    direction_g: Option<Box<GradFn>>,
    feasible: FeasibleSet,
    smoothness: Smoothness,
    objective_class: ConvexClass,
    constraint_class: ConvexClass,
}

impl std::fmt::Debug for ConstrainedProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConstrainedProblem")
            .field("dim", &self.dim)
            .field("feasible", &self.feasible)
            .field("smoothness", &self.smoothness)
            .field("objective_class", &self.objective_class)
            .field("constraint_class", &self.constraint_class)
            .finish_non_exhaustive()
    }
}

impl ConstrainedProblem {
    /// A problem with the given objective and the trivial constraint
    /// `g ≡ −1` (every point is feasible, all steps are productive).
    pub fn new(
        dim: usize,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        objective_subgrad: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        ConstrainedProblem {
            dim,
            objective: Box::new(objective),
            objective_subgrad: Box::new(objective_subgrad),
            constraint: Box::new(|_x: &[f64]| -1.0),
            constraint_subgrad: Box::new(move |x: &[f64]| vec![0.0; x.len()]),
            direction_f: None,
            direction_g: None,
            feasible: FeasibleSet::WholeSpace,
            smoothness: Smoothness {
                m_g: Some(0.0),
                ..Smoothness::default()
            },
            objective_class: ConvexClass::Convex,
            constraint_class: ConvexClass::Convex,
        }
    }

    /// Replaces the constraint oracle pair and records its Lipschitz constant.
    pub fn with_constraint(
        mut self,
        constraint: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        constraint_subgrad: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        m_g: f64,
    ) -> Self {
        self.constraint = Box::new(constraint);
        self.constraint_subgrad = Box::new(constraint_subgrad);
        self.smoothness.m_g = Some(m_g);
        self
    }

    /// Like [`with_constraint`](Self::with_constraint) but with an unknown
    /// Lipschitz constant. Solvers that need `M_g` (the quasi-convex
    /// productivity test) will refuse to run rather than estimate it.
    pub fn with_constraint_unknown_lipschitz(
        mut self,
        constraint: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        constraint_subgrad: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.constraint = Box::new(constraint);
        self.constraint_subgrad = Box::new(constraint_subgrad);
        self.smoothness.m_g = None;
        self
    }

    pub fn with_feasible(mut self, feasible: FeasibleSet) -> Self {
        self.feasible = feasible;
        self
    }

    pub fn with_m_f(mut self, m_f: f64) -> Self {
        self.smoothness.m_f = Some(m_f);
        self
    }

    pub fn with_grad_lipschitz(mut self, l: f64) -> Self {
        self.smoothness.grad_lipschitz = Some(l);
        self
    }

    pub fn with_holder(mut self, nu: f64, m_nu: f64) -> Self {
        self.smoothness.holder = Some(HolderData { nu, m_nu });
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.smoothness.mu = Some(mu);
        self
    }

    pub fn with_classes(mut self, objective: ConvexClass, constraint: ConvexClass) -> Self {
        self.objective_class = objective;
        self.constraint_class = constraint;
        self
    }

    /// Overrides the quasi-convex direction oracle for `f` (an element of
    /// `D̂f`, e.g. a level-set normal).
    pub fn with_direction_f(
        mut self,
        oracle: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.direction_f = Some(Box::new(oracle));
        self
    }

    pub fn with_direction_g(
        mut self,
        oracle: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.direction_g = Some(Box::new(oracle));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn feasible(&self) -> &FeasibleSet {
        &self.feasible
    }

    pub fn smoothness(&self) -> &Smoothness {
        &self.smoothness
    }

    pub fn objective_class(&self) -> ConvexClass {
        self.objective_class
    }

    pub fn constraint_class(&self) -> ConvexClass {
        self.constraint_class
    }

    pub fn f(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn f_subgrad(&self, x: &[f64]) -> Vec<f64> {
        (self.objective_subgrad)(x)
    }

    pub fn g(&self, x: &[f64]) -> f64 {
        (self.constraint)(x)
    }

    pub fn g_subgrad(&self, x: &[f64]) -> Vec<f64> {
        (self.constraint_subgrad)(x)
    }

    /// Step direction for the objective: the override if present, otherwise
    /// the subgradient oracle.
    pub fn direction_f(&self, x: &[f64]) -> Vec<f64> {
        match &self.direction_f {
            Some(o) => o(x),
            None => self.f_subgrad(x),
        }
    }

    pub fn direction_g(&self, x: &[f64]) -> Vec<f64> {
        match &self.direction_g {
            Some(o) => o(x),
            None => self.g_subgrad(x),
        }
    }
}

/// The convergence certificate quantity
/// `v_f(y, x*) = ⟨∇f(y)/‖∇f(y)‖_*, y − x*⟩`, with the convention `0` when
/// the direction vanishes. The dual norm is the one of the supplied setup.
pub fn vf_gap(problem: &ConstrainedProblem, prox: &ProxSetup, y: &[f64], x_star: &[f64]) -> f64 {
    let p = problem.direction_f(y);
    let n = prox.dual_norm(&p);
    if n == 0.0 {
        0.0
    } else {
        dot(&p, &sub(y, x_star)) / n
    }
}

/// Quadratic-majorant coefficient for a Hölder-continuous objective with
/// slack `δ = ε`: `M = M_ν^{2/(1+ν)} / (2 ε^{(1−ν)/(1+ν)})`.
pub fn holder_majorant(m_nu: f64, nu: f64, eps: f64) -> f64 {
    debug_assert!(m_nu > 0.0 && (0.0..=1.0).contains(&nu) && eps > 0.0);
    m_nu.powf(2.0 / (1.0 + nu)) / (2.0 * eps.powf((1.0 - nu) / (1.0 + nu)))
}

/// Guaranteed objective gap for a Hölder-continuous objective after a run at
/// accuracy `ε`: `M_ν^{2/(1+ν)}/2 · ε^{1+2ν/(1+ν)} + ε`.
pub fn holder_bound(m_nu: f64, nu: f64, eps: f64) -> f64 {
    debug_assert!(m_nu > 0.0 && (0.0..=1.0).contains(&nu) && eps > 0.0);
    0.5 * m_nu.powf(2.0 / (1.0 + nu)) * eps.powf(1.0 + 2.0 * nu / (1.0 + nu)) + eps
}

/// Outcome of a sampled oracle check.
#[derive(Debug, Clone)]
pub struct SubgradientReport {
    pub passed: bool,
    pub trials: usize,
    /// Samples that actually entered the check (quasi-convex checks reject
    /// samples outside the sublevel set).
    pub checked: usize,
    /// Largest violation observed (0 when all samples pass).
    pub worst_violation: f64,
    pub worst_point: Option<Vec<f64>>,
}

/// Samples points around `x` and verifies the oracle contract:
///
/// - convex `f`: `f(y) ≥ f(x) + ⟨∇f(x), y − x⟩ − tol`;
/// - quasi-convex `f`: `⟨Df(x), x − y⟩ ≥ −tol` for sampled `y` with
///   `f(y) ≤ f(x)`.
///
/// Sampling is deterministic (fixed internal seed) so failures reproduce.
pub fn check_subgradient(
    problem: &ConstrainedProblem,
    x: &[f64],
    trials: usize,
) -> SubgradientReport {
    let mut rng = SplitMix64::new(0x5EED_000F);
    let tol = tolerances::SUBGRADIENT;
    let quasi = problem.objective_class().is_quasi();
    let fx = problem.f(x);
    let grad = if quasi {
        problem.direction_f(x)
    } else {
        problem.f_subgrad(x)
    };
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut worst_point = None;
    for _ in 0..trials {
        let dir = rng.unit_vector(x.len());
        let r = rng.range_f64(1e-4, 0.5);
        let cand: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + r * d).collect();
        let y = problem.feasible().project(&cand);
        let violation = if quasi {
            if problem.f(&y) > fx {
                continue;
            }
            // ⟨Df(x), x − y⟩ ≥ −tol
            -dot(&grad, &sub(x, &y))
        } else {
            // f(y) ≥ f(x) + ⟨∇f(x), y − x⟩ − tol
            fx + dot(&grad, &sub(&y, x)) - problem.f(&y)
        };
        checked += 1;
        if violation > worst {
            worst = violation;
            worst_point = Some(y);
        }
    }
    SubgradientReport {
        passed: worst <= tol,
        trials,
        checked,
        worst_violation: worst,
        worst_point,
    }
}
