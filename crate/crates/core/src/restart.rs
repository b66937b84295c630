//! Restart acceleration for strongly (quasi-)convex problems.
//!
//! With both `f` and `g` μ-strongly convex, an ε-accurate inner run shrinks
//! the distance to the solution: `μ/2·‖x − x*‖² ≤ max{ε_f, ε_g}`. The
//! restart loop exploits this by halving the distance bound `R_p` at every
//! stage, recentering the (rescaled) d.g.f. at the previous output and
//! re-running the fixed-budget solver at accuracy `φ̂(ε_p)`, where `φ̂`
//! inverts the accuracy-translation function
//! `τ(δ) = max{δ‖∇f(x*)‖_* + δ²L/2, δ}`. Total inner work is
//! `O(Ω²/(με))`-type instead of `O(1/ε²)`.

use crate::oracles::ConstrainedProblem;
use crate::prox::{ProxError, ProxSetup};
use crate::solvers::{solve_new_adaptive, solve_quasiconvex, RunReport, SolverConfig, SolverError};
use thiserror::Error;

/// The data needed to evaluate the accuracy translation `φ̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauData {
    /// `τ(δ) = max{δ·grad_at_opt + δ²·grad_lipschitz/2, δ}` inverted in
    /// closed form. `grad_at_opt` may be a valid upper bound on
    /// `‖∇f(x*)‖_*` (τ is monotone in it, making `φ̂` conservative).
    Exact {
        grad_at_opt: f64,
        grad_lipschitz: f64,
    },
    /// Linear shortcut `φ̂(ε) = ε/c_hat` for a user-supplied `c_hat ≥ 1`
    /// with `τ(δ) ≤ c_hat·δ` on the relevant range.
    Linear { c_hat: f64 },
}

impl TauData {
    pub fn phi_hat(&self, eps: f64) -> f64 {
        match *self {
            TauData::Exact {
                grad_at_opt,
                grad_lipschitz,
            } => phi_hat(eps, grad_at_opt, grad_lipschitz),
            TauData::Linear { c_hat } => eps / c_hat,
        }
    }
}

/// Which fixed-budget loop the restart drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerSolver {
    NewAdaptive,
    QuasiConvex,
}

#[derive(Debug, Clone)]
pub struct RestartConfig {
    /// Target accuracy of the final output.
    pub eps: f64,
    /// Strong convexity parameter shared by `f` and `g`.
    pub mu: f64,
    /// `R₀²` with `‖x⁰ − x*‖² ≤ R₀²`.
    pub r0_sq: f64,
    /// `Ω²` with `d(x) ≤ Ω²` for `‖x‖ ≤ 1`; sizes every inner budget.
    pub omega_sq: f64,
    pub tau_data: TauData,
    pub inner: InnerSolver,
    /// Hard cap per inner run.
    pub hard_cap: usize,
    /// Record traces of the inner runs.
    pub record_trace: bool,
}

impl RestartConfig {
    pub fn new(eps: f64, mu: f64, r0_sq: f64, omega_sq: f64, tau_data: TauData) -> Self {
        RestartConfig {
            eps,
            mu,
            r0_sq,
            omega_sq,
            tau_data,
            inner: InnerSolver::NewAdaptive,
            hard_cap: 10_000_000,
            record_trace: false,
        }
    }

    pub fn with_inner(mut self, inner: InnerSolver) -> Self {
        self.inner = inner;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

#[derive(Debug, Error)]
pub enum RestartError {
    #[error("invalid restart configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("inner solver failed at restart {stage}: {source}")]
    Inner {
        stage: usize,
        #[source]
        source: SolverError,
    },
    #[error(transparent)]
    Prox(#[from] ProxError),
}

/// The accuracy translation `τ(δ) = max{δ·g_star + δ²·l/2, δ}`.
pub fn tau(delta: f64, g_star: f64, l: f64) -> f64 {
    debug_assert!(delta >= 0.0 && g_star >= 0.0 && l >= 0.0);
    (delta * g_star + 0.5 * delta * delta * l).max(delta)
}

/// The inverse of `τ`: the unique `δ > 0` with `τ(δ) = ε`.
///
/// `τ` is the max of two increasing branches, so its inverse is the min of
/// the branch inverses:
/// `δ = min{ε, (−g_star + √(g_star² + 2lε))/l}` (quadratic branch solved in
/// closed form; degenerate cases reduce accordingly).
pub fn phi_hat(eps: f64, g_star: f64, l: f64) -> f64 {
    debug_assert!(eps > 0.0 && g_star >= 0.0 && l >= 0.0);
    let quad_inverse = if l > 0.0 {
        (-g_star + (g_star * g_star + 2.0 * l * eps).sqrt()) / l
    } else if g_star > 0.0 {
        eps / g_star
    } else {
        f64::INFINITY
    };
    eps.min(quad_inverse)
}

/// `d_p(x) = d((x − center)/R_p)` — the base d.g.f. recentered and rescaled,
/// 1-strongly convex w.r.t. `‖·‖/R_p`. Only euclidean bases support this
/// (a shifted entropy has no closed-form mirror step).
pub fn rescaled_prox(base: &ProxSetup, center: &[f64], r_sq: f64) -> Result<ProxSetup, ProxError> {
    if !base.is_euclidean() {
        return Err(ProxError::Unsupported(
            "rescaling is only available for euclidean setups",
        ));
    }
    if r_sq <= 0.0 || r_sq.is_nan() {
        return Err(ProxError::Unsupported("rescale radius must be positive"));
    }
    let r = r_sq.sqrt();
    // base d(y) = ½‖(y − c_b)/s_b‖²; d((x − center)/R) recenters at
    // center + R·c_b with scale R·s_b. Plain bases (c_b = 0, s_b = 1)
    // reduce to a recentered copy with scale R.
    let s_b = base.scale();
    let c_b = base.dgf_center().expect("euclidean setup has a center");
    let new_center: Vec<f64> = center.iter().zip(c_b).map(|(x, c)| x + r * c).collect();
    Ok(ProxSetup::euclidean_scaled(
        base.feasible().clone(),
        new_center,
        r * s_b,
    ))
}

/// One stage of the restart loop.
#[derive(Debug, Clone)]
pub struct RestartStage {
    pub index: usize,
    /// `R_p² = R₀²·2^{−p}` after this stage.
    pub r_sq: f64,
    /// Stage accuracy `ε_p = μR_p²/2`.
    pub eps_p: f64,
    /// Accuracy handed to the inner solver: `φ̂(ε_p)`.
    pub inner_eps: f64,
    pub inner_iterations: usize,
    pub output: Vec<f64>,
    /// Full report of the inner run when tracing is enabled.
    pub inner_report: Option<RunReport>,
}

#[derive(Debug, Clone)]
pub struct RestartReport {
    pub p_hat: usize,
    pub stages: Vec<RestartStage>,
    pub output: Vec<f64>,
    pub total_inner_iterations: usize,
    /// Value of the iteration-budget bound this run must respect.
    pub budget: f64,
}

/// Number of restarts `p̂ = ⌈log₂(μR₀²/(2ε))⌉` (0 when the initial point
/// already qualifies).
pub fn restart_count(mu: f64, r0_sq: f64, eps: f64) -> usize {
    let ratio = mu * r0_sq / (2.0 * eps);
    if ratio <= 1.0 {
        return 0;
    }
    let lg = ratio.log2();
    let nearest = lg.round();
    if (lg - nearest).abs() <= 1e-9 {
        nearest as usize
    } else {
        lg.ceil() as usize
    }
}

/// Iteration budget promised by the restart scheme.
#[derive(Debug, Clone, Copy)]
pub struct IterationBudget {
    pub p_hat: usize,
    /// `p̂ + Σ_p 2Ω²·max{1, M_g}/φ̂²(ε_p)`.
    pub theorem_sum: f64,
    /// `p̂ + 64Ω²/(με)` — only for the linear `φ̂` form.
    pub linear_bound: Option<f64>,
}

pub fn iteration_budget(config: &RestartConfig, m_g: f64) -> IterationBudget {
    let p_hat = restart_count(config.mu, config.r0_sq, config.eps);
    let factor = m_g.max(1.0);
    let mut sum = p_hat as f64;
    for p in 1..=p_hat {
        let eps_p = config.mu * config.r0_sq / 2f64.powi(p as i32 + 1);
        let phi = config.tau_data.phi_hat(eps_p);
        sum += 2.0 * config.omega_sq * factor / (phi * phi);
    }
    let linear_bound = match config.tau_data {
        TauData::Linear { .. } => {
            Some(p_hat as f64 + 64.0 * config.omega_sq / (config.mu * config.eps))
        }
        TauData::Exact { .. } => None,
    };
    IterationBudget {
        p_hat,
        theorem_sum: sum,
        linear_bound,
    }
}

/// The restart loop.
///
/// Stage `p` runs the inner solver at accuracy `φ̂(ε_p)` with
/// `ε_p = μR₀²/2^{p+1}`, the d.g.f. recentered at the previous output with
/// radius `R_{p−1}`, and inner `Θ₀² = Ω²`. The starting point `x⁰` is the
/// base setup's prox center, so center the base d.g.f. at your starting
/// point. Guarantees after `p̂` stages: `f(x^p̂) − f* ≤ ε`,
/// `g(x^p̂) ≤ M_g·ε`, and `‖x^p̂ − x*‖² ≤ (2ε/μ)·max{1, M_g}`.
pub fn restart_solve(
    problem: &ConstrainedProblem,
    base_prox: &ProxSetup,
    config: &RestartConfig,
) -> Result<RestartReport, RestartError> {
    if config.mu <= 0.0 || config.mu.is_nan() {
        return Err(RestartError::InvalidConfig("mu must be positive"));
    }
    if [config.eps, config.r0_sq, config.omega_sq]
        .iter()
        .any(|v| *v <= 0.0 || v.is_nan())
    {
        return Err(RestartError::InvalidConfig(
            "eps, r0_sq and omega_sq must be positive",
        ));
    }
    let p_hat = restart_count(config.mu, config.r0_sq, config.eps);
    let mut x = base_prox.prox_center();
    let mut stages = Vec::with_capacity(p_hat);
    let mut total = 0usize;
    let mut r_prev_sq = config.r0_sq;
    for p in 1..=p_hat {
        let eps_p = config.mu * config.r0_sq / 2f64.powi(p as i32 + 1);
        let inner_eps = config.tau_data.phi_hat(eps_p);
        let prox_p = rescaled_prox(base_prox, &x, r_prev_sq)?;
        let mut inner_cfg =
            SolverConfig::new(inner_eps, config.omega_sq).with_hard_cap(config.hard_cap);
        if config.record_trace {
            inner_cfg = inner_cfg.with_trace();
        }
        let report = match config.inner {
            InnerSolver::NewAdaptive => solve_new_adaptive(problem, &prox_p, &inner_cfg),
            InnerSolver::QuasiConvex => solve_quasiconvex(problem, &prox_p, &inner_cfg),
        }
        .map_err(|source| RestartError::Inner { stage: p, source })?;
        total += report.n_total;
        x = report.output.clone();
        r_prev_sq /= 2.0;
        stages.push(RestartStage {
            index: p,
            r_sq: r_prev_sq,
            eps_p,
            inner_eps,
            inner_iterations: report.n_total,
            output: x.clone(),
            inner_report: if config.record_trace {
                Some(report)
            } else {
                None
            },
        });
    }
    let budget = iteration_budget(config, problem.smoothness().m_g.unwrap_or(1.0));
    Ok(RestartReport {
        p_hat,
        stages,
        output: x,
        total_inner_iterations: total,
        budget: budget.theorem_sum,
    })
}
