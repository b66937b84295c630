//! The Mirror Descent solver loops and the run certificate checker.
//!
//! All three loops share the same skeleton: test the constraint at the
//! current iterate, take a *productive* step along the objective direction
//! when the test passes and a *non-productive* step along the constraint
//! direction otherwise, and output the productive iterate with the smallest
//! objective value. They differ in the productivity test, the step sizes,
//! and the stopping rule:
//!
//! | loop                   | productive when          | h productive | h non-productive | stops |
//! |------------------------|--------------------------|--------------|------------------|-------|
//! | [`solve_prior_adaptive`] | `g(x) ≤ ε`             | `ε/M`        | `ε/M²`           | `2Θ₀²/ε² ≤ Σ_{j∉I} 1/M_j² + |I|` |
//! | [`solve_new_adaptive`]   | `g(x) ≤ ε‖∇g(x)‖_*`    | `ε/M`        | `ε/M`            | fixed `⌈2Θ₀²/ε²⌉` steps |
//! | [`solve_quasiconvex`]    | `g(x) ≤ M_g·ε`         | `ε/M`        | `ε/M`            | fixed `⌈2Θ₀²/ε²⌉` steps |
//!
//! with `M` the dual norm of the branch's direction vector. The normalized
//! non-productive step of the fixed-budget loops is what makes them fast
//! when constraint subgradients are large: one step moves distance `ε`
//! regardless of `‖∇g‖`, while `ε/M²`-steps crawl.

use crate::oracles::{ConstrainedProblem, KnownSolution};
use crate::prox::{ProxError, ProxSetup};
use crate::tolerances;
use crate::vecmath::{dot, scale, sub};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Adaptive stopping rule, squared-norm non-productive steps.
    PriorAdaptive,
    /// Fixed budget, normalized steps on both branches.
    NewAdaptive,
    /// Fixed budget, quasi-convex direction oracles, `g ≤ M_g ε` test.
    QuasiConvex,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::PriorAdaptive => write!(f, "prior"),
            Algorithm::NewAdaptive => write!(f, "new"),
            Algorithm::QuasiConvex => write!(f, "quasiconvex"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Target accuracy ε.
    pub eps: f64,
    /// Θ₀² with `V(x⁰, x*) ≤ Θ₀²`.
    pub theta0_sq: f64,
    /// Safety bound on iterations.
    pub hard_cap: usize,
    /// Record a full per-iteration trace (needed by [`certify_run`]).
    pub record_trace: bool,
    /// Optional wall-clock budget; exceeding it aborts with a partial report.
    pub time_limit: Option<Duration>,
}

impl SolverConfig {
    pub fn new(eps: f64, theta0_sq: f64) -> Self {
        SolverConfig {
            eps,
            theta0_sq,
            hard_cap: 10_000_000,
            record_trace: false,
            time_limit: None,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn with_hard_cap(mut self, cap: usize) -> Self {
        self.hard_cap = cap;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    fn validate(&self) -> Result<(), SolverError> {
        if self.eps <= 0.0 || self.eps.is_nan() {
            return Err(SolverError::InvalidConfig("eps must be positive"));
        }
        if self.theta0_sq <= 0.0 || self.theta0_sq.is_nan() {
            return Err(SolverError::InvalidConfig("theta0_sq must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Productive,
    NonProductive,
}

/// One iteration of a recorded trace.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub index: usize,
    pub kind: StepKind,
    /// Dual norm of the branch's direction vector.
    pub m_k: f64,
    /// Step size of the branch formula.
    pub h_k: f64,
    /// The scaled vector `h_k·p` handed to the mirror step.
    pub step_vector: Vec<f64>,
    pub point_before: Vec<f64>,
    pub point_after: Vec<f64>,
    pub f_value: f64,
    pub g_value: f64,
    /// `‖∇g(x^k)‖_*` when the productivity test evaluated it.
    pub g_dual_norm: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The algorithm's own stopping rule fired.
    Criterion,
    /// The objective direction vanished at a productive step — the iterate
    /// minimizes `f`.
    ZeroGradient,
    /// Hard iteration cap (only in partial reports carried by errors).
    Cap,
    /// Wall-clock limit (only in partial reports carried by errors).
    TimeLimit,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub eps: f64,
    pub theta0_sq: f64,
    /// Constraint Lipschitz constant the run was configured with, if any.
    pub m_g: Option<f64>,
    /// `argmin` of `f` over productive iterates (smallest index on ties).
    pub output: Vec<f64>,
    pub best_f: f64,
    pub g_at_output: f64,
    pub n_total: usize,
    pub n_productive: usize,
    pub n_nonproductive: usize,
    pub stop_reason: StopReason,
    pub wall_time: Duration,
    pub trace: Option<Vec<IterationRecord>>,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("iteration cap {cap} reached before the stopping rule")]
    IterationCap { cap: usize, report: Box<RunReport> },
    #[error("time limit exceeded after {} iterations", report.n_total)]
    TimeLimit { report: Box<RunReport> },
    #[error("no productive step among {n} iterations; Θ₀² = {theta0_sq} does not bound V(x⁰, x*)")]
    EmptyProductiveSet { n: usize, theta0_sq: f64 },
    #[error("constraint direction vanished at an infeasible point (iteration {iteration})")]
    ZeroConstraintDirection { iteration: usize },
    #[error("problem is missing metadata `{0}` required by this solver")]
    MissingMetadata(&'static str),
    #[error(transparent)]
    Prox(#[from] ProxError),
}

/// `⌈2Θ₀²/ε²⌉` with a snap against floating-point dust: values within
/// `1e−9` (relative) of an integer round to it before the ceiling, so that
/// e.g. `ε = 1/6` yields exactly 144.
pub fn fixed_budget(theta0_sq: f64, eps: f64) -> usize {
    let raw = 2.0 * theta0_sq / (eps * eps);
    snapped_ceil(raw)
}

fn snapped_ceil(raw: f64) -> usize {
    let nearest = raw.round();
    if (raw - nearest).abs() <= 1e-9 * raw.abs().max(1.0) {
        nearest as usize
    } else {
        raw.ceil() as usize
    }
}

/// Iteration bound of the adaptive-stopping loop:
/// `⌈2·max{1, M_g²}·Θ₀²/ε²⌉`.
pub fn prior_iteration_bound(theta0_sq: f64, eps: f64, m_g: f64) -> usize {
    snapped_ceil(2.0 * m_g.powi(2).max(1.0) * theta0_sq / (eps * eps))
}

struct RunState {
    algorithm: Algorithm,
    eps: f64,
    theta0_sq: f64,
    m_g: Option<f64>,
    start: Instant,
    time_limit: Option<Duration>,
    n_productive: usize,
    n_nonproductive: usize,
    best: Option<(f64, Vec<f64>)>,
    trace: Option<Vec<IterationRecord>>,
}

impl RunState {
    fn new(algorithm: Algorithm, config: &SolverConfig, m_g: Option<f64>) -> Self {
        RunState {
            algorithm,
            eps: config.eps,
            theta0_sq: config.theta0_sq,
            m_g,
            start: Instant::now(),
            time_limit: config.time_limit,
            n_productive: 0,
            n_nonproductive: 0,
            best: None,
            trace: if config.record_trace {
                Some(Vec::new())
            } else {
                None
            },
        }
    }

    fn out_of_time(&self) -> bool {
        self.time_limit
            .is_some_and(|limit| self.start.elapsed() >= limit)
    }

    #[allow(clippy::too_many_arguments)]
    fn record(
        &mut self,
        index: usize,
        kind: StepKind,
        m_k: f64,
        h_k: f64,
        step_vector: Vec<f64>,
        before: &[f64],
        after: &[f64],
        f_value: f64,
        g_value: f64,
        g_dual_norm: Option<f64>,
    ) {
        match kind {
            StepKind::Productive => self.n_productive += 1,
            StepKind::NonProductive => self.n_nonproductive += 1,
        }
        if let Some(trace) = &mut self.trace {
            trace.push(IterationRecord {
                index,
                kind,
                m_k,
                h_k,
                step_vector,
                point_before: before.to_vec(),
                point_after: after.to_vec(),
                f_value,
                g_value,
                g_dual_norm,
            });
        }
    }

    /// Offers a productive iterate as output candidate; earlier iterates win
    /// ties by strict comparison.
    fn offer(&mut self, f_value: f64, point: &[f64]) {
        if self.best.as_ref().is_none_or(|(b, _)| f_value < *b) {
            self.best = Some((f_value, point.to_vec()));
        }
    }

    fn finish(
        self,
        problem: &ConstrainedProblem,
        stop_reason: StopReason,
    ) -> Result<RunReport, SolverError> {
        let n = self.n_productive + self.n_nonproductive;
        let (best_f, output) = self.best.ok_or(SolverError::EmptyProductiveSet {
            n,
            theta0_sq: self.theta0_sq,
        })?;
        let g_at_output = problem.g(&output);
        Ok(RunReport {
            algorithm: self.algorithm,
            eps: self.eps,
            theta0_sq: self.theta0_sq,
            m_g: self.m_g,
            output,
            best_f,
            g_at_output,
            n_total: n,
            n_productive: self.n_productive,
            n_nonproductive: self.n_nonproductive,
            stop_reason,
            wall_time: self.start.elapsed(),
            trace: self.trace,
        })
    }

    /// A best-effort report for error paths (cap, time limit). Falls back to
    /// the current iterate when no productive step exists yet.
    fn partial(self, problem: &ConstrainedProblem, current: &[f64], stop: StopReason) -> RunReport {
        let n = self.n_productive + self.n_nonproductive;
        let (best_f, output) = self
            .best
            .unwrap_or_else(|| (problem.f(current), current.to_vec()));
        let g_at_output = problem.g(&output);
        RunReport {
            algorithm: self.algorithm,
            eps: self.eps,
            theta0_sq: self.theta0_sq,
            m_g: self.m_g,
            output,
            best_f,
            g_at_output,
            n_total: n,
            n_productive: self.n_productive,
            n_nonproductive: self.n_nonproductive,
            stop_reason: stop,
            wall_time: self.start.elapsed(),
            trace: self.trace,
        }
    }
}

/// Mirror Descent with the adaptive stopping rule and squared-norm
/// non-productive steps.
///
/// Starts from `x⁰ = argmin_Q d`. Productive steps (`g(x) ≤ ε`) use
/// `h = ε/‖∇f‖_*`; non-productive ones use `h = ε/‖∇g‖_*²`. Stops once
/// `2Θ₀²/ε² ≤ Σ_{j∉I} 1/M_j² + |I|`, which takes at most
/// [`prior_iteration_bound`] iterations.
pub fn solve_prior_adaptive(
    problem: &ConstrainedProblem,
    prox: &ProxSetup,
    config: &SolverConfig,
) -> Result<RunReport, SolverError> {
    config.validate()?;
    let mut state = RunState::new(Algorithm::PriorAdaptive, config, problem.smoothness().m_g);
    let mut x = prox.prox_center();
    let threshold = 2.0 * config.theta0_sq / (config.eps * config.eps);
    let mut criterion_sum = 0.0;
    let mut k = 0usize;
    loop {
        if k >= config.hard_cap {
            return Err(SolverError::IterationCap {
                cap: config.hard_cap,
                report: Box::new(state.partial(problem, &x, StopReason::Cap)),
            });
        }
        if state.out_of_time() {
            return Err(SolverError::TimeLimit {
                report: Box::new(state.partial(problem, &x, StopReason::TimeLimit)),
            });
        }
        let g_value = problem.g(&x);
        if g_value <= config.eps {
            let dir = problem.f_subgrad(&x);
            let m = prox.dual_norm(&dir);
            let f_value = problem.f(&x);
            if m == 0.0 {
                state.record(
                    k,
                    StepKind::Productive,
                    0.0,
                    0.0,
                    vec![0.0; x.len()],
                    &x,
                    &x,
                    f_value,
                    g_value,
                    None,
                );
                state.offer(f_value, &x);
                return state.finish(problem, StopReason::ZeroGradient);
            }
            let h = config.eps / m;
            let step = scale(&dir, h);
            let next = prox.mirror_step(&x, &step)?;
            state.record(
                k,
                StepKind::Productive,
                m,
                h,
                step,
                &x,
                &next,
                f_value,
                g_value,
                None,
            );
            state.offer(f_value, &x);
            criterion_sum += 1.0;
            x = next;
        } else {
            let dir = problem.g_subgrad(&x);
            let m = prox.dual_norm(&dir);
            if m == 0.0 {
                return Err(SolverError::ZeroConstraintDirection { iteration: k });
            }
            let h = config.eps / (m * m);
            let step = scale(&dir, h);
            let next = prox.mirror_step(&x, &step)?;
            let f_value = if state.trace.is_some() {
                problem.f(&x)
            } else {
                f64::NAN
            };
            state.record(
                k,
                StepKind::NonProductive,
                m,
                h,
                step,
                &x,
                &next,
                f_value,
                g_value,
                None,
            );
            criterion_sum += 1.0 / (m * m);
            x = next;
        }
        k += 1;
        if criterion_sum >= threshold {
            return state.finish(problem, StopReason::Criterion);
        }
    }
}

/// Mirror Descent with normalized steps and the fixed budget `⌈2Θ₀²/ε²⌉`.
///
/// The productivity test is `g(x) ≤ ε‖∇g(x)‖_*`. After the budget, every
/// productive iterate satisfies `g(x^k) ≤ ε·M_g` and
/// `min_{k∈I} v_f(x^k, x*) ≤ ε`; the productive set cannot be empty when
/// `V(x⁰, x*) ≤ Θ₀²` holds.
pub fn solve_new_adaptive(
    problem: &ConstrainedProblem,
    prox: &ProxSetup,
    config: &SolverConfig,
) -> Result<RunReport, SolverError> {
    config.validate()?;
    let budget = fixed_budget(config.theta0_sq, config.eps);
    let mut state = RunState::new(Algorithm::NewAdaptive, config, problem.smoothness().m_g);
    let mut x = prox.prox_center();
    for k in 0..budget {
        if k >= config.hard_cap {
            return Err(SolverError::IterationCap {
                cap: config.hard_cap,
                report: Box::new(state.partial(problem, &x, StopReason::Cap)),
            });
        }
        if state.out_of_time() {
            return Err(SolverError::TimeLimit {
                report: Box::new(state.partial(problem, &x, StopReason::TimeLimit)),
            });
        }
        let g_value = problem.g(&x);
        let g_dir = problem.g_subgrad(&x);
        let g_norm = prox.dual_norm(&g_dir);
        if g_value <= config.eps * g_norm {
            let dir = problem.f_subgrad(&x);
            let m = prox.dual_norm(&dir);
            let f_value = problem.f(&x);
            if m == 0.0 {
                state.record(
                    k,
                    StepKind::Productive,
                    0.0,
                    0.0,
                    vec![0.0; x.len()],
                    &x,
                    &x,
                    f_value,
                    g_value,
                    Some(g_norm),
                );
                state.offer(f_value, &x);
                return state.finish(problem, StopReason::ZeroGradient);
            }
            let h = config.eps / m;
            let step = scale(&dir, h);
            let next = prox.mirror_step(&x, &step)?;
            state.record(
                k,
                StepKind::Productive,
                m,
                h,
                step,
                &x,
                &next,
                f_value,
                g_value,
                Some(g_norm),
            );
            state.offer(f_value, &x);
            x = next;
        } else {
            if g_norm == 0.0 {
                return Err(SolverError::ZeroConstraintDirection { iteration: k });
            }
            let h = config.eps / g_norm;
            let step = scale(&g_dir, h);
            let next = prox.mirror_step(&x, &step)?;
            let f_value = if state.trace.is_some() {
                problem.f(&x)
            } else {
                f64::NAN
            };
            state.record(
                k,
                StepKind::NonProductive,
                g_norm,
                h,
                step,
                &x,
                &next,
                f_value,
                g_value,
                Some(g_norm),
            );
            x = next;
        }
    }
    state.finish(problem, StopReason::Criterion)
}

/// The fixed-budget loop for quasi-convex objective *and* constraint.
///
/// Steps use the direction oracles `Df ∈ D̂f`, `Dg ∈ D̂g` (defaulting to the
/// problem's subgradient oracles) with `h = ε/‖D·‖_*` on both branches; the
/// productivity test is `g(x) ≤ M_g·ε` and requires the `M_g` metadata.
pub fn solve_quasiconvex(
    problem: &ConstrainedProblem,
    prox: &ProxSetup,
    config: &SolverConfig,
) -> Result<RunReport, SolverError> {
    config.validate()?;
    let m_g = problem
        .smoothness()
        .m_g
        .ok_or(SolverError::MissingMetadata("m_g"))?;
    let budget = fixed_budget(config.theta0_sq, config.eps);
    let mut state = RunState::new(Algorithm::QuasiConvex, config, Some(m_g));
    let mut x = prox.prox_center();
    for k in 0..budget {
        if k >= config.hard_cap {
            return Err(SolverError::IterationCap {
                cap: config.hard_cap,
                report: Box::new(state.partial(problem, &x, StopReason::Cap)),
            });
        }
        if state.out_of_time() {
            return Err(SolverError::TimeLimit {
                report: Box::new(state.partial(problem, &x, StopReason::TimeLimit)),
            });
        }
        let g_value = problem.g(&x);
        if g_value <= m_g * config.eps {
            let dir = problem.direction_f(&x);
            let m = prox.dual_norm(&dir);
            let f_value = problem.f(&x);
            if m == 0.0 {
                state.record(
                    k,
                    StepKind::Productive,
                    0.0,
                    0.0,
                    vec![0.0; x.len()],
                    &x,
                    &x,
                    f_value,
                    g_value,
                    None,
                );
                state.offer(f_value, &x);
                return state.finish(problem, StopReason::ZeroGradient);
            }
            let h = config.eps / m;
            let step = scale(&dir, h);
            let next = prox.mirror_step(&x, &step)?;
            state.record(
                k,
                StepKind::Productive,
                m,
                h,
                step,
                &x,
                &next,
                f_value,
                g_value,
                None,
            );
            state.offer(f_value, &x);
            x = next;
        } else {
            let dir = problem.direction_g(&x);
            let m = prox.dual_norm(&dir);
            if m == 0.0 {
                return Err(SolverError::ZeroConstraintDirection { iteration: k });
            }
            let h = config.eps / m;
            let step = scale(&dir, h);
            let next = prox.mirror_step(&x, &step)?;
            let f_value = if state.trace.is_some() {
                problem.f(&x)
            } else {
                f64::NAN
            };
            state.record(
                k,
                StepKind::NonProductive,
                m,
                h,
                step,
                &x,
                &next,
                f_value,
                g_value,
                None,
            );
            x = next;
        }
    }
    state.finish(problem, StopReason::Criterion)
}

/// A verified run certificate.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub iterations_checked: usize,
    /// `min_{k∈I} v_f(x^k, x*)`, computed from the recorded step vectors.
    pub min_vf: f64,
    /// `max_{k∈I} g(x^k)`.
    pub max_productive_g: f64,
    /// Smallest slack of the three-point inequality across all iterations
    /// (≥ −tolerance when the certificate holds).
    pub worst_three_point_slack: f64,
    /// Smallest slack of the strict non-productive decrease.
    pub worst_decrease_slack: f64,
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("run has no recorded trace; enable `record_trace`")]
    NoTrace,
    #[error("iteration {iteration}: {check} violated (lhs {lhs:.6e}, rhs {rhs:.6e})")]
    Violation {
        iteration: usize,
        check: &'static str,
        lhs: f64,
        rhs: f64,
    },
    #[error("aggregate v_f check failed: min v_f {min_vf:.6e} > eps {eps:.6e}")]
    VfGap { min_vf: f64, eps: f64 },
    #[error(transparent)]
    Prox(#[from] ProxError),
}

/// Re-verifies a recorded run against a known solution:
///
/// 1. every record's branch test and step-size formula;
/// 2. the three-point inequality
///    `⟨hp, x^k − x*⟩ ≤ ½‖hp‖_*² + V(x^k, x*) − V(x^{k+1}, x*)` at every
///    iteration (the inequality behind both convergence proofs, valid for
///    quasi-convex directions as well);
/// 3. the strict non-productive decrease
///    `ε²/2 < V(x^k, x*) − V(x^{k+1}, x*)` (for the adaptive-stopping loop:
///    `ε²/(2M_k²)`), which needs `g(x*) ≤ 0`;
/// 4. `min_{k∈I} v_f(x^k, x*) ≤ ε` in aggregate.
///
/// All inequalities carry the `tolerances::CERTIFICATE` slack.
pub fn certify_run(
    report: &RunReport,
    prox: &ProxSetup,
    known: &KnownSolution,
) -> Result<Certificate, CertifyError> {
    let trace = report.trace.as_ref().ok_or(CertifyError::NoTrace)?;
    let xs = &known.x_star;
    let tol = tolerances::CERTIFICATE;
    let eps = report.eps;
    let mut min_vf = f64::INFINITY;
    let mut max_productive_g = f64::NEG_INFINITY;
    let mut worst_three_point = f64::INFINITY;
    let mut worst_decrease = f64::INFINITY;

    for rec in trace {
        let terminal = rec.m_k == 0.0 && rec.h_k == 0.0;

        // 1. branch test and step formula
        let productive_expected = match report.algorithm {
            Algorithm::PriorAdaptive => rec.g_value <= eps,
            Algorithm::NewAdaptive => {
                let g_norm = rec.g_dual_norm.ok_or(CertifyError::Violation {
                    iteration: rec.index,
                    check: "missing recorded ‖∇g‖_*",
                    lhs: 0.0,
                    rhs: 0.0,
                })?;
                rec.g_value <= eps * g_norm
            }
            Algorithm::QuasiConvex => {
                let m_g = report.m_g.ok_or(CertifyError::Violation {
                    iteration: rec.index,
                    check: "missing M_g in report",
                    lhs: 0.0,
                    rhs: 0.0,
                })?;
                rec.g_value <= m_g * eps
            }
        };
        let is_productive = rec.kind == StepKind::Productive;
        if is_productive != productive_expected {
            return Err(CertifyError::Violation {
                iteration: rec.index,
                check: "branch test does not match recorded step kind",
                lhs: rec.g_value,
                rhs: eps,
            });
        }
        if !terminal {
            let expected_h = match (report.algorithm, rec.kind) {
                (Algorithm::PriorAdaptive, StepKind::NonProductive) => eps / (rec.m_k * rec.m_k),
                _ => eps / rec.m_k,
            };
            if (rec.h_k - expected_h).abs() > 1e-12 * expected_h.max(1e-300) {
                return Err(CertifyError::Violation {
                    iteration: rec.index,
                    check: "step size does not match the branch formula",
                    lhs: rec.h_k,
                    rhs: expected_h,
                });
            }
            // the recorded dual norm must reproduce from the step vector
            let recovered = prox.dual_norm(&rec.step_vector) / rec.h_k;
            if (recovered - rec.m_k).abs() > 1e-9 * rec.m_k.max(1.0) {
                return Err(CertifyError::Violation {
                    iteration: rec.index,
                    check: "recorded M_k does not match the step vector",
                    lhs: recovered,
                    rhs: rec.m_k,
                });
            }
        }

        // 2. three-point inequality with the recorded step vector
        let v_before = prox.bregman(&rec.point_before, xs)?;
        let v_after = prox.bregman(&rec.point_after, xs)?;
        let lhs = dot(&rec.step_vector, &sub(&rec.point_before, xs));
        let rhs = 0.5 * prox.dual_norm(&rec.step_vector).powi(2) + v_before - v_after;
        if lhs > rhs + tol {
            return Err(CertifyError::Violation {
                iteration: rec.index,
                check: "three-point inequality",
                lhs,
                rhs,
            });
        }
        worst_three_point = worst_three_point.min(rhs - lhs);

        match rec.kind {
            StepKind::NonProductive => {
                // 3. strict decrease of the divergence to x*
                let required = match report.algorithm {
                    Algorithm::PriorAdaptive => eps * eps / (2.0 * rec.m_k * rec.m_k),
                    _ => eps * eps / 2.0,
                };
                let decrease = v_before - v_after;
                if required >= decrease + tol {
                    return Err(CertifyError::Violation {
                        iteration: rec.index,
                        check: "non-productive divergence decrease",
                        lhs: required,
                        rhs: decrease,
                    });
                }
                worst_decrease = worst_decrease.min(decrease - required);
            }
            StepKind::Productive => {
                // 4. v_f from the recorded direction
                let norm = prox.dual_norm(&rec.step_vector);
                let vf = if norm == 0.0 {
                    0.0
                } else {
                    dot(&rec.step_vector, &sub(&rec.point_before, xs)) / norm
                };
                min_vf = min_vf.min(vf);
                max_productive_g = max_productive_g.max(rec.g_value);
            }
        }
    }

    if min_vf > eps + tol {
        return Err(CertifyError::VfGap { min_vf, eps });
    }

    Ok(Certificate {
        iterations_checked: trace.len(),
        min_vf,
        max_productive_g,
        worst_three_point_slack: worst_three_point,
        worst_decrease_slack: worst_decrease,
    })
}
