//! C ABI for the mirror-descent solvers.
//!
//! The interface follows the usual C-library conventions: opaque handles
//! created and destroyed by paired functions, status codes for every
//! fallible call, a thread-local textual error message, and caller-allocated
//! output buffers. The header `include/mirror_descent.h` is generated by
//! cbindgen at build time.
//!
//! Every entry point catches panics at the boundary; a panicking call
//! returns [`MdStatus::Panic`] and leaves outputs untouched.

use mirror_descent::bench;
use mirror_descent::oracles::ConstrainedProblem;
use mirror_descent::prox::{FeasibleSet, ProxSetup};
use mirror_descent::restart::{restart_solve, InnerSolver, RestartConfig, TauData};
use mirror_descent::solvers::{
    solve_new_adaptive, solve_prior_adaptive, solve_quasiconvex, RunReport, SolverConfig,
    StopReason,
};
use std::cell::RefCell;
use std::ffi::{c_char, c_void, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument was out of range or inconsistent.
    InvalidArgument = 2,
    /// The solver reported an error; see `md_last_error_message`.
    SolverFailure = 3,
    /// A panic was caught at the boundary.
    Panic = 4,
}

/// Algorithm selector for `md_solve`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdAlgorithm {
    /// Adaptive stopping rule, squared-norm non-productive steps.
    PriorAdaptive = 0,
    /// Fixed budget `⌈2Θ₀²/ε²⌉`, normalized steps.
    NewAdaptive = 1,
    /// Fixed budget, quasi-convex direction oracles.
    QuasiConvex = 2,
}

/// Summary of a finished run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MdRunStats {
    pub n_total: usize,
    pub n_productive: usize,
    pub n_nonproductive: usize,
    pub best_f: f64,
    pub g_at_output: f64,
    /// 0 = stopping rule, 1 = zero objective direction.
    pub stop_reason: i32,
    pub wall_time_ms: f64,
}

/// Objective/constraint callback: return the value at `x` (length `n`) and,
/// when `grad_out` is non-null, write the (sub)gradient into it.
///
/// # Safety contract (caller side)
/// The callback must be pure (no observable state mutation across calls),
/// thread-safe, and must not unwind across the boundary.
pub type MdOracleFn =
    unsafe extern "C" fn(n: usize, x: *const f64, grad_out: *mut f64, user: *mut c_void) -> f64;

/// Opaque problem handle.
pub struct MdProblem {
    inner: ConstrainedProblem,
}

/// Opaque prox-setup handle (geometry of the mirror step).
pub struct MdProx {
    inner: ProxSetup,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// The error message of the most recent failing call on this thread. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn md_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn md_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn boxed_problem(p: ConstrainedProblem) -> *mut MdProblem {
    Box::into_raw(Box::new(MdProblem { inner: p }))
}

fn catch_problem(f: impl FnOnce() -> Result<ConstrainedProblem, String>) -> *mut MdProblem {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(p)) => boxed_problem(p),
        Ok(Err(msg)) => {
            set_error(&msg);
            std::ptr::null_mut()
        }
        Err(_) => {
            set_error("panic during problem construction");
            std::ptr::null_mut()
        }
    }
}

fn matrix_benchmark(
    family: bench::Family,
    n: usize,
    points: usize,
    seed: u64,
    abs_constraints: bool,
) -> Result<ConstrainedProblem, String> {
    use mirror_descent::problems::*;
    if points == 0 {
        return Err("points must be positive".into());
    }
    let base = match family {
        bench::Family::Fts => fts_problem(&PointCloud::integer_cloud(n, points, seed)),
        bench::Family::CoveringBall => {
            covering_ball_problem(&PointCloud::integer_cloud(n, points, seed))
        }
        bench::Family::HolderSqrt => holder_sqrt_problem(n),
        bench::Family::QcCover => unreachable!("qc-cover uses its own constructor"),
    };
    let matrix = gen_constraint_matrix(n, 20).map_err(|e| e.to_string())?;
    Ok(base.with_max_affine_constraint(linear_constraints(matrix, abs_constraints)))
}

/// Mean-of-distances benchmark problem over `points` integer anchors with
/// the structured 20-row constraint matrix (`n ≥ 20`).
#[no_mangle]
pub extern "C" fn md_problem_fts(
    n: usize,
    points: usize,
    seed: u64,
    abs_constraints: bool,
) -> *mut MdProblem {
    catch_problem(|| matrix_benchmark(bench::Family::Fts, n, points, seed, abs_constraints))
}

/// Smallest-covering-ball benchmark problem (`n ≥ 20`).
#[no_mangle]
pub extern "C" fn md_problem_covering_ball(
    n: usize,
    points: usize,
    seed: u64,
    abs_constraints: bool,
) -> *mut MdProblem {
    catch_problem(|| {
        matrix_benchmark(
            bench::Family::CoveringBall,
            n,
            points,
            seed,
            abs_constraints,
        )
    })
}

/// Concave square-root benchmark problem over the nonnegative unit ball
/// with plain matrix constraints (`n ≥ 20`).
#[no_mangle]
pub extern "C" fn md_problem_holder_sqrt(n: usize) -> *mut MdProblem {
    catch_problem(|| matrix_benchmark(bench::Family::HolderSqrt, n, 1, 0, false))
}

/// Quasi-convex covering benchmark: `centers` anchors with norms in `[1, 2]`
/// and common ball radius `radius`, inflation factor `rho > 1`, plain matrix
/// constraints (`n ≥ 20`).
#[no_mangle]
pub extern "C" fn md_problem_qc_cover(
    n: usize,
    centers: usize,
    rho: f64,
    radius: f64,
    seed: u64,
) -> *mut MdProblem {
    catch_problem(|| {
        use mirror_descent::problems::*;
        if rho <= 1.0 || radius <= 0.0 || centers == 0 {
            return Err("qc-cover needs rho > 1, radius > 0, centers ≥ 1".into());
        }
        let cloud = PointCloud::shell_cloud(n, centers, 1.0, 2.0, radius, seed);
        let matrix = gen_constraint_matrix(n, 20).map_err(|e| e.to_string())?;
        Ok(quasiconvex_cover_problem(&cloud, rho)
            .with_max_affine_constraint(linear_constraints(matrix, false)))
    })
}

struct CallbackOracle {
    f: MdOracleFn,
    user: *mut c_void,
    dim: usize,
}

// The C caller guarantees thread-safe, pure callbacks (see MdOracleFn docs).
unsafe impl Send for CallbackOracle {}
unsafe impl Sync for CallbackOracle {}

impl CallbackOracle {
    fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        unsafe { (self.f)(self.dim, x.as_ptr(), std::ptr::null_mut(), self.user) }
    }

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        unsafe {
            (self.f)(self.dim, x.as_ptr(), out.as_mut_ptr(), self.user);
        }
        out
    }
}

/// A custom problem from C callbacks. `constraint` may be null, making
/// every point feasible (`g ≡ −1`). Pass a negative `m_f`/`m_g` to leave the
/// constant unset. The mirror step projects onto the feasible set of the
/// prox handle used at solve time.
///
/// # Safety
/// `objective` (and `constraint` when non-null) must satisfy the
/// [`MdOracleFn`] contract, and `user_data` must stay valid for the lifetime
/// of the problem handle.
#[no_mangle]
pub unsafe extern "C" fn md_problem_custom(
    n: usize,
    objective: Option<MdOracleFn>,
    constraint: Option<MdOracleFn>,
    user_data: *mut c_void,
    m_f: f64,
    m_g: f64,
) -> *mut MdProblem {
    let Some(objective) = objective else {
        set_error("objective callback is null");
        return std::ptr::null_mut();
    };
    if n == 0 {
        set_error("dimension must be positive");
        return std::ptr::null_mut();
    }
    let f_value = CallbackOracle {
        f: objective,
        user: user_data,
        dim: n,
    };
    let f_grad = CallbackOracle {
        f: objective,
        user: user_data,
        dim: n,
    };
    let mut problem = ConstrainedProblem::new(
        n,
        move |x: &[f64]| f_value.value(x),
        move |x: &[f64]| f_grad.grad(x),
    );
    if let Some(constraint) = constraint {
        let g_value = CallbackOracle {
            f: constraint,
            user: user_data,
            dim: n,
        };
        let g_grad = CallbackOracle {
            f: constraint,
            user: user_data,
            dim: n,
        };
        problem = if m_g >= 0.0 {
            problem.with_constraint(
                move |x: &[f64]| g_value.value(x),
                move |x: &[f64]| g_grad.grad(x),
                m_g,
            )
        } else {
            problem.with_constraint_unknown_lipschitz(
                move |x: &[f64]| g_value.value(x),
                move |x: &[f64]| g_grad.grad(x),
            )
        };
    }
    if m_f >= 0.0 {
        problem = problem.with_m_f(m_f);
    }
    boxed_problem(problem)
}

/// Frees a problem handle (null is ignored).
///
/// # Safety
/// `problem` must have come from one of the `md_problem_*` constructors and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn md_problem_free(problem: *mut MdProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Euclidean geometry over the whole space, `d(x) = ½‖x‖₂²`.
#[no_mangle]
pub extern "C" fn md_prox_euclidean(n: usize) -> *mut MdProx {
    Box::into_raw(Box::new(MdProx {
        inner: ProxSetup::euclidean(n, FeasibleSet::WholeSpace),
    }))
}

/// Euclidean geometry recentered at `x0` (length `n`); the solve starts
/// there. `feasible_radius > 0` restricts iterates to the euclidean ball of
/// that radius around the origin, `feasible_radius ≤ 0` leaves the whole
/// space.
///
/// # Safety
/// `x0` must point to `n` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn md_prox_euclidean_centered(
    n: usize,
    x0: *const f64,
    feasible_radius: f64,
) -> *mut MdProx {
    if x0.is_null() {
        set_error("x0 is null");
        return std::ptr::null_mut();
    }
    let center = std::slice::from_raw_parts(x0, n).to_vec();
    let feasible = if feasible_radius > 0.0 {
        FeasibleSet::Ball {
            center: vec![0.0; n],
            radius: feasible_radius,
        }
    } else {
        FeasibleSet::WholeSpace
    };
    Box::into_raw(Box::new(MdProx {
        inner: ProxSetup::euclidean_centered(feasible, center),
    }))
}

/// Entropy geometry over the probability simplex.
#[no_mangle]
pub extern "C" fn md_prox_entropy(n: usize) -> *mut MdProx {
    Box::into_raw(Box::new(MdProx {
        inner: ProxSetup::entropy(n),
    }))
}

/// The benchmark default for a problem handle: euclidean geometry centered
/// at the normalized 0.1-vector over the problem's own feasible set.
///
/// # Safety
/// `problem` must be a live handle from an `md_problem_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn md_prox_default(problem: *const MdProblem) -> *mut MdProx {
    if problem.is_null() {
        set_error("problem is null");
        return std::ptr::null_mut();
    }
    let problem = &(*problem).inner;
    let n = problem.dim();
    let x0 = vec![1.0 / (n as f64).sqrt(); n];
    Box::into_raw(Box::new(MdProx {
        inner: ProxSetup::euclidean_centered(problem.feasible().clone(), x0),
    }))
}

/// Frees a prox handle (null is ignored).
///
/// # Safety
/// `prox` must have come from an `md_prox_*` constructor and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn md_prox_free(prox: *mut MdProx) {
    if !prox.is_null() {
        drop(Box::from_raw(prox));
    }
}

fn fill_outputs(report: &RunReport, x_out: *mut f64, stats: *mut MdRunStats) {
    if !x_out.is_null() {
        unsafe {
            std::ptr::copy_nonoverlapping(report.output.as_ptr(), x_out, report.output.len());
        }
    }
    if !stats.is_null() {
        unsafe {
            *stats = MdRunStats {
                n_total: report.n_total,
                n_productive: report.n_productive,
                n_nonproductive: report.n_nonproductive,
                best_f: report.best_f,
                g_at_output: report.g_at_output,
                stop_reason: match report.stop_reason {
                    StopReason::ZeroGradient => 1,
                    _ => 0,
                },
                wall_time_ms: report.wall_time.as_secs_f64() * 1e3,
            };
        }
    }
}

/// Runs one of the solver loops to accuracy `eps` with divergence bound
/// `theta0_sq`. On success writes the output point into `x_out` (length =
/// problem dimension, may be null) and the summary into `stats` (may be
/// null).
///
/// # Safety
/// `problem` and `prox` must be live handles; `x_out`, when non-null, must
/// point to as many writable doubles as the problem dimension.
#[no_mangle]
pub unsafe extern "C" fn md_solve(
    problem: *const MdProblem,
    prox: *const MdProx,
    algorithm: MdAlgorithm,
    eps: f64,
    theta0_sq: f64,
    x_out: *mut f64,
    stats: *mut MdRunStats,
) -> MdStatus {
    if problem.is_null() || prox.is_null() {
        set_error("problem/prox handle is null");
        return MdStatus::NullArgument;
    }
    let problem = &(*problem).inner;
    let prox = &(*prox).inner;
    if problem.dim() != prox.dim() {
        set_error("problem and prox dimensions differ");
        return MdStatus::InvalidArgument;
    }
    if eps <= 0.0 || theta0_sq <= 0.0 || eps.is_nan() || theta0_sq.is_nan() {
        set_error("eps and theta0_sq must be positive");
        return MdStatus::InvalidArgument;
    }
    let config = SolverConfig::new(eps, theta0_sq);
    let run = catch_unwind(AssertUnwindSafe(|| match algorithm {
        MdAlgorithm::PriorAdaptive => solve_prior_adaptive(problem, prox, &config),
        MdAlgorithm::NewAdaptive => solve_new_adaptive(problem, prox, &config),
        MdAlgorithm::QuasiConvex => solve_quasiconvex(problem, prox, &config),
    }));
    match run {
        Ok(Ok(report)) => {
            fill_outputs(&report, x_out, stats);
            MdStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            MdStatus::SolverFailure
        }
        Err(_) => {
            set_error("panic inside the solver (oracle callback?)");
            MdStatus::Panic
        }
    }
}

/// Restart-accelerated solve for μ-strongly (quasi-)convex problems with the
/// linear accuracy translation `φ̂(ε) = ε/c_hat`. `quasiconvex_inner`
/// selects the quasi-convex inner loop. Writes the final point into `x_out`
/// (may be null) and the total inner iteration count into
/// `total_iterations` (may be null).
///
/// # Safety
/// Same handle and buffer requirements as [`md_solve`].
#[no_mangle]
pub unsafe extern "C" fn md_restart_solve(
    problem: *const MdProblem,
    prox: *const MdProx,
    eps: f64,
    mu: f64,
    r0_sq: f64,
    omega_sq: f64,
    c_hat: f64,
    quasiconvex_inner: bool,
    x_out: *mut f64,
    total_iterations: *mut usize,
) -> MdStatus {
    if problem.is_null() || prox.is_null() {
        set_error("problem/prox handle is null");
        return MdStatus::NullArgument;
    }
    let problem = &(*problem).inner;
    let prox = &(*prox).inner;
    if problem.dim() != prox.dim() {
        set_error("problem and prox dimensions differ");
        return MdStatus::InvalidArgument;
    }
    if c_hat <= 0.0 || c_hat.is_nan() {
        set_error("c_hat must be positive");
        return MdStatus::InvalidArgument;
    }
    let config = RestartConfig::new(eps, mu, r0_sq, omega_sq, TauData::Linear { c_hat })
        .with_inner(if quasiconvex_inner {
            InnerSolver::QuasiConvex
        } else {
            InnerSolver::NewAdaptive
        });
    let run = catch_unwind(AssertUnwindSafe(|| restart_solve(problem, prox, &config)));
    match run {
        Ok(Ok(report)) => {
            if !x_out.is_null() {
                std::ptr::copy_nonoverlapping(report.output.as_ptr(), x_out, report.output.len());
            }
            if !total_iterations.is_null() {
                *total_iterations = report.total_inner_iterations;
            }
            MdStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            MdStatus::SolverFailure
        }
        Err(_) => {
            set_error("panic inside the restart loop");
            MdStatus::Panic
        }
    }
}
