//! Solving a custom constrained problem end to end: define the oracles,
//! pick a geometry, run both solver loops, and certify the run against a
//! brute-force reference.
//!
//! The problem: minimize the distance to two anchors (their mean), subject
//! to staying in a ball that excludes the unconstrained optimum.

use mirror_descent::problems::{brute_force_optimum, fts_problem, BallConstraint, PointCloud};
use mirror_descent::prox::{FeasibleSet, ProxSetup};
use mirror_descent::solvers::{
    certify_run, solve_new_adaptive, solve_prior_adaptive, SolverConfig,
};

fn main() {
    let cloud = PointCloud::from_points(vec![vec![2.0, 0.0], vec![0.0, 2.0]]);
    let problem =
        fts_problem(&cloud).with_ball_constraint(BallConstraint::new(vec![0.0, 0.0], 0.5));

    // euclidean geometry, starting from the prox center (the origin here)
    let prox = ProxSetup::euclidean(2, FeasibleSet::WholeSpace);
    let eps = 0.01;
    let config = SolverConfig::new(eps, 2.0).with_trace();

    let report = solve_new_adaptive(&problem, &prox, &config).unwrap();
    println!(
        "normalized steps: {} iterations ({} productive), f(x̄) = {:.4}, g(x̄) = {:+.4}",
        report.n_total, report.n_productive, report.best_f, report.g_at_output
    );

    let prior = solve_prior_adaptive(&problem, &prox, &config).unwrap();
    println!(
        "adaptive stopping: {} iterations ({} productive), f(x̄) = {:.4}",
        prior.n_total, prior.n_productive, prior.best_f
    );

    // ground truth at desk scale, then machine-check the run
    let known = brute_force_optimum(&problem, &[-0.6, -0.6], &[0.6, 0.6], 1e-4).unwrap();
    println!(
        "reference: f* = {:.4} at ({:.3}, {:.3})",
        known.f_star, known.x_star[0], known.x_star[1]
    );
    let certificate = certify_run(&report, &prox, &known).unwrap();
    println!(
        "certificate: {} iterations checked, min v_f = {:.4e} ≤ ε = {eps}",
        certificate.iterations_checked, certificate.min_vf
    );
    assert!(report.best_f - known.f_star <= eps + 1e-4);
}
