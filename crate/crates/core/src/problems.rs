//! Benchmark problem generators: point-set geometric objectives, the
//! structured max-affine constraint system, and a brute-force optimum oracle
//! for desk-scale ground truth.

use crate::oracles::{ConstrainedProblem, ConvexClass, KnownSolution, Provenance};
use crate::rng::SplitMix64;
use crate::vecmath::{dist, nrm2};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("brute force supports dimension ≤ 3, got {0}")]
    DimensionTooLarge(usize),
    #[error("no feasible grid point in the scan box")]
    NoFeasiblePoint,
    #[error("problem is missing metadata `{0}` required here")]
    MissingMetadata(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A set of anchor points `A_1..A_r`, optionally with per-point radii.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Vec<f64>>,
    pub radii: Option<Vec<f64>>,
    pub seed: u64,
}

impl PointCloud {
    pub fn from_points(points: Vec<Vec<f64>>) -> Self {
        PointCloud {
            points,
            radii: None,
            seed: 0,
        }
    }

    /// `count` points with integer coordinates drawn uniformly from
    /// `[-10, 10]`, reproducible from `seed`.
    pub fn integer_cloud(dim: usize, count: usize, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let points = (0..count)
            .map(|_| (0..dim).map(|_| rng.range_i64(-10, 10) as f64).collect())
            .collect();
        PointCloud {
            points,
            radii: None,
            seed,
        }
    }

    /// `count` points with norms uniform in `[lo_norm, hi_norm]` and uniform
    /// random directions; every point carries the same radius.
    pub fn shell_cloud(
        dim: usize,
        count: usize,
        lo_norm: f64,
        hi_norm: f64,
        radius: f64,
        seed: u64,
    ) -> Self {
        let mut rng = SplitMix64::new(seed);
        let points: Vec<Vec<f64>> = (0..count)
            .map(|_| {
                let dir = rng.unit_vector(dim);
                let r = rng.range_f64(lo_norm, hi_norm);
                dir.iter().map(|c| c * r).collect()
            })
            .collect();
        PointCloud {
            points,
            radii: Some(vec![radius; count]),
            seed,
        }
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, |p| p.len())
    }

    /// Plain-text fixture format: one point per line, space-separated
    /// decimals. Radii and seed are not part of the format.
    pub fn to_text(&self) -> String {
        rows_to_text(&self.points)
    }

    pub fn from_text(text: &str) -> Result<Self, ProblemError> {
        Ok(PointCloud::from_points(rows_from_text(text)?))
    }
}

/// The structured constraint coefficient matrix: row 1 is all ones, rows 2–3
/// are `(1, k, k, …, k)`, and every later row `k` is
/// `(1, k−2, k−1, k, …, n+k−4)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintMatrix {
    pub rows: Vec<Vec<f64>>,
}

impl ConstraintMatrix {
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn to_text(&self) -> String {
        rows_to_text(&self.rows)
    }

    pub fn from_text(text: &str) -> Result<Self, ProblemError> {
        Ok(ConstraintMatrix {
            rows: rows_from_text(text)?,
        })
    }

    /// Largest euclidean row norm — the Lipschitz constant of the induced
    /// max-affine constraint w.r.t. `‖·‖₂`.
    pub fn max_row_norm(&self) -> f64 {
        self.rows.iter().map(|r| nrm2(r)).fold(0.0, f64::max)
    }
}

fn rows_to_text(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn rows_from_text(text: &str) -> Result<Vec<Vec<f64>>, ProblemError> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split_whitespace().map(|t| t.parse()).collect();
        let row = row.map_err(|e| ProblemError::Parse(format!("line {}: {e}", ln + 1)))?;
        if let Some(first) = rows.first() {
            let first: &Vec<f64> = first;
            if first.len() != row.len() {
                return Err(ProblemError::Parse(format!(
                    "line {}: expected {} fields, got {}",
                    ln + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ProblemError::Parse("no rows".into()));
    }
    Ok(rows)
}

/// Generates the `m × n` structured constraint matrix (`n ≥ m ≥ 4`).
pub fn gen_constraint_matrix(n: usize, m: usize) -> Result<ConstraintMatrix, ProblemError> {
    if m < 4 || n < m {
        return Err(ProblemError::InvalidParameter(format!(
            "constraint matrix needs n ≥ m ≥ 4, got n={n}, m={m}"
        )));
    }
    let mut rows = Vec::with_capacity(m);
    rows.push(vec![1.0; n]);
    for k in 2..=3usize {
        let mut row = vec![k as f64; n];
        row[0] = 1.0;
        rows.push(row);
    }
    for k in 4..=m {
        let mut row = Vec::with_capacity(n);
        row.push(1.0);
        for j in 2..=n {
            row.push((k + j - 4) as f64);
        }
        rows.push(row);
    }
    Ok(ConstraintMatrix { rows })
}

/// The constraint `g(x) = max_m (Σᵢ α_{mi}·φ(xᵢ) − 1)` with `φ = |·|`
/// (`use_abs`) or the identity. Ties between rows break to the lowest index.
#[derive(Debug, Clone)]
pub struct MaxAffineConstraint {
    matrix: Arc<ConstraintMatrix>,
    use_abs: bool,
}

impl MaxAffineConstraint {
    pub fn value(&self, x: &[f64]) -> f64 {
        self.row_values(x).0
    }

    fn row_values(&self, x: &[f64]) -> (f64, usize) {
        let mut best = f64::NEG_INFINITY;
        let mut arg = 0;
        for (m, row) in self.matrix.rows.iter().enumerate() {
            let mut s = 0.0;
            if self.use_abs {
                for (a, &c) in row.iter().zip(x) {
                    s += a * c.abs();
                }
            } else {
                for (a, &c) in row.iter().zip(x) {
                    s += a * c;
                }
            }
            if s - 1.0 > best {
                best = s - 1.0;
                arg = m;
            }
        }
        (best, arg)
    }

    /// Subgradient of the attaining row; in the `|·|` variant coordinates are
    /// signed by `sign(xᵢ)` with `sign(0) = 0` (a valid Clarke element).
    pub fn subgrad(&self, x: &[f64]) -> Vec<f64> {
        let (_, m) = self.row_values(x);
        let row = &self.matrix.rows[m];
        if self.use_abs {
            row.iter()
                .zip(x)
                .map(|(a, &c)| {
                    if c > 0.0 {
                        *a
                    } else if c < 0.0 {
                        -*a
                    } else {
                        0.0
                    }
                })
                .collect()
        } else {
            row.clone()
        }
    }

    /// Lipschitz constant w.r.t. `‖·‖₂`.
    pub fn lipschitz(&self) -> f64 {
        self.matrix.max_row_norm()
    }

    pub fn matrix(&self) -> &ConstraintMatrix {
        &self.matrix
    }
}

/// Wraps a matrix into the max-affine constraint oracle.
pub fn linear_constraints(matrix: ConstraintMatrix, use_abs: bool) -> MaxAffineConstraint {
    MaxAffineConstraint {
        matrix: Arc::new(matrix),
        use_abs,
    }
}

/// The constraint `g(x) = ‖x − center‖₂ − radius` (Lipschitz constant 1).
#[derive(Debug, Clone)]
pub struct BallConstraint {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl BallConstraint {
    pub fn new(center: Vec<f64>, radius: f64) -> Self {
        BallConstraint { center, radius }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        dist(x, &self.center) - self.radius
    }

    pub fn subgrad(&self, x: &[f64]) -> Vec<f64> {
        let d: Vec<f64> = x.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        let n = nrm2(&d);
        if n == 0.0 {
            vec![0.0; x.len()]
        } else {
            d.iter().map(|v| v / n).collect()
        }
    }
}

impl ConstrainedProblem {
    /// Attaches a [`MaxAffineConstraint`] as the functional constraint.
    pub fn with_max_affine_constraint(self, c: MaxAffineConstraint) -> Self {
        let m_g = c.lipschitz();
        let cv = c.clone();
        self.with_constraint(move |x| cv.value(x), move |x| c.subgrad(x), m_g)
    }

    /// Attaches a [`BallConstraint`] (`M_g = 1`).
    pub fn with_ball_constraint(self, c: BallConstraint) -> Self {
        let cv = c.clone();
        self.with_constraint(move |x| cv.value(x), move |x| c.subgrad(x), 1.0)
    }
}

/// Mean-of-distances objective `f(x) = (1/r) Σ_k ‖x − A_k‖₂` (`M_f = 1`),
/// with the trivial constraint; attach one separately for the full setup.
pub fn fts_problem(cloud: &PointCloud) -> ConstrainedProblem {
    let points = cloud.points.clone();
    let points2 = cloud.points.clone();
    let dim = cloud.dim();
    let r = points.len() as f64;
    ConstrainedProblem::new(
        dim,
        move |x| points.iter().map(|a| dist(x, a)).sum::<f64>() / r,
        move |x| {
            let mut grad = vec![0.0; x.len()];
            for a in &points2 {
                let n = dist(x, a);
                if n > 0.0 {
                    for (gi, (xi, ai)) in grad.iter_mut().zip(x.iter().zip(a)) {
                        *gi += (xi - ai) / (n * r);
                    }
                }
            }
            grad
        },
    )
    .with_m_f(1.0)
    .with_classes(ConvexClass::Convex, ConvexClass::Convex)
}

/// Smallest-covering-ball objective `f(x) = max_k ‖x − A_k‖₂` (`M_f = 1`).
/// The subgradient comes from the first attaining point in index order.
pub fn covering_ball_problem(cloud: &PointCloud) -> ConstrainedProblem {
    let points = cloud.points.clone();
    let points2 = cloud.points.clone();
    let dim = cloud.dim();
    ConstrainedProblem::new(
        dim,
        move |x| points.iter().map(|a| dist(x, a)).fold(0.0, f64::max),
        move |x| {
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0;
            for (k, a) in points2.iter().enumerate() {
                let d = dist(x, a);
                if d > best {
                    best = d;
                    arg = k;
                }
            }
            let a = &points2[arg];
            if best == 0.0 {
                vec![0.0; x.len()]
            } else {
                x.iter().zip(a).map(|(xi, ai)| (xi - ai) / best).collect()
            }
        },
    )
    .with_m_f(1.0)
    .with_classes(ConvexClass::Convex, ConvexClass::Convex)
}

/// Concave square-root objective `f(x) = (1/n) Σ √xᵢ` over
/// `{x ≥ 0, ‖x‖₂ ≤ 1}`, Hölder-continuous with `ν = 1/2`, `M_ν = 1`.
///
/// Gradient components `1/(2n√xᵢ)` are clamped for coordinates below
/// `1e−12` (the derivative there is taken as `1/(2n·10⁻⁶)`), keeping steps
/// finite; the normalized step `h = ε/‖∇f‖_*` is scale-invariant in the
/// gradient magnitude anyway.
///
/// # Panics
/// Evaluating the objective outside the nonnegative orthant.
pub fn holder_sqrt_problem(n: usize) -> ConstrainedProblem {
    let nf = n as f64;
    ConstrainedProblem::new(
        n,
        move |x| {
            let mut s = 0.0;
            for &c in x {
                assert!(
                    c >= 0.0,
                    "sqrt objective evaluated at a negative coordinate"
                );
                s += c.sqrt();
            }
            s / nf
        },
        move |x| {
            x.iter()
                .map(|&c| {
                    if c < 1e-12 {
                        1.0 / (2.0 * nf * 1e-6)
                    } else {
                        1.0 / (2.0 * nf * c.sqrt())
                    }
                })
                .collect()
        },
    )
    .with_holder(0.5, 1.0)
    .with_feasible(crate::prox::FeasibleSet::NonnegBall { radius: 1.0 })
    .with_classes(ConvexClass::QuasiConvex, ConvexClass::Convex)
}

/// Quasi-convex covering objective `f(x) = max_k d(x, A_k)` with the
/// piecewise distance
///
/// ```text
/// d(x, A_k) = ‖x−A_k‖ + (ρ−1)·r_k   if ‖x−A_k‖ > r_k
///           = ρ‖x−A_k‖              otherwise
/// ```
///
/// (`M_f = ρ`). The direction oracle returns the Clarke element of the first
/// attaining piece: the unit vector from `A_k` scaled by 1 (outside) or `ρ`
/// (inside); on the boundary `‖x−A_k‖ = r_k` the outside element is used.
/// At `x = A_k` the direction is the zero vector, which the solvers treat as
/// a zero-gradient stop (the point is the center of the attaining ball).
pub fn quasiconvex_cover_problem(cloud: &PointCloud, rho: f64) -> ConstrainedProblem {
    assert!(rho > 1.0, "rho must exceed 1");
    let radii = cloud
        .radii
        .clone()
        .expect("quasi-convex cover needs per-point radii");
    assert!(radii.iter().all(|&r| r > 0.0), "radii must be positive");
    let points = cloud.points.clone();
    let dim = cloud.dim();
    let piece = move |x: &[f64], a: &[f64], rk: f64| -> f64 {
        let d = dist(x, a);
        if d > rk {
            d + (rho - 1.0) * rk
        } else {
            rho * d
        }
    };
    let points2 = points.clone();
    let radii2 = radii.clone();
    let pc = piece;
    ConstrainedProblem::new(
        dim,
        move |x| {
            points
                .iter()
                .zip(&radii)
                .map(|(a, &rk)| pc(x, a, rk))
                .fold(f64::NEG_INFINITY, f64::max)
        },
        move |x| {
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0;
            for (k, (a, &rk)) in points2.iter().zip(&radii2).enumerate() {
                let v = piece(x, a, rk);
                if v > best {
                    best = v;
                    arg = k;
                }
            }
            let a = &points2[arg];
            let rk = radii2[arg];
            let d = dist(x, a);
            if d == 0.0 {
                return vec![0.0; x.len()];
            }
            let scale = if d >= rk { 1.0 } else { rho };
            x.iter()
                .zip(a)
                .map(|(xi, ai)| scale * (xi - ai) / d)
                .collect()
        },
    )
    .with_m_f(rho)
    .with_classes(ConvexClass::QuasiConvex, ConvexClass::Convex)
}

/// Exhaustive feasible grid scan over `[lo, hi]` followed by local
/// refinement down to `resolution`. Returns the best point with a certified
/// objective gap of `M_f · resolution · √n` (valid for the quasi-convex
/// objectives generated by this module; the coarse pass localizes the basin,
/// refinement sharpens it). Ties break to the lexicographically smallest
/// grid point via strict-improvement scanning in lexicographic order.
pub fn brute_force_optimum(
    problem: &ConstrainedProblem,
    lo: &[f64],
    hi: &[f64],
    resolution: f64,
) -> Result<KnownSolution, ProblemError> {
    let dim = problem.dim();
    if dim > 3 {
        return Err(ProblemError::DimensionTooLarge(dim));
    }
    if lo.len() != dim || hi.len() != dim || lo.iter().zip(hi).any(|(a, b)| a >= b) {
        return Err(ProblemError::InvalidParameter("bad scan box".into()));
    }
    if resolution <= 0.0 || resolution.is_nan() {
        return Err(ProblemError::InvalidParameter(
            "resolution must be positive".into(),
        ));
    }
    let m_f = problem
        .smoothness()
        .m_f
        .or(problem.smoothness().holder.map(|h| h.m_nu))
        .ok_or(ProblemError::MissingMetadata("m_f"))?;

    let span = lo.iter().zip(hi).map(|(a, b)| b - a).fold(0.0f64, f64::max);
    let mut h = (span / 128.0).max(resolution);
    let mut box_lo = lo.to_vec();
    let mut box_hi = hi.to_vec();
    let mut best: Option<(f64, Vec<f64>)> = None;

    loop {
        scan_box(problem, &box_lo, &box_hi, h, &mut best);
        if h <= resolution {
            break;
        }
        if let Some((_, ref x)) = best {
            // shrink around the incumbent; keep the global box as a bound
            let next_h = (h / 8.0).max(resolution);
            for i in 0..dim {
                box_lo[i] = (x[i] - 2.0 * h).max(lo[i]);
                box_hi[i] = (x[i] + 2.0 * h).min(hi[i]);
            }
            h = next_h;
        } else {
            // nothing feasible at this resolution: refine globally once
            let next_h = h / 8.0;
            if next_h < resolution {
                return Err(ProblemError::NoFeasiblePoint);
            }
            h = next_h;
        }
    }

    let (f_star, x_star) = best.ok_or(ProblemError::NoFeasiblePoint)?;
    Ok(KnownSolution {
        x_star,
        f_star,
        provenance: Provenance::BruteForce {
            resolution,
            certified_gap: m_f * resolution * (dim as f64).sqrt(),
        },
    })
}

fn scan_box(
    problem: &ConstrainedProblem,
    lo: &[f64],
    hi: &[f64],
    h: f64,
    best: &mut Option<(f64, Vec<f64>)>,
) {
    let dim = lo.len();
    let counts: Vec<usize> = lo
        .iter()
        .zip(hi)
        .map(|(a, b)| ((b - a) / h).floor() as usize + 1)
        .collect();
    let mut idx = vec![0usize; dim];
    let mut x = vec![0.0; dim];
    loop {
        for i in 0..dim {
            x[i] = (lo[i] + idx[i] as f64 * h).min(hi[i]);
        }
        if problem.feasible().contains(&x) && problem.g(&x) <= 0.0 {
            let v = problem.f(&x);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                *best = Some((v, x.clone()));
            }
        }
        // lexicographic advance
        let mut i = dim;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < counts[i] {
                break;
            }
            idx[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::check_subgradient;
    use crate::tolerances;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn matrix_pattern_at_n1000() {
        let m = gen_constraint_matrix(1000, 20).unwrap();
        assert_eq!(m.rows[0], vec![1.0; 1000]);
        // row 4 is (1, 2, 3, ..., 1000)
        let row4: Vec<f64> = (1..=1000).map(|v| v as f64).collect();
        assert_eq!(m.rows[3], row4);
        // row 20 is (1, 18, 19, ..., 1016)
        assert_eq!(m.rows[19][0], 1.0);
        assert_eq!(m.rows[19][1], 18.0);
        assert_eq!(m.rows[19][999], 1016.0);
    }

    #[test]
    fn matrix_pattern_small() {
        let m = gen_constraint_matrix(7, 4).unwrap();
        assert_eq!(m.rows[1], vec![1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0]);
        assert_eq!(m.rows[2], vec![1.0, 3.0, 3.0, 3.0, 3.0, 3.0, 3.0]);
        assert_eq!(m.rows[3], vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
    }

    #[test]
    fn matrix_rejects_bad_sizes() {
        assert!(gen_constraint_matrix(3, 4).is_err());
        assert!(gen_constraint_matrix(10, 3).is_err());
    }

    #[test]
    fn matrix_is_deterministic() {
        assert_eq!(
            gen_constraint_matrix(50, 20).unwrap(),
            gen_constraint_matrix(50, 20).unwrap()
        );
    }

    #[test]
    fn max_affine_at_origin() {
        let c = linear_constraints(gen_constraint_matrix(7, 4).unwrap(), true);
        assert_eq!(c.value(&[0.0; 7]), -1.0);
    }

    #[test]
    fn max_affine_attaining_row() {
        let m = ConstraintMatrix {
            rows: vec![vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 2.0]],
        };
        let c = linear_constraints(m, true);
        let x = [0.5, 0.5, 0.5];
        assert_close(c.value(&x), 1.5, 1e-15);
        assert_eq!(c.subgrad(&x), vec![1.0, 2.0, 2.0]);
    }

    #[test]
    fn max_affine_tie_breaks_low() {
        let m = ConstraintMatrix {
            rows: vec![vec![1.0, 0.0], vec![1.0, 0.0]],
        };
        let c = linear_constraints(m.clone(), false);
        // both rows tie; the first one's gradient wins
        assert_eq!(c.subgrad(&[2.0, 5.0]), m.rows[0]);
    }

    #[test]
    fn fts_values() {
        let cloud = PointCloud::from_points(vec![vec![0.0, 0.0]]);
        let p = fts_problem(&cloud);
        assert_close(p.f(&[3.0, 4.0]), 5.0, 1e-15);
        let g = p.f_subgrad(&[3.0, 4.0]);
        assert_close(g[0], 0.6, 1e-15);
        assert_close(g[1], 0.8, 1e-15);
        // spike: zero contribution at the anchor itself
        assert_eq!(p.f(&[0.0, 0.0]), 0.0);
        assert_eq!(p.f_subgrad(&[0.0, 0.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn fts_symmetric_cancellation() {
        let cloud = PointCloud::from_points(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
        let p = fts_problem(&cloud);
        assert_close(p.f(&[0.0, 0.0]), 1.0, 1e-15);
        assert_eq!(p.f_subgrad(&[0.0, 0.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn covering_ball_values() {
        let cloud = PointCloud::from_points(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
        let p = covering_ball_problem(&cloud);
        assert_close(p.f(&[0.0, 0.0]), 1.0, 1e-15);
        assert_close(p.f(&[2.0, 0.0]), 3.0, 1e-15);
        assert_eq!(p.f_subgrad(&[2.0, 0.0]), vec![1.0, 0.0]);
        let single = covering_ball_problem(&PointCloud::from_points(vec![vec![0.5, 0.5]]));
        assert_eq!(single.f(&[0.5, 0.5]), 0.0);
        assert_eq!(single.f_subgrad(&[0.5, 0.5]), vec![0.0, 0.0]);
    }

    #[test]
    fn holder_sqrt_values() {
        let p1 = holder_sqrt_problem(1);
        assert_close(p1.f(&[0.25]), 0.5, 1e-15);
        assert_close(p1.f_subgrad(&[0.25])[0], 1.0, 1e-15);
        assert_eq!(p1.f(&[0.0]), 0.0);
        let p4 = holder_sqrt_problem(4);
        assert_close(p4.f(&[0.25; 4]), 0.5, 1e-15);
    }

    #[test]
    #[should_panic(expected = "negative coordinate")]
    fn holder_sqrt_rejects_negative() {
        let p = holder_sqrt_problem(2);
        let _ = p.f(&[-0.1, 0.5]);
    }

    #[test]
    fn qc_cover_branch_values() {
        let cloud = PointCloud {
            points: vec![vec![0.0, 0.0]],
            radii: Some(vec![1.0]),
            seed: 0,
        };
        let p = quasiconvex_cover_problem(&cloud, 2.0);
        // inside branch
        assert_close(p.f(&[0.5, 0.0]), 1.0, 1e-15);
        assert_eq!(p.direction_f(&[0.5, 0.0]), vec![2.0, 0.0]);
        // outside branch
        assert_close(p.f(&[2.0, 0.0]), 3.0, 1e-15);
        assert_eq!(p.direction_f(&[2.0, 0.0]), vec![1.0, 0.0]);
        // boundary continuity and outside-element choice
        assert_close(p.f(&[1.0, 0.0]), 2.0, 1e-15);
        assert_eq!(p.direction_f(&[1.0, 0.0]), vec![1.0, 0.0]);
        // center of the attaining ball: zero direction
        assert_eq!(p.direction_f(&[0.0, 0.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn qc_cover_boundary_continuity_sampled() {
        let cloud = PointCloud::shell_cloud(2, 5, 1.0, 2.0, 0.3, 99);
        let p = quasiconvex_cover_problem(&cloud, 2.0);
        for a in &cloud.points {
            // approach the k-th boundary along a fixed direction
            let dir = [0.6, 0.8];
            let inside: Vec<f64> = a
                .iter()
                .zip(dir)
                .map(|(c, d)| c + d * (0.3 - 1e-13))
                .collect();
            let outside: Vec<f64> = a
                .iter()
                .zip(dir)
                .map(|(c, d)| c + d * (0.3 + 1e-13))
                .collect();
            assert!((p.f(&inside) - p.f(&outside)).abs() < 1e-12);
        }
    }

    #[test]
    fn generated_problems_pass_subgradient_checks() {
        let mut rng = SplitMix64::new(31);
        let cloud = PointCloud::integer_cloud(2, 5, 7);
        let problems = [
            fts_problem(&cloud),
            covering_ball_problem(&cloud),
            quasiconvex_cover_problem(&PointCloud::shell_cloud(2, 5, 1.0, 2.0, 0.2, 7), 2.0),
        ];
        for p in &problems {
            for _ in 0..100 {
                let x: Vec<f64> = (0..2).map(|_| rng.range_f64(-0.9, 0.9)).collect();
                let rep = check_subgradient(p, &x, 100);
                assert!(rep.passed, "violation {}", rep.worst_violation);
            }
        }
    }

    #[test]
    fn lipschitz_metadata_is_consistent() {
        let mut rng = SplitMix64::new(53);
        let cloud = PointCloud::integer_cloud(2, 4, 11);
        let fts = fts_problem(&cloud);
        let cover = covering_ball_problem(&cloud);
        let qc = quasiconvex_cover_problem(&PointCloud::shell_cloud(2, 4, 1.0, 2.0, 0.2, 11), 2.0);
        let holder = holder_sqrt_problem(3);
        for _ in 0..2000 {
            let x: Vec<f64> = (0..2).map(|_| rng.range_f64(-3.0, 3.0)).collect();
            let y: Vec<f64> = (0..2).map(|_| rng.range_f64(-3.0, 3.0)).collect();
            let d = dist(&x, &y);
            for p in [&fts, &cover, &qc] {
                let m = p.smoothness().m_f.unwrap();
                assert!((p.f(&x) - p.f(&y)).abs() <= m * d + tolerances::SUBGRADIENT);
            }
            let hx: Vec<f64> = x.iter().take(2).map(|c| c.abs() / 3.0).collect();
            let hy: Vec<f64> = y.iter().take(2).map(|c| c.abs() / 3.0).collect();
            let hx = [hx[0], hx[1], 0.1];
            let hy = [hy[0], hy[1], 0.3];
            let hd = dist(&hx, &hy);
            let holder_data = holder.smoothness().holder.unwrap();
            assert!(
                (holder.f(&hx) - holder.f(&hy)).abs()
                    <= holder_data.m_nu * hd.powf(holder_data.nu) + tolerances::SUBGRADIENT
            );
        }
    }

    #[test]
    fn constraint_lipschitz_and_dual_norm_bound() {
        let mut rng = SplitMix64::new(77);
        let c = linear_constraints(gen_constraint_matrix(6, 4).unwrap(), true);
        let m_g = c.lipschitz();
        for _ in 0..2000 {
            let x: Vec<f64> = (0..6).map(|_| rng.range_f64(-1.0, 1.0)).collect();
            let y: Vec<f64> = (0..6).map(|_| rng.range_f64(-1.0, 1.0)).collect();
            assert!((c.value(&x) - c.value(&y)).abs() <= m_g * dist(&x, &y) + 1e-7);
            assert!(nrm2(&c.subgrad(&x)) <= m_g + 1e-7);
        }
    }

    #[test]
    fn brute_force_1d_analytic() {
        let p = ConstrainedProblem::new(
            1,
            |x| (x[0] - 0.5).abs(),
            |x| vec![if x[0] >= 0.5 { 1.0 } else { -1.0 }],
        )
        .with_m_f(1.0)
        .with_constraint(|x| x[0] - 1.0, |_| vec![1.0], 1.0);
        let sol = brute_force_optimum(&p, &[-2.0], &[2.0], 1e-4).unwrap();
        assert!((sol.x_star[0] - 0.5).abs() < 1e-3);
        assert!(sol.f_star < 1e-3);
    }

    #[test]
    fn brute_force_2d_fts_segment() {
        let cloud = PointCloud::from_points(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
        let p = fts_problem(&cloud);
        let sol = brute_force_optimum(&p, &[-2.0, -2.0], &[2.0, 2.0], 1e-3).unwrap();
        assert!((sol.f_star - 1.0).abs() < 1e-4);
    }

    #[test]
    fn brute_force_2d_covering() {
        let cloud = PointCloud::from_points(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
        let p = covering_ball_problem(&cloud);
        let sol = brute_force_optimum(&p, &[-2.0, -2.0], &[2.0, 2.0], 1e-3).unwrap();
        assert!((sol.f_star - 1.0).abs() < 1e-3);
        assert!(sol.x_star[0].abs() < 1e-2);
    }

    #[test]
    fn brute_force_rejects_high_dim() {
        let p = holder_sqrt_problem(4);
        assert!(matches!(
            brute_force_optimum(&p, &[0.0; 4], &[1.0; 4], 0.1),
            Err(ProblemError::DimensionTooLarge(4))
        ));
    }

    #[test]
    fn brute_force_reports_infeasible() {
        let p = ConstrainedProblem::new(1, |x| x[0], |_| vec![1.0])
            .with_m_f(1.0)
            .with_constraint(|_| 1.0, |_| vec![0.0], 0.0);
        assert!(matches!(
            brute_force_optimum(&p, &[0.0], &[1.0], 0.01),
            Err(ProblemError::NoFeasiblePoint)
        ));
    }

    #[test]
    fn cloud_generation_is_reproducible() {
        let a = PointCloud::integer_cloud(5, 3, 42);
        let b = PointCloud::integer_cloud(5, 3, 42);
        assert_eq!(a, b);
        assert!(a
            .points
            .iter()
            .flatten()
            .all(|&c| (-10.0..=10.0).contains(&c) && c.fract() == 0.0));
        let s = PointCloud::shell_cloud(4, 6, 1.0, 2.0, 0.2, 9);
        for p in &s.points {
            let n = nrm2(p);
            assert!((1.0..=2.0).contains(&n));
        }
    }

    #[test]
    fn text_round_trip() {
        let m = gen_constraint_matrix(6, 4).unwrap();
        let back = ConstraintMatrix::from_text(&m.to_text()).unwrap();
        assert_eq!(m, back);
        let cloud = PointCloud::integer_cloud(3, 4, 5);
        let back = PointCloud::from_text(&cloud.to_text()).unwrap();
        assert_eq!(cloud.points, back.points);
    }
}
