//! Distance-generating functions, Bregman divergences and the mirror step.
//!
//! A [`ProxSetup`] fixes the geometry of the method: a 1-strongly convex
//! distance-generating function `d` over a simple feasible set `Q`, the norm
//! it is strongly convex with respect to, and the induced dual norm for
//! subgradients. Two setups are provided:
//!
//! - **euclidean**: `d(x) = ½‖(x − c)/s‖₂²`. With scale `s` the setup is
//!   1-strongly convex w.r.t. `‖·‖₂/s`, whose dual norm is `s‖·‖₂`. The
//!   mirror step reduces to a euclidean projection of `x − s²p` onto `Q`.
//! - **entropy**: `d(x) = Σᵢ xᵢ ln xᵢ + ln n` over the probability simplex,
//!   1-strongly convex w.r.t. `‖·‖₁` (dual norm `‖·‖∞`). The shift by
//!   `ln n` makes `d ≥ 0` on the simplex, so `Θ₀² = ln n` always bounds
//!   `d(x*)`. The mirror step is the normalized multiplicative update.

use crate::tolerances;
use crate::vecmath::{dot, norm1, norm_inf, nrm2, sub};
use thiserror::Error;

/// A point of the primal space, as a dense coordinate vector.
pub type Point = Vec<f64>;

/// An element of the dual space (a subgradient or step direction).
pub type DualVector = Vec<f64>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ProxError {
    #[error("coordinate {index} is {value}, outside the domain of the entropy d.g.f.")]
    NegativeCoordinate { index: usize, value: f64 },
    #[error("coordinate {index} is zero; the entropy gradient is undefined there")]
    ZeroCoordinate { index: usize },
    #[error("unsupported setup: {0}")]
    Unsupported(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Simple closed convex sets with exact projections.
#[derive(Debug, Clone, PartialEq)]
pub enum FeasibleSet {
    WholeSpace,
    /// Euclidean ball `{x : ‖x − center‖₂ ≤ radius}`.
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    /// `{x : x ≥ 0, ‖x‖₂ ≤ radius}`. Projection is clamp-to-nonnegative
    /// followed by radial scaling, which is exact for this set.
    NonnegBall {
        radius: f64,
    },
    /// Probability simplex `{x : x ≥ 0, Σxᵢ = 1}`.
    Simplex,
    /// Coordinate box `{x : lo ≤ x ≤ hi}`.
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
}

impl FeasibleSet {
    /// Unit euclidean ball centered at the origin.
    pub fn unit_ball(dim: usize) -> Self {
        FeasibleSet::Ball {
            center: vec![0.0; dim],
            radius: 1.0,
        }
    }

    /// Membership test up to `tolerances::FEASIBILITY`.
    pub fn contains(&self, x: &[f64]) -> bool {
        let tol = tolerances::FEASIBILITY;
        match self {
            FeasibleSet::WholeSpace => true,
            FeasibleSet::Ball { center, radius } => crate::vecmath::dist(x, center) <= radius + tol,
            FeasibleSet::NonnegBall { radius } => {
                x.iter().all(|&c| c >= -tol) && nrm2(x) <= radius + tol
            }
            FeasibleSet::Simplex => {
                x.iter().all(|&c| c >= -tol) && (x.iter().sum::<f64>() - 1.0).abs() <= tol
            }
            FeasibleSet::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(&c, (&l, &h))| c >= l - tol && c <= h + tol),
        }
    }

    /// Exact euclidean projection onto the set.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        match self {
            FeasibleSet::WholeSpace => x.to_vec(),
            FeasibleSet::Ball { center, radius } => {
                let d = sub(x, center);
                let n = nrm2(&d);
                if n <= *radius {
                    x.to_vec()
                } else {
                    let s = radius / n;
                    center.iter().zip(&d).map(|(c, v)| c + s * v).collect()
                }
            }
            FeasibleSet::NonnegBall { radius } => {
                let mut z: Vec<f64> = x.iter().map(|&c| c.max(0.0)).collect();
                let n = nrm2(&z);
                if n > *radius {
                    let s = radius / n;
                    for c in &mut z {
                        *c *= s;
                    }
                }
                z
            }
            FeasibleSet::Simplex => project_simplex(x),
            FeasibleSet::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&c, (&l, &h))| c.clamp(l, h))
                .collect(),
        }
    }
}

/// Euclidean projection onto the probability simplex (sort-based).
fn project_simplex(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut u = x.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cum += uj;
        let t = (cum - 1.0) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        } else {
            break;
        }
    }
    let _ = n;
    x.iter().map(|&c| (c - theta).max(0.0)).collect()
}

#[derive(Debug, Clone, PartialEq)]
enum DgfKind {
    /// `d(x) = ½‖(x − center)/scale‖₂²`.
    Euclidean { center: Vec<f64>, scale: f64 },
    /// `d(x) = Σ xᵢ ln xᵢ + ln n` over the simplex.
    Entropy,
}

/// A distance-generating function over a feasible set.
#[derive(Debug, Clone, PartialEq)]
pub struct ProxSetup {
    kind: DgfKind,
    feasible: FeasibleSet,
    dim: usize,
}

impl ProxSetup {
    /// Euclidean setup `d(x) = ½‖x‖₂²` over `feasible`.
    pub fn euclidean(dim: usize, feasible: FeasibleSet) -> Self {
        ProxSetup {
            kind: DgfKind::Euclidean {
                center: vec![0.0; dim],
                scale: 1.0,
            },
            feasible,
            dim,
        }
    }

    /// Euclidean setup recentered at `center`: `d(x) = ½‖x − center‖₂²`.
    ///
    /// Used when an experiment overrides the starting point `x⁰`: with the
    /// d.g.f. recentered there, `argmin_Q d = proj_Q(x⁰)` and the `Θ₀`
    /// contract reads `V(x⁰, x*) ≤ Θ₀²`.
    pub fn euclidean_centered(feasible: FeasibleSet, center: Vec<f64>) -> Self {
        let dim = center.len();
        ProxSetup {
            kind: DgfKind::Euclidean { center, scale: 1.0 },
            feasible,
            dim,
        }
    }

    /// Euclidean setup `d(x) = ½‖(x − center)/scale‖₂²`, 1-strongly convex
    /// w.r.t. `‖·‖₂/scale`. This is the rescaled geometry used by restarts.
    pub fn euclidean_scaled(feasible: FeasibleSet, center: Vec<f64>, scale: f64) -> Self {
        assert!(scale > 0.0, "scale must be positive");
        let dim = center.len();
        ProxSetup {
            kind: DgfKind::Euclidean { center, scale },
            feasible,
            dim,
        }
    }

    /// Entropy setup over the probability simplex.
    pub fn entropy(dim: usize) -> Self {
        ProxSetup {
            kind: DgfKind::Entropy,
            feasible: FeasibleSet::Simplex,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn feasible(&self) -> &FeasibleSet {
        &self.feasible
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, DgfKind::Euclidean { .. })
    }

    /// The scale `s` of a euclidean setup (1 for entropy, where it is unused).
    pub fn scale(&self) -> f64 {
        match &self.kind {
            DgfKind::Euclidean { scale, .. } => *scale,
            DgfKind::Entropy => 1.0,
        }
    }

    /// The center of a euclidean d.g.f. (`None` for entropy).
    pub fn dgf_center(&self) -> Option<&[f64]> {
        match &self.kind {
            DgfKind::Euclidean { center, .. } => Some(center),
            DgfKind::Entropy => None,
        }
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), ProxError> {
        if x.len() != self.dim {
            return Err(ProxError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Value of the d.g.f. at `x`.
    ///
    /// Entropy uses the convention `0·ln 0 = 0`; negative coordinates are a
    /// domain error.
    pub fn dgf_value(&self, x: &[f64]) -> Result<f64, ProxError> {
        self.check_dim(x)?;
        match &self.kind {
            DgfKind::Euclidean { center, scale } => {
                let inv = 1.0 / scale;
                Ok(0.5
                    * x.iter()
                        .zip(center)
                        .map(|(a, c)| ((a - c) * inv).powi(2))
                        .sum::<f64>())
            }
            DgfKind::Entropy => {
                let mut s = 0.0;
                for (i, &c) in x.iter().enumerate() {
                    if c < 0.0 {
                        return Err(ProxError::NegativeCoordinate { index: i, value: c });
                    }
                    if c > 0.0 {
                        s += c * c.ln();
                    }
                }
                Ok(s + (self.dim as f64).ln())
            }
        }
    }

    /// Gradient of the d.g.f. at `x` (entropy requires `x > 0`).
    pub fn dgf_grad(&self, x: &[f64]) -> Result<Vec<f64>, ProxError> {
        self.check_dim(x)?;
        match &self.kind {
            DgfKind::Euclidean { center, scale } => {
                let inv = 1.0 / (scale * scale);
                Ok(x.iter().zip(center).map(|(a, c)| (a - c) * inv).collect())
            }
            DgfKind::Entropy => {
                for (i, &c) in x.iter().enumerate() {
                    if c < 0.0 {
                        return Err(ProxError::NegativeCoordinate { index: i, value: c });
                    }
                    if c == 0.0 {
                        return Err(ProxError::ZeroCoordinate { index: i });
                    }
                }
                Ok(x.iter().map(|&c| 1.0 + c.ln()).collect())
            }
        }
    }

    /// Bregman divergence `V(x, y) = d(y) − d(x) − ⟨∇d(x), y − x⟩`.
    ///
    /// Nonnegative by convexity of `d`; requires `∇d(x)` to exist (entropy:
    /// `x` strictly positive).
    pub fn bregman(&self, x: &[f64], y: &[f64]) -> Result<f64, ProxError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        match &self.kind {
            DgfKind::Euclidean { scale, .. } => {
                // Quadratic d: the divergence is ½‖y − x‖²/s² regardless of center.
                let inv = 1.0 / (scale * scale);
                Ok(0.5 * inv * x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
            }
            DgfKind::Entropy => {
                // Generalized KL: Σ yᵢ ln(yᵢ/xᵢ) − yᵢ + xᵢ (with 0·ln 0 = 0).
                let mut s = 0.0;
                for (i, (&a, &b)) in x.iter().zip(y).enumerate() {
                    if a < 0.0 {
                        return Err(ProxError::NegativeCoordinate { index: i, value: a });
                    }
                    if a == 0.0 {
                        return Err(ProxError::ZeroCoordinate { index: i });
                    }
                    if b < 0.0 {
                        return Err(ProxError::NegativeCoordinate { index: i, value: b });
                    }
                    if b > 0.0 {
                        s += b * (b / a).ln() - b + a;
                    } else {
                        s += a;
                    }
                }
                Ok(s)
            }
        }
    }

    /// The mirror step `argmin_{u ∈ Q} { ⟨p, u⟩ + V(x, u) }`.
    ///
    /// `p` is the already-scaled step vector `h·∇`. Euclidean setups project
    /// `x − s²p` onto `Q`; the entropy setup applies the multiplicative
    /// update `uᵢ ∝ xᵢ e^{−pᵢ}` on the simplex, flooring coordinates at
    /// `tolerances::ENTROPY_FLOOR` to keep later gradients finite.
    pub fn mirror_step(&self, x: &[f64], p: &[f64]) -> Result<Vec<f64>, ProxError> {
        self.check_dim(x)?;
        self.check_dim(p)?;
        match &self.kind {
            DgfKind::Euclidean { scale, .. } => {
                let s2 = scale * scale;
                let target: Vec<f64> = x.iter().zip(p).map(|(a, b)| a - s2 * b).collect();
                Ok(self.feasible.project(&target))
            }
            DgfKind::Entropy => {
                if self.feasible != FeasibleSet::Simplex {
                    return Err(ProxError::Unsupported(
                        "the entropy mirror step is only available over the simplex",
                    ));
                }
                for (i, &c) in x.iter().enumerate() {
                    if c < 0.0 {
                        return Err(ProxError::NegativeCoordinate { index: i, value: c });
                    }
                    if c == 0.0 {
                        return Err(ProxError::ZeroCoordinate { index: i });
                    }
                }
                // log-space for stability: uᵢ ∝ exp(ln xᵢ − pᵢ)
                let w: Vec<f64> = x.iter().zip(p).map(|(&a, &b)| a.ln() - b).collect();
                let m = w.iter().fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
                let mut z: Vec<f64> = w.iter().map(|&v| (v - m).exp()).collect();
                let total: f64 = z.iter().sum();
                for c in &mut z {
                    *c = (*c / total).max(tolerances::ENTROPY_FLOOR);
                }
                Ok(z)
            }
        }
    }

    /// Dual norm of the setup: `s‖·‖₂` for euclidean with scale `s`
    /// (dual to `‖·‖₂/s`), `‖·‖∞` for entropy (dual to `‖·‖₁`).
    pub fn dual_norm(&self, p: &[f64]) -> f64 {
        match &self.kind {
            DgfKind::Euclidean { scale, .. } => scale * nrm2(p),
            DgfKind::Entropy => norm_inf(p),
        }
    }

    /// Primal norm the setup is 1-strongly convex with respect to.
    pub fn primal_norm(&self, x: &[f64]) -> f64 {
        match &self.kind {
            DgfKind::Euclidean { scale, .. } => nrm2(x) / scale,
            DgfKind::Entropy => norm1(x),
        }
    }

    /// `argmin_{x ∈ Q} d(x)` — the canonical starting point of the solvers.
    pub fn prox_center(&self) -> Vec<f64> {
        match &self.kind {
            DgfKind::Euclidean { center, .. } => self.feasible.project(center),
            DgfKind::Entropy => vec![1.0 / self.dim as f64; self.dim],
        }
    }

    /// First-order optimality residual of a mirror-step output `z`:
    /// `min_u ⟨p + ∇d(z) − ∇d(x), u − z⟩` over the sampled feasible `u`.
    /// Nonnegative (up to tolerance) iff `z` is the argmin.
    pub fn optimality_residual(
        &self,
        x: &[f64],
        p: &[f64],
        z: &[f64],
        samples: &[Vec<f64>],
    ) -> Result<f64, ProxError> {
        let gx = self.dgf_grad(x)?;
        let gz = self.dgf_grad(z)?;
        let s: Vec<f64> = p
            .iter()
            .zip(gz.iter().zip(&gx))
            .map(|(&pi, (&a, &b))| pi + a - b)
            .collect();
        let mut worst = f64::INFINITY;
        for u in samples {
            let d = sub(u, z);
            worst = worst.min(dot(&s, &d));
        }
        Ok(worst)
    }
}
