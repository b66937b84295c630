//! A small splittable PRNG for reproducible data generation.
//!
//! The benchmark tables must be reproducible from a recorded seed across
//! platforms and releases, so the crate carries its own fixed-algorithm
//! generator (SplitMix64) instead of depending on an external RNG whose
//! stream may change between versions.

/// SplitMix64 generator. Deterministic, seedable, and stable by construction.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[lo, hi]` (inclusive).
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// A uniformly random direction on the unit sphere (rejection-free:
    /// Gaussian components via Box–Muller, then normalized).
    pub fn unit_vector(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let mut v = Vec::with_capacity(dim);
            while v.len() < dim {
                let u1 = self.next_f64().max(1e-12);
                let u2 = self.next_f64();
                let r = (-2.0 * u1.ln()).sqrt();
                v.push(r * (std::f64::consts::TAU * u2).cos());
                if v.len() < dim {
                    v.push(r * (std::f64::consts::TAU * u2).sin());
                }
            }
            let n = crate::vecmath::nrm2(&v);
            if n > 1e-9 {
                for c in &mut v {
                    *c /= n;
                }
                return v;
            }
        }
    }
}
