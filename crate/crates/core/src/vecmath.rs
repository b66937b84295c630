//! Dense vector kernels shared by the solvers and the benchmark problems.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean norm.
pub fn nrm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm1(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).sum()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Euclidean distance between two points.
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `a − b`.
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + s·b`.
pub fn add_scaled(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_on_a_345_triangle() {
        let v = [3.0, 4.0];
        assert_eq!(nrm2(&v), 5.0);
        assert_eq!(norm1(&v), 7.0);
        assert_eq!(norm_inf(&v), 4.0);
    }

    #[test]
    fn arithmetic_helpers() {
        let a = [1.0, 2.0];
        let b = [0.5, -1.0];
        assert_eq!(sub(&a, &b), vec![0.5, 3.0]);
        assert_eq!(add_scaled(&a, 2.0, &b), vec![2.0, 0.0]);
        assert_eq!(scale(&b, -2.0), vec![-1.0, 2.0]);
        assert_eq!(dot(&a, &b), -1.5);
        assert!((dist(&a, &b) - (0.25f64 + 9.0).sqrt()).abs() < 1e-15);
    }
}
