//! Property-based checks of the algebraic invariants.

use mirror_descent::bench::EpsValue;
use mirror_descent::oracles::{holder_bound, holder_majorant};
use mirror_descent::problems::gen_constraint_matrix;
use mirror_descent::prox::{FeasibleSet, ProxSetup};
use mirror_descent::restart::{phi_hat, tau};
use mirror_descent::solvers::fixed_budget;
use mirror_descent::vecmath::{dot, sub};
use proptest::prelude::*;

fn simplex_point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.01f64..1.0, dim).prop_map(|raw| {
        let s: f64 = raw.iter().sum();
        raw.into_iter().map(|c| c / s).collect()
    })
}

proptest! {
    #[test]
    fn tau_phi_hat_roundtrip(
        eps in 1e-3f64..10.0,
        g_star in 0.0f64..10.0,
        l in 0.0f64..10.0,
    ) {
        let delta = phi_hat(eps, g_star, l);
        prop_assert!(delta > 0.0);
        prop_assert!((tau(delta, g_star, l) - eps).abs() <= 1e-10 * eps.max(1.0));
    }

    #[test]
    fn tau_is_monotone(
        d1 in 0.0f64..5.0,
        d2 in 0.0f64..5.0,
        g_star in 0.0f64..5.0,
        l in 0.0f64..5.0,
    ) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(tau(lo, g_star, l) <= tau(hi, g_star, l) + 1e-12);
    }

    #[test]
    fn euclidean_bregman_nonnegative_and_symmetric_in_distance(
        x in proptest::collection::vec(-5.0f64..5.0, 3),
        y in proptest::collection::vec(-5.0f64..5.0, 3),
    ) {
        let setup = ProxSetup::euclidean(3, FeasibleSet::WholeSpace);
        let v = setup.bregman(&x, &y).unwrap();
        prop_assert!(v >= 0.0);
        // quadratic d.g.f.: V(x,y) = V(y,x)
        prop_assert!((v - setup.bregman(&y, &x).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn entropy_bregman_nonnegative(
        x in simplex_point(4),
        y in simplex_point(4),
    ) {
        let setup = ProxSetup::entropy(4);
        prop_assert!(setup.bregman(&x, &y).unwrap() >= -1e-15);
    }

    #[test]
    fn dual_norm_pairing_inequality(
        x in proptest::collection::vec(-3.0f64..3.0, 4),
        p in proptest::collection::vec(-3.0f64..3.0, 4),
        scale in 0.1f64..4.0,
    ) {
        let eu = ProxSetup::euclidean_scaled(FeasibleSet::WholeSpace, vec![0.0; 4], scale);
        prop_assert!(dot(&p, &x).abs() <= eu.dual_norm(&p) * eu.primal_norm(&x) + 1e-9);
        let en = ProxSetup::entropy(4);
        prop_assert!(dot(&p, &x).abs() <= en.dual_norm(&p) * en.primal_norm(&x) + 1e-9);
    }

    #[test]
    fn mirror_step_stays_feasible(
        raw in proptest::collection::vec(-2.0f64..2.0, 3),
        p in proptest::collection::vec(-1.5f64..1.5, 3),
    ) {
        for set in [
            FeasibleSet::unit_ball(3),
            FeasibleSet::NonnegBall { radius: 1.0 },
            FeasibleSet::Simplex,
            FeasibleSet::Box { lo: vec![-1.0; 3], hi: vec![0.5; 3] },
        ] {
            let setup = ProxSetup::euclidean(3, set.clone());
            let x = set.project(&raw);
            let z = setup.mirror_step(&x, &p).unwrap();
            prop_assert!(set.contains(&z));
        }
    }

    #[test]
    fn fixed_budget_brackets_the_ratio(
        theta0_sq in 0.1f64..10.0,
        eps in 0.01f64..1.0,
    ) {
        let n = fixed_budget(theta0_sq, eps);
        let ratio = 2.0 * theta0_sq / (eps * eps);
        // N ≥ ratio (up to the integer snap) and N − 1 < ratio
        prop_assert!((n as f64) + 1e-6 * ratio >= ratio);
        prop_assert!(((n - 1) as f64) < ratio);
    }

    #[test]
    fn constraint_matrix_pattern(n in 20usize..200, m in 4usize..20) {
        prop_assume!(n >= m);
        let mat = gen_constraint_matrix(n, m).unwrap();
        prop_assert_eq!(mat.m(), m);
        prop_assert_eq!(mat.n(), n);
        prop_assert!(mat.rows[0].iter().all(|&v| v == 1.0));
        for k in 4..=m {
            let row = &mat.rows[k - 1];
            prop_assert_eq!(row[0], 1.0);
            prop_assert_eq!(row[1], (k - 2) as f64);
            prop_assert_eq!(row[n - 1], (n + k - 4) as f64);
            // entries past the first advance by exactly one
            for j in 2..n {
                prop_assert_eq!(row[j] - row[j - 1], 1.0);
            }
        }
        prop_assert!(mat.rows.iter().flatten().all(|&v| v >= 1.0 && v.fract() == 0.0));
    }

    #[test]
    fn holder_quantities_behave(
        m_nu in 0.1f64..5.0,
        nu in 0.0f64..1.0,
        eps in 1e-4f64..1.0,
    ) {
        prop_assert!(holder_majorant(m_nu, nu, eps) > 0.0);
        let b = holder_bound(m_nu, nu, eps);
        prop_assert!(b > eps); // the ε term is always present
        // shrinking ε shrinks the bound
        prop_assert!(holder_bound(m_nu, nu, eps * 0.5) < b);
    }

    #[test]
    fn eps_fraction_parsing(num in 1u32..100, den in 1u32..100) {
        let label = format!("{num}/{den}");
        let parsed = EpsValue::parse(&label).unwrap();
        prop_assert_eq!(&parsed.label, &label);
        prop_assert!((parsed.value - num as f64 / den as f64).abs() <= 1e-15);
    }

    #[test]
    fn projection_is_idempotent_and_nonexpansive(
        a in proptest::collection::vec(-3.0f64..3.0, 3),
        b in proptest::collection::vec(-3.0f64..3.0, 3),
    ) {
        for set in [
            FeasibleSet::unit_ball(3),
            FeasibleSet::NonnegBall { radius: 1.0 },
            FeasibleSet::Simplex,
            FeasibleSet::Box { lo: vec![-1.0; 3], hi: vec![1.0; 3] },
        ] {
            let pa = set.project(&a);
            let pb = set.project(&b);
            let paa = set.project(&pa);
            for (u, v) in pa.iter().zip(&paa) {
                prop_assert!((u - v).abs() <= 1e-12);
            }
            let d_before = mirror_descent::vecmath::nrm2(&sub(&a, &b));
            let d_after = mirror_descent::vecmath::nrm2(&sub(&pa, &pb));
            prop_assert!(d_after <= d_before + 1e-9);
        }
    }
}
