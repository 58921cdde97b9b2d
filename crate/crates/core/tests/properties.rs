use bohr_core::bounds::MajorantModel;
use bohr_core::radius::{radius_locally_univalent, radius_qc_bounded, radius_qc_convex, radius_qc_univalent};
use bohr_core::TruncatedSeries;
use num_complex::Complex64;
use proptest::prelude::*;

fn coeffs(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b)), len)
}

fn series(len: usize) -> impl Strategy<Value = TruncatedSeries> {
    coeffs(len).prop_map(|c| TruncatedSeries::new(c).unwrap())
}

/// `z + sum a_n z^n` with `sum n |a_n| < 1`.
fn normalized(len: usize) -> impl Strategy<Value = TruncatedSeries> {
    coeffs(len).prop_map(move |c| {
        let mut v = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        for (k, x) in c.into_iter().enumerate().skip(2) {
            v.push(x * 0.5f64.powi(k as i32 - 1) / (k * k) as f64);
        }
        TruncatedSeries::new(v).unwrap()
    })
}

fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
    a.order() == b.order() && a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= tol)
}

proptest! {
    #[test]
    fn multiplication_commutes_and_associates(a in series(12), b in series(12), c in series(12)) {
        prop_assert!(close(&a.cauchy_mul(&b), &b.cauchy_mul(&a), 1e-13));
        prop_assert!(close(&a.cauchy_mul(&b).cauchy_mul(&c), &a.cauchy_mul(&b.cauchy_mul(&c)), 1e-12));
    }

    #[test]
    fn reversion_inverts_composition(f in normalized(30)) {
        let g = f.revert().unwrap();
        prop_assert!(close(&f.compose(&g).unwrap(), &TruncatedSeries::identity(f.order()), 1e-12));
        prop_assert!(close(&g.compose(&f).unwrap(), &TruncatedSeries::identity(f.order()), 1e-12));
    }

    #[test]
    fn exp_of_log_over_z_recovers_quotient(f in normalized(25)) {
        let q = f.log_over_z().unwrap().exp_series();
        let expected = TruncatedSeries::new(f.coeffs()[1..].to_vec()).unwrap();
        prop_assert!(close(&q, &expected, 1e-12));
    }

    #[test]
    fn integration_inverts_differentiation(a in series(20)) {
        let back = a.integrate_from_zero().differentiate();
        prop_assert!(close(&back, &a, 1e-14));
    }

    #[test]
    fn partial_sum_and_tail_bracket_closed_form(r in 0.01f64..0.95, terms in 5usize..80, d in 0.1f64..2.0) {
        for m in [MajorantModel::univalent(d).unwrap(), MajorantModel::convex(d).unwrap(), MajorantModel::log_convex()] {
            let closed = m.majorant_sum(r).unwrap();
            let partial = m.partial_sum(terms, r).unwrap();
            let tail = m.tail_bound(terms, r).unwrap();
            prop_assert!(partial <= closed * (1.0 + 1e-12));
            prop_assert!(closed <= (partial + tail) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn radii_decrease_in_k(k in 1.0f64..1e6, step in 1.01f64..10.0) {
        prop_assert!(radius_qc_univalent(k * step).unwrap().value < radius_qc_univalent(k).unwrap().value);
        prop_assert!(radius_qc_convex(k * step).unwrap().value < radius_qc_convex(k).unwrap().value);
        prop_assert!(radius_qc_bounded(k * step).unwrap().value <= radius_qc_bounded(k).unwrap().value);
    }

    #[test]
    fn bohr_sum_is_monotone_in_r(a in series(40), r in 0.0f64..0.9, dr in 0.0f64..0.09) {
        prop_assert!(a.abs_power_sum(0, r) <= a.abs_power_sum(0, r + dr) + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn locally_univalent_radius_decreases_in_lambda(l in 0.1f64..3.0) {
        prop_assert!(radius_locally_univalent(l * 1.1).unwrap().value < radius_locally_univalent(l).unwrap().value);
    }
}
