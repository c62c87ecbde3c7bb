use biaxial_core::geometry::Point;
use biaxial_core::kernel::{grad_q4, q4, Params};
use biaxial_core::specfun::{appell_f2, gauss_2f1, F2Args};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_symmetric_in_numerator_parameters(
        a in 0.1f64..2.5, b in 0.1f64..2.5, gap in 0.1f64..2.0, z in -40.0f64..0.95,
    ) {
        let c = a.max(b) + gap;
        let ab = gauss_2f1(a, b, c, z).unwrap();
        let ba = gauss_2f1(b, a, c, z).unwrap();
        prop_assert!(close(ab, ba, 1e-12), "{ab} vs {ba}");
    }

    #[test]
    fn appell_symmetric_under_variable_exchange(
        a in 0.5f64..2.5, b1 in 0.2f64..1.5, b2 in 0.2f64..1.5,
        g1 in 0.3f64..1.5, g2 in 0.3f64..1.5, x in -200.0f64..0.0, y in -200.0f64..0.0,
    ) {
        let f = appell_f2(F2Args::new(a, b1, b2, b1 + g1, b2 + g2, x, y)).unwrap();
        let g = appell_f2(F2Args::new(a, b2, b1, b2 + g2, b1 + g1, y, x)).unwrap();
        prop_assert!(close(f, g, 1e-11), "{f} vs {g}");
    }

    #[test]
    fn q4_symmetric_and_positive(
        alpha in 0.01f64..0.49, beta in 0.01f64..0.49,
        px in 0.05f64..3.0, py in 0.05f64..3.0, qx in 0.05f64..3.0, qy in 0.05f64..3.0,
    ) {
        let p = Point::new(px, py).unwrap();
        let q = Point::new(qx, qy).unwrap();
        prop_assume!(p.distance(&q) > 1e-3);
        let params = Params::new(alpha, beta).unwrap();
        let pq = q4(params, &p, &q).unwrap();
        let qp = q4(params, &q, &p).unwrap();
        prop_assert!(pq > 0.0);
        prop_assert!(close(pq, qp, 1e-12), "{pq} vs {qp}");
    }

    #[test]
    fn q4_scales_with_the_domain(
        alpha in 0.01f64..0.49, beta in 0.01f64..0.49, k in 0.2f64..5.0,
        px in 0.1f64..2.0, py in 0.1f64..2.0, qx in 0.1f64..2.0, qy in 0.1f64..2.0,
    ) {
        // the equation is invariant under dilation; q₄ has degree −2α−2β
        let p = Point::new(px, py).unwrap();
        let q = Point::new(qx, qy).unwrap();
        prop_assume!(p.distance(&q) > 1e-2);
        let params = Params::new(alpha, beta).unwrap();
        let base = q4(params, &p, &q).unwrap();
        let scaled = q4(params, &Point::new(k * px, k * py).unwrap(), &Point::new(k * qx, k * qy).unwrap()).unwrap();
        let expected = base * k.powf(-2.0 * (alpha + beta));
        prop_assert!(close(expected, scaled, 1e-12), "{expected} vs {scaled}");
    }

    #[test]
    fn gradient_points_towards_the_source_nearby(
        alpha in 0.01f64..0.49, beta in 0.01f64..0.49, angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let params = Params::new(alpha, beta).unwrap();
        let q = Point::new(1.0, 1.0).unwrap();
        let (dx, dy) = (1e-3 * angle.cos(), 1e-3 * angle.sin());
        let p = Point::new(1.0 + dx, 1.0 + dy).unwrap();
        let g = grad_q4(params, &p, &q).unwrap();
        prop_assert!(g[0] * dx + g[1] * dy < 0.0);
    }
}
