use biaxial_core::bie::{assemble, evaluate, solve_dirichlet};
use biaxial_core::geometry::{superellipse_curve, Location, Point};
use biaxial_core::kernel::{q4, Params};
use biaxial_core::potential::{Density, DoubleLayer, QuadratureRule, Side};
use biaxial_core::Error;

fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y).unwrap()
}

#[test]
fn gauge_identity_on_an_elongated_domain() {
    let curve = superellipse_curve(2.0, 1.0, 4.0).unwrap();
    let dl = DoubleLayer::new(Params::new(0.1, 0.4).unwrap(), &curve);
    for (p, location) in [
        (pt(0.5, 0.5), Location::Inside),
        (pt(1.6, 0.3), Location::Inside),
        (pt(2.5, 0.5), Location::Outside),
        (pt(1.5, 1.5), Location::Outside),
    ] {
        let check = dl.gauge_check(&p).unwrap();
        assert_eq!(check.location, location);
        assert!(check.residual.abs() < 1e-8, "{check:?}");
    }
}

#[test]
fn dirichlet_recovers_a_harmonic_function() {
    let params = Params::new(0.1, 0.4).unwrap();
    let curve = superellipse_curve(2.0, 1.0, 4.0).unwrap();
    let source = pt(2.5, 1.5);
    let mut sys = assemble(params, &curve, 48).unwrap();
    sys.set_boundary_data(&curve, |p| q4(params, p, &source)).unwrap();
    let sol = solve_dirichlet(&sys).unwrap();
    assert!(sol.condition < 1e3);
    for p in [pt(0.4, 0.4), pt(1.2, 0.6), pt(1.8, 0.2)] {
        let u = evaluate(params, &curve, &sol.density, &p).unwrap();
        let exact = q4(params, &p, &source).unwrap();
        assert!((u - exact).abs() < 1e-5 * exact.abs(), "{u} vs {exact}");
    }
}

#[test]
fn traces_differ_by_the_density() {
    let curve = superellipse_curve(1.0, 1.0, 3.0).unwrap();
    let dl = DoubleLayer::new(Params::new(0.25, 0.25).unwrap(), &curve);
    let mu = Density::function(|s| 1.0 + s * s);
    let s = 0.4 * curve.length();
    let inner = dl.trace(&mu, s, Side::Interior).unwrap();
    let outer = dl.trace(&mu, s, Side::Exterior).unwrap();
    assert!((outer - inner - mu.eval(s)).abs() < 1e-12);
    assert!((dl.direct_value(&mu, s).unwrap() - 0.5 * (inner + outer)).abs() < 1e-12);
}

#[test]
fn far_field_matches_a_fine_rule() {
    let curve = superellipse_curve(1.0, 1.0, 3.0).unwrap();
    let dl = DoubleLayer::new(Params::new(0.25, 0.25).unwrap(), &curve);
    let mu = Density::function(|s| s.cos());
    let p = pt(0.4, 0.3);
    let coarse = dl.value(&mu, &p, &dl.default_rule()).unwrap();
    let fine = dl
        .value(&mu, &p, &QuadratureRule::with_nodes(curve.length(), 1024).unwrap())
        .unwrap();
    assert!((coarse - fine).abs() < 1e-12);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(Params::new(0.5, 0.2).is_err());
    assert!(Params::new(0.2, 0.0).is_err());
    assert!(superellipse_curve(1.0, 1.0, 1.5).is_err());
    assert!(Point::new(-0.1, 1.0).is_err());

    let curve = superellipse_curve(1.0, 1.0, 3.0).unwrap();
    let dl = DoubleLayer::new(Params::new(0.25, 0.25).unwrap(), &curve);
    let s = 0.5 * curve.length();
    assert!(matches!(dl.kernel(s, s), Err(Error::Singular { .. })));
    assert!(dl.trace(&Density::Constant(1.0), 0.0, Side::Interior).is_err());
    assert!(QuadratureRule::with_nodes(curve.length(), 20).is_err());
}

#[test]
fn direct_value_is_continuous_along_the_curve() {
    let curve = superellipse_curve(1.0, 1.0, 3.0).unwrap();
    let l = curve.length();
    let dl = DoubleLayer::new(Params::new(0.25, 0.25).unwrap(), &curve);
    let mu = Density::function(move |s| (std::f64::consts::PI * s / l).sin());
    let values: Vec<f64> = (0..=40)
        .map(|k| dl.direct_value(&mu, l * (0.05 + 0.9 * k as f64 / 40.0)).unwrap())
        .collect();
    let steps: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let mean = steps.iter().sum::<f64>() / steps.len() as f64;
    assert!(steps.iter().all(|&d| d <= 10.0 * mean), "{steps:?}");
    for w in values.windows(3) {
        assert!((w[2] - 2.0 * w[1] + w[0]).abs() < 1e-2);
    }
}

#[test]
fn solved_density_is_smooth_under_refinement() {
    let params = Params::new(0.25, 0.25).unwrap();
    let curve = superellipse_curve(1.0, 1.0, 3.0).unwrap();
    let source = pt(1.5, 1.5);
    let mut roughness = Vec::new();
    for n in [32, 64] {
        let mut sys = assemble(params, &curve, n).unwrap();
        sys.set_boundary_data(&curve, |p| q4(params, p, &source)).unwrap();
        let sol = solve_dirichlet(&sys).unwrap();
        let mu: Vec<f64> = sys.rule().nodes().iter().map(|&s| sol.density.eval(s)).collect();
        roughness.push(mu.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max));
    }
    assert!(roughness[1] < roughness[0], "{roughness:?}");
}
