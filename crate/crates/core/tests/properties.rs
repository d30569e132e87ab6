mod common;

use std::f64::consts::PI;

use inradius::closedform::rectangle;
use inradius::derivcheck::{
    default_squeeze_samples, make_family, scaled_line_distance, scaled_plane_distance,
    squeeze_check,
};
use inradius::erosion::{
    default_eps0, erosion_derivative, inner_offset, rectangle_quotient_closed_form,
};
use inradius::inscribe::{admits_radius, polygon_constraints, polyhedron_constraints};
use inradius::{Body, Coords, HalfSpace, Point2, Point3};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(config(64, 0x5ca1e))]

    #[test]
    fn polygon_scaling_laws(seed in any::<u64>(), c in 0.1f64..10.0) {
        let p = common::convex_polygon_case(&mut common::rng(seed));
        let q = p.scale(c).unwrap();
        prop_assert!(rel(q.signed_area(), c * c * p.signed_area()) <= 1e-12);
        prop_assert!(rel(q.perimeter(), c * p.perimeter()) <= 1e-12);
    }

    #[test]
    fn polyhedron_scaling_laws(seed in any::<u64>(), c in 0.1f64..10.0) {
        let (p, _, _) = common::tangential_polyhedron_case(&mut common::rng(seed));
        let q = p.scale(c).unwrap();
        prop_assert!(rel(q.volume(), c.powi(3) * p.volume()) <= 1e-11);
        prop_assert!(rel(q.surface_area(), c * c * p.surface_area()) <= 1e-11);
    }

    #[test]
    fn translation_invariance_2d(seed in any::<u64>(), dx in -100.0f64..100.0, dy in -100.0f64..100.0) {
        let (p, r, _) = common::tangential_polygon_case(&mut common::rng(seed));
        let shift = Point2::new(dx, dy);
        let q = p.translate(shift);
        prop_assert!(rel(q.signed_area(), p.signed_area()) <= 1e-9);
        prop_assert!(rel(q.perimeter(), p.perimeter()) <= 1e-12);
        let (bp, bq) = (p.inscribed_ball().unwrap(), q.inscribed_ball().unwrap());
        prop_assert!((bp.radius - r).abs() <= 1e-9 * r);
        prop_assert!((bq.radius - r).abs() <= 1e-9 * r);
        prop_assert!((bq.center - bp.center - shift).norm() <= 1e-8);
    }

    #[test]
    fn translation_invariance_3d(seed in any::<u64>(), dx in -50.0f64..50.0, dz in -50.0f64..50.0) {
        let (p, r, _) = common::tangential_polyhedron_case(&mut common::rng(seed));
        let shift = Point3::new(dx, 1.0, dz);
        let q = p.translate(shift);
        prop_assert!(rel(q.volume(), p.volume()) <= 1e-9);
        prop_assert!(rel(q.surface_area(), p.surface_area()) <= 1e-9);
        let bq = q.inscribed_ball().unwrap();
        prop_assert!((bq.radius - r).abs() <= 1e-9 * r);
    }

    #[test]
    fn isoperimetric_inequalities(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::convex_polygon_case(&mut rng);
        prop_assert!(p.perimeter().powi(2) >= 4.0 * PI * p.signed_area());
        let (s, _, _) = common::tangential_polyhedron_case(&mut rng);
        prop_assert!(s.surface_area().powi(3) >= 36.0 * PI * s.volume().powi(2));
    }

    #[test]
    fn lp_certificates_2d(seed in any::<u64>()) {
        let p = common::convex_polygon_case(&mut common::rng(seed));
        let cons = polygon_constraints(&p).unwrap();
        let ball = p.inscribed_ball().unwrap();
        let min_dist = cons.iter().map(|h| h.slack(ball.center)).fold(f64::INFINITY, f64::min);
        prop_assert!(min_dist >= -1e-9);
        prop_assert!((min_dist - ball.radius).abs() <= 1e-9);
        prop_assert!(admits_radius(&cons, ball.radius - 1e-6).unwrap());
        prop_assert!(!admits_radius(&cons, ball.radius + 1e-6).unwrap());
    }

    #[test]
    fn lp_certificates_3d(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::random_tetrahedron(&mut rng);
        let cons = polyhedron_constraints(&p);
        let ball = p.inscribed_ball().unwrap();
        let min_dist = cons.iter().map(|h| h.slack(ball.center)).fold(f64::INFINITY, f64::min);
        prop_assert!((min_dist - ball.radius).abs() <= 1e-9);
        prop_assert!(admits_radius(&cons, ball.radius - 1e-6).unwrap());
        prop_assert!(!admits_radius(&cons, ball.radius + 1e-6).unwrap());
    }

    #[test]
    fn every_triangle_is_tangential(seed in any::<u64>()) {
        let t = common::random_triangle(&mut common::rng(seed));
        let ball = t.inscribed_ball().unwrap();
        prop_assert!(t.tangency(&ball).unwrap().is_tangential);
        // r = 2A / L
        prop_assert!(rel(ball.radius, 2.0 * t.signed_area() / t.perimeter()) <= 1e-9);
    }

    #[test]
    fn every_tetrahedron_is_tangential(seed in any::<u64>()) {
        let t = common::random_tetrahedron(&mut common::rng(seed));
        let ball = t.inscribed_ball().unwrap();
        prop_assert!(t.tangency(&ball).unwrap().is_tangential);
        // r = 3V / S
        prop_assert!(rel(ball.radius, 3.0 * t.volume() / t.surface_area()) <= 1e-9);
    }

    #[test]
    fn family_members_scale_exactly(seed in any::<u64>(), rho in 0.05f64..3.0) {
        let (p, r, _) = common::tangential_polygon_case(&mut common::rng(seed));
        let fam = make_family(&p, &p.inscribed_ball().unwrap()).unwrap();
        let m = fam.member(rho).unwrap();
        let k = rho / r;
        prop_assert!(rel(m.signed_area(), k * k * p.signed_area()) <= 1e-9);
        prop_assert!(rel(m.perimeter(), k * p.perimeter()) <= 1e-9);
        let b = m.inscribed_ball().unwrap();
        prop_assert!((b.radius - rho).abs() <= 1e-9 * rho);
        prop_assert!(b.center.norm() <= 1e-9 * rho.max(1.0));
    }

    #[test]
    fn squeeze_is_strict_2d(seed in any::<u64>()) {
        let (p, r, _) = common::tangential_polygon_case(&mut common::rng(seed));
        let fam = make_family(&p, &p.inscribed_ball().unwrap()).unwrap();
        let samples = squeeze_check(&fam, r, &default_squeeze_samples(r)).unwrap();
        prop_assert!(samples.iter().all(|s| s.strict), "{samples:?}");
    }

    #[test]
    fn scaled_line_distance_oracle(a in -PI..PI, d in 0.01f64..100.0, c in 0.001f64..3.0) {
        let n = Point2::new(a.cos(), a.sin());
        let line = HalfSpace::new(n, d).unwrap();
        // Oracle: a point of the scaled line, measured against the original.
        let on_scaled = (n * d + Point2::new(-n.y, n.x) * 1.3) * c;
        let oracle = (n.x * on_scaled.x + n.y * on_scaled.y - d).abs();
        let got = scaled_line_distance(&line, c).unwrap();
        prop_assert!((got - oracle).abs() <= 1e-10 * (1.0 + d));
    }

    #[test]
    fn scaled_plane_distance_oracle(seed in any::<u64>(), d in 0.01f64..100.0, c in 0.001f64..3.0) {
        let n = common::random_unit3(&mut common::rng(seed));
        let plane = HalfSpace::new(n, -d).unwrap();
        let got = scaled_plane_distance(&plane, c).unwrap();
        prop_assert!((got - (1.0 - c).abs() * d).abs() <= 1e-10 * (1.0 + d));
    }

    #[test]
    fn rectangle_erosion_oracle(a in 0.5f64..20.0, b in 0.5f64..20.0, f in 0.01f64..0.99) {
        let eps = f * a.min(b) / 2.0;
        let inner = inner_offset(&rectangle(a, b).unwrap(), eps).unwrap();
        let expected = (a - 2.0 * eps) * (b - 2.0 * eps);
        prop_assert!(rel(inner.signed_area(), expected) <= 1e-12 || (inner.signed_area() - expected).abs() <= 1e-12 * a * b);
        let quotient = (a * b - inner.signed_area()) / eps;
        let closed = rectangle_quotient_closed_form(a, b, eps).unwrap();
        prop_assert!((quotient - closed).abs() <= 1e-12 * a * b / eps.min(1.0) + 1e-12 * closed);
    }

    #[test]
    fn erosion_converges_to_perimeter(seed in any::<u64>()) {
        let p = common::convex_polygon_case(&mut common::rng(seed));
        let t = erosion_derivative(&p, default_eps0(&p, 4).unwrap(), 4).unwrap();
        prop_assert!(t.relative_error <= 1e-8, "{t:?}");
        prop_assert!(rel(t.exact_perimeter, common::perimeter_oracle(p.vertices())) <= 1e-12);
        for w in t.rows.windows(2) {
            prop_assert!(w[0].epsilon > w[1].epsilon);
            prop_assert!(w[0].inner_area < w[1].inner_area);
        }
    }

    #[test]
    fn inner_offset_matches_family(seed in any::<u64>(), f in 0.05f64..0.95) {
        let (p, r, shift) = common::tangential_polygon_case(&mut common::rng(seed));
        let eps = f * r;
        let inner = inner_offset(&p, eps).unwrap();
        let fam = make_family(&p, &p.inscribed_ball().unwrap()).unwrap();
        let member = fam.member(r - eps).unwrap().translate(shift);
        for v in member.vertices() {
            let nearest = inner.vertices().iter().map(|w| w.distance(v)).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-9 * (1.0 + r), "{nearest}");
        }
    }
}
