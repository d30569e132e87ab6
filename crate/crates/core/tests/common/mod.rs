#![allow(dead_code)]

use std::f64::consts::PI;

use inradius::closedform::{tangential_polygon, tangential_polyhedron};
use inradius::{Coords, Point2, Point3, Polygon2, Polyhedron3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sides tangent to a circle of random radius at random directions, then
/// shifted. Returns the polygon, its construction radius and center.
pub fn tangential_polygon_case(rng: &mut ChaCha8Rng) -> (Polygon2, f64, Point2) {
    loop {
        let k = rng.gen_range(3..=12);
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = (0..k).all(|i| {
            let next = if i + 1 == k {
                angles[0] + 2.0 * PI
            } else {
                angles[i + 1]
            };
            let gap = next - angles[i];
            gap > 0.05 && gap < 0.9 * PI
        });
        if !gaps_ok {
            continue;
        }
        let r = rng.gen_range(0.5..5.0);
        let shift = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let p = tangential_polygon(r, &angles).expect("bounded by construction");
        return (p.translate(shift), r, shift);
    }
}

pub fn random_unit3(rng: &mut ChaCha8Rng) -> Point3 {
    loop {
        let p = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = (p.x * p.x + p.y * p.y + p.z * p.z).sqrt();
        if n > 0.1 && n <= 1.0 {
            return Point3::new(p.x / n, p.y / n, p.z / n);
        }
    }
}

/// Planes tangent to a sphere of random radius, then shifted.
pub fn tangential_polyhedron_case(rng: &mut ChaCha8Rng) -> (Polyhedron3, f64, Point3) {
    loop {
        let k = rng.gen_range(5..=14);
        let normals: Vec<Point3> = (0..k).map(|_| random_unit3(rng)).collect();
        let separated = (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let (a, b) = (normals[i], normals[j]);
                a.x * b.x + a.y * b.y + a.z * b.z < 0.98
            })
        });
        if !separated {
            continue;
        }
        let r = rng.gen_range(0.5..4.0);
        let Ok(p) = tangential_polyhedron(r, &normals) else {
            continue;
        };
        // Nearly parallel opposite faces give needle-like solids whose
        // vertices are badly conditioned; keep the aspect ratio sane.
        if p.vertices().iter().any(|v| v.norm() > 50.0 * r) {
            continue;
        }
        let shift = Point3::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        return (p.translate(shift), r, shift);
    }
}

/// Points at random angles on a random ellipse: convex, generically without
/// an incircle.
pub fn convex_polygon_case(rng: &mut ChaCha8Rng) -> Polygon2 {
    loop {
        let k = rng.gen_range(3..=10);
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let (a, b) = (rng.gen_range(1.0..6.0), rng.gen_range(1.0..6.0));
        let tilt: f64 = rng.gen_range(0.0..PI);
        let pts: Vec<Point2> = angles
            .iter()
            .map(|t| {
                let (x, y) = (a * t.cos(), b * t.sin());
                Point2::new(
                    x * tilt.cos() - y * tilt.sin(),
                    x * tilt.sin() + y * tilt.cos(),
                )
            })
            .collect();
        if let Ok(p) = Polygon2::new(pts) {
            if p.signed_area() > 0.5 && p.is_convex() {
                return p;
            }
        }
    }
}

pub fn random_triangle(rng: &mut ChaCha8Rng) -> Polygon2 {
    loop {
        let pts: Vec<Point2> = (0..3)
            .map(|_| Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
            .collect();
        if let Ok(p) = Polygon2::new(pts) {
            let shortest = p
                .edges()
                .map(|(a, b)| a.distance(&b))
                .fold(f64::INFINITY, f64::min);
            if p.signed_area() > 1.0 && shortest > 0.5 {
                return p;
            }
        }
    }
}

pub fn random_tetrahedron(rng: &mut ChaCha8Rng) -> Polyhedron3 {
    loop {
        let pts: Vec<[f64; 3]> = (0..4)
            .map(|_| [0, 1, 2].map(|_| rng.gen_range(-3.0..3.0)))
            .collect();
        let facets = vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
        if let Ok(p) = Polyhedron3::from_coords(&pts, facets) {
            if p.volume() > 1.0 {
                return p;
            }
        }
    }
}

/// Shoelace area computed independently of the library.
pub fn shoelace(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
        / 2.0
}

pub fn perimeter_oracle(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
        })
        .sum()
}
