//! Closed-form metrics and generators for shapes with a known inradius.
//!
//! Regular n-gons use a fixed vertex convention: vertex `k` sits at angle
//! `pi/n + 2 pi k / n` on the circumradius `r / cos(pi/n)`, so the side from
//! the last vertex back to the first touches the incircle at `(r, 0)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::core2d::{Point2, Polygon2};
use crate::core3d::{Point3, Polyhedron3};
use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::vector::Coords;

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CircleSphereMetrics {
    pub disk_area: f64,
    pub circumference: f64,
    pub ball_volume: f64,
    pub sphere_area: f64,
}

/// `(pi r^2, 2 pi r, 4/3 pi r^3, 4 pi r^2)`.
pub fn circle_sphere_metrics(r: f64) -> Result<CircleSphereMetrics> {
    check_radius(r)?;
    Ok(CircleSphereMetrics {
        disk_area: PI * r * r,
        circumference: 2.0 * PI * r,
        ball_volume: 4.0 / 3.0 * PI * r * r * r,
        sphere_area: 4.0 * PI * r * r,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NGonMetrics {
    pub n: usize,
    pub r: f64,
    pub area: f64,
    pub length: f64,
}

impl NGonMetrics {
    /// `A(n, r) = n r^2 tan(pi/n)` and `L(n, r) = 2 n r tan(pi/n)`.
    pub fn new(n: usize, r: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadN(n));
        }
        check_radius(r)?;
        let t = (PI / n as f64).tan();
        Ok(NGonMetrics {
            n,
            r,
            area: n as f64 * r * r * t,
            length: 2.0 * n as f64 * r * t,
        })
    }
}

/// Regular n-gon with inradius `r` centred at the origin.
pub fn regular_ngon(n: usize, r: f64) -> Result<(NGonMetrics, Polygon2)> {
    let metrics = NGonMetrics::new(n, r)?;
    let half = PI / n as f64;
    let circum = r / half.cos();
    let vertices = (0..n)
        .map(|k| {
            let a = half + 2.0 * PI * k as f64 / n as f64;
            Point2::new(circum * a.cos(), circum * a.sin())
        })
        .collect();
    Ok((metrics, Polygon2::new(vertices)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolidKind {
    Cube,
    RegularTetrahedron,
}

impl FromStr for SolidKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cube" => Ok(SolidKind::Cube),
            "tetra" | "tetrahedron" | "regular_tetrahedron" => Ok(SolidKind::RegularTetrahedron),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

impl fmt::Display for SolidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolidKind::Cube => "cube",
            SolidKind::RegularTetrahedron => "regular_tetrahedron",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolidMetrics {
    pub kind: SolidKind,
    pub r: f64,
    pub volume: f64,
    pub surface_area: f64,
}

/// Cube or regular tetrahedron with inradius `r`, insphere centred at the origin.
///
/// The cube has side `2r`; the tetrahedron has edge `a = 2 sqrt(6) r`, volume
/// `a^3 / (6 sqrt 2)` and surface area `sqrt(3) a^2`.
pub fn named_solid(kind: SolidKind, r: f64) -> Result<(SolidMetrics, Polyhedron3)> {
    check_radius(r)?;
    let (volume, surface_area, mesh) = match kind {
        SolidKind::Cube => {
            let side = 2.0 * r;
            (side.powi(3), 6.0 * side * side, axis_box(side, side, side)?)
        }
        SolidKind::RegularTetrahedron => {
            let a = 2.0 * 6f64.sqrt() * r;
            // Alternate cube corners (+-k)^3 with even parity; faces sit at
            // distance k / sqrt(3) from the origin.
            let k = 3f64.sqrt() * r;
            let vertices = vec![
                Point3::new(k, k, k),
                Point3::new(k, -k, -k),
                Point3::new(-k, k, -k),
                Point3::new(-k, -k, k),
            ];
            let facets = (0..4)
                .map(|skip| {
                    let mut f: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
                    let (p, q, s) = (vertices[f[0]], vertices[f[1]], vertices[f[2]]);
                    // Outward: the normal points away from the omitted vertex.
                    if (q - p).cross(&(s - p)).dot(&(p - vertices[skip])) < 0.0 {
                        f.swap(1, 2);
                    }
                    f
                })
                .collect();
            (
                a.powi(3) / (6.0 * 2f64.sqrt()),
                3f64.sqrt() * a * a,
                Polyhedron3::new(vertices, facets)?,
            )
        }
    };
    Ok((
        SolidMetrics {
            kind,
            r,
            volume,
            surface_area,
        },
        mesh,
    ))
}

/// Axis-aligned rectangle `a x b` centred at the origin.
pub fn rectangle(a: f64, b: f64) -> Result<Polygon2> {
    check_radius(a)?;
    check_radius(b)?;
    let (x, y) = (a / 2.0, b / 2.0);
    Polygon2::from_coords(&[[-x, -y], [x, -y], [x, y], [-x, y]])
}

/// Axis-aligned box `a x b x c` centred at the origin.
pub fn axis_box(a: f64, b: f64, c: f64) -> Result<Polyhedron3> {
    for side in [a, b, c] {
        check_radius(side)?;
    }
    let (x, y, z) = (a / 2.0, b / 2.0, c / 2.0);
    let vertices = [
        [-x, -y, -z],
        [x, -y, -z],
        [x, y, -z],
        [-x, y, -z],
        [-x, -y, z],
        [x, -y, z],
        [x, y, z],
        [-x, y, z],
    ];
    let facets = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![2, 3, 7, 6],
        vec![1, 2, 6, 5],
        vec![0, 4, 7, 3],
    ];
    Polyhedron3::from_coords(&vertices, facets)
}

/// Polygon circumscribed about the circle of `radius` at the origin, with one
/// side tangent at each of the given directions (radians).
///
/// Consecutive directions must be less than `pi` apart, otherwise the lines do
/// not enclose a bounded region.
pub fn tangential_polygon(radius: f64, tangent_angles: &[f64]) -> Result<Polygon2> {
    check_radius(radius)?;
    if tangent_angles.len() < 3 {
        return Err(Error::TooFewVertices(tangent_angles.len()));
    }
    let mut angles: Vec<f64> = tangent_angles
        .iter()
        .map(|a| a.rem_euclid(2.0 * PI))
        .collect();
    angles.sort_by(f64::total_cmp);
    let n = angles.len();
    let vertices = (0..n)
        .map(|i| {
            let next = if i + 1 == n {
                angles[0] + 2.0 * PI
            } else {
                angles[i + 1]
            };
            let gap = next - angles[i];
            if gap >= PI - 1e-12 {
                return Err(Error::Unbounded);
            }
            let mid = angles[i] + gap / 2.0;
            let dist = radius / (gap / 2.0).cos();
            Ok(Point2::new(dist * mid.cos(), dist * mid.sin()))
        })
        .collect::<Result<Vec<_>>>()?;
    Polygon2::new(vertices)
}

/// Convex polyhedron bounded by the planes tangent to the sphere of `radius`
/// at the origin with the given outward normals (need not be unit length).
pub fn tangential_polyhedron(radius: f64, normals: &[Point3]) -> Result<Polyhedron3> {
    check_radius(radius)?;
    let units: Vec<Point3> = normals
        .iter()
        .map(|n| {
            let len = n.norm();
            if len > 0.0 && len.is_finite() {
                Ok(*n * (1.0 / len))
            } else {
                Err(Error::ZeroNormal)
            }
        })
        .collect::<Result<_>>()?;
    if units.len() < 4 {
        return Err(Error::Unbounded);
    }

    // Bounded iff the support function is finite along every axis direction.
    let rows: Vec<Vec<f64>> = units.iter().map(|u| u.to_vec()).collect();
    let rhs = vec![radius; units.len()];
    for axis in 0..3 {
        for sign in [1.0, -1.0] {
            let dir = Point3::axis(axis) * sign;
            if !matches!(
                lp::maximize(&dir.to_vec(), &rows, &rhs)?,
                LpOutcome::Optimal { .. }
            ) {
                return Err(Error::Unbounded);
            }
        }
    }

    let tol = 1e-9 * radius;
    let mut vertices: Vec<Point3> = Vec::new();
    let m = units.len();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let (a, b, c) = (units[i], units[j], units[k]);
                let det = a.dot(&b.cross(&c));
                if det.abs() < 1e-12 {
                    continue;
                }
                // Cramer's rule for [a; b; c] x = radius (1, 1, 1).
                let x = (b.cross(&c) + c.cross(&a) + a.cross(&b)) * (radius / det);
                let scale = tol * (1.0 + x.norm() / radius);
                if units.iter().all(|u| u.dot(&x) <= radius + scale)
                    && !vertices.iter().any(|v| (*v - x).norm() <= scale)
                {
                    vertices.push(x);
                }
            }
        }
    }

    let mut facets = Vec::with_capacity(m);
    for u in &units {
        let on_plane: Vec<usize> = (0..vertices.len())
            .filter(|&v| {
                (u.dot(&vertices[v]) - radius).abs() <= tol * (1.0 + vertices[v].norm() / radius)
            })
            .collect();
        if on_plane.len() < 3 {
            return Err(Error::Unbounded);
        }
        let center = on_plane
            .iter()
            .fold(Point3::default(), |acc, &v| acc + vertices[v])
            * (1.0 / on_plane.len() as f64);
        // In-plane basis with e1 x e2 = u, so increasing angle is CCW from outside.
        let helper = if u.x.abs() < 0.9 {
            Point3::new(1.0, 0.0, 0.0)
        } else {
            Point3::new(0.0, 1.0, 0.0)
        };
        let e1 = {
            let t = helper.cross(u);
            t * (1.0 / t.norm())
        };
        let e2 = u.cross(&e1);
        let mut ordered: Vec<(f64, usize)> = on_plane
            .into_iter()
            .map(|v| {
                let d = vertices[v] - center;
                (d.dot(&e2).atan2(d.dot(&e1)), v)
            })
            .collect();
        ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
        facets.push(ordered.into_iter().map(|(_, v)| v).collect());
    }
    Polyhedron3::new(vertices, facets)
}
