//! Planar polygons: validation, shoelace area, perimeter, convexity and scaling.
//!
//! A [`Polygon2`] is always simple and counterclockwise once constructed, so
//! every consumer can rely on a positive signed area.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{impl_point_ops, Coords};

/// Absolute tolerance (coordinate units) for coincident vertices and collinearity.
///
/// Coordinates are expected to be O(1) to O(10^3).
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Relative tolerance on the sine of the turn angle used by the convexity test.
pub const CONVEXITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl_point_ops!(Point2 { x, y });

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(&self, other: &Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn distance(&self, other: &Point2) -> f64 {
        (*self - *other).norm()
    }
}

impl Coords for Point2 {
    const DIM: usize = 2;

    #[inline]
    fn coord(&self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => panic!("axis {axis} out of range for Point2"),
        }
    }

    fn from_fn(mut f: impl FnMut(usize) -> f64) -> Self {
        Point2::new(f(0), f(1))
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Area and perimeter of a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Metrics2 {
    pub area: f64,
    pub perimeter: f64,
}

/// A run of collinear polygon edges treated as one straight side.
#[derive(Clone, Debug, PartialEq)]
pub struct MergedEdge {
    pub start: Point2,
    pub end: Point2,
    /// Indices of the original edges (edge `i` joins vertex `i` to `i + 1`).
    pub members: Vec<usize>,
}

/// Simple counterclockwise polygon with at least three vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon2 {
    vertices: Vec<Point2>,
}

impl Polygon2 {
    /// Validates a vertex loop and normalizes it to counterclockwise order.
    pub fn new(raw: Vec<Point2>) -> Result<Self> {
        if let Some(i) = raw.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let n = raw.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if raw[i].distance(&raw[j]) <= DEGENERACY_TOL {
                return Err(Error::DuplicateVertex(i, j));
            }
        }
        check_simple(&raw)?;

        let mut polygon = Polygon2 { vertices: raw };
        let area = polygon.raw_signed_area();
        if area == 0.0 {
            return Err(Error::SelfIntersecting(0, 1));
        }
        if area < 0.0 {
            polygon.vertices.reverse();
        }
        Ok(polygon)
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point2::from).collect())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` as `(vertex[i], vertex[i + 1])`, wrapping around.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    // Shoelace sum taken relative to the first vertex to limit cancellation
    // for translated inputs.
    fn raw_signed_area(&self) -> f64 {
        let origin = self.vertices[0];
        let twice: f64 = self
            .vertices
            .windows(2)
            .skip(1)
            .map(|w| (w[0] - origin).cross(&(w[1] - origin)))
            .sum();
        0.5 * twice
    }

    /// Enclosed area by the shoelace formula; positive since the loop is CCW.
    pub fn signed_area(&self) -> f64 {
        self.raw_signed_area()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(&b)).sum()
    }

    pub fn metrics(&self) -> Metrics2 {
        Metrics2 {
            area: self.signed_area(),
            perimeter: self.perimeter(),
        }
    }

    pub fn centroid_of_vertices(&self) -> Point2 {
        let sum = self
            .vertices
            .iter()
            .fold(Point2::default(), |acc, &v| acc + v);
        sum * (1.0 / self.vertices.len() as f64)
    }

    /// True when no vertex turns clockwise. Collinear vertices are allowed;
    /// see [`Polygon2::collinear_vertices`].
    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let prev = self.vertices[(i + n - 1) % n];
            let cur = self.vertices[i];
            let next = self.vertices[(i + 1) % n];
            let e1 = cur - prev;
            let e2 = next - cur;
            e1.cross(&e2) >= -CONVEXITY_TOL * e1.norm() * e2.norm()
        })
    }

    /// Vertices lying on the straight segment between their neighbours.
    pub fn collinear_vertices(&self) -> Vec<usize> {
        let n = self.vertices.len();
        (0..n).filter(|&i| self.is_collinear_at(i)).collect()
    }

    fn is_collinear_at(&self, i: usize) -> bool {
        let n = self.vertices.len();
        let prev = self.vertices[(i + n - 1) % n];
        let cur = self.vertices[i];
        let next = self.vertices[(i + 1) % n];
        let chord = next - prev;
        let len = chord.norm();
        if len == 0.0 {
            return false;
        }
        let offset = (cur - prev).cross(&chord).abs() / len;
        offset <= DEGENERACY_TOL && (cur - prev).dot(&(next - cur)) > 0.0
    }

    /// Sides of the polygon with collinear runs of edges merged.
    pub fn merged_edges(&self) -> Vec<MergedEdge> {
        let n = self.vertices.len();
        let mut corners: Vec<usize> = (0..n).filter(|&i| !self.is_collinear_at(i)).collect();
        if corners.len() < 3 {
            corners = (0..n).collect();
        }
        let k = corners.len();
        (0..k)
            .map(|c| {
                let first = corners[c];
                let last = corners[(c + 1) % k];
                let span = (last + n - first) % n;
                let span = if span == 0 { n } else { span };
                MergedEdge {
                    start: self.vertices[first],
                    end: self.vertices[last],
                    members: (0..span).map(|s| (first + s) % n).collect(),
                }
            })
            .collect()
    }

    /// `cW = { c x : x in W }`, scaling about the origin.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::NonPositiveScale(c));
        }
        Ok(Polygon2 {
            vertices: self.vertices.iter().map(|&v| v * c).collect(),
        })
    }

    pub fn translate(&self, offset: Point2) -> Self {
        Polygon2 {
            vertices: self.vertices.iter().map(|&v| v + offset).collect(),
        }
    }
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(&(c - a))
}

fn within_box(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_touch(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return true;
    }
    (d1 == 0.0 && within_box(q1, q2, p1))
        || (d2 == 0.0 && within_box(q1, q2, p2))
        || (d3 == 0.0 && within_box(p1, p2, q1))
        || (d4 == 0.0 && within_box(p1, p2, q2))
}

// O(n^2) pair check. Adjacent edges only conflict when they fold back onto
// each other.
fn check_simple(v: &[Point2]) -> Result<()> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Shared vertex: b == c (j == i + 1) or d == a (wraparound).
                let (e1, e2) = if j == i + 1 {
                    (b - a, d - c)
                } else {
                    (a - c, b - a)
                };
                let cross = e1.cross(&e2).abs();
                if cross <= DEGENERACY_TOL * e1.norm() * e2.norm() && e1.dot(&e2) < 0.0 {
                    return Err(Error::SelfIntersecting(i, j));
                }
            } else if segments_touch(a, b, c, d) {
                return Err(Error::SelfIntersecting(i, j));
            }
        }
    }
    Ok(())
}
