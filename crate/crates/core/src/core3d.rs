//! Closed polyhedral surfaces with planar facets.
//!
//! Validation enforces a closed, consistently oriented 2-manifold with Euler
//! characteristic 2 (sphere topology). Facets are expected to be convex; the
//! default fan triangulation relies on that.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{impl_point_ops, Coords};

/// Facet planarity tolerance, relative to the bounding-box diagonal.
pub const PLANARITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl_point_ops!(Point3 { x, y, z });

impl Point3 {
    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn cross(&self, o: &Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }
}

impl Coords for Point3 {
    const DIM: usize = 3;

    #[inline]
    fn coord(&self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("axis {axis} out of range for Point3"),
        }
    }

    fn from_fn(mut f: impl FnMut(usize) -> f64) -> Self {
        Point3::new(f(0), f(1), f(2))
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(v: [f64; 3]) -> Self {
        Point3::new(v[0], v[1], v[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        [p.x, p.y, p.z]
    }
}

/// Vertex indices of one planar facet, counterclockwise seen from outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet(Vec<usize>);

impl Facet {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Metrics3 {
    pub volume: f64,
    pub surface_area: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangulation {
    /// Fan from the first facet vertex.
    Fan,
    /// Ear clipping in the facet plane.
    Ear,
}

/// A supporting plane shared by one or more coplanar facets.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetPlane {
    /// Outward unit normal.
    pub normal: Point3,
    /// `normal . x = offset` on the plane.
    pub offset: f64,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron3 {
    vertices: Vec<Point3>,
    facets: Vec<Facet>,
    edge_count: usize,
}

impl Polyhedron3 {
    /// Validates a vertex/facet table. If the facets are wound inward (negative
    /// total signed volume) every facet is reversed once.
    pub fn new(vertices: Vec<Point3>, facets: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let count = vertices.len();
        for (f, facet) in facets.iter().enumerate() {
            if let Some(&index) = facet.iter().find(|&&i| i >= count) {
                return Err(Error::IndexOutOfRange {
                    facet: f,
                    index,
                    count,
                });
            }
            let distinct = facet
                .iter()
                .enumerate()
                .all(|(k, &i)| facet[(k + 1) % facet.len()] != i);
            if facet.len() < 3 || !distinct {
                return Err(Error::DegenerateFacet(f));
            }
        }

        // Directed edge -> owning facets.
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        let mut undirected: HashMap<(usize, usize), usize> = HashMap::new();
        for facet in &facets {
            for k in 0..facet.len() {
                let (a, b) = (facet[k], facet[(k + 1) % facet.len()]);
                *directed.entry((a, b)).or_default() += 1;
                *undirected.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut edges: Vec<_> = undirected.iter().map(|(&e, &c)| (e, c)).collect();
        edges.sort_unstable();
        for &((a, b), uses) in &edges {
            match uses {
                1 => return Err(Error::NotClosed(a, b)),
                2 => {
                    if directed.get(&(a, b)) != Some(&1) {
                        return Err(Error::InconsistentOrientation(a, b));
                    }
                }
                _ => return Err(Error::NonManifoldEdge(a, b, uses)),
            }
        }
        let chi = count as i64 - edges.len() as i64 + facets.len() as i64;
        if chi != 2 {
            return Err(Error::EulerCharacteristicMismatch(chi));
        }

        let mut poly = Polyhedron3 {
            vertices,
            facets: facets.into_iter().map(Facet).collect(),
            edge_count: edges.len(),
        };

        let tol = PLANARITY_TOL * poly.bounding_diagonal();
        for f in 0..poly.facets.len() {
            let normal = poly.newell(f);
            let len = normal.norm();
            if len <= f64::EPSILON * poly.bounding_diagonal().powi(2) {
                return Err(Error::DegenerateFacet(f));
            }
            let unit = normal * (1.0 / len);
            let center = poly.facet_centroid(f);
            let deviation = poly.facets[f]
                .indices()
                .iter()
                .map(|&i| unit.dot(&(poly.vertices[i] - center)).abs())
                .fold(0.0, f64::max);
            if deviation > tol {
                return Err(Error::NonPlanarFacet {
                    facet: f,
                    deviation,
                });
            }
        }

        if poly.signed_volume(Triangulation::Fan) < 0.0 {
            for facet in &mut poly.facets {
                facet.0.reverse();
            }
        }
        Ok(poly)
    }

    pub fn from_coords(vertices: &[[f64; 3]], facets: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(vertices.iter().copied().map(Point3::from).collect(), facets)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count as i64 + self.facets.len() as i64
    }

    fn facet_points(&self, f: usize) -> impl Iterator<Item = Point3> + '_ {
        self.facets[f].indices().iter().map(|&i| self.vertices[i])
    }

    pub fn facet_centroid(&self, f: usize) -> Point3 {
        let n = self.facets[f].indices().len() as f64;
        self.facet_points(f)
            .fold(Point3::default(), |acc, p| acc + p)
            * (1.0 / n)
    }

    // Newell's method, relative to the first facet vertex. Length is twice the
    // facet area.
    fn newell(&self, f: usize) -> Point3 {
        let idx = self.facets[f].indices();
        let base = self.vertices[idx[0]];
        let mut sum = Point3::default();
        for k in 1..idx.len() - 1 {
            let a = self.vertices[idx[k]] - base;
            let b = self.vertices[idx[k + 1]] - base;
            sum = sum + a.cross(&b);
        }
        sum
    }

    /// Outward unit normal of facet `f`.
    pub fn facet_normal(&self, f: usize) -> Point3 {
        let n = self.newell(f);
        n * (1.0 / n.norm())
    }

    pub fn facet_area(&self, f: usize) -> f64 {
        0.5 * self.newell(f).norm()
    }

    pub fn bounding_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounds();
        (hi - lo).norm()
    }

    fn bounds(&self) -> (Point3, Point3) {
        let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = lo * -1.0;
        for v in &self.vertices {
            lo = Point3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = Point3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    fn triangles(&self, f: usize, method: Triangulation) -> Vec<[usize; 3]> {
        let idx = self.facets[f].indices();
        match method {
            Triangulation::Fan => (1..idx.len() - 1)
                .map(|k| [idx[0], idx[k], idx[k + 1]])
                .collect(),
            Triangulation::Ear => {
                let pts: Vec<Point3> = self.facet_points(f).collect();
                ear_clip(&pts, self.newell(f))
                    .into_iter()
                    .map(|[a, b, c]| [idx[a], idx[b], idx[c]])
                    .collect()
            }
        }
    }

    fn signed_volume(&self, method: Triangulation) -> f64 {
        // Divergence theorem; the reference point cancels for a closed surface.
        // The vertex centroid lies inside convex bodies, so no term cancels.
        let reference = self
            .vertices
            .iter()
            .fold(Point3::default(), |acc, &v| acc + v)
            * (1.0 / self.vertices.len() as f64);
        let six_v: f64 = (0..self.facets.len())
            .flat_map(|f| self.triangles(f, method))
            .map(|[a, b, c]| {
                let pa = self.vertices[a] - reference;
                let pb = self.vertices[b] - reference;
                let pc = self.vertices[c] - reference;
                pa.dot(&pb.cross(&pc))
            })
            .sum();
        six_v / 6.0
    }

    pub fn volume(&self) -> f64 {
        self.signed_volume(Triangulation::Fan)
    }

    pub fn volume_with(&self, method: Triangulation) -> f64 {
        self.signed_volume(method)
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.facets.len()).map(|f| self.facet_area(f)).sum()
    }

    pub fn metrics(&self) -> Metrics3 {
        Metrics3 {
            volume: self.volume(),
            surface_area: self.surface_area(),
        }
    }

    /// Supporting planes with coplanar facets grouped together.
    pub fn facet_planes(&self) -> Vec<FacetPlane> {
        let tol = PLANARITY_TOL * self.bounding_diagonal();
        let mut planes: Vec<FacetPlane> = Vec::new();
        for f in 0..self.facets.len() {
            let normal = self.facet_normal(f);
            let offset = normal.dot(&self.facet_centroid(f));
            match planes
                .iter_mut()
                .find(|p| p.normal.dot(&normal) > 1.0 - 1e-10 && (p.offset - offset).abs() <= tol)
            {
                Some(plane) => plane.members.push(f),
                None => planes.push(FacetPlane {
                    normal,
                    offset,
                    members: vec![f],
                }),
            }
        }
        planes
    }

    /// Every vertex lies on the inner side of every facet plane.
    pub fn is_convex(&self) -> bool {
        let tol = PLANARITY_TOL * self.bounding_diagonal();
        self.facet_planes().iter().all(|plane| {
            self.vertices
                .iter()
                .all(|v| plane.normal.dot(v) - plane.offset <= tol)
        })
    }

    /// Whether `p` (assumed on the plane of facet `f`) lies in the closed facet
    /// polygon, within `tol`. Facets are convex.
    pub fn facet_contains(&self, f: usize, p: Point3, tol: f64) -> bool {
        let normal = self.facet_normal(f);
        let idx = self.facets[f].indices();
        (0..idx.len()).all(|k| {
            let a = self.vertices[idx[k]];
            let b = self.vertices[idx[(k + 1) % idx.len()]];
            let edge = b - a;
            edge.cross(&(p - a)).dot(&normal) >= -tol * edge.norm()
        })
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::NonPositiveScale(c));
        }
        Ok(Polyhedron3 {
            vertices: self.vertices.iter().map(|&v| v * c).collect(),
            ..self.clone()
        })
    }

    pub fn translate(&self, offset: Point3) -> Self {
        Polyhedron3 {
            vertices: self.vertices.iter().map(|&v| v + offset).collect(),
            ..self.clone()
        }
    }
}

/// Ear clipping of a planar polygon given its (unnormalized) normal.
/// Returns index triples into `pts`.
fn ear_clip(pts: &[Point3], normal: Point3) -> Vec<[usize; 3]> {
    // Project by dropping the dominant normal axis, keeping CCW orientation.
    let (ax, ay) = if normal.z.abs() >= normal.x.abs() && normal.z.abs() >= normal.y.abs() {
        if normal.z >= 0.0 {
            (0, 1)
        } else {
            (1, 0)
        }
    } else if normal.x.abs() >= normal.y.abs() {
        if normal.x >= 0.0 {
            (1, 2)
        } else {
            (2, 1)
        }
    } else if normal.y >= 0.0 {
        (2, 0)
    } else {
        (0, 2)
    };
    let flat: Vec<(f64, f64)> = pts.iter().map(|p| (p.coord(ax), p.coord(ay))).collect();
    let cross = |o: usize, a: usize, b: usize| {
        (flat[a].0 - flat[o].0) * (flat[b].1 - flat[o].1)
            - (flat[a].1 - flat[o].1) * (flat[b].0 - flat[o].0)
    };

    let mut remaining: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::with_capacity(pts.len().saturating_sub(2));
    while remaining.len() > 3 {
        let m = remaining.len();
        let ear = (0..m).find(|&k| {
            let (a, b, c) = (
                remaining[(k + m - 1) % m],
                remaining[k],
                remaining[(k + 1) % m],
            );
            if cross(a, b, c) <= 0.0 {
                return false;
            }
            remaining.iter().all(|&q| {
                q == a
                    || q == b
                    || q == c
                    || cross(a, b, q) < 0.0
                    || cross(b, c, q) < 0.0
                    || cross(c, a, q) < 0.0
            })
        });
        // Degenerate input (collinear run): clip the first vertex anyway.
        let k = ear.unwrap_or(0);
        out.push([
            remaining[(k + m - 1) % m],
            remaining[k],
            remaining[(k + 1) % m],
        ]);
        remaining.remove(k);
    }
    out.push([remaining[0], remaining[1], remaining[2]]);
    out
}
