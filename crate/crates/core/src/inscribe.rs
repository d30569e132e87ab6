//! Largest inscribed circle / sphere (Chebyshev center) of convex shapes, and
//! tangency classification of that ball against every edge or facet.
//!
//! The ball is the solution of
//!
//! ```text
//!     maximize r   subject to   n_i . x - b_i >= r   for every side i
//! ```
//!
//! with unit inward normals `n_i`. When the optimal centers form a segment or
//! a polygon (a nonsquare rectangle, a box) the reported center is the
//! lexicographically smallest one, `center_unique` is false, and tangency is
//! classified at the centroid of the optimal face so that only sides touched by
//! every optimal ball count as tangent.

use serde::Serialize;

use crate::core2d::{Point2, Polygon2};
use crate::core3d::{Point3, Polyhedron3};
use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::vector::Coords;

/// Tangency tolerance relative to the radius.
pub const TANGENCY_REL_TOL: f64 = 1e-7;

/// Optimal-face width (relative to the radius) above which the center is
/// reported as not unique.
const UNIQUENESS_REL_TOL: f64 = 1e-6;

/// Closed half-space `normal . x >= offset` with a unit inward normal.
///
/// The boundary is the line (plane) `normal . x = offset`; its distance from
/// the origin is `|offset|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfSpace<P> {
    normal: P,
    offset: f64,
}

impl<P: Coords> HalfSpace<P> {
    /// Normalizes `normal` to unit length, rescaling `offset` to match.
    pub fn new(normal: P, offset: f64) -> Result<Self> {
        let len = normal.norm();
        if !(len > 0.0) || !len.is_finite() || !offset.is_finite() {
            return Err(Error::ZeroNormal);
        }
        Ok(HalfSpace {
            normal: normal * (1.0 / len),
            offset: offset / len,
        })
    }

    /// Half-space whose boundary passes through `point`.
    pub fn through(normal: P, point: P) -> Result<Self> {
        let len = normal.norm();
        if !(len > 0.0) {
            return Err(Error::ZeroNormal);
        }
        let unit = normal * (1.0 / len);
        Ok(HalfSpace {
            normal: unit,
            offset: unit.dot(&point),
        })
    }

    pub fn normal(&self) -> P {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Signed distance from `x` to the boundary, positive inside.
    pub fn slack(&self, x: P) -> f64 {
        self.normal.dot(&x) - self.offset
    }

    /// Point of the boundary nearest the origin.
    pub fn nearest_to_origin(&self) -> P {
        self.normal * self.offset
    }

    /// `c H = { c x : x in H }` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        HalfSpace {
            normal: self.normal,
            offset: self.offset * c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InscribedBall<P> {
    pub center: P,
    pub radius: f64,
    /// Constraints within the tangency tolerance at `center`.
    pub active_indices: Vec<usize>,
    pub center_unique: bool,
    /// Centroid of the computed extreme points of the optimal face; equals
    /// `center` when the optimum is unique.
    pub face_centroid: P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tangency {
    Tangent,
    Clear,
    TangentLineButOutsideSegment,
}

/// Tangency of one side (a merged edge or a group of coplanar facets).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElementTangency {
    /// Original edge or facet indices making up this side.
    pub members: Vec<usize>,
    pub status: Tangency,
    /// Distance from the ball to the side's supporting line or plane.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangencyReport {
    pub elements: Vec<ElementTangency>,
    pub is_tangential: bool,
    pub min_gap: f64,
}

impl TangencyReport {
    fn from_elements(elements: Vec<ElementTangency>) -> Self {
        let is_tangential = elements.iter().all(|e| e.status == Tangency::Tangent);
        let min_gap = elements.iter().map(|e| e.gap).fold(f64::INFINITY, f64::min);
        TangencyReport {
            elements,
            is_tangential,
            min_gap,
        }
    }

    pub fn count(&self, status: Tangency) -> usize {
        self.elements.iter().filter(|e| e.status == status).count()
    }
}

fn min_slack<P: Coords>(constraints: &[HalfSpace<P>], x: P) -> f64 {
    constraints
        .iter()
        .map(|c| c.slack(x))
        .fold(f64::INFINITY, f64::min)
}

/// Center and radius of the largest ball inside `normal_i . x >= offset_i`.
pub fn lp_max_radius<P: Coords>(constraints: &[HalfSpace<P>]) -> Result<InscribedBall<P>> {
    let d = P::DIM;
    if constraints.is_empty() {
        return Err(Error::Unbounded);
    }

    // -n.x + r <= -b
    let rows: Vec<Vec<f64>> = constraints
        .iter()
        .map(|c| {
            let mut row: Vec<f64> = (0..d).map(|i| -c.normal.coord(i)).collect();
            row.push(1.0);
            row
        })
        .collect();
    let rhs: Vec<f64> = constraints.iter().map(|c| -c.offset).collect();
    let mut objective = vec![0.0; d + 1];
    objective[d] = 1.0;
    let start = match lp::maximize(&objective, &rows, &rhs)? {
        LpOutcome::Optimal { point, .. } => P::from_fn(|i| point[i]),
        LpOutcome::Unbounded => return Err(Error::Unbounded),
        LpOutcome::Infeasible => {
            return Err(Error::NumericalFailure(
                "radius problem reported infeasible".into(),
            ))
        }
    };

    let best = min_slack(constraints, start);
    let scale = constraints
        .iter()
        .map(|c| c.offset.abs())
        .chain((0..d).map(|i| start.coord(i).abs()))
        .fold(best.abs(), f64::max);
    if !(best > 8.0 * f64::EPSILON * scale) {
        return Err(Error::Infeasible);
    }

    // Optimal face, widened by `slop` to absorb rounding. Each LP is posed in
    // coordinates relative to a base point known to lie on the face, with
    // every margin clamped to at least `slop`. The origin is then strictly
    // feasible, so a sliver of width `slop` can never be reported empty.
    let slop = 64.0 * f64::EPSILON * scale;
    let face_rows: Vec<Vec<f64>> = constraints
        .iter()
        .map(|c| (0..d).map(|i| -c.normal.coord(i)).collect())
        .collect();
    let extreme = |direction: P, base: P, pinned: &[(usize, f64)]| -> Result<P> {
        let mut rows = face_rows.clone();
        let mut rhs: Vec<f64> = constraints
            .iter()
            .map(|c| (c.slack(base) - best).max(0.0) + slop)
            .collect();
        for &(axis, value) in pinned {
            rows.push(P::axis(axis).to_vec());
            rhs.push((value - base.coord(axis)).max(0.0) + slop);
        }
        match lp::maximize(&direction.to_vec(), &rows, &rhs)? {
            LpOutcome::Optimal { point, .. } => Ok(base + P::from_fn(|i| point[i])),
            LpOutcome::Unbounded => Err(Error::Unbounded),
            LpOutcome::Infeasible => Err(Error::NumericalFailure("optimal face is empty".into())),
        }
    };

    // Lexicographic minimum: x first, then y, then z.
    let mut pinned: Vec<(usize, f64)> = Vec::new();
    let mut center = start;
    for axis in 0..d {
        center = extreme(P::axis(axis) * -1.0, center, &pinned)?;
        pinned.push((axis, center.coord(axis)));
    }

    let mut varying = Vec::new();
    for axis in 0..d {
        let lo = extreme(P::axis(axis) * -1.0, start, &[])?;
        let hi = extreme(P::axis(axis), start, &[])?;
        if hi.coord(axis) - lo.coord(axis) > UNIQUENESS_REL_TOL * best {
            varying.push(lo);
            varying.push(hi);
        }
    }
    let center_unique = varying.is_empty();
    let face_centroid = if center_unique {
        center
    } else {
        varying.iter().fold(P::zero(), |acc, &p| acc + p) * (1.0 / varying.len() as f64)
    };

    let radius = min_slack(constraints, center);
    let tol = TANGENCY_REL_TOL * radius;
    let active_indices = constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.slack(center) - radius <= tol)
        .map(|(i, _)| i)
        .collect();
    Ok(InscribedBall {
        center,
        radius,
        active_indices,
        center_unique,
        face_centroid,
    })
}

/// Whether a ball of `radius` fits inside the constraints.
pub fn admits_radius<P: Coords>(constraints: &[HalfSpace<P>], radius: f64) -> Result<bool> {
    let rows: Vec<Vec<f64>> = constraints
        .iter()
        .map(|c| (0..P::DIM).map(|i| -c.normal.coord(i)).collect())
        .collect();
    let rhs: Vec<f64> = constraints.iter().map(|c| -(c.offset + radius)).collect();
    lp::is_feasible(&rows, &rhs, P::DIM)
}

/// One inward half-plane per side of the polygon (collinear edges merged).
pub fn polygon_constraints(p: &Polygon2) -> Result<Vec<HalfSpace<Point2>>> {
    p.merged_edges()
        .iter()
        .map(|e| {
            let dir = e.end - e.start;
            HalfSpace::through(Point2::new(-dir.y, dir.x), e.start)
        })
        .collect()
}

/// One inward half-space per facet plane (coplanar facets merged).
pub fn polyhedron_constraints(p: &Polyhedron3) -> Vec<HalfSpace<Point3>> {
    p.facet_planes()
        .iter()
        .map(|plane| HalfSpace {
            normal: -plane.normal,
            offset: -plane.offset,
        })
        .collect()
}

pub fn incircle(p: &Polygon2) -> Result<InscribedBall<Point2>> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    lp_max_radius(&polygon_constraints(p)?)
}

pub fn insphere(p: &Polyhedron3) -> Result<InscribedBall<Point3>> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    lp_max_radius(&polyhedron_constraints(p))
}

fn check_ball<P: Coords>(ball: &InscribedBall<P>, sides: usize) -> Result<()> {
    if !(ball.radius > 0.0) {
        return Err(Error::MismatchedShape(format!(
            "radius {} is not positive",
            ball.radius
        )));
    }
    if let Some(&i) = ball.active_indices.iter().find(|&&i| i >= sides) {
        return Err(Error::MismatchedShape(format!(
            "active index {i} but the shape has {sides} sides"
        )));
    }
    Ok(())
}

fn classify(gap: f64, tol: f64, foot_inside: impl FnOnce() -> bool) -> Result<Tangency> {
    if gap < -tol {
        return Err(Error::MismatchedShape(format!(
            "ball crosses a side by {:e}",
            -gap
        )));
    }
    Ok(if gap > tol {
        Tangency::Clear
    } else if foot_inside() {
        Tangency::Tangent
    } else {
        Tangency::TangentLineButOutsideSegment
    })
}

/// Classifies every side of `p` against `ball`.
pub fn polygon_tangency(p: &Polygon2, ball: &InscribedBall<Point2>) -> Result<TangencyReport> {
    let edges = p.merged_edges();
    check_ball(ball, edges.len())?;
    let center = ball.face_centroid;
    let tol = TANGENCY_REL_TOL * ball.radius;
    let elements = edges
        .into_iter()
        .map(|e| {
            let dir = e.end - e.start;
            let len = dir.norm();
            let unit = dir * (1.0 / len);
            let inward = Point2::new(-unit.y, unit.x);
            let distance = inward.dot(&(center - e.start));
            let status = classify(distance - ball.radius, tol, || {
                let foot = center - inward * distance;
                let along = (foot - e.start).dot(&unit);
                along >= -tol && along <= len + tol
            })?;
            Ok(ElementTangency {
                members: e.members,
                status,
                gap: distance - ball.radius,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TangencyReport::from_elements(elements))
}

/// Classifies every facet plane of `p` against `ball`.
pub fn polyhedron_tangency(
    p: &Polyhedron3,
    ball: &InscribedBall<Point3>,
) -> Result<TangencyReport> {
    let planes = p.facet_planes();
    check_ball(ball, planes.len())?;
    let center = ball.face_centroid;
    let tol = TANGENCY_REL_TOL * ball.radius;
    let elements = planes
        .into_iter()
        .map(|plane| {
            let distance = plane.offset - plane.normal.dot(&center);
            let status = classify(distance - ball.radius, tol, || {
                let foot = center + plane.normal * distance;
                plane
                    .members
                    .iter()
                    .any(|&f| p.facet_contains(f, foot, tol))
            })?;
            Ok(ElementTangency {
                members: plane.members,
                status,
                gap: distance - ball.radius,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TangencyReport::from_elements(elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core3d::tests::cube_table;
    use approx::assert_abs_diff_eq;

    fn polygon(coords: &[[f64; 2]]) -> Polygon2 {
        Polygon2::from_coords(coords).unwrap()
    }

    fn square() -> Polygon2 {
        polygon(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
    }

    fn rectangle() -> Polygon2 {
        polygon(&[[0.0, 0.0], [4.0, 0.0], [4.0, 2.0], [0.0, 2.0]])
    }

    #[test]
    fn square_ball() {
        let ball = lp_max_radius(&polygon_constraints(&square()).unwrap()).unwrap();
        assert_abs_diff_eq!(ball.center.x, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ball.center.y, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ball.radius, 1.0, epsilon = 1e-10);
        assert_eq!(ball.active_indices.len(), 4);
        assert!(ball.center_unique);
    }

    #[test]
    fn right_triangle_ball() {
        // Incircle of a right triangle: r = (a + b - c) / 2, center (r, r).
        let oracle_r = (3.0 + 4.0 - 5.0) / 2.0;
        let ball = incircle(&polygon(&[[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]])).unwrap();
        assert_abs_diff_eq!(ball.radius, oracle_r, epsilon = 1e-10);
        assert_abs_diff_eq!(ball.center.x, oracle_r, epsilon = 1e-10);
        assert_abs_diff_eq!(ball.center.y, oracle_r, epsilon = 1e-10);
        assert!(ball.center_unique);
        assert_eq!(ball.active_indices.len(), 3);
    }

    #[test]
    fn rectangle_tie_break() {
        // Optimal centers are (x, 1) for x in [1, 3].
        let ball = incircle(&rectangle()).unwrap();
        assert_abs_diff_eq!(ball.radius, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ball.center.x, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ball.center.y, 1.0, epsilon = 1e-9);
        assert!(!ball.center_unique);
        assert_abs_diff_eq!(ball.face_centroid.x, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ball.face_centroid.y, 1.0, epsilon = 1e-9);

        let report = polygon_tangency(&rectangle(), &ball).unwrap();
        assert_eq!(report.count(Tangency::Tangent), 2);
        assert_eq!(report.count(Tangency::Clear), 2);
        assert!(!report.is_tangential);
    }

    #[test]
    fn equilateral_and_hexagon() {
        let s = 3f64.sqrt();
        let ball = incircle(&polygon(&[[s, -1.0], [0.0, 2.0], [-s, -1.0]])).unwrap();
        assert_abs_diff_eq!(ball.radius, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ball.center.x, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ball.center.y, 0.0, epsilon = 1e-10);

        // Regular hexagon with apothem 2 centred at (1, -3).
        let circum = 2.0 / (std::f64::consts::PI / 6.0).cos();
        let hex: Vec<Point2> = (0..6)
            .map(|k| {
                let a = std::f64::consts::PI / 3.0 * k as f64;
                Point2::new(1.0 + circum * a.cos(), -3.0 + circum * a.sin())
            })
            .collect();
        let hex = Polygon2::new(hex).unwrap();
        let ball = incircle(&hex).unwrap();
        assert_abs_diff_eq!(ball.radius, 2.0, epsilon = 1e-10);
        let c = hex.centroid_of_vertices();
        assert_abs_diff_eq!(ball.center.x, c.x, epsilon = 1e-9);
        assert_abs_diff_eq!(ball.center.y, c.y, epsilon = 1e-9);
    }

    #[test]
    fn l_shape_is_not_convex() {
        let l = polygon(&[
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ]);
        assert_eq!(incircle(&l), Err(Error::NotConvex));
    }

    #[test]
    fn lp_errors() {
        // Strip 0 <= y <= 2 does not enclose anything.
        let strip = vec![
            HalfSpace::new(Point2::new(0.0, 1.0), 0.0).unwrap(),
            HalfSpace::new(Point2::new(0.0, -1.0), -2.0).unwrap(),
        ];
        assert_eq!(lp_max_radius(&strip), Err(Error::Unbounded));
        let one = vec![HalfSpace::new(Point2::new(0.0, 1.0), 0.0).unwrap()];
        assert_eq!(lp_max_radius(&one), Err(Error::Unbounded));
        // x >= 1 and x <= -1 (plus y bounds): empty.
        let empty = vec![
            HalfSpace::new(Point2::new(1.0, 0.0), 1.0).unwrap(),
            HalfSpace::new(Point2::new(-1.0, 0.0), 1.0).unwrap(),
            HalfSpace::new(Point2::new(0.0, 1.0), 0.0).unwrap(),
            HalfSpace::new(Point2::new(0.0, -1.0), -1.0).unwrap(),
        ];
        assert_eq!(lp_max_radius(&empty), Err(Error::Infeasible));
        assert_eq!(
            HalfSpace::new(Point2::new(0.0, 0.0), 1.0),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn square_tangency_and_certificate() {
        let sq = square();
        let ball = incircle(&sq).unwrap();
        let report = polygon_tangency(&sq, &ball).unwrap();
        assert!(report.is_tangential);
        assert_eq!(report.count(Tangency::Tangent), 4);
        let cons = polygon_constraints(&sq).unwrap();
        assert!(admits_radius(&cons, 1.0 - 1e-6).unwrap());
        assert!(!admits_radius(&cons, 1.0 + 1e-6).unwrap());
    }

    #[test]
    fn classification_rules() {
        let tol = 1e-7;
        assert_eq!(classify(0.0, tol, || true), Ok(Tangency::Tangent));
        assert_eq!(classify(5e-8, tol, || true), Ok(Tangency::Tangent));
        assert_eq!(classify(1e-3, tol, || true), Ok(Tangency::Clear));
        assert_eq!(
            classify(0.0, tol, || false),
            Ok(Tangency::TangentLineButOutsideSegment)
        );
        assert!(matches!(
            classify(-1e-3, tol, || true),
            Err(Error::MismatchedShape(_))
        ));
    }

    #[test]
    fn cut_corner_stays_clear() {
        // Triangle (0,0),(4,0),(0,3) has incircle centre (1,1), r = 1; cutting
        // the far corner at x = 3.5 leaves the circle clear of the cut.
        let cut = polygon(&[[0.0, 0.0], [3.5, 0.0], [3.5, 0.375], [0.0, 3.0]]);
        let ball = incircle(&cut).unwrap();
        assert_abs_diff_eq!(ball.radius, 1.0, epsilon = 1e-10);
        let report = polygon_tangency(&cut, &ball).unwrap();
        assert_eq!(report.count(Tangency::Tangent), 3);
        assert_eq!(report.count(Tangency::Clear), 1);
    }

    #[test]
    fn foreign_ball_is_rejected() {
        let tri = polygon(&[[0.0, 0.0], [1.0, 0.0], [0.5, 4.0]]);
        let outside = InscribedBall {
            center: Point2::new(3.0, 1.0),
            radius: 1.0,
            active_indices: vec![],
            center_unique: true,
            face_centroid: Point2::new(3.0, 1.0),
        };
        assert!(matches!(
            polygon_tangency(&tri, &outside),
            Err(Error::MismatchedShape(_))
        ));
        let bad_index = InscribedBall {
            active_indices: vec![7],
            ..incircle(&tri).unwrap()
        };
        assert!(matches!(
            polygon_tangency(&tri, &bad_index),
            Err(Error::MismatchedShape(_))
        ));
    }

    #[test]
    fn cube_insphere_and_box() {
        let (v, f) = cube_table(1.0);
        let cube = Polyhedron3::from_coords(&v, f).unwrap();
        let ball = insphere(&cube).unwrap();
        assert_abs_diff_eq!(ball.radius, 1.0, epsilon = 1e-10);
        for i in 0..3 {
            assert_abs_diff_eq!(ball.center.coord(i), 0.0, epsilon = 1e-10);
        }
        let report = polyhedron_tangency(&cube, &ball).unwrap();
        assert!(report.is_tangential);
        assert_eq!(report.count(Tangency::Tangent), 6);

        let unit = cube
            .scale(0.5)
            .unwrap()
            .translate(Point3::new(5.5, 5.5, 5.5));
        let ball = insphere(&unit).unwrap();
        assert_abs_diff_eq!(ball.radius, 0.5, epsilon = 1e-10);
        for i in 0..3 {
            assert_abs_diff_eq!(ball.center.coord(i), 5.5, epsilon = 1e-9);
        }

        // 2 x 2 x 4 box: r = 1, tangent to the four long sides only.
        let (mut v, f) = cube_table(1.0);
        for p in &mut v {
            p[2] *= 2.0;
        }
        let b = Polyhedron3::from_coords(&v, f).unwrap();
        let ball = insphere(&b).unwrap();
        assert_abs_diff_eq!(ball.radius, 1.0, epsilon = 1e-10);
        assert!(!ball.center_unique);
        assert_abs_diff_eq!(ball.center.z, -1.0, epsilon = 1e-9);
        let report = polyhedron_tangency(&b, &ball).unwrap();
        assert_eq!(report.count(Tangency::Tangent), 4);
        assert_eq!(report.count(Tangency::Clear), 2);
    }

    #[test]
    fn triangulated_cube_groups_coplanar_facets() {
        let (v, f) = cube_table(1.0);
        let tris: Vec<Vec<usize>> = f
            .iter()
            .flat_map(|q| vec![vec![q[0], q[1], q[2]], vec![q[0], q[2], q[3]]])
            .collect();
        let cube = Polyhedron3::from_coords(&v, tris).unwrap();
        let ball = insphere(&cube).unwrap();
        let report = polyhedron_tangency(&cube, &ball).unwrap();
        assert_eq!(report.elements.len(), 6);
        assert!(report.is_tangential);
        assert!(report.elements.iter().all(|e| e.members.len() == 2));
    }
}
