//! Common interface over polygons and polyhedra for the inradius analysis.

use crate::core2d::{Point2, Polygon2};
use crate::core3d::{Point3, Polyhedron3};
use crate::error::Result;
use crate::inscribe::{self, HalfSpace, InscribedBall, TangencyReport};
use crate::vector::Coords;

/// A bounded convex-or-not region whose enclosed measure (area, volume) and
/// boundary measure (perimeter, surface area) can be evaluated.
pub trait Body: Clone {
    type Point: Coords;

    /// Area in the plane, volume in space.
    fn measure(&self) -> f64;

    /// Perimeter in the plane, surface area in space.
    fn boundary_measure(&self) -> f64;

    fn scaled(&self, c: f64) -> Result<Self>;

    fn translated(&self, offset: Self::Point) -> Self;

    fn vertex_points(&self) -> Vec<Self::Point>;

    /// Supporting half-spaces, one per edge line or facet plane.
    fn constraints(&self) -> Result<Vec<HalfSpace<Self::Point>>>;

    fn inscribed_ball(&self) -> Result<InscribedBall<Self::Point>>;

    fn tangency(&self, ball: &InscribedBall<Self::Point>) -> Result<TangencyReport>;

    fn dimension() -> usize {
        Self::Point::DIM
    }
}

impl Body for Polygon2 {
    type Point = Point2;

    fn measure(&self) -> f64 {
        self.signed_area()
    }

    fn boundary_measure(&self) -> f64 {
        self.perimeter()
    }

    fn scaled(&self, c: f64) -> Result<Self> {
        self.scale(c)
    }

    fn translated(&self, offset: Point2) -> Self {
        self.translate(offset)
    }

    fn vertex_points(&self) -> Vec<Point2> {
        self.vertices().to_vec()
    }

    fn constraints(&self) -> Result<Vec<HalfSpace<Point2>>> {
        inscribe::polygon_constraints(self)
    }

    fn inscribed_ball(&self) -> Result<InscribedBall<Point2>> {
        inscribe::incircle(self)
    }

    fn tangency(&self, ball: &InscribedBall<Point2>) -> Result<TangencyReport> {
        inscribe::polygon_tangency(self, ball)
    }
}

impl Body for Polyhedron3 {
    type Point = Point3;

    fn measure(&self) -> f64 {
        self.volume()
    }

    fn boundary_measure(&self) -> f64 {
        self.surface_area()
    }

    fn scaled(&self, c: f64) -> Result<Self> {
        self.scale(c)
    }

    fn translated(&self, offset: Point3) -> Self {
        self.translate(offset)
    }

    fn vertex_points(&self) -> Vec<Point3> {
        self.vertices().to_vec()
    }

    fn constraints(&self) -> Result<Vec<HalfSpace<Point3>>> {
        Ok(inscribe::polyhedron_constraints(self))
    }

    fn inscribed_ball(&self) -> Result<InscribedBall<Point3>> {
        inscribe::insphere(self)
    }

    fn tangency(&self, ball: &InscribedBall<Point3>) -> Result<TangencyReport> {
        inscribe::polyhedron_tangency(self, ball)
    }
}
