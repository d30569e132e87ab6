//! Numerical check of `dA/dr = L` (and `dV/dr = S`) along the inradius family.
//!
//! A tangential shape `W` with inradius `r`, moved so its inscribed ball is
//! centred at the origin, generates the family `rho * W / r`. Every side of a
//! member sits at distance `rho` from the origin, so the gap between the sides
//! of two members is the same for every side. That is what makes the enclosed
//! measure differentiate to the boundary measure.

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::inscribe::{HalfSpace, InscribedBall};
use crate::shape::Body;
use crate::vector::{solve_dense, Coords};
use crate::{Point2, Point3};

/// A line or plane counts as passing through the origin below this distance.
pub const ORIGIN_TOL: f64 = 1e-12;

/// Relative slack an inequality must clear to count as strict.
pub const STRICT_MARGIN: f64 = 1e-12;

/// Default central-difference step as a fraction of the radius.
pub const DEFAULT_STEP_FACTOR: f64 = 1e-3;

/// Distance between the boundary of `h` and its scaled copy `c h`.
///
/// Equals `|1 - c| |x0|` where `x0` is the boundary point nearest the origin.
pub fn scaled_boundary_distance<P: Coords>(h: &HalfSpace<P>, c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::NonPositiveScale(c));
    }
    let nearest = h.nearest_to_origin();
    if nearest.norm() <= ORIGIN_TOL {
        return Err(Error::LineThroughOrigin);
    }
    Ok((1.0 - c).abs() * nearest.norm())
}

pub fn scaled_line_distance(line: &HalfSpace<Point2>, c: f64) -> Result<f64> {
    scaled_boundary_distance(line, c)
}

pub fn scaled_plane_distance(plane: &HalfSpace<Point3>, c: f64) -> Result<f64> {
    scaled_boundary_distance(plane, c)
}

/// The shapes `rho * normalized`, where `normalized` has its inscribed ball
/// of radius 1 centred at the origin.
#[derive(Clone, Debug)]
pub struct ScalingFamily<B: Body> {
    normalized: B,
    base_radius: f64,
    base_center: B::Point,
}

impl<B: Body> ScalingFamily<B> {
    pub fn normalized(&self) -> &B {
        &self.normalized
    }

    /// Inradius of the shape the family was built from.
    pub fn base_radius(&self) -> f64 {
        self.base_radius
    }

    pub fn base_center(&self) -> B::Point {
        self.base_center
    }

    /// Member with inradius `rho`.
    pub fn member(&self, rho: f64) -> Result<B> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::NonPositiveRadius(rho));
        }
        self.normalized.scaled(rho)
    }

    pub fn measure(&self, rho: f64) -> Result<f64> {
        Ok(self.member(rho)?.measure())
    }

    pub fn boundary_measure(&self, rho: f64) -> Result<f64> {
        Ok(self.member(rho)?.boundary_measure())
    }
}

/// Builds the inradius family of a tangential shape.
pub fn make_family<B: Body>(shape: &B, ball: &InscribedBall<B::Point>) -> Result<ScalingFamily<B>> {
    let report = shape.tangency(ball)?;
    if !report.is_tangential {
        return Err(Error::NotTangential);
    }
    let (center, radius) = refine_center(&shape.constraints()?, ball.center, ball.radius)?;
    let centered = shape.translated(center * -1.0);
    Ok(ScalingFamily {
        normalized: centered.scaled(1.0 / radius)?,
        base_radius: radius,
        base_center: center,
    })
}

/// Least-squares solution of `n_i . x - r = b_i` over every constraint.
///
/// The LP optimum carries a small bias from the tie-break slop. When every
/// side is tangent this system is consistent and its solution is exact to
/// rounding. Falls back to the LP ball if the refinement moves it noticeably.
fn refine_center<P: Coords>(
    constraints: &[HalfSpace<P>],
    center: P,
    radius: f64,
) -> Result<(P, f64)> {
    let k = P::DIM + 1;
    let mut a = vec![vec![0.0; k + 1]; k];
    for h in constraints {
        let n = h.normal();
        let mut row: Vec<f64> = (0..P::DIM).map(|i| n.coord(i)).collect();
        row.push(-1.0);
        for i in 0..k {
            for j in 0..k {
                a[i][j] += row[i] * row[j];
            }
            a[i][k] += row[i] * h.offset();
        }
    }
    let Some(sol) = solve_dense(a) else {
        return Ok((center, radius));
    };
    let refined = P::from_fn(|i| sol[i]);
    let r = sol[P::DIM];
    if (refined - center).norm() > 1e-6 * radius || (r - radius).abs() > 1e-6 * radius {
        return Ok((center, radius));
    }
    Ok((refined, r))
}

/// One evaluation of the squeeze `L(s)(r - s) < A(r) - A(s) < L(r)(r - s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeSample {
    pub s: f64,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub strict: bool,
}

// Serialized as the tuple (s, lower, middle, upper).
impl Serialize for SqueezeSample {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(4)?;
        t.serialize_element(&self.s)?;
        t.serialize_element(&self.lower)?;
        t.serialize_element(&self.middle)?;
        t.serialize_element(&self.upper)?;
        t.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivativeReport {
    pub r: f64,
    pub measure: f64,
    pub boundary_measure: f64,
    pub fd_estimate: f64,
    pub residual: f64,
    /// `|A - r L / 2| / A` in the plane, `|V - r S / 3| / V` in space. A
    /// consequence of the family's homogeneity, checked without differencing.
    pub ratio_identity_residual: f64,
    pub squeeze_ok: bool,
    pub samples: Vec<SqueezeSample>,
}

/// `{0.1, 0.25, 0.5, 0.75, 0.9, 1 - 1e-6} * r`.
pub fn default_squeeze_samples(r: f64) -> Vec<f64> {
    [0.1, 0.25, 0.5, 0.75, 0.9, 1.0 - 1e-6]
        .iter()
        .map(|f| f * r)
        .collect()
}

pub fn squeeze_check<B: Body>(
    family: &ScalingFamily<B>,
    at_r: f64,
    s_samples: &[f64],
) -> Result<Vec<SqueezeSample>> {
    let measure_r = family.measure(at_r)?;
    let boundary_r = family.boundary_measure(at_r)?;
    s_samples
        .iter()
        .map(|&s| {
            if !(s > 0.0 && s < at_r) {
                return Err(Error::SampleOutOfRange { s, r: at_r });
            }
            let gap = at_r - s;
            let lower = family.boundary_measure(s)? * gap;
            let middle = measure_r - family.measure(s)?;
            let upper = boundary_r * gap;
            let margin = STRICT_MARGIN * upper.abs();
            Ok(SqueezeSample {
                s,
                lower,
                middle,
                upper,
                strict: middle - lower > margin && upper - middle > margin,
            })
        })
        .collect()
}

/// Five-point central difference of the enclosed measure at `at_r` with step
/// `h`, compared against the boundary measure of the member at `at_r`.
///
/// The measure is a polynomial of degree 2 or 3 in the radius. The five-point
/// stencil is exact for quartics, so the residual is pure rounding. The
/// three-point stencil would leave `V''' h^2 / 6` behind for solids.
pub fn verify_theorem<B: Body>(
    family: &ScalingFamily<B>,
    at_r: f64,
    h: f64,
) -> Result<DerivativeReport> {
    if !(at_r > 0.0) || !at_r.is_finite() {
        return Err(Error::NonPositiveRadius(at_r));
    }
    if !(h > 0.0) {
        return Err(Error::NonPositiveStep(h));
    }
    if 2.0 * h >= at_r {
        return Err(Error::StepTooLarge { h, r: at_r });
    }
    let measure = family.measure(at_r)?;
    let boundary_measure = family.boundary_measure(at_r)?;
    let m = |k: f64| family.measure(at_r + k * h);
    let fd_estimate = (8.0 * (m(1.0)? - m(-1.0)?) - (m(2.0)? - m(-2.0)?)) / (12.0 * h);
    let dim = B::dimension() as f64;
    let samples = squeeze_check(family, at_r, &default_squeeze_samples(at_r))?;
    Ok(DerivativeReport {
        r: at_r,
        measure,
        boundary_measure,
        fd_estimate,
        residual: (fd_estimate - boundary_measure).abs() / boundary_measure,
        ratio_identity_residual: (measure - at_r * boundary_measure / dim).abs() / measure,
        squeeze_ok: samples.iter().all(|s| s.strict),
        samples,
    })
}
