//! Inradius-parameterized geometry of tangential polygons and polyhedra.
//!
//! For a polygon whose largest inscribed circle touches every edge, scaling
//! about the circle's center gives a one-parameter family indexed by the
//! inradius `r`, and along it `dA/dr = L`. The same holds in space with
//! volume and surface area: `dV/dr = S`. This crate builds that family,
//! checks the identity numerically, and for shapes that are not tangential
//! (a nonsquare rectangle, say) recovers the perimeter from inner offsets
//! instead: `lim (A - A_eps) / eps = L`.
//!
//! Modules:
//! - [`core2d`], [`core3d`]: validated polygons and closed polyhedra with their metrics.
//! - [`inscribe`]: largest inscribed ball by linear programming, tangency classification.
//! - [`derivcheck`]: scaling families, finite-difference and squeeze checks.
//! - [`erosion`]: inner offsets of convex polygons and the perimeter limit.
//! - [`closedform`]: circle/sphere formulas, regular polygons, cube and tetrahedron.
//! - [`io`]: polygon/mesh file formats.
//! - [`cli`]: the `inradius` command-line front end.

// `!(x > 0.0)` is the idiom here because it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod closedform;
pub mod core2d;
pub mod core3d;
pub mod derivcheck;
pub mod erosion;
mod error;
pub mod inscribe;
pub mod io;
mod lp;
pub mod shape;
pub mod vector;

pub use core2d::{Metrics2, Point2, Polygon2};
pub use core3d::{Metrics3, Point3, Polyhedron3};
pub use error::{Error, Result};
pub use inscribe::{HalfSpace, InscribedBall, Tangency, TangencyReport};
pub use shape::Body;
pub use vector::Coords;
