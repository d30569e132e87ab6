//! Inner parallel bodies of convex polygons and the perimeter they encode.
//!
//! Rolling a disk of radius `eps` around the inside of a convex polygon traces
//! the polygon cut by every edge line moved inward by `eps`. The area lost,
//! divided by `eps`, tends to the perimeter as `eps -> 0`. This works whether
//! or not the polygon has an inscribed circle touching every side.

use std::io::Write;

use serde::Serialize;

use crate::core2d::{Point2, Polygon2, DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::inscribe::{incircle, polygon_constraints, HalfSpace};
use crate::vector::Coords;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErosionRow {
    pub epsilon: f64,
    pub inner_area: f64,
    /// `(A - A_eps) / eps`.
    pub quotient: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErosionTable {
    /// Ordered by decreasing epsilon.
    pub rows: Vec<ErosionRow>,
    pub extrapolated_limit: f64,
    pub exact_perimeter: f64,
    pub relative_error: f64,
}

impl ErosionTable {
    /// Writes `epsilon,inner_area,quotient` with a header row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Intersection of the half-planes of `p` each shifted inward by `eps`.
pub fn inner_offset(p: &Polygon2, eps: f64) -> Result<Polygon2> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    let r = incircle(p)?.radius;
    if eps >= r {
        return Err(Error::EpsilonTooLarge { eps, limit: r });
    }
    let mut ring = p.vertices().to_vec();
    for h in polygon_constraints(p)? {
        ring = clip(&ring, &h, h.offset() + eps);
        if ring.is_empty() {
            break;
        }
    }
    dedup_ring(&mut ring);
    if ring.len() < 3 {
        return Err(Error::EpsilonTooLarge { eps, limit: r });
    }
    Polygon2::new(ring).map_err(|_| Error::EpsilonTooLarge { eps, limit: r })
}

/// Sutherland-Hodgman step: keeps the part of `ring` with `n . x >= level`.
fn clip(ring: &[Point2], h: &HalfSpace<Point2>, level: f64) -> Vec<Point2> {
    let n = h.normal();
    let side = |q: &Point2| n.x * q.x + n.y * q.y - level;
    let mut out = Vec::with_capacity(ring.len() + 1);
    for (i, a) in ring.iter().enumerate() {
        let b = &ring[(i + 1) % ring.len()];
        let (sa, sb) = (side(a), side(b));
        if sa >= 0.0 {
            out.push(*a);
        }
        if (sa >= 0.0) != (sb >= 0.0) {
            let t = sa / (sa - sb);
            out.push(*a + (*b - *a) * t);
        }
    }
    out
}

fn dedup_ring(ring: &mut Vec<Point2>) {
    ring.dedup_by(|b, a| a.distance(b) <= DEGENERACY_TOL);
    while ring.len() > 1 && ring[0].distance(&ring[ring.len() - 1]) <= DEGENERACY_TOL {
        ring.pop();
    }
}

/// Smallest depth at which an edge of the inner offset shrinks to a point.
///
/// Below this depth the lost area is exactly `L eps - K eps^2`. An edge of
/// length `l` whose ends turn by `a` and `b` shortens at rate
/// `tan(a/2) + tan(b/2)`.
pub fn first_edge_collapse(p: &Polygon2) -> Result<f64> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    let edges = p.merged_edges();
    let n = edges.len();
    let turn = |i: usize| {
        let (a, b) = (&edges[(i + n - 1) % n], &edges[i]);
        let (u, v) = (a.end - a.start, b.end - b.start);
        u.cross(&v).atan2(u.dot(&v))
    };
    Ok((0..n)
        .map(|i| {
            let rate = (turn(i) / 2.0).tan() + (turn((i + 1) % n) / 2.0).tan();
            edges[i].start.distance(&edges[i].end) / rate
        })
        .fold(f64::INFINITY, f64::min))
}

/// `r/8`, lowered when needed so the last two levels stay below
/// [`first_edge_collapse`] and the extrapolation remains exact.
pub fn default_eps0(p: &Polygon2, levels: usize) -> Result<f64> {
    if levels < 2 {
        return Err(Error::TooFewLevels(levels));
    }
    let r = incircle(p)?.radius;
    let collapse = first_edge_collapse(p)?;
    Ok((r / 8.0).min(0.5 * collapse * 2f64.powi(levels as i32 - 2)))
}

/// Area quotients at `eps0, eps0/2, ..., eps0/2^(levels-1)` and their limit.
///
/// For a convex polygon `A - A_eps = L eps - c eps^2` while no edge vanishes,
/// so one Richardson step on the last two rows recovers `L` exactly. If an
/// edge collapses above the last two depths the limit is only approximate;
/// [`default_eps0`] picks a start that avoids this.
pub fn erosion_derivative(p: &Polygon2, eps0: f64, levels: usize) -> Result<ErosionTable> {
    if levels < 2 {
        return Err(Error::TooFewLevels(levels));
    }
    if !(eps0 > 0.0) || !eps0.is_finite() {
        return Err(Error::NonPositiveEpsilon(eps0));
    }
    let r = incircle(p)?.radius;
    if eps0 >= r / 2.0 {
        return Err(Error::EpsilonTooLarge {
            eps: eps0,
            limit: r / 2.0,
        });
    }
    let area = p.signed_area();
    let rows = (0..levels)
        .map(|k| {
            let epsilon = eps0 / 2f64.powi(k as i32);
            let inner_area = inner_offset(p, epsilon)?.signed_area();
            Ok(ErosionRow {
                epsilon,
                inner_area,
                quotient: (area - inner_area) / epsilon,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let extrapolated_limit = 2.0 * rows[levels - 1].quotient - rows[levels - 2].quotient;
    let exact_perimeter = p.perimeter();
    Ok(ErosionTable {
        rows,
        extrapolated_limit,
        exact_perimeter,
        relative_error: (extrapolated_limit - exact_perimeter).abs() / exact_perimeter,
    })
}

/// `[ab - (a - 2 eps)(b - 2 eps)] / eps`, simplified.
pub fn rectangle_quotient_closed_form(a: f64, b: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon(eps));
    }
    let limit = a.min(b) / 2.0;
    if eps >= limit {
        return Err(Error::EpsilonTooLarge { eps, limit });
    }
    Ok(2.0 * a + 2.0 * b - 4.0 * eps)
}
