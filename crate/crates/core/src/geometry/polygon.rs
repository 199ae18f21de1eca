use std::f64::consts::TAU;

use super::{mean2, Aabb2, HalfPlane2, Point2, Tolerance};
use crate::error::{GeometryError, Result};

/// Minimum sine of the turn angle at every vertex.
const MIN_TURN_SINE: f64 = 1e-9;

/// A strictly convex polygon with counter-clockwise vertices.
///
/// `halfplanes()[i]` is the inward half-plane of the edge from vertex `i`
/// to vertex `i + 1` (cyclically).
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    halfplanes: Vec<HalfPlane2>,
    aabb: Aabb2,
    tol: Tolerance,
}

impl ConvexPolygon {
    /// Validates a vertex ring. Clockwise rings are reversed; anything that
    /// is not a strictly convex, simple ring is rejected.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let mut vertices = vertices;
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices { found: n, required: 3 });
        }
        if let Some(index) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }
        let aabb = Aabb2::from_points(&vertices);
        let tol = Tolerance::from_diagonal(aabb.diagonal());
        for i in 0..n {
            if vertices[i].distance(vertices[(i + 1) % n]) < tol.len.max(f64::MIN_POSITIVE) {
                return Err(GeometryError::RepeatedVertex { index: (i + 1) % n });
            }
        }

        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }

        let mut turning = 0.0;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let e1 = cur - prev;
            let e2 = next - cur;
            let cross = e1.cross(e2);
            if !(cross > MIN_TURN_SINE * e1.norm() * e2.norm()) {
                return Err(GeometryError::NotConvex { vertex: i });
            }
            turning += cross.atan2(e1.dot(e2));
        }
        // A ring that turns left everywhere but winds more than once is a star.
        if (turning - TAU).abs() > 1e-6 {
            return Err(GeometryError::NotConvex { vertex: 0 });
        }

        let halfplanes = (0..n)
            .map(|i| HalfPlane2::from_edge_with_min_length(vertices[i], vertices[(i + 1) % n], tol.len))
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            vertices,
            halfplanes,
            aabb,
            tol,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn halfplanes(&self) -> &[HalfPlane2] {
        &self.halfplanes
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn aabb(&self) -> &Aabb2 {
        &self.aabb
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// Endpoints of edge `i`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertices[i], self.vertices[(i + 1) % self.len()])
    }

    /// Vertex mean; strictly interior for a strictly convex polygon.
    pub fn centroid(&self) -> Point2 {
        mean2(&self.vertices)
    }

    /// Minimum signed distance to the edge lines (positive inside).
    pub fn min_signed_distance(&self, p: Point2) -> f64 {
        self.halfplanes.iter().map(|h| h.eval(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn min_edge_length(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                a.distance(b)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    // Shift to the first vertex to limit cancellation.
    let o = vertices[0];
    (0..n)
        .map(|i| (vertices[i] - o).cross(vertices[(i + 1) % n] - o))
        .sum::<f64>()
        * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(f64, f64)]) -> Vec<Point2> {
        raw.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    fn unit_square() -> Vec<Point2> {
        pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn clockwise_square_is_repaired() {
        let mut cw = unit_square();
        cw.reverse();
        let poly = ConvexPolygon::new(cw).unwrap();
        assert!(signed_area(poly.vertices()) > 0.0);
        assert_eq!(poly.centroid(), Point2::new(0.5, 0.5));
    }

    #[test]
    fn collinear_run_rejected() {
        let err = ConvexPolygon::new(pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap_err();
        assert!(matches!(err, GeometryError::NotConvex { .. }), "{err:?}");
        let err = ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0)])).unwrap_err();
        assert!(matches!(err, GeometryError::NotConvex { .. }), "{err:?}");
    }

    #[test]
    fn star_polygons_rejected() {
        // Pentagram: every turn is left but the ring winds twice.
        let star: Vec<Point2> = (0..5)
            .map(|k| {
                let t = TAU * (2 * k) as f64 / 5.0;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        assert!(matches!(ConvexPolygon::new(star), Err(GeometryError::NotConvex { .. })));
        // Concave dart.
        let dart = pts(&[(0.0, 0.0), (2.0, 1.0), (0.0, 2.0), (0.5, 1.0)]);
        assert!(matches!(ConvexPolygon::new(dart), Err(GeometryError::NotConvex { .. })));
    }

    #[test]
    fn too_few_and_repeated() {
        assert!(matches!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0)])),
            Err(GeometryError::TooFewVertices { found: 2, .. })
        ));
        assert!(matches!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)])),
            Err(GeometryError::RepeatedVertex { .. })
        ));
        assert!(matches!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (f64::NAN, 0.0), (0.0, 1.0)])),
            Err(GeometryError::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn validation_is_idempotent() {
        let mut cw = unit_square();
        cw.reverse();
        let once = ConvexPolygon::new(cw).unwrap();
        let twice = ConvexPolygon::new(once.vertices().to_vec()).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn vertices_satisfy_every_halfplane() {
        let poly = ConvexPolygon::new(pts(&[(0.0, 0.0), (3.0, -1.0), (4.0, 2.0), (1.0, 3.0), (-1.0, 1.5)])).unwrap();
        let eps = poly.tolerance().plane;
        for h in poly.halfplanes() {
            for &v in poly.vertices() {
                assert!(h.eval(v) >= -eps);
            }
            assert!(h.eval(poly.centroid()) > poly.tolerance().query);
        }
    }
}
