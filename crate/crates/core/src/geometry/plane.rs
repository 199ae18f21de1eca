use super::aabb::Aabb3;
use super::point::{mean3, Point2, Point3};
use super::Tolerance;
use crate::error::{GeometryError, Result};

/// Oriented line `a*x + b*y + c = 0` with unit normal `(a, b)`.
///
/// `eval` is the signed distance, positive on the interior side.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HalfPlane2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Oriented plane `a*x + b*y + c*z + d = 0` with unit normal `(a, b, c)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HalfSpace3 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl HalfPlane2 {
    /// Half-plane to the left of the directed segment `p -> q`.
    ///
    /// Fails when `p` and `q` are closer than `1e-12` times their
    /// coordinate scale.
    pub fn from_edge(p: Point2, q: Point2) -> Result<Self> {
        let scale = p.x.abs().max(p.y.abs()).max(q.x.abs()).max(q.y.abs()).max(1e-300);
        Self::from_edge_with_min_length(p, q, 1e-12 * scale)
    }

    pub fn from_edge_with_min_length(p: Point2, q: Point2, eps_len: f64) -> Result<Self> {
        let dir = q - p;
        let length = dir.norm();
        if !(length >= eps_len) || length == 0.0 {
            return Err(GeometryError::DegenerateEdge { length });
        }
        let n = dir.perp() * (1.0 / length);
        // Anchor at the midpoint so both endpoints evaluate to ~0 symmetrically.
        let mid = (p + q) * 0.5;
        Ok(Self {
            a: n.x,
            b: n.y,
            c: -(n.x * mid.x + n.y * mid.y),
        })
    }

    #[inline]
    pub fn eval(&self, p: Point2) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn normal(&self) -> Point2 {
        Point2::new(self.a, self.b)
    }

    pub fn flipped(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
        }
    }
}

impl HalfSpace3 {
    /// Plane through a planar face, oriented so `interior` evaluates positive.
    ///
    /// Tolerances are derived from the bounding box of the face and the
    /// interior point.
    pub fn from_face(face: &[Point3], interior: Point3) -> Result<Self> {
        let mut pts = face.to_vec();
        pts.push(interior);
        let tol = Tolerance::from_diagonal(Aabb3::from_points(&pts).diagonal());
        Self::from_face_with_tolerance(face, interior, &tol)
    }

    pub fn from_face_with_tolerance(face: &[Point3], interior: Point3, tol: &Tolerance) -> Result<Self> {
        let mut plane = Self::fit_face(face, 0, tol)?;
        let side = plane.eval(interior);
        if side.abs() < tol.query {
            return Err(GeometryError::InteriorOnPlane { face: 0 });
        }
        if side < 0.0 {
            plane = plane.flipped();
        }
        Ok(plane)
    }

    /// Plane through `face` with normal following the ring's right-hand
    /// winding (Newell's method). Checks non-collinearity and planarity.
    pub(crate) fn fit_face(face: &[Point3], face_index: usize, tol: &Tolerance) -> Result<Self> {
        if face.len() < 3 {
            return Err(GeometryError::DegenerateFace { face: face_index });
        }
        let mut n = Point3::default();
        for (i, &p) in face.iter().enumerate() {
            let q = face[(i + 1) % face.len()];
            n.x += (p.y - q.y) * (p.z + q.z);
            n.y += (p.z - q.z) * (p.x + q.x);
            n.z += (p.x - q.x) * (p.y + q.y);
        }
        let len = n.norm();
        // |n| is twice the projected area.
        if !(len > tol.len * tol.diagonal) {
            return Err(GeometryError::DegenerateFace { face: face_index });
        }
        let n = n * (1.0 / len);
        let c = mean3(face);
        let plane = Self {
            a: n.x,
            b: n.y,
            c: n.z,
            d: -n.dot(c),
        };
        let deviation = face.iter().map(|&p| plane.eval(p).abs()).fold(0.0, f64::max);
        if deviation > tol.plane {
            return Err(GeometryError::NonPlanarFace {
                face: face_index,
                deviation,
            });
        }
        Ok(plane)
    }

    #[inline]
    pub fn eval(&self, p: Point3) -> f64 {
        self.a * p.x + self.b * p.y + self.c * p.z + self.d
    }

    pub fn normal(&self) -> Point3 {
        Point3::new(self.a, self.b, self.c)
    }

    pub fn flipped(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn edge_along_x_axis() {
        let h = HalfPlane2::from_edge(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).unwrap();
        assert!(close(h.a, 0.0) && close(h.b, 1.0) && close(h.c, 0.0), "{h:?}");
    }

    #[test]
    fn upward_edge_at_x_one() {
        let h = HalfPlane2::from_edge(Point2::new(1.0, 0.0), Point2::new(1.0, 1.0)).unwrap();
        assert!(close(h.a, -1.0) && close(h.b, 0.0) && close(h.c, 1.0), "{h:?}");
    }

    #[test]
    fn degenerate_edge_rejected() {
        let p = Point2::new(3.0, 4.0);
        assert!(matches!(
            HalfPlane2::from_edge(p, p),
            Err(GeometryError::DegenerateEdge { .. })
        ));
    }

    #[test]
    fn left_normal_offset_is_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let q = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let h = HalfPlane2::from_edge(p, q).unwrap();
            let dir = q - p;
            let left = dir.perp() * (1.0 / dir.norm());
            let probe = (p + q) * 0.5 + left * 1e-3;
            assert!(h.eval(probe) > 0.0);
            assert!((h.a * h.a + h.b * h.b - 1.0).abs() < 1e-12);
            assert!(h.eval(p).abs() < 1e-12 * 20.0 && h.eval(q).abs() < 1e-12 * 20.0);
        }
    }

    #[test]
    fn eval_is_signed_distance() {
        let h = HalfPlane2 { a: 0.0, b: 1.0, c: 0.0 };
        assert_eq!(h.eval(Point2::new(5.0, 2.0)), 2.0);
        let s = HalfSpace3 {
            a: 0.0,
            b: 0.0,
            c: 1.0,
            d: 0.0,
        };
        assert_eq!(s.eval(Point3::new(1.0, 1.0, -3.0)), -3.0);
    }

    fn unit_square_face() -> Vec<Point3> {
        vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(1.0, 1.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ]
    }

    #[test]
    fn face_plane_oriented_towards_interior() {
        let h = HalfSpace3::from_face(&unit_square_face(), Point3::new(0.5, 0.5, 0.5)).unwrap();
        assert!(close(h.a, 0.0) && close(h.b, 0.0) && close(h.c, 1.0) && close(h.d, 0.0));
        let h = HalfSpace3::from_face(&unit_square_face(), Point3::new(0.5, 0.5, -0.5)).unwrap();
        assert!(close(h.a, 0.0) && close(h.b, 0.0) && close(h.c, -1.0) && close(h.d, 0.0));
    }

    #[test]
    fn face_errors() {
        let collinear = [
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(2.0, 0.0, 0.0),
        ];
        assert!(matches!(
            HalfSpace3::from_face(&collinear, Point3::new(0.0, 1.0, 0.0)),
            Err(GeometryError::DegenerateFace { .. })
        ));
        let mut warped = unit_square_face();
        warped[2].z = 0.1;
        assert!(matches!(
            HalfSpace3::from_face(&warped, Point3::new(0.5, 0.5, 1.0)),
            Err(GeometryError::NonPlanarFace { .. })
        ));
        assert!(matches!(
            HalfSpace3::from_face(&unit_square_face(), Point3::new(0.5, 0.5, 0.0)),
            Err(GeometryError::InteriorOnPlane { .. })
        ));
    }
}
