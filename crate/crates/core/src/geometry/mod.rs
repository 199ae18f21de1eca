//! Points, oriented lines and planes, bounding boxes and the validated
//! convex shapes every locator is built from.
//!
//! All half-planes and half-spaces carry unit normals, so evaluating one at
//! a point yields a metric signed distance (positive on the interior side).
//! Tolerances are therefore expressed in world units, scaled by the shape's
//! bounding-box diagonal.

mod aabb;
mod plane;
mod point;
mod polygon;
mod polyhedron;

pub use aabb::{Aabb2, Aabb3};
pub use plane::{HalfPlane2, HalfSpace3};
pub use point::{Point2, Point3};
pub use polygon::ConvexPolygon;
pub use polyhedron::ConvexPolyhedron;

pub(crate) use point::{mean2, mean3};

#[cfg(test)]
pub(crate) use polyhedron::tests::unit_cube as polyhedron_tests_cube;

/// Scale-relative tolerances of one shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Bounding-box diagonal the other values are scaled from.
    pub diagonal: f64,
    /// Minimum edge length / nonzero-direction threshold (`1e-12 * diag`).
    pub len: f64,
    /// Planarity and convexity slack (`1e-9 * diag`).
    pub plane: f64,
    /// Half-width of the on-boundary band used by queries (`1e-9 * diag`).
    pub query: f64,
}

impl Tolerance {
    pub fn from_diagonal(diagonal: f64) -> Self {
        Self {
            diagonal,
            len: 1e-12 * diagonal,
            plane: 1e-9 * diagonal,
            query: 1e-9 * diagonal,
        }
    }
}

/// Result of a containment query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Containment {
    Inside,
    OnBoundary,
    Outside,
}

impl Containment {
    /// Classifies the minimum signed distance over a deciding constraint set.
    #[inline]
    pub fn from_min_distance(min: f64, eps_q: f64) -> Self {
        if min > eps_q {
            Containment::Inside
        } else if min >= -eps_q {
            Containment::OnBoundary
        } else {
            Containment::Outside
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Containment::Inside => "Inside",
            Containment::OnBoundary => "OnBoundary",
            Containment::Outside => "Outside",
        }
    }
}

impl std::fmt::Display for Containment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Containment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Inside" => Ok(Containment::Inside),
            "OnBoundary" => Ok(Containment::OnBoundary),
            "Outside" => Ok(Containment::Outside),
            other => Err(format!("unknown containment {other:?}")),
        }
    }
}
