//! Point location in convex polygons and convex polyhedra.
//!
//! Every shape is validated once into a [`ConvexPolygon`] or
//! [`ConvexPolyhedron`] whose edges/faces carry unit-normal half-planes or
//! half-spaces. Locators are immutable indexes built over a shape:
//!
//! | locator | dimension | query cost |
//! |---|---|---|
//! | [`baseline::locate_linear_2d`] / [`baseline::locate_linear_3d`] | 2D / 3D | O(N) |
//! | [`baseline::WedgeIndex2`] | 2D | O(log N) |
//! | [`baseline::SortedSlabIndex2`] | 2D | O(log N) |
//! | [`baseline::UniformSlabIndex2`] | 2D | O(1) expected |
//! | [`polar::PolarIndex2`] | 2D | O(1) |
//! | [`cubemap::CubeMapIndex3`] | 3D | O(1) |
//!
//! All locators answer with a three-valued [`Containment`]: a point whose
//! minimal signed distance over the deciding constraints lies within
//! `±eps_q` of zero is reported as [`Containment::OnBoundary`].

// `!(x > t)` is used on purpose so that NaN fails validation checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baseline;
pub mod bench;
mod buckets;
pub mod compare;
pub mod cubemap;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod io;
mod locator;
pub mod polar;
mod tally;

pub use error::{GeometryError, Result};
pub use geometry::{
    Aabb2, Aabb3, Containment, ConvexPolygon, ConvexPolyhedron, HalfPlane2, HalfSpace3, Point2, Point3, Tolerance,
};
pub use locator::Locator;
pub use tally::{EvalCount, Tally};
