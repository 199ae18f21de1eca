//! Reference point-in-convex-polygon/polyhedron methods: the O(N) linear
//! test, O(log N) fan bisection, O(log N) sorted slabs and uniform slabs
//! with O(1) slab lookup. They double as oracles and benchmark baselines.

mod linear;
mod sorted_slabs;
mod uniform_slabs;
mod wedge;

pub use linear::{locate_linear_2d, locate_linear_2d_with, locate_linear_3d, locate_linear_3d_with, Linear2, Linear3};
pub use sorted_slabs::SortedSlabIndex2;
pub use uniform_slabs::{UniformSlabIndex2, MAX_UNIFORM_SLABS};
pub use wedge::WedgeIndex2;
