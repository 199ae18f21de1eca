//! Constant-time point-in-convex-polyhedron via a cube map of directions.
//!
//! Directions from a strictly interior reference point `x_T` are binned by
//! the face of an axis-aligned cube centred at `x_T` they pass through
//! (the axis of largest absolute component), then by an `R x R` grid on
//! that face in the normalized coordinates `(s, t) in [-1, 1]^2`.
//!
//! Each cell keeps every polyhedron face whose central projection from
//! `x_T` may meet it. Projections are rasterized conservatively: the face
//! is clipped against the cube face's view frustum (with a small outward
//! slack), projected, and its `(s, t)` bounding rectangle is emitted. The
//! query argument is the same as for the polar slabs: the face through
//! which the ray `x_T -> p` leaves the polyhedron is always a candidate of
//! the cell of `p`.
//!
//! Faces that touch a cube face's cone only within the slack band along its
//! border are skipped for that cube face: rays there also cross the plane
//! of a neighbouring face at the same exit point, and that face is listed.

use crate::buckets::Buckets;
use crate::{Containment, ConvexPolyhedron, EvalCount, GeometryError, HalfSpace3, Locator, Point3, Result, Tally};

/// Faces-per-cell factor of the default resolution rule.
pub const DEFAULT_KAPPA: f64 = 4.0;
pub const MIN_RESOLUTION: usize = 4;
pub const MAX_RESOLUTION: usize = 1024;

/// One face of the direction cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubeFace {
    PosX = 0,
    NegX = 1,
    PosY = 2,
    NegY = 3,
    PosZ = 4,
    NegZ = 5,
}

pub const CUBE_FACES: [CubeFace; 6] = [
    CubeFace::PosX,
    CubeFace::NegX,
    CubeFace::PosY,
    CubeFace::NegY,
    CubeFace::PosZ,
    CubeFace::NegZ,
];

impl CubeFace {
    /// Dominant axis (0 = x, 1 = y, 2 = z).
    pub fn axis(self) -> usize {
        self as usize / 2
    }

    pub fn sign(self) -> f64 {
        if (self as usize).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// The two remaining axes in increasing order; they give `(s, t)`.
    pub fn tangent_axes(self) -> (usize, usize) {
        match self.axis() {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    fn from_axis(axis: usize, negative: bool) -> Self {
        CUBE_FACES[2 * axis + negative as usize]
    }

    pub fn label(self) -> &'static str {
        ["+X", "-X", "+Y", "-Y", "+Z", "-Z"][self as usize]
    }
}

/// A grid cell of the cube map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeCell {
    pub face: CubeFace,
    pub i: usize,
    pub j: usize,
}

impl CubeCell {
    /// Flat index `face * R^2 + i * R + j`.
    pub fn index(&self, r: usize) -> usize {
        (self.face as usize * r + self.i) * r + self.j
    }
}

#[inline]
fn grid_coord(s: f64, r: usize) -> usize {
    // Negative and NaN saturate to 0.
    (((s + 1.0) * 0.5 * r as f64) as usize).min(r - 1)
}

#[inline]
fn cell_of_direction(d: [f64; 3], r: usize) -> CubeCell {
    let (ax, ay, az) = (d[0].abs(), d[1].abs(), d[2].abs());
    let axis = if ax >= ay && ax >= az {
        0
    } else if ay >= az {
        1
    } else {
        2
    };
    let face = CubeFace::from_axis(axis, d[axis] < 0.0);
    let (a, b) = face.tangent_axes();
    let inv = 1.0 / d[axis].abs();
    CubeCell {
        face,
        i: grid_coord(d[a] * inv, r),
        j: grid_coord(d[b] * inv, r),
    }
}

/// Cube-map cell of the direction `x_t -> p` at resolution `r`.
///
/// Ties between equal absolute components go to the earlier axis (x, then y, then z).
pub fn cubemap_cell(x_t: Point3, r: usize, p: Point3) -> Result<CubeCell> {
    if r == 0 {
        return Err(GeometryError::InvalidParameter("resolution must be positive".into()));
    }
    let d = p - x_t;
    let scale = x_t
        .to_array()
        .iter()
        .chain(p.to_array().iter())
        .fold(f64::MIN_POSITIVE, |m, c| m.max(c.abs()));
    if d.norm() < 1e-12 * scale || d.norm() == 0.0 {
        return Err(GeometryError::ZeroDirection);
    }
    Ok(cell_of_direction(d.to_array(), r))
}

/// Sutherland–Hodgman clip of a convex ring against `dot(n, x) >= offset`.
fn clip_ring(ring: &[[f64; 3]], n: [f64; 3], offset: f64, out: &mut Vec<[f64; 3]>) {
    out.clear();
    let f = |p: &[f64; 3]| n[0] * p[0] + n[1] * p[1] + n[2] * p[2] - offset;
    for (k, cur) in ring.iter().enumerate() {
        let next = &ring[(k + 1) % ring.len()];
        let (fc, fn_) = (f(cur), f(next));
        if fc >= 0.0 {
            out.push(*cur);
        }
        if (fc >= 0.0) != (fn_ >= 0.0) {
            let t = fc / (fc - fn_);
            out.push([
                cur[0] + t * (next[0] - cur[0]),
                cur[1] + t * (next[1] - cur[1]),
                cur[2] + t * (next[2] - cur[2]),
            ]);
        }
    }
}

/// 2D clip of a convex ring in `(s, t)` against an axis-aligned rectangle.
fn ring_meets_rect(ring: &[(f64, f64)], lo: (f64, f64), hi: (f64, f64)) -> bool {
    let mut cur: Vec<(f64, f64)> = ring.to_vec();
    let mut next = Vec::with_capacity(cur.len() + 4);
    // (axis, bound, keep >= bound?)
    for (axis, bound, ge) in [(0, lo.0, true), (0, hi.0, false), (1, lo.1, true), (1, hi.1, false)] {
        next.clear();
        let f = |p: &(f64, f64)| {
            let v = if axis == 0 { p.0 } else { p.1 };
            if ge {
                v - bound
            } else {
                bound - v
            }
        };
        for (k, a) in cur.iter().enumerate() {
            let b = &cur[(k + 1) % cur.len()];
            let (fa, fb) = (f(a), f(b));
            if fa >= 0.0 {
                next.push(*a);
            }
            if (fa >= 0.0) != (fb >= 0.0) {
                let t = fa / (fa - fb);
                next.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            }
        }
        std::mem::swap(&mut cur, &mut next);
        if cur.is_empty() {
            return false;
        }
    }
    true
}

/// Conservative set of cells met by the central projection of a face.
///
/// `face` holds the face vertices, `slack` widens every frustum plane
/// outward (world units). With `exact`, cells of the bounding rectangle
/// that the projected polygon provably misses are dropped.
pub fn project_face_conservative(face: &[Point3], x_t: Point3, r: usize, slack: f64, exact: bool) -> Vec<CubeCell> {
    let mut cells = Vec::new();
    let mut scratch = ProjectScratch::default();
    project_into(face, x_t, r, slack, exact, &mut scratch, |c| cells.push(c));
    cells
}

#[derive(Default)]
struct ProjectScratch {
    a: Vec<[f64; 3]>,
    b: Vec<[f64; 3]>,
    st: Vec<(f64, f64)>,
}

fn project_into(
    face: &[Point3],
    x_t: Point3,
    r: usize,
    slack: f64,
    exact: bool,
    scratch: &mut ProjectScratch,
    mut emit: impl FnMut(CubeCell),
) {
    let rel: Vec<[f64; 3]> = face.iter().map(|&p| (p - x_t).to_array()).collect();
    for face_id in CUBE_FACES {
        let k = face_id.axis();
        let sigma = face_id.sign();
        let (a, b) = face_id.tangent_axes();

        // Frustum of the cube face: sigma*d_k >= |d_a|, sigma*d_k >= |d_b|,
        // and in front of x_t; each widened by `slack`.
        let mut planes = [[0.0; 3]; 5];
        let mut offsets = [-slack; 5];
        for (m, (axis, sgn)) in [(a, 1.0), (a, -1.0), (b, 1.0), (b, -1.0)].into_iter().enumerate() {
            planes[m][k] = sigma;
            planes[m][axis] = sgn;
        }
        planes[4][k] = sigma;
        offsets[4] = slack;

        scratch.a.clear();
        scratch.a.extend_from_slice(&rel);
        for (n, off) in planes.iter().zip(offsets) {
            clip_ring(&scratch.a, *n, off, &mut scratch.b);
            std::mem::swap(&mut scratch.a, &mut scratch.b);
            if scratch.a.is_empty() {
                break;
            }
        }
        if scratch.a.is_empty() {
            continue;
        }

        scratch.st.clear();
        let mut min_depth = f64::INFINITY;
        for p in &scratch.a {
            let depth = sigma * p[k];
            min_depth = min_depth.min(depth);
            scratch.st.push((p[a] / depth, p[b] / depth));
        }
        let (mut s0, mut s1, mut t0, mut t1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(s, t) in &scratch.st {
            s0 = s0.min(s);
            s1 = s1.max(s);
            t0 = t0.min(t);
            t1 = t1.max(t);
        }
        // Width of the slack band in (s, t), plus rounding headroom.
        let band = 2.0 * slack / min_depth + 1e-12;
        if s0 >= 1.0 - band || s1 <= -1.0 + band || t0 >= 1.0 - band || t1 <= -1.0 + band {
            continue;
        }
        let (s0, s1) = ((s0 - band).max(-1.0), (s1 + band).min(1.0));
        let (t0, t1) = ((t0 - band).max(-1.0), (t1 + band).min(1.0));
        let (i0, i1) = (grid_coord(s0, r), grid_coord(s1, r));
        let (j0, j1) = (grid_coord(t0, r), grid_coord(t1, r));
        let cell_size = 2.0 / r as f64;
        for i in i0..=i1 {
            for j in j0..=j1 {
                if exact && (i1 > i0 || j1 > j0) {
                    let lo = (-1.0 + i as f64 * cell_size - band, -1.0 + j as f64 * cell_size - band);
                    let hi = (lo.0 + cell_size + 2.0 * band, lo.1 + cell_size + 2.0 * band);
                    if !ring_meets_rect(&scratch.st, lo, hi) {
                        continue;
                    }
                }
                emit(CubeCell { face: face_id, i, j });
            }
        }
    }
}

/// Build options for [`CubeMapIndex3`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubeMapOptions {
    /// Grid resolution per cube face; defaults to
    /// `clamp(ceil(sqrt(kappa * N / 6)), MIN_RESOLUTION, MAX_RESOLUTION)`.
    pub resolution: Option<usize>,
    /// Reference point; defaults to the vertex centroid.
    pub reference: Option<Point3>,
    pub kappa: f64,
    /// Drop rectangle cells the projected face provably misses.
    pub exact_raster: bool,
}

impl Default for CubeMapOptions {
    fn default() -> Self {
        Self {
            resolution: None,
            reference: None,
            kappa: DEFAULT_KAPPA,
            exact_raster: false,
        }
    }
}

/// `clamp(ceil(sqrt(kappa * n_faces / 6)), MIN_RESOLUTION, MAX_RESOLUTION)`.
pub fn default_resolution(n_faces: usize, kappa: f64) -> usize {
    ((kappa * n_faces as f64 / 6.0).sqrt().ceil() as usize).clamp(MIN_RESOLUTION, MAX_RESOLUTION)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubeMapStats {
    pub resolution: usize,
    pub cells: usize,
    pub max_occupancy: usize,
    pub min_occupancy: usize,
    pub mean_occupancy: f64,
    pub heap_bytes: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Candidate {
    plane: HalfSpace3,
    face: u32,
}

/// Cube-map cell index of a convex polyhedron around a reference point.
#[derive(Debug, Clone)]
pub struct CubeMapIndex3<'a> {
    poly: &'a ConvexPolyhedron,
    x_t: Point3,
    r: usize,
    cells: Buckets<Candidate>,
    stats: CubeMapStats,
}

impl<'a> CubeMapIndex3<'a> {
    pub fn new(poly: &'a ConvexPolyhedron) -> Result<Self> {
        Self::build(poly, CubeMapOptions::default())
    }

    pub fn build(poly: &'a ConvexPolyhedron, opts: CubeMapOptions) -> Result<Self> {
        let x_t = opts.reference.unwrap_or_else(|| poly.centroid());
        let tol = poly.tolerance();
        for (index, h) in poly.halfspaces().iter().enumerate() {
            let value = h.eval(x_t);
            if !(value > tol.query) {
                return Err(GeometryError::ReferenceNotInterior { index, value });
            }
        }
        let r = match opts.resolution {
            Some(0) => return Err(GeometryError::InvalidParameter("resolution must be positive".into())),
            Some(r) => r,
            None => default_resolution(poly.face_count(), opts.kappa),
        };
        let n_cells = 6 * r * r;

        // Project every face once; the bucket builder replays the emissions.
        let mut emitted: Vec<(u32, u32)> = Vec::new();
        let mut scratch = ProjectScratch::default();
        let mut ring = Vec::new();
        for f in 0..poly.face_count() {
            ring.clear();
            ring.extend(poly.face_points(f));
            project_into(&ring, x_t, r, tol.plane, opts.exact_raster, &mut scratch, |c| {
                emitted.push((c.index(r) as u32, f as u32));
            });
        }
        let planes = poly.halfspaces();
        let cells = Buckets::build(n_cells, |emit| {
            for &(cell, face) in &emitted {
                emit(
                    cell as usize,
                    Candidate {
                        plane: planes[face as usize],
                        face,
                    },
                );
            }
        });

        let stats = CubeMapStats {
            resolution: r,
            cells: n_cells,
            max_occupancy: cells.max_len(),
            min_occupancy: cells.min_len(),
            mean_occupancy: cells.total() as f64 / n_cells as f64,
            heap_bytes: cells.heap_bytes(),
        };
        Ok(Self {
            poly,
            x_t,
            r,
            cells,
            stats,
        })
    }

    pub fn polyhedron(&self) -> &'a ConvexPolyhedron {
        self.poly
    }

    pub fn reference(&self) -> Point3 {
        self.x_t
    }

    pub fn resolution(&self) -> usize {
        self.r
    }

    pub fn stats(&self) -> &CubeMapStats {
        &self.stats
    }

    pub fn max_occupancy(&self) -> usize {
        self.stats.max_occupancy
    }

    /// Face indices listed for `cell`.
    pub fn cell_faces(&self, cell: CubeCell) -> impl Iterator<Item = usize> + '_ {
        self.cells.get(cell.index(self.r)).iter().map(|c| c.face as usize)
    }

    pub fn cell_len(&self, cell: CubeCell) -> usize {
        self.cells.get(cell.index(self.r)).len()
    }

    /// Every cell in face-major order.
    pub fn all_cells(&self) -> impl Iterator<Item = CubeCell> + '_ {
        let r = self.r;
        CUBE_FACES
            .into_iter()
            .flat_map(move |face| (0..r).flat_map(move |i| (0..r).map(move |j| CubeCell { face, i, j })))
    }

    /// Cell of the direction `x_t -> p`.
    pub fn cell_of_point(&self, p: Point3) -> Result<CubeCell> {
        cubemap_cell(self.x_t, self.r, p)
    }

    pub fn locate(&self, p: Point3) -> Containment {
        self.locate_with(p, &mut ())
    }

    /// At most one auxiliary (box) test and `max_occupancy` face evaluations.
    #[inline]
    pub fn locate_with<T: Tally>(&self, p: Point3, tally: &mut T) -> Containment {
        let tol = self.poly.tolerance();
        let bb = self.poly.aabb();
        tally.auxiliary();
        if p.x < bb.min.x - tol.query
            || p.y < bb.min.y - tol.query
            || p.z < bb.min.z - tol.query
            || p.x > bb.max.x + tol.query
            || p.y > bb.max.y + tol.query
            || p.z > bb.max.z + tol.query
        {
            return Containment::Outside;
        }
        let d = p - self.x_t;
        if d.x.abs() + d.y.abs() + d.z.abs() < tol.len {
            return Containment::Inside;
        }
        let cell = cell_of_direction(d.to_array(), self.r);
        let mut min = f64::INFINITY;
        for c in self.cells.get(cell.index(self.r)) {
            tally.constraint();
            min = min.min(c.plane.eval(p));
        }
        Containment::from_min_distance(min, tol.query)
    }

    /// Copy of the index with `cell` replaced by `faces`.
    #[doc(hidden)]
    pub fn with_cell_replaced(&self, cell: CubeCell, faces: &[usize]) -> Self {
        let planes = self.poly.halfspaces();
        let replacement: Vec<Candidate> = faces
            .iter()
            .map(|&f| Candidate {
                plane: planes[f],
                face: f as u32,
            })
            .collect();
        let mut out = self.clone();
        out.cells = self.cells.with_bucket(cell.index(self.r), &replacement);
        out
    }
}

impl Locator<Point3> for CubeMapIndex3<'_> {
    fn name(&self) -> &'static str {
        "cubemap"
    }

    fn locate(&self, p: Point3) -> Containment {
        CubeMapIndex3::locate(self, p)
    }

    fn locate_counted(&self, p: Point3) -> (Containment, EvalCount) {
        let mut n = EvalCount::default();
        (self.locate_with(p, &mut n), n)
    }

    fn max_occupancy(&self) -> Option<usize> {
        Some(self.stats.max_occupancy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::locate_linear_3d;
    use crate::baseline::test_shapes::{cube_centered, unit_cube};

    #[test]
    fn cell_arithmetic() {
        let o = Point3::default();
        let c = cubemap_cell(o, 4, Point3::new(0.2, 0.1, 1.0)).unwrap();
        assert_eq!(
            c,
            CubeCell {
                face: CubeFace::PosZ,
                i: 2,
                j: 2
            }
        );
        let c = cubemap_cell(o, 4, Point3::new(-3.0, 0.0, 0.0)).unwrap();
        assert_eq!(
            c,
            CubeCell {
                face: CubeFace::NegX,
                i: 2,
                j: 2
            }
        );
        let c = cubemap_cell(o, 2, Point3::new(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(c.face, CubeFace::PosX);
        let c = cubemap_cell(o, 2, Point3::new(0.0, -1.0, -1.0)).unwrap();
        assert_eq!(c.face, CubeFace::NegY);
        assert_eq!(cubemap_cell(o, 4, o), Err(GeometryError::ZeroDirection));
        // Edges of the face map to the outermost cells.
        let c = cubemap_cell(o, 4, Point3::new(1.0, -1.0, 1.0 + 1e-15)).unwrap();
        assert_eq!((c.face, c.i, c.j), (CubeFace::PosZ, 3, 0));
    }

    fn cube_face_z1() -> Vec<Point3> {
        vec![
            Point3::new(0.0, 0.0, 1.0),
            Point3::new(1.0, 0.0, 1.0),
            Point3::new(1.0, 1.0, 1.0),
            Point3::new(0.0, 1.0, 1.0),
        ]
    }

    #[test]
    fn cube_face_fills_one_cube_map_face() {
        let c = Point3::new(0.5, 0.5, 0.5);
        let cells = project_face_conservative(&cube_face_z1(), c, 1, 1e-9, false);
        assert_eq!(
            cells,
            vec![CubeCell {
                face: CubeFace::PosZ,
                i: 0,
                j: 0
            }]
        );
        let mut cells = project_face_conservative(&cube_face_z1(), c, 2, 1e-9, false);
        cells.sort();
        let expect: Vec<CubeCell> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .map(|(i, j)| CubeCell {
                face: CubeFace::PosZ,
                i,
                j,
            })
            .collect();
        assert_eq!(cells, expect);
    }

    #[test]
    fn unit_cube_index_one_face_per_cell() {
        let cube = unit_cube();
        let idx = CubeMapIndex3::build(
            &cube,
            CubeMapOptions {
                resolution: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        let mut owner = [None; 6];
        for cell in idx.all_cells() {
            let faces: Vec<usize> = idx.cell_faces(cell).collect();
            assert_eq!(faces.len(), 1, "{cell:?}");
            let prev = owner[cell.face as usize].replace(faces[0]);
            assert!(prev.is_none() || prev == Some(faces[0]));
        }
        let mut owners: Vec<usize> = owner.iter().map(|o| o.unwrap()).collect();
        owners.sort();
        assert_eq!(owners, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn unit_cube_queries() {
        let cube = unit_cube();
        let idx = CubeMapIndex3::new(&cube).unwrap();
        assert_eq!(idx.resolution(), MIN_RESOLUTION);
        assert_eq!(idx.locate(Point3::new(0.5, 0.5, 0.5)), Containment::Inside);
        assert_eq!(idx.locate(Point3::new(0.5, 0.5, 1.0)), Containment::OnBoundary);
        assert_eq!(idx.locate(Point3::new(0.5, 0.5, 1.5)), Containment::Outside);
        assert_eq!(idx.locate(Point3::new(1.0, 1.0, 1.0)), Containment::OnBoundary);
        assert_eq!(idx.locate(Point3::new(0.9, 0.2, 0.7)), Containment::Inside);
    }

    #[test]
    fn default_resolution_rule() {
        assert_eq!(default_resolution(320, DEFAULT_KAPPA), 15);
        assert_eq!(default_resolution(6, DEFAULT_KAPPA), 4);
        assert_eq!(default_resolution(5120, DEFAULT_KAPPA), 59);
        assert_eq!(default_resolution(usize::MAX / 8, DEFAULT_KAPPA), MAX_RESOLUTION);
    }

    #[test]
    fn reference_must_be_interior() {
        let cube = unit_cube();
        let opts = CubeMapOptions {
            reference: Some(Point3::new(0.5, 0.5, 1.0)),
            ..Default::default()
        };
        assert!(matches!(
            CubeMapIndex3::build(&cube, opts),
            Err(GeometryError::ReferenceNotInterior { .. })
        ));
    }

    #[test]
    fn exact_raster_is_a_subset_and_still_correct() {
        let cube = cube_centered(1.0);
        let off = Point3::new(0.3, -0.2, 0.45);
        for exact in [false, true] {
            let idx = CubeMapIndex3::build(
                &cube,
                CubeMapOptions {
                    resolution: Some(7),
                    reference: Some(off),
                    exact_raster: exact,
                    ..Default::default()
                },
            )
            .unwrap();
            for i in -12..=12 {
                for j in -12..=12 {
                    for k in -12..=12 {
                        let p = Point3::new(i as f64 * 0.1 + 0.013, j as f64 * 0.1 - 0.007, k as f64 * 0.1 + 0.003);
                        assert_eq!(idx.locate(p), locate_linear_3d(&cube, p), "{p:?}");
                    }
                }
            }
        }
        let loose = CubeMapIndex3::build(
            &cube,
            CubeMapOptions {
                resolution: Some(7),
                reference: Some(off),
                ..Default::default()
            },
        )
        .unwrap();
        let tight = CubeMapIndex3::build(
            &cube,
            CubeMapOptions {
                resolution: Some(7),
                reference: Some(off),
                exact_raster: true,
                ..Default::default()
            },
        )
        .unwrap();
        for cell in loose.all_cells() {
            let l: Vec<usize> = loose.cell_faces(cell).collect();
            for f in tight.cell_faces(cell) {
                assert!(l.contains(&f));
            }
            assert!(tight.cell_len(cell) > 0);
        }
    }
}
