//! Constant-time point-in-convex-polygon via angular ("polar") slabs.
//!
//! Directions around a strictly interior reference point `x_T` are mapped
//! monotonically onto the perimeter of a bounding box: a ray from `x_T`
//! leaves the box at exactly one perimeter point, whose counter-clockwise
//! arc-length coordinate `u` (measured from the corner `(x_max, y_min)`)
//! increases strictly with the ray angle. Cutting `[0, U)` into `n` equal
//! pieces therefore cuts the full angle into `n` sectors, and the sector of
//! a query point is found with one floor operation and no trigonometry.
//!
//! Each sector keeps every edge whose angular span (as seen from `x_T`)
//! meets it. A query evaluates only the candidates of its own sector:
//!
//! * an interior point satisfies all edge half-planes, hence all candidates;
//! * an exterior point leaves the polygon through some edge along the ray
//!   from `x_T`; that edge's angular span contains the ray, so it is a
//!   candidate of the sector, and its half-plane is violated at the point.
//!
//! Edges are assigned to the closed range of sectors between the sectors of
//! their endpoints, so rounding of endpoint coordinates can only add
//! candidates, never drop them.

use crate::buckets::Buckets;
use crate::{Aabb2, Containment, ConvexPolygon, EvalCount, GeometryError, HalfPlane2, Locator, Point2, Result, Tally};

/// Upper bound on the number of polar slabs.
pub const MAX_POLAR_SLABS: usize = 1 << 20;

/// Relative margin added on every side of the polygon's bounding box.
pub const BOX_INFLATION: f64 = 0.01;

/// Perimeter coordinate of the point where the ray `x_t -> p` leaves `bbox`.
///
/// Sides are walked counter-clockwise from `(max.x, min.y)`: right, top,
/// left, bottom. The result lies in `[0, perimeter)`.
pub fn boundary_param(bbox: &Aabb2, x_t: Point2, p: Point2) -> Result<f64> {
    let d = p - x_t;
    let scale = bbox.diagonal();
    if d.norm() < 1e-12 * scale || d.norm() == 0.0 {
        return Err(GeometryError::ZeroDirection);
    }
    Ok(direction_param(bbox, x_t, d))
}

#[inline]
fn direction_param(bbox: &Aabb2, x_t: Point2, d: Point2) -> f64 {
    let (w, h) = (bbox.width(), bbox.height());
    let perimeter = 2.0 * (w + h);
    let tx = if d.x > 0.0 {
        (bbox.max.x - x_t.x) / d.x
    } else if d.x < 0.0 {
        (bbox.min.x - x_t.x) / d.x
    } else {
        f64::INFINITY
    };
    let ty = if d.y > 0.0 {
        (bbox.max.y - x_t.y) / d.y
    } else if d.y < 0.0 {
        (bbox.min.y - x_t.y) / d.y
    } else {
        f64::INFINITY
    };
    let u = if tx <= ty {
        let y = (x_t.y + d.y * tx).clamp(bbox.min.y, bbox.max.y);
        if d.x > 0.0 {
            y - bbox.min.y
        } else {
            h + w + (bbox.max.y - y)
        }
    } else {
        let x = (x_t.x + d.x * ty).clamp(bbox.min.x, bbox.max.x);
        if d.y > 0.0 {
            h + (bbox.max.x - x)
        } else {
            2.0 * h + w + (x - bbox.min.x)
        }
    };
    if u >= perimeter {
        0.0
    } else {
        u
    }
}

/// Build-time statistics of a polar index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarStats {
    pub n_slabs: usize,
    pub max_occupancy: usize,
    pub min_occupancy: usize,
    pub mean_occupancy: f64,
    /// True when the default slab count was clamped to [`MAX_POLAR_SLABS`].
    pub capped: bool,
    pub heap_bytes: usize,
}

/// Candidates of one slab: edges `start, start + 1, ..` (cyclically), `len` of them.
///
/// Seen from an interior point the edges of a convex polygon appear in
/// angular order, so the edges meeting one sector are consecutive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Run {
    start: u32,
    len: u32,
}

/// Angular slab index of a convex polygon around a reference point.
#[derive(Debug, Clone)]
pub struct PolarIndex2<'a> {
    poly: &'a ConvexPolygon,
    x_t: Point2,
    bbox: Aabb2,
    perimeter: f64,
    n_slabs: usize,
    slab_scale: f64,
    planes: Vec<HalfPlane2>,
    runs: Vec<Run>,
    stats: PolarStats,
}

/// Shortest cyclic run of `0..n` covering every index in `edges`.
fn covering_run(edges: &mut [u32], n: usize) -> Run {
    if edges.is_empty() {
        return Run::default();
    }
    edges.sort_unstable();
    // The run starts just after the widest gap between listed edges.
    let k = edges.len();
    let (mut best_gap, mut best_start) = (edges[0] as usize + n - edges[k - 1] as usize, edges[0]);
    for w in edges.windows(2) {
        let gap = (w[1] - w[0]) as usize;
        if gap > best_gap {
            best_gap = gap;
            best_start = w[1];
        }
    }
    Run {
        start: best_start,
        len: (n - best_gap + 1) as u32,
    }
}

fn runs_from_buckets(buckets: &Buckets<u32>, n: usize) -> Vec<Run> {
    let mut scratch = Vec::new();
    (0..buckets.bucket_count())
        .map(|s| {
            scratch.clear();
            scratch.extend_from_slice(buckets.get(s));
            covering_run(&mut scratch, n)
        })
        .collect()
}

impl<'a> PolarIndex2<'a> {
    /// Builds with the default slab count and the vertex centroid as reference.
    pub fn new(poly: &'a ConvexPolygon) -> Result<Self> {
        Self::build(poly, None, None)
    }

    /// `n_slabs` defaults to `clamp(max(4N, ceil(U / l)), N, MAX_POLAR_SLABS)`
    /// where `U` is the box perimeter and `l` is the shortest edge scaled
    /// by the ratio of the nearest edge midpoint to the farthest vertex (as
    /// seen from `x_t`). `x_t` defaults to the vertex centroid.
    pub fn build(poly: &'a ConvexPolygon, n_slabs: Option<usize>, x_t: Option<Point2>) -> Result<Self> {
        let x_t = x_t.unwrap_or_else(|| poly.centroid());
        let eps_q = poly.tolerance().query;
        for (index, h) in poly.halfplanes().iter().enumerate() {
            let value = h.eval(x_t);
            if !(value > eps_q) {
                return Err(GeometryError::ReferenceNotInterior { index, value });
            }
        }

        let aabb = poly.aabb();
        let bbox = Aabb2::new(
            aabb.min - Point2::new(aabb.width(), aabb.height()) * BOX_INFLATION,
            aabb.max + Point2::new(aabb.width(), aabb.height()) * BOX_INFLATION,
        );
        let perimeter = bbox.perimeter();

        let (n_slabs, capped) = match n_slabs {
            Some(0) => return Err(GeometryError::InvalidParameter("n_slabs must be positive".into())),
            Some(n) => (n, false),
            None => default_slab_count(poly, x_t, perimeter),
        };
        let slab_scale = n_slabs as f64 / perimeter;
        let slab_of = |u: f64| ((u * slab_scale) as usize).min(n_slabs - 1);

        let verts = poly.vertices();
        let params: Vec<f64> = verts.iter().map(|&v| direction_param(&bbox, x_t, v - x_t)).collect();
        let planes = poly.halfplanes();
        let n = verts.len();

        let slabs = Buckets::build(n_slabs, |emit| {
            for j in 0..n {
                let (u0, u1) = (params[j], params[(j + 1) % n]);
                let c = j as u32;
                let (s0, s1) = (slab_of(u0), slab_of(u1));
                if u1 >= u0 {
                    (s0..=s1).for_each(|s| emit(s, c));
                } else if u0 - u1 < 0.5 * perimeter {
                    // Endpoint order flipped by rounding on a tiny edge.
                    (s1..=s0).for_each(|s| emit(s, c));
                } else {
                    (s0..n_slabs).chain(0..=s1).for_each(|s| emit(s, c));
                }
            }
        });

        let runs = runs_from_buckets(&slabs, n);
        let planes = planes.to_vec();
        let stats = run_stats(&runs, &planes, capped);
        Ok(Self {
            poly,
            x_t,
            bbox,
            perimeter,
            n_slabs,
            slab_scale,
            planes,
            runs,
            stats,
        })
    }

    pub fn polygon(&self) -> &'a ConvexPolygon {
        self.poly
    }

    pub fn reference(&self) -> Point2 {
        self.x_t
    }

    /// The inflated bounding box whose perimeter parametrizes directions.
    pub fn bounding_box(&self) -> &Aabb2 {
        &self.bbox
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn slab_count(&self) -> usize {
        self.n_slabs
    }

    pub fn stats(&self) -> &PolarStats {
        &self.stats
    }

    pub fn max_occupancy(&self) -> usize {
        self.stats.max_occupancy
    }

    /// Edge indices stored in slab `s`.
    pub fn slab_edges(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        let Run { start, len } = self.runs[s];
        let n = self.planes.len();
        (0..len as usize).map(move |k| (start as usize + k) % n)
    }

    pub fn slab_len(&self, s: usize) -> usize {
        self.runs[s].len as usize
    }

    /// Slab of perimeter coordinate `u`.
    #[inline]
    pub fn slab_of_param(&self, u: f64) -> usize {
        ((u * self.slab_scale) as usize).min(self.n_slabs - 1)
    }

    /// Slab containing the direction `x_t -> p`.
    pub fn slab_of_point(&self, p: Point2) -> Result<usize> {
        boundary_param(&self.bbox, self.x_t, p).map(|u| self.slab_of_param(u))
    }

    pub fn locate(&self, p: Point2) -> Containment {
        self.locate_with(p, &mut ())
    }

    /// At most one auxiliary (box) test and `max_occupancy` edge evaluations.
    #[inline]
    pub fn locate_with<T: Tally>(&self, p: Point2, tally: &mut T) -> Containment {
        tally.auxiliary();
        if !self.bbox.contains(p) {
            return Containment::Outside;
        }
        let tol = self.poly.tolerance();
        let d = p - self.x_t;
        if d.x.abs() + d.y.abs() < tol.len {
            return Containment::Inside;
        }
        let s = self.slab_of_param(direction_param(&self.bbox, self.x_t, d));
        let Run { start, len } = self.runs[s];
        let mut e = start as usize;
        let mut min = f64::INFINITY;
        for _ in 0..len {
            tally.constraint();
            min = min.min(self.planes[e].eval(p));
            e += 1;
            if e == self.planes.len() {
                e = 0;
            }
        }
        Containment::from_min_distance(min, tol.query)
    }

    /// Copy of the index with slab `s` replaced by the shortest run
    /// covering `edges`.
    ///
    /// Exists to check that the comparison harness notices corrupted
    /// indexes; a replaced list generally breaks correctness.
    #[doc(hidden)]
    pub fn with_slab_replaced(&self, s: usize, edges: &[usize]) -> Self {
        let mut edges: Vec<u32> = edges.iter().map(|&e| e as u32).collect();
        let mut out = self.clone();
        out.runs[s] = covering_run(&mut edges, self.planes.len());
        out.stats = run_stats(&out.runs, &out.planes, self.stats.capped);
        out
    }
}

fn run_stats(runs: &[Run], planes: &[HalfPlane2], capped: bool) -> PolarStats {
    let total: usize = runs.iter().map(|r| r.len as usize).sum();
    PolarStats {
        n_slabs: runs.len(),
        max_occupancy: runs.iter().map(|r| r.len as usize).max().unwrap_or(0),
        min_occupancy: runs.iter().map(|r| r.len as usize).min().unwrap_or(0),
        mean_occupancy: total as f64 / runs.len() as f64,
        capped,
        heap_bytes: std::mem::size_of_val(runs) + std::mem::size_of_val(planes),
    }
}

fn default_slab_count(poly: &ConvexPolygon, x_t: Point2, perimeter: f64) -> (usize, bool) {
    let n = poly.len();
    let verts = poly.vertices();
    let far = verts.iter().map(|&v| v.distance(x_t)).fold(0.0, f64::max);
    let near_mid = (0..n)
        .map(|j| {
            let (a, b) = poly.edge(j);
            ((a + b) * 0.5).distance(x_t)
        })
        .fold(f64::INFINITY, f64::min);
    let ell = poly.min_edge_length() * (near_mid / far);
    let wanted = (4 * n) as f64;
    let wanted = wanted.max((perimeter / ell).ceil());
    if wanted > MAX_POLAR_SLABS as f64 {
        (MAX_POLAR_SLABS.max(n), true)
    } else {
        ((wanted as usize).max(n), false)
    }
}

impl Locator<Point2> for PolarIndex2<'_> {
    fn name(&self) -> &'static str {
        "polar"
    }

    fn locate(&self, p: Point2) -> Containment {
        PolarIndex2::locate(self, p)
    }

    fn locate_counted(&self, p: Point2) -> (Containment, EvalCount) {
        let mut n = EvalCount::default();
        (self.locate_with(p, &mut n), n)
    }

    fn max_occupancy(&self) -> Option<usize> {
        Some(self.stats.max_occupancy)
    }
}
