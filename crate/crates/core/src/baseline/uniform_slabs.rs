use crate::buckets::Buckets;
use crate::{Containment, ConvexPolygon, EvalCount, GeometryError, Locator, Point2, Result, Tally};

/// Upper bound on the number of uniform slabs.
pub const MAX_UNIFORM_SLABS: usize = 1 << 20;

/// Equal-height horizontal slabs, so the slab of a point is one floor
/// operation away. Each slab keeps the left-chain and right-chain edges
/// overlapping its y-range; horizontal edges sit in the single slab at
/// their height.
#[derive(Debug, Clone)]
pub struct UniformSlabIndex2<'a> {
    poly: &'a ConvexPolygon,
    y_min: f64,
    y_max: f64,
    n_slabs: usize,
    left: Buckets<u32>,
    right: Buckets<u32>,
    horizontal: Buckets<u32>,
    max_occupancy: usize,
    cap_exceeded: bool,
}

impl<'a> UniformSlabIndex2<'a> {
    /// Builds with `n_slabs`, or by default enough slabs that the thinnest
    /// gap between vertex heights spans a whole slab (clamped to
    /// `[N, MAX_UNIFORM_SLABS]`).
    pub fn new(poly: &'a ConvexPolygon, n_slabs: Option<usize>) -> Result<Self> {
        let aabb = poly.aabb();
        let (y_min, y_max) = (aabb.min.y, aabb.max.y);
        let (n_slabs, cap_exceeded) = match n_slabs {
            Some(0) => return Err(GeometryError::InvalidParameter("n_slabs must be positive".into())),
            Some(n) => (n, false),
            None => default_slab_count(poly),
        };

        let mut idx = Self {
            poly,
            y_min,
            y_max,
            n_slabs,
            left: Buckets::build(0, |_| {}),
            right: Buckets::build(0, |_| {}),
            horizontal: Buckets::build(0, |_| {}),
            max_occupancy: 0,
            cap_exceeded,
        };

        let edge_range = |i: usize, idx: &Self| {
            let (a, b) = poly.edge(i);
            (idx.slab_of(a.y.min(b.y)), idx.slab_of(a.y.max(b.y)))
        };
        let fill_side = |rising: bool, idx: &Self| {
            Buckets::build(n_slabs, |emit| {
                for i in 0..poly.len() {
                    let (a, b) = poly.edge(i);
                    if a.y == b.y || (b.y > a.y) != rising {
                        continue;
                    }
                    let (lo, hi) = edge_range(i, idx);
                    for s in lo..=hi {
                        emit(s, i as u32);
                    }
                }
            })
        };
        // Counter-clockwise: rising edges form the right chain.
        let right = fill_side(true, &idx);
        let left = fill_side(false, &idx);
        let horizontal = Buckets::build(n_slabs, |emit| {
            for i in 0..poly.len() {
                let (a, b) = poly.edge(i);
                if a.y == b.y {
                    emit(idx.slab_of(a.y), i as u32);
                }
            }
        });
        idx.max_occupancy = (0..n_slabs)
            .map(|s| left.get(s).len() + right.get(s).len() + horizontal.get(s).len())
            .max()
            .unwrap_or(0);
        idx.left = left;
        idx.right = right;
        idx.horizontal = horizontal;
        Ok(idx)
    }

    /// Slab index of height `y`: `floor((y - y_min) / (y_max - y_min) * n_slabs)`,
    /// clamped to `[0, n_slabs - 1]`.
    #[inline]
    pub fn slab_of(&self, y: f64) -> usize {
        let t = (y - self.y_min) / (self.y_max - self.y_min) * self.n_slabs as f64;
        // `as` saturates negatives and NaN to 0.
        (t as usize).min(self.n_slabs - 1)
    }

    pub fn polygon(&self) -> &'a ConvexPolygon {
        self.poly
    }

    pub fn slab_count(&self) -> usize {
        self.n_slabs
    }

    pub fn left_edges(&self, s: usize) -> &[u32] {
        self.left.get(s)
    }

    pub fn right_edges(&self, s: usize) -> &[u32] {
        self.right.get(s)
    }

    pub fn horizontal_edges(&self, s: usize) -> &[u32] {
        self.horizontal.get(s)
    }

    /// Largest number of edges stored in one slab (all three lists).
    pub fn max_occupancy(&self) -> usize {
        self.max_occupancy
    }

    /// True when the default slab count hit [`MAX_UNIFORM_SLABS`]; queries
    /// stay correct but slabs then hold more edges.
    pub fn cap_exceeded(&self) -> bool {
        self.cap_exceeded
    }

    pub fn locate(&self, p: Point2) -> Containment {
        self.locate_with(p, &mut ())
    }

    pub fn locate_with<T: Tally>(&self, p: Point2, tally: &mut T) -> Containment {
        let eps = self.poly.tolerance().query;
        tally.auxiliary();
        tally.auxiliary();
        if p.y < self.y_min - eps || p.y > self.y_max + eps {
            return Containment::Outside;
        }
        let s = self.slab_of(p.y);
        let h = self.poly.halfplanes();
        let mut min = f64::INFINITY;
        for &e in self
            .left
            .get(s)
            .iter()
            .chain(self.right.get(s))
            .chain(self.horizontal.get(s))
        {
            tally.constraint();
            min = min.min(h[e as usize].eval(p));
        }
        Containment::from_min_distance(min, eps)
    }
}

/// `clamp(ceil((y_max - y_min) / dy_min), N, MAX_UNIFORM_SLABS)` where
/// `dy_min` is the smallest nonzero gap between sorted vertex heights.
fn default_slab_count(poly: &ConvexPolygon) -> (usize, bool) {
    let mut ys: Vec<f64> = poly.vertices().iter().map(|v| v.y).collect();
    ys.sort_by(f64::total_cmp);
    let dy_min = ys
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|&d| d > 0.0)
        .fold(f64::INFINITY, f64::min);
    let height = ys[ys.len() - 1] - ys[0];
    let wanted = (height / dy_min).ceil();
    let n = poly.len();
    if wanted > MAX_UNIFORM_SLABS as f64 {
        (MAX_UNIFORM_SLABS.max(n), true)
    } else {
        ((wanted as usize).max(n), false)
    }
}

impl Locator<Point2> for UniformSlabIndex2<'_> {
    fn name(&self) -> &'static str {
        "slabs-uniform"
    }

    fn locate(&self, p: Point2) -> Containment {
        UniformSlabIndex2::locate(self, p)
    }

    fn locate_counted(&self, p: Point2) -> (Containment, EvalCount) {
        let mut n = EvalCount::default();
        (self.locate_with(p, &mut n), n)
    }

    fn max_occupancy(&self) -> Option<usize> {
        Some(self.max_occupancy)
    }
}
