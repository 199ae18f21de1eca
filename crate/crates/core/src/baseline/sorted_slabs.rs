use crate::{Containment, ConvexPolygon, EvalCount, Locator, Point2, Tally};

/// Horizontal slabs between consecutive distinct vertex heights, each with
/// its one left and one right edge. O(log N) query by binary search on y.
#[derive(Debug, Clone)]
pub struct SortedSlabIndex2<'a> {
    poly: &'a ConvexPolygon,
    ys: Vec<f64>,
    left: Vec<u32>,
    right: Vec<u32>,
    bottom: Option<u32>,
    top: Option<u32>,
}

impl<'a> SortedSlabIndex2<'a> {
    pub fn new(poly: &'a ConvexPolygon) -> Self {
        let mut ys: Vec<f64> = poly.vertices().iter().map(|v| v.y).collect();
        ys.sort_by(f64::total_cmp);
        ys.dedup();
        let slabs = ys.len() - 1;
        let mut left = vec![u32::MAX; slabs];
        let mut right = vec![u32::MAX; slabs];
        let (mut bottom, mut top) = (None, None);

        let slab_of = |y: f64| ys.binary_search_by(|v| v.total_cmp(&y)).expect("vertex height");
        for i in 0..poly.len() {
            let (a, b) = poly.edge(i);
            if a.y == b.y {
                if a.y == ys[0] {
                    bottom = Some(i as u32);
                } else {
                    top = Some(i as u32);
                }
                continue;
            }
            let (lo, hi) = (slab_of(a.y.min(b.y)), slab_of(a.y.max(b.y)));
            // Counter-clockwise: rising edges bound the right side.
            let side = if b.y > a.y { &mut right } else { &mut left };
            for s in &mut side[lo..hi] {
                *s = i as u32;
            }
        }
        debug_assert!(left.iter().chain(&right).all(|&e| e != u32::MAX));
        Self {
            poly,
            ys,
            left,
            right,
            bottom,
            top,
        }
    }

    pub fn polygon(&self) -> &'a ConvexPolygon {
        self.poly
    }

    /// Sorted distinct vertex heights bounding the slabs.
    pub fn slab_heights(&self) -> &[f64] {
        &self.ys
    }

    pub fn slab_count(&self) -> usize {
        self.left.len()
    }

    /// `(left edge, right edge)` of slab `s`.
    pub fn slab_edges(&self, s: usize) -> (usize, usize) {
        (self.left[s] as usize, self.right[s] as usize)
    }

    pub fn locate(&self, p: Point2) -> Containment {
        self.locate_with(p, &mut ())
    }

    pub fn locate_with<T: Tally>(&self, p: Point2, tally: &mut T) -> Containment {
        let eps = self.poly.tolerance().query;
        let (y_min, y_max) = (self.ys[0], self.ys[self.ys.len() - 1]);
        if p.y < y_min - eps || p.y > y_max + eps {
            return Containment::Outside;
        }
        let last = self.slab_count() - 1;
        let s = self.ys.partition_point(|&y| y <= p.y).saturating_sub(1).min(last);
        let h = self.poly.halfplanes();
        tally.constraint();
        tally.constraint();
        let mut min = h[self.left[s] as usize].eval(p).min(h[self.right[s] as usize].eval(p));
        // Horizontal edges cap the extreme slabs.
        let caps = [(s == 0, self.bottom), (s == last, self.top)];
        for (applies, edge) in caps {
            if let (true, Some(e)) = (applies, edge) {
                tally.constraint();
                min = min.min(h[e as usize].eval(p));
            }
        }
        Containment::from_min_distance(min, eps)
    }
}

impl Locator<Point2> for SortedSlabIndex2<'_> {
    fn name(&self) -> &'static str {
        "slabs-sorted"
    }

    fn locate(&self, p: Point2) -> Containment {
        SortedSlabIndex2::locate(self, p)
    }

    fn locate_counted(&self, p: Point2) -> (Containment, EvalCount) {
        let mut n = EvalCount::default();
        (self.locate_with(p, &mut n), n)
    }
}
