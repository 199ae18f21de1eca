use crate::{Containment, ConvexPolygon, EvalCount, HalfPlane2, Locator, Point2, Tally};

/// Fan of lines through vertex 0 for O(log N) bisection.
///
/// `lines[i - 1]` is the line through vertex 0 and vertex `i`, oriented so
/// the polygon lies on its left for `i = 1` and increasingly to its right
/// as `i` grows.
#[derive(Debug, Clone)]
pub struct WedgeIndex2<'a> {
    poly: &'a ConvexPolygon,
    lines: Vec<HalfPlane2>,
}

impl<'a> WedgeIndex2<'a> {
    pub fn new(poly: &'a ConvexPolygon) -> Self {
        let v = poly.vertices();
        let eps_len = poly.tolerance().len;
        let lines = (1..v.len())
            .map(|i| {
                HalfPlane2::from_edge_with_min_length(v[0], v[i], eps_len)
                    .expect("validated polygon has distinct vertices")
            })
            .collect();
        Self { poly, lines }
    }

    pub fn polygon(&self) -> &'a ConvexPolygon {
        self.poly
    }

    /// Line through the apex and vertex `i` (`1 <= i < N`).
    pub fn wedge_line(&self, i: usize) -> &HalfPlane2 {
        &self.lines[i - 1]
    }

    pub fn apex(&self) -> Point2 {
        self.poly.vertices()[0]
    }

    pub fn locate(&self, p: Point2) -> Containment {
        self.locate_with(p, &mut ())
    }

    /// Wedge evaluations (`Tally::auxiliary`) are at most `1 + ceil(log2(N - 1))`
    /// and edge evaluations at most 1.
    pub fn locate_with<T: Tally>(&self, p: Point2, tally: &mut T) -> Containment {
        let n = self.poly.len();
        let eps = self.poly.tolerance().query;
        let edges = self.poly.halfplanes();

        // The first fan line carries edge 0; right of it is outside the
        // opening wedge.
        tally.auxiliary();
        let g_first = self.lines[0].eval(p);
        if g_first < -eps {
            return Containment::Outside;
        }

        // Largest k in [1, N-1] with p left of (or on) fan line k. Within the
        // half-plane left of line 1 this predicate is monotone in k.
        let (mut lo, mut hi) = (1usize, n);
        let mut g_hi = f64::NAN;
        let mut g_lo = g_first;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            tally.auxiliary();
            let g = self.lines[mid - 1].eval(p);
            if g >= 0.0 {
                lo = mid;
                g_lo = g;
            } else {
                hi = mid;
                g_hi = g;
            }
        }

        let min = if lo == n - 1 {
            // Beyond the last fan line: that line is edge N-1 reversed; the
            // edge before it bounds the far end.
            tally.constraint();
            (-g_lo).min(edges[n - 2].eval(p)).min(g_first)
        } else {
            tally.constraint();
            let mut m = edges[lo].eval(p).min(g_first);
            if hi == n - 1 {
                m = m.min(-g_hi);
            }
            m
        };
        Containment::from_min_distance(min, eps)
    }
}

impl Locator<Point2> for WedgeIndex2<'_> {
    fn name(&self) -> &'static str {
        "wedge"
    }

    fn locate(&self, p: Point2) -> Containment {
        WedgeIndex2::locate(self, p)
    }

    fn locate_counted(&self, p: Point2) -> (Containment, EvalCount) {
        let mut n = EvalCount::default();
        (self.locate_with(p, &mut n), n)
    }
}
