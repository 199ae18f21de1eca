use crate::{Containment, ConvexPolygon, ConvexPolyhedron, EvalCount, Locator, Point2, Point3, Tally};

/// Tests `p` against every edge half-plane. O(N).
pub fn locate_linear_2d(poly: &ConvexPolygon, p: Point2) -> Containment {
    locate_linear_2d_with(poly, p, &mut ())
}

pub fn locate_linear_2d_with<T: Tally>(poly: &ConvexPolygon, p: Point2, tally: &mut T) -> Containment {
    let mut min = f64::INFINITY;
    // No early exit: the baseline always pays for all N evaluations.
    for h in poly.halfplanes() {
        tally.constraint();
        min = min.min(h.eval(p));
    }
    Containment::from_min_distance(min, poly.tolerance().query)
}

/// Tests `p` against every face half-space. O(N).
pub fn locate_linear_3d(poly: &ConvexPolyhedron, p: Point3) -> Containment {
    locate_linear_3d_with(poly, p, &mut ())
}

pub fn locate_linear_3d_with<T: Tally>(poly: &ConvexPolyhedron, p: Point3, tally: &mut T) -> Containment {
    let mut min = f64::INFINITY;
    for h in poly.halfspaces() {
        tally.constraint();
        min = min.min(h.eval(p));
    }
    Containment::from_min_distance(min, poly.tolerance().query)
}

/// [`Locator`] adapter for [`locate_linear_2d`].
#[derive(Debug, Clone, Copy)]
pub struct Linear2<'a>(pub &'a ConvexPolygon);

/// [`Locator`] adapter for [`locate_linear_3d`].
#[derive(Debug, Clone, Copy)]
pub struct Linear3<'a>(pub &'a ConvexPolyhedron);

impl Locator<Point2> for Linear2<'_> {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn locate(&self, p: Point2) -> Containment {
        locate_linear_2d(self.0, p)
    }

    fn locate_counted(&self, p: Point2) -> (Containment, EvalCount) {
        let mut n = EvalCount::default();
        (locate_linear_2d_with(self.0, p, &mut n), n)
    }
}

impl Locator<Point3> for Linear3<'_> {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn locate(&self, p: Point3) -> Containment {
        locate_linear_3d(self.0, p)
    }

    fn locate_counted(&self, p: Point3) -> (Containment, EvalCount) {
        let mut n = EvalCount::default();
        (locate_linear_3d_with(self.0, p, &mut n), n)
    }
}
