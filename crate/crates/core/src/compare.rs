//! Cross-checking locators against each other and an exact distance oracle.

use crate::{Containment, ConvexPolygon, ConvexPolyhedron, Locator, Point2, Point3};

/// One point on which the methods disagreed.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<P> {
    pub index: usize,
    pub point: P,
    /// Oracle minimum signed distance (positive inside).
    pub distance: f64,
    pub answers: Vec<(&'static str, Containment)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MismatchReport<P> {
    pub methods: Vec<&'static str>,
    pub points: usize,
    /// Points skipped because they lie within `2 eps_q` of the boundary.
    pub banded: usize,
    pub mismatches: Vec<Mismatch<P>>,
}

impl<P> MismatchReport<P> {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl<P: std::fmt::Debug> std::fmt::Display for MismatchReport<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "methods: {}; points: {}; near boundary: {}; mismatches: {}",
            self.methods.join(","),
            self.points,
            self.banded,
            self.mismatches.len()
        )?;
        for m in &self.mismatches {
            write!(f, "  #{} {:?} d={:e}", m.index, m.point, m.distance)?;
            for (name, c) in &m.answers {
                write!(f, " {name}={c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Classifies every point with every method. Disagreements count only when
/// the oracle distance exceeds `2 * eps_q` in magnitude.
pub fn compare_methods<P: Copy>(
    points: &[P],
    oracle_distance: impl Fn(P) -> f64,
    eps_q: f64,
    methods: &[&dyn Locator<P>],
) -> MismatchReport<P> {
    let mut report = MismatchReport {
        methods: methods.iter().map(|m| m.name()).collect(),
        points: points.len(),
        banded: 0,
        mismatches: Vec::new(),
    };
    let mut answers = Vec::with_capacity(methods.len());
    for (index, &p) in points.iter().enumerate() {
        let distance = oracle_distance(p);
        if distance.abs() <= 2.0 * eps_q {
            report.banded += 1;
            continue;
        }
        answers.clear();
        answers.extend(methods.iter().map(|m| (m.name(), m.locate(p))));
        if answers.windows(2).any(|w| w[0].1 != w[1].1) {
            report.mismatches.push(Mismatch {
                index,
                point: p,
                distance,
                answers: answers.clone(),
            });
        }
    }
    report
}

pub fn compare_methods_2d(
    poly: &ConvexPolygon,
    points: &[Point2],
    methods: &[&dyn Locator<Point2>],
) -> MismatchReport<Point2> {
    compare_methods(points, |p| poly.min_signed_distance(p), poly.tolerance().query, methods)
}

pub fn compare_methods_3d(
    poly: &ConvexPolyhedron,
    points: &[Point3],
    methods: &[&dyn Locator<Point3>],
) -> MismatchReport<Point3> {
    compare_methods(points, |p| poly.min_signed_distance(p), poly.tolerance().query, methods)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::{Linear2, Linear3, WedgeIndex2};
    use crate::cubemap::{CubeMapIndex3, CubeMapOptions};
    use crate::generate::{gen_convex_polygon, gen_convex_polyhedron, gen_query_points_2d, gen_query_points_3d};
    use crate::generate::{GenSpec2, GenSpec3, QuerySpec};
    use crate::polar::PolarIndex2;

    #[test]
    fn linear_against_itself_is_clean() {
        let poly = gen_convex_polygon(&GenSpec2::new(40, 1)).unwrap();
        let pts = gen_query_points_2d(poly.aabb(), &QuerySpec::new(2000, 2, 1.5));
        let lin = Linear2(&poly);
        let r = compare_methods_2d(&poly, &pts, &[&lin, &lin]);
        assert!(r.is_clean());
        assert_eq!(r.points, 2000);
    }

    #[test]
    fn fast_methods_agree_on_small_corpus() {
        let poly = gen_convex_polygon(&GenSpec2::new(200, 5)).unwrap();
        let pts = gen_query_points_2d(poly.aabb(), &QuerySpec::new(2000, 6, 1.5));
        let lin = Linear2(&poly);
        let wedge = WedgeIndex2::new(&poly);
        let polar = PolarIndex2::new(&poly).unwrap();
        assert!(compare_methods_2d(&poly, &pts, &[&lin, &wedge, &polar]).is_clean());
    }

    #[test]
    fn corrupted_slab_is_detected() {
        let poly = gen_convex_polygon(&GenSpec2::new(64, 11)).unwrap();
        let polar = PolarIndex2::new(&poly).unwrap();
        // Point just outside the middle of edge 0.
        let (a, b) = poly.edge(0);
        let mid = (a + b) * 0.5;
        let outward = (mid - poly.centroid()) * 0.05;
        let p = mid + outward;
        let s = polar.slab_of_point(p).unwrap();
        let wrong = [(poly.len() / 2)];
        let broken = polar.with_slab_replaced(s, &wrong);
        let lin = Linear2(&poly);
        let r = compare_methods_2d(&poly, &[p], &[&lin, &broken]);
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].answers[0].1, Containment::Outside);
    }

    #[test]
    fn cubemap_agrees_and_corruption_detected() {
        let poly = gen_convex_polyhedron(&GenSpec3::new(1, 4)).unwrap();
        let pts = gen_query_points_3d(poly.aabb(), &QuerySpec::new(2000, 8, 1.5));
        let lin = Linear3(&poly);
        let cm = CubeMapIndex3::build(&poly, CubeMapOptions::default()).unwrap();
        assert!(compare_methods_3d(&poly, &pts, &[&lin, &cm]).is_clean());

        let outside = pts
            .iter()
            .copied()
            .find(|&p| poly.min_signed_distance(p) < -0.1 && poly.aabb().contains(p))
            .unwrap();
        let cell = cm.cell_of_point(outside).unwrap();
        let broken = cm.with_cell_replaced(cell, &[]);
        assert!(!compare_methods_3d(&poly, &[outside], &[&lin, &broken]).is_clean());
    }
}
