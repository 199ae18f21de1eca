//! Deterministic shape and query-point generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a spec reproduces the same shape bit for bit on every
//! platform.

use std::collections::HashMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Aabb2, Aabb3, ConvexPolygon, ConvexPolyhedron, GeometryError, Point2, Point3, Result};

/// Smallest angular gap between consecutive polygon vertices, as a
/// fraction of the mean gap `2 pi / n`.
pub const MIN_GAP_FRACTION: f64 = 0.1;

/// Highest icosphere subdivision level accepted.
pub const MAX_LEVEL: u32 = 5;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polygon with `n` vertices on a rotated ellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec2 {
    pub n: usize,
    pub seed: u64,
    pub semi_axes: (f64, f64),
    pub rotation: f64,
}

impl GenSpec2 {
    /// Unit circle, no rotation.
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            seed,
            semi_axes: (1.0, 1.0),
            rotation: 0.0,
        }
    }
}

/// Vertices at parametric angles `angles` on the ellipse of `semi_axes`,
/// rotated by `rotation`. Angles must be increasing within one turn.
pub fn polygon_from_angles(angles: &[f64], semi_axes: (f64, f64), rotation: f64) -> Result<ConvexPolygon> {
    let (a, b) = semi_axes;
    let (sin_r, cos_r) = rotation.sin_cos();
    let vertices = angles
        .iter()
        .map(|&t| {
            let (x, y) = (a * t.cos(), b * t.sin());
            Point2::new(cos_r * x - sin_r * y, sin_r * x + cos_r * y)
        })
        .collect();
    ConvexPolygon::new(vertices)
}

/// Sorted angles in `[0, 2 pi)` whose cyclic gaps are all at least
/// `MIN_GAP_FRACTION * 2 pi / n`.
///
/// Each gap is the floor plus a share of the remaining turn taken from
/// exponential spacings, which is the uniform distribution over all
/// admissible gap vectors.
fn angles_with_min_gap(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let floor = MIN_GAP_FRACTION * TAU / n as f64;
    let free = TAU - floor * n as f64;
    let weights: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = weights.iter().sum();
    let start = rng.gen::<f64>() * TAU;
    let mut angles = Vec::with_capacity(n);
    let mut t = start;
    for w in &weights {
        angles.push(t);
        t += floor + free * w / total;
    }
    angles
}

pub fn gen_convex_polygon(spec: &GenSpec2) -> Result<ConvexPolygon> {
    if spec.n < 3 {
        return Err(GeometryError::TooFewVertices {
            found: spec.n,
            required: 3,
        });
    }
    let (a, b) = spec.semi_axes;
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(GeometryError::InvalidParameter(format!(
            "semi-axes must be positive, got ({a}, {b})"
        )));
    }
    let mut rng = rng_from_seed(spec.seed);
    let angles = angles_with_min_gap(spec.n, &mut rng);
    polygon_from_angles(&angles, spec.semi_axes, spec.rotation)
}

/// Affine map `x -> m x + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine3 {
    pub m: [[f64; 3]; 3],
    pub t: [f64; 3],
}

impl Default for Affine3 {
    fn default() -> Self {
        Self::identity()
    }
}

impl Affine3 {
    pub fn identity() -> Self {
        Self {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            t: [0.0; 3],
        }
    }

    /// Random well-conditioned map with positive determinant: identity plus
    /// entries in `[-0.4, 0.4]`, a scale in `[0.5, 4]` and a translation in
    /// `[-5, 5]^3`. Draws repeat until `det >= 0.1 * scale^3`.
    pub fn random(seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        loop {
            let scale = rng.gen_range(0.5..4.0);
            let mut m = [[0.0; 3]; 3];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    let base = if i == j { 1.0 } else { 0.0 };
                    *v = scale * (base + rng.gen_range(-0.4..0.4));
                }
            }
            let t = [
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            ];
            let a = Self { m, t };
            if a.det() >= 0.1 * scale * scale * scale {
                return a;
            }
        }
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        let m = &self.m;
        Point3::new(
            m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z + self.t[0],
            m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z + self.t[1],
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z + self.t[2],
        )
    }
}

/// Affinely mapped icosphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec3 {
    pub level: u32,
    pub seed: u64,
    pub affine: Affine3,
}

impl GenSpec3 {
    /// Icosphere at `level` under the random map of `seed`.
    pub fn new(level: u32, seed: u64) -> Self {
        Self {
            level,
            seed,
            affine: Affine3::random(seed),
        }
    }

    pub fn unit(level: u32) -> Self {
        Self {
            level,
            seed: 0,
            affine: Affine3::identity(),
        }
    }
}

/// Unit icosphere: icosahedron subdivided `level` times, on the unit sphere.
pub fn icosphere(level: u32) -> (Vec<Point3>, Vec<[usize; 3]>) {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<Point3> = [
        (-1.0, g, 0.0),
        (1.0, g, 0.0),
        (-1.0, -g, 0.0),
        (1.0, -g, 0.0),
        (0.0, -1.0, g),
        (0.0, 1.0, g),
        (0.0, -1.0, -g),
        (0.0, 1.0, -g),
        (g, 0.0, -1.0),
        (g, 0.0, 1.0),
        (-g, 0.0, -1.0),
        (-g, 0.0, 1.0),
    ]
    .into_iter()
    .map(|(x, y, z)| {
        let p = Point3::new(x, y, z);
        p * (1.0 / p.norm())
    })
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<Point3>| {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let m = (vertices[a] + vertices[b]) * 0.5;
                vertices.push(m * (1.0 / m.norm()));
                vertices.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    (vertices, faces)
}

pub fn gen_convex_polyhedron(spec: &GenSpec3) -> Result<ConvexPolyhedron> {
    if spec.level > MAX_LEVEL {
        return Err(GeometryError::InvalidParameter(format!(
            "icosphere level {} exceeds {MAX_LEVEL}",
            spec.level
        )));
    }
    let det = spec.affine.det();
    let scale = spec.affine.m.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(det.abs() > 1e-12 * scale * scale * scale) {
        return Err(GeometryError::SingularAffine { det });
    }
    let (vertices, faces) = icosphere(spec.level);
    let vertices = vertices.into_iter().map(|p| spec.affine.apply(p)).collect();
    ConvexPolyhedron::new(vertices, faces.into_iter().map(|f| f.to_vec()).collect())
}

/// Uniform query points in a shape's bounding box scaled by `inflation`
/// about its center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuerySpec {
    pub m: usize,
    pub seed: u64,
    pub inflation: f64,
}

impl QuerySpec {
    pub fn new(m: usize, seed: u64, inflation: f64) -> Self {
        Self { m, seed, inflation }
    }
}

fn sample(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

pub fn gen_query_points_2d(aabb: &Aabb2, spec: &QuerySpec) -> Vec<Point2> {
    let b = aabb.scaled(spec.inflation);
    let mut rng = rng_from_seed(spec.seed);
    (0..spec.m)
        .map(|_| {
            let x = sample(&mut rng, b.min.x, b.max.x);
            Point2::new(x, sample(&mut rng, b.min.y, b.max.y))
        })
        .collect()
}

pub fn gen_query_points_3d(aabb: &Aabb3, spec: &QuerySpec) -> Vec<Point3> {
    let b = aabb.scaled(spec.inflation);
    let mut rng = rng_from_seed(spec.seed);
    (0..spec.m)
        .map(|_| {
            let x = sample(&mut rng, b.min.x, b.max.x);
            let y = sample(&mut rng, b.min.y, b.max.y);
            Point3::new(x, y, sample(&mut rng, b.min.z, b.max.z))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::locate_linear_2d;
    use crate::Containment;

    #[test]
    fn angle_hook_gives_square() {
        let q = std::f64::consts::FRAC_PI_2;
        let sq = polygon_from_angles(&[0.0, q, 2.0 * q, 3.0 * q], (1.0, 1.0), 0.0).unwrap();
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (v, (x, y)) in sq.vertices().iter().zip(expect) {
            assert!((v.x - x).abs() < 1e-15 && (v.y - y).abs() < 1e-15);
        }
    }

    #[test]
    fn polygon_sweep_is_valid_with_gap() {
        for seed in 0..100 {
            let spec = GenSpec2 {
                n: 1000,
                seed,
                semi_axes: (3.0, 0.5),
                rotation: seed as f64 * 0.1,
            };
            let poly = gen_convex_polygon(&spec).unwrap();
            assert_eq!(poly.len(), 1000);
            assert!(poly.min_edge_length() > 0.0);
            // Angular gaps seen from the centroid.
            let c = poly.centroid();
            let v = poly.vertices();
            for i in 0..v.len() {
                let (a, b) = (v[i] - c, v[(i + 1) % v.len()] - c);
                assert!(a.cross(b) > 0.0);
            }
        }
    }

    #[test]
    fn parametric_gaps_respect_floor() {
        let mut rng = rng_from_seed(7);
        let n = 50;
        let a = angles_with_min_gap(n, &mut rng);
        let floor = MIN_GAP_FRACTION * TAU / n as f64;
        for w in a.windows(2) {
            assert!(w[1] - w[0] >= floor * (1.0 - 1e-12));
        }
        assert!(a[0] + TAU - a[n - 1] >= floor * (1.0 - 1e-9));
    }

    #[test]
    fn polygon_generation_is_deterministic() {
        let spec = GenSpec2::new(64, 42);
        let a = gen_convex_polygon(&spec).unwrap();
        let b = gen_convex_polygon(&spec).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_ne!(
            a.vertices(),
            gen_convex_polygon(&GenSpec2::new(64, 43)).unwrap().vertices()
        );
        assert!(gen_convex_polygon(&GenSpec2::new(2, 0)).is_err());
    }

    #[test]
    fn icosahedron_counts() {
        let p = gen_convex_polyhedron(&GenSpec3::unit(0)).unwrap();
        assert_eq!(p.vertices().len(), 12);
        assert_eq!(p.face_count(), 20);
        assert_eq!(p.edge_count(), 30);
        assert_eq!(12 + 20 - 30, 2);
        assert_eq!(gen_convex_polyhedron(&GenSpec3::unit(2)).unwrap().face_count(), 320);
    }

    #[test]
    fn polyhedron_sweep_is_valid() {
        for level in 0..=3 {
            for seed in 0..20 {
                let p = gen_convex_polyhedron(&GenSpec3::new(level, seed)).unwrap();
                assert_eq!(p.face_count(), 20 * 4usize.pow(level));
                let (v, e, f) = (p.vertices().len(), p.edge_count(), p.face_count());
                assert_eq!(v + f, e + 2);
            }
        }
    }

    #[test]
    fn singular_affine_rejected() {
        let mut spec = GenSpec3::unit(1);
        spec.affine.m[2] = [0.0, 0.0, 0.0];
        assert!(matches!(
            gen_convex_polyhedron(&spec),
            Err(GeometryError::SingularAffine { .. })
        ));
        spec = GenSpec3::unit(MAX_LEVEL + 1);
        assert!(gen_convex_polyhedron(&spec).is_err());
    }

    #[test]
    fn query_inside_fraction_matches_area_ratio() {
        let sq = crate::baseline::test_shapes::unit_square();
        let pts = gen_query_points_2d(sq.aabb(), &QuerySpec::new(10_000, 3, 1.5));
        let inside = pts
            .iter()
            .filter(|&&p| locate_linear_2d(&sq, p) == Containment::Inside)
            .count();
        let frac = inside as f64 / pts.len() as f64;
        let expect = 1.0 / 2.25;
        assert!((frac - expect).abs() < 0.05 * expect, "{frac}");
        assert!(pts.iter().all(|p| p.is_finite()));
    }

    #[test]
    fn query_points_deterministic() {
        let b = Aabb3::new(Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 2.0, 3.0));
        let s = QuerySpec::new(100, 9, 1.2);
        assert_eq!(gen_query_points_3d(&b, &s), gen_query_points_3d(&b, &s));
        assert!(gen_query_points_3d(&b, &QuerySpec::new(0, 9, 1.2)).is_empty());
    }
}
