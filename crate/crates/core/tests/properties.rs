use convloc::baseline::{locate_linear_2d, locate_linear_3d, SortedSlabIndex2, UniformSlabIndex2, WedgeIndex2};
use convloc::cubemap::{CubeMapIndex3, CubeMapOptions};
use convloc::generate::{gen_convex_polygon, gen_convex_polyhedron, GenSpec2, GenSpec3};
use convloc::polar::PolarIndex2;
use convloc::{io, Containment, Locator, Point2, Point3};
use proptest::prelude::*;

fn polygon_spec() -> impl Strategy<Value = GenSpec2> {
    (3usize..300, any::<u64>(), 0.1f64..10.0, 0.05f64..1.0, -4.0f64..4.0).prop_map(|(n, seed, a, ratio, rotation)| {
        GenSpec2 {
            n,
            seed,
            semi_axes: (a, a * ratio),
            rotation,
        }
    })
}

/// Point in `[-1.5, 1.5]^2` relative to the polygon's bounding box.
fn unit_offsets() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5), 1..64)
}

fn in_box(poly: &convloc::ConvexPolygon, (u, v): (f64, f64)) -> Point2 {
    let b = poly.aabb();
    let c = b.center();
    Point2::new(c.x + u * 0.5 * b.width(), c.y + v * 0.5 * b.height())
}

fn agrees(answer: Containment, oracle: Containment, distance: f64, eps: f64) -> bool {
    distance.abs() <= 2.0 * eps || answer == oracle
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planar_locators_match_linear(spec in polygon_spec(), offsets in unit_offsets()) {
        let poly = gen_convex_polygon(&spec).unwrap();
        let eps = poly.tolerance().query;
        let polar = PolarIndex2::new(&poly).unwrap();
        let wedge = WedgeIndex2::new(&poly);
        let sorted = SortedSlabIndex2::new(&poly);
        let uniform = UniformSlabIndex2::new(&poly, None).unwrap();
        let methods: [&dyn Locator<Point2>; 4] = [&polar, &wedge, &sorted, &uniform];
        for &o in &offsets {
            let p = in_box(&poly, o);
            let oracle = locate_linear_2d(&poly, p);
            let d = poly.min_signed_distance(p);
            for m in methods {
                prop_assert!(agrees(m.locate(p), oracle, d, eps), "{} at {:?}", m.name(), p);
            }
        }
    }

    #[test]
    fn vertices_and_edge_midpoints_are_on_boundary(spec in polygon_spec()) {
        let poly = gen_convex_polygon(&spec).unwrap();
        let polar = PolarIndex2::new(&poly).unwrap();
        for i in 0..poly.len() {
            let (a, b) = poly.edge(i);
            prop_assert_eq!(polar.locate(a), Containment::OnBoundary);
            prop_assert_eq!(polar.locate((a + b) * 0.5), Containment::OnBoundary);
        }
    }

    #[test]
    fn polar_reference_point_anywhere_inside(spec in polygon_spec(), w in prop::collection::vec(0.01f64..1.0, 3), offsets in unit_offsets()) {
        // Convex combination of three vertices, kept off the boundary.
        let poly = gen_convex_polygon(&spec).unwrap();
        let v = poly.vertices();
        let k = v.len();
        let total: f64 = w.iter().sum();
        let tri = v[0] * (w[0] / total) + v[k / 3] * (w[1] / total) + v[2 * k / 3] * (w[2] / total);
        let x_t = tri * 0.9 + poly.centroid() * 0.1;
        prop_assume!(poly.min_signed_distance(x_t) > 1e-6 * poly.aabb().diagonal());
        let polar = PolarIndex2::build(&poly, None, Some(x_t)).unwrap();
        let eps = poly.tolerance().query;
        for &o in &offsets {
            let p = in_box(&poly, o);
            prop_assert!(agrees(polar.locate(p), locate_linear_2d(&poly, p), poly.min_signed_distance(p), eps));
        }
    }

    #[test]
    fn doubling_slabs_never_raises_occupancy(spec in polygon_spec(), n in 1usize..2000) {
        let poly = gen_convex_polygon(&spec).unwrap();
        let a = PolarIndex2::build(&poly, Some(n), None).unwrap().max_occupancy();
        let b = PolarIndex2::build(&poly, Some(2 * n), None).unwrap().max_occupancy();
        prop_assert!(b <= a, "{} slabs: {}, {} slabs: {}", n, a, 2 * n, b);
    }

    #[test]
    fn polar_counts_bounded(spec in polygon_spec(), n_slabs in prop::option::of(1usize..5000), offsets in unit_offsets()) {
        let poly = gen_convex_polygon(&spec).unwrap();
        let polar = PolarIndex2::build(&poly, n_slabs, None).unwrap();
        for &o in &offsets {
            let (_, c) = polar.locate_counted(in_box(&poly, o));
            prop_assert!(c.constraints <= polar.max_occupancy());
            prop_assert!(c.total() <= polar.max_occupancy() + 2);
        }
    }

    #[test]
    fn polygon_text_round_trip(spec in polygon_spec()) {
        let poly = gen_convex_polygon(&spec).unwrap();
        let back = io::parse_polygon(&io::format_polygon(&poly)).unwrap();
        prop_assert_eq!(back.vertices(), poly.vertices());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cubemap_matches_linear(
        level in 0u32..3,
        seed in any::<u64>(),
        resolution in prop::option::of(1usize..24),
        exact in any::<bool>(),
        offsets in prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5, -1.5f64..1.5), 1..64),
    ) {
        let poly = gen_convex_polyhedron(&GenSpec3::new(level, seed)).unwrap();
        let idx = CubeMapIndex3::build(&poly, CubeMapOptions { resolution, exact_raster: exact, ..Default::default() }).unwrap();
        let eps = poly.tolerance().query;
        let b = poly.aabb();
        let c = b.center();
        let half = (b.max - b.min) * 0.5;
        for &(u, v, w) in &offsets {
            let p = Point3::new(c.x + u * half.x, c.y + v * half.y, c.z + w * half.z);
            let d = poly.min_signed_distance(p);
            prop_assert!(agrees(idx.locate(p), locate_linear_3d(&poly, p), d, eps), "{:?}", p);
            let (_, n) = idx.locate_counted(p);
            prop_assert!(n.constraints <= idx.max_occupancy());
        }
        for cell in idx.all_cells() {
            prop_assert!(idx.cell_len(cell) > 0);
        }
    }

    #[test]
    fn obj_round_trip(level in 0u32..3, seed in any::<u64>()) {
        let poly = gen_convex_polyhedron(&GenSpec3::new(level, seed)).unwrap();
        let back = io::parse_obj(&io::format_obj(&poly)).unwrap();
        prop_assert_eq!(back.vertices(), poly.vertices());
        prop_assert_eq!(back.faces(), poly.faces());
    }
}
