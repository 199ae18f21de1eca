use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use convloc::bench::{time_build, time_queries, BenchRecord, CSV_HEADER};
use convloc::compare::{compare_methods_2d, compare_methods_3d, MismatchReport};
use convloc::generate::{
    gen_convex_polygon, gen_convex_polyhedron, gen_query_points_2d, gen_query_points_3d, Affine3, GenSpec2, GenSpec3,
    QuerySpec,
};
use convloc::{io as shape_io, ConvexPolygon, ConvexPolyhedron, Locator, Point2, Point3};

use crate::shape::{self, Shape};
use crate::{BenchArgs, GenArgs, IndexArgs, LocateArgs, Method, VerifyArgs, EXIT_MISMATCH};

/// Query points are drawn from the shape's bounding box scaled by this factor.
const QUERY_INFLATION: f64 = 1.5;

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn gen(a: GenArgs) -> Result<ExitCode> {
    let text = if a.icosphere {
        let affine = a.seed.map(Affine3::random).unwrap_or_else(Affine3::identity);
        let spec = GenSpec3 {
            level: a.level,
            seed: a.seed.unwrap_or(0),
            affine,
        };
        shape_io::format_obj(&gen_convex_polyhedron(&spec)?)
    } else {
        let spec = GenSpec2 {
            n: a.n,
            seed: a.seed.unwrap_or(0),
            semi_axes: (a.axes[0], a.axes[1]),
            rotation: a.rotation,
        };
        shape_io::format_polygon(&gen_convex_polygon(&spec)?)
    };
    let mut out = output(&a.out)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn write_answers<P: Copy>(locator: &dyn Locator<P>, points: &[P], out: &mut dyn Write) -> Result<()> {
    for (i, &p) in points.iter().enumerate() {
        writeln!(out, "{i} {}", locator.locate(p))?;
    }
    Ok(())
}

pub fn locate(a: LocateArgs) -> Result<ExitCode> {
    let shape = shape::load(&a.shape)?;
    let mut out = output(&a.out)?;
    match &shape {
        Shape::Polygon(poly) => {
            let points = shape_io::read_points_2d(&a.points)?;
            let locator = shape::build_2d(a.method.unwrap_or(Method::Polar), poly, a.index)?;
            write_answers(locator.as_ref(), &points, &mut out)?;
        }
        Shape::Polyhedron(poly) => {
            let points = shape_io::read_points_3d(&a.points)?;
            let locator = shape::build_3d(a.method.unwrap_or(Method::Cubemap), poly, a.index)?;
            write_answers(locator.as_ref(), &points, &mut out)?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn verify_polygon(poly: &ConvexPolygon, points: &[Point2], opts: IndexArgs) -> Result<MismatchReport<Point2>> {
    let locators = Method::ALL_2D
        .iter()
        .map(|&m| shape::build_2d(m, poly, opts))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&dyn Locator<Point2>> = locators.iter().map(|b| b.as_ref()).collect();
    Ok(compare_methods_2d(poly, points, &refs))
}

fn verify_polyhedron(poly: &ConvexPolyhedron, points: &[Point3], opts: IndexArgs) -> Result<MismatchReport<Point3>> {
    let locators = Method::ALL_3D
        .iter()
        .map(|&m| shape::build_3d(m, poly, opts))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&dyn Locator<Point3>> = locators.iter().map(|b| b.as_ref()).collect();
    Ok(compare_methods_3d(poly, points, &refs))
}

/// Running totals over several reports.
#[derive(Default)]
struct Tally {
    shapes: usize,
    points: usize,
    banded: usize,
    mismatches: usize,
}

impl Tally {
    fn add<P: std::fmt::Debug>(&mut self, label: &str, r: &MismatchReport<P>) {
        self.shapes += 1;
        self.points += r.points;
        self.banded += r.banded;
        self.mismatches += r.mismatches.len();
        if !r.is_clean() {
            print!("{label}: {r}");
        }
    }
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let mut tally = Tally::default();
    match &a.shape {
        Some(path) => {
            let q = QuerySpec::new(a.m, a.seed, QUERY_INFLATION);
            match shape::load(path)? {
                Shape::Polygon(poly) => {
                    let points = match &a.points {
                        Some(p) => shape_io::read_points_2d(p)?,
                        None => gen_query_points_2d(poly.aabb(), &q),
                    };
                    tally.add(&path.display().to_string(), &verify_polygon(&poly, &points, a.index)?);
                }
                Shape::Polyhedron(poly) => {
                    let points = match &a.points {
                        Some(p) => shape_io::read_points_3d(p)?,
                        None => gen_query_points_3d(poly.aabb(), &q),
                    };
                    tally.add(
                        &path.display().to_string(),
                        &verify_polyhedron(&poly, &points, a.index)?,
                    );
                }
            }
        }
        None => {
            for n in [8, 64, 512, 4096] {
                for k in 0..a.shapes as u64 {
                    let seed = a.seed.wrapping_mul(1_000_003).wrapping_add(n as u64 * 1000 + k);
                    let spec = GenSpec2 {
                        n,
                        seed,
                        semi_axes: (1.0 + (k % 4) as f64, 0.3 + 0.2 * (k % 3) as f64),
                        rotation: 0.37 * k as f64,
                    };
                    let poly = gen_convex_polygon(&spec)?;
                    let points = gen_query_points_2d(poly.aabb(), &QuerySpec::new(a.m, seed, QUERY_INFLATION));
                    tally.add(
                        &format!("polygon N={n} seed={seed}"),
                        &verify_polygon(&poly, &points, a.index)?,
                    );
                }
            }
            for level in 0..=3u32 {
                for k in 0..a.shapes as u64 {
                    let seed = a.seed.wrapping_mul(1_000_003).wrapping_add(level as u64 * 1000 + k);
                    let poly = gen_convex_polyhedron(&GenSpec3::new(level, seed))?;
                    let points = gen_query_points_3d(poly.aabb(), &QuerySpec::new(a.m, seed, QUERY_INFLATION));
                    tally.add(
                        &format!("icosphere level={level} seed={seed}"),
                        &verify_polyhedron(&poly, &points, a.index)?,
                    );
                }
            }
        }
    }
    println!(
        "shapes: {}; points: {}; near boundary: {}; mismatches: {}",
        tally.shapes, tally.points, tally.banded, tally.mismatches
    );
    Ok(if tally.mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    })
}

fn bench_rows<'a, P: Copy>(
    methods: &[Method],
    n: usize,
    points: &[P],
    reps: usize,
    build: &dyn Fn(Method) -> Result<Box<dyn Locator<P> + 'a>>,
    mismatches: &dyn Fn(&dyn Locator<P>) -> usize,
    out: &mut dyn Write,
) -> Result<()> {
    for &method in methods {
        let (locator, build_ns) = time_build(reps, || build(method));
        let locator = locator?;
        let timing = time_queries(locator.as_ref(), points, reps);
        let record = BenchRecord {
            method: method.name().to_string(),
            n,
            m: points.len(),
            build_ns,
            mean_query_ns: timing.mean_ns,
            p99_query_ns: timing.p99_ns,
            max_occupancy: locator.max_occupancy(),
            mismatches: mismatches(locator.as_ref()),
        };
        writeln!(out, "{}", record.csv_row())?;
        out.flush()?;
    }
    Ok(())
}

pub fn bench(a: BenchArgs) -> Result<ExitCode> {
    if a.n.is_empty() && a.level.is_empty() {
        bail!("give polygon sizes with -n or icosphere levels with --level");
    }
    let three_d = !a.level.is_empty();
    for &m in &a.method {
        let ok = if three_d {
            Method::ALL_3D.contains(&m)
        } else {
            Method::ALL_2D.contains(&m)
        };
        if !ok {
            bail!(
                "method {} does not apply to {} inputs",
                m.name(),
                if three_d { "3D" } else { "2D" }
            );
        }
    }
    let mut out = output(&a.out)?;
    writeln!(out, "{CSV_HEADER}")?;
    if three_d {
        for &level in &a.level {
            let poly = gen_convex_polyhedron(&GenSpec3::new(level, a.seed))?;
            for &m in &a.m {
                let points = gen_query_points_3d(poly.aabb(), &QuerySpec::new(m, a.seed, QUERY_INFLATION));
                let oracle = shape::build_3d(Method::Linear, &poly, a.index)?;
                bench_rows(
                    &a.method,
                    poly.face_count(),
                    &points,
                    a.reps,
                    &|method| shape::build_3d(method, &poly, a.index),
                    &|l| {
                        compare_methods_3d(&poly, &points, &[oracle.as_ref(), l])
                            .mismatches
                            .len()
                    },
                    &mut out,
                )?;
            }
        }
    } else {
        for &n in &a.n {
            let poly = gen_convex_polygon(&GenSpec2::new(n, a.seed))?;
            for &m in &a.m {
                let points = gen_query_points_2d(poly.aabb(), &QuerySpec::new(m, a.seed, QUERY_INFLATION));
                let oracle = shape::build_2d(Method::Linear, &poly, a.index)?;
                bench_rows(
                    &a.method,
                    poly.len(),
                    &points,
                    a.reps,
                    &|method| shape::build_2d(method, &poly, a.index),
                    &|l| {
                        compare_methods_2d(&poly, &points, &[oracle.as_ref(), l])
                            .mismatches
                            .len()
                    },
                    &mut out,
                )?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
