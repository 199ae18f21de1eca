use std::path::Path;

use anyhow::{bail, Context, Result};
use convloc::baseline::{Linear2, Linear3, SortedSlabIndex2, UniformSlabIndex2, WedgeIndex2};
use convloc::cubemap::{CubeMapIndex3, CubeMapOptions};
use convloc::io;
use convloc::polar::PolarIndex2;
use convloc::{ConvexPolygon, ConvexPolyhedron, Locator, Point2, Point3};

use crate::{IndexArgs, Method};

pub enum Shape {
    Polygon(ConvexPolygon),
    Polyhedron(ConvexPolyhedron),
}

fn is_obj(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("obj"))
}

pub fn load(path: &Path) -> Result<Shape> {
    let shape = if is_obj(path) {
        Shape::Polyhedron(io::parse_polyhedron_obj(path)?)
    } else {
        Shape::Polygon(io::parse_polygon_file(path)?)
    };
    Ok(shape)
}

pub fn build_2d<'a>(method: Method, poly: &'a ConvexPolygon, opts: IndexArgs) -> Result<Box<dyn Locator<Point2> + 'a>> {
    Ok(match method {
        Method::Linear => Box::new(Linear2(poly)),
        Method::Wedge => Box::new(WedgeIndex2::new(poly)),
        Method::SlabsSorted => Box::new(SortedSlabIndex2::new(poly)),
        Method::SlabsUniform => Box::new(UniformSlabIndex2::new(poly, opts.n_slabs)?),
        Method::Polar => Box::new(PolarIndex2::build(poly, opts.n_slabs, None)?),
        Method::Cubemap => bail!("method cubemap needs a polyhedron (.obj) input"),
    })
}

pub fn build_3d<'a>(
    method: Method,
    poly: &'a ConvexPolyhedron,
    opts: IndexArgs,
) -> Result<Box<dyn Locator<Point3> + 'a>> {
    Ok(match method {
        Method::Linear => Box::new(Linear3(poly)),
        Method::Cubemap => Box::new(
            CubeMapIndex3::build(
                poly,
                CubeMapOptions {
                    resolution: opts.resolution,
                    ..Default::default()
                },
            )
            .context("building cube map")?,
        ),
        other => bail!("method {} needs a polygon input", other.name()),
    })
}
