//! Text formats: polygons as one `x y` pair per line, polyhedra as the
//! `v`/`f` subset of Wavefront OBJ, and query points one per line.
//!
//! Blank lines and anything after `#` are ignored in polygon and point
//! files. Floats are written in Rust's shortest round-trip form, so a
//! written shape parses back to identical coordinates.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::{ConvexPolygon, ConvexPolyhedron, GeometryError, Point2, Point3};

#[derive(Debug, thiserror::Error)]
pub enum ShapeIoError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl ShapeIoError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        ShapeIoError::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type IoResult<T> = std::result::Result<T, ShapeIoError>;

fn read(path: &Path) -> IoResult<String> {
    std::fs::read_to_string(path).map_err(|source| ShapeIoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Content lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn parse_coords<const D: usize>(line_no: usize, line: &str) -> IoResult<[f64; D]> {
    let mut out = [0.0; D];
    let mut fields = line.split_whitespace();
    for slot in out.iter_mut() {
        let field = fields
            .next()
            .ok_or_else(|| ShapeIoError::parse(line_no, format!("expected {D} coordinates")))?;
        *slot = field
            .parse()
            .map_err(|_| ShapeIoError::parse(line_no, format!("invalid number {field:?}")))?;
    }
    if fields.next().is_some() {
        return Err(ShapeIoError::parse(
            line_no,
            format!("expected {D} coordinates, found more"),
        ));
    }
    Ok(out)
}

pub fn parse_points_2d(text: &str) -> IoResult<Vec<Point2>> {
    content_lines(text)
        .map(|(k, line)| parse_coords::<2>(k, line).map(|[x, y]| Point2::new(x, y)))
        .collect()
}

pub fn parse_points_3d(text: &str) -> IoResult<Vec<Point3>> {
    content_lines(text)
        .map(|(k, line)| parse_coords::<3>(k, line).map(Point3::from_array))
        .collect()
}

/// Parses and validates a polygon; clockwise input is reversed.
pub fn parse_polygon(text: &str) -> IoResult<ConvexPolygon> {
    Ok(ConvexPolygon::new(parse_points_2d(text)?)?)
}

pub fn parse_polygon_file(path: impl AsRef<Path>) -> IoResult<ConvexPolygon> {
    parse_polygon(&read(path.as_ref())?)
}

pub fn read_points_2d(path: impl AsRef<Path>) -> IoResult<Vec<Point2>> {
    parse_points_2d(&read(path.as_ref())?)
}

pub fn read_points_3d(path: impl AsRef<Path>) -> IoResult<Vec<Point3>> {
    parse_points_3d(&read(path.as_ref())?)
}

pub fn format_polygon(poly: &ConvexPolygon) -> String {
    let mut s = format!("# convex polygon, {} vertices, counter-clockwise\n", poly.len());
    for v in poly.vertices() {
        let _ = writeln!(s, "{:?} {:?}", v.x, v.y);
    }
    s
}

/// Parses the `v` and `f` records of an OBJ file; other records are skipped.
///
/// Face entries may carry `/texture/normal` suffixes. Indices are 1-based;
/// relative (negative) indices are rejected.
pub fn parse_obj(text: &str) -> IoResult<ConvexPolyhedron> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (k, line) in content_lines(text) {
        let (tag, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match tag {
            "v" => {
                // Optional fourth (w) component is ignored.
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if !(3..=4).contains(&fields.len()) {
                    return Err(ShapeIoError::parse(k, "vertex needs 3 coordinates"));
                }
                vertices.push(Point3::from_array(parse_coords::<3>(k, &fields[..3].join(" "))?));
            }
            "f" => {
                let mut face = Vec::new();
                for entry in rest.split_whitespace() {
                    let idx = entry.split('/').next().unwrap_or("");
                    let i: i64 = idx
                        .parse()
                        .map_err(|_| ShapeIoError::parse(k, format!("invalid face index {entry:?}")))?;
                    if i < 1 {
                        return Err(ShapeIoError::parse(
                            k,
                            format!("face index {i} must be a positive 1-based index"),
                        ));
                    }
                    if i as usize > vertices.len() {
                        return Err(ShapeIoError::parse(
                            k,
                            format!("face index {i} refers to an undefined vertex"),
                        ));
                    }
                    face.push(i as usize - 1);
                }
                if face.len() < 3 {
                    return Err(ShapeIoError::parse(k, "face needs at least 3 vertices"));
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    Ok(ConvexPolyhedron::new(vertices, faces)?)
}

pub fn parse_polyhedron_obj(path: impl AsRef<Path>) -> IoResult<ConvexPolyhedron> {
    parse_obj(&read(path.as_ref())?)
}

pub fn format_obj(poly: &ConvexPolyhedron) -> String {
    let mut s = format!(
        "# convex polyhedron, {} vertices, {} faces\n",
        poly.vertices().len(),
        poly.face_count()
    );
    for v in poly.vertices() {
        let _ = writeln!(s, "v {:?} {:?} {:?}", v.x, v.y, v.z);
    }
    for f in poly.faces() {
        s.push('f');
        for i in f {
            let _ = write!(s, " {}", i + 1);
        }
        s.push('\n');
    }
    s
}
