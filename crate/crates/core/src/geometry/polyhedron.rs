use std::collections::HashMap;

use super::{mean3, Aabb3, HalfSpace3, Point3, Tolerance};
use crate::error::{GeometryError, Result};

/// A convex polyhedron with outward-wound faces.
///
/// `halfspaces()[i]` is the inward half-space of face `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolyhedron {
    vertices: Vec<Point3>,
    faces: Vec<Vec<usize>>,
    halfspaces: Vec<HalfSpace3>,
    aabb: Aabb3,
    tol: Tolerance,
}

impl ConvexPolyhedron {
    /// Validates vertex and face data. Faces wound inward are reversed.
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        if vertices.len() < 4 {
            return Err(GeometryError::TooFewVertices {
                found: vertices.len(),
                required: 4,
            });
        }
        if let Some(index) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }
        let aabb = Aabb3::from_points(&vertices);
        let tol = Tolerance::from_diagonal(aabb.diagonal());

        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(GeometryError::DegenerateFace { face: fi });
            }
            if let Some(&vertex) = face.iter().find(|&&v| v >= vertices.len()) {
                return Err(GeometryError::BadVertexIndex { face: fi, vertex });
            }
            for (k, &v) in face.iter().enumerate() {
                if face[k + 1..].contains(&v) {
                    return Err(GeometryError::DegenerateFace { face: fi });
                }
            }
        }

        let interior = mean3(&vertices);
        let mut faces = faces;
        let mut halfspaces = Vec::with_capacity(faces.len());
        let mut ring = Vec::new();
        for (fi, face) in faces.iter_mut().enumerate() {
            ring.clear();
            ring.extend(face.iter().map(|&v| vertices[v]));
            let plane = HalfSpace3::fit_face(&ring, fi, &tol)?;
            let side = plane.eval(interior);
            if side.abs() < tol.query {
                return Err(GeometryError::InteriorOnPlane { face: fi });
            }
            if side < 0.0 {
                halfspaces.push(plane.flipped());
            } else {
                face.reverse();
                halfspaces.push(plane);
            }
        }

        for h in &halfspaces {
            if let Some(vertex) = vertices.iter().position(|&v| h.eval(v) < -tol.plane) {
                return Err(GeometryError::NotConvex { vertex });
            }
        }

        let edges = count_edges(&faces)?;
        let (v, e, f) = (vertices.len(), edges, faces.len());
        if v + f != e + 2 {
            return Err(GeometryError::EulerViolation { v, e, f });
        }

        Ok(Self {
            vertices,
            faces,
            halfspaces,
            aabb,
            tol,
        })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn halfspaces(&self) -> &[HalfSpace3] {
        &self.halfspaces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() + self.faces.len() - 2
    }

    pub fn aabb(&self) -> &Aabb3 {
        &self.aabb
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// Vertices of face `i` in outward winding order.
    pub fn face_points(&self, i: usize) -> impl Iterator<Item = Point3> + '_ {
        self.faces[i].iter().map(|&v| self.vertices[v])
    }

    pub fn centroid(&self) -> Point3 {
        mean3(&self.vertices)
    }

    pub fn min_signed_distance(&self, p: Point3) -> f64 {
        self.halfspaces.iter().map(|h| h.eval(p)).fold(f64::INFINITY, f64::min)
    }
}

/// Number of undirected edges; every edge must border exactly two faces.
fn count_edges(faces: &[Vec<usize>]) -> Result<usize> {
    let mut uses: HashMap<(usize, usize), u32> = HashMap::new();
    for face in faces {
        for (k, &a) in face.iter().enumerate() {
            let b = face[(k + 1) % face.len()];
            *uses.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    if let Some((&(a, b), _)) = uses.iter().find(|(_, &n)| n != 2) {
        return Err(GeometryError::NonManifoldEdge(a, b));
    }
    Ok(uses.len())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn unit_cube() -> (Vec<Point3>, Vec<Vec<usize>>) {
        let v = (0..8)
            .map(|i| Point3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64))
            .collect();
        let f = vec![
            vec![0, 2, 3, 1], // z = 0
            vec![4, 5, 7, 6], // z = 1
            vec![0, 1, 5, 4], // y = 0
            vec![2, 6, 7, 3], // y = 1
            vec![0, 4, 6, 2], // x = 0
            vec![1, 3, 7, 5], // x = 1
        ];
        (v, f)
    }

    #[test]
    fn cube_validates() {
        let (v, f) = unit_cube();
        let cube = ConvexPolyhedron::new(v, f).unwrap();
        assert_eq!(cube.face_count(), 6);
        assert_eq!(cube.edge_count(), 12);
        assert_eq!(cube.centroid(), Point3::new(0.5, 0.5, 0.5));
        for h in cube.halfspaces() {
            assert!((h.eval(cube.centroid()) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn inward_faces_repaired() {
        let (v, mut f) = unit_cube();
        f[1].reverse();
        f[4].reverse();
        let repaired = ConvexPolyhedron::new(v.clone(), f).unwrap();
        let (_, reference) = unit_cube();
        let reference = ConvexPolyhedron::new(v, reference).unwrap();
        for (a, b) in repaired.halfspaces().iter().zip(reference.halfspaces()) {
            assert!((a.normal() - b.normal()).norm() < 1e-12);
        }
        // Re-validating an accepted shape changes nothing.
        let again = ConvexPolyhedron::new(repaired.vertices().to_vec(), repaired.faces().to_vec()).unwrap();
        assert_eq!(again, repaired);
    }

    #[test]
    fn dented_cube_is_not_convex() {
        let (mut v, f) = unit_cube();
        // Push the top face down into a shallow valley: top face stays planar
        // only if we move all four, so move one vertex of the bottom inward.
        v[0] = Point3::new(0.4, 0.4, 0.4);
        let err = ConvexPolyhedron::new(v, f).unwrap_err();
        assert!(
            matches!(
                err,
                GeometryError::NonPlanarFace { .. } | GeometryError::NotConvex { .. }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn open_surface_rejected() {
        let (v, mut f) = unit_cube();
        f.pop();
        let err = ConvexPolyhedron::new(v, f).unwrap_err();
        assert!(matches!(err, GeometryError::NonManifoldEdge(..)), "{err:?}");
    }

    #[test]
    fn bad_indices_rejected() {
        let (v, mut f) = unit_cube();
        f[0][0] = 99;
        assert!(matches!(
            ConvexPolyhedron::new(v, f),
            Err(GeometryError::BadVertexIndex { face: 0, vertex: 99 })
        ));
    }
}
