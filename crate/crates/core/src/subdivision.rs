//! Convex subdivisions of the unit sphere: vertices, geodesic edges, and
//! spherically convex faces, together with the half-edge bookkeeping used by
//! the dual and swirlification constructions and the generic face-tracing
//! walk shared with the tiling extractor.

use crate::graph::SimpleGraph;
use crate::sphere::{
    arc_intersection, is_spherically_convex, make_arc, spherical_polygon_area, tangent_towards,
    ArcIntersection, GeodesicArc, GeomError, PointOnArc, Tolerance, UnitVec,
};
use std::collections::HashMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SubdivisionError {
    #[error("geometry error: {0}")]
    Geometry(#[from] GeomError),
    #[error("malformed subdivision: {0}")]
    Malformed(String),
    #[error("subdivision is not a closed surface: {0}")]
    NotClosed(String),
    #[error("Euler characteristic is not 2: V={v} E={e} F={f}")]
    EulerMismatch { v: usize, e: usize, f: usize },
    #[error("face {0} is not spherically convex")]
    FaceNotConvex(usize),
    #[error("edges {0:?} and {1:?} are not internally disjoint")]
    EdgesCross((usize, usize), (usize, usize)),
    #[error("two incident edges at vertex {0} are collinear")]
    CollinearIncidentEdges(usize),
    #[error("face areas sum to {0:.6}, expected 4π")]
    AreaMismatch(f64),
}

/// A partition of the unit sphere into spherically convex polygons by
/// internally disjoint geodesic edges, no two incident edges collinear.
///
/// Faces are vertex cycles, counterclockwise as seen from outside the
/// sphere. Construction validates everything and derives edges, the
/// skeleton, and rotation orders.
#[derive(Debug, Clone)]
pub struct ConvexSubdivision {
    vertices: Vec<UnitVec>,
    faces: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    /// For each vertex, neighbors in counterclockwise rotation order as seen
    /// from outside the sphere.
    rotation: Vec<Vec<usize>>,
    /// Face to the left of each directed edge (u,v).
    face_left: HashMap<(usize, usize), usize>,
    tol: Tolerance,
}

impl ConvexSubdivision {
    pub fn new(
        vertices: Vec<UnitVec>,
        faces: Vec<Vec<usize>>,
        tol: Tolerance,
    ) -> Result<Self, SubdivisionError> {
        if vertices.len() < 4 || faces.len() < 2 {
            return Err(SubdivisionError::Malformed(format!(
                "need at least 4 vertices and 2 faces, got {} and {}",
                vertices.len(),
                faces.len()
            )));
        }
        let v_count = vertices.len();
        let mut face_left: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, cycle) in faces.iter().enumerate() {
            if cycle.len() < 3 {
                return Err(SubdivisionError::Malformed(format!(
                    "face {fi} has fewer than 3 vertices"
                )));
            }
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cycle.len() {
                return Err(SubdivisionError::Malformed(format!("face {fi} repeats a vertex")));
            }
            for (k, &u) in cycle.iter().enumerate() {
                let v = cycle[(k + 1) % cycle.len()];
                if u >= v_count || v >= v_count {
                    return Err(SubdivisionError::Malformed(format!(
                        "face {fi} references vertex out of range"
                    )));
                }
                if face_left.insert((u, v), fi).is_some() {
                    return Err(SubdivisionError::NotClosed(format!(
                        "directed edge ({u},{v}) appears in two faces"
                    )));
                }
            }
        }
        // Closed orientable surface: every dart paired with its reverse.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in face_left.keys() {
            if !face_left.contains_key(&(v, u)) {
                return Err(SubdivisionError::NotClosed(format!(
                    "edge ({u},{v}) is not shared by two faces"
                )));
            }
            if u < v {
                edges.push((u, v));
            }
        }
        edges.sort_unstable();
        let e_count = edges.len();
        let f_count = faces.len();
        if v_count + f_count != e_count + 2 {
            return Err(SubdivisionError::EulerMismatch { v: v_count, e: e_count, f: f_count });
        }

        // Geometric validation: every edge a geodesic arc, faces convex and
        // counterclockwise, edges internally disjoint, no collinear
        // incidences, areas summing to the whole sphere.
        let mut arcs: Vec<GeodesicArc> = Vec::with_capacity(e_count);
        for &(u, v) in &edges {
            arcs.push(make_arc(vertices[u], vertices[v], &tol)?);
        }
        let mut total_area = 0.0;
        for (fi, cycle) in faces.iter().enumerate() {
            let pts: Vec<UnitVec> = cycle.iter().map(|&i| vertices[i]).collect();
            if !is_spherically_convex(&pts, &tol)? {
                return Err(SubdivisionError::FaceNotConvex(fi));
            }
            let area = spherical_polygon_area(&pts);
            if area <= 0.0 || area >= 2.0 * PI {
                // Convex faces fit in an open hemisphere; a larger reading
                // means the cycle is wound clockwise.
                return Err(SubdivisionError::FaceNotConvex(fi));
            }
            total_area += area;
        }
        if (total_area - 4.0 * PI).abs() > 1e-6 {
            return Err(SubdivisionError::AreaMismatch(total_area));
        }
        for i in 0..e_count {
            for j in (i + 1)..e_count {
                let (a, b) = (edges[i], edges[j]);
                let share_vertex = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
                match arc_intersection(&arcs[i], &arcs[j], &tol) {
                    ArcIntersection::Empty => {}
                    ArcIntersection::Overlap(_) => {
                        return Err(SubdivisionError::EdgesCross(a, b));
                    }
                    ArcIntersection::Point(p) => {
                        if !share_vertex {
                            return Err(SubdivisionError::EdgesCross(a, b));
                        }
                        let on_i = arcs[i].classify_point(p, &tol);
                        let on_j = arcs[j].classify_point(p, &tol);
                        if on_i == PointOnArc::Interior || on_j == PointOnArc::Interior {
                            return Err(SubdivisionError::EdgesCross(a, b));
                        }
                    }
                }
            }
        }
        // Rotation order and incident-collinearity check.
        let mut neighbor_sets: Vec<Vec<usize>> = vec![Vec::new(); v_count];
        for &(u, v) in &edges {
            neighbor_sets[u].push(v);
            neighbor_sets[v].push(u);
        }
        let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(v_count);
        for v in 0..v_count {
            if neighbor_sets[v].is_empty() {
                return Err(SubdivisionError::Malformed(format!("vertex {v} is isolated")));
            }
            let order = sort_ccw(vertices[v], &neighbor_sets[v], &vertices);
            for k in 0..order.len() {
                let t1 = tangent_towards(vertices[v], vertices[order[k]]);
                let t2 = tangent_towards(vertices[v], vertices[order[(k + 1) % order.len()]]);
                if order.len() > 1 && t1.angle_to(t2) >= PI - tol.angular_eps {
                    return Err(SubdivisionError::CollinearIncidentEdges(v));
                }
            }
            rotation.push(order);
        }

        Ok(Self { vertices, faces, edges, rotation, face_left, tol })
    }

    pub fn vertices(&self) -> &[UnitVec] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// The graph induced by the edges.
    pub fn skeleton(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.vertex_count(), &self.edges)
    }

    /// Neighbors of `v` in counterclockwise rotation order (seen from
    /// outside the sphere).
    pub fn rotation_at(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// The face on the left of the directed edge `u → v`.
    pub fn face_left_of(&self, u: usize, v: usize) -> Option<usize> {
        self.face_left.get(&(u, v)).copied()
    }

    pub fn edge_arc(&self, u: usize, v: usize) -> GeodesicArc {
        make_arc(self.vertices[u], self.vertices[v], &self.tol)
            .expect("edges validated at construction")
    }

    pub fn min_edge_length(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(u, v)| self.vertices[u].angle_to(self.vertices[v]))
            .fold(f64::INFINITY, f64::min)
    }

    /// A conservative inradius per face: the centroid's angular distance to
    /// the nearest edge great circle.
    pub fn min_face_inradius(&self) -> f64 {
        let mut best = f64::INFINITY;
        for cycle in &self.faces {
            let centroid = face_centroid(&self.vertices, cycle);
            for k in 0..cycle.len() {
                let a = self.vertices[cycle[k]];
                let b = self.vertices[cycle[(k + 1) % cycle.len()]];
                let pole = UnitVec::from_vec3(a.cross(b)).expect("valid edge");
                best = best.min(pole.dot(centroid).abs().asin());
            }
        }
        best
    }

    /// Normalized centroid of a face's vertices.
    pub fn face_centroid(&self, face: usize) -> UnitVec {
        face_centroid(&self.vertices, &self.faces[face])
    }
}

pub(crate) fn face_centroid(vertices: &[UnitVec], cycle: &[usize]) -> UnitVec {
    let sum = cycle
        .iter()
        .fold(crate::sphere::Vec3::default(), |acc, &i| acc.add(vertices[i].as_vec3()));
    UnitVec::from_vec3(sum).expect("face vertices are not balanced around the origin")
}

/// Sorts `neighbors` of the vertex at `center` counterclockwise by the
/// initial tangent direction of the connecting geodesics, as seen from
/// outside the sphere.
pub(crate) fn sort_ccw(center: UnitVec, neighbors: &[usize], vertices: &[UnitVec]) -> Vec<usize> {
    let (e1, e2) = tangent_basis(center);
    let mut keyed: Vec<(f64, usize)> = neighbors
        .iter()
        .map(|&n| {
            let t = tangent_towards(center, vertices[n]);
            let ang = t.as_vec3().dot(e2).atan2(t.as_vec3().dot(e1));
            (ang, n)
        })
        .collect();
    keyed.sort_by(|a, b| a.partial_cmp(b).unwrap());
    keyed.into_iter().map(|(_, n)| n).collect()
}

/// Right-handed tangent basis at `v`: `e1 × e2 = v`.
pub(crate) fn tangent_basis(v: UnitVec) -> (crate::sphere::Vec3, crate::sphere::Vec3) {
    let axis = if v.x().abs() <= v.y().abs() && v.x().abs() <= v.z().abs() {
        UnitVec::new(1.0, 0.0, 0.0).unwrap()
    } else if v.y().abs() <= v.z().abs() {
        UnitVec::new(0.0, 1.0, 0.0).unwrap()
    } else {
        UnitVec::new(0.0, 0.0, 1.0).unwrap()
    };
    let e1 = tangent_towards(v, axis).as_vec3();
    let e2 = v.as_vec3().cross(e1);
    (e1, e2)
}

/// A directed segment reference produced by [`trace_faces`]: segment index
/// plus direction (`false` = as stored, `true` = reversed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dart {
    pub segment: usize,
    pub reversed: bool,
}

impl Dart {
    pub fn endpoints(self, segments: &[(usize, usize)]) -> (usize, usize) {
        let (u, v) = segments[self.segment];
        if self.reversed {
            (v, u)
        } else {
            (u, v)
        }
    }
}

/// Traces the faces of a spherical drawing given by `points` and geodesic
/// `segments` between them. Faces are returned as dart cycles with the
/// interior on the left, i.e. counterclockwise as seen from outside the
/// sphere; every dart appears in exactly one face.
///
/// The rotation at each point is computed geometrically, so the result is a
/// genus-0 map whenever the input really is a crossing-free drawing.
pub(crate) fn trace_faces(points: &[UnitVec], segments: &[(usize, usize)]) -> Vec<Vec<Dart>> {
    let n_darts = segments.len() * 2;
    let dart_origin = |d: usize| {
        let (u, v) = segments[d / 2];
        if d % 2 == 0 {
            (u, v)
        } else {
            (v, u)
        }
    };
    // Outgoing darts per point, sorted counterclockwise.
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for d in 0..n_darts {
        let (u, _) = dart_origin(d);
        outgoing[u].push(d);
    }
    for (p, darts) in outgoing.iter_mut().enumerate() {
        let center = points[p];
        let (e1, e2) = tangent_basis(center);
        darts.sort_by(|&a, &b| {
            let ang = |d: usize| {
                let (_, head) = dart_origin(d);
                let t = tangent_towards(center, points[head]);
                t.as_vec3().dot(e2).atan2(t.as_vec3().dot(e1))
            };
            ang(a).partial_cmp(&ang(b)).unwrap()
        });
    }
    // Position of each dart within its origin's rotation.
    let mut pos = vec![0usize; n_darts];
    for darts in &outgoing {
        for (i, &d) in darts.iter().enumerate() {
            pos[d] = i;
        }
    }
    // Face successor: reverse the dart, then take the clockwise-next dart
    // around the new origin. Interior stays on the left.
    let successor = |d: usize| -> usize {
        let rev = d ^ 1;
        let (u, _) = dart_origin(rev);
        let ring = &outgoing[u];
        let i = pos[rev];
        ring[(i + ring.len() - 1) % ring.len()]
    };
    let mut face_of = vec![usize::MAX; n_darts];
    let mut faces: Vec<Vec<Dart>> = Vec::new();
    for d0 in 0..n_darts {
        if face_of[d0] != usize::MAX {
            continue;
        }
        let fid = faces.len();
        let mut cycle = Vec::new();
        let mut d = d0;
        loop {
            face_of[d] = fid;
            cycle.push(Dart { segment: d / 2, reversed: d % 2 == 1 });
            d = successor(d);
            if d == d0 {
                break;
            }
        }
        faces.push(cycle);
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::meshes;

    #[test]
    fn cube_subdivision_validates() {
        let s = meshes::cube();
        assert_eq!(s.vertex_count(), 8);
        assert_eq!(s.edge_count(), 12);
        assert_eq!(s.face_count(), 6);
        assert_eq!(s.skeleton().vertex_connectivity(), 3);
    }

    #[test]
    fn tetrahedron_subdivision_validates() {
        let s = meshes::tetrahedron();
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (4, 6, 4));
    }

    #[test]
    fn rotation_orders_have_full_degree() {
        let s = meshes::cube();
        for v in 0..s.vertex_count() {
            assert_eq!(s.rotation_at(v).len(), 3);
        }
    }

    #[test]
    fn face_left_is_total() {
        let s = meshes::octahedron();
        for f in s.faces() {
            for k in 0..f.len() {
                let (u, v) = (f[k], f[(k + 1) % f.len()]);
                assert!(s.face_left_of(u, v).is_some());
            }
        }
    }

    #[test]
    fn trace_faces_recovers_octant_partition() {
        // Three orthogonal great circles split into arcs at the 6 axis
        // points: 8 octant faces.
        let pts: Vec<UnitVec> = vec![
            UnitVec::new(1.0, 0.0, 0.0).unwrap(),
            UnitVec::new(-1.0, 0.0, 0.0).unwrap(),
            UnitVec::new(0.0, 1.0, 0.0).unwrap(),
            UnitVec::new(0.0, -1.0, 0.0).unwrap(),
            UnitVec::new(0.0, 0.0, 1.0).unwrap(),
            UnitVec::new(0.0, 0.0, -1.0).unwrap(),
        ];
        let segs = vec![
            (0, 2),
            (2, 1),
            (1, 3),
            (3, 0), // equator
            (0, 4),
            (4, 1),
            (1, 5),
            (5, 0), // xz meridian
            (2, 4),
            (4, 3),
            (3, 5),
            (5, 2), // yz meridian
        ];
        let faces = trace_faces(&pts, &segs);
        assert_eq!(faces.len(), 8);
        for f in &faces {
            assert_eq!(f.len(), 3);
        }
    }

    #[test]
    fn reversed_face_orientation_rejected() {
        let mut faces: Vec<Vec<usize>> = meshes::cube().faces().to_vec();
        faces[0].reverse();
        let verts = meshes::cube().vertices().to_vec();
        assert!(ConvexSubdivision::new(verts, faces, Tolerance::default()).is_err());
    }
}
