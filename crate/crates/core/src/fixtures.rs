//! Reference meshes and diagrams used by the test suite and as demo inputs
//! for the command-line tool.

/// Spherical subdivisions of classical polyhedra plus seeded random
/// generators.
pub mod meshes {
    use crate::subdivision::{face_centroid, sort_ccw, ConvexSubdivision, SubdivisionError};
    use crate::sphere::{Tolerance, UnitVec};
    use rand::Rng;
    use std::collections::HashMap;

    fn uv(x: f64, y: f64, z: f64) -> UnitVec {
        UnitVec::new(x, y, z).unwrap()
    }

    /// Orients a face's member vertices counterclockwise around their
    /// normalized centroid, i.e. counterclockwise from outside.
    fn face_ccw(verts: &[UnitVec], members: &[usize]) -> Vec<usize> {
        let c = face_centroid(verts, members);
        sort_ccw(c, members, verts)
    }

    fn build(verts: Vec<UnitVec>, face_sets: Vec<Vec<usize>>) -> ConvexSubdivision {
        let faces = face_sets.iter().map(|m| face_ccw(&verts, m)).collect();
        ConvexSubdivision::new(verts, faces, Tolerance::default())
            .expect("reference mesh must validate")
    }

    pub fn tetrahedron() -> ConvexSubdivision {
        let verts = vec![
            uv(1.0, 1.0, 1.0),
            uv(1.0, -1.0, -1.0),
            uv(-1.0, 1.0, -1.0),
            uv(-1.0, -1.0, 1.0),
        ];
        let faces = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        build(verts, faces)
    }

    pub fn cube() -> ConvexSubdivision {
        let mut verts = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    verts.push(uv(x, y, z));
                }
            }
        }
        let mut faces = Vec::new();
        for axis in 0..3 {
            for &sign in &[-1.0, 1.0] {
                let members: Vec<usize> = (0..8)
                    .filter(|&i| {
                        let v: [f64; 3] = verts[i].into();
                        (v[axis] - sign / 3f64.sqrt()).abs() < 1e-9
                    })
                    .collect();
                faces.push(members);
            }
        }
        build(verts, faces)
    }

    pub fn octahedron() -> ConvexSubdivision {
        let verts = vec![
            uv(1.0, 0.0, 0.0),
            uv(-1.0, 0.0, 0.0),
            uv(0.0, 1.0, 0.0),
            uv(0.0, -1.0, 0.0),
            uv(0.0, 0.0, 1.0),
            uv(0.0, 0.0, -1.0),
        ];
        let mut faces = Vec::new();
        for &x in &[0usize, 1] {
            for &y in &[2usize, 3] {
                for &z in &[4usize, 5] {
                    faces.push(vec![x, y, z]);
                }
            }
        }
        build(verts, faces)
    }

    pub fn icosahedron() -> ConvexSubdivision {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut verts = Vec::new();
        for &(a, b) in &[(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
            verts.push(uv(0.0, a, b));
            verts.push(uv(a, b, 0.0));
            verts.push(uv(b, 0.0, a));
        }
        // Faces: triples of mutually nearest vertices.
        let mut max_dot = -1.0f64;
        for i in 0..12 {
            for j in (i + 1)..12 {
                let d = verts[i].dot(verts[j]);
                if d < 0.999 {
                    max_dot = max_dot.max(d);
                }
            }
        }
        let adjacent = |i: usize, j: usize| (verts[i].dot(verts[j]) - max_dot).abs() < 1e-9;
        let mut faces = Vec::new();
        for i in 0..12 {
            for j in (i + 1)..12 {
                for k in (j + 1)..12 {
                    if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                        faces.push(vec![i, j, k]);
                    }
                }
            }
        }
        assert_eq!(faces.len(), 20);
        build(verts, faces)
    }

    /// Prism over a regular `k`-gon; all faces even-sided when `k` is even.
    pub fn prism(k: usize) -> ConvexSubdivision {
        assert!(k >= 3);
        let h = 1.0;
        let mut verts = Vec::new();
        for ring in 0..2 {
            let z = if ring == 0 { h } else { -h };
            for i in 0..k {
                let ang = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                verts.push(uv(ang.cos(), ang.sin(), z));
            }
        }
        let mut faces = vec![(0..k).collect::<Vec<_>>(), (k..2 * k).collect::<Vec<_>>()];
        for i in 0..k {
            let j = (i + 1) % k;
            faces.push(vec![i, j, k + j, k + i]);
        }
        build(verts, faces)
    }

    pub fn hexagonal_prism() -> ConvexSubdivision {
        prism(6)
    }

    /// Antiprism over a regular `k`-gon: two offset rings, `2k` triangles.
    pub fn antiprism(k: usize) -> ConvexSubdivision {
        assert!(k >= 3);
        let h = 0.8;
        let mut verts = Vec::new();
        for i in 0..k {
            let ang = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            verts.push(uv(ang.cos(), ang.sin(), h));
        }
        for i in 0..k {
            let ang = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / k as f64;
            verts.push(uv(ang.cos(), ang.sin(), -h));
        }
        let mut faces = vec![(0..k).collect::<Vec<_>>(), (k..2 * k).collect::<Vec<_>>()];
        for i in 0..k {
            let j = (i + 1) % k;
            faces.push(vec![i, j, k + i]);
            faces.push(vec![j, k + j, k + i]);
        }
        build(verts, faces)
    }

    /// Rectification: vertices at edge midpoints, one face per original face
    /// plus one per original vertex. `ambo(icosahedron())` is the
    /// icosidodecahedron.
    pub fn ambo(s: &ConvexSubdivision) -> ConvexSubdivision {
        let mut mid_of: HashMap<(usize, usize), usize> = HashMap::new();
        let mut verts: Vec<UnitVec> = Vec::new();
        for &(u, v) in s.edges() {
            let m = UnitVec::from_vec3(s.vertices()[u].as_vec3().add(s.vertices()[v].as_vec3()))
                .expect("edge endpoints not antipodal");
            mid_of.insert((u, v), verts.len());
            mid_of.insert((v, u), verts.len());
            verts.push(m);
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for cycle in s.faces() {
            let f: Vec<usize> = (0..cycle.len())
                .map(|i| mid_of[&(cycle[i], cycle[(i + 1) % cycle.len()])])
                .collect();
            faces.push(f);
        }
        for v in 0..s.vertex_count() {
            let f: Vec<usize> = s.rotation_at(v).iter().map(|&n| mid_of[&(v, n)]).collect();
            faces.push(f);
        }
        ConvexSubdivision::new(verts, faces, *s.tolerance()).expect("ambo of a valid subdivision")
    }

    /// The icosidodecahedron: rectified icosahedron (30 vertices, 60 edges,
    /// 20 triangles + 12 pentagons).
    pub fn icosidodecahedron() -> ConvexSubdivision {
        ambo(&icosahedron())
    }

    /// One quadrilateral face per original edge, on the vertex set
    /// "original vertices plus face centroids". Always swirlable: every face
    /// is a 4-gon and the skeleton is bipartite by construction.
    pub fn quadrangulation(s: &ConvexSubdivision) -> Result<ConvexSubdivision, SubdivisionError> {
        let nv = s.vertex_count();
        let mut verts: Vec<UnitVec> = s.vertices().to_vec();
        for f in 0..s.face_count() {
            verts.push(s.face_centroid(f));
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for &(u, v) in s.edges() {
            let left = s.face_left_of(u, v).expect("closed subdivision");
            let right = s.face_left_of(v, u).expect("closed subdivision");
            faces.push(vec![u, nv + right, v, nv + left]);
        }
        ConvexSubdivision::new(verts, faces, *s.tolerance())
    }

    /// Convex hull of `n` random unit points as a spherical subdivision with
    /// triangular faces. Retries internally until the hull is simplicial,
    /// contains the origin, and validates.
    pub fn random_hull<R: Rng>(n: usize, rng: &mut R) -> ConvexSubdivision {
        assert!(n >= 4);
        loop {
            let pts: Vec<UnitVec> = (0..n)
                .map(|_| loop {
                    let v = UnitVec::new(
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-1.0..1.0),
                    );
                    if let Ok(v) = v {
                        break v;
                    }
                })
                .collect();
            if let Some(s) = try_hull(&pts) {
                return s;
            }
        }
    }

    fn try_hull(pts: &[UnitVec]) -> Option<ConvexSubdivision> {
        let n = pts.len();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        let mut on_hull = vec![false; n];
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let a = pts[i].as_vec3();
                    let b = pts[j].as_vec3();
                    let c = pts[k].as_vec3();
                    let mut normal = b.sub(a).cross(c.sub(a));
                    let mut d = normal.dot(a);
                    let mut cycle = vec![i, j, k];
                    if d < 0.0 {
                        normal = normal.scale(-1.0);
                        d = -d;
                        cycle.swap(1, 2);
                    }
                    if d < 1e-9 {
                        return None; // plane through the origin: degenerate
                    }
                    let mut outside = false;
                    let mut grazing = false;
                    for (q, p) in pts.iter().enumerate() {
                        if q == i || q == j || q == k {
                            continue;
                        }
                        let side = normal.dot(p.as_vec3()) - d;
                        if side > -1e-9 {
                            if side < 1e-9 {
                                grazing = true; // four coplanar points
                            }
                            outside = true;
                        }
                    }
                    if grazing {
                        return None;
                    }
                    if !outside {
                        on_hull[i] = true;
                        on_hull[j] = true;
                        on_hull[k] = true;
                        faces.push(cycle);
                    }
                }
            }
        }
        if on_hull.iter().any(|&b| !b) {
            return None; // interior point: not a subdivision of all inputs
        }
        ConvexSubdivision::new(pts.to_vec(), faces, Tolerance::default()).ok()
    }

    /// A random swirlable subdivision: the quadrangulation of a random hull.
    pub fn random_swirlable<R: Rng>(max_base_points: usize, rng: &mut R) -> ConvexSubdivision {
        loop {
            let n = rng.gen_range(4..=max_base_points.max(4));
            let hull = random_hull(n, rng);
            if let Ok(q) = quadrangulation(&hull) {
                return q;
            }
        }
    }
}

/// Seed for randomized fixture generation: `SODKIT_SEED` when set, else a
/// fixed default so test runs are reproducible.
pub fn fixture_seed() -> u64 {
    std::env::var("SODKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed50d_u64)
}
