//! Points, great circles, and geodesic arcs on the unit sphere.
//!
//! Everything here is plain `f64` with an explicit angular tolerance; the
//! predicates take a [`Tolerance`] so callers can tighten or loosen them.
//! A geodesic arc is strictly shorter than a great semicircle, so two
//! distinct arcs can share at most one point unless they are collinear.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("cannot normalize a near-zero vector (norm {0:.3e})")]
    ZeroVector(f64),
    #[error("arc endpoints coincide within tolerance")]
    DegenerateArc,
    #[error("arc endpoints are antipodal within tolerance")]
    AntipodalEndpoints,
    #[error("polygon malformed: {0}")]
    MalformedPolygon(String),
    #[error("invalid tolerance: require 0 < angular_eps < report_eps < 1e-3")]
    BadTolerance,
}

/// Angular tolerances, in radians.
///
/// `angular_eps` drives every geometric predicate; `report_eps` is the looser
/// bound used when asserting derived quantities in tests and reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub angular_eps: f64,
    pub report_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { angular_eps: 1e-9, report_eps: 1e-6 }
    }
}

impl Tolerance {
    pub fn new(angular_eps: f64, report_eps: f64) -> Result<Self, GeomError> {
        if angular_eps > 0.0 && angular_eps < report_eps && report_eps < 1e-3 {
            Ok(Self { angular_eps, report_eps })
        } else {
            Err(GeomError::BadTolerance)
        }
    }

    /// Tolerance with a custom predicate epsilon and the default report bound.
    pub fn with_angular_eps(angular_eps: f64) -> Result<Self, GeomError> {
        Self::new(angular_eps, (angular_eps * 1e3).min(1e-4).max(angular_eps * 2.0))
    }
}

/// A plain 3-vector. Not necessarily unit length; see [`UnitVec`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// A point on the unit sphere. Constructors renormalize, so the invariant
/// `‖v‖ = 1` holds up to floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct UnitVec {
    x: f64,
    y: f64,
    z: f64,
}

impl TryFrom<[f64; 3]> for UnitVec {
    type Error = GeomError;
    fn try_from(v: [f64; 3]) -> Result<Self, GeomError> {
        UnitVec::new(v[0], v[1], v[2])
    }
}

impl From<UnitVec> for [f64; 3] {
    fn from(v: UnitVec) -> [f64; 3] {
        [v.x, v.y, v.z]
    }
}

impl UnitVec {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, GeomError> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-12 || !n.is_finite() {
            return Err(GeomError::ZeroVector(n));
        }
        Ok(Self { x: x / n, y: y / n, z: z / n })
    }

    pub fn from_vec3(v: Vec3) -> Result<Self, GeomError> {
        Self::new(v.x, v.y, v.z)
    }

    pub const fn x(self) -> f64 {
        self.x
    }

    pub const fn y(self) -> f64 {
        self.y
    }

    pub const fn z(self) -> f64 {
        self.z
    }

    pub fn as_vec3(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn dot(self, o: UnitVec) -> f64 {
        self.as_vec3().dot(o.as_vec3())
    }

    pub fn cross(self, o: UnitVec) -> Vec3 {
        self.as_vec3().cross(o.as_vec3())
    }

    pub fn antipode(self) -> UnitVec {
        Self { x: -self.x, y: -self.y, z: -self.z }
    }

    /// Angle between two unit vectors, numerically stable near 0 and π.
    pub fn angle_to(self, o: UnitVec) -> f64 {
        self.cross(o).norm().atan2(self.dot(o))
    }

    pub fn approx_eq(self, o: UnitVec, tol: &Tolerance) -> bool {
        self.angle_to(o) <= tol.angular_eps
    }

    /// Rotation about `axis` by `angle` (Rodrigues), renormalized.
    pub fn rotate_about(self, axis: UnitVec, angle: f64) -> UnitVec {
        let (s, c) = angle.sin_cos();
        let v = self.as_vec3();
        let k = axis.as_vec3();
        let r = v.scale(c).add(k.cross(v).scale(s)).add(k.scale(k.dot(v) * (1.0 - c)));
        UnitVec::from_vec3(r).expect("rotation preserves norm")
    }

    /// Lexicographic comparison of coordinates, used for deterministic
    /// orderings.
    pub fn lex_cmp(self, o: UnitVec) -> std::cmp::Ordering {
        (self.x, self.y, self.z)
            .partial_cmp(&(o.x, o.y, o.z))
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Which side of an oriented great circle a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Positive,
    Negative,
    On,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
            Side::On => Side::On,
        }
    }
}

/// Sign of `pole · q`, with `On` when the point lies on the great circle
/// within `angular_eps`. `pole · q` is the sine of the angular distance from
/// the circle, so the comparison is consistent with the angular metric to
/// first order.
pub fn side_of(circle_pole: UnitVec, q: UnitVec, tol: &Tolerance) -> Side {
    let d = circle_pole.dot(q);
    if d.abs() <= tol.angular_eps {
        Side::On
    } else if d > 0.0 {
        Side::Positive
    } else {
        Side::Negative
    }
}

/// Which end of an arc a point coincides with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcEnd {
    Start,
    End,
}

impl ArcEnd {
    pub fn index(self) -> usize {
        match self {
            ArcEnd::Start => 0,
            ArcEnd::End => 1,
        }
    }

    pub fn other(self) -> ArcEnd {
        match self {
            ArcEnd::Start => ArcEnd::End,
            ArcEnd::End => ArcEnd::Start,
        }
    }
}

/// Classification of a point against an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointOnArc {
    Interior,
    Endpoint(ArcEnd),
    Off,
}

/// An arc of a great circle, strictly shorter than a great semicircle.
///
/// `pole` is the normalized cross product `start × end`; every interior
/// point lies on the great circle with that normal. Walking from `start` to
/// `end` along the arc, the positive side of `pole` is on the left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicArc {
    start: UnitVec,
    end: UnitVec,
    #[serde(skip, default = "zero_unit")]
    pole: UnitVec,
    #[serde(skip)]
    length: f64,
}

fn zero_unit() -> UnitVec {
    UnitVec::new(0.0, 0.0, 1.0).unwrap()
}

/// Builds the geodesic arc from `a` to `b`.
///
/// Fails when the endpoints coincide or are antipodal within `angular_eps`;
/// otherwise the arc is the unique shortest path, of length
/// `arccos(a·b) < π`.
pub fn make_arc(a: UnitVec, b: UnitVec, tol: &Tolerance) -> Result<GeodesicArc, GeomError> {
    // Angle-based forms of `a·b > 1 − ε²/2` and `a·b < −1 + ε²/2`; these
    // agree to first order but stay meaningful where the dot product
    // saturates in f64.
    let angle = a.angle_to(b);
    if angle <= tol.angular_eps {
        return Err(GeomError::DegenerateArc);
    }
    if angle >= PI - tol.angular_eps {
        return Err(GeomError::AntipodalEndpoints);
    }
    let pole = UnitVec::from_vec3(a.cross(b)).map_err(|_| GeomError::AntipodalEndpoints)?;
    Ok(GeodesicArc { start: a, end: b, pole, length: angle })
}

impl GeodesicArc {
    pub fn start(&self) -> UnitVec {
        self.start
    }

    pub fn end(&self) -> UnitVec {
        self.end
    }

    pub fn endpoint(&self, which: ArcEnd) -> UnitVec {
        match which {
            ArcEnd::Start => self.start,
            ArcEnd::End => self.end,
        }
    }

    pub fn pole(&self) -> UnitVec {
        self.pole
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Re-derives pole and length after deserialization.
    pub fn rebuild(start: UnitVec, end: UnitVec, tol: &Tolerance) -> Result<Self, GeomError> {
        make_arc(start, end, tol)
    }

    /// Unit tangent at parameter `t ∈ [0, length]`, pointing from start
    /// towards end.
    pub fn tangent_at(&self, t: f64) -> UnitVec {
        let p = self.point_at(t);
        UnitVec::from_vec3(self.pole.cross(p)).expect("pole orthogonal to arc point")
    }

    /// Point at arc-length parameter `t` from the start (radians).
    pub fn point_at(&self, t: f64) -> UnitVec {
        let dir = self.pole.cross(self.start);
        let (s, c) = t.sin_cos();
        UnitVec::from_vec3(self.start.as_vec3().scale(c).add(dir.scale(s)))
            .expect("rotation stays on sphere")
    }

    pub fn midpoint(&self) -> UnitVec {
        self.point_at(self.length / 2.0)
    }

    /// Signed angular parameter of `q` along the arc's great circle, in
    /// `(-π, π]`, measured from the start towards the end. Points on the arc
    /// itself land in `[0, length]`.
    pub fn param_of(&self, q: UnitVec) -> f64 {
        let dir = self.pole.cross(self.start);
        q.as_vec3().dot(dir).atan2(q.dot(self.start))
    }

    /// Classifies `q` against this arc using `angular_eps`. `Interior`
    /// excludes both endpoints.
    pub fn classify_point(&self, q: UnitVec, tol: &Tolerance) -> PointOnArc {
        if q.approx_eq(self.start, tol) {
            return PointOnArc::Endpoint(ArcEnd::Start);
        }
        if q.approx_eq(self.end, tol) {
            return PointOnArc::Endpoint(ArcEnd::End);
        }
        if self.pole.dot(q).abs() > tol.angular_eps {
            return PointOnArc::Off;
        }
        let t = self.param_of(q);
        if t >= -tol.angular_eps && t <= self.length + tol.angular_eps {
            PointOnArc::Interior
        } else {
            PointOnArc::Off
        }
    }

    /// The sub-arc between parameters `t0 < t1`.
    pub fn sub_arc(&self, t0: f64, t1: f64, tol: &Tolerance) -> Result<GeodesicArc, GeomError> {
        make_arc(self.point_at(t0), self.point_at(t1), tol)
    }

    /// True when both arcs lie on the same great circle within tolerance.
    pub fn collinear_with(&self, other: &GeodesicArc, tol: &Tolerance) -> bool {
        let cross = self.pole.cross(other.pole).norm();
        cross.atan2(self.pole.dot(other.pole).abs()) <= tol.angular_eps
    }

    /// Endpoint-set equality within tolerance, ignoring orientation.
    pub fn same_endpoints(&self, other: &GeodesicArc, tol: &Tolerance) -> bool {
        (self.start.approx_eq(other.start, tol) && self.end.approx_eq(other.end, tol))
            || (self.start.approx_eq(other.end, tol) && self.end.approx_eq(other.start, tol))
    }
}

/// Classification of a point against an arc; free-function form.
pub fn point_on_arc(q: UnitVec, arc: &GeodesicArc, tol: &Tolerance) -> PointOnArc {
    arc.classify_point(q, tol)
}

/// Result of intersecting two geodesic arcs.
///
/// Non-collinear arcs meet in at most one point: the two candidate
/// intersections of their great circles are antipodal, and an arc shorter
/// than a semicircle cannot contain both. Collinear arcs may share nothing,
/// a single endpoint, or a positive-length sub-arc.
#[derive(Debug, Clone, PartialEq)]
pub enum ArcIntersection {
    Empty,
    Point(UnitVec),
    Overlap(GeodesicArc),
}

pub fn arc_intersection(u: &GeodesicArc, v: &GeodesicArc, tol: &Tolerance) -> ArcIntersection {
    if u.collinear_with(v, tol) {
        return collinear_overlap(u, v, tol);
    }
    let c = match UnitVec::from_vec3(u.pole().cross(v.pole())) {
        Ok(c) => c,
        Err(_) => return collinear_overlap(u, v, tol),
    };
    let mut best: Option<(f64, UnitVec)> = None;
    for cand in [c, c.antipode()] {
        let on_u = u.classify_point(cand, tol);
        let on_v = v.classify_point(cand, tol);
        if on_u != PointOnArc::Off && on_v != PointOnArc::Off {
            // Margin of containment, used to break near-degenerate ties.
            let mu = margin(u, cand);
            let mv = margin(v, cand);
            let m = mu.min(mv);
            if best.map_or(true, |(bm, _)| m > bm) {
                best = Some((m, cand));
            }
        }
    }
    match best {
        Some((_, p)) => ArcIntersection::Point(p),
        None => ArcIntersection::Empty,
    }
}

fn margin(arc: &GeodesicArc, q: UnitVec) -> f64 {
    let t = arc.param_of(q);
    t.min(arc.length() - t)
}

fn collinear_overlap(u: &GeodesicArc, v: &GeodesicArc, tol: &Tolerance) -> ArcIntersection {
    // Parametrize v's endpoints in u's frame. Both arcs are shorter than π,
    // so each maps to an interval of the circle parameter in (-π, π].
    let aligned = u.pole().dot(v.pole()) > 0.0;
    let (vs, ve) = if aligned { (v.start(), v.end()) } else { (v.end(), v.start()) };
    let s = u.param_of(vs);
    let mut e = u.param_of(ve);
    if e < s {
        e += 2.0 * PI;
    }
    // Intersect [s, e] (possibly wrapped) with [0, Lu] on the circle.
    let lu = u.length();
    let eps = tol.angular_eps;
    let mut best: Option<(f64, f64)> = None;
    for shift in [-2.0 * PI, 0.0, 2.0 * PI] {
        let lo = (s + shift).max(0.0);
        let hi = (e + shift).min(lu);
        if hi >= lo - eps {
            let cur = (lo, hi.max(lo));
            if best.map_or(true, |(bl, bh)| cur.1 - cur.0 > bh - bl) {
                best = Some(cur);
            }
        }
    }
    match best {
        None => ArcIntersection::Empty,
        Some((lo, hi)) if hi - lo <= eps => ArcIntersection::Point(u.point_at((lo + hi) / 2.0)),
        Some((lo, hi)) => match u.sub_arc(lo, hi, tol) {
            Ok(sub) => ArcIntersection::Overlap(sub),
            Err(_) => ArcIntersection::Point(u.point_at((lo + hi) / 2.0)),
        },
    }
}

/// True iff the closed polygon lies in an open hemisphere and every edge's
/// great circle keeps all other vertices on one consistent side (flat
/// vertices are allowed).
pub fn is_spherically_convex(polygon: &[UnitVec], tol: &Tolerance) -> Result<bool, GeomError> {
    let k = polygon.len();
    if k < 3 {
        return Err(GeomError::MalformedPolygon(format!(
            "need at least 3 vertices, got {k}"
        )));
    }
    for i in 0..k {
        let a = polygon[i];
        let b = polygon[(i + 1) % k];
        let angle = a.angle_to(b);
        if angle >= PI - tol.angular_eps {
            return Err(GeomError::MalformedPolygon(
                "consecutive vertices are antipodal".into(),
            ));
        }
        if angle <= tol.angular_eps {
            return Err(GeomError::MalformedPolygon(
                "consecutive vertices coincide".into(),
            ));
        }
    }
    // Open-hemisphere test via the normalized vertex sum.
    let sum = polygon
        .iter()
        .fold(Vec3::default(), |acc, v| acc.add(v.as_vec3()));
    let centroid = match UnitVec::from_vec3(sum) {
        Ok(c) => c,
        Err(_) => return Ok(false),
    };
    if polygon.iter().any(|v| v.dot(centroid) <= tol.angular_eps) {
        return Ok(false);
    }
    // One consistent orientation for all edges.
    let mut polarity = 0i8;
    for i in 0..k {
        let a = polygon[i];
        let b = polygon[(i + 1) % k];
        let pole = UnitVec::from_vec3(a.cross(b)).expect("edge endpoints distinct");
        for (j, &q) in polygon.iter().enumerate() {
            if j == i || j == (i + 1) % k {
                continue;
            }
            match side_of(pole, q, tol) {
                Side::On => {}
                Side::Positive => {
                    if polarity < 0 {
                        return Ok(false);
                    }
                    polarity = 1;
                }
                Side::Negative => {
                    if polarity > 0 {
                        return Ok(false);
                    }
                    polarity = -1;
                }
            }
        }
    }
    Ok(true)
}

/// Area of a spherical polygon with vertices in counterclockwise order as
/// seen from outside the sphere, by the spherical-excess formula
/// `Σ interior angles − (k−2)π`. Flat vertices contribute π and do not
/// change the result.
pub fn spherical_polygon_area(polygon: &[UnitVec]) -> f64 {
    let k = polygon.len();
    assert!(k >= 3, "polygon needs at least 3 vertices");
    let mut total = 0.0;
    for i in 0..k {
        let prev = polygon[(i + k - 1) % k];
        let v = polygon[i];
        let next = polygon[(i + 1) % k];
        total += interior_angle_ccw(prev, v, next);
    }
    total - (k as f64 - 2.0) * PI
}

/// Interior angle at `v` for a polygon traversed counterclockwise (interior
/// on the left), in `[0, 2π)`.
fn interior_angle_ccw(prev: UnitVec, v: UnitVec, next: UnitVec) -> f64 {
    let t_in_rev = tangent_towards(v, prev);
    let t_out = tangent_towards(v, next);
    let sin = t_out.cross(t_in_rev).dot(v.as_vec3());
    let cos = t_out.dot(t_in_rev);
    let mut ang = sin.atan2(cos);
    if ang < 0.0 {
        ang += 2.0 * PI;
    }
    ang
}

/// Unit tangent at `from` along the geodesic towards `to`.
pub fn tangent_towards(from: UnitVec, to: UnitVec) -> UnitVec {
    let proj = to.as_vec3().sub(from.as_vec3().scale(from.dot(to)));
    UnitVec::from_vec3(proj).expect("points distinct and non-antipodal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn uv(x: f64, y: f64, z: f64) -> UnitVec {
        UnitVec::new(x, y, z).unwrap()
    }

    /// Independent length oracle: sum of chord lengths over a dense
    /// polyline sampling of the arc.
    fn polyline_length(arc: &GeodesicArc, samples: usize) -> f64 {
        let mut total = 0.0;
        let mut prev = arc.start();
        for i in 1..=samples {
            let t = arc.length() * i as f64 / samples as f64;
            let p = arc.point_at(t);
            total += 2.0 * (prev.angle_to(p) / 2.0).sin().asin();
            prev = p;
        }
        total
    }

    #[test]
    fn make_arc_orthogonal_quarter() {
        let arc = make_arc(uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), &tol()).unwrap();
        assert!((arc.length() - PI / 2.0).abs() < 1e-12);
        assert!(arc.pole().approx_eq(uv(0.0, 0.0, 1.0), &tol()));
    }

    #[test]
    fn make_arc_rejects_antipodal_and_coincident() {
        let a = uv(1.0, 0.0, 0.0);
        assert_eq!(make_arc(a, a.antipode(), &tol()), Err(GeomError::AntipodalEndpoints));
        assert_eq!(make_arc(a, a, &tol()), Err(GeomError::DegenerateArc));
    }

    #[test]
    fn side_of_basic() {
        let pole = uv(0.0, 0.0, 1.0);
        assert_eq!(side_of(pole, uv(0.0, 0.0, 1.0), &tol()), Side::Positive);
        assert_eq!(side_of(pole, uv(1.0, 0.0, 0.0), &tol()), Side::On);
        let q = uv(0.0, 0.1f64.sin(), -(0.1f64.cos()));
        assert_eq!(side_of(pole, q, &tol()), Side::Negative);
    }

    #[test]
    fn point_on_arc_classification() {
        let arc = make_arc(uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), &tol()).unwrap();
        assert_eq!(arc.classify_point(arc.midpoint(), &tol()), PointOnArc::Interior);
        assert_eq!(
            arc.classify_point(arc.start(), &tol()),
            PointOnArc::Endpoint(ArcEnd::Start)
        );
        assert_eq!(
            arc.classify_point(arc.midpoint().antipode(), &tol()),
            PointOnArc::Off
        );
    }

    #[test]
    fn symmetric_crossing() {
        let equator = make_arc(uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), &tol()).unwrap();
        // Meridian-like arc crossing the equator at azimuth 45°.
        let az = PI / 4.0;
        let lower = uv(az.cos() * 0.8, az.sin() * 0.8, -0.6);
        let upper = uv(az.cos() * 0.8, az.sin() * 0.8, 0.6);
        let meridian = make_arc(lower, upper, &tol()).unwrap();
        match arc_intersection(&equator, &meridian, &tol()) {
            ArcIntersection::Point(p) => {
                let expected = uv(2f64.sqrt() / 2.0, 2f64.sqrt() / 2.0, 0.0);
                assert!(p.angle_to(expected) < 1e-9);
            }
            other => panic!("expected point intersection, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_hemispheres_no_intersection() {
        let north = make_arc(uv(0.3, 0.1, 0.9), uv(-0.2, 0.3, 0.9), &tol()).unwrap();
        let south = make_arc(uv(0.1, -0.3, -0.9), uv(-0.3, 0.2, -0.9), &tol()).unwrap();
        assert_eq!(arc_intersection(&north, &south, &tol()), ArcIntersection::Empty);
    }

    #[test]
    fn collinear_overlap_cases() {
        let a = uv(1.0, 0.0, 0.0);
        let quarter = make_arc(a, uv(0.0, 1.0, 0.0), &tol()).unwrap();
        // Same circle, sharing the sub-arc [π/4, π/2].
        let shifted = make_arc(quarter.point_at(PI / 4.0), quarter.point_at(3.0 * PI / 4.0), &tol())
            .unwrap();
        match arc_intersection(&quarter, &shifted, &tol()) {
            ArcIntersection::Overlap(sub) => {
                assert!((sub.length() - PI / 4.0).abs() < 1e-9);
            }
            other => panic!("expected overlap, got {other:?}"),
        }
        // Same circle, touching at one endpoint.
        let touching = make_arc(quarter.point_at(PI / 2.0), quarter.point_at(PI), &tol()).unwrap();
        match arc_intersection(&quarter, &touching, &tol()) {
            ArcIntersection::Point(p) => assert!(p.angle_to(uv(0.0, 1.0, 0.0)) < 1e-9),
            other => panic!("expected point, got {other:?}"),
        }
        // Same circle, disjoint.
        let far = make_arc(quarter.point_at(0.6 * PI), quarter.point_at(0.9 * PI), &tol()).unwrap();
        assert_eq!(arc_intersection(&quarter, &far, &tol()), ArcIntersection::Empty);
    }

    #[test]
    fn octant_triangle_is_convex() {
        let tri = [uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), uv(0.0, 0.0, 1.0)];
        assert!(is_spherically_convex(&tri, &tol()).unwrap());
        assert!((spherical_polygon_area(&tri) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn reflex_quad_is_not_convex() {
        // Octant triangle with an inward dent on the xy edge.
        let dent = uv(0.5, 0.5, 0.4);
        let quad = [uv(1.0, 0.0, 0.0), dent, uv(0.0, 1.0, 0.0), uv(0.0, 0.0, 1.0)];
        assert!(!is_spherically_convex(&quad, &tol()).unwrap());
    }

    #[test]
    fn malformed_polygons_rejected() {
        let a = uv(1.0, 0.0, 0.0);
        let b = uv(0.0, 1.0, 0.0);
        assert!(is_spherically_convex(&[a, b], &tol()).is_err());
        assert!(is_spherically_convex(&[a, a.antipode(), b], &tol()).is_err());
    }

    #[test]
    fn area_of_outer_face_complements() {
        let tri = [uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), uv(0.0, 0.0, 1.0)];
        let outer = [tri[2], tri[1], tri[0]];
        let total = spherical_polygon_area(&tri) + spherical_polygon_area(&outer);
        assert!((total - 4.0 * PI).abs() < 1e-12);
    }

    fn arb_unit_vec() -> impl Strategy<Value = UnitVec> {
        (
            -1.0f64..1.0,
            -1.0f64..1.0,
            -1.0f64..1.0,
        )
            .prop_filter_map("non-degenerate", |(x, y, z)| UnitVec::new(x, y, z).ok())
    }

    fn arb_arc() -> impl Strategy<Value = GeodesicArc> {
        (arb_unit_vec(), arb_unit_vec())
            .prop_filter_map("valid arc", |(a, b)| make_arc(a, b, &Tolerance::default()).ok())
    }

    proptest! {
        #[test]
        fn length_matches_polyline_oracle(arc in arb_arc()) {
            let oracle = polyline_length(&arc, 10_000);
            prop_assert!((oracle - arc.length()).abs() < 1e-6);
        }

        #[test]
        fn complementary_arcs_sum_to_pi(a in arb_unit_vec(), b in arb_unit_vec()) {
            let t = Tolerance::default();
            if let (Ok(ab), Ok(bna)) = (make_arc(a, b, &t), make_arc(b, a.antipode(), &t)) {
                prop_assert!((ab.length() + bna.length() - PI).abs() < 1e-6);
            }
        }

        #[test]
        fn intersection_is_symmetric(u in arb_arc(), v in arb_arc()) {
            let t = Tolerance::default();
            let uv_res = arc_intersection(&u, &v, &t);
            let vu_res = arc_intersection(&v, &u, &t);
            match (&uv_res, &vu_res) {
                (ArcIntersection::Empty, ArcIntersection::Empty) => {}
                (ArcIntersection::Point(p), ArcIntersection::Point(q)) => {
                    prop_assert!(p.angle_to(*q) < 1e-7);
                }
                (ArcIntersection::Overlap(x), ArcIntersection::Overlap(y)) => {
                    prop_assert!((x.length() - y.length()).abs() < 1e-7);
                }
                _ => prop_assert!(false, "asymmetric results {:?} vs {:?}", uv_res, vu_res),
            }
        }

        #[test]
        fn intersection_point_lies_on_both(u in arb_arc(), v in arb_arc()) {
            let t = Tolerance::default();
            if let ArcIntersection::Point(p) = arc_intersection(&u, &v, &t) {
                prop_assert!(u.classify_point(p, &t) != PointOnArc::Off);
                prop_assert!(v.classify_point(p, &t) != PointOnArc::Off);
            }
        }

        #[test]
        fn side_of_antisymmetric(p in arb_unit_vec(), q in arb_unit_vec()) {
            let t = Tolerance::default();
            let s = side_of(p, q, &t);
            if s != Side::On {
                prop_assert_eq!(side_of(p.antipode(), q, &t), s.flipped());
            }
        }

        #[test]
        fn param_roundtrip(arc in arb_arc(), frac in 0.0f64..1.0) {
            let p = arc.point_at(arc.length() * frac);
            let t = arc.param_of(p);
            prop_assert!((t - arc.length() * frac).abs() < 1e-9);
        }
    }
}
