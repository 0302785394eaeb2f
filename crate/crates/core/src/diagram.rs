//! The diagram type and its axioms.
//!
//! A diagram is a finite non-empty set of geodesic arcs such that
//!
//! * A1 — any two arcs are internally disjoint,
//! * A2 — each endpoint of each arc lies in the relative interior of
//!   another arc (exactly one other arc, given A1),
//! * A3 — all arcs hitting a given arc reach it from the same side.
//!
//! Validation enumerates every violation; a [`Diagram`] with filled
//! incidence is only produced when the input satisfies all three axioms.
//! Arcs may share endpoints as long as the common point is interior to a
//! third arc; such diagrams are accepted and flagged as degenerate so
//! downstream operations with stricter preconditions can refuse them.

use crate::graph::SimpleGraph;
use crate::sphere::{
    arc_intersection, side_of, ArcEnd, ArcIntersection, GeodesicArc, PointOnArc, Side, Tolerance,
    UnitVec,
};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

pub type ArcId = usize;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("a diagram must be a finite non-empty collection of arcs")]
    EmptyInput,
    #[error("diagram violates the axioms: {} violation(s)", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("walk did not become periodic within {0} steps; input is not a valid diagram")]
    MaxStepsExceeded(usize),
    #[error("start point does not lie on the named arc")]
    StartOffArc,
    #[error("start point coincides with the walk pole or its antipode")]
    StartAtPole,
}

/// Which axiom a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub arcs: Vec<ArcId>,
    pub witness: Option<UnitVec>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// True iff some arcs share an endpoint (always interior to a third arc
    /// when the diagram is otherwise valid).
    pub degenerate: bool,
}

/// One endpoint of an arc landing in the interior of another arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HitRecord {
    /// The arc whose interior contains the endpoint.
    pub target: ArcId,
    /// The endpoint itself.
    pub point: UnitVec,
}

/// An arc endpoint resting on this arc's interior, seen from the blocked
/// arc's perspective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Blocker {
    pub source: ArcId,
    pub source_end: ArcEnd,
    pub point: UnitVec,
    /// Arc-length parameter of `point` along the blocked arc.
    pub param: f64,
    /// Side from which the source arc approaches.
    pub side: Side,
}

/// A validated spherical occlusion diagram with derived incidence.
#[derive(Debug, Clone)]
pub struct Diagram {
    arcs: Vec<GeodesicArc>,
    hits: Vec<[HitRecord; 2]>,
    blockers: Vec<Vec<Blocker>>,
    side_tag: Vec<Option<Side>>,
    degenerate: bool,
    tol: Tolerance,
}

impl Diagram {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[GeodesicArc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &GeodesicArc {
        &self.arcs[id]
    }

    /// The two arcs this arc hits, one per endpoint (start first).
    pub fn hits(&self, id: ArcId) -> [HitRecord; 2] {
        self.hits[id]
    }

    pub fn hit_at(&self, id: ArcId, end: ArcEnd) -> HitRecord {
        self.hits[id][end.index()]
    }

    /// Arcs resting an endpoint on this arc's interior, ordered by parameter.
    pub fn blockers(&self, id: ArcId) -> &[Blocker] {
        &self.blockers[id]
    }

    /// The common approach side of this arc's blockers, if it has any.
    pub fn side_tag(&self, id: ArcId) -> Option<Side> {
        self.side_tag[id]
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// Undirected simple graph on arcs with an edge whenever one hits the
    /// other.
    pub fn contact_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.arc_count());
        for (id, hits) in self.hits.iter().enumerate() {
            g.add_edge(id, hits[0].target);
            g.add_edge(id, hits[1].target);
        }
        g
    }

    /// Restricts to a subset of arcs (used by tests and the irreducibility
    /// witness); the subset is re-validated from scratch.
    pub fn sub_diagram(&self, keep: &[ArcId]) -> Result<(Diagram, ValidationReport), DiagramError> {
        let arcs: Vec<GeodesicArc> = keep.iter().map(|&i| self.arcs[i]).collect();
        validate(arcs, self.tol)
    }
}

/// Validates a set of arcs against the axioms.
///
/// Returns the diagram plus a report on success; `Err(Invalid)` carries the
/// full list of violations. The empty input is rejected outright.
pub fn validate(
    arcs: Vec<GeodesicArc>,
    tol: Tolerance,
) -> Result<(Diagram, ValidationReport), DiagramError> {
    if arcs.is_empty() {
        return Err(DiagramError::EmptyInput);
    }
    let n = arcs.len();
    let mut violations: Vec<Violation> = Vec::new();
    let mut degenerate = false;
    // hit_candidates[i][e] = arcs whose interior contains endpoint e of arc i.
    let mut hit_candidates: Vec<[Vec<(ArcId, UnitVec)>; 2]> = vec![[Vec::new(), Vec::new()]; n];

    for i in 0..n {
        for j in (i + 1)..n {
            match arc_intersection(&arcs[i], &arcs[j], &tol) {
                ArcIntersection::Empty => {}
                ArcIntersection::Overlap(sub) => {
                    violations.push(Violation {
                        axiom: Axiom::A1,
                        arcs: vec![i, j],
                        witness: Some(sub.midpoint()),
                        detail: format!(
                            "arcs {i} and {j} are collinear and overlap in a sub-arc of length {:.3e}",
                            sub.length()
                        ),
                    });
                }
                ArcIntersection::Point(p) => {
                    let on_i = arcs[i].classify_point(p, &tol);
                    let on_j = arcs[j].classify_point(p, &tol);
                    match (on_i, on_j) {
                        (PointOnArc::Interior, PointOnArc::Interior) => {
                            violations.push(Violation {
                                axiom: Axiom::A1,
                                arcs: vec![i, j],
                                witness: Some(p),
                                detail: format!("arcs {i} and {j} cross at an interior point"),
                            });
                        }
                        (PointOnArc::Endpoint(e), PointOnArc::Interior) => {
                            hit_candidates[i][e.index()].push((j, p));
                        }
                        (PointOnArc::Interior, PointOnArc::Endpoint(e)) => {
                            hit_candidates[j][e.index()].push((i, p));
                        }
                        (PointOnArc::Endpoint(_), PointOnArc::Endpoint(_)) => {
                            degenerate = true;
                        }
                        // `Off` after a reported intersection point is a
                        // tolerance boundary case; treat as no contact.
                        _ => {}
                    }
                }
            }
        }
    }

    // A2: each endpoint interior to exactly one other arc. Multiplicity > 1
    // implies an A1 crossing between the two targets, which the pairwise
    // pass has already reported.
    let mut hits: Vec<[HitRecord; 2]> = Vec::with_capacity(n);
    for (i, cands) in hit_candidates.iter().enumerate() {
        let mut recs: [HitRecord; 2] =
            [HitRecord { target: usize::MAX, point: arcs[i].start() }; 2];
        for (e, cand) in cands.iter().enumerate() {
            let endpoint = arcs[i].endpoint(if e == 0 { ArcEnd::Start } else { ArcEnd::End });
            if cand.is_empty() {
                violations.push(Violation {
                    axiom: Axiom::A2,
                    arcs: vec![i],
                    witness: Some(endpoint),
                    detail: format!(
                        "endpoint {} of arc {i} is not blocked by any arc",
                        if e == 0 { "start" } else { "end" }
                    ),
                });
            } else {
                recs[e] = HitRecord { target: cand[0].0, point: cand[0].1 };
            }
        }
        hits.push(recs);
    }

    // A3: every blocker of an arc approaches from the same side. The side is
    // sampled a short way along the blocker from the hit point.
    let mut blockers: Vec<Vec<Blocker>> = vec![Vec::new(); n];
    for (src, recs) in hits.iter().enumerate() {
        for (e, rec) in recs.iter().enumerate() {
            if rec.target == usize::MAX {
                continue;
            }
            let end = if e == 0 { ArcEnd::Start } else { ArcEnd::End };
            let side = approach_side(&arcs[src], end, &arcs[rec.target], &tol);
            let param = arcs[rec.target].param_of(rec.point);
            blockers[rec.target].push(Blocker {
                source: src,
                source_end: end,
                point: rec.point,
                param,
                side,
            });
        }
    }
    let mut side_tag: Vec<Option<Side>> = vec![None; n];
    for (id, list) in blockers.iter_mut().enumerate() {
        list.sort_by(|a, b| a.param.partial_cmp(&b.param).unwrap());
        let mut tag: Option<Side> = None;
        for b in list.iter() {
            match (tag, b.side) {
                (_, Side::On) => {}
                (None, s) => tag = Some(s),
                (Some(t), s) if t == s => {}
                (Some(_), _) => {
                    violations.push(Violation {
                        axiom: Axiom::A3,
                        arcs: vec![id, b.source],
                        witness: Some(b.point),
                        detail: format!(
                            "arc {} reaches arc {id} from the opposite side of earlier blockers",
                            b.source
                        ),
                    });
                }
            }
        }
        side_tag[id] = tag;
    }

    let ok = violations.is_empty();
    let report = ValidationReport { ok, violations, degenerate };
    if !ok {
        return Err(DiagramError::Invalid(report));
    }
    let diagram = Diagram { arcs, hits, blockers, side_tag, degenerate, tol };
    Ok((diagram, report))
}

/// Side of `target` from which `source` approaches at the hit point, sampled
/// at angular distance `min(length/2, 1e-4)` from the hitting endpoint to
/// avoid evaluating exactly on the circle.
fn approach_side(source: &GeodesicArc, end: ArcEnd, target: &GeodesicArc, tol: &Tolerance) -> Side {
    let delta = (source.length() / 2.0).min(1e-4);
    let t = match end {
        ArcEnd::Start => delta,
        ArcEnd::End => source.length() - delta,
    };
    side_of(target.pole(), source.point_at(t), tol)
}

/// One step of a monotonic walk: a point on a named arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkStep {
    pub arc: ArcId,
    pub point: UnitVec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkOrientation {
    Clockwise,
    CounterClockwise,
}

#[derive(Debug, Clone)]
pub struct WalkResult {
    pub steps: Vec<WalkStep>,
    /// Index of the first step of the detected cycle.
    pub cycle_start: usize,
    /// Length of the cycle.
    pub period: usize,
}

/// Walks around `pole` step by step: follow the current arc's great circle
/// in the chosen rotational sense to the first endpoint, then jump onto the
/// arc blocking it there. Arcs whose circle passes through the pole and its
/// antipode are crossed towards the endpoint whose connecting sub-arc avoids
/// both. The walk is eventually periodic on any valid diagram.
pub fn monotonic_walk(
    d: &Diagram,
    pole: UnitVec,
    start: WalkStep,
    orientation: WalkOrientation,
    max_steps: usize,
) -> Result<WalkResult, DiagramError> {
    let tol = d.tol;
    let arc = d.arc(start.arc);
    if arc.classify_point(start.point, &tol) == PointOnArc::Off {
        return Err(DiagramError::StartOffArc);
    }
    if start.point.approx_eq(pole, &tol) || start.point.approx_eq(pole.antipode(), &tol) {
        return Err(DiagramError::StartAtPole);
    }

    let mut steps = vec![start];
    // After the first transition every point is "endpoint `e` of arc `s`
    // sitting on arc `a`"; that triple keys cycle detection.
    let mut seen: HashMap<(ArcId, ArcId, u8), usize> = HashMap::new();
    let mut current = start;

    for _ in 0..max_steps {
        let a = d.arc(current.arc);
        let end = match next_endpoint(a, current.point, pole, orientation, &tol) {
            Some(end) => end,
            None => match a.classify_point(current.point, &tol) {
                // Pole-through circle with the point already at an endpoint:
                // stay put and jump to the blocker.
                PointOnArc::Endpoint(e) => e,
                _ => unreachable!("next_endpoint returns None only at endpoints"),
            },
        };
        let rec = d.hit_at(current.arc, end);
        let key = (rec.target, current.arc, end.index() as u8);
        if let Some(&first) = seen.get(&key) {
            let period = steps.len() - first;
            return Ok(WalkResult { steps, cycle_start: first, period });
        }
        seen.insert(key, steps.len());
        let next = WalkStep { arc: rec.target, point: rec.point };
        steps.push(next);
        current = next;
    }
    Err(DiagramError::MaxStepsExceeded(max_steps))
}

/// Picks the endpoint of `a` the walk moves to from `x`. `None` means "stay
/// at the current endpoint" (pole-through circle, x already an endpoint).
fn next_endpoint(
    a: &GeodesicArc,
    x: UnitVec,
    pole: UnitVec,
    orientation: WalkOrientation,
    tol: &Tolerance,
) -> Option<ArcEnd> {
    let n = a.pole();
    let through_pole = n.dot(pole).abs() <= tol.angular_eps;
    if through_pole {
        if let PointOnArc::Endpoint(_) = a.classify_point(x, tol) {
            return None;
        }
        let tx = a.param_of(x);
        let tp = a.param_of(pole);
        let tp2 = a.param_of(pole.antipode());
        for end in [ArcEnd::End, ArcEnd::Start] {
            let te = match end {
                ArcEnd::Start => 0.0,
                ArcEnd::End => a.length(),
            };
            let lo = tx.min(te) - tol.angular_eps;
            let hi = tx.max(te) + tol.angular_eps;
            if !(tp >= lo && tp <= hi) && !(tp2 >= lo && tp2 <= hi) {
                return Some(end);
            }
        }
        // Both sub-arcs touch a pole only on invalid inputs; fall through to
        // the rotational rule as a best effort.
    }
    // The circle separates the poles: follow it in the requested rotational
    // sense about `pole`. Moving along +(n × x) rotates counterclockwise
    // about `pole` exactly when n·pole > 0.
    let ccw_is_forward = n.dot(pole) > 0.0;
    let forward = match orientation {
        WalkOrientation::CounterClockwise => ccw_is_forward,
        WalkOrientation::Clockwise => !ccw_is_forward,
    };
    let tx = a.param_of(x);
    let length = a.length();
    let mut best: Option<(f64, ArcEnd)> = None;
    for (end, te) in [(ArcEnd::Start, 0.0), (ArcEnd::End, length)] {
        // Angular distance travelled from x to this endpoint in the chosen
        // direction, in (0, 2π].
        let raw = if forward { te - tx } else { tx - te };
        let mut ahead = raw.rem_euclid(2.0 * std::f64::consts::PI);
        if ahead <= tol.angular_eps {
            ahead = 2.0 * std::f64::consts::PI;
        }
        if best.map_or(true, |(b, _)| ahead < b) {
            best = Some((ahead, end));
        }
    }
    best.map(|(_, e)| e)
}

/// Decides irreducibility: no proper subset of the arcs is itself a diagram.
///
/// For each arc `r`, the rest of the diagram is pruned to its blocking fixed
/// point: any arc whose endpoint is no longer blocked by a survivor is
/// deleted, repeatedly. A non-empty fixed point is the maximal sub-diagram
/// avoiding `r` (A1 and A3 are inherited, A2 holds by construction) and is
/// returned as a witness.
pub fn is_irreducible(d: &Diagram) -> (bool, Option<Vec<ArcId>>) {
    let n = d.arc_count();
    for removed in 0..n {
        let mut alive = vec![true; n];
        alive[removed] = false;
        let mut queue: Vec<ArcId> = vec![removed];
        while let Some(dead) = queue.pop() {
            for x in 0..n {
                if !alive[x] {
                    continue;
                }
                let h = d.hits(x);
                if h[0].target == dead || h[1].target == dead {
                    alive[x] = false;
                    queue.push(x);
                }
            }
        }
        let survivors: Vec<ArcId> = (0..n).filter(|&i| alive[i]).collect();
        if !survivors.is_empty() {
            return (false, Some(survivors));
        }
    }
    (true, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::make_arc;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn uv(x: f64, y: f64, z: f64) -> UnitVec {
        UnitVec::new(x, y, z).unwrap()
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(validate(vec![], tol()), Err(DiagramError::EmptyInput)));
    }

    #[test]
    fn single_arc_fails_a2_twice() {
        let arc = make_arc(uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), &tol()).unwrap();
        match validate(vec![arc], tol()) {
            Err(DiagramError::Invalid(report)) => {
                let a2 = report.violations.iter().filter(|v| v.axiom == Axiom::A2).count();
                assert_eq!(a2, 2);
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn internal_crossing_fails_a1() {
        let a = make_arc(uv(1.0, 0.0, -0.3), uv(1.0, 0.0, 0.3), &tol()).unwrap();
        let b = make_arc(uv(1.0, -0.3, 0.0), uv(1.0, 0.3, 0.0), &tol()).unwrap();
        match validate(vec![a, b], tol()) {
            Err(DiagramError::Invalid(report)) => {
                assert!(report.violations.iter().any(|v| v.axiom == Axiom::A1));
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn collinear_overlap_fails_a1() {
        let base = make_arc(uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), &tol()).unwrap();
        let shifted = make_arc(base.point_at(0.3), base.point_at(1.2), &tol()).unwrap();
        match validate(vec![base, shifted], tol()) {
            Err(DiagramError::Invalid(report)) => {
                assert!(report
                    .violations
                    .iter()
                    .any(|v| v.axiom == Axiom::A1 && v.detail.contains("collinear")));
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn opposite_side_hits_fail_a3() {
        // An arc near (1,0,0) in the z=0 plane, hit from above and below.
        let b = make_arc(uv(1.0, -0.5, 0.0), uv(1.0, 0.5, 0.0), &tol()).unwrap();
        let p1 = b.point_at(b.length() * 0.3);
        let p2 = b.point_at(b.length() * 0.7);
        let from_north = make_arc(uv(p1.x(), p1.y(), 0.4), p1, &tol()).unwrap();
        let from_south = make_arc(uv(p2.x(), p2.y(), -0.4), p2, &tol()).unwrap();
        match validate(vec![b, from_north, from_south], tol()) {
            Err(DiagramError::Invalid(report)) => {
                let a3 = report.violations.iter().filter(|v| v.axiom == Axiom::A3).count();
                assert_eq!(a3, 1, "violations: {:?}", report.violations);
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }
}
