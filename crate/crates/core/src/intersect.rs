//! Intersection phase: find every contact between the two polygons' rings,
//! refine both rings so each contact is a vertex on both sides, and link the
//! twin vertices.
//!
//! Edge pairs are tested brute force. Collinear overlaps contribute their
//! clipped endpoints per pair; because every original vertex inside an
//! overlapped stretch bounds some edge of its own ring, the union of those
//! endpoints is a common refinement: afterwards coinciding stretches are
//! segmented identically in both rings.

use std::collections::{BTreeMap, BTreeSet};

use crate::geom::{intersect_segments, Point, Segment, SegmentIntersection};
use crate::polygon::{Polygon, PolygonError, VertexId};

/// Which ring's edges form the outer loop of the all-pairs scan. The result
/// must not depend on this; tests flip it to prove that.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum PairOrder {
    #[default]
    ClipperOuter,
    SubjectOuter,
}

/// One linked twin-vertex pair produced by the intersection phase.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionRecord {
    pub point: Point,
    pub clipper_vertex: VertexId,
    pub subject_vertex: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntersectError {
    #[error("the polygons meet at {0}, where one contour also crosses itself; out of scope")]
    SelfIntersectionAtRedBlackIntersection(Point),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

fn edge_snapshot(poly: &Polygon) -> Vec<(VertexId, VertexId, Segment)> {
    poly.all_arrows().map(|(tail, head)| (tail, head, poly.arrow_segment(tail))).collect()
}

pub fn find_and_insert_intersections(
    clipper: &mut Polygon,
    subject: &mut Polygon,
) -> Result<Vec<IntersectionRecord>, IntersectError> {
    find_and_insert_intersections_ordered(clipper, subject, PairOrder::default())
}

pub fn find_and_insert_intersections_ordered(
    clipper: &mut Polygon,
    subject: &mut Polygon,
    order: PairOrder,
) -> Result<Vec<IntersectionRecord>, IntersectError> {
    let clipper_edges = edge_snapshot(clipper);
    let subject_edges = edge_snapshot(subject);

    // Contact points per original edge, deduplicated; sets make the outcome
    // independent of the pair enumeration order.
    let mut clipper_events: Vec<BTreeSet<Point>> = vec![BTreeSet::new(); clipper_edges.len()];
    let mut subject_events: Vec<BTreeSet<Point>> = vec![BTreeSet::new(); subject_edges.len()];
    {
        let mut hit = |i: usize, j: usize| {
            match intersect_segments(&clipper_edges[i].2, &subject_edges[j].2) {
                SegmentIntersection::Empty => {}
                SegmentIntersection::SinglePoint(p) => {
                    clipper_events[i].insert(p.clone());
                    subject_events[j].insert(p);
                }
                SegmentIntersection::Overlap(seg) => {
                    for p in [seg.a(), seg.b()] {
                        clipper_events[i].insert(p.clone());
                        subject_events[j].insert(p.clone());
                    }
                }
            }
        };
        match order {
            PairOrder::ClipperOuter => {
                for i in 0..clipper_edges.len() {
                    for j in 0..subject_edges.len() {
                        hit(i, j);
                    }
                }
            }
            PairOrder::SubjectOuter => {
                for j in 0..subject_edges.len() {
                    for i in 0..clipper_edges.len() {
                        hit(i, j);
                    }
                }
            }
        }
    }

    let clipper_at = apply_events(clipper, &clipper_edges, &clipper_events)?;
    let subject_at = apply_events(subject, &subject_edges, &subject_events)?;
    debug_assert_eq!(clipper_at.len(), subject_at.len(), "events are recorded on both sides");

    let mut records = Vec::with_capacity(clipper_at.len());
    for (p, reds) in &clipper_at {
        let blacks = &subject_at[p];
        if reds.len() > 1 || blacks.len() > 1 {
            return Err(IntersectError::SelfIntersectionAtRedBlackIntersection(p.clone()));
        }
        let (r, b) = (reds[0], blacks[0]);
        clipper.vertex_mut(r).neighbor = Some(b);
        subject.vertex_mut(b).neighbor = Some(r);
        records.push(IntersectionRecord { point: p.clone(), clipper_vertex: r, subject_vertex: b });
    }
    Ok(records)
}

/// Inserts each edge's events in canonical order (edge index, then exact
/// along-edge parameter) and returns the vertices now present per position.
fn apply_events(
    poly: &mut Polygon,
    edges: &[(VertexId, VertexId, Segment)],
    events: &[BTreeSet<Point>],
) -> Result<BTreeMap<Point, Vec<VertexId>>, PolygonError> {
    let mut at: BTreeMap<Point, Vec<VertexId>> = BTreeMap::new();
    for ((tail, head, seg), points) in edges.iter().zip(events) {
        let mut ordered: Vec<&Point> = points.iter().collect();
        ordered.sort_by_key(|p| seg.parameter_of(*p));
        for p in ordered {
            let v = poly.insert_vertex_on_edge(*tail, *head, p)?;
            let slot = at.entry(p.clone()).or_default();
            if !slot.contains(&v) {
                slot.push(v);
            }
        }
    }
    Ok(at)
}

/// Whether the rings are completed: no arrow of one polygon crosses or
/// touches the other contour except at shared, mutually linked intersection
/// vertices, and coinciding stretches are refined into identical arrows.
pub fn assert_completed(clipper: &Polygon, subject: &Polygon) -> bool {
    let clipper_edges = edge_snapshot(clipper);
    let subject_edges = edge_snapshot(subject);
    for (rt, rh, rs) in &clipper_edges {
        for (bt, bh, bs) in &subject_edges {
            match intersect_segments(rs, bs) {
                SegmentIntersection::Empty => {}
                SegmentIntersection::SinglePoint(p) => {
                    let rv = vertex_at_endpoint(clipper, *rt, *rh, &p);
                    let bv = vertex_at_endpoint(subject, *bt, *bh, &p);
                    let (Some(rv), Some(bv)) = (rv, bv) else { return false };
                    if !mutually_linked(clipper, rv, subject, bv) {
                        return false;
                    }
                }
                SegmentIntersection::Overlap(_) => {
                    let (ba, bb) = if rs.a() == bs.a() && rs.b() == bs.b() {
                        (*bt, *bh)
                    } else if rs.a() == bs.b() && rs.b() == bs.a() {
                        (*bh, *bt)
                    } else {
                        return false;
                    };
                    if !mutually_linked(clipper, *rt, subject, ba)
                        || !mutually_linked(clipper, *rh, subject, bb)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn vertex_at_endpoint(poly: &Polygon, tail: VertexId, head: VertexId, p: &Point) -> Option<VertexId> {
    if poly.vertex(tail).position == *p {
        Some(tail)
    } else if poly.vertex(head).position == *p {
        Some(head)
    } else {
        None
    }
}

fn mutually_linked(clipper: &Polygon, r: VertexId, subject: &Polygon, b: VertexId) -> bool {
    clipper.vertex(r).is_intersection
        && subject.vertex(b).is_intersection
        && clipper.vertex(r).neighbor == Some(b)
        && subject.vertex(b).neighbor == Some(r)
}
