//! Result assembly.
//!
//! The result border is stitched from alternating clipper and subject pieces.
//! Flagged vertices are the concatenation points: a walk starts at an
//! unprocessed En vertex of the clipper, collects edges along the ring, and
//! at each flagged vertex jumps to the linked vertex on the other ring,
//! continuing forward after an En landing and backward after an Ex landing,
//! until the walk returns to its start. Contours without any flagged vertex
//! are decided wholesale by membership probes. Overlapped stretches that end
//! up on the result border always arrive via the subject ring, never the
//! clipper's copy.

use std::cmp::Ordering;

use crate::classify::{point_in_polygon, region_side_probe, Membership};
use crate::geom::{Point, Segment};
use crate::polygon::{
    ContourId, Polygon, RegionMembershipRule, Role, VertexFlag, VertexId,
};
use crate::scalar::Scalar;
use crate::BooleanOp;

/// Which input ring contributed a result edge.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Origin {
    Clipper,
    Subject,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ResultEdge {
    pub from: Point,
    pub to: Point,
    pub origin: Origin,
}

/// A closed cycle of result edges; each edge's `to` is the next one's `from`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ResultContour {
    pub edges: Vec<ResultEdge>,
}

impl ResultContour {
    /// The vertex sequence, one point per edge.
    pub fn ring_positions(&self) -> Vec<Point> {
        self.edges.iter().map(|e| e.from.clone()).collect()
    }

    /// Twice the signed enclosed area; positive for interior-on-the-left.
    pub fn doubled_area(&self) -> Scalar {
        let pts = self.ring_positions();
        let mut sum = Scalar::from_int(0);
        for i in 0..pts.len() {
            let a = &pts[i];
            let b = &pts[(i + 1) % pts.len()];
            sum = sum + (&a.x * &b.y - &b.x * &a.y);
        }
        sum
    }

    fn reversed(&self) -> ResultContour {
        let edges = self
            .edges
            .iter()
            .rev()
            .map(|e| ResultEdge { from: e.to.clone(), to: e.from.clone(), origin: e.origin })
            .collect();
        ResultContour { edges }
    }
}

/// The clipped region: closed contours with interior on the left, to be read
/// under the stored membership rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResultRegion {
    pub contours: Vec<ResultContour>,
    pub rule: RegionMembershipRule,
}

impl ResultRegion {
    pub fn is_empty(&self) -> bool {
        self.contours.is_empty()
    }

    /// Vertex rings for membership checks.
    pub fn rings(&self) -> Vec<Vec<Point>> {
        self.contours.iter().map(|c| c.ring_positions()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("result walk failed to close at {0}; the flags are inconsistent")]
    TraversalNotClosing(Point),
}

fn combined_membership(op: BooleanOp, in_clipper: bool, in_subject: bool) -> bool {
    match op {
        BooleanOp::Intersection => in_clipper && in_subject,
        BooleanOp::Union => in_clipper || in_subject,
        BooleanOp::Difference => unreachable!("difference is reduced before tracing"),
    }
}

struct TraceContext<'a> {
    clipper: &'a Polygon,
    clipper_rule: RegionMembershipRule,
    subject: &'a Polygon,
    subject_rule: RegionMembershipRule,
    op: BooleanOp,
    complemented: bool,
}

impl TraceContext<'_> {
    /// Result membership of a point off every input border.
    fn result_membership(&self, p: &Point) -> bool {
        let in_clipper =
            point_in_polygon(p, self.clipper, self.clipper_rule) == Membership::In;
        let in_subject =
            point_in_polygon(p, self.subject, self.subject_rule) == Membership::In;
        combined_membership(self.op, in_clipper ^ self.complemented, in_subject)
    }

    fn membership_pair(&self, p: &Point) -> (bool, bool) {
        let in_clipper =
            point_in_polygon(p, self.clipper, self.clipper_rule) == Membership::In;
        let in_subject =
            point_in_polygon(p, self.subject, self.subject_rule) == Membership::In;
        (in_clipper ^ self.complemented, in_subject)
    }

    /// Orients a contour so the result interior lies on its left, probing
    /// just left of the first edge.
    fn orient(&self, contour: ResultContour) -> ResultContour {
        let first = &contour.edges[0];
        let seg = Segment::new(first.from.clone(), first.to.clone())
            .expect("result edges have distinct endpoints");
        let probe = region_side_probe(&seg, &[self.clipper, self.subject]);
        if self.result_membership(&probe) {
            contour
        } else {
            contour.reversed()
        }
    }

    /// Decides whether a contour without flagged vertices bounds the result,
    /// by comparing result membership on its two sides. Away from overlaps
    /// only the owning polygon's membership flips across the contour; along
    /// a fully coinciding contour both flip.
    fn keep_unflagged_contour(&self, poly: &Polygon, contour: ContourId) -> bool {
        let own_role = poly.role;
        let other = if own_role == Role::Clipper { self.subject } else { self.clipper };
        let other_rule =
            if own_role == Role::Clipper { self.subject_rule } else { self.clipper_rule };
        for (from, to) in poly.arrows(contour) {
            let mid = poly.vertex(from).position.midpoint(&poly.vertex(to).position);
            match point_in_polygon(&mid, other, other_rule) {
                Membership::OnBoundary => continue,
                m => {
                    let in_other = m == Membership::In;
                    // Crossing the contour flips only the owner's membership,
                    // so its border shows iff the other region admits it.
                    return match (self.op, own_role) {
                        (BooleanOp::Intersection, Role::Clipper) => in_other,
                        (BooleanOp::Union, Role::Clipper) => !in_other,
                        (BooleanOp::Intersection, Role::Subject) => {
                            in_other ^ self.complemented
                        }
                        (BooleanOp::Union, Role::Subject) => !(in_other ^ self.complemented),
                        (BooleanOp::Difference, _) => unreachable!(),
                    };
                }
            }
        }
        // Every arrow coincides with the other border. The twin contour gets
        // the same verdict, so only the subject's copy is ever emitted.
        if own_role == Role::Clipper {
            return false;
        }
        let (from, _) = poly.arrows(contour).next().expect("contours have arrows");
        let seg = poly.arrow_segment(from);
        let left = region_side_probe(&seg, &[self.clipper, self.subject]);
        let (cl, sl) = self.membership_pair(&left);
        combined_membership(self.op, cl, sl) != combined_membership(self.op, !cl, !sl)
    }
}

fn contour_as_result(poly: &Polygon, contour: ContourId, origin: Origin) -> ResultContour {
    let edges = poly
        .arrows(contour)
        .map(|(from, to)| ResultEdge {
            from: poly.vertex(from).position.clone(),
            to: poly.vertex(to).position.clone(),
            origin,
        })
        .collect();
    ResultContour { edges }
}

fn contour_has_flags(poly: &Polygon, contour: ContourId) -> bool {
    poly.ring(contour).any(|v| poly.vertex(v).flag != VertexFlag::None)
}

/// Emits every contour that has no flagged vertex and therefore enters the
/// result whole or not at all.
fn emit_unflagged_contours(ctx: &TraceContext<'_>, out: &mut Vec<ResultContour>) {
    for (poly, origin) in [(ctx.clipper, Origin::Clipper), (ctx.subject, Origin::Subject)] {
        for contour in poly.contour_ids() {
            if contour_has_flags(poly, contour) {
                continue;
            }
            if ctx.keep_unflagged_contour(poly, contour) {
                out.push(ctx.orient(contour_as_result(poly, contour, origin)));
            }
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum WalkDirection {
    Forward,
    Backward,
}

/// Walks one closed result cycle starting at the clipper En vertex `start`.
fn walk_cycle(
    clipper: &mut Polygon,
    subject: &mut Polygon,
    start: VertexId,
) -> Result<ResultContour, TraceError> {
    let budget = 2 * (clipper.vertex_count() + subject.vertex_count()) + 4;
    let mut edges = Vec::new();
    let mut on_clipper = true;
    let mut direction = WalkDirection::Forward;
    let mut current = start;
    clipper.vertex_mut(start).processed = true;
    loop {
        // Collect edges along the current ring until the next flagged vertex.
        let (stop, stop_flag, landing) = {
            let poly: &mut Polygon = if on_clipper { clipper } else { subject };
            let origin = if on_clipper { Origin::Clipper } else { Origin::Subject };
            let stop = loop {
                let next = match direction {
                    WalkDirection::Forward => poly.vertex(current).next,
                    WalkDirection::Backward => poly.vertex(current).prev,
                };
                edges.push(ResultEdge {
                    from: poly.vertex(current).position.clone(),
                    to: poly.vertex(next).position.clone(),
                    origin,
                });
                if edges.len() > budget {
                    return Err(TraceError::TraversalNotClosing(
                        poly.vertex(next).position.clone(),
                    ));
                }
                poly.vertex_mut(next).processed = true;
                current = next;
                if poly.vertex(next).flag != VertexFlag::None {
                    break next;
                }
            };
            (stop, poly.vertex(stop).flag, poly.vertex(stop).neighbor)
        };
        if on_clipper && stop == start {
            return Ok(ResultContour { edges });
        }
        let expected = match direction {
            WalkDirection::Forward => VertexFlag::Ex,
            WalkDirection::Backward => VertexFlag::En,
        };
        let position = |p: &Polygon, v: VertexId| p.vertex(v).position.clone();
        if stop_flag != expected {
            let p = if on_clipper { &*clipper } else { &*subject };
            return Err(TraceError::TraversalNotClosing(position(p, stop)));
        }
        let landing = match landing {
            Some(v) => v,
            None => {
                let p = if on_clipper { &*clipper } else { &*subject };
                return Err(TraceError::TraversalNotClosing(position(p, stop)));
            }
        };
        if !on_clipper && landing == start {
            return Ok(ResultContour { edges });
        }
        let other: &mut Polygon = if on_clipper { subject } else { clipper };
        if other.vertex(landing).processed {
            return Err(TraceError::TraversalNotClosing(position(other, landing)));
        }
        direction = match other.vertex(landing).flag {
            VertexFlag::En => WalkDirection::Forward,
            VertexFlag::Ex => WalkDirection::Backward,
            VertexFlag::None => {
                return Err(TraceError::TraversalNotClosing(position(other, landing)))
            }
        };
        other.vertex_mut(landing).processed = true;
        current = landing;
        on_clipper = !on_clipper;
    }
}

/// Assembles the result region from flagged rings.
///
/// Cycles are walked from every unprocessed clipper En vertex; contours
/// carrying no flags are then decided by membership probes, covering inputs
/// where some contours never meet the other polygon. Cycles enclosing zero
/// area are discarded, and every kept contour is oriented with the result
/// interior on its left.
pub fn trace(
    clipper: &mut Polygon,
    clipper_rule: RegionMembershipRule,
    subject: &mut Polygon,
    subject_rule: RegionMembershipRule,
    op: BooleanOp,
    complemented: bool,
) -> Result<ResultRegion, TraceError> {
    assert!(clipper.flags_assigned && subject.flags_assigned, "flag before tracing");
    let starts: Vec<VertexId> = clipper
        .vertex_ids()
        .filter(|v| clipper.vertex(*v).flag == VertexFlag::En)
        .collect();
    let mut cycles = Vec::new();
    for s in starts {
        if clipper.vertex(s).processed {
            continue;
        }
        cycles.push(walk_cycle(clipper, subject, s)?);
    }
    for poly in [&*clipper, &*subject] {
        for v in poly.vertex_ids() {
            if poly.vertex(v).flag != VertexFlag::None && !poly.vertex(v).processed {
                return Err(TraceError::TraversalNotClosing(
                    poly.vertex(v).position.clone(),
                ));
            }
        }
    }
    let ctx = TraceContext {
        clipper: &*clipper,
        clipper_rule,
        subject: &*subject,
        subject_rule,
        op,
        complemented,
    };
    let mut contours = Vec::new();
    for cycle in cycles {
        if cycle.doubled_area().is_zero() {
            continue;
        }
        contours.push(ctx.orient(cycle));
    }
    emit_unflagged_contours(&ctx, &mut contours);
    Ok(ResultRegion { contours, rule: RegionMembershipRule::NonzeroWinding })
}

/// Result assembly when no vertex anywhere carries a flag: every contour is
/// kept or dropped whole. Covers containment, disjointness, and coinciding
/// regions, where the subject's copy of a shared border wins.
pub fn containment_fallback(
    clipper: &Polygon,
    clipper_rule: RegionMembershipRule,
    subject: &Polygon,
    subject_rule: RegionMembershipRule,
    op: BooleanOp,
    complemented: bool,
) -> ResultRegion {
    let ctx = TraceContext {
        clipper,
        clipper_rule,
        subject,
        subject_rule,
        op,
        complemented,
    };
    let mut contours = Vec::new();
    emit_unflagged_contours(&ctx, &mut contours);
    ResultRegion { contours, rule: RegionMembershipRule::NonzeroWinding }
}

fn rotated(edges: &[ResultEdge], k: usize) -> Vec<ResultEdge> {
    let mut out = Vec::with_capacity(edges.len());
    out.extend_from_slice(&edges[k..]);
    out.extend_from_slice(&edges[..k]);
    out
}

fn compare_edge_seqs(a: &[ResultEdge], b: &[ResultEdge]) -> Ordering {
    a.iter().cmp(b.iter())
}

/// Rewrites the region into its canonical form: each contour rotated to its
/// least edge sequence, contours sorted. Collinear vertices stay put so the
/// per-edge origins survive.
pub fn canonicalize(region: ResultRegion) -> ResultRegion {
    let mut contours: Vec<ResultContour> = region
        .contours
        .into_iter()
        .map(|c| {
            let best = (0..c.edges.len())
                .map(|k| rotated(&c.edges, k))
                .min_by(|a, b| compare_edge_seqs(a, b))
                .expect("contours are nonempty");
            ResultContour { edges: best }
        })
        .collect();
    contours.sort_by(|a, b| compare_edge_seqs(&a.edges, &b.edges));
    ResultRegion { contours, rule: region.rule }
}

/// Merges runs of consecutive edges that share an origin and a direction.
/// The merged region loses split points but keeps its geometry and colors.
pub fn simplify_collinear(region: ResultRegion) -> ResultRegion {
    let contours = region
        .contours
        .into_iter()
        .map(|c| {
            let mut edges = c.edges;
            loop {
                let n = edges.len();
                let mergeable = (0..n).find(|&i| {
                    let a = &edges[i];
                    let b = &edges[(i + 1) % n];
                    a.origin == b.origin
                        && a.to == b.from
                        && a.from
                            .vector_to(&a.to)
                            .same_direction(&b.from.vector_to(&b.to))
                });
                match mergeable {
                    Some(i) if n > 3 => {
                        let j = (i + 1) % n;
                        edges[i] = ResultEdge {
                            from: edges[i].from.clone(),
                            to: edges[j].to.clone(),
                            origin: edges[i].origin,
                        };
                        edges.remove(j);
                    }
                    _ => break,
                }
            }
            ResultContour { edges }
        })
        .collect();
    ResultRegion { contours, rule: region.rule }
}
