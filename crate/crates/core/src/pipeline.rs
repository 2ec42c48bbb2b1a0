//! End-to-end clipping: refine, classify, flag, trace.
//!
//! `clip` is the one entry point callers need. It never mutates its inputs;
//! difference is rewritten internally as intersection against the reversed
//! clipper, so the flagging and tracing stages only ever see intersection or
//! union.

use crate::classify::classify_intersections;
use crate::geom::Point;
use crate::intersect::{
    assert_completed, find_and_insert_intersections_ordered, IntersectError, PairOrder,
};
use crate::marking::{flag_clipper, flag_subject, reduce_difference};
use crate::polygon::{Polygon, PolygonError, RegionMembershipRule, VertexFlag};
use crate::trace::{canonicalize, containment_fallback, simplify_collinear, trace, ResultRegion};
use crate::BooleanOp;

#[derive(Clone, Debug)]
pub struct ClipOptions {
    pub clipper_rule: RegionMembershipRule,
    pub subject_rule: RegionMembershipRule,
    pub pair_order: PairOrder,
    /// Merge collinear same-origin result runs, discarding split points.
    pub simplify: bool,
}

impl Default for ClipOptions {
    fn default() -> Self {
        ClipOptions {
            clipper_rule: RegionMembershipRule::NonzeroWinding,
            subject_rule: RegionMembershipRule::NonzeroWinding,
            pair_order: PairOrder::default(),
            simplify: false,
        }
    }
}

/// A flagged vertex, reported for plotting and diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagMarker {
    pub position: Point,
    pub flag: VertexFlag,
}

#[derive(Clone, Debug)]
pub struct ClipOutcome {
    pub region: ResultRegion,
    /// En/Ex vertices on the clipper ring (after difference reduction, the
    /// reversed ring; positions are unchanged by the reversal).
    pub clipper_markers: Vec<FlagMarker>,
    /// En/Ex vertices on the subject ring.
    pub subject_markers: Vec<FlagMarker>,
    /// Every red/black intersection point.
    pub intersections: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClipError {
    #[error(transparent)]
    InvalidPolygon(#[from] PolygonError),
    #[error("contour self-intersection meets the other polygon at {0}")]
    ScopeViolation(Point),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<IntersectError> for ClipError {
    fn from(e: IntersectError) -> Self {
        match e {
            IntersectError::SelfIntersectionAtRedBlackIntersection(p) => {
                ClipError::ScopeViolation(p)
            }
            IntersectError::Polygon(inner) => ClipError::Internal(inner.to_string()),
        }
    }
}

fn flag_markers(poly: &Polygon) -> Vec<FlagMarker> {
    let mut markers: Vec<FlagMarker> = poly
        .vertex_ids()
        .filter(|v| poly.vertex(*v).flag != VertexFlag::None)
        .map(|v| FlagMarker {
            position: poly.vertex(v).position.clone(),
            flag: poly.vertex(v).flag,
        })
        .collect();
    markers.sort_by(|a, b| a.position.cmp(&b.position));
    markers
}

/// Clips `subject` against `clipper` and returns the assembled region plus
/// the flags that shaped it.
pub fn clip(
    clipper: &Polygon,
    subject: &Polygon,
    op: BooleanOp,
    options: &ClipOptions,
) -> Result<ClipOutcome, ClipError> {
    let (mut red, mut black, reduced_op) = if op == BooleanOp::Difference {
        reduce_difference(clipper, subject)
    } else {
        (clipper.clone(), subject.clone(), op)
    };
    let complemented = op == BooleanOp::Difference;

    let records =
        find_and_insert_intersections_ordered(&mut red, &mut black, options.pair_order)?;
    if !assert_completed(&red, &black) {
        return Err(ClipError::Internal(
            "rings still cross after refinement".to_string(),
        ));
    }
    let types = classify_intersections(&red, &black, options.subject_rule)
        .map_err(|e| ClipError::Internal(e.to_string()))?;
    let flags = flag_clipper(&mut red, &types, reduced_op);
    flag_subject(
        &red,
        options.clipper_rule,
        &mut black,
        options.subject_rule,
        complemented,
    )
    .map_err(|e| ClipError::Internal(e.to_string()))?;

    let region = if flags == 0 {
        containment_fallback(
            &red,
            options.clipper_rule,
            &black,
            options.subject_rule,
            reduced_op,
            complemented,
        )
    } else {
        trace(
            &mut red,
            options.clipper_rule,
            &mut black,
            options.subject_rule,
            reduced_op,
            complemented,
        )
        .map_err(|e| ClipError::Internal(e.to_string()))?
    };
    let region = if options.simplify { simplify_collinear(region) } else { region };
    let region = canonicalize(region);

    Ok(ClipOutcome {
        region,
        clipper_markers: flag_markers(&red),
        subject_markers: flag_markers(&black),
        intersections: records.into_iter().map(|r| r.point).collect(),
    })
}
