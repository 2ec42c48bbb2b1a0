//! Exact 2D polygon boolean operations.
//!
//! Intersection, union, and difference of polygons with rational vertex
//! coordinates. Degenerate contact between the inputs (a vertex of one
//! polygon on an edge or vertex of the other, partially or fully coinciding
//! edges) is handled head-on rather than perturbed away: intersection
//! vertices are classified exactly and flagged `En`/`Ex` by a fixed rule
//! table, and the result border is traced through those flags.

pub mod classify;
pub mod corpus;
pub mod geom;
pub mod intersect;
pub mod marking;
pub mod oracle;
pub mod pipeline;
pub mod polygon;
pub mod scalar;
pub mod trace;

/// The boolean operation to perform. `Difference` is subject minus clipper.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BooleanOp {
    Intersection,
    Union,
    Difference,
}

pub use geom::{
    intersect_segments, orientation, point_on_segment, GeomError, Orientation, Point, Segment,
    SegmentIntersection, Vec2,
};
pub use polygon::{
    Contour, ContourId, Hand, Polygon, PolygonError, RegionMembershipRule, Role, Vertex, VertexFlag,
    VertexId,
};
pub use scalar::{Scalar, ScalarParseError};

pub use corpus::{degenerate_corpus, scope_cases, trial_suite, CorpusCase};
pub use oracle::{check_boolean, CheckFailure, SamplePlan};
pub use pipeline::{clip, ClipError, ClipOptions, ClipOutcome, FlagMarker};
pub use trace::{Origin, ResultContour, ResultEdge, ResultRegion};
