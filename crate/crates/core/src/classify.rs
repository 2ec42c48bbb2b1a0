//! Membership tests and intersection-vertex classification.
//!
//! After the intersection phase the rings are completed: every arrow of one
//! polygon is entirely inside the other's region, entirely outside it, or
//! exactly coincident with one of the other's arrows. Each intersection
//! vertex then gets an ordered pair of marks, one for the incoming and one
//! for the outgoing arrow, and those pairs drive all flagging.

use std::collections::BTreeMap;

use crate::geom::{
    intersect_segments, orientation, point_on_segment, Orientation, Point, Segment,
    SegmentIntersection, Vec2,
};
use crate::polygon::{Hand, Polygon, RegionMembershipRule, VertexId};
use crate::scalar::Scalar;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    In,
    Out,
    OnBoundary,
}

/// Exact membership of `p` in the region of `poly` under `rule`.
///
/// Winding is accumulated from crossing orientation tests with a half-open
/// vertical interval per edge, so edges meeting the horizontal through `p`
/// at a shared vertex count once.
pub fn point_in_polygon(p: &Point, poly: &Polygon, rule: RegionMembershipRule) -> Membership {
    let mut winding: i64 = 0;
    let mut crossings: u64 = 0;
    for contour in poly.contour_ids() {
        for (tail, head) in poly.arrows(contour) {
            let a = &poly.vertex(tail).position;
            let b = &poly.vertex(head).position;
            let seg = Segment::new(a.clone(), b.clone()).expect("ring edges have distinct endpoints");
            if point_on_segment(p, &seg) {
                return Membership::OnBoundary;
            }
            if a.y <= p.y && p.y < b.y {
                if orientation(a, b, p) == Orientation::Left {
                    winding += 1;
                    crossings += 1;
                }
            } else if b.y <= p.y && p.y < a.y && orientation(a, b, p) == Orientation::Right {
                winding -= 1;
                crossings += 1;
            }
        }
    }
    let inside = match rule {
        RegionMembershipRule::NonzeroWinding => winding != 0,
        RegionMembershipRule::EvenOdd => crossings % 2 == 1,
    };
    if inside {
        Membership::In
    } else {
        Membership::Out
    }
}

/// Direction sense of two exactly coinciding arrows.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum OverlapSense {
    /// Both arrows point the same way.
    Con,
    /// The arrows' flows are opposite.
    Opp,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum LocationMark {
    In,
    Out,
    On(OverlapSense),
}

impl LocationMark {
    pub fn is_on(self) -> bool {
        matches!(self, LocationMark::On(_))
    }
}

/// The ordered (incoming, outgoing) marks of an intersection vertex.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct IntersectionType {
    pub incoming: LocationMark,
    pub outgoing: LocationMark,
}

impl IntersectionType {
    pub fn new(incoming: LocationMark, outgoing: LocationMark) -> Self {
        IntersectionType { incoming, outgoing }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("arrow {from} -> {to} crosses the other contour; the rings are not completed")]
    ArrowCrossesOtherContour { from: Point, to: Point },
    #[error("the four arrows at {0} leave no usable sector")]
    DegenerateArrowConfiguration(Point),
}

/// Mark of a single completed arrow against the other polygon.
///
/// The arrow is `On` exactly when it coincides with one of the other ring's
/// arrows: completion guarantees shared stretches are refined identically on
/// both sides, so coincidence is endpointwise equality. Otherwise the arrow
/// interior stays on one side of the other region and the exact midpoint
/// decides. A midpoint on the boundary means completion was violated.
pub fn classify_arrow(
    arrow: &Segment,
    other: &Polygon,
    rule: RegionMembershipRule,
) -> Result<LocationMark, ClassifyError> {
    for (tail, head) in other.all_arrows() {
        let c = &other.vertex(tail).position;
        let d = &other.vertex(head).position;
        if arrow.a() == c && arrow.b() == d {
            return Ok(LocationMark::On(OverlapSense::Con));
        }
        if arrow.a() == d && arrow.b() == c {
            return Ok(LocationMark::On(OverlapSense::Opp));
        }
    }
    match point_in_polygon(&arrow.midpoint(), other, rule) {
        Membership::In => Ok(LocationMark::In),
        Membership::Out => Ok(LocationMark::Out),
        Membership::OnBoundary => Err(ClassifyError::ArrowCrossesOtherContour {
            from: arrow.a().clone(),
            to: arrow.b().clone(),
        }),
    }
}

/// Type pair of an intersection vertex of `poly` against `other`'s region.
pub fn classify_vertex(
    poly: &Polygon,
    v: VertexId,
    other: &Polygon,
    rule: RegionMembershipRule,
) -> Result<IntersectionType, ClassifyError> {
    assert!(poly.vertex(v).is_intersection, "only intersection vertices have a type");
    let vert = poly.vertex(v);
    let p = &vert.position;
    let prev = &poly.vertex(vert.prev).position;
    let next = &poly.vertex(vert.next).position;
    let incoming_arrow =
        Segment::new(prev.clone(), p.clone()).expect("ring edges have distinct endpoints");
    let outgoing_arrow =
        Segment::new(p.clone(), next.clone()).expect("ring edges have distinct endpoints");
    Ok(IntersectionType {
        incoming: classify_arrow(&incoming_arrow, other, rule)?,
        outgoing: classify_arrow(&outgoing_arrow, other, rule)?,
    })
}

/// Types for every intersection vertex of `poly`, keyed by vertex id.
/// `rule` is the membership rule of `other`, whose region is being tested.
pub fn classify_intersections(
    poly: &Polygon,
    other: &Polygon,
    rule: RegionMembershipRule,
) -> Result<BTreeMap<VertexId, IntersectionType>, ClassifyError> {
    let mut types = BTreeMap::new();
    for v in poly.intersection_vertices() {
        types.insert(v, classify_vertex(poly, v, other, rule)?);
    }
    Ok(types)
}

/// Which of the two arrows of one ring at a vertex is meant.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ArrowEnd {
    Incoming,
    Outgoing,
}

/// The four arrows meeting at an intersection vertex, as exact direction
/// rays pointing away from the vertex. The incoming rays point back toward
/// the respective previous vertex.
#[derive(Clone, Debug)]
pub struct ArrowFan {
    pub position: Point,
    pub red_in: Vec2,
    pub red_out: Vec2,
    pub black_in: Vec2,
    pub black_out: Vec2,
}

impl ArrowFan {
    /// Collects the fan at a pair of linked vertices.
    pub fn at(red: &Polygon, red_v: VertexId, black: &Polygon, black_v: VertexId) -> ArrowFan {
        let rv = red.vertex(red_v);
        let bv = black.vertex(black_v);
        debug_assert_eq!(rv.position, bv.position, "linked vertices share a position");
        let p = &rv.position;
        ArrowFan {
            position: p.clone(),
            red_in: p.vector_to(&red.vertex(rv.prev).position),
            red_out: p.vector_to(&red.vertex(rv.next).position),
            black_in: p.vector_to(&black.vertex(bv.prev).position),
            black_out: p.vector_to(&black.vertex(bv.next).position),
        }
    }
}

/// Whether `d` lies strictly inside the sector swept counterclockwise from
/// `s` to `e`. Directions on the boundary rays do not count as inside.
fn ccw_sector_contains(s: &Vec2, e: &Vec2, d: &Vec2) -> bool {
    use std::cmp::Ordering::*;
    let sd = s.cross(d).cmp_zero() == Greater;
    let de = d.cross(e).cmp_zero() == Greater;
    match s.cross(e).cmp_zero() {
        Greater => sd && de,
        Less => sd || de,
        // Collinear boundary rays: a 180 degree sector if they oppose,
        // nothing otherwise (callers reject that fan as degenerate).
        Equal => s.dot(e).cmp_zero() == Less && sd && de,
    }
}

/// Derives the mark of one red arrow at a vertex from the already known mark
/// of the other red arrow, using only orientation tests among the four
/// arrows, with no membership query.
///
/// The two black rays split the directions around the vertex into two
/// sectors; the known arrow's mark names the sector it lies in, and the
/// unknown arrow is marked by whether it shares that sector. An unknown
/// arrow pointing along a black ray coincides with a black arrow (the rings
/// are completed) and is `On`, with the sense read off the flow directions.
pub fn derive_second_mark(
    known_end: ArrowEnd,
    known: LocationMark,
    fan: &ArrowFan,
) -> Result<LocationMark, ClassifyError> {
    assert!(!known.is_on(), "the known mark must be in or out");
    let (known_ray, unknown_ray, unknown_end) = match known_end {
        ArrowEnd::Incoming => (&fan.red_in, &fan.red_out, ArrowEnd::Outgoing),
        ArrowEnd::Outgoing => (&fan.red_out, &fan.red_in, ArrowEnd::Incoming),
    };
    if unknown_ray.same_direction(&fan.black_in) {
        // Along the black incoming arrow: a red arrow travelling into the
        // vertex flows with it, a red arrow leaving flows against it.
        return Ok(LocationMark::On(match unknown_end {
            ArrowEnd::Incoming => OverlapSense::Con,
            ArrowEnd::Outgoing => OverlapSense::Opp,
        }));
    }
    if unknown_ray.same_direction(&fan.black_out) {
        return Ok(LocationMark::On(match unknown_end {
            ArrowEnd::Incoming => OverlapSense::Opp,
            ArrowEnd::Outgoing => OverlapSense::Con,
        }));
    }
    let collinear_black =
        fan.black_in.cross(&fan.black_out).is_zero() && !fan.black_in.dot(&fan.black_out).is_negative();
    if collinear_black {
        return Err(ClassifyError::DegenerateArrowConfiguration(fan.position.clone()));
    }
    let known_side = ccw_sector_contains(&fan.black_in, &fan.black_out, known_ray);
    let unknown_side = ccw_sector_contains(&fan.black_in, &fan.black_out, unknown_ray);
    if known_side == unknown_side {
        Ok(known)
    } else {
        Ok(match known {
            LocationMark::In => LocationMark::Out,
            LocationMark::Out => LocationMark::In,
            LocationMark::On(_) => unreachable!("known mark is never on"),
        })
    }
}

/// A point just off one side of `edge`: offset from a base point on the edge
/// along `edge`'s left normal, by half the distance to the nearest blocking
/// geometry, so no blocker boundary lies between the edge and the probe.
///
/// If a blocker edge runs along the normal itself the base point is moved
/// (each blocker line can spoil at most one base), so the search always
/// terminates.
pub fn region_side_probe(edge: &Segment, blockers: &[&Polygon]) -> Point {
    let normal = edge.direction().left_normal();
    let arrow_total: usize = blockers.iter().map(|p| p.vertex_count()).sum();
    let mut denominator = Scalar::from_int(2);
    for _ in 0..=arrow_total + 1 {
        let base = edge.point_at(&(Scalar::one() / &denominator));
        let ray = Segment::new(base.clone(), base.translate(&normal))
            .expect("normal of a nonzero edge is nonzero");
        if let Some(t_min) = nearest_forward_hit(&ray, blockers) {
            return ray.point_at(&(t_min / Scalar::from_int(2)));
        }
        // A blocker edge lies along this normal; shift the base and retry.
        denominator = denominator * Scalar::from_int(2);
    }
    unreachable!("more spoiled probe bases than blocker edges")
}

/// Smallest positive parameter at which `ray` meets a blocker arrow, capped
/// at 1; `None` signals a collinear blocker through the ray's origin, which
/// makes this base unusable.
fn nearest_forward_hit(ray: &Segment, blockers: &[&Polygon]) -> Option<Scalar> {
    let mut t_min = Scalar::one();
    for poly in blockers {
        for (tail, _) in poly.all_arrows() {
            let arrow = poly.arrow_segment(tail);
            let t = match intersect_segments(ray, &arrow) {
                SegmentIntersection::Empty => continue,
                SegmentIntersection::SinglePoint(p) => ray.parameter_of(&p),
                SegmentIntersection::Overlap(seg) => {
                    let near = ray.parameter_of(seg.a());
                    if near.is_zero() {
                        return None;
                    }
                    near
                }
            };
            if t.is_positive() && t < t_min {
                t_min = t;
            }
        }
    }
    Some(t_min)
}

/// The side of a vertex's outgoing arrow on which the polygon's own region
/// lies. For a simple contour this is the contour's hand everywhere; for a
/// hole ring it is the opposite of the ring's signed-area hand, because the
/// region lies outside the ring.
pub fn vicinity_hand(poly: &Polygon, v: VertexId, rule: RegionMembershipRule) -> Hand {
    let edge = poly.arrow_segment(v);
    let probe = region_side_probe(&edge, &[poly]);
    match point_in_polygon(&probe, poly, rule) {
        Membership::In => Hand::Left,
        Membership::Out => Hand::Right,
        Membership::OnBoundary => unreachable!("probe points are constructed off the boundary"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{ContourId, Role};

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn half(n: i64) -> Scalar {
        Scalar::from_ratio(n, 2)
    }

    fn unit_square(role: Role) -> Polygon {
        Polygon::from_contours(role, &[vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]], None).unwrap()
    }

    fn nz() -> RegionMembershipRule {
        RegionMembershipRule::NonzeroWinding
    }

    #[test]
    fn membership_in_unit_square() {
        let sq = unit_square(Role::Subject);
        let inside = Point::new(half(1), half(1));
        let edge = Point::new(Scalar::one(), half(1));
        assert_eq!(point_in_polygon(&inside, &sq, nz()), Membership::In);
        assert_eq!(point_in_polygon(&edge, &sq, nz()), Membership::OnBoundary);
        assert_eq!(point_in_polygon(&pt(2, 2), &sq, nz()), Membership::Out);
        assert_eq!(point_in_polygon(&pt(0, 0), &sq, nz()), Membership::OnBoundary);
    }

    #[test]
    fn membership_rules_agree_on_simple_contours() {
        let sq = unit_square(Role::Subject);
        for p in [Point::new(half(1), half(1)), pt(2, 2), pt(-1, 0)] {
            let a = point_in_polygon(&p, &sq, RegionMembershipRule::NonzeroWinding);
            let b = point_in_polygon(&p, &sq, RegionMembershipRule::EvenOdd);
            assert_eq!(a, b, "at {p}");
        }
    }

    #[test]
    fn classify_arrow_detects_coincidence_and_sides() {
        let black = unit_square(Role::Subject);
        let opp = Segment::new(pt(1, 1), pt(1, 0)).unwrap();
        assert_eq!(classify_arrow(&opp, &black, nz()), Ok(LocationMark::On(OverlapSense::Opp)));
        let con = Segment::new(pt(1, 0), pt(1, 1)).unwrap();
        assert_eq!(classify_arrow(&con, &black, nz()), Ok(LocationMark::On(OverlapSense::Con)));
        let out = Segment::new(pt(1, 1), pt(2, 1)).unwrap();
        assert_eq!(classify_arrow(&out, &black, nz()), Ok(LocationMark::Out));
        let diagonal = Segment::new(Point::new(Scalar::one(), half(1)), Point::new(half(1), Scalar::one())).unwrap();
        assert_eq!(classify_arrow(&diagonal, &black, nz()), Ok(LocationMark::In));
    }

    #[test]
    fn classify_arrow_rejects_a_crossing_arrow() {
        let black = unit_square(Role::Subject);
        let crossing = Segment::new(Point::new(half(1), half(-1)), Point::new(half(1), half(1))).unwrap();
        assert_eq!(
            classify_arrow(&crossing, &black, nz()),
            Err(ClassifyError::ArrowCrossesOtherContour {
                from: Point::new(half(1), half(-1)),
                to: Point::new(half(1), half(1)),
            })
        );
    }

    /// Red square to the right of the black unit square, sharing the edge
    /// x=1 with both endpoints already present as ring vertices.
    fn shared_edge_pair() -> (Polygon, Polygon, VertexId, VertexId) {
        let mut red = Polygon::from_contours(
            Role::Clipper,
            &[vec![pt(1, 0), pt(2, 0), pt(2, 1), pt(1, 1)]],
            None,
        )
        .unwrap();
        let black = unit_square(Role::Subject);
        let ids: Vec<VertexId> = red.ring(crate::polygon::ContourId(0)).collect();
        let (bottom, top) = (ids[0], ids[3]);
        red.vertex_mut(bottom).is_intersection = true;
        red.vertex_mut(top).is_intersection = true;
        (red, black, bottom, top)
    }

    #[test]
    fn classify_vertex_on_a_shared_edge() {
        let (red, black, bottom, top) = shared_edge_pair();
        assert_eq!(
            classify_vertex(&red, top, &black, nz()),
            Ok(IntersectionType::new(LocationMark::Out, LocationMark::On(OverlapSense::Opp)))
        );
        assert_eq!(
            classify_vertex(&red, bottom, &black, nz()),
            Ok(IntersectionType::new(LocationMark::On(OverlapSense::Opp), LocationMark::Out))
        );
        let types = classify_intersections(&red, &black, nz()).unwrap();
        assert_eq!(types.len(), 2);
    }

    fn vec2(x: i64, y: i64) -> Vec2 {
        Vec2::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    fn fan(red_in: Vec2, red_out: Vec2, black_in: Vec2, black_out: Vec2) -> ArrowFan {
        ArrowFan { position: pt(0, 0), red_in, red_out, black_in, black_out }
    }

    #[test]
    fn second_mark_of_a_transversal_crossing() {
        // Red runs left to right through a vertical black edge.
        let f = fan(vec2(-1, 0), vec2(1, 0), vec2(0, -1), vec2(0, 1));
        assert_eq!(
            derive_second_mark(ArrowEnd::Incoming, LocationMark::In, &f),
            Ok(LocationMark::Out)
        );
        assert_eq!(
            derive_second_mark(ArrowEnd::Incoming, LocationMark::Out, &f),
            Ok(LocationMark::In)
        );
    }

    #[test]
    fn second_mark_of_a_touch_back() {
        // Red bounces off the black edge and returns into the same sector.
        let f = fan(vec2(-2, -1), vec2(-2, 1), vec2(0, -1), vec2(0, 1));
        assert_eq!(
            derive_second_mark(ArrowEnd::Incoming, LocationMark::In, &f),
            Ok(LocationMark::In)
        );
    }

    #[test]
    fn second_mark_on_a_black_ray() {
        // The shared-edge configuration seen from the red vertex (1,1):
        // red arrives from the right and leaves down the shared edge, the
        // black ring arrives from below and leaves to the left.
        let f = fan(vec2(1, 0), vec2(0, -1), vec2(0, -1), vec2(-1, 0));
        assert_eq!(
            derive_second_mark(ArrowEnd::Incoming, LocationMark::Out, &f),
            Ok(LocationMark::On(OverlapSense::Opp))
        );
        // Red leaving along the black outgoing arrow flows with it.
        let f = fan(vec2(1, 0), vec2(-1, 0), vec2(0, -1), vec2(-1, 0));
        assert_eq!(
            derive_second_mark(ArrowEnd::Incoming, LocationMark::Out, &f),
            Ok(LocationMark::On(OverlapSense::Con))
        );
    }

    #[test]
    fn spiked_black_fan_is_degenerate() {
        let f = fan(vec2(-1, 0), vec2(1, 1), vec2(0, 1), vec2(0, 1));
        assert_eq!(
            derive_second_mark(ArrowEnd::Incoming, LocationMark::Out, &f),
            Err(ClassifyError::DegenerateArrowConfiguration(pt(0, 0)))
        );
    }

    #[test]
    fn vicinity_hand_on_simple_contours() {
        let ccw = unit_square(Role::Subject);
        for v in ccw.vertex_ids() {
            assert_eq!(vicinity_hand(&ccw, v, nz()), Hand::Left);
        }
        let cw = Polygon::from_contours(
            Role::Subject,
            &[vec![pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)]],
            None,
        )
        .unwrap();
        for v in cw.vertex_ids() {
            assert_eq!(vicinity_hand(&cw, v, nz()), Hand::Right);
        }
    }

    #[test]
    fn vicinity_hand_of_a_hole_ring_is_left() {
        // Annulus: counterclockwise outer ring, clockwise hole. The region
        // lies outside the hole ring, which is to the LEFT of its travel, so
        // the hole's vicinity hand differs from its signed-area hand.
        let annulus = Polygon::from_contours(
            Role::Subject,
            &[
                vec![pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)],
                vec![pt(1, 1), pt(1, 3), pt(3, 3), pt(3, 1)],
            ],
            None,
        )
        .unwrap();
        let hole = ContourId(1);
        assert_eq!(annulus.contour_hand(hole), Ok(Hand::Right));
        for v in annulus.ring(hole) {
            assert_eq!(vicinity_hand(&annulus, v, nz()), Hand::Left);
        }
        for v in annulus.ring(ContourId(0)) {
            assert_eq!(vicinity_hand(&annulus, v, nz()), Hand::Left);
        }
    }

    #[test]
    fn probe_stays_clear_of_nearby_geometry() {
        // A second polygon sits a sliver away from the probed edge; the
        // probe must land between them.
        let edge = Segment::new(pt(0, 0), pt(4, 0)).unwrap();
        let near = Polygon::from_contours(
            Role::Clipper,
            &[vec![
                Point::new(Scalar::from_int(0), Scalar::from_ratio(1, 100)),
                Point::new(Scalar::from_int(4), Scalar::from_ratio(1, 100)),
                pt(4, 2),
                pt(0, 2),
            ]],
            None,
        )
        .unwrap();
        let probe = region_side_probe(&edge, &[&near]);
        assert!(probe.y.is_positive() && probe.y < Scalar::from_ratio(1, 100));
        assert_eq!(point_in_polygon(&probe, &near, nz()), Membership::Out);
    }

    #[test]
    fn derived_marks_match_direct_classification_around_a_square_corner() {
        // Spin a red transversal through the corner fan of the black unit
        // square at (0,0) and compare both classification paths. The arrows
        // are kept short so they stay within the corner vicinity.
        let black = unit_square(Role::Subject);
        let dirs = [
            (1, 2), (2, 1), (1, -1), (-1, -2), (-2, -1), (-1, 1), (3, 1), (1, -3),
        ];
        for (dx, dy) in dirs {
            let exit = Point::new(Scalar::from_ratio(dx, 4), Scalar::from_ratio(dy, 4));
            let enter = Point::new(Scalar::from_ratio(-dx, 4), Scalar::from_ratio(-dy, 4));
            let incoming =
                classify_arrow(&Segment::new(enter, pt(0, 0)).unwrap(), &black, nz()).unwrap();
            let outgoing =
                classify_arrow(&Segment::new(pt(0, 0), exit).unwrap(), &black, nz()).unwrap();
            let f = fan(vec2(-dx, -dy), vec2(dx, dy), vec2(0, 1), vec2(1, 0));
            assert_eq!(
                derive_second_mark(ArrowEnd::Incoming, incoming, &f),
                Ok(outgoing),
                "direction ({dx}, {dy})"
            );
        }
    }
}
