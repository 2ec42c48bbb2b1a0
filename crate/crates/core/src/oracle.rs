//! Verification oracle, independent of the clipping pipeline.
//!
//! Membership here is decided by casting a horizontal ray and comparing the
//! exact x coordinates of edge crossings, with no shared logic beyond the
//! scalar type. `check_boolean` samples random points and compares the
//! pointwise boolean of the two input regions against the produced result;
//! any disagreement comes back with the witness point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;
use crate::polygon::{Polygon, RegionMembershipRule};
use crate::scalar::Scalar;
use crate::BooleanOp;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum RaySample {
    Inside,
    Outside,
    OnBoundary,
}

/// Where `p` lies relative to the region enclosed by `rings` under `rule`.
///
/// Each ring is a closed vertex cycle given as an open list. Zero-length
/// edges are skipped. Works on raw rings so that produced results can be
/// checked without going through the polygon type.
pub fn ray_membership(p: &Point, rings: &[Vec<Point>], rule: RegionMembershipRule) -> RaySample {
    let mut winding: i64 = 0;
    let mut crossings: u64 = 0;
    for ring in rings {
        let n = ring.len();
        for i in 0..n {
            let a = &ring[i];
            let b = &ring[(i + 1) % n];
            if a == b {
                if p == a {
                    return RaySample::OnBoundary;
                }
                continue;
            }
            if on_closed_edge(p, a, b) {
                return RaySample::OnBoundary;
            }
            // Half-open in y so a crossing through a shared vertex counts once.
            let upward = a.y <= p.y && p.y < b.y;
            let downward = b.y <= p.y && p.y < a.y;
            if (upward || downward) && crossing_is_right_of(p, a, b) {
                winding += if upward { 1 } else { -1 };
                crossings += 1;
            }
        }
    }
    let inside = match rule {
        RegionMembershipRule::NonzeroWinding => winding != 0,
        RegionMembershipRule::EvenOdd => crossings % 2 == 1,
    };
    if inside {
        RaySample::Inside
    } else {
        RaySample::Outside
    }
}

fn on_closed_edge(p: &Point, a: &Point, b: &Point) -> bool {
    let cross = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
    if !cross.is_zero() {
        return false;
    }
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *lo_x <= p.x && p.x <= *hi_x && *lo_y <= p.y && p.y <= *hi_y
}

/// For an edge already known to span `p.y`, whether the exact x coordinate
/// where it meets the horizontal line through `p` is strictly right of `p`.
fn crossing_is_right_of(p: &Point, a: &Point, b: &Point) -> bool {
    let t = (&p.y - &a.y) / (&b.y - &a.y);
    let x_at = &a.x + &(t * (&b.x - &a.x));
    x_at > p.x
}

#[derive(Clone, Debug)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    /// Absolute margin added on every side of the joint bounding box, so the
    /// samples include points outside both inputs.
    pub inflation: Scalar,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan { seed: 1, count: 1000, inflation: Scalar::one() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckFailure {
    #[error(
        "result disagrees with pointwise boolean at {point}: \
         clipper={in_clipper} subject={in_subject} expected={expected} got={got}"
    )]
    Disagreement {
        point: Point,
        in_clipper: bool,
        in_subject: bool,
        expected: bool,
        got: bool,
    },
    #[error("too many samples fell on a boundary; tested only {tested} of {wanted}")]
    TooManyBoundaryHits { tested: usize, wanted: usize },
}

fn expected_membership(op: BooleanOp, in_clipper: bool, in_subject: bool) -> bool {
    match op {
        BooleanOp::Intersection => in_clipper && in_subject,
        BooleanOp::Union => in_clipper || in_subject,
        BooleanOp::Difference => in_subject && !in_clipper,
    }
}

fn polygon_rings(poly: &Polygon) -> Vec<Vec<Point>> {
    poly.contour_ids().map(|c| poly.ring_positions(c)).collect()
}

/// Samples random points over the inflated joint bounding box and checks, per
/// point, that membership in `result_rings` (nonzero winding, as results are
/// oriented) equals the boolean of the input memberships. Samples that land
/// on any boundary are discarded and redrawn. Returns the number of points
/// actually tested.
pub fn check_boolean(
    clipper: &Polygon,
    clipper_rule: RegionMembershipRule,
    subject: &Polygon,
    subject_rule: RegionMembershipRule,
    op: BooleanOp,
    result_rings: &[Vec<Point>],
    plan: &SamplePlan,
) -> Result<usize, CheckFailure> {
    let boxes = [clipper.bounding_box(), subject.bounding_box()];
    let mut corners = boxes.iter().flatten();
    let Some((first_min, first_max)) = corners.next() else {
        return Ok(0);
    };
    let (mut min, mut max) = (first_min.clone(), first_max.clone());
    for (lo, hi) in corners {
        min.x = min.x.min(lo.x.clone());
        min.y = min.y.min(lo.y.clone());
        max.x = max.x.max(hi.x.clone());
        max.y = max.y.max(hi.y.clone());
    }
    let span_x = &max.x - &min.x + Scalar::from_int(2) * &plan.inflation;
    let span_y = &max.y - &min.y + Scalar::from_int(2) * &plan.inflation;
    let base = Point::new(&min.x - &plan.inflation, &min.y - &plan.inflation);

    let clipper_rings = polygon_rings(clipper);
    let subject_rings = polygon_rings(subject);

    // A prime denominator keeps samples off the small-denominator grids that
    // input coordinates typically live on.
    const DENOM: i64 = 997;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut tested = 0;
    let mut draws = 0;
    let max_draws = plan.count.saturating_mul(10);
    while tested < plan.count && draws < max_draws {
        draws += 1;
        let kx = rng.gen_range(0..=DENOM);
        let ky = rng.gen_range(0..=DENOM);
        let p = Point::new(
            &base.x + &(Scalar::from_ratio(kx, DENOM) * &span_x),
            &base.y + &(Scalar::from_ratio(ky, DENOM) * &span_y),
        );
        let in_clipper = match ray_membership(&p, &clipper_rings, clipper_rule) {
            RaySample::OnBoundary => continue,
            s => s == RaySample::Inside,
        };
        let in_subject = match ray_membership(&p, &subject_rings, subject_rule) {
            RaySample::OnBoundary => continue,
            s => s == RaySample::Inside,
        };
        let got = match ray_membership(&p, result_rings, RegionMembershipRule::NonzeroWinding) {
            RaySample::OnBoundary => continue,
            s => s == RaySample::Inside,
        };
        let expected = expected_membership(op, in_clipper, in_subject);
        if got != expected {
            return Err(CheckFailure::Disagreement { point: p, in_clipper, in_subject, expected, got });
        }
        tested += 1;
    }
    if tested < plan.count {
        return Err(CheckFailure::TooManyBoundaryHits { tested, wanted: plan.count });
    }
    Ok(tested)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Role;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn square(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<Point> {
        vec![pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)]
    }

    #[test]
    fn square_membership() {
        let rings = vec![square(0, 0, 2, 2)];
        let rule = RegionMembershipRule::NonzeroWinding;
        assert_eq!(ray_membership(&pt(1, 1), &rings, rule), RaySample::Inside);
        assert_eq!(ray_membership(&pt(3, 1), &rings, rule), RaySample::Outside);
        assert_eq!(ray_membership(&pt(-1, 0), &rings, rule), RaySample::Outside);
        // Edge midpoints, vertices, and points on vertical edges are boundary.
        assert_eq!(ray_membership(&pt(1, 0), &rings, rule), RaySample::OnBoundary);
        assert_eq!(ray_membership(&pt(1, 2), &rings, rule), RaySample::OnBoundary);
        assert_eq!(ray_membership(&pt(0, 1), &rings, rule), RaySample::OnBoundary);
        assert_eq!(ray_membership(&pt(0, 0), &rings, rule), RaySample::OnBoundary);
    }

    #[test]
    fn clockwise_ring_is_still_a_region() {
        let mut ring = square(0, 0, 2, 2);
        ring.reverse();
        let rings = vec![ring];
        assert_eq!(
            ray_membership(&pt(1, 1), &rings, RegionMembershipRule::NonzeroWinding),
            RaySample::Inside
        );
        assert_eq!(
            ray_membership(&pt(1, 1), &rings, RegionMembershipRule::EvenOdd),
            RaySample::Inside
        );
    }

    #[test]
    fn winding_rules_differ_on_doubly_wound_area() {
        // Two counterclockwise rings, one inside the other: the inner area
        // has winding number 2.
        let rings = vec![square(0, 0, 4, 4), square(1, 1, 3, 3)];
        let doubly = pt(2, 2);
        let singly = Point::new(Scalar::from_ratio(1, 2), Scalar::from_int(2));
        assert_eq!(
            ray_membership(&doubly, &rings, RegionMembershipRule::NonzeroWinding),
            RaySample::Inside
        );
        assert_eq!(
            ray_membership(&doubly, &rings, RegionMembershipRule::EvenOdd),
            RaySample::Outside
        );
        assert_eq!(
            ray_membership(&singly, &rings, RegionMembershipRule::NonzeroWinding),
            RaySample::Inside
        );
        assert_eq!(
            ray_membership(&singly, &rings, RegionMembershipRule::EvenOdd),
            RaySample::Inside
        );
    }

    #[test]
    fn annulus_with_clockwise_hole() {
        let mut hole = square(1, 1, 3, 3);
        hole.reverse();
        let rings = vec![square(0, 0, 4, 4), hole];
        let rule = RegionMembershipRule::NonzeroWinding;
        assert_eq!(ray_membership(&pt(2, 2), &rings, rule), RaySample::Outside);
        assert_eq!(
            ray_membership(&Point::new(Scalar::from_ratio(1, 2), Scalar::from_int(2)), &rings, rule),
            RaySample::Inside
        );
    }

    fn nz() -> RegionMembershipRule {
        RegionMembershipRule::NonzeroWinding
    }

    #[test]
    fn check_accepts_a_correct_intersection() {
        let clipper = Polygon::from_contours(Role::Clipper, &[square(0, 0, 2, 2)], None).unwrap();
        let subject = Polygon::from_contours(Role::Subject, &[square(1, 1, 3, 3)], None).unwrap();
        let result = vec![square(1, 1, 2, 2)];
        let plan = SamplePlan { seed: 9, count: 400, ..SamplePlan::default() };
        let tested = check_boolean(
            &clipper,
            nz(),
            &subject,
            nz(),
            BooleanOp::Intersection,
            &result,
            &plan,
        )
        .unwrap();
        assert_eq!(tested, 400);
    }

    #[test]
    fn check_rejects_a_wrong_result_with_a_witness() {
        let clipper = Polygon::from_contours(Role::Clipper, &[square(0, 0, 2, 2)], None).unwrap();
        let subject = Polygon::from_contours(Role::Subject, &[square(1, 1, 3, 3)], None).unwrap();
        // Claiming the whole subject as the intersection is wrong wherever
        // the subject sticks out of the clipper.
        let claimed = vec![square(1, 1, 3, 3)];
        let plan = SamplePlan { seed: 9, count: 400, ..SamplePlan::default() };
        let err = check_boolean(
            &clipper,
            nz(),
            &subject,
            nz(),
            BooleanOp::Intersection,
            &claimed,
            &plan,
        )
        .unwrap_err();
        match err {
            CheckFailure::Disagreement { point, expected, got, .. } => {
                assert!(!expected && got);
                assert_eq!(
                    ray_membership(&point, &claimed, nz()),
                    RaySample::Inside,
                    "witness must lie in the claimed region"
                );
            }
            other => panic!("expected a disagreement, got {other:?}"),
        }
    }

    #[test]
    fn check_covers_union_and_difference() {
        let clipper = Polygon::from_contours(Role::Clipper, &[square(0, 0, 2, 2)], None).unwrap();
        let subject = Polygon::from_contours(Role::Subject, &[square(1, 0, 3, 2)], None).unwrap();
        let plan = SamplePlan { seed: 4, count: 300, ..SamplePlan::default() };
        let union = vec![square(0, 0, 3, 2)];
        check_boolean(&clipper, nz(), &subject, nz(), BooleanOp::Union, &union, &plan).unwrap();
        let difference = vec![square(2, 0, 3, 2)];
        check_boolean(&clipper, nz(), &subject, nz(), BooleanOp::Difference, &difference, &plan)
            .unwrap();
        // Swapping the operands' roles must flip the difference.
        let err = check_boolean(
            &subject.clone(),
            nz(),
            &clipper.clone(),
            nz(),
            BooleanOp::Difference,
            &difference,
            &plan,
        )
        .unwrap_err();
        assert!(matches!(err, CheckFailure::Disagreement { .. }));
    }

    #[test]
    fn empty_result_for_disjoint_intersection() {
        let clipper = Polygon::from_contours(Role::Clipper, &[square(0, 0, 1, 1)], None).unwrap();
        let subject = Polygon::from_contours(Role::Subject, &[square(5, 5, 6, 6)], None).unwrap();
        let plan = SamplePlan { seed: 2, count: 200, ..SamplePlan::default() };
        check_boolean(&clipper, nz(), &subject, nz(), BooleanOp::Intersection, &[], &plan).unwrap();
    }

    #[test]
    fn same_seed_same_verdict() {
        let clipper = Polygon::from_contours(Role::Clipper, &[square(0, 0, 2, 2)], None).unwrap();
        let subject = Polygon::from_contours(Role::Subject, &[square(1, 1, 3, 3)], None).unwrap();
        let claimed = vec![square(1, 1, 3, 3)];
        let plan = SamplePlan { seed: 42, count: 250, ..SamplePlan::default() };
        let a = check_boolean(&clipper, nz(), &subject, nz(), BooleanOp::Intersection, &claimed, &plan);
        let b = check_boolean(&clipper, nz(), &subject, nz(), BooleanOp::Intersection, &claimed, &plan);
        assert_eq!(a, b);
    }
}
