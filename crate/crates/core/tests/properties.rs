//! Cross-module invariants over generated inputs.
//!
//! These tests rerun the refinement and marking phases through the public
//! module API instead of `clip`, so a failure points at the phase that broke
//! rather than at the assembled result.

use proptest::prelude::*;

use fixclip::classify::{classify_intersections, point_in_polygon, vicinity_hand, Membership};
use fixclip::corpus::{degenerate_corpus, CorpusCase};
use fixclip::intersect::find_and_insert_intersections;
use fixclip::marking::{flag_clipper, flag_clipper_rule, flag_subject, reduce_difference};
use fixclip::oracle::{ray_membership, RaySample};
use fixclip::pipeline::{clip, ClipOptions};
use fixclip::polygon::{Polygon, RegionMembershipRule, Role, VertexFlag};
use fixclip::{BooleanOp, Point, Scalar};

const RULE: RegionMembershipRule = RegionMembershipRule::NonzeroWinding;
const OPS: [BooleanOp; 3] = [BooleanOp::Intersection, BooleanOp::Union, BooleanOp::Difference];

/// Runs refinement and both marking passes, returning the flagged rings.
fn marked_pair(case: &CorpusCase, op: BooleanOp) -> (Polygon, Polygon) {
    let (clipper, subject) = case.polygons().expect(case.name.as_str());
    let (mut red, mut black, reduced_op) = if op == BooleanOp::Difference {
        reduce_difference(&clipper, &subject)
    } else {
        (clipper, subject, op)
    };
    find_and_insert_intersections(&mut red, &mut black).expect(case.name.as_str());
    let types = classify_intersections(&red, &black, RULE).expect(case.name.as_str());
    flag_clipper(&mut red, &types, reduced_op);
    flag_subject(&red, RULE, &mut black, RULE, op == BooleanOp::Difference)
        .expect(case.name.as_str());
    (red, black)
}

/// First generated (non-fixture) case for a seed.
fn generated_case(seed: u64) -> CorpusCase {
    degenerate_corpus(seed, 9).pop().unwrap()
}

#[test]
fn en_and_ex_alternate_around_every_marked_ring() {
    for case in degenerate_corpus(11, 60) {
        for op in OPS {
            let (red, black) = marked_pair(&case, op);
            for poly in [&red, &black] {
                for c in poly.contour_ids() {
                    let flags: Vec<VertexFlag> = poly
                        .arrows(c)
                        .map(|(v, _)| poly.vertex(v).flag)
                        .filter(|f| *f != VertexFlag::None)
                        .collect();
                    assert_eq!(flags.len() % 2, 0, "{}: {op:?}: odd flag count", case.name);
                    for pair in flags.windows(2) {
                        assert_ne!(pair[0], pair[1], "{}: {op:?}: repeated flag", case.name);
                    }
                }
            }
        }
    }
}

#[test]
fn crossing_flags_on_the_subject_match_the_direct_rule() {
    // At a pure crossing (no collinear contact on either side) the derived
    // subject flag must equal what the clipper rule table would assign to the
    // subject's own intersection type.
    for case in degenerate_corpus(17, 60) {
        for op in [BooleanOp::Intersection, BooleanOp::Union] {
            let (red, black) = marked_pair(&case, op);
            let black_types =
                classify_intersections(&black, &red, RULE).expect(case.name.as_str());
            for (v, t) in &black_types {
                if t.incoming.is_on() || t.outgoing.is_on() {
                    continue;
                }
                assert_eq!(
                    black.vertex(*v).flag,
                    flag_clipper_rule(*t, op),
                    "{}: {op:?}: at {}",
                    case.name,
                    black.vertex(*v).position
                );
            }
        }
    }
}

#[test]
fn rotating_the_input_rings_does_not_change_the_region() {
    for case in degenerate_corpus(13, 30) {
        let mut rotated = case.clone();
        for ring in rotated.clipper.iter_mut().chain(rotated.subject.iter_mut()) {
            let k = ring.len() / 2;
            ring.rotate_left(k);
        }
        let (c0, s0) = case.polygons().unwrap();
        let (c1, s1) = rotated.polygons().unwrap();
        for op in OPS {
            let base = clip(&c0, &s0, op, &ClipOptions::default()).unwrap();
            let moved = clip(&c1, &s1, op, &ClipOptions::default()).unwrap();
            assert_eq!(base.region, moved.region, "{}: {op:?}", case.name);
        }
    }
}

#[test]
fn collinear_midpoints_are_invisible_after_simplify() {
    let half = Scalar::from_ratio(1, 2);
    let midpoint = |a: &Point, b: &Point| {
        Point::new(
            (a.x.clone() + b.x.clone()) * half.clone(),
            (a.y.clone() + b.y.clone()) * half.clone(),
        )
    };
    let split_all = |rings: &[Vec<Point>]| -> Vec<Vec<Point>> {
        rings
            .iter()
            .map(|ring| {
                let mut out = Vec::with_capacity(ring.len() * 2);
                for (i, p) in ring.iter().enumerate() {
                    out.push(p.clone());
                    out.push(midpoint(p, &ring[(i + 1) % ring.len()]));
                }
                out
            })
            .collect()
    };
    let options = ClipOptions { simplify: true, ..ClipOptions::default() };
    for case in degenerate_corpus(19, 30) {
        let mut split = case.clone();
        split.clipper = split_all(&case.clipper);
        split.subject = split_all(&case.subject);
        let (c0, s0) = case.polygons().unwrap();
        let (c1, s1) = split.polygons().unwrap();
        for op in OPS {
            let base = clip(&c0, &s0, op, &options).unwrap();
            let dense = clip(&c1, &s1, op, &options).unwrap();
            assert_eq!(base.region, dense.region, "{}: {op:?}", case.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vicinity_hand_agrees_with_the_contour_hand(seed in any::<u64>()) {
        let case = generated_case(seed);
        let (clipper, subject) = case.polygons().unwrap();
        for poly in [&clipper, &subject] {
            for c in poly.contour_ids() {
                let hand = poly.contour_hand(c).unwrap();
                for (v, _) in poly.arrows(c) {
                    prop_assert_eq!(vicinity_hand(poly, v, RULE), hand);
                }
            }
        }
    }

    #[test]
    fn ray_and_winding_membership_agree(seed in any::<u64>(), px in -8i64..40, py in -8i64..40) {
        let case = generated_case(seed);
        let p = Point::new(Scalar::from_ratio(px, 8), Scalar::from_ratio(py, 8));
        for (rings, role) in [(&case.clipper, Role::Clipper), (&case.subject, Role::Subject)] {
            let poly = Polygon::from_contours(role, rings, None).unwrap();
            for rule in [RegionMembershipRule::NonzeroWinding, RegionMembershipRule::EvenOdd] {
                let expected = match ray_membership(&p, rings, rule) {
                    RaySample::Inside => Membership::In,
                    RaySample::Outside => Membership::Out,
                    RaySample::OnBoundary => Membership::OnBoundary,
                };
                prop_assert_eq!(point_in_polygon(&p, &poly, rule), expected);
            }
        }
    }
}
