//! En/ex flag assignment.
//!
//! The clipper ring is flagged first by a fixed lookup on each vertex's type
//! pair; the subject ring's flags are then derived vertex by vertex from the
//! linked clipper flag and the local hands. Two independent reformulations,
//! trial grouping with endpoint rules and the pair-mark algebra, exist to
//! cross-check the lookup and are exercised by tests, not by the pipeline.

use std::collections::BTreeMap;

use crate::classify::{vicinity_hand, IntersectionType, LocationMark, OverlapSense};
use crate::polygon::{Polygon, RegionMembershipRule, VertexFlag, VertexId};
use crate::BooleanOp;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MarkingError {
    #[error("subject flags requested before the clipper pass ran")]
    RedFlagsNotSet,
    #[error("pair marks of different senses cannot be added")]
    IncompatibleEnds,
}

/// Flag for one clipper intersection vertex, straight from its type pair.
///
/// Intersection: a vertex where the clipper's border passes from inside the
/// subject to not-inside closes a result stretch (`Ex`), the reverse opens
/// one (`En`). Union: the same transitions seen from outside, with the roles
/// swapped. The lookup is independent of either contour's hand.
pub fn flag_clipper_rule(v_type: IntersectionType, op: BooleanOp) -> VertexFlag {
    use LocationMark::{In, On, Out};
    assert!(op != BooleanOp::Difference, "difference is reduced before flagging");
    match op {
        BooleanOp::Intersection => match (v_type.incoming, v_type.outgoing) {
            (In, Out) | (In, On(_)) => VertexFlag::Ex,
            (Out, In) | (On(_), In) => VertexFlag::En,
            _ => VertexFlag::None,
        },
        BooleanOp::Union => match (v_type.incoming, v_type.outgoing) {
            (In, Out) | (On(_), Out) => VertexFlag::En,
            (Out, In) | (Out, On(_)) => VertexFlag::Ex,
            _ => VertexFlag::None,
        },
        BooleanOp::Difference => unreachable!(),
    }
}

/// Applies `flag_clipper_rule` to every intersection vertex. Returns how
/// many vertices got a flag; zero means the no-flags fallback applies.
pub fn flag_clipper(
    clipper: &mut Polygon,
    types: &BTreeMap<VertexId, IntersectionType>,
    op: BooleanOp,
) -> usize {
    let mut flagged = 0;
    for (&v, &t) in types {
        let flag = flag_clipper_rule(t, op);
        clipper.vertex_mut(v).flag = flag;
        if flag != VertexFlag::None {
            flagged += 1;
        }
    }
    clipper.flags_assigned = true;
    flagged
}

/// Flag of a subject vertex linked to a clipper vertex flagged `red_flag`,
/// given whether the two contours' hands agree at that point.
pub fn derive_subject_flag(red_flag: VertexFlag, same_hand: bool) -> VertexFlag {
    match (red_flag, same_hand) {
        (VertexFlag::En, true) => VertexFlag::Ex,
        (VertexFlag::En, false) => VertexFlag::En,
        (VertexFlag::Ex, true) => VertexFlag::En,
        (VertexFlag::Ex, false) => VertexFlag::Ex,
        (VertexFlag::None, _) => VertexFlag::None,
    }
}

/// Derives every subject flag from the linked clipper flags.
///
/// Hands are taken per vertex as the side on which each polygon's region
/// lies locally, so hole rings compare correctly. With `complemented` set
/// the clipper stands for the complement of its region (the difference
/// reduction) and its hand flips, since the region lies on the other side.
pub fn flag_subject(
    clipper: &Polygon,
    clipper_rule: RegionMembershipRule,
    subject: &mut Polygon,
    subject_rule: RegionMembershipRule,
    complemented: bool,
) -> Result<(), MarkingError> {
    if !clipper.flags_assigned {
        return Err(MarkingError::RedFlagsNotSet);
    }
    let black_ids: Vec<VertexId> = subject.intersection_vertices().collect();
    for b in black_ids {
        let r = subject.vertex(b).neighbor.expect("intersection vertices are linked");
        let red_flag = clipper.vertex(r).flag;
        let flag = if red_flag == VertexFlag::None {
            VertexFlag::None
        } else {
            let mut red_hand = vicinity_hand(clipper, r, clipper_rule);
            if complemented {
                red_hand = red_hand.flipped();
            }
            let black_hand = vicinity_hand(subject, b, subject_rule);
            derive_subject_flag(red_flag, red_hand == black_hand)
        };
        subject.vertex_mut(b).flag = flag;
    }
    subject.flags_assigned = true;
    Ok(())
}

/// Difference as intersection with the complement: the clipper's contours
/// are reversed and the op becomes Intersection. Callers must remember the
/// complement when interpreting clipper-region membership afterwards.
pub fn reduce_difference(clipper: &Polygon, subject: &Polygon) -> (Polygon, Polygon, BooleanOp) {
    (clipper.reversed(), subject.clone(), BooleanOp::Intersection)
}

/// A maximal run of clipper intersection vertices joined by coinciding
/// arrows of one sense, or an isolated intersection vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    /// Ring-ordered vertices; a single element for an isolated vertex.
    pub vertices: Vec<VertexId>,
    /// Sense of the connecting arrows; `None` for one-vertex trials.
    pub sense: Option<OverlapSense>,
    /// True when the run closes on itself around the whole ring, leaving no
    /// endpoints (fully coinciding contours).
    pub closed: bool,
}

impl Trial {
    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("trials are never empty")
    }

    /// The (first incoming, last outgoing) marks naming the trial's kind.
    pub fn ends(&self, types: &BTreeMap<VertexId, IntersectionType>) -> (LocationMark, LocationMark) {
        (types[&self.first()].incoming, types[&self.last()].outgoing)
    }
}

/// Groups the intersection vertices of every clipper contour into trials.
///
/// Two ring-adjacent intersection vertices bond when the arrow between them
/// is `On`; maximal same-sense bonded runs form the trials. Where the sense
/// changes the run is split and the boundary vertex belongs to both runs
/// (it can be flagged by neither, its marks being `On` on both sides).
pub fn group_trials(
    poly: &Polygon,
    types: &BTreeMap<VertexId, IntersectionType>,
) -> Vec<Trial> {
    let mut trials = Vec::new();
    for contour in poly.contour_ids() {
        let seq: Vec<VertexId> =
            poly.ring(contour).filter(|v| poly.vertex(*v).is_intersection).collect();
        let n = seq.len();
        if n == 0 {
            continue;
        }
        // bond[i] joins seq[i] to seq[(i+1) % n].
        let bond: Vec<Option<OverlapSense>> = seq
            .iter()
            .map(|v| match types[v].outgoing {
                LocationMark::On(s) => Some(s),
                _ => None,
            })
            .collect();
        let uniform = bond.iter().all(|b| *b == bond[0]);
        if uniform && bond[0].is_some() {
            trials.push(Trial { vertices: seq, sense: bond[0], closed: true });
            continue;
        }
        let mut in_run = vec![false; n];
        for i in 0..n {
            let starts_run = bond[i].is_some() && bond[(i + n - 1) % n] != bond[i];
            if !starts_run {
                continue;
            }
            let mut vertices = vec![seq[i]];
            let mut j = i;
            while bond[j] == bond[i] {
                in_run[j] = true;
                j = (j + 1) % n;
                vertices.push(seq[j]);
                in_run[j] = true;
            }
            trials.push(Trial { vertices, sense: bond[i], closed: false });
        }
        for i in 0..n {
            if !in_run[i] {
                trials.push(Trial { vertices: vec![seq[i]], sense: None, closed: false });
            }
        }
    }
    trials
}

/// The endpoint rules, as an independent path to the same flags: a trial end
/// whose outward-facing mark is `In` gets flagged (`Ex` at the first vertex,
/// `En` at the last), everything else stays unflagged. Intersection only.
pub fn flag_by_trial_ends(
    trials: &[Trial],
    types: &BTreeMap<VertexId, IntersectionType>,
) -> BTreeMap<VertexId, VertexFlag> {
    let mut flags: BTreeMap<VertexId, VertexFlag> = BTreeMap::new();
    for (&v, _) in types {
        flags.insert(v, VertexFlag::None);
    }
    for trial in trials {
        if trial.closed {
            continue;
        }
        if trial.vertices.len() == 1 {
            let t = types[&trial.first()];
            debug_assert!(!t.incoming.is_on() && !t.outgoing.is_on());
            let flag = match (t.incoming, t.outgoing) {
                (LocationMark::In, LocationMark::Out) => VertexFlag::Ex,
                (LocationMark::Out, LocationMark::In) => VertexFlag::En,
                _ => VertexFlag::None,
            };
            flags.insert(trial.first(), flag);
            continue;
        }
        let (first_mark, last_mark) = trial.ends(types);
        if first_mark == LocationMark::In {
            flags.insert(trial.first(), VertexFlag::Ex);
        }
        if last_mark == LocationMark::In {
            flags.insert(trial.last(), VertexFlag::En);
        }
    }
    flags
}

/// One component of a pair mark: what the respective overlapping contour
/// part contributes at a trial end.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PairComponent {
    En,
    Ex,
    Zero,
}

impl PairComponent {
    pub fn to_flag(self) -> VertexFlag {
        match self {
            PairComponent::En => VertexFlag::En,
            PairComponent::Ex => VertexFlag::Ex,
            PairComponent::Zero => VertexFlag::None,
        }
    }
}

/// Mark of a fundamental trial end written as (first-vertex, last-vertex)
/// contributions.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct PairMark {
    pub first: PairComponent,
    pub last: PairComponent,
}

impl PairMark {
    pub fn new(first: PairComponent, last: PairComponent) -> Self {
        PairMark { first, last }
    }
}

/// A trial end that is one of the eight fundamental on intersections: one
/// arrow in or out, the other on with a sense.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct FundamentalEnd {
    pub mark: PairMark,
    pub sense: OverlapSense,
}

/// The pair mark of a fundamental on intersection, or `None` when the type
/// pair is not fundamental (no `On` arrow, both `On`, or an `On` pair).
pub fn fundamental_pair_mark(t: IntersectionType) -> Option<FundamentalEnd> {
    use LocationMark::{In, On, Out};
    use PairComponent::{En, Ex, Zero};
    let (mark, sense) = match (t.incoming, t.outgoing) {
        (In, On(s)) => (PairMark::new(Ex, Zero), s),
        (On(s), In) => (PairMark::new(Zero, En), s),
        (Out, On(s)) | (On(s), Out) => (PairMark::new(Zero, Zero), s),
        _ => return None,
    };
    Some(FundamentalEnd { mark, sense })
}

/// Adds the pair marks of a trial's two ends componentwise: the non-zero
/// component wins a slot. Ends of differing senses, or two non-zero
/// contributions to one slot, cannot belong to one trial.
pub fn pair_mark_sum(first_end: &FundamentalEnd, last_end: &FundamentalEnd) -> Result<PairMark, MarkingError> {
    if first_end.sense != last_end.sense {
        return Err(MarkingError::IncompatibleEnds);
    }
    let add = |a: PairComponent, b: PairComponent| match (a, b) {
        (PairComponent::Zero, x) => Ok(x),
        (x, PairComponent::Zero) => Ok(x),
        _ => Err(MarkingError::IncompatibleEnds),
    };
    Ok(PairMark {
        first: add(first_end.mark.first, last_end.mark.first)?,
        last: add(first_end.mark.last, last_end.mark.last)?,
    })
}
