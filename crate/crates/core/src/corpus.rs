//! Deterministic generators for boundary-degenerate input pairs.
//!
//! Every generated coordinate sits on the quarter-unit grid over `[0, 4]^2`,
//! so paired shapes collide in exactly the configurations the marking rule
//! has to survive: shared edge runs, vertices landing on the other ring's
//! edges or vertices, and collinear pass-throughs. The generators are pure
//! functions of their seed; a given `(seed, count)` always reproduces the
//! same cases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;
use crate::polygon::{Hand, Polygon, PolygonError, Role};
use crate::scalar::Scalar;

/// A named clipper/subject input pair, kept as raw contour points so callers
/// can perturb them (start rotation, collinear midpoint insertion) before
/// building polygons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusCase {
    pub name: String,
    pub clipper: Vec<Vec<Point>>,
    /// Declared hand for self-touching clipper contours; `None` for simple ones.
    pub clipper_hand: Option<Hand>,
    pub subject: Vec<Vec<Point>>,
    pub subject_hand: Option<Hand>,
}

impl CorpusCase {
    fn plain(name: &str, clipper: Vec<Vec<Point>>, subject: Vec<Vec<Point>>) -> CorpusCase {
        CorpusCase {
            name: name.to_string(),
            clipper,
            clipper_hand: None,
            subject,
            subject_hand: None,
        }
    }

    pub fn polygons(&self) -> Result<(Polygon, Polygon), PolygonError> {
        let clipper = Polygon::from_contours(Role::Clipper, &self.clipper, self.clipper_hand)?;
        let subject = Polygon::from_contours(Role::Subject, &self.subject, self.subject_hand)?;
        Ok((clipper, subject))
    }
}

/// Point at `(x/4, y/4)`.
fn qpt(x: i64, y: i64) -> Point {
    Point::new(Scalar::from_ratio(x, 4), Scalar::from_ratio(y, 4))
}

fn qring(points: &[(i64, i64)]) -> Vec<Point> {
    points.iter().map(|&(x, y)| qpt(x, y)).collect()
}

fn ring(points: &[(i64, i64)]) -> Vec<Point> {
    points.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
}

/// Histogram over the baseline `y = 0`: columns of random quarter-grid
/// heights spanning `[0, 4]`. Equal adjacent heights deliberately leave a
/// collinear vertex in the top profile.
fn histogram(rng: &mut ChaCha8Rng) -> Vec<Point> {
    let columns = rng.gen_range(2..=6usize);
    let mut breaks: Vec<i64> = (1..16).collect();
    breaks.shuffle(rng);
    breaks.truncate(columns - 1);
    breaks.sort_unstable();
    breaks.insert(0, 0);
    breaks.push(16);
    let heights: Vec<i64> = (0..columns).map(|_| rng.gen_range(1..=16)).collect();

    let mut points = vec![qpt(0, 0), qpt(16, 0), qpt(16, heights[columns - 1])];
    for i in (1..columns).rev() {
        points.push(qpt(breaks[i], heights[i]));
        if heights[i - 1] != heights[i] {
            points.push(qpt(breaks[i], heights[i - 1]));
        }
    }
    points.push(qpt(0, heights[0]));
    points
}

/// Monotone staircase from `(0, 0)` to `(4, 4)`, closed through `(4, 0)`.
fn staircase(rng: &mut ChaCha8Rng) -> Vec<Point> {
    let steps = rng.gen_range(2..=5usize);
    let composition = |rng: &mut ChaCha8Rng| {
        let mut cuts: Vec<i64> = (1..16).collect();
        cuts.shuffle(rng);
        cuts.truncate(steps - 1);
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(16);
        cuts
    };
    let ys = composition(rng);
    let xs = composition(rng);

    let mut points = vec![qpt(0, 0)];
    for i in 0..steps {
        points.push(qpt(xs[i], ys[i + 1]));
        points.push(qpt(xs[i + 1], ys[i + 1]));
    }
    points.push(qpt(16, 0));
    points
}

fn transpose(points: Vec<Point>) -> Vec<Point> {
    points.into_iter().map(|p| Point::new(p.y, p.x)).collect()
}

fn flip_vertical(points: Vec<Point>) -> Vec<Point> {
    let top = Scalar::from_int(4);
    points.into_iter().map(|p| Point::new(p.x, top.clone() - p.y)).collect()
}

fn maybe_reverse(rng: &mut ChaCha8Rng, mut points: Vec<Point>) -> Vec<Point> {
    if rng.gen_bool(0.5) {
        points.reverse();
    }
    points
}

fn fixtures() -> Vec<CorpusCase> {
    let square = |x0: i64, y0: i64, x1: i64, y1: i64| qring(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)]);
    vec![
        CorpusCase::plain(
            "fixed-identical-squares",
            vec![square(0, 0, 8, 8)],
            vec![square(0, 0, 8, 8)],
        ),
        CorpusCase::plain(
            "fixed-shared-edge",
            vec![square(4, 0, 8, 4)],
            vec![square(0, 0, 4, 4)],
        ),
        CorpusCase::plain(
            "fixed-nested",
            vec![square(4, 4, 12, 12)],
            vec![square(0, 0, 16, 16)],
        ),
        CorpusCase::plain(
            "fixed-disjoint",
            vec![square(0, 0, 4, 4)],
            vec![square(12, 0, 16, 4)],
        ),
        CorpusCase::plain(
            "fixed-corner-touch",
            vec![square(0, 0, 4, 4)],
            vec![square(4, 4, 8, 8)],
        ),
        CorpusCase::plain(
            "fixed-donut-bar",
            vec![
                square(0, 0, 16, 16),
                qring(&[(7, 7), (7, 9), (9, 9), (9, 7)]),
            ],
            vec![square(-4, 6, 20, 10)],
        ),
        CorpusCase::plain(
            "fixed-donut-plug",
            vec![square(7, 7, 9, 9)],
            vec![
                square(0, 0, 16, 16),
                qring(&[(7, 7), (7, 9), (9, 9), (9, 7)]),
            ],
        ),
        CorpusCase::plain(
            "fixed-notch-overlap",
            vec![qring(&[(0, 0), (16, 0), (16, 8), (8, 8), (8, 16), (0, 16)])],
            vec![square(4, 4, 12, 12)],
        ),
    ]
}

/// Clipper/subject pairs dense in boundary degeneracies. The first few cases
/// are fixed shapes; the rest are seeded histogram and staircase pairs with
/// independently random orientations.
pub fn degenerate_corpus(seed: u64, count: usize) -> Vec<CorpusCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = fixtures();
    cases.truncate(count);
    let mut index = 0usize;
    while cases.len() < count {
        let clipper = match rng.gen_range(0..2) {
            0 => histogram(&mut rng),
            _ => staircase(&mut rng),
        };
        let subject = match rng.gen_range(0..4) {
            0 => histogram(&mut rng),
            1 => transpose(histogram(&mut rng)),
            2 => flip_vertical(histogram(&mut rng)),
            _ => staircase(&mut rng),
        };
        cases.push(CorpusCase::plain(
            &format!("gen-{index:04}"),
            vec![maybe_reverse(&mut rng, clipper)],
            vec![maybe_reverse(&mut rng, subject)],
        ));
        index += 1;
    }
    cases
}

/// Single-contour clippers against the square `[0, 8]^2`, one per bonded-run
/// configuration: both run senses crossed with every in/out end combination,
/// the four single-vertex touch kinds, and a vertex-on-vertex contact.
///
/// Names encode `(incoming, outgoing)` end memberships and the run sense.
pub fn trial_suite() -> Vec<CorpusCase> {
    let black = ring(&[(0, 0), (8, 0), (8, 8), (0, 8)]);
    let case = |name: &str, red: &[(i64, i64)]| {
        CorpusCase::plain(name, vec![ring(red)], vec![black.clone()])
    };
    vec![
        case("run-in-out-con", &[(2, 2), (2, 0), (3, 0), (4, 0), (4, -2), (1, -2), (1, 2)]),
        case("run-in-out-opp", &[(4, 2), (4, 0), (3, 0), (2, 0), (2, -2), (5, -2), (5, 2)]),
        case("run-out-in-con", &[(2, -2), (2, 0), (3, 0), (4, 0), (4, 2), (5, 2), (5, -2)]),
        case("run-out-in-opp", &[(4, -2), (4, 0), (3, 0), (2, 0), (2, 2), (1, 2), (1, -2)]),
        case("run-in-in-con", &[(2, 2), (2, 0), (3, 0), (4, 0), (4, 2)]),
        case(
            "run-in-in-opp",
            &[(6, -2), (6, 1), (4, 1), (4, 0), (3, 0), (2, 0), (2, 1), (1, 1), (1, -2)],
        ),
        case(
            "run-out-out-con",
            &[(4, -2), (6, -2), (6, 3), (1, 3), (1, -2), (2, -2), (2, 0), (3, 0), (4, 0)],
        ),
        case("run-out-out-opp", &[(4, -2), (4, 0), (3, 0), (2, 0), (2, -2)]),
        case("touch-in-in", &[(2, 0), (5, 2), (2, 4)]),
        case("touch-out-out", &[(2, 0), (1, -2), (3, -2)]),
        case("touch-crossings", &[(2, -1), (4, -1), (4, 1), (2, 1)]),
        case("touch-corner-vertex", &[(0, 0), (1, -1), (2, 0), (1, 1)]),
    ]
}

/// Pairs whose rings meet at a clipper self-intersection point. Feeding any
/// of them to the pipeline must fail loudly rather than emit a result.
pub fn scope_cases() -> Vec<CorpusCase> {
    let bowtie = ring(&[(0, 0), (4, 4), (4, 0), (0, 4)]);
    let pinch = ring(&[(0, 0), (4, 0), (2, 2), (4, 4), (0, 4), (2, 2)]);
    vec![
        CorpusCase {
            name: "scope-bowtie-on-edge".to_string(),
            clipper: vec![bowtie.clone()],
            clipper_hand: Some(Hand::Left),
            subject: vec![ring(&[(2, 1), (6, 1), (6, 3), (2, 3)])],
            subject_hand: None,
        },
        CorpusCase {
            name: "scope-pinch-on-vertex".to_string(),
            clipper: vec![pinch],
            clipper_hand: Some(Hand::Left),
            subject: vec![ring(&[(2, 2), (6, 2), (6, 6), (2, 6)])],
            subject_hand: None,
        },
        CorpusCase {
            name: "scope-subject-bowtie".to_string(),
            clipper: vec![ring(&[(2, 1), (6, 1), (6, 3), (2, 3)])],
            clipper_hand: None,
            subject: vec![bowtie],
            subject_hand: Some(Hand::Left),
        },
    ]
}
