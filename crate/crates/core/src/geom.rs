//! Exact planar primitives: points, segments, and the three predicates the
//! clipping phases are built on. The segment intersection reports collinear
//! overlaps explicitly instead of perturbing them away.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn vector_to(&self, other: &Point) -> Vec2 {
        Vec2 { x: &other.x - &self.x, y: &other.y - &self.y }
    }

    pub fn translate(&self, v: &Vec2) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = Scalar::from_ratio(1, 2);
        Point::new((&self.x + &other.x) * half.clone(), (&self.y + &other.y) * half)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A displacement. Kept separate from `Point` so dot/cross products read as
/// vector algebra, not coordinate soup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vec2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Vec2 {
    pub fn new(x: Scalar, y: Scalar) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn cross(&self, other: &Vec2) -> Scalar {
        &(&self.x * &other.y) - &(&self.y * &other.x)
    }

    pub fn dot(&self, other: &Vec2) -> Scalar {
        &(&self.x * &other.x) + &(&self.y * &other.y)
    }

    /// Rotated a quarter turn counterclockwise; points to the left of `self`.
    pub fn left_normal(&self) -> Vec2 {
        Vec2 { x: -&self.y, y: self.x.clone() }
    }

    pub fn scaled(&self, k: &Scalar) -> Vec2 {
        Vec2 { x: &self.x * k, y: &self.y * k }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// True when `other` points along the same ray as `self`.
    pub fn same_direction(&self, other: &Vec2) -> bool {
        self.cross(other).is_zero() && self.dot(other).is_positive()
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Orientation {
    /// `r` lies to the left of the directed line `p -> q` (positive cross).
    Left,
    /// `r` lies to the right of the directed line `p -> q` (negative cross).
    Right,
    Collinear,
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let cross = p.vector_to(q).cross(&p.vector_to(r));
    match cross.cmp_zero() {
        std::cmp::Ordering::Greater => Orientation::Left,
        std::cmp::Ordering::Less => Orientation::Right,
        std::cmp::Ordering::Equal => Orientation::Collinear,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("zero-length segment at {0}")]
    ZeroLengthSegment(Point),
}

/// A directed segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::ZeroLengthSegment(a));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn direction(&self) -> Vec2 {
        self.a.vector_to(&self.b)
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(&self.b)
    }

    pub fn reversed(&self) -> Segment {
        Segment { a: self.b.clone(), b: self.a.clone() }
    }

    /// Same carrier and same endpoint set, either direction.
    pub fn coincides_with(&self, other: &Segment) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }

    /// The point at parameter `t` along `a -> b`.
    pub fn point_at(&self, t: &Scalar) -> Point {
        self.a.translate(&self.direction().scaled(t))
    }

    /// Parameter of a point known to be collinear with the segment.
    pub fn parameter_of(&self, p: &Point) -> Scalar {
        let d = self.direction();
        let ap = self.a.vector_to(p);
        ap.dot(&d) / d.dot(&d)
    }
}

/// Closed-endpoint containment test.
pub fn point_on_segment(p: &Point, s: &Segment) -> bool {
    if orientation(s.a(), s.b(), p) != Orientation::Collinear {
        return false;
    }
    let t = s.parameter_of(p);
    !t.is_negative() && t <= Scalar::one()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SegmentIntersection {
    Empty,
    /// A single common point; includes endpoint touches and crossings.
    SinglePoint(Point),
    /// A common sub-segment of positive length, oriented along the first
    /// segment's direction.
    Overlap(Segment),
}

/// Exact intersection of two closed segments. Collinear configurations are
/// resolved into `Empty`, a shared endpoint, or a positive-length overlap.
pub fn intersect_segments(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let r = s1.direction();
    let s = s2.direction();
    let denom = r.cross(&s);
    let offset = s1.a().vector_to(s2.a());
    if !denom.is_zero() {
        let t = offset.cross(&s) / denom.clone();
        let u = offset.cross(&r) / denom;
        let unit = |v: &Scalar| !v.is_negative() && *v <= Scalar::one();
        if unit(&t) && unit(&u) {
            return SegmentIntersection::SinglePoint(s1.point_at(&t));
        }
        return SegmentIntersection::Empty;
    }
    if !offset.cross(&r).is_zero() {
        return SegmentIntersection::Empty; // parallel, different carriers
    }
    // Collinear: compare parameters of s2's endpoints along s1.
    let t0 = s1.parameter_of(s2.a());
    let t1 = s1.parameter_of(s2.b());
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = lo.max(Scalar::zero());
    let hi = hi.min(Scalar::one());
    match lo.cmp(&hi) {
        std::cmp::Ordering::Greater => SegmentIntersection::Empty,
        std::cmp::Ordering::Equal => SegmentIntersection::SinglePoint(s1.point_at(&lo)),
        std::cmp::Ordering::Less => {
            let a = s1.point_at(&lo);
            let b = s1.point_at(&hi);
            SegmentIntersection::Overlap(Segment::new(a, b).expect("positive-length overlap"))
        }
    }
}
