//! Polygons as doubly linked vertex rings.
//!
//! Vertices live in a per-polygon arena and are addressed by index, so rings
//! can grow in place while intersection vertices are threaded in. A vertex
//! flagged as an intersection carries a link to its twin vertex in the other
//! polygon; the clipping phases communicate exclusively through these links
//! and the `En`/`Ex` flags.

use std::fmt;

use crate::geom::{intersect_segments, GeomError, Point, Segment, SegmentIntersection};
use crate::scalar::Scalar;

/// Side of the traversal direction on which a region lies.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Hand {
    /// Interior to the left of traversal (positive signed area for a simple contour).
    Left,
    /// Interior to the right of traversal.
    Right,
}

impl Hand {
    pub fn flipped(self) -> Hand {
        match self {
            Hand::Left => Hand::Right,
            Hand::Right => Hand::Left,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Role {
    Clipper,
    Subject,
}

/// Traversal flag on an intersection vertex. `En` opens a stretch of result
/// border on its ring, `Ex` closes one.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum VertexFlag {
    #[default]
    None,
    En,
    Ex,
}

/// How membership of a point in a polygon's region is decided.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum RegionMembershipRule {
    #[default]
    NonzeroWinding,
    EvenOdd,
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ContourId(pub usize);

#[derive(Clone, Debug)]
pub struct Vertex {
    pub position: Point,
    pub next: VertexId,
    pub prev: VertexId,
    pub contour: ContourId,
    pub is_intersection: bool,
    /// Twin vertex in the other polygon; set for every intersection vertex.
    pub neighbor: Option<VertexId>,
    pub flag: VertexFlag,
    pub processed: bool,
}

#[derive(Clone, Debug)]
pub struct Contour {
    pub first: VertexId,
    /// Orientation promised by the caller for contours that self-intersect,
    /// where signed area is not trustworthy.
    pub declared_hand: Option<Hand>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("contour {contour} has {got} vertices, need at least 3")]
    TooFewVertices { contour: usize, got: usize },
    #[error("contour {contour}: consecutive duplicate point {point} at vertex {vertex}")]
    DuplicateConsecutivePoint { contour: usize, vertex: usize, point: Point },
    #[error("point {0} does not lie on the given edge")]
    PointNotOnEdge(Point),
    #[error("vertices {0:?} and {1:?} are not a ring edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("contour self-intersects and has no declared hand")]
    SelfIntersectingWithoutDeclaredHand,
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

#[derive(Clone, Debug)]
pub struct Polygon {
    pub role: Role,
    /// Set once a flagging pass has run over this polygon's intersection
    /// vertices; the subject pass refuses to run before the clipper's.
    pub flags_assigned: bool,
    vertices: Vec<Vertex>,
    contours: Vec<Contour>,
}

impl Polygon {
    pub fn new(role: Role) -> Self {
        Polygon { role, flags_assigned: false, vertices: Vec::new(), contours: Vec::new() }
    }

    /// Builds a polygon in one call; every contour gets the same declared hand.
    pub fn from_contours(
        role: Role,
        contours: &[Vec<Point>],
        declared_hand: Option<Hand>,
    ) -> Result<Self, PolygonError> {
        let mut poly = Polygon::new(role);
        for points in contours {
            let id = poly.build_contour(points)?;
            poly.contours[id.0].declared_hand = declared_hand;
        }
        Ok(poly)
    }

    /// Appends a closed contour from an open point list (the closing edge
    /// `last -> first` is implied, not repeated).
    pub fn build_contour(&mut self, points: &[Point]) -> Result<ContourId, PolygonError> {
        let contour_index = self.contours.len();
        if points.len() < 3 {
            return Err(PolygonError::TooFewVertices { contour: contour_index, got: points.len() });
        }
        for (i, p) in points.iter().enumerate() {
            let succ = &points[(i + 1) % points.len()];
            if p == succ {
                return Err(PolygonError::DuplicateConsecutivePoint {
                    contour: contour_index,
                    vertex: i,
                    point: p.clone(),
                });
            }
        }
        let base = self.vertices.len();
        let n = points.len();
        let cid = ContourId(contour_index);
        for (i, p) in points.iter().enumerate() {
            self.vertices.push(Vertex {
                position: p.clone(),
                next: VertexId(base + (i + 1) % n),
                prev: VertexId(base + (i + n - 1) % n),
                contour: cid,
                is_intersection: false,
                neighbor: None,
                flag: VertexFlag::None,
                processed: false,
            });
        }
        self.contours.push(Contour { first: VertexId(base), declared_hand: None });
        Ok(cid)
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn vertex_mut(&mut self, id: VertexId) -> &mut Vertex {
        &mut self.vertices[id.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn contour_ids(&self) -> impl Iterator<Item = ContourId> {
        (0..self.contours.len()).map(ContourId)
    }

    pub fn contour(&self, id: ContourId) -> &Contour {
        &self.contours[id.0]
    }

    pub fn contour_mut(&mut self, id: ContourId) -> &mut Contour {
        &mut self.contours[id.0]
    }

    pub fn contour_count(&self) -> usize {
        self.contours.len()
    }

    /// Vertex ids around a contour, starting at its first vertex.
    pub fn ring(&self, id: ContourId) -> RingIter<'_> {
        RingIter { poly: self, start: self.contours[id.0].first, current: Some(self.contours[id.0].first) }
    }

    pub fn ring_positions(&self, id: ContourId) -> Vec<Point> {
        self.ring(id).map(|v| self.vertex(v).position.clone()).collect()
    }

    /// Directed edges of a contour as (tail, head) vertex pairs.
    pub fn arrows(&self, id: ContourId) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.ring(id).map(move |v| (v, self.vertex(v).next))
    }

    pub fn all_arrows(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.contour_ids().flat_map(move |c| self.arrows(c))
    }

    pub fn arrow_segment(&self, tail: VertexId) -> Segment {
        let head = self.vertex(tail).next;
        Segment::new(self.vertex(tail).position.clone(), self.vertex(head).position.clone())
            .expect("ring edges have distinct endpoints")
    }

    pub fn intersection_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_ids().filter(move |v| self.vertex(*v).is_intersection)
    }

    /// Splits the ring edge `tail -> head` at `p`, which must lie on the open
    /// edge between the two ring positions. If `p` equals one of the edge's
    /// endpoints, that existing vertex is flagged as an intersection instead
    /// and no vertex is inserted. Returns the vertex now sitting at `p`.
    ///
    /// With several insertions on one original edge the method keeps the
    /// along-edge order: `head` may already have been split off, so the walk
    /// compares exact edge parameters until it passes `p`.
    pub fn insert_vertex_on_edge(
        &mut self,
        tail: VertexId,
        head: VertexId,
        p: &Point,
    ) -> Result<VertexId, PolygonError> {
        let tail_pos = self.vertex(tail).position.clone();
        let head_pos = self.vertex(head).position.clone();
        let edge = Segment::new(tail_pos.clone(), head_pos.clone())?;
        if *p == tail_pos {
            self.vertex_mut(tail).is_intersection = true;
            return Ok(tail);
        }
        if *p == head_pos {
            self.vertex_mut(head).is_intersection = true;
            return Ok(head);
        }
        if !crate::geom::point_on_segment(p, &edge) {
            return Err(PolygonError::PointNotOnEdge(p.clone()));
        }
        let t = edge.parameter_of(p);
        // Walk past earlier insertions on this original edge.
        let mut before = tail;
        loop {
            let succ = self.vertex(before).next;
            if succ == head {
                break;
            }
            let succ_pos = &self.vertex(succ).position;
            if !crate::geom::point_on_segment(succ_pos, &edge) {
                return Err(PolygonError::NotAnEdge(tail, head));
            }
            let t_succ = edge.parameter_of(succ_pos);
            if t_succ == t {
                self.vertex_mut(succ).is_intersection = true;
                return Ok(succ);
            }
            if t_succ > t {
                break;
            }
            before = succ;
        }
        let after = self.vertex(before).next;
        let id = VertexId(self.vertices.len());
        let contour = self.vertex(tail).contour;
        self.vertices.push(Vertex {
            position: p.clone(),
            next: after,
            prev: before,
            contour,
            is_intersection: true,
            neighbor: None,
            flag: VertexFlag::None,
            processed: false,
        });
        self.vertex_mut(before).next = id;
        self.vertex_mut(after).prev = id;
        Ok(id)
    }

    /// Twice the signed area of a contour (positive for counterclockwise).
    pub fn contour_signed_area_doubled(&self, id: ContourId) -> Scalar {
        let mut sum = Scalar::zero();
        for (a, b) in self.arrows(id) {
            let pa = &self.vertex(a).position;
            let pb = &self.vertex(b).position;
            sum = sum + (&pa.x * &pb.y - &pa.y * &pb.x);
        }
        sum
    }

    /// The hand of a contour: its declared hand if set, otherwise derived
    /// from signed area, which requires the contour to be simple.
    pub fn contour_hand(&self, id: ContourId) -> Result<Hand, PolygonError> {
        if let Some(h) = self.contours[id.0].declared_hand {
            return Ok(h);
        }
        if !self.contour_is_simple(id) {
            return Err(PolygonError::SelfIntersectingWithoutDeclaredHand);
        }
        match self.contour_signed_area_doubled(id).cmp_zero() {
            std::cmp::Ordering::Greater => Ok(Hand::Left),
            std::cmp::Ordering::Less => Ok(Hand::Right),
            std::cmp::Ordering::Equal => Err(PolygonError::SelfIntersectingWithoutDeclaredHand),
        }
    }

    /// True when no two edges of the contour meet outside shared ring
    /// endpoints and no position repeats.
    pub fn contour_is_simple(&self, id: ContourId) -> bool {
        let ids: Vec<VertexId> = self.ring(id).collect();
        let n = ids.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.vertex(ids[i]).position == self.vertex(ids[j]).position {
                    return false;
                }
            }
        }
        let segs: Vec<Segment> = ids.iter().map(|&v| self.arrow_segment(v)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                match intersect_segments(&segs[i], &segs[j]) {
                    SegmentIntersection::Empty => {}
                    SegmentIntersection::SinglePoint(p) => {
                        if !adjacent {
                            return false;
                        }
                        let shared = if j == i + 1 { segs[i].b() } else { segs[i].a() };
                        if p != *shared {
                            return false;
                        }
                    }
                    SegmentIntersection::Overlap(_) => return false,
                }
            }
        }
        true
    }

    /// A copy with every contour's traversal direction reversed. Declared
    /// hands flip with the geometry.
    pub fn reversed(&self) -> Polygon {
        let mut out = Polygon::new(self.role);
        for c in self.contour_ids() {
            let mut pts = self.ring_positions(c);
            pts.reverse();
            let id = out.build_contour(&pts).expect("reversing a valid contour keeps it valid");
            out.contours[id.0].declared_hand = self.contours[c.0].declared_hand.map(Hand::flipped);
        }
        out
    }

    /// Bounding box over all vertices, if the polygon has any.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.vertices.iter();
        let first = it.next()?;
        let (mut min_x, mut min_y) = (first.position.x.clone(), first.position.y.clone());
        let (mut max_x, mut max_y) = (min_x.clone(), min_y.clone());
        for v in it {
            min_x = min_x.min(v.position.x.clone());
            min_y = min_y.min(v.position.y.clone());
            max_x = max_x.max(v.position.x.clone());
            max_y = max_y.max(v.position.y.clone());
        }
        Some((Point::new(min_x, min_y), Point::new(max_x, max_y)))
    }
}

pub struct RingIter<'a> {
    poly: &'a Polygon,
    start: VertexId,
    current: Option<VertexId>,
}

impl Iterator for RingIter<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        let cur = self.current?;
        let next = self.poly.vertex(cur).next;
        self.current = if next == self.start { None } else { Some(next) };
        Some(cur)
    }
}

impl fmt::Display for VertexFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexFlag::None => write!(f, "-"),
            VertexFlag::En => write!(f, "en"),
            VertexFlag::Ex => write!(f, "ex"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point_on_segment;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn square() -> Vec<Point> {
        vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]
    }

    #[test]
    fn build_contour_links_a_ring() {
        let mut poly = Polygon::new(Role::Subject);
        let c = poly.build_contour(&square()).unwrap();
        let ids: Vec<VertexId> = poly.ring(c).collect();
        assert_eq!(ids.len(), 4);
        for &v in &ids {
            let vert = poly.vertex(v);
            assert_eq!(poly.vertex(vert.next).prev, v);
            assert_eq!(poly.vertex(vert.prev).next, v);
            assert!(!vert.is_intersection);
        }
        assert_eq!(poly.ring_positions(c), square());
    }

    #[test]
    fn build_contour_rejects_short_and_duplicate_input() {
        let mut poly = Polygon::new(Role::Subject);
        assert_eq!(
            poly.build_contour(&[pt(0, 0), pt(1, 0)]),
            Err(PolygonError::TooFewVertices { contour: 0, got: 2 })
        );
        let dup = vec![pt(0, 0), pt(1, 0), pt(1, 0), pt(0, 1)];
        assert!(matches!(
            poly.build_contour(&dup),
            Err(PolygonError::DuplicateConsecutivePoint { vertex: 1, .. })
        ));
        // The implied closing edge counts too.
        let closed = vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 0)];
        assert!(matches!(
            poly.build_contour(&closed),
            Err(PolygonError::DuplicateConsecutivePoint { vertex: 3, .. })
        ));
    }

    #[test]
    fn insert_vertex_interior_point() {
        let mut poly = Polygon::new(Role::Subject);
        let c = poly.build_contour(&square()).unwrap();
        let ids: Vec<VertexId> = poly.ring(c).collect();
        let v = poly.insert_vertex_on_edge(ids[0], ids[1], &pt(1, 0)).unwrap();
        assert!(poly.vertex(v).is_intersection);
        assert_eq!(poly.vertex(v).position, pt(1, 0));
        assert_eq!(
            poly.ring_positions(c),
            vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 2), pt(0, 2)]
        );
    }

    #[test]
    fn insert_vertex_at_endpoint_flags_existing() {
        let mut poly = Polygon::new(Role::Subject);
        let c = poly.build_contour(&square()).unwrap();
        let ids: Vec<VertexId> = poly.ring(c).collect();
        let v = poly.insert_vertex_on_edge(ids[0], ids[1], &pt(2, 0)).unwrap();
        assert_eq!(v, ids[1]);
        assert!(poly.vertex(v).is_intersection);
        assert_eq!(poly.ring(c).count(), 4);
    }

    #[test]
    fn insert_vertex_off_edge_is_an_error() {
        let mut poly = Polygon::new(Role::Subject);
        let c = poly.build_contour(&square()).unwrap();
        let ids: Vec<VertexId> = poly.ring(c).collect();
        assert_eq!(
            poly.insert_vertex_on_edge(ids[0], ids[1], &pt(1, 1)),
            Err(PolygonError::PointNotOnEdge(pt(1, 1)))
        );
    }

    #[test]
    fn multiple_insertions_keep_edge_order() {
        let mut poly = Polygon::new(Role::Subject);
        let c = poly.build_contour(&[pt(0, 0), pt(8, 0), pt(8, 8), pt(0, 8)]).unwrap();
        let ids: Vec<VertexId> = poly.ring(c).collect();
        // Insert out of order; ring order must come out sorted by parameter.
        for x in [5, 1, 3, 7, 2] {
            poly.insert_vertex_on_edge(ids[0], ids[1], &pt(x, 0)).unwrap();
        }
        let xs: Vec<Point> = poly.ring_positions(c);
        assert_eq!(
            xs,
            vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0), pt(5, 0), pt(7, 0), pt(8, 0), pt(8, 8), pt(0, 8)]
        );
        // Re-inserting an existing point is a no-op returning the same vertex.
        let again = poly.insert_vertex_on_edge(ids[0], ids[1], &pt(3, 0)).unwrap();
        assert_eq!(poly.vertex(again).position, pt(3, 0));
        assert_eq!(poly.ring(c).count(), 9);
        // Every inserted point still lies on the original edge.
        let edge = Segment::new(pt(0, 0), pt(8, 0)).unwrap();
        for v in poly.ring(c).take(7) {
            assert!(point_on_segment(&poly.vertex(v).position, &edge));
        }
    }

    #[test]
    fn contour_hand_from_signed_area() {
        let mut poly = Polygon::new(Role::Subject);
        let ccw = poly.build_contour(&square()).unwrap();
        assert_eq!(poly.contour_hand(ccw), Ok(Hand::Left));
        let mut rev = square();
        rev.reverse();
        let cw = poly.build_contour(&rev).unwrap();
        assert_eq!(poly.contour_hand(cw), Ok(Hand::Right));
    }

    #[test]
    fn self_intersecting_contour_needs_declared_hand() {
        let bowtie = vec![pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)];
        let mut poly = Polygon::new(Role::Clipper);
        let c = poly.build_contour(&bowtie).unwrap();
        assert_eq!(poly.contour_hand(c), Err(PolygonError::SelfIntersectingWithoutDeclaredHand));
        poly.contour_mut(c).declared_hand = Some(Hand::Left);
        assert_eq!(poly.contour_hand(c), Ok(Hand::Left));
    }

    #[test]
    fn reversed_flips_order_and_declared_hand() {
        let mut poly = Polygon::new(Role::Clipper);
        let c = poly.build_contour(&square()).unwrap();
        poly.contour_mut(c).declared_hand = Some(Hand::Left);
        let rev = poly.reversed();
        assert_eq!(rev.ring_positions(ContourId(0)), vec![pt(0, 2), pt(2, 2), pt(2, 0), pt(0, 0)]);
        assert_eq!(rev.contour(ContourId(0)).declared_hand, Some(Hand::Right));
        assert_eq!(rev.contour_hand(ContourId(0)), Ok(Hand::Right));
    }
}
