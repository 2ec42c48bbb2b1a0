//! Figure-style plots: clipper drawn red, subject black, result region cyan,
//! En/Ex flags as labeled markers.
//!
//! Coordinates are converted to f64 for layout only; nothing here feeds back
//! into geometry. Clipper edges that coincide with subject edges are drawn
//! slightly offset so both remain visible; the offset exists only on screen.

use std::io::{self, Write};

use fixclip::geom::{intersect_segments, Segment, SegmentIntersection};
use fixclip::pipeline::{ClipOutcome, FlagMarker};
use fixclip::polygon::VertexFlag;
use fixclip::Point;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    margin: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn around<'a>(rings: impl Iterator<Item = &'a Vec<Point>>) -> Frame {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for ring in rings {
            for p in ring {
                min_x = min_x.min(p.x.to_f64());
                min_y = min_y.min(p.y.to_f64());
                max_x = max_x.max(p.x.to_f64());
                max_y = max_y.max(p.y.to_f64());
            }
        }
        if !min_x.is_finite() {
            (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
        }
        let span_x = (max_x - min_x).max(1e-9);
        let span_y = (max_y - min_y).max(1e-9);
        let scale = 560.0 / span_x.max(span_y);
        let margin = 40.0;
        Frame {
            min_x,
            max_y,
            scale,
            margin,
            width: span_x * scale + 2.0 * margin,
            height: span_y * scale + 2.0 * margin,
        }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        (
            (p.x.to_f64() - self.min_x) * self.scale + self.margin,
            (self.max_y - p.y.to_f64()) * self.scale + self.margin,
        )
    }
}

fn ring_path(frame: &Frame, ring: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in ring.iter().enumerate() {
        let (x, y) = frame.map(p);
        let verb = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{verb} {x:.2} {y:.2} "));
    }
    d.push('Z');
    d
}

fn edge_overlaps_any(edge: &Segment, others: &[Segment]) -> bool {
    others
        .iter()
        .any(|s| matches!(intersect_segments(edge, s), SegmentIntersection::Overlap(_)))
}

fn flag_label(flag: VertexFlag) -> &'static str {
    match flag {
        VertexFlag::En => "En",
        VertexFlag::Ex => "Ex",
        VertexFlag::None => "",
    }
}

fn ring_segments(rings: &[Vec<Point>]) -> Vec<Segment> {
    let mut segments = Vec::new();
    for ring in rings {
        for (i, p) in ring.iter().enumerate() {
            let q = &ring[(i + 1) % ring.len()];
            segments.push(Segment::new(p.clone(), q.clone()).expect("ring edges are nonzero"));
        }
    }
    segments
}

fn write_markers<W: Write>(
    w: &mut W,
    frame: &Frame,
    markers: &[FlagMarker],
    color: &str,
    label_dy: f64,
) -> io::Result<()> {
    for marker in markers {
        let (x, y) = frame.map(&marker.position);
        writeln!(w, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{color}"/>"#)?;
        writeln!(
            w,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" fill="{color}">{}</text>"#,
            x + 6.0,
            y + label_dy,
            flag_label(marker.flag),
        )?;
    }
    Ok(())
}

/// Writes the whole plot. Every input edge and every flagged vertex appears
/// exactly once.
pub fn write_svg<W: Write>(
    w: &mut W,
    clipper: &[Vec<Point>],
    subject: &[Vec<Point>],
    outcome: &ClipOutcome,
) -> io::Result<()> {
    let result_rings = outcome.region.rings();
    let frame =
        Frame::around(clipper.iter().chain(subject.iter()).chain(result_rings.iter()));

    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
        frame.width, frame.height, frame.width, frame.height
    )?;
    writeln!(w, r#"  <rect width="100%" height="100%" fill="white"/>"#)?;

    if !result_rings.is_empty() {
        let mut d = String::new();
        for ring in &result_rings {
            d.push_str(&ring_path(&frame, ring));
            d.push(' ');
        }
        writeln!(
            w,
            r#"  <path d="{}" fill="cyan" fill-opacity="0.45" fill-rule="nonzero" stroke="none"/>"#,
            d.trim_end()
        )?;
    }

    for ring in subject {
        writeln!(
            w,
            r#"  <path d="{}" fill="none" stroke="black" stroke-width="2.6"/>"#,
            ring_path(&frame, ring)
        )?;
    }

    // Clipper edges are drawn one by one so a red edge lying on a black edge
    // can be nudged sideways into a close parallel.
    let subject_segments = ring_segments(subject);
    for ring in clipper {
        for (i, p) in ring.iter().enumerate() {
            let q = &ring[(i + 1) % ring.len()];
            let edge = Segment::new(p.clone(), q.clone()).expect("ring edges are nonzero");
            let (mut x1, mut y1) = frame.map(p);
            let (mut x2, mut y2) = frame.map(q);
            if edge_overlaps_any(&edge, &subject_segments) {
                let (dx, dy) = (x2 - x1, y2 - y1);
                let len = (dx * dx + dy * dy).sqrt().max(1e-9);
                let (nx, ny) = (-dy / len * 2.5, dx / len * 2.5);
                x1 += nx;
                y1 += ny;
                x2 += nx;
                y2 += ny;
            }
            writeln!(
                w,
                r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="crimson" stroke-width="1.8"/>"#
            )?;
        }
    }

    write_markers(w, &frame, &outcome.subject_markers, "black", 16.0)?;
    write_markers(w, &frame, &outcome.clipper_markers, "crimson", -8.0)?;
    writeln!(w, "</svg>")
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixclip::pipeline::{clip, ClipOptions};
    use fixclip::polygon::{Polygon, Role};
    use fixclip::BooleanOp;

    fn square(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<Point> {
        vec![
            Point::from_ints(x0, y0),
            Point::from_ints(x1, y0),
            Point::from_ints(x1, y1),
            Point::from_ints(x0, y1),
        ]
    }

    fn plot(clipper: Vec<Vec<Point>>, subject: Vec<Vec<Point>>) -> String {
        let red = Polygon::from_contours(Role::Clipper, &clipper, None).unwrap();
        let black = Polygon::from_contours(Role::Subject, &subject, None).unwrap();
        let outcome =
            clip(&red, &black, BooleanOp::Intersection, &ClipOptions::default()).unwrap();
        let mut buffer = Vec::new();
        write_svg(&mut buffer, &clipper, &subject, &outcome).unwrap();
        String::from_utf8(buffer).unwrap()
    }

    #[test]
    fn every_edge_and_flag_is_drawn_once() {
        let text = plot(vec![square(1, 0, 3, 2)], vec![square(0, 0, 2, 2)]);
        assert!(text.starts_with("<?xml"));
        assert!(text.trim_end().ends_with("</svg>"));
        assert_eq!(text.matches("<line ").count(), 4, "{text}");
        assert_eq!(text.matches("<path ").count(), 2, "{text}");
        // two red flags and their two derived black twins
        assert_eq!(text.matches(">En<").count(), 2, "{text}");
        assert_eq!(text.matches(">Ex<").count(), 2, "{text}");
    }

    #[test]
    fn coinciding_edges_are_offset_into_parallels() {
        // identical squares: every red edge lies on a black edge, so no drawn
        // red line may reuse the black path's corner coordinates exactly
        let text = plot(vec![square(0, 0, 2, 2)], vec![square(0, 0, 2, 2)]);
        let lines: Vec<&str> =
            text.lines().filter(|l| l.trim_start().starts_with("<line")).collect();
        assert_eq!(lines.len(), 4);
        for line in lines {
            assert!(!line.contains(r#"x1="40.00" y1="600.00""#), "unoffset: {line}");
            assert!(!line.contains(r#"x2="40.00" y2="600.00""#), "unoffset: {line}");
        }
    }
}
