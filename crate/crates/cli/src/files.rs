//! Reading polygon files and writing result files.
//!
//! Coordinates travel as exact text: integers or decimal/ratio strings on the
//! way in, canonical strings on the way out. Nothing here goes through
//! floating point, so serializing the same region twice yields the same bytes.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use fixclip::polygon::{Hand, Polygon, PolygonError, RegionMembershipRule, Role};
use fixclip::trace::{Origin, ResultRegion};
use fixclip::{BooleanOp, Point, Scalar};

/// Polygon document: `{ "contours": [[[x, y], ...], ...], "hand"?, "rule"? }`.
/// Each coordinate is an integer or an exact decimal/ratio string.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct PolygonFile {
    pub contours: Vec<Vec<[CoordinateText; 2]>>,
    /// "left" or "right"; required only for self-touching contours.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hand: Option<String>,
    /// "nonzero" or "evenodd"; overrides the command-line default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
}

/// A coordinate as it appears in JSON. Floats deliberately fall through to
/// `Unsupported` so the error can say which vertex is broken.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum CoordinateText {
    Int(i64),
    Text(String),
    Unsupported(serde_json::Value),
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: contour {contour}, vertex {vertex}: {problem}")]
    Coordinate { path: String, contour: usize, vertex: usize, problem: String },
    #[error("{path}: hand must be \"left\" or \"right\", got {got:?}")]
    BadHand { path: String, got: String },
    #[error("{path}: rule must be \"nonzero\" or \"evenodd\", got {got:?}")]
    BadRule { path: String, got: String },
    #[error("{path}: {source}")]
    Polygon { path: String, source: PolygonError },
}

/// A parsed polygon plus the per-file options that came with it.
#[derive(Clone, Debug)]
pub struct LoadedPolygon {
    pub polygon: Polygon,
    pub contours: Vec<Vec<Point>>,
    pub rule: Option<RegionMembershipRule>,
}

pub fn load_polygon(path: &Path, role: Role) -> Result<LoadedPolygon, FileError> {
    let label = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: label.clone(),
        source,
    })?;
    parse_polygon(&text, &label, role)
}

pub fn parse_polygon(text: &str, label: &str, role: Role) -> Result<LoadedPolygon, FileError> {
    let file: PolygonFile = serde_json::from_str(text).map_err(|source| FileError::Json {
        path: label.to_string(),
        source,
    })?;

    let mut contours = Vec::with_capacity(file.contours.len());
    for (ci, raw) in file.contours.iter().enumerate() {
        let mut points = Vec::with_capacity(raw.len());
        for (vi, [x, y]) in raw.iter().enumerate() {
            let parse = |c: &CoordinateText| -> Result<Scalar, String> {
                match c {
                    CoordinateText::Int(n) => Ok(Scalar::from_int(*n)),
                    CoordinateText::Text(s) => Scalar::from_str(s).map_err(|e| e.to_string()),
                    CoordinateText::Unsupported(v) => {
                        Err(format!("expected an integer or a decimal string, got {v}"))
                    }
                }
            };
            let coordinate = |c| {
                parse(c).map_err(|problem| FileError::Coordinate {
                    path: label.to_string(),
                    contour: ci,
                    vertex: vi,
                    problem,
                })
            };
            points.push(Point::new(coordinate(x)?, coordinate(y)?));
        }
        contours.push(points);
    }

    let hand = match file.hand.as_deref() {
        None => None,
        Some("left") => Some(Hand::Left),
        Some("right") => Some(Hand::Right),
        Some(other) => {
            return Err(FileError::BadHand { path: label.to_string(), got: other.to_string() })
        }
    };
    let rule = match file.rule.as_deref() {
        None => None,
        Some("nonzero") => Some(RegionMembershipRule::NonzeroWinding),
        Some("evenodd") => Some(RegionMembershipRule::EvenOdd),
        Some(other) => {
            return Err(FileError::BadRule { path: label.to_string(), got: other.to_string() })
        }
    };

    let polygon = Polygon::from_contours(role, &contours, hand).map_err(|source| {
        FileError::Polygon { path: label.to_string(), source }
    })?;
    Ok(LoadedPolygon { polygon, contours, rule })
}

pub fn polygon_file_from_contours(contours: &[Vec<Point>], hand: Option<Hand>) -> PolygonFile {
    PolygonFile {
        contours: contours
            .iter()
            .map(|ring| {
                ring.iter()
                    .map(|p| {
                        [
                            CoordinateText::Text(p.x.to_canonical_string()),
                            CoordinateText::Text(p.y.to_canonical_string()),
                        ]
                    })
                    .collect()
            })
            .collect(),
        hand: hand.map(|h| match h {
            Hand::Left => "left".to_string(),
            Hand::Right => "right".to_string(),
        }),
        rule: None,
    }
}

/// Result document: `{ "op", "contours": [{ "edges": [...] }], "empty" }`.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct ResultFile {
    pub op: String,
    pub contours: Vec<ResultFileContour>,
    pub empty: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct ResultFileContour {
    pub edges: Vec<ResultFileEdge>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct ResultFileEdge {
    pub from: [String; 2],
    pub to: [String; 2],
    pub origin: String,
}

pub fn op_name(op: BooleanOp) -> &'static str {
    match op {
        BooleanOp::Intersection => "intersection",
        BooleanOp::Union => "union",
        BooleanOp::Difference => "difference",
    }
}

fn coordinate_pair(p: &Point) -> [String; 2] {
    [p.x.to_canonical_string(), p.y.to_canonical_string()]
}

pub fn result_file(op: BooleanOp, region: &ResultRegion) -> ResultFile {
    ResultFile {
        op: op_name(op).to_string(),
        contours: region
            .contours
            .iter()
            .map(|contour| ResultFileContour {
                edges: contour
                    .edges
                    .iter()
                    .map(|edge| ResultFileEdge {
                        from: coordinate_pair(&edge.from),
                        to: coordinate_pair(&edge.to),
                        origin: match edge.origin {
                            Origin::Clipper => "clipper".to_string(),
                            Origin::Subject => "subject".to_string(),
                        },
                    })
                    .collect(),
            })
            .collect(),
        empty: region.is_empty(),
    }
}

/// The exact bytes the CLI writes for a region; one JSON document plus a
/// trailing newline.
pub fn result_file_bytes(op: BooleanOp, region: &ResultRegion) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(&result_file(op, region))
        .expect("result serialization cannot fail");
    bytes.push(b'\n');
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_exact_strings() {
        let text = r#"{"contours": [[[0, 0], ["2", "0"], ["1.5", "0.25"], ["1/3", 4]]]}"#;
        let loaded = parse_polygon(text, "inline", Role::Subject).unwrap();
        assert_eq!(loaded.contours[0][2], Point::new(Scalar::from_ratio(3, 2), Scalar::from_ratio(1, 4)));
        assert_eq!(loaded.contours[0][3], Point::new(Scalar::from_ratio(1, 3), Scalar::from_int(4)));
        assert_eq!(loaded.rule, None);
    }

    #[test]
    fn reports_the_failing_contour_and_vertex() {
        let text = r#"{"contours": [[[0, 0], [1, 0], [1, 1]], [[0, 0], [0.5, "x"], [1, 1]]]}"#;
        let err = parse_polygon(text, "inline", Role::Subject).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("contour 1, vertex 1"), "{message}");
    }

    #[test]
    fn rejects_unknown_hand_and_rule_values() {
        let square = r#"[[[0,0],[1,0],[1,1],[0,1]]]"#;
        let bad_hand = format!(r#"{{"contours": {square}, "hand": "up"}}"#);
        assert!(matches!(
            parse_polygon(&bad_hand, "inline", Role::Clipper).unwrap_err(),
            FileError::BadHand { .. }
        ));
        let bad_rule = format!(r#"{{"contours": {square}, "rule": "winding"}}"#);
        assert!(matches!(
            parse_polygon(&bad_rule, "inline", Role::Clipper).unwrap_err(),
            FileError::BadRule { .. }
        ));
    }

    #[test]
    fn polygon_files_round_trip() {
        let contours = vec![vec![
            Point::new(Scalar::from_ratio(1, 3), Scalar::from_int(0)),
            Point::from_ints(4, 0),
            Point::new(Scalar::from_ratio(5, 4), Scalar::from_ratio(7, 2)),
        ]];
        let file = polygon_file_from_contours(&contours, Some(Hand::Left));
        let text = serde_json::to_string(&file).unwrap();
        let loaded = parse_polygon(&text, "inline", Role::Clipper).unwrap();
        assert_eq!(loaded.contours, contours);
    }
}
