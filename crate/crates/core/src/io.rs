//! Line-oriented text formats.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.
//!
//! * point set: one `x y` pair per line
//! * edge list: a header `n m`, then `m` lines `u v`
//! * lists: one line per vertex, whitespace-separated colors
//! * rotation: lines `v: w1 w2 ...` giving the counterclockwise neighbor
//!   order at `v`; vertices without a line have no neighbors
//! * coloring: lines `v color`

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::coloring::{Color, ColorLists};
use crate::geometry::Point;
use crate::graph::{PennyGraph, RotationSystem};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, FormatError> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| syntax(line, format!("cannot parse `{t}`"))))
        .collect()
}

pub fn parse_points(text: &str) -> Result<Vec<Point>, FormatError> {
    content_lines(text)
        .map(|(no, l)| match parse_fields::<f64>(no, l)?.as_slice() {
            &[x, y] => Ok(Point::new(x, y)),
            other => Err(syntax(no, format!("expected 2 coordinates, found {}", other.len()))),
        })
        .collect()
}

pub fn write_points(points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        writeln!(out, "{} {}", p.x, p.y).expect("writing to a string");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<PennyGraph, FormatError> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| FormatError::Invalid("empty edge list".into()))?;
    let (n, m) = match parse_fields::<usize>(no, header)?.as_slice() {
        &[n, m] => (n, m),
        _ => return Err(syntax(no, "header must be `n m`")),
    };
    let mut edges = Vec::with_capacity(m);
    for (no, l) in lines {
        match parse_fields::<usize>(no, l)?.as_slice() {
            &[u, v] => edges.push((u, v)),
            _ => return Err(syntax(no, "expected `u v`")),
        }
    }
    if edges.len() != m {
        return Err(FormatError::Invalid(format!("header declares {m} edges, found {}", edges.len())));
    }
    PennyGraph::from_edges(n, &edges).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_edge_list(g: &PennyGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a string");
    }
    out
}

/// Parses a rotation file for a graph on `n` vertices.
pub fn parse_rotation(text: &str, n: usize) -> Result<RotationSystem, FormatError> {
    let mut order: Vec<Option<Vec<usize>>> = vec![None; n];
    for (no, l) in content_lines(text) {
        let (head, rest) = l.split_once(':').ok_or_else(|| syntax(no, "expected `v: neighbors`"))?;
        let v: usize = head.trim().parse().map_err(|_| syntax(no, format!("bad vertex `{}`", head.trim())))?;
        if v >= n {
            return Err(syntax(no, format!("vertex {v} out of range")));
        }
        if order[v].is_some() {
            return Err(syntax(no, format!("vertex {v} listed twice")));
        }
        order[v] = Some(parse_fields(no, rest)?);
    }
    Ok(RotationSystem::combinatorial(order.into_iter().map(Option::unwrap_or_default).collect()))
}

pub fn write_rotation(g: &PennyGraph) -> Option<String> {
    let rot = g.rotation()?;
    let mut out = String::new();
    for v in 0..g.n() {
        let order: Vec<String> = rot.order(v).iter().map(usize::to_string).collect();
        writeln!(out, "{v}: {}", order.join(" ")).expect("writing to a string");
    }
    Some(out)
}

pub fn parse_lists(text: &str) -> Result<ColorLists, FormatError> {
    let lists = content_lines(text)
        .map(|(no, l)| parse_fields::<Color>(no, l))
        .collect::<Result<Vec<_>, _>>()?;
    ColorLists::new(lists).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_lists(lists: &ColorLists) -> String {
    let mut out = String::new();
    for l in lists.lists() {
        let l: Vec<String> = l.iter().map(Color::to_string).collect();
        writeln!(out, "{}", l.join(" ")).expect("writing to a string");
    }
    out
}

pub fn write_coloring(colors: &[Color]) -> String {
    let mut out = String::new();
    for (v, c) in colors.iter().enumerate() {
        writeln!(out, "{v} {c}").expect("writing to a string");
    }
    out
}

pub fn read_points(path: &Path) -> Result<Vec<Point>, FormatError> {
    parse_points(&std::fs::read_to_string(path)?)
}

pub fn read_edge_list(path: &Path) -> Result<PennyGraph, FormatError> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Edge list plus rotation file.
pub fn read_embedded_graph(edges: &Path, rotation: &Path) -> Result<PennyGraph, FormatError> {
    let g = read_edge_list(edges)?;
    let rot = parse_rotation(&std::fs::read_to_string(rotation)?, g.n())?;
    g.with_rotation(rot).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn read_lists(path: &Path) -> Result<ColorLists, FormatError> {
    parse_lists(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        let pts = vec![Point::new(0.1, -2.0), Point::new(1e-300, 3.141592653589793)];
        assert_eq!(parse_points(&write_points(&pts)).unwrap(), pts);
    }

    #[test]
    fn points_with_comments() {
        let pts = parse_points("# header\n\n0 0\n  2 0  \n").unwrap();
        assert_eq!(pts, vec![Point::new(0.0, 0.0), Point::new(2.0, 0.0)]);
        assert!(matches!(parse_points("0 0\n1\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_points("0 x\n"), Err(FormatError::Syntax { line: 1, .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        let again = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(again.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("2 1\n0 5\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn rotation_round_trip() {
        let g = parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        let rot = parse_rotation("0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2\n", 4).unwrap();
        let g = g.with_rotation(rot).unwrap();
        let text = write_rotation(&g).unwrap();
        let back = parse_rotation(&text, 4).unwrap();
        assert_eq!(back.order(1), &[2, 0]);
        assert!(parse_rotation("0 1 3\n", 4).is_err());
        assert!(parse_rotation("7: 1\n", 4).is_err());
        assert!(parse_rotation("0: 1\n0: 1\n", 4).is_err());
        // a vertex without a line is isolated
        assert!(parse_rotation("0: 1\n1: 0\n", 3).unwrap().order(2).is_empty());
    }

    #[test]
    fn lists_and_coloring() {
        let l = parse_lists("0 1 2\n2 1\n7\n").unwrap();
        assert_eq!(l.list(1), &[1, 2]);
        assert_eq!(parse_lists(&write_lists(&l)).unwrap(), l);
        assert_eq!(write_coloring(&[7]), "0 7\n");
        assert!(parse_lists("0 -1\n").is_err());
    }
}
