//! Text and JSON file formats.
//!
//! Instance text: a header line `n k`, then one line per arc listing its
//! entries in order. Blank lines and `#` comments are skipped. A payload
//! starting with `{` is read as `{"n":..,"k":..,"arcs":[[..],..]}`.
//!
//! Path text: the vertex count `t`, the `t` vertices, then the `t - 1`
//! 0-based arc ids.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypertournament::{ArcId, BuildError, Hypertournament, Vertex};
use crate::path::{validate_adp, AntidirectedPath, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Build { line: usize, source: BuildError },
    #[error("{0}")]
    Invalid(BuildError),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathFileError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("path is not antidirected: {0}")]
    NotAntidirected(Violation),
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    k: usize,
    arcs: Vec<Vec<u32>>,
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn numbers<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, (usize, String)> {
    s.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| (line, format!("`{tok}` is not a non-negative integer"))))
        .collect()
}

/// Read an instance in the text or JSON format.
///
/// ```
/// let h = adhp::parse_instance("4 3\n2 3 4\n4 1 2\n3 4 1\n1 2 3\n").unwrap();
/// assert_eq!(adhp::is_exceptional(&h).unwrap().kind, adhp::ExceptionalKind::H4);
/// ```
pub fn parse_instance(text: &str) -> Result<Hypertournament, ParseError> {
    if text.trim_start().starts_with('{') {
        let raw: InstanceJson = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        return Hypertournament::new(raw.n, raw.k, &raw.arcs).map_err(ParseError::Invalid);
    }
    let syntax = |(line, reason)| ParseError::Syntax { line, reason };
    let mut lines = content_lines(text);
    let (header_line, header) =
        lines.next().ok_or(ParseError::Syntax { line: 1, reason: "missing `n k` header".into() })?;
    let header: Vec<usize> = numbers(header_line, header).map_err(syntax)?;
    let [n, k] = header[..] else {
        return Err(ParseError::Syntax { line: header_line, reason: "header must be `n k`".into() });
    };
    let mut arcs = Vec::new();
    let mut at = Vec::new();
    for (line, s) in lines {
        arcs.push(numbers::<u32>(line, s).map_err(syntax)?);
        at.push(line);
    }
    Hypertournament::new(n, k, &arcs).map_err(|e| {
        let index = match &e {
            BuildError::MalformedArc { index, .. } => Some(*index),
            BuildError::DuplicateSubset { second, .. } => Some(*second),
            _ => None,
        };
        match index {
            Some(i) => ParseError::Build { line: at[i], source: e },
            None => ParseError::Build { line: header_line, source: e },
        }
    })
}

/// Write an instance in the text format.
pub fn emit_instance(h: &Hypertournament) -> String {
    let mut out = format!("{} {}\n", h.n(), h.k());
    for arc in h.arcs() {
        let line: Vec<String> = arc.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Write an instance as JSON.
pub fn emit_instance_json(h: &Hypertournament) -> String {
    let arcs = h.arcs().map(|a| a.iter().map(|v| v.0).collect()).collect();
    serde_json::to_string(&InstanceJson { n: h.n(), k: h.k(), arcs }).expect("plain data")
}

/// Write a path in the text format.
///
/// ```
/// use adhp::{emit_path, parse_path, validate_adp, ArcId, ExceptionalKind, Vertex};
///
/// let h4 = ExceptionalKind::H4.canonical();
/// let p = validate_adp(&h4, &[Vertex(2), Vertex(4), Vertex(3)], &[ArcId(0), ArcId(2)]).unwrap();
/// assert_eq!(emit_path(&p), "3\n2 4 3\n0 2\n");
/// assert_eq!(parse_path(&h4, &emit_path(&p)).unwrap(), p);
/// ```
pub fn emit_path(p: &AntidirectedPath) -> String {
    let vs: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
    let arcs: Vec<String> = p.arcs().iter().map(|a| a.0.to_string()).collect();
    format!("{}\n{}\n{}\n", p.len(), vs.join(" "), arcs.join(" "))
}

/// Read a path file against its instance; orientations are recomputed.
pub fn parse_path(h: &Hypertournament, text: &str) -> Result<AntidirectedPath, PathFileError> {
    let syntax = |(line, reason)| PathFileError::Syntax { line, reason };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()));
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| PathFileError::Syntax { line: 0, reason: format!("missing {what} line") })
    };
    let (tl, t) = next("length")?;
    let t: Vec<usize> = numbers(tl, t).map_err(syntax)?;
    let [t] = t[..] else {
        return Err(PathFileError::Syntax { line: tl, reason: "first line must be the vertex count".into() });
    };
    let (vl, vs) = next("vertex")?;
    let vertices: Vec<Vertex> = numbers::<u32>(vl, vs).map_err(syntax)?.into_iter().map(Vertex).collect();
    if vertices.len() != t {
        return Err(PathFileError::Syntax {
            line: vl,
            reason: format!("expected {t} vertices, found {}", vertices.len()),
        });
    }
    let (al, arcs) = next("arc")?;
    let arcs: Vec<ArcId> = numbers::<usize>(al, arcs).map_err(syntax)?.into_iter().map(ArcId).collect();
    if arcs.len() + 1 != t {
        return Err(PathFileError::Syntax {
            line: al,
            reason: format!("expected {} arc ids, found {}", t.saturating_sub(1), arcs.len()),
        });
    }
    validate_adp(h, &vertices, &arcs).map_err(PathFileError::NotAntidirected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcribed_cycle() {
        let h = parse_instance("3 2\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(h.arc(ArcId(2)), &[Vertex(3), Vertex(1)]);
    }

    #[test]
    fn missing_arc_is_reported() {
        let err = parse_instance("3 2\n1 2\n2 3\n").unwrap_err();
        assert!(matches!(err, ParseError::Build { source: BuildError::WrongArcCount { expected: 3, found: 2 }, .. }));
    }

    #[test]
    fn bad_token_names_its_line() {
        let err = parse_instance("# header next\n3 2\n1 2\n\n2 x\n3 1\n").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 5, reason: "`x` is not a non-negative integer".into() });
    }

    #[test]
    fn duplicate_subset_names_its_line() {
        let err = parse_instance("3 2\n1 2\n2 1\n3 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Build { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn json_and_text_agree() {
        let text = "4 3\n2 3 4\n4 1 2\n3 4 1\n1 2 3\n";
        let h = parse_instance(text).unwrap();
        assert_eq!(parse_instance(&emit_instance_json(&h)).unwrap(), h);
        assert_eq!(emit_instance(&h), text);
    }

    #[test]
    fn short_path_file() {
        let h = parse_instance("3 2\n1 2\n3 2\n3 1\n").unwrap();
        let p = parse_path(&h, "2\n1 2\n0\n").unwrap();
        assert_eq!(p.len(), 2);
        assert!(matches!(parse_path(&h, "2\n1 2\n"), Err(PathFileError::Syntax { .. })));
    }
}
