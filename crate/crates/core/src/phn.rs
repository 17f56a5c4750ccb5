//! The `.phn` edge-list format.
//!
//! ```text
//! # comment
//! edge <tail> <head>
//! leaf <vertex> <label>
//! ```
//!
//! Blank lines are ignored and `#` starts a comment anywhere on a line.
//! The root is the unique vertex of in-degree 0. Leaves without a `leaf`
//! line are labelled by their vertex id.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::network::{PhyloNetwork, RawGraph};
use crate::validate::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate edge {tail} -> {head}")]
    DuplicateEdge { line: usize, tail: String, head: String },
    #[error("line {line}: leaf line names unknown vertex `{vertex}`")]
    UnknownLeafVertex { line: usize, vertex: String },
    #[error("invalid network: {0}")]
    Invalid(ValidationReport),
}

/// Parses `.phn` text into an unchecked graph.
pub fn parse_raw(text: &str) -> Result<RawGraph, ParseError> {
    let mut raw = RawGraph::new();
    let mut seen = HashSet::new();
    let mut leaf_lines: Vec<(usize, &str, &str)> = Vec::new();

    for (i, full) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = match full.find('#') {
            Some(at) => &full[..at],
            None => full,
        };
        let tokens = tokenize(content);
        let Some(&(col, directive)) = tokens.first() else {
            continue;
        };
        match directive {
            "edge" | "leaf" => {
                if tokens.len() != 3 {
                    let column = tokens.get(3).map_or(col, |t| t.0);
                    return Err(ParseError::Syntax {
                        line: line_no,
                        column,
                        message: format!("`{directive}` takes exactly two arguments, found {}", tokens.len() - 1),
                    });
                }
                let (a, b) = (tokens[1].1, tokens[2].1);
                if directive == "edge" {
                    if !seen.insert((a, b)) {
                        return Err(ParseError::DuplicateEdge {
                            line: line_no,
                            tail: a.to_owned(),
                            head: b.to_owned(),
                        });
                    }
                    raw.add_edge(a, b);
                } else {
                    leaf_lines.push((line_no, a, b));
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column: col,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }

    for (line, vertex, label) in leaf_lines {
        if raw.vertex(vertex).is_none() {
            return Err(ParseError::UnknownLeafVertex {
                line,
                vertex: vertex.to_owned(),
            });
        }
        raw.set_leaf_label(vertex, label);
    }
    Ok(raw)
}

/// Parses and validates.
pub fn parse_phn(text: &str) -> Result<PhyloNetwork, ParseError> {
    PhyloNetwork::from_raw(parse_raw(text)?).map_err(ParseError::Invalid)
}

/// Writes one `edge` line per edge in edge order, then one `leaf` line per leaf.
pub fn to_phn(n: &PhyloNetwork) -> String {
    let mut out = String::new();
    for e in 0..n.edge_count() {
        let (t, h) = n.edge_names(e);
        let _ = writeln!(out, "edge {t} {h}");
    }
    write_leaf_lines(n, &mut out);
    out
}

/// Leaves in order of their incoming edge, so that parsing the output back
/// and writing it again reproduces the same text.
pub(crate) fn write_leaf_lines(n: &PhyloNetwork, out: &mut String) {
    let mut leaves = n.leaves().to_vec();
    leaves.sort_by_key(|&v| n.in_edges(v).first().copied());
    for v in leaves {
        let _ = writeln!(out, "leaf {} {}", n.name(v), n.leaf_label(v).unwrap_or(n.name(v)));
    }
}

/// Whitespace tokens with their 1-based character column.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((c, b))) => {
                tokens.push((c + 1, &line[b..byte]));
                start = None;
            }
            (false, None) => start = Some((col, byte)),
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        tokens.push((c + 1, &line[b..]));
    }
    tokens
}
