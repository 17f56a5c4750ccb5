//! Graphviz export.

use std::fmt::Write as _;

use crate::network::PhyloNetwork;
use crate::zigzag::{TrailKind, ZigzagDecomposition};

pub fn kind_color(kind: TrailKind) -> &'static str {
    match kind {
        TrailKind::Crown => "darkgreen",
        TrailKind::MFence => "blue",
        TrailKind::NFence => "gray40",
        TrailKind::WFence => "red",
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph of `n`. With a decomposition, each edge is colored by the
/// kind of its trail and labelled with the trail index.
pub fn export_dot(n: &PhyloNetwork, decomposition: Option<&ZigzagDecomposition>) -> String {
    let mut out = String::from("digraph network {\n");
    for v in 0..n.vertex_count() {
        let name = quote(n.name(v));
        let attrs = if v == n.root() {
            "shape=doublecircle".to_owned()
        } else if let Some(label) = n.leaf_label(v) {
            format!("shape=box, label={}", quote(label))
        } else {
            "shape=circle".to_owned()
        };
        let _ = writeln!(out, "  {name} [{attrs}];");
    }
    for e in 0..n.edge_count() {
        let (t, h) = n.edge_names(e);
        let (t, h) = (quote(t), quote(h));
        match decomposition {
            Some(d) => {
                let i = d.trail_of(e);
                let kind = d.trail(i).kind();
                let _ = writeln!(
                    out,
                    "  {t} -> {h} [color={}, label=\"{}{}\"];",
                    kind_color(kind),
                    kind.as_str().chars().next().unwrap_or('?').to_ascii_uppercase(),
                    i
                );
            }
            None => {
                let _ = writeln!(out, "  {t} -> {h};");
            }
        }
    }
    out.push_str("}\n");
    out
}
