//! Structural checks for rooted almost-binary phylogenetic networks.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::network::RawGraph;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Empty,
    SelfLoop,
    DuplicateEdge,
    Cycle,
    Disconnected,
    RootCount,
    RootMismatch,
    RootDegree,
    LeafDegree,
    InternalDegree,
    LeafLabel,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Empty => "empty",
            Rule::SelfLoop => "self-loop",
            Rule::DuplicateEdge => "duplicate-edge",
            Rule::Cycle => "cycle",
            Rule::Disconnected => "disconnected",
            Rule::RootCount => "root-count",
            Rule::RootMismatch => "root-mismatch",
            Rule::RootDegree => "root-degree",
            Rule::LeafDegree => "leaf-degree",
            Rule::InternalDegree => "internal-degree",
            Rule::LeafLabel => "leaf-label",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    /// External id of the offending vertex, or `tail->head` for an edge.
    pub witness: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.rule, v.message)?;
        }
        Ok(())
    }
}

struct Collector<'a> {
    raw: &'a RawGraph,
    violations: Vec<Violation>,
}

impl Collector<'_> {
    fn vertex(&mut self, rule: Rule, v: usize, message: String) {
        let witness = self.raw.name(v).to_owned();
        self.violations.push(Violation { rule, witness, message });
    }

    fn edge(&mut self, rule: Rule, t: usize, h: usize, message: String) {
        let witness = format!("{}->{}", self.raw.name(t), self.raw.name(h));
        self.violations.push(Violation { rule, witness, message });
    }
}

/// Checks every clause of the network definition plus simplicity,
/// acyclicity and weak connectivity. Never fails; all problems are reported.
pub fn validate_network(raw: &RawGraph) -> ValidationReport {
    let n = raw.vertex_count();
    let mut c = Collector {
        raw,
        violations: Vec::new(),
    };
    if n == 0 {
        c.violations.push(Violation {
            rule: Rule::Empty,
            witness: String::new(),
            message: "graph has no vertices".into(),
        });
        return finish(c);
    }

    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut seen = HashSet::with_capacity(raw.edge_count());
    for e in raw.edges() {
        outdeg[e.tail] += 1;
        indeg[e.head] += 1;
        let (t, h) = (raw.name(e.tail), raw.name(e.head));
        if e.tail == e.head {
            c.edge(Rule::SelfLoop, e.tail, e.head, format!("self-loop at `{t}`"));
        } else if !seen.insert((e.tail, e.head)) {
            c.edge(Rule::DuplicateEdge, e.tail, e.head, format!("edge {t}->{h} appears more than once"));
        }
    }

    let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let root = match (raw.root(), sources.as_slice()) {
        (Some(r), _) if indeg[r] != 0 => {
            c.vertex(Rule::RootMismatch, r, format!("declared root `{}` has in-degree {}", raw.name(r), indeg[r]));
            None
        }
        (declared, [single]) => declared.or(Some(*single)),
        (declared, []) => {
            c.violations.push(Violation {
                rule: Rule::RootCount,
                witness: String::new(),
                message: "no vertex has in-degree 0".into(),
            });
            declared
        }
        (declared, many) => {
            let ids: Vec<&str> = many.iter().map(|&v| raw.name(v)).collect();
            c.violations.push(Violation {
                rule: Rule::RootCount,
                witness: ids.join(","),
                message: format!("{} vertices have in-degree 0: {}", many.len(), ids.join(", ")),
            });
            declared
        }
    };

    if let Some(r) = root {
        if !(1..=2).contains(&outdeg[r]) {
            c.vertex(Rule::RootDegree, r, format!("root `{}` has out-degree {}", raw.name(r), outdeg[r]));
        }
    }
    for v in 0..n {
        if Some(v) == root || indeg[v] == 0 {
            continue;
        }
        if outdeg[v] == 0 {
            if indeg[v] != 1 {
                c.vertex(Rule::LeafDegree, v, format!("leaf `{}` has in-degree {}", raw.name(v), indeg[v]));
            }
        } else if !(1..=2).contains(&indeg[v]) || !(1..=2).contains(&outdeg[v]) {
            c.vertex(
                Rule::InternalDegree,
                v,
                format!("vertex `{}` has degree pair ({}, {})", raw.name(v), indeg[v], outdeg[v]),
            );
        }
    }

    if let Some(v) = cycle_witness(raw, &indeg) {
        c.vertex(Rule::Cycle, v, format!("vertex `{}` lies on a directed cycle", raw.name(v)));
    }
    if let Some(v) = unreachable_vertex(raw, root.unwrap_or(0)) {
        c.vertex(Rule::Disconnected, v, format!("vertex `{}` is not connected to the root", raw.name(v)));
    }

    let mut labels: HashMap<&str, usize> = HashMap::new();
    for (v, label) in raw.leaf_labels() {
        if outdeg[*v] != 0 {
            c.vertex(Rule::LeafLabel, *v, format!("`{}` is labelled `{label}` but is not a leaf", raw.name(*v)));
        }
        if let Some(&prev) = labels.get(label.as_str()) {
            c.vertex(
                Rule::LeafLabel,
                *v,
                format!("label `{label}` used by both `{}` and `{}`", raw.name(prev), raw.name(*v)),
            );
        }
        labels.insert(label, *v);
    }
    // Unlabelled leaves default to their own id, which may collide with an explicit label.
    for v in (0..n).filter(|&v| outdeg[v] == 0) {
        if raw.label_of(v).is_some() {
            continue;
        }
        if let Some(&prev) = labels.get(raw.name(v)) {
            if prev != v {
                c.vertex(
                    Rule::LeafLabel,
                    v,
                    format!("label `{}` used by both `{}` and `{}`", raw.name(v), raw.name(prev), raw.name(v)),
                );
            }
        }
    }

    finish(c)
}

fn finish(c: Collector<'_>) -> ValidationReport {
    ValidationReport {
        ok: c.violations.is_empty(),
        violations: c.violations,
    }
}

/// Kahn's algorithm; returns a vertex left over when the sort stalls.
fn cycle_witness(raw: &RawGraph, indeg: &[usize]) -> Option<usize> {
    let n = indeg.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in raw.edges() {
        out[e.tail].push(e.head);
    }
    let mut remaining = indeg.to_vec();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| remaining[v] == 0).collect();
    let mut done = 0;
    while let Some(v) = queue.pop_front() {
        done += 1;
        for &w in &out[v] {
            remaining[w] -= 1;
            if remaining[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if done == n {
        None
    } else {
        (0..n).find(|&v| remaining[v] > 0)
    }
}

fn unreachable_vertex(raw: &RawGraph, start: usize) -> Option<usize> {
    let n = raw.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in raw.edges() {
        adj[e.tail].push(e.head);
        adj[e.head].push(e.tail);
    }
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().position(|s| !s)
}
