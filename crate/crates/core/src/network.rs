//! Rooted almost-binary phylogenetic networks.
//!
//! A [`RawGraph`] is an unchecked directed graph with string vertex ids. It
//! becomes a [`PhyloNetwork`] only after passing [`validate_network`]. Vertex
//! ids are dense indices internally; every message shown to a user carries
//! the external string id.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

use crate::validate::{validate_network, ValidationReport};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Edge { tail, head }
    }
}

/// Directed graph with string-named vertices, optional root and leaf labels.
///
/// Nothing is checked on insertion; duplicate edges and self-loops are kept so
/// that validation can report them.
#[derive(Clone, Debug, Default)]
pub struct RawGraph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    root: Option<VertexId>,
    labels: Vec<(VertexId, String)>,
    label_index: HashMap<VertexId, usize>,
}

impl RawGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns `name`, returning its index.
    pub fn add_vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), v);
        v
    }

    pub fn add_edge(&mut self, tail: &str, head: &str) -> EdgeId {
        let t = self.add_vertex(tail);
        let h = self.add_vertex(head);
        self.edges.push(Edge::new(t, h));
        self.edges.len() - 1
    }

    pub fn set_root(&mut self, name: &str) {
        let v = self.add_vertex(name);
        self.root = Some(v);
    }

    /// Assigns a label to a leaf. Vertices without a label use their id.
    pub fn set_leaf_label(&mut self, vertex: &str, label: &str) {
        let v = self.add_vertex(vertex);
        match self.label_index.get(&v) {
            Some(&i) => self.labels[i].1 = label.to_owned(),
            None => {
                self.label_index.insert(v, self.labels.len());
                self.labels.push((v, label.to_owned()));
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    pub fn leaf_labels(&self) -> &[(VertexId, String)] {
        &self.labels
    }

    /// Explicit label of `v`, if one was set.
    pub fn label_of(&self, v: VertexId) -> Option<&str> {
        self.label_index.get(&v).map(|&i| self.labels[i].1.as_str())
    }

    pub fn contains_edge(&self, tail: &str, head: &str) -> bool {
        match (self.vertex(tail), self.vertex(head)) {
            (Some(t), Some(h)) => self.edges.contains(&Edge::new(t, h)),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("cannot remove the root `{0}`")]
    Root(String),
    #[error("cannot remove leaf `{0}`")]
    Leaf(String),
}

type Incidence = SmallVec<[EdgeId; 2]>;

/// A validated rooted almost-binary phylogenetic X-network. Immutable.
#[derive(Clone, Debug)]
pub struct PhyloNetwork {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    in_edges: Vec<Incidence>,
    out_edges: Vec<Incidence>,
    root: VertexId,
    leaves: Vec<VertexId>,
    labels: Vec<String>,
    /// Position of each vertex when ids are sorted lexicographically.
    rank: Vec<u32>,
}

impl PhyloNetwork {
    /// Validates `raw` and freezes it into a network.
    pub fn from_raw(raw: RawGraph) -> Result<Self, ValidationReport> {
        let report = validate_network(&raw);
        if !report.ok {
            return Err(report);
        }
        let n = raw.names.len();
        let mut in_edges = vec![Incidence::new(); n];
        let mut out_edges = vec![Incidence::new(); n];
        for (id, e) in raw.edges.iter().enumerate() {
            out_edges[e.tail].push(id);
            in_edges[e.head].push(id);
        }
        let root = (0..n)
            .find(|&v| in_edges[v].is_empty())
            .expect("validated network has a root");
        let leaves: Vec<VertexId> = (0..n).filter(|&v| out_edges[v].is_empty()).collect();
        let labels = leaves
            .iter()
            .map(|&v| {
                raw.label_of(v)
                    .map_or_else(|| raw.names[v].clone(), str::to_owned)
            })
            .collect();
        let mut order: Vec<VertexId> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| raw.names[a].cmp(&raw.names[b]));
        let mut rank = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i as u32;
        }
        Ok(PhyloNetwork {
            rank,
            names: raw.names,
            index: raw.index,
            edges: raw.edges,
            in_edges,
            out_edges,
            root,
            leaves,
            labels,
        })
    }

    /// Copies the network back into an unchecked graph, keeping root and labels.
    pub fn to_raw(&self) -> RawGraph {
        let mut raw = RawGraph::new();
        for name in &self.names {
            raw.add_vertex(name);
        }
        raw.edges = self.edges.clone();
        raw.root = Some(self.root);
        for (&v, l) in self.leaves.iter().zip(&self.labels) {
            raw.label_index.insert(v, raw.labels.len());
            raw.labels.push((v, l.clone()));
        }
        raw
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// External ids of an edge's endpoints.
    /// Compares external ids as strings, without touching the strings.
    pub fn cmp_names(&self, a: VertexId, b: VertexId) -> std::cmp::Ordering {
        self.rank[a].cmp(&self.rank[b])
    }

    /// Orders edges by `(tail id, head id)` as strings, without touching
    /// the strings.
    pub fn cmp_edges_by_name(&self, a: EdgeId, b: EdgeId) -> std::cmp::Ordering {
        let key = |e: EdgeId| {
            let Edge { tail, head } = self.edges[e];
            (self.rank[tail], self.rank[head])
        };
        key(a).cmp(&key(b))
    }

    pub fn edge_names(&self, e: EdgeId) -> (&str, &str) {
        let Edge { tail, head } = self.edges[e];
        (&self.names[tail], &self.names[head])
    }

    pub fn find_edge(&self, tail: &str, head: &str) -> Option<EdgeId> {
        let t = self.vertex(tail)?;
        let h = self.vertex(head)?;
        self.out_edges[t]
            .iter()
            .copied()
            .find(|&e| self.edges[e].head == h)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Leaves in index order.
    pub fn leaves(&self) -> &[VertexId] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.out_edges[v].is_empty()
    }

    pub fn leaf_label(&self, v: VertexId) -> Option<&str> {
        self.leaves
            .binary_search(&v)
            .ok()
            .map(|i| self.labels[i].as_str())
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn indegree(&self, v: VertexId) -> usize {
        self.in_edges[v].len()
    }

    pub fn outdegree(&self, v: VertexId) -> usize {
        self.out_edges[v].len()
    }

    pub fn degree_pair(&self, v: VertexId) -> (usize, usize) {
        (self.indegree(v), self.outdegree(v))
    }

    pub fn parents(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_edges[v].iter().map(move |&e| self.edges[e].tail)
    }

    pub fn children(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges[v].iter().map(move |&e| self.edges[e].head)
    }

    /// True iff no vertex has degree pair (1,1) or (2,2).
    pub fn is_binary(&self) -> bool {
        (0..self.vertex_count()).all(|v| !matches!(self.degree_pair(v), (1, 1) | (2, 2)))
    }

    /// `N - {v}`: drops `v` and every edge touching it. The result is not
    /// validated.
    pub fn remove_vertex(&self, v: VertexId) -> Result<RawGraph, SurgeryError> {
        if v >= self.vertex_count() {
            return Err(SurgeryError::UnknownVertex(v.to_string()));
        }
        if v == self.root {
            return Err(SurgeryError::Root(self.names[v].clone()));
        }
        if self.is_leaf(v) {
            return Err(SurgeryError::Leaf(self.names[v].clone()));
        }
        let mut raw = RawGraph::new();
        for (u, name) in self.names.iter().enumerate() {
            if u != v {
                raw.add_vertex(name);
            }
        }
        for e in &self.edges {
            if e.tail != v && e.head != v {
                raw.add_edge(&self.names[e.tail], &self.names[e.head]);
            }
        }
        raw.set_root(&self.names[self.root]);
        for (&leaf, label) in self.leaves.iter().zip(&self.labels) {
            raw.set_leaf_label(&self.names[leaf], label);
        }
        Ok(raw)
    }

    /// Same as [`remove_vertex`](Self::remove_vertex), addressed by external id.
    pub fn remove_vertex_named(&self, name: &str) -> Result<RawGraph, SurgeryError> {
        let v = self
            .vertex(name)
            .ok_or_else(|| SurgeryError::UnknownVertex(name.to_owned()))?;
        self.remove_vertex(v)
    }

    /// Content hash over external ids, edges, root and labels. Independent of
    /// vertex and edge order.
    pub fn fingerprint(&self) -> u64 {
        let mut edges: Vec<(&str, &str)> = (0..self.edge_count()).map(|e| self.edge_names(e)).collect();
        edges.sort_unstable();
        let mut labels: Vec<(&str, &str)> = self
            .leaves
            .iter()
            .zip(&self.labels)
            .map(|(&v, l)| (self.names[v].as_str(), l.as_str()))
            .collect();
        labels.sort_unstable();
        let mut h = DefaultHasher::new();
        self.names[self.root].hash(&mut h);
        edges.hash(&mut h);
        labels.hash(&mut h);
        h.finish()
    }
}

impl fmt::Display for PhyloNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "network: {} vertices, {} edges, {} leaves, root {}",
            self.vertex_count(),
            self.edge_count(),
            self.leaf_count(),
            self.names[self.root]
        )
    }
}
