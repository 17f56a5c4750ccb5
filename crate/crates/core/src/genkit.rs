//! Seeded random networks for property tests and benchmarks.
//!
//! Construction: a random rooted binary tree, then reticulations added
//! between pairs of subdivided edges, then optional contraction of
//! reticulation/tree-vertex edges into (2,2) vertices and subdivision of
//! edges into (1,1) vertices.
//!
//! Acyclicity is kept by a real-valued position per vertex that increases
//! along every edge. New vertices sit at the midpoint of the edge they
//! subdivide and a reticulation edge always runs from the lower position to
//! the higher one, so its head is never an ancestor of its tail.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::network::{PhyloNetwork, RawGraph};
use crate::validate::ValidationReport;

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub n_leaves: usize,
    pub n_reticulations: usize,
    /// Per-edge probability of inserting a (1,1) pass-through vertex.
    pub p_degree11: f64,
    /// Per-eligible-edge probability of fusing a reticulation with its
    /// tree-vertex child into a (2,2) vertex.
    pub p_degree22: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n_leaves: usize, n_reticulations: usize, seed: u64) -> Self {
        GenParams {
            n_leaves,
            n_reticulations,
            p_degree11: 0.0,
            p_degree22: 0.0,
            seed,
        }
    }

    pub fn with_probabilities(mut self, p_degree11: f64, p_degree22: f64) -> Self {
        self.p_degree11 = p_degree11;
        self.p_degree22 = p_degree22;
        self
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("could not place reticulation {index} after {attempts} attempts")]
    RetriesExhausted { index: usize, attempts: usize },
    #[error("generated graph failed validation: {0}")]
    Invalid(ValidationReport),
}

const ATTEMPTS: usize = 64;

struct Builder {
    tails: Vec<usize>,
    heads: Vec<usize>,
    alive: Vec<bool>,
    pos: Vec<f64>,
    vertex_alive: Vec<bool>,
    leaf_of: Vec<Option<usize>>,
}

impl Builder {
    fn new_vertex(&mut self, pos: f64) -> usize {
        self.pos.push(pos);
        self.vertex_alive.push(true);
        self.leaf_of.push(None);
        self.pos.len() - 1
    }

    fn push_edge(&mut self, t: usize, h: usize) -> usize {
        self.tails.push(t);
        self.heads.push(h);
        self.alive.push(true);
        self.tails.len() - 1
    }

    /// Replaces edge `e = (u, v)` by `(u, w), (w, v)` and returns `w`.
    fn subdivide(&mut self, e: usize) -> Option<usize> {
        let (u, v) = (self.tails[e], self.heads[e]);
        let mid = 0.5 * (self.pos[u] + self.pos[v]);
        if !(self.pos[u] < mid && mid < self.pos[v]) {
            return None;
        }
        let w = self.new_vertex(mid);
        self.heads[e] = w;
        self.push_edge(w, v);
        Some(w)
    }
}

pub fn random_network(params: &GenParams) -> Result<PhyloNetwork, GenError> {
    if params.n_leaves == 0 {
        return Err(GenError::Params("n_leaves must be at least 1".into()));
    }
    for (name, p) in [("p_degree11", params.p_degree11), ("p_degree22", params.p_degree22)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(GenError::Params(format!("{name} = {p} is outside [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut b = random_tree(params.n_leaves, &mut rng);

    for index in 0..params.n_reticulations {
        add_reticulation(&mut b, &mut rng, index)?;
    }

    if params.p_degree22 > 0.0 {
        contract_pairs(&mut b, &mut rng, params.p_degree22);
    }

    if params.p_degree11 > 0.0 {
        let m = b.tails.len();
        for e in 0..m {
            if b.alive[e] && rng.gen_bool(params.p_degree11) {
                b.subdivide(e);
            }
        }
    }

    PhyloNetwork::from_raw(into_raw(&b)).map_err(GenError::Invalid)
}

fn random_tree(n_leaves: usize, rng: &mut ChaCha8Rng) -> Builder {
    let mut b = Builder {
        tails: Vec::new(),
        heads: Vec::new(),
        alive: Vec::new(),
        pos: Vec::new(),
        vertex_alive: Vec::new(),
        leaf_of: Vec::new(),
    };
    let root = b.new_vertex(0.0);
    let first = b.new_vertex(0.0);
    b.leaf_of[first] = Some(1);
    b.push_edge(root, first);
    if n_leaves >= 2 {
        let second = b.new_vertex(0.0);
        b.leaf_of[second] = Some(2);
        b.push_edge(root, second);
    }
    for label in 3..=n_leaves {
        let e = rng.gen_range(0..b.tails.len());
        let v = b.heads[e];
        let w = b.new_vertex(0.0);
        let leaf = b.new_vertex(0.0);
        b.leaf_of[leaf] = Some(label);
        b.heads[e] = w;
        b.push_edge(w, v);
        b.push_edge(w, leaf);
    }

    // Positions from a preorder walk with randomly ordered children.
    let nv = b.pos.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (&t, &h) in b.tails.iter().zip(&b.heads) {
        children[t].push(h);
    }
    let mut stack = vec![root];
    let mut next = 0.0;
    while let Some(v) = stack.pop() {
        b.pos[v] = next;
        next += 1.0;
        children[v].shuffle(rng);
        stack.extend(children[v].iter().copied());
    }
    b
}

fn add_reticulation(b: &mut Builder, rng: &mut ChaCha8Rng, index: usize) -> Result<(), GenError> {
    if b.tails.len() < 2 {
        b.subdivide(0);
    }
    let m = b.tails.len();
    for _ in 0..ATTEMPTS {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        if i == j || !b.alive[i] || !b.alive[j] {
            continue;
        }
        let mid = |e: usize| 0.5 * (b.pos[b.tails[e]] + b.pos[b.heads[e]]);
        let (mi, mj) = (mid(i), mid(j));
        if mi == mj {
            continue;
        }
        let (src, dst) = if mi < mj { (i, j) } else { (j, i) };
        let Some(s) = b.subdivide(src) else { continue };
        let Some(t) = b.subdivide(dst) else {
            // undo the first subdivision
            let tail_edge = b.tails.len() - 1;
            b.heads[src] = b.heads[tail_edge];
            b.tails.pop();
            b.heads.pop();
            b.alive.pop();
            b.pos.pop();
            b.vertex_alive.pop();
            b.leaf_of.pop();
            continue;
        };
        b.push_edge(s, t);
        return Ok(());
    }
    Err(GenError::RetriesExhausted {
        index,
        attempts: ATTEMPTS,
    })
}

/// Merges `x -> y` into `x` when `x` is (2,1) and `y` is (1,2).
fn contract_pairs(b: &mut Builder, rng: &mut ChaCha8Rng, p: f64) {
    let nv = b.pos.len();
    let mut ins: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut outs: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in 0..b.tails.len() {
        if b.alive[e] {
            outs[b.tails[e]].push(e);
            ins[b.heads[e]].push(e);
        }
    }
    for e in 0..b.tails.len() {
        if !b.alive[e] {
            continue;
        }
        let (x, y) = (b.tails[e], b.heads[e]);
        if ins[x].len() != 2 || outs[x].len() != 1 || ins[y].len() != 1 || outs[y].len() != 2 {
            continue;
        }
        if !rng.gen_bool(p) {
            continue;
        }
        b.alive[e] = false;
        b.vertex_alive[y] = false;
        outs[x].clear();
        for f in std::mem::take(&mut outs[y]) {
            b.tails[f] = x;
            outs[x].push(f);
        }
        ins[y].clear();
    }
}

/// Emits vertices in position order (a topological order) and edges sorted
/// by tail position, which keeps related vertices close in memory.
fn into_raw(b: &Builder) -> RawGraph {
    let mut order: Vec<usize> = (0..b.pos.len()).filter(|&v| b.vertex_alive[v]).collect();
    order.sort_by(|&x, &y| b.pos[x].total_cmp(&b.pos[y]));
    let mut names = vec![String::new(); b.pos.len()];
    let mut internal = 0usize;
    for &v in &order {
        names[v] = match (v, b.leaf_of[v]) {
            (0, _) => "root".to_owned(),
            (_, Some(label)) => format!("x{label}"),
            _ => {
                internal += 1;
                format!("v{internal}")
            }
        };
    }
    let mut raw = RawGraph::new();
    for &v in &order {
        raw.add_vertex(&names[v]);
    }
    let mut edges: Vec<usize> = (0..b.tails.len()).filter(|&e| b.alive[e]).collect();
    edges.sort_by(|&e, &f| {
        let key = |e: usize| (b.pos[b.tails[e]], b.pos[b.heads[e]]);
        let (a, c) = (key(e), key(f));
        a.0.total_cmp(&c.0).then(a.1.total_cmp(&c.1))
    });
    for e in edges {
        raw.add_edge(&names[b.tails[e]], &names[b.heads[e]]);
    }
    raw.set_root("root");
    for &v in &order {
        if let Some(label) = b.leaf_of[v] {
            raw.set_leaf_label(&names[v], &label.to_string());
        }
    }
    raw
}
