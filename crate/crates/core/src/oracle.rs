//! Exact maximum covering subtree by exhaustive search.
//!
//! For `k = 0, 1, 2, ...` every `k`-subset `S` of the non-root, non-leaf
//! vertices is tried in lexicographic order of external ids. `S` is feasible
//! when each remaining non-root vertex can pick one remaining parent such
//! that every remaining non-leaf vertex is picked at least once; in a DAG
//! those picks form a tree rooted at the root whose leaves are exactly the
//! network's leaves. The first feasible `S` gives `η*` and a witness.
//!
//! This module relies only on the network itself, never on the zig-zag
//! decomposition, so it can serve as ground truth for it.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::network::{EdgeId, PhyloNetwork, VertexId};
use crate::treebase::{validate_covering_subtree, CoveringSubtree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("search budget exhausted after {explored} nodes; eta >= {lower_bound}")]
    BudgetExceeded { lower_bound: usize, explored: u64 },
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub eta: usize,
    pub witness: CoveringSubtree,
    /// Search nodes visited (partial and complete candidate sets).
    pub explored: u64,
}

#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Cap on visited search nodes.
    pub budget: Option<u64>,
    /// Split each level across the rayon pool. The witness is the same
    /// either way; `explored` may differ.
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLevel {
    pub k: usize,
    pub explored: u64,
    /// External ids of the first feasible subset at this level, if any.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct SearchTrace {
    pub levels: Vec<TraceLevel>,
    pub result: OracleResult,
}

pub fn eta_exact(n: &PhyloNetwork, budget: Option<u64>) -> Result<OracleResult, OracleError> {
    eta_exact_with(n, &OracleOptions { budget, parallel: false })
}

pub fn eta_exact_with(n: &PhyloNetwork, opts: &OracleOptions) -> Result<OracleResult, OracleError> {
    run(n, opts).map(|t| t.result)
}

/// Same search as [`eta_exact`], keeping one log entry per level `k`.
pub fn search_trace(n: &PhyloNetwork, budget: Option<u64>) -> Result<SearchTrace, OracleError> {
    run(n, &OracleOptions { budget, parallel: false })
}

fn run(n: &PhyloNetwork, opts: &OracleOptions) -> Result<SearchTrace, OracleError> {
    let mut cands: Vec<VertexId> = (0..n.vertex_count())
        .filter(|&v| v != n.root() && !n.is_leaf(v))
        .collect();
    cands.sort_by(|&a, &b| n.name(a).cmp(n.name(b)));
    let space = Space::new(n, cands);
    let counter = AtomicU64::new(0);
    let mut levels = Vec::new();

    for k in 0..=space.cands.len() {
        let before = counter.load(Ordering::Relaxed);
        let found = space.level(k, opts, &counter);
        let explored = counter.load(Ordering::Relaxed) - before;
        match found {
            Err(()) => {
                return Err(OracleError::BudgetExceeded {
                    lower_bound: k,
                    explored: counter.load(Ordering::Relaxed),
                })
            }
            Ok(None) => levels.push(TraceLevel {
                k,
                explored,
                witness: None,
            }),
            Ok(Some((removed, edges))) => {
                let mut names: Vec<String> = removed.iter().map(|&v| n.name(v).to_owned()).collect();
                names.sort();
                levels.push(TraceLevel {
                    k,
                    explored,
                    witness: Some(names),
                });
                let witness =
                    validate_covering_subtree(n, &edges).expect("oracle picks always form a covering subtree");
                debug_assert_eq!(witness.uncovered().len(), k);
                return Ok(SearchTrace {
                    levels,
                    result: OracleResult {
                        eta: k,
                        witness,
                        explored: counter.load(Ordering::Relaxed),
                    },
                });
            }
        }
    }
    unreachable!("removing every candidate cannot be required: a covering subtree always exists")
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum State {
    Kept,
    Open,
    Removed,
}

/// Static data shared by every branch.
struct Space<'a> {
    n: &'a PhyloNetwork,
    cands: Vec<VertexId>,
}

/// Removed vertices and kept edges of a feasible candidate set.
type Hit = (Vec<VertexId>, Vec<EdgeId>);
type Found = Option<Hit>;

impl<'a> Space<'a> {
    fn new(n: &'a PhyloNetwork, cands: Vec<VertexId>) -> Self {
        Space { n, cands }
    }

    /// Lexicographically first feasible `k`-subset.
    fn level(&self, k: usize, opts: &OracleOptions, counter: &AtomicU64) -> Result<Found, ()> {
        let c = self.cands.len();
        if k == 0 {
            let mut b = Branch::new(self, opts.budget, counter);
            return b.search(0, 0);
        }
        let firsts = 0..=(c - k);
        let attempt = |i: usize| -> Option<Result<Hit, ()>> {
            let mut b = Branch::new(self, opts.budget, counter);
            for j in 0..i {
                if !b.keep(self.cands[j]) {
                    return None;
                }
            }
            if !b.remove(self.cands[i]) {
                return None;
            }
            b.search(i + 1, k - 1).transpose()
        };
        let hit = if opts.parallel {
            firsts.into_par_iter().find_map_first(attempt)
        } else {
            firsts.into_iter().find_map(attempt)
        };
        hit.transpose()
    }
}

/// Mutable search state for one branch.
struct Branch<'s, 'a> {
    space: &'s Space<'a>,
    state: Vec<State>,
    removed: Vec<VertexId>,
    budget: Option<u64>,
    counter: &'s AtomicU64,
}

impl<'s, 'a> Branch<'s, 'a> {
    fn new(space: &'s Space<'a>, budget: Option<u64>, counter: &'s AtomicU64) -> Self {
        let mut state = vec![State::Kept; space.n.vertex_count()];
        for &v in &space.cands {
            state[v] = State::Open;
        }
        Branch {
            space,
            state,
            removed: Vec::new(),
            budget,
            counter,
        }
    }

    fn tick(&self) -> Result<(), ()> {
        let used = self.counter.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget {
            Some(b) if used > b => Err(()),
            _ => Ok(()),
        }
    }

    /// A kept vertex is dead when all its parents, or all its children, are removed.
    fn alive(&self, v: VertexId) -> bool {
        let n = self.space.n;
        let has_parent = v == n.root() || n.parents(v).any(|p| self.state[p] != State::Removed);
        let has_child = n.is_leaf(v) || n.children(v).any(|c| self.state[c] != State::Removed);
        has_parent && has_child
    }

    fn keep(&mut self, v: VertexId) -> bool {
        self.state[v] = State::Kept;
        self.alive(v)
    }

    fn remove(&mut self, v: VertexId) -> bool {
        self.state[v] = State::Removed;
        self.removed.push(v);
        let n = self.space.n;
        n.parents(v)
            .chain(n.children(v))
            .all(|u| self.state[u] != State::Kept || self.alive(u))
    }

    fn unremove(&mut self, v: VertexId) {
        self.state[v] = State::Open;
        let popped = self.removed.pop();
        debug_assert_eq!(popped, Some(v));
    }

    /// Chooses `need` more vertices from `cands[start..]`.
    fn search(&mut self, start: usize, need: usize) -> Result<Found, ()> {
        self.tick()?;
        let cands = &self.space.cands;
        if need == 0 {
            let mut ok = true;
            for &v in &cands[start..] {
                if !self.keep(v) {
                    ok = false;
                    break;
                }
            }
            let found = if ok {
                self.assign().map(|edges| (self.removed.clone(), edges))
            } else {
                None
            };
            for &v in &cands[start..] {
                self.state[v] = State::Open;
            }
            return Ok(found);
        }
        let mut result = Ok(None);
        let mut last = start;
        for (i, &v) in cands.iter().enumerate().take(cands.len() - need + 1).skip(start) {
            last = i;
            if self.remove(v) {
                match self.search(i + 1, need - 1) {
                    Ok(None) => {}
                    other => {
                        self.unremove(v);
                        result = other;
                        break;
                    }
                }
            }
            self.unremove(v);
            if !self.keep(v) {
                break;
            }
        }
        for &v in &cands[start..=last.min(cands.len() - 1)] {
            self.state[v] = State::Open;
        }
        result
    }

    /// With every vertex decided, picks one parent per non-root vertex so
    /// that every non-leaf vertex is picked. Returns the chosen edges.
    fn assign(&self) -> Option<Vec<EdgeId>> {
        let n = self.space.n;
        let nv = n.vertex_count();
        let live = |v: VertexId| self.state[v] != State::Removed;
        let mut covered = vec![false; nv];
        let mut choice: Vec<Option<EdgeId>> = vec![None; nv];
        let mut open: Vec<(VertexId, [EdgeId; 2])> = Vec::new();
        for v in (0..nv).filter(|&v| live(v) && v != n.root()) {
            let ins: Vec<EdgeId> = n.in_edges(v).iter().copied().filter(|&e| live(n.edge(e).tail)).collect();
            match ins.as_slice() {
                [] => return None,
                [e] => {
                    choice[v] = Some(*e);
                    covered[n.edge(*e).tail] = true;
                }
                [a, b] => open.push((v, [*a, *b])),
                _ => unreachable!("almost-binary"),
            }
        }
        // last open child able to cover each parent
        let mut last_chance = vec![usize::MAX; nv];
        for (i, (_, es)) in open.iter().enumerate() {
            for &e in es {
                last_chance[n.edge(e).tail] = i;
            }
        }
        let needy = |v: VertexId, covered: &[bool]| live(v) && !n.is_leaf(v) && !covered[v];
        if (0..nv).any(|v| needy(v, &covered) && last_chance[v] == usize::MAX) {
            return None;
        }
        let mut cover_count = vec![0u32; nv];
        for (v, c) in covered.iter().enumerate() {
            if *c {
                cover_count[v] = 1;
            }
        }
        let mut picks = vec![0usize; open.len()];
        if !self.assign_open(&open, 0, &mut picks, &mut cover_count, &last_chance) {
            return None;
        }
        for (i, (v, es)) in open.iter().enumerate() {
            choice[*v] = Some(es[picks[i]]);
        }
        Some(choice.into_iter().flatten().collect())
    }

    fn assign_open(
        &self,
        open: &[(VertexId, [EdgeId; 2])],
        i: usize,
        picks: &mut [usize],
        cover: &mut [u32],
        last_chance: &[usize],
    ) -> bool {
        let n = self.space.n;
        if i == open.len() {
            return true;
        }
        let es = open[i].1;
        for side in 0..2 {
            let chosen = n.edge(es[side]).tail;
            let other = n.edge(es[1 - side]).tail;
            if cover[other] == 0 && !n.is_leaf(other) && last_chance[other] == i {
                continue;
            }
            cover[chosen] += 1;
            picks[i] = side;
            if self.assign_open(open, i + 1, picks, cover, last_chance) {
                return true;
            }
            cover[chosen] -= 1;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn tree_needs_nothing() {
        let r = eta_exact(&fixtures::fix_tree(), None).unwrap();
        assert_eq!(r.eta, 0);
        assert!(r.witness.uncovered().is_empty());
    }

    #[test]
    fn fix_a() {
        let n = fixtures::fix_a();
        let r = eta_exact(&n, None).unwrap();
        assert_eq!(r.eta, 1);
        assert_eq!(r.witness.uncovered_names(&n), ["a"]);
    }

    #[test]
    fn fix_b() {
        let n = fixtures::fix_b();
        let r = eta_exact(&n, None).unwrap();
        assert_eq!(r.eta, 3);
        assert_eq!(r.witness.uncovered_names(&n), ["a1", "a2", "u"]);
    }

    #[test]
    fn fix_c_is_tree_based() {
        assert_eq!(eta_exact(&fixtures::fix_c(), None).unwrap().eta, 0);
    }

    #[test]
    fn traces() {
        let t = search_trace(&fixtures::fix_a(), None).unwrap();
        let ks: Vec<(usize, bool)> = t.levels.iter().map(|l| (l.k, l.witness.is_some())).collect();
        assert_eq!(ks, [(0, false), (1, true)]);

        let t = search_trace(&fixtures::fix_tree(), None).unwrap();
        assert_eq!(t.levels.len(), 1);
        assert!(t.levels[0].witness.is_some());

        let t = search_trace(&fixtures::fix_b(), None).unwrap();
        let ks: Vec<(usize, bool)> = t.levels.iter().map(|l| (l.k, l.witness.is_some())).collect();
        assert_eq!(ks, [(0, false), (1, false), (2, false), (3, true)]);
    }

    #[test]
    fn budget() {
        let err = eta_exact(&fixtures::fix_b(), Some(3)).unwrap_err();
        let OracleError::BudgetExceeded { lower_bound, explored } = err;
        assert!(lower_bound <= 3);
        assert!(explored > 3);
    }

    #[test]
    fn parallel_matches_sequential() {
        for n in fixtures::all() {
            let seq = eta_exact(&n, None).unwrap();
            let par = eta_exact_with(&n, &OracleOptions { budget: None, parallel: true }).unwrap();
            assert_eq!(seq.eta, par.eta);
            assert_eq!(seq.witness, par.witness);
        }
    }
}
