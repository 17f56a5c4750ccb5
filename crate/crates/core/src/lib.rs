//! Zig-zag trail decomposition of rooted almost-binary phylogenetic
//! networks, the tree-based deviation indices `δ*` and `η*`, and maximum
//! covering subtrees.
//!
//! Every edge of such a network lies in exactly one maximal zig-zag trail,
//! a walk whose consecutive edges alternately share a head and a tail. The
//! trails are crowns (closed), M-fences, N-fences and W-fences. The number
//! of W-fences is `δ*`, the network is tree-based exactly when it has none,
//! and `η*` (vertices left uncovered by a best subtree) equals it exactly
//! when every W-fence can be matched to an M-fence through a shared vertex.
//!
//! ```
//! use phylo_zigzag::{parse_phn, decompose, eta_fast, TrailKind};
//!
//! let n = parse_phn("edge ρ a\nedge ρ b\nedge a r\nedge b r\nedge r 1\n").unwrap();
//! let d = decompose(&n);
//! assert_eq!(d.counts().get(TrailKind::WFence), 1);
//! assert_eq!(eta_fast(&n).eta(), Some(1));
//! ```

pub mod bench;
pub mod dot;
pub mod fixtures;
pub mod genkit;
pub mod mw;
pub mod network;
pub mod oracle;
pub mod phn;
pub mod report;
pub mod treebase;
pub mod validate;
pub mod zigzag;

pub use dot::export_dot;
pub use genkit::{random_network, GenError, GenParams};
pub use mw::{
    build_mcst_via_resolution, eta_fast, eta_fast_with, max_mw_matching, mw_pair_graph, resolve, FastResult, MwError,
    MwMatching, MwPairGraph, Resolution,
};
pub use network::{Edge, EdgeId, PhyloNetwork, RawGraph, VertexId};
pub use oracle::{eta_exact, eta_exact_with, OracleError, OracleOptions, OracleResult};
pub use phn::{parse_phn, to_phn, ParseError};
pub use treebase::{subdivision_tree, validate_covering_subtree, CoveringSubtree, TreeError};
pub use validate::{validate_network, Rule, ValidationReport, Violation};
pub use zigzag::{
    check_count_identity, decompose, delta_star, is_tree_based, KindCounts, TrailKind, ZigzagDecomposition,
    ZigzagTrail,
};
