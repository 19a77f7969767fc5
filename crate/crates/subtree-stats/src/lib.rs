//! Exact subtree statistics on trees.
//!
//! A *subtree* here is a nonempty vertex subset of a tree whose induced
//! subgraph is connected. The crate computes, in exact rational arithmetic:
//!
//! - subtree counts and total orders (rooted, anchored at a subtree, global),
//! - local means `mu(S)` (average order of the subtrees containing `S`) and
//!   the index `i(v; S)` (the exact change of the local mean when `S`
//!   absorbs the neighbour `v`),
//! - local densities `D(S) = (mu(S) - |S|) / (|T| - |S|)`,
//! - limb/core decompositions of a tree,
//! - `k`-maximal / `k`-minimal subtrees and maximal-density subtrees by
//!   exhaustive search, plus an index-guided swap heuristic,
//! - corpus-wide verification suites that machine-check the structural laws
//!   relating all of the above over every labeled tree up to a given order.
//!
//! Everything is `BigUint`/`BigInt` backed; equality claims such as
//! `D(S) = 1/2` are decided exactly, never through floating point.

pub mod counting;
pub mod density;
pub mod extremal;
pub mod families;
pub mod structure;
pub mod tree;
pub mod verify;

pub use counting::{
    global_stats, local_mean, mean_lower_bound_check, oracle_stats, pair_total_order,
    rooted_stats, subtree_stats, GlobalStats, Rational, StatsCache, SubtreeStats,
};
pub use density::{
    global_vs_local_density, limb_absorption_check, local_density, max_density_subtree,
    rooted_type, two_vertex_comparison, DensityMaxResult, RootedKind, StructureClass,
};
pub use extremal::{
    classify_leaves, index_guided_search, k_extremal, two_star_closed_forms,
    verify_maximal_theorems, verify_minimal_theorem, Direction, ExtremalResult, LeafCase,
};
pub use families::generate;
pub use structure::{core_decomposition, half_index_predicate, index, CoreDecomposition};
pub use tree::{
    all_labeled_trees, contract, enumerate_subtrees, labeled_tree_count, sample_labeled_trees,
    Contraction, Subtree, Tree, TreeError, VertexSet, MAX_VERTICES,
};
pub use verify::{run_all, run_suite, SuiteConfig, SuiteReport, Violation, SUITE_NAMES};

/// Shorthand for building a small exact rational, mostly used in checks
/// against closed-form constants such as `1/2` or `(n+1)/2`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
