//! Indices of rooted directions, the exact include/exclude laws for local
//! means, and the limb/core decomposition of a tree.
//!
//! The index of a direction with subtree count `N` and total order `R` is
//! `i = R / (N (N + 1))`; it is exactly the amount by which the local mean
//! at `S` grows when `S` absorbs the neighbour the direction is rooted at
//! (and shrinks when a leaf is removed). Indices always lie in `(0, 1/2]`.

use num_traits::One;
use thiserror::Error;

use crate::counting::{local_mean, rational_str, Rational, StatsCache};
use crate::rat;
use crate::tree::{Subtree, Tree, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("vertex {0} is an interior vertex of the reference subtree; its index is undefined")]
    InteriorVertex(usize),
    #[error("vertex {0} is not adjacent to the reference subtree")]
    NotAdjacentToReference(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} is not a leaf of the subtree")]
    NotALeaf(usize),
    #[error("cannot remove the only vertex of a subtree")]
    SingletonSubtree,
}

/// Index of `v` with respect to the subtree `s`: the direction rooted at
/// `v` growing away from `s`. Defined for any vertex outside `s` (the
/// blocked neighbour is the first step of the path toward `s`) and for
/// leaves of `s`; for `s = {v}` the direction is the whole tree rooted at
/// `v`.
pub fn index(s: &Subtree<'_>, v: usize) -> Result<Rational, IndexError> {
    let cache = StatsCache::new(s.tree());
    let set = s.vertices();
    if set.contains(v) {
        return cache.index_wrt(v, set).ok_or(IndexError::InteriorVertex(v));
    }
    let dist = s.tree().distances_from_set(set);
    cache
        .index_wrt_distance(v, set, &dist)
        .ok_or(IndexError::NotAdjacentToReference(v))
}

/// Index `i(v; w)` for adjacent vertices: the direction rooted at `v`
/// growing away from `w`.
pub fn index_toward(tree: &Tree, v: usize, w: usize) -> Result<Rational, IndexError> {
    if !tree.has_edge(v, w) {
        return Err(IndexError::NotAdjacent(v, w));
    }
    Ok(StatsCache::new(tree).index_toward(w, v))
}

/// Index of the whole tree rooted at `v`.
pub fn rooted_index(tree: &Tree, v: usize) -> Rational {
    StatsCache::new(tree).rooted_index(v)
}

/// Local mean after absorbing the neighbour `w`, computed through the index
/// identity `mu(S + w) = mu(S) + i(w; S)`.
pub fn mu_include(s: &Subtree<'_>, w: usize) -> Result<Rational, IndexError> {
    if s.contains(w) || s.attachment_of(w).is_none() {
        return Err(IndexError::NotAdjacentToReference(w));
    }
    let result = local_mean(s) + index(s, w)?;
    debug_assert_eq!(result, {
        let grown = Subtree::new(s.tree(), s.vertices().with(w)).unwrap();
        local_mean(&grown)
    });
    Ok(result)
}

/// Local mean after removing the leaf `v`, computed through the index
/// identity `mu(S - v) = mu(S) - i(v; S)`.
pub fn mu_exclude(s: &Subtree<'_>, v: usize) -> Result<Rational, IndexError> {
    if s.order() == 1 {
        return Err(IndexError::SingletonSubtree);
    }
    if !s.contains(v) || s.degree_within(v) != 1 {
        return Err(IndexError::NotALeaf(v));
    }
    let result = local_mean(s) - index(s, v)?;
    debug_assert_eq!(result, {
        let shrunk = Subtree::new(s.tree(), s.vertices().without(v)).unwrap();
        local_mean(&shrunk)
    });
    Ok(result)
}

/// Whether `i(v; w) = 1/2`, decided structurally: the component of `v` in
/// `T - w` must be a bare path with `v` at one end (so either `v` is a leaf
/// of `T`, or `deg(v) = 2` and everything beyond `v` away from `w` is a
/// chain). Must coincide with exact rational equality of the index.
pub fn half_index_predicate(tree: &Tree, v: usize, w: usize) -> Result<bool, IndexError> {
    if !tree.has_edge(v, w) {
        return Err(IndexError::NotAdjacent(v, w));
    }
    let comp = tree.component_away(v, VertexSet::singleton(w));
    let degree_within = |u: usize| {
        tree.neighbors(u)
            .iter()
            .filter(|&&x| comp.contains(x))
            .count()
    };
    Ok(degree_within(v) <= 1 && comp.iter().all(|u| degree_within(u) <= 2))
}

/// Partition of a tree into its core and its limbs.
///
/// A limb is a maximal path consisting of a leaf and vertices of degree 2;
/// the core is what remains after deleting all limbs. A path has an empty
/// core and is recorded as one degenerate limb covering the whole tree,
/// anchored at its lowest-id leaf end.
#[derive(Debug, Clone)]
pub struct CoreDecomposition {
    pub core: VertexSet,
    /// Each limb ordered from the core side outward, leaf last. For a path
    /// the single limb runs from the lowest-id end to the other end.
    pub limbs: Vec<Vec<usize>>,
    /// Core vertices adjacent to some limb vertex.
    pub joint_vertices: VertexSet,
    /// Maximal paths inside the core whose two end-vertices have degree at
    /// least 3 and whose interior vertices have degree 2 (in the whole
    /// tree). Ordered from the smaller end-vertex; empty when the core has
    /// fewer than two vertices.
    pub core_paths: Vec<Vec<usize>>,
    /// Set when the tree is a path, which has no core and where the limb
    /// convention above is a choice rather than forced.
    pub degenerate_path: bool,
}

impl CoreDecomposition {
    pub fn is_limb_vertex(&self, v: usize) -> bool {
        !self.core.contains(v)
    }

    /// Whether `v` lies on some core-path (end-vertices included).
    pub fn is_core_path_vertex(&self, v: usize) -> bool {
        self.core_paths.iter().any(|p| p.contains(&v))
    }

    pub fn limb_containing(&self, v: usize) -> Option<&[usize]> {
        self.limbs
            .iter()
            .find(|limb| limb.contains(&v))
            .map(|l| l.as_slice())
    }
}

pub fn core_decomposition(tree: &Tree) -> CoreDecomposition {
    let n = tree.n();
    if tree.is_path() {
        let start = if n == 1 {
            0
        } else {
            (0..n).find(|&v| tree.is_leaf(v)).unwrap()
        };
        let mut limb = vec![start];
        let mut prev = start;
        let mut cur = start;
        while let Some(&next) = tree.neighbors(cur).iter().find(|&&w| w != prev) {
            limb.push(next);
            prev = cur;
            cur = next;
        }
        return CoreDecomposition {
            core: VertexSet::EMPTY,
            limbs: vec![limb],
            joint_vertices: VertexSet::EMPTY,
            core_paths: Vec::new(),
            degenerate_path: true,
        };
    }

    let mut limbs = Vec::new();
    let mut limb_vertices = VertexSet::EMPTY;
    for leaf in (0..n).filter(|&v| tree.is_leaf(v)) {
        let mut walk = vec![leaf];
        let mut prev = leaf;
        let mut cur = tree.neighbors(leaf)[0];
        while tree.degree(cur) == 2 {
            walk.push(cur);
            let next = *tree.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        // cur is the branching vertex anchoring this limb; not part of it
        walk.reverse();
        for &v in &walk {
            limb_vertices.insert(v);
        }
        limbs.push(walk);
    }
    let core = tree.full_set().difference(limb_vertices);
    let joint_vertices = VertexSet::from_iter(core.iter().filter(|&v| {
        tree.neighbors(v).iter().any(|&w| limb_vertices.contains(w))
    }));

    let mut core_paths = Vec::new();
    for s in core.iter().filter(|&v| tree.degree(v) >= 3) {
        for &first in tree.neighbors(s) {
            if !core.contains(first) {
                continue;
            }
            let mut path = vec![s, first];
            let mut prev = s;
            let mut cur = first;
            while tree.degree(cur) == 2 {
                let next = *tree.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
                path.push(next);
                prev = cur;
                cur = next;
            }
            // keep one orientation per path: smaller end-vertex first
            if s < *path.last().unwrap() {
                core_paths.push(path);
            }
        }
    }
    core_paths.sort();

    CoreDecomposition {
        core,
        limbs,
        joint_vertices,
        core_paths,
        degenerate_path: false,
    }
}

/// One failed comparison from the outer-neighbour index laws.
#[derive(Debug, Clone)]
pub struct MonotonicityViolation {
    pub vertex: usize,
    pub outer: usize,
    pub vertex_index: Rational,
    pub outer_index: Rational,
    pub detail: String,
}

impl std::fmt::Display for MonotonicityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "v={} (i={}) vs outer {} (i={}): {}",
            self.vertex,
            rational_str(&self.vertex_index),
            self.outer,
            rational_str(&self.outer_index),
            self.detail
        )
    }
}

/// Checks, for every vertex that is outside `s` or a leaf of `s`, the index
/// comparison against its outer neighbours (the adjacent vertices one step
/// further from `s`): with two or more outer neighbours every one has a
/// strictly larger index; with exactly one, the vertex's own index is at
/// least the outer one, with equality exactly when both are `1/2`.
pub fn outer_neighbor_monotonicity_check(s: &Subtree<'_>) -> Vec<MonotonicityViolation> {
    let cache = StatsCache::new(s.tree());
    monotonicity_violations(&cache, s.vertices())
}

pub fn monotonicity_violations(
    cache: &StatsCache<'_>,
    s: VertexSet,
) -> Vec<MonotonicityViolation> {
    let tree = cache.tree();
    let dist = tree.distances_from_set(s);
    let half = rat(1, 2);
    let mut violations = Vec::new();
    for v in tree.vertices() {
        let candidate = if s.contains(v) {
            // leaves of s only (single-vertex s counts)
            tree.neighbors(v)
                .iter()
                .filter(|&&w| s.contains(w))
                .count()
                <= 1
        } else {
            true
        };
        if !candidate {
            continue;
        }
        let i_v = match cache.index_wrt_distance(v, s, &dist) {
            Some(i) => i,
            None => continue,
        };
        let outer: Vec<usize> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| dist[w] == dist[v] + 1)
            .collect();
        if outer.len() >= 2 {
            for &w in &outer {
                let i_w = cache.index_toward(v, w);
                if i_v >= i_w {
                    violations.push(MonotonicityViolation {
                        vertex: v,
                        outer: w,
                        vertex_index: i_v.clone(),
                        outer_index: i_w,
                        detail: "branching vertex must have strictly smaller index".into(),
                    });
                }
            }
        } else if outer.len() == 1 {
            let w = outer[0];
            let i_w = cache.index_toward(v, w);
            if i_v < i_w {
                violations.push(MonotonicityViolation {
                    vertex: v,
                    outer: w,
                    vertex_index: i_v.clone(),
                    outer_index: i_w.clone(),
                    detail: "single outer neighbour may not have larger index".into(),
                });
            } else if i_v == i_w && !(i_v == half && i_w == half) {
                violations.push(MonotonicityViolation {
                    vertex: v,
                    outer: w,
                    vertex_index: i_v.clone(),
                    outer_index: i_w,
                    detail: "equality only allowed when both indices are 1/2".into(),
                });
            }
        }
    }
    violations
}

impl<'t> StatsCache<'t> {
    /// Index of `v` with respect to `s` given precomputed BFS distances from
    /// `s`; handles vertices at any distance by blocking the unique
    /// neighbour on the path toward `s`.
    pub fn index_wrt_distance(
        &self,
        v: usize,
        s: VertexSet,
        dist: &[usize],
    ) -> Option<Rational> {
        if s.contains(v) {
            return self.index_wrt(v, s);
        }
        let toward = self
            .tree()
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| dist[w] + 1 == dist[v])?;
        Some(self.index_toward(toward, v))
    }
}

/// Exact index-range check: `0 < i <= 1/2`.
pub fn index_in_range(i: &Rational) -> bool {
    use num_traits::Zero;
    i > &Rational::zero() && i <= &Rational::new(One::one(), 2.into())
}
