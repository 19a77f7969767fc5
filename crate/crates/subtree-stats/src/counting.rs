//! Exact subtree counts and total orders.
//!
//! For a tree `T` and vertex `v` with neighbour-direction subtrees
//! `T_1..T_d` (counts `N_i`, total orders `R_i`), the number of subtrees
//! containing `v` is the product of `(N_i + 1)` over the directions, and the
//! local mean at `v` is `1 + sum R_i / (N_i + 1)`. The `R` recurrence is
//! evaluated as `R = N + sum R_i * (N / (N_i + 1))` in integer arithmetic:
//! each `N / (N_i + 1)` is exact because the product formula literally
//! contains the factor. All quantities are arbitrary-precision.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::tree::{contract, for_each_subtree, Subtree, Tree, VertexSet};

/// Exact rational with arbitrary-precision numerator and denominator,
/// always reduced, denominator positive.
pub type Rational = Ratio<BigInt>;

/// Default vertex-count guard for brute-force enumeration.
pub const ENUM_GUARD: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("vertex {0} lies in the blocked set")]
    VertexBlocked(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("enumeration guard: order {n} exceeds limit {limit} (override to proceed)")]
    EnumerationGuard { n: usize, limit: usize },
}

/// A pair (N, R): the number of subtrees in some family and the sum of
/// their orders. `R >= N >= 1` for nonempty families and `R <= N * |T|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeStats {
    pub count: BigUint,
    pub total_order: BigUint,
}

impl SubtreeStats {
    pub fn new(count: impl Into<BigUint>, total_order: impl Into<BigUint>) -> Self {
        SubtreeStats {
            count: count.into(),
            total_order: total_order.into(),
        }
    }

    /// Mean order `R / N` as an exact rational.
    pub fn mean(&self) -> Rational {
        big_ratio(&self.total_order, &self.count)
    }
}

/// Exact rational from two unsigned big integers.
pub fn big_ratio(numer: &BigUint, denom: &BigUint) -> Rational {
    Ratio::new(BigInt::from(numer.clone()), BigInt::from(denom.clone()))
}

/// Canonical `p/q` rendering (always with an explicit denominator).
pub fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rooted_rec(tree: &Tree, u: usize, parent: Option<usize>, blocked: VertexSet) -> (BigUint, BigUint) {
    let mut count = BigUint::one();
    let mut children: Vec<(BigUint, BigUint)> = Vec::new();
    for &w in tree.neighbors(u) {
        if Some(w) == parent || blocked.contains(w) {
            continue;
        }
        let child = rooted_rec(tree, w, Some(u), blocked);
        count *= &child.0 + 1u32;
        children.push(child);
    }
    let mut total = count.clone();
    for (cn, cr) in children {
        total += cr * (&count / (cn + 1u32));
    }
    (count, total)
}

/// Counts the subtrees that contain `v` and avoid `away_from` entirely
/// (subtrees of the component of `v` in `T - away_from` containing `v`),
/// returning their number and total order.
///
/// With `away_from` the vertex set of a subtree adjacent to `v`, or a single
/// neighbour of `v`, this is exactly the count of subtrees rooted at `v`
/// growing away from that reference.
pub fn rooted_stats(tree: &Tree, v: usize, away_from: VertexSet) -> Result<SubtreeStats, CountError> {
    if away_from.contains(v) {
        return Err(CountError::VertexBlocked(v));
    }
    let (count, total_order) = rooted_rec(tree, v, None, away_from);
    Ok(SubtreeStats { count, total_order })
}

/// Counts the subtrees of `T` containing the subtree `S`: contracts `S` to a
/// single vertex, counts rooted subtrees there, and shifts the total order
/// by `(|S| - 1)` per subtree (the contraction bijection changes every order
/// by exactly that amount).
pub fn subtree_stats(s: &Subtree<'_>) -> SubtreeStats {
    let k = s.order();
    if k == 1 {
        let v = s.vertices().min_vertex().unwrap();
        return rooted_stats(s.tree(), v, VertexSet::EMPTY).unwrap();
    }
    let c = contract(s);
    let base = rooted_stats(&c.contracted, c.image, VertexSet::EMPTY).unwrap();
    let shift = &base.count * BigUint::from(k - 1);
    SubtreeStats {
        total_order: base.total_order + shift,
        count: base.count,
    }
}

/// Total order of all subtrees containing the adjacent pair `v, w`, computed
/// by splitting each such subtree at the edge: with `T_v`, `T_w` the two
/// components of `T - vw`, the total is
/// `N_{T_w}(w) R_{T_v}(v) + R_{T_w}(w) N_{T_v}(v)`.
///
/// Deliberately a different route than [`subtree_stats`]; the two must agree
/// on the `R` component for every edge.
pub fn pair_total_order(tree: &Tree, v: usize, w: usize) -> Result<BigUint, CountError> {
    if !tree.has_edge(v, w) {
        return Err(CountError::NotAdjacent(v, w));
    }
    let side_v = rooted_stats(tree, v, VertexSet::singleton(w))?;
    let side_w = rooted_stats(tree, w, VertexSet::singleton(v))?;
    Ok(&side_w.count * &side_v.total_order + &side_w.total_order * &side_v.count)
}

/// Local mean at `S`: the average order of the subtrees containing `S`.
pub fn local_mean(s: &Subtree<'_>) -> Rational {
    subtree_stats(s).mean()
}

/// Global subtree statistics of a tree.
#[derive(Debug, Clone)]
pub struct GlobalStats {
    pub stats: SubtreeStats,
    /// Average order of all subtrees.
    pub mean: Rational,
    /// Mean divided by the order of the tree.
    pub density: Rational,
}

/// Counts all subtrees of `T`. Under the rooting at vertex 0, each subtree
/// is counted exactly once at its vertex closest to the root, i.e. growing
/// away from that vertex's parent.
pub fn global_stats(tree: &Tree) -> GlobalStats {
    let parents = tree.bfs_parents(0);
    let mut count = BigUint::zero();
    let mut total = BigUint::zero();
    for v in tree.vertices() {
        let away = match parents[v] {
            Some(p) => VertexSet::singleton(p),
            None => VertexSet::EMPTY,
        };
        let s = rooted_stats(tree, v, away).unwrap();
        count += s.count;
        total += s.total_order;
    }
    let stats = SubtreeStats {
        count,
        total_order: total,
    };
    let mean = stats.mean();
    let density = &mean / BigInt::from(tree.n());
    GlobalStats {
        stats,
        mean,
        density,
    }
}

/// Brute-force (N, R) by direct enumeration; the independent oracle against
/// the dynamic-programming routes. Guarded by vertex count.
pub fn oracle_stats(
    tree: &Tree,
    containing: Option<&Subtree<'_>>,
    order: Option<usize>,
) -> Result<SubtreeStats, CountError> {
    oracle_stats_with_limit(tree, containing, order, ENUM_GUARD)
}

/// [`oracle_stats`] with an explicit enumeration guard.
pub fn oracle_stats_with_limit(
    tree: &Tree,
    containing: Option<&Subtree<'_>>,
    order: Option<usize>,
    limit: usize,
) -> Result<SubtreeStats, CountError> {
    if tree.n() > limit {
        return Err(CountError::EnumerationGuard {
            n: tree.n(),
            limit,
        });
    }
    let mut count: u128 = 0;
    let mut total: u128 = 0;
    for_each_subtree(tree, containing.map(|s| s.vertices()), order, |s| {
        count += 1;
        total += s.len() as u128;
    });
    Ok(SubtreeStats {
        count: BigUint::from(count),
        total_order: BigUint::from(total),
    })
}

/// Outcome of checking a bound together with its exactness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub tight: bool,
}

/// Checks the vertex local-mean lower bound `mu(v) >= (n + 1) / 2`, whose
/// equality case is exactly "T is astral over v" (T is a path or `v` is the
/// only vertex of degree greater than 2).
pub fn mean_lower_bound_check(tree: &Tree, v: usize) -> BoundCheck {
    let mu = rooted_stats(tree, v, VertexSet::EMPTY).unwrap().mean();
    let bound = Rational::new(BigInt::from(tree.n() + 1), BigInt::from(2));
    BoundCheck {
        holds: mu >= bound,
        tight: mu == bound,
    }
}

/// Precomputed per-direction subtree statistics of one tree.
///
/// `directed(u, v)` (for an edge `uv`) is the (N, R) of subtrees rooted at
/// `v` growing away from `u`; every anchored count, mean, density and index
/// of the tree is a product/sum over these, which makes the exhaustive
/// corpus suites cheap.
pub struct StatsCache<'t> {
    tree: &'t Tree,
    offset: Vec<usize>,
    // indexed by offset[v] + position of u in adj[v]
    stats: Vec<(BigUint, BigUint)>,
}

impl<'t> StatsCache<'t> {
    pub fn new(tree: &'t Tree) -> Self {
        let n = tree.n();
        let mut offset = vec![0usize; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + tree.degree(v);
        }
        let mut stats: Vec<Option<(BigUint, BigUint)>> = vec![None; offset[n]];
        let mut cache = StatsCacheBuilder {
            tree,
            offset: &offset,
            stats: &mut stats,
        };
        for v in 0..n {
            for &u in tree.neighbors(v) {
                cache.get(u, v);
            }
        }
        StatsCache {
            tree,
            offset,
            stats: stats.into_iter().map(|s| s.unwrap()).collect(),
        }
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    fn idx(&self, away_from: usize, at: usize) -> usize {
        let pos = self
            .tree
            .neighbors(at)
            .binary_search(&away_from)
            .expect("directed stats require an edge");
        self.offset[at] + pos
    }

    /// (N, R) of subtrees rooted at `at` growing away from its neighbour
    /// `away_from`.
    pub fn directed(&self, away_from: usize, at: usize) -> &(BigUint, BigUint) {
        &self.stats[self.idx(away_from, at)]
    }

    /// (N, R) of all subtrees containing the vertex `v`.
    pub fn vertex_stats(&self, v: usize) -> SubtreeStats {
        self.stats_over(self.tree.neighbors(v).iter().map(|&w| (v, w)), 1)
    }

    /// (N, R) of all subtrees containing the connected set `s`, assembled
    /// from the directions leaving `s`.
    pub fn set_stats(&self, s: VertexSet) -> SubtreeStats {
        debug_assert!(self.tree.is_connected_set(s));
        let boundary: Vec<(usize, usize)> = s
            .iter()
            .flat_map(|u| {
                self.tree
                    .neighbors(u)
                    .iter()
                    .filter(move |&&w| !s.contains(w))
                    .map(move |&w| (u, w))
            })
            .collect();
        self.stats_over(boundary.into_iter(), s.len())
    }

    fn stats_over(
        &self,
        directions: impl Iterator<Item = (usize, usize)>,
        base_order: usize,
    ) -> SubtreeStats {
        let dirs: Vec<&(BigUint, BigUint)> =
            directions.map(|(u, w)| self.directed(u, w)).collect();
        let mut count = BigUint::one();
        for (n, _) in &dirs {
            count *= n + 1u32;
        }
        let mut total = &count * BigUint::from(base_order);
        for (n, r) in &dirs {
            total += r * (&count / (n + 1u32));
        }
        SubtreeStats {
            count,
            total_order: total,
        }
    }

    pub fn mean_of_vertex(&self, v: usize) -> Rational {
        self.vertex_stats(v).mean()
    }

    pub fn mean_of_set(&self, s: VertexSet) -> Rational {
        self.set_stats(s).mean()
    }

    /// Local density of a proper nonempty set: `(mu(S) - |S|) / (n - |S|)`.
    pub fn density_of_set(&self, s: VertexSet) -> Option<Rational> {
        let k = s.len();
        let n = self.tree.n();
        if k == 0 || k >= n {
            return None;
        }
        let mu = self.mean_of_set(s);
        Some((mu - BigInt::from(k)) / BigInt::from(n - k))
    }

    /// Index of the direction rooted at `v` away from its neighbour
    /// `blocked`: `R / (N (N + 1))`.
    pub fn index_toward(&self, blocked: usize, v: usize) -> Rational {
        let (n, r) = self.directed(blocked, v);
        index_from_stats(n, r)
    }

    /// Index of the whole tree rooted at `v`.
    pub fn rooted_index(&self, v: usize) -> Rational {
        let s = self.vertex_stats(v);
        index_from_stats(&s.count, &s.total_order)
    }

    /// Index of `v` with respect to the connected set `s`, defined when `v`
    /// is adjacent to `s` (grow away from `s`) or a leaf of `s` (grow away
    /// from `s - v`); for `s = {v}` this is the whole-tree rooted index.
    pub fn index_wrt(&self, v: usize, s: VertexSet) -> Option<Rational> {
        let inside: Vec<usize> = self
            .tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| s.contains(w))
            .collect();
        if s.contains(v) {
            match inside.len() {
                0 => Some(self.rooted_index(v)), // s == {v}
                1 => Some(self.index_toward(inside[0], v)),
                _ => None, // not a leaf of s
            }
        } else {
            match inside.len() {
                1 => Some(self.index_toward(inside[0], v)),
                _ => None,
            }
        }
    }
}

/// `R / (N (N + 1))`, the index value of a rooted direction.
pub fn index_from_stats(count: &BigUint, total_order: &BigUint) -> Rational {
    let n = BigInt::from(count.clone());
    Ratio::new(
        BigInt::from(total_order.clone()),
        &n * (&n + BigInt::one()),
    )
}

struct StatsCacheBuilder<'a, 't> {
    tree: &'t Tree,
    offset: &'a [usize],
    stats: &'a mut [Option<(BigUint, BigUint)>],
}

impl StatsCacheBuilder<'_, '_> {
    fn get(&mut self, away_from: usize, at: usize) -> (BigUint, BigUint) {
        let pos = self
            .tree
            .neighbors(at)
            .binary_search(&away_from)
            .expect("directed stats require an edge");
        let idx = self.offset[at] + pos;
        if let Some(s) = &self.stats[idx] {
            return s.clone();
        }
        let children: Vec<(BigUint, BigUint)> = self
            .tree
            .neighbors(at)
            .to_vec()
            .into_iter()
            .filter(|&w| w != away_from)
            .map(|w| self.get(at, w))
            .collect();
        let mut count = BigUint::one();
        for (n, _) in &children {
            count *= n + 1u32;
        }
        let mut total = count.clone();
        for (n, r) in &children {
            total += r * (&count / (n + 1u32));
        }
        self.stats[idx] = Some((count.clone(), total.clone()));
        (count, total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::rat;
    use crate::tree::all_labeled_trees;

    fn stats(n: u32, r: u32) -> SubtreeStats {
        SubtreeStats::new(n, r)
    }

    // broom(3, 2): path 0-1-2 with leaves 3, 4 on vertex 2; the reference
    // subtree is {0}, v = 1, w = 2.
    fn five_vertex_broom() -> Tree {
        families::broom(3, 2).unwrap()
    }

    #[test]
    fn rooted_stats_on_broom_match_known_values() {
        let t = five_vertex_broom();
        // away from the reference {0}: the path toward it is blocked at 1
        let w = rooted_stats(&t, 2, VertexSet::singleton(1)).unwrap();
        assert_eq!(w, stats(4, 8));
        let v = rooted_stats(&t, 1, VertexSet::singleton(0)).unwrap();
        assert_eq!(v, stats(5, 13));
    }

    #[test]
    fn rooted_stats_single_vertex() {
        let t = families::path(1).unwrap();
        assert_eq!(rooted_stats(&t, 0, VertexSet::EMPTY).unwrap(), stats(1, 1));
    }

    #[test]
    fn rooted_stats_rejects_blocked_vertex() {
        let t = five_vertex_broom();
        assert!(matches!(
            rooted_stats(&t, 1, VertexSet::singleton(1)),
            Err(CountError::VertexBlocked(1))
        ));
    }

    #[test]
    fn subtree_stats_on_p2() {
        let t = families::path(2).unwrap();
        let s = Subtree::of_vertices(&t, [0]).unwrap();
        let st = subtree_stats(&s);
        assert_eq!(st, stats(2, 3));
        assert_eq!(st.mean(), rat(3, 2));
    }

    #[test]
    fn subtree_stats_whole_tree() {
        for n in 1..=6 {
            let t = families::path(n).unwrap();
            let st = subtree_stats(&Subtree::whole(&t));
            assert_eq!(st, stats(1, n as u32));
        }
    }

    #[test]
    fn pair_total_order_examples() {
        let p2 = families::path(2).unwrap();
        assert_eq!(pair_total_order(&p2, 0, 1).unwrap(), BigUint::from(2u32));
        let p3 = families::path(3).unwrap();
        assert_eq!(pair_total_order(&p3, 0, 1).unwrap(), BigUint::from(5u32));
        assert!(matches!(
            pair_total_order(&p3, 0, 2),
            Err(CountError::NotAdjacent(0, 2))
        ));
    }

    #[test]
    fn pair_total_order_agrees_with_subtree_stats() {
        let t = five_vertex_broom();
        for &(u, v) in t.edges() {
            let s = Subtree::of_vertices(&t, [u, v]).unwrap();
            assert_eq!(pair_total_order(&t, u, v).unwrap(), subtree_stats(&s).total_order);
        }
    }

    #[test]
    fn global_stats_small_paths() {
        let g2 = global_stats(&families::path(2).unwrap());
        assert_eq!(g2.stats, stats(3, 4));
        assert_eq!(g2.mean, rat(4, 3));
        assert_eq!(g2.density, rat(2, 3));
        let g3 = global_stats(&families::path(3).unwrap());
        assert_eq!(g3.stats, stats(6, 10));
        assert_eq!(g3.mean, rat(5, 3));
    }

    #[test]
    fn global_stats_star_closed_form() {
        // K_{1,m}: 2^m subtrees containing the centre plus m singleton
        // leaves; total order (m + 2) 2^(m-1) + m
        for n in 2..=10usize {
            let m = n - 1;
            let g = global_stats(&families::star(n).unwrap());
            let count = BigUint::from(2u32).pow(m as u32) + BigUint::from(m);
            let total =
                BigUint::from(m + 2) * BigUint::from(2u32).pow(m as u32 - 1) + BigUint::from(m);
            assert_eq!(g.stats.count, count);
            assert_eq!(g.stats.total_order, total);
        }
    }

    #[test]
    fn oracle_matches_dp_exhaustively_small() {
        for n in 1..=6 {
            for t in all_labeled_trees(n).unwrap() {
                let g = global_stats(&t);
                let o = oracle_stats(&t, None, None).unwrap();
                assert_eq!(g.stats, o);
                for s in crate::tree::enumerate_subtrees(&t, None, None) {
                    let sub = Subtree::new(&t, s).unwrap();
                    assert_eq!(subtree_stats(&sub), oracle_stats(&t, Some(&sub), None).unwrap());
                }
            }
        }
    }

    #[test]
    fn oracle_with_order_filter() {
        let star5 = families::star(5).unwrap();
        let o = oracle_stats(&star5, None, Some(3)).unwrap();
        assert_eq!(o.count, BigUint::from(6u32));
        let center = Subtree::of_vertices(&star5, [0]).unwrap();
        let oc = oracle_stats(&star5, Some(&center), None).unwrap();
        assert_eq!(oc.count, BigUint::from(16u32));
    }

    #[test]
    fn oracle_guard_trips() {
        let t = families::path(17).unwrap();
        assert!(matches!(
            oracle_stats(&t, None, None),
            Err(CountError::EnumerationGuard { n: 17, limit: 16 })
        ));
        assert!(oracle_stats_with_limit(&t, None, None, 20).is_ok());
    }

    #[test]
    fn lower_bound_path_and_star() {
        for n in 2..=7 {
            let p = families::path(n).unwrap();
            for v in 0..n {
                let chk = mean_lower_bound_check(&p, v);
                assert!(chk.holds && chk.tight, "path {n} vertex {v}");
            }
        }
        let s = families::star(6).unwrap();
        let chk = mean_lower_bound_check(&s, 0);
        assert!(chk.holds && chk.tight);
        let chk_leaf = mean_lower_bound_check(&s, 1);
        assert!(chk_leaf.holds && !chk_leaf.tight);
    }

    #[test]
    fn lower_bound_not_tight_with_two_branch_vertices() {
        let t = families::two_stars(2, 0).unwrap();
        let chk = mean_lower_bound_check(&t, 0);
        assert!(chk.holds && !chk.tight);
    }

    #[test]
    fn cache_agrees_with_direct_computation() {
        for n in 2..=6 {
            for t in all_labeled_trees(n).unwrap() {
                let cache = StatsCache::new(&t);
                for s in crate::tree::enumerate_subtrees(&t, None, None) {
                    let sub = Subtree::new(&t, s).unwrap();
                    assert_eq!(cache.set_stats(s), subtree_stats(&sub));
                }
                for v in t.vertices() {
                    assert_eq!(
                        cache.vertex_stats(v),
                        rooted_stats(&t, v, VertexSet::EMPTY).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cache_indices_on_broom() {
        let t = five_vertex_broom();
        let cache = StatsCache::new(&t);
        assert_eq!(cache.index_toward(1, 2), rat(2, 5));
        assert_eq!(cache.index_toward(0, 1), rat(13, 30));
        // leaf direction
        assert_eq!(cache.index_toward(2, 3), rat(1, 2));
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_str(&rat(21, 40)), "21/40");
        assert_eq!(rational_str(&rat(4, 2)), "2/1");
    }
}
