//! Exhaustive and index-guided search for subtrees with extremal local
//! mean, classification of the leaf configurations extremal subtrees can
//! have, and the closed forms for the two-star families.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::counting::{Rational, StatsCache};
use crate::structure::{core_decomposition, CoreDecomposition};
use crate::tree::{for_each_subtree, Subtree, Tree, VertexSet};
use crate::{families, rat};

/// Default vertex-count guard for exhaustive extremal searches.
pub const EXTREMAL_GUARD: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("subtree order {k} out of range 1..={n}")]
    BadOrder { k: usize, n: usize },
    #[error("enumeration guard: order {n} exceeds limit {limit} (override to proceed)")]
    EnumerationGuard { n: usize, limit: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Max,
    Min,
}

impl Direction {
    /// True when `candidate` improves on `best` in this direction.
    fn improves(&self, candidate: &Rational, best: &Rational) -> bool {
        match self {
            Direction::Max => candidate > best,
            Direction::Min => candidate < best,
        }
    }
}

/// All order-`k` subtrees attaining the extremal local mean, with the value.
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub k: usize,
    pub direction: Direction,
    pub value: Rational,
    /// Every tie, in enumeration order.
    pub optima: Vec<VertexSet>,
}

pub fn k_extremal(tree: &Tree, k: usize, direction: Direction) -> Result<ExtremalResult, ExtremalError> {
    k_extremal_with_limit(tree, k, direction, EXTREMAL_GUARD)
}

pub fn k_extremal_with_limit(
    tree: &Tree,
    k: usize,
    direction: Direction,
    limit: usize,
) -> Result<ExtremalResult, ExtremalError> {
    if tree.n() > limit {
        return Err(ExtremalError::EnumerationGuard {
            n: tree.n(),
            limit,
        });
    }
    if k < 1 || k > tree.n() {
        return Err(ExtremalError::BadOrder { k, n: tree.n() });
    }
    let cache = StatsCache::new(tree);
    Ok(k_extremal_cached(&cache, k, direction))
}

/// Core of [`k_extremal`]; assumes valid `k` and no guard.
pub fn k_extremal_cached(cache: &StatsCache<'_>, k: usize, direction: Direction) -> ExtremalResult {
    let mut best: Option<Rational> = None;
    let mut optima: Vec<VertexSet> = Vec::new();
    for_each_subtree(cache.tree(), None, Some(k), |s| {
        let mu = cache.mean_of_set(s);
        match &best {
            None => {
                best = Some(mu);
                optima.push(s);
            }
            Some(b) => {
                if direction.improves(&mu, b) {
                    best = Some(mu);
                    optima.clear();
                    optima.push(s);
                } else if &mu == b {
                    optima.push(s);
                }
            }
        }
    });
    ExtremalResult {
        k,
        direction,
        value: best.expect("every tree has an order-k subtree for 1 <= k <= n"),
        optima,
    }
}

/// Hill-climbs from `start` by single swaps (absorb a neighbour `w`, delete
/// a leaf `v != w` of the grown subtree), accepting a move only on strict
/// exact-rational improvement. The scan is lowest-vertex-id-first, so the
/// walk is deterministic. The result is locally optimal under this move set
/// but not guaranteed globally optimal.
pub fn index_guided_search(
    tree: &Tree,
    direction: Direction,
    start: VertexSet,
) -> VertexSet {
    debug_assert!(tree.is_connected_set(start));
    let cache = StatsCache::new(tree);
    let mut current = start;
    let mut value = cache.mean_of_set(current);
    loop {
        let mut improved = false;
        let neighbors: Vec<usize> = (0..tree.n())
            .filter(|&w| {
                !current.contains(w)
                    && tree.neighbors(w).iter().any(|&u| current.contains(u))
            })
            .collect();
        'scan: for &w in &neighbors {
            let grown = current.with(w);
            for v in grown.iter() {
                if v == w {
                    continue;
                }
                let inside = tree
                    .neighbors(v)
                    .iter()
                    .filter(|&&x| grown.contains(x))
                    .count();
                if inside != 1 {
                    continue; // not a leaf of the grown subtree
                }
                let candidate = grown.without(v);
                let mu = cache.mean_of_set(candidate);
                if direction.improves(&mu, &value) {
                    current = candidate;
                    value = mu;
                    improved = true;
                    break 'scan;
                }
            }
        }
        if !improved {
            return current;
        }
    }
}

/// Where a leaf of a subtree sits in the host tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKind {
    /// Degree 1 in the host tree.
    LeafOfTree,
    /// Degree 2, lying in a limb.
    LimbVertex,
    /// Degree 2, lying in a core-path.
    CorePathVertex,
    /// Degree greater than 2.
    HighDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafRecord {
    pub vertex: usize,
    pub degree: usize,
    pub kind: LeafKind,
}

/// The three leaf configurations an extremal subtree can have. `Ia`: leaves
/// of the host tree mixed with core-path vertices; `Ib`: leaves of the host
/// tree mixed with limb vertices; `Ii`: one leaf of degree greater than 2,
/// all others leaves of the host tree. Subtrees matching none (possible away
/// from the optimum) are `MixedInvalid`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafCase {
    Ia,
    Ib,
    Ii,
    MixedInvalid,
}

#[derive(Debug, Clone)]
pub struct LeafConfiguration {
    pub case: LeafCase,
    pub leaves: Vec<LeafRecord>,
}

pub fn classify_leaves(s: &Subtree<'_>) -> LeafConfiguration {
    let decomposition = core_decomposition(s.tree());
    classify_leaves_with(s, &decomposition)
}

pub fn classify_leaves_with(
    s: &Subtree<'_>,
    decomposition: &CoreDecomposition,
) -> LeafConfiguration {
    let tree = s.tree();
    let leaves: Vec<LeafRecord> = s
        .leaves()
        .into_iter()
        .map(|v| {
            let degree = tree.degree(v);
            let kind = if degree > 2 {
                LeafKind::HighDegree
            } else if degree == 1 {
                LeafKind::LeafOfTree
            } else if decomposition.is_limb_vertex(v) {
                LeafKind::LimbVertex
            } else {
                LeafKind::CorePathVertex
            };
            LeafRecord {
                vertex: v,
                degree,
                kind,
            }
        })
        .collect();
    let high = leaves
        .iter()
        .filter(|l| l.kind == LeafKind::HighDegree)
        .count();
    let limb = leaves.iter().any(|l| l.kind == LeafKind::LimbVertex);
    let core = leaves.iter().any(|l| l.kind == LeafKind::CorePathVertex);
    let case = if high > 1 {
        LeafCase::MixedInvalid
    } else if high == 1 {
        if leaves
            .iter()
            .all(|l| l.kind == LeafKind::HighDegree || l.kind == LeafKind::LeafOfTree)
        {
            LeafCase::Ii
        } else {
            LeafCase::MixedInvalid
        }
    } else if limb && core {
        LeafCase::MixedInvalid
    } else if limb {
        LeafCase::Ib
    } else {
        LeafCase::Ia
    };
    LeafConfiguration { case, leaves }
}

/// Checks every order-`k` subtree of maximal local mean (all ties) against
/// the structural laws for maximal subtrees:
///
/// (a) at most one leaf of degree > 2 and at least one leaf of degree <= 2
///     (for `k = 1`: the vertex has degree 1 or 2);
/// (b) if some leaf has degree > 2, all other leaves have degree 1;
/// (c) for `k = 1` on non-paths, the vertex is a leaf or lies in a
///     core-path;
/// (d) the degree-2 leaves are not a mixture of core-path and limb vertices.
pub fn verify_maximal_theorems(tree: &Tree, k: usize) -> Result<Vec<String>, ExtremalError> {
    let result = k_extremal(tree, k, Direction::Max)?;
    let decomposition = core_decomposition(tree);
    Ok(maximal_violations(tree, &result, &decomposition))
}

pub fn maximal_violations(
    tree: &Tree,
    result: &ExtremalResult,
    decomposition: &CoreDecomposition,
) -> Vec<String> {
    let mut violations = Vec::new();
    for &sv in &result.optima {
        let s = Subtree::new(tree, sv).expect("optima are subtrees");
        let cfg = classify_leaves_with(&s, decomposition);
        let high: Vec<&LeafRecord> = cfg
            .leaves
            .iter()
            .filter(|l| l.kind == LeafKind::HighDegree)
            .collect();
        let low = cfg.leaves.iter().filter(|l| l.degree <= 2).count();
        if result.k == 1 {
            let v = sv.min_vertex().unwrap();
            if tree.degree(v) > 2 {
                violations.push(format!(
                    "order-1 maximal vertex {v} has degree {} > 2",
                    tree.degree(v)
                ));
            }
            if !decomposition.degenerate_path
                && !(tree.is_leaf(v) || decomposition.is_core_path_vertex(v))
            {
                violations.push(format!(
                    "order-1 maximal vertex {v} is neither a leaf nor on a core-path"
                ));
            }
            continue;
        }
        if high.len() > 1 {
            violations.push(format!(
                "{sv}: {} leaves of degree > 2 in a maximal subtree",
                high.len()
            ));
        }
        if low == 0 {
            violations.push(format!("{sv}: no leaf of degree <= 2"));
        }
        if high.len() == 1
            && cfg
                .leaves
                .iter()
                .any(|l| l.kind != LeafKind::HighDegree && l.degree != 1)
        {
            violations.push(format!(
                "{sv}: leaf of degree > 2 coexists with a non-leaf-of-tree leaf"
            ));
        }
        let deg2_limb = cfg
            .leaves
            .iter()
            .any(|l| l.kind == LeafKind::LimbVertex);
        let deg2_core = cfg
            .leaves
            .iter()
            .any(|l| l.kind == LeafKind::CorePathVertex);
        if deg2_limb && deg2_core {
            violations.push(format!(
                "{sv}: degree-2 leaves mix core-path and limb vertices"
            ));
        }
    }
    violations
}

/// Outcome of a minimal-subtree check whose hypotheses may not apply.
#[derive(Debug, Clone)]
pub enum MinimalOutcome {
    /// The law does not apply (path, or `k` exceeds the core size).
    Skipped(String),
    Checked(Vec<String>),
}

/// Checks every order-`k` subtree of minimal local mean against the
/// structural law for minimal subtrees: with a nonempty core and
/// `k <= |core|`, every minimum lies inside the core, has at most one leaf
/// of degree <= 2 and (for `k >= 2`) at least one leaf of degree >= 3; for
/// `k = 1` the minimising vertex has degree >= 3.
pub fn verify_minimal_theorem(tree: &Tree, k: usize) -> Result<MinimalOutcome, ExtremalError> {
    let decomposition = core_decomposition(tree);
    if decomposition.core.is_empty() {
        return Ok(MinimalOutcome::Skipped("tree is a path: no core".into()));
    }
    if k > decomposition.core.len() {
        return Ok(MinimalOutcome::Skipped(format!(
            "k={k} exceeds core size {}",
            decomposition.core.len()
        )));
    }
    let result = k_extremal(tree, k, Direction::Min)?;
    Ok(MinimalOutcome::Checked(minimal_violations(
        tree,
        &result,
        &decomposition,
    )))
}

pub fn minimal_violations(
    tree: &Tree,
    result: &ExtremalResult,
    decomposition: &CoreDecomposition,
) -> Vec<String> {
    let mut violations = Vec::new();
    for &sv in &result.optima {
        if !sv.is_subset_of(&decomposition.core) {
            violations.push(format!("{sv}: minimal subtree leaves the core"));
        }
        if result.k == 1 {
            let v = sv.min_vertex().unwrap();
            if tree.degree(v) < 3 {
                violations.push(format!(
                    "order-1 minimal vertex {v} has degree {} < 3",
                    tree.degree(v)
                ));
            }
            continue;
        }
        let s = Subtree::new(tree, sv).expect("optima are subtrees");
        let leaves = s.leaves();
        let low = leaves.iter().filter(|&&v| tree.degree(v) <= 2).count();
        let high = leaves.iter().filter(|&&v| tree.degree(v) >= 3).count();
        if low > 1 {
            violations.push(format!("{sv}: {low} leaves of degree <= 2 in a minimal subtree"));
        }
        if high == 0 {
            violations.push(format!("{sv}: no leaf of degree >= 3"));
        }
    }
    violations
}

/// Closed forms for the family of two `(n+1)`-stars whose centres are
/// joined by a path of `k - 2` vertices (`n > 1`, `k > 2`): the directional
/// mean `mu_w(b) = b/2 + (n+b) 2^(n-1) / (2^n + b - 1)`, the order-2 local
/// mean `mu_2(a, b) = mu_v(a) + mu_w(b)` over the splits `a + b = k`, its
/// minimum, and the splits attaining it.
#[derive(Debug, Clone)]
pub struct TwoStarForms {
    pub n: usize,
    pub k: usize,
    /// `mu_w(b)` for `b = 1..=k-1`.
    pub mu_w_by_b: Vec<(usize, Rational)>,
    /// `mu_2(a, k - a)` for `a = 1..=k-1`.
    pub mu2_by_split: Vec<((usize, usize), Rational)>,
    /// Closed form of the minimum:
    /// `k/2 + (n+1)/2 + (n+k-1) 2^(n-1) / (2^n + k - 2)`.
    pub mu2_min: Rational,
    /// Splits attaining the minimum, by direct evaluation.
    pub argmin: Vec<(usize, usize)>,
}

/// `mu_w(b) = b/2 + (n + b) 2^(n-1) / (2^n + b - 1)`: the local mean at the
/// near end of a path of `b` vertices finishing in an `n`-leaf star.
pub fn two_star_mu_w(n: usize, b: usize) -> Rational {
    let pow_nm1 = BigInt::one() << (n - 1);
    let pow_n = BigInt::one() << n;
    rat(b as i64, 2)
        + Rational::new(
            BigInt::from(n + b) * pow_nm1,
            pow_n + BigInt::from(b as i64 - 1),
        )
}

pub fn two_star_closed_forms(n: usize, k: usize) -> Result<TwoStarForms, ExtremalError> {
    if n <= 1 || k <= 2 {
        return Err(ExtremalError::InvalidParams(format!(
            "need n > 1 and k > 2, got n={n}, k={k}"
        )));
    }
    let mu_w_by_b: Vec<(usize, Rational)> =
        (1..k).map(|b| (b, two_star_mu_w(n, b))).collect();
    let mu2_by_split: Vec<((usize, usize), Rational)> = (1..k)
        .map(|a| {
            let b = k - a;
            ((a, b), two_star_mu_w(n, a) + two_star_mu_w(n, b))
        })
        .collect();
    let min_value = mu2_by_split
        .iter()
        .map(|(_, v)| v.clone())
        .min()
        .expect("k > 2 gives at least one split");
    let argmin: Vec<(usize, usize)> = mu2_by_split
        .iter()
        .filter(|(_, v)| *v == min_value)
        .map(|(ab, _)| *ab)
        .collect();
    let pow_nm1 = BigInt::one() << (n - 1);
    let pow_n = BigInt::one() << n;
    let mu2_min = rat(k as i64, 2)
        + rat(n as i64 + 1, 2)
        + Rational::new(
            BigInt::from(n + k - 1) * pow_nm1,
            pow_n + BigInt::from(k as i64 - 2),
        );
    debug_assert_eq!(mu2_min, min_value);
    Ok(TwoStarForms {
        n,
        k,
        mu_w_by_b,
        mu2_by_split,
        mu2_min,
        argmin,
    })
}

/// Closed forms for the two-2-star tree with a `2n`-vertex middle path:
/// the order-2 local means of the central path pair, of a centre-leaf pair,
/// and their difference `(2n^2 + n - 4) / ((4n + 10)(n + 4))`.
pub fn two_stars_order_two_means(n: usize) -> (Rational, Rational, Rational) {
    let n_i = n as i64;
    let middle_pair = rat(1, 1) + rat((n_i + 2) * (n_i + 6), n_i + 4);
    let centre_leaf = rat(4 * n_i * n_i + 28 * n_i + 41, 4 * n_i + 10);
    let difference = rat(2 * n_i * n_i + n_i - 4, (4 * n_i + 10) * (n_i + 4));
    (middle_pair, centre_leaf, difference)
}

/// The generated host tree for [`two_star_closed_forms`]: two `n`-leaf
/// stars, centres joined by a path of `k - 2` vertices.
pub fn two_star_family_tree(n: usize, k: usize) -> Tree {
    families::two_stars(n, k - 2).expect("valid two-star parameters")
}
