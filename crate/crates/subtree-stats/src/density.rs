//! Local density: `D(S) = (mu(S) - |S|) / (n - |S|)` for a proper nonempty
//! subtree `S` — the probability that a random vertex outside `S` lies in a
//! random subtree containing `S`.
//!
//! Local density is bounded below by `1/2`, with equality exactly when `S`
//! contains the core; the comparison laws in this module relate `D` across
//! leaf removals, neighbour absorptions and the two-vertex case.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::counting::{
    global_stats, index_from_stats, rational_str, BoundCheck, Rational, StatsCache,
};
use crate::extremal::{k_extremal_cached, Direction};
use crate::structure::{core_decomposition, CoreDecomposition};
use crate::tree::{for_each_subtree, Subtree, Tree, VertexSet};
use crate::{families, rat};

/// Default vertex-count guard for the exhaustive density argmax.
pub const DENSITY_GUARD: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DensityError {
    #[error("local density is not defined at the whole tree")]
    WholeTree,
    #[error("local density needs a rooted tree of order at least 2")]
    SingletonRoot,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("order {k} out of range for this operation")]
    BadOrder { k: usize },
    #[error("vertex {0} is not applicable for this step")]
    BadStepVertex(usize),
    #[error("enumeration guard: order {n} exceeds limit {limit} (override to proceed)")]
    EnumerationGuard { n: usize, limit: usize },
}

/// Local density at a proper nonempty subtree.
pub fn local_density(s: &Subtree<'_>) -> Result<Rational, DensityError> {
    if s.is_whole_tree() {
        return Err(DensityError::WholeTree);
    }
    let cache = StatsCache::new(s.tree());
    Ok(cache.density_of_set(s.vertices()).unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepMode {
    RemoveLeaf,
    AddNeighbor,
}

/// Both sides of the single-step density comparison: for a leaf `w` of `S`,
/// `D(S) >= D(S - w)` holds exactly when `D(S) >= 1 - i(w; S)` (equalities
/// included); for a neighbour `v`, `D(S + v) >= D(S)` holds exactly when
/// `D(S) >= 1 - i(v; S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepEquivalence {
    pub lhs_holds: bool,
    pub rhs_holds: bool,
    pub lhs_equality: bool,
    pub rhs_equality: bool,
}

impl StepEquivalence {
    /// The law: the two comparisons agree, and one is an equality exactly
    /// when the other is.
    pub fn consistent(&self) -> bool {
        self.lhs_holds == self.rhs_holds && self.lhs_equality == self.rhs_equality
    }
}

pub fn density_step_equivalence(
    s: &Subtree<'_>,
    v: usize,
    mode: StepMode,
) -> Result<StepEquivalence, DensityError> {
    let cache = StatsCache::new(s.tree());
    density_step_cached(&cache, s.vertices(), v, mode)
}

pub fn density_step_cached(
    cache: &StatsCache<'_>,
    s: VertexSet,
    v: usize,
    mode: StepMode,
) -> Result<StepEquivalence, DensityError> {
    let n = cache.tree().n();
    let k = s.len();
    let (d_s, d_other) = match mode {
        StepMode::RemoveLeaf => {
            if k < 2 || k > n - 1 {
                return Err(DensityError::BadOrder { k });
            }
            if !s.contains(v) {
                return Err(DensityError::BadStepVertex(v));
            }
            let d_s = cache.density_of_set(s).unwrap();
            let d_removed = cache.density_of_set(s.without(v)).unwrap();
            (d_s, d_removed)
        }
        StepMode::AddNeighbor => {
            if s.contains(v) || k + 1 > n - 1 {
                return Err(DensityError::BadStepVertex(v));
            }
            let d_s = cache.density_of_set(s).unwrap();
            let d_grown = cache.density_of_set(s.with(v)).unwrap();
            (d_s, d_grown)
        }
    };
    let index = cache
        .index_wrt(v, s)
        .ok_or(DensityError::BadStepVertex(v))?;
    let threshold = Rational::one() - index;
    let (lhs_holds, lhs_equality) = match mode {
        StepMode::RemoveLeaf => (d_s >= d_other, d_s == d_other),
        StepMode::AddNeighbor => (d_other >= d_s, d_other == d_s),
    };
    Ok(StepEquivalence {
        lhs_holds,
        lhs_equality,
        rhs_holds: d_s >= threshold,
        rhs_equality: d_s == threshold,
    })
}

/// Checks `D(S) >= 1/2` and whether the bound is attained (which happens
/// exactly when `S` contains the core).
pub fn density_lower_bound_check(s: &Subtree<'_>) -> Result<BoundCheck, DensityError> {
    let d = local_density(s)?;
    let half = rat(1, 2);
    Ok(BoundCheck {
        holds: d >= half,
        tight: d == half,
    })
}

/// Outcome of a check whose hypothesis (`S` meets the core) may fail.
#[derive(Debug, Clone)]
pub enum AbsorptionOutcome {
    Skipped,
    Checked(Vec<String>),
}

/// Checks `D(S ∩ core) <= D(S)` with equality exactly when `S` is inside
/// the core or contains it: trimming the limb parts of a subtree never
/// raises its density.
pub fn limb_absorption_check(s: &Subtree<'_>) -> Result<AbsorptionOutcome, DensityError> {
    if s.is_whole_tree() {
        return Err(DensityError::WholeTree);
    }
    let decomposition = core_decomposition(s.tree());
    let cache = StatsCache::new(s.tree());
    Ok(limb_absorption_cached(&cache, &decomposition, s.vertices()))
}

pub fn limb_absorption_cached(
    cache: &StatsCache<'_>,
    decomposition: &CoreDecomposition,
    s: VertexSet,
) -> AbsorptionOutcome {
    let core_part = s.intersection(decomposition.core);
    if core_part.is_empty() {
        return AbsorptionOutcome::Skipped;
    }
    let d_s = cache.density_of_set(s).unwrap();
    let d_core_part = cache.density_of_set(core_part).unwrap();
    let mut violations = Vec::new();
    if d_core_part > d_s {
        violations.push(format!(
            "D(S ∩ core) = {} exceeds D(S) = {} for S = {}",
            rational_str(&d_core_part),
            rational_str(&d_s),
            s
        ));
    }
    let equality_expected =
        s.is_subset_of(&decomposition.core) || decomposition.core.is_subset_of(&s);
    if (d_core_part == d_s) != equality_expected {
        violations.push(format!(
            "equality case mismatch for S = {}: D(S*) = {}, D(S) = {}, expected equality: {}",
            s,
            rational_str(&d_core_part),
            rational_str(&d_s),
            equality_expected
        ));
    }
    AbsorptionOutcome::Checked(violations)
}

/// H/L classification of a rooted tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootedKind {
    /// `D(root) >= 1 - i`: absorbing this direction does not hurt density.
    HighIndex,
    /// `D(root) < 1 - i`.
    LowIndex,
}

#[derive(Debug, Clone)]
pub struct RootedType {
    pub kind: RootedKind,
    /// `D` of the root inside its own tree.
    pub density: Rational,
    /// Index of the whole tree at the root.
    pub index: Rational,
}

/// Classifies the whole tree rooted at `root`. Evaluates both the
/// definitional test `D >= 1 - i` and the algebraic one
/// `mu(root) >= (N n + n) / (N + n)`; the two provably agree and this is
/// asserted.
pub fn rooted_type(tree: &Tree, root: usize) -> Result<RootedType, DensityError> {
    if tree.n() < 2 {
        return Err(DensityError::SingletonRoot);
    }
    let cache = StatsCache::new(tree);
    Ok(rooted_type_from_stats(
        tree.n(),
        &cache.vertex_stats(root).count,
        &cache.vertex_stats(root).total_order,
    ))
}

/// H/L classification from the (N, R) of the subtrees containing the root.
pub fn rooted_type_from_stats(
    n: usize,
    count: &num_bigint::BigUint,
    total_order: &num_bigint::BigUint,
) -> RootedType {
    debug_assert!(n >= 2);
    let mu = crate::counting::big_ratio(total_order, count);
    let density = (&mu - BigInt::one()) / BigInt::from(n - 1);
    let index = index_from_stats(count, total_order);
    let definitional_high = density >= Rational::one() - &index;
    // algebraic version of the same comparison
    let n_big = BigInt::from(n);
    let count_big = BigInt::from(count.clone());
    let algebraic_low =
        mu < Rational::new(&count_big * &n_big + &n_big, count_big + n_big);
    assert_eq!(
        definitional_high, !algebraic_low,
        "definitional and algebraic H/L tests must agree"
    );
    RootedType {
        kind: if definitional_high {
            RootedKind::HighIndex
        } else {
            RootedKind::LowIndex
        },
        density,
        index,
    }
}

/// One side of an edge in the two-vertex comparison.
#[derive(Debug, Clone)]
pub enum SideInfo {
    /// The vertex is a leaf of the tree: its side is a singleton, whose
    /// density is undefined.
    Leaf,
    Inner(RootedType),
}

/// What the H/L table concludes for an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableConclusion {
    /// `D(v,w) >= max(D(v), D(w))`.
    PairDominates,
    /// The named vertex satisfies `D(vertex) > D(v,w)`.
    VertexDominates(usize),
    /// Mixed H/L case where the table draws no conclusion.
    NoConclusion,
}

#[derive(Debug, Clone)]
pub struct TwoVertexReport {
    pub v: usize,
    pub w: usize,
    pub d_pair: Rational,
    pub d_v: Rational,
    pub d_w: Rational,
    pub v_side: SideInfo,
    pub w_side: SideInfo,
    pub conclusion: TableConclusion,
    /// Failed assertions; empty when the laws hold.
    pub violations: Vec<String>,
}

/// Compares `D(v,w)`, `D(v)` and `D(w)` for an adjacent pair and checks the
/// applicable H/L-table cell, the convex decomposition of the single-vertex
/// densities, and the branching-vertex corollary (`deg(v), deg(w) > 2`
/// forces `D(v,w) < max(D(v), D(w))`).
///
/// Asserted cells: both sides H gives `D(v,w) >= max(D(v), D(w))`; a type-L
/// side with the weakly larger component density puts the pair strictly
/// below the opposite vertex (`D(other) > D(v,w)`), additionally weakly
/// above its own vertex when the opposite side is H. A strictly dominant H
/// side over an L side supports no conclusion and is only reported.
pub fn two_vertex_comparison(
    tree: &Tree,
    v: usize,
    w: usize,
) -> Result<TwoVertexReport, DensityError> {
    if !tree.has_edge(v, w) {
        return Err(DensityError::NotAdjacent(v, w));
    }
    if tree.n() <= 2 {
        return Err(DensityError::WholeTree);
    }
    let cache = StatsCache::new(tree);
    Ok(two_vertex_cached(&cache, v, w))
}

pub fn two_vertex_cached(cache: &StatsCache<'_>, v: usize, w: usize) -> TwoVertexReport {
    let tree = cache.tree();
    let n = tree.n();
    let pair = VertexSet::from_iter([v, w]);
    let d_pair = cache.density_of_set(pair).unwrap();
    let d_v = cache.density_of_set(VertexSet::singleton(v)).unwrap();
    let d_w = cache.density_of_set(VertexSet::singleton(w)).unwrap();

    let side_of = |away: usize, at: usize| -> (usize, SideInfo) {
        let comp = tree.component_away(at, VertexSet::singleton(away));
        let size = comp.len();
        if size == 1 {
            (size, SideInfo::Leaf)
        } else {
            let (count, total) = cache.directed(away, at);
            (size, SideInfo::Inner(rooted_type_from_stats(size, count, total)))
        }
    };
    let (n_v, v_side) = side_of(w, v);
    let (n_w, w_side) = side_of(v, w);

    let mut violations = Vec::new();
    let mut check = |ok: bool, msg: String| {
        if !ok {
            violations.push(msg);
        }
    };

    let conclusion = match (&v_side, &w_side) {
        (SideInfo::Leaf, SideInfo::Inner(other)) | (SideInfo::Inner(other), SideInfo::Leaf) => {
            let (leaf_vx, leaf_d, inner_vx, inner_d) = if matches!(v_side, SideInfo::Leaf) {
                (v, &d_v, w, &d_w)
            } else {
                (w, &d_w, v, &d_v)
            };
            // deleting a tree-leaf never raises density
            check(
                &d_pair >= inner_d,
                format!("leaf case: D({leaf_vx},{inner_vx}) < D({inner_vx})"),
            );
            match other.kind {
                RootedKind::HighIndex => {
                    check(
                        &d_pair >= leaf_d,
                        format!("leaf case, H side: D(pair) < D({leaf_vx})"),
                    );
                    TableConclusion::PairDominates
                }
                RootedKind::LowIndex => {
                    check(
                        leaf_d > &d_pair,
                        format!("leaf case, L side: D({leaf_vx}) <= D(pair)"),
                    );
                    TableConclusion::VertexDominates(leaf_vx)
                }
            }
        }
        (SideInfo::Inner(vs), SideInfo::Inner(ws)) => {
            // convex decomposition of the single-vertex densities
            let coeff_v = rat(n_v as i64 - 1, n as i64 - 1);
            let coeff_w = rat(n_w as i64 - 1, n as i64 - 1);
            let coeff_last = rat(1, n as i64 - 1);
            let i_wv = cache.index_toward(v, w); // direction rooted at w away from v
            let i_vw = cache.index_toward(w, v);
            let expect_dv = &coeff_v * &vs.density
                + &coeff_w * &ws.density
                + &coeff_last * (Rational::one() - &i_wv);
            let expect_dw = &coeff_v * &vs.density
                + &coeff_w * &ws.density
                + &coeff_last * (Rational::one() - &i_vw);
            check(
                d_v == expect_dv,
                format!("convex identity failed for D({v})"),
            );
            check(
                d_w == expect_dw,
                format!("convex identity failed for D({w})"),
            );
            // D(pair) lies between the side densities
            let (lo, hi) = if vs.density <= ws.density {
                (&vs.density, &ws.density)
            } else {
                (&ws.density, &vs.density)
            };
            check(
                lo <= &d_pair && &d_pair <= hi,
                format!("D(pair) escapes the side-density interval for edge {v}-{w}"),
            );

            // table cells: whenever one side is type L with the weakly
            // larger side density, the pair sits strictly below the vertex
            // on the OPPOSITE side (and, when that opposite side is H,
            // weakly above the vertex on the dominant L side)
            match (vs.kind, ws.kind) {
                (RootedKind::HighIndex, RootedKind::HighIndex) => {
                    check(
                        d_pair >= d_v && d_pair >= d_w,
                        format!("H/H cell: D(pair) < max(D({v}), D({w}))"),
                    );
                    TableConclusion::PairDominates
                }
                _ => {
                    let mut winners: Vec<usize> = Vec::new();
                    if vs.kind == RootedKind::LowIndex && vs.density >= ws.density {
                        check(
                            d_w > d_pair,
                            format!("dominant-L cell: D({w}) <= D(pair)"),
                        );
                        if ws.kind == RootedKind::HighIndex {
                            check(
                                d_pair >= d_v,
                                format!("dominant-L/H cell: D(pair) < D({v})"),
                            );
                        }
                        winners.push(w);
                    }
                    if ws.kind == RootedKind::LowIndex && ws.density >= vs.density {
                        check(
                            d_v > d_pair,
                            format!("dominant-L cell: D({v}) <= D(pair)"),
                        );
                        if vs.kind == RootedKind::HighIndex {
                            check(
                                d_pair >= d_w,
                                format!("dominant-L/H cell: D(pair) < D({w})"),
                            );
                        }
                        winners.push(v);
                    }
                    match winners.as_slice() {
                        [] => TableConclusion::NoConclusion,
                        [x] => TableConclusion::VertexDominates(*x),
                        _ => {
                            // both orientations fire (L/L with equal side
                            // densities): report the denser vertex
                            let x = if d_v >= d_w { v } else { w };
                            TableConclusion::VertexDominates(x)
                        }
                    }
                }
            }
        }
        (SideInfo::Leaf, SideInfo::Leaf) => {
            unreachable!("two leaf sides would make the pair the whole tree")
        }
    };

    if tree.degree(v) > 2 && tree.degree(w) > 2 {
        let max = if d_v >= d_w { &d_v } else { &d_w };
        if !(&d_pair < max) {
            violations.push(format!(
                "branching corollary: D({v},{w}) = {} not below max(D({v}), D({w})) = {}",
                rational_str(&d_pair),
                rational_str(max)
            ));
        }
    }

    TwoVertexReport {
        v,
        w,
        d_pair,
        d_v,
        d_w,
        v_side,
        w_side,
        conclusion,
        violations,
    }
}

/// Structural form of a maximal-density subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureClass {
    /// Proper subtree of the core avoiding all joint vertices.
    CoreProper,
    /// A core part containing joint vertices together with all their limbs.
    CoreWithLimbs,
    /// A path inside a single limb containing the limb's leaf.
    LimbPath,
    /// Contains the whole core (density exactly 1/2).
    ContainsCore,
    /// Every proper subtree of a path ties at 1/2; no classification.
    Degenerate,
    /// Matches none of the expected shapes.
    Unclassified,
}

#[derive(Debug, Clone)]
pub struct DensityMaxResult {
    pub value: Rational,
    pub optima: Vec<(VertexSet, StructureClass)>,
    /// Failed cross-checks (each optimum must attain the maximal local mean
    /// at its own order); empty when all pass.
    pub violations: Vec<String>,
}

pub fn max_density_subtree(tree: &Tree) -> Result<DensityMaxResult, DensityError> {
    max_density_subtree_with_limit(tree, DENSITY_GUARD)
}

pub fn max_density_subtree_with_limit(
    tree: &Tree,
    limit: usize,
) -> Result<DensityMaxResult, DensityError> {
    if tree.n() > limit {
        return Err(DensityError::EnumerationGuard {
            n: tree.n(),
            limit,
        });
    }
    if tree.n() < 2 {
        return Err(DensityError::WholeTree);
    }
    let cache = StatsCache::new(tree);
    let full = tree.full_set();
    let mut best: Option<Rational> = None;
    let mut optima: Vec<VertexSet> = Vec::new();
    for_each_subtree(tree, None, None, |s| {
        if s == full {
            return;
        }
        let d = cache.density_of_set(s).unwrap();
        match &best {
            None => {
                best = Some(d);
                optima.push(s);
            }
            Some(b) => {
                if &d > b {
                    best = Some(d);
                    optima.clear();
                    optima.push(s);
                } else if &d == b {
                    optima.push(s);
                }
            }
        }
    });
    let value = best.expect("trees of order >= 2 have proper subtrees");
    let decomposition = core_decomposition(tree);
    let classified: Vec<(VertexSet, StructureClass)> = optima
        .iter()
        .map(|&s| (s, classify_structure(tree, &decomposition, s)))
        .collect();

    // a maximal-density subtree must attain the maximal local mean at its
    // own order
    let mut violations = Vec::new();
    let mut orders: Vec<usize> = optima.iter().map(|s| s.len()).collect();
    orders.sort_unstable();
    orders.dedup();
    for k in orders {
        let extremal = k_extremal_cached(&cache, k, Direction::Max);
        for &s in optima.iter().filter(|s| s.len() == k) {
            if cache.mean_of_set(s) != extremal.value {
                violations.push(format!(
                    "density optimum {s} does not attain the maximal local mean at order {k}"
                ));
            }
        }
    }
    Ok(DensityMaxResult {
        value,
        optima: classified,
        violations,
    })
}

fn classify_structure(
    tree: &Tree,
    decomposition: &CoreDecomposition,
    s: VertexSet,
) -> StructureClass {
    if decomposition.degenerate_path {
        return StructureClass::Degenerate;
    }
    let core = decomposition.core;
    if core.is_subset_of(&s) {
        return StructureClass::ContainsCore;
    }
    if s.is_subset_of(&core) {
        return if s.intersection(decomposition.joint_vertices).is_empty() {
            StructureClass::CoreProper
        } else {
            StructureClass::Unclassified
        };
    }
    let core_part = s.intersection(core);
    if core_part.is_empty() {
        // inside a single limb; must contain that limb's leaf
        let limb = decomposition
            .limbs
            .iter()
            .find(|l| l.iter().any(|&v| s.contains(v)))
            .expect("non-core vertices lie in limbs");
        let leaf = *limb.last().unwrap();
        return if s.contains(leaf) {
            StructureClass::LimbPath
        } else {
            StructureClass::Unclassified
        };
    }
    // mixed: every touched limb must be fully absorbed and hang off a joint
    // vertex inside the subtree
    for limb in &decomposition.limbs {
        let touched = limb.iter().any(|&v| s.contains(v));
        if !touched {
            continue;
        }
        let whole = limb.iter().all(|&v| s.contains(v));
        let anchor = tree
            .neighbors(limb[0])
            .iter()
            .copied()
            .find(|&u| core.contains(u))
            .expect("limbs attach to the core");
        if !whole || !s.contains(anchor) {
            return StructureClass::Unclassified;
        }
    }
    StructureClass::CoreWithLimbs
}

/// Global density next to the extremes of the single-vertex local
/// densities.
#[derive(Debug, Clone)]
pub struct GlobalVsLocalReport {
    pub global: Rational,
    pub max_vertices: Vec<usize>,
    pub max_density: Rational,
    pub min_vertices: Vec<usize>,
    pub min_density: Rational,
}

pub fn global_vs_local_density(tree: &Tree) -> Result<GlobalVsLocalReport, DensityError> {
    if tree.n() < 2 {
        return Err(DensityError::WholeTree);
    }
    let cache = StatsCache::new(tree);
    let global = global_stats(tree).density;
    let mut max_d: Option<Rational> = None;
    let mut min_d: Option<Rational> = None;
    let mut max_vs = Vec::new();
    let mut min_vs = Vec::new();
    for v in tree.vertices() {
        let d = cache.density_of_set(VertexSet::singleton(v)).unwrap();
        match &max_d {
            Some(m) if &d < m => {}
            Some(m) if &d == m => max_vs.push(v),
            _ => {
                max_d = Some(d.clone());
                max_vs = vec![v];
            }
        }
        match &min_d {
            Some(m) if &d > m => {}
            Some(m) if &d == m => min_vs.push(v),
            _ => {
                min_d = Some(d.clone());
                min_vs = vec![v];
            }
        }
    }
    Ok(GlobalVsLocalReport {
        global,
        max_vertices: max_vs,
        max_density: max_d.unwrap(),
        min_vertices: min_vs,
        min_density: min_d.unwrap(),
    })
}

/// A generated-family instance witnessing a single-vertex local density
/// above a threshold.
#[derive(Debug, Clone)]
pub struct NearOneWitness {
    pub description: String,
    pub tree: Tree,
    pub vertex: usize,
    pub density: Rational,
}

/// Scans generated brooms and sparse-leg caterpillars of order up to
/// `max_n` (ascending) for a vertex whose local density exceeds
/// `threshold`; returns the first hit.
pub fn near_one_density_witness(threshold: &Rational, max_n: usize) -> Option<NearOneWitness> {
    let max_n = max_n.min(crate::tree::MAX_VERTICES);
    for n in 4..=max_n {
        let mut candidates: Vec<(String, Tree)> = Vec::new();
        for handle in 2..n {
            let bristles = n - handle;
            if bristles < 1 {
                continue;
            }
            candidates.push((
                format!("broom({handle},{bristles})"),
                families::broom(handle, bristles).unwrap(),
            ));
        }
        for gap in 1..=6usize {
            for spine in 2..=n {
                let legs: Vec<usize> = (0..spine).map(|i| usize::from(i % gap == gap - 1)).collect();
                if spine + legs.iter().sum::<usize>() != n {
                    continue;
                }
                candidates.push((
                    format!("caterpillar(spine={spine},gap={gap})"),
                    families::caterpillar(&legs).unwrap(),
                ));
            }
        }
        for (description, tree) in candidates {
            let cache = StatsCache::new(&tree);
            for v in tree.vertices() {
                let d = cache.density_of_set(VertexSet::singleton(v)).unwrap();
                if &d > threshold {
                    return Some(NearOneWitness {
                        description,
                        tree,
                        vertex: v,
                        density: d,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::TwoStarsLayout;
    use crate::tree::all_labeled_trees;

    fn two_star_edge_tree() -> Tree {
        families::two_stars(2, 0).unwrap()
    }

    #[test]
    fn densities_of_the_two_star_edge_tree() {
        let t = two_star_edge_tree();
        let lay = TwoStarsLayout::new(2, 1, 0);
        let v = lay.left_leaves[0];
        let c = lay.left_center;
        let vc = Subtree::of_vertices(&t, [v, c]).unwrap();
        assert_eq!(local_density(&vc).unwrap(), rat(21, 40));
        let just_c = Subtree::of_vertices(&t, [c]).unwrap();
        assert_eq!(local_density(&just_c).unwrap(), rat(13, 25));
        let just_v = Subtree::of_vertices(&t, [v]).unwrap();
        assert_eq!(local_density(&just_v).unwrap(), rat(31, 55));
    }

    #[test]
    fn density_undefined_at_whole_tree() {
        let t = families::path(3).unwrap();
        assert!(matches!(
            local_density(&Subtree::whole(&t)),
            Err(DensityError::WholeTree)
        ));
    }

    #[test]
    fn supersets_of_the_core_sit_at_one_half() {
        let t = two_star_edge_tree();
        for s in crate::tree::enumerate_subtrees(&t, None, None) {
            if s.len() == t.n() {
                continue;
            }
            let sub = Subtree::new(&t, s).unwrap();
            let d = local_density(&sub).unwrap();
            if VertexSet::from_iter([0, 1]).is_subset_of(&s) {
                assert_eq!(d, rat(1, 2), "superset {s} of the core");
            } else {
                assert_ne!(d, rat(1, 2), "non-superset {s}");
            }
        }
    }

    #[test]
    fn path_densities_all_one_half() {
        let p = families::path(6).unwrap();
        for s in crate::tree::enumerate_subtrees(&p, None, None) {
            if s.len() == 6 {
                continue;
            }
            assert_eq!(local_density(&Subtree::new(&p, s).unwrap()).unwrap(), rat(1, 2));
        }
    }

    #[test]
    fn step_equivalence_on_the_example() {
        let t = two_star_edge_tree();
        let s = Subtree::of_vertices(&t, [0, 2]).unwrap();
        let step = density_step_equivalence(&s, 2, StepMode::RemoveLeaf).unwrap();
        // D(S) = 21/40, removing the leaf gives D(c) = 13/25 < 21/40, and
        // 1 - i(leaf) = 1/2 <= 21/40
        assert!(step.lhs_holds && step.rhs_holds && step.consistent());
        assert!(!step.lhs_equality && !step.rhs_equality);
    }

    #[test]
    fn step_equivalence_at_order_n_minus_1_is_equality() {
        let p = families::path(5).unwrap();
        let s = Subtree::of_vertices(&p, [0, 1, 2, 3]).unwrap();
        let step = density_step_equivalence(&s, 0, StepMode::RemoveLeaf).unwrap();
        assert!(step.lhs_holds && step.rhs_holds);
        assert!(step.lhs_equality && step.rhs_equality && step.consistent());
    }

    #[test]
    fn step_equivalence_exhaustive_small() {
        for n in 3..=6 {
            for t in all_labeled_trees(n).unwrap() {
                let cache = StatsCache::new(&t);
                for s in crate::tree::enumerate_subtrees(&t, None, None) {
                    let sub = Subtree::new(&t, s).unwrap();
                    if s.len() >= 2 && s.len() <= n - 1 {
                        for v in sub.leaves() {
                            let step =
                                density_step_cached(&cache, s, v, StepMode::RemoveLeaf).unwrap();
                            assert!(step.consistent(), "remove {v} from {s} in {t:?}");
                        }
                    }
                    if s.len() + 1 <= n - 1 {
                        for v in sub.neighbors() {
                            let step =
                                density_step_cached(&cache, s, v, StepMode::AddNeighbor).unwrap();
                            assert!(step.consistent(), "add {v} to {s} in {t:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lower_bound_tight_iff_core_contained() {
        for n in 2..=6 {
            for t in all_labeled_trees(n).unwrap() {
                let d = core_decomposition(&t);
                for s in crate::tree::enumerate_subtrees(&t, None, None) {
                    if s.len() == n {
                        continue;
                    }
                    let sub = Subtree::new(&t, s).unwrap();
                    let chk = density_lower_bound_check(&sub).unwrap();
                    assert!(chk.holds);
                    assert_eq!(chk.tight, d.core.is_subset_of(&s), "subtree {s} of {t:?}");
                }
            }
        }
    }

    #[test]
    fn core_minus_leaf_strictly_above_half() {
        let t = families::double_spider(2, 1, 2).unwrap();
        let d = core_decomposition(&t);
        assert_eq!(d.core.len(), 4);
        // remove one end of the core path
        let trimmed = d.core.without(0);
        let sub = Subtree::new(&t, trimmed).unwrap();
        assert!(local_density(&sub).unwrap() > rat(1, 2));
    }

    #[test]
    fn limb_absorption_on_example() {
        let t = two_star_edge_tree();
        let s = Subtree::of_vertices(&t, [0, 2]).unwrap();
        match limb_absorption_check(&s).unwrap() {
            AbsorptionOutcome::Checked(v) => assert!(v.is_empty(), "{v:?}"),
            AbsorptionOutcome::Skipped => panic!("core part {{0}} is nonempty"),
        }
        let leaf_only = Subtree::of_vertices(&t, [2]).unwrap();
        assert!(matches!(
            limb_absorption_check(&leaf_only).unwrap(),
            AbsorptionOutcome::Skipped
        ));
    }

    #[test]
    fn rooted_types_examples() {
        // an end of the 2-path: D = 1/2, i = 1/2, so H
        let p2 = families::path(2).unwrap();
        let ty = rooted_type(&p2, 0).unwrap();
        assert_eq!(ty.kind, RootedKind::HighIndex);
        assert_eq!(ty.density, rat(1, 2));
        assert_eq!(ty.index, rat(1, 2));
        // root of degree > 1 is always L
        let p3 = families::path(3).unwrap();
        assert_eq!(rooted_type(&p3, 1).unwrap().kind, RootedKind::LowIndex);
        let star = families::star(5).unwrap();
        assert_eq!(rooted_type(&star, 0).unwrap().kind, RootedKind::LowIndex);
    }

    #[test]
    fn pendant_extension_preserves_high_type() {
        for n in 2..=6 {
            for t in all_labeled_trees(n).unwrap() {
                for root in t.vertices() {
                    if !matches!(rooted_type(&t, root).unwrap().kind, RootedKind::HighIndex) {
                        continue;
                    }
                    let mut edges: Vec<(usize, usize)> = t.edges().to_vec();
                    edges.push((root, n));
                    let extended = Tree::from_edges(n + 1, edges).unwrap();
                    assert_eq!(
                        rooted_type(&extended, n).unwrap().kind,
                        RootedKind::HighIndex,
                        "pendant over root {root} of {t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_vertex_leaf_case_on_example() {
        let t = two_star_edge_tree();
        // leaf 2 against centre 0: the non-leaf side is everything else
        let report = two_vertex_comparison(&t, 2, 0).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert_eq!(report.conclusion, TableConclusion::VertexDominates(2));
        assert!(report.d_v > report.d_pair && report.d_pair > report.d_w);
    }

    #[test]
    fn two_vertex_exhaustive_small() {
        for n in 3..=6 {
            for t in all_labeled_trees(n).unwrap() {
                let cache = StatsCache::new(&t);
                for &(u, v) in t.edges() {
                    let report = two_vertex_cached(&cache, u, v);
                    assert!(
                        report.violations.is_empty(),
                        "edge {u}-{v} of {t:?}: {:?}",
                        report.violations
                    );
                }
            }
        }
    }

    #[test]
    fn max_density_on_star_and_example() {
        let star = families::star(6).unwrap();
        let result = max_density_subtree(&star).unwrap();
        let mut got: Vec<VertexSet> = result.optima.iter().map(|(s, _)| *s).collect();
        got.sort();
        let expect: Vec<VertexSet> = (1..6).map(VertexSet::singleton).collect();
        assert_eq!(got, expect);
        assert!(result.violations.is_empty());
        for (_, class) in &result.optima {
            assert_eq!(*class, StructureClass::LimbPath);
        }

        let t = two_star_edge_tree();
        let result = max_density_subtree(&t).unwrap();
        assert_eq!(result.value, rat(31, 55));
        let mut got: Vec<VertexSet> = result.optima.iter().map(|(s, _)| *s).collect();
        got.sort();
        let expect: Vec<VertexSet> = (2..6).map(VertexSet::singleton).collect();
        assert_eq!(got, expect);
        assert!(result.violations.is_empty());
    }

    #[test]
    fn max_density_on_path_is_degenerate_tie() {
        let p = families::path(5).unwrap();
        let result = max_density_subtree(&p).unwrap();
        assert_eq!(result.value, rat(1, 2));
        // every proper subtree ties
        let all = crate::tree::enumerate_subtrees(&p, None, None).len() - 1;
        assert_eq!(result.optima.len(), all);
        assert!(result
            .optima
            .iter()
            .all(|(_, c)| *c == StructureClass::Degenerate));
    }

    #[test]
    fn global_vs_local_star_orderings() {
        // large stars: centre below global below leaf
        for n in 4..=8 {
            let star = families::star(n).unwrap();
            let report = global_vs_local_density(&star).unwrap();
            assert!(report.min_density < report.global);
            assert!(report.global < report.max_density);
            assert_eq!(report.min_vertices, vec![0]);
        }
        // tiny stars: both local densities equal 1/2, below the global
        for n in 2..=3 {
            let star = families::star(n).unwrap();
            let report = global_vs_local_density(&star).unwrap();
            assert_eq!(report.max_density, rat(1, 2));
            assert_eq!(report.min_density, rat(1, 2));
            assert!(report.global > report.max_density);
        }
    }

    #[test]
    fn near_one_witness_absent_at_small_orders() {
        // cheap sanity: nothing reaches 0.9 by order 12
        assert!(near_one_density_witness(&rat(9, 10), 12).is_none());
        // but something beats 0.62 well before that
        let w = near_one_density_witness(&rat(62, 100), 12).unwrap();
        assert!(w.density > rat(62, 100));
    }
}
