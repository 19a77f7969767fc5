//! Corpus-wide verification suites.
//!
//! Each named suite checks one family of structural laws over every labeled
//! tree up to a configurable order (exhaustively through order 7, with
//! order-8 checks exhaustive for the order-1/order-2 claims and
//! deterministically sampled for the subtree-quantified ones, and seeded
//! random trees beyond order 8). A suite returns the exact counterexamples
//! it found; all suites are expected to come back empty.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::counting::{
    global_stats, oracle_stats_with_limit, pair_total_order, rational_str, subtree_stats,
    Rational, StatsCache,
};
use crate::density::{
    density_step_cached, limb_absorption_cached, two_vertex_cached, AbsorptionOutcome,
    RootedKind, StepMode, TableConclusion,
};
use crate::extremal::{
    k_extremal_cached, minimal_violations, two_star_closed_forms, two_star_family_tree,
    two_stars_order_two_means, Direction,
};
use crate::structure::{
    core_decomposition, half_index_predicate, index_in_range, monotonicity_violations,
};
use crate::tree::{
    contract, enumerate_subtrees, for_each_subtree, labeled_tree_by_index, labeled_tree_count,
    sample_labeled_trees, Subtree, Tree, VertexSet, MAX_EXHAUSTIVE_ORDER,
};
use crate::{families, rat};

/// All suite names accepted by [`run_suite`], in canonical order.
pub const SUITE_NAMES: &[&str] = &[
    "mainthm",
    "refinement",
    "branchingpath",
    "ksubtree-leaves",
    "index-monotone",
    "minimal-case",
    "density-bound",
    "density-step",
    "limb-absorption",
    "type-L-deg2",
    "type-H-pendant",
    "table1",
    "two-star-forms",
    "index-lemma",
    "half-index",
    "astral-bound",
    "contraction",
    "monotonicity",
    "oracle",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown theorem suite {0:?} (known: {})", SUITE_NAMES.join(", "))]
    UnknownSuite(String),
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Largest tree order in the corpus: exhaustive through
    /// `min(max_n, 8)`, seeded samples beyond.
    pub max_n: usize,
    /// Seed for every sampled choice (trees beyond order 8, sampled
    /// subtrees at order 8).
    pub seed: u64,
    /// Trees drawn per order beyond the exhaustive range.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 7,
            seed: 0x5eed,
            samples: 200,
        }
    }
}

/// One counterexample: the tree, the subtree context if any, and the
/// expected/actual sides of the failed comparison.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub tree: String,
    pub subtree: Option<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trees_checked: u64,
    pub checks: u64,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_RECORDED_VIOLATIONS: usize = 100;

/// Per-tree scratch: counts checks, collects counterexamples and tallies.
pub struct Recorder<'c> {
    ctx: &'c TreeCtx,
    checks: u64,
    violations: Vec<Violation>,
    tallies: Vec<(&'static str, u64)>,
}

impl<'c> Recorder<'c> {
    fn new(ctx: &'c TreeCtx) -> Self {
        Recorder {
            ctx,
            checks: 0,
            violations: Vec::new(),
            tallies: Vec::new(),
        }
    }

    pub fn check(
        &mut self,
        ok: bool,
        subtree: Option<VertexSet>,
        expected: impl FnOnce() -> String,
        actual: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                tree: self.ctx.tree.compact(),
                subtree: subtree.map(|s| s.to_string()),
                expected: expected(),
                actual: actual(),
            });
        }
    }

    pub fn violation_strings(&mut self, subtree: Option<VertexSet>, messages: Vec<String>) {
        self.checks += 1;
        for m in messages {
            self.violations.push(Violation {
                tree: self.ctx.tree.compact(),
                subtree: subtree.map(|s| s.to_string()),
                expected: "no violation".into(),
                actual: m,
            });
        }
    }

    pub fn tally(&mut self, key: &'static str, amount: u64) {
        match self.tallies.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => *v += amount,
            None => self.tallies.push((key, amount)),
        }
    }
}

/// One corpus tree plus its sampling context.
pub struct TreeCtx {
    pub tree: Tree,
    pub order: usize,
    pub index: u64,
    /// Whether this tree was picked for the expensive full-scan checks
    /// (always true in the exhaustive range up to order 7).
    pub selected: bool,
    seed: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl TreeCtx {
    /// The subtrees a subtree-quantified law is checked on: everything
    /// through order 7; at order 8 and beyond, all subtrees of order 1 and
    /// 2 plus a couple of deterministically grown larger ones.
    pub fn subtree_sample(&self) -> Vec<VertexSet> {
        if self.order <= 7 {
            return enumerate_subtrees(&self.tree, None, None);
        }
        let mut out = enumerate_subtrees(&self.tree, None, Some(1));
        out.extend(enumerate_subtrees(&self.tree, None, Some(2)));
        let mut state = self
            .seed
            .wrapping_add(self.index.wrapping_mul(0x9e3779b97f4a7c15))
            .wrapping_add(self.order as u64);
        for _ in 0..2 {
            out.push(self.random_subtree(&mut state));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn random_subtree(&self, state: &mut u64) -> VertexSet {
        let n = self.order;
        let target = 3 + (splitmix64(state) % (n as u64 - 2)) as usize;
        let mut s = VertexSet::singleton((splitmix64(state) % n as u64) as usize);
        while s.len() < target {
            let frontier: Vec<usize> = (0..n)
                .filter(|&v| {
                    !s.contains(v) && self.tree.neighbors(v).iter().any(|&w| s.contains(w))
                })
                .collect();
            if frontier.is_empty() {
                break;
            }
            s.insert(frontier[(splitmix64(state) % frontier.len() as u64) as usize]);
        }
        s
    }

    /// Orders at which the extremal searches run: all of them through order
    /// 7, orders 1 and 2 beyond (plus everything on the selected slice of
    /// moderate-size trees).
    pub fn extremal_orders(&self) -> Vec<usize> {
        if self.order <= 7 || (self.selected && self.order <= 10) {
            (1..=self.order).collect()
        } else {
            vec![1, 2]
        }
    }
}

struct TreeOutcome {
    checks: u64,
    violations: Vec<Violation>,
    tallies: Vec<(&'static str, u64)>,
}

fn run_over_corpus<F>(name: &str, cfg: &SuiteConfig, per_tree: F) -> SuiteReport
where
    F: Fn(&TreeCtx, &mut Recorder) + Sync,
{
    let mut trees_checked = 0u64;
    let mut checks = 0u64;
    let mut violations: Vec<Violation> = Vec::new();
    let mut tallies: Vec<(&'static str, u64)> = Vec::new();
    let mut truncated = 0u64;

    let mut absorb = |outcomes: Vec<TreeOutcome>| {
        for o in outcomes {
            trees_checked += 1;
            checks += o.checks;
            for v in o.violations {
                if violations.len() < MAX_RECORDED_VIOLATIONS {
                    violations.push(v);
                } else {
                    truncated += 1;
                }
            }
            for (k, amount) in o.tallies {
                match tallies.iter_mut().find(|(key, _)| *key == k) {
                    Some((_, v)) => *v += amount,
                    None => tallies.push((k, amount)),
                }
            }
        }
    };

    let exhaustive_top = cfg.max_n.min(MAX_EXHAUSTIVE_ORDER);
    for n in 2..=exhaustive_top {
        let count = labeled_tree_count(n);
        let outcomes: Vec<TreeOutcome> = (0..count)
            .into_par_iter()
            .map(|index| {
                let ctx = TreeCtx {
                    tree: labeled_tree_by_index(n, index),
                    order: n,
                    index,
                    selected: n <= 7 || index % 16 == cfg.seed % 16,
                    seed: cfg.seed,
                };
                let mut rec = Recorder::new(&ctx);
                per_tree(&ctx, &mut rec);
                TreeOutcome {
                    checks: rec.checks,
                    violations: rec.violations,
                    tallies: rec.tallies,
                }
            })
            .collect();
        absorb(outcomes);
    }
    if cfg.max_n > MAX_EXHAUSTIVE_ORDER {
        for n in MAX_EXHAUSTIVE_ORDER + 1..=cfg.max_n {
            let trees = sample_labeled_trees(n, cfg.samples, cfg.seed);
            let outcomes: Vec<TreeOutcome> = trees
                .into_par_iter()
                .enumerate()
                .map(|(i, tree)| {
                    let ctx = TreeCtx {
                        tree,
                        order: n,
                        index: i as u64,
                        selected: i % 16 == (cfg.seed % 16) as usize,
                        seed: cfg.seed,
                    };
                    let mut rec = Recorder::new(&ctx);
                    per_tree(&ctx, &mut rec);
                    TreeOutcome {
                        checks: rec.checks,
                        violations: rec.violations,
                        tallies: rec.tallies,
                    }
                })
                .collect();
            absorb(outcomes);
        }
    }

    let mut notes: Vec<String> = tallies
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect();
    if truncated > 0 {
        notes.push(format!("{truncated} further violations not recorded"));
    }
    SuiteReport {
        suite: name.to_string(),
        trees_checked,
        checks,
        violations,
        notes,
    }
}

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, VerifyError> {
    let report = match name {
        "mainthm" => run_over_corpus(name, cfg, mainthm_suite),
        "refinement" => run_over_corpus(name, cfg, refinement_suite),
        "branchingpath" => run_over_corpus(name, cfg, branchingpath_suite),
        "ksubtree-leaves" => run_over_corpus(name, cfg, ksubtree_leaves_suite),
        "index-monotone" => run_over_corpus(name, cfg, index_monotone_suite),
        "minimal-case" => run_over_corpus(name, cfg, minimal_case_suite),
        "density-bound" => run_over_corpus(name, cfg, density_bound_suite),
        "density-step" => run_over_corpus(name, cfg, density_step_suite),
        "limb-absorption" => run_over_corpus(name, cfg, limb_absorption_suite),
        "type-L-deg2" => run_over_corpus(name, cfg, type_l_suite),
        "type-H-pendant" => run_over_corpus(name, cfg, type_h_pendant_suite),
        "table1" => run_over_corpus(name, cfg, table1_suite),
        "two-star-forms" => two_star_forms_suite(),
        "index-lemma" => run_over_corpus(name, cfg, index_lemma_suite),
        "half-index" => run_over_corpus(name, cfg, half_index_suite),
        "astral-bound" => run_over_corpus(name, cfg, astral_bound_suite),
        "contraction" => run_over_corpus(name, cfg, contraction_suite),
        "monotonicity" => run_over_corpus(name, cfg, monotonicity_suite),
        "oracle" => run_over_corpus(name, cfg, oracle_suite),
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    };
    Ok(report)
}

/// Runs every suite in canonical order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, cfg).expect("canonical names are known"))
        .collect()
}

// ---- maximal-subtree suites -------------------------------------------------

fn mainthm_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    for k in ctx.extremal_orders() {
        let result = k_extremal_cached(&cache, k, Direction::Max);
        for &sv in &result.optima {
            if k == 1 {
                let v = sv.min_vertex().unwrap();
                rec.check(
                    ctx.tree.degree(v) <= 2,
                    Some(sv),
                    || "order-1 maximum at degree 1 or 2".into(),
                    || format!("degree {}", ctx.tree.degree(v)),
                );
                continue;
            }
            let s = Subtree::new(&ctx.tree, sv).unwrap();
            let leaves = s.leaves();
            let high = leaves.iter().filter(|&&v| ctx.tree.degree(v) > 2).count();
            let low = leaves.iter().filter(|&&v| ctx.tree.degree(v) <= 2).count();
            rec.check(
                high <= 1 && low >= 1,
                Some(sv),
                || "at most one leaf of degree > 2 and at least one of degree <= 2".into(),
                || format!("{high} high-degree leaves, {low} low-degree leaves"),
            );
        }
    }
}

fn refinement_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    for k in ctx.extremal_orders() {
        if k < 2 {
            continue;
        }
        let result = k_extremal_cached(&cache, k, Direction::Max);
        for &sv in &result.optima {
            let s = Subtree::new(&ctx.tree, sv).unwrap();
            let leaves = s.leaves();
            if let Some(&w) = leaves.iter().find(|&&v| ctx.tree.degree(v) > 2) {
                let others_ok = leaves
                    .iter()
                    .all(|&v| v == w || ctx.tree.degree(v) == 1);
                rec.check(
                    others_ok,
                    Some(sv),
                    || format!("all leaves besides {w} are leaves of the tree"),
                    || "a companion leaf has degree 2 or more".into(),
                );
            }
        }
    }
}

fn branchingpath_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let decomposition = core_decomposition(&ctx.tree);
    let result = k_extremal_cached(&cache, 1, Direction::Max);
    for &sv in &result.optima {
        let v = sv.min_vertex().unwrap();
        rec.check(
            ctx.tree.degree(v) <= 2,
            Some(sv),
            || "order-1 maximum has degree 1 or 2".into(),
            || format!("degree {}", ctx.tree.degree(v)),
        );
        if !decomposition.degenerate_path {
            rec.check(
                ctx.tree.is_leaf(v) || decomposition.is_core_path_vertex(v),
                Some(sv),
                || "order-1 maximum is a leaf or lies on a core-path".into(),
                || format!("vertex {v} is an interior limb vertex"),
            );
        }
    }
}

fn ksubtree_leaves_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let decomposition = core_decomposition(&ctx.tree);
    for k in ctx.extremal_orders() {
        if k < 2 {
            continue;
        }
        let result = k_extremal_cached(&cache, k, Direction::Max);
        for &sv in &result.optima {
            let s = Subtree::new(&ctx.tree, sv).unwrap();
            let deg2: Vec<usize> = s
                .leaves()
                .into_iter()
                .filter(|&v| ctx.tree.degree(v) == 2)
                .collect();
            let in_limb = deg2.iter().any(|&v| decomposition.is_limb_vertex(v));
            let in_core = deg2.iter().any(|&v| !decomposition.is_limb_vertex(v));
            rec.check(
                !(in_limb && in_core),
                Some(sv),
                || "degree-2 leaves all in core-paths or all in limbs".into(),
                || format!("mixed kinds among {deg2:?}"),
            );
        }
    }
}

fn index_monotone_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    for s in ctx.subtree_sample() {
        if s.len() == ctx.order {
            continue;
        }
        let violations = monotonicity_violations(&cache, s);
        rec.violation_strings(
            Some(s),
            violations.into_iter().map(|v| v.to_string()).collect(),
        );
    }
}

fn minimal_case_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let decomposition = core_decomposition(&ctx.tree);
    if decomposition.core.is_empty() {
        rec.tally("paths skipped", 1);
        return;
    }
    let cache = StatsCache::new(&ctx.tree);
    let core_size = decomposition.core.len();
    for k in ctx.extremal_orders() {
        if k > core_size {
            continue;
        }
        let result = k_extremal_cached(&cache, k, Direction::Min);
        rec.violation_strings(
            None,
            minimal_violations(&ctx.tree, &result, &decomposition),
        );
    }
}

// ---- density suites ---------------------------------------------------------

fn density_bound_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let decomposition = core_decomposition(&ctx.tree);
    let half = rat(1, 2);
    for s in ctx.subtree_sample() {
        if s.len() == ctx.order {
            continue;
        }
        let d = cache.density_of_set(s).unwrap();
        rec.check(
            d >= half,
            Some(s),
            || "D(S) >= 1/2".into(),
            || rational_str(&d),
        );
        let contains_core = decomposition.core.is_subset_of(&s);
        rec.check(
            (d == half) == contains_core,
            Some(s),
            || format!("D(S) = 1/2 exactly when S contains the core (here: {contains_core})"),
            || rational_str(&d),
        );
    }
    // trimming one leaf off the core leaves the density strictly above 1/2
    if decomposition.core.len() >= 2 {
        let core = decomposition.core;
        for v in core.iter() {
            let within = ctx
                .tree
                .neighbors(v)
                .iter()
                .filter(|&&w| core.contains(w))
                .count();
            if within == 1 {
                let trimmed = core.without(v);
                let d = cache.density_of_set(trimmed).unwrap();
                rec.check(
                    d > half,
                    Some(trimmed),
                    || "D(core - leaf) > 1/2".into(),
                    || rational_str(&d),
                );
            }
        }
    }
}

fn density_step_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let n = ctx.order;
    for s in ctx.subtree_sample() {
        let k = s.len();
        let sub = Subtree::new(&ctx.tree, s).unwrap();
        if k >= 2 && k <= n - 1 {
            for v in sub.leaves() {
                let step = density_step_cached(&cache, s, v, StepMode::RemoveLeaf).unwrap();
                rec.check(
                    step.consistent(),
                    Some(s),
                    || format!("remove-leaf equivalence at vertex {v}"),
                    || format!("{step:?}"),
                );
            }
        }
        if k + 1 <= n - 1 {
            for v in sub.neighbors() {
                let step = density_step_cached(&cache, s, v, StepMode::AddNeighbor).unwrap();
                rec.check(
                    step.consistent(),
                    Some(s),
                    || format!("add-neighbour equivalence at vertex {v}"),
                    || format!("{step:?}"),
                );
            }
        }
    }
}

fn limb_absorption_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let decomposition = core_decomposition(&ctx.tree);
    for s in ctx.subtree_sample() {
        if s.len() == ctx.order {
            continue;
        }
        match limb_absorption_cached(&cache, &decomposition, s) {
            AbsorptionOutcome::Skipped => rec.tally("skipped (no core part)", 1),
            AbsorptionOutcome::Checked(violations) => rec.violation_strings(Some(s), violations),
        }
    }
    // two-vertex special case: a half-index neighbour never lowers density
    if ctx.order > 2 {
        for &(u, v) in ctx.tree.edges() {
            for (a, b) in [(u, v), (v, u)] {
                // b is the absorbed neighbour; requires i(b; a) = 1/2
                if cache.index_toward(a, b) != rat(1, 2) {
                    continue;
                }
                let d_a = cache.density_of_set(VertexSet::singleton(a)).unwrap();
                let d_pair = cache.density_of_set(VertexSet::from_iter([a, b])).unwrap();
                let astral = ctx.tree.is_astral_over(a);
                rec.check(
                    d_a <= d_pair && ((d_a == d_pair) == astral),
                    Some(VertexSet::from_iter([a, b])),
                    || format!("D({a}) <= D({a},{b}) with equality iff astral ({astral})"),
                    || format!("D({a}) = {}, D(pair) = {}", rational_str(&d_a), rational_str(&d_pair)),
                );
            }
        }
    }
}

fn type_l_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    for v in ctx.tree.vertices() {
        let stats = cache.vertex_stats(v);
        // rooted_type_from_stats asserts the definitional and algebraic
        // tests agree
        let ty = crate::density::rooted_type_from_stats(ctx.order, &stats.count, &stats.total_order);
        if ctx.tree.degree(v) >= 2 {
            rec.check(
                ty.kind == RootedKind::LowIndex,
                Some(VertexSet::singleton(v)),
                || format!("root {v} of degree >= 2 is type L"),
                || format!("{:?}", ty.kind),
            );
        } else {
            rec.tally("degree-1 roots (unconstrained)", 1);
        }
    }
}

fn type_h_pendant_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let n = ctx.order;
    for v in ctx.tree.vertices() {
        let stats = cache.vertex_stats(v);
        let ty = crate::density::rooted_type_from_stats(n, &stats.count, &stats.total_order);
        if ty.kind != RootedKind::HighIndex {
            continue;
        }
        let mut edges: Vec<(usize, usize)> = ctx.tree.edges().to_vec();
        edges.push((v, n));
        let extended = Tree::from_edges(n + 1, edges).unwrap();
        let ext_cache = StatsCache::new(&extended);
        let ext_stats = ext_cache.vertex_stats(n);
        let ext_ty =
            crate::density::rooted_type_from_stats(n + 1, &ext_stats.count, &ext_stats.total_order);
        rec.check(
            ext_ty.kind == RootedKind::HighIndex,
            Some(VertexSet::singleton(v)),
            || format!("pendant extension over H-root {v} stays type H"),
            || format!("{:?}", ext_ty.kind),
        );
    }
}

fn table1_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    if ctx.order <= 2 {
        return;
    }
    let cache = StatsCache::new(&ctx.tree);
    for &(u, v) in ctx.tree.edges() {
        let report = two_vertex_cached(&cache, u, v);
        rec.violation_strings(
            Some(VertexSet::from_iter([u, v])),
            report.violations.clone(),
        );
        if report.conclusion == TableConclusion::NoConclusion {
            let max = if report.d_v >= report.d_w {
                &report.d_v
            } else {
                &report.d_w
            };
            if &report.d_pair >= max {
                rec.tally("no-conclusion cell, pair dominates", 1);
            } else {
                rec.tally("no-conclusion cell, vertex dominates", 1);
            }
        }
    }
}

// ---- index suites -----------------------------------------------------------

fn index_lemma_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    for s in ctx.subtree_sample() {
        let sub = Subtree::new(&ctx.tree, s).unwrap();
        let mu = cache.mean_of_set(s);
        if s.len() < ctx.order {
            for w in sub.neighbors() {
                let i = cache.index_wrt(w, s).unwrap();
                let grown = cache.mean_of_set(s.with(w));
                rec.check(
                    grown == &mu + &i,
                    Some(s),
                    || format!("mu(S+{w}) = mu(S) + i({w}; S)"),
                    || format!("{} vs {}", rational_str(&grown), rational_str(&(&mu + &i))),
                );
            }
        }
        if s.len() >= 2 {
            for v in sub.leaves() {
                let i = cache.index_wrt(v, s).unwrap();
                let shrunk = cache.mean_of_set(s.without(v));
                rec.check(
                    shrunk == &mu - &i,
                    Some(s),
                    || format!("mu(S-{v}) = mu(S) - i({v}; S)"),
                    || format!("{} vs {}", rational_str(&shrunk), rational_str(&(&mu - &i))),
                );
            }
        }
    }
}

fn half_index_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let decomposition = core_decomposition(&ctx.tree);
    let half = rat(1, 2);
    for v in ctx.tree.vertices() {
        let mut witness = false;
        for &w in ctx.tree.neighbors(v) {
            let i = cache.index_toward(w, v);
            rec.check(
                index_in_range(&i),
                None,
                || format!("0 < i({v};{w}) <= 1/2"),
                || rational_str(&i),
            );
            let predicate = half_index_predicate(&ctx.tree, v, w).unwrap();
            rec.check(
                (i == half) == predicate,
                None,
                || format!("i({v};{w}) = 1/2 iff the away-component is a chain ending at {v} ({predicate})"),
                || rational_str(&i),
            );
            if i == half {
                witness = true;
            }
            // absorbing a neighbour moves the local mean by (0, 1/2]
            let mu_v = cache.mean_of_vertex(v);
            let mu_vw = cache.mean_of_set(VertexSet::from_iter([v, w]));
            rec.check(
                mu_v < mu_vw && mu_vw <= &mu_v + &half,
                None,
                || format!("mu({v}) < mu({v},{w}) <= mu({v}) + 1/2"),
                || format!("{} vs {}", rational_str(&mu_v), rational_str(&mu_vw)),
            );
        }
        rec.check(
            decomposition.is_limb_vertex(v) == witness,
            None,
            || format!("limb membership of {v} iff some half-index direction"),
            || format!("witness = {witness}"),
        );
    }
}

fn astral_bound_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let bound = rat(ctx.order as i64 + 1, 2);
    for v in ctx.tree.vertices() {
        let mu = cache.mean_of_vertex(v);
        let astral = ctx.tree.is_astral_over(v);
        rec.check(
            mu >= bound && (mu == bound) == astral,
            Some(VertexSet::singleton(v)),
            || format!("mu(v) >= (n+1)/2 with equality iff astral ({astral})"),
            || rational_str(&mu),
        );
    }
}

fn contraction_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    if ctx.order > 7 && !ctx.selected {
        return;
    }
    let cache = StatsCache::new(&ctx.tree);
    let n = ctx.order;
    for u_set in enumerate_subtrees(&ctx.tree, None, None) {
        let u = Subtree::new(&ctx.tree, u_set).unwrap();
        let c = contract(&u);
        rec.check(
            c.contracted.n() == n - u_set.len() + 1,
            Some(u_set),
            || format!("contracted order {}", n - u_set.len() + 1),
            || format!("{}", c.contracted.n()),
        );
        let contracted_cache = StatsCache::new(&c.contracted);
        let shift = rat(u_set.len() as i64 - 1, 1);
        for_each_subtree(&ctx.tree, Some(u_set), None, |s| {
            let mu = cache.mean_of_set(s);
            let mapped = c.map_set(s);
            let mu_contracted = contracted_cache.mean_of_set(mapped);
            rec.check(
                mu == &mu_contracted + &shift,
                Some(s),
                || format!("mu_T(S) = mu_(T/U)(S/U) + |U| - 1 for U = {u_set}"),
                || format!(
                    "{} vs {} + {}",
                    rational_str(&mu),
                    rational_str(&mu_contracted),
                    u_set.len() - 1
                ),
            );
        });
        // density is invariant under contracting the subtree itself
        if u_set.len() < n {
            let d = cache.density_of_set(u_set).unwrap();
            let d_contracted = contracted_cache
                .density_of_set(VertexSet::singleton(c.image))
                .unwrap();
            rec.check(
                d == d_contracted,
                Some(u_set),
                || "D_T(S) = D_(T/S)(image)".into(),
                || format!("{} vs {}", rational_str(&d), rational_str(&d_contracted)),
            );
        }
    }
}

fn monotonicity_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let n = ctx.order;
    if ctx.order > 7 && !ctx.selected {
        // band check only, on the sampled subtrees
        for s in ctx.subtree_sample() {
            let mu = cache.mean_of_set(s);
            let lower = rat((s.len() + n) as i64, 2);
            rec.check(
                mu >= lower && mu <= rat(n as i64, 1),
                Some(s),
                || "(|S| + n)/2 <= mu(S) <= n".into(),
                || rational_str(&mu),
            );
        }
        return;
    }
    let all = enumerate_subtrees(&ctx.tree, None, None);
    let means: Vec<Rational> = all.iter().map(|&s| cache.mean_of_set(s)).collect();
    for (s, mu) in all.iter().zip(&means) {
        let lower = rat((s.len() + n) as i64, 2);
        rec.check(
            mu >= &lower && mu <= &rat(n as i64, 1),
            Some(*s),
            || "(|S| + n)/2 <= mu(S) <= n".into(),
            || rational_str(mu),
        );
    }
    for (i, s) in all.iter().enumerate() {
        for (j, t) in all.iter().enumerate() {
            if i != j && s.is_subset_of(t) {
                rec.check(
                    means[i] < means[j],
                    Some(*s),
                    || format!("mu strictly increases into {t}"),
                    || format!("{} vs {}", rational_str(&means[i]), rational_str(&means[j])),
                );
            }
        }
    }
}

fn oracle_suite(ctx: &TreeCtx, rec: &mut Recorder) {
    let cache = StatsCache::new(&ctx.tree);
    let g = global_stats(&ctx.tree);
    if ctx.order <= crate::counting::ENUM_GUARD {
        let o = oracle_stats_with_limit(&ctx.tree, None, None, crate::counting::ENUM_GUARD).unwrap();
        rec.check(
            g.stats == o,
            None,
            || "global DP equals enumeration".into(),
            || format!("{:?} vs {:?}", g.stats, o),
        );
    }
    for s in ctx.subtree_sample() {
        let sub = Subtree::new(&ctx.tree, s).unwrap();
        let dp = subtree_stats(&sub);
        let fast = cache.set_stats(s);
        rec.check(
            dp == fast,
            Some(s),
            || "contraction DP equals direction-product".into(),
            || format!("{dp:?} vs {fast:?}"),
        );
        if ctx.order <= crate::counting::ENUM_GUARD {
            let o = oracle_stats_with_limit(&ctx.tree, Some(&sub), None, crate::counting::ENUM_GUARD)
                .unwrap();
            rec.check(
                dp == o,
                Some(s),
                || "anchored DP equals enumeration".into(),
                || format!("{dp:?} vs {o:?}"),
            );
        }
    }
    for &(u, v) in ctx.tree.edges() {
        let split = pair_total_order(&ctx.tree, u, v).unwrap();
        let direct = cache.set_stats(VertexSet::from_iter([u, v])).total_order;
        rec.check(
            split == direct,
            Some(VertexSet::from_iter([u, v])),
            || "edge-split total order equals anchored count".into(),
            || format!("{split} vs {direct}"),
        );
    }
}

// ---- the fixed-grid two-star suite -------------------------------------------

fn two_star_forms_suite() -> SuiteReport {
    let mut checks = 0u64;
    let mut violations: Vec<Violation> = Vec::new();
    let mut trees = 0u64;
    let mut check = |tree: &Tree, ok: bool, expected: String, actual: String| {
        checks += 1;
        if !ok && violations.len() < MAX_RECORDED_VIOLATIONS {
            violations.push(Violation {
                tree: tree.compact(),
                subtree: None,
                expected,
                actual,
            });
        }
    };

    // two (n+1)-star family: closed forms against the generated trees
    for n in 2..=5usize {
        for k in 3..=8usize {
            let t = two_star_family_tree(n, k);
            trees += 1;
            let cache = StatsCache::new(&t);
            let lay = families::TwoStarsLayout::new(n, 1, k - 2);
            let spine = lay.spine();
            let forms = two_star_closed_forms(n, k).unwrap();
            for ((a, b), expected) in &forms.mu2_by_split {
                let s = VertexSet::from_iter([spine[a - 1], spine[*a]]);
                let got = cache.mean_of_set(s);
                check(
                    &t,
                    &got == expected,
                    format!("mu2({a},{b}) = {}", rational_str(expected)),
                    rational_str(&got),
                );
            }
            for (b, expected) in &forms.mu_w_by_b {
                let component = families::broom(*b, n).unwrap();
                let got = StatsCache::new(&component).mean_of_vertex(0);
                check(
                    &t,
                    &got == expected,
                    format!("mu_w({b}) = {}", rational_str(expected)),
                    rational_str(&got),
                );
            }
            let mut argmin = forms.argmin.clone();
            argmin.sort_unstable();
            check(
                &t,
                argmin == vec![(1, k - 1), (k - 1, 1)],
                format!("argmin = {{(1,{}),({},1)}}", k - 1, k - 1),
                format!("{argmin:?}"),
            );
            // the maximum of mu2 sits at the middle splits
            let max_value = forms.mu2_by_split.iter().map(|(_, v)| v).max().unwrap();
            let argmax: Vec<usize> = forms
                .mu2_by_split
                .iter()
                .filter(|(_, v)| v == max_value)
                .map(|((a, _), _)| *a)
                .collect();
            let middle: Vec<usize> = if k % 2 == 0 {
                vec![k / 2]
            } else {
                vec![k / 2, k / 2 + 1]
            };
            check(
                &t,
                argmax == middle,
                format!("argmax of mu2 at the middle splits {middle:?}"),
                format!("{argmax:?}"),
            );
            // the order-2 minimum is attained at the centre/path edges
            let result = k_extremal_cached(&cache, 2, Direction::Min);
            let d = lay.middle[0];
            let d_prime = *lay.middle.last().unwrap();
            let mut expect = vec![
                VertexSet::from_iter([lay.left_center, d]),
                VertexSet::from_iter([lay.right_center, d_prime]),
            ];
            expect.sort_unstable();
            expect.dedup();
            let mut got = result.optima.clone();
            got.sort_unstable();
            check(
                &t,
                got == expect && result.value == forms.mu2_min,
                "order-2 minimum at the centre/path edges with the closed-form value".into(),
                format!("{got:?} at {}", rational_str(&result.value)),
            );
        }
    }

    // two 2-star family with a 2n-vertex middle path: order-2 maximum flips
    for n in 1..=6usize {
        let t = families::two_stars(2, 2 * n).unwrap();
        trees += 1;
        let cache = StatsCache::new(&t);
        let lay = families::TwoStarsLayout::new(2, 1, 2 * n);
        let (mu_vw, mu_cd, diff) = two_stars_order_two_means(n);
        let (v, w) = lay.middle_pair().unwrap();
        let got_vw = cache.mean_of_set(VertexSet::from_iter([v, w]));
        check(
            &t,
            got_vw == mu_vw,
            format!("mu(v,w) = {}", rational_str(&mu_vw)),
            rational_str(&got_vw),
        );
        let got_cd = cache.mean_of_set(VertexSet::from_iter([
            lay.right_center,
            lay.right_leaves[0],
        ]));
        check(
            &t,
            got_cd == mu_cd,
            format!("mu(c,d) = {}", rational_str(&mu_cd)),
            rational_str(&got_cd),
        );
        check(
            &t,
            &mu_vw - &mu_cd == diff,
            "difference closed form".into(),
            rational_str(&(&mu_vw - &mu_cd)),
        );
        let result = k_extremal_cached(&cache, 2, Direction::Max);
        let expected_winner_is_pair = n > 1;
        let winner_is_pair = result.optima.contains(&VertexSet::from_iter([v, w]));
        check(
            &t,
            winner_is_pair == expected_winner_is_pair
                && (diff > rat(0, 1)) == expected_winner_is_pair,
            format!("order-2 maximum matches the sign of the difference at n={n}"),
            format!("optima {:?}", result.optima),
        );
    }

    SuiteReport {
        suite: "two-star-forms".into(),
        trees_checked: trees,
        checks,
        violations,
        notes: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> SuiteConfig {
        SuiteConfig {
            max_n: 5,
            seed: 7,
            samples: 10,
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("no-such-thing", &small_cfg()),
            Err(VerifyError::UnknownSuite(_))
        ));
    }

    #[test]
    fn all_suites_pass_on_the_small_corpus() {
        for name in SUITE_NAMES {
            let report = run_suite(name, &small_cfg()).unwrap();
            assert!(
                report.passed(),
                "suite {name} failed: {:?}",
                report.violations
            );
            assert!(report.checks > 0, "suite {name} checked nothing");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("density-bound", &small_cfg()).unwrap();
        let b = run_suite("density-bound", &small_cfg()).unwrap();
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.trees_checked, b.trees_checked);
    }

    #[test]
    fn sampled_orders_beyond_exhaustive_range() {
        let cfg = SuiteConfig {
            max_n: 9,
            seed: 3,
            samples: 4,
        };
        let report = run_suite("astral-bound", &cfg).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        let exhaustive: u64 = (2..=8).map(labeled_tree_count).sum();
        assert_eq!(report.trees_checked, exhaustive + 4);
    }
}
