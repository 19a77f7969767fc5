//! Tree representation, edge-list I/O, subtree handling, contraction and
//! exhaustive enumeration.
//!
//! Vertices are dense ids `0..n-1`, which keeps adjacency array-backed and
//! lets vertex sets live in a single `u64` bitmask (hence the hard cap of
//! [`MAX_VERTICES`] vertices).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Hard upper bound on the order of a [`Tree`]: vertex sets are `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// Largest order for which the exhaustive labeled corpus is available.
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    EmptyTree,
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("line {line}: malformed line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("expected {expected} edges for order {n}, found {found}")]
    WrongEdgeCount {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge list does not describe a connected graph")]
    Disconnected,
    #[error("subtree must be nonempty")]
    EmptySubtree,
    #[error("subtree vertex {vertex} out of range for order {n}")]
    SubtreeOutOfRange { vertex: usize, n: usize },
    #[error("vertices do not induce a connected subgraph")]
    SubtreeDisconnected,
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters for family {family:?}: {reason}")]
    InvalidParams { family: String, reason: String },
    #[error("exhaustive corpus supports orders 1..={MAX_EXHAUSTIVE_ORDER}, got {0}")]
    CorpusRange(usize),
}

/// A set of vertex ids, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n >= 1 && n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min_vertex(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn bits(&self) -> u64 {
        self.0
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for v in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// An immutable tree on vertices `0..n-1`.
///
/// Invariants enforced on construction: exactly `n - 1` distinct edges, no
/// self-loops, connected (and therefore acyclic). Adjacency lists are sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Tree {
    /// Builds a tree from an edge list, validating every invariant.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyTree);
        }
        if n > MAX_VERTICES {
            return Err(TreeError::TooLarge(n));
        }
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::VertexOutOfRange {
                    line: 0,
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        if norm.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                found: norm.len(),
            });
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(TreeError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree {
            n,
            adj,
            edges: norm,
        };
        if !tree.is_connected_set(VertexSet::full(n)) {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    /// Parses the edge-list text format.
    ///
    /// Lines starting with `#` are comments. The first non-comment line is
    /// the vertex count `n`, followed by exactly `n - 1` lines `u v` with
    /// whitespace-separated endpoints in `0..n`.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_lines = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match n {
                None => {
                    n = Some(line.parse::<usize>().map_err(|_| TreeError::MalformedLine {
                        line: line_no,
                        content: raw.to_string(),
                    })?);
                    let n = n.unwrap();
                    if n == 0 {
                        return Err(TreeError::EmptyTree);
                    }
                    if n > MAX_VERTICES {
                        return Err(TreeError::TooLarge(n));
                    }
                }
                Some(n) => {
                    let mut it = line.split_whitespace();
                    let (u, v) = match (it.next(), it.next(), it.next()) {
                        (Some(a), Some(b), None) => {
                            let parse = |s: &str| {
                                s.parse::<usize>().map_err(|_| TreeError::MalformedLine {
                                    line: line_no,
                                    content: raw.to_string(),
                                })
                            };
                            (parse(a)?, parse(b)?)
                        }
                        _ => {
                            return Err(TreeError::MalformedLine {
                                line: line_no,
                                content: raw.to_string(),
                            })
                        }
                    };
                    if u >= n || v >= n {
                        return Err(TreeError::VertexOutOfRange {
                            line: line_no,
                            vertex: u.max(v),
                            n,
                        });
                    }
                    edge_lines += 1;
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(TreeError::EmptyTree)?;
        if edge_lines != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                found: edge_lines,
            });
        }
        Tree::from_edges(n, edges)
    }

    /// Canonical edge-list serialization: `n`, then edges sorted by
    /// `(u, v)` with `u < v`, LF line endings.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// One-line rendering used in violation reports.
    pub fn compact(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{u}-{v}"))
            .collect();
        format!("n={} [{}]", self.n, edges.join(" "))
    }

    /// FNV-1a hash of the canonical serialization.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.to_edge_list().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Whether every vertex has degree at most 2.
    pub fn is_path(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) <= 2)
    }

    /// `T` is astral over `v` when `T` is a path or `v` is the only vertex
    /// of degree greater than 2.
    pub fn is_astral_over(&self, v: usize) -> bool {
        (0..self.n).all(|u| u == v || self.degree(u) <= 2)
    }

    /// Whether `set` induces a connected (nonempty) subgraph.
    pub fn is_connected_set(&self, set: VertexSet) -> bool {
        let start = match set.min_vertex() {
            Some(v) => v,
            None => return false,
        };
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if set.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen == set
    }

    /// The vertex set of the component of `v` in `T` minus `blocked`.
    pub fn component_away(&self, v: usize, blocked: VertexSet) -> VertexSet {
        debug_assert!(!blocked.contains(v));
        let mut seen = VertexSet::singleton(v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !blocked.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Parent array of a BFS rooted at `root` (`parent[root]` is `None`).
    pub fn bfs_parents(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n];
        let mut seen = VertexSet::singleton(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen.contains(w) {
                    seen.insert(w);
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// BFS distances from a set (every vertex of `from` has distance 0).
    pub fn distances_from_set(&self, from: VertexSet) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for v in from.iter() {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// A validated subtree: a nonempty, connected vertex subset of a host tree.
#[derive(Clone, Copy)]
pub struct Subtree<'t> {
    tree: &'t Tree,
    vertices: VertexSet,
}

impl<'t> fmt::Debug for Subtree<'t> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subtree({})", self.vertices)
    }
}

impl<'t> Subtree<'t> {
    pub fn new(tree: &'t Tree, vertices: VertexSet) -> Result<Self, TreeError> {
        if vertices.is_empty() {
            return Err(TreeError::EmptySubtree);
        }
        if let Some(v) = vertices.iter().find(|&v| v >= tree.n()) {
            return Err(TreeError::SubtreeOutOfRange { vertex: v, n: tree.n() });
        }
        if !tree.is_connected_set(vertices) {
            return Err(TreeError::SubtreeDisconnected);
        }
        Ok(Subtree { tree, vertices })
    }

    pub fn of_vertices(
        tree: &'t Tree,
        vs: impl IntoIterator<Item = usize>,
    ) -> Result<Self, TreeError> {
        Subtree::new(tree, VertexSet::from_iter(vs))
    }

    pub fn whole(tree: &'t Tree) -> Self {
        Subtree {
            tree,
            vertices: tree.full_set(),
        }
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(v)
    }

    pub fn is_whole_tree(&self) -> bool {
        self.order() == self.tree.n()
    }

    /// Degree of `v` inside the subtree.
    pub fn degree_within(&self, v: usize) -> usize {
        debug_assert!(self.contains(v));
        self.tree
            .neighbors(v)
            .iter()
            .filter(|&&w| self.vertices.contains(w))
            .count()
    }

    /// Leaves of the subtree: vertices with at most one neighbour inside it.
    /// The single vertex of an order-1 subtree counts as its sole leaf.
    pub fn leaves(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|&v| self.degree_within(v) <= 1)
            .collect()
    }

    /// Vertices outside the subtree adjacent to it.
    pub fn neighbors(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for v in 0..self.tree.n() {
            if !self.vertices.contains(v)
                && self
                    .tree
                    .neighbors(v)
                    .iter()
                    .any(|&w| self.vertices.contains(w))
            {
                out.push(v);
            }
        }
        out
    }

    /// The unique neighbour of `v` inside the subtree, when `v` is adjacent
    /// to the subtree or a leaf of it. (A vertex adjacent to a connected set
    /// at two points would close a cycle, so uniqueness is guaranteed.)
    pub fn attachment_of(&self, v: usize) -> Option<usize> {
        let mut inside = self
            .tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.vertices.contains(w));
        let first = inside.next();
        match (first, inside.next()) {
            (Some(w), None) => Some(w),
            _ => None,
        }
    }
}

/// Result of contracting a subtree to a single vertex.
///
/// The contracted set is represented by its minimum vertex; surviving
/// vertices keep their relative id order.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub contracted: Tree,
    /// Id (in the contracted tree) of the vertex that replaces the set.
    pub image: usize,
    /// For each original vertex outside the contracted set, its new id.
    /// Members of the contracted set map to `None` (they became `image`).
    pub vertex_map: Vec<Option<usize>>,
}

impl Contraction {
    /// New id of an original vertex, sending contracted-set members to the
    /// image vertex.
    pub fn map_vertex(&self, v: usize) -> usize {
        self.vertex_map[v].unwrap_or(self.image)
    }

    /// Image of a set of original vertices.
    pub fn map_set(&self, s: VertexSet) -> VertexSet {
        VertexSet::from_iter(s.iter().map(|v| self.map_vertex(v)))
    }
}

/// Collapses subtree `u` of its host tree to a single vertex, preserving all
/// adjacencies: `w` is adjacent to the set in the host iff its image is
/// adjacent to the image vertex.
pub fn contract(u: &Subtree<'_>) -> Contraction {
    let tree = u.tree();
    let set = u.vertices();
    let rep = set.min_vertex().expect("subtree is nonempty");
    let mut vertex_map = vec![None; tree.n()];
    let mut image = 0;
    let mut next = 0usize;
    for v in 0..tree.n() {
        if v == rep {
            image = next;
            next += 1;
        } else if !set.contains(v) {
            vertex_map[v] = Some(next);
            next += 1;
        }
    }
    let m = tree.n() - set.len() + 1;
    debug_assert_eq!(next, m);
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    for &(a, b) in tree.edges() {
        match (set.contains(a), set.contains(b)) {
            (true, true) => {}
            (true, false) => edges.push((image, vertex_map[b].unwrap())),
            (false, true) => edges.push((vertex_map[a].unwrap(), image)),
            (false, false) => edges.push((vertex_map[a].unwrap(), vertex_map[b].unwrap())),
        }
    }
    let contracted = Tree::from_edges(m, edges).expect("contraction of a subtree stays a tree");
    Contraction {
        contracted,
        image,
        vertex_map,
    }
}

/// Streams every subtree of `tree` through `f`, optionally restricted to
/// supersets of `containing` and/or to a fixed order.
///
/// Enumeration grows connected sets along an explicit frontier; a branch that
/// skips a frontier vertex bans it from the entire sub-branch, so each
/// subtree is produced exactly once. Without a `containing` filter, sets are
/// anchored at their minimum vertex. The order of emission is deterministic
/// for a fixed tree.
pub fn for_each_subtree<F: FnMut(VertexSet)>(
    tree: &Tree,
    containing: Option<VertexSet>,
    order: Option<usize>,
    mut f: F,
) {
    match containing {
        Some(base) => {
            debug_assert!(!base.is_empty() && tree.is_connected_set(base));
            let mut ext: Vec<usize> = (0..tree.n())
                .filter(|&v| {
                    !base.contains(v) && tree.neighbors(v).iter().any(|&w| base.contains(w))
                })
                .collect();
            ext.sort_unstable();
            let used = base.union(VertexSet::from_iter(ext.iter().copied()));
            grow(tree, base, &ext, used, order, &mut f);
        }
        None => {
            for a in 0..tree.n() {
                let s = VertexSet::singleton(a);
                // only vertices above the anchor may ever join
                let below = if a == 0 {
                    VertexSet::EMPTY
                } else {
                    VertexSet::full(a)
                };
                let ext: Vec<usize> = tree
                    .neighbors(a)
                    .iter()
                    .copied()
                    .filter(|&w| w > a)
                    .collect();
                let used = below
                    .with(a)
                    .union(VertexSet::from_iter(ext.iter().copied()));
                grow(tree, s, &ext, used, order, &mut f);
            }
        }
    }
}

// Invariant: `used` contains s, everything currently or formerly on an
// extension list along this recursion path, and every banned vertex. A
// branch that includes ext[i] never re-adds the skipped ext[..i], so each
// connected superset is produced exactly once.
fn grow<F: FnMut(VertexSet)>(
    tree: &Tree,
    s: VertexSet,
    ext: &[usize],
    used: VertexSet,
    order: Option<usize>,
    f: &mut F,
) {
    match order {
        Some(k) => {
            if s.len() == k {
                f(s);
                return;
            }
            if s.len() > k {
                return;
            }
        }
        None => f(s),
    }
    for (i, &v) in ext.iter().enumerate() {
        let mut child_ext: Vec<usize> = ext[i + 1..].to_vec();
        let mut child_used = used;
        for &w in tree.neighbors(v) {
            if !used.contains(w) {
                child_ext.push(w);
                child_used.insert(w);
            }
        }
        grow(tree, s.with(v), &child_ext, child_used, order, f);
    }
}

/// Collects every qualifying subtree. Yield order is deterministic.
pub fn enumerate_subtrees(
    tree: &Tree,
    containing: Option<VertexSet>,
    order: Option<usize>,
) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for_each_subtree(tree, containing, order, |s| out.push(s));
    out
}

/// `n^(n-2)` for the supported corpus range.
pub fn labeled_tree_count(n: usize) -> u64 {
    match n {
        1 | 2 => 1,
        _ => (n as u64).pow(n as u32 - 2),
    }
}

/// Decodes a Pruefer sequence over `0..n-1` (length `n - 2`) into a tree.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Tree {
    debug_assert_eq!(seq.len(), n.saturating_sub(2));
    if n == 1 {
        return Tree::from_edges(1, []).unwrap();
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // ptr/leaf scan keeps the decode linear; n is tiny here anyway
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Tree::from_edges(n, edges).expect("a Pruefer decode is always a tree")
}

/// Iterates over all `n^(n-2)` labeled trees of order `n` via Pruefer
/// decoding, in lexicographic sequence order. Hard-capped at
/// [`MAX_EXHAUSTIVE_ORDER`].
pub fn all_labeled_trees(n: usize) -> Result<impl Iterator<Item = Tree>, TreeError> {
    if n == 0 || n > MAX_EXHAUSTIVE_ORDER {
        return Err(TreeError::CorpusRange(n));
    }
    Ok((0..labeled_tree_count(n)).map(move |idx| labeled_tree_by_index(n, idx)))
}

/// The `idx`-th labeled tree of order `n` (Pruefer sequence read as a base-n
/// number, most significant digit first).
pub fn labeled_tree_by_index(n: usize, idx: u64) -> Tree {
    if n <= 2 {
        return if n == 1 {
            Tree::from_edges(1, []).unwrap()
        } else {
            Tree::from_edges(2, [(0, 1)]).unwrap()
        };
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut rem = idx;
    for i in (0..len).rev() {
        seq[i] = (rem % n as u64) as usize;
        rem /= n as u64;
    }
    prufer_decode(n, &seq)
}

/// Draws `count` labeled trees of order `n` from uniformly random Pruefer
/// sequences; fully determined by the seed.
pub fn sample_labeled_trees(n: usize, count: usize, seed: u64) -> Vec<Tree> {
    assert!(n >= 1 && n <= MAX_VERTICES);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15));
    (0..count)
        .map(|_| {
            if n <= 2 {
                labeled_tree_by_index(n, 0)
            } else {
                let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
                prufer_decode(n, &seq)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        Tree::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn parse_smallest_tree() {
        let t = Tree::parse("2\n0 1").unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.edges(), &[(0, 1)]);
    }

    #[test]
    fn parse_spider_with_comments() {
        let t = Tree::parse("# five vertices\n5\n0 1\n1 2\n2 3\n2 4\n").unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.degree(2), 3);
    }

    #[test]
    fn parse_rejects_wrong_edge_count() {
        let err = Tree::parse("4\n0 1\n2 3").unwrap_err();
        assert!(matches!(err, TreeError::WrongEdgeCount { .. }));
    }

    #[test]
    fn parse_rejects_disconnected() {
        let err = Tree::parse("4\n0 1\n2 3\n2 3").unwrap_err();
        assert!(matches!(
            err,
            TreeError::DuplicateEdge(..) | TreeError::Disconnected
        ));
        let err = Tree::parse("4\n0 1\n0 1\n2 3").unwrap_err();
        assert!(matches!(err, TreeError::DuplicateEdge(..)));
    }

    #[test]
    fn parse_rejects_bad_vertex() {
        let err = Tree::parse("3\n0 1\n1 7").unwrap_err();
        assert!(matches!(err, TreeError::VertexOutOfRange { vertex: 7, .. }));
    }

    #[test]
    fn parse_rejects_malformed_line() {
        let err = Tree::parse("3\n0 1\nx y").unwrap_err();
        assert!(matches!(err, TreeError::MalformedLine { .. }));
    }

    #[test]
    fn roundtrip_serialization() {
        let t = Tree::parse("5\n4 2\n0 1\n1 2\n2 3\n").unwrap();
        let text = t.to_edge_list();
        assert_eq!(text, "5\n0 1\n1 2\n2 3\n2 4\n");
        assert_eq!(Tree::parse(&text).unwrap(), t);
    }

    #[test]
    fn subtree_validation() {
        let t = path(4);
        assert!(Subtree::of_vertices(&t, [1, 2]).is_ok());
        assert!(matches!(
            Subtree::of_vertices(&t, [0, 2]),
            Err(TreeError::SubtreeDisconnected)
        ));
        assert!(matches!(
            Subtree::of_vertices(&t, []),
            Err(TreeError::EmptySubtree)
        ));
    }

    #[test]
    fn subtree_leaves_and_neighbors() {
        let t = Tree::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let s = Subtree::of_vertices(&t, [1, 2]).unwrap();
        assert_eq!(s.leaves(), vec![1, 2]);
        assert_eq!(s.neighbors(), vec![0, 3, 4]);
        let single = Subtree::of_vertices(&t, [2]).unwrap();
        assert_eq!(single.leaves(), vec![2]);
    }

    #[test]
    fn contract_single_vertex_is_identity_up_to_size() {
        let t = path(3);
        let s = Subtree::of_vertices(&t, [1]).unwrap();
        let c = contract(&s);
        assert_eq!(c.contracted.n(), 3);
        assert_eq!(c.image, 1);
        assert_eq!(c.contracted.edges(), t.edges());
    }

    #[test]
    fn contract_two_star_centers_gives_star() {
        // two 2-stars with adjacent centres 0 and 1; contracting {0,1}
        // leaves a 4-leaf star
        let t = Tree::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let s = Subtree::of_vertices(&t, [0, 1]).unwrap();
        let c = contract(&s);
        assert_eq!(c.contracted.n(), 5);
        assert_eq!(c.contracted.degree(c.image), 4);
        for v in [2, 3, 4, 5] {
            let w = c.map_vertex(v);
            assert!(c.contracted.is_leaf(w));
            assert!(c.contracted.has_edge(w, c.image));
        }
    }

    #[test]
    fn contract_whole_tree() {
        let t = path(4);
        let c = contract(&Subtree::whole(&t));
        assert_eq!(c.contracted.n(), 1);
    }

    #[test]
    fn enumerate_p2() {
        let t = path(2);
        let subs = enumerate_subtrees(&t, None, None);
        assert_eq!(subs.len(), 3);
    }

    #[test]
    fn enumerate_with_base_p3() {
        let t = path(3);
        let subs = enumerate_subtrees(&t, Some(VertexSet::singleton(1)), None);
        assert_eq!(subs.len(), 4);
    }

    #[test]
    fn enumerate_star_order3() {
        let t = Tree::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let subs = enumerate_subtrees(&t, None, Some(3));
        assert_eq!(subs.len(), 6);
        for s in subs {
            assert!(s.contains(0));
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_and_connected() {
        for n in 1..=6 {
            for t in all_labeled_trees(n).unwrap() {
                let subs = enumerate_subtrees(&t, None, None);
                let mut seen = std::collections::HashSet::new();
                for s in &subs {
                    assert!(t.is_connected_set(*s));
                    assert!(seen.insert(*s), "duplicate {s} in {t:?}");
                }
            }
        }
    }

    #[test]
    fn corpus_counts() {
        assert_eq!(all_labeled_trees(3).unwrap().count(), 3);
        assert_eq!(all_labeled_trees(4).unwrap().count(), 16);
        assert_eq!(all_labeled_trees(5).unwrap().count(), 125);
        assert!(all_labeled_trees(9).is_err());
    }

    #[test]
    fn corpus_trees_distinct() {
        for n in 2..=6 {
            let mut seen = std::collections::HashSet::new();
            for t in all_labeled_trees(n).unwrap() {
                assert!(seen.insert(t.to_edge_list()));
            }
            assert_eq!(seen.len() as u64, labeled_tree_count(n));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_labeled_trees(12, 5, 99);
        let b = sample_labeled_trees(12, 5, 99);
        assert_eq!(a.len(), 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn component_and_astral() {
        let t = Tree::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(
            t.component_away(2, VertexSet::singleton(1)),
            VertexSet::from_iter([2, 3, 4])
        );
        assert!(t.is_astral_over(2));
        assert!(!t.is_astral_over(0));
        assert!(path(6).is_path());
        assert!(path(6).is_astral_over(3));
    }
}
