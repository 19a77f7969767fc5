//! Deterministic generators for the standard tree families.
//!
//! Labelings are frozen so named vertices of the worked examples map to
//! fixed ids:
//!
//! - `path n`: vertices `0..n-1` in path order.
//! - `star n`: centre `0`, leaves `1..n-1` (the star `K_{1,n-1}`).
//! - `two-stars l m`: centres `0` and `1` joined by a path of `m` extra
//!   vertices `2..m+1` (in path order; `m = 0` makes the centres adjacent),
//!   then `l` leaves on centre `0` (`m+2..m+l+1`) and `l` leaves on centre
//!   `1` (`m+l+2..m+2l+1`).
//! - `caterpillar l0,l1,...`: spine `0..s-1` in path order, then the legs of
//!   spine vertex `i` get the next `l_i` consecutive ids.
//! - `double-spider l len m`: like `two-stars` but each of the `l` legs per
//!   centre is a path of `len` vertices; leg ids are consecutive outward.
//! - `broom h b`: handle path `0..h-1`, plus `b` bristle leaves
//!   `h..h+b-1` on vertex `h-1`.

use crate::tree::{Tree, TreeError};

pub fn path(n: usize) -> Result<Tree, TreeError> {
    if n < 1 {
        return Err(invalid("path", "length must be at least 1"));
    }
    Tree::from_edges(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
}

pub fn star(n: usize) -> Result<Tree, TreeError> {
    if n < 1 {
        return Err(invalid("star", "order must be at least 1"));
    }
    Tree::from_edges(n, (1..n).map(|v| (0, v)))
}

/// Two stars with `leaves` leaves each, centres joined by a path of
/// `middle` extra vertices.
pub fn two_stars(leaves: usize, middle: usize) -> Result<Tree, TreeError> {
    if leaves < 1 {
        return Err(invalid("two-stars", "need at least one leaf per centre"));
    }
    double_spider(leaves, 1, middle)
}

/// Two spiders with `legs` legs of `leg_len` vertices each, centres joined
/// by a path of `middle` extra vertices.
pub fn double_spider(legs: usize, leg_len: usize, middle: usize) -> Result<Tree, TreeError> {
    if legs < 1 || leg_len < 1 {
        return Err(invalid(
            "double-spider",
            "need at least one leg of length at least 1 per centre",
        ));
    }
    let n = 2 + middle + 2 * legs * leg_len;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if middle == 0 {
        edges.push((0, 1));
    } else {
        edges.push((0, 2));
        for i in 2..middle + 1 {
            edges.push((i, i + 1));
        }
        edges.push((middle + 1, 1));
    }
    let mut next = middle + 2;
    for centre in [0usize, 1] {
        for _ in 0..legs {
            let mut prev = centre;
            for _ in 0..leg_len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    Tree::from_edges(n, edges)
}

/// Caterpillar: a spine with `legs[i]` pendant leaves on spine vertex `i`.
pub fn caterpillar(legs: &[usize]) -> Result<Tree, TreeError> {
    let s = legs.len();
    if s < 1 {
        return Err(invalid("caterpillar", "spine must be nonempty"));
    }
    let n = s + legs.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..s - 1 {
        edges.push((i, i + 1));
    }
    let mut next = s;
    for (i, &count) in legs.iter().enumerate() {
        for _ in 0..count {
            edges.push((i, next));
            next += 1;
        }
    }
    Tree::from_edges(n, edges)
}

/// Broom: a handle path of `handle` vertices with `bristles` leaves on the
/// far end.
pub fn broom(handle: usize, bristles: usize) -> Result<Tree, TreeError> {
    if handle < 1 {
        return Err(invalid("broom", "handle must have at least one vertex"));
    }
    let n = handle + bristles;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..handle - 1 {
        edges.push((i, i + 1));
    }
    for j in 0..bristles {
        edges.push((handle - 1, handle + j));
    }
    Tree::from_edges(n, edges)
}

/// Named vertex ids of a `two_stars(leaves, middle)` /
/// `double_spider(legs, leg_len, middle)` instance.
#[derive(Debug, Clone)]
pub struct TwoStarsLayout {
    pub left_center: usize,
    pub right_center: usize,
    /// Extra path vertices between the centres, ordered from the left
    /// centre to the right centre.
    pub middle: Vec<usize>,
    /// First vertex of each left leg (for `two-stars`, the leaves).
    pub left_leaves: Vec<usize>,
    pub right_leaves: Vec<usize>,
}

impl TwoStarsLayout {
    pub fn new(legs: usize, leg_len: usize, middle: usize) -> Self {
        let first_leg = middle + 2;
        TwoStarsLayout {
            left_center: 0,
            right_center: 1,
            middle: (2..middle + 2).collect(),
            left_leaves: (0..legs).map(|i| first_leg + i * leg_len).collect(),
            right_leaves: (0..legs)
                .map(|i| first_leg + (legs + i) * leg_len)
                .collect(),
        }
    }

    /// The centre-to-centre path including both centres, in order. Position
    /// `p` (1-based) of this path has `p` path vertices on its left side.
    pub fn spine(&self) -> Vec<usize> {
        let mut out = vec![self.left_center];
        out.extend(&self.middle);
        out.push(self.right_center);
        out
    }

    /// The two adjacent vertices in the middle of the spine (defined when
    /// the spine length is even).
    pub fn middle_pair(&self) -> Option<(usize, usize)> {
        let spine = self.spine();
        if spine.len() % 2 != 0 {
            return None;
        }
        let h = spine.len() / 2;
        Some((spine[h - 1], spine[h]))
    }
}

/// Builds a family by name with positional integer parameters, as exposed by
/// the command line (`path`, `star`, `two-stars`, `caterpillar`,
/// `double-spider`, `broom`).
pub fn generate(family: &str, params: &[usize]) -> Result<Tree, TreeError> {
    match family {
        "path" => match params {
            [n] => path(*n),
            _ => Err(arity(family, "n")),
        },
        "star" => match params {
            [n] => star(*n),
            _ => Err(arity(family, "n")),
        },
        "two-stars" => match params {
            [l, m] => two_stars(*l, *m),
            _ => Err(arity(family, "leaves middle")),
        },
        "double-spider" => match params {
            [l, len, m] => double_spider(*l, *len, *m),
            _ => Err(arity(family, "legs leg-len middle")),
        },
        "caterpillar" => {
            if params.is_empty() {
                Err(arity(family, "legs per spine vertex (at least one)"))
            } else {
                caterpillar(params)
            }
        }
        "broom" => match params {
            [h, b] => broom(*h, *b),
            _ => Err(arity(family, "handle bristles")),
        },
        other => Err(TreeError::UnknownFamily(other.to_string())),
    }
}

pub const FAMILY_NAMES: &[&str] = &[
    "path",
    "star",
    "two-stars",
    "caterpillar",
    "double-spider",
    "broom",
];

fn invalid(family: &str, reason: &str) -> TreeError {
    TreeError::InvalidParams {
        family: family.to_string(),
        reason: reason.to_string(),
    }
}

fn arity(family: &str, expected: &str) -> TreeError {
    TreeError::InvalidParams {
        family: family.to_string(),
        reason: format!("expected parameters: {expected}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_star() {
        assert_eq!(generate("path", &[4]).unwrap().edges(), &[(0, 1), (1, 2), (2, 3)]);
        let s = generate("star", &[5]).unwrap();
        assert_eq!(s.degree(0), 4);
        assert!((1..5).all(|v| s.is_leaf(v)));
    }

    #[test]
    fn two_stars_adjacent_centres() {
        let t = two_stars(2, 0).unwrap();
        assert_eq!(t.n(), 6);
        assert_eq!(t.edges(), &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
    }

    #[test]
    fn two_stars_with_middle_path() {
        let t = two_stars(2, 2).unwrap();
        assert_eq!(t.n(), 8);
        let lay = TwoStarsLayout::new(2, 1, 2);
        assert_eq!(lay.spine(), vec![0, 2, 3, 1]);
        assert_eq!(lay.middle_pair(), Some((2, 3)));
        assert_eq!(lay.left_leaves, vec![4, 5]);
        assert_eq!(lay.right_leaves, vec![6, 7]);
        for &l in &lay.left_leaves {
            assert!(t.has_edge(0, l));
        }
        for &r in &lay.right_leaves {
            assert!(t.has_edge(1, r));
        }
    }

    #[test]
    fn double_spider_with_longer_legs() {
        // two centres, two legs of two vertices each side, two middle
        let t = double_spider(2, 2, 2).unwrap();
        assert_eq!(t.n(), 12);
        assert_eq!(t.degree(0), 3);
        assert_eq!(t.degree(1), 3);
        let lay = TwoStarsLayout::new(2, 2, 2);
        assert_eq!(lay.left_leaves, vec![4, 6]);
        assert_eq!(lay.right_leaves, vec![8, 10]);
        assert!(t.has_edge(0, 4) && t.has_edge(4, 5));
        assert!(t.has_edge(0, 6) && t.has_edge(6, 7));
        assert!(t.has_edge(1, 8) && t.has_edge(8, 9));
    }

    #[test]
    fn caterpillar_shape() {
        let t = caterpillar(&[0, 2, 0]).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.degree(1), 4);
    }

    #[test]
    fn broom_shape() {
        let t = broom(3, 2).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.edges(), &[(0, 1), (1, 2), (2, 3), (2, 4)]);
    }

    #[test]
    fn unknown_family_and_bad_params() {
        assert!(matches!(
            generate("wheel", &[4]),
            Err(TreeError::UnknownFamily(_))
        ));
        assert!(matches!(
            generate("path", &[]),
            Err(TreeError::InvalidParams { .. })
        ));
    }
}
