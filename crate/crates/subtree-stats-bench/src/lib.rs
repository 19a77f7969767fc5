//! Shared fixtures for the criterion benchmarks.

use subtree_stats::{families, Tree};

/// A 40-vertex caterpillar with one leg on every other spine vertex.
pub fn wide_caterpillar() -> Tree {
    let legs: Vec<usize> = (0..27).map(|i| usize::from(i % 2 == 1)).collect();
    families::caterpillar(&legs).expect("valid caterpillar")
}

/// The densest-vertex broom at 24 vertices.
pub fn dense_broom() -> Tree {
    families::broom(16, 8).expect("valid broom")
}

/// A 14-vertex double spider, the largest shape the density argmax accepts
/// by default.
pub fn mid_double_spider() -> Tree {
    families::double_spider(2, 2, 4).expect("valid double spider")
}
