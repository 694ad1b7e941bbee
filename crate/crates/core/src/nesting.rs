//! Conversion of arbitrary simple k-colorings into nested ones.
//!
//! Replacing two incomparable colors `A`, `B` by `A ∩ B` and `A ∪ B` keeps the
//! multiplicity of every pair, and the sum of squared color sizes strictly
//! grows, so repeated passes reach a chain.

use crate::graph::{pair_count, ColoredMultigraph, Multigraph, MultiplicityGraph};

/// Nested coloring with the same multiplicity function as `g`.
///
/// Pairs of colors are processed in ascending `(i, j)` order, pass after pass,
/// until no incomparable pair remains. The result lists colors by decreasing
/// size, so empty colors come last.
pub fn nest(g: &ColoredMultigraph) -> ColoredMultigraph {
    let k = g.k() as usize;
    let n = g.order();
    // Color classes as bit vectors over pair indices.
    let words = pair_count(n).div_ceil(64).max(1);
    let mut classes: Vec<Vec<u64>> = vec![vec![0; words]; k];
    for (p, &mask) in g.masks().iter().enumerate() {
        for (c, class) in classes.iter_mut().enumerate() {
            if mask & (1 << c) != 0 {
                class[p / 64] |= 1 << (p % 64);
            }
        }
    }
    let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (&classes[i], &classes[j]);
                if subset(a, b) || subset(b, a) {
                    continue;
                }
                let meet: Vec<u64> = a.iter().zip(b).map(|(x, y)| x & y).collect();
                let join: Vec<u64> = a.iter().zip(b).map(|(x, y)| x | y).collect();
                classes[i] = meet;
                classes[j] = join;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let size = |c: &Vec<u64>| c.iter().map(|w| w.count_ones()).sum::<u32>();
    // Stable sort: equal-size colors keep their relative order.
    classes.sort_by_key(|c| std::cmp::Reverse(size(c)));
    let mut masks = vec![0u64; pair_count(n)];
    for (c, class) in classes.iter().enumerate() {
        for (p, m) in masks.iter_mut().enumerate() {
            if class[p / 64] & (1 << (p % 64)) != 0 {
                *m |= 1 << c;
            }
        }
    }
    ColoredMultigraph::from_masks(n, g.k(), masks)
}

/// Canonical multiplicity form; nesting never changes multiplicities, so this
/// is a direct count.
pub fn to_multiplicity(g: &ColoredMultigraph) -> MultiplicityGraph {
    let n = g.order();
    let w = g.masks().iter().map(|m| m.count_ones()).collect();
    MultiplicityGraph::from_pair_values(n, g.k(), w).expect("counts never exceed k")
}

/// Nested coloring in which a pair of multiplicity `s` carries colors `1..=s`.
pub fn from_multiplicity(g: &MultiplicityGraph) -> ColoredMultigraph {
    assert!(
        g.k() <= crate::graph::MAX_COLORS,
        "explicit colorings carry at most {} colors",
        crate::graph::MAX_COLORS
    );
    let masks = g
        .pair_values()
        .iter()
        .map(|&s| if s == 0 { 0 } else { u64::MAX >> (64 - s) })
        .collect();
    ColoredMultigraph::from_masks(g.order(), g.k(), masks)
}
