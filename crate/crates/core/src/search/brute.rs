//! Exhaustive search over explicit colorings, used to cross-check the
//! multiplicity-function search on tiny instances.

use crate::error::{capability, Result};
use crate::graph::{pair_count, ColoredMultigraph, Pattern};
use crate::rainbow::find_rainbow;

pub const MAX_BRUTE_ORDER: usize = 4;
pub const MAX_BRUTE_K: u32 = 3;

/// Largest number of edges in a simple `k`-colored multigraph on `n`
/// vertices with no multicolored copy of `h`, over all color sets per pair.
pub fn explicit_extremal(h: &Pattern, n: usize, k: u32) -> Result<u64> {
    if n > MAX_BRUTE_ORDER || k > MAX_BRUTE_K {
        return capability(format!(
            "explicit search supports n <= {MAX_BRUTE_ORDER}, k <= {MAX_BRUTE_K}"
        ));
    }
    let mut subsets: Vec<u64> = (0..1u64 << k).collect();
    subsets.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut masks = vec![0u64; pair_count(n)];
    let mut best = 0;
    go(h, n, k, &subsets, &mut masks, 0, 0, &mut best);
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn go(h: &Pattern, n: usize, k: u32, subsets: &[u64], masks: &mut [u64], p: usize, total: u64, best: &mut u64) {
    if total + u64::from(k) * (masks.len() - p) as u64 <= *best {
        return;
    }
    if p == masks.len() {
        *best = total;
        return;
    }
    for &s in subsets {
        masks[p] = s;
        let g = ColoredMultigraph::from_masks(n, k, masks.to_vec());
        if find_rainbow(&g, h).is_none() {
            go(h, n, k, subsets, masks, p + 1, total + u64::from(s.count_ones()), best);
        }
    }
    masks[p] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;

    #[test]
    fn triangle() {
        let k3 = patterns::complete(3);
        assert_eq!(explicit_extremal(&k3, 3, 2).unwrap(), 6);
        assert_eq!(explicit_extremal(&k3, 3, 3).unwrap(), 6);
    }
}
