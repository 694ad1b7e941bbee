//! Canonical labeling of small multigraphs.
//!
//! The canonical representative of an isomorphism class is the labeling whose
//! colex pair string is lexicographically largest. Because the pairs inside
//! the first `t` vertices form a prefix of that string, every induced prefix
//! of a canonical graph is itself canonical; the search prunes on exactly this
//! property.

use crate::graph::{pair_count, pair_index, MultiplicityGraph, Pattern, Vertex};

/// Largest order accepted by the canonicalizer.
pub const MAX_CANON_ORDER: usize = 10;

/// Whether the labeled string `w` (colex pairs over `n` vertices) is the
/// lexicographic maximum over all relabelings.
pub fn is_canonical<T: Copy + Ord>(w: &[T], n: usize) -> bool {
    debug_assert!(w.len() >= pair_count(n));
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    !exceeds(w, n, &mut perm, &mut used)
}

// True when some relabeling extending `perm` produces a larger string.
fn exceeds<T: Copy + Ord>(w: &[T], n: usize, perm: &mut Vec<Vertex>, used: &mut [bool]) -> bool {
    let j = perm.len();
    if j == n {
        return false;
    }
    for img in 0..n {
        if used[img] {
            continue;
        }
        // Compare the new column (pairs (i, j), i < j) against the original.
        let mut order = std::cmp::Ordering::Equal;
        for (i, &pi) in perm.iter().enumerate() {
            let got = w[pair_index(pi, img)];
            let want = w[pair_index(i, j)];
            order = got.cmp(&want);
            if order != std::cmp::Ordering::Equal {
                break;
            }
        }
        match order {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => continue,
            std::cmp::Ordering::Equal => {
                used[img] = true;
                perm.push(img);
                let found = exceeds(w, n, perm, used);
                perm.pop();
                used[img] = false;
                if found {
                    return true;
                }
            }
        }
    }
    false
}

/// Number of relabelings that leave `w` unchanged.
pub fn automorphism_count<T: Copy + Eq>(w: &[T], n: usize) -> u64 {
    fn go<T: Copy + Eq>(w: &[T], n: usize, perm: &mut Vec<Vertex>, used: &mut [bool]) -> u64 {
        let j = perm.len();
        if j == n {
            return 1;
        }
        let mut total = 0;
        for img in 0..n {
            if used[img] {
                continue;
            }
            if perm
                .iter()
                .enumerate()
                .all(|(i, &pi)| w[pair_index(pi, img)] == w[pair_index(i, j)])
            {
                used[img] = true;
                perm.push(img);
                total += go(w, n, perm, used);
                perm.pop();
                used[img] = false;
            }
        }
        total
    }
    go(w, n, &mut Vec::with_capacity(n), &mut vec![false; n])
}

/// Lexicographically largest relabeled string and one permutation producing it
/// (`perm[new] = old`).
pub fn canonical_string<T: Copy + Ord + Default>(w: &[T], n: usize) -> (Vec<T>, Vec<Vertex>) {
    let p = pair_count(n);
    let mut best: Vec<T> = w[..p].to_vec();
    let mut best_perm: Vec<Vertex> = (0..n).collect();
    let mut cur = vec![T::default(); p];
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search_max(w, n, &mut cur, &mut perm, &mut used, &mut best, &mut best_perm);
    (best, best_perm)
}

fn search_max<T: Copy + Ord>(
    w: &[T],
    n: usize,
    cur: &mut [T],
    perm: &mut Vec<Vertex>,
    used: &mut [bool],
    best: &mut Vec<T>,
    best_perm: &mut Vec<Vertex>,
) {
    let j = perm.len();
    if j == n {
        if cur[..] > best[..] {
            best.copy_from_slice(cur);
            best_perm.clone_from(perm);
        }
        return;
    }
    let prefix = pair_count(j + 1);
    for img in 0..n {
        if used[img] {
            continue;
        }
        for (i, &pi) in perm.iter().enumerate() {
            cur[pair_index(i, j)] = w[pair_index(pi, img)];
        }
        // The incumbent only grows, so a prefix already behind it is dead.
        if cur[..prefix] < best[..prefix] {
            continue;
        }
        used[img] = true;
        perm.push(img);
        search_max(w, n, cur, perm, used, best, best_perm);
        perm.pop();
        used[img] = false;
    }
}

/// Canonical representative of the host's isomorphism class.
pub fn canonical_form(g: &MultiplicityGraph) -> MultiplicityGraph {
    let n = crate::graph::Multigraph::order(g);
    assert!(n <= MAX_CANON_ORDER, "canonical form limited to n <= {MAX_CANON_ORDER}");
    let (s, _) = canonical_string(g.pair_values(), n);
    MultiplicityGraph::from_pair_values(n, g.k(), s).expect("relabeling keeps multiplicities")
}

pub fn canonical_pattern(h: &Pattern) -> Pattern {
    let m = h.m();
    assert!(m <= MAX_CANON_ORDER, "canonical form limited to n <= {MAX_CANON_ORDER}");
    let (s, _) = canonical_string(h.pair_values(), m);
    Pattern::from_pair_values(m, s).expect("relabeling keeps multiplicities")
}

/// Every permutation of `0..n` in lexicographic order (used by brute-force
/// oracles and small automorphism scans).
pub fn permutations(n: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur: Vec<Vertex> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next_permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pairs;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_max(w: &[u32], n: usize) -> Vec<u32> {
        permutations(n)
            .into_iter()
            .map(|p| {
                pairs(n)
                    .map(|(i, j)| w[pair_index(p[i], p[j])])
                    .collect::<Vec<_>>()
            })
            .max()
            .unwrap()
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn canonical_string_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6);
            let w: Vec<u32> = (0..pair_count(n)).map(|_| rng.gen_range(0..3)).collect();
            let want = brute_max(&w, n);
            let (got, perm) = canonical_string(&w, n);
            assert_eq!(got, want);
            let rebuilt: Vec<u32> = pairs(n).map(|(i, j)| w[pair_index(perm[i], perm[j])]).collect();
            assert_eq!(rebuilt, want);
            assert_eq!(is_canonical(&w, n), w == want);
            assert!(is_canonical(&got, n));
            let fixed = permutations(n)
                .iter()
                .filter(|p| pairs(n).all(|(i, j)| w[pair_index(p[i], p[j])] == w[pair_index(i, j)]))
                .count() as u64;
            assert_eq!(automorphism_count(&w, n), fixed);
        }
    }

    #[test]
    fn prefixes_of_canonical_strings_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(2..=6);
            let w: Vec<u32> = (0..pair_count(n)).map(|_| rng.gen_range(0..4)).collect();
            let (c, _) = canonical_string(&w, n);
            for t in 1..=n {
                assert!(is_canonical(&c[..pair_count(t)], t));
            }
        }
    }
}
