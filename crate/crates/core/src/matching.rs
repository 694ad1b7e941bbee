//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).

/// Matches left vertices to right vertices; `adj[l]` lists the right vertices
/// available to `l`. Returns `assignment[l] = Some(r)` for matched left
/// vertices.
pub fn max_matching(adj: &[Vec<usize>], right_size: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right_size];
    let mut seen = vec![false; right_size];
    for l in 0..adj.len() {
        seen.iter_mut().for_each(|s| *s = false);
        augment(l, adj, &mut owner, &mut seen);
    }
    let mut assignment = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = *o {
            assignment[l] = Some(r);
        }
    }
    assignment
}

fn augment(l: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if owner[r].is_none_or(|other| augment(other, adj, owner, seen)) {
            owner[r] = Some(l);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_and_deficient() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = max_matching(&adj, 3);
        assert!(m.iter().all(Option::is_some));
        assert_eq!(m[1], Some(0));

        // Hall violation: three left vertices share two right vertices.
        let adj = vec![vec![0, 1], vec![0, 1], vec![1, 0]];
        let m = max_matching(&adj, 2);
        assert_eq!(m.iter().filter(|x| x.is_some()).count(), 2);
    }
}
