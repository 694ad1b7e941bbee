//! Named simple patterns used by tests, the census, and the command line.

use crate::error::{input, Result};
use crate::graph::{pairs, Pattern, Vertex};

pub fn complete(r: usize) -> Pattern {
    let edges: Vec<_> = pairs(r).collect();
    Pattern::simple(r.max(1), &edges).expect("valid by construction")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Pattern {
    assert!(n >= 3, "cycles need at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Pattern::simple(n, &edges).expect("valid by construction")
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> Pattern {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Pattern::simple(n.max(1), &edges).expect("valid by construction")
}

/// Star with `leaves` leaves around vertex 0.
pub fn star(leaves: usize) -> Pattern {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Pattern::simple(leaves + 1, &edges).expect("valid by construction")
}

/// Complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize]) -> Pattern {
    let part_of: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    let n = part_of.len();
    let edges: Vec<_> = pairs(n).filter(|&(u, v)| part_of[u] != part_of[v]).collect();
    Pattern::simple(n.max(1), &edges).expect("valid by construction")
}

/// Vertex-disjoint union, vertices of `b` shifted after those of `a`.
pub fn disjoint_union(a: &Pattern, b: &Pattern) -> Pattern {
    let shift = a.m();
    let mut edges: Vec<(Vertex, Vertex, u32)> = a.edges();
    edges.extend(b.edges().into_iter().map(|(u, v, w)| (u + shift, v + shift, w)));
    Pattern::from_edges(a.m() + b.m(), &edges).expect("valid by construction")
}

/// Two vertex-disjoint triangles: 3-chromatic and not color-critical.
pub fn two_triangles() -> Pattern {
    disjoint_union(&complete(3), &complete(3))
}

/// Parses names such as `K4`, `C5`, `P3`, `S3`, `2K3`, `K2,2,2`.
pub fn by_name(name: &str) -> Result<Pattern> {
    let s = name.trim();
    let num = |t: &str| -> Result<usize> {
        t.parse::<usize>()
            .map_err(|_| crate::Error::Input(format!("bad pattern name {name:?}")))
    };
    if s == "2K3" {
        return Ok(two_triangles());
    }
    if let Some(rest) = s.strip_prefix('K') {
        if rest.contains(',') {
            let parts = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
            return Ok(complete_multipartite(&parts));
        }
        return Ok(complete(num(rest)?));
    }
    if let Some(rest) = s.strip_prefix('C') {
        let n = num(rest)?;
        if n < 3 {
            return input(format!("cycle {name:?} needs at least three vertices"));
        }
        return Ok(cycle(n));
    }
    if let Some(rest) = s.strip_prefix('P') {
        return Ok(path(num(rest)?));
    }
    if let Some(rest) = s.strip_prefix('S') {
        return Ok(star(num(rest)?));
    }
    input(format!("unknown pattern name {name:?}"))
}
