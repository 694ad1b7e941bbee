//! H-friendly skeletons and the explicit embedding schedules for 4-vertex
//! patterns and for patterns in `F_r`.

mod four;
mod fr;

pub use four::{embed_4cc, hypothesis_violations as four_cc_hypothesis_violations, Embed4cc, FourCcCase};
pub use fr::{b_ji, f1, f2, fr_embedding_order, m1, m2, FrEmbedding};

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::criticality;
use crate::error::{capability, input, Result};
use crate::graph::{Multigraph, MultiplicityGraph, Pattern, Vertex};
use crate::par::{self, Parallelism};
use crate::rainbow::{nested_certificate, EmbedPlan};

/// Largest part size handled by the exhaustive attachment check.
pub const MAX_PART_SIZE: usize = 5;
/// Largest color budget handled by the exhaustive attachment check.
pub const MAX_FRIENDLY_K: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FriendlyReport {
    pub friendly: bool,
    /// Degree every attachment must reach.
    pub threshold: u64,
    /// True when no admissible attachment exists at all.
    pub vacuous: bool,
    /// Lexicographically first attachment (indexed by host vertex) that
    /// leaves the extension free of a multicolored copy.
    pub witness: Option<Vec<u32>>,
}

/// `h K_{a,...,a}` with `parts` parts; vertex `i` lies in part `i / a`.
pub fn uniform_host(parts: usize, a: usize, mult: u32, k: u32) -> Result<(MultiplicityGraph, Vec<Vec<Vertex>>)> {
    let g = MultiplicityGraph::from_fn(parts * a, k, |u, v| if u / a == v / a { 0 } else { mult })?;
    let partition = (0..parts).map(|p| (p * a..(p + 1) * a).collect()).collect();
    Ok((g, partition))
}

fn part_of(n: usize, parts: &[Vec<Vertex>]) -> Result<(Vec<usize>, usize)> {
    let a = parts.first().map_or(0, Vec::len);
    if a == 0 || parts.iter().any(|p| p.len() != a) {
        return input("parts must be nonempty and of equal size");
    }
    if parts.len() * a != n {
        return input(format!("parts cover {} vertices, host has {n}", parts.len() * a));
    }
    let mut owner = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            if v >= n || owner[v] != usize::MAX {
                return input(format!("vertex {v} is out of range or listed twice"));
            }
            owner[v] = i;
        }
    }
    Ok((owner, a))
}

/// Vertices with identical rows inside one part; these can be permuted
/// freely, so attachments are only tried in nondecreasing order on them.
fn twin_predecessor(k_host: &MultiplicityGraph, owner: &[usize]) -> Vec<Option<Vertex>> {
    let n = k_host.order();
    let twins = |u: Vertex, v: Vertex| {
        owner[u] == owner[v]
            && (0..n)
                .filter(|&x| x != u && x != v)
                .all(|x| k_host.multiplicity(u, x) == k_host.multiplicity(v, x))
    };
    (0..n).map(|v| (0..v).rev().find(|&u| twins(u, v))).collect()
}

/// Checks every attachment of a new vertex to `k_host` with degree at least
/// `max{(r-2)ak, (r-1)a(h-1)}` and a neighbor in every part.
///
/// Multiplicities only help, so attachments of minimum total suffice.
pub fn is_h_friendly(
    k_host: &MultiplicityGraph,
    parts: &[Vec<Vertex>],
    h: &Pattern,
    k: u32,
    par: Parallelism,
) -> Result<FriendlyReport> {
    let n = k_host.order();
    let (owner, a) = part_of(n, parts)?;
    let r = parts.len() + 1;
    if let Some((u, v, _)) = k_host.edges().into_iter().find(|&(u, v, _)| owner[u] == owner[v]) {
        return input(format!("pair ({u},{v}) lies inside a part"));
    }
    if k_host.max_multiplicity() > k {
        return input("host multiplicity exceeds k");
    }
    if a > MAX_PART_SIZE || k > MAX_FRIENDLY_K {
        return capability(format!(
            "friendliness check supports parts of size <= {MAX_PART_SIZE} and k <= {MAX_FRIENDLY_K}"
        ));
    }
    if !criticality::is_r_color_critical(h, r)? {
        return input(format!("pattern must be {r}-color-critical for {} parts", parts.len()));
    }
    let threshold = ((r as u64 - 2) * a as u64 * u64::from(k))
        .max((r as u64 - 1) * a as u64 * h.h().saturating_sub(1));
    let top = threshold.max(r as u64 - 1);
    let mut report = FriendlyReport {
        friendly: true,
        threshold,
        vacuous: false,
        witness: None,
    };
    if threshold > u64::from(k) * n as u64 {
        report.vacuous = true;
        return Ok(report);
    }
    // A copy inside the host settles every attachment at once.
    if crate::rainbow::find_rainbow_nested(k_host, h)?.is_some() {
        return Ok(report);
    }

    let ctx = Ctx {
        k_host,
        owner: &owner,
        parts: parts.len(),
        twin: twin_predecessor(k_host, &owner),
        plans: (0..h.m())
            .filter(|&x| h.degree(x) > 0)
            .map(|x| EmbedPlan::new(h, &[x]))
            .collect(),
        k,
        low: threshold,
        high: top,
    };

    // Split on the first two entries; tasks are in lexicographic order so
    // the first failing task holds the earliest witness.
    let split = n.min(2);
    let mut prefixes = vec![Vec::new()];
    for _ in 0..split {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=k).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .filter(|q| ctx.prefix_ok(q))
            .collect();
    }
    let first_fail = AtomicUsize::new(usize::MAX);
    let tasks: Vec<(usize, Vec<u32>)> = prefixes.into_iter().enumerate().collect();
    let results = par::map(par, tasks, |(idx, prefix)| {
        if first_fail.load(Ordering::Relaxed) < idx {
            return None;
        }
        let found = ctx.search(prefix, &|| first_fail.load(Ordering::Relaxed) < idx);
        if found.is_some() {
            first_fail.fetch_min(idx, Ordering::Relaxed);
        }
        found
    });
    report.witness = results.into_iter().flatten().next();
    report.friendly = report.witness.is_none();
    Ok(report)
}

struct Ctx<'a> {
    k_host: &'a MultiplicityGraph,
    owner: &'a [usize],
    parts: usize,
    twin: Vec<Option<Vertex>>,
    plans: Vec<EmbedPlan>,
    k: u32,
    low: u64,
    high: u64,
}

impl Ctx<'_> {
    fn prefix_ok(&self, x: &[u32]) -> bool {
        let i = x.len() - 1;
        if let Some(t) = self.twin[i] {
            if x[t] > x[i] {
                return false;
            }
        }
        let sum: u64 = x.iter().map(|&v| u64::from(v)).sum();
        let rest = (self.k_host.order() - x.len()) as u64 * u64::from(self.k);
        sum <= self.high && sum + rest >= self.low
    }

    /// Depth-first over the remaining entries; returns the first attachment
    /// that is admissible and leaves the extension free.
    fn search(&self, prefix: Vec<u32>, abandon: &dyn Fn() -> bool) -> Option<Vec<u32>> {
        let n = self.k_host.order();
        let mut x = prefix;
        let mut ext = extend(self.k_host, self.k);
        self.go(&mut x, n, &mut ext, abandon)
    }

    fn go(
        &self,
        x: &mut Vec<u32>,
        n: usize,
        ext: &mut MultiplicityGraph,
        abandon: &dyn Fn() -> bool,
    ) -> Option<Vec<u32>> {
        if x.len() == n {
            let sum: u64 = x.iter().map(|&v| u64::from(v)).sum();
            if sum < self.low || sum > self.high {
                return None;
            }
            let mut touched = vec![false; self.parts];
            for (v, &w) in x.iter().enumerate() {
                if w > 0 {
                    touched[self.owner[v]] = true;
                }
            }
            if touched.contains(&false) {
                return None;
            }
            if abandon() {
                return None;
            }
            for (v, &w) in x.iter().enumerate() {
                ext.set(v, n, w).expect("entries bounded by k");
            }
            let hit = self
                .plans
                .iter()
                .any(|plan| nested_certificate(&*ext, plan, &[n]).is_some());
            return (!hit).then(|| x.clone());
        }
        for w in 0..=self.k {
            x.push(w);
            if self.prefix_ok(x) {
                if let Some(found) = self.go(x, n, ext, abandon) {
                    return Some(found);
                }
            }
            x.pop();
        }
        None
    }
}

/// Copy of `g` with one extra isolated vertex.
fn extend(g: &MultiplicityGraph, k: u32) -> MultiplicityGraph {
    let n = g.order();
    MultiplicityGraph::from_fn(n + 1, k, |u, v| if v == n { 0 } else { g.multiplicity(u, v) })
        .expect("copied multiplicities are bounded")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;

    #[test]
    fn complete_bipartite_host_is_friendly_for_c5() {
        let c5 = patterns::cycle(5);
        let (g, parts) = uniform_host(2, 3, 5, 6).unwrap();
        let report = is_h_friendly(&g, &parts, &c5, 6, Parallelism::sequential()).unwrap();
        assert!(report.friendly, "{report:?}");
        assert_eq!(report.threshold, 24);
    }

    #[test]
    fn disconnected_parts_fail_with_witness() {
        let k3 = patterns::complete(3);
        let (mut g, parts) = uniform_host(2, 2, 3, 4).unwrap();
        for u in 0..2 {
            for v in 2..4 {
                g.set(u, v, 0).unwrap();
            }
        }
        let report = is_h_friendly(&g, &parts, &k3, 4, Parallelism::sequential()).unwrap();
        assert!(!report.friendly);
        let w = report.witness.unwrap();
        assert_eq!(w.iter().map(|&x| u64::from(x)).sum::<u64>(), report.threshold);
        let seq = is_h_friendly(&g, &parts, &k3, 4, Parallelism::threads(4)).unwrap();
        assert_eq!(seq.witness, Some(w));
    }

    #[test]
    fn bad_inputs() {
        let k3 = patterns::complete(3);
        let (g, parts) = uniform_host(2, 2, 3, 4).unwrap();
        let uneven = vec![vec![0], vec![1, 2, 3]];
        assert!(matches!(
            is_h_friendly(&g, &uneven, &k3, 4, Parallelism::sequential()),
            Err(crate::Error::Input(_))
        ));
        let (big, big_parts) = uniform_host(2, 6, 3, 4).unwrap();
        assert!(matches!(
            is_h_friendly(&big, &big_parts, &k3, 4, Parallelism::sequential()),
            Err(crate::Error::Capability(_))
        ));
        let mut inside = g.clone();
        inside.set(0, 1, 1).unwrap();
        assert!(is_h_friendly(&inside, &parts, &k3, 4, Parallelism::sequential()).is_err());
    }
}
