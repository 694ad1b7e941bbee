use serde::Serialize;

use super::goodness::formula_branch;
use crate::constructions::{complete_family, turan_family};
use crate::criticality::chromatic_number;
use crate::error::{capability, input, Result};
use crate::graph::{pair_count, symmetric_difference, Multigraph, MultiplicityGraph, Pattern};
use crate::par::Parallelism;
use crate::rainbow::find_rainbow_nested;
use crate::rational::{self, ceil, int, Rational};

pub const MAX_PROBE_ORDER: usize = 5;
pub const MAX_PROBE_K: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityWitness {
    pub graph: MultiplicityGraph,
    pub edges: u64,
    pub distance_complete: u64,
    pub distance_turan: u64,
}

impl StabilityWitness {
    pub fn distance(&self) -> u64 {
        self.distance_complete.min(self.distance_turan)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub n: usize,
    pub k: u32,
    #[serde(with = "rational::as_fraction")]
    pub eta: Rational,
    /// Value of the formula branch.
    pub threshold: u64,
    /// Smallest edge count examined.
    pub floor: u64,
    /// Maximal free graphs with at least `floor` edges, in canonical form.
    pub witnesses: Vec<StabilityWitness>,
    /// Largest distance to the nearer family; `None` without witnesses.
    pub max_distance: Option<u64>,
}

fn is_maximal(g: &MultiplicityGraph, h: &Pattern) -> Result<bool> {
    let n = g.order();
    let mut w = g.pair_values().to_vec();
    for p in 0..pair_count(n) {
        if w[p] == g.k() {
            continue;
        }
        w[p] += 1;
        let bigger = MultiplicityGraph::from_pair_values(n, g.k(), w.clone())?;
        w[p] -= 1;
        if find_rainbow_nested(&bigger, h)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every maximal free graph with at least `threshold - eta n^2` edges and
/// its isomorphism distance to `(h-1) K_n` and to `k T_{r-1}(n)`.
pub fn stability_probe(
    h: &Pattern,
    n: usize,
    k: u32,
    eta: Rational,
    par: Parallelism,
) -> Result<StabilityReport> {
    if n > MAX_PROBE_ORDER || k > MAX_PROBE_K {
        return capability(format!(
            "stability probe supports n <= {MAX_PROBE_ORDER}, k <= {MAX_PROBE_K}"
        ));
    }
    if eta < int(0) {
        return input("eta must be nonnegative");
    }
    let r = chromatic_number(h)?;
    if h.m() != r {
        return input(format!("probe expects a reduced pattern on chi = {r} vertices"));
    }
    let Some((_, threshold)) = formula_branch(h, n, k)? else {
        return input("probe needs k >= h and chromatic number at least 3");
    };
    let floor = ceil(&(int(threshold as i64) - eta * int((n * n) as i64))).max(0) as u64;
    let complete = complete_family(n, h.h())?.with_k(k)?;
    let turan = turan_family(n, k, r)?;
    let mut witnesses = Vec::new();
    for g in super::free_graphs_at_least(h, n, k, floor, par)? {
        if !is_maximal(&g, h)? {
            continue;
        }
        witnesses.push(StabilityWitness {
            edges: g.edge_count(),
            distance_complete: symmetric_difference(&g, &complete, true)?,
            distance_turan: symmetric_difference(&g, &turan, true)?,
            graph: g,
        });
    }
    witnesses.sort_by(|a, b| {
        (b.edges, b.graph.pair_values()).cmp(&(a.edges, a.graph.pair_values()))
    });
    let max_distance = witnesses.iter().map(StabilityWitness::distance).max();
    Ok(StabilityReport {
        n,
        k,
        eta,
        threshold,
        floor,
        witnesses,
        max_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;
    use crate::rational::rat;

    #[test]
    fn exact_witnesses_at_zero_eta() {
        let k3 = patterns::complete(3);
        let rep = stability_probe(&k3, 4, 4, int(0), Parallelism::sequential()).unwrap();
        assert_eq!(rep.threshold, 16);
        for w in &rep.witnesses {
            assert!(w.edges >= 16);
        }
    }

    #[test]
    fn relabeling_does_not_change_report() {
        let k3 = patterns::complete(3);
        let rep = stability_probe(&k3, 4, 4, rat(1, 16), Parallelism::sequential()).unwrap();
        let rep2 = stability_probe(&k3.permuted(&[2, 0, 1]), 4, 4, rat(1, 16), Parallelism::sequential())
            .unwrap();
        assert_eq!(rep, rep2);
        assert_eq!(rep.floor, 15);
    }

    #[test]
    fn bounds() {
        let k3 = patterns::complete(3);
        assert!(stability_probe(&k3, 6, 4, int(0), Parallelism::sequential()).is_err());
        assert!(stability_probe(&patterns::cycle(5), 4, 6, int(0), Parallelism::sequential()).is_err());
        assert!(stability_probe(&k3, 4, 2, int(0), Parallelism::sequential()).is_err());
    }
}
