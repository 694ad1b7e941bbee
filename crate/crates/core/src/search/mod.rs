//! Exact extremal numbers for small orders, goodness checks, the
//! color-critical census and the stability probe.

pub mod brute;
mod census;
mod engine;
mod goodness;
mod stability;

pub use census::{census, CensusReport, CensusRow, SampleReport, MAX_CENSUS_ORDER};
pub use goodness::{formula_branch, verify_goodness_formula, Branch, GoodnessReport, Verdict};
pub use stability::{stability_probe, StabilityReport, StabilityWitness};

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::canon::canonical_string;
use crate::constructions::{complete_family_edges, turan_family, turan_family_edges};
use crate::criticality::chromatic_number;
use crate::error::{capability, input, Error, Result};
use crate::graph::{pair_count, Multigraph, MultiplicityGraph, Pattern};
use crate::par::Parallelism;
use crate::rainbow::find_rainbow_nested;

use engine::{Mode, Problem};

pub const MAX_SEARCH_ORDER: usize = 7;
pub const MAX_SEARCH_K: u32 = 8;
pub const MAX_SEARCH_H: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Restrict to lexicographically maximal labelings.
    pub canonical: bool,
    /// Collect every extremal graph up to isomorphism.
    pub witnesses: bool,
    /// Prune vertices that cannot reach the degree an improving graph needs.
    pub min_degree: bool,
    pub parallelism: Parallelism,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            canonical: true,
            witnesses: true,
            min_degree: true,
            parallelism: Parallelism::available(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    /// Value equals `(h-1) C(n,2)`, the branch chosen for `k < k*`.
    MatchesCompleteFamily,
    /// Value equals `k t_{r-1}(n)`, the branch chosen for `k >= k*`.
    MatchesTuranFamily,
    Deviates,
    /// `k < h` or `chi(H) < 3`.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBounds {
    /// `min(h-1, k) C(n,2)`.
    pub complete_family: u64,
    /// `k t_{r-1}(n)` with `r = chi(H)`; absent when that graph is not free.
    pub turan_family: Option<u64>,
}

/// Equality ignores `nodes_explored` and `elapsed`, which depend on timing.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub k: u32,
    pub pattern_id: String,
    pub value: u64,
    /// Extremal graphs in canonical labeling, one per isomorphism class.
    pub witnesses: Vec<MultiplicityGraph>,
    pub lower_bounds: LowerBounds,
    pub agrees_with_goodness: Agreement,
    #[serde(skip)]
    pub nodes_explored: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SearchReport {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.k, &self.pattern_id, self.value, &self.witnesses, &self.lower_bounds, self.agrees_with_goodness)
            == (other.n, other.k, &other.pattern_id, other.value, &other.witnesses, &other.lower_bounds, other.agrees_with_goodness)
    }
}

impl Eq for SearchReport {}

/// Compact identifier: order followed by the canonical pair string.
pub fn pattern_id(h: &Pattern) -> String {
    let (w, _) = canonical_string(h.pair_values(), h.m());
    let body: Vec<String> = w.iter().map(u32::to_string).collect();
    format!("{}:{}", h.m(), body.join(","))
}

fn check_pattern(h: &Pattern) -> Result<()> {
    if h.h() == 0 {
        return input("pattern has no edges");
    }
    Ok(())
}

/// Verified free constructions on `n` vertices with budget `k`.
fn lower_bounds(h: &Pattern, n: usize, k: u32) -> Result<LowerBounds> {
    let complete = complete_family_edges(n, h.h().min(u64::from(k) + 1));
    let r = chromatic_number(h)?;
    let turan = if r >= 2 {
        let g = turan_family(n, k, r)?;
        if find_rainbow_nested(&g, h)?.is_none() {
            Some(turan_family_edges(n, k, r)?)
        } else {
            None
        }
    } else {
        None
    };
    Ok(LowerBounds {
        complete_family: complete,
        turan_family: turan,
    })
}

impl LowerBounds {
    fn max(&self) -> u64 {
        self.complete_family.max(self.turan_family.unwrap_or(0))
    }
}

fn trivially_free(h: &Pattern, m: usize, k: u32) -> bool {
    h.h() > u64::from(k) || h.m() > m
}

/// `ex_k(m, H)` for every `m <= n`, each computed with the smaller ones as
/// bounds. No capability limits are applied.
pub(crate) fn ex_values(h: &Pattern, n: usize, k: u32, par: Parallelism) -> Result<Vec<u64>> {
    check_pattern(h)?;
    let mut ex: Vec<u64> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let value = if m < 2 || trivially_free(h, m, k) {
            u64::from(k) * pair_count(m) as u64
        } else {
            let seed = lower_bounds(h, m, k)?.max().max(ex[m - 1]);
            let problem = Problem {
                n: m,
                k,
                h,
                canonical: true,
                min_degree: true,
                mode: Mode::Maximize { witnesses: false },
                ex: ex.clone(),
                seed,
            };
            engine::run(&problem, par).best
        };
        log::debug!("ex_{k}({m}) = {value}");
        ex.push(value);
    }
    Ok(ex)
}

/// All canonical free graphs on `n` vertices with at least `at_least` edges.
pub(crate) fn free_graphs_at_least(
    h: &Pattern,
    n: usize,
    k: u32,
    at_least: u64,
    par: Parallelism,
) -> Result<Vec<MultiplicityGraph>> {
    let ex = ex_values(h, n.saturating_sub(1), k, par)?;
    let problem = Problem {
        n,
        k,
        h,
        canonical: true,
        min_degree: true,
        mode: Mode::AtLeast(at_least),
        ex,
        seed: 0,
    };
    engine::run(&problem, par)
        .graphs
        .into_iter()
        .map(|w| MultiplicityGraph::from_pair_values(n, k, w))
        .collect()
}

pub fn solve_exact(h: &Pattern, n: usize, k: u32) -> Result<SearchReport> {
    solve_exact_with(h, n, k, &SearchOptions::default())
}

pub fn solve_exact_with(h: &Pattern, n: usize, k: u32, opts: &SearchOptions) -> Result<SearchReport> {
    check_pattern(h)?;
    if k == 0 {
        return input("k must be at least 1");
    }
    if n > MAX_SEARCH_ORDER || k > MAX_SEARCH_K || h.h() > MAX_SEARCH_H {
        return capability(format!(
            "exact search supports n <= {MAX_SEARCH_ORDER}, k <= {MAX_SEARCH_K}, h <= {MAX_SEARCH_H}"
        ));
    }
    let start = Instant::now();
    let bounds = lower_bounds(h, n, k)?;
    let ex = ex_values(h, n.saturating_sub(1), k, opts.parallelism)?;
    let seed = bounds.max().max(ex.last().copied().unwrap_or(0));
    let problem = Problem {
        n,
        k,
        h,
        canonical: opts.canonical,
        min_degree: opts.min_degree,
        mode: Mode::Maximize {
            witnesses: opts.witnesses,
        },
        ex,
        seed,
    };
    let out = engine::run(&problem, opts.parallelism);
    let value = out.best;
    log::info!(
        "n={n} k={k}: value {value}, {} nodes, {:?}",
        out.nodes,
        start.elapsed()
    );

    let mut canon: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    for w in out.graphs {
        canon.insert(if opts.canonical { w } else { canonical_string(&w, n).0 });
    }
    let mut witnesses = Vec::with_capacity(canon.len());
    for w in canon.into_iter().rev() {
        let g = MultiplicityGraph::from_pair_values(n, k, w)?;
        if g.edge_count() != value || find_rainbow_nested(&g, h)?.is_some() {
            return Err(Error::Internal("search produced an invalid witness".into()));
        }
        witnesses.push(g);
    }
    if value < bounds.max() {
        return Err(Error::Internal(format!(
            "value {value} is below a verified construction with {} edges",
            bounds.max()
        )));
    }
    let agrees = match formula_branch(h, n, k)? {
        None => Agreement::NotApplicable,
        Some((_, formula)) if formula != value => Agreement::Deviates,
        Some((Branch::CompleteFamily, _)) => Agreement::MatchesCompleteFamily,
        Some((Branch::TuranFamily, _)) => Agreement::MatchesTuranFamily,
    };
    Ok(SearchReport {
        n,
        k,
        pattern_id: pattern_id(h),
        value,
        witnesses,
        lower_bounds: bounds,
        agrees_with_goodness: agrees,
        nodes_explored: out.nodes,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;

    fn seq(canonical: bool, witnesses: bool) -> SearchOptions {
        SearchOptions {
            canonical,
            witnesses,
            min_degree: false,
            parallelism: Parallelism::sequential(),
        }
    }

    #[test]
    fn degenerate_regime() {
        let k3 = patterns::complete(3);
        let rep = solve_exact_with(&k3, 4, 2, &seq(true, true)).unwrap();
        assert_eq!(rep.value, 12);
        assert_eq!(rep.witnesses.len(), 1);
    }

    #[test]
    fn single_edge_forbids_everything() {
        let e = Pattern::simple(2, &[(0, 1)]).unwrap();
        for n in 2..=5 {
            assert_eq!(solve_exact_with(&e, n, 3, &seq(true, true)).unwrap().value, 0);
        }
    }

    #[test]
    fn triangle_small_values() {
        // Brute force over all multiplicity functions.
        let k3 = patterns::complete(3);
        for n in 3..=4 {
            for k in 3..=4u32 {
                let pairs = pair_count(n);
                let mut best = 0;
                let total = (k as u64 + 1).pow(pairs as u32);
                for code in 0..total {
                    let mut c = code;
                    let w: Vec<u32> = (0..pairs)
                        .map(|_| {
                            let x = (c % (k as u64 + 1)) as u32;
                            c /= k as u64 + 1;
                            x
                        })
                        .collect();
                    let s: u64 = w.iter().map(|&x| u64::from(x)).sum();
                    if s <= best {
                        continue;
                    }
                    let g = MultiplicityGraph::from_pair_values(n, k, w).unwrap();
                    if find_rainbow_nested(&g, &k3).unwrap().is_none() {
                        best = s;
                    }
                }
                for canonical in [true, false] {
                    for min_degree in [true, false] {
                        let mut o = seq(canonical, !min_degree);
                        o.min_degree = min_degree;
                        let rep = solve_exact_with(&k3, n, k, &o).unwrap();
                        assert_eq!(rep.value, best, "n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_independent_of_pruning_and_threads() {
        let k3 = patterns::complete(3);
        let a = solve_exact_with(&k3, 5, 3, &seq(true, true)).unwrap();
        let b = solve_exact_with(&k3, 5, 3, &seq(false, true)).unwrap();
        let mut par = seq(true, true);
        par.parallelism = Parallelism::threads(4);
        let c = solve_exact_with(&k3, 5, 3, &par).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.witnesses, b.witnesses);
        assert_eq!(a.witnesses, c.witnesses);
        assert!(a.value >= 20);
    }

    #[test]
    fn limits() {
        let k3 = patterns::complete(3);
        assert!(matches!(solve_exact(&k3, 8, 3), Err(Error::Capability(_))));
        assert!(matches!(solve_exact(&k3, 4, 9), Err(Error::Capability(_))));
        assert!(matches!(solve_exact(&k3, 4, 0), Err(Error::Input(_))));
    }
}
