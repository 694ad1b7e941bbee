//! Census of color-critical graphs.
//!
//! Simple graphs are generated orderly: pairs are filled in colex order and a
//! vertex is kept only if the graph on the vertices so far is canonical.
//! Labeled counts follow from the automorphism group orders.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{automorphism_count, is_canonical};
use crate::criticality::{chromatic_number, critical_edges, reduce_minmax, MAX_REDUCTION_ORDER};
use crate::error::{capability, input, Result};
use crate::graph::{pair_at, pair_count, Pattern, Vertex};
use crate::par::{self, Parallelism};

/// Largest order enumerated exhaustively.
pub const MAX_CENSUS_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Count {
    pub labeled: u64,
    pub unlabeled: u64,
}

impl Count {
    fn add(&mut self, labeled: u64) {
        self.labeled += labeled;
        self.unlabeled += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub s: usize,
    pub graphs: Count,
    pub critical: Count,
    #[serde(rename = "in_Fr")]
    pub in_fr: Count,
    pub unique_critical_edge: Count,
    pub unique_partition: Count,
    /// Critical graphs whose `H_c` is again critical with `e(H_c) = e(H)`.
    pub reduction_consistent: Count,
    /// Labeled fraction of critical graphs lying in `F_r`.
    pub fr_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub s: usize,
    pub parts: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub critical: u64,
    #[serde(rename = "in_Fr")]
    pub in_fr: u64,
    pub unique_critical_edge: u64,
    pub unique_partition: u64,
    pub fr_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub r: usize,
    pub rows: Vec<CensusRow>,
    pub sampled: Option<SampleReport>,
    /// Whether the `F_r` fraction never decreases along the rows.
    pub fraction_nondecreasing: bool,
}

#[derive(Debug, Default, Clone, Copy)]
struct Class {
    critical: bool,
    in_fr: bool,
    unique_edge: bool,
    unique_partition: bool,
    reduction_ok: bool,
}

/// Number of partitions of the vertex set into at most `colors` independent
/// sets, stopping once `cap` are found.
fn partition_count(adj: &[u32], colors: usize, cap: usize) -> usize {
    fn go(v: usize, adj: &[u32], colors: usize, used: usize, class: &mut [usize], found: &mut usize, cap: usize) {
        if *found >= cap {
            return;
        }
        if v == adj.len() {
            *found += 1;
            return;
        }
        for c in 0..(used + 1).min(colors) {
            if (0..v).any(|u| class[u] == c && adj[v] & (1 << u) != 0) {
                continue;
            }
            class[v] = c;
            go(v + 1, adj, colors, used.max(c + 1), class, found, cap);
        }
    }
    let mut found = 0;
    go(0, adj, colors, 0, &mut vec![0; adj.len()], &mut found, cap);
    found
}

fn classify(h: &Pattern, r: usize) -> Result<Class> {
    let mut class = Class::default();
    if chromatic_number(h)? != r {
        return Ok(class);
    }
    let crit = critical_edges(h)?;
    if crit.is_empty() {
        return Ok(class);
    }
    class.critical = true;
    class.unique_edge = crit.len() == 1;
    class.unique_partition = crit.iter().any(|&(u, v)| {
        let minus = h.minus_unit(u, v).expect("critical edge is present");
        partition_count(&minus.adjacency_masks(), r - 1, 2) == 1
    });
    let rep = reduce_minmax(h)?;
    class.in_fr = rep.in_fr == Some(true);
    class.reduction_ok = match &rep.reduced {
        Some(hc) => hc.h() == h.h() && crate::criticality::is_r_color_critical(hc, r)?,
        None => false,
    };
    Ok(class)
}

/// Canonical simple graphs on `1..=s` vertices, grouped by order.
fn unlabeled_graphs(s: usize) -> Vec<Vec<Vec<u8>>> {
    fn go(w: &mut Vec<u8>, p: usize, s: usize, out: &mut [Vec<Vec<u8>>]) {
        if p == pair_count(s) {
            return;
        }
        let (u, v) = pair_at(p);
        for bit in [1u8, 0] {
            w.push(bit);
            let done = u + 1 == v;
            if !done || is_canonical(w, v + 1) {
                if done {
                    out[v + 1].push(w.clone());
                }
                go(w, p + 1, s, out);
            }
            w.pop();
        }
    }
    let mut out = vec![Vec::new(); s + 1];
    if s >= 1 {
        out[1].push(Vec::new());
    }
    go(&mut Vec::new(), 0, s, &mut out);
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn fraction(part: u64, whole: u64) -> Option<f64> {
    (whole > 0).then(|| part as f64 / whole as f64)
}

/// Exhaustive table for `r <= 4` over orders `r..=s`; for `r = 5` a sample
/// of `samples` graphs from the family built by adding one edge inside a part
/// of a random balanced `(r-1)`-partite graph on `s` vertices.
pub fn census(r: usize, s: usize, samples: usize, seed: u64, par: Parallelism) -> Result<CensusReport> {
    if r < 3 {
        return input("census needs r >= 3");
    }
    if r > 5 {
        return capability("census covers r <= 5");
    }
    if r == 5 {
        let sampled = sample(r, s, samples, seed, par)?;
        return Ok(CensusReport {
            r,
            rows: Vec::new(),
            sampled: Some(sampled),
            fraction_nondecreasing: true,
        });
    }
    if s > MAX_CENSUS_ORDER {
        return capability(format!("exhaustive census supports s <= {MAX_CENSUS_ORDER}"));
    }
    let by_order = unlabeled_graphs(s);
    let mut rows = Vec::new();
    for (order, graphs) in by_order.into_iter().enumerate().skip(r) {
        let classes = par::map(par, graphs, |w| -> Result<(Class, u64)> {
            let weights: Vec<u32> = w.iter().map(|&b| u32::from(b)).collect();
            let labeled = factorial(order) / automorphism_count(&w, order);
            let h = Pattern::from_pair_values(order, weights)?;
            Ok((classify(&h, r)?, labeled))
        });
        let mut row = CensusRow {
            s: order,
            graphs: Count::default(),
            critical: Count::default(),
            in_fr: Count::default(),
            unique_critical_edge: Count::default(),
            unique_partition: Count::default(),
            reduction_consistent: Count::default(),
            fr_fraction: None,
        };
        for item in classes {
            let (c, labeled) = item?;
            row.graphs.add(labeled);
            if !c.critical {
                continue;
            }
            row.critical.add(labeled);
            for (flag, slot) in [
                (c.in_fr, &mut row.in_fr),
                (c.unique_edge, &mut row.unique_critical_edge),
                (c.unique_partition, &mut row.unique_partition),
                (c.reduction_ok, &mut row.reduction_consistent),
            ] {
                if flag {
                    slot.add(labeled);
                }
            }
        }
        row.fr_fraction = fraction(row.in_fr.labeled, row.critical.labeled);
        rows.push(row);
    }
    let fractions: Vec<f64> = rows.iter().filter_map(|r| r.fr_fraction).collect();
    let fraction_nondecreasing = fractions.windows(2).all(|w| w[0] <= w[1]);
    Ok(CensusReport {
        r,
        rows,
        sampled: None,
        fraction_nondecreasing,
    })
}

fn balanced_parts(s: usize, parts: usize) -> Vec<usize> {
    (0..parts).map(|i| s / parts + usize::from(i < s % parts)).collect()
}

fn sample(r: usize, s: usize, samples: usize, seed: u64, par: Parallelism) -> Result<SampleReport> {
    let parts = balanced_parts(s, r - 1);
    if s > MAX_REDUCTION_ORDER {
        return capability(format!("sampled census supports s <= {MAX_REDUCTION_ORDER}"));
    }
    if parts[0] < 2 {
        return input(format!("s must be at least {r} to place an edge inside a part"));
    }
    let mut part_of = Vec::with_capacity(s);
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        for p in 0..pair_count(s) {
            let (u, v) = pair_at(p);
            if part_of[u] != part_of[v] && rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
        let first: Vec<Vertex> = (0..parts[0]).collect();
        let pick: Vec<Vertex> = first.choose_multiple(&mut rng, 2).copied().collect();
        edges.push((pick[0].min(pick[1]), pick[0].max(pick[1])));
        graphs.push(Pattern::simple(s, &edges)?);
    }
    let classes = par::map(par, graphs, |h| classify(&h, r));
    let mut report = SampleReport {
        s,
        parts,
        samples,
        seed,
        critical: 0,
        in_fr: 0,
        unique_critical_edge: 0,
        unique_partition: 0,
        fr_fraction: None,
    };
    for c in classes {
        let c = c?;
        if !c.critical {
            continue;
        }
        report.critical += 1;
        report.in_fr += u64::from(c.in_fr);
        report.unique_critical_edge += u64::from(c.unique_edge);
        report.unique_partition += u64::from(c.unique_partition);
    }
    report.fr_fraction = fraction(report.in_fr, report.critical);
    Ok(report)
}
