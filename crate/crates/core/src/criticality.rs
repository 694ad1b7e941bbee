//! Chromatic structure of patterns: critical edges, critical colorings, the
//! color-reduced multigraphs `H^f` and `H_c`, `k*(H)` and membership in `F_r`.

use serde::Serialize;

use crate::error::{capability, input, Result};
use crate::graph::{pair_index, pairs, Multigraph, Pattern, Vertex};
use crate::rational::{self, int, Rational};

/// Largest pattern handled by the chromatic-number solver.
pub const MAX_CHROMATIC_ORDER: usize = 16;
/// Largest pattern whose critical colorings are enumerated.
pub const MAX_REDUCTION_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub chi: usize,
    pub critical_edges: Vec<(Vertex, Vertex)>,
    pub is_color_critical: bool,
    /// Class of each vertex (0-based, first-occurrence order).
    pub critical_coloring: Option<Vec<usize>>,
    pub reduced: Option<Pattern>,
    pub max_mult: Option<u32>,
    #[serde(with = "rational::as_opt_fraction")]
    pub k_star: Option<Rational>,
    #[serde(with = "rational::as_opt_fraction")]
    pub alpha_r: Option<Rational>,
    #[serde(rename = "in_Fr")]
    pub in_fr: Option<bool>,
    pub notes: Vec<String>,
}

fn check_order(h: &Pattern, limit: usize, what: &str) -> Result<()> {
    if h.m() > limit {
        return capability(format!("{what} supports at most {limit} vertices, got {}", h.m()));
    }
    Ok(())
}

fn colorable(adj: &[u32], colors: usize) -> bool {
    fn go(v: usize, adj: &[u32], class: &mut [usize], used: usize, colors: usize) -> bool {
        if v == adj.len() {
            return true;
        }
        // A fresh color is only tried once (symmetry).
        let limit = (used + 1).min(colors);
        for c in 0..limit {
            let clash = (0..v).any(|u| class[u] == c && adj[v] & (1 << u) != 0);
            if clash {
                continue;
            }
            class[v] = c;
            if go(v + 1, adj, class, used.max(c + 1), colors) {
                return true;
            }
        }
        false
    }
    let mut class = vec![0; adj.len()];
    go(0, adj, &mut class, 0, colors)
}

fn chi_of(adj: &[u32]) -> usize {
    (1..=adj.len()).find(|&c| colorable(adj, c)).unwrap_or(adj.len())
}

/// Chromatic number of the underlying simple graph.
pub fn chromatic_number(h: &Pattern) -> Result<usize> {
    check_order(h, MAX_CHROMATIC_ORDER, "chromatic number")?;
    Ok(chi_of(&h.adjacency_masks()))
}

/// Pairs whose loss of one unit of multiplicity lowers the chromatic number.
pub fn critical_edges(h: &Pattern) -> Result<Vec<(Vertex, Vertex)>> {
    check_order(h, MAX_CHROMATIC_ORDER, "critical edge detection")?;
    let adj = h.adjacency_masks();
    let chi = chi_of(&adj);
    let mut out = Vec::new();
    for (u, v, w) in h.edges() {
        if w != 1 {
            continue;
        }
        let mut reduced = adj.clone();
        reduced[u] &= !(1 << v);
        reduced[v] &= !(1 << u);
        if chi_of(&reduced) + 1 == chi {
            out.push((u, v));
        }
    }
    Ok(out)
}

/// `e(V_i, V_j)` for every pair of classes of `class`.
fn class_counts(h: &Pattern, class: &[usize], r: usize) -> Vec<u32> {
    let mut w = vec![0u32; crate::graph::pair_count(r)];
    for (u, v, m) in h.edges() {
        let (a, b) = (class[u], class[v]);
        if a != b {
            w[pair_index(a, b)] += m;
        }
    }
    w
}

/// `H^f`: one vertex per class, multiplicities counting the edges between
/// classes. `f` must be a critical coloring with `chi(H)` classes.
pub fn color_reduced(h: &Pattern, f: &[usize]) -> Result<Pattern> {
    check_order(h, MAX_CHROMATIC_ORDER, "color reduction")?;
    if f.len() != h.m() {
        return input(format!("coloring has {} entries for {} vertices", f.len(), h.m()));
    }
    let chi = chromatic_number(h)?;
    let r = f.iter().max().map_or(0, |&c| c + 1);
    let mut present = vec![false; r];
    f.iter().for_each(|&c| present[c] = true);
    if r != chi || present.iter().any(|p| !p) {
        return input(format!("coloring must use exactly the {chi} classes 0..{chi}"));
    }
    if let Some((u, v, _)) = h.edges().into_iter().find(|&(u, v, _)| f[u] == f[v]) {
        return input(format!("coloring is not proper at ({u},{v})"));
    }
    let w = class_counts(h, f, r);
    if !w.contains(&1) {
        return input("no pair of classes is joined by exactly one edge");
    }
    Pattern::from_pair_values(r, w)
}

/// All critical colorings with `r` classes as restricted growth strings, in
/// lexicographic order.
pub fn critical_colorings(h: &Pattern, r: usize) -> Result<Vec<Vec<usize>>> {
    check_order(h, MAX_REDUCTION_ORDER, "critical coloring enumeration")?;
    let adj = h.adjacency_masks();
    let mut out = Vec::new();
    let mut class = vec![0; h.m()];
    proper_rgs(&adj, r, 0, 0, &mut class, &mut |c| {
        if class_counts(h, c, r).contains(&1) {
            out.push(c.to_vec());
        }
    });
    Ok(out)
}

fn proper_rgs(
    adj: &[u32],
    r: usize,
    v: usize,
    used: usize,
    class: &mut [usize],
    emit: &mut impl FnMut(&[usize]),
) {
    let m = adj.len();
    if v == m {
        if used == r {
            emit(class);
        }
        return;
    }
    // Remaining vertices must be able to open the remaining classes.
    if r - used > m - v {
        return;
    }
    for c in 0..(used + 1).min(r) {
        if (0..v).any(|u| class[u] == c && adj[v] & (1 << u) != 0) {
            continue;
        }
        class[v] = c;
        proper_rgs(adj, r, v + 1, used.max(c + 1), class, emit);
    }
}

/// `k*(r, h) = (r-1)(h-1)/(r-2)`, defined for `r >= 3`.
pub fn k_star(r: usize, h: u64) -> Option<Rational> {
    (r >= 3).then(|| Rational::new((r as i64 - 1) * (h as i64 - 1), r as i64 - 2))
}

/// `alpha_r = (2 + 2/r^2) / ((r-1)(r-2))`, defined for `r >= 3`.
pub fn alpha_r(r: usize) -> Option<Rational> {
    (r >= 3).then(|| {
        let r = r as i64;
        Rational::new(2 * r * r + 2, r * r * (r - 1) * (r - 2))
    })
}

/// Full report; `H_c` minimizes the largest multiplicity, then the ascending
/// multiplicity vector, then the coloring string.
pub fn reduce_minmax(h: &Pattern) -> Result<CriticalityReport> {
    check_order(h, MAX_REDUCTION_ORDER, "critical coloring enumeration")?;
    let chi = chromatic_number(h)?;
    let critical = critical_edges(h)?;
    let is_critical = !critical.is_empty();
    let mut report = CriticalityReport {
        chi,
        critical_edges: critical,
        is_color_critical: is_critical,
        critical_coloring: None,
        reduced: None,
        max_mult: None,
        k_star: k_star(chi, h.h()),
        alpha_r: alpha_r(chi),
        in_fr: None,
        notes: Vec::new(),
    };
    if !is_critical {
        report.notes.push("pattern is not color-critical".into());
        return Ok(report);
    }
    let best = critical_colorings(h, chi)?
        .into_iter()
        .map(|f| {
            let w = class_counts(h, &f, chi);
            let mut sorted = w.clone();
            sorted.sort_unstable();
            let max = sorted.last().copied().unwrap_or(0);
            ((max, sorted, f), w)
        })
        .min_by(|a, b| a.0.cmp(&b.0));
    let Some(((max, _, f), w)) = best else {
        return Err(crate::Error::Internal(
            "color-critical pattern without a critical coloring".into(),
        ));
    };
    report.reduced = Some(Pattern::from_pair_values(chi, w)?);
    report.critical_coloring = Some(f);
    report.max_mult = Some(max);
    if let Some(alpha) = report.alpha_r {
        let bound = alpha * int(h.h() as i64 - 1);
        report.in_fr = Some(Rational::from_integer(i64::from(max)) <= bound);
        if chi < 5 {
            report
                .notes
                .push("F_r membership is informational for r < 5".into());
        }
    } else {
        report.notes.push("k* and F_r are undefined for r < 3".into());
    }
    Ok(report)
}

/// Whether `h` has chromatic number `r` and a critical edge.
pub fn is_r_color_critical(h: &Pattern, r: usize) -> Result<bool> {
    Ok(chromatic_number(h)? == r && !critical_edges(h)?.is_empty())
}

/// Simple edges of `h` as vertex pairs, ignoring multiplicity.
pub fn support(h: &Pattern) -> Vec<(Vertex, Vertex)> {
    pairs(h.m()).filter(|&(u, v)| h.multiplicity(u, v) > 0).collect()
}
