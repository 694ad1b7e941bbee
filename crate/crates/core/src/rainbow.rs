//! Multicolored (rainbow) copy detection and certificates.
//!
//! Two deciders share one injection enumerator:
//!
//! * [`find_rainbow`] works on an arbitrary explicit coloring and settles each
//!   candidate injection with a slot-to-color bipartite matching (a system of
//!   distinct representatives).
//! * [`find_rainbow_nested`] works on a nested host, where the colors of a pair
//!   of multiplicity `s` are exactly `1..=s`. There an injection yields a copy
//!   iff sorting the pattern pairs by the multiplicity of their images gives
//!   prefix sums dominated by those multiplicities.
//!
//! Both return an [`EmbeddingCertificate`] that [`verify_certificate`] checks
//! against the host without trusting the decider.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{
    pair_index, pairs, ColoredMultigraph, Multigraph, MultiplicityGraph, Pattern, Vertex,
};
use crate::matching::max_matching;

/// One unit of a pattern pair and the host color it is drawn in (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotColor {
    pub pair: (Vertex, Vertex),
    pub color: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Explicit distinct colors, one per unit of pattern multiplicity.
    ColorAssignment(Vec<SlotColor>),
    /// An enumeration of the pattern pairs with positive multiplicity whose
    /// running totals stay below the host multiplicity of each image.
    EmbeddingOrder {
        order: Vec<(Vertex, Vertex)>,
        prefix_sums: Vec<u64>,
    },
}

/// Injection `phi: V(H) -> V(G)` plus evidence that its image is multicolored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub phi: Vec<Vertex>,
    pub evidence: Evidence,
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    PhiLength { expected: usize, got: usize },
    PhiOutOfRange { vertex: Vertex },
    PhiNotInjective { vertex: Vertex },
    EmbeddingViolated { pair: (Vertex, Vertex) },
    SlotCount { pair: (Vertex, Vertex), expected: u32, got: u32 },
    ColorMissing { pair: (Vertex, Vertex), color: u32 },
    DuplicateColor { color: u32 },
    HostNotNested,
    OrderNotPermutation,
    PrefixSumsMismatch { index: usize },
    /// `index` is 1-based, matching the position in the order.
    PrefixOverflow { index: usize },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::PhiLength { expected, got } => {
                write!(f, "phi has {got} entries, expected {expected}")
            }
            Rejection::PhiOutOfRange { vertex } => write!(f, "phi maps to missing vertex {vertex}"),
            Rejection::PhiNotInjective { vertex } => write!(f, "phi hits vertex {vertex} twice"),
            Rejection::EmbeddingViolated { pair } => {
                write!(f, "host multiplicity too small under pair {pair:?}")
            }
            Rejection::SlotCount { pair, expected, got } => {
                write!(f, "pair {pair:?} has {got} colored slots, expected {expected}")
            }
            Rejection::ColorMissing { pair, color } => {
                write!(f, "color {color} absent from the image of {pair:?}")
            }
            Rejection::DuplicateColor { color } => write!(f, "duplicate color {color}"),
            Rejection::HostNotNested => write!(f, "embedding order evidence needs a nested host"),
            Rejection::OrderNotPermutation => {
                write!(f, "order is not an enumeration of the pattern's edges")
            }
            Rejection::PrefixSumsMismatch { index } => {
                write!(f, "stated prefix sum at index {index} is wrong")
            }
            Rejection::PrefixOverflow { index } => write!(f, "prefix overflow at index {index}"),
        }
    }
}

/// Read-only host access used by the injection enumerator.
pub(crate) trait HostView {
    fn host_order(&self) -> usize;
    fn mult(&self, u: Vertex, v: Vertex) -> u32;
}

impl<G: Multigraph> HostView for G {
    fn host_order(&self) -> usize {
        Multigraph::order(self)
    }

    fn mult(&self, u: Vertex, v: Vertex) -> u32 {
        self.multiplicity(u, v)
    }
}

/// Placement order for the pattern's vertices and the constraints checked as
/// each one is placed.
#[derive(Debug, Clone)]
pub(crate) struct EmbedPlan {
    /// Pattern vertex placed at each position.
    order: Vec<Vertex>,
    /// For each position, earlier positions joined to it and the multiplicity.
    back: Vec<Vec<(usize, u32)>>,
    degree: Vec<u64>,
    /// Positions from here on are isolated in the pattern.
    isolated_from: usize,
    /// Pattern edges as `(pos_a, pos_b, w, pattern pair)`.
    edges: Vec<(usize, usize, u32, (Vertex, Vertex))>,
}

impl EmbedPlan {
    /// Plan placing `start` first (in that order) and then greedily the
    /// vertex most heavily tied to those already placed.
    pub(crate) fn new(h: &Pattern, start: &[Vertex]) -> Self {
        let m = h.m();
        let deg: Vec<u64> = (0..m).map(|v| h.degree(v)).collect();
        let mut placed = vec![false; m];
        let mut order = Vec::with_capacity(m);
        for &s in start {
            placed[s] = true;
            order.push(s);
        }
        while order.len() < m {
            let next = (0..m)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let tie: u64 = order.iter().map(|&u| u64::from(h.multiplicity(u, v))).sum();
                    (deg[v] > 0, tie, deg[v], std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut pos = vec![0; m];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (0..i)
                    .filter_map(|j| {
                        let w = h.multiplicity(order[j], v);
                        (w > 0).then_some((j, w))
                    })
                    .collect()
            })
            .collect();
        let degree: Vec<u64> = order.iter().map(|&v| deg[v]).collect();
        let mut isolated_from = m;
        while isolated_from > start.len() && degree[isolated_from - 1] == 0 {
            isolated_from -= 1;
        }
        let edges = h
            .edges()
            .into_iter()
            .map(|(a, b, w)| (pos[a], pos[b], w, (a, b)))
            .collect();
        Self {
            order,
            back,
            degree,
            isolated_from,
            edges,
        }
    }

    /// Enumerates embeddings (injections with `w_G(phi e) >= w_H(e)`) whose
    /// first positions are pinned to `fixed`; `leaf` receives images by
    /// position and returns `true` to stop. Returns whether it stopped.
    pub(crate) fn for_each_embedding<G: HostView>(
        &self,
        host: &G,
        fixed: &[Vertex],
        leaf: &mut impl FnMut(&[Vertex]) -> bool,
    ) -> bool {
        let n = host.host_order();
        let m = self.order.len();
        if m > n {
            return false;
        }
        let host_deg: Vec<u64> = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).map(|u| u64::from(host.mult(u, v))).sum())
            .collect();
        let mut images = vec![usize::MAX; m];
        let mut used = vec![false; n];
        for (i, &img) in fixed.iter().enumerate() {
            if img >= n || used[img] || host_deg[img] < self.degree[i] {
                return false;
            }
            if self.back[i].iter().any(|&(j, w)| host.mult(img, images[j]) < w) {
                return false;
            }
            images[i] = img;
            used[img] = true;
        }
        self.extend(fixed.len(), host, &host_deg, &mut images, &mut used, leaf)
    }

    fn extend<G: HostView>(
        &self,
        pos: usize,
        host: &G,
        host_deg: &[u64],
        images: &mut [Vertex],
        used: &mut [bool],
        leaf: &mut impl FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if pos >= self.isolated_from {
            // Isolated pattern vertices take the smallest free host vertices.
            let mut free = (0..used.len()).filter(|&v| !used[v]);
            for slot in images[pos..].iter_mut() {
                *slot = free.next().expect("m <= n checked");
            }
            return leaf(images);
        }
        for cand in 0..host.host_order() {
            if used[cand] || host_deg[cand] < self.degree[pos] {
                continue;
            }
            if self.back[pos].iter().any(|&(j, w)| host.mult(cand, images[j]) < w) {
                continue;
            }
            images[pos] = cand;
            used[cand] = true;
            let stop = self.extend(pos + 1, host, host_deg, images, used, leaf);
            used[cand] = false;
            if stop {
                return true;
            }
        }
        false
    }

    /// Pattern-vertex-indexed injection from position-indexed images.
    pub(crate) fn phi(&self, images: &[Vertex]) -> Vec<Vertex> {
        let mut phi = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            phi[v] = images[i];
        }
        phi
    }

    /// The prefix criterion on a nested host: pattern edges sorted by the
    /// multiplicity of their images. Returns the order when it is proper.
    pub(crate) fn nested_order<G: HostView>(
        &self,
        host: &G,
        images: &[Vertex],
    ) -> Option<Vec<usize>> {
        let mut keyed: Vec<(u32, usize)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b, _, _))| (host.mult(images[a], images[b]), i))
            .collect();
        keyed.sort_unstable();
        let mut acc = 0u64;
        for &(cap, i) in &keyed {
            acc += u64::from(self.edges[i].2);
            if acc > u64::from(cap) {
                return None;
            }
        }
        Some(keyed.into_iter().map(|(_, i)| i).collect())
    }

    /// Same test without materializing the order.
    pub(crate) fn nested_ok<G: HostView>(&self, host: &G, images: &[Vertex]) -> bool {
        let mut buf = [(0u32, 0u32); 64];
        let e = self.edges.len();
        if e > buf.len() {
            return self.nested_order(host, images).is_some();
        }
        for (slot, &(a, b, w, _)) in buf.iter_mut().zip(&self.edges) {
            *slot = (host.mult(images[a], images[b]), w);
        }
        let buf = &mut buf[..e];
        buf.sort_unstable();
        let mut acc = 0u64;
        buf.iter().all(|&(cap, w)| {
            acc += u64::from(w);
            acc <= u64::from(cap)
        })
    }
}

fn check_sizes(n: usize, h: &Pattern) -> bool {
    h.m() <= n
}

/// Searches an explicitly colored host for a multicolored copy of `h`.
///
/// Returns `None` when `|H| > |G|`.
pub fn find_rainbow(g: &ColoredMultigraph, h: &Pattern) -> Option<EmbeddingCertificate> {
    if !check_sizes(Multigraph::order(g), h) {
        return None;
    }
    if h.h() > u64::from(g.k()) {
        return None;
    }
    let plan = EmbedPlan::new(h, &[]);
    let mut found = None;
    plan.for_each_embedding(g, &[], &mut |images| {
        if let Some(slots) = color_slots(g, &plan, images) {
            found = Some(EmbeddingCertificate {
                phi: plan.phi(images),
                evidence: Evidence::ColorAssignment(slots),
            });
            true
        } else {
            false
        }
    });
    found
}

// Hall-condition check: every unit of pattern multiplicity needs its own color
// drawn from the colors on its image pair.
fn color_slots(g: &ColoredMultigraph, plan: &EmbedPlan, images: &[Vertex]) -> Option<Vec<SlotColor>> {
    let mut slots = Vec::with_capacity(plan.edges.len());
    let mut adj = Vec::with_capacity(plan.edges.len());
    for &(a, b, w, pair) in &plan.edges {
        let mask = g.colors_on(images[a], images[b]);
        let avail: Vec<usize> = (0..g.k() as usize).filter(|&c| mask & (1 << c) != 0).collect();
        for _ in 0..w {
            slots.push(pair);
            adj.push(avail.clone());
        }
    }
    let assignment = max_matching(&adj, g.k() as usize);
    if assignment.iter().any(Option::is_none) {
        return None;
    }
    Some(
        slots
            .into_iter()
            .zip(assignment)
            .map(|(pair, c)| SlotColor {
                pair,
                color: c.unwrap() as u32 + 1,
            })
            .collect(),
    )
}

/// Exact decision on a nested host through the prefix criterion.
pub fn find_rainbow_nested(
    g: &MultiplicityGraph,
    h: &Pattern,
) -> Result<Option<EmbeddingCertificate>> {
    if g.max_multiplicity() > g.k() {
        return input("host multiplicity exceeds its color budget");
    }
    if !check_sizes(Multigraph::order(g), h) {
        return Ok(None);
    }
    let plan = EmbedPlan::new(h, &[]);
    Ok(nested_certificate(g, &plan, &[]))
}

pub(crate) fn nested_certificate<G: HostView>(
    g: &G,
    plan: &EmbedPlan,
    fixed: &[Vertex],
) -> Option<EmbeddingCertificate> {
    let mut found = None;
    plan.for_each_embedding(g, fixed, &mut |images| {
        if let Some(order) = plan.nested_order(g, images) {
            let mut acc = 0;
            let mut pairs_out = Vec::with_capacity(order.len());
            let mut sums = Vec::with_capacity(order.len());
            for i in order {
                let (_, _, w, pair) = plan.edges[i];
                acc += u64::from(w);
                pairs_out.push(pair);
                sums.push(acc);
            }
            found = Some(EmbeddingCertificate {
                phi: plan.phi(images),
                evidence: Evidence::EmbeddingOrder {
                    order: pairs_out,
                    prefix_sums: sums,
                },
            });
            true
        } else {
            false
        }
    });
    found
}

/// Checks a certificate against an explicit coloring.
///
/// Order evidence is accepted only when the host's colors form a chain.
pub fn verify_certificate(
    g: &ColoredMultigraph,
    h: &Pattern,
    cert: &EmbeddingCertificate,
) -> std::result::Result<(), Rejection> {
    check_phi(g, h, &cert.phi)?;
    let phi = &cert.phi;
    match &cert.evidence {
        Evidence::ColorAssignment(slots) => {
            let mut counts = vec![0u32; h.pair_values().len()];
            let mut used = 0u64;
            for s in slots {
                let (x, y) = s.pair;
                if x >= h.m() || y >= h.m() || x == y {
                    return Err(Rejection::OrderNotPermutation);
                }
                counts[pair_index(x, y)] += 1;
                if s.color == 0 || s.color > g.k() {
                    return Err(Rejection::ColorMissing { pair: s.pair, color: s.color });
                }
                let bit = 1u64 << (s.color - 1);
                if g.colors_on(phi[x], phi[y]) & bit == 0 {
                    return Err(Rejection::ColorMissing { pair: s.pair, color: s.color });
                }
                if used & bit != 0 {
                    return Err(Rejection::DuplicateColor { color: s.color });
                }
                used |= bit;
            }
            for ((x, y), (&want, &got)) in pairs(h.m()).zip(h.pair_values().iter().zip(&counts)) {
                if want != got {
                    return Err(Rejection::SlotCount { pair: (x, y), expected: want, got });
                }
            }
            Ok(())
        }
        Evidence::EmbeddingOrder { order, prefix_sums } => {
            if !g.is_nested() {
                return Err(Rejection::HostNotNested);
            }
            check_order(g, h, phi, order, prefix_sums)
        }
    }
}

/// [`verify_certificate`] for a host in canonical nested form.
pub fn verify_certificate_nested(
    g: &MultiplicityGraph,
    h: &Pattern,
    cert: &EmbeddingCertificate,
) -> std::result::Result<(), Rejection> {
    let colored = crate::nesting::from_multiplicity(g);
    verify_certificate(&colored, h, cert)
}

fn check_phi(g: &impl Multigraph, h: &Pattern, phi: &[Vertex]) -> std::result::Result<(), Rejection> {
    if phi.len() != h.m() {
        return Err(Rejection::PhiLength { expected: h.m(), got: phi.len() });
    }
    let n = Multigraph::order(g);
    let mut seen = vec![false; n];
    for &v in phi {
        if v >= n {
            return Err(Rejection::PhiOutOfRange { vertex: v });
        }
        if seen[v] {
            return Err(Rejection::PhiNotInjective { vertex: v });
        }
        seen[v] = true;
    }
    for (x, y, w) in h.edges() {
        if g.multiplicity(phi[x], phi[y]) < w {
            return Err(Rejection::EmbeddingViolated { pair: (x, y) });
        }
    }
    Ok(())
}

fn check_order(
    g: &impl Multigraph,
    h: &Pattern,
    phi: &[Vertex],
    order: &[(Vertex, Vertex)],
    prefix_sums: &[u64],
) -> std::result::Result<(), Rejection> {
    let edges = h.edges();
    if order.len() != edges.len() || prefix_sums.len() != order.len() {
        return Err(Rejection::OrderNotPermutation);
    }
    let mut seen = vec![false; h.pair_values().len()];
    let mut acc = 0u64;
    for (j, (&(x, y), &stated)) in order.iter().zip(prefix_sums).enumerate() {
        if x >= h.m() || y >= h.m() || x == y {
            return Err(Rejection::OrderNotPermutation);
        }
        let idx = pair_index(x, y);
        let w = h.pair_values()[idx];
        if w == 0 || seen[idx] {
            return Err(Rejection::OrderNotPermutation);
        }
        seen[idx] = true;
        acc += u64::from(w);
        if acc != stated {
            return Err(Rejection::PrefixSumsMismatch { index: j + 1 });
        }
        if acc > u64::from(g.multiplicity(phi[x], phi[y])) {
            return Err(Rejection::PrefixOverflow { index: j + 1 });
        }
    }
    Ok(())
}

/// Builds order evidence for a fixed injection and a chosen enumeration of
/// the pattern's pairs, computing the prefix sums.
pub fn order_certificate(
    h: &Pattern,
    phi: Vec<Vertex>,
    order: Vec<(Vertex, Vertex)>,
) -> EmbeddingCertificate {
    let mut acc = 0;
    let prefix_sums = order
        .iter()
        .map(|&(x, y)| {
            acc += u64::from(h.multiplicity(x, y));
            acc
        })
        .collect();
    EmbeddingCertificate {
        phi,
        evidence: Evidence::EmbeddingOrder { order, prefix_sums },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nesting::from_multiplicity;
    use crate::patterns;

    #[test]
    fn triple_triangle_contains_rainbow_triangle() {
        let g = MultiplicityGraph::complete(3, 3, 3).unwrap();
        let k3 = patterns::complete(3);
        let cert = find_rainbow_nested(&g, &k3).unwrap().unwrap();
        match &cert.evidence {
            Evidence::EmbeddingOrder { prefix_sums, .. } => assert_eq!(prefix_sums, &[1, 2, 3]),
            _ => panic!("nested decider emits orders"),
        }
        assert_eq!(verify_certificate_nested(&g, &k3, &cert), Ok(()));
        let explicit = find_rainbow(&from_multiplicity(&g), &k3).unwrap();
        assert_eq!(verify_certificate(&from_multiplicity(&g), &k3, &explicit), Ok(()));
    }

    #[test]
    fn double_complete_graph_is_triangle_free() {
        let k3 = patterns::complete(3);
        for n in 3..=7 {
            let g = MultiplicityGraph::complete(n, 2, 2).unwrap();
            assert!(find_rainbow_nested(&g, &k3).unwrap().is_none());
            assert!(find_rainbow(&from_multiplicity(&g), &k3).is_none());
        }
    }

    #[test]
    fn saturated_host_contains_every_small_pattern() {
        // w = h everywhere: the ascending-multiplicity order is always proper.
        for h in [
            patterns::complete(4),
            patterns::cycle(4),
            Pattern::from_edges(3, &[(0, 1, 2), (1, 2, 3)]).unwrap(),
        ] {
            let hh = h.h() as u32;
            let g = MultiplicityGraph::complete(5, hh, hh).unwrap();
            let cert = find_rainbow_nested(&g, &h).unwrap().unwrap();
            assert_eq!(verify_certificate_nested(&g, &h, &cert), Ok(()));
        }
    }

    #[test]
    fn single_edge_pattern_needs_one_edge() {
        let e = patterns::complete(2);
        let g = MultiplicityGraph::from_edges(4, 1, &[(1, 3, 1)]).unwrap();
        assert!(find_rainbow_nested(&g, &e).unwrap().is_some());
        assert!(find_rainbow_nested(&MultiplicityGraph::empty(4, 1), &e).unwrap().is_none());
    }

    #[test]
    fn pattern_larger_than_host_is_absent() {
        let g = MultiplicityGraph::complete(3, 9, 9).unwrap();
        assert!(find_rainbow_nested(&g, &patterns::complete(4)).unwrap().is_none());
        assert!(find_rainbow(&from_multiplicity(&g), &patterns::complete(4)).is_none());
    }

    #[test]
    fn rejection_reasons() {
        let g = MultiplicityGraph::complete(3, 3, 3).unwrap();
        let colored = from_multiplicity(&g);
        let k3 = patterns::complete(3);

        let dup = EmbeddingCertificate {
            phi: vec![0, 1, 2],
            evidence: Evidence::ColorAssignment(vec![
                SlotColor { pair: (0, 1), color: 1 },
                SlotColor { pair: (0, 2), color: 1 },
                SlotColor { pair: (1, 2), color: 2 },
            ]),
        };
        assert_eq!(
            verify_certificate(&colored, &k3, &dup),
            Err(Rejection::DuplicateColor { color: 1 })
        );

        // A valid order on a host with multiplicities (1, 2, 3), then swapped
        // so the running total overflows at the second position.
        let g = MultiplicityGraph::from_edges(3, 3, &[(0, 1, 1), (0, 2, 2), (1, 2, 3)]).unwrap();
        let good = order_certificate(&k3, vec![0, 1, 2], vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(verify_certificate_nested(&g, &k3, &good), Ok(()));
        let bad = order_certificate(&k3, vec![0, 1, 2], vec![(0, 2), (0, 1), (1, 2)]);
        assert_eq!(
            verify_certificate_nested(&g, &k3, &bad),
            Err(Rejection::PrefixOverflow { index: 2 })
        );

        let not_injective = order_certificate(&k3, vec![0, 0, 2], vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            verify_certificate_nested(&g, &k3, &not_injective),
            Err(Rejection::PhiNotInjective { vertex: 0 })
        );

        let crossed = ColoredMultigraph::from_colors(3, &[vec![(0, 1)], vec![(1, 2)]]).unwrap();
        let p3 = patterns::path(3);
        let order = order_certificate(&p3, vec![0, 1, 2], vec![(0, 1), (1, 2)]);
        assert_eq!(verify_certificate(&crossed, &p3, &order), Err(Rejection::HostNotNested));
        let found = find_rainbow(&crossed, &p3).unwrap();
        assert_eq!(verify_certificate(&crossed, &p3, &found), Ok(()));
    }
}
