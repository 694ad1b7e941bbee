//! Vertex and edge model for simply k-colored multigraphs.
//!
//! Unordered vertex pairs `{u, v}` with `u < v` are indexed in colexicographic
//! order: `(0,1), (0,2), (1,2), (0,3), ...`. Pairs inside the first `t`
//! vertices therefore form a prefix of every pair table, which the search
//! relies on when it grows hosts one vertex at a time.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::rational::Rational;

pub type Vertex = usize;

/// Largest color budget an explicit coloring can carry (one bit per color).
pub const MAX_COLORS: u32 = 64;

#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Colex index of `{u, v}`; the arguments may come in either order.
#[inline]
pub fn pair_index(u: Vertex, v: Vertex) -> usize {
    debug_assert_ne!(u, v);
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

/// Inverse of [`pair_index`].
pub fn pair_at(index: usize) -> (Vertex, Vertex) {
    let mut b = 1;
    while pair_count(b + 1) <= index {
        b += 1;
    }
    (index - pair_count(b), b)
}

/// All pairs on `n` vertices in colex order.
pub fn pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (1..n).flat_map(|b| (0..b).map(move |a| (a, b)))
}

fn check_pair(n: usize, u: Vertex, v: Vertex) -> Result<()> {
    if u == v {
        return input(format!("loop at vertex {u}"));
    }
    if u >= n || v >= n {
        return input(format!("pair ({u},{v}) outside vertex range 0..{n}"));
    }
    Ok(())
}

/// Read access shared by every multigraph representation.
pub trait Multigraph {
    fn order(&self) -> usize;

    /// Multiplicity `w(uv)`; zero for `u == v`.
    fn multiplicity(&self, u: Vertex, v: Vertex) -> u32;

    fn edge_count(&self) -> u64 {
        pairs(self.order())
            .map(|(u, v)| u64::from(self.multiplicity(u, v)))
            .sum()
    }

    fn degree(&self, v: Vertex) -> u64 {
        (0..self.order())
            .filter(|&u| u != v)
            .map(|u| u64::from(self.multiplicity(u, v)))
            .sum()
    }

    fn max_multiplicity(&self) -> u32 {
        pairs(self.order())
            .map(|(u, v)| self.multiplicity(u, v))
            .max()
            .unwrap_or(0)
    }
}

/// Host multigraph given as an explicit simple k-coloring.
///
/// Each pair stores the bit set of colors present on it, so every color class
/// is a simple graph by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredMultigraph {
    n: usize,
    k: u32,
    masks: Vec<u64>,
}

impl ColoredMultigraph {
    pub fn empty(n: usize, k: u32) -> Result<Self> {
        if k > MAX_COLORS {
            return input(format!("at most {MAX_COLORS} colors are supported, got {k}"));
        }
        Ok(Self {
            n,
            k,
            masks: vec![0; pair_count(n)],
        })
    }

    /// Builds a host from `k` color classes given as edge lists (colors are
    /// numbered from 0 here).
    pub fn from_colors(n: usize, colors: &[Vec<(Vertex, Vertex)>]) -> Result<Self> {
        let mut g = Self::empty(n, colors.len() as u32)?;
        for (c, edges) in colors.iter().enumerate() {
            for &(u, v) in edges {
                g.insert(c as u32, u, v)?;
            }
        }
        Ok(g)
    }

    /// Adds color `color` (0-based) on `{u, v}`.
    pub fn insert(&mut self, color: u32, u: Vertex, v: Vertex) -> Result<()> {
        check_pair(self.n, u, v)?;
        if color >= self.k {
            return input(format!("color {} outside 1..{}", color + 1, self.k));
        }
        let slot = &mut self.masks[pair_index(u, v)];
        if *slot & (1 << color) != 0 {
            return input(format!(
                "color {} repeats pair ({u},{v})",
                color + 1
            ));
        }
        *slot |= 1 << color;
        Ok(())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Bit set of colors (bit `i` is color `i`, 0-based) on `{u, v}`.
    pub fn colors_on(&self, u: Vertex, v: Vertex) -> u64 {
        if u == v {
            0
        } else {
            self.masks[pair_index(u, v)]
        }
    }

    pub(crate) fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub(crate) fn from_masks(n: usize, k: u32, masks: Vec<u64>) -> Self {
        debug_assert_eq!(masks.len(), pair_count(n));
        Self { n, k, masks }
    }

    /// Edge set of one color class, in colex pair order.
    pub fn color_class(&self, color: u32) -> BTreeSet<(Vertex, Vertex)> {
        pairs(self.n)
            .zip(&self.masks)
            .filter(|(_, &m)| m & (1 << color) != 0)
            .map(|(p, _)| p)
            .collect()
    }

    pub fn color_classes(&self) -> Vec<BTreeSet<(Vertex, Vertex)>> {
        (0..self.k).map(|c| self.color_class(c)).collect()
    }

    /// Whether the color classes form a chain under inclusion.
    pub fn is_nested(&self) -> bool {
        let classes = self.color_classes();
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                let (a, b) = (&classes[i], &classes[j]);
                if !(a.is_subset(b) || b.is_subset(a)) {
                    return false;
                }
            }
        }
        true
    }
}

impl Multigraph for ColoredMultigraph {
    fn order(&self) -> usize {
        self.n
    }

    fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.colors_on(u, v).count_ones()
    }
}

/// Canonical nested host: a multiplicity in `0..=k` per pair, read as carrying
/// exactly the colors `1..=w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiplicityGraph {
    n: usize,
    k: u32,
    w: Vec<u32>,
}

impl MultiplicityGraph {
    pub fn empty(n: usize, k: u32) -> Self {
        Self {
            n,
            k,
            w: vec![0; pair_count(n)],
        }
    }

    pub fn complete(n: usize, k: u32, multiplicity: u32) -> Result<Self> {
        Self::from_fn(n, k, |_, _| multiplicity)
    }

    /// Builds a host from a multiplicity function evaluated on every pair.
    pub fn from_fn(n: usize, k: u32, mut f: impl FnMut(Vertex, Vertex) -> u32) -> Result<Self> {
        let w: Vec<u32> = pairs(n).map(|(u, v)| f(u, v)).collect();
        Self::from_pair_values(n, k, w)
    }

    /// Multiplicities listed in colex pair order.
    pub fn from_pair_values(n: usize, k: u32, w: Vec<u32>) -> Result<Self> {
        if w.len() != pair_count(n) {
            return input(format!(
                "expected {} pair multiplicities for n = {n}, got {}",
                pair_count(n),
                w.len()
            ));
        }
        if let Some((i, &m)) = w.iter().enumerate().find(|(_, &m)| m > k) {
            let (u, v) = pair_at(i);
            return input(format!("multiplicity {m} on ({u},{v}) exceeds k = {k}"));
        }
        Ok(Self { n, k, w })
    }

    pub fn from_edges(n: usize, k: u32, edges: &[(Vertex, Vertex, u32)]) -> Result<Self> {
        let mut g = Self::empty(n, k);
        for &(u, v, m) in edges {
            g.set(u, v, m)?;
        }
        Ok(g)
    }

    pub fn set(&mut self, u: Vertex, v: Vertex, m: u32) -> Result<()> {
        check_pair(self.n, u, v)?;
        if m > self.k {
            return input(format!("multiplicity {m} on ({u},{v}) exceeds k = {}", self.k));
        }
        self.w[pair_index(u, v)] = m;
        Ok(())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Same multiplicities under a different color budget.
    pub fn with_k(&self, k: u32) -> Result<Self> {
        Self::from_pair_values(self.n, k, self.w.clone())
    }

    pub fn pair_values(&self) -> &[u32] {
        &self.w
    }

    /// Pairs with positive multiplicity, `(u, v, w)` with `u < v`, colex order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, u32)> {
        pairs(self.n)
            .zip(&self.w)
            .filter(|(_, &m)| m > 0)
            .map(|((u, v), &m)| (u, v, m))
            .collect()
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Self {
        let mut w = vec![0; self.w.len()];
        for ((u, v), &m) in pairs(self.n).zip(&self.w) {
            w[pair_index(perm[u], perm[v])] = m;
        }
        Self {
            n: self.n,
            k: self.k,
            w,
        }
    }
}

impl Multigraph for MultiplicityGraph {
    fn order(&self) -> usize {
        self.n
    }

    fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        if u == v {
            0
        } else {
            self.w[pair_index(u, v)]
        }
    }
}

/// Target (multi)graph `H`. The total edge count `h` is cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pattern {
    m: usize,
    w: Vec<u32>,
    h: u64,
}

impl Pattern {
    pub fn from_edges(m: usize, edges: &[(Vertex, Vertex, u32)]) -> Result<Self> {
        if m == 0 {
            return input("a pattern needs at least one vertex");
        }
        let mut w = vec![0; pair_count(m)];
        for &(u, v, mult) in edges {
            check_pair(m, u, v)?;
            w[pair_index(u, v)] += mult;
        }
        Self::from_pair_values(m, w)
    }

    /// Simple-graph pattern: every listed pair gets multiplicity one.
    pub fn simple(m: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if !seen.insert((u.min(v), u.max(v))) {
                return input(format!("pair ({u},{v}) listed twice in a simple pattern"));
            }
        }
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        Self::from_edges(m, &weighted)
    }

    pub fn from_pair_values(m: usize, w: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return input("a pattern needs at least one vertex");
        }
        if w.len() != pair_count(m) {
            return input(format!(
                "expected {} pair multiplicities for m = {m}, got {}",
                pair_count(m),
                w.len()
            ));
        }
        let h = w.iter().map(|&x| u64::from(x)).sum();
        Ok(Self { m, w, h })
    }

    pub fn from_multigraph(g: &impl Multigraph) -> Result<Self> {
        let n = g.order();
        Self::from_pair_values(n, pairs(n).map(|(u, v)| g.multiplicity(u, v)).collect())
    }

    /// Number of vertices `|H|`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Total edge count `e(H)`.
    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn pair_values(&self) -> &[u32] {
        &self.w
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex, u32)> {
        pairs(self.m)
            .zip(&self.w)
            .filter(|(_, &m)| m > 0)
            .map(|((u, v), &m)| (u, v, m))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.w.iter().all(|&m| m <= 1)
    }

    /// Copy with one unit of multiplicity removed from `{u, v}`.
    pub fn minus_unit(&self, u: Vertex, v: Vertex) -> Option<Self> {
        let i = pair_index(u, v);
        if self.w[i] == 0 {
            return None;
        }
        let mut w = self.w.clone();
        w[i] -= 1;
        Some(Self {
            m: self.m,
            w,
            h: self.h - 1,
        })
    }

    /// Adjacency bit masks of the underlying simple graph.
    pub fn adjacency_masks(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.m];
        for (u, v, _) in self.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn permuted(&self, perm: &[Vertex]) -> Self {
        let mut w = vec![0; self.w.len()];
        for ((u, v), &m) in pairs(self.m).zip(&self.w) {
            w[pair_index(perm[u], perm[v])] = m;
        }
        Self {
            m: self.m,
            w,
            h: self.h,
        }
    }

    /// The pattern read as a nested host with color budget `k`.
    pub fn to_host(&self, k: u32) -> Result<MultiplicityGraph> {
        MultiplicityGraph::from_pair_values(self.m, k, self.w.clone())
    }
}

impl Multigraph for Pattern {
    fn order(&self) -> usize {
        self.m
    }

    fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        if u == v {
            0
        } else {
            self.w[pair_index(u, v)]
        }
    }
}

/// `d_T(v) = sum over u in T of w(uv)`.
pub fn degree_into(g: &impl Multigraph, v: Vertex, targets: &[Vertex]) -> Result<u64> {
    let n = g.order();
    if v >= n {
        return input(format!("vertex {v} outside 0..{n}"));
    }
    let mut total = 0;
    for &u in targets {
        if u >= n {
            return input(format!("vertex {u} outside 0..{n}"));
        }
        total += u64::from(g.multiplicity(u, v));
    }
    Ok(total)
}

/// The balanced complete `parts`-partite graph on `n` vertices, vertex `i` in
/// part `i mod parts`, as a single-color host.
pub fn turan_graph(n: usize, parts: usize) -> Result<MultiplicityGraph> {
    if parts == 0 {
        return input("the Turán graph needs at least one part");
    }
    MultiplicityGraph::from_fn(n, 1, |u, v| u32::from(u % parts != v % parts))
}

/// Edge count `t` and minimum degree `d` of the Turán graph.
pub fn turan_numbers(n: usize, parts: usize) -> Result<(u64, u64)> {
    if parts == 0 {
        return input("the Turán graph needs at least one part");
    }
    let (n64, p) = (n as u64, parts as u64);
    let (q, rem) = (n64 / p, n64 % p);
    let squares = rem * (q + 1) * (q + 1) + (p - rem) * q * q;
    let t = (n64 * n64 - squares) / 2;
    let largest = if rem > 0 { q + 1 } else { q };
    let d = if n == 0 { 0 } else { n64 - largest };
    Ok((t, d))
}

/// Outcome of [`heavy_neighbor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeavyNeighbor {
    pub vertex: Vertex,
    /// `d_T(vertex)`.
    pub degree: u64,
    /// Whether `d_T(vertex) >= d * |T|`.
    pub meets_threshold: bool,
}

/// A vertex outside `targets` with the largest `d_T`, smallest id on ties.
///
/// Returns `None` when `targets` covers every vertex.
pub fn heavy_neighbor(
    g: &impl Multigraph,
    targets: &[Vertex],
    d: Rational,
) -> Result<Option<HeavyNeighbor>> {
    if targets.is_empty() {
        return input("target set must be nonempty");
    }
    let n = g.order();
    let mut inside = vec![false; n];
    for &t in targets {
        if t >= n {
            return input(format!("vertex {t} outside 0..{n}"));
        }
        inside[t] = true;
    }
    let t_size = inside.iter().filter(|&&b| b).count() as i64;
    let mut best: Option<(Vertex, u64)> = None;
    for v in (0..n).filter(|&v| !inside[v]) {
        let dv = degree_into(g, v, targets)?;
        if best.is_none_or(|(_, b)| dv > b) {
            best = Some((v, dv));
        }
    }
    Ok(best.map(|(vertex, degree)| HeavyNeighbor {
        vertex,
        degree,
        meets_threshold: Rational::from_integer(degree as i64) >= d * t_size,
    }))
}

/// Largest order for which the isomorphism-invariant distance is computed.
pub const MAX_ISO_DISTANCE_ORDER: usize = 8;

/// Total multiplicity change turning `a` into `b`; with `upto_iso`, minimized
/// over all relabelings of `b`.
pub fn symmetric_difference(
    a: &impl Multigraph,
    b: &impl Multigraph,
    upto_iso: bool,
) -> Result<u64> {
    let n = a.order();
    if b.order() != n {
        return input(format!(
            "graphs of different orders {} and {}",
            n,
            b.order()
        ));
    }
    let wa: Vec<u32> = pairs(n).map(|(u, v)| a.multiplicity(u, v)).collect();
    if !upto_iso {
        return Ok(pairs(n)
            .zip(&wa)
            .map(|((u, v), &x)| u64::from(x.abs_diff(b.multiplicity(u, v))))
            .sum());
    }
    if n > MAX_ISO_DISTANCE_ORDER {
        return crate::error::capability(format!(
            "isomorphism distance needs n <= {MAX_ISO_DISTANCE_ORDER}, got {n}"
        ));
    }
    let wb: Vec<Vec<u32>> = (0..n)
        .map(|u| (0..n).map(|v| b.multiplicity(u, v)).collect())
        .collect();
    // Assign images for a's vertices in order; pairs (i, j) with j the newest
    // vertex are scored as soon as both ends are placed.
    #[allow(clippy::too_many_arguments)]
    fn go(
        j: usize,
        n: usize,
        wa: &[u32],
        wb: &[Vec<u32>],
        perm: &mut Vec<Vertex>,
        used: &mut [bool],
        acc: u64,
        best: &mut u64,
    ) {
        if acc >= *best {
            return;
        }
        if j == n {
            *best = acc;
            return;
        }
        for img in 0..n {
            if used[img] {
                continue;
            }
            let mut add = 0;
            for i in 0..j {
                add += u64::from(wa[pair_index(i, j)].abs_diff(wb[perm[i]][img]));
            }
            used[img] = true;
            perm.push(img);
            go(j + 1, n, wa, wb, perm, used, acc + add, best);
            perm.pop();
            used[img] = false;
        }
    }
    let mut best = u64::MAX;
    go(0, n, &wa, &wb, &mut Vec::with_capacity(n), &mut vec![false; n], 0, &mut best);
    Ok(if n == 0 { 0 } else { best })
}
