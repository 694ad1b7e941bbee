//! Branch and bound over multiplicity functions.
//!
//! Pairs are assigned in colex order, so vertex `v` is finished once the pair
//! `(v-1, v)` is set. Values are tried from the largest free one downwards.
//! Freeness is incremental: a new copy must send some pattern edge onto the
//! pair just assigned, so only embeddings pinned there are examined.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::canon::{is_canonical, permutations};
use crate::graph::{pair_at, pair_count, pair_index, Pattern, Vertex};
use crate::par::{self, Parallelism};
use crate::rainbow::{EmbedPlan, HostView};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Largest value; with `witnesses`, every canonical graph attaining it.
    Maximize { witnesses: bool },
    /// Every canonical free graph with at least this many edges.
    AtLeast(u64),
}

pub(crate) struct Problem<'a> {
    pub n: usize,
    pub k: u32,
    pub h: &'a Pattern,
    pub canonical: bool,
    pub min_degree: bool,
    pub mode: Mode,
    /// `ex[m]` for every `m < n`.
    pub ex: Vec<u64>,
    /// A value known to be attained (a verified free construction).
    pub seed: u64,
}

#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub best: u64,
    /// Pair vectors of the collected graphs.
    pub graphs: BTreeSet<Vec<u32>>,
    pub nodes: u64,
}

/// Partial host on the first `n` vertices; pair `p` reads as `t`.
#[derive(Clone, Copy)]
struct Partial<'a> {
    w: &'a [u32],
    n: usize,
    p: usize,
    t: u32,
}

impl HostView for Partial<'_> {
    fn host_order(&self) -> usize {
        self.n
    }

    fn mult(&self, u: Vertex, v: Vertex) -> u32 {
        if u == v {
            return 0;
        }
        let i = pair_index(u, v);
        if i == self.p {
            self.t
        } else {
            self.w[i]
        }
    }
}

struct Engine<'a> {
    n: usize,
    k: u32,
    pairs: usize,
    /// One plan per oriented pattern edge, with that edge's multiplicity.
    plans: Vec<(EmbedPlan, u32)>,
    floor: u32,
    free_always: bool,
    canonical: bool,
    min_degree: bool,
    mode: Mode,
    ex: &'a [u64],
    cap: u64,
}

struct State {
    w: Vec<u32>,
    deg: Vec<u64>,
    total: u64,
    nodes: u64,
    found: BTreeSet<Vec<u32>>,
}

impl State {
    fn from_prefix(n: usize, prefix: &[u32]) -> Self {
        let mut w = vec![0; pair_count(n)];
        w[..prefix.len()].copy_from_slice(prefix);
        let mut deg = vec![0; n];
        for (p, &x) in prefix.iter().enumerate() {
            let (u, v) = pair_at(p);
            deg[u] += u64::from(x);
            deg[v] += u64::from(x);
        }
        Self {
            w,
            deg,
            total: prefix.iter().map(|&x| u64::from(x)).sum(),
            nodes: 0,
            found: BTreeSet::new(),
        }
    }
}

impl Engine<'_> {
    fn target(&self, best: u64) -> u64 {
        match self.mode {
            Mode::Maximize { witnesses: true } => best,
            Mode::Maximize { witnesses: false } => best + 1,
            Mode::AtLeast(l) => l,
        }
    }

    fn ex_at(&self, m: usize) -> Option<u64> {
        self.ex.get(m).copied()
    }

    /// Upper bound on the final total given the assignment of pairs `< p`.
    fn bound(&self, st: &State, p: usize) -> u64 {
        let k = u64::from(self.k);
        let b1 = st.total + k * (self.pairs - p) as u64;
        let (u, v) = pair_at(p);
        let rem_v = (v - u) as u64;
        let lo = st.total;
        let mut hi = st.total + k * rem_v;
        if let Some(e) = self.ex_at(v + 1) {
            hi = hi.min(e);
        }
        if hi < lo {
            return 0;
        }
        let later = (self.n - v - 1) as u64;
        let vertex_bound = if later == 0 {
            hi
        } else {
            let c = k * (v as u64 + 1);
            let x = self.ex_at(v + 2);
            let f = |e: u64| -> u64 {
                let cross = match x {
                    Some(x) => c.min(x.saturating_sub(e)),
                    None => c,
                };
                e + later * cross
            };
            let mut best = f(lo).max(f(hi));
            if let Some(x) = x {
                let brk = x.saturating_sub(c).clamp(lo, hi);
                best = best.max(f(brk));
            }
            best + self.ex[later as usize]
        };
        b1.min(vertex_bound).min(self.cap)
    }

    /// Largest value for pair `p = (u, v)` that keeps the partial host free.
    fn max_free(&self, w: &[u32], p: usize) -> u32 {
        if self.free_always {
            return self.k;
        }
        let (u, v) = pair_at(p);
        let host = Partial { w, n: v + 1, p, t: self.k };
        let mut tmin = self.k + 1;
            for (plan, we) in &self.plans {
            if *we >= tmin {
                continue;
            }
            plan.for_each_embedding(&host, &[u, v], &mut |images| {
                for t in *we..tmin {
                    if plan.nested_ok(&Partial { t, ..host }, images) {
                        tmin = t;
                        break;
                    }
                }
                tmin <= self.floor
            });
            if tmin <= self.floor {
                break;
            }
        }
        tmin - 1
    }

    /// Degree a vertex needs in any graph reaching `target`: removing it
    /// leaves a free graph on `n - 1` vertices.
    fn degree_need(&self, target: u64) -> u64 {
        target.saturating_sub(self.ex[self.n - 1])
    }

    /// Every finished vertex can still reach the needed degree.
    fn degrees_ok(&self, st: &State, v: usize, target: u64) -> bool {
        let need = self.degree_need(target);
        let open = u64::from(self.k) * (self.n - 1 - v) as u64;
        st.deg[..=v].iter().all(|&d| d + open >= need)
    }

    /// The same test for the two ends of the pair `(u, v)` just set.
    fn pair_degrees_ok(&self, st: &State, u: usize, v: usize, target: u64) -> bool {
        let need = self.degree_need(target);
        let k = u64::from(self.k);
        let later = k * (self.n - 1 - v) as u64;
        st.deg[u] + later >= need && st.deg[v] + later + k * (v - 1 - u) as u64 >= need
    }

    fn leaf(&self, st: &mut State, best: &AtomicU64) {
        let total = st.total;
        match self.mode {
            Mode::AtLeast(l) => {
                best.fetch_max(total, Ordering::Relaxed);
                if total >= l {
                    st.found.insert(st.w.clone());
                }
            }
            Mode::Maximize { witnesses } => {
                let prev = best.fetch_max(total, Ordering::Relaxed);
                if witnesses && total >= prev {
                    if total > prev {
                        st.found.clear();
                    }
                    st.found.insert(st.w.clone());
                }
            }
        }
    }

    fn dfs(&self, st: &mut State, p: usize, best: &AtomicU64, stop: usize, frontier: &mut Vec<Vec<u32>>) {
        st.nodes += 1;
        if p == self.pairs {
            self.leaf(st, best);
            return;
        }
        if p == stop {
            frontier.push(st.w[..p].to_vec());
            return;
        }
        let target = self.target(best.load(Ordering::Relaxed));
        let bound = self.bound(st, p);
        if bound < target {
            return;
        }
        let (u, v) = pair_at(p);
        let closes_vertex = u + 1 == v;
        // The pair-count bound drops by exactly `k - t` at value `t`.
        let b1 = st.total + u64::from(self.k) * (self.pairs - p) as u64;
        let slack = b1.saturating_sub(target);
        let top = self.max_free(&st.w, p);
        for t in (0..=top).rev() {
            if u64::from(self.k - t) > slack {
                break;
            }
            st.w[p] = t;
            st.total += u64::from(t);
            st.deg[u] += u64::from(t);
            st.deg[v] += u64::from(t);
            let mut go = true;
            if self.min_degree {
                let target = self.target(best.load(Ordering::Relaxed));
                go = self.pair_degrees_ok(st, u, v, target);
                if go && closes_vertex {
                    go = self.degrees_ok(st, v, target);
                }
            }
            if go && closes_vertex && self.canonical {
                go = is_canonical(&st.w[..=p], v + 1);
            }
            if go {
                self.dfs(st, p + 1, best, stop, frontier);
            }
            st.w[p] = 0;
            st.total -= u64::from(t);
            st.deg[u] -= u64::from(t);
            st.deg[v] -= u64::from(t);
        }
    }
}

/// Largest pattern order whose automorphisms are listed by brute force.
const MAX_AUT_ORDER: usize = 8;

/// One plan per orbit of oriented pattern edges under the automorphism
/// group: plans in one orbit find the same copies.
fn orbit_plans(h: &Pattern) -> Vec<(EmbedPlan, u32)> {
    let oriented: Vec<(Vertex, Vertex, u32)> = h
        .edges()
        .into_iter()
        .flat_map(|(a, b, w)| [(a, b, w), (b, a, w)])
        .collect();
    let mut keep = vec![true; oriented.len()];
    if h.m() <= MAX_AUT_ORDER {
        let auts: Vec<Vec<Vertex>> = permutations(h.m())
            .into_iter()
            .filter(|p| h.permuted(p) == *h)
            .collect();
        for i in 0..oriented.len() {
            if !keep[i] {
                continue;
            }
            let (a, b, _) = oriented[i];
            for s in &auts {
                let image = (s[a], s[b]);
                if let Some(j) = oriented.iter().position(|&(x, y, _)| (x, y) == image) {
                    if j > i {
                        keep[j] = false;
                    }
                }
            }
        }
    }
    oriented
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((a, b, w), _)| (EmbedPlan::new(h, &[a, b]), w))
        .collect()
}

/// Runs the search; the result is independent of the worker count.
pub(crate) fn run(problem: &Problem<'_>, par: Parallelism) -> Outcome {
    let n = problem.n;
    let h = problem.h;
    let plans = orbit_plans(h);
    let floor = h.edges().iter().map(|e| e.2).min().unwrap_or(0);
    let cap = if n >= 3 {
        problem
            .ex
            .get(n - 1)
            .map_or(u64::MAX, |&e| e * n as u64 / (n as u64 - 2))
    } else {
        u64::MAX
    };
    let engine = Engine {
        n,
        k: problem.k,
        pairs: pair_count(n),
        plans,
        floor,
        free_always: h.h() > u64::from(problem.k) || h.m() > n,
        canonical: problem.canonical,
        min_degree: problem.min_degree,
        mode: problem.mode,
        ex: &problem.ex,
        cap,
    };
    let best = AtomicU64::new(match problem.mode {
        Mode::Maximize { .. } => problem.seed,
        Mode::AtLeast(_) => 0,
    });

    // Sequential expansion to a frontier, then independent subtrees.
    let stop = pair_count(n.min(4)).min(engine.pairs);
    let mut frontier = Vec::new();
    let mut root = State::from_prefix(n, &[]);
    engine.dfs(&mut root, 0, &best, stop, &mut frontier);
    let mut nodes = root.nodes;
    let mut graphs = root.found;

    let results = par::map(par, frontier, |prefix| {
        let mut st = State::from_prefix(n, &prefix);
        let mut unused = Vec::new();
        engine.dfs(&mut st, prefix.len(), &best, usize::MAX, &mut unused);
        (st.found, st.nodes)
    });
    for (found, count) in results {
        nodes += count;
        graphs.extend(found);
    }
    let best = best.load(Ordering::Relaxed);
    if let Mode::Maximize { .. } = problem.mode {
        graphs.retain(|g| g.iter().map(|&x| u64::from(x)).sum::<u64>() == best);
    }
    Outcome { best, graphs, nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_plans(&patterns::complete(4)).len(), 1);
        assert_eq!(orbit_plans(&patterns::cycle(5)).len(), 1);
        assert_eq!(orbit_plans(&patterns::path(4)).len(), 3);
        assert_eq!(orbit_plans(&patterns::star(3)).len(), 2);
    }
}
