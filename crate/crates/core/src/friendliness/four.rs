//! The case analysis embedding a 4-vertex 4-color-critical pattern into a
//! 4-vertex host with prescribed multiplicity lower bounds.
//!
//! Host pairs in index order are `a = v1v2, b1 = v1v3, b2 = v2v3, c1 = v1v4,
//! c2 = v2v4, c3 = v3v4`; pattern pairs are `I = x1x2, h1 = x1x3, h2 = x2x3,
//! h3 = x1x4, h4 = x2x4, h5 = x3x4`. Vertex `v_i` / `x_i` is index `i - 1`.

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::graph::{pair_at, Multigraph, MultiplicityGraph, Pattern, Vertex};
use crate::rainbow::{order_certificate, verify_certificate_nested, EmbeddingCertificate};

const A: usize = 0;
const B1: usize = 1;
const B2: usize = 2;
const C1: usize = 3;
const C2: usize = 4;
const C3: usize = 5;
const I: usize = 0;
const H5: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FourCcCase {
    /// Every `h_i` below `(h-1)/2`, lightest `c` not `c2`.
    #[serde(rename = "1-(1)")]
    Light1,
    #[serde(rename = "1-(2)")]
    Light2,
    /// Some edge at `I` carries at least `(h-1)/2`.
    #[serde(rename = "2")]
    HeavyAtCritical,
    #[serde(rename = "3-(1)")]
    HeavyOpposite1,
    #[serde(rename = "3-(2)")]
    HeavyOpposite2,
    /// The case that replaces the fixed host order.
    #[serde(rename = "3-(3)")]
    HeavyOpposite3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Embed4cc {
    Certificate {
        case: FourCcCase,
        certificate: EmbeddingCertificate,
    },
    /// `h5 >= b1`: no case applies.
    Exceptional,
}

/// Lists the violated hypotheses; empty when all hold.
pub fn hypothesis_violations(g0: &MultiplicityGraph, h: &Pattern, k: u32) -> Vec<String> {
    let mut bad = Vec::new();
    if g0.order() != 4 || h.m() != 4 {
        bad.push("host and pattern must have 4 vertices".to_string());
        return bad;
    }
    let x = h.pair_values();
    if x[I] != 1 {
        bad.push("pattern pair x1x2 must have multiplicity 1".into());
    }
    if x.contains(&0) {
        bad.push("every pattern pair must be an edge".into());
    }
    let g = g0.pair_values();
    let hh = h.h() as i64;
    let k = i64::from(k);
    let val = |i: usize| i64::from(g[i]);
    if g.iter().any(|&m| i64::from(m) > k) {
        bad.push("host multiplicities must not exceed k".into());
    }
    if k < hh {
        bad.push("k >= h".into());
    }
    if val(A) < hh {
        bad.push("a >= h".into());
    }
    if 2 * val(B1) < hh - 1 {
        bad.push("b1 >= (h-1)/2".into());
    }
    if val(B2) < hh - 1 {
        bad.push("b2 >= h-1".into());
    }
    let mut c = [val(C1), val(C2), val(C3)];
    if c.iter().sum::<i64>() < (3 * hh - 3).max(2 * k) {
        bad.push("c1+c2+c3 >= max(3h-3, 2k)".into());
    }
    c.sort_unstable();
    if c[0] < 1 {
        bad.push("min c >= 1".into());
    }
    if 4 * c[1] < 3 * hh - 3 {
        bad.push("second smallest c >= (3h-3)/4".into());
    }
    if c[2] < hh - 1 {
        bad.push("max c >= h-1".into());
    }
    bad
}

fn shared(p: (Vertex, Vertex), q: (Vertex, Vertex)) -> Option<Vertex> {
    [p.0, p.1].into_iter().find(|&v| v == q.0 || v == q.1)
}

fn other(p: (Vertex, Vertex), v: Vertex) -> Vertex {
    if p.0 == v {
        p.1
    } else {
        p.0
    }
}

/// The unique injection sending pattern pair `I` to host pair `f1` and the
/// incident pattern pair `e` to the incident host pair `f`.
fn anchored_map(f1: usize, e: usize, f: usize) -> Result<Vec<Vertex>> {
    let (ei, ej, fi, fj) = (pair_at(I), pair_at(e), pair_at(f1), pair_at(f));
    let (Some(sh), Some(sg)) = (shared(ei, ej), shared(fi, fj)) else {
        return Err(Error::Internal(format!("pairs {e} and {f} are not anchored at I and {f1}")));
    };
    let mut phi = vec![usize::MAX; 4];
    phi[sh] = sg;
    phi[other(ei, sh)] = other(fi, sg);
    phi[other(ej, sh)] = other(fj, sg);
    let free_x = (0..4).find(|&x| phi[x] == usize::MAX).expect("one vertex left");
    let free_v = (0..4).find(|v| !phi.contains(v)).expect("one vertex left");
    phi[free_x] = free_v;
    Ok(phi)
}

/// Follows the case analysis and returns an embedding order, or
/// `Exceptional` when `h5 >= b1`. Every certificate is checked before it is
/// returned.
pub fn embed_4cc(g0: &MultiplicityGraph, h: &Pattern, k: u32) -> Result<Embed4cc> {
    let bad = hypothesis_violations(g0, h, k);
    if !bad.is_empty() {
        return input(format!("hypotheses violated: {}", bad.join("; ")));
    }
    let x = h.pair_values();
    let g = g0.pair_values();
    let hh = h.h() as i64;
    let xv = |i: usize| i64::from(x[i]);

    let mut cs = [C1, C2, C3];
    cs.sort_by_key(|&i| (g[i], i));
    let [cmin, c2nd, cmax] = cs;
    let fixed = [cmin, B1, c2nd, cmax, B2, A];

    let side = [1, 2, 3, 4];
    let hmin = *side.iter().min_by_key(|&&i| (x[i], i)).unwrap();
    let hmax = *side.iter().max_by_key(|&&i| (x[i], std::cmp::Reverse(i))).unwrap();

    // (case, host order, anchored position, pattern pair placed there)
    let (case, f, pos, e) = if (1..=5).all(|i| 2 * xv(i) < hh - 1) {
        if cmin != C2 {
            (FourCcCase::Light1, fixed, 1, hmin)
        } else {
            (FourCcCase::Light2, fixed, 2, hmin)
        }
    } else if 2 * xv(hmax) >= hh - 1 {
        if cmin != C3 {
            (FourCcCase::HeavyAtCritical, fixed, 5, hmax)
        } else {
            (FourCcCase::HeavyAtCritical, fixed, 4, hmax)
        }
    } else if 2 * xv(H5) >= hh - 1 && g[B1] > x[H5] {
        if cmin != C2 {
            (FourCcCase::HeavyOpposite1, fixed, 1, hmin)
        } else if i64::from(g[c2nd]) > xv(hmin) + xv(H5) {
            (FourCcCase::HeavyOpposite2, fixed, 2, hmin)
        } else {
            (FourCcCase::HeavyOpposite3, [c2nd, B1, cmin, cmax, B2, A], 1, hmin)
        }
    } else {
        return Ok(Embed4cc::Exceptional);
    };

    let phi = anchored_map(f[0], e, f[pos])?;
    let mut inverse = [0usize; 4];
    for (xv, &v) in phi.iter().enumerate() {
        inverse[v] = xv;
    }
    let order: Vec<(Vertex, Vertex)> = f
        .iter()
        .map(|&p| {
            let (u, v) = pair_at(p);
            let (a, b) = (inverse[u], inverse[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    let certificate = order_certificate(h, phi, order);
    if let Err(why) = verify_certificate_nested(g0, h, &certificate) {
        return Err(Error::Internal(format!("case {case:?} produced an improper order: {why}")));
    }
    Ok(Embed4cc::Certificate { case, certificate })
}
