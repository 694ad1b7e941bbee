//! Explicit embedding order for an `r`-vertex pattern in `F_r` into a skeleton
//! on `r - 1` vertices plus one attached vertex.

use serde::Serialize;

use crate::criticality::{self, alpha_r, k_star};
use crate::error::{input, Error, Result};
use crate::graph::{pair_index, Multigraph, MultiplicityGraph, Pattern, Vertex};
use crate::rainbow::{order_certificate, verify_certificate_nested, EmbeddingCertificate};
use crate::rational::{self, int, Rational};

/// `b_{j,i} = (i(r-1) - (j-1)) / (i(r-2)) * (h-1)`.
pub fn b_ji(j: usize, i: usize, r: usize, h: u64) -> Rational {
    let (j, i, r) = (j as i64, i as i64, r as i64);
    Rational::new(i * (r - 1) - (j - 1), i * (r - 2)) * int(h as i64 - 1)
}

/// Position of `e_{r,i}` in the schedule.
pub fn m1(i: usize, r: usize) -> i64 {
    let (i, r) = (i as i64, r as i64);
    (i - 1) * (r - 1) - i * (i - 1) / 2 + 1
}

/// Position of `e_{i+2,i}` in the schedule.
pub fn m2(i: usize, r: usize) -> i64 {
    let (i, r) = (i as i64, r as i64);
    i * (r - 1) - i * (i + 1) / 2
}

fn alpha(r: usize) -> Rational {
    alpha_r(r).expect("r >= 3")
}

/// `F_{1,i} = b_{r,i} - (m_{1,i} - 1) alpha_r (h-1)`.
pub fn f1(i: usize, r: usize, h: u64) -> Rational {
    b_ji(r, i, r, h) - int(m1(i, r) - 1) * alpha(r) * int(h as i64 - 1)
}

/// `F_{2,i} = b_{i+2,i} - (m_{2,i} - 1) alpha_r (h-1)`.
pub fn f2(i: usize, r: usize, h: u64) -> Rational {
    b_ji(i + 2, i, r, h) - int(m2(i, r) - 1) * alpha(r) * int(h as i64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrEmbedding {
    /// The skeleton with the attached vertex `r - 1` appended.
    pub host: MultiplicityGraph,
    pub certificate: EmbeddingCertificate,
    /// `(i, F_{1,i})` for `2 <= i <= r-2`.
    #[serde(serialize_with = "fractions")]
    pub f1: Vec<(usize, Rational)>,
    /// `(i, F_{2,i})` for `1 <= i <= r-3`.
    #[serde(serialize_with = "fractions")]
    pub f2: Vec<(usize, Rational)>,
}

fn fractions<S: serde::Serializer>(v: &[(usize, Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (i, q) in v {
        seq.serialize_element(&(i, rational::to_fraction_string(q)))?;
    }
    seq.end()
}

fn check_hypotheses(
    skeleton: &MultiplicityGraph,
    h: &Pattern,
    attach: &[u32],
    k: u32,
) -> Result<()> {
    let r = h.m();
    let hh = h.h();
    let mut bad: Vec<String> = Vec::new();
    if r < 5 {
        return input("the schedule is stated for r >= 5");
    }
    if skeleton.order() != r - 1 || attach.len() != r - 1 {
        return input(format!("skeleton and attachment need {} vertices", r - 1));
    }
    if u64::from(k) < hh {
        bad.push("k >= h".into());
    }
    if skeleton.max_multiplicity() > k || attach.iter().any(|&x| x > k) {
        bad.push("multiplicities must not exceed k".into());
    }
    if !criticality::is_r_color_critical(h, r)? {
        bad.push(format!("pattern must be {r}-color-critical"));
    }
    let cap = alpha(r) * int(hh as i64 - 1);
    if Rational::from_integer(i64::from(h.max_multiplicity())) > cap {
        bad.push("pattern multiplicities must be at most alpha_r (h-1)".into());
    }
    if u64::from(skeleton.multiplicity(0, 1)) < hh {
        bad.push("w(v1 v2) >= h".into());
    }
    // (r-1) * sum >= (j-1) * max((r-1)(h-1), (r-2)k)
    let (r64, k64) = (r as u64, u64::from(k));
    let scaled = ((r64 - 1) * (hh - 1)).max((r64 - 2) * k64);
    for j in 3..r {
        let sum: u64 = (0..j - 1).map(|i| u64::from(skeleton.multiplicity(i, j - 1))).sum();
        if (r64 - 1) * sum < (j as u64 - 1) * scaled {
            bad.push(format!("degree condition at v{j}"));
        }
    }
    let total: u64 = attach.iter().map(|&x| u64::from(x)).sum();
    let kstar = k_star(r, hh).expect("r >= 5");
    let need = Rational::from_integer(k as i64).max(kstar) * int(r as i64 - 2);
    if Rational::from_integer(total as i64) < need {
        bad.push("attachment degree >= (r-2) max(k, k*)".into());
    }
    if attach.contains(&0) {
        bad.push("attachment must touch every skeleton vertex".into());
    }
    if bad.is_empty() {
        Ok(())
    } else {
        input(format!("hypotheses violated: {}", bad.join("; ")))
    }
}

/// Builds the explicit schedule: the pairs at each vertex `v_j` are sorted by
/// multiplicity into `e_{j,1} <= ... <= e_{j,j-1}` and listed column by
/// column, the critical edge of `h` going to `e_{r,1}`.
pub fn fr_embedding_order(
    skeleton: &MultiplicityGraph,
    h: &Pattern,
    attach: &[u32],
    k: u32,
) -> Result<FrEmbedding> {
    check_hypotheses(skeleton, h, attach, k)?;
    let r = h.m();
    let hh = h.h();
    let f1s: Vec<_> = (2..=r - 2).map(|i| (i, f1(i, r, hh))).collect();
    let f2s: Vec<_> = (1..=r - 3).map(|i| (i, f2(i, r, hh))).collect();
    let zero = int(0);
    if let Some((i, q)) = f1s.iter().find(|(_, q)| *q <= zero) {
        return Err(Error::Internal(format!("F_1,{i} = {q} is not positive")));
    }
    if let Some((i, q)) = f2s.iter().find(|(_, q)| *q < zero) {
        return Err(Error::Internal(format!("F_2,{i} = {q} is negative")));
    }
    if b_ji(r - 1, 1, r, hh) <= alpha(r) * int(hh as i64 - 1) {
        return Err(Error::Internal("b_{r-1,1} does not exceed alpha_r (h-1)".into()));
    }

    let top = r - 1;
    let host = MultiplicityGraph::from_fn(r, k, |u, v| {
        if v == top {
            attach[u]
        } else {
            skeleton.multiplicity(u, v)
        }
    })?;
    // e[j][i-1] = e_{j,i} (1-based j), as host pairs (lower, upper).
    let mut e: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); r + 1];
    for (j, col) in e.iter_mut().enumerate().skip(2) {
        let mut lower: Vec<Vertex> = (0..j - 1).collect();
        lower.sort_by_key(|&i| (host.multiplicity(i, j - 1), i));
        *col = lower.into_iter().map(|i| (i, j - 1)).collect();
    }
    let mut schedule = Vec::with_capacity(r * (r - 1) / 2);
    for i in 1..=r - 2 {
        for j in (i + 2..=r).rev() {
            schedule.push(e[j][i - 1]);
        }
    }
    for j in (2..=r).rev() {
        schedule.push(e[j][j - 2]);
    }

    let (x, y) = criticality::critical_edges(h)?
        .first()
        .copied()
        .ok_or_else(|| Error::Internal("pattern in F_r without a critical edge".into()))?;
    let first = schedule[0];
    let mut phi = vec![usize::MAX; r];
    phi[x] = first.1;
    phi[y] = first.0;
    let mut spare = (0..r).filter(|v| *v != first.0 && *v != first.1);
    for slot in phi.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = spare.next().expect("bijection");
    }
    let mut inverse = vec![0; r];
    for (xv, &v) in phi.iter().enumerate() {
        inverse[v] = xv;
    }
    let order: Vec<(Vertex, Vertex)> = schedule
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (inverse[u], inverse[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    debug_assert_eq!(pair_index(order[0].0, order[0].1), pair_index(x.min(y), x.max(y)));
    let certificate = order_certificate(h, phi, order);
    if let Err(why) = verify_certificate_nested(&host, h, &certificate) {
        return Err(Error::Internal(format!("schedule is not a proper order: {why}")));
    }
    Ok(FrEmbedding {
        host,
        certificate,
        f1: f1s,
        f2: f2s,
    })
}
