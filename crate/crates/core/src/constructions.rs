//! The extremal candidate families, in nested form, with their edge counts.
//!
//! Vertex `i` of a Turán layer lies in part `i mod (r - 1)`.

use crate::error::{input, Result};
use crate::graph::{pair_count, turan_numbers, MultiplicityGraph, Pattern};
use crate::rainbow::find_rainbow_nested;

fn parts_for(r: usize) -> Result<usize> {
    if r < 2 {
        return input(format!("r must be at least 2, got {r}"));
    }
    Ok(r - 1)
}

fn same_part(u: usize, v: usize, parts: usize) -> bool {
    u % parts == v % parts
}

/// `(h-1) K_n`: every pair has multiplicity `h - 1`; the color budget is
/// `h - 1` as well.
pub fn complete_family(n: usize, h: u64) -> Result<MultiplicityGraph> {
    if h == 0 {
        return input("h must be at least 1");
    }
    let s = u32::try_from(h - 1).map_err(|_| crate::Error::Input("h too large".into()))?;
    MultiplicityGraph::complete(n, s, s)
}

/// `k T_{r-1}(n)`.
pub fn turan_family(n: usize, k: u32, r: usize) -> Result<MultiplicityGraph> {
    mixed_family(n, k, r, 1)
}

/// `k - 1` copies of `T_{r-1}(n)` plus one `K_n`.
pub fn hybrid_family(n: usize, k: u32, r: usize) -> Result<MultiplicityGraph> {
    if k == 0 {
        return input("k must be at least 1");
    }
    let parts = parts_for(r)?;
    MultiplicityGraph::from_fn(n, k, |u, v| if same_part(u, v, parts) { 1 } else { k })
}

/// `(m_cut - 1) K_n` plus `(k - m_cut + 1) T_{r-1}(n)`.
pub fn mixed_family(n: usize, k: u32, r: usize, m_cut: u32) -> Result<MultiplicityGraph> {
    if k == 0 {
        return input("k must be at least 1");
    }
    if m_cut == 0 || m_cut > k {
        return input(format!("m_cut must lie in 1..={k}, got {m_cut}"));
    }
    let parts = parts_for(r)?;
    MultiplicityGraph::from_fn(n, k, |u, v| {
        if same_part(u, v, parts) {
            m_cut - 1
        } else {
            k
        }
    })
}

pub fn complete_family_edges(n: usize, h: u64) -> u64 {
    h.saturating_sub(1) * pair_count(n) as u64
}

pub fn turan_family_edges(n: usize, k: u32, r: usize) -> Result<u64> {
    Ok(u64::from(k) * turan_numbers(n, parts_for(r)?)?.0)
}

pub fn hybrid_family_edges(n: usize, k: u32, r: usize) -> Result<u64> {
    Ok(u64::from(k.saturating_sub(1)) * turan_numbers(n, parts_for(r)?)?.0 + pair_count(n) as u64)
}

pub fn mixed_family_edges(n: usize, k: u32, r: usize, m_cut: u32) -> Result<u64> {
    let t = turan_numbers(n, parts_for(r)?)?.0;
    Ok(u64::from(m_cut - 1) * pair_count(n) as u64 + u64::from(k - m_cut + 1) * t)
}

/// Freeness hook: `true` when `g` has no multicolored copy of `h`.
pub fn is_free(g: &MultiplicityGraph, h: &Pattern) -> Result<bool> {
    Ok(find_rainbow_nested(g, h)?.is_none())
}
