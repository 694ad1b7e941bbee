//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use multituran::canon::canonical_pattern;
use multituran::constructions::{complete_family, hybrid_family, turan_family};
use multituran::criticality::{chromatic_number, critical_edges, k_star, reduce_minmax};
use multituran::friendliness::{b_ji, embed_4cc, f1, f2, Embed4cc};
use multituran::friendliness::four_cc_hypothesis_violations;
use multituran::graph::{pair_count, MultiplicityGraph, Pattern};
use multituran::nesting::from_multiplicity;
use multituran::patterns;
use multituran::rainbow::{find_rainbow, find_rainbow_nested, verify_certificate};
use multituran::rational::{int, rat};
use multituran::search::brute::explicit_extremal;
use multituran::search::{
    census, solve_exact_with, stability_probe, verify_goodness_formula, SearchOptions, Verdict,
};
use multituran::Parallelism;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts(canonical: bool, threads: usize) -> SearchOptions {
    SearchOptions {
        canonical,
        witnesses: true,
        min_degree: true,
        parallelism: if threads == 1 {
            Parallelism::sequential()
        } else {
            Parallelism::threads(threads)
        },
    }
}

fn degenerate_regime() -> Outcome {
    let mut runs = 0;
    for h in [patterns::complete(3), patterns::cycle(5), patterns::complete(4)] {
        for n in 1..=5 {
            for k in 1..h.h() as u32 {
                let rep = solve_exact_with(&h, n, k, &opts(true, 1)).map_err(|e| e.to_string())?;
                let want = u64::from(k) * pair_count(n) as u64;
                ensure(rep.value == want, || format!("{} n={n} k={k}: {} != {want}", rep.pattern_id, rep.value))?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} instances"))
}

/// Multigraph patterns on `2..=max_m` vertices with total multiplicity at
/// most `max_h`, one per isomorphism class.
fn small_patterns(max_m: usize, max_h: u32) -> Vec<Pattern> {
    fn go(w: &mut Vec<u32>, len: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if w.len() == len {
            out.push(w.clone());
            return;
        }
        for x in 0..=left {
            w.push(x);
            go(w, len, left - x, out);
            w.pop();
        }
    }
    let mut seen = BTreeSet::new();
    let mut result = Vec::new();
    for m in 2..=max_m {
        let mut all = Vec::new();
        go(&mut Vec::new(), pair_count(m), max_h, &mut all);
        for w in all {
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            let p = canonical_pattern(&Pattern::from_pair_values(m, w).unwrap());
            if seen.insert((m, p.pair_values().to_vec())) {
                result.push(p);
            }
        }
    }
    result
}

fn construction_freeness() -> Outcome {
    let mut checks = 0;
    let mut critical = 0;
    for h in small_patterns(4, 6) {
        if critical_edges(&h).unwrap().is_empty() {
            continue;
        }
        critical += 1;
        let r = chromatic_number(&h).unwrap();
        for n in 1..=7 {
            let g = complete_family(n, h.h()).unwrap();
            ensure(find_rainbow_nested(&g, &h).unwrap().is_none(), || format!("(h-1)K_{n} contains {h:?}"))?;
            checks += 1;
            for k in 1..=7 {
                let g = turan_family(n, k, r).unwrap();
                ensure(find_rainbow_nested(&g, &h).unwrap().is_none(), || {
                    format!("{k}T_{}({n}) contains {h:?}", r - 1)
                })?;
                checks += 1;
            }
        }
    }
    let tt = patterns::two_triangles();
    for n in 1..=7 {
        for k in 1..=7 {
            let g = hybrid_family(n, k, 3).unwrap();
            ensure(find_rainbow_nested(&g, &tt).unwrap().is_none(), || format!("hybrid n={n} k={k} contains 2K3"))?;
            checks += 1;
        }
    }
    Ok(format!("{critical} critical patterns, {checks} hosts"))
}

fn random_pattern(rng: &mut impl Rng) -> Pattern {
    loop {
        let m = rng.gen_range(2..=4);
        let total = rng.gen_range(1..=6u32);
        let mut w = vec![0u32; pair_count(m)];
        for _ in 0..total {
            let i = rng.gen_range(0..w.len());
            w[i] += 1;
        }
        if let Ok(p) = Pattern::from_pair_values(m, w) {
            return p;
        }
    }
}

fn nested_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut found = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=5u32);
        let g = MultiplicityGraph::from_fn(n, k, |_, _| {
            if rng.gen_bool(0.2) {
                0
            } else {
                rng.gen_range(1..=k)
            }
        })
        .unwrap();
        let h = random_pattern(&mut rng);
        let nested = find_rainbow_nested(&g, &h).unwrap();
        let explicit_host = from_multiplicity(&g);
        let explicit = find_rainbow(&explicit_host, &h);
        ensure(nested.is_some() == explicit.is_some(), || {
            format!("trial {trial}: prefix {} vs matching {}", nested.is_some(), explicit.is_some())
        })?;
        for cert in nested.iter().chain(explicit.iter()) {
            verify_certificate(&explicit_host, &h, cert).map_err(|e| format!("trial {trial}: {e}"))?;
        }
        found += usize::from(nested.is_some());
    }
    Ok(format!("1000 trials, {found} contain a copy"))
}

fn explicit_vs_nested() -> Outcome {
    let mut runs = 0;
    for (name, h) in [("K3", patterns::complete(3)), ("P3", patterns::path(3))] {
        for n in 2..=4 {
            for k in 1..=3 {
                let brute = explicit_extremal(&h, n, k).unwrap();
                let fast = solve_exact_with(&h, n, k, &opts(true, 1)).unwrap().value;
                ensure(brute == fast, || format!("{name} n={n} k={k}: explicit {brute} vs nested {fast}"))?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} instances"))
}

/// Host pair values `[a, b1, b2, c1, c2, c3]` near the hypothesis boundary.
fn boundary_profiles(x: &[u32], hh: u32) -> Vec<(u32, [u32; 6])> {
    let half = hh / 2;
    let h5 = x[5];
    let quarter = (3 * hh - 3).div_ceil(4);
    let mut out = BTreeSet::new();
    for k in [hh, hh + 1, hh + 3] {
        let clamp = |v: u32| v.clamp(1, k);
        let a_vals = [hh, k];
        let b1_vals: BTreeSet<u32> = [half, half + 1, h5, h5 + 1, k].into_iter().map(clamp).collect();
        let b2_vals = [hh - 1, hh, k];
        let c_vals: BTreeSet<u32> = [1, quarter, quarter + 1, hh - 1, hh, k].into_iter().map(clamp).collect();
        for &a in &a_vals {
            for &b1 in &b1_vals {
                for &b2 in &b2_vals {
                    for &c1 in &c_vals {
                        for &c2 in &c_vals {
                            for &c3 in &c_vals {
                                out.insert((k, [a, b1, b2, c1, c2, c3]));
                            }
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn four_vertex_schedule() -> Outcome {
    let mut patterns_seen = 0;
    let mut certificates = 0;
    let mut exceptional = 0;
    let mut min_profiles = usize::MAX;
    let mut rest = Vec::new();
    fn comps(w: &mut Vec<u32>, left: u32, out: &mut Vec<Vec<u32>>) {
        if w.len() == 5 {
            out.push(w.clone());
            return;
        }
        for x in 1..=left {
            w.push(x);
            comps(w, left - x, out);
            w.pop();
        }
    }
    comps(&mut Vec::new(), 7, &mut rest);
    for tail in rest {
        let mut x = vec![1];
        x.extend(tail);
        let hh: u32 = x.iter().sum();
        let h = Pattern::from_pair_values(4, x.clone()).unwrap();
        patterns_seen += 1;
        let mut profiles = 0;
        for (k, p) in boundary_profiles(&x, hh) {
            let g0 = MultiplicityGraph::from_pair_values(4, k, p.to_vec()).unwrap();
            if !four_cc_hypothesis_violations(&g0, &h, k).is_empty() {
                continue;
            }
            profiles += 1;
            match embed_4cc(&g0, &h, k) {
                Ok(Embed4cc::Certificate { certificate, case }) => {
                    let colored = from_multiplicity(&g0);
                    verify_certificate(&colored, &h, &certificate)
                        .map_err(|e| format!("x={x:?} g0={p:?} k={k} case {case:?}: {e}"))?;
                    ensure(find_rainbow(&colored, &h).is_some(), || {
                        format!("x={x:?} g0={p:?} k={k}: matching search disagrees with the schedule")
                    })?;
                    certificates += 1;
                }
                Ok(Embed4cc::Exceptional) => {
                    ensure(x[5] >= p[1], || format!("x={x:?} g0={p:?}: exceptional with h5 < b1"))?;
                    exceptional += 1;
                }
                Err(e) => return Err(format!("x={x:?} g0={p:?} k={k}: {e}")),
            }
        }
        min_profiles = min_profiles.min(profiles);
    }
    ensure(min_profiles >= 500, || format!("only {min_profiles} profiles for some pattern"))?;
    Ok(format!(
        "{patterns_seen} patterns, >= {min_profiles} profiles each, {certificates} certificates, {exceptional} exceptional"
    ))
}

fn schedule_identities() -> Outcome {
    let mut checks = 0;
    for r in 5..=9usize {
        let base = (r * (r - 1) / 2) as u64;
        for h in base..=base + 10 {
            for j in 3..=r {
                ensure(b_ji(j, j - 1, r, h) == int(h as i64 - 1), || format!("b_{j},{} r={r} h={h}", j - 1))?;
                checks += 1;
            }
            for i in 2..=r - 2 {
                ensure(f1(i, r, h) > int(0), || format!("F1 i={i} r={r} h={h}"))?;
                checks += 1;
            }
            for i in 1..=r - 3 {
                ensure(f2(i, r, h) >= int(0), || format!("F2 i={i} r={r} h={h}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact comparisons"))
}

fn criticality_identities() -> Outcome {
    for r in 3..=10usize {
        let h = (r * (r - 1) / 2) as u64;
        let want = rat((r * r - 1) as i64, 2);
        ensure(k_star(r, h) == Some(want), || format!("k*(K_{r}) = {:?}", k_star(r, h)))?;
    }
    let k4 = reduce_minmax(&patterns::complete(4)).unwrap();
    ensure(k4.max_mult == Some(1), || format!("K4 max multiplicity {:?}", k4.max_mult))?;
    let reduced = k4.reduced.ok_or("K4 has no reduction")?;
    ensure(canonical_pattern(&reduced) == canonical_pattern(&patterns::complete(4)), || {
        format!("K4 reduces to {reduced:?}")
    })?;
    let tt = reduce_minmax(&patterns::two_triangles()).unwrap();
    ensure(!tt.is_color_critical, || "2K3 reported color-critical".into())?;
    Ok("k* for r = 3..10, K4, 2K3".into())
}

fn census_sanity() -> Outcome {
    let rep = census(3, 6, 0, 0, Parallelism::available()).map_err(|e| e.to_string())?;
    let first = &rep.rows[0];
    ensure(first.s == 3 && first.critical.labeled == 1, || format!("s=3 row {first:?}"))?;
    for row in &rep.rows {
        ensure(row.reduction_consistent == row.critical, || format!("s={} reduction mismatch {row:?}", row.s))?;
    }
    let fr: Vec<String> = rep
        .rows
        .iter()
        .map(|r| format!("{}:{}", r.s, r.critical.labeled))
        .collect();
    Ok(format!("critical labeled counts {}", fr.join(" ")))
}

fn determinism_suite() -> Vec<(Pattern, usize, u32)> {
    let k3 = patterns::complete(3);
    let c5 = patterns::cycle(5);
    let k4 = patterns::complete(4);
    let p3 = patterns::path(3);
    let c4 = patterns::cycle(4);
    let star = patterns::star(3);
    vec![
        (k3.clone(), 4, 3),
        (k3.clone(), 5, 3),
        (k3.clone(), 5, 4),
        (k3.clone(), 5, 5),
        (k3.clone(), 6, 4),
        (k3, 6, 3),
        (c5.clone(), 5, 5),
        (c5.clone(), 5, 6),
        (c5, 6, 5),
        (k4.clone(), 4, 6),
        (k4.clone(), 5, 6),
        (k4, 5, 7),
        (p3.clone(), 4, 2),
        (p3.clone(), 5, 3),
        (p3, 5, 4),
        (c4.clone(), 4, 4),
        (c4.clone(), 5, 4),
        (c4, 5, 5),
        (star.clone(), 5, 3),
        (star, 5, 4),
    ]
}

fn determinism() -> Outcome {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let mut witnesses = 0;
    for (h, n, k) in determinism_suite() {
        let base = solve_exact_with(&h, n, k, &opts(true, 1)).map_err(|e| e.to_string())?;
        for (canonical, t, min_degree) in [(true, threads, true), (false, 1, true), (false, threads, true), (true, 1, false)] {
            let o = SearchOptions { min_degree, ..opts(canonical, t) };
            let other = solve_exact_with(&h, n, k, &o).map_err(|e| e.to_string())?;
            ensure(other == base, || {
                format!("{} n={n} k={k} canonical={canonical} threads={t} min_degree={min_degree} differs", base.pattern_id)
            })?;
        }
        witnesses += base.witnesses.len();
    }
    Ok(format!("20 instances x 5 configurations, {witnesses} witness classes"))
}

fn stability_closure() -> Outcome {
    let c5c = reduce_minmax(&patterns::cycle(5)).unwrap().reduced.unwrap();
    let mut matched = 0;
    let mut probed = 0;
    for h in [patterns::complete(3), c5c, patterns::complete(4)] {
        for n in h.m()..=5 {
            for k in h.h() as u32..=6 {
                let good = verify_goodness_formula(&h, n, k, &opts(true, 0)).map_err(|e| e.to_string())?;
                probed += 1;
                if good.verdict != Verdict::Match {
                    continue;
                }
                matched += 1;
                let rep = stability_probe(&h, n, k, int(0), Parallelism::available()).map_err(|e| e.to_string())?;
                ensure(!rep.witnesses.is_empty(), || format!("no witness for n={n} k={k}"))?;
                for w in &rep.witnesses {
                    ensure(w.distance() == 0, || format!("n={n} k={k}: witness at distance {}", w.distance()))?;
                }
            }
        }
    }
    ensure(matched > 0, || "no instance matched the formula".into())?;
    Ok(format!("{matched} of {probed} instances match and probe cleanly"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("degenerate regime exactness", degenerate_regime),
        ("construction freeness", construction_freeness),
        ("prefix criterion equals matching", nested_equivalence),
        ("explicit colorings equal nested search", explicit_vs_nested),
        ("four-vertex schedule differential", four_vertex_schedule),
        ("schedule arithmetic identities", schedule_identities),
        ("criticality identities", criticality_identities),
        ("census sanity", census_sanity),
        ("search determinism and pruning soundness", determinism),
        ("stability probe closure", stability_closure),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
