use multituran::constructions::{complete_family, turan_family, turan_family_edges};
use multituran::criticality::chromatic_number;
use multituran::friendliness::{is_h_friendly, uniform_host};
use multituran::graph::{pair_count, pairs, symmetric_difference, turan_numbers};
use multituran::rainbow::{find_rainbow_nested, verify_certificate_nested};
use multituran::search::{solve_exact_with, SearchOptions};
use multituran::{patterns, Multigraph, MultiplicityGraph, Parallelism, Pattern};
use proptest::prelude::*;

fn host(max_n: usize, max_k: u32) -> impl Strategy<Value = MultiplicityGraph> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        prop::collection::vec(0..=k, pair_count(n))
            .prop_map(move |w| MultiplicityGraph::from_pair_values(n, k, w).unwrap())
    })
}

/// Host together with a pointwise larger one on the same vertices.
fn host_pair(max_n: usize, max_k: u32) -> impl Strategy<Value = (MultiplicityGraph, MultiplicityGraph)> {
    host(max_n, max_k).prop_flat_map(|g| {
        let k = g.k();
        let w = g.pair_values().to_vec();
        let n = g.order();
        prop::collection::vec(0..=k, w.len()).prop_map(move |extra| {
            let big: Vec<u32> = w.iter().zip(&extra).map(|(&a, &b)| a.max(b)).collect();
            (
                MultiplicityGraph::from_pair_values(n, k, w.clone()).unwrap(),
                MultiplicityGraph::from_pair_values(n, k, big).unwrap(),
            )
        })
    })
}

/// Connected-ish patterns with at least one edge.
fn pattern(max_m: usize, max_mult: u32, max_h: u64) -> impl Strategy<Value = Pattern> {
    (2..=max_m)
        .prop_flat_map(move |m| prop::collection::vec(0..=max_mult, pair_count(m)).prop_map(move |w| (m, w)))
        .prop_filter_map("edge total out of range", move |(m, w)| {
            let total: u64 = w.iter().map(|&x| u64::from(x)).sum();
            if total == 0 || total > max_h {
                return None;
            }
            let p = Pattern::from_pair_values(m, w).ok()?;
            // Isolated vertices only inflate the order.
            (0..m).all(|v| p.degree(v) > 0).then_some(p)
        })
}

fn seq() -> SearchOptions {
    SearchOptions {
        parallelism: Parallelism::sequential(),
        ..SearchOptions::default()
    }
}

fn fast() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(fast())]

    #[test]
    fn degree_sum_is_twice_edge_count(g in host(8, 6)) {
        let sum: u64 = (0..g.order()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn turan_graph_sandwich(n in 1usize..30, parts in 1usize..8) {
        let (t, d) = turan_numbers(n, parts).unwrap();
        // Upper bound (1 - 1/p) n^2 / 2, lower bound from parts of size at most ceil(n/p).
        let p = parts as u64;
        prop_assert!(2 * p * t <= (p - 1) * (n * n) as u64);
        prop_assert!(t >= pair_count(n) as u64 - pair_count(n.div_ceil(parts)) as u64 * parts as u64);
        prop_assert!(n == 0 || d * n as u64 <= 2 * t);
        for k in 1..4u32 {
            let g = turan_family(n, k, parts + 1).unwrap();
            prop_assert_eq!(g.edge_count(), u64::from(k) * t);
            prop_assert_eq!(turan_family_edges(n, k, parts + 1).unwrap(), u64::from(k) * t);
        }
    }

    #[test]
    fn distance_is_a_pseudometric(
        (a, b, c) in (1usize..6, 1u32..4).prop_flat_map(|(n, k)| {
            let g = move || prop::collection::vec(0..=k, pair_count(n))
                .prop_map(move |w| MultiplicityGraph::from_pair_values(n, k, w).unwrap());
            (g(), g(), g())
        })
    ) {
        for iso in [false, true] {
            let ab = symmetric_difference(&a, &b, iso).unwrap();
            prop_assert_eq!(symmetric_difference(&a, &a, iso).unwrap(), 0);
            prop_assert_eq!(ab, symmetric_difference(&b, &a, iso).unwrap());
            let bc = symmetric_difference(&b, &c, iso).unwrap();
            let ac = symmetric_difference(&a, &c, iso).unwrap();
            prop_assert!(ac <= ab + bc);
        }
        prop_assert!(symmetric_difference(&a, &b, true).unwrap() <= symmetric_difference(&a, &b, false).unwrap());
    }

    #[test]
    fn containment_is_monotone_in_the_host(
        (small, big) in host_pair(6, 4),
        h in pattern(4, 2, 6),
    ) {
        let in_small = find_rainbow_nested(&small, &h).unwrap();
        let in_big = find_rainbow_nested(&big, &h).unwrap();
        if let Some(cert) = &in_small {
            prop_assert!(verify_certificate_nested(&small, &h, cert).is_ok());
            prop_assert!(verify_certificate_nested(&big, &h, cert).is_ok());
            prop_assert!(in_big.is_some());
        }
        if let Some(cert) = &in_big {
            prop_assert!(verify_certificate_nested(&big, &h, cert).is_ok());
        }
    }

    #[test]
    fn containment_is_monotone_in_the_pattern(g in host(6, 4), h in pattern(4, 2, 6)) {
        // Dropping one unit of multiplicity can only make the pattern easier to find.
        if find_rainbow_nested(&g, &h).unwrap().is_some() {
            for (u, v) in pairs(h.m()) {
                if let Some(sub) = h.minus_unit(u, v) {
                    if sub.h() > 0 {
                        prop_assert!(find_rainbow_nested(&g, &sub).unwrap().is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn constructions_are_free_when_expected(n in 2usize..7, k in 1u32..6, r in 3usize..5) {
        let kr = patterns::complete(r);
        prop_assert!(find_rainbow_nested(&turan_family(n, k, r).unwrap(), &kr).unwrap().is_none());
        let h = kr.h();
        prop_assert!(find_rainbow_nested(&complete_family(n, h).unwrap(), &kr).unwrap().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_pruning_is_sound(h in pattern(4, 2, 5), n in 2usize..=5, k in 1u32..=4) {
        let on = solve_exact_with(&h, n, k, &seq()).unwrap();
        let off = solve_exact_with(&h, n, k, &SearchOptions { canonical: false, ..seq() }).unwrap();
        let plain = solve_exact_with(&h, n, k, &SearchOptions { min_degree: false, ..seq() }).unwrap();
        prop_assert_eq!(&on, &off);
        prop_assert_eq!(&on, &plain);
        prop_assert!(on.value >= on.lower_bounds.complete_family);
        prop_assert!(on.value <= u64::from(k) * pair_count(n) as u64);
    }

    #[test]
    fn extremal_number_is_monotone(h in pattern(4, 2, 5), n in 2usize..=4, k in 1u32..=3) {
        let ex = |n, k| solve_exact_with(&h, n, k, &SearchOptions { witnesses: false, ..seq() }).unwrap().value;
        let base = ex(n, k);
        prop_assert!(base <= ex(n + 1, k));
        prop_assert!(base <= ex(n, k + 1));
    }

    #[test]
    fn friendliness_is_monotone_in_multiplicity(
        r in 3usize..=4,
        a in 1usize..=2,
        k in 3u32..=5,
        mult in 1u32..=4,
    ) {
        let h = patterns::complete(r);
        prop_assume!(chromatic_number(&h).unwrap() == r && mult < k);
        let (lo, parts) = uniform_host(r - 1, a, mult, k).unwrap();
        let (hi, _) = uniform_host(r - 1, a, mult + 1, k).unwrap();
        let f_lo = is_h_friendly(&lo, &parts, &h, k, Parallelism::sequential()).unwrap();
        let f_hi = is_h_friendly(&hi, &parts, &h, k, Parallelism::sequential()).unwrap();
        prop_assert!(!f_lo.friendly || f_hi.friendly);
    }
}
