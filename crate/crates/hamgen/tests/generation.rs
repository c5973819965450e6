//! Generator-level properties: completeness against the brute-force
//! census, isomorph-freeness, filter exactness, split determinism, and the
//! structural invariants maintained along the search.

mod common;

use std::collections::HashSet;

use hamgen::canon::canonical_form;
use hamgen::generate::{generate, generate_parallel, split, GenConfig, GenMode, HamAnchor};
use hamgen::graph::{DegreeProfile, Graph};
use hamgen::hamilton;
use hamgen::planarity;
use hamgen::verify::{census_by_hc, connected_cubic_graphs, run_suite, Suite};

fn forms(cfg: &GenConfig) -> HashSet<Vec<u8>> {
    let mut out = HashSet::new();
    generate(cfg, |g| {
        assert!(out.insert(canonical_form(g)), "duplicate emitted: {g:?}");
    })
    .unwrap();
    out
}

#[test]
fn completeness_oracle_all_modes_to_order_six() {
    let report = run_suite(Suite::Oracle, Some(6));
    assert!(report.passed(), "{}", report.render());
}

#[test]
fn no_isomorphs_in_any_mode_order_eight() {
    for mode in [
        GenMode::ExactlyOne,
        GenMode::AtMost(3),
        GenMode::NonHamiltonian,
        GenMode::Unrestricted,
    ] {
        let n = if matches!(mode, GenMode::Unrestricted) {
            7
        } else {
            8
        };
        forms(&GenConfig::new(n, mode)); // panics inside on duplicates
    }
}

#[test]
fn anchor_cycle_is_preserved_and_unique() {
    let n = 7;
    let anchor = HamAnchor::canonical(n);
    generate(&GenConfig::new(n, GenMode::ExactlyOne), |g| {
        for v in 0..n {
            assert!(g.has_edge(v, (v + 1) % n), "anchor edge missing");
        }
        let r = hamilton::count_hc(g, 2);
        assert_eq!((r.count, r.saturated), (1, false));
        let _ = &anchor;
    })
    .unwrap();
}

#[test]
fn at_most_mode_nests_by_budget() {
    let by_budget: Vec<HashSet<Vec<u8>>> = (1..=4)
        .map(|k| forms(&GenConfig::new(7, GenMode::AtMost(k))))
        .collect();
    for w in by_budget.windows(2) {
        assert!(w[0].is_subset(&w[1]));
    }
    // Budget 1 equals the exactly-one family.
    assert_eq!(by_budget[0], forms(&GenConfig::new(7, GenMode::ExactlyOne)));
}

#[test]
fn girth_filter_equals_post_filtering() {
    for girth in [4, 5] {
        let mut cfg = GenConfig::new(8, GenMode::ExactlyOne);
        cfg.girth_min = Some(girth);
        let restricted = forms(&cfg);
        let mut post = HashSet::new();
        generate(&GenConfig::new(8, GenMode::ExactlyOne), |g| {
            if g.girth().is_none_or(|c| c >= girth) {
                post.insert(canonical_form(g));
            }
        })
        .unwrap();
        assert_eq!(restricted, post, "girth {girth}");
        for f in &restricted {
            let g = hamgen::graph6::decode(f).unwrap();
            assert!(g.girth().unwrap() >= girth);
        }
    }
}

#[test]
fn planarity_filter_equals_post_filtering() {
    for (n, mode) in [(8, GenMode::ExactlyOne), (7, GenMode::NonHamiltonian)] {
        let mut cfg = GenConfig::new(n, mode);
        cfg.planar_only = true;
        let restricted = forms(&cfg);
        let mut post = HashSet::new();
        generate(&GenConfig::new(n, mode), |g| {
            if planarity::is_planar(g) {
                post.insert(canonical_form(g));
            }
        })
        .unwrap();
        assert_eq!(restricted, post, "{mode:?}");
    }
}

#[test]
fn nearly_cubic_prune_equals_post_filtering() {
    let mut pruned = GenConfig::new(8, GenMode::Unrestricted);
    pruned.nearly_cubic = true;
    let fast = forms(&pruned);
    let mut plain = GenConfig::new(8, GenMode::Unrestricted);
    plain.filters.degree_profile = Some(DegreeProfile::nearly_cubic(8));
    assert_eq!(fast, forms(&plain));
    assert!(!fast.is_empty());
}

#[test]
fn split_shares_are_disjoint_and_complete() {
    let base = GenConfig::new(8, GenMode::ExactlyOne);
    let whole = forms(&base);
    assert_eq!(whole.len(), 482);
    for modulus in [1u64, 2, 4, 8] {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        for res in 0..modulus {
            let share = split(&base, res, modulus).unwrap();
            let part = forms(&share);
            for f in part {
                assert!(seen.insert(f), "overlap at modulus {modulus}");
            }
        }
        assert_eq!(seen, whole, "union at modulus {modulus}");
    }
}

#[test]
fn split_composition_refines_shares() {
    let base = GenConfig::new(8, GenMode::NonHamiltonian);
    let whole = forms(&base);
    let half = split(&base, 1, 2).unwrap();
    let q1 = forms(&split(&half, 0, 2).unwrap());
    let q3 = forms(&split(&half, 1, 2).unwrap());
    let direct1 = forms(&split(&base, 1, 4).unwrap());
    let direct3 = forms(&split(&base, 3, 4).unwrap());
    assert_eq!(q1, direct1);
    assert_eq!(q3, direct3);
    assert!(q1.is_subset(&whole));
}

#[test]
fn stats_are_deterministic_and_split_invariant() {
    let mut cfg = GenConfig::new(8, GenMode::NonHamiltonian);
    cfg.filters.connected = true;
    let a = generate(&cfg, |_| {}).unwrap();
    let b = generate(&cfg, |_| {}).unwrap();
    assert_eq!(a, b);
    for workers in [2, 3, 5] {
        let par = generate_parallel(&cfg, workers, |_| |_: &Graph| {}).unwrap();
        assert_eq!(par.emitted, a.emitted, "workers {workers}");
    }
}

#[test]
fn census_matches_generated_counts_per_cycle_class() {
    // Count-by-h from generation: one at-most run classifies everything.
    let n = 6;
    let census = census_by_hc(n);
    let mut cfg = GenConfig::new(n, GenMode::AtMost(3));
    cfg.filters.connected = true;
    let mut got = [0u64; 4];
    generate(&cfg, |g| {
        let h = hamilton::count_hc(g, 4).count;
        if h <= 3 {
            got[h as usize] += 1;
        }
    })
    .unwrap();
    for h in 1..=3u64 {
        let want = census
            .iter()
            .filter(|(form, &hh)| hh == h && hamgen::graph6::decode(form).unwrap().is_connected())
            .count() as u64;
        assert_eq!(got[h as usize], want, "class h={h}");
    }
}

#[test]
fn thomason_parity_on_small_cubic_graphs() {
    for n in (4..=10).step_by(2) {
        for g in connected_cubic_graphs(n) {
            let inc = hamilton::hc_edge_incidence(&g);
            assert!(
                inc.counts.iter().all(|c| c % 2 == 0),
                "odd incidence in {g:?}"
            );
            // Cubic cycle counts avoid 1 and 2 entirely.
            assert!(inc.total == 0 || inc.total >= 3, "{g:?}");
        }
    }
}

#[test]
fn odd_degree_graphs_have_even_edge_incidence() {
    // Thomason's parity statement for arbitrary all-odd-degree graphs.
    for g in order_census(8) {
        if g.n() < 3 || g.vertices().any(|v| g.degree(v) % 2 == 0) {
            continue;
        }
        let inc = hamilton::hc_edge_incidence(&g);
        assert!(inc.counts.iter().all(|c| c % 2 == 0), "{g:?}");
    }
}

fn order_census(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    generate(&GenConfig::new(n, GenMode::Unrestricted), |g| {
        out.push(g.clone())
    })
    .unwrap();
    out
}

#[test]
fn saturation_is_monotone_in_cap() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x5eed_0042);
    for _ in 0..50 {
        let n = rng.random_range(4..=8);
        let p = rng.random_range(0.3..0.9);
        let g = common::random_graph(&mut rng, n, p);
        let mut prev = 0;
        let exact = hamilton::count_hc(&g, u64::MAX);
        for cap in 1..=exact.count.max(1) + 2 {
            let r = hamilton::count_hc(&g, cap);
            assert!(r.count >= prev);
            assert_eq!(r.saturated, r.count == cap);
            if !r.saturated {
                assert_eq!(r.count, exact.count);
            }
            prev = r.count;
        }
    }
}

#[test]
fn odd_degree_parity_at_larger_random_orders() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x5eed_0043);
    let mut tested = 0;
    'outer: while tested < 100 {
        let n = rng.random_range(9..=12);
        let p = rng.random_range(0.3..0.7);
        let mut g = common::random_graph(&mut rng, n, p);
        // Toggle edges between even-degree vertices until all degrees are
        // odd (each toggle flips exactly the two endpoint parities).
        for _ in 0..200 {
            let evens: Vec<usize> = g
                .vertices()
                .filter(|&v| g.degree(v).is_multiple_of(2))
                .collect();
            if evens.is_empty() {
                break;
            }
            let a = evens[rng.random_range(0..evens.len())];
            let b = evens[rng.random_range(0..evens.len())];
            if a == b {
                continue;
            }
            let e = hamgen::graph::VertexPair::new(a, b).unwrap();
            if g.has_edge(a, b) {
                g.remove_edge(e).unwrap();
            } else {
                g.add_edge(e).unwrap();
            }
        }
        if g.vertices().any(|v| g.degree(v).is_multiple_of(2)) {
            continue 'outer;
        }
        let inc = hamilton::hc_edge_incidence(&g);
        assert!(
            inc.counts.iter().all(|c| c % 2 == 0),
            "odd incidence in all-odd-degree graph {g:?}"
        );
        tested += 1;
    }
}

#[test]
fn triangle_replacement_preserves_cycle_counts() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    // 50 cubic graphs sampled across orders 8..=12, a random vertex each.
    let mut rng = StdRng::seed_from_u64(0x5eed_0044);
    let mut pool = Vec::new();
    for n in [8, 10, 12] {
        pool.extend(connected_cubic_graphs(n));
    }
    assert!(pool.len() >= 50);
    for _ in 0..50 {
        let g = &pool[rng.random_range(0..pool.len())];
        let v = rng.random_range(0..g.n());
        let expanded = hamgen::props::replace_vertex_with_triangle(g, v).unwrap();
        assert_eq!(expanded.n(), g.n() + 2);
        assert!(expanded.vertices().all(|u| expanded.degree(u) == 3));
        assert_eq!(
            hamilton::count_hc(&expanded, u64::MAX).count,
            hamilton::count_hc(g, u64::MAX).count,
            "{g:?} at {v}"
        );
    }
}

#[test]
fn subdividing_a_three_cycle_cubic_graph_leaves_two_cycles() {
    // Subdividing one edge of a planar cubic graph with exactly three
    // hamiltonian cycles yields a graph with exactly two.
    let mut graphs = vec![Graph::new_complete(4).unwrap()];
    graphs.push(hamgen::props::replace_vertex_with_triangle(&graphs[0], 0).unwrap());
    graphs.push(hamgen::props::replace_vertex_with_triangle(&graphs[1], 1).unwrap());
    for g in graphs {
        assert!(planarity::is_planar(&g));
        assert_eq!(hamilton::count_hc(&g, 10).count, 3);
        for e in g.edges() {
            let sub = g.subdivide_edge(e).unwrap();
            assert_eq!(hamilton::count_hc(&sub, 10).count, 2, "{g:?} at {e}");
        }
    }
}

#[test]
fn all_verification_suites_pass_at_default_budgets() {
    for suite in [
        Suite::BondyJackson,
        Suite::Thomassen,
        Suite::Sheehan,
        Suite::Cantoni,
        Suite::Parity,
        Suite::Extremal,
        Suite::Schwenk,
        Suite::Oracle,
    ] {
        let report = run_suite(suite, None);
        assert!(report.passed(), "{}", report.render());
    }
}

#[test]
fn full_tuples_separate_exactly_the_edge_orbits() {
    use hamgen::generate::{edge_tuple, reducible_edges};
    // Equal full tuples exactly when the edges share an automorphism
    // orbit; x7/x8 force the forward direction.
    let mut g = Graph::new_cycle(8).unwrap();
    for chord in [(0, 4), (1, 5), (2, 6)] {
        g.add_edge(hamgen::graph::VertexPair::new(chord.0, chord.1).unwrap())
            .unwrap();
    }
    let anchor = HamAnchor::canonical(8);
    let red = reducible_edges(&g, GenMode::ExactlyOne, Some(&anchor));
    let orbits = hamgen::canon::edge_orbits(&g);
    let edges = g.edges();
    let orbit_of =
        |e: &hamgen::graph::VertexPair| orbits.ids[edges.iter().position(|x| x == e).unwrap()];
    for a in &red {
        for b in &red {
            let ta = edge_tuple(&g, Some(&anchor), *a, GenMode::ExactlyOne);
            let tb = edge_tuple(&g, Some(&anchor), *b, GenMode::ExactlyOne);
            assert_eq!(ta == tb, orbit_of(a) == orbit_of(b), "{a} vs {b}");
        }
    }
}
