mod common;

use std::collections::{BTreeSet, HashSet};

use flipcut_core::convex::{chords_cross, chords_of, flip_partner, is_chord};
use flipcut_core::oracle::{bf_line_graph_components, ec5_criterion, FlipGraph, Universe};
use flipcut_core::{
    all_flip_cut_edges, all_flip_cut_edges_par, apex_orders, apply_flip, avoiding_triangulation, connect_avoiding,
    crossing_edges, flip_to_star, gen_convex, is_flip_cut_edge, z_components, z_edges,
    zigzag_cut_set, Edge, FlipMove, Point, PointSet, Triangulation,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point_sets(max_n: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((0i64..=10, 0i64..=10), 4..=max_n)
        .prop_map(|s| PointSet::new(s.into_iter().map(|(x, y)| Point::new(x, y)).collect()).unwrap())
}

/// A point set and one of its valid edges, chosen by `pick`.
fn with_edge(max_n: usize) -> impl Strategy<Value = (PointSet, Edge)> {
    (point_sets(max_n), any::<prop::sample::Index>()).prop_map(|(ps, pick)| {
        let all = ps.valid_edges();
        let e = all[pick.index(all.len())];
        (ps, e)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn apex_sets_match_exhaustive_scan((ps, e) in with_edge(12)) {
        let r = common::check_apexes(&ps, e);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn z_is_the_crossing_apex_pairs_and_forms_staircases((ps, e) in with_edge(12)) {
        let r = common::check_staircase(&ps, e);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn sweep_components_match_line_graphs((ps, e) in with_edge(12)) {
        let o = apex_orders(&ps, e).unwrap();
        let zc = z_components(&ps, &o);
        let z = z_edges(&ps, e).unwrap();
        let gz = bf_line_graph_components(&ps, e, Universe::Z).unwrap();
        let from_sweep: BTreeSet<BTreeSet<Edge>> = zc
            .components
            .iter()
            .map(|c| z.iter().copied().filter(|f| f.endpoints().iter().any(|p| c.above.contains(p))
                && f.endpoints().iter().any(|p| c.below.contains(p))).collect())
            .collect();
        prop_assert_eq!(from_sweep, gz.iter().cloned().collect::<BTreeSet<_>>());
        let touched: usize = zc.components.iter().map(|c| c.above.len() + c.below.len()).sum();
        let distinct: HashSet<usize> =
            zc.components.iter().flat_map(|c| c.above.iter().chain(&c.below).copied()).collect();
        prop_assert_eq!(touched, distinct.len(), "components share apexes");
        prop_assert!(zc.count() <= ps.len());
        if !crossing_edges(&ps, e).unwrap().is_empty() {
            let gy = bf_line_graph_components(&ps, e, Universe::Y).unwrap();
            prop_assert_eq!(gy.len(), gz.len());
            prop_assert!(gy.iter().all(|c| c.iter().any(|f| z.contains(f))));
        }
        let v = ec5_criterion(&ps, e).unwrap();
        if v.applicable {
            prop_assert_eq!(v.flip_cut, zc.count() >= 2);
        }
    }

    #[test]
    fn parallel_scan_matches_sequential(ps in point_sets(14)) {
        prop_assert_eq!(all_flip_cut_edges_par(&ps), all_flip_cut_edges(&ps));
    }
}

#[test]
fn flip_graph_observations_on_random_sets() {
    for ps in common::random_instances(80) {
        let full = FlipGraph::full(&ps).unwrap();
        for e in ps.valid_edges() {
            common::check_observations(&ps, &full, e).unwrap();
            let fast = is_flip_cut_edge(&ps, e).unwrap().component_count;
            assert_eq!(fast, full.restricted(&[e].into_iter().collect()).components().0, "{:?} {e}", ps.points());
        }
    }
}

fn random_triangulation(n: usize, forbidden: &BTreeSet<Edge>, rng: &mut ChaCha8Rng) -> Triangulation {
    let ps = gen_convex(n).unwrap();
    let mut t = avoiding_triangulation(n, forbidden).unwrap();
    for _ in 0..4 * n {
        let chords: Vec<Edge> = chords_of(n, &t).into_iter().collect();
        if chords.is_empty() {
            break;
        }
        let c = chords[rng.gen_range(0..chords.len())];
        let g = flip_partner(&t, c).unwrap();
        if !forbidden.contains(&g) {
            t = apply_flip(&ps, &t, FlipMove { removed: c, added: g }).unwrap();
        }
    }
    t
}

fn random_chords(n: usize, count: usize, rng: &mut ChaCha8Rng) -> BTreeSet<Edge> {
    let all: Vec<Edge> = (0..n).flat_map(|i| (i + 1..n).map(move |j| Edge::new(i, j))).filter(|&e| is_chord(n, e)).collect();
    let mut out = BTreeSet::new();
    while out.len() < count.min(all.len()) {
        out.insert(all[rng.gen_range(0..all.len())]);
    }
    out
}

#[test]
fn zigzag_guarantees_for_many_sizes() {
    for n in 6..=30 {
        let z = zigzag_cut_set(n).unwrap();
        assert_eq!(z.forbidden.len(), n - 3);
        let t_chords = chords_of(n, &z.frozen);
        for &c in &t_chords {
            assert!(z.forbidden.contains(&flip_partner(&z.frozen, c).unwrap()));
        }
        for c in chords_of(n, &z.other) {
            assert!(!z.forbidden.contains(&c));
            let crossed = t_chords.iter().filter(|&&d| chords_cross(c, d)).count();
            assert!(crossed >= 2, "n={n}: chord {c} of the mirror crosses {crossed} zigzag chords");
        }
        assert_ne!(z.frozen, z.other);
    }
}

#[test]
fn star_paths_raise_degree_monotonically() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 4..=14 {
        for _ in 0..20 {
            let p = rng.gen_range(0..n);
            let t = random_triangulation(n, &BTreeSet::new(), &mut rng);
            let candidates: BTreeSet<Edge> = random_chords(n, n / 2, &mut rng)
                .into_iter()
                .filter(|c| !c.has(p) && !t.contains(*c))
                .collect();
            let path = flip_to_star(n, &t, p, &candidates).unwrap();
            assert!(path.len() <= n - 3);
            let end = path.validate(n, &candidates).unwrap();
            assert_eq!(chords_of(n, &end).len(), chords_of(n, &end).iter().filter(|c| c.has(p)).count());
            let mut degree = t.edges().iter().filter(|c| c.has(p)).count();
            for m in &path.moves {
                assert!(m.added.has(p) && !m.removed.has(p));
                degree += 1;
            }
            assert_eq!(degree, end.edges().iter().filter(|c| c.has(p)).count());
        }
    }
}

#[test]
fn avoiding_triangulations_avoid() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 4..=16 {
        for _ in 0..30 {
            let x = random_chords(n, rng.gen_range(0..=n - 3), &mut rng);
            let t = avoiding_triangulation(n, &x).unwrap();
            assert!(x.iter().all(|&c| !t.contains(c)));
            flipcut_core::validate(&gen_convex(n).unwrap(), t.edges().iter().copied()).unwrap();
        }
    }
}

#[test]
fn connect_avoiding_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 5..=12 {
        for _ in 0..40 {
            let x = random_chords(n, rng.gen_range(0..=n - 4), &mut rng);
            let s = random_triangulation(n, &x, &mut rng);
            let t = random_triangulation(n, &x, &mut rng);
            let path = connect_avoiding(n, &x, &s, &t).unwrap();
            assert_eq!(path.validate(n, &x).unwrap(), t);
        }
    }
}

#[test]
fn small_convex_forbidden_sets_never_disconnect() {
    fn subsets(chords: &[Edge], k: usize) -> Vec<BTreeSet<Edge>> {
        if k == 0 {
            return vec![BTreeSet::new()];
        }
        let mut out = vec![BTreeSet::new()];
        for (i, &c) in chords.iter().enumerate() {
            for mut s in subsets(&chords[i + 1..], k - 1) {
                s.insert(c);
                out.push(s);
            }
        }
        out.sort();
        out.dedup();
        out
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 5..=8 {
        let ps = gen_convex(n).unwrap();
        let full = FlipGraph::full(&ps).unwrap();
        let chords: Vec<Edge> = ps.valid_edges().into_iter().filter(|&e| is_chord(n, e)).collect();
        let sets = if n <= 6 {
            subsets(&chords, n - 4)
        } else {
            (0..150).map(|_| random_chords(n, rng.gen_range(0..=n - 4), &mut rng)).collect()
        };
        for x in sets {
            let (count, _) = full.restricted(&x).components();
            assert_eq!(count, 1, "n={n} X={x:?}");
        }
    }
}
