//! Cross-checks between code paths that share no logic: rational segment
//! intersection against orientation signs, flip walks against the
//! backtracking enumerator, and brute-force polygon tests against the
//! angular ones.

mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};

use flipcut_core::geometry::{cross, orient};
use flipcut_core::oracle::{grid_z_oracle, FlipGraph};
use flipcut_core::{
    apply_flip, constrained_triangulation, enumerate_triangulations, flippable, gen_convex, gen_grid, is_ec4,
    segments_cross, z_edges, FlipMove, Point, PointSet, Triangulation,
};
use proptest::prelude::*;

/// Proper crossing by solving for the intersection parameters exactly.
fn rational_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (d1x, d1y) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (d2x, d2y) = ((d.x - c.x) as i128, (d.y - c.y) as i128);
    let (wx, wy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    let mut den = d1x * d2y - d1y * d2x;
    if den == 0 {
        return false;
    }
    let mut s = wx * d2y - wy * d2x;
    let mut t = wx * d1y - wy * d1x;
    if den < 0 {
        den = -den;
        s = -s;
        t = -t;
    }
    0 < s && s < den && 0 < t && t < den
}

fn small_point() -> impl Strategy<Value = Point> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #[test]
    fn crossing_matches_rational_solution(a in small_point(), b in small_point(), c in small_point(), d in small_point()) {
        prop_assume!(a != b && c != d);
        prop_assert_eq!(segments_cross(a, b, c, d), rational_cross(a, b, c, d));
    }

    #[test]
    fn orientation_is_antisymmetric(a in small_point(), b in small_point(), c in small_point()) {
        prop_assert_eq!(orient(a, b, c), -orient(b, a, c));
        prop_assert_eq!(orient(a, b, c), orient(b, c, a));
    }
}

/// In closed triangle `abc` (non-degenerate).
fn in_closed_triangle(a: Point, b: Point, c: Point, p: Point) -> bool {
    let s = cross(a, b, c).signum();
    cross(a, b, p) * s >= 0 && cross(b, c, p) * s >= 0 && cross(c, a, p) * s >= 0
}

/// EC4 test by extreme points: four points in strictly convex position (no
/// point in the closed triangle of the other three) with no other point in
/// the closed hull, for any vertex order.
fn brute_ec4(ps: &PointSet, q: [usize; 4]) -> bool {
    let p: Vec<Point> = q.iter().map(|&i| ps.point(i)).collect();
    for x in 0..4 {
        let others: Vec<Point> = (0..4).filter(|&y| y != x).map(|y| p[y]).collect();
        if cross(others[0], others[1], others[2]) == 0 || in_closed_triangle(others[0], others[1], others[2], p[x]) {
            return false;
        }
    }
    // the hull is covered by the triangles on any three of the points
    (0..ps.len()).filter(|k| !q.contains(k)).all(|k| {
        let r = ps.point(k);
        !(0..4).any(|x| {
            let t: Vec<Point> = (0..4).filter(|&y| y != x).map(|y| p[y]).collect();
            in_closed_triangle(t[0], t[1], t[2], r)
        })
    })
}

#[test]
fn ec4_matches_extreme_point_test() {
    for ps in common::random_instances(40) {
        let n = ps.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        // is_ec4 wants the hull order; try the three cyclic orders
                        let any = [[a, b, c, d], [a, c, b, d], [a, b, d, c]]
                            .iter()
                            .any(|o| is_ec4(&ps, o[0], o[1], o[2], o[3]).unwrap());
                        assert_eq!(any, brute_ec4(&ps, [a, b, c, d]), "{:?} {a} {b} {c} {d}", ps.points());
                    }
                }
            }
        }
    }
}

/// Every triangulation reachable by legal flips from one greedy start.
fn flip_closure(ps: &PointSet) -> BTreeSet<Triangulation> {
    let start = constrained_triangulation(ps, &BTreeSet::new()).unwrap();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for &f in t.edges() {
            if let Some(g) = flippable(ps, &t, f).unwrap() {
                let next = apply_flip(ps, &t, FlipMove { removed: f, added: g }).unwrap();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

#[test]
fn flip_walk_reaches_exactly_the_enumerated_triangulations() {
    for ps in common::random_instances(60) {
        let listed: BTreeSet<Triangulation> = enumerate_triangulations(&ps).unwrap().into_iter().collect();
        assert_eq!(flip_closure(&ps), listed, "{:?}", ps.points());
    }
}

#[test]
fn oracle_adjacency_matches_legal_flips() {
    for ps in common::random_instances(60) {
        let g = FlipGraph::full(&ps).unwrap();
        for (id, t) in g.nodes().iter().enumerate() {
            let legal = t.edges().iter().filter(|&&f| flippable(&ps, t, f).unwrap().is_some()).count();
            assert_eq!(g.adjacency()[id].len(), legal);
        }
    }
}

#[test]
fn catalan_and_square_counts() {
    let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
    for n in 3..=10 {
        assert_eq!(enumerate_triangulations(&gen_convex(n).unwrap()).unwrap().len(), catalan[n - 2]);
    }
    assert_eq!(enumerate_triangulations(&gen_grid(2, 2).unwrap()).unwrap().len(), 2);
}

#[test]
fn lattice_oracle_matches_generic_z_on_grids() {
    for (k, l) in [(2, 5), (4, 4), (6, 3), (7, 7)] {
        let g = gen_grid(k, l).unwrap();
        for e in g.valid_edges() {
            assert_eq!(grid_z_oracle(k, l, e).unwrap(), z_edges(&g, e).unwrap(), "{k}x{l} {e}");
        }
    }
}
