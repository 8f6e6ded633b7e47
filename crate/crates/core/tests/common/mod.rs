#![allow(dead_code)]

use std::collections::BTreeSet;

use flipcut_core::geometry::{cross, empty_convex_polygon};
use flipcut_core::{gen_random, Edge, PointSet};

/// The random instances shared by the oracle comparisons: `n` cycles
/// through 5..=9, coordinates in `[0, 15]^2`, collinear triples allowed.
pub fn random_instances(count: u64) -> Vec<PointSet> {
    (0..count).map(|seed| gen_random(5 + (seed % 5) as usize, 15, seed, true).unwrap()).collect()
}

pub fn has_collinear_triple(ps: &PointSet) -> bool {
    let p = ps.points();
    (0..p.len()).any(|a| (a + 1..p.len()).any(|b| (b + 1..p.len()).any(|c| cross(p[a], p[b], p[c]) == 0)))
}

/// Points strictly on one side of `e` (`side` = 1 above, -1 below) forming
/// an empty triangle with it, by exhaustive check.
pub fn brute_apexes(ps: &PointSet, e: Edge, side: i128) -> BTreeSet<usize> {
    let (pu, pv) = ps.segment(e);
    (0..ps.len())
        .filter(|&p| cross(pu, pv, ps.point(p)).signum() == side)
        .filter(|&p| empty_convex_polygon(ps, &[e.i(), e.j(), p]).unwrap())
        .collect()
}

pub fn edges(pairs: &[(usize, usize)]) -> BTreeSet<Edge> {
    pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
}

/// Whether two labelings of the same node list induce the same partition,
/// which is the same as agreeing on every pair.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    use std::collections::HashMap;
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
}

use flipcut_core::geometry::Point;
use flipcut_core::oracle::{bf_line_graph_components, FlipGraph, Universe};
use flipcut_core::{apex_orders, crossing_edges, representative_z_edge, z_edges, AngularIndex};

/// Where segment `ab` meets the line through `uv`: -1 left of `u`, 0 on the
/// open edge, 1 right of `v`, 2 exactly at an endpoint.
pub fn line_position(pu: Point, pv: Point, pa: Point, pb: Point) -> i32 {
    let mut cu = cross(pa, pb, pu);
    let mut den = cu - cross(pa, pb, pv);
    if den < 0 {
        den = -den;
        cu = -cu;
    }
    // the meeting point is u + (cu / den) (v - u)
    if cu < 0 {
        -1
    } else if cu > den {
        1
    } else if cu == 0 || cu == den {
        2
    } else {
        0
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Apex sets equal the exhaustive empty-triangle scan, both lists are in
/// strict angular order, and the shared-index variant agrees.
pub fn check_apexes(ps: &PointSet, e: Edge) -> Result<(), String> {
    let o = apex_orders(ps, e).unwrap();
    ensure!(o.above.iter().copied().collect::<BTreeSet<_>>() == brute_apexes(ps, e, 1), "above apexes differ for {e}");
    ensure!(o.below.iter().copied().collect::<BTreeSet<_>>() == brute_apexes(ps, e, -1), "below apexes differ for {e}");
    let (pu, pv) = ps.segment(e);
    for w in o.above.windows(2) {
        ensure!(cross(pu, ps.point(w[1]), ps.point(w[0])) > 0, "above not by decreasing angle at u");
        ensure!(cross(pv, ps.point(w[1]), ps.point(w[0])) > 0, "above not by increasing angle at v");
    }
    for w in o.below.windows(2) {
        ensure!(cross(pv, ps.point(w[1]), ps.point(w[0])) > 0, "below not by decreasing angle at v");
        ensure!(cross(pu, ps.point(w[1]), ps.point(w[0])) > 0, "below not by increasing angle at u");
    }
    ensure!(AngularIndex::new(ps).apex_orders(ps, e) == o, "angular index disagrees for {e}");
    Ok(())
}

/// `Z` is exactly the apex pairs whose segment crosses the open edge, the
/// partners of each apex form an interval of the other list, and the
/// left/right/inside pattern is a staircase.
pub fn check_staircase(ps: &PointSet, e: Edge) -> Result<(), String> {
    let o = apex_orders(ps, e).unwrap();
    let (pu, pv) = ps.segment(e);
    let (a, b) = (&o.above, &o.below);
    let pos: Vec<Vec<i32>> =
        a.iter().map(|&x| b.iter().map(|&y| line_position(pu, pv, ps.point(x), ps.point(y))).collect()).collect();
    let z = z_edges(ps, e).unwrap();
    let from_pairs: BTreeSet<Edge> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| pos[i][j] == 0)
        .map(|(i, j)| Edge::new(a[i], b[j]))
        .collect();
    ensure!(from_pairs == z, "Z differs from the crossing apex pairs for {e}");
    for i in 0..a.len() {
        for j in 0..b.len() {
            for i2 in 0..a.len() {
                for j2 in 0..b.len() {
                    if pos[i][j] == 1 && i2 >= i && j2 <= j {
                        ensure!(pos[i2][j2] == 1, "right-of-v region not monotone at ({i2},{j2}) for {e}");
                    }
                    if pos[i][j] == -1 && i2 <= i && j2 >= j {
                        ensure!(pos[i2][j2] == -1, "left-of-u region not monotone at ({i2},{j2}) for {e}");
                    }
                    if i <= i2 && j <= j2 && pos[i][j2] == 0 && pos[i2][j] == 0 {
                        for row in &pos[i..=i2] {
                            ensure!(row[j..=j2].iter().all(|&p| p == 0), "Z rectangle not filled for {e}");
                        }
                    }
                }
            }
        }
    }
    let interval = |hits: Vec<usize>| hits.last().is_none_or(|l| l - hits[0] + 1 == hits.len());
    for row in &pos {
        ensure!(interval((0..row.len()).filter(|&j| row[j] == 0).collect()), "above partners not an interval");
    }
    for j in 0..b.len() {
        ensure!(interval((0..a.len()).filter(|&i| pos[i][j] == 0).collect()), "below partners not an interval");
    }
    Ok(())
}

/// Observations on the flip graph with `e` forbidden: every avoiding
/// triangulation contains a crossing edge and those edges lie in one
/// line-graph component, the corridor representative lands in the same
/// component, every constrained subgraph is connected, and the number of
/// components is at most `n`.
pub fn check_observations(ps: &PointSet, full: &FlipGraph, e: Edge) -> Result<(), String> {
    use std::collections::{HashMap, HashSet};
    let y = crossing_edges(ps, e).unwrap();
    let g = full.restricted(&[e].into_iter().collect());
    ensure!(g.components().0 <= ps.len(), "more components than points for {e}");
    let gy = bf_line_graph_components(ps, e, Universe::Y).unwrap();
    let comp_of_edge: HashMap<Edge, usize> =
        gy.iter().enumerate().flat_map(|(k, c)| c.iter().map(move |&f| (f, k))).collect();
    for t in g.nodes() {
        let ks: HashSet<usize> = t.edges().iter().filter(|f| y.contains(f)).map(|f| comp_of_edge[f]).collect();
        ensure!(!ks.is_empty(), "avoiding triangulation without a crossing edge for {e}");
        ensure!(ks.len() == 1, "crossing edges of one triangulation split across line-graph components for {e}");
        let r = representative_z_edge(ps, t, e).unwrap();
        ensure!(comp_of_edge.get(&r) == ks.iter().next(), "representative in the wrong component for {e}");
    }
    for &f in &y {
        let keep: BTreeSet<usize> = (0..g.node_count()).filter(|&id| g.nodes()[id].contains(f)).collect();
        let Some(&s) = keep.iter().next() else { continue };
        let mut seen = BTreeSet::from([s]);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &w in &g.adjacency()[x] {
                if keep.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        ensure!(seen == keep, "constrained flip graph on {f} is disconnected (e = {e})");
    }
    Ok(())
}
