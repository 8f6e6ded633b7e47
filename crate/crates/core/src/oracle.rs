//! Brute-force ground truth: exhaustive flip graphs, line graphs over the
//! crossing edges of a query edge, the EC5-free shortcut, and a lattice
//! oracle for grid point sets. Everything here is exponential or polynomial
//! of high degree and is only meant for small inputs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{crossing_edges, cross, empty_convex_unchecked, segments_cross, Edge, Point, PointSet};
use crate::triangulation::{for_each_triangulation, Triangulation, DEFAULT_ENUM_BOUND};

/// Flip graph induced on the triangulations avoiding a forbidden edge set.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    nodes: Vec<Triangulation>,
    adjacency: Vec<Vec<usize>>,
    forbidden: BTreeSet<Edge>,
}

impl FlipGraph {
    /// The whole flip graph of `ps`.
    pub fn full(ps: &PointSet) -> Result<Self> {
        Self::full_bounded(ps, DEFAULT_ENUM_BOUND)
    }

    pub fn full_bounded(ps: &PointSet, bound: usize) -> Result<Self> {
        let mut nodes = Vec::new();
        for_each_triangulation(ps, bound, |t| nodes.push(t))?;
        nodes.sort();
        let slot: HashMap<Edge, usize> = ps.valid_edges().into_iter().enumerate().map(|(k, e)| (e, k)).collect();
        let words = slot.len().div_ceil(64).max(1);
        // two triangulations are one flip apart iff they agree after
        // dropping one edge from each
        let mut groups: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for (id, t) in nodes.iter().enumerate() {
            let mut bits = vec![0u64; words];
            for e in t.edges() {
                let k = slot[e];
                bits[k / 64] |= 1 << (k % 64);
            }
            for e in t.edges() {
                let k = slot[e];
                let mut key = bits.clone();
                key[k / 64] &= !(1 << (k % 64));
                groups.entry(key).or_default().push(id);
            }
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for members in groups.values() {
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FlipGraph { nodes, adjacency, forbidden: BTreeSet::new() })
    }

    /// Subgraph induced on the nodes containing no edge of `forbidden`.
    pub fn restricted(&self, forbidden: &BTreeSet<Edge>) -> FlipGraph {
        let keep: Vec<bool> =
            self.nodes.iter().map(|t| !forbidden.iter().any(|&x| t.contains(x))).collect();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (old, t) in self.nodes.iter().enumerate() {
            if keep[old] {
                remap[old] = nodes.len();
                nodes.push(t.clone());
            }
        }
        let adjacency = (0..self.nodes.len())
            .filter(|&old| keep[old])
            .map(|old| self.adjacency[old].iter().filter(|&&b| keep[b]).map(|&b| remap[b]).collect())
            .collect();
        let mut all = self.forbidden.clone();
        all.extend(forbidden.iter().copied());
        FlipGraph { nodes, adjacency, forbidden: all }
    }

    pub fn nodes(&self) -> &[Triangulation] {
        &self.nodes
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn forbidden(&self) -> &BTreeSet<Edge> {
        &self.forbidden
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        self.nodes.binary_search(t).ok()
    }

    /// Breadth-first component labels, numbered in order of the smallest
    /// node they contain.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.nodes.len()];
        let mut count = 0;
        for s in 0..self.nodes.len() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn cut_report(&self) -> OracleCut {
        let (count, label) = self.components();
        OracleCut { flip_cut: count >= 2, component_count: count, node_count: self.nodes.len(), node_component: label }
    }
}

pub fn bf_flip_graph(ps: &PointSet, forbidden: &BTreeSet<Edge>) -> Result<FlipGraph> {
    Ok(FlipGraph::full(ps)?.restricted(forbidden))
}

/// Connectivity verdict for a forbidden edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCut {
    pub flip_cut: bool,
    pub component_count: usize,
    pub node_count: usize,
    pub node_component: Vec<usize>,
}

/// Whether forbidding `forbidden` disconnects the flip graph. An empty
/// remaining graph is reported with zero components and is not a cut.
pub fn bf_is_flip_cut(ps: &PointSet, forbidden: &BTreeSet<Edge>) -> Result<OracleCut> {
    Ok(bf_flip_graph(ps, forbidden)?.cut_report())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Universe {
    /// All edges crossing the query edge.
    Y,
    /// Crossing edges whose quadrilateral with the query edge is an EC4.
    Z,
}

/// Connected components of the line graph (adjacency = shared endpoint) on
/// `Y` or `Z`, each sorted, listed by smallest member.
pub fn bf_line_graph_components(ps: &PointSet, e: Edge, universe: Universe) -> Result<Vec<BTreeSet<Edge>>> {
    let mut set: Vec<Edge> = crossing_edges(ps, e)?.into_iter().collect();
    if universe == Universe::Z {
        set.retain(|f| empty_convex_unchecked(ps, &[e.i(), e.j(), f.i(), f.j()]));
    }
    Ok(line_graph_components(&set))
}

pub(crate) fn line_graph_components(set: &[Edge]) -> Vec<BTreeSet<Edge>> {
    let mut parent: Vec<usize> = (0..set.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut by_point: HashMap<usize, usize> = HashMap::new();
    for (k, f) in set.iter().enumerate() {
        for p in f.endpoints() {
            match by_point.get(&p) {
                Some(&other) => {
                    let (ra, rb) = (find(&mut parent, k), find(&mut parent, other));
                    parent[ra] = rb;
                }
                None => {
                    by_point.insert(p, k);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, BTreeSet<Edge>> = BTreeMap::new();
    for k in 0..set.len() {
        let r = find(&mut parent, k);
        comps.entry(r).or_default().insert(set[k]);
    }
    let mut out: Vec<BTreeSet<Edge>> = comps.into_values().collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ec5Verdict {
    /// `e` is not a diagonal of any EC5.
    pub applicable: bool,
    /// `|Z| >= 2`; meaningful only when applicable.
    pub flip_cut: bool,
}

/// The shortcut for edges that are not the diagonal of an empty convex
/// pentagon: such an edge is a flip cut edge iff it is the diagonal of at
/// least two EC4s.
pub fn ec5_criterion(ps: &PointSet, e: Edge) -> Result<Ec5Verdict> {
    ps.check_edge(e)?;
    let (u, v) = (e.i(), e.j());
    let (pu, pv) = ps.segment(e);
    let apex = |side: i128| -> Vec<usize> {
        (0..ps.len())
            .filter(|&p| cross(pu, pv, ps.point(p)).signum() == side && empty_convex_unchecked(ps, &[u, v, p]))
            .collect()
    };
    let above = apex(1);
    let below = apex(-1);
    // a diagonal leaves one pentagon vertex on one side and two on the other
    let has_ec5 = |single: &[usize], pair: &[usize]| {
        single.iter().any(|&a| {
            pair.iter().enumerate().any(|(x, &b)| {
                pair[x + 1..].iter().any(|&c| empty_convex_unchecked(ps, &[u, v, a, b, c]))
            })
        })
    };
    let applicable = !has_ec5(&above, &below) && !has_ec5(&below, &above);
    let mut z = 0usize;
    'count: for &a in &above {
        for &b in &below {
            if segments_cross(pu, pv, ps.point(a), ps.point(b)) && empty_convex_unchecked(ps, &[u, a, v, b]) {
                z += 1;
                if z >= 2 {
                    break 'count;
                }
            }
        }
    }
    Ok(Ec5Verdict { applicable, flip_cut: z >= 2 })
}

/// Range of integers `s` with `lo <= p0 + s * d <= hi`.
fn step_range(p0: i64, d: i64, lo: i64, hi: i64) -> Option<(i64, i64)> {
    match d.cmp(&0) {
        std::cmp::Ordering::Equal => (lo <= p0 && p0 <= hi).then_some((i64::MIN / 4, i64::MAX / 4)),
        std::cmp::Ordering::Greater => Some((Integer::div_ceil(&(lo - p0), &d), Integer::div_floor(&(hi - p0), &d))),
        std::cmp::Ordering::Less => Some((Integer::div_ceil(&(hi - p0), &d), Integer::div_floor(&(lo - p0), &d))),
    }
}

/// `Z` for an edge of the `k x l` grid, from lattice arithmetic alone: the
/// apexes of empty triangles on `e` are exactly the grid points on the two
/// lattice lines adjacent and parallel to `e`, so `Z` is the set of pairs
/// from those two lines whose segment crosses `e`.
///
/// Grid indices are row-major, `index = y * k + x`.
pub fn grid_z_oracle(k: usize, l: usize, e: Edge) -> Result<BTreeSet<Edge>> {
    let size = k * l;
    for p in e.endpoints() {
        if p >= size {
            return Err(Error::IndexOutOfRange { index: p, len: size });
        }
    }
    let at = |idx: usize| Point::new((idx % k) as i64, (idx / k) as i64);
    let (pu, pv) = (at(e.i()), at(e.j()));
    let (dx, dy) = (pv.x - pu.x, pv.y - pu.y);
    if dx.gcd(&dy) != 1 {
        return Err(Error::NotAnEdge { i: e.i(), j: e.j() });
    }
    // lattice lines parallel to e are the level sets of dx*y - dy*x
    let level = |p: Point| dx * p.y - dy * p.x;
    let c0 = level(pu);
    let g = dx.extended_gcd(&dy);
    let (sx, sy) = if g.gcd < 0 { (-g.x, -g.y) } else { (g.x, g.y) };
    let line_points = |t: i64| -> Vec<Point> {
        // dx * (t*sx) + dy * (t*sy) = t, so (x, y) = (-t*sy, t*sx) has level t
        let (x0, y0) = (-t * sy, t * sx);
        let (Some(rx), Some(ry)) = (step_range(x0, dx, 0, k as i64 - 1), step_range(y0, dy, 0, l as i64 - 1)) else {
            return Vec::new();
        };
        let (lo, hi) = (rx.0.max(ry.0), rx.1.min(ry.1));
        (lo..=hi).map(|s| Point::new(x0 + s * dx, y0 + s * dy)).collect()
    };
    let upper = line_points(c0 + 1);
    let lower = line_points(c0 - 1);
    let index = |p: Point| p.y as usize * k + p.x as usize;
    let mut z = BTreeSet::new();
    for &a in &upper {
        for &b in &lower {
            if segments_cross(pu, pv, a, b) {
                z.insert(Edge::new(index(a), index(b)));
            }
        }
    }
    Ok(z)
}
