//! Flip cut edge detection.
//!
//! For a query edge `e = uv`, the triangulations avoiding `e` split into
//! flip-connected components that correspond one-to-one with the connected
//! components of the line graph on `Z`: the edges `ab` crossing `e` whose
//! quadrilateral `aubv` is empty and convex. The apexes `a` above `e` and `b`
//! below it that form empty triangles with `e` are found by a two-order sweep,
//! and the components of the line graph on `Z` are then read off by a linear
//! two-pointer walk over those ordered apex lists.
//!
//! "Above" means to the left of the directed segment from `u = e.i()` to
//! `v = e.j()`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{crossing_edges, cross, dist2, empty_convex_unchecked, Edge, Point, PointSet};
use crate::triangulation::{corridor, Triangulation};

/// Apexes of empty triangles on either side of a query edge, in sweep order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexOrders {
    pub u: usize,
    pub v: usize,
    /// Points above `uv` forming an empty triangle with it, by decreasing
    /// angle at `u`.
    #[serde(rename = "A")]
    pub above: Vec<usize>,
    /// Points below `uv` forming an empty triangle with it, by decreasing
    /// angle at `v`.
    #[serde(rename = "B")]
    pub below: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZComponent {
    #[serde(rename = "A")]
    pub above: Vec<usize>,
    #[serde(rename = "B")]
    pub below: Vec<usize>,
}

/// Connected components of the line graph on `Z`, in discovery order. The
/// `Z`-edges of component `i` are exactly the `Z`-edges between
/// `components[i].above` and `components[i].below`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ZComponents {
    pub components: Vec<ZComponent>,
}

impl ZComponents {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

/// Where a segment from an apex above to an apex below meets the line
/// through `uv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LineHit {
    LeftOfU,
    Inside,
    RightOfV,
}

#[inline]
fn line_hit(pu: Point, pv: Point, pa: Point, pb: Point) -> LineHit {
    // a point w of the line lies right of the hit iff orient(a, b, w) > 0;
    // passing exactly through an endpoint is not a crossing of the open edge
    if cross(pa, pb, pv) <= 0 {
        LineHit::RightOfV
    } else if cross(pa, pb, pu) >= 0 {
        LineHit::LeftOfU
    } else {
        LineHit::Inside
    }
}

/// Every edge crossing `e` whose quadrilateral with `e` is an EC4.
/// Quadratic scan; oracle scale only.
pub fn z_edges(ps: &PointSet, e: Edge) -> Result<BTreeSet<Edge>> {
    let y = crossing_edges(ps, e)?;
    Ok(y.into_iter().filter(|f| empty_convex_unchecked(ps, &[e.i(), e.j(), f.i(), f.j()])).collect())
}

/// The sweep: walk the second order and keep each point that comes after
/// every point kept so far in the first order. A skipped point has its
/// triangle with the edge containing an earlier kept point.
fn select_apexes(first_order: &[usize], second_order: &[usize]) -> Vec<usize> {
    let rank: HashMap<usize, usize> = first_order.iter().enumerate().map(|(r, &p)| (p, r)).collect();
    let mut kept = Vec::new();
    let mut threshold: Option<usize> = None;
    for &p in second_order {
        let r = rank[&p];
        if threshold.is_none_or(|t| r > t) {
            kept.push(p);
            threshold = Some(r);
        }
    }
    kept
}

/// Order of candidates by decreasing angle at `c1` measured from the ray
/// towards `c2`; farther points first on a shared ray.
fn first_order(pts: &[Point], c1: usize, c2: usize, cands: &mut [usize]) {
    let (p1, p2) = (pts[c1], pts[c2]);
    cands.sort_by(|&p, &q| {
        let side = cross(p1, p2, pts[q]).signum();
        match (cross(p1, pts[q], pts[p]) * side).cmp(&0) {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => dist2(p1, pts[q]).cmp(&dist2(p1, pts[p])),
        }
    });
}

/// Order of candidates by increasing angle at `c2` measured from the ray
/// towards `c1`; nearer points first on a shared ray.
fn second_order(pts: &[Point], c1: usize, c2: usize, cands: &mut [usize]) {
    let (p1, p2) = (pts[c1], pts[c2]);
    cands.sort_by(|&p, &q| {
        let side = cross(p2, p1, pts[p]).signum();
        match (cross(p2, pts[p], pts[q]) * side).cmp(&0) {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => dist2(p2, pts[p]).cmp(&dist2(p2, pts[q])),
        }
    });
}

fn apexes_by_sorting(pts: &[Point], c1: usize, c2: usize, cands: Vec<usize>) -> Vec<usize> {
    let mut by_first = cands.clone();
    first_order(pts, c1, c2, &mut by_first);
    let mut by_second = cands;
    second_order(pts, c1, c2, &mut by_second);
    select_apexes(&by_first, &by_second)
}

/// Ordered empty-triangle apexes on both sides of `e`, in `O(n log n)`.
pub fn apex_orders(ps: &PointSet, e: Edge) -> Result<ApexOrders> {
    ps.check_edge(e)?;
    let (u, v) = (e.i(), e.j());
    let pts = ps.points();
    let (pu, pv) = (pts[u], pts[v]);
    let mut above = Vec::new();
    let mut below = Vec::new();
    for (k, &p) in pts.iter().enumerate() {
        match cross(pu, pv, p).cmp(&0) {
            Ordering::Greater => above.push(k),
            Ordering::Less => below.push(k),
            Ordering::Equal => {}
        }
    }
    Ok(ApexOrders { u, v, above: apexes_by_sorting(pts, u, v, above), below: apexes_by_sorting(pts, v, u, below) })
}

/// Connected components of the line graph on `Z`, by a linear two-pointer
/// walk over the ordered apex lists.
///
/// Phase 1 advances whichever pointer provably has no `Z`-edge to the other
/// list's remaining points until a crossing pair is found. Phase 2 then
/// grows the component by alternately pivoting on the current `a` (advancing
/// over `b`) and the current `b` (advancing over `a`) until neither moves.
pub fn z_components(ps: &PointSet, orders: &ApexOrders) -> ZComponents {
    let pts = ps.points();
    let (pu, pv) = (pts[orders.u], pts[orders.v]);
    let a = &orders.above;
    let b = &orders.below;
    let (k, l) = (a.len(), b.len());
    let hit = |i: usize, j: usize| line_hit(pu, pv, pts[a[i]], pts[b[j]]);

    let mut components = Vec::new();
    let mut done_a = vec![false; k];
    let mut done_b = vec![false; l];
    let (mut i, mut j) = (0usize, 0usize);
    'sweep: while i < k && j < l {
        while hit(i, j) != LineHit::Inside {
            if hit(i, j) == LineHit::RightOfV {
                j += 1;
                if j >= l {
                    break 'sweep;
                }
            }
            if hit(i, j) == LineHit::LeftOfU {
                i += 1;
                if i >= k {
                    break 'sweep;
                }
            }
        }

        let mut comp_a = vec![a[i]];
        let mut comp_b = vec![b[j]];
        loop {
            while j < l && hit(i, j) == LineHit::Inside {
                if comp_b.last() != Some(&b[j]) {
                    comp_b.push(b[j]);
                }
                j += 1;
            }
            j -= 1;
            done_a[i] = true;
            while i < k && hit(i, j) == LineHit::Inside {
                if comp_a.last() != Some(&a[i]) {
                    comp_a.push(a[i]);
                }
                i += 1;
            }
            i -= 1;
            done_b[j] = true;
            if done_a[i] && done_b[j] {
                break;
            }
        }
        components.push(ZComponent { above: comp_a, below: comp_b });
        i += 1;
        j += 1;
    }
    ZComponents { components }
}

/// Result of a single flip-cut-edge query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipCutReport {
    pub edge: Edge,
    pub flip_cut: bool,
    /// Components of the flip graph with `edge` forbidden; `0` when every
    /// triangulation contains `edge`.
    pub component_count: usize,
    pub components: Vec<ZComponent>,
}

pub fn is_flip_cut_edge(ps: &PointSet, e: Edge) -> Result<FlipCutReport> {
    let orders = apex_orders(ps, e)?;
    Ok(report(e, z_components(ps, &orders)))
}

fn report(e: Edge, zc: ZComponents) -> FlipCutReport {
    FlipCutReport { edge: e, flip_cut: zc.count() >= 2, component_count: zc.count(), components: zc.components }
}

/// Points sorted counterclockwise around every point of a set, reused across
/// edge queries.
pub struct AngularIndex {
    around: Vec<Vec<usize>>,
    rank: Vec<Vec<u32>>,
}

fn half_plane(d: (i64, i64)) -> u8 {
    if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
        0
    } else {
        1
    }
}

impl AngularIndex {
    pub fn new(ps: &PointSet) -> Self {
        let pts = ps.points();
        let n = pts.len();
        let mut around = Vec::with_capacity(n);
        let mut rank = Vec::with_capacity(n);
        for c in 0..n {
            let pc = pts[c];
            let mut others: Vec<usize> = (0..n).filter(|&p| p != c).collect();
            others.sort_by(|&p, &q| {
                let dp = (pts[p].x - pc.x, pts[p].y - pc.y);
                let dq = (pts[q].x - pc.x, pts[q].y - pc.y);
                half_plane(dp)
                    .cmp(&half_plane(dq))
                    .then_with(|| 0.cmp(&cross(pc, pts[p], pts[q])))
                    .then_with(|| dist2(pc, pts[p]).cmp(&dist2(pc, pts[q])))
            });
            let mut r = vec![u32::MAX; n];
            for (pos, &p) in others.iter().enumerate() {
                r[p] = pos as u32;
            }
            around.push(others);
            rank.push(r);
        }
        AngularIndex { around, rank }
    }

    /// Points strictly on side `side` of the line `c -> d`, counterclockwise
    /// from the ray `c -> d`.
    fn side_from_ray(&self, ps: &PointSet, c: usize, d: usize, line: (Point, Point), side: i32) -> Vec<usize> {
        let list = &self.around[c];
        let start = self.rank[c][d] as usize;
        let pts = ps.points();
        (0..list.len())
            .map(|t| list[(start + t) % list.len()])
            .filter(|&p| cross(line.0, line.1, pts[p]).signum() as i32 == side)
            .collect()
    }

    pub fn apex_orders(&self, ps: &PointSet, e: Edge) -> ApexOrders {
        let (u, v) = (e.i(), e.j());
        let pts = ps.points();
        let line = (pts[u], pts[v]);
        let full_reverse = |mut s: Vec<usize>| {
            s.reverse();
            s
        };
        let reverse_rays = |center: usize, s: Vec<usize>| {
            let pc = pts[center];
            let mut runs: Vec<Vec<usize>> = Vec::new();
            for p in s {
                match runs.last_mut() {
                    Some(run) if cross(pc, pts[run[0]], pts[p]) == 0 => run.push(p),
                    _ => runs.push(vec![p]),
                }
            }
            runs.into_iter().rev().flatten().collect::<Vec<_>>()
        };
        let a_first = full_reverse(self.side_from_ray(ps, u, v, line, 1));
        let a_second = reverse_rays(v, self.side_from_ray(ps, v, u, line, 1));
        let b_first = full_reverse(self.side_from_ray(ps, v, u, line, -1));
        let b_second = reverse_rays(u, self.side_from_ray(ps, u, v, line, -1));
        ApexOrders { u, v, above: select_apexes(&a_first, &a_second), below: select_apexes(&b_first, &b_second) }
    }

    pub fn is_flip_cut_edge(&self, ps: &PointSet, e: Edge) -> FlipCutReport {
        report(e, z_components(ps, &self.apex_orders(ps, e)))
    }
}

/// Every flip cut edge of `ps`, in lexicographic order. `O(n^3)` overall.
pub fn all_flip_cut_edges(ps: &PointSet) -> Vec<Edge> {
    if ps.len() < 4 {
        return Vec::new();
    }
    let index = AngularIndex::new(ps);
    ps.valid_edges().into_iter().filter(|&e| index.is_flip_cut_edge(ps, e).flip_cut).collect()
}

/// Same as [`all_flip_cut_edges`], testing edges in parallel.
pub fn all_flip_cut_edges_par(ps: &PointSet) -> Vec<Edge> {
    if ps.len() < 4 {
        return Vec::new();
    }
    let index = AngularIndex::new(ps);
    let n = ps.len();
    let mut out: Vec<Edge> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let index = &index;
            (i + 1..n)
                .filter(move |&j| ps.is_edge_unchecked(i, j))
                .map(move |j| Edge::new(i, j))
                .filter(move |&e| index.is_flip_cut_edge(ps, e).flip_cut)
        })
        .collect();
    out.sort();
    out
}

/// Corridor vertices closest to the line through `e` on either side, as
/// `(above, below)`. Ties go to the smaller index.
fn representative_pair(ps: &PointSet, t: &Triangulation, e: Edge) -> Result<(usize, usize)> {
    let c = corridor(ps, t, e)?;
    let (pu, pv) = ps.segment(e);
    let mut best_above: Option<(i128, usize)> = None;
    let mut best_below: Option<(i128, usize)> = None;
    for w in c.vertices() {
        let d = cross(pu, pv, ps.point(w));
        let slot = match d.cmp(&0) {
            Ordering::Greater => &mut best_above,
            Ordering::Less => &mut best_below,
            Ordering::Equal => continue,
        };
        let key = (d.abs(), w);
        if slot.is_none_or(|s| key < s) {
            *slot = Some(key);
        }
    }
    match (best_above, best_below) {
        (Some((_, a)), Some((_, b))) => Ok((a, b)),
        _ => Err(Error::ValidationFailed(format!("corridor of {e} has no vertex on one side"))),
    }
}

/// An edge of `Z` in the same line-graph component as the edges of `t`
/// crossing `e`, found from the corridor of `t` along `e`.
pub fn representative_z_edge(ps: &PointSet, t: &Triangulation, e: Edge) -> Result<Edge> {
    let (a, b) = representative_pair(ps, t, e)?;
    Ok(Edge::new(a, b))
}

/// Precomputed component structure for one forbidden edge, answering
/// same-component queries in time linear in the corridor.
#[derive(Debug, Clone)]
pub struct FlipCutIndex {
    edge: Edge,
    components: ZComponents,
    above_comp: HashMap<usize, usize>,
    below_comp: HashMap<usize, usize>,
}

impl FlipCutIndex {
    pub fn new(ps: &PointSet, e: Edge) -> Result<Self> {
        let orders = apex_orders(ps, e)?;
        let components = z_components(ps, &orders);
        let mut above_comp = HashMap::new();
        let mut below_comp = HashMap::new();
        for (id, c) in components.components.iter().enumerate() {
            above_comp.extend(c.above.iter().map(|&p| (p, id)));
            below_comp.extend(c.below.iter().map(|&p| (p, id)));
        }
        Ok(FlipCutIndex { edge: e, components, above_comp, below_comp })
    }

    pub fn edge(&self) -> Edge {
        self.edge
    }

    pub fn components(&self) -> &ZComponents {
        &self.components
    }

    /// Component id of a triangulation avoiding the edge.
    pub fn component_of(&self, ps: &PointSet, t: &Triangulation) -> Result<usize> {
        let (a, b) = representative_pair(ps, t, self.edge)?;
        match (self.above_comp.get(&a), self.below_comp.get(&b)) {
            (Some(x), Some(y)) if x == y => Ok(*x),
            _ => Err(Error::ValidationFailed(format!(
                "representative {a}-{b} of {} lies in no component",
                self.edge
            ))),
        }
    }

    pub fn same_component(&self, ps: &PointSet, t1: &Triangulation, t2: &Triangulation) -> Result<bool> {
        Ok(self.component_of(ps, t1)? == self.component_of(ps, t2)?)
    }
}

/// Whether `t1` and `t2` are connected by flips that never create `e`.
pub fn same_component(ps: &PointSet, e: Edge, t1: &Triangulation, t2: &Triangulation) -> Result<bool> {
    FlipCutIndex::new(ps, e)?.same_component(ps, t1, t2)
}
