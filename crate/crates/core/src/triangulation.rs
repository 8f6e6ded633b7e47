//! Triangulations as canonical edge sets, flips, greedy constrained
//! completion, the corridor of triangles along a segment, and exhaustive
//! enumeration for small point sets.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cross, dist2, empty_convex_unchecked, segments_cross, strictly_between, Edge, PointSet};

/// Default cap on the number of points accepted by exhaustive enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 12;

/// A maximal set of pairwise non-crossing edges together with the triangles
/// it induces. Equality is equality of edge sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    edges: BTreeSet<Edge>,
    triangles: BTreeSet<[usize; 3]>,
}

fn tri(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

fn third(t: &[usize; 3], e: Edge) -> usize {
    *t.iter().find(|&&v| !e.has(v)).expect("triangle has a vertex off the edge")
}

impl Triangulation {
    /// Assembles a triangulation from parts already known to be consistent.
    pub(crate) fn from_parts(edges: BTreeSet<Edge>, triangles: BTreeSet<[usize; 3]>) -> Self {
        Triangulation { edges, triangles }
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Triangles as sorted index triples.
    pub fn triangles(&self) -> &BTreeSet<[usize; 3]> {
        &self.triangles
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn triangles_on(&self, e: Edge) -> Vec<[usize; 3]> {
        self.triangles.iter().filter(|t| t.contains(&e.i()) && t.contains(&e.j())).copied().collect()
    }

    pub fn to_text(&self) -> String {
        self.edges.iter().map(|e| format!("{} {}\n", e.i(), e.j())).collect()
    }

    pub(crate) fn replace_edge(&mut self, m: FlipMove) {
        let on: Vec<[usize; 3]> = self.triangles_on(m.removed);
        debug_assert_eq!(on.len(), 2);
        for t in &on {
            self.triangles.remove(t);
        }
        let [a, b] = m.added.endpoints();
        self.triangles.insert(tri(a, b, m.removed.i()));
        self.triangles.insert(tri(a, b, m.removed.j()));
        self.edges.remove(&m.removed);
        self.edges.insert(m.added);
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeListJson {
    edges: Vec<Edge>,
}

/// Parses a triangulation edge list: either `i j` per line (`#` comments
/// allowed) or the JSON object `{"edges": [[i, j], ...]}`.
pub fn parse_edge_list(text: &str) -> Result<BTreeSet<Edge>> {
    if text.trim_start().starts_with('{') {
        let parsed: EdgeListJson =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        return Ok(parsed.edges.into_iter().collect());
    }
    let mut out = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse { line: lineno + 1, msg: format!("expected two indices, got {line:?}") };
        if parts.len() != 2 {
            return Err(bad());
        }
        let i: usize = parts[0].parse().map_err(|_| bad())?;
        let j: usize = parts[1].parse().map_err(|_| bad())?;
        if i == j {
            return Err(bad());
        }
        out.insert(Edge::new(i, j));
    }
    Ok(out)
}

pub fn edges_to_json(edges: &BTreeSet<Edge>) -> serde_json::Value {
    serde_json::json!({ "edges": edges.iter().collect::<Vec<_>>() })
}

/// One flip: `removed` leaves the triangulation and `added` replaces it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipMove {
    #[serde(rename = "remove")]
    pub removed: Edge,
    #[serde(rename = "add")]
    pub added: Edge,
}

impl FlipMove {
    pub fn reversed(self) -> FlipMove {
        FlipMove { removed: self.added, added: self.removed }
    }
}

/// Empty, non-degenerate triangles spanned by triples of pairwise-adjacent
/// edges.
fn derive_triangles(ps: &PointSet, edges: &BTreeSet<Edge>) -> BTreeSet<[usize; 3]> {
    let n = ps.len();
    let mut adj = vec![BTreeSet::new(); n];
    for e in edges {
        adj[e.i()].insert(e.j());
        adj[e.j()].insert(e.i());
    }
    let mut out = BTreeSet::new();
    for e in edges {
        let (i, j) = (e.i(), e.j());
        for &k in adj[i].intersection(&adj[j]) {
            if k <= j {
                continue;
            }
            if triangle_is_empty(ps, i, j, k) {
                out.insert([i, j, k]);
            }
        }
    }
    out
}

fn triangle_is_empty(ps: &PointSet, i: usize, j: usize, k: usize) -> bool {
    let (a, b, c) = (ps.point(i), ps.point(j), ps.point(k));
    let s = cross(a, b, c).signum();
    if s == 0 {
        return false;
    }
    ps.points().iter().enumerate().all(|(idx, &p)| {
        if idx == i || idx == j || idx == k {
            return true;
        }
        let inside =
            cross(a, b, p) * s >= 0 && cross(b, c, p) * s >= 0 && cross(c, a, p) * s >= 0;
        !inside
    })
}

/// Checks that `edges` is a triangulation of `ps` and derives its triangles.
pub fn validate(ps: &PointSet, edges: impl IntoIterator<Item = Edge>) -> Result<Triangulation> {
    let edges: BTreeSet<Edge> = edges.into_iter().collect();
    for &e in &edges {
        ps.check_edge(e)?;
    }
    let list: Vec<Edge> = edges.iter().copied().collect();
    for (a, &f) in list.iter().enumerate() {
        for &g in &list[a + 1..] {
            if ps.edges_cross(f, g) {
                return Err(Error::CrossingPair(f, g));
            }
        }
    }
    for cand in ps.valid_edges() {
        if !edges.contains(&cand) && !list.iter().any(|&f| ps.edges_cross(f, cand)) {
            return Err(Error::NotMaximal(cand));
        }
    }
    let triangles = derive_triangles(ps, &edges);
    Ok(Triangulation { edges, triangles })
}

/// The opposite diagonal of `f`, when `f` borders two triangles whose union
/// is an empty convex quadrilateral.
pub fn flippable(ps: &PointSet, t: &Triangulation, f: Edge) -> Result<Option<Edge>> {
    if !t.contains(f) {
        return Err(Error::EdgeNotInTriangulation(f));
    }
    let on = t.triangles_on(f);
    if on.len() != 2 {
        return Ok(None);
    }
    let (a, b) = (third(&on[0], f), third(&on[1], f));
    if empty_convex_unchecked(ps, &[f.i(), a, f.j(), b]) {
        Ok(Some(Edge::new(a, b)))
    } else {
        Ok(None)
    }
}

pub fn apply_flip(ps: &PointSet, t: &Triangulation, m: FlipMove) -> Result<Triangulation> {
    let illegal = Error::IllegalFlip { removed: m.removed, added: m.added };
    match flippable(ps, t, m.removed) {
        Ok(Some(g)) if g == m.added => {
            let mut out = t.clone();
            out.replace_edge(m);
            Ok(out)
        }
        _ => Err(illegal),
    }
}

/// A triangulation containing every edge of `forced`: the forced edges are
/// inserted first, then all remaining edges by increasing squared length
/// (ties by index pair) whenever they cross nothing already present.
pub fn constrained_triangulation(ps: &PointSet, forced: &BTreeSet<Edge>) -> Result<Triangulation> {
    for &e in forced {
        ps.check_edge(e)?;
    }
    let list: Vec<Edge> = forced.iter().copied().collect();
    for (a, &f) in list.iter().enumerate() {
        for &g in &list[a + 1..] {
            if ps.edges_cross(f, g) {
                return Err(Error::CrossingPair(f, g));
            }
        }
    }
    let mut cands = ps.valid_edges();
    cands.sort_by_key(|&e| {
        let (p, q) = ps.segment(e);
        (dist2(p, q), e.i(), e.j())
    });
    let mut chosen = list;
    for c in cands {
        if forced.contains(&c) {
            continue;
        }
        if !chosen.iter().any(|&f| ps.edges_cross(f, c)) {
            chosen.push(c);
        }
    }
    let edges: BTreeSet<Edge> = chosen.into_iter().collect();
    let triangles = derive_triangles(ps, &edges);
    Ok(Triangulation { edges, triangles })
}

/// Triangles of a triangulation met by the open segment of a query edge,
/// ordered from its first endpoint to its second, and the triangulation edges
/// crossed between consecutive triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corridor {
    pub triangles: Vec<[usize; 3]>,
    pub crossed: Vec<Edge>,
}

impl Corridor {
    /// Distinct vertices of the corridor triangles.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.triangles.iter().flatten().copied().collect()
    }
}

pub fn corridor(ps: &PointSet, t: &Triangulation, e: Edge) -> Result<Corridor> {
    ps.check_edge(e)?;
    if t.contains(e) {
        return Err(Error::EdgeInTriangulation(e));
    }
    let (u, v) = (e.i(), e.j());
    let (pu, pv) = (ps.point(u), ps.point(v));
    let mut by_edge: HashMap<Edge, Vec<[usize; 3]>> = HashMap::new();
    for tr in t.triangles() {
        for (a, b) in [(tr[0], tr[1]), (tr[1], tr[2]), (tr[0], tr[2])] {
            by_edge.entry(Edge::new(a, b)).or_default().push(*tr);
        }
    }
    let crosses_uv = |a: usize, b: usize| segments_cross(pu, pv, ps.point(a), ps.point(b));

    let start = t
        .triangles()
        .iter()
        .find(|tr| {
            tr.contains(&u) && {
                let o: Vec<usize> = tr.iter().copied().filter(|&x| x != u).collect();
                crosses_uv(o[0], o[1])
            }
        })
        .copied()
        .ok_or_else(|| Error::ValidationFailed(format!("no triangle at {u} is crossed by {e}")))?;
    let mut triangles = vec![start];
    let mut crossed = Vec::new();
    let o: Vec<usize> = start.iter().copied().filter(|&x| x != u).collect();
    let mut gate = Edge::new(o[0], o[1]);
    let mut current = start;
    loop {
        crossed.push(gate);
        let next = by_edge
            .get(&gate)
            .and_then(|ts| ts.iter().find(|&&tr| tr != current))
            .copied()
            .ok_or_else(|| Error::ValidationFailed(format!("corridor of {e} leaves the hull at {gate}")))?;
        triangles.push(next);
        let w = third(&next, gate);
        if w == v {
            break;
        }
        debug_assert!(!strictly_between(pu, pv, ps.point(w)));
        gate = if crosses_uv(gate.i(), w) { Edge::new(gate.i(), w) } else { Edge::new(gate.j(), w) };
        current = next;
    }
    Ok(Corridor { triangles, crossed })
}

/// All triangulations of `ps` for up to [`DEFAULT_ENUM_BOUND`] points.
pub fn enumerate_triangulations(ps: &PointSet) -> Result<Vec<Triangulation>> {
    enumerate_triangulations_bounded(ps, DEFAULT_ENUM_BOUND)
}

pub fn enumerate_triangulations_bounded(ps: &PointSet, bound: usize) -> Result<Vec<Triangulation>> {
    let mut out = Vec::new();
    for_each_triangulation(ps, bound, |t| out.push(t))?;
    Ok(out)
}

/// Streams every triangulation of `ps` exactly once to `emit`.
///
/// Backtracks over the valid edges in lexicographic order. An excluded edge
/// stays pending until some included edge crosses it; a branch dies once a
/// pending edge has no later crossing candidate left.
pub fn for_each_triangulation<F: FnMut(Triangulation)>(ps: &PointSet, bound: usize, mut emit: F) -> Result<()> {
    if ps.len() > bound {
        return Err(Error::SizeBoundExceeded { got: ps.len(), bound });
    }
    if ps.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: ps.len() });
    }
    let edges = ps.valid_edges();
    let m = edges.len();
    let mut crosses = vec![vec![false; m]; m];
    let mut last_cross = vec![None; m];
    for a in 0..m {
        for b in a + 1..m {
            if ps.edges_cross(edges[a], edges[b]) {
                crosses[a][b] = true;
                crosses[b][a] = true;
                last_cross[a] = Some(b);
            }
        }
    }
    struct Search<'a, F> {
        ps: &'a PointSet,
        edges: &'a [Edge],
        crosses: &'a [Vec<bool>],
        last_cross: &'a [Option<usize>],
        included: Vec<usize>,
        pending: Vec<usize>,
        emit: F,
    }
    impl<F: FnMut(Triangulation)> Search<'_, F> {
        fn run(&mut self, k: usize) {
            if self.pending.iter().any(|&p| self.last_cross[p].is_none_or(|l| l < k)) {
                return;
            }
            if k == self.edges.len() {
                debug_assert!(self.pending.is_empty());
                let set: BTreeSet<Edge> = self.included.iter().map(|&a| self.edges[a]).collect();
                let triangles = derive_triangles(self.ps, &set);
                (self.emit)(Triangulation { edges: set, triangles });
                return;
            }
            if self.included.iter().any(|&a| self.crosses[a][k]) {
                self.run(k + 1);
                return;
            }
            // include k
            let saved = self.pending.clone();
            self.pending.retain(|&p| !self.crosses[p][k]);
            self.included.push(k);
            self.run(k + 1);
            self.included.pop();
            self.pending = saved;
            // exclude k, to be crossed later
            if self.last_cross[k].is_some() {
                self.pending.push(k);
                self.run(k + 1);
                self.pending.pop();
            }
        }
    }
    let mut s = Search {
        ps,
        edges: &edges,
        crosses: &crosses,
        last_cross: &last_cross,
        included: Vec::new(),
        pending: Vec::new(),
        emit: &mut emit,
    };
    s.run(0);
    Ok(())
}
