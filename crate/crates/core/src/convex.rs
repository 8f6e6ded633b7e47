//! Points in convex position, handled combinatorially by cyclic index.
//!
//! Labels `0..n` are the hull order. A chord joins two labels that are not
//! cyclically consecutive; two chords cross iff their endpoints interleave.
//! Every 3-cycle of a triangulation is a triangle and every quadrilateral is
//! convex and empty, so a chord can be flipped whenever it is not on the
//! hull. [`gen_convex`](crate::generators::gen_convex) gives a coordinate
//! realization used to replay paths through the geometric code.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::gen_convex;
use crate::geometry::Edge;
use crate::triangulation::{apply_flip, validate, FlipMove, Triangulation};

pub fn is_chord(n: usize, e: Edge) -> bool {
    e.j() < n && e.j() - e.i() >= 2 && !(e.i() == 0 && e.j() == n - 1)
}

pub fn chords_cross(a: Edge, b: Edge) -> bool {
    let (p, q, r, s) = (a.i(), a.j(), b.i(), b.j());
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

pub fn chords_of(n: usize, t: &Triangulation) -> BTreeSet<Edge> {
    t.edges().iter().copied().filter(|&e| is_chord(n, e)).collect()
}

fn check_forbidden(n: usize, forbidden: &BTreeSet<Edge>) -> Result<()> {
    match forbidden.iter().find(|&&c| !is_chord(n, c)) {
        Some(&c) => Err(Error::NotAChord(c)),
        None => Ok(()),
    }
}

/// Builds the triangulation of the convex `n`-gon with the given chords.
pub fn triangulation_from_chords(n: usize, chords: &BTreeSet<Edge>) -> Result<Triangulation> {
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    check_forbidden(n, chords)?;
    let list: Vec<Edge> = chords.iter().copied().collect();
    for (a, &f) in list.iter().enumerate() {
        if let Some(&g) = list[a + 1..].iter().find(|&&g| chords_cross(f, g)) {
            return Err(Error::CrossingPair(f, g));
        }
    }
    if list.len() != n - 3 {
        return Err(Error::ValidationFailed(format!("{} chords, a triangulation needs {}", list.len(), n - 3)));
    }
    let mut edges: BTreeSet<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
    edges.extend(list);
    let mut adj = vec![BTreeSet::new(); n];
    for e in &edges {
        adj[e.i()].insert(e.j());
        adj[e.j()].insert(e.i());
    }
    let mut triangles = BTreeSet::new();
    for e in &edges {
        for &k in adj[e.i()].intersection(&adj[e.j()]) {
            if k > e.j() {
                triangles.insert([e.i(), e.j(), k]);
            }
        }
    }
    Ok(Triangulation::from_parts(edges, triangles))
}

/// Re-derives `t` from its chords, rejecting anything that is not a
/// triangulation of the convex `n`-gon.
fn check_triangulation(n: usize, t: &Triangulation) -> Result<()> {
    if let Some(&e) = t.edges().iter().find(|e| e.j() >= n) {
        return Err(Error::IndexOutOfRange { index: e.j(), len: n });
    }
    let rebuilt = triangulation_from_chords(n, &chords_of(n, t))?;
    if rebuilt != *t {
        return Err(Error::ValidationFailed("not a triangulation of the convex polygon".into()));
    }
    Ok(())
}

fn check_avoids(t: &Triangulation, forbidden: &BTreeSet<Edge>) -> Result<()> {
    match forbidden.iter().find(|&&c| t.contains(c)) {
        Some(&c) => Err(Error::ForbiddenChord(c)),
        None => Ok(()),
    }
}

/// The chord replacing `c` when it is flipped.
pub fn flip_partner(t: &Triangulation, c: Edge) -> Option<Edge> {
    let on = t.triangles_on(c);
    if on.len() != 2 {
        return None;
    }
    let third = |tr: &[usize; 3]| *tr.iter().find(|&&v| !c.has(v)).unwrap();
    Some(Edge::new(third(&on[0]), third(&on[1])))
}

pub fn star(n: usize, p: usize) -> Result<Triangulation> {
    if p >= n {
        return Err(Error::IndexOutOfRange { index: p, len: n });
    }
    let chords = (0..n).filter(|&q| q != p).map(|q| Edge::new(p, q)).filter(|&e| is_chord(n, e)).collect();
    triangulation_from_chords(n, &chords)
}

/// A start triangulation and the flips applied to it in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipPath {
    pub start: Triangulation,
    pub moves: Vec<FlipMove>,
}

#[derive(Serialize, Deserialize)]
struct FlipPathJson {
    start: Vec<Edge>,
    moves: Vec<FlipMove>,
}

impl FlipPath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the path combinatorially and returns the last triangulation.
    pub fn end(&self) -> Result<Triangulation> {
        let mut cur = self.start.clone();
        for &m in &self.moves {
            if !cur.contains(m.removed) || flip_partner(&cur, m.removed) != Some(m.added) {
                return Err(Error::IllegalFlip { removed: m.removed, added: m.added });
            }
            cur.replace_edge(m);
        }
        Ok(cur)
    }

    /// Replays the path through the geometric flip code on the parabola
    /// realization, checking every move and that no triangulation along the
    /// way contains a forbidden chord. Returns the last triangulation.
    pub fn validate(&self, n: usize, forbidden: &BTreeSet<Edge>) -> Result<Triangulation> {
        let ps = gen_convex(n)?;
        let mut cur = validate(&ps, self.start.edges().iter().copied())?;
        if cur != self.start {
            return Err(Error::ValidationFailed("start triangulation differs from its geometric realization".into()));
        }
        check_avoids(&cur, forbidden)?;
        for &m in &self.moves {
            cur = apply_flip(&ps, &cur, m)?;
            if forbidden.contains(&m.added) {
                return Err(Error::ForbiddenChord(m.added));
            }
        }
        Ok(cur)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = FlipPathJson { start: self.start.edges().iter().copied().collect(), moves: self.moves.clone() };
        serde_json::to_value(j).expect("flip path serializes")
    }

    pub fn from_json(n: usize, value: &serde_json::Value) -> Result<FlipPath> {
        let j: FlipPathJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        let edges: BTreeSet<Edge> = j.start.into_iter().collect();
        let start = triangulation_from_chords(n, &edges.iter().copied().filter(|&e| is_chord(n, e)).collect())?;
        if *start.edges() != edges {
            return Err(Error::ValidationFailed("start edges are not a triangulation of the polygon".into()));
        }
        Ok(FlipPath { start, moves: j.moves })
    }
}

/// A frozen triangulation, its flip partners, and a second triangulation
/// avoiding them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagCutSet {
    pub frozen: Triangulation,
    pub forbidden: BTreeSet<Edge>,
    pub other: Triangulation,
}

impl ZigzagCutSet {
    pub fn to_json(&self, n: usize) -> serde_json::Value {
        serde_json::json!({
            "n": n,
            "T": chords_of(n, &self.frozen),
            "X": self.forbidden,
            "T2": chords_of(n, &self.other),
        })
    }
}

fn zigzag_path(n: usize) -> Vec<usize> {
    let (mut lo, mut hi) = (0, n - 2);
    let mut seq = vec![lo];
    while seq.len() < n - 2 {
        if seq.len() % 2 == 1 {
            seq.push(hi);
            hi -= 1;
        } else {
            lo += 1;
            seq.push(lo);
        }
    }
    seq
}

fn path_chords(seq: &[usize]) -> BTreeSet<Edge> {
    seq.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
}

/// The zigzag triangulation `T` on `0, n-2, 1, n-3, ...`, the set `X` of
/// the chords its chords flip to, and the mirrored zigzag `T2` starting from
/// `0` in the other direction.
///
/// Fails with `ValidationFailed` when the mirror meets `X`, which happens
/// for `n = 5`: the pentagon's flip graph is a 5-cycle and no two chords
/// disconnect it.
pub fn zigzag_cut_set(n: usize) -> Result<ZigzagCutSet> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!("zigzag cut set needs n >= 5, got {n}")));
    }
    let seq = zigzag_path(n);
    let frozen = triangulation_from_chords(n, &path_chords(&seq))?;
    let mirrored: Vec<usize> = seq.iter().map(|&i| (n - i) % n).collect();
    let other = triangulation_from_chords(n, &path_chords(&mirrored))?;
    let mut forbidden = BTreeSet::new();
    for c in chords_of(n, &frozen) {
        let f = flip_partner(&frozen, c).ok_or_else(|| Error::ValidationFailed(format!("chord {c} not flippable")))?;
        forbidden.insert(f);
    }
    if forbidden.len() != n - 3 {
        return Err(Error::ValidationFailed(format!("{} distinct flip partners, expected {}", forbidden.len(), n - 3)));
    }
    if let Some(&c) = forbidden.iter().find(|&&c| other.contains(c)) {
        return Err(Error::ValidationFailed(format!("mirrored zigzag contains forbidden chord {c}")));
    }
    if other == frozen {
        return Err(Error::ValidationFailed("mirrored zigzag equals the zigzag".into()));
    }
    Ok(ZigzagCutSet { frozen, forbidden, other })
}

/// Vertices of a convex sub-polygon, ascending (which is also cyclic order).
#[derive(Debug, Clone)]
struct Poly {
    verts: Vec<usize>,
}

impl Poly {
    fn full(n: usize) -> Self {
        Poly { verts: (0..n).collect() }
    }

    fn len(&self) -> usize {
        self.verts.len()
    }

    fn without(&self, v: usize) -> Poly {
        Poly { verts: self.verts.iter().copied().filter(|&w| w != v).collect() }
    }

    fn pos(&self, v: usize) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    fn has_chord(&self, e: Edge) -> bool {
        let m = self.len();
        match (self.pos(e.i()), self.pos(e.j())) {
            (Some(a), Some(b)) => b - a >= 2 && !(a == 0 && b == m - 1),
            _ => false,
        }
    }

    /// The chord cutting off the vertex at position `k`.
    fn ear(&self, k: usize) -> Edge {
        let m = self.len();
        Edge::new(self.verts[(k + m - 1) % m], self.verts[(k + 1) % m])
    }

    fn chords_in<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> BTreeSet<Edge> {
        edges.into_iter().copied().filter(|&e| self.has_chord(e)).collect()
    }

    fn free_vertex(&self, forbidden: &BTreeSet<Edge>) -> Option<usize> {
        self.verts.iter().copied().find(|&p| !forbidden.iter().any(|c| c.has(p)))
    }

    fn star_chords(&self, p: usize) -> BTreeSet<Edge> {
        self.verts.iter().filter(|&&q| q != p).map(|&q| Edge::new(p, q)).filter(|&e| self.has_chord(e)).collect()
    }

    fn ears_in(&self, chords: &BTreeSet<Edge>) -> Vec<usize> {
        if self.len() < 4 {
            return Vec::new();
        }
        (0..self.len()).filter(|&k| chords.contains(&self.ear(k))).collect()
    }
}

fn avoiding_in(poly: &Poly, forbidden: &BTreeSet<Edge>) -> Result<BTreeSet<Edge>> {
    if poly.len() <= 3 {
        return Ok(BTreeSet::new());
    }
    let local = poly.chords_in(forbidden);
    if let Some(p) = poly.free_vertex(&local) {
        return Ok(poly.star_chords(p));
    }
    for k in 0..poly.len() {
        let ear = poly.ear(k);
        if !local.contains(&ear) {
            let mut chords = avoiding_in(&poly.without(poly.verts[k]), &local)?;
            chords.insert(ear);
            return Ok(chords);
        }
    }
    Err(Error::TooManyForbidden { got: local.len(), limit: poly.len() - 3 })
}

/// A triangulation of the convex `n`-gon using no chord of `forbidden`:
/// the star at the first point touching no forbidden chord if there is one,
/// otherwise the first non-forbidden ear plus a recursive triangulation of
/// the rest.
pub fn avoiding_triangulation(n: usize, forbidden: &BTreeSet<Edge>) -> Result<Triangulation> {
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    check_forbidden(n, forbidden)?;
    if forbidden.len() > n - 3 {
        return Err(Error::TooManyForbidden { got: forbidden.len(), limit: n - 3 });
    }
    triangulation_from_chords(n, &avoiding_in(&Poly::full(n), forbidden)?)
}

struct PathBuilder<'a> {
    n: usize,
    forbidden: &'a BTreeSet<Edge>,
    cur: Triangulation,
    moves: Vec<FlipMove>,
    limit: usize,
}

impl PathBuilder<'_> {
    fn push(&mut self, m: FlipMove) -> Result<()> {
        if self.forbidden.contains(&m.added) {
            return Err(Error::ForbiddenChord(m.added));
        }
        self.cur.replace_edge(m);
        self.moves.push(m);
        if self.moves.len() > self.limit {
            return Err(Error::PathTooLong(self.limit));
        }
        Ok(())
    }

    /// Flips inside `poly` until every chord of `poly` is incident to `p`.
    fn to_star(&mut self, poly: &Poly, p: usize) -> Result<()> {
        while let Some(m) = star_step(&self.cur, poly, p) {
            self.push(m)?;
        }
        Ok(())
    }

    /// Transforms the part of the current triangulation inside `poly` into
    /// the triangulation of `poly` with chords `target`.
    fn connect(&mut self, poly: &Poly, target: &BTreeSet<Edge>) -> Result<()> {
        let here = poly.chords_in(self.cur.edges());
        if here == *target {
            return Ok(());
        }
        let local = poly.chords_in(self.forbidden);
        if let Some(p) = poly.free_vertex(&local) {
            self.to_star(poly, p)?;
            let mut all = chords_of(self.n, &self.cur);
            all.retain(|&c| !poly.has_chord(c));
            all.extend(target.iter().copied());
            let mut other = triangulation_from_chords(self.n, &all)?;
            let mut back = Vec::new();
            while let Some(m) = star_step(&other, poly, p) {
                other.replace_edge(m);
                back.push(m);
            }
            for m in back.into_iter().rev() {
                self.push(m.reversed())?;
            }
            return Ok(());
        }
        let ours = poly.ears_in(&here);
        let theirs = poly.ears_in(target);
        if let Some(&k) = ours.iter().find(|k| theirs.contains(k)) {
            let sub = poly.without(poly.verts[k]);
            let sub_target = sub.chords_in(target);
            return self.connect(&sub, &sub_target);
        }
        for &k1 in &ours {
            let e1 = poly.ear(k1);
            let Some(&k2) = theirs.iter().find(|&&k2| !chords_cross(e1, poly.ear(k2))) else {
                continue;
            };
            let (q1, q2) = (poly.verts[k1], poly.verts[k2]);
            let e2 = poly.ear(k2);
            let p1 = poly.without(q1);
            let mut r1 = avoiding_in(&p1.without(q2), &local)?;
            r1.insert(e2);
            self.connect(&p1, &r1)?;
            let sub = poly.without(q2);
            let sub_target = sub.chords_in(target);
            return self.connect(&sub, &sub_target);
        }
        Err(Error::ValidationFailed(format!("no usable ear pair in a {}-gon", poly.len())))
    }
}

fn star_step(t: &Triangulation, poly: &Poly, p: usize) -> Option<FlipMove> {
    t.triangles().iter().find_map(|tr| {
        if !tr.contains(&p) || !tr.iter().all(|&v| poly.pos(v).is_some()) {
            return None;
        }
        let mut rest = tr.iter().copied().filter(|&v| v != p);
        let qr = Edge::new(rest.next()?, rest.next()?);
        if !poly.has_chord(qr) {
            return None;
        }
        let s = flip_partner(t, qr)?.other(p);
        Some(FlipMove { removed: qr, added: Edge::new(p, s) })
    })
}

fn move_limit(n: usize) -> usize {
    4 * n * n + 16
}

/// Flips `t` to the star at `p`, never creating a chord of `forbidden`.
/// Every flip increases the number of chords at `p`.
pub fn flip_to_star(n: usize, t: &Triangulation, p: usize, forbidden: &BTreeSet<Edge>) -> Result<FlipPath> {
    check_triangulation(n, t)?;
    check_forbidden(n, forbidden)?;
    if p >= n {
        return Err(Error::IndexOutOfRange { index: p, len: n });
    }
    if forbidden.iter().any(|c| c.has(p)) {
        return Err(Error::IncidentToForbidden(p));
    }
    check_avoids(t, forbidden)?;
    let mut b = PathBuilder { n, forbidden, cur: t.clone(), moves: Vec::new(), limit: move_limit(n) };
    b.to_star(&Poly::full(n), p)?;
    Ok(FlipPath { start: t.clone(), moves: b.moves })
}

/// A flip path from `s` to `t` through triangulations avoiding
/// `forbidden`, which may hold at most `n - 4` chords.
pub fn connect_avoiding(n: usize, forbidden: &BTreeSet<Edge>, s: &Triangulation, t: &Triangulation) -> Result<FlipPath> {
    check_triangulation(n, s)?;
    check_triangulation(n, t)?;
    check_forbidden(n, forbidden)?;
    let limit = n.saturating_sub(4);
    if forbidden.len() > limit {
        return Err(Error::TooManyForbidden { got: forbidden.len(), limit });
    }
    check_avoids(s, forbidden)?;
    check_avoids(t, forbidden)?;
    let mut b = PathBuilder { n, forbidden, cur: s.clone(), moves: Vec::new(), limit: move_limit(n) };
    b.connect(&Poly::full(n), &chords_of(n, t))?;
    if b.cur != *t {
        return Err(Error::ValidationFailed("construction did not reach the target".into()));
    }
    Ok(FlipPath { start: s.clone(), moves: b.moves })
}
