//! Exact integer predicates and the combinatorial vocabulary built on them:
//! points, point sets, edges, proper crossings and empty convex polygons.
//!
//! Coordinates are bounded by `±(2^31 - 1)`, so every determinant used here
//! fits comfortably in an `i128`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted absolute coordinate value.
pub const COORD_LIMIT: i64 = i32::MAX as i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of `pqr`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (ax, ay) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (bx, by) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    ax * by - ay * bx
}

/// Sign of `(q - p) x (r - p)`: `1` for a counterclockwise turn, `0` when
/// collinear, `-1` for clockwise.
#[inline]
pub fn orient(p: Point, q: Point, r: Point) -> i32 {
    match cross(p, q, r).cmp(&0) {
        Ordering::Greater => 1,
        Ordering::Equal => 0,
        Ordering::Less => -1,
    }
}

#[inline]
pub fn dist2(p: Point, q: Point) -> i128 {
    let dx = (p.x - q.x) as i128;
    let dy = (p.y - q.y) as i128;
    dx * dx + dy * dy
}

/// True when `r` lies strictly between `p` and `q` on their segment.
#[inline]
pub fn strictly_between(p: Point, q: Point, r: Point) -> bool {
    if cross(p, q, r) != 0 {
        return false;
    }
    let dot = (r.x - p.x) as i128 * (q.x - p.x) as i128 + (r.y - p.y) as i128 * (q.y - p.y) as i128;
    dot > 0 && dot < dist2(p, q)
}

/// True iff the open segments `ab` and `cd` cross in exactly one point.
///
/// Shared endpoints, T-junctions and collinear overlap are not crossings.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4
}

/// An unordered pair of point indices, stored with `i < j`.
///
/// `Edge::new` only normalizes the pair; [`PointSet::edge`] additionally
/// checks that the segment is an edge of a concrete point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    i: usize,
    j: usize,
}

impl Edge {
    /// # Panics
    /// If `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge { i: a, j: b }
        } else {
            Edge { i: b, j: a }
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.i, self.j]
    }

    pub fn has(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.has(other.i) || self.has(other.j)
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.i, e.j]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;
    fn try_from(v: [usize; 2]) -> std::result::Result<Self, String> {
        if v[0] == v[1] {
            Err(format!("degenerate edge [{}, {}]", v[0], v[1]))
        } else {
            Ok(Edge::new(v[0], v[1]))
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

/// A finite set of distinct integer points, indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(Error::CoordinateOutOfRange { x: p.x, y: p.y });
            }
            if !seen.insert(*p) {
                return Err(Error::DuplicatePoint { x: p.x, y: p.y });
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    /// Parses the `x y` per-line text format; `#` lines and blank lines are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut next = |what: &str| -> Result<i64> {
                let tok = it.next().ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    msg: format!("missing {what} coordinate"),
                })?;
                tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("bad integer {tok:?}"),
                })
            };
            let x = next("x")?;
            let y = next("y")?;
            if it.next().is_some() {
                return Err(Error::Parse { line: lineno + 1, msg: "expected exactly two integers".into() });
            }
            points.push(Point::new(x, y));
        }
        Self::new(points)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            s.push_str(&format!("{} {}\n", p.x, p.y));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.points.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.points.len() })
        }
    }

    /// Index of the point with the given coordinates, if present.
    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.points.iter().position(|&q| q == p)
    }

    /// True iff no third point lies on the closed segment between `i` and `j`.
    pub fn is_edge(&self, i: usize, j: usize) -> Result<bool> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::NotAnEdge { i, j });
        }
        Ok(self.is_edge_unchecked(i, j))
    }

    pub(crate) fn is_edge_unchecked(&self, i: usize, j: usize) -> bool {
        let (p, q) = (self.points[i], self.points[j]);
        !self
            .points
            .iter()
            .enumerate()
            .any(|(k, &r)| k != i && k != j && strictly_between(p, q, r))
    }

    /// Validated edge constructor.
    pub fn edge(&self, i: usize, j: usize) -> Result<Edge> {
        if self.is_edge(i, j)? {
            Ok(Edge::new(i, j))
        } else {
            Err(Error::NotAnEdge { i, j })
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        self.edge(e.i, e.j).map(|_| ())
    }

    pub fn segment(&self, e: Edge) -> (Point, Point) {
        (self.points[e.i], self.points[e.j])
    }

    /// Every edge of the point set, in lexicographic order.
    pub fn valid_edges(&self) -> Vec<Edge> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.is_edge_unchecked(i, j) {
                    out.push(Edge::new(i, j));
                }
            }
        }
        out
    }

    pub fn edges_cross(&self, f: Edge, g: Edge) -> bool {
        let (a, b) = self.segment(f);
        let (c, d) = self.segment(g);
        segments_cross(a, b, c, d)
    }

    /// Indices of the convex hull vertices in counterclockwise order, without
    /// collinear boundary points.
    pub fn hull(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| (self.points[i].x, self.points[i].y));
        if idx.len() < 3 {
            return idx;
        }
        let mut lower: Vec<usize> = Vec::new();
        for &i in &idx {
            while lower.len() >= 2
                && cross(self.points[lower[lower.len() - 2]], self.points[lower[lower.len() - 1]], self.points[i]) <= 0
            {
                lower.pop();
            }
            lower.push(i);
        }
        let mut upper: Vec<usize> = Vec::new();
        for &i in idx.iter().rev() {
            while upper.len() >= 2
                && cross(self.points[upper[upper.len() - 2]], self.points[upper[upper.len() - 1]], self.points[i]) <= 0
            {
                upper.pop();
            }
            upper.push(i);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    }
}

/// Sorts `k` distinct points into counterclockwise order around their
/// lowest point. Returns `None` if they are not in strictly convex position.
fn strictly_convex_order(pts: &[Point], vertices: &[usize]) -> Option<Vec<usize>> {
    let pivot = *vertices.iter().min_by_key(|&&v| (pts[v].y, pts[v].x))?;
    let p0 = pts[pivot];
    let mut rest: Vec<usize> = vertices.iter().copied().filter(|&v| v != pivot).collect();
    rest.sort_by(|&a, &b| {
        // everything lies in the half-plane above the pivot, so the cross
        // product is a total order on directions
        match cross(p0, pts[b], pts[a]) {
            c if c > 0 => Ordering::Greater,
            c if c < 0 => Ordering::Less,
            _ => dist2(p0, pts[a]).cmp(&dist2(p0, pts[b])),
        }
    });
    let mut ring = Vec::with_capacity(vertices.len());
    ring.push(pivot);
    ring.extend(rest);
    let k = ring.len();
    for t in 0..k {
        let (a, b, c) = (pts[ring[t]], pts[ring[(t + 1) % k]], pts[ring[(t + 2) % k]]);
        if cross(a, b, c) <= 0 {
            return None;
        }
    }
    Some(ring)
}

/// True iff the given 3 to 5 points are in strictly convex position and no
/// other point of `ps` lies inside or on the boundary of their hull.
///
/// Vertices may be given in any order.
pub fn empty_convex_polygon(ps: &PointSet, vertices: &[usize]) -> Result<bool> {
    let k = vertices.len();
    if !(3..=5).contains(&k) {
        return Err(Error::PolygonSize(k));
    }
    for (t, &v) in vertices.iter().enumerate() {
        ps.check_index(v)?;
        if vertices[..t].contains(&v) {
            return Err(Error::RepeatedVertex(v));
        }
    }
    Ok(empty_convex_unchecked(ps, vertices))
}

pub(crate) fn empty_convex_unchecked(ps: &PointSet, vertices: &[usize]) -> bool {
    let pts = ps.points();
    let Some(ring) = strictly_convex_order(pts, vertices) else {
        return false;
    };
    let k = ring.len();
    for (idx, &p) in pts.iter().enumerate() {
        if ring.contains(&idx) {
            continue;
        }
        let inside = (0..k).all(|t| cross(pts[ring[t]], pts[ring[(t + 1) % k]], p) >= 0);
        if inside {
            return false;
        }
    }
    true
}

pub fn is_ec3(ps: &PointSet, a: usize, b: usize, c: usize) -> Result<bool> {
    empty_convex_polygon(ps, &[a, b, c])
}

pub fn is_ec4(ps: &PointSet, a: usize, b: usize, c: usize, d: usize) -> Result<bool> {
    empty_convex_polygon(ps, &[a, b, c, d])
}

pub fn is_ec5(ps: &PointSet, a: usize, b: usize, c: usize, d: usize, f: usize) -> Result<bool> {
    empty_convex_polygon(ps, &[a, b, c, d, f])
}

/// All edges of `ps` that properly cross `e`. Quadratic in the number of
/// points; meant for oracle-scale inputs.
pub fn crossing_edges(ps: &PointSet, e: Edge) -> Result<BTreeSet<Edge>> {
    ps.check_edge(e)?;
    let (u, v) = ps.segment(e);
    let n = ps.len();
    let mut out = BTreeSet::new();
    for a in 0..n {
        let pa = ps.point(a);
        let sa = orient(u, v, pa);
        if sa <= 0 {
            continue;
        }
        for b in 0..n {
            let pb = ps.point(b);
            if orient(u, v, pb) >= 0 || !segments_cross(u, v, pa, pb) {
                continue;
            }
            if ps.is_edge_unchecked(a, b) {
                out.insert(Edge::new(a, b));
            }
        }
    }
    Ok(out)
}
