//! Integer point sets for the named families: grids, the two-chain channel,
//! the hourglass, convex position on a parabola, and seeded random sets.
//! Each constructor checks the family's defining property before returning.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cross, empty_convex_unchecked, orient, segments_cross, Edge, Point, PointSet};
use crate::oracle::ec5_criterion;

/// Largest channel size for which the EC5 check is run exhaustively.
const CHANNEL_EC5_CHECK_MAX: usize = 6;
const HOURGLASS_RADIUS: i64 = 1_000_000;
const HOURGLASS_RETRIES: u32 = 8;

fn too_small(name: &str, needed: usize, got: usize) -> Error {
    Error::InvalidParameter(format!("{name} must be at least {needed}, got {got}"))
}

/// All integer points of `[0, k) x [0, l)`, row-major: index `y * k + x`.
pub fn gen_grid(k: usize, l: usize) -> Result<PointSet> {
    if k < 2 || l < 2 {
        return Err(too_small("grid side", 2, k.min(l)));
    }
    let mut pts = Vec::with_capacity(k * l);
    for y in 0..l as i64 {
        for x in 0..k as i64 {
            pts.push(Point::new(x, y));
        }
    }
    PointSet::new(pts)
}

/// Two facing reflex chains. `top[i - 1]` is the index of `t_i` and
/// `bottom[i - 1]` the index of `b_i`.
#[derive(Debug, Clone)]
pub struct Channel {
    pub points: PointSet,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl Channel {
    /// The edge `b_i t_j`, 1-based as in the construction.
    pub fn cross_edge(&self, i: usize, j: usize) -> Edge {
        Edge::new(self.bottom[i - 1], self.top[j - 1])
    }
}

pub fn gen_channel(n: usize) -> Result<Channel> {
    if n < 3 {
        return Err(too_small("channel size", 3, n));
    }
    // the offset keeps each chain on the far side of every line through two
    // points of the other chain; the arcs bend by about 4n^2 over the width
    let h = 2 * (n * n) as i64 + 1;
    let mut pts = Vec::with_capacity(2 * n);
    for i in 1..=n as i64 {
        let d = 2 * i - n as i64 - 1;
        pts.push(Point::new(4 * i, d * d + h));
    }
    for i in 1..=n as i64 {
        let d = 2 * i - n as i64 - 1;
        pts.push(Point::new(4 * i, -d * d - h));
    }
    let points = PointSet::new(pts)?;
    let channel = Channel { points, top: (0..n).collect(), bottom: (n..2 * n).collect() };
    validate_channel(&channel)?;
    Ok(channel)
}

fn validate_channel(c: &Channel) -> Result<()> {
    let ps = &c.points;
    let n = c.top.len();
    for w in 1..n - 1 {
        let (a, b, d) = (c.top[w - 1], c.top[w], c.top[w + 1]);
        if orient(ps.point(a), ps.point(b), ps.point(d)) <= 0 {
            return Err(Error::ValidationFailed(format!("top chain not reflex at t_{}", w + 1)));
        }
        let (a, b, d) = (c.bottom[w - 1], c.bottom[w], c.bottom[w + 1]);
        if orient(ps.point(a), ps.point(b), ps.point(d)) >= 0 {
            return Err(Error::ValidationFailed(format!("bottom chain not reflex at b_{}", w + 1)));
        }
    }
    for (chain, other, side) in [(&c.top, &c.bottom, -1), (&c.bottom, &c.top, 1)] {
        for (x, &a) in chain.iter().enumerate() {
            for &b in &chain[x + 1..] {
                if other.iter().any(|&q| orient(ps.point(a), ps.point(b), ps.point(q)) != side) {
                    return Err(Error::ValidationFailed("chains are not mutually separated".into()));
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let e = c.cross_edge(i, j);
            if !ps.is_edge_unchecked(e.i(), e.j()) {
                return Err(Error::ValidationFailed(format!("b_{i} t_{j} is not an edge")));
            }
            if n <= CHANNEL_EC5_CHECK_MAX && !ec5_criterion(ps, e)?.applicable {
                return Err(Error::ValidationFailed(format!("b_{i} t_{j} is the diagonal of an EC5")));
            }
        }
    }
    Ok(())
}

/// Antipodal arc points around a short central edge `uv`. `a[i - 1]` and
/// `b[i - 1]` index `a_i` and `b_i`.
#[derive(Debug, Clone)]
pub struct Hourglass {
    pub points: PointSet,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub u: usize,
    pub v: usize,
    pub radius: i64,
}

impl Hourglass {
    pub fn uv(&self) -> Edge {
        Edge::new(self.u, self.v)
    }
}

pub fn gen_hourglass(n: usize) -> Result<Hourglass> {
    if n < 2 {
        return Err(too_small("hourglass size", 2, n));
    }
    let mut radius = HOURGLASS_RADIUS;
    for _ in 0..HOURGLASS_RETRIES {
        if let Some(h) = hourglass_with_radius(n, radius)? {
            return Ok(h);
        }
        radius = radius.saturating_mul(2);
        if radius > crate::geometry::COORD_LIMIT {
            break;
        }
    }
    Err(Error::ValidationFailed(format!("hourglass({n}) did not validate up to radius {radius}")))
}

fn hourglass_with_radius(n: usize, radius: i64) -> Result<Option<Hourglass>> {
    let mut pts = Vec::with_capacity(2 * n + 2);
    for i in 1..=n {
        let theta = std::f64::consts::PI * (1.0 - i as f64 / (n as f64 + 1.0));
        let x = (radius as f64 * theta.cos()).round() as i64;
        let y = (radius as f64 * theta.sin()).round() as i64;
        pts.push(Point::new(x, y));
    }
    for i in 0..n {
        let p = pts[i];
        pts.push(Point::new(-p.x, -p.y));
    }
    pts.push(Point::new(-1, 0));
    pts.push(Point::new(1, 0));
    let points = match PointSet::new(pts) {
        Ok(ps) => ps,
        Err(Error::DuplicatePoint { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let h = Hourglass { points, a: (0..n).collect(), b: (n..2 * n).collect(), u: 2 * n, v: 2 * n + 1, radius };
    let want: BTreeSet<Edge> = (0..n).map(|i| Edge::new(h.a[i], h.b[i])).collect();
    Ok((diagonal_partners(&h.points, h.uv()) == want).then_some(h))
}

/// Crossing edges `ab` with `u a v b` an EC4, computed from the empty-triangle
/// apexes on each side rather than from all crossing edges. Only cubic in the
/// worst case through the emptiness checks, which keeps large hourglasses
/// cheap to validate.
fn diagonal_partners(ps: &PointSet, e: Edge) -> BTreeSet<Edge> {
    let (u, v) = (e.i(), e.j());
    let (pu, pv) = ps.segment(e);
    let apex = |side: i128| -> Vec<usize> {
        (0..ps.len())
            .filter(|&p| cross(pu, pv, ps.point(p)).signum() == side && empty_convex_unchecked(ps, &[u, v, p]))
            .collect()
    };
    let (above, below) = (apex(1), apex(-1));
    let mut out = BTreeSet::new();
    for &a in &above {
        for &b in &below {
            if segments_cross(pu, pv, ps.point(a), ps.point(b))
                && ps.is_edge_unchecked(a, b)
                && empty_convex_unchecked(ps, &[u, a, v, b])
            {
                out.insert(Edge::new(a, b));
            }
        }
    }
    out
}

/// Points `(i, i^2)`, `i = 0..n`; index order is the hull order.
pub fn gen_convex(n: usize) -> Result<PointSet> {
    if n < 3 {
        return Err(too_small("convex size", 3, n));
    }
    PointSet::new((0..n as i64).map(|i| Point::new(i, i * i)).collect())
}

/// `n` distinct points uniform in `[0, bound]^2`, deterministic in `seed`.
/// Without `allow_collinear`, points that would complete a collinear triple
/// are redrawn, within a budget proportional to `n`.
pub fn gen_random(n: usize, bound: i64, seed: u64, allow_collinear: bool) -> Result<PointSet> {
    if n < 3 {
        return Err(too_small("random size", 3, n));
    }
    if bound < n as i64 || bound > crate::geometry::COORD_LIMIT {
        return Err(Error::InvalidParameter(format!("bound {bound} must lie in [{n}, 2^31 - 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut seen = HashSet::with_capacity(n);
    let mut budget = 1000 * n as u64 + 10_000;
    while pts.len() < n {
        if budget == 0 {
            return Err(Error::ValidationFailed(format!("resampling budget exhausted after {} points", pts.len())));
        }
        budget -= 1;
        let p = Point::new(rng.gen_range(0..=bound), rng.gen_range(0..=bound));
        if seen.contains(&p) {
            continue;
        }
        if !allow_collinear && completes_collinear(&pts, p) {
            continue;
        }
        seen.insert(p);
        pts.push(p);
    }
    PointSet::new(pts)
}

fn completes_collinear(pts: &[Point], p: Point) -> bool {
    pts.iter().enumerate().any(|(x, &a)| pts[x + 1..].iter().any(|&b| cross(a, b, p) == 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Grid { k: usize, l: usize },
    Channel { n: usize },
    Hourglass { n: usize },
    ConvexParabola { n: usize },
    Random { n: usize, bound: i64, seed: u64, allow_collinear: bool },
}

/// A generated set with `#` comment lines naming its special indices.
#[derive(Debug, Clone)]
pub struct Generated {
    pub points: PointSet,
    pub comments: Vec<String>,
}

impl Generated {
    pub fn to_text(&self) -> String {
        let mut s: String = self.comments.iter().map(|c| format!("# {c}\n")).collect();
        s.push_str(&self.points.to_text());
        s
    }
}

fn index_list(name: &str, idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().enumerate().map(|(k, p)| format!("{name}{}={p}", k + 1)).collect();
    parts.join(" ")
}

pub fn generate(family: Family) -> Result<Generated> {
    Ok(match family {
        Family::Grid { k, l } => Generated {
            points: gen_grid(k, l)?,
            comments: vec![format!("grid {k}x{l}, index = y*{k} + x")],
        },
        Family::Channel { n } => {
            let c = gen_channel(n)?;
            Generated {
                comments: vec![format!("channel {n}"), index_list("t", &c.top), index_list("b", &c.bottom)],
                points: c.points,
            }
        }
        Family::Hourglass { n } => {
            let h = gen_hourglass(n)?;
            Generated {
                comments: vec![
                    format!("hourglass {n}, radius {}", h.radius),
                    index_list("a", &h.a),
                    index_list("b", &h.b),
                    format!("u={} v={}", h.u, h.v),
                ],
                points: h.points,
            }
        }
        Family::ConvexParabola { n } => Generated {
            points: gen_convex(n)?,
            comments: vec![format!("convex position, {n} points on y = x^2")],
        },
        Family::Random { n, bound, seed, allow_collinear } => Generated {
            points: gen_random(n, bound, seed, allow_collinear)?,
            comments: vec![format!("random n={n} bound={bound} seed={seed} allow_collinear={allow_collinear}")],
        },
    })
}
