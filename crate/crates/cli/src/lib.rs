//! The `flipcut` command line. [`run`] is the whole program with its I/O
//! passed in, so tests can drive it without spawning processes.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use flipcut_core::convex::{connect_avoiding, is_chord, triangulation_from_chords, zigzag_cut_set};
use flipcut_core::generators::{generate, Family};
use flipcut_core::oracle::{bf_line_graph_components, FlipGraph, Universe};
use flipcut_core::triangulation::parse_edge_list;
use flipcut_core::{
    all_flip_cut_edges, all_flip_cut_edges_par, is_flip_cut_edge, validate, Edge, FlipCutIndex, PointSet,
    Triangulation, DEFAULT_ENUM_BOUND,
};

mod svg;

pub use svg::render_svg;

/// Environment variable overriding the oracle's point-count limit.
pub const ENUM_BOUND_VAR: &str = "FLIPCUT_ENUM_BOUND";

#[derive(Parser, Debug)]
#[command(name = "flipcut", version, about = "Flip cut edges of planar point sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct EdgeArg {
    /// Edge as two point indices
    #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
    edge: Vec<usize>,
}

#[derive(Args, Debug)]
struct ForbidArg {
    /// Forbidden edges as index pairs; may be repeated
    #[arg(long, num_args = 1.., value_name = "I J")]
    forbid: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide whether one edge is a flip cut edge
    TestEdge {
        file: String,
        #[command(flatten)]
        edge: EdgeArg,
        #[arg(long)]
        json: bool,
    },
    /// List every flip cut edge
    AllEdges {
        file: String,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        json: bool,
    },
    /// Components of the flip graph with one edge forbidden
    Components {
        file: String,
        #[command(flatten)]
        edge: EdgeArg,
    },
    /// Whether two triangulations avoiding an edge are flip-connected without it
    SameComponent {
        file: String,
        #[command(flatten)]
        edge: EdgeArg,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
    /// Exhaustive cross-checks on small point sets
    Oracle {
        #[command(subcommand)]
        query: OracleCmd,
    },
    /// Generate a point set
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Zigzag triangulation, its flip cut set, and a second triangulation
    ConvexCutset { n: usize },
    /// Flip path between two triangulations of a convex polygon avoiding chords
    ConnectConvex {
        n: usize,
        #[command(flatten)]
        forbid: ForbidArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Draw a point set as SVG
    Render {
        file: String,
        #[arg(long)]
        highlight_flip_cut: bool,
        /// Edge list to draw underneath
        #[arg(long)]
        triangulation: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Whether forbidding the given edges disconnects the flip graph
    FlipCut {
        file: String,
        #[command(flatten)]
        forbid: ForbidArg,
        #[arg(long)]
        json: bool,
    },
    /// Flip graph and line graph component counts for one forbidden edge
    Components {
        file: String,
        #[command(flatten)]
        edge: EdgeArg,
    },
    /// Breadth-first connectivity of two triangulations avoiding the given edges
    SameComponent {
        file: String,
        #[command(flatten)]
        forbid: ForbidArg,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    Grid { k: usize, l: usize },
    Channel { n: usize },
    Hourglass { n: usize },
    Convex { n: usize },
    Random {
        n: usize,
        #[arg(long, default_value_t = 1000)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_collinear: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(flipcut_core::Error),
    Io(String),
}

impl From<flipcut_core::Error> for Failure {
    fn from(e: flipcut_core::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
        }
    }

    fn points(&mut self, path: &str) -> Result<PointSet, Failure> {
        Ok(PointSet::parse(&self.read(path)?)?)
    }

    fn json(&mut self, v: &serde_json::Value) -> Outcome {
        writeln!(self.stdout, "{}", serde_json::to_string(v).expect("json value serializes"))?;
        Ok(())
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code: 0 on success, 1 on a domain or I/O error (reported as JSON on
/// `stderr`), 2 on a usage error.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    2
                }
            };
        }
    };
    let mut ctx = Ctx { stdin, stdout };
    match dispatch(cli.cmd, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "{}", json!({ "error": e.kind(), "message": e.to_string() }));
            1
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "{}", json!({ "error": "io", "message": msg }));
            1
        }
    }
}

fn enum_bound() -> Result<usize, Failure> {
    match std::env::var(ENUM_BOUND_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{ENUM_BOUND_VAR} must be a count, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_BOUND),
    }
}

fn edge_of(ps: &PointSet, arg: &EdgeArg) -> Result<Edge, Failure> {
    Ok(ps.edge(arg.edge[0], arg.edge[1])?)
}

fn pairs(arg: &ForbidArg) -> Result<BTreeSet<Edge>, Failure> {
    if arg.forbid.len() % 2 != 0 {
        return Err(Failure::Usage("--forbid takes index pairs".into()));
    }
    arg.forbid
        .chunks(2)
        .map(|c| {
            if c[0] == c[1] {
                Err(Failure::Usage(format!("--forbid {} {} is not a pair of distinct points", c[0], c[1])))
            } else {
                Ok(Edge::new(c[0], c[1]))
            }
        })
        .collect()
}

fn triangulation_file(ctx: &mut Ctx, ps: &PointSet, path: &str) -> Result<Triangulation, Failure> {
    let edges = parse_edge_list(&ctx.read(path)?)?;
    Ok(validate(ps, edges)?)
}

fn convex_triangulation_file(ctx: &mut Ctx, n: usize, path: &str) -> Result<Triangulation, Failure> {
    let edges = parse_edge_list(&ctx.read(path)?)?;
    let chords = edges.iter().copied().filter(|&e| is_chord(n, e)).collect();
    let t = triangulation_from_chords(n, &chords)?;
    if let Some(&e) = edges.iter().find(|&&e| !t.contains(e)) {
        return Err(flipcut_core::Error::NotAChord(e).into());
    }
    Ok(t)
}

fn dispatch(cmd: Cmd, ctx: &mut Ctx) -> Outcome {
    match cmd {
        Cmd::TestEdge { file, edge, json } => {
            let ps = ctx.points(&file)?;
            let report = is_flip_cut_edge(&ps, edge_of(&ps, &edge)?)?;
            if json {
                ctx.json(&serde_json::to_value(&report).expect("report serializes"))
            } else {
                writeln!(ctx.stdout, "flip_cut: {}, components: {}", report.flip_cut, report.component_count)?;
                Ok(())
            }
        }
        Cmd::AllEdges { file, parallel, json } => {
            let ps = ctx.points(&file)?;
            let edges = if parallel { all_flip_cut_edges_par(&ps) } else { all_flip_cut_edges(&ps) };
            if json {
                ctx.json(&json!({ "count": edges.len(), "flip_cut_edges": edges }))
            } else {
                for e in edges {
                    writeln!(ctx.stdout, "{} {}", e.i(), e.j())?;
                }
                Ok(())
            }
        }
        Cmd::Components { file, edge } => {
            let ps = ctx.points(&file)?;
            let report = is_flip_cut_edge(&ps, edge_of(&ps, &edge)?)?;
            ctx.json(&serde_json::to_value(&report).expect("report serializes"))
        }
        Cmd::SameComponent { file, edge, t1, t2 } => {
            let ps = ctx.points(&file)?;
            let e = edge_of(&ps, &edge)?;
            let (a, b) = (triangulation_file(ctx, &ps, &t1)?, triangulation_file(ctx, &ps, &t2)?);
            for t in [&a, &b] {
                if t.contains(e) {
                    return Err(flipcut_core::Error::EdgeInTriangulation(e).into());
                }
            }
            let index = FlipCutIndex::new(&ps, e)?;
            let (ca, cb) = (index.component_of(&ps, &a)?, index.component_of(&ps, &b)?);
            ctx.json(&json!({
                "edge": e,
                "same_component": ca == cb,
                "component_t1": ca,
                "component_t2": cb,
                "component_count": index.components().count(),
            }))
        }
        Cmd::Oracle { query } => oracle(query, ctx),
        Cmd::Gen { family } => {
            let family = match family {
                GenCmd::Grid { k, l } => Family::Grid { k, l },
                GenCmd::Channel { n } => Family::Channel { n },
                GenCmd::Hourglass { n } => Family::Hourglass { n },
                GenCmd::Convex { n } => Family::ConvexParabola { n },
                GenCmd::Random { n, bound, seed, allow_collinear } => Family::Random { n, bound, seed, allow_collinear },
            };
            write!(ctx.stdout, "{}", generate(family)?.to_text())?;
            Ok(())
        }
        Cmd::ConvexCutset { n } => {
            let z = zigzag_cut_set(n)?;
            ctx.json(&z.to_json(n))
        }
        Cmd::ConnectConvex { n, forbid, from, to } => {
            let x = pairs(&forbid)?;
            let s = convex_triangulation_file(ctx, n, &from)?;
            let t = convex_triangulation_file(ctx, n, &to)?;
            let path = connect_avoiding(n, &x, &s, &t)?;
            path.validate(n, &x)?;
            ctx.json(&path.to_json())
        }
        Cmd::Render { file, highlight_flip_cut, triangulation, output } => {
            let ps = ctx.points(&file)?;
            let edges: Vec<Edge> = match triangulation {
                Some(path) => triangulation_file(ctx, &ps, &path)?.edges().iter().copied().collect(),
                None => Vec::new(),
            };
            let hl = if highlight_flip_cut { all_flip_cut_edges(&ps) } else { Vec::new() };
            let doc = render_svg(&ps, &edges, &hl);
            match output.as_deref() {
                None | Some("-") => ctx.stdout.write_all(doc.as_bytes())?,
                Some(path) => std::fs::write(path, doc).map_err(|e| Failure::Io(format!("{path}: {e}")))?,
            }
            Ok(())
        }
    }
}

fn oracle_graph(ps: &PointSet) -> Result<FlipGraph, Failure> {
    Ok(FlipGraph::full_bounded(ps, enum_bound()?)?)
}

fn oracle(query: OracleCmd, ctx: &mut Ctx) -> Outcome {
    match query {
        OracleCmd::FlipCut { file, forbid, json } => {
            let ps = ctx.points(&file)?;
            let x = pairs(&forbid)?;
            for &e in &x {
                ps.check_edge(e)?;
            }
            let g = oracle_graph(&ps)?.restricted(&x);
            let r = g.cut_report();
            if json {
                ctx.json(&json!({
                    "oracle": true,
                    "forbidden": x,
                    "flip_cut": r.flip_cut,
                    "component_count": r.component_count,
                    "node_count": r.node_count,
                }))
            } else {
                writeln!(ctx.stdout, "flip_cut: {}, components: {}", r.flip_cut, r.component_count)?;
                Ok(())
            }
        }
        OracleCmd::Components { file, edge } => {
            let ps = ctx.points(&file)?;
            let e = edge_of(&ps, &edge)?;
            let g = oracle_graph(&ps)?.restricted(&[e].into_iter().collect());
            let (count, labels) = g.components();
            let mut sizes = vec![0usize; count];
            for l in labels {
                sizes[l] += 1;
            }
            let gy = bf_line_graph_components(&ps, e, Universe::Y)?;
            let gz = bf_line_graph_components(&ps, e, Universe::Z)?;
            ctx.json(&json!({
                "oracle": true,
                "edge": e,
                "component_count": count,
                "node_count": g.node_count(),
                "component_sizes": sizes,
                "line_graph_y_components": gy.len(),
                "line_graph_z_components": gz.len(),
            }))
        }
        OracleCmd::SameComponent { file, forbid, t1, t2 } => {
            let ps = ctx.points(&file)?;
            let x = pairs(&forbid)?;
            let (a, b) = (triangulation_file(ctx, &ps, &t1)?, triangulation_file(ctx, &ps, &t2)?);
            let g = oracle_graph(&ps)?.restricted(&x);
            let (_, labels) = g.components();
            let mut ids = Vec::new();
            for t in [&a, &b] {
                if let Some(&e) = x.iter().find(|&&e| t.contains(e)) {
                    return Err(flipcut_core::Error::EdgeInTriangulation(e).into());
                }
                let node = g.index_of(t).expect("triangulation avoiding X is a node");
                ids.push(labels[node]);
            }
            ctx.json(&json!({
                "oracle": true,
                "same_component": ids[0] == ids[1],
                "component_t1": ids[0],
                "component_t2": ids[1],
            }))
        }
    }
}
