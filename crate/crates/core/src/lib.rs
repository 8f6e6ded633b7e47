//! Flip cut edges of planar point sets.
//!
//! An edge `e` of a point set is a *flip cut edge* when forbidding it splits
//! the triangulation flip graph into several components. This crate decides
//! that question exactly (integer predicates, collinear points allowed),
//! identifies the components, tests whether two triangulations share one,
//! builds the size `n - 3` cut sets and avoiding flip paths for points in
//! convex position, and carries brute-force oracles for all of it.

pub mod convex;
pub mod error;
pub mod flipcut;
pub mod generators;
pub mod geometry;
pub mod oracle;
pub mod triangulation;

pub use convex::{
    avoiding_triangulation, connect_avoiding, flip_to_star, triangulation_from_chords, zigzag_cut_set, FlipPath,
    ZigzagCutSet,
};
pub use error::{Error, Result};
pub use flipcut::{
    all_flip_cut_edges, all_flip_cut_edges_par, apex_orders, is_flip_cut_edge, representative_z_edge, same_component,
    z_components, z_edges, AngularIndex, ApexOrders, FlipCutIndex, FlipCutReport, ZComponent, ZComponents,
};
pub use generators::{gen_channel, gen_convex, gen_grid, gen_hourglass, gen_random, Channel, Family, Hourglass};
pub use geometry::{
    crossing_edges, empty_convex_polygon, is_ec3, is_ec4, is_ec5, orient, segments_cross, Edge, Point, PointSet,
};
pub use oracle::{bf_flip_graph, bf_is_flip_cut, bf_line_graph_components, ec5_criterion, grid_z_oracle, FlipGraph};
pub use triangulation::{
    apply_flip, constrained_triangulation, corridor, enumerate_triangulations, enumerate_triangulations_bounded,
    flippable, validate, Corridor, FlipMove, Triangulation, DEFAULT_ENUM_BOUND,
};
