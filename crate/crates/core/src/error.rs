use thiserror::Error;

use crate::geometry::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point index {index} out of range for a set of {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("point ({x}, {y}) appears more than once")]
    DuplicatePoint { x: i64, y: i64 },

    #[error("coordinate ({x}, {y}) exceeds the signed 32-bit bound")]
    CoordinateOutOfRange { x: i64, y: i64 },

    #[error("at least {needed} points are required, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("{i}-{j} is not an edge of the point set")]
    NotAnEdge { i: usize, j: usize },

    #[error("polygon size {0} outside 3..=5")]
    PolygonSize(usize),

    #[error("repeated vertex {0} in polygon")]
    RepeatedVertex(usize),

    #[error("edges {0} and {1} cross")]
    CrossingPair(Edge, Edge),

    #[error("edge set is not maximal: {0} can be added")]
    NotMaximal(Edge),

    #[error("edge {0} is not in the triangulation")]
    EdgeNotInTriangulation(Edge),

    #[error("edge {0} is already in the triangulation")]
    EdgeInTriangulation(Edge),

    #[error("illegal flip {removed} -> {added}")]
    IllegalFlip { removed: Edge, added: Edge },

    #[error("{got} points exceeds the enumeration bound of {bound}")]
    SizeBoundExceeded { got: usize, bound: usize },

    #[error("{got} forbidden chords exceeds the limit of {limit}")]
    TooManyForbidden { got: usize, limit: usize },

    #[error("triangulation contains forbidden chord {0}")]
    ForbiddenChord(Edge),

    #[error("point {0} is incident to a forbidden chord")]
    IncidentToForbidden(usize),

    #[error("{0} is not a chord of the polygon")]
    NotAChord(Edge),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction failed validation: {0}")]
    ValidationFailed(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("flip path exceeded {0} moves")]
    PathTooLong(usize),
}

impl Error {
    /// Short machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DuplicatePoint { .. } => "duplicate_point",
            Error::CoordinateOutOfRange { .. } => "coordinate_out_of_range",
            Error::TooFewPoints { .. } => "too_few_points",
            Error::NotAnEdge { .. } => "not_an_edge",
            Error::PolygonSize(_) => "polygon_size",
            Error::RepeatedVertex(_) => "repeated_vertex",
            Error::CrossingPair(..) => "crossing_pair",
            Error::NotMaximal(_) => "not_maximal",
            Error::EdgeNotInTriangulation(_) => "edge_not_in_triangulation",
            Error::EdgeInTriangulation(_) => "edge_in_triangulation",
            Error::IllegalFlip { .. } => "illegal_flip",
            Error::SizeBoundExceeded { .. } => "size_bound_exceeded",
            Error::TooManyForbidden { .. } => "too_many_forbidden",
            Error::ForbiddenChord(_) => "forbidden_chord",
            Error::IncidentToForbidden(_) => "incident_to_forbidden",
            Error::NotAChord(_) => "not_a_chord",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::ValidationFailed(_) => "validation_failed",
            Error::Parse { .. } => "parse",
            Error::PathTooLong(_) => "path_too_long",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
