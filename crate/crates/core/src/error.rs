//! Crate-wide error type.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A curve piece overlaps the reference path in a way the symbolic
    /// perturbation cannot orient.
    DegenerateOverlap,
    /// A curve touches s or t (the punctures of the ambient space).
    TouchesTerminal,
    /// s or t lies on an obstacle.
    PointOnObstacle(u32),
    /// The queried point does not lie on the obstacle.
    PointNotOnObstacle(u32),
    /// Shape fails its structural invariants.
    InvalidShape(String),
    InvalidReferencePath(String),
    InvalidInstance(String),
    /// Operation does not support this obstacle kind.
    UnsupportedShape(&'static str),
    /// Query point lies on an arrangement edge or vertex.
    PointOnSkeleton,
    /// An ingested obstacle subgraph is not connected.
    DisconnectedObstacleSubgraph(u32),
    /// A plane graph failed validation.
    InvalidPlaneGraph(String),
    /// Solver requires unit weights.
    NonUnitWeights,
    /// Brute force instance exceeds the configured cap.
    TooLarge { n: usize, cap: usize },
    /// Static-intersection structure queried with the wrong piece kind.
    KindMismatch,
    /// Reduction input has a self-loop.
    SelfLoop(u32),
    /// Malformed input file.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateOverlap => {
                write!(f, "degenerate overlap with the reference path")
            }
            Error::TouchesTerminal => write!(f, "curve passes through s or t"),
            Error::PointOnObstacle(id) => write!(f, "s or t lies on obstacle {id}"),
            Error::PointNotOnObstacle(id) => {
                write!(f, "query point does not lie on obstacle {id}")
            }
            Error::InvalidShape(m) => write!(f, "invalid shape: {m}"),
            Error::InvalidReferencePath(m) => write!(f, "invalid reference path: {m}"),
            Error::InvalidInstance(m) => write!(f, "invalid instance: {m}"),
            Error::UnsupportedShape(op) => write!(f, "unsupported obstacle kind for {op}"),
            Error::PointOnSkeleton => write!(f, "point lies on the arrangement skeleton"),
            Error::DisconnectedObstacleSubgraph(id) => {
                write!(f, "obstacle {id} induces a disconnected subgraph")
            }
            Error::InvalidPlaneGraph(m) => write!(f, "invalid plane graph: {m}"),
            Error::NonUnitWeights => write!(f, "solver requires unit weights"),
            Error::TooLarge { n, cap } => {
                write!(f, "instance has {n} obstacles, brute force cap is {cap}")
            }
            Error::KindMismatch => write!(f, "piece kind does not match the structure"),
            Error::SelfLoop(v) => write!(f, "graph has a self-loop at vertex {v}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for Error {}
