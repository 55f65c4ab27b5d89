//! Cops and robbers on reflexive graphs, organized around the corner
//! ranking: ranks, cop-win classes, capture times, projection maps, cop and
//! robber strategies, an exact game solver and dismantling orderings.

pub mod battery;
pub mod corpus;
pub mod dismantle;
pub mod engine;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod projection;
pub mod ranking;
pub mod strategy;
pub mod twinfree;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use projection::ProjectionTable;
pub use ranking::{
    capture_time, classify, corner_rank, CaptureTime, CopwinClass, Rank, RankAssignment,
};
