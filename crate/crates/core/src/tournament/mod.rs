//! Vertex- and edge-colored tournaments and their correspondence with
//! finite structures.

mod bridge;
mod graph;
mod io;

use thiserror::Error;

use crate::typespace::TypeError;

pub use bridge::{from_structure, to_structure, DirectionRule};
pub use graph::{Color, ColoredTournament, Edge, EdgeColor, Profile, Vertex, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("no vertex {0}")]
    VertexOutOfRange(Vertex),
    #[error("loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} is a king and has no profile")]
    IsKing(Vertex),
    #[error("no edge between {0} and {1}")]
    MissingEdge(Vertex, Vertex),
    #[error("color of edge {from}->{to} does not match its endpoint colors")]
    ProjectionMismatch { from: Vertex, to: Vertex },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Type(#[from] TypeError),
}
