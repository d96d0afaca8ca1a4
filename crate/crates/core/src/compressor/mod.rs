//! Rebuilds every non-king color class of a colored tournament at a fixed
//! size while preserving kings, profiles and edge-color sets.

mod construction;
mod plan;
mod verify;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tournament::{Color, ColoredTournament, TournamentError, Vertex, Violation};

pub use construction::Construction;
pub use plan::{multiplicity, ClassPlan, PartitionPlan, MAX_OUTPUT_VERTICES};
pub use verify::{
    size_table, verify_properties, Direction, Property, PropertyReport, SizeRow, Witness,
};

/// Per-class multiplicity rule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `k·ℓ` with `k`, `ℓ` the declared alphabet sizes; needs `k ≥ 6`.
    PaperExact,
    /// `max(k′, 6)·ℓ′` with `k′` the number of realized colors and `ℓ′` the
    /// largest edge-color set between two realized colors.
    #[default]
    Tight,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::PaperExact => "paper",
            Mode::Tight => "tight",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" | "paper_exact" | "paper-exact" => Ok(Mode::PaperExact),
            "tight" => Ok(Mode::Tight),
            _ => Err(format!("unknown mode `{s}` (expected `paper` or `tight`)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompressionConfig {
    pub mode: Mode,
    /// `None` makes every choice deterministic. With a seed, the Step-2
    /// witness offsets and the Step-1 profile donors are drawn from a
    /// seeded generator.
    pub seed: Option<u64>,
}

impl CompressionConfig {
    pub fn new(mode: Mode) -> Self {
        CompressionConfig { mode, seed: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressError {
    #[error("invalid graph: {0}")]
    Invalid(#[from] Violation),
    #[error("paper mode needs at least 6 colors, got {k}")]
    TooFewColors { k: u64 },
    #[error("output would have {vertices} vertices, limit is {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("edge {0}-{1} written twice")]
    EdgeWrittenTwice(Vertex, Vertex),
    #[error("edge {0}-{1} never written")]
    EdgeUnwritten(Vertex, Vertex),
    #[error("no vertex of the original class has the profile needed at {0}")]
    NoProfileSource(Vertex),
    #[error("class {color} is too small for the partition")]
    PlanTooSmall { color: Color },
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// Builds `H` from `g`: kings and the edges between them are copied, every
/// non-king class gets `multiplicity(g, cfg.mode)` vertices, and the edges
/// touching them are colored in three steps (king edges, edges inside the
/// class, edges to other non-king classes).
pub fn compress(
    g: &ColoredTournament,
    cfg: CompressionConfig,
) -> Result<ColoredTournament, CompressError> {
    Construction::new(g, cfg)?.run()
}
