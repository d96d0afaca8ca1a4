use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use crate::tournament::{Color, ColoredTournament, EdgeColor, Vertex};

use super::{CompressError, Mode};

/// Upper limit on the number of vertices `compress` will build.
pub const MAX_OUTPUT_VERTICES: usize = 4096;

/// Where one color class of `G` lands in `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPlan {
    pub color: Color,
    /// The king vertex of `G` for a king color.
    pub king: Option<Vertex>,
    /// First `H` vertex of the class; classes occupy contiguous id ranges.
    pub start: Vertex,
    pub len: usize,
}

impl ClassPlan {
    pub fn range(&self) -> Range<Vertex> {
        self.start..self.start + self.len
    }
}

/// Layout of `H`: realized colors in ascending order, each king color as a
/// single vertex and each non-king color as a block `Zᶜ` of `multiplicity`
/// vertices. `Zᶜ` is cut into `blocks` slices of `slot` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    pub mode: Mode,
    pub blocks: usize,
    pub slot: usize,
    pub multiplicity: usize,
    pub classes: Vec<ClassPlan>,
}

impl PartitionPlan {
    pub fn new(g: &ColoredTournament, mode: Mode) -> Result<Self, CompressError> {
        let (blocks, slot) = block_shape(g, mode)?;
        let multiplicity = blocks.checked_mul(slot).ok_or(CompressError::TooLarge {
            vertices: usize::MAX,
            limit: MAX_OUTPUT_VERTICES,
        })?;
        let sizes = g.class_sizes();
        let mut classes = Vec::with_capacity(sizes.len());
        let mut next = 0usize;
        for (&color, &count) in &sizes {
            let (king, len) = if count == 1 {
                (Some(g.vertices_of(color)[0]), 1)
            } else {
                (None, multiplicity)
            };
            classes.push(ClassPlan {
                color,
                king,
                start: next,
                len,
            });
            next = next.saturating_add(len);
        }
        if next > MAX_OUTPUT_VERTICES {
            return Err(CompressError::TooLarge {
                vertices: next,
                limit: MAX_OUTPUT_VERTICES,
            });
        }
        Ok(PartitionPlan {
            mode,
            blocks,
            slot,
            multiplicity,
            classes,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.iter().map(|c| c.len).sum()
    }

    pub fn kings(&self) -> impl Iterator<Item = &ClassPlan> {
        self.classes.iter().filter(|c| c.king.is_some())
    }

    pub fn non_kings(&self) -> impl Iterator<Item = &ClassPlan> {
        self.classes.iter().filter(|c| c.king.is_none())
    }

    /// `Z_iᶜ`, the `i`-th slice of a non-king class.
    pub fn z_block(&self, class: &ClassPlan, i: usize) -> Range<Vertex> {
        let lo = class.start + i * self.slot;
        lo..lo + self.slot
    }

    /// `Y₀ᶜ, Y₁ᶜ, Y₂ᶜ`: thirds of `Zᶜ`, the last one taking the remainder.
    pub fn y_blocks(&self, class: &ClassPlan) -> [Range<Vertex>; 3] {
        let third = class.len / 3;
        let s = class.start;
        [
            s..s + third,
            s + third..s + 2 * third,
            s + 2 * third..s + class.len,
        ]
    }

    /// `X₀ᶜ, X₁ᶜ`: halves of `Zᶜ`.
    pub fn x_blocks(&self, class: &ClassPlan) -> [Range<Vertex>; 2] {
        let half = class.len / 2;
        let s = class.start;
        [s..s + half, s + half..s + class.len]
    }
}

/// Per-class multiplicity for `g` under `mode`: the number of vertices each
/// non-king color gets in the compressed graph.
pub fn multiplicity(g: &ColoredTournament, mode: Mode) -> Result<usize, CompressError> {
    let (blocks, slot) = block_shape(g, mode)?;
    blocks.checked_mul(slot).ok_or(CompressError::TooLarge {
        vertices: usize::MAX,
        limit: MAX_OUTPUT_VERTICES,
    })
}

fn block_shape(g: &ColoredTournament, mode: Mode) -> Result<(usize, usize), CompressError> {
    match mode {
        Mode::PaperExact => {
            let k = g.num_colors();
            if k < 6 {
                return Err(CompressError::TooFewColors { k });
            }
            let too_large = CompressError::TooLarge {
                vertices: usize::MAX,
                limit: MAX_OUTPUT_VERTICES,
            };
            let k = usize::try_from(k).map_err(|_| too_large.clone())?;
            let l = usize::try_from(g.num_edge_colors()).map_err(|_| too_large)?;
            Ok((k, l))
        }
        Mode::Tight => {
            let realized = g.realized_colors().len();
            let widest = widest_edge_set(&g.edge_color_table());
            Ok((realized.max(6), widest))
        }
    }
}

fn widest_edge_set(table: &BTreeMap<(Color, Color), BTreeSet<EdgeColor>>) -> usize {
    table.values().map(BTreeSet::len).max().unwrap_or(0)
}
