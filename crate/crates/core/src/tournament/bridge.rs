use crate::formula::Vocabulary;
use crate::typespace::{one_type_of, two_type_of, OneType, Structure, TwoType, TypeShape};

use super::graph::{Color, ColoredTournament, EdgeColor};
use super::TournamentError;

/// How the edge between two differently typed elements is directed.
/// Within a type class edges always run from the smaller element id to the
/// larger one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DirectionRule {
    /// From the smaller one-type (by packed bit pattern) to the larger.
    #[default]
    LowToHigh,
    HighToLow,
}

/// Graph of a structure: vertex `a` is colored by the packed one-type of
/// `a` and the edge `a → b` by the packed two-type of `(a, b)`. The
/// alphabets are the full type spaces, `2^(n+m)` and `2^(2n+4m)`.
pub fn from_structure(
    s: &Structure,
    rule: DirectionRule,
) -> Result<ColoredTournament, TournamentError> {
    let shape = TypeShape::of(s.vocabulary())?;
    let mut g = ColoredTournament::new(shape.one_type_count(), shape.two_type_count());
    let types = (0..s.size())
        .map(|a| one_type_of(s, a))
        .collect::<Result<Vec<OneType>, _>>()?;
    for t in &types {
        g.add_vertex(Color(t.bits()));
    }
    for b in 0..s.size() {
        for a in 0..b {
            let (ta, tb) = (types[a], types[b]);
            let forward = match ta.cmp(&tb) {
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Less => rule == DirectionRule::LowToHigh,
                std::cmp::Ordering::Greater => rule == DirectionRule::HighToLow,
            };
            let (from, to) = if forward { (a, b) } else { (b, a) };
            let t = two_type_of(s, from, to)?;
            g.set_edge(from, to, EdgeColor(t.bits()))?;
            if ta != tb {
                g.set_orientation(Color(types[from].bits()), Color(types[to].bits()));
            }
        }
    }
    Ok(g)
}

/// Inverse of [`from_structure`]: reads colors back as types over `vocab`.
/// Every edge color must project onto the colors of its endpoints.
pub fn to_structure(
    g: &ColoredTournament,
    vocab: &Vocabulary,
) -> Result<Structure, TournamentError> {
    let shape = TypeShape::of(vocab)?;
    let mut s = Structure::new(vocab.clone(), g.vertex_count());
    for v in g.vertices() {
        s.set_one_type(v, OneType::from_bits(shape, g.color(v).0)?)?;
    }
    for b in g.vertices() {
        for a in 0..b {
            let e = g.edge(a, b).ok_or(TournamentError::MissingEdge(a, b))?;
            let t = TwoType::from_bits(shape, e.color.0)?;
            if t.project_x().bits() != g.color(e.from).0 || t.project_y().bits() != g.color(e.to).0
            {
                return Err(TournamentError::ProjectionMismatch {
                    from: e.from,
                    to: e.to,
                });
            }
            s.set_pair_relations(e.from, e.to, t)?;
        }
    }
    Ok(s)
}
