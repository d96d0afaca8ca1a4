use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::TournamentError;

/// Vertex color id in `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub u64);

/// Edge color id in `0..ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColor(pub u64);

pub type Vertex = usize;

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A directed colored edge `from → to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub color: EdgeColor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Slot {
    color: EdgeColor,
    low_to_high: bool,
}

/// First problem found by [`ColoredTournament::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {vertex} has color {color} outside the color alphabet")]
    ColorOutOfRange { vertex: Vertex, color: Color },
    #[error("edge {from}->{to} has color {color} outside the edge-color alphabet")]
    EdgeColorOutOfRange {
        from: Vertex,
        to: Vertex,
        color: EdgeColor,
    },
    #[error("missing edge between {u} and {v}")]
    MissingEdge { u: Vertex, v: Vertex },
    #[error("no orientation fixed between colors {c1} and {c2}")]
    MissingOrientation { c1: Color, c2: Color },
    #[error("edge {from}->{to} goes against the orientation of its color classes")]
    Orientation { from: Vertex, to: Vertex },
}

/// Profile of a non-king vertex: the color of its edge to every king
/// (as stored, in the edge's own direction) paired with the king's color.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub BTreeSet<(EdgeColor, Color)>);

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (d, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({d}, {c})")?;
        }
        f.write_str("}")
    }
}

/// A finite tournament with vertex colors from an alphabet of size `k` and
/// edge colors from an alphabet of size `ℓ`.
///
/// Edges live in a dense upper-triangular table, one slot per unordered
/// pair. Between two different vertex colors the edge direction is fixed
/// by an orientation table; inside a color class each edge carries its own
/// direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTournament {
    num_colors: u64,
    num_edge_colors: u64,
    colors: Vec<Color>,
    slots: Vec<Option<Slot>>,
    /// `(lo, hi) -> true` when edges go from `lo`-vertices to `hi`-vertices.
    orientation: BTreeMap<(Color, Color), bool>,
}

fn tri(u: Vertex, v: Vertex) -> usize {
    let (i, j) = if u < v { (u, v) } else { (v, u) };
    j * (j - 1) / 2 + i
}

fn ordered(c1: Color, c2: Color) -> (Color, Color) {
    if c1 <= c2 {
        (c1, c2)
    } else {
        (c2, c1)
    }
}

impl ColoredTournament {
    /// Empty graph over alphabets of `k` vertex colors and `l` edge colors.
    pub fn new(k: u64, l: u64) -> Self {
        ColoredTournament {
            num_colors: k,
            num_edge_colors: l,
            colors: Vec::new(),
            slots: Vec::new(),
            orientation: BTreeMap::new(),
        }
    }

    pub fn num_colors(&self) -> u64 {
        self.num_colors
    }

    pub fn num_edge_colors(&self) -> u64 {
        self.num_edge_colors
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.colors.len()
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn vertex_colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn add_vertex(&mut self, color: Color) -> Vertex {
        let v = self.colors.len();
        self.colors.push(color);
        self.slots.resize(self.slots.len() + v, None);
        v
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<(), TournamentError> {
        for w in [u, v] {
            if w >= self.colors.len() {
                return Err(TournamentError::VertexOutOfRange(w));
            }
        }
        if u == v {
            return Err(TournamentError::SelfLoop(u));
        }
        Ok(())
    }

    /// Sets the edge between `from` and `to` to point `from → to`, returning
    /// the previous edge of that pair.
    pub fn set_edge(
        &mut self,
        from: Vertex,
        to: Vertex,
        color: EdgeColor,
    ) -> Result<Option<Edge>, TournamentError> {
        self.check_pair(from, to)?;
        let old = self.edge(from, to);
        self.slots[tri(from, to)] = Some(Slot {
            color,
            low_to_high: from < to,
        });
        Ok(old)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<Option<Edge>, TournamentError> {
        self.check_pair(u, v)?;
        let old = self.edge(u, v);
        self.slots[tri(u, v)] = None;
        Ok(old)
    }

    /// The edge between `u` and `v`, in its stored direction.
    pub fn edge(&self, u: Vertex, v: Vertex) -> Option<Edge> {
        if u == v || u.max(v) >= self.colors.len() {
            return None;
        }
        self.slots[tri(u, v)].map(|s| {
            let (lo, hi) = (u.min(v), u.max(v));
            let (from, to) = if s.low_to_high { (lo, hi) } else { (hi, lo) };
            Edge {
                from,
                to,
                color: s.color,
            }
        })
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge(u, v).is_some()
    }

    /// All present edges, ordered by `(max(u,v), min(u,v))`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (1..self.colors.len())
            .flat_map(move |j| (0..j).map(move |i| (i, j)))
            .filter_map(move |(i, j)| self.edge(i, j))
    }

    /// Fixes edges between `from`- and `to`-colored vertices to point from
    /// the former to the latter.
    pub fn set_orientation(&mut self, from: Color, to: Color) {
        assert_ne!(
            from, to,
            "orientation is only fixed between distinct colors"
        );
        let key = ordered(from, to);
        self.orientation.insert(key, key.0 == from);
    }

    /// `Some((from, to))` for the fixed direction between two distinct colors.
    pub fn orientation(&self, c1: Color, c2: Color) -> Option<(Color, Color)> {
        let key = ordered(c1, c2);
        self.orientation
            .get(&key)
            .map(|&lo_first| if lo_first { key } else { (key.1, key.0) })
    }

    /// Orientation table as `(from, to)` color pairs.
    pub fn orientations(&self) -> impl Iterator<Item = (Color, Color)> + '_ {
        self.orientation
            .iter()
            .map(|(&(lo, hi), &lo_first)| if lo_first { (lo, hi) } else { (hi, lo) })
    }

    /// Number of vertices per realized color.
    pub fn class_sizes(&self) -> BTreeMap<Color, usize> {
        let mut sizes = BTreeMap::new();
        for &c in &self.colors {
            *sizes.entry(c).or_insert(0) += 1;
        }
        sizes
    }

    /// Colors with at least one vertex.
    pub fn realized_colors(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    pub fn vertices_of(&self, c: Color) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.colors[v] == c).collect()
    }

    /// Colors realized by exactly one vertex.
    pub fn king_colors(&self) -> BTreeSet<Color> {
        self.class_sizes()
            .into_iter()
            .filter_map(|(c, n)| (n == 1).then_some(c))
            .collect()
    }

    /// King vertices, ordered by color.
    pub fn kings(&self) -> Vec<Vertex> {
        let sizes = self.class_sizes();
        let mut kings: Vec<Vertex> = self
            .vertices()
            .filter(|&v| sizes[&self.colors[v]] == 1)
            .collect();
        kings.sort_by_key(|&v| self.colors[v]);
        kings
    }

    pub fn is_king(&self, v: Vertex) -> bool {
        let c = self.colors[v];
        self.colors.iter().filter(|&&d| d == c).count() == 1
    }

    pub fn profile_of(&self, u: Vertex) -> Result<Profile, TournamentError> {
        if u >= self.colors.len() {
            return Err(TournamentError::VertexOutOfRange(u));
        }
        let kings = self.kings();
        if kings.contains(&u) {
            return Err(TournamentError::IsKing(u));
        }
        Ok(self.profile_against(u, &kings))
    }

    /// Profile of `u` against a precomputed king list.
    pub(crate) fn profile_against(&self, u: Vertex, kings: &[Vertex]) -> Profile {
        Profile(
            kings
                .iter()
                .filter_map(|&k| self.edge(u, k).map(|e| (e.color, self.colors[k])))
                .collect(),
        )
    }

    /// Edge colors occurring between a `c1`-vertex and a `c2`-vertex
    /// (in either direction).
    pub fn edge_colors_between(&self, c1: Color, c2: Color) -> BTreeSet<EdgeColor> {
        self.edges()
            .filter(|e| ordered(self.colors[e.from], self.colors[e.to]) == ordered(c1, c2))
            .map(|e| e.color)
            .collect()
    }

    /// All nonempty edge-color sets, keyed by the ordered color pair.
    pub fn edge_color_table(&self) -> BTreeMap<(Color, Color), BTreeSet<EdgeColor>> {
        let mut table: BTreeMap<(Color, Color), BTreeSet<EdgeColor>> = BTreeMap::new();
        for e in self.edges() {
            let key = ordered(self.colors[e.from], self.colors[e.to]);
            table.entry(key).or_default().insert(e.color);
        }
        table
    }

    /// Checks completeness, alphabet ranges and the fixed orientation.
    /// Loops are unrepresentable.
    pub fn validate(&self) -> Result<(), Violation> {
        for (v, &c) in self.colors.iter().enumerate() {
            if c.0 >= self.num_colors {
                return Err(Violation::ColorOutOfRange {
                    vertex: v,
                    color: c,
                });
            }
        }
        for u in 0..self.colors.len() {
            for v in u + 1..self.colors.len() {
                let e = self.edge(u, v).ok_or(Violation::MissingEdge { u, v })?;
                if e.color.0 >= self.num_edge_colors {
                    return Err(Violation::EdgeColorOutOfRange {
                        from: e.from,
                        to: e.to,
                        color: e.color,
                    });
                }
                let (cf, ct) = (self.colors[e.from], self.colors[e.to]);
                if cf != ct {
                    match self.orientation(cf, ct) {
                        None => {
                            let (c1, c2) = ordered(cf, ct);
                            return Err(Violation::MissingOrientation { c1, c2 });
                        }
                        Some(dir) if dir != (cf, ct) => {
                            return Err(Violation::Orientation {
                                from: e.from,
                                to: e.to,
                            })
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy of the graph with vertex `v` removed; later vertices shift down
    /// by one. The orientation table is kept.
    pub fn without_vertex(&self, v: Vertex) -> Self {
        let mut out = ColoredTournament {
            num_colors: self.num_colors,
            num_edge_colors: self.num_edge_colors,
            colors: Vec::new(),
            slots: Vec::new(),
            orientation: self.orientation.clone(),
        };
        let keep: Vec<Vertex> = self.vertices().filter(|&w| w != v).collect();
        for &w in &keep {
            out.add_vertex(self.colors[w]);
        }
        let new_id = |w: Vertex| if w > v { w - 1 } else { w };
        for e in self.edges() {
            if e.from != v && e.to != v {
                out.set_edge(new_id(e.from), new_id(e.to), e.color)
                    .expect("ids in range");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// King `0` of color 1, two vertices of color 2, every edge color 7.
    fn three_vertex() -> ColoredTournament {
        let mut g = ColoredTournament::new(3, 8);
        let king = g.add_vertex(Color(1));
        let u = g.add_vertex(Color(2));
        let w = g.add_vertex(Color(2));
        g.set_orientation(Color(1), Color(2));
        g.set_edge(king, u, EdgeColor(7)).unwrap();
        g.set_edge(king, w, EdgeColor(7)).unwrap();
        g.set_edge(w, u, EdgeColor(7)).unwrap();
        g
    }

    #[test]
    fn single_vertex_is_valid() {
        let mut g = ColoredTournament::new(1, 1);
        g.add_vertex(Color(0));
        assert_eq!(g.validate(), Ok(()));
    }

    #[test]
    fn missing_edge_is_reported() {
        let mut g = ColoredTournament::new(1, 1);
        g.add_vertex(Color(0));
        g.add_vertex(Color(0));
        assert_eq!(g.validate(), Err(Violation::MissingEdge { u: 0, v: 1 }));
    }

    #[test]
    fn loops_and_bad_ids_are_rejected() {
        let mut g = three_vertex();
        assert_eq!(
            g.set_edge(1, 1, EdgeColor(0)),
            Err(TournamentError::SelfLoop(1))
        );
        assert_eq!(
            g.set_edge(1, 3, EdgeColor(0)),
            Err(TournamentError::VertexOutOfRange(3))
        );
    }

    #[test]
    fn kings_profiles_and_edge_colors() {
        let g = three_vertex();
        assert_eq!(g.validate(), Ok(()));
        assert_eq!(g.king_colors(), BTreeSet::from([Color(1)]));
        assert_eq!(g.kings(), vec![0]);
        let expected = Profile(BTreeSet::from([(EdgeColor(7), Color(1))]));
        assert_eq!(g.profile_of(1).unwrap(), expected);
        assert_eq!(g.profile_of(2).unwrap(), expected);
        assert_eq!(g.profile_of(0), Err(TournamentError::IsKing(0)));
        assert_eq!(
            g.edge_colors_between(Color(1), Color(2)),
            BTreeSet::from([EdgeColor(7)])
        );
        assert_eq!(g.edge_colors_between(Color(0), Color(2)), BTreeSet::new());
        assert_eq!(
            g.edge(1, 2).unwrap(),
            Edge {
                from: 2,
                to: 1,
                color: EdgeColor(7)
            }
        );
    }

    #[test]
    fn all_distinct_colors_are_kings_and_shared_color_is_not() {
        let mut g = ColoredTournament::new(3, 1);
        for c in 0..3 {
            g.add_vertex(Color(c));
        }
        assert_eq!(g.king_colors().len(), 3);
        let mut h = ColoredTournament::new(1, 1);
        h.add_vertex(Color(0));
        h.add_vertex(Color(0));
        assert!(h.king_colors().is_empty());
        assert_eq!(h.profile_of(0).unwrap(), Profile::default());
    }

    #[test]
    fn orientation_violation_is_reported() {
        let mut g = three_vertex();
        g.set_edge(1, 0, EdgeColor(7)).unwrap();
        assert_eq!(g.validate(), Err(Violation::Orientation { from: 1, to: 0 }));
        let mut h = ColoredTournament::new(3, 8);
        h.add_vertex(Color(0));
        h.add_vertex(Color(1));
        h.set_edge(0, 1, EdgeColor(0)).unwrap();
        assert_eq!(
            h.validate(),
            Err(Violation::MissingOrientation {
                c1: Color(0),
                c2: Color(1)
            })
        );
    }

    #[test]
    fn range_checks() {
        let mut g = ColoredTournament::new(2, 1);
        g.add_vertex(Color(2));
        assert!(matches!(
            g.validate(),
            Err(Violation::ColorOutOfRange { vertex: 0, .. })
        ));
        let mut h = ColoredTournament::new(1, 1);
        h.add_vertex(Color(0));
        h.add_vertex(Color(0));
        h.set_edge(0, 1, EdgeColor(1)).unwrap();
        assert!(matches!(
            h.validate(),
            Err(Violation::EdgeColorOutOfRange { .. })
        ));
    }

    #[test]
    fn removing_a_vertex_renumbers() {
        let g = three_vertex();
        let h = g.without_vertex(1);
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.vertex_colors(), &[Color(1), Color(2)]);
        assert_eq!(h.validate(), Ok(()));
        assert_eq!(h.king_colors().len(), 2);
    }
}
