use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::tournament::{Color, ColoredTournament, EdgeColor, Profile, Vertex};

use super::plan::multiplicity;
use super::{CompressError, Mode};

/// Which of the five construction properties an outcome refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    /// Same king colors.
    A,
    /// Every non-king class has the configured size.
    B,
    /// Same edge-color set between every pair of colors.
    C,
    /// Every non-king vertex of `H` has a color and profile seen in `G`.
    D,
    /// Every non-king vertex sees every allowed edge color towards every
    /// non-king class.
    E,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::A,
        Property::B,
        Property::C,
        Property::D,
        Property::E,
    ];

    pub fn letter(self) -> char {
        match self {
            Property::A => 'a',
            Property::B => 'b',
            Property::C => 'c',
            Property::D => 'd',
            Property::E => 'e',
        }
    }
}

/// Which way an edge must point for an incidence to count. Inside a color
/// class a vertex needs each color both as an outgoing and as an incoming
/// edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Either,
    Outgoing,
    Incoming,
}

/// Counterexample attached to a failed property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `color` is a king color in exactly one of the graphs.
    KingColor { color: Color, king_in_g: bool },
    ClassSize {
        color: Color,
        expected: usize,
        found: usize,
    },
    /// `edge` occurs between `c1` and `c2` in exactly one of the graphs.
    EdgeColor {
        c1: Color,
        c2: Color,
        edge: EdgeColor,
        in_g: bool,
    },
    Profile {
        vertex: Vertex,
        color: Color,
        profile: Profile,
    },
    Incidence {
        vertex: Vertex,
        target: Color,
        edge: EdgeColor,
        direction: Direction,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::KingColor { color, king_in_g } => {
                let side = if *king_in_g { "before" } else { "after" };
                write!(f, "king-color color={color} only={side}")
            }
            Witness::ClassSize {
                color,
                expected,
                found,
            } => write!(
                f,
                "class-size color={color} expected={expected} found={found}"
            ),
            Witness::EdgeColor { c1, c2, edge, in_g } => {
                let side = if *in_g { "before" } else { "after" };
                write!(f, "edge-color c1={c1} c2={c2} edge={edge} only={side}")
            }
            Witness::Profile {
                vertex,
                color,
                profile,
            } => write!(f, "profile vertex={vertex} color={color} profile={profile}"),
            Witness::Incidence {
                vertex,
                target,
                edge,
                direction,
            } => {
                let dir = match direction {
                    Direction::Either => "any",
                    Direction::Outgoing => "out",
                    Direction::Incoming => "in",
                };
                write!(
                    f,
                    "incidence vertex={vertex} target={target} edge={edge} dir={dir}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRow {
    pub color: Color,
    pub before: usize,
    pub after: usize,
}

/// Outcome of [`verify_properties`]: one entry per property (a)–(e), `None`
/// meaning it holds, plus the class sizes before and after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub multiplicity: usize,
    pub outcomes: Vec<(Property, Option<Witness>)>,
    pub sizes: Vec<SizeRow>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|(_, w)| w.is_none())
    }

    pub fn outcome(&self, p: Property) -> Option<&Witness> {
        self.outcomes
            .iter()
            .find(|(q, _)| *q == p)
            .and_then(|(_, w)| w.as_ref())
    }

    pub fn passes(&self, p: Property) -> bool {
        self.outcome(p).is_none()
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, w) in &self.outcomes {
            match w {
                None => writeln!(f, "property {} PASS", p.letter())?,
                Some(w) => writeln!(f, "property {} FAIL witness={w}", p.letter())?,
            }
        }
        writeln!(f, "multiplicity {}", self.multiplicity)?;
        for row in &self.sizes {
            writeln!(
                f,
                "size color={} before={} after={}",
                row.color, row.before, row.after
            )?;
        }
        Ok(())
    }
}

/// Size table for two graphs over the union of their realized colors.
pub fn size_table(g: &ColoredTournament, h: &ColoredTournament) -> Vec<SizeRow> {
    let (sg, sh) = (g.class_sizes(), h.class_sizes());
    let colors: BTreeSet<Color> = sg.keys().chain(sh.keys()).copied().collect();
    colors
        .into_iter()
        .map(|color| SizeRow {
            color,
            before: sg.get(&color).copied().unwrap_or(0),
            after: sh.get(&color).copied().unwrap_or(0),
        })
        .collect()
}

/// Checks properties (a)–(e) of `h` against `g` by scanning every vertex and
/// edge. The expected class size in (b) is the multiplicity `mode` assigns
/// to `g`.
pub fn verify_properties(
    g: &ColoredTournament,
    h: &ColoredTournament,
    mode: Mode,
) -> Result<PropertyReport, CompressError> {
    g.validate()?;
    h.validate()?;
    let mult = multiplicity(g, mode)?;
    let outcomes = vec![
        (Property::A, check_kings(g, h)),
        (Property::B, check_sizes(g, h, mult)),
        (Property::C, check_edge_colors(g, h)),
        (Property::D, check_profiles(g, h)),
        (Property::E, check_incidence(g, h)),
    ];
    Ok(PropertyReport {
        multiplicity: mult,
        outcomes,
        sizes: size_table(g, h),
    })
}

fn check_kings(g: &ColoredTournament, h: &ColoredTournament) -> Option<Witness> {
    let (kg, kh) = (g.king_colors(), h.king_colors());
    if let Some(&color) = kg.difference(&kh).next() {
        return Some(Witness::KingColor {
            color,
            king_in_g: true,
        });
    }
    kh.difference(&kg).next().map(|&color| Witness::KingColor {
        color,
        king_in_g: false,
    })
}

fn check_sizes(g: &ColoredTournament, h: &ColoredTournament, mult: usize) -> Option<Witness> {
    let (sg, sh) = (g.class_sizes(), h.class_sizes());
    let non_king: BTreeSet<Color> = sg
        .iter()
        .chain(sh.iter())
        .filter(|(_, &n)| n > 1)
        .map(|(&c, _)| c)
        .collect();
    non_king.into_iter().find_map(|color| {
        let expected = if sg.contains_key(&color) { mult } else { 0 };
        let found = sh.get(&color).copied().unwrap_or(0);
        (found != expected).then_some(Witness::ClassSize {
            color,
            expected,
            found,
        })
    })
}

fn check_edge_colors(g: &ColoredTournament, h: &ColoredTournament) -> Option<Witness> {
    let (tg, th) = (g.edge_color_table(), h.edge_color_table());
    let keys: BTreeSet<(Color, Color)> = tg.keys().chain(th.keys()).copied().collect();
    let empty = BTreeSet::new();
    keys.into_iter().find_map(|(c1, c2)| {
        let dg = tg.get(&(c1, c2)).unwrap_or(&empty);
        let dh = th.get(&(c1, c2)).unwrap_or(&empty);
        if let Some(&edge) = dg.difference(dh).next() {
            return Some(Witness::EdgeColor {
                c1,
                c2,
                edge,
                in_g: true,
            });
        }
        dh.difference(dg).next().map(|&edge| Witness::EdgeColor {
            c1,
            c2,
            edge,
            in_g: false,
        })
    })
}

fn non_king_profiles(g: &ColoredTournament) -> BTreeMap<Vertex, (Color, Profile)> {
    let kings = g.kings();
    g.vertices()
        .filter(|v| !kings.contains(v))
        .map(|v| (v, (g.color(v), g.profile_against(v, &kings))))
        .collect()
}

fn check_profiles(g: &ColoredTournament, h: &ColoredTournament) -> Option<Witness> {
    let seen: BTreeSet<(Color, Profile)> = non_king_profiles(g).into_values().collect();
    non_king_profiles(h)
        .into_iter()
        .find(|(_, key)| !seen.contains(key))
        .map(|(vertex, (color, profile))| Witness::Profile {
            vertex,
            color,
            profile,
        })
}

fn check_incidence(g: &ColoredTournament, h: &ColoredTournament) -> Option<Witness> {
    let d_sets = g.edge_color_table();
    let sizes = g.class_sizes();
    let non_king: Vec<Color> = sizes
        .iter()
        .filter(|(_, &n)| n > 1)
        .map(|(&c, _)| c)
        .collect();
    let h_kings: BTreeSet<Vertex> = h.kings().into_iter().collect();
    for u in h.vertices().filter(|u| !h_kings.contains(u)) {
        let cu = h.color(u);
        if !non_king.contains(&cu) {
            continue;
        }
        // (target color, edge color) pairs seen leaving and entering u
        let mut out = BTreeSet::new();
        let mut inc = BTreeSet::new();
        for w in h.vertices().filter(|&w| w != u) {
            if let Some(e) = h.edge(u, w) {
                let key = (h.color(w), e.color);
                if e.from == u {
                    out.insert(key);
                } else {
                    inc.insert(key);
                }
            }
        }
        for &c2 in &non_king {
            let Some(d) = d_sets.get(&(cu.min(c2), cu.max(c2))) else {
                continue;
            };
            for &edge in d {
                let key = (c2, edge);
                let missing = if c2 == cu {
                    if !out.contains(&key) {
                        Some(Direction::Outgoing)
                    } else if !inc.contains(&key) {
                        Some(Direction::Incoming)
                    } else {
                        None
                    }
                } else if !out.contains(&key) && !inc.contains(&key) {
                    Some(Direction::Either)
                } else {
                    None
                };
                if let Some(direction) = missing {
                    return Some(Witness::Incidence {
                        vertex: u,
                        target: c2,
                        edge,
                        direction,
                    });
                }
            }
        }
    }
    None
}
