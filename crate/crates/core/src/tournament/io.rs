//! Line-oriented text format and Graphviz export.
//!
//! ```text
//! colors 6
//! edgecolors 3
//! vertex 0 2
//! vertex 1 4
//! edge 1 0 1
//! ```
//!
//! `vertex i c` gives vertex `i` color `c`; ids must be `0..V` without gaps.
//! `edge u v d` is a `u → v` edge of color `d`, at most one per pair. The
//! orientation between two color classes is read off the edge between them
//! whose (smaller id, larger id) pair comes first; [`ColoredTournament::validate`]
//! then flags any edge that disagrees.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::graph::{Color, ColoredTournament, EdgeColor, Vertex};
use super::TournamentError;

impl fmt::Display for ColoredTournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "colors {}", self.num_colors())?;
        writeln!(f, "edgecolors {}", self.num_edge_colors())?;
        for (v, c) in self.vertex_colors().iter().enumerate() {
            writeln!(f, "vertex {v} {c}")?;
        }
        let mut edges: Vec<_> = self.edges().collect();
        edges.sort();
        for e in edges {
            writeln!(f, "edge {} {} {}", e.from, e.to, e.color)?;
        }
        Ok(())
    }
}

fn numbers<const N: usize>(words: &[&str]) -> Option<[u64; N]> {
    if words.len() != N {
        return None;
    }
    let mut out = [0u64; N];
    for (slot, w) in out.iter_mut().zip(words) {
        *slot = w.parse().ok()?;
    }
    Some(out)
}

type CrossEdge = ((Vertex, Vertex), Color, Color);

impl FromStr for ColoredTournament {
    type Err = TournamentError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| TournamentError::Format { line, message };
        let mut k = None;
        let mut l = None;
        let mut vertices: BTreeMap<u64, (usize, Color)> = BTreeMap::new();
        let mut edges: Vec<(usize, u64, u64, u64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let malformed = || err(line_no, format!("malformed line `{line}`"));
            match words[0] {
                "colors" | "edgecolors" => {
                    let [value] = numbers::<1>(&words[1..]).ok_or_else(malformed)?;
                    let target = if words[0] == "colors" { &mut k } else { &mut l };
                    if target.replace(value).is_some() {
                        return Err(err(line_no, format!("duplicate `{}` line", words[0])));
                    }
                }
                "vertex" => {
                    let [v, c] = numbers::<2>(&words[1..]).ok_or_else(malformed)?;
                    if vertices.insert(v, (line_no, Color(c))).is_some() {
                        return Err(err(line_no, format!("vertex {v} declared twice")));
                    }
                }
                "edge" => {
                    let [u, v, d] = numbers::<3>(&words[1..]).ok_or_else(malformed)?;
                    edges.push((line_no, u, v, d));
                }
                _ => return Err(err(line_no, format!("unknown line `{line}`"))),
            }
        }
        let last = text.lines().count().max(1);
        let k = k.ok_or_else(|| err(last, "missing `colors K` line".into()))?;
        let l = l.ok_or_else(|| err(last, "missing `edgecolors L` line".into()))?;

        let mut g = ColoredTournament::new(k, l);
        for (expected, (&v, &(line_no, c))) in vertices.iter().enumerate() {
            if v != expected as u64 {
                return Err(err(
                    line_no,
                    format!("vertex ids must be 0..V, missing {expected}"),
                ));
            }
            g.add_vertex(c);
        }
        let count = g.vertex_count() as u64;
        // lowest vertex pair per color pair, with the colors of its endpoints
        let mut first_cross: BTreeMap<(Color, Color), CrossEdge> = BTreeMap::new();
        for &(line_no, u, v, d) in &edges {
            if u >= count || v >= count {
                return Err(err(
                    line_no,
                    format!("edge {u} {v} names an undeclared vertex"),
                ));
            }
            if u == v {
                return Err(err(line_no, format!("loop at vertex {u}")));
            }
            let (u, v) = (u as Vertex, v as Vertex);
            if g.has_edge(u, v) {
                return Err(err(line_no, format!("second edge between {u} and {v}")));
            }
            g.set_edge(u, v, EdgeColor(d))?;
            let (cu, cv) = (g.color(u), g.color(v));
            if cu != cv {
                let key = (cu.min(cv), cu.max(cv));
                let pair = (u.min(v), u.max(v));
                let entry = first_cross.entry(key).or_insert((pair, cu, cv));
                if pair < entry.0 {
                    *entry = (pair, cu, cv);
                }
            }
        }
        for (_, from, to) in first_cross.into_values() {
            g.set_orientation(from, to);
        }
        Ok(g)
    }
}

impl ColoredTournament {
    /// Graphviz rendering: vertex color as fill, edge color as label.
    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("digraph tournament {\n  node [style=filled, colorscheme=set312];\n");
        for (v, c) in self.vertex_colors().iter().enumerate() {
            let _ = writeln!(
                out,
                "  {v} [label=\"{v}:{c}\", fillcolor={}];",
                c.0 % 12 + 1
            );
        }
        for e in self.edges() {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, e.color);
        }
        out.push_str("}\n");
        out
    }
}
