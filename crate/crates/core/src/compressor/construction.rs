use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tournament::{Color, ColoredTournament, EdgeColor, Vertex};

use super::plan::{ClassPlan, PartitionPlan};
use super::{CompressError, CompressionConfig};

/// `H` under construction. Every edge may be written once; [`finish`]
/// insists that every pair was written.
///
/// [`finish`]: Construction::finish
#[derive(Debug)]
pub struct Construction<'g> {
    g: &'g ColoredTournament,
    plan: PartitionPlan,
    h: ColoredTournament,
    /// Kings of `G` in color order, with their `H` ids.
    kings: Vec<(Vertex, Vertex)>,
    d_sets: BTreeMap<(Color, Color), Vec<EdgeColor>>,
    rng: Option<ChaCha8Rng>,
}

impl<'g> Construction<'g> {
    /// Lays out the vertices of `H` and copies the kings with the edges
    /// among them.
    pub fn new(g: &'g ColoredTournament, cfg: CompressionConfig) -> Result<Self, CompressError> {
        g.validate()?;
        let plan = PartitionPlan::new(g, cfg.mode)?;
        let mut h = ColoredTournament::new(g.num_colors(), g.num_edge_colors());
        for class in &plan.classes {
            for _ in 0..class.len {
                h.add_vertex(class.color);
            }
        }
        for (from, to) in g.orientations() {
            h.set_orientation(from, to);
        }
        let kings: Vec<(Vertex, Vertex)> = plan
            .kings()
            .map(|c| (c.king.expect("king class"), c.start))
            .collect();
        let d_sets = g
            .edge_color_table()
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().collect()))
            .collect();
        let mut this = Construction {
            g,
            plan,
            h,
            kings,
            d_sets,
            rng: cfg.seed.map(ChaCha8Rng::seed_from_u64),
        };
        for i in 0..this.kings.len() {
            for j in i + 1..this.kings.len() {
                let (gi, hi) = this.kings[i];
                let (gj, hj) = this.kings[j];
                let e = g.edge(gi, gj).expect("validated graph is complete");
                if e.from == gi {
                    this.put(hi, hj, e.color)?;
                } else {
                    this.put(hj, hi, e.color)?;
                }
            }
        }
        Ok(this)
    }

    pub fn plan(&self) -> &PartitionPlan {
        &self.plan
    }

    /// The partially built graph.
    pub fn partial(&self) -> &ColoredTournament {
        &self.h
    }

    fn put(&mut self, from: Vertex, to: Vertex, color: EdgeColor) -> Result<(), CompressError> {
        if self.h.has_edge(from, to) {
            return Err(CompressError::EdgeWrittenTwice(from.min(to), from.max(to)));
        }
        self.h.set_edge(from, to, color)?;
        Ok(())
    }

    /// Writes the `u`–`w` edge in the direction fixed between their colors.
    fn put_oriented(
        &mut self,
        u: Vertex,
        w: Vertex,
        color: EdgeColor,
    ) -> Result<(), CompressError> {
        let (cu, cw) = (self.h.color(u), self.h.color(w));
        let (from, _) = self.g.orientation(cu, cw).ok_or(CompressError::Invalid(
            crate::tournament::Violation::MissingOrientation {
                c1: cu.min(cw),
                c2: cu.max(cw),
            },
        ))?;
        if from == cu {
            self.put(u, w, color)
        } else {
            self.put(w, u, color)
        }
    }

    fn d_set(&self, c1: Color, c2: Color) -> Vec<EdgeColor> {
        let key = (c1.min(c2), c1.max(c2));
        self.d_sets.get(&key).cloned().unwrap_or_default()
    }

    fn class_of(&self, color: Color) -> ClassPlan {
        self.plan
            .classes
            .iter()
            .find(|c| c.color == color)
            .cloned()
            .expect("color is realized")
    }

    /// Step 1 for class `c`: the king `vᵢ` sees every color of
    /// `D_{cᵢ,c}(G)` on `Z_iᶜ`; each `u ∈ Z_iᶜ` then copies the remaining
    /// king edges of the first `x ∈ c(G)` agreeing with it on `vᵢ`. Vertices
    /// outside the `t` king slices copy a completed vertex.
    pub fn step1_king_edges(&mut self, c: Color) -> Result<(), CompressError> {
        let class = self.class_of(c);
        let t = self.kings.len();
        if t == 0 {
            return Ok(());
        }
        let members = self.g.vertices_of(c);
        for i in 0..t {
            let (gk, hk) = self.kings[i];
            let d = self.d_set(self.g.color(gk), c);
            for (j, u) in self.plan.z_block(&class, i).enumerate() {
                let color = d[j % d.len()];
                self.put_oriented(u, hk, color)?;
                let x = members
                    .iter()
                    .copied()
                    .find(|&x| self.g.edge(x, gk).map(|e| e.color) == Some(color))
                    .ok_or(CompressError::NoProfileSource(u))?;
                for i2 in (0..t).filter(|&i2| i2 != i) {
                    let (gk2, hk2) = self.kings[i2];
                    let e = self.g.edge(x, gk2).expect("validated graph is complete");
                    self.put_oriented(u, hk2, e.color)?;
                }
            }
        }
        let covered = t * self.plan.slot;
        for p in covered..class.len {
            let offset = match self.rng.as_mut() {
                Some(rng) => rng.gen_range(0..covered),
                None => p % covered,
            };
            let (u, donor) = (class.start + p, class.start + offset);
            for i in 0..t {
                let hk = self.kings[i].1;
                let e = self
                    .h
                    .edge(donor, hk)
                    .ok_or(CompressError::NoProfileSource(u))?;
                self.put_oriented(u, hk, e.color)?;
            }
        }
        Ok(())
    }

    /// Step 2 for class `c`: every `u ∈ Yᵢᶜ` gets `s` outgoing and `s`
    /// incoming witnesses in `Y_{i+1}ᶜ` covering `D_{c,c}(G)`; remaining
    /// pairs point from the lower id to the higher one and cycle through
    /// the colors.
    pub fn step2_intra_class(&mut self, c: Color) -> Result<(), CompressError> {
        let class = self.class_of(c);
        let d = self.d_set(c, c);
        let s = d.len();
        let parts = self.plan.y_blocks(&class);
        for i in 0..3 {
            let next = parts[(i + 1) % 3].clone();
            let width = next.len();
            if width < 2 * s {
                return Err(CompressError::PlanTooSmall { color: c });
            }
            for u in parts[i].clone() {
                let offset = match self.rng.as_mut() {
                    Some(rng) => rng.gen_range(0..width),
                    None => 0,
                };
                for j in 0..2 * s {
                    let w = next.start + (offset + j) % width;
                    if j < s {
                        self.put(u, w, d[j])?;
                    } else {
                        self.put(w, u, d[j - s])?;
                    }
                }
            }
        }
        let mut cycle = 0usize;
        for b in class.range() {
            for a in class.start..b {
                if !self.h.has_edge(a, b) {
                    self.put(a, b, d[cycle % s])?;
                    cycle += 1;
                }
            }
        }
        Ok(())
    }

    /// Step 3 for the non-king classes `c` and `c0`: each `u ∈ Xᵢᶜ` covers
    /// `D_{c,c0}(G)` on `Xᵢ^{c0}` and each `u ∈ Xᵢ^{c0}` covers it on
    /// `X_{1−i}ᶜ`.
    pub fn step3_cross_class(&mut self, c: Color, c0: Color) -> Result<(), CompressError> {
        let (zc, zc0) = (self.class_of(c), self.class_of(c0));
        let d = self.d_set(c, c0);
        let s = d.len();
        let xc = self.plan.x_blocks(&zc);
        let xc0 = self.plan.x_blocks(&zc0);
        for i in 0..2 {
            for (side, other) in [(&xc[i], &xc0[i]), (&xc0[i], &xc[1 - i])] {
                if other.len() < s {
                    return Err(CompressError::PlanTooSmall { color: c });
                }
                for u in side.clone() {
                    for (j, w) in other.clone().enumerate() {
                        self.put_oriented(u, w, d[j % s])?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Runs the three steps over all non-king classes.
    pub fn run(mut self) -> Result<ColoredTournament, CompressError> {
        let non_kings: Vec<Color> = self.plan.non_kings().map(|c| c.color).collect();
        for &c in &non_kings {
            self.step1_king_edges(c)?;
            self.step2_intra_class(c)?;
        }
        for (i, &c) in non_kings.iter().enumerate() {
            for &c0 in &non_kings[i + 1..] {
                self.step3_cross_class(c, c0)?;
            }
        }
        self.finish()
    }

    /// Checks that every pair was written and returns `H`.
    pub fn finish(self) -> Result<ColoredTournament, CompressError> {
        let n = self.h.vertex_count();
        for b in 0..n {
            for a in 0..b {
                if !self.h.has_edge(a, b) {
                    return Err(CompressError::EdgeUnwritten(a, b));
                }
            }
        }
        Ok(self.h)
    }
}
