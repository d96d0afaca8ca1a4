use std::fmt;

use crate::formula::{Formula, Var, Vocabulary};

use super::TypeError;

/// Widest two-type that fits the packed representation.
pub const MAX_TWO_TYPE_WIDTH: usize = 62;

/// The `(n, m)` pair a type is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeShape {
    n: u16,
    m: u16,
}

impl TypeShape {
    pub fn new(n: usize, m: usize) -> Result<Self, TypeError> {
        if 2 * n + 4 * m > MAX_TWO_TYPE_WIDTH {
            return Err(TypeError::TooManyAtoms { n, m });
        }
        Ok(TypeShape {
            n: n as u16,
            m: m as u16,
        })
    }

    pub fn of(vocab: &Vocabulary) -> Result<Self, TypeError> {
        Self::new(vocab.n(), vocab.m())
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn m(self) -> usize {
        self.m as usize
    }

    /// `n + m` atoms per one-type.
    pub fn one_width(self) -> usize {
        self.n() + self.m()
    }

    /// `2n + 4m` atoms per two-type.
    pub fn two_width(self) -> usize {
        2 * self.n() + 4 * self.m()
    }

    pub fn one_type_count(self) -> u64 {
        1 << self.one_width()
    }

    pub fn two_type_count(self) -> u64 {
        1 << self.two_width()
    }

    // Two-type layout: P(x) | P(y) | r(x,x) | r(y,y) | r(x,y) | r(y,x)
    pub(crate) fn px(self, i: usize) -> usize {
        i
    }
    pub(crate) fn py(self, i: usize) -> usize {
        self.n() + i
    }
    pub(crate) fn rxx(self, j: usize) -> usize {
        2 * self.n() + j
    }
    pub(crate) fn ryy(self, j: usize) -> usize {
        2 * self.n() + self.m() + j
    }
    pub(crate) fn rxy(self, j: usize) -> usize {
        2 * self.n() + 2 * self.m() + j
    }
    pub(crate) fn ryx(self, j: usize) -> usize {
        2 * self.n() + 3 * self.m() + j
    }
}

fn mask(width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        u64::MAX >> (64 - width)
    }
}

fn bit(bits: u64, i: usize) -> bool {
    bits >> i & 1 == 1
}

/// Truth assignment to `P(x)` for every unary `P` and `r(x,x)` for every
/// binary `r`, packed with atom `i` (in vocabulary order, unary first) at
/// bit `i`. Ordered by shape, then numerically by the packed pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneType {
    shape: TypeShape,
    bits: u64,
}

impl OneType {
    pub fn from_bits(shape: TypeShape, bits: u64) -> Result<Self, TypeError> {
        if bits & !mask(shape.one_width()) != 0 {
            return Err(TypeError::PatternOutOfRange {
                bits,
                width: shape.one_width(),
            });
        }
        Ok(OneType { shape, bits })
    }

    /// All `2^(n+m)` one-types in ascending order.
    pub fn all(shape: TypeShape) -> impl Iterator<Item = OneType> {
        (0..shape.one_type_count()).map(move |bits| OneType { shape, bits })
    }

    pub fn shape(self) -> TypeShape {
        self.shape
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn unary(self, i: usize) -> bool {
        bit(self.bits, i)
    }

    /// Truth of `r_j(x,x)`.
    pub fn self_loop(self, j: usize) -> bool {
        bit(self.bits, self.shape.n() + j)
    }

    fn unary_bits(self) -> u64 {
        self.bits & mask(self.shape.n())
    }

    fn loop_bits(self) -> u64 {
        self.bits >> self.shape.n()
    }

    /// The two-type `(a, a)` would have if the diagonal were an ordinary
    /// pair: both sides equal this type and `r(x,y) = r(y,x) = r(x,x)`.
    /// Any quantifier-free formula is true at `(a, a)` exactly when it is
    /// true on this pattern.
    pub fn doubled(self) -> TwoType {
        let loops = self.loop_bits();
        TwoType::from_parts(self, self, loops, loops)
    }

    /// Literals over `x`, e.g. `P(x) & !r(x,x)`.
    pub fn describe(self, vocab: &Vocabulary) -> Formula {
        let mut lits = Vec::with_capacity(self.shape.one_width());
        for (i, p) in vocab.unary().iter().enumerate() {
            lits.push(literal(Formula::unary(p.clone(), Var::X), self.unary(i)));
        }
        for (j, r) in vocab.binary().iter().enumerate() {
            lits.push(literal(
                Formula::binary(r.clone(), Var::X, Var::X),
                self.self_loop(j),
            ));
        }
        Formula::conjunction(lits)
    }
}

impl fmt::Display for OneType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.shape.one_width() {
            f.write_str(if bit(self.bits, i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Truth assignment to the `2n + 4m` atoms over `x` and `y`, packed as
/// `P(x)… | P(y)… | r(x,x)… | r(y,y)… | r(x,y)… | r(y,x)…`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoType {
    shape: TypeShape,
    bits: u64,
}

impl TwoType {
    pub fn from_bits(shape: TypeShape, bits: u64) -> Result<Self, TypeError> {
        if bits & !mask(shape.two_width()) != 0 {
            return Err(TypeError::PatternOutOfRange {
                bits,
                width: shape.two_width(),
            });
        }
        Ok(TwoType { shape, bits })
    }

    /// Assembles a two-type from its endpoint types and the `r(x,y)` /
    /// `r(y,x)` bit masks (bit `j` for the `j`-th binary predicate).
    pub fn from_parts(x: OneType, y: OneType, forward: u64, backward: u64) -> TwoType {
        debug_assert_eq!(x.shape, y.shape);
        let s = x.shape;
        let (n, m) = (s.n(), s.m());
        let lm = mask(m);
        let bits = x.unary_bits()
            | y.unary_bits() << s.py(0)
            | x.loop_bits() << s.rxx(0)
            | y.loop_bits() << s.ryy(0)
            | (forward & lm) << s.rxy(0)
            | (backward & lm) << s.ryx(0);
        debug_assert!(bits & !mask(2 * n + 4 * m) == 0);
        TwoType { shape: s, bits }
    }

    /// All `2^(2n+4m)` two-types in ascending order.
    pub fn all(shape: TypeShape) -> impl Iterator<Item = TwoType> {
        (0..shape.two_type_count()).map(move |bits| TwoType { shape, bits })
    }

    pub fn shape(self) -> TypeShape {
        self.shape
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    fn field(self, start: usize, width: usize) -> u64 {
        (self.bits >> start) & mask(width)
    }

    /// `r(x,y)` bits, one per binary predicate.
    pub fn forward(self) -> u64 {
        self.field(self.shape.rxy(0), self.shape.m())
    }

    /// `r(y,x)` bits, one per binary predicate.
    pub fn backward(self) -> u64 {
        self.field(self.shape.ryx(0), self.shape.m())
    }

    /// Swaps the roles of `x` and `y`.
    pub fn invert(self) -> TwoType {
        TwoType::from_parts(
            self.project_y(),
            self.project_x(),
            self.backward(),
            self.forward(),
        )
    }

    /// Restriction to the atoms over `x` alone.
    pub fn project_x(self) -> OneType {
        let s = self.shape;
        let bits = self.field(s.px(0), s.n()) | self.field(s.rxx(0), s.m()) << s.n();
        OneType { shape: s, bits }
    }

    /// Restriction to the atoms over `y` alone, renamed to `x`.
    pub fn project_y(self) -> OneType {
        let s = self.shape;
        let bits = self.field(s.py(0), s.n()) | self.field(s.ryy(0), s.m()) << s.n();
        OneType { shape: s, bits }
    }

    /// Conjunction of all `2n + 4m` literals.
    pub fn describe(self, vocab: &Vocabulary) -> Formula {
        let s = self.shape;
        let mut lits = Vec::with_capacity(s.two_width());
        for v in [Var::X, Var::Y] {
            for (i, p) in vocab.unary().iter().enumerate() {
                let at = if v == Var::X { s.px(i) } else { s.py(i) };
                lits.push(literal(Formula::unary(p.clone(), v), bit(self.bits, at)));
            }
        }
        let pairs = [
            (Var::X, Var::X),
            (Var::Y, Var::Y),
            (Var::X, Var::Y),
            (Var::Y, Var::X),
        ];
        for (k, (a, b)) in pairs.into_iter().enumerate() {
            for (j, r) in vocab.binary().iter().enumerate() {
                let at = 2 * s.n() + k * s.m() + j;
                lits.push(literal(
                    Formula::binary(r.clone(), a, b),
                    bit(self.bits, at),
                ));
            }
        }
        Formula::conjunction(lits)
    }
}

impl fmt::Display for TwoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.shape.two_width() {
            f.write_str(if bit(self.bits, i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn literal(atom: Formula, positive: bool) -> Formula {
    if positive {
        atom
    } else {
        Formula::not(atom)
    }
}
