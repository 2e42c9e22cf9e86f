//! Apartment vertices, their twelve types relative to `a`, Iwahori valuation
//! patterns, and the unique standard-form coset representatives of
//! `I^a`-orbits.

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SeriesMatrix;
use crate::series::{LaurentSeries, PrimeField, Valuation};

/// The diagonal point `(1, π^s, π^t)` of the main apartment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub s: i32,
    pub t: i32,
}

impl Vertex {
    pub const fn new(s: i32, t: i32) -> Self {
        Vertex { s, t }
    }

    /// Exponents of the diagonal representative.
    pub fn exponents(self) -> [i32; 3] {
        [0, self.s, self.t]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

/// Position of `(s, t)` relative to `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    BasePoint,
    /// `s < a < t`
    T1,
    /// `s < t = a`
    T2,
    /// `s < t < a`
    T3,
    /// `s = t < a`
    T4,
    /// `t < s < a`
    T5,
    /// `t < s = a`
    T6,
    /// `t < a < s`
    T7,
    /// `a = t < s`
    T8,
    /// `a < t < s`
    T9,
    /// `a < t = s`
    T10,
    /// `a < s < t`
    T11,
    /// `a = s < t`
    T12,
}

impl VertexType {
    pub const ALL: [VertexType; 13] = [
        VertexType::BasePoint,
        VertexType::T1,
        VertexType::T2,
        VertexType::T3,
        VertexType::T4,
        VertexType::T5,
        VertexType::T6,
        VertexType::T7,
        VertexType::T8,
        VertexType::T9,
        VertexType::T10,
        VertexType::T11,
        VertexType::T12,
    ];

    /// `1..=12`, or `None` for the base point.
    pub fn code(self) -> Option<u8> {
        match self {
            VertexType::BasePoint => None,
            other => Some(other as u8),
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.code() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "base"),
        }
    }
}

pub fn classify(v: Vertex, a: i32) -> VertexType {
    use std::cmp::Ordering::*;
    use VertexType::*;
    let Vertex { s, t } = v;
    match (s.cmp(&a), t.cmp(&a)) {
        (Less, Greater) => T1,
        (Less, Equal) => T2,
        (Less, Less) => match s.cmp(&t) {
            Less => T3,
            Equal => T4,
            Greater => T5,
        },
        (Equal, Less) => T6,
        (Equal, Equal) => BasePoint,
        (Equal, Greater) => T12,
        (Greater, Less) => T7,
        (Greater, Equal) => T8,
        (Greater, Greater) => match t.cmp(&s) {
            Less => T9,
            Equal => T10,
            Greater => T11,
        },
    }
}

/// The six off-diagonal coordinates of a standard form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    I,
    J,
    K,
    X,
    Y,
    Z,
}

impl Coord {
    pub const ALL: [Coord; 6] = [Coord::I, Coord::J, Coord::K, Coord::X, Coord::Y, Coord::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Matrix position: `i,j,k` above the diagonal, `x,y,z` below.
    pub fn position(self) -> (usize, usize) {
        match self {
            Coord::I => (0, 1),
            Coord::J => (0, 2),
            Coord::K => (1, 2),
            Coord::X => (1, 0),
            Coord::Y => (2, 0),
            Coord::Z => (2, 1),
        }
    }

    pub fn name(self) -> char {
        ['i', 'j', 'k', 'x', 'y', 'z'][self.index()]
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exponent window `[lo, hi)` of one coordinate; empty when `lo >= hi`.
#[derive(Clone, Copy, Debug, Eq)]
pub struct CoordWindow {
    pub coord: Coord,
    pub lo: i32,
    pub hi: i32,
}

impl CoordWindow {
    pub fn new(coord: Coord, lo: i32, hi: i32) -> Self {
        CoordWindow { coord, lo, hi }
    }

    pub fn empty(coord: Coord) -> Self {
        CoordWindow { coord, lo: 0, hi: 0 }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: i32) -> bool {
        self.lo <= e && e < self.hi
    }
}

/// Empty windows compare equal whatever their bounds.
impl PartialEq for CoordWindow {
    fn eq(&self, other: &Self) -> bool {
        self.coord == other.coord
            && ((self.is_empty() && other.is_empty()) || (self.lo == other.lo && self.hi == other.hi))
    }
}

impl fmt::Display for CoordWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈[{},{})", self.coord, self.lo, self.hi)
    }
}

/// One window per coordinate, in `i, j, k, x, y, z` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowSet([CoordWindow; 6]);

impl WindowSet {
    pub fn empty() -> Self {
        WindowSet(Coord::ALL.map(CoordWindow::empty))
    }

    pub fn with(mut self, coord: Coord, lo: i32, hi: i32) -> Self {
        self.0[coord.index()] = CoordWindow::new(coord, lo, hi);
        self
    }

    pub fn get(&self, coord: Coord) -> CoordWindow {
        self.0[coord.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = CoordWindow> + '_ {
        self.0.iter().copied()
    }

    pub fn nonempty(&self) -> impl Iterator<Item = CoordWindow> + '_ {
        self.iter().filter(|w| !w.is_empty())
    }

    pub fn dimension(&self) -> usize {
        self.iter().map(|w| w.len()).sum()
    }

    /// Highest exponent bound over nonempty windows (0 when all are empty).
    pub fn max_hi(&self) -> i32 {
        self.nonempty().map(|w| w.hi).max().unwrap_or(0)
    }
}

impl fmt::Display for WindowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonempty().map(|w| w.to_string()).collect();
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}

impl Serialize for WindowSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        for w in self.iter() {
            map.serialize_entry(&w.coord.name().to_string(), &[w.lo, w.hi])?;
        }
        map.end()
    }
}

/// The standard-form windows of the `I^a`-orbit of `v`.
pub fn windows(v: Vertex, a: i32) -> WindowSet {
    use VertexType::*;
    let Vertex { s, t } = v;
    let ty = classify(v, a);
    let mut w = WindowSet::empty();
    if matches!(ty, T1 | T2 | T3 | T4 | T5) {
        w = w.with(Coord::I, -a, -s);
    }
    if matches!(ty, T3 | T4 | T5 | T6 | T7) {
        w = w.with(Coord::J, -a, -t);
    }
    if matches!(ty, T5 | T6 | T7 | T8 | T9) {
        w = w.with(Coord::K, 0, s - t);
    }
    if matches!(ty, T7 | T8 | T9 | T10 | T11) {
        w = w.with(Coord::X, a + 1, s);
    }
    if matches!(ty, T1 | T9 | T10 | T11 | T12) {
        w = w.with(Coord::Y, a + 1, t);
    }
    if matches!(ty, T1 | T2 | T3 | T11 | T12) {
        w = w.with(Coord::Z, 1, t - s);
    }
    w
}

pub fn orbit_dimension(v: Vertex, a: i32) -> usize {
    windows(v, a).dimension()
}

/// Cap on the number of points any single enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 24);
    pub const ENV_VAR: &'static str = "APAVER_BUDGET";

    /// Reads `APAVER_BUDGET`, falling back to the default cap.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or(Self::DEFAULT)
    }

    pub fn check(self, q: u32, dim: usize) -> Result<u64> {
        let requested = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if requested > self.0 as u128 {
            return Err(Error::BudgetExceeded {
                requested,
                cap: self.0,
            });
        }
        Ok(requested as u64)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A point of an `I^a`-orbit (or of a sub-cell of one) as its unique
/// unipotent representative.
#[derive(Clone, Debug)]
pub struct StandardForm {
    vertex: Vertex,
    a: i32,
    windows: WindowSet,
    coords: [LaurentSeries; 6],
}

impl StandardForm {
    /// Validates that every coordinate lives inside its window.
    pub fn new(vertex: Vertex, a: i32, windows: WindowSet, coords: [LaurentSeries; 6]) -> Result<Self> {
        for (w, c) in windows.iter().zip(&coords) {
            if let Some((e, _)) = c.terms().find(|&(e, _)| !w.contains(e)) {
                return Err(Error::OutsideWindow {
                    coord: w.coord.name(),
                    detail: format!("term π^{e} outside {w}"),
                });
            }
            if !w.is_empty() && c.prec() < w.hi {
                return Err(Error::PrecisionExhausted {
                    needed: w.hi,
                    available: c.prec(),
                });
            }
        }
        Ok(StandardForm {
            vertex,
            a,
            windows,
            coords,
        })
    }

    /// The vertex itself: all coordinates zero.
    pub fn vertex_point(vertex: Vertex, a: i32, windows: WindowSet, field: PrimeField, prec: i32) -> Self {
        StandardForm {
            vertex,
            a,
            windows,
            coords: std::array::from_fn(|_| LaurentSeries::zero_below(field, prec)),
        }
    }

    pub fn vertex(&self) -> Vertex {
        self.vertex
    }

    pub fn level(&self) -> i32 {
        self.a
    }

    pub fn windows(&self) -> &WindowSet {
        &self.windows
    }

    pub fn coord(&self, c: Coord) -> &LaurentSeries {
        &self.coords[c.index()]
    }

    pub fn coords(&self) -> &[LaurentSeries; 6] {
        &self.coords
    }

    pub fn field(&self) -> PrimeField {
        self.coords[0].field()
    }

    pub fn valuation(&self, c: Coord) -> Valuation {
        self.coord(c).valuation()
    }

    /// Coefficient vector over the window of `c`, low exponent first.
    pub fn window_coeffs(&self, c: Coord) -> Vec<u32> {
        let w = self.windows.get(c);
        (w.lo..w.hi)
            .map(|e| self.coord(c).coeff(e).map_or(0, |x| x.value()))
            .collect()
    }

    /// All window coefficients in enumeration order.
    pub fn key(&self) -> Vec<u32> {
        Coord::ALL.iter().flat_map(|&c| self.window_coeffs(c)).collect()
    }

    pub fn is_vertex_point(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Same coordinates, re-labelled with a different window set.
    pub fn rewindow(&self, windows: WindowSet) -> Result<Self> {
        Self::new(self.vertex, self.a, windows, self.coords.clone())
    }
}

impl PartialEq for StandardForm {
    fn eq(&self, other: &Self) -> bool {
        self.vertex == other.vertex && self.a == other.a && self.coords == other.coords
    }
}

impl Eq for StandardForm {}

impl Serialize for StandardForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(9))?;
        map.serialize_entry("s", &self.vertex.s)?;
        map.serialize_entry("t", &self.vertex.t)?;
        map.serialize_entry("a", &self.a)?;
        for c in Coord::ALL {
            let terms: Vec<[i64; 2]> = self
                .coord(c)
                .terms()
                .map(|(e, v)| [e as i64, v as i64])
                .collect();
            map.serialize_entry(&c.name().to_string(), &terms)?;
        }
        map.end()
    }
}

/// The unipotent matrix `[[1, i, j], [x, 1, k], [y, z, 1]]`.
pub fn matrix_of(m: &StandardForm) -> SeriesMatrix {
    let prec = m.coords.iter().map(|c| c.prec()).min().unwrap();
    let field = m.field();
    SeriesMatrix::from_fn(|r, c| {
        if r == c {
            return LaurentSeries::one(field, prec);
        }
        let coord = Coord::ALL.iter().find(|k| k.position() == (r, c)).unwrap();
        m.coord(*coord).clone()
    })
}

/// Enumerates the product of a window set over `F_q` in lexicographic order
/// of the concatenated coefficient vector (`i` slowest, `z` fastest).
#[derive(Clone, Debug)]
pub struct PointEnumerator {
    vertex: Vertex,
    a: i32,
    windows: WindowSet,
    field: PrimeField,
    prec: i32,
    len: u64,
}

impl PointEnumerator {
    pub fn new(vertex: Vertex, a: i32, windows: WindowSet, field: PrimeField, prec: i32, budget: Budget) -> Result<Self> {
        let len = budget.check(field.size(), windows.dimension())?;
        if windows.max_hi() > prec {
            return Err(Error::PrecisionExhausted {
                needed: windows.max_hi(),
                available: prec,
            });
        }
        Ok(PointEnumerator {
            vertex,
            a,
            windows,
            field,
            prec,
            len,
        })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn windows(&self) -> &WindowSet {
        &self.windows
    }

    /// The `index`-th point in lexicographic order.
    pub fn get(&self, index: u64) -> StandardForm {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        let q = self.field.size() as u64;
        let dim = self.windows.dimension();
        let mut digits = vec![0u32; dim];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = (rest % q) as u32;
            rest /= q;
        }
        let mut cursor = 0;
        let coords = Coord::ALL.map(|c| {
            let w = self.windows.get(c);
            if w.is_empty() {
                return LaurentSeries::zero_below(self.field, self.prec);
            }
            let chunk: Vec<i64> = digits[cursor..cursor + w.len()].iter().map(|&d| d as i64).collect();
            cursor += w.len();
            LaurentSeries::from_coeffs(self.field, w.lo, self.prec, &chunk)
        });
        StandardForm {
            vertex: self.vertex,
            a: self.a,
            windows: self.windows,
            coords,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = StandardForm> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

/// All standard forms of the `I^a`-orbit of `v`.
pub fn enumerate_orbit(v: Vertex, a: i32, field: PrimeField, prec: i32, budget: Budget) -> Result<PointEnumerator> {
    PointEnumerator::new(v, a, windows(v, a), field, prec, budget)
}

/// Constraint on one matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryConstraint {
    AtLeast(i32),
    Unit,
    Unconstrained,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuationPattern(pub [[EntryConstraint; 3]; 3]);

impl ValuationPattern {
    /// `I^a`: unit diagonal, `P^-a` in the first row, `P^(a+1)` in the first
    /// column, `O` at (2,3) and `P` at (3,2).
    pub fn iwahori(a: i32) -> Self {
        use EntryConstraint::*;
        ValuationPattern([
            [Unit, AtLeast(-a), AtLeast(-a)],
            [AtLeast(a + 1), Unit, AtLeast(0)],
            [AtLeast(a + 1), AtLeast(1), Unit],
        ])
    }

    /// Entry bounds of `diag(1,π^s,π^t) K diag(1,π^s,π^t)^-1`.
    pub fn conjugate_of_k(v: Vertex) -> Self {
        let e = v.exponents();
        ValuationPattern(std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                if r == c {
                    EntryConstraint::AtLeast(0)
                } else {
                    EntryConstraint::AtLeast(e[r] - e[c])
                }
            })
        }))
    }

    /// Entry bounds of `π^-d · v K w^-1`.
    pub fn translate(v: Vertex, w: Vertex, d: i32) -> Self {
        let (ev, ew) = (v.exponents(), w.exponents());
        ValuationPattern(std::array::from_fn(|r| {
            std::array::from_fn(|c| EntryConstraint::AtLeast(-d + ev[r] - ew[c]))
        }))
    }

    /// Entrywise intersection.
    pub fn intersect(&self, other: &Self) -> Self {
        use EntryConstraint::*;
        ValuationPattern(std::array::from_fn(|r| {
            std::array::from_fn(|c| match (self.0[r][c], other.0[r][c]) {
                (Unconstrained, x) | (x, Unconstrained) => x,
                (Unit, Unit) => Unit,
                (Unit, AtLeast(b)) | (AtLeast(b), Unit) => {
                    // a unit has valuation 0
                    if b <= 0 {
                        Unit
                    } else {
                        AtLeast(b)
                    }
                }
                (AtLeast(x), AtLeast(y)) => AtLeast(x.max(y)),
            })
        }))
    }

    pub fn entry(&self, r: usize, c: usize) -> EntryConstraint {
        self.0[r][c]
    }

    /// Exponent below which an entry must be known to decide its constraint.
    pub fn needed_precision(&self, r: usize, c: usize) -> Option<i32> {
        match self.0[r][c] {
            EntryConstraint::AtLeast(b) => Some(b),
            EntryConstraint::Unit => Some(1),
            EntryConstraint::Unconstrained => None,
        }
    }
}

/// `I^a ∩ vKv^-1`, the stabilizer of `v` in `I^a`.
pub fn stabilizer_pattern(v: Vertex, a: i32) -> ValuationPattern {
    ValuationPattern::iwahori(a).intersect(&ValuationPattern::conjugate_of_k(v))
}

/// Decides one entry against one constraint.
pub fn entry_satisfies(x: &LaurentSeries, constraint: EntryConstraint) -> Result<bool> {
    match constraint {
        EntryConstraint::Unconstrained => Ok(true),
        EntryConstraint::AtLeast(b) => {
            let limit = b.min(x.prec());
            if x.terms().any(|(e, _)| e < limit) {
                return Ok(false);
            }
            if x.prec() < b {
                return Err(Error::PrecisionExhausted {
                    needed: b,
                    available: x.prec(),
                });
            }
            Ok(true)
        }
        EntryConstraint::Unit => {
            if x.terms().any(|(e, _)| e < 0) {
                return Ok(false);
            }
            if x.prec() < 1 {
                return Err(Error::PrecisionExhausted {
                    needed: 1,
                    available: x.prec(),
                });
            }
            Ok(x.coeff(0).is_some_and(|c| !c.is_zero()))
        }
    }
}

pub fn pattern_member(mat: &SeriesMatrix, pat: &ValuationPattern) -> Result<bool> {
    for r in 0..3 {
        for c in 0..3 {
            if !entry_satisfies(mat.get(r, c), pat.entry(r, c))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vertices of the square `|s|, |t| <= radius`, for exhaustive scans.
pub fn square(radius: i32) -> impl Iterator<Item = Vertex> {
    (-radius..=radius).flat_map(move |s| (-radius..=radius).map(move |t| Vertex::new(s, t)))
}
