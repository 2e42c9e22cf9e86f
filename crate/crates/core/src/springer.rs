//! The split regular element `γ = diag(u1, u2, u3)`, the fixed-point test
//! `M^-1 γ M γ^-1 ∈ I^a_(s,t)`, and the dimensions of the cells of the
//! fixed-point variety `X^γ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{classify, matrix_of, stabilizer_pattern, Coord, CoordWindow, StandardForm, Vertex, VertexType};
use crate::lattice::{entry_satisfies, ValuationPattern};
use crate::matrix::SeriesMatrix;
use crate::paving::{region_of, triangle_vertices, Region};
use crate::series::{LaurentSeries, PrimeField, Valuation};

/// The root valuations of `γ`: `v(u1-u2) = v(u1-u3) = m`, `v(u2-u3) = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Invariants {
    pub m: u32,
    pub n: u32,
}

impl Invariants {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if n < m {
            return Err(Error::InvalidCombination(format!("need n >= m, got m={m}, n={n}")));
        }
        Ok(Invariants { m, n })
    }

    /// The level `a = n - m` of the paving adapted to `γ`.
    pub fn level(self) -> i32 {
        (self.n - self.m) as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitElement {
    u: [LaurentSeries; 3],
    inv: Invariants,
}

impl SplitElement {
    /// Checks the three root valuations and distinctness. The entries are
    /// taken as given, not permuted.
    pub fn from_units(u: [LaurentSeries; 3]) -> Result<Self> {
        let [v12, v13, v23] = root_valuations(&u)?;
        let field = u[0].field().size();
        match (v12, v13, v23) {
            (Valuation::Finite(a), Valuation::Finite(b), Valuation::Finite(c)) if a == b && c >= a && a >= 0 => {
                Ok(SplitElement {
                    u,
                    inv: Invariants::new(a as u32, c as u32)?,
                })
            }
            _ => Err(Error::ValuationMismatch {
                m: v12.finite().unwrap_or(-1).max(0) as u32,
                n: v23.finite().unwrap_or(-1).max(0) as u32,
                q: field,
            }),
        }
    }

    pub fn units(&self) -> &[LaurentSeries; 3] {
        &self.u
    }

    pub fn invariants(&self) -> Invariants {
        self.inv
    }

    pub fn m(&self) -> u32 {
        self.inv.m
    }

    pub fn n(&self) -> u32 {
        self.inv.n
    }

    pub fn level(&self) -> i32 {
        self.inv.level()
    }

    pub fn field(&self) -> PrimeField {
        self.u[0].field()
    }

    pub fn precision(&self) -> i32 {
        self.u.iter().map(|x| x.prec()).min().unwrap()
    }

    /// `u_k / u_j`.
    pub fn ratio(&self, k: usize, j: usize) -> Result<LaurentSeries> {
        self.u[k].div(&self.u[j])
    }

    pub fn matrix(&self) -> SeriesMatrix {
        let [a, b, c] = self.u.clone();
        SeriesMatrix::diagonal([a, b, c])
    }
}

impl fmt::Display for SplitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diag({}; {}; {})", self.u[0], self.u[1], self.u[2])
    }
}

/// `v(1 - u1/u2)`, `v(1 - u1/u3)`, `v(1 - u2/u3)`.
fn root_valuations(u: &[LaurentSeries; 3]) -> Result<[Valuation; 3]> {
    let one = LaurentSeries::one(u[0].field(), u.iter().map(|x| x.prec()).min().unwrap());
    let root = |i: usize, j: usize| -> Result<Valuation> {
        if u[i].valuation() != Valuation::Finite(0) || u[j].valuation() != Valuation::Finite(0) {
            return Err(Error::NotApplicable("entries of γ must be units".into()));
        }
        Ok(one.sub(&u[i].div(&u[j])?).valuation())
    };
    Ok([root(0, 1)?, root(0, 2)?, root(1, 2)?])
}

/// `1 + c·π^e`, or the constant `1 + c` when `e = 0`.
fn one_plus(field: PrimeField, c: u32, e: u32, prec: i32) -> LaurentSeries {
    let one = LaurentSeries::one(field, prec);
    one.add(&LaurentSeries::monomial(field.scalar(c as i64), e as i32, prec))
}

/// Builds `γ` with the given invariants over `F_q`: `u1 = 1`,
/// `u2 = 1 + c·π^m`, `u3 = u2·(1 + c'·π^n)`, trying every `c, c' ∈ F_q^×`
/// and reordering the entries so that the pair at valuation `n` is `(u2, u3)`.
pub fn make_gamma(m: u32, n: u32, field: PrimeField, prec: i32) -> Result<SplitElement> {
    let inv = Invariants::new(m, n)?;
    if prec <= n as i32 {
        return Err(Error::PrecisionExhausted {
            needed: n as i32 + 1,
            available: prec,
        });
    }
    let q = field.size();
    for c in 1..q {
        for c2 in 1..q {
            let u1 = LaurentSeries::one(field, prec);
            let u2 = one_plus(field, c, m, prec);
            let u3 = u2.mul(&one_plus(field, c2, n, prec));
            if let Some(g) = normalize_order([u1, u2, u3], inv) {
                return Ok(g);
            }
        }
    }
    Err(Error::ValuationMismatch { m, n, q })
}

/// Permutes three units so their root valuations read `(m, m, n)`.
fn normalize_order(u: [LaurentSeries; 3], inv: Invariants) -> Option<SplitElement> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 0, 1], [0, 2, 1], [1, 2, 0], [2, 1, 0]];
    for p in PERMS {
        let cand = p.map(|k| u[k].clone());
        if let Ok(g) = SplitElement::from_units(cand) {
            if g.inv == inv {
                return Some(g);
            }
        }
    }
    None
}

/// `M^-1 γ M γ^-1` tested against a stabilizer pattern, with the ratios
/// `u_k/u_j` computed once.
#[derive(Clone, Debug)]
pub struct FixedPointTest {
    ratios: [[LaurentSeries; 3]; 3],
    level: i32,
}

impl FixedPointTest {
    pub fn new(g: &SplitElement) -> Result<Self> {
        let mut ratios: [[LaurentSeries; 3]; 3] = std::array::from_fn(|_| {
            std::array::from_fn(|_| LaurentSeries::one(g.field(), g.precision()))
        });
        for (k, row) in ratios.iter_mut().enumerate() {
            for (j, r) in row.iter_mut().enumerate() {
                if k != j {
                    *r = g.ratio(k, j)?;
                }
            }
        }
        Ok(FixedPointTest {
            ratios,
            level: g.level(),
        })
    }

    pub fn pattern(&self, v: Vertex) -> ValuationPattern {
        let level = match region_of(v) {
            Region::V => 0,
            _ => self.level,
        };
        stabilizer_pattern(v, level)
    }

    /// The matrix `M^-1 γ M γ^-1`, each entry known at least below `cap(r,c)`.
    pub fn conjugate(&self, m: &StandardForm, cap: impl Fn(usize, usize) -> i32) -> Result<SeriesMatrix> {
        let mat = matrix_of(m);
        let inv = mat.inverse()?;
        let y: [[LaurentSeries; 3]; 3] =
            std::array::from_fn(|k| std::array::from_fn(|j| mat.get(k, j).mul(&self.ratios[k][j])));
        Ok(SeriesMatrix::from_fn(|i, j| {
            let c = cap(i, j);
            let mut acc = inv.get(i, 0).mul_capped(&y[0][j], c);
            for (k, yk) in y.iter().enumerate().skip(1) {
                acc = acc.add(&inv.get(i, k).mul_capped(&yk[j], c));
            }
            acc
        }))
    }

    pub fn is_fixed(&self, m: &StandardForm) -> Result<bool> {
        let pat = self.pattern(m.vertex());
        let caps = |r: usize, c: usize| pat.needed_precision(r, c).unwrap_or(i32::MAX);
        let n = self.conjugate(m, caps)?;
        for r in 0..3 {
            for c in 0..3 {
                if !entry_satisfies(n.get(r, c), pat.entry(r, c))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Whether the lattice of `m` is fixed by `γ`, tested against the level-0
/// stabilizer for `V` and the level-`a` stabilizer for `S`/`T`.
pub fn is_fixed(m: &StandardForm, g: &SplitElement) -> Result<bool> {
    FixedPointTest::new(g)?.is_fixed(m)
}

/// The twelve cases of the dimension formula, plus the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CellCase {
    Base,
    V4,
    V8,
    V9,
    V10,
    V11,
    V12,
    S1,
    S2,
    S3,
    T7,
    T6,
    T5,
}

impl CellCase {
    pub const TWELVE: [CellCase; 12] = [
        CellCase::V4,
        CellCase::V8,
        CellCase::V9,
        CellCase::V10,
        CellCase::V11,
        CellCase::V12,
        CellCase::S1,
        CellCase::S2,
        CellCase::S3,
        CellCase::T7,
        CellCase::T6,
        CellCase::T5,
    ];

    /// Dispatch on the region, then on the type at level 0 (`V`) or `a`.
    pub fn of(v: Vertex, a: i32) -> CellCase {
        use VertexType as Ty;
        match region_of(v) {
            Region::V => match classify(v, 0) {
                Ty::BasePoint => CellCase::Base,
                Ty::T4 => CellCase::V4,
                Ty::T8 => CellCase::V8,
                Ty::T9 => CellCase::V9,
                Ty::T10 => CellCase::V10,
                Ty::T11 => CellCase::V11,
                Ty::T12 => CellCase::V12,
                other => unreachable!("V vertex {v} of type {other}"),
            },
            Region::S => match classify(v, a) {
                Ty::T1 => CellCase::S1,
                Ty::T2 => CellCase::S2,
                Ty::T3 => CellCase::S3,
                other => unreachable!("S vertex {v} of type {other} at level {a}"),
            },
            Region::T => match classify(v, a) {
                Ty::T7 => CellCase::T7,
                Ty::T6 => CellCase::T6,
                Ty::T5 => CellCase::T5,
                other => unreachable!("T vertex {v} of type {other} at level {a}"),
            },
        }
    }

    /// Short label: the type number with `⁰` or `ᵃ`.
    pub fn label(self) -> &'static str {
        match self {
            CellCase::Base => "base",
            CellCase::V4 => "4⁰",
            CellCase::V8 => "8⁰",
            CellCase::V9 => "9⁰",
            CellCase::V10 => "10⁰",
            CellCase::V11 => "11⁰",
            CellCase::V12 => "12⁰",
            CellCase::S1 => "1ᵃ",
            CellCase::S2 => "2ᵃ",
            CellCase::S3 => "3ᵃ",
            CellCase::T7 => "7ᵃ",
            CellCase::T6 => "6ᵃ",
            CellCase::T5 => "5ᵃ",
        }
    }
}

impl fmt::Display for CellCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The min-terms whose sum is the dimension of the fixed cell at `v`.
pub fn dimension_terms(v: Vertex, inv: Invariants) -> (CellCase, Vec<i32>) {
    let (m, n) = (inv.m as i32, inv.n as i32);
    let a = inv.level();
    let Vertex { s, t } = v;
    let case = CellCase::of(v, a);
    let terms = match case {
        CellCase::Base => vec![],
        CellCase::V4 => vec![m.min(-s), m.min(-t)],
        CellCase::V8 => vec![m.min(s - 1), n.min(s - t)],
        CellCase::V9 => vec![n.min(s - t), m.min(t - 1), m.min(s - 1)],
        CellCase::V10 => vec![m.min(s - 1), m.min(t - 1)],
        CellCase::V11 => vec![n.min(t - s - 1), m.min(s - 1), m.min(t - 1)],
        CellCase::V12 => vec![n.min(t - s - 1), m.min(t - 1)],
        CellCase::S1 => vec![m.min(-s), m.min(t - (a + 1)), n.min(t - s - 1)],
        CellCase::S2 => vec![m.min(-s), n.min(t - s - 1)],
        CellCase::S3 => vec![m.min(-s), n.min(t - s - 1), m.min(a - t).min(-s - 1)],
        CellCase::T7 => vec![m.min(-t), m.min(s - (a + 1)), n.min(s - t)],
        CellCase::T6 => vec![m.min(-t), n.min(s - t)],
        CellCase::T5 => vec![m.min(-t), n.min(s - t), m.min(a - s).min(-t - 1)],
    };
    debug_assert!(terms.iter().all(|&x| x >= 0), "negative term at {v} ({case}): {terms:?}");
    (case, terms)
}

pub fn fixed_cell_dimension(v: Vertex, inv: Invariants) -> usize {
    let (_, terms) = dimension_terms(v, inv);
    terms.iter().sum::<i32>() as usize
}

/// How the fixed points of one cell are parameterized: free windows, and
/// for the mixed cases the coordinate whose value is a determined part plus
/// a free part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameterization {
    pub case: CellCase,
    /// Free windows. For the determined coordinate this is the window of its
    /// free part.
    pub free: Vec<CoordWindow>,
    pub determined: Option<Coord>,
}

impl Parameterization {
    pub fn dimension(&self) -> usize {
        self.free.iter().map(|w| w.len()).sum()
    }

    pub fn window(&self, c: Coord) -> Option<CoordWindow> {
        self.free.iter().copied().find(|w| w.coord == c)
    }
}

pub fn fixed_cell_parameterization(v: Vertex, inv: Invariants) -> Parameterization {
    use Coord::*;
    let (m, n) = (inv.m as i32, inv.n as i32);
    let a = inv.level();
    let Vertex { s, t } = v;
    let case = CellCase::of(v, a);
    let w = CoordWindow::new;
    let (free, determined) = match case {
        CellCase::Base => (vec![], None),
        CellCase::V4 => (vec![w(I, (-s - m).max(0), -s), w(J, (-t - m).max(0), -t)], None),
        CellCase::V8 => (vec![w(X, (s - m).max(1), s), w(K, (s - t - n).max(0), s - t)], None),
        CellCase::V9 => (
            vec![w(K, (s - t - n).max(0), s - t), w(Y, (t - m).max(1), t), w(X, (s - m).max(1), s)],
            Some(X),
        ),
        CellCase::V10 => (vec![w(X, (s - m).max(1), s), w(Y, (t - m).max(1), t)], None),
        CellCase::V11 => (
            vec![w(Z, (t - s - n).max(1), t - s), w(X, (s - m).max(1), s), w(Y, (t - m).max(1), t)],
            Some(Y),
        ),
        CellCase::V12 => (vec![w(Z, (t - s - n).max(1), t - s), w(Y, (t - m).max(1), t)], None),
        CellCase::S1 => (
            vec![w(I, (-s - m).max(0), -s), w(Y, (t - m).max(a + 1), t), w(Z, (t - s - n).max(1), t - s)],
            Some(Z),
        ),
        CellCase::S2 => (vec![w(I, (-s - m).max(0), -s), w(Z, (t - s - n).max(1), t - s)], None),
        CellCase::S3 => {
            let x = a.min(t - s - 1);
            (
                vec![w(J, (-t - m).max(-x), -t), w(Z, (t - s - n).max(1), t - s), w(I, (-s - m).max(0), -s)],
                Some(I),
            )
        }
        CellCase::T7 => (
            vec![w(J, (-t - m).max(0), -t), w(X, (s - m).max(a + 1), s), w(K, (s - t - n).max(0), s - t)],
            Some(K),
        ),
        CellCase::T6 => (vec![w(J, (-t - m).max(0), -t), w(K, (s - t - n).max(0), s - t)], None),
        CellCase::T5 => {
            let x = a.min(s - t - 1);
            (
                vec![w(I, (-s - m).max(-x), -s), w(K, (s - t - n).max(0), s - t), w(J, (-t - m).max(0), -t)],
                Some(J),
            )
        }
    };
    Parameterization {
        case,
        free,
        determined,
    }
}

/// The determined part of the determined coordinate of a fixed point, as a
/// function of the other two free coordinates of `m`.
///
/// | case | part |
/// |------|------|
/// | 9⁰  | `x' = -k·y·(1 - u3/u1) / (u2/u1 - 1)` |
/// | 11⁰ | `y' = -z·x·(1 - u2/u1) / (u3/u1 - 1)` |
/// | 1ᵃ  | `z' = -y·i·(1 - u1/u2) / (u3/u2 - 1)` |
/// | 3ᵃ  | `i' = -j·z·(1 - u3/u2) / (u1/u2 - 1)` |
/// | 7ᵃ  | `k' = -x·j·(1 - u1/u3) / (u2/u3 - 1)` |
/// | 5ᵃ  | `j' = -k·i·(1 - u2/u3) / (u1/u3 - 1)` |
pub fn determined_part(m: &StandardForm, g: &SplitElement) -> Result<Option<(Coord, LaurentSeries)>> {
    use Coord::*;
    let case = CellCase::of(m.vertex(), g.level());
    // (coordinate, two factors, ratio numerator (k,j), ratio denominator (k,j))
    let (coord, f1, f2, num, den) = match case {
        CellCase::V9 => (X, K, Y, (2, 0), (1, 0)),
        CellCase::V11 => (Y, Z, X, (1, 0), (2, 0)),
        CellCase::S1 => (Z, Y, I, (0, 1), (2, 1)),
        CellCase::S3 => (I, J, Z, (2, 1), (0, 1)),
        CellCase::T7 => (K, X, J, (0, 2), (1, 2)),
        CellCase::T5 => (J, K, I, (1, 2), (0, 2)),
        _ => return Ok(None),
    };
    let one = LaurentSeries::one(g.field(), g.precision());
    let top = one.sub(&g.ratio(num.0, num.1)?);
    let bottom = g.ratio(den.0, den.1)?.sub(&one);
    let part = m.coord(f1).mul(m.coord(f2)).mul(&top).div(&bottom)?.neg();
    Ok(Some((coord, part)))
}

/// Poincaré polynomial of `X^γ ∩ ⋃_{v ∈ Δ_N} C_v`: `coeffs[d]` counts cells
/// of dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poincare {
    pub m: u32,
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: i32,
    pub coeffs: Vec<u64>,
}

impl Poincare {
    pub fn eval(&self, q: u64) -> u128 {
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * q as u128 + c as u128)
    }
}

pub fn poincare(big_n: i32, inv: Invariants) -> Poincare {
    poincare_with(big_n, inv, |v| fixed_cell_dimension(v, inv) as i64)
}

/// Same aggregation with an arbitrary dimension function.
pub fn poincare_with(big_n: i32, inv: Invariants, dim: impl Fn(Vertex) -> i64) -> Poincare {
    let mut coeffs: Vec<u64> = vec![];
    for v in triangle_vertices(big_n) {
        let d = dim(v).max(0) as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, 0);
        }
        coeffs[d] += 1;
    }
    Poincare {
        m: inv.m,
        n: inv.n,
        big_n,
        coeffs,
    }
}

/// Working precision for a sweep over `Δ_N`: enough to decide every pattern
/// entry after the negative exponents of `M` and `M^-1` are multiplied in.
pub fn working_precision(big_n: i32, inv: Invariants) -> i32 {
    3 * big_n + inv.n as i32 + inv.level() + 4
}
