//! The `a`-paving: regions `S`, `T`, `V`, the stationary test, the two
//! retractions along edge lines, the cells `S^a_v`, `T^a_v`, `V^0_v`, the
//! triangles `Δ_i` and the filtration order on their vertices.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    classify, orbit_dimension, windows, Budget, Coord, PointEnumerator, StandardForm, ValuationPattern, Vertex,
    VertexType, WindowSet,
};
use crate::series::{LaurentSeries, PrimeField, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    S,
    T,
    V,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn region_of(v: Vertex) -> Region {
    use VertexType::*;
    match classify(v, 0) {
        T1 | T2 | T3 => Region::S,
        T5 | T6 | T7 => Region::T,
        _ => Region::V,
    }
}

/// Whether a point of the `I`-orbit of an `S` or `T` vertex already lies in
/// that vertex's `I^a`-cell.
pub fn is_stationary(m: &StandardForm, a: i32) -> Result<bool> {
    let v = m.vertex();
    let above = |val: Valuation| match val {
        Valuation::Infinite => true,
        Valuation::Finite(e) => e > a,
    };
    match classify(v, 0) {
        VertexType::T2 | VertexType::T3 | VertexType::T5 | VertexType::T6 => Ok(true),
        VertexType::T1 => Ok(above(m.valuation(Coord::Y))),
        VertexType::T7 => Ok(above(m.valuation(Coord::X))),
        ty => Err(Error::NotApplicable(format!("vertex {v} has type {ty} at level 0"))),
    }
}

/// Polynomial representative of `s` in `P^lo / P^hi`, re-declared exact to `prec`.
fn window_rep(s: &LaurentSeries, hi: i32, prec: i32) -> Result<LaurentSeries> {
    if s.prec() < hi {
        return Err(Error::PrecisionExhausted {
            needed: hi,
            available: s.prec(),
        });
    }
    Ok(s.truncate(hi).with_precision(prec))
}

fn precision_of(m: &StandardForm) -> i32 {
    m.coords().iter().map(|c| c.prec()).min().unwrap()
}

/// Moves a non-stationary point at a type `1⁰` vertex `(s,t)` to the
/// type `3ᵃ` vertex `w = (s-d, t-2d)`, `d = t - v(y)`.
pub fn retract_type1(m: &StandardForm, a: i32) -> Result<(Vertex, StandardForm)> {
    let Vertex { s, t } = m.vertex();
    if classify(m.vertex(), 0) != VertexType::T1 {
        return Err(Error::NotApplicable(format!("{} is not type 1 at level 0", m.vertex())));
    }
    let y = m.coord(Coord::Y);
    let vy = match y.valuation() {
        Valuation::Finite(e) if 1 <= e && e <= a.min(t - 1) => e,
        other => {
            return Err(Error::NotApplicable(format!(
                "v(y) = {other} outside [1, {}]",
                a.min(t - 1)
            )))
        }
    };
    let prec = precision_of(m);
    let d = t - vy;
    let w = Vertex::new(s - d, t - 2 * d);
    let z = m.coord(Coord::Z);
    let ceil_z = z.slice(t - s - d, t - s)?;
    let inv_y = y.normalize().invert_unit()?;
    let z1 = window_rep(&z.sub(&ceil_z), t - s - d, prec)?;
    let i1 = window_rep(&m.coord(Coord::I).sub(&ceil_z.mul(&inv_y)), d - s, prec)?;
    let j1 = window_rep(&inv_y, 2 * d - t, prec)?;
    let zero = LaurentSeries::zero_below(m.field(), prec);
    let coords = [i1, j1, zero.clone(), zero.clone(), zero, z1];
    Ok((w, StandardForm::new(w, a, cell(w, a)?.windows, coords)?))
}

/// Moves a non-stationary point at a type `7⁰` vertex `(s,t)` to the
/// type `5ᵃ` vertex `w = (s-2d, t-d)`, `d = s - v(x)`.
pub fn retract_type7(m: &StandardForm, a: i32) -> Result<(Vertex, StandardForm)> {
    let Vertex { s, t } = m.vertex();
    if classify(m.vertex(), 0) != VertexType::T7 {
        return Err(Error::NotApplicable(format!("{} is not type 7 at level 0", m.vertex())));
    }
    let x = m.coord(Coord::X);
    let vx = match x.valuation() {
        Valuation::Finite(e) if 1 <= e && e <= a.min(s - 1) => e,
        other => {
            return Err(Error::NotApplicable(format!(
                "v(x) = {other} outside [1, {}]",
                a.min(s - 1)
            )))
        }
    };
    let prec = precision_of(m);
    let d = s - vx;
    let w = Vertex::new(s - 2 * d, t - d);
    let k = m.coord(Coord::K);
    let ceil_k = k.slice(s - t - d, s - t)?;
    let inv_x = x.normalize().invert_unit()?;
    let k1 = window_rep(&k.sub(&ceil_k), s - t - d, prec)?;
    let j1 = window_rep(&m.coord(Coord::J).sub(&ceil_k.mul(&inv_x)), d - t, prec)?;
    let i1 = window_rep(&inv_x, 2 * d - s, prec)?;
    let zero = LaurentSeries::zero_below(m.field(), prec);
    let coords = [i1, j1, k1, zero.clone(), zero.clone(), zero];
    Ok((w, StandardForm::new(w, a, cell(w, a)?.windows, coords)?))
}

/// Destination of a point of an `S`/`T` `I`-orbit: itself when stationary,
/// otherwise its retraction.
pub fn paving_image(m: &StandardForm, a: i32) -> Result<(Vertex, StandardForm)> {
    if is_stationary(m, a)? {
        let c = cell(m.vertex(), a)?;
        let moved = StandardForm::new(m.vertex(), a, c.windows, m.coords().clone())?;
        return Ok((m.vertex(), moved));
    }
    match classify(m.vertex(), 0) {
        VertexType::T1 => retract_type1(m, a),
        _ => retract_type7(m, a),
    }
}

/// The pattern `π^-d · v K w^-1` that `M^-1 M'` must satisfy for a retraction
/// from `v` to `w`.
pub fn retraction_pattern(v: Vertex, w: Vertex) -> ValuationPattern {
    let d = (v.s - w.s).min(v.t - w.t);
    ValuationPattern::translate(v, w, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDescriptor {
    pub vertex: Vertex,
    pub region: Region,
    pub a: i32,
    pub windows: WindowSet,
    pub dimension: usize,
}

pub fn cell(v: Vertex, a: i32) -> Result<CellDescriptor> {
    use VertexType::*;
    if a < 0 {
        return Err(Error::InvalidCombination(format!("negative level {a}")));
    }
    let Vertex { s, t } = v;
    let region = region_of(v);
    let ty = classify(v, a);
    let w = match region {
        Region::V => windows(v, 0),
        Region::S => {
            let base = WindowSet::empty().with(Coord::I, 0, -s).with(Coord::Z, 1, t - s);
            match ty {
                T1 | T2 => base.with(Coord::Y, a + 1, t),
                T3 => base.with(Coord::J, -a.min(t - s - 1), -t),
                _ => return Err(Error::InvalidCombination(format!("S vertex {v} has type {ty} at level {a}"))),
            }
        }
        Region::T => {
            let base = WindowSet::empty().with(Coord::J, 0, -t).with(Coord::K, 0, s - t);
            match ty {
                T7 | T6 => base.with(Coord::X, a + 1, s),
                T5 => base.with(Coord::I, -a.min(s - t - 1), -s),
                _ => return Err(Error::InvalidCombination(format!("T vertex {v} has type {ty} at level {a}"))),
            }
        }
    };
    Ok(CellDescriptor {
        vertex: v,
        region,
        a,
        windows: w,
        dimension: w.dimension(),
    })
}

pub fn enumerate_cell(c: &CellDescriptor, field: PrimeField, prec: i32, budget: Budget) -> Result<PointEnumerator> {
    PointEnumerator::new(c.vertex, c.a, c.windows, field, prec, budget)
}

/// Least `i` with `v` in the hull of `(i,0)`, `(0,i)`, `(-i,-i)`.
pub fn triangle_index(v: Vertex) -> i32 {
    let Vertex { s, t } = v;
    (s + t).max(t - 2 * s).max(s - 2 * t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Stage {
    #[serde(rename = "base")]
    Base,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Base => "base",
            Stage::I => "i",
            Stage::II => "ii",
            Stage::III => "iii",
        };
        write!(f, "{name}")
    }
}

/// The boundary of `Δ_i` split by stage. Ring 0 is the base point alone.
pub fn ring_vertices(i: i32) -> Vec<(Stage, Vertex)> {
    if i == 0 {
        return vec![(Stage::Base, Vertex::new(0, 0))];
    }
    let mut out = Vec::with_capacity(3 * i as usize);
    out.extend((1..i).map(|k| (Stage::I, Vertex::new(i - k, k))));
    out.extend((1..i).map(|k| (Stage::II, Vertex::new(-k, i - 2 * k))));
    out.extend((1..i).map(|k| (Stage::II, Vertex::new(-i + 2 * k, -i + k))));
    out.extend([Vertex::new(i, 0), Vertex::new(0, i), Vertex::new(-i, -i)].map(|v| (Stage::III, v)));
    out
}

/// All vertices of `Δ_n`, ring by ring.
pub fn triangle_vertices(n: i32) -> Vec<Vertex> {
    (0..=n).flat_map(|i| ring_vertices(i).into_iter().map(|(_, v)| v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationEntry {
    pub rank: usize,
    pub vertex: Vertex,
    pub triangle: i32,
    pub stage: Stage,
    /// The orbit dimension the stage sorts by.
    pub sort_key: usize,
}

/// Total order on `Δ_n`: base point, then per ring the `(i,0)–(0,i)` edge by
/// `I`-orbit dimension, the two slanted edges together by `I^a`-orbit
/// dimension, then the corners by `I`-orbit dimension. Ties go to the
/// lexicographically smaller `(s,t)`.
pub fn filtration_order(n: i32, a: i32) -> Vec<FiltrationEntry> {
    let mut out = Vec::with_capacity(1 + (3 * n * (n + 1) / 2).max(0) as usize);
    for i in 0..=n {
        let mut stages: Vec<(Stage, usize, Vertex)> = ring_vertices(i)
            .into_iter()
            .map(|(stage, v)| {
                let level = if stage == Stage::II { a } else { 0 };
                (stage, orbit_dimension(v, level), v)
            })
            .collect();
        stages.sort();
        for (stage, key, v) in stages {
            out.push(FiltrationEntry {
                rank: out.len(),
                vertex: v,
                triangle: i,
                stage,
                sort_key: key,
            });
        }
    }
    out
}
