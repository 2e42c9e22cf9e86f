//! 3×3 matrices of Laurent series.

use crate::error::Result;
use crate::series::{LaurentSeries, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    entries: [[LaurentSeries; 3]; 3],
}

impl SeriesMatrix {
    pub fn new(entries: [[LaurentSeries; 3]; 3]) -> Self {
        SeriesMatrix { entries }
    }

    pub fn identity(field: PrimeField, prec: i32) -> Self {
        Self::from_fn(|r, c| {
            if r == c {
                LaurentSeries::one(field, prec)
            } else {
                LaurentSeries::zero_below(field, prec)
            }
        })
    }

    /// `diag(π^e0, π^e1, π^e2)`.
    pub fn diagonal_monomials(field: PrimeField, exps: [i32; 3], prec: i32) -> Self {
        Self::from_fn(|r, c| {
            if r == c {
                LaurentSeries::monomial(field.scalar(1), exps[r], prec + exps[r])
            } else {
                LaurentSeries::zero_below(field, prec)
            }
        })
    }

    pub fn diagonal(d: [LaurentSeries; 3]) -> Self {
        let field = d[0].field();
        let prec = d.iter().map(|x| x.prec()).min().unwrap();
        let [d0, d1, d2] = d;
        let mut diag = [Some(d0), Some(d1), Some(d2)];
        Self::from_fn(|r, c| {
            if r == c {
                diag[r].take().unwrap()
            } else {
                LaurentSeries::zero_below(field, prec)
            }
        })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> LaurentSeries) -> Self {
        SeriesMatrix {
            entries: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentSeries {
        &self.entries[r][c]
    }

    pub fn entries(&self) -> &[[LaurentSeries; 3]; 3] {
        &self.entries
    }

    pub fn field(&self) -> PrimeField {
        self.entries[0][0].field()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| {
            let mut acc = self.entries[r][0].mul(&rhs.entries[0][c]);
            for k in 1..3 {
                acc = acc.add(&self.entries[r][k].mul(&rhs.entries[k][c]));
            }
            acc
        })
    }

    fn minor(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> LaurentSeries {
        let e = &self.entries;
        e[r0][c0].mul(&e[r1][c1]).sub(&e[r0][c1].mul(&e[r1][c0]))
    }

    pub fn determinant(&self) -> LaurentSeries {
        let e = &self.entries;
        let a = e[0][0].mul(&self.minor(1, 2, 1, 2));
        let b = e[0][1].mul(&self.minor(1, 2, 0, 2));
        let c = e[0][2].mul(&self.minor(1, 2, 0, 1));
        a.sub(&b).add(&c)
    }

    pub fn adjugate(&self) -> Self {
        // adj[c][r] = (-1)^(r+c) · minor with row r and column c removed
        let others = |i: usize| match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        Self::from_fn(|c, r| {
            let (r0, r1) = others(r);
            let (c0, c1) = others(c);
            let m = self.minor(r0, r1, c0, c1);
            if (r + c) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        })
    }

    /// Inverse when the determinant has a finite valuation.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        let adj = self.adjugate();
        let one = LaurentSeries::one(self.field(), det.prec());
        if det.normalize() == one && det.lo() >= 0 {
            return Ok(adj);
        }
        let inv = det.invert_unit()?;
        Ok(Self::from_fn(|r, c| adj.entries[r][c].mul(&inv)))
    }
}
