//! Truncated formal Laurent series over a small prime field.
//!
//! A [`LaurentSeries`] tracks the coefficients of `π^lo, …, π^(prec-1)`.
//! Everything below `lo` is known to be zero; nothing at or above `prec` is
//! known. Every operation computes the window on which its result is exact
//! and never reads past an operand's `prec`.

use std::cmp::{max, min};
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 17;

/// The prime field `F_q`, `2 <= q <= 17`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField(u32);

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        let prime = q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d));
        if !prime || q > MAX_FIELD_SIZE {
            return Err(Error::UnsupportedField(q));
        }
        Ok(PrimeField(q))
    }

    #[inline]
    pub fn size(self) -> u32 {
        self.0
    }

    pub fn elements(self) -> impl Iterator<Item = FieldScalar> {
        (0..self.0).map(move |v| FieldScalar { value: v, field: self })
    }

    pub fn scalar(self, value: i64) -> FieldScalar {
        FieldScalar {
            value: value.rem_euclid(self.0 as i64) as u32,
            field: self,
        }
    }

    #[inline]
    fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    #[inline]
    fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }

    /// Inverse of a nonzero residue (Fermat).
    fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        let mut acc = 1;
        let mut base = a % self.0;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// An element of a [`PrimeField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u32,
    field: PrimeField,
}

impl FieldScalar {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::ZeroSeries);
        }
        Ok(FieldScalar {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }
}

impl std::ops::Add for FieldScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        FieldScalar {
            value: self.field.add(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl std::ops::Sub for FieldScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        FieldScalar {
            value: self.field.sub(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl std::ops::Mul for FieldScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        FieldScalar {
            value: self.field.mul(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl std::ops::Neg for FieldScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FieldScalar {
            value: self.field.sub(0, self.value),
            field: self.field,
        }
    }
}

/// Valuation with `+∞` for the zero series. `Finite(_) < Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LaurentSeries {
    field: PrimeField,
    lo: i32,
    prec: i32,
    coeffs: Vec<u32>,
}

impl LaurentSeries {
    /// The zero series known on `[lo, prec)`.
    pub fn zero(field: PrimeField, lo: i32, prec: i32) -> Self {
        assert!(lo <= prec, "window [{lo}, {prec}) is inverted");
        LaurentSeries {
            field,
            lo,
            prec,
            coeffs: vec![0; (prec - lo) as usize],
        }
    }

    /// Zero, known exactly below `prec`, with an empty coefficient vector.
    pub fn zero_below(field: PrimeField, prec: i32) -> Self {
        Self::zero(field, prec, prec)
    }

    pub fn one(field: PrimeField, prec: i32) -> Self {
        Self::monomial(field.scalar(1), 0, prec)
    }

    /// `c·π^e` known below `prec`.
    pub fn monomial(c: FieldScalar, e: i32, prec: i32) -> Self {
        let field = c.field();
        if e >= prec {
            return Self::zero_below(field, prec);
        }
        let mut s = Self::zero(field, e, prec);
        s.coeffs[0] = c.value();
        s
    }

    /// Coefficients of `π^lo, π^(lo+1), …` up to `prec`. Missing tail entries are zero.
    pub fn from_coeffs(field: PrimeField, lo: i32, prec: i32, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(field, lo, prec);
        for (slot, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = field.scalar(c).value();
        }
        assert!(
            coeffs.len() <= s.coeffs.len(),
            "more coefficients than the window [{lo}, {prec}) holds"
        );
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; `lo` is the least exponent given.
    pub fn from_terms(field: PrimeField, terms: &[(i32, i64)], prec: i32) -> Self {
        let lo = terms.iter().map(|&(e, _)| e).min().unwrap_or(prec).min(prec);
        let mut s = Self::zero(field, lo, prec);
        for &(e, c) in terms {
            assert!(e < prec, "term π^{e} is outside precision {prec}");
            let idx = (e - lo) as usize;
            s.coeffs[idx] = field.add(s.coeffs[idx], field.scalar(c).value());
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn prec(&self) -> i32 {
        self.prec
    }

    /// Coefficient of `π^e`; `None` at or beyond `prec`.
    pub fn coeff(&self, e: i32) -> Option<FieldScalar> {
        if e >= self.prec {
            return None;
        }
        let value = if e < self.lo {
            0
        } else {
            self.coeffs[(e - self.lo) as usize]
        };
        Some(FieldScalar {
            value,
            field: self.field,
        })
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.lo + k as i32, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(k) => Valuation::Finite(self.lo + k as i32),
            None => Valuation::Infinite,
        }
    }

    /// Valuation, failing loudly when every tracked coefficient vanishes.
    pub fn finite_valuation(&self) -> Result<i32> {
        self.valuation().finite().ok_or(Error::PrecisionExhausted {
            needed: self.prec + 1,
            available: self.prec,
        })
    }

    /// Strips leading zeros so that `lo` is the true valuation (or `prec` for zero).
    pub fn normalize(&self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .position(|&c| c != 0)
            .unwrap_or(self.coeffs.len());
        LaurentSeries {
            field: self.field,
            lo: self.lo + lead as i32,
            prec: self.prec,
            coeffs: self.coeffs[lead..].to_vec(),
        }
    }

    /// Same coefficients, known only below `min(prec, hi)`.
    pub fn truncate(&self, hi: i32) -> Self {
        if hi >= self.prec {
            return self.clone();
        }
        let lo = min(self.lo, hi);
        let mut out = Self::zero(self.field, lo, hi);
        for (e, c) in self.terms().take_while(|&(e, _)| e < hi) {
            out.coeffs[(e - lo) as usize] = c;
        }
        out
    }

    /// Re-declares the known window as `[lo, prec)`. Only valid when every
    /// coefficient outside the old window is genuinely zero (exact polynomials).
    pub fn with_precision(&self, prec: i32) -> Self {
        let lo = min(self.lo, prec);
        let mut out = Self::zero(self.field, lo, prec);
        for (e, c) in self.terms() {
            assert!(e < prec, "term π^{e} would fall outside precision {prec}");
            out.coeffs[(e - lo) as usize] = c;
        }
        out
    }

    /// Keeps exponents in `[from, to)` and zeroes the rest. The window
    /// `(-∞, prec)` is tracked, so only `to > prec` is a violation.
    pub fn slice(&self, from: i32, to: i32) -> Result<Self> {
        if from > to || to > self.prec {
            return Err(Error::WindowViolation {
                from,
                to,
                lo: self.lo,
                prec: self.prec,
            });
        }
        let mut out = Self::zero(self.field, self.lo, self.prec);
        for (e, c) in self.terms().filter(|&(e, _)| e >= from && e < to) {
            out.coeffs[(e - self.lo) as usize] = c;
        }
        Ok(out)
    }

    /// Multiplication by `π^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentSeries {
            field: self.field,
            lo: self.lo + k,
            prec: self.prec + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: FieldScalar) -> Self {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = self.field.mul(*x, c.value());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = self.field.sub(0, *x);
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &Self, subtract: bool) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        let lo = min(self.lo, rhs.lo);
        let prec = min(self.prec, rhs.prec);
        let mut out = Self::zero(self.field, lo, prec);
        for (e, c) in self.terms().take_while(|&(e, _)| e < prec) {
            out.coeffs[(e - lo) as usize] = c;
        }
        for (e, c) in rhs.terms().take_while(|&(e, _)| e < prec) {
            let slot = &mut out.coeffs[(e - lo) as usize];
            *slot = if subtract {
                self.field.sub(*slot, c)
            } else {
                self.field.add(*slot, c)
            };
        }
        out
    }

    /// Cauchy product, exact on `[a.lo + b.lo, min(a.lo + b.prec, b.lo + a.prec))`.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_capped(rhs, i32::MAX)
    }

    /// Product restricted to exponents below `cap`.
    pub fn mul_capped(&self, rhs: &Self, cap: i32) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        let lo = self.lo + rhs.lo;
        let prec = max(lo, min(min(self.lo + rhs.prec, rhs.lo + self.prec), cap));
        let len = (prec - lo) as usize;
        let mut acc = vec![0u32; len];
        for (ia, &ca) in self.coeffs.iter().enumerate().take(len) {
            if ca == 0 {
                continue;
            }
            for (slot, &cb) in acc[ia..].iter_mut().zip(&rhs.coeffs) {
                *slot += ca * cb;
            }
            // keep the accumulator small: q <= 17 so one row adds < 17^2
            if ia % 64 == 63 {
                acc.iter_mut().for_each(|x| *x %= self.field.0);
            }
        }
        let q = self.field.0;
        LaurentSeries {
            field: self.field,
            lo,
            prec,
            coeffs: acc.into_iter().map(|x| x % q).collect(),
        }
    }

    /// Inverse of a series with a nonzero leading coefficient.
    ///
    /// With `v` the valuation and `r = prec - v` the relative precision, the
    /// result has valuation `-v` and is exact below `r - v`.
    pub fn invert_unit(&self) -> Result<Self> {
        let a = self.normalize();
        if a.coeffs.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let f = self.field;
        let v = a.lo;
        let rel = a.coeffs.len();
        let lead_inv = f.inv(a.coeffs[0]);
        let mut b = vec![0u32; rel];
        b[0] = lead_inv;
        for k in 1..rel {
            let mut sum = 0;
            for j in 1..=k {
                sum = f.add(sum, f.mul(a.coeffs[j], b[k - j]));
            }
            b[k] = f.mul(f.sub(0, sum), lead_inv);
        }
        Ok(LaurentSeries {
            field: f,
            lo: -v,
            prec: -v + rel as i32,
            coeffs: b,
        })
    }

    /// `self / rhs`, with `rhs` any series that has a finite valuation.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert_unit()?))
    }

    /// True when both series agree on the common known window.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        let prec = min(self.prec, rhs.prec);
        let lo = min(self.lo, rhs.lo);
        (lo..prec).all(|e| self.coeff(e) == rhs.coeff(e))
    }
}

/// Equality of the nonzero terms; precision windows are ignored.
impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms().eq(other.terms())
    }
}

impl Eq for LaurentSeries {}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*p^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [prec {}]", self.prec)
    }
}
