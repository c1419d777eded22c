//! Truncated `q`-series whose coefficients are rational functions of `s`.

use super::gauss::Gq;
use super::laurent::SLaurent;
use super::srat::SRat;
use super::wseries::WSeries;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::fmt;

/// Number of output rows above which products are computed in parallel.
const PAR_ROWS: usize = 4;

/// A series `Σ_{n = q_min}^{q_max} c_n(s) q^n`.
///
/// If `exact` is false the coefficients above `q_max` are unknown; if it is true they are zero.
/// Leading zero rows are stripped, so `q_min` is the valuation of a nonzero series. The zero
/// series known through `q_max` has no rows and `q_min = q_max + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    q_min: i64,
    q_max: i64,
    exact: bool,
    rows: Vec<SRat>,
}

impl QSeries {
    /// Builds a series from rows starting at `q_min`, known through `q_max`.
    pub fn from_rows(q_min: i64, q_max: i64, rows: Vec<SRat>) -> Self {
        let mut rows = rows;
        rows.truncate((q_max - q_min + 1).max(0) as usize);
        let mut s = Self { q_min, q_max, exact: false, rows };
        s.normalize();
        s
    }

    /// Builds an exact (polynomial in `q`) series.
    pub fn exact_from_rows(q_min: i64, rows: Vec<SRat>) -> Self {
        let q_max = q_min + rows.len() as i64 - 1;
        let mut s = Self { q_min, q_max, exact: true, rows };
        s.normalize();
        s
    }

    /// Builds a series from Laurent-polynomial rows.
    pub fn from_laurent_rows(q_min: i64, q_max: i64, rows: Vec<SLaurent>) -> Self {
        Self::from_rows(q_min, q_max, rows.into_iter().map(SRat::from_laurent).collect())
    }

    /// Builds an `s`-free series from scalar coefficients starting at `q_min`.
    pub fn from_scalars(q_min: i64, q_max: i64, c: Vec<Gq>) -> Self {
        Self::from_rows(q_min, q_max, c.into_iter().map(SRat::constant).collect())
    }

    /// The zero series known through `q_max`.
    pub fn zero(q_max: i64) -> Self {
        Self { q_min: q_max + 1, q_max, exact: false, rows: Vec::new() }
    }

    /// The exact zero series.
    pub fn exact_zero() -> Self {
        Self { q_min: 0, q_max: -1, exact: true, rows: Vec::new() }
    }

    /// The exact constant `c` (no `q` dependence).
    pub fn constant(c: SRat) -> Self {
        Self::exact_from_rows(0, vec![c])
    }

    /// The exact constant one.
    pub fn one() -> Self {
        Self::constant(SRat::one())
    }

    /// The exact monomial `c · q^n`.
    pub fn monomial(c: SRat, n: i64) -> Self {
        Self::exact_from_rows(n, vec![c])
    }

    fn normalize(&mut self) {
        let lead = self.rows.iter().take_while(|r| r.is_zero()).count();
        if lead > 0 {
            self.rows.drain(..lead);
            self.q_min += lead as i64;
        }
        if self.exact {
            while self.rows.last().is_some_and(|r| r.is_zero()) {
                self.rows.pop();
            }
            if self.rows.is_empty() {
                self.q_min = 0;
                self.q_max = -1;
            } else {
                self.q_max = self.q_min + self.rows.len() as i64 - 1;
            }
        } else if self.rows.is_empty() {
            self.q_min = self.q_max + 1;
        }
    }

    /// Lowest stored `q`-exponent (the valuation for a nonzero series).
    pub fn q_min(&self) -> i64 {
        self.q_min
    }

    /// Highest `q`-exponent that is known.
    pub fn q_max(&self) -> i64 {
        if self.exact {
            i64::MAX
        } else {
            self.q_max
        }
    }

    /// Highest stored row exponent (for exact series this is the degree).
    pub fn last_row(&self) -> i64 {
        self.q_max
    }

    /// True if the series is known to all orders.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// True if every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Valuation in `q`; `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.rows.is_empty()).then_some(self.q_min)
    }

    /// Coefficient of `q^n`.
    ///
    /// # Panics
    /// If `n` lies above the known range.
    pub fn coeff(&self, n: i64) -> SRat {
        assert!(n <= self.q_max(), "coefficient q^{n} requested beyond known order {}", self.q_max);
        self.row_ref(n).cloned().unwrap_or_else(SRat::zero)
    }

    /// Coefficient of `q^n`, or `None` if it is not known.
    pub fn try_coeff(&self, n: i64) -> Option<SRat> {
        (n <= self.q_max()).then(|| self.coeff(n))
    }

    fn row_ref(&self, n: i64) -> Option<&SRat> {
        if n < self.q_min {
            None
        } else {
            self.rows.get((n - self.q_min) as usize)
        }
    }

    /// Iterates over `(n, row)` for the stored rows, including zero rows in the middle.
    pub fn rows(&self) -> impl Iterator<Item = (i64, &SRat)> {
        self.rows.iter().enumerate().map(move |(i, r)| (self.q_min + i as i64, r))
    }

    /// Discards coefficients above `q^n`.
    pub fn truncate(&self, n: i64) -> Self {
        if !self.exact && n >= self.q_max {
            return self.clone();
        }
        let rows = self.rows().filter(|(k, _)| *k <= n).map(|(_, r)| r.clone()).collect();
        Self::from_rows(self.q_min, n, rows)
    }

    /// Marks the series as known only through `q^n` (no-op if it is already inexact below `n`).
    pub fn with_precision(&self, n: i64) -> Self {
        self.truncate(n)
    }

    fn combine_range(&self, o: &Self) -> (bool, i64) {
        match (self.exact, o.exact) {
            (true, true) => (true, self.q_max.max(o.q_max)),
            (true, false) => (false, o.q_max),
            (false, true) => (false, self.q_max),
            (false, false) => (false, self.q_max.min(o.q_max)),
        }
    }

    fn from_parts(exact: bool, q_min: i64, q_max: i64, rows: Vec<SRat>) -> Self {
        let mut s = Self { q_min, q_max, exact, rows };
        if !exact && s.rows.len() as i64 > (q_max - q_min + 1).max(0) {
            s.rows.truncate((q_max - q_min + 1).max(0) as usize);
        }
        s.normalize();
        s
    }

    /// Sum, to the smaller precision.
    pub fn add(&self, o: &Self) -> Self {
        let (exact, q_max) = self.combine_range(o);
        let lo = match (self.valuation(), o.valuation()) {
            (None, None) => return if exact { Self::exact_zero() } else { Self::zero(q_max) },
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if lo > q_max {
            return Self::zero(q_max);
        }
        let rows = (lo..=q_max)
            .map(|n| match (self.row_ref(n), o.row_ref(n)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => SRat::zero(),
            })
            .collect();
        Self::from_parts(exact, lo, q_max, rows)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { q_min: self.q_min, q_max: self.q_max, exact: self.exact, rows: self.rows.iter().map(|r| r.neg()).collect() }
    }

    /// Difference, to the smaller precision.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Known range of a product: `min` over inexact factors of `q_max + valuation(other)`.
    fn product_range(&self, o: &Self) -> (bool, i64) {
        let (va, vb) = (self.valuation().unwrap(), o.valuation().unwrap());
        match (self.exact, o.exact) {
            (true, true) => (true, self.q_max + o.q_max),
            (true, false) => (false, o.q_max + va),
            (false, true) => (false, self.q_max + vb),
            (false, false) => (false, (self.q_max + vb).min(o.q_max + va)),
        }
    }

    /// Product, to the precision both factors determine.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.zero_product(o);
        }
        let (exact, q_max) = self.product_range(o);
        let lo = self.q_min + o.q_min;
        if q_max < lo {
            return Self::zero(q_max);
        }
        let n_out = (q_max - lo + 1) as usize;
        let row = |i: usize| -> SRat {
            let n = lo + i as i64;
            let mut acc = SRat::zero();
            for (ia, a) in self.rows.iter().enumerate() {
                let na = self.q_min + ia as i64;
                let nb = n - na;
                if nb < o.q_min {
                    break;
                }
                if a.is_zero() {
                    continue;
                }
                if let Some(b) = o.row_ref(nb) {
                    if !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
            }
            acc
        };
        let rows: Vec<SRat> = if n_out >= PAR_ROWS && self.rows.len() * o.rows.len() > 16 {
            (0..n_out).into_par_iter().map(row).collect()
        } else {
            (0..n_out).map(row).collect()
        };
        Self::from_parts(exact, lo, q_max, rows)
    }

    fn zero_product(&self, o: &Self) -> Self {
        // A product with a known-zero factor is zero as far as the other factor's lowest term allows.
        let bound = |z: &Self, other: &Self| -> (bool, i64) {
            if z.exact {
                (true, -1)
            } else {
                match other.valuation() {
                    Some(v) => (false, z.q_max + v),
                    None if other.exact => (false, z.q_max),
                    None => (false, z.q_max + other.q_max + 1),
                }
            }
        };
        let (e1, m1) = if self.is_zero() { bound(self, o) } else { (true, i64::MAX) };
        let (e2, m2) = if o.is_zero() { bound(o, self) } else { (true, i64::MAX) };
        if (self.is_zero() && e1) || (o.is_zero() && e2) {
            return Self::exact_zero();
        }
        Self::zero(m1.min(m2))
    }

    /// Multiplication by a `q`-independent coefficient.
    pub fn mul_row(&self, c: &SRat) -> Self {
        if c.is_zero() {
            return if self.exact { Self::exact_zero() } else { Self::zero(self.q_max) };
        }
        let rows = self.rows.iter().map(|r| r.mul(c)).collect();
        Self::from_parts(self.exact, self.q_min, self.q_max, rows)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return if self.exact { Self::exact_zero() } else { Self::zero(self.q_max) };
        }
        let rows = self.rows.iter().map(|r| r.scale(c)).collect();
        Self::from_parts(self.exact, self.q_min, self.q_max, rows)
    }

    /// Multiplication by `q^k`.
    pub fn shift_q(&self, k: i64) -> Self {
        if self.exact && self.is_zero() {
            return self.clone();
        }
        Self { q_min: self.q_min + k, q_max: self.q_max + k, exact: self.exact, rows: self.rows.clone() }
    }

    /// Multiplication by `s^k` in every row.
    pub fn shift_s(&self, k: i64) -> Self {
        Self { q_min: self.q_min, q_max: self.q_max, exact: self.exact, rows: self.rows.iter().map(|r| r.shift(k)).collect() }
    }

    /// `a^e` for `e ≥ 0`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse to the known order.
    ///
    /// The leading row must be a unit of the coefficient ring. For an input with valuation `v`
    /// known through `A`, the inverse is known through `A − 2v`. Exact inputs with more than one
    /// row need an explicit order; use [`QSeries::invert_to`].
    pub fn invert(&self) -> Result<Self> {
        if self.exact && self.rows.len() > 1 {
            return Err(Error::NeedsPrecision("invert of a multi-term exact series".into()));
        }
        let v = self.valuation().ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let target = if self.exact { -v } else { self.q_max - 2 * v };
        let mut inv = self.invert_to(target)?;
        if self.exact {
            inv.exact = true;
            inv.normalize();
        }
        Ok(inv)
    }

    /// Multiplicative inverse known through `q^target`, treating missing input rows as zero
    /// only when the input is exact.
    pub fn invert_to(&self, target: i64) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let lead = &self.rows[0];
        let u = lead
            .try_inv()
            .ok_or_else(|| Error::NotInvertible(format!("leading coefficient {lead} is not a unit")))?;
        if !self.exact && target > self.q_max - 2 * v {
            return Err(Error::NeedsPrecision(format!(
                "inverse through q^{target} needs input through q^{}",
                target + 2 * v
            )));
        }
        let start = -v;
        if target < start {
            return Ok(Self::zero(target));
        }
        let n = (target - start + 1) as usize;
        let mut out: Vec<SRat> = Vec::with_capacity(n);
        out.push(u.clone());
        let nu = u.neg();
        for m in 1..n {
            let mut acc = SRat::zero();
            for j in 1..=m {
                if let Some(a) = self.row_ref(v + j as i64) {
                    if !a.is_zero() && !out[m - j].is_zero() {
                        acc = acc.add(&a.mul(&out[m - j]));
                    }
                }
            }
            out.push(acc.mul(&nu));
        }
        Ok(Self::from_parts(false, start, target, out))
    }

    /// Division `self / o` through the known order.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.exact && o.rows.len() > 1 {
            if self.exact {
                return Err(Error::NeedsPrecision("division of exact series by a multi-term exact series".into()));
            }
            let vo = o.valuation().unwrap();
            let va = self.valuation().unwrap_or(self.q_max);
            return Ok(self.mul(&o.invert_to(self.q_max - vo - va)?));
        }
        Ok(self.mul(&o.invert()?))
    }

    /// Applies `y d/dy` to every row.
    pub fn dz(&self) -> Self {
        let rows = self.rows.iter().map(|r| r.dz()).collect();
        Self::from_parts(self.exact, self.q_min, self.q_max, rows)
    }

    /// Applies `q d/dq`.
    pub fn dq(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.scale(&Gq::from_int(self.q_min + i as i64)))
            .collect();
        Self::from_parts(self.exact, self.q_min, self.q_max, rows)
    }

    /// `(y d/dy)^a (q d/dq)^b`.
    pub fn dz_dq(&self, a: u32, b: u32) -> Self {
        let mut x = self.clone();
        for _ in 0..a {
            x = x.dz();
        }
        for _ in 0..b {
            x = x.dq();
        }
        x
    }

    /// Applies a map to every row (the map must send zero to zero).
    pub fn map_rows<F: Fn(&SRat) -> SRat + Sync>(&self, f: F) -> Self {
        let rows = self.rows.iter().map(f).collect();
        Self::from_parts(self.exact, self.q_min, self.q_max, rows)
    }

    /// Substitutes `q ↦ q^k` for `k ≥ 1`.
    pub fn subs_q_power(&self, k: i64) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return if self.exact { Self::exact_zero() } else { Self::zero(self.q_max * k + k - 1) };
        }
        let q_min = self.q_min * k;
        let q_max = if self.exact { self.q_max * k } else { self.q_max * k + k - 1 };
        let mut rows = vec![SRat::zero(); (q_max - q_min + 1) as usize];
        for (n, r) in self.rows() {
            rows[(n * k - q_min) as usize] = r.clone();
        }
        Self::from_parts(self.exact, q_min, q_max, rows)
    }

    /// Applies `s ↦ 1/s` (i.e. `y ↦ 1/y`) to every row.
    pub fn invert_s(&self) -> Self {
        self.map_rows(|r| r.invert_s())
    }

    /// Evaluates every row at `s = x`, giving an `s`-free series; `None` at a pole.
    pub fn eval_s(&self, x: &Gq) -> Option<Self> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            rows.push(SRat::constant(r.eval(x)?));
        }
        Some(Self::from_parts(self.exact, self.q_min, self.q_max, rows))
    }

    /// True if no coefficient has an imaginary part.
    pub fn is_real(&self) -> bool {
        self.rows.iter().all(|r| r.is_real())
    }

    /// True if every row is a Laurent polynomial in `s`.
    pub fn is_laurent(&self) -> bool {
        self.rows.iter().all(|r| r.is_laurent())
    }

    /// Compares two series on their common known range.
    ///
    /// Returns the order through which they agree (`i64::MAX` when both are exact and equal),
    /// or the first exponent at which they differ.
    pub fn eq_to(&self, o: &Self) -> std::result::Result<i64, i64> {
        let (exact, q_max) = self.combine_range(o);
        let lo = self.q_min.min(o.q_min);
        let hi = if exact { self.q_max.max(o.q_max) } else { q_max };
        for n in lo..=hi {
            let a = self.row_ref(n);
            let b = o.row_ref(n);
            let same = match (a, b) {
                (Some(x), Some(y)) => x == y,
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (None, None) => true,
            };
            if !same {
                return Err(n);
            }
        }
        Ok(if exact { i64::MAX } else { q_max })
    }

    /// True if the two series agree through at least `q^n`.
    pub fn agrees_through(&self, o: &Self, n: i64) -> bool {
        matches!(self.eq_to(o), Ok(m) if m >= n)
    }

    /// Expands in `w` after `s = e^{w/2}`, through `w^{w_order}`.
    pub fn substitute_w(&self, w_order: i64) -> WSeries {
        let per_row: Vec<(i64, i64, Vec<Gq>)> = self
            .rows
            .par_iter()
            .enumerate()
            .map(|(i, r)| {
                let (wm, c) = r.substitute_w(w_order);
                (self.q_min + i as i64, wm, c)
            })
            .collect();
        let w_min = per_row.iter().map(|t| t.1).min().unwrap_or(0).min(0);
        let mut coeffs: Vec<Vec<Gq>> =
            vec![vec![Gq::zero(); self.rows.len()]; (w_order - w_min + 1).max(0) as usize];
        for (n, wm, c) in per_row {
            for (j, v) in c.into_iter().enumerate() {
                let w = wm + j as i64;
                if w <= w_order {
                    coeffs[(w - w_min) as usize][(n - self.q_min) as usize] = v;
                }
            }
        }
        let series = coeffs
            .into_iter()
            .map(|c| {
                let rows = c.into_iter().map(SRat::constant).collect();
                Self::from_parts(self.exact, self.q_min, self.q_max, rows)
            })
            .collect();
        WSeries::new(w_min, w_order, series)
    }

    /// Expands every row in the region `|s| < 1`, keeping `s`-exponents `≤ s_max`.
    pub fn expand_s(&self, s_max: i64) -> Vec<(i64, SLaurent)> {
        self.rows().map(|(n, r)| (n, r.expand_s(s_max))).collect()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, r) in self.rows() {
            if r.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{r}]q^{n}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.exact {
            write!(f, " + O(q^{})", self.q_max + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalars(q_min: i64, q_max: i64, c: &[i64]) -> QSeries {
        QSeries::from_scalars(q_min, q_max, c.iter().map(|&x| Gq::from_int(x)).collect())
    }

    #[test]
    fn geometric_series_inverse() {
        let one_minus_q = QSeries::exact_from_rows(0, vec![SRat::one(), SRat::from_int(-1)]);
        let geo = scalars(0, 8, &[1; 9]);
        assert_eq!(one_minus_q.mul(&geo).eq_to(&QSeries::one()), Ok(8));
        let inv = one_minus_q.invert_to(8).unwrap();
        assert_eq!(inv.eq_to(&geo), Ok(8));
    }

    #[test]
    fn precision_of_product_with_pole() {
        let a = scalars(-1, 3, &[1, 2, 3, 4, 5]);
        let b = scalars(0, 3, &[1, 1, 1, 1]);
        let p = a.mul(&b);
        assert_eq!(p.q_min(), -1);
        assert_eq!(p.q_max(), 2);
    }

    #[test]
    fn monomial_inverse() {
        let m = QSeries::monomial(SRat::monomial(Gq::one(), 2), 1);
        let inv = m.invert().unwrap();
        assert!(inv.is_exact());
        assert_eq!(inv.coeff(-1), SRat::monomial(Gq::one(), -2));
    }

    #[test]
    fn dq_multiplies_by_exponent() {
        let a = scalars(-1, 1, &[1, 5, 2]);
        let d = a.dq();
        assert_eq!(d.coeff(-1), SRat::from_int(-1));
        assert!(d.coeff(0).is_zero());
        assert_eq!(d.coeff(1), SRat::from_int(2));
    }

    #[test]
    fn eq_reports_first_difference() {
        let a = scalars(0, 3, &[1, 2, 3, 4]);
        let b = scalars(0, 5, &[1, 2, 0, 4, 0, 0]);
        assert_eq!(a.eq_to(&b), Err(2));
        assert_eq!(a.eq_to(&a.truncate(2)), Ok(2));
    }
}
