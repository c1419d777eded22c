//! Truncated Laurent series in `w = 2πiz` with `s`-free `q`-series coefficients.

use super::gauss::Gq;
use super::qseries::QSeries;
use super::srat::SRat;
use std::fmt;

/// `Σ_{k = w_min}^{w_max} c_k(q) w^k`, each `c_k` an `s`-independent [`QSeries`].
#[derive(Clone, PartialEq, Eq)]
pub struct WSeries {
    w_min: i64,
    w_max: i64,
    coeffs: Vec<QSeries>,
}

impl WSeries {
    /// Builds a series from coefficients of `w^{w_min}, …, w^{w_max}`.
    pub fn new(w_min: i64, w_max: i64, coeffs: Vec<QSeries>) -> Self {
        assert_eq!(coeffs.len() as i64, (w_max - w_min + 1).max(0), "coefficient count does not match w-range");
        Self { w_min, w_max, coeffs }
    }

    /// Lowest stored power of `w`.
    pub fn w_min(&self) -> i64 {
        self.w_min
    }

    /// Highest stored power of `w`.
    pub fn w_max(&self) -> i64 {
        self.w_max
    }

    /// Coefficient of `w^k` (zero below `w_min`).
    ///
    /// # Panics
    /// If `k > w_max`.
    pub fn coeff(&self, k: i64) -> QSeries {
        assert!(k <= self.w_max, "w^{k} beyond retained order {}", self.w_max);
        if k < self.w_min {
            return QSeries::exact_zero();
        }
        self.coeffs[(k - self.w_min) as usize].clone()
    }

    /// Lowest `w`-exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.w_min + i as i64)
    }

    /// True if no negative power of `w` occurs, i.e. the function is holomorphic at `z = 0`.
    pub fn is_holomorphic(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    /// Order of the pole at `w = 0` (zero if holomorphic).
    pub fn pole_order(&self) -> i64 {
        self.valuation().map_or(0, |v| (-v).max(0))
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let w_min = self.w_min.min(o.w_min);
        let w_max = self.w_max.min(o.w_max);
        let coeffs = (w_min..=w_max)
            .map(|k| {
                let a = if k < self.w_min { QSeries::exact_zero() } else { self.coeff(k) };
                let b = if k < o.w_min { QSeries::exact_zero() } else { o.coeff(k) };
                a.add(&b)
            })
            .collect();
        Self::new(w_min, w_max, coeffs)
    }

    /// Product, through the smaller `w`-order.
    pub fn mul(&self, o: &Self) -> Self {
        let w_min = self.w_min + o.w_min;
        let w_max = (self.w_max + o.w_min).min(o.w_max + self.w_min);
        let coeffs = (w_min..=w_max)
            .map(|k| {
                let mut acc = QSeries::exact_zero();
                for i in self.w_min..=self.w_max {
                    let j = k - i;
                    if j < o.w_min || j > o.w_max {
                        continue;
                    }
                    let a = &self.coeffs[(i - self.w_min) as usize];
                    let b = &o.coeffs[(j - o.w_min) as usize];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                acc
            })
            .collect();
        Self::new(w_min, w_max, coeffs)
    }

    /// Term-wise `d/dw`.
    pub fn dw(&self) -> Self {
        let coeffs = (self.w_min..=self.w_max)
            .map(|k| self.coeff(k).scale(&Gq::from_int(k)))
            .collect();
        Self::new(self.w_min - 1, self.w_max - 1, coeffs)
    }

    /// Substitutes `w = c·u` (e.g. `c = i` for `w = iu`).
    pub fn rescale(&self, c: &Gq) -> Self {
        let coeffs = (self.w_min..=self.w_max)
            .map(|k| {
                let f = if k >= 0 { c.pow(k as u32) } else { c.inv().expect("nonzero scale").pow((-k) as u32) };
                self.coeff(k).scale(&f)
            })
            .collect();
        Self::new(self.w_min, self.w_max, coeffs)
    }

    /// Compares coefficient-wise on the common `w`-range; returns the first differing
    /// `(w, q)` exponent pair.
    pub fn eq_to(&self, o: &Self) -> Result<(), (i64, i64)> {
        let lo = self.w_min.min(o.w_min);
        let hi = self.w_max.min(o.w_max);
        for k in lo..=hi {
            let a = if k < self.w_min { QSeries::exact_zero() } else { self.coeff(k) };
            let b = if k < o.w_min { QSeries::exact_zero() } else { o.coeff(k) };
            a.eq_to(&b).map_err(|n| (k, n))?;
        }
        Ok(())
    }

    /// Coefficient of `w^k q^n` as a scalar.
    pub fn scalar(&self, k: i64, n: i64) -> Gq {
        self.coeff(k).coeff(n).as_constant().expect("w-series coefficients are s-free")
    }

    /// A `w`-constant series.
    pub fn from_qseries(c: QSeries, w_max: i64) -> Self {
        let mut coeffs = vec![c];
        for _ in 1..=w_max {
            coeffs.push(QSeries::exact_zero());
        }
        Self::new(0, w_max, coeffs)
    }

    /// The scalar `c·w^k`.
    pub fn monomial(c: Gq, k: i64, w_max: i64) -> Self {
        let coeffs = (k..=w_max)
            .map(|j| if j == k { QSeries::constant(SRat::constant(c.clone())) } else { QSeries::exact_zero() })
            .collect();
        Self::new(k, w_max, coeffs)
    }
}

impl fmt::Display for WSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            writeln!(f, "w^{}: {}", self.w_min + i as i64, c)?;
        }
        write!(f, "O(w^{})", self.w_max + 1)
    }
}

impl fmt::Debug for WSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
