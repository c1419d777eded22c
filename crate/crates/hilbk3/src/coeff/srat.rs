//! Rational functions in `s` whose poles lie only at `s² = ±1`.
//!
//! These are the coefficients of a single `q`-power in every series of the crate. Finite
//! Laurent polynomials are the pole-free case.

use super::gauss::Gq;
use super::laurent::SLaurent;
use super::pseries;
use std::fmt;

/// `num(s) / ((1 − s²)^a · (1 + s²)^b)` in lowest terms.
///
/// Lowest terms means: if `a > 0` then `1 − s²` does not divide `num`, and likewise for `b`.
/// Two values are equal exactly when their stored fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SRat {
    num: SLaurent,
    a: u32,
    b: u32,
}

/// Sign of `s²` in the quadratic factor `1 − s²` (used with [`SLaurent::mul_quad`]).
const MINUS: i64 = -1;
/// Sign of `s²` in the quadratic factor `1 + s²`.
const PLUS: i64 = 1;

impl SRat {
    /// Zero.
    pub fn zero() -> Self {
        Self { num: SLaurent::zero(), a: 0, b: 0 }
    }

    /// One.
    pub fn one() -> Self {
        Self::from_laurent(SLaurent::one())
    }

    /// A constant.
    pub fn constant(c: Gq) -> Self {
        Self::from_laurent(SLaurent::constant(c))
    }

    /// An integer constant.
    pub fn from_int(n: i64) -> Self {
        Self::constant(Gq::from_int(n))
    }

    /// `c · s^e`.
    pub fn monomial(c: Gq, e: i64) -> Self {
        Self::from_laurent(SLaurent::monomial(c, e))
    }

    /// A Laurent polynomial with trivial denominator.
    pub fn from_laurent(num: SLaurent) -> Self {
        Self { num, a: 0, b: 0 }
    }

    /// Builds `num / ((1 − s²)^a (1 + s²)^b)` and reduces it.
    pub fn new(num: SLaurent, a: u32, b: u32) -> Self {
        let mut r = Self { num, a, b };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.a = 0;
            self.b = 0;
            return;
        }
        while self.a > 0 {
            match self.num.div_quad(MINUS) {
                Some(q) => {
                    self.num = q;
                    self.a -= 1;
                }
                None => break,
            }
        }
        while self.b > 0 {
            match self.num.div_quad(PLUS) {
                Some(q) => {
                    self.num = q;
                    self.b -= 1;
                }
                None => break,
            }
        }
    }

    /// The numerator over `(1 − s²)^a (1 + s²)^b`.
    pub fn numerator(&self) -> &SLaurent {
        &self.num
    }

    /// Pole orders `(a, b)` at `s² = 1` and `s² = −1`.
    pub fn denominator_exponents(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True for one.
    pub fn is_one(&self) -> bool {
        self.a == 0 && self.b == 0 && self.num.is_one()
    }

    /// True if the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The Laurent polynomial, if the value is one.
    pub fn as_laurent(&self) -> Option<&SLaurent> {
        self.is_laurent().then_some(&self.num)
    }

    /// True if the value does not depend on `s`.
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.is_laurent() && self.num.as_monomial().is_some_and(|(_, e)| e == 0))
    }

    /// The constant value, if the value does not depend on `s`.
    pub fn as_constant(&self) -> Option<Gq> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        if self.is_constant() {
            return Some(self.num.coeff(0));
        }
        None
    }

    /// True if all coefficients are real.
    pub fn is_real(&self) -> bool {
        self.num.is_real()
    }

    fn numerator_over(&self, a: u32, b: u32) -> SLaurent {
        let mut n = self.num.clone();
        for _ in self.a..a {
            n = n.mul_quad(MINUS);
        }
        for _ in self.b..b {
            n = n.mul_quad(PLUS);
        }
        n
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.a == o.a && self.b == o.b {
            return Self::new(self.num.add(&o.num), self.a, self.b);
        }
        let a = self.a.max(o.a);
        let b = self.b.max(o.b);
        Self::new(self.numerator_over(a, b).add(&o.numerator_over(a, b)), a, b)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), a: self.a, b: self.b }
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let num = self.num.mul(&o.num);
        let monomial_factor = (self.is_laurent() && self.num.as_monomial().is_some())
            || (o.is_laurent() && o.num.as_monomial().is_some());
        if monomial_factor {
            return Self { num, a: self.a + o.a, b: self.b + o.b };
        }
        Self::new(num, self.a + o.a, self.b + o.b)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), a: self.a, b: self.b }
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), a: self.a, b: self.b }
    }

    /// `y d/dy = ½ s d/ds`.
    pub fn dz(&self) -> Self {
        if self.is_laurent() {
            return Self::from_laurent(self.num.dz());
        }
        let (a, b) = (self.a, self.b);
        let s2n = self.num.shift(2);
        let mut acc = self.num.dz();
        if a > 0 {
            acc = acc.mul_quad(MINUS);
        }
        if b > 0 {
            acc = acc.mul_quad(PLUS);
        }
        if a > 0 {
            let mut t = s2n.scale(&Gq::from_int(a as i64));
            if b > 0 {
                t = t.mul_quad(PLUS);
            }
            acc = acc.add(&t);
        }
        if b > 0 {
            let mut t = s2n.scale(&Gq::from_int(b as i64));
            if a > 0 {
                t = t.mul_quad(MINUS);
            }
            acc = acc.sub(&t);
        }
        Self::new(acc, a + u32::from(a > 0), b + u32::from(b > 0))
    }

    /// Multiplicative inverse if the value is a unit `c·s^e(1 − s²)^i(1 + s²)^j`.
    pub fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut n = self.num.clone();
        let mut i = 0u32;
        let mut j = 0u32;
        while let Some(q) = n.div_quad(MINUS) {
            n = q;
            i += 1;
        }
        while let Some(q) = n.div_quad(PLUS) {
            n = q;
            j += 1;
        }
        let (c, e) = n.as_monomial()?;
        let mut num = SLaurent::monomial(c.inv()?, -e);
        for _ in 0..self.a {
            num = num.mul_quad(MINUS);
        }
        for _ in 0..self.b {
            num = num.mul_quad(PLUS);
        }
        Some(Self::new(num, i, j))
    }

    /// Applies `s ↦ 1/s`, i.e. `y ↦ 1/y`.
    pub fn invert_s(&self) -> Self {
        // (1 − s^{-2})^{-a} = (−s²)^a (1 − s²)^{-a};  (1 + s^{-2})^{-b} = s^{2b} (1 + s²)^{-b}.
        let mut num = self.num.invert_s().shift(2 * (self.a as i64 + self.b as i64));
        if self.a % 2 == 1 {
            num = num.neg();
        }
        Self::new(num, self.a, self.b)
    }

    /// Complex conjugate of all coefficients.
    pub fn conj(&self) -> Self {
        Self { num: self.num.conj(), a: self.a, b: self.b }
    }

    /// Evaluates at `s = x`; `None` at a pole.
    pub fn eval(&self, x: &Gq) -> Option<Gq> {
        let x2 = x * x;
        let one = Gq::one();
        let dm = &one - &x2;
        let dp = &one + &x2;
        let mut v = self.num.eval(x);
        if self.a > 0 {
            v = &v * &dm.pow(self.a).inv()?;
        }
        if self.b > 0 {
            v = &v * &dp.pow(self.b).inv()?;
        }
        Some(v)
    }

    /// Laurent expansion in the region `|s| < 1`, keeping exponents `≤ s_max`.
    pub fn expand_s(&self, s_max: i64) -> SLaurent {
        if self.is_laurent() {
            return self.num.clip(i64::MIN, s_max);
        }
        let lo = match self.num.min_exp() {
            Some(e) => e,
            None => return SLaurent::zero(),
        };
        if lo > s_max {
            return SLaurent::zero();
        }
        // Expand the denominator in t = s², as a power series up to t^n.
        let n = ((s_max - lo) / 2 + 1) as usize;
        let mut den = pseries::one(n);
        if self.a > 0 {
            let f = pseries::pow(&[Gq::one(), Gq::from_int(-1)], -(self.a as i64), n).unwrap();
            den = pseries::mul(&den, &f, n);
        }
        if self.b > 0 {
            let f = pseries::pow(&[Gq::one(), Gq::one()], -(self.b as i64), n).unwrap();
            den = pseries::mul(&den, &f, n);
        }
        let mut terms = Vec::new();
        for (e, c) in self.num.terms() {
            for (k, d) in den.iter().enumerate() {
                let ee = e + 2 * k as i64;
                if ee > s_max {
                    break;
                }
                if !d.is_zero() {
                    terms.push((ee, c * d));
                }
            }
        }
        SLaurent::from_terms(terms)
    }

    /// Substitutes `s = e^{w/2}` and expands in `w`.
    ///
    /// Returns `(w_min, coeffs)` with `coeffs[i]` the coefficient of `w^{w_min + i}`, for all
    /// exponents up to and including `w_order`. `w_min = −a` (the pole order at `s² = 1`).
    pub fn substitute_w(&self, w_order: i64) -> (i64, Vec<Gq>) {
        let a = self.a as i64;
        let w_min = -a;
        if w_order < w_min {
            return (w_min, Vec::new());
        }
        let n = (w_order + a + 1) as usize;
        // N(e^{w/2}) = Σ_k (Σ_e n_e (e/2)^k) w^k / k!.
        let mut acc = vec![Gq::zero(); n];
        for (e, c) in self.num.terms() {
            let series = pseries::exp_linear(&Gq::frac(e, 2), n);
            for (k, v) in series.into_iter().enumerate() {
                acc[k] += &(c * &v);
            }
        }
        if a > 0 {
            // (1 − e^w)^{-a} = (−1)^a w^{-a} E1(w)^{-a},  E1 = Σ w^k/(k+1)!.
            let e1: Vec<Gq> = (0..n).map(|k| pseries::inv_factorial(k as u32 + 1)).collect();
            let f = pseries::pow(&e1, -a, n).unwrap();
            acc = pseries::mul(&acc, &f, n);
            if a % 2 == 1 {
                acc = acc.iter().map(|x| -x).collect();
            }
        }
        if self.b > 0 {
            let mut p: Vec<Gq> = (0..n).map(|k| pseries::inv_factorial(k as u32)).collect();
            p[0] = Gq::from_int(2);
            let f = pseries::pow(&p, -(self.b as i64), n).unwrap();
            acc = pseries::mul(&acc, &f, n);
        }
        (w_min, acc)
    }
}

impl From<SLaurent> for SRat {
    fn from(n: SLaurent) -> Self {
        Self::from_laurent(n)
    }
}

impl fmt::Display for SRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})", self.num)?;
        if self.a > 0 {
            write!(f, "/(1-s^2)^{}", self.a)?;
        }
        if self.b > 0 {
            write!(f, "/(1+s^2)^{}", self.b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> SLaurent {
        SLaurent::from_terms(terms.iter().map(|&(e, c)| (e, Gq::from_int(c))))
    }

    /// `s²/(1 − s²)²`, the nontrivial part of the `q⁰` row of ℘.
    fn wp0() -> SRat {
        SRat::new(lp(&[(2, 1)]), 2, 0)
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let r = SRat::new(lp(&[(0, 1), (2, -1)]), 1, 0);
        assert!(r.is_one());
        let sum = SRat::new(lp(&[(0, 1)]), 1, 0).add(&SRat::new(lp(&[(2, -1)]), 1, 0));
        assert!(sum.is_one());
    }

    #[test]
    fn inverse_of_unit() {
        let u = SRat::new(lp(&[(1, 3), (3, -3)]), 0, 2);
        let v = u.try_inv().unwrap();
        assert!(u.mul(&v).is_one());
        assert!(SRat::from_laurent(lp(&[(0, 1), (1, 1)])).try_inv().is_none());
    }

    #[test]
    fn dz_matches_quotient_rule() {
        // y d/dy of s²/(1−s²)² is s²(1+s²)/(1−s²)³.
        let d = wp0().dz();
        assert_eq!(d, SRat::new(lp(&[(2, 1), (4, 1)]), 3, 0));
        let r = SRat::new(lp(&[(2, 1)]), 1, 1);
        let lhs = r.mul(&r).dz();
        let rhs = r.dz().mul(&r).scale(&Gq::from_int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn geometric_expansion() {
        let e = wp0().expand_s(8);
        assert_eq!(e, lp(&[(2, 1), (4, 2), (6, 3), (8, 4)]));
    }

    #[test]
    fn w_substitution_of_wp_leading_row() {
        // 1/12 + s²/(1 − s²)² = w^{-2} + w²/240 + O(w⁴).
        let r = wp0().add(&SRat::constant(Gq::frac(1, 12)));
        let (w_min, c) = r.substitute_w(3);
        assert_eq!(w_min, -2);
        assert_eq!(c[0], Gq::one());
        assert!(c[1].is_zero() && c[2].is_zero() && c[3].is_zero());
        assert_eq!(c[4], Gq::frac(1, 240));
    }

    #[test]
    fn invert_s_is_involution() {
        let r = SRat::new(lp(&[(-1, 2), (4, 1)]), 3, 1);
        assert_eq!(r.invert_s().invert_s(), r);
        assert_eq!(wp0().invert_s(), wp0());
    }
}
