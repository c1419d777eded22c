//! Laurent polynomials in the variable `s = (−y)^{1/2}` with Gaussian rational coefficients.

use super::gauss::Gq;
use std::fmt;

/// A Laurent polynomial `Σ c_e s^e`, stored densely from its lowest nonzero exponent.
///
/// The zero polynomial has an empty coefficient vector; otherwise the first and last
/// coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SLaurent {
    lo: i64,
    c: Vec<Gq>,
}

impl SLaurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { lo: 0, c: Vec::new() }
    }

    /// The constant one.
    pub fn one() -> Self {
        Self::constant(Gq::one())
    }

    /// A constant.
    pub fn constant(c: Gq) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · s^e`.
    pub fn monomial(c: Gq, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { lo: e, c: vec![c] }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, Gq)>>(terms: I) -> Self {
        let terms: Vec<(i64, Gq)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Gq::zero(); (hi - lo + 1) as usize];
        for (e, v) in terms {
            c[(e - lo) as usize] += &v;
        }
        Self::from_dense(lo, c)
    }

    /// Builds `Σ c[i] s^{lo+i}` and trims zero ends.
    pub fn from_dense(lo: i64, c: Vec<Gq>) -> Self {
        let mut p = Self { lo, c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// True for the constant one.
    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.c.len() as i64 - 1)
    }

    /// Coefficient of `s^e`.
    pub fn coeff(&self, e: i64) -> Gq {
        if e < self.lo || e >= self.lo + self.c.len() as i64 {
            Gq::zero()
        } else {
            self.c[(e - self.lo) as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Gq)> {
        self.c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(i, v)| (self.lo + i as i64, v))
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.c.iter().filter(|v| !v.is_zero()).count()
    }

    /// If the polynomial is a single term `c·s^e`, returns it.
    pub fn as_monomial(&self) -> Option<(Gq, i64)> {
        (self.c.len() == 1).then(|| (self.c[0].clone(), self.lo))
    }

    /// True if all coefficients are real.
    pub fn is_real(&self) -> bool {
        self.c.iter().all(|x| x.is_real())
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.max_exp().unwrap().max(o.max_exp().unwrap());
        let mut c = vec![Gq::zero(); (hi - lo + 1) as usize];
        for (i, v) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += v;
        }
        for (i, v) in o.c.iter().enumerate() {
            c[(o.lo - lo) as usize + i] += v;
        }
        Self::from_dense(lo, c)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { lo: self.lo, c: self.c.iter().map(|x| -x).collect() }
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
        let mut c = vec![Gq::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] += &(a * b);
            }
        }
        Self::from_dense(self.lo + o.lo, c)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, k: &Gq) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { lo: self.lo, c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { lo: self.lo + k, c: self.c.clone() }
    }

    /// Multiplication by `(1 + σ s²)` where `σ = ±1`.
    pub fn mul_quad(&self, sigma: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.c.clone();
        c.push(Gq::zero());
        c.push(Gq::zero());
        for i in (0..self.c.len()).rev() {
            let t = if sigma > 0 { self.c[i].clone() } else { -&self.c[i] };
            c[i + 2] += &t;
        }
        Self::from_dense(self.lo, c)
    }

    /// Exact division by `(1 + σ s²)`; `None` if it does not divide.
    pub fn div_quad(&self, sigma: i64) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.c.len();
        if n < 3 {
            return None;
        }
        // N = (1 + σ s²) Q  ⇔  q_i = n_i − σ q_{i−2}.
        let mut q: Vec<Gq> = Vec::with_capacity(n - 2);
        for i in 0..n - 2 {
            let mut v = self.c[i].clone();
            if i >= 2 {
                if sigma > 0 {
                    v -= &q[i - 2];
                } else {
                    v += &q[i - 2];
                }
            }
            q.push(v);
        }
        for i in n - 2..n {
            let mut expect = Gq::zero();
            if i >= 2 && i - 2 < q.len() {
                expect = if sigma > 0 { q[i - 2].clone() } else { -&q[i - 2] };
            }
            if expect != self.c[i] {
                return None;
            }
        }
        Some(Self::from_dense(self.lo, q))
    }

    /// Applies `½ s d/ds`, i.e. `y d/dy`.
    pub fn dz(&self) -> Self {
        let half = Gq::frac(1, 2);
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let e = self.lo + i as i64;
                v * &(&half * &Gq::from_int(e))
            })
            .collect();
        Self::from_dense(self.lo, c)
    }

    /// Applies `s ↦ s^{-1}`.
    pub fn invert_s(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let hi = self.max_exp().unwrap();
        let c: Vec<Gq> = self.c.iter().rev().cloned().collect();
        Self::from_dense(-hi, c)
    }

    /// Evaluates at `s = x`; `x` must be nonzero when negative exponents occur.
    pub fn eval(&self, x: &Gq) -> Gq {
        if self.is_zero() {
            return Gq::zero();
        }
        let mut acc = Gq::zero();
        for v in self.c.iter().rev() {
            acc = &(&acc * x) + v;
        }
        let lo = self.lo;
        if lo >= 0 {
            &acc * &x.pow(lo as u32)
        } else {
            &acc / &x.pow((-lo) as u32)
        }
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        Self { lo: self.lo, c: self.c.iter().map(|x| x.conj()).collect() }
    }

    /// Keeps only terms with exponent in `[lo, hi]`.
    pub fn clip(&self, lo: i64, hi: i64) -> Self {
        Self::from_terms(self.terms().filter(|(e, _)| *e >= lo && *e <= hi).map(|(e, v)| (e, v.clone())))
    }
}

impl fmt::Display for SLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, v) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{v}")?,
                1 => write!(f, "{v}*s")?,
                _ => write!(f, "{v}*s^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> SLaurent {
        SLaurent::from_terms(terms.iter().map(|&(e, c)| (e, Gq::from_int(c))))
    }

    #[test]
    fn quad_division_round_trip() {
        let a = p(&[(-3, 2), (0, 5), (1, -1)]);
        for sigma in [1, -1] {
            let b = a.mul_quad(sigma);
            assert_eq!(b.div_quad(sigma).unwrap(), a);
        }
        assert!(p(&[(0, 1), (2, 2)]).div_quad(-1).is_none());
        assert_eq!(p(&[(0, 1), (2, -1)]).div_quad(-1).unwrap(), SLaurent::one());
    }

    #[test]
    fn dz_halves_exponents() {
        assert_eq!(p(&[(4, 1)]).dz(), p(&[(4, 2)]));
        assert!(SLaurent::one().dz().is_zero());
    }

    #[test]
    fn eval_and_inversion() {
        let a = p(&[(-1, 1), (1, -1)]);
        assert!(a.eval(&Gq::one()).is_zero());
        assert_eq!(a.invert_s(), a.neg());
    }
}
