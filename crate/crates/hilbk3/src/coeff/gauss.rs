//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    /// Real part.
    pub re: BigRational,
    /// Imaginary part.
    pub im: BigRational,
}

/// Shorthand used throughout the crate.
pub type Gq = GaussianRational;

impl GaussianRational {
    /// `re + i·im`.
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// Zero.
    pub fn zero() -> Self {
        <Self as Zero>::zero()
    }

    /// One.
    pub fn one() -> Self {
        <Self as One>::one()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        <Self as Zero>::is_zero(self)
    }

    /// True for one.
    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    /// The real number `n / d`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// An integer.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// A big integer.
    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// A real rational.
    pub fn from_rational(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    /// True if the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::from_rational(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Self { re: -self.im.clone(), im: self.re.clone() },
            2 => -self.clone(),
            _ => Self { re: self.im.clone(), im: -self.re.clone() },
        }
    }

    /// `self^e`.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by a real rational.
    pub fn scale(&self, r: &BigRational) -> Self {
        if self.im.is_zero() {
            return Self::from_rational(&self.re * r);
        }
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// Formats a rational as `p/q` (or `p` when `q = 1`).
    pub fn fmt_rational(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// Parses `p` or `p/q`.
    pub fn parse_rational(s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq::from_rational(&self.re + &o.re);
        }
        Gq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq::from_rational(&self.re - &o.re);
        }
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Gq::from_rational(&self.re * &o.re),
            (true, false) => Gq { re: &self.re * &o.re, im: &self.re * &o.im },
            (false, true) => Gq { re: &self.re * &o.re, im: &self.im * &o.re },
            (false, false) => Gq {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn div(self, o: &Gq) -> Gq {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: &Gq) -> Gq {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re, im: -self.im }
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, o: &Gq) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&Gq> for Gq {
    fn mul_assign(&mut self, o: &Gq) {
        *self = &*self * o;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = Self::fmt_rational(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im_abs = Self::fmt_rational(&self.im.abs());
        let im_part = if self.im.abs().is_one() { "i".to_string() } else { format!("{im_abs}i") };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_part}")
            } else {
                write!(f, "{im_part}")
            }
        } else if self.im.is_negative() {
            write!(f, "({re} - {im_part})")
        } else {
            write!(f, "({re} + {im_part})")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Gq::i();
        assert_eq!(&i * &i, Gq::from_int(-1));
        assert_eq!(Gq::one().mul_i_pow(3), -Gq::i());
    }

    #[test]
    fn inverse_of_complex() {
        let z = Gq::new(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        assert_eq!(&z * &z.inv().unwrap(), Gq::one());
        assert!(Gq::zero().inv().is_none());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let r = Gq::parse_rational("-6/4").unwrap();
        assert_eq!(Gq::fmt_rational(&r), "-3/2");
        assert_eq!(format!("{}", Gq::frac(1, 2).mul_i_pow(1)), "1/2i");
    }
}
