//! `q`-expansions of the theta function, Eisenstein series, Weierstrass functions and the
//! deformed Eisenstein series, all in the variable `s = (−y)^{1/2}`.
//!
//! Branch convention: `y^{1/2} = −i·s`, so `y^{1/2} + y^{−1/2} = i(s^{−1} − s)`.

use super::form::QuasiJacobiForm;
use super::theta::theta_d4;
use crate::arith::{bernoulli, divisors, rat, sigma};
use crate::coeff::{Gq, QSeries, SLaurent, SRat};
use crate::error::{Error, Result};
use num_rational::BigRational;
use parking_lot::Mutex;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// The named special functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorName {
    /// The theta function `F = θ₁/η³`.
    F,
    /// `K = i·F`.
    K,
    /// `J₁ = y d/dy log F`.
    J1,
    /// The Weierstrass function `℘`.
    Wp,
    /// `℘• = y d/dy ℘`.
    WpPrime,
    /// The Eisenstein series `E_{2k}`.
    E2k(u32),
    /// The deformed Eisenstein series `J_{2,n}`.
    J2n(u32),
    /// The deformed Eisenstein series `J_{3,n}` (half-integral `q`-exponents).
    J3n(u32),
    /// `G_n = J_{4,n}(2z, 2τ)`.
    Gn(u32),
    /// Dedekind `η` (prefactor `q^{1/24}`).
    Eta,
    /// The discriminant `Δ = η²⁴`.
    Delta,
    /// Jacobi `θ₁` (prefactor `q^{1/8}`).
    Theta1,
    /// `G = F² (y d/dy)² log F`.
    GForm,
    /// The `D₄` theta function with characteristics (prefactor `q^{1/2}`).
    ThetaD4,
}

impl GeneratorName {
    /// Stable names accepted on the command line.
    pub fn examples() -> &'static [&'static str] {
        &[
            "F", "K", "J1", "wp", "wp_prime", "E2", "E4", "E6", "G", "Delta", "eta", "theta1", "Theta_D4", "J2_3",
            "J3_2", "G_2",
        ]
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::F => write!(f, "F"),
            Self::K => write!(f, "K"),
            Self::J1 => write!(f, "J1"),
            Self::Wp => write!(f, "wp"),
            Self::WpPrime => write!(f, "wp_prime"),
            Self::E2k(k) => write!(f, "E{}", 2 * k),
            Self::J2n(n) => write!(f, "J2_{n}"),
            Self::J3n(n) => write!(f, "J3_{n}"),
            Self::Gn(n) => write!(f, "G_{n}"),
            Self::Eta => write!(f, "eta"),
            Self::Delta => write!(f, "Delta"),
            Self::Theta1 => write!(f, "theta1"),
            Self::GForm => write!(f, "G"),
            Self::ThetaD4 => write!(f, "Theta_D4"),
        }
    }
}

impl FromStr for GeneratorName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || {
            Error::Parse(format!("unknown generator {s:?}; valid names include {}", Self::examples().join(", ")))
        };
        let num = |t: &str| t.parse::<u32>().ok().filter(|&n| n >= 1);
        Ok(match s {
            "F" => Self::F,
            "K" => Self::K,
            "J1" => Self::J1,
            "wp" | "WP" => Self::Wp,
            "wp_prime" | "WP_PRIME" => Self::WpPrime,
            "G" | "G_FORM" => Self::GForm,
            "Delta" | "DELTA" => Self::Delta,
            "eta" | "ETA" => Self::Eta,
            "theta1" | "THETA1" => Self::Theta1,
            "Theta_D4" | "THETA_D4" => Self::ThetaD4,
            _ => {
                if let Some(rest) = s.strip_prefix("J2_") {
                    Self::J2n(num(rest).ok_or_else(unknown)?)
                } else if let Some(rest) = s.strip_prefix("J3_") {
                    Self::J3n(num(rest).ok_or_else(unknown)?)
                } else if let Some(rest) = s.strip_prefix("G_") {
                    Self::Gn(num(rest).ok_or_else(unknown)?)
                } else if let Some(rest) = s.strip_prefix('E') {
                    let w = rest.parse::<u32>().ok().filter(|w| *w >= 2 && w % 2 == 0).ok_or_else(unknown)?;
                    Self::E2k(w / 2)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

/// `c · s^e` as a Laurent polynomial.
fn mono(c: Gq, e: i64) -> SLaurent {
    SLaurent::monomial(c, e)
}

/// `y^k = (−1)^k s^{2k}`.
fn y_pow(k: i64) -> SLaurent {
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    mono(Gq::from_int(sign), 2 * k)
}

/// `∏_{m ≥ 1} (1 − q^m)` through `q^{q_max}`.
pub fn euler_product(q_max: i64) -> QSeries {
    let mut p = QSeries::one();
    for m in 1..=q_max {
        let mut rows = vec![SRat::zero(); m as usize + 1];
        rows[0] = SRat::one();
        rows[m as usize] = SRat::from_int(-1);
        p = p.mul(&QSeries::exact_from_rows(0, rows)).truncate(q_max);
    }
    p.truncate(q_max)
}

/// `∏_{m ≥ 1} (1 − s²q^m)(1 − s^{−2}q^m)` through `q^{q_max}`.
fn theta_product(q_max: i64) -> QSeries {
    let mut p = QSeries::one();
    for m in 1..=q_max {
        let mut rows = vec![SRat::zero(); 2 * m as usize + 1];
        rows[0] = SRat::one();
        rows[m as usize] = SRat::from_laurent(mono(Gq::from_int(-1), 2).add(&mono(Gq::from_int(-1), -2)));
        rows[2 * m as usize] = SRat::one();
        p = p.mul(&QSeries::exact_from_rows(0, rows)).truncate(q_max);
    }
    p.truncate(q_max)
}

/// `F = i(s^{−1} − s) ∏ (1 − s²q^m)(1 − s^{−2}q^m)/(1 − q^m)²`.
pub fn f_series(q_max: i64) -> QSeries {
    let lead = SRat::from_laurent(mono(Gq::i(), -1).add(&mono(-Gq::i(), 1)));
    let e = euler_product(q_max);
    let inv = e.mul(&e).invert().expect("Euler product is invertible");
    theta_product(q_max).mul(&inv).mul_row(&lead)
}

/// `J₁`: `q⁰` row `−(1 + s²)/(2(1 − s²))`, `q^d` row `−Σ_{m|d}(s^{2m} − s^{−2m})`.
pub fn j1_series(q_max: i64) -> QSeries {
    let mut rows = vec![SRat::new(mono(Gq::frac(-1, 2), 0).add(&mono(Gq::frac(-1, 2), 2)), 1, 0)];
    for d in 1..=q_max {
        let mut terms = Vec::new();
        for m in divisors(d as u64) {
            let m = m as i64;
            terms.push((2 * m, Gq::from_int(-1)));
            terms.push((-2 * m, Gq::one()));
        }
        rows.push(SRat::from_laurent(SLaurent::from_terms(terms)));
    }
    QSeries::from_rows(0, q_max, rows)
}

/// `℘`: `q⁰` row `1/12 + s²/(1 − s²)²`, `q^d` row `Σ_{m|d} m(s^{2m} − 2 + s^{−2m})`.
pub fn wp_series(q_max: i64) -> QSeries {
    let r0 = SRat::constant(Gq::frac(1, 12)).add(&SRat::new(mono(Gq::one(), 2), 2, 0));
    let mut rows = vec![r0];
    for d in 1..=q_max {
        let mut terms = Vec::new();
        for m in divisors(d as u64) {
            let m = m as i64;
            terms.push((2 * m, Gq::from_int(m)));
            terms.push((0, Gq::from_int(-2 * m)));
            terms.push((-2 * m, Gq::from_int(m)));
        }
        rows.push(SRat::from_laurent(SLaurent::from_terms(terms)));
    }
    QSeries::from_rows(0, q_max, rows)
}

/// `℘•`: `q⁰` row `s²(1 + s²)/(1 − s²)³`, `q^d` row `Σ_{m|d} m²(s^{2m} − s^{−2m})`.
pub fn wp_prime_series(q_max: i64) -> QSeries {
    let mut rows = vec![SRat::new(mono(Gq::one(), 2).add(&mono(Gq::one(), 4)), 3, 0)];
    for d in 1..=q_max {
        let mut terms = Vec::new();
        for m in divisors(d as u64) {
            let m = m as i64;
            terms.push((2 * m, Gq::from_int(m * m)));
            terms.push((-2 * m, Gq::from_int(-m * m)));
        }
        rows.push(SRat::from_laurent(SLaurent::from_terms(terms)));
    }
    QSeries::from_rows(0, q_max, rows)
}

/// `E_{2k} = 1 − (4k/B_{2k}) Σ σ_{2k−1}(d) q^d`.
pub fn eisenstein_series(k: u32, q_max: i64) -> QSeries {
    assert!(k >= 1, "E_2k needs k ≥ 1");
    let factor = -(BigRational::from_integer((4 * k).into()) / bernoulli(2 * k as usize));
    let mut c = vec![Gq::one()];
    for d in 1..=q_max {
        let s = BigRational::from_integer(sigma(2 * k - 1, d as u64));
        c.push(Gq::from_rational(&factor * s));
    }
    QSeries::from_scalars(0, q_max, c)
}

/// `J_{2,n} = δ_{n,1} y/(y−1) + B_n − n Σ_{k,r ≥ 1} r^{n−1}(y^k + (−1)^n y^{−k}) q^{kr}`.
pub fn j2n_series(n: u32, q_max: i64) -> QSeries {
    let sign_n = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut r0 = SRat::constant(Gq::from_rational(bernoulli(n as usize)));
    if n == 1 {
        // y/(y − 1) = s²/(1 + s²).
        r0 = r0.add(&SRat::new(mono(Gq::one(), 2), 0, 1));
    }
    let mut rows = vec![r0];
    for d in 1..=q_max {
        let mut acc = SLaurent::zero();
        for k in divisors(d as u64) {
            let r = d / k as i64;
            let k = k as i64;
            let c = Gq::from_int(-(n as i64) * r.pow(n - 1));
            let t = y_pow(k).add(&y_pow(-k).scale(&Gq::from_int(sign_n)));
            acc = acc.add(&t.scale(&c));
        }
        rows.push(SRat::from_laurent(acc));
    }
    QSeries::from_rows(0, q_max, rows)
}

/// Constant term `−B_n(1 − 2^{1−n})` shared by `J_{3,n}` and `G_n`.
fn half_shift_constant(n: u32) -> Gq {
    let two_pow = BigRational::from_integer(num_bigint::BigInt::from(2).pow(n - 1));
    let factor = BigRational::from_integer(1.into()) - two_pow.recip();
    Gq::from_rational(-(bernoulli(n as usize) * factor))
}

/// `(r − 1/2)^{n−1}`.
fn half_power(r: i64, n: u32) -> Gq {
    Gq::frac(2 * r - 1, 2).pow(n - 1)
}

/// `J_{3,n}` on the grid `t = q^{1/2}`, through `q^{q_max}` (i.e. `t^{2 q_max}`).
pub fn j3n_series(n: u32, q_max: i64) -> QSeries {
    let sign_n = if n.is_multiple_of(2) { 1 } else { -1 };
    let t_max = 2 * q_max;
    let mut rows = vec![SRat::constant(half_shift_constant(n))];
    for e in 1..=t_max {
        // t^e with e = k(2r − 1).
        let mut acc = SLaurent::zero();
        for k in divisors(e as u64) {
            let odd = e / k as i64;
            if odd % 2 == 0 {
                continue;
            }
            let k = k as i64;
            let r = (odd + 1) / 2;
            let c = -(&half_power(r, n) * &Gq::from_int(n as i64));
            let t = y_pow(k).add(&y_pow(-k).scale(&Gq::from_int(sign_n)));
            acc = acc.add(&t.scale(&c));
        }
        rows.push(SRat::from_laurent(acc));
    }
    QSeries::from_rows(0, t_max, rows)
}

/// `G_n = −B_n(1 − 2^{1−n}) − n Σ (r − 1/2)^{n−1}(y^{2k} + (−1)^n y^{−2k}) q^{k(2r−1)}`.
pub fn gn_series(n: u32, q_max: i64) -> QSeries {
    let sign_n = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut rows = vec![SRat::constant(half_shift_constant(n))];
    for d in 1..=q_max {
        let mut acc = SLaurent::zero();
        for k in divisors(d as u64) {
            let odd = d / k as i64;
            if odd % 2 == 0 {
                continue;
            }
            let k = k as i64;
            let r = (odd + 1) / 2;
            let c = -(&half_power(r, n) * &Gq::from_int(n as i64));
            let t = y_pow(2 * k).add(&y_pow(-2 * k).scale(&Gq::from_int(sign_n)));
            acc = acc.add(&t.scale(&c));
        }
        rows.push(SRat::from_laurent(acc));
    }
    QSeries::from_rows(0, q_max, rows)
}

/// `G = F² (E₂/12 − ℘)`.
pub fn g_form_series(q_max: i64) -> QSeries {
    let f = f_series(q_max);
    let inner = eisenstein_series(1, q_max).scale(&Gq::frac(1, 12)).sub(&wp_series(q_max));
    f.mul(&f).mul(&inner)
}

/// `θ₁ / q^{1/8} = −i(s − s^{−1}) ∏ (1 − q^m)(1 − s²q^m)(1 − s^{−2}q^m)`.
pub fn theta1_series(q_max: i64) -> QSeries {
    let lead = SRat::from_laurent(mono(-Gq::i(), 1).add(&mono(Gq::i(), -1)));
    theta_product(q_max).mul(&euler_product(q_max)).mul_row(&lead)
}

/// `Δ = q ∏ (1 − q^m)^{24}` through `q^{q_max}`.
pub fn delta_series(q_max: i64) -> QSeries {
    let e = euler_product(q_max - 1);
    e.pow(24).shift_q(1).truncate(q_max)
}

/// `∏_i η(k_i τ)^{a_i}` for pairs `(a_i, k_i)`: the series and the prefactor exponent
/// `Σ a_i k_i / 24`.
pub fn eta_product(factors: &[(i64, i64)], q_max: i64) -> (QSeries, BigRational) {
    let mut s = QSeries::one();
    let mut offset = BigRational::from_integer(0.into());
    for &(a, k) in factors {
        let base = euler_product(q_max / k + 1).subs_q_power(k).truncate(q_max);
        let p = if a >= 0 { base.pow(a as u32) } else { base.invert().expect("unit").pow((-a) as u32) };
        s = s.mul(&p).truncate(q_max);
        offset += rat(a * k, 24);
    }
    (s.truncate(q_max), offset)
}

/// `(η, Δ)`: `η` as a form with prefactor `q^{1/24}`, and `Δ` as a plain series.
pub fn eta_and_delta(q_max: i64) -> Result<(QuasiJacobiForm, QSeries)> {
    if q_max < 1 {
        return Err(Error::InvalidArgument("eta_and_delta needs q_max ≥ 1".into()));
    }
    let eta = QuasiJacobiForm::with_prefactor(euler_product(q_max), 1, 0, 0, rat(1, 24));
    Ok((eta, delta_series(q_max)))
}

fn build(name: GeneratorName, q_max: i64) -> QuasiJacobiForm {
    use GeneratorName::*;
    match name {
        F => QuasiJacobiForm::new(f_series(q_max), -1, 1, 0),
        K => QuasiJacobiForm::new(f_series(q_max).scale(&Gq::i()), -1, 1, 0),
        J1 => QuasiJacobiForm::new(j1_series(q_max), 1, 0, 1),
        Wp => QuasiJacobiForm::new(wp_series(q_max), 2, 0, 2),
        WpPrime => QuasiJacobiForm::new(wp_prime_series(q_max), 3, 0, 3),
        E2k(k) => QuasiJacobiForm::new(eisenstein_series(k, q_max), 2 * k as i64, 0, 0),
        J2n(n) => QuasiJacobiForm::new(j2n_series(n, q_max), n as i64, 0, 0),
        J3n(n) => {
            let mut f = QuasiJacobiForm::new(j3n_series(n, q_max), n as i64, 0, 0);
            f.q_step = 2;
            f
        }
        Gn(n) => QuasiJacobiForm::new(gn_series(n, q_max), n as i64, 0, 0),
        Eta => QuasiJacobiForm::with_prefactor(euler_product(q_max), 1, 0, 0, rat(1, 24)),
        Delta => QuasiJacobiForm::new(delta_series(q_max), 12, 0, 0),
        Theta1 => QuasiJacobiForm::with_prefactor(theta1_series(q_max), 1, 1, 0, rat(1, 8)),
        GForm => QuasiJacobiForm::new(g_form_series(q_max), 0, 2, 0),
        ThetaD4 => QuasiJacobiForm::with_prefactor(theta_d4(q_max), 4, 1, 0, rat(1, 2)),
    }
}

/// The generator `name` expanded through `q^{q_max}` (memoized).
pub fn generator(name: GeneratorName, q_max: i64) -> Result<QuasiJacobiForm> {
    if q_max < 0 {
        return Err(Error::InvalidArgument(format!("q_max must be nonnegative, got {q_max}")));
    }
    if let GeneratorName::E2k(0) = name {
        return Err(Error::InvalidArgument("E_2k needs k ≥ 1".into()));
    }
    static CACHE: OnceLock<Mutex<HashMap<(GeneratorName, i64), QuasiJacobiForm>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().get(&(name, q_max)) {
        return Ok(f.clone());
    }
    let f = build(name, q_max);
    cache.lock().insert((name, q_max), f.clone());
    Ok(f)
}

/// Shorthand for the plain series of an integral-prefactor generator.
pub fn series(name: GeneratorName, q_max: i64) -> QSeries {
    generator(name, q_max).and_then(|f| f.to_plain()).expect("generator with integral prefactor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: i64) -> Vec<Gq> {
        (0..=n).map(|k| s.coeff(k).as_constant().expect("s-free")).collect()
    }

    fn g(v: &[i64]) -> Vec<Gq> {
        v.iter().map(|&x| Gq::from_int(x)).collect()
    }

    #[test]
    fn delta_and_its_inverse() {
        let d = delta_series(4);
        assert_eq!(ints(&d, 4), g(&[0, 1, -24, 252, -1472]));
        let inv = d.invert().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        let c: Vec<Gq> = (-1..=2).map(|k| inv.coeff(k).as_constant().unwrap()).collect();
        assert_eq!(c, g(&[1, 24, 324, 3200]));
    }

    #[test]
    fn eisenstein_e2() {
        assert_eq!(ints(&eisenstein_series(1, 3), 3), g(&[1, -24, -72, -96]));
        assert_eq!(ints(&eisenstein_series(2, 2), 2), g(&[1, 240, 2160]));
    }

    #[test]
    fn f_leading_rows() {
        // φ_{1,0} = −K = −iF = (s⁻¹ − s) + (−s⁻³ + 3s⁻¹ − 3s + s³)q + O(q²).
        let phi = f_series(1).scale(&-Gq::i());
        let k0 = SLaurent::from_terms([(-1, Gq::one()), (1, Gq::from_int(-1))]);
        let k1 = SLaurent::from_terms([(-3, Gq::from_int(-1)), (-1, Gq::from_int(3)), (1, Gq::from_int(-3)), (3, Gq::one())]);
        assert_eq!(phi.coeff(0), SRat::from_laurent(k0));
        assert_eq!(phi.coeff(1), SRat::from_laurent(k1));
    }

    #[test]
    fn g_form_rows() {
        let gs = g_form_series(2);
        assert_eq!(gs.coeff(0), SRat::one());
        let row = SLaurent::from_terms([(-4, Gq::one()), (-2, Gq::from_int(-4)), (0, Gq::from_int(6)), (2, Gq::from_int(-4)), (4, Gq::one())]);
        assert_eq!(gs.coeff(1), SRat::from_laurent(row));
    }

    #[test]
    fn wp_leading_row_matches_y_form() {
        // 1/12 − y/(1 + y)² with y = −s².
        let wp0 = wp_series(0).coeff(0);
        let y = Gq::frac(-1, 4);
        let expected = &Gq::frac(1, 12) - &(&y * &(&(&Gq::one() + &y) * &(&Gq::one() + &y)).inv().unwrap());
        assert_eq!(wp0.eval(&Gq::frac(1, 2)), Some(expected));
    }

    #[test]
    fn names_round_trip() {
        for s in GeneratorName::examples() {
            let n: GeneratorName = s.parse().unwrap();
            assert_eq!(&n.to_string(), s);
        }
        assert!("bogus".parse::<GeneratorName>().is_err());
    }

    #[test]
    fn g_n_is_j4_at_doubled_arguments() {
        // G₂'s q¹ row comes from k = 1, r = 1: −2·(1/2)·(y² + y⁻²).
        let s = gn_series(2, 1);
        let row = SLaurent::from_terms([(-4, Gq::from_int(-1)), (4, Gq::from_int(-1))]);
        assert_eq!(s.coeff(1), SRat::from_laurent(row));
    }
}
