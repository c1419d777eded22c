//! The Yau–Zaslow numbers and the closed-form generating series of two-point invariants.

use crate::arith::sigma;
use crate::coeff::{Gq, QSeries, SRat};
use crate::error::{Error, Result};
use crate::jacobi::{series, GeneratorName};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// The closed-form series that can be assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `F^{2d−2}/Δ`: two Lagrangian fibers of `Hilb^d`.
    Fibers(u32),
    /// `G^{d−1}/Δ`: the class `C(γ)`.
    CurveClass(u32),
    /// `1/(2−2d) · y d/dy (G^{d−1}) / Δ`: the class `A`.
    AClass(u32),
    /// `(1/d) binom(2d−2, d−1) (q d/dq F)^{2d−2} / Δ`: incidence schemes of `2d − 2` points.
    Incidence(u32),
    /// `F · q d/dq F / Δ`: a fiber of `Hilb²` against an incidence scheme.
    FiberIncidence,
}

impl Theorem {
    /// The number of points `d` of the Hilbert scheme the series lives on.
    pub fn d(&self) -> u32 {
        match *self {
            Theorem::Fibers(d) | Theorem::CurveClass(d) | Theorem::AClass(d) | Theorem::Incidence(d) => d,
            Theorem::FiberIncidence => 2,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::Fibers(d) => write!(f, "F^(2d-2)/Delta, d = {d}"),
            Theorem::CurveClass(d) => write!(f, "G^(d-1)/Delta, d = {d}"),
            Theorem::AClass(d) => write!(f, "(y d/dy G^(d-1))/((2-2d) Delta), d = {d}"),
            Theorem::Incidence(d) => write!(f, "binom(2d-2,d-1)/d (q d/dq F)^(2d-2)/Delta, d = {d}"),
            Theorem::FiberIncidence => write!(f, "F (q d/dq F)/Delta"),
        }
    }
}

/// Invariants indexed by `(h, k)`: the coefficient of `y^k q^{h−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWTable {
    /// Which series the table was read from.
    pub label: String,
    /// The largest `h` covered.
    pub h_max: i64,
    /// Nonzero entries.
    pub rows: BTreeMap<(i64, i64), BigRational>,
}

impl GWTable {
    /// Reads a table from a series whose rows are finite Laurent polynomials in `s` with
    /// real rational coefficients and only even exponents.
    pub fn from_series(label: impl Into<String>, x: &QSeries) -> Result<Self> {
        let mut rows = BTreeMap::new();
        let top = x.last_row();
        for (n, r) in x.rows() {
            let Some(l) = r.as_laurent() else {
                return Err(Error::InvalidArgument(format!("row q^{n} is not a Laurent polynomial in y")));
            };
            for (e, c) in l.terms() {
                if e % 2 != 0 || !c.is_real() {
                    return Err(Error::InvalidArgument(format!("row q^{n} is not a rational polynomial in y")));
                }
                // s^{2k} = (−1)^k y^k.
                let k = e / 2;
                let v = if k % 2 == 0 { c.re.clone() } else { -c.re.clone() };
                rows.insert((n + 1, k), v);
            }
        }
        Ok(GWTable { label: label.into(), h_max: top + 1, rows })
    }

    /// The entry at `(h, k)`, zero when absent.
    pub fn get(&self, h: i64, k: i64) -> BigRational {
        self.rows.get(&(h, k)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The nonzero entries of row `h`, by increasing `k`.
    pub fn row(&self, h: i64) -> Vec<(i64, BigRational)> {
        self.rows.range((h, i64::MIN)..=(h, i64::MAX)).map(|(&(_, k), v)| (k, v.clone())).collect()
    }

    /// CSV with header `h,k,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,k,value\n");
        for ((h, k), v) in &self.rows {
            out.push_str(&format!("{h},{k},{}\n", Gq::fmt_rational(v)));
        }
        out
    }

    /// JSON object with the label and a list of `{h, k, value}` entries.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .rows
            .iter()
            .map(|((h, k), v)| json!({ "h": h, "k": k, "value": Gq::fmt_rational(v) }))
            .collect();
        json!({ "label": self.label, "h_max": self.h_max, "entries": entries })
    }
}

impl fmt::Display for GWTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.label)?;
        for h in 0..=self.h_max {
            let row = self.row(h);
            if row.is_empty() {
                continue;
            }
            let terms: Vec<String> = row.iter().map(|(k, v)| format!("{}*y^{k}", Gq::fmt_rational(v))).collect();
            writeln!(f, "h = {h}: {}", terms.join(" + "))?;
        }
        Ok(())
    }
}

/// `N_0, …, N_{h_max}`: the coefficients of `1/Δ = Σ N_h q^{h−1}`.
pub fn yau_zaslow(h_max: usize) -> Vec<BigInt> {
    let inv = series(GeneratorName::Delta, h_max as i64 + 1).invert().expect("Delta has unit leading row");
    (0..=h_max as i64)
        .map(|h| {
            let c = inv.coeff(h - 1).as_constant().expect("1/Delta has scalar rows");
            c.re.to_integer()
        })
        .collect()
}

/// `∏_{m≥1} (1 − q^m)^{−24}` through `q^{n_max}` by multiplying out geometric series.
pub fn yz_by_product(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::one();
    for m in 1..=n_max {
        // Multiplying by 1/(1 − q^m) is a running sum with stride m.
        for _ in 0..24 {
            for n in m..=n_max {
                let prev = p[n - m].clone();
                p[n] += prev;
            }
        }
    }
    p
}

/// The same coefficients from the divisor-sum recursion `n p_n = 24 Σ_{k=1}^{n} σ(k) p_{n−k}`.
pub fn yz_by_sigma(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::one();
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += sigma(1, k as u64) * &p[n - k];
        }
        p[n] = acc * 24 / BigInt::from(n);
    }
    p
}

/// Assembles the right-hand side of `which` from the generators and reads off its table
/// through `q^{q_max}`, i.e. `h ≤ q_max + 1`.
pub fn theorem_series(which: Theorem, q_max: i64) -> Result<GWTable> {
    let x = theorem_qseries(which, q_max)?;
    GWTable::from_series(which.to_string(), &x)
}

/// The series of [`theorem_series`] before it is read as a table.
pub fn theorem_qseries(which: Theorem, q_max: i64) -> Result<QSeries> {
    let d = which.d();
    let top = q_max + 1;
    match which {
        Theorem::Fibers(d) if d < 1 => return Err(Error::InvalidArgument("the fiber series needs d >= 1".into())),
        Theorem::CurveClass(d) | Theorem::AClass(d) | Theorem::Incidence(d) if d < 2 => {
            return Err(Error::InvalidArgument("this series needs d >= 2".into()))
        }
        _ => {}
    }
    let inv_delta = series(GeneratorName::Delta, top + 1).invert()?;
    let f = series(GeneratorName::F, top);
    let numerator = match which {
        Theorem::Fibers(_) => f.pow(2 * d - 2),
        Theorem::CurveClass(_) => series(GeneratorName::GForm, top).pow(d - 1),
        Theorem::AClass(_) => {
            let g = series(GeneratorName::GForm, top).pow(d - 1);
            g.dz().scale(&Gq::frac(1, 2 - 2 * d as i64))
        }
        Theorem::Incidence(_) => {
            let c = BigRational::new(crate::arith::binomial(2 * d as u64 - 2, d as u64 - 1), BigInt::from(d));
            f.dq().pow(2 * d - 2).scale(&Gq::from_rational(c))
        }
        Theorem::FiberIncidence => f.mul(&f.dq()),
    };
    Ok(numerator.mul(&inv_delta).truncate(q_max))
}

/// `F² (54 ℘ E₂ − (9/4) E₂² + (3/4) E₄) / Δ` through `q^{q_max}`.
pub fn genus1_closed_form(q_max: i64) -> Result<QSeries> {
    let top = q_max + 2;
    let f = series(GeneratorName::F, top);
    let wp = series(GeneratorName::Wp, top);
    let e2 = series(GeneratorName::E2k(1), top);
    let e4 = series(GeneratorName::E2k(2), top);
    let inner = wp
        .mul(&e2)
        .scale(&Gq::from_int(54))
        .sub(&e2.pow(2).scale(&Gq::frac(9, 4)))
        .add(&e4.scale(&Gq::frac(3, 4)));
    Ok(f.pow(2).mul(&inner).mul(&series(GeneratorName::Delta, top).invert()?).truncate(q_max))
}

/// The `q^{-1}` row `3y^{-1} − 48 + 3y` of the genus-one series, in the variable `s`.
pub fn genus1_leading_row() -> SRat {
    use crate::coeff::SLaurent;
    SRat::from_laurent(SLaurent::from_terms([(-2, Gq::from_int(-3)), (0, Gq::from_int(-48)), (2, Gq::from_int(-3))]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn yau_zaslow_numbers() {
        let yz = yau_zaslow(10);
        assert_eq!(yz[..4], [1, 24, 324, 3200].map(BigInt::from));
        assert_eq!(yz, yz_by_product(10));
        assert_eq!(yz, yz_by_sigma(10));
    }

    #[test]
    fn fibers_at_d_one_is_yau_zaslow() {
        let t = theorem_series(Theorem::Fibers(1), 5).unwrap();
        let yz = yau_zaslow(6);
        for h in 0..=6 {
            assert_eq!(t.row(h), vec![(0, BigRational::from_integer(yz[h as usize].clone()))]);
        }
    }

    #[test]
    fn leading_rows() {
        let t = theorem_series(Theorem::CurveClass(2), 2).unwrap();
        assert_eq!(t.row(0), vec![(0, r(1))]);
        // G's q¹ row is y^{-2} + 4y^{-1} + 6 + 4y + y², plus 24 from 1/Δ.
        assert_eq!(t.row(1), vec![(-2, r(1)), (-1, r(4)), (0, r(30)), (1, r(4)), (2, r(1))]);
        // F² = y^{-1} + 2 + y at q⁰.
        let t = theorem_series(Theorem::Fibers(2), 1).unwrap();
        assert_eq!(t.row(0), vec![(-1, r(1)), (0, r(2)), (1, r(1))]);
        let t = theorem_series(Theorem::Incidence(2), 1).unwrap();
        assert!(t.row(0).is_empty());
    }

    #[test]
    fn rejects_small_d() {
        assert!(theorem_series(Theorem::Fibers(0), 2).is_err());
        assert!(theorem_series(Theorem::AClass(1), 2).is_err());
    }

    #[test]
    fn genus_one_series() {
        let g = genus1_closed_form(3).unwrap();
        assert_eq!(g.coeff(-1), genus1_leading_row());
        assert!(g.is_real());
        assert_eq!(g.invert_s().eq_to(&g), Ok(3));
        let t = GWTable::from_series("genus 1", &g).unwrap();
        assert_eq!(t.row(0), vec![(-1, r(3)), (0, r(-48)), (1, r(3))]);
    }
}
