//! Fitting a `q`-series as a polynomial in the quasi-Jacobi generators.
//!
//! A target of index `m` is matched against `F^{2m} · P(E₂, E₄, J₁, ℘, ℘•)`, where `P` runs over
//! monomials of total weight at most `weight_max`. Each `q`-row is cleared of its
//! `(1 − s²)^a (1 + s²)^b` denominators and compared coefficient by coefficient in `s`.

use super::generators::{eisenstein_series, f_series, j1_series, wp_prime_series, wp_series};
use crate::coeff::{Gq, QSeries, SLaurent, SRat};
use crate::error::{Error, Result};
use crate::linalg::{solve, Solution};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;

/// Names of the index-0 generators, in the order used by [`Monomial::exps`].
pub const FIT_GENERATORS: [&str; 5] = ["E2", "E4", "J1", "wp", "wp_prime"];
const FIT_WEIGHTS: [i64; 5] = [2, 4, 1, 2, 3];

/// Default `w`-order for the holomorphy test at `z = 0`.
pub const DEFAULT_W_ORDER: i64 = 8;

/// `E₂^a E₄^b J₁^c ℘^d (℘•)^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    /// Exponents of `E₂, E₄, J₁, ℘, ℘•`.
    pub exps: [u32; 5],
}

impl Monomial {
    /// Weight of the index-0 part.
    pub fn weight(&self) -> i64 {
        self.exps.iter().zip(FIT_WEIGHTS).map(|(&e, w)| e as i64 * w).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(FIT_GENERATORS)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A successful fit `target = F^{index2} · Σ c_i M_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QJacFit {
    /// Twice the index, which is also the power of `F`.
    pub index2: i64,
    /// Nonzero terms.
    pub terms: Vec<(Monomial, Gq)>,
    /// The weight, when every term has the same weight.
    pub weight: Option<i64>,
    /// The largest weight among the terms.
    pub max_weight: i64,
    /// Highest `q`-order used to determine the coefficients.
    pub fit_through: i64,
    /// Highest `q`-order at which the fit was checked on held-out data.
    pub verified_through: i64,
    /// No negative powers of `w` at `z = 0`.
    pub holomorphic: bool,
}

impl fmt::Display for QJacFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        let poly = if poly.is_empty() { "0".to_string() } else { poly.join(" + ") };
        match self.index2 {
            0 => write!(f, "{poly}")?,
            1 => write!(f, "F*({poly})")?,
            k => write!(f, "F^{k}*({poly})")?,
        }
        let w = self.weight.map_or_else(|| format!("mixed, max {}", self.max_weight), |w| w.to_string());
        write!(
            f,
            "  [weight {w}, index {}/2, fit through q^{}, verified through q^{}, {}]",
            self.index2,
            self.fit_through,
            self.verified_through,
            if self.holomorphic { "holomorphic at z=0" } else { "pole at z=0" }
        )
    }
}

/// All monomials whose total weight, including `F^{index2}`, is at most `weight_max`.
pub fn monomials(weight_max: i64, index2: i64) -> Vec<Monomial> {
    let budget = weight_max + index2;
    let mut out = Vec::new();
    if budget < 0 {
        return out;
    }
    fn rec(i: usize, left: i64, cur: &mut [u32; 5], out: &mut Vec<Monomial>) {
        if i == 5 {
            out.push(Monomial { exps: *cur });
            return;
        }
        let mut e = 0;
        while e as i64 * FIT_WEIGHTS[i] <= left {
            cur[i] = e;
            rec(i + 1, left - e as i64 * FIT_WEIGHTS[i], cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, budget, &mut [0; 5], &mut out);
    out.sort_by_key(|m| (m.weight(), m.clone()));
    out
}

/// The numerator of `r` over the common denominator `(1 − s²)^a (1 + s²)^b`.
fn numerator_over(r: &SRat, a: u32, b: u32) -> SLaurent {
    let (ra, rb) = r.denominator_exponents();
    let mut n = r.numerator().clone();
    for _ in ra..a {
        n = n.mul_quad(-1);
    }
    for _ in rb..b {
        n = n.mul_quad(1);
    }
    n
}

/// Linear equations in the monomial coefficients coming from the `q^n` row.
fn row_equations(basis: &[QSeries], target: &QSeries, n: i64) -> (Vec<Vec<Gq>>, Vec<Gq>) {
    let row = |s: &QSeries| s.try_coeff(n).unwrap_or_else(SRat::zero);
    let rows: Vec<SRat> = basis.iter().map(row).collect();
    let t = row(target);
    let a = rows.iter().chain([&t]).map(|r| r.denominator_exponents().0).max().unwrap_or(0);
    let b = rows.iter().chain([&t]).map(|r| r.denominator_exponents().1).max().unwrap_or(0);
    let nums: Vec<SLaurent> = rows.iter().map(|r| numerator_over(r, a, b)).collect();
    let tn = numerator_over(&t, a, b);
    let exps: BTreeSet<i64> = nums.iter().chain([&tn]).flat_map(|x| x.terms().map(|(e, _)| e)).collect();
    let mut mat = Vec::with_capacity(exps.len());
    let mut rhs = Vec::with_capacity(exps.len());
    for e in exps {
        mat.push(nums.iter().map(|x| x.coeff(e)).collect());
        rhs.push(tn.coeff(e));
    }
    (mat, rhs)
}

/// Fits `target` as `F^{index2} · P(E₂, E₄, J₁, ℘, ℘•)` with total weight at most `weight_max`.
///
/// The coefficients are determined from the fewest leading `q`-orders that pin them down, the
/// remaining orders are used as held-out checks, and holomorphy at `z = 0` is tested through
/// `w^{w_order}`.
pub fn qjac_fit_with(target: &QSeries, weight_max: i64, index2: i64, w_order: i64) -> Result<QJacFit> {
    if index2 < 0 {
        return Err(Error::InvalidArgument("index must be nonnegative".into()));
    }
    let q_top = if target.is_exact() { target.last_row().max(0) + 2 } else { target.last_row() };
    let q_lo = target.valuation().map_or(0, |v| v.min(0));
    if q_top < q_lo {
        return Err(Error::Underdetermined("target has no known coefficients".into()));
    }
    let monos = monomials(weight_max, index2);
    if monos.is_empty() {
        return Err(Error::NoRepresentation(format!("no monomials of index {index2}/2 and weight ≤ {weight_max}")));
    }
    let qm = q_top.max(0);
    let gens = [eisenstein_series(1, qm), eisenstein_series(2, qm), j1_series(qm), wp_series(qm), wp_prime_series(qm)];
    let f_pow = f_series(qm).pow(index2 as u32);
    let basis: Vec<QSeries> = monos
        .par_iter()
        .map(|m| {
            let mut acc = f_pow.clone();
            for (g, &e) in gens.iter().zip(&m.exps) {
                if e > 0 {
                    acc = acc.mul(&g.pow(e));
                }
            }
            acc.truncate(qm)
        })
        .collect();

    let n_unknowns = basis.len();
    let mut mat: Vec<Vec<Gq>> = Vec::new();
    let mut rhs: Vec<Gq> = Vec::new();
    let mut solution = None;
    let mut fit_through = q_lo;
    for n in q_lo..=q_top {
        let (m, r) = row_equations(&basis, target, n);
        mat.extend(m);
        rhs.extend(r);
        match solve(&mat, &rhs, n_unknowns) {
            Solution::Inconsistent => {
                return Err(Error::NoRepresentation(format!(
                    "no combination of index {index2}/2 and weight ≤ {weight_max} matches through q^{n}"
                )))
            }
            Solution::Unique(x) => {
                solution = Some(x);
                fit_through = n;
                break;
            }
            Solution::Underdetermined { .. } => {}
        }
    }
    let Some(x) = solution else {
        return Err(Error::Underdetermined(format!(
            "coefficients not determined by q-orders through q^{q_top}; supply more orders"
        )));
    };
    if fit_through >= q_top {
        return Err(Error::Underdetermined(format!(
            "coefficients need every order through q^{q_top}, leaving none held out"
        )));
    }
    for n in fit_through + 1..=q_top {
        let (m, r) = row_equations(&basis, target, n);
        for (row, b) in m.iter().zip(&r) {
            let lhs = row.iter().zip(&x).fold(Gq::zero(), |acc, (a, c)| &acc + &(a * c));
            if &lhs != b {
                return Err(Error::NoRepresentation(format!("fit fails on held-out order q^{n}")));
            }
        }
    }
    let terms: Vec<(Monomial, Gq)> =
        monos.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect();
    let weights: BTreeSet<i64> = terms.iter().map(|(m, _)| m.weight() - index2).collect();
    let weight = if weights.len() == 1 { weights.iter().next().copied() } else { None };
    let max_weight = weights.iter().next_back().copied().unwrap_or(-index2);
    let holomorphic = target.substitute_w(w_order).is_holomorphic();
    Ok(QJacFit { index2, terms, weight, max_weight, fit_through, verified_through: q_top, holomorphic })
}

/// [`qjac_fit_with`] at the default `w`-order.
pub fn qjac_fit(target: &QSeries, weight_max: i64, index2: i64) -> Result<QJacFit> {
    qjac_fit_with(target, weight_max, index2, DEFAULT_W_ORDER)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        // Weight ≤ 2 with no F: 1, J1, J1², E2, wp.
        assert_eq!(monomials(2, 0).len(), 5);
    }

    #[test]
    fn fits_minus_f_squared() {
        let f = f_series(5);
        let fit = qjac_fit(&f.mul(&f).neg(), 0, 2).unwrap();
        assert_eq!(fit.terms, vec![(Monomial { exps: [0; 5] }, Gq::from_int(-1))]);
        assert_eq!(fit.weight, Some(-2));
        assert!(fit.holomorphic);
    }

    #[test]
    fn fits_e2() {
        let fit = qjac_fit(&eisenstein_series(1, 5), 2, 0).unwrap();
        assert_eq!(fit.terms, vec![(Monomial { exps: [1, 0, 0, 0, 0] }, Gq::one())]);
    }

    #[test]
    fn fits_g() {
        let g = super::super::generators::g_form_series(5);
        let fit = qjac_fit(&g, 2, 2).unwrap();
        assert_eq!(
            fit.terms,
            vec![
                (Monomial { exps: [0, 0, 0, 1, 0] }, Gq::from_int(-1)),
                (Monomial { exps: [1, 0, 0, 0, 0] }, Gq::frac(1, 12)),
            ]
        );
        assert_eq!(fit.weight, Some(0));
        assert!(fit.holomorphic);
    }

    #[test]
    fn reports_no_representation() {
        // J1 alone has a pole at z = 0 and odd weight; with weight ≤ 0 it is unreachable.
        let err = qjac_fit(&j1_series(4), 0, 0).unwrap_err();
        assert!(matches!(err, Error::NoRepresentation(_)));
    }
}
