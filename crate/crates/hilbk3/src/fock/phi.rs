//! The structure series `φ_{m,ℓ}` of the operators `E^(r)`.
//!
//! Fifteen base entries `(m, ℓ)` with `m > 0` are built from closed forms in `K = iF`, `J₁`, `℘`,
//! `℘•`, `E₂`, `E₄`. All other pairs follow from `φ_{m,ℓ} = −φ_{−m,−ℓ}`,
//! `ℓ φ_{m,ℓ} = m φ_{ℓ,m}` and `φ_{0,ℓ} = 0`; pairs outside that closure are reported as missing.

use crate::arith::rat;
use crate::coeff::{Gq, QSeries, SLaurent, SRat};
use crate::error::{Error, Result};
use crate::jacobi::{qjac_fit, series, GeneratorName, QuasiJacobiForm};
use crate::report::Report;
use num_rational::BigRational;
use num_traits::One;
use parking_lot::Mutex;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// The base pairs `(m, ℓ)` in index order.
pub const BASE: [(i64, i64); 15] = [
    (1, -1),
    (1, 0),
    (1, 1),
    (2, -2),
    (2, -1),
    (2, 0),
    (2, 1),
    (2, 2),
    (3, -2),
    (3, -1),
    (3, 0),
    (3, 1),
    (3, 2),
    (3, 3),
    (4, 0),
];

/// Index of a base pair.
pub fn base_index(m: i64, l: i64) -> Option<usize> {
    BASE.iter().position(|&p| p == (m, l))
}

/// Expresses `φ_{m,ℓ}` as `c · φ_base`.
///
/// Returns `Ok(None)` when `φ_{m,ℓ} = 0` (that is `m = 0`) and [`Error::MissingPhi`] when the pair
/// is not reachable from the base entries.
pub fn phi_key(m: i64, l: i64) -> Result<Option<(BigRational, usize)>> {
    if m == 0 {
        return Ok(None);
    }
    let mut c = BigRational::one();
    let (mut a, mut b) = (m, l);
    if a < 0 {
        c = -c;
        a = -a;
        b = -b;
    }
    if let Some(i) = base_index(a, b) {
        return Ok(Some((c, i)));
    }
    if b != 0 {
        // φ_{a,b} = (a/b) φ_{b,a}
        c *= rat(a, b);
        let (mut a2, mut b2) = (b, a);
        if a2 < 0 {
            c = -c;
            a2 = -a2;
            b2 = -b2;
        }
        if let Some(i) = base_index(a2, b2) {
            return Ok(Some((c, i)));
        }
    }
    Err(Error::MissingPhi { m, l })
}

/// `(coefficient, [J₁, ℘, ℘•, E₂, E₄] exponents)`.
type Term = (BigRational, [u32; 5]);

/// Closed form `K^k · Σ terms + shift`.
struct ClosedForm {
    k_pow: u32,
    terms: Vec<Term>,
    shift: i64,
}

fn t(n: i64, d: i64, e: [u32; 5]) -> Term {
    (rat(n, d), e)
}

fn closed_form(m: i64, l: i64) -> ClosedForm {
    // Exponent order: J1, wp, wp', E2, E4.
    let cf = |k_pow, terms, shift| ClosedForm { k_pow, terms, shift };
    match (m, l) {
        (1, -1) => cf(2, vec![t(1, 2, [2, 0, 0, 0, 0]), t(-1, 2, [0, 1, 0, 0, 0]), t(-1, 12, [0, 0, 0, 1, 0])], 0),
        (1, 0) => cf(1, vec![t(-1, 1, [0; 5])], 0),
        (1, 1) => cf(2, vec![t(1, 1, [0, 1, 0, 0, 0]), t(-1, 12, [0, 0, 0, 1, 0])], -1),
        (2, -2) => cf(
            4,
            vec![
                t(2, 1, [4, 0, 0, 0, 0]),
                t(-4, 1, [2, 1, 0, 0, 0]),
                t(-2, 12, [2, 0, 0, 1, 0]),
                t(-1, 1, [1, 0, 1, 0, 0]),
            ],
            0,
        ),
        (2, -1) => cf(
            3,
            vec![
                t(4, 3, [3, 0, 0, 0, 0]),
                t(-2, 1, [1, 1, 0, 0, 0]),
                t(-2, 12, [1, 0, 0, 1, 0]),
                t(-2, 6, [0, 0, 1, 0, 0]),
            ],
            0,
        ),
        (2, 0) => cf(2, vec![t(-2, 1, [1, 0, 0, 0, 0])], 0),
        (2, 1) => cf(3, vec![t(2, 1, [1, 1, 0, 0, 0]), t(-2, 12, [1, 0, 0, 1, 0]), t(1, 1, [0, 0, 1, 0, 0])], 0),
        (2, 2) => cf(
            4,
            vec![
                t(2, 1, [2, 1, 0, 0, 0]),
                t(-2, 12, [2, 0, 0, 1, 0]),
                t(3, 1, [0, 2, 0, 0, 0]),
                t(2, 1, [1, 0, 1, 0, 0]),
                t(-2, 96, [0, 0, 0, 0, 1]),
            ],
            -1,
        ),
        (3, -2) => cf(
            5,
            vec![
                t(27, 5, [5, 0, 0, 0, 0]),
                t(-27, 2, [3, 1, 0, 0, 0]),
                t(-3, 8, [3, 0, 0, 1, 0]),
                t(3, 2, [1, 2, 0, 0, 0]),
                t(3, 24, [1, 1, 0, 1, 0]),
                t(-15, 4, [2, 0, 1, 0, 0]),
                t(3, 180, [1, 0, 0, 0, 1]),
                t(9, 20, [0, 1, 1, 0, 0]),
            ],
            0,
        ),
        (3, -1) => cf(
            4,
            vec![
                t(27, 8, [4, 0, 0, 0, 0]),
                t(-27, 4, [2, 1, 0, 0, 0]),
                t(-3, 8, [2, 0, 0, 1, 0]),
                t(3, 8, [0, 2, 0, 0, 0]),
                t(3, 24, [0, 1, 0, 1, 0]),
                t(-3, 2, [1, 0, 1, 0, 0]),
                t(3, 288, [0, 0, 0, 0, 1]),
            ],
            0,
        ),
        (3, 0) => cf(3, vec![t(-9, 2, [2, 0, 0, 0, 0]), t(3, 2, [0, 1, 0, 0, 0])], 0),
        (3, 1) => cf(
            4,
            vec![
                t(9, 2, [2, 1, 0, 0, 0]),
                t(-3, 8, [2, 0, 0, 1, 0]),
                t(3, 2, [0, 2, 0, 0, 0]),
                t(3, 24, [0, 1, 0, 1, 0]),
                t(3, 1, [1, 0, 1, 0, 0]),
                t(-3, 144, [0, 0, 0, 0, 1]),
            ],
            0,
        ),
        (3, 2) => cf(
            5,
            vec![
                t(9, 2, [3, 1, 0, 0, 0]),
                t(-3, 8, [3, 0, 0, 1, 0]),
                t(21, 2, [1, 2, 0, 0, 0]),
                t(3, 24, [1, 1, 0, 1, 0]),
                t(21, 4, [2, 0, 1, 0, 0]),
                t(-3, 36, [1, 0, 0, 0, 1]),
                t(9, 4, [0, 1, 1, 0, 0]),
            ],
            0,
        ),
        (3, 3) => cf(
            6,
            vec![
                t(27, 4, [4, 1, 0, 0, 0]),
                t(-9, 16, [4, 0, 0, 1, 0]),
                t(45, 2, [2, 2, 0, 0, 0]),
                t(3, 8, [2, 1, 0, 1, 0]),
                t(9, 1, [3, 0, 1, 0, 0]),
                t(15, 4, [0, 3, 0, 0, 0]),
                t(-3, 48, [0, 2, 0, 1, 0]),
                t(-3, 16, [2, 0, 0, 0, 1]),
                t(9, 1, [1, 1, 1, 0, 0]),
                t(-3, 144, [0, 1, 0, 0, 1]),
                t(1, 1, [0, 0, 2, 0, 0]),
            ],
            -1,
        ),
        (4, 0) => cf(4, vec![t(-32, 3, [3, 0, 0, 0, 0]), t(8, 1, [1, 1, 0, 0, 0]), t(2, 3, [0, 0, 1, 0, 0])], 0),
        _ => unreachable!("not a base pair"),
    }
}

/// Builds one base entry through `q^{q_max}`.
fn build_entry(m: i64, l: i64, q_max: i64) -> QSeries {
    let cf = closed_form(m, l);
    let gens = [
        series(GeneratorName::J1, q_max),
        series(GeneratorName::Wp, q_max),
        series(GeneratorName::WpPrime, q_max),
        series(GeneratorName::E2k(1), q_max),
        series(GeneratorName::E2k(2), q_max),
    ];
    let mut poly = QSeries::zero(q_max);
    for (c, e) in &cf.terms {
        let mut x = QSeries::constant(SRat::constant(Gq::from_rational(c.clone())));
        for (g, &k) in gens.iter().zip(e) {
            if k > 0 {
                x = x.mul(&g.pow(k));
            }
        }
        poly = poly.add(&x.truncate(q_max));
    }
    let k = series(GeneratorName::K, q_max);
    let mut out = k.pow(cf.k_pow).mul(&poly);
    if cf.shift != 0 {
        out = out.add(&QSeries::constant(SRat::from_int(cf.shift)));
    }
    out.truncate(q_max)
}

/// The structure series `φ_{m,ℓ}`, known through a fixed `q`-order.
#[derive(Clone, Debug)]
pub struct PhiTable {
    q_max: i64,
    base: Arc<Vec<QSeries>>,
}

impl PhiTable {
    /// All base entries through `q^{q_max}` (memoized per order).
    pub fn new(q_max: i64) -> Result<Self> {
        if q_max < 0 {
            return Err(Error::InvalidArgument(format!("q_max must be nonnegative, got {q_max}")));
        }
        static CACHE: OnceLock<Mutex<HashMap<i64, Arc<Vec<QSeries>>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().get(&q_max) {
            return Ok(Self { q_max, base: b.clone() });
        }
        use rayon::prelude::*;
        let base: Vec<QSeries> = BASE.par_iter().map(|&(m, l)| build_entry(m, l, q_max)).collect();
        let base = Arc::new(base);
        cache.lock().insert(q_max, base.clone());
        Ok(Self { q_max, base })
    }

    /// Highest known `q`-order.
    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    /// A base entry by index.
    pub fn base(&self, i: usize) -> &QSeries {
        &self.base[i]
    }

    /// `φ_{m,ℓ}`.
    pub fn get(&self, m: i64, l: i64) -> Result<QSeries> {
        Ok(match phi_key(m, l)? {
            None => QSeries::zero(self.q_max),
            Some((c, i)) => self.base[i].scale(&Gq::from_rational(c)),
        })
    }

    /// `φ_{m,ℓ} + sgn(m) δ_{mℓ}` as a quasi-Jacobi form of index `(|m|+|ℓ|)/2` and weight `−δ_{0ℓ}`.
    pub fn form(&self, m: i64, l: i64) -> Result<QuasiJacobiForm> {
        let mut x = self.get(m, l)?;
        if m == l && m != 0 {
            x = x.add(&QSeries::constant(SRat::from_int(m.signum())));
        }
        let weight = if l == 0 { -1 } else { 0 };
        Ok(QuasiJacobiForm::new(x, weight, m.abs() + l.abs(), 0))
    }
}

/// The table restricted to a requested set of pairs: every pair must be derivable.
pub fn phi_closed_forms(range: &[(i64, i64)], q_max: i64) -> Result<PhiTable> {
    for &(m, l) in range {
        phi_key(m, l)?;
    }
    PhiTable::new(q_max)
}

fn laurent(terms: &[(i64, i64)]) -> SRat {
    SRat::from_laurent(SLaurent::from_terms(terms.iter().map(|&(e, c)| (e, Gq::from_int(c)))))
}

/// Printed `q⁰` and `q¹` rows of `φ_{m,ℓ} + sgn(m)δ_{mℓ}` as `(s-exponent, coefficient)` lists.
pub fn printed_rows() -> Vec<((i64, i64), Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    vec![
        ((1, -1), vec![], vec![(-4, -1), (-2, 4), (0, -6), (2, 4), (4, -1)]),
        ((1, 0), vec![(-1, 1), (1, -1)], vec![(-3, -1), (-1, 3), (1, -3), (3, 1)]),
        ((1, 1), vec![(0, 1)], vec![(-4, 1), (-2, -4), (0, 6), (2, -4), (4, 1)]),
        ((2, -2), vec![], vec![(-6, -2), (-4, 4), (-2, 2), (0, -8), (2, 2), (4, 4), (6, -2)]),
        ((2, -1), vec![], vec![(-5, -2), (-3, 6), (-1, -4), (1, -4), (3, 6), (5, -2)]),
        ((2, 0), vec![(-2, 1), (2, -1)], vec![(-4, -4), (-2, 8), (2, -8), (4, 4)]),
        ((2, 1), vec![], vec![(-5, 2), (-3, -6), (-1, 4), (1, 4), (3, -6), (5, 2)]),
        ((2, 2), vec![(0, 1)], vec![(-6, 2), (-4, -4), (-2, -2), (0, 8), (2, -2), (4, -4), (6, 2)]),
        ((3, -2), vec![], vec![(-7, -3), (-5, 6), (-1, -3), (1, -3), (5, 6), (7, -3)]),
        ((3, -1), vec![], vec![(-6, -3), (-4, 9), (-2, -9), (0, 6), (2, -9), (4, 9), (6, -3)]),
        ((3, 0), vec![(-3, 1), (3, -1)], vec![(-5, -9), (-3, 18), (-1, -9), (1, 9), (3, -18), (5, 9)]),
        ((3, 1), vec![], vec![(-6, 3), (-4, -9), (-2, 9), (0, -6), (2, 9), (4, -9), (6, 3)]),
        ((3, 2), vec![], vec![(-7, 3), (-5, -6), (-1, 3), (1, 3), (5, -6), (7, 3)]),
        (
            (3, 3),
            vec![(0, 1)],
            vec![(-8, 3), (-6, -6), (-4, 3), (-2, -6), (0, 12), (2, -6), (4, 3), (6, -6), (8, 3)],
        ),
        ((4, 0), vec![(-4, 1), (4, -1)], vec![(-6, -16), (-4, 32), (-2, -16), (2, 16), (4, -32), (6, 16)]),
    ]
}

/// Compares every base entry with its printed `q⁰`, `q¹` rows.
pub fn verify_printed(table: &PhiTable) -> Report {
    let mut rep = Report::new();
    for ((m, l), r0, r1) in printed_rows() {
        let form = match table.form(m, l) {
            Ok(f) => f.series,
            Err(e) => {
                rep.push(format!("phi({m},{l}) printed rows"), false, e.to_string());
                continue;
            }
        };
        for (n, want) in [(0, laurent(&r0)), (1, laurent(&r1))] {
            let got = form.coeff(n);
            let ok = got == want;
            rep.push(
                format!("phi({m},{l}) q^{n}"),
                ok,
                if ok { format!("{got}") } else { format!("got {got}, printed {want}") },
            );
        }
    }
    rep
}

/// Checks `φ_{m,0} = (s^{−m} − s^m) + O(q)` and `φ_{m,ℓ} = O(q)` for `ℓ ≠ 0` on the base entries.
pub fn verify_leading_rows(table: &PhiTable) -> Report {
    let mut rep = Report::new();
    for (i, &(m, l)) in BASE.iter().enumerate() {
        let lead = table.base(i).coeff(0);
        let want = if l == 0 { laurent(&[(-m, 1), (m, -1)]) } else { SRat::zero() };
        let ok = lead == want;
        rep.push(format!("phi({m},{l}) leading row"), ok, format!("{lead}"));
    }
    rep
}

/// Checks the two symmetries on all derivable pairs with `|m|, |ℓ| ≤ 4`, the leading rows
/// `φ_{m,0} = (s^{−m} − s^m) + O(q)` and `φ_{m,ℓ} = O(q)` for `ℓ ≠ 0`, and the index/weight
/// grading of every base entry via [`qjac_fit`].
pub fn verify_invariants(table: &PhiTable) -> Report {
    let mut rep = Report::new();
    let mut sym_ok = true;
    let mut sym_detail = String::from("all derivable pairs with |m|, |l| <= 4");
    for m in -4..=4i64 {
        for l in -4..=4i64 {
            let (Ok(a), Ok(b)) = (table.get(m, l), table.get(-m, -l)) else { continue };
            if !a.add(&b).is_zero() {
                sym_ok = false;
                sym_detail = format!("phi({m},{l}) != -phi({},{})", -m, -l);
            }
            if let Ok(c) = table.get(l, m) {
                let lhs = a.scale(&Gq::from_int(l));
                let rhs = c.scale(&Gq::from_int(m));
                if !lhs.sub(&rhs).is_zero() {
                    sym_ok = false;
                    sym_detail = format!("l phi({m},{l}) != m phi({l},{m})");
                }
            }
        }
    }
    rep.push("phi symmetries", sym_ok, sym_detail);
    rep.extend(verify_leading_rows(table));
    for &(m, l) in BASE.iter() {
        let name = format!("phi({m},{l}) index/weight");
        let form = match table.form(m, l) {
            Ok(f) => f,
            Err(e) => {
                rep.push(name, false, e.to_string());
                continue;
            }
        };
        let weight = if l == 0 { -1 } else { 0 };
        let index2 = m.abs() + l.abs();
        match qjac_fit(&form.series, weight, index2) {
            Ok(fit) => {
                let ok = fit.weight == Some(weight) && fit.holomorphic && fit.index2 == index2;
                rep.push(name, ok, format!("index {index2}/2, weight {:?}, holomorphic {}", fit.weight, fit.holomorphic));
            }
            Err(e) => rep.push(name, false, e.to_string()),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_follow_the_symmetries() {
        assert_eq!(phi_key(1, 0).unwrap(), Some((rat(1, 1), 1)));
        assert_eq!(phi_key(-1, 0).unwrap(), Some((rat(-1, 1), 1)));
        assert_eq!(phi_key(1, 2).unwrap(), Some((rat(1, 2), 6)));
        assert_eq!(phi_key(1, -2).unwrap(), Some((rat(1, 2), 4)));
        assert_eq!(phi_key(2, -3).unwrap(), Some((rat(2, 3), 8)));
        assert_eq!(phi_key(0, 3).unwrap(), None);
        assert!(matches!(phi_key(3, -3), Err(Error::MissingPhi { m: 3, l: -3 })));
        assert!(matches!(phi_key(4, 1), Err(Error::MissingPhi { .. })));
        assert!(phi_closed_forms(&[(1, 0), (-2, 1)], 2).is_ok());
        assert!(phi_closed_forms(&[(5, 0)], 2).is_err());
    }

    #[test]
    fn printed_expansions_match() {
        let t = PhiTable::new(2).unwrap();
        let rep = verify_printed(&t);
        assert!(rep.all_ok(), "{rep}");
    }

    #[test]
    fn low_rows_are_laurent() {
        let t = PhiTable::new(3).unwrap();
        for i in 0..BASE.len() {
            assert!(t.base(i).is_laurent(), "{:?}", BASE[i]);
        }
        assert_eq!(t.get(1, 0).unwrap().neg(), series(GeneratorName::K, 3));
    }

    #[test]
    fn invariants_hold() {
        let t = PhiTable::new(8).unwrap();
        let rep = verify_invariants(&t);
        assert!(rep.all_ok(), "{rep}");
    }
}
