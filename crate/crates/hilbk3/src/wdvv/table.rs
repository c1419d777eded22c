//! Coefficient tables for the potentials `H`, `I`, `T` and their initial conditions.
//!
//! `X = Σ X_{d,k} y^k q^d`. The vanishing regions are
//! `H_{d,k} = 0` for `d = 0, k ≤ −2` and for `d > 0, k < −2d`, and `I_{d,k} = T_{d,k} = 0` for
//! `k < −2d`.

use crate::arith::rat;
use crate::coeff::{json, Gq, QSeries, SLaurent, SRat};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json as js, Value};
use std::collections::BTreeMap;
use std::fmt;

/// One of the three potentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pot {
    /// The potential `H`.
    H,
    /// The potential `I`.
    I,
    /// The potential `T`.
    T,
}

impl fmt::Display for Pot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Coefficients `H_{d,k}`, `I_{d,k}`, `T_{d,k}`.
///
/// For `0 ≤ d ≤ q_max` the entries with `k ≤ k_max(d) = k_window + 2(q_max − d)` are stored; this
/// is exactly what the convolutions at `(d, k ≤ k_max(d))` consume.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffTable {
    /// Largest `q`-degree `d` solved.
    pub q_max: i64,
    /// The `k`-window at the top row.
    pub k_window: i64,
    h: BTreeMap<(i64, i64), BigRational>,
    i: BTreeMap<(i64, i64), BigRational>,
    t: BTreeMap<(i64, i64), BigRational>,
}

impl CoeffTable {
    /// An empty table for the given window.
    pub fn new(q_max: i64, k_window: i64) -> Self {
        Self { q_max, k_window, ..Self::default() }
    }

    /// Largest stored `k` in row `d`.
    pub fn k_max(&self, d: i64) -> i64 {
        self.k_window + 2 * (self.q_max - d)
    }

    /// Smallest possibly nonzero `k` in row `d`.
    pub fn k_min(pot: Pot, d: i64) -> i64 {
        match (pot, d) {
            (Pot::H, 0) => -1,
            _ => -2 * d,
        }
    }

    /// True if `X_{d,k}` vanishes by the initial conditions.
    pub fn vanishes(pot: Pot, d: i64, k: i64) -> bool {
        d < 0 || k < Self::k_min(pot, d)
    }

    fn map(&self, pot: Pot) -> &BTreeMap<(i64, i64), BigRational> {
        match pot {
            Pot::H => &self.h,
            Pot::I => &self.i,
            Pot::T => &self.t,
        }
    }

    fn map_mut(&mut self, pot: Pot) -> &mut BTreeMap<(i64, i64), BigRational> {
        match pot {
            Pot::H => &mut self.h,
            Pot::I => &mut self.i,
            Pot::T => &mut self.t,
        }
    }

    /// `X_{d,k}`: zero in a vanishing region, the stored value, or `None` if not yet known.
    pub fn get(&self, pot: Pot, d: i64, k: i64) -> Option<BigRational> {
        if Self::vanishes(pot, d, k) {
            return Some(BigRational::zero());
        }
        self.map(pot).get(&(d, k)).cloned()
    }

    /// Stores `X_{d,k}`.
    pub fn set(&mut self, pot: Pot, d: i64, k: i64, v: BigRational) {
        self.map_mut(pot).insert((d, k), v);
    }

    /// Forgets `X_{d,k}`.
    pub fn remove(&mut self, pot: Pot, d: i64, k: i64) {
        self.map_mut(pot).remove(&(d, k));
    }

    /// All stored entries of one potential, ordered by `(d, k)`.
    pub fn entries(&self, pot: Pot) -> impl Iterator<Item = (&(i64, i64), &BigRational)> {
        self.map(pot).iter()
    }

    /// The stored part of `X` as a `q`-series in `s`, known through `q^{q_max}`; `y^k` becomes
    /// `(−1)^k s^{2k}`. Row `d` is cut at `k ≤ k_max(d)`.
    pub fn to_series(&self, pot: Pot) -> QSeries {
        let rows = (0..=self.q_max)
            .map(|d| {
                let terms = self
                    .map(pot)
                    .range((d, i64::MIN)..=(d, self.k_max(d)))
                    .map(|(&(_, k), v)| {
                        let c = Gq::from_rational(if k.rem_euclid(2) == 0 { v.clone() } else { -v.clone() });
                        (2 * k, c)
                    });
                SRat::from_laurent(SLaurent::from_terms(terms))
            })
            .collect();
        QSeries::from_rows(0, self.q_max, rows)
    }

    /// CSV with header `d,k,H,I,T`; blank cells are coefficients that are not stored.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<(i64, i64)> =
            self.h.keys().chain(self.i.keys()).chain(self.t.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let mut out = String::from("d,k,H,I,T\n");
        fn cell(m: &BTreeMap<(i64, i64), BigRational>, key: &(i64, i64)) -> String {
            m.get(key).map(|v| v.to_string()).unwrap_or_default()
        }
        for key in keys {
            out += &format!("{},{},{},{},{}\n", key.0, key.1, cell(&self.h, &key), cell(&self.i, &key), cell(&self.t, &key));
        }
        out
    }

    /// JSON with the three assembled series in the canonical series encoding.
    pub fn to_json(&self) -> Value {
        js!({
            "q_max": self.q_max,
            "k_window": self.k_window,
            "H": json::to_json(&self.to_series(Pot::H)),
            "I": json::to_json(&self.to_series(Pot::I)),
            "T": json::to_json(&self.to_series(Pot::T)),
        })
    }
}

/// The initial conditions: `T_{0,k} = 8/k³` for `k ≥ 1`, `T_{0,0} = 0`,
/// `T_{d,−2d} = 2/d³` for `d ≥ 1` and `H_{0,−1} = 1`, on top of the vanishing regions.
pub fn initial_conditions(q_max: i64, k_window: i64) -> CoeffTable {
    let mut t = CoeffTable::new(q_max, k_window);
    t.set(Pot::T, 0, 0, BigRational::zero());
    for k in 1..=t.k_max(0) + 1 {
        t.set(Pot::T, 0, k, rat(8, k * k * k));
    }
    for d in 1..=q_max {
        t.set(Pot::T, d, -2 * d, rat(2, d * d * d));
    }
    t.set(Pot::H, 0, -1, rat(1, 1));
    t
}
