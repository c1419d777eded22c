//! The six WDVV equations for `H`, `I`, `T` and their `q^d y^k` coefficients.
//!
//! Each equation is stored in function form as a sum of linear terms `c·∂_z^a ∂_τ^b X` and
//! bilinear terms `c·(∂_z^a ∂_τ^b X)(∂_z^α ∂_τ^β T)` with `X ∈ {H, I}`. On `y^j q^l` the operator
//! `∂_z^a ∂_τ^b` acts by `j^a l^b`, so the coefficient of `q^d y^k` of a bilinear term is
//! `Σ_{l,j} c j^a l^b X_{l,j} (k−j)^α (d−l)^β T_{d−l,k−j}`.

use super::table::{CoeffTable, Pot};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

/// One of the six equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wdvv {
    /// First equation.
    W1,
    /// Second equation.
    W2,
    /// Third equation.
    W3,
    /// Fourth equation.
    W4,
    /// Fifth equation.
    W5,
    /// Sixth equation.
    W6,
}

impl Wdvv {
    /// All six, in order.
    pub const ALL: [Wdvv; 6] = [Wdvv::W1, Wdvv::W2, Wdvv::W3, Wdvv::W4, Wdvv::W5, Wdvv::W6];
}

impl fmt::Display for Wdvv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A term of an equation in function form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// `(num/den) · ∂_z^a ∂_τ^b X`.
    Lin {
        /// Numerator of the coefficient.
        num: i64,
        /// Denominator of the coefficient.
        den: i64,
        /// The potential.
        x: Pot,
        /// Order of `∂_z`.
        a: u32,
        /// Order of `∂_τ`.
        b: u32,
    },
    /// `(num/den) · ∂_z^a ∂_τ^b X · ∂_z^ta ∂_τ^tb T`.
    Bil {
        /// Numerator of the coefficient.
        num: i64,
        /// Denominator of the coefficient.
        den: i64,
        /// The potential in the first factor.
        x: Pot,
        /// Order of `∂_z` on the first factor.
        a: u32,
        /// Order of `∂_τ` on the first factor.
        b: u32,
        /// Order of `∂_z` on `T`.
        ta: u32,
        /// Order of `∂_τ` on `T`.
        tb: u32,
    },
}

const fn lin(num: i64, den: i64, x: Pot, a: u32, b: u32) -> Term {
    Term::Lin { num, den, x, a, b }
}

const fn bil(num: i64, den: i64, x: Pot, a: u32, b: u32, ta: u32, tb: u32) -> Term {
    Term::Bil { num, den, x, a, b, ta, tb }
}

/// The function form of `eq`, with every `(4 + ∂_z³T)` factor multiplied out.
pub fn terms(eq: Wdvv) -> Vec<Term> {
    use Pot::{H, I};
    match eq {
        // 0 = 2∂τ²H + 2∂τI − H·∂τ³T + ½∂zH·∂z∂τ²T
        Wdvv::W1 => vec![lin(2, 1, H, 0, 2), lin(2, 1, I, 0, 1), bil(-1, 1, H, 0, 0, 0, 3), bil(1, 2, H, 1, 0, 1, 2)],
        // 0 = 2∂z²H + 4∂τH + 2I − H·∂z²∂τT + ½∂zH·(4 + ∂z³T)
        Wdvv::W2 => vec![
            lin(2, 1, H, 2, 0),
            lin(4, 1, H, 0, 1),
            lin(2, 1, I, 0, 0),
            bil(-1, 1, H, 0, 0, 2, 1),
            lin(2, 1, H, 1, 0),
            bil(1, 2, H, 1, 0, 3, 0),
        ],
        // 0 = 4∂τ²H + 2∂τI − ∂z²I + ½∂z∂τH·(4 + ∂z³T) − ∂τH·∂z²∂τT − ½∂z²H·∂z²∂τT + ∂zH·∂z∂τ²T
        Wdvv::W3 => vec![
            lin(4, 1, H, 0, 2),
            lin(2, 1, I, 0, 1),
            lin(-1, 1, I, 2, 0),
            lin(2, 1, H, 1, 1),
            bil(1, 2, H, 1, 1, 3, 0),
            bil(-1, 1, H, 0, 1, 2, 1),
            bil(-1, 2, H, 2, 0, 2, 1),
            bil(1, 1, H, 1, 0, 1, 2),
        ],
        // 0 = −8∂z∂τH − 4∂z³H + 8∂zI + 2∂zH·∂z²∂τT − ∂z²H·(4 + ∂z³T) + I·(4 + ∂z³T)
        Wdvv::W4 => vec![
            lin(-8, 1, H, 1, 1),
            lin(-4, 1, H, 3, 0),
            lin(8, 1, I, 1, 0),
            bil(2, 1, H, 1, 0, 2, 1),
            lin(-4, 1, H, 2, 0),
            bil(-1, 1, H, 2, 0, 3, 0),
            lin(4, 1, I, 0, 0),
            bil(1, 1, I, 0, 0, 3, 0),
        ],
        // 0 = −2∂τ²I + ½∂z²∂τH·∂z²∂τT − ∂z∂τH·∂z∂τ²T − ½∂z³H·∂z∂τ²T + ∂z²H·∂τ³T
        //     − ½∂τI·∂z²∂τT + ½∂zI·∂z∂τ²T
        Wdvv::W5 => vec![
            lin(-2, 1, I, 0, 2),
            bil(1, 2, H, 2, 1, 2, 1),
            bil(-1, 1, H, 1, 1, 1, 2),
            bil(-1, 2, H, 3, 0, 1, 2),
            bil(1, 1, H, 2, 0, 0, 3),
            bil(-1, 2, I, 0, 1, 2, 1),
            bil(1, 2, I, 1, 0, 1, 2),
        ],
        // 0 = 2∂τ³H − ∂τ²I − ∂τH·∂τ³T − ½I·∂τ³T + ½∂z∂τH·∂z∂τ²T
        Wdvv::W6 => vec![
            lin(2, 1, H, 0, 3),
            lin(-1, 1, I, 0, 2),
            bil(-1, 1, H, 0, 1, 0, 3),
            bil(-1, 2, I, 0, 0, 0, 3),
            bil(1, 2, H, 1, 1, 1, 2),
        ],
    }
}

/// A coefficient that the evaluation needed but the table does not contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Missing {
    /// The potential.
    pub pot: Pot,
    /// Its `q`-degree.
    pub d: i64,
    /// Its `y`-degree.
    pub k: i64,
}

fn ipow(x: i64, e: u32) -> BigInt {
    BigInt::from(x).pow(e)
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `(num/den) · Σ_{l,j} w(l, j) X_{l,j} T_{d−l,k−j}` for a weight `w` given as an integer.
///
/// `l` runs over `[0, d]` and `j` over `[−2l − 1, k + 2(d − l)]`; outside this box one of the
/// two factors lies in a vanishing region.
pub fn convolution<W>(table: &CoeffTable, x: Pot, d: i64, k: i64, weight: W) -> Result<BigRational, Missing>
where
    W: Fn(i64, i64) -> BigRational,
{
    let mut acc = BigRational::zero();
    for l in 0..=d {
        for j in (-2 * l - 1)..=(k + 2 * (d - l)) {
            let t = table.get(Pot::T, d - l, k - j).ok_or(Missing { pot: Pot::T, d: d - l, k: k - j })?;
            if t.is_zero() {
                continue;
            }
            let w = weight(l, j);
            if w.is_zero() {
                continue;
            }
            let xv = table.get(x, l, j).ok_or(Missing { pot: x, d: l, k: j })?;
            if xv.is_zero() {
                continue;
            }
            acc += w * xv * t;
        }
    }
    Ok(acc)
}

/// The `q^d y^k` coefficient of `eq` in function form.
pub fn coefficient(table: &CoeffTable, eq: Wdvv, d: i64, k: i64) -> Result<BigRational, Missing> {
    let mut acc = BigRational::zero();
    for term in terms(eq) {
        match term {
            Term::Lin { num, den, x, a, b } => {
                let w = ipow(k, a) * ipow(d, b);
                if w.is_zero() {
                    continue;
                }
                let xv = table.get(x, d, k).ok_or(Missing { pot: x, d, k })?;
                acc += frac(num, den) * BigRational::from_integer(w) * xv;
            }
            Term::Bil { num, den, x, a, b, ta, tb } => {
                let s = convolution(table, x, d, k, |l, j| {
                    BigRational::from_integer(ipow(j, a) * ipow(l, b) * ipow(k - j, ta) * ipow(d - l, tb))
                })?;
                acc += frac(num, den) * s;
            }
        }
    }
    Ok(acc)
}

/// The `q^d y^k` coefficient of `eq` in the printed coefficient form, written as
/// `LHS − RHS`. The two forms agree up to the factor [`printed_scale`].
///
/// In W4 the `H`-weight is `j(d − l) − ½ j²(k − j)`; with `½(k − j)` in place of the second
/// summand the form is not satisfied by the solution (see the tests).
pub fn printed_coefficient(table: &CoeffTable, eq: Wdvv, d: i64, k: i64) -> Result<BigRational, Missing> {
    let h = table.get(Pot::H, d, k).ok_or(Missing { pot: Pot::H, d, k })?;
    let i = table.get(Pot::I, d, k).ok_or(Missing { pot: Pot::I, d, k })?;
    let r = |n: i64| BigRational::from_integer(n.into());
    let half = frac(1, 2);
    let (lhs, rhs) = match eq {
        Wdvv::W1 => (
            r(2 * d * d) * &h + r(2 * d) * &i,
            convolution(table, Pot::H, d, k, |l, j| {
                r((d - l).pow(2)) * (r(d - l) - &half * r(j * (k - j)))
            })?,
        ),
        Wdvv::W2 => (
            r(2 * k * (k + 1) + 4 * d) * &h + r(2) * &i,
            convolution(table, Pot::H, d, k, |l, j| {
                r((k - j).pow(2)) * (r(d - l) - &half * r(j * (k - j)))
            })?,
        ),
        Wdvv::W3 => (
            r(2 * d * (2 * d + k)) * &h + r(2 * d - k * k) * &i,
            -convolution(table, Pot::H, d, k, |l, j| {
                r((k - j) * (j * (d - l) - l * (k - j))) * (r(d - l) - &half * r(j * (k - j)))
            })?,
        ),
        Wdvv::W4 => {
            let hs = convolution(table, Pot::H, d, k, |l, j| {
                r((k - j).pow(2)) * (r(j * (d - l)) - &half * r(j * j * (k - j)))
            })?;
            let is = convolution(table, Pot::I, d, k, |_, j| r((k - j).pow(2)) * &half * r(k - j))?;
            (r(2 * k + 1) * &i - r(k * (k * k + k + 2 * d)) * &h, -(&half) * (hs + is))
        }
        Wdvv::W5 => {
            let hs = convolution(table, Pot::H, d, k, |l, j| {
                r((d - l) * (j * (d - l) - l * (k - j))) * (r(j * (d - l)) - &half * r(j * j * (k - j)))
            })?;
            let is = convolution(table, Pot::I, d, k, |l, j| {
                r((d - l) * (j * (d - l) - l * (k - j))) * &half * r(k - j)
            })?;
            (r(2 * d * d) * &i, hs + is)
        }
        Wdvv::W6 => {
            let hs = convolution(table, Pot::H, d, k, |l, j| {
                r((d - l).pow(2)) * (r((d - l) * l) - &half * r(j * l * (k - j)))
            })?;
            let is = convolution(table, Pot::I, d, k, |l, _| r((d - l).pow(2)) * &half * r(d - l))?;
            (r(2 * d * d * d) * &h - r(d * d) * &i, hs + is)
        }
    };
    Ok(lhs - rhs)
}

/// `function form = printed_scale · printed form`.
pub fn printed_scale(eq: Wdvv) -> BigRational {
    match eq {
        Wdvv::W4 => frac(4, 1),
        Wdvv::W5 => frac(-1, 1),
        _ => frac(1, 1),
    }
}

/// The matrix of the `(H_{d,k}, I_{d,k}, T_{d,k+1})` system built from the printed rows of
/// W1, W6 and W5 (the last divided by `d²`).
pub fn printed_claim2_matrix(d: i64, k: i64) -> [[BigRational; 3]; 3] {
    let r = |n: i64| BigRational::from_integer(n.into());
    let c = r(d) + frac(k + 1, 2);
    [
        [r(2 * d), r(2), -(r(d) * &c)],
        [r(2 * d), r(-1), r(0)],
        [r(0), r(-2), c],
    ]
}

/// `(2d − 3)(k + 2d + 1)d`.
pub fn claim2_determinant(d: i64, k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from((2 * d - 3) * (k + 2 * d + 1) * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wdvv::solve;

    /// W4 with the `H`-weight `j(d − l) − ½(k − j)`.
    fn w4_without_j_squared(table: &CoeffTable, d: i64, k: i64) -> BigRational {
        let r = |n: i64| BigRational::from_integer(n.into());
        let half = frac(1, 2);
        let h = table.get(Pot::H, d, k).unwrap();
        let i = table.get(Pot::I, d, k).unwrap();
        let hs = convolution(table, Pot::H, d, k, |l, j| r((k - j).pow(2)) * (r(j * (d - l)) - &half * r(k - j))).unwrap();
        let is = convolution(table, Pot::I, d, k, |_, j| r((k - j).pow(2)) * &half * r(k - j)).unwrap();
        r(2 * k + 1) * i - r(k * (k * k + k + 2 * d)) * h + half * (hs + is)
    }

    #[test]
    fn printed_forms_match_function_forms() {
        let t = solve(2, 4).unwrap();
        for eq in Wdvv::ALL {
            for d in 0..=2 {
                for k in -2 * d..=t.k_max(d) {
                    let f = coefficient(&t, eq, d, k).unwrap();
                    let p = printed_coefficient(&t, eq, d, k).unwrap();
                    assert_eq!(f, printed_scale(eq) * p, "{eq} at ({d},{k})");
                }
            }
        }
    }

    #[test]
    fn w4_needs_the_j_squared_factor() {
        let t = solve(2, 4).unwrap();
        assert!(!w4_without_j_squared(&t, 0, 1).is_zero());
        assert!(printed_coefficient(&t, Wdvv::W4, 0, 1).unwrap().is_zero());
    }

    #[test]
    fn claim2_matrix_determinant_formula() {
        for d in 1..4 {
            for k in -2 * d..6 {
                let m = printed_claim2_matrix(d, k);
                let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                    - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                    + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
                assert_eq!(det, claim2_determinant(d, k));
            }
        }
    }
}
