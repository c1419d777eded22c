//! The recursion determining `H`, `I`, `T` from the initial conditions.
//!
//! Order of the steps:
//!
//! 1. `I_{0,0}` from W2 at `(0, 0)`.
//! 2. `H_{0,0}`. With `h = H_{0,0}` as a parameter, steps 3 and 4 at `(1, −2)` and `(1, −1)` make
//!    every coefficient a polynomial in `h`, and so are the twelve equations W1–W6 at these two
//!    points. The residual polynomials are interpolated exactly and their greatest common
//!    divisor is `h(h − 2)`. The root `h = 0` continues to the degenerate solution with
//!    `H_{d,k} = 0` for all `d ≥ 1`; the solver takes the nonzero root.
//! 3. `H_{0,k}`, `I_{0,k}` for `k ≥ 1` from W3 and W4 at `(0, k)`.
//! 4. For `d ≥ 1` and `k` ascending from `−2d`: `H_{d,k}`, `I_{d,k}`, `T_{d,k+1}` from W1, W6, W5
//!    at `(d, k)`.
//!
//! At every step the equations are affine in the unknowns. The matrix is read off by evaluating
//! the coefficient with each unknown set to `0` or `1`, so the solver consumes the function forms
//! directly. In step 4 the matrix is compared with the closed-form `3 × 3` matrix whose
//! determinant is `(2d − 3)(k + 2d + 1)d`.

use super::equations::{claim2_determinant, coefficient, printed_claim2_matrix, Missing, Wdvv};
use super::table::{initial_conditions, CoeffTable, Pot};
use crate::coeff::Gq;
use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use num_rational::BigRational;
use num_traits::Zero;

type Unknown = (Pot, i64, i64);
type Equation = (Wdvv, i64, i64);

fn missing(m: Missing, eq: Equation) -> Error {
    Error::Verification(format!(
        "{} at (d,k) = ({},{}) needs {}_{{{},{}}} which is not yet determined",
        eq.0, eq.1, eq.2, m.pot, m.d, m.k
    ))
}

/// The affine system `A x + b = 0` of `eqs` in `unknowns`.
fn linearize(table: &mut CoeffTable, unknowns: &[Unknown], eqs: &[Equation]) -> Result<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    for &(p, d, k) in unknowns {
        table.set(p, d, k, BigRational::zero());
    }
    let eval = |table: &CoeffTable| -> Result<Vec<BigRational>> {
        eqs.iter().map(|&e| coefficient(table, e.0, e.1, e.2).map_err(|m| missing(m, e))).collect()
    };
    let b = eval(table);
    let mut cols = Vec::with_capacity(unknowns.len());
    let result = b.and_then(|b| {
        for &(p, d, k) in unknowns {
            table.set(p, d, k, BigRational::from_integer(1.into()));
            let v = eval(table)?;
            table.set(p, d, k, BigRational::zero());
            cols.push(v.into_iter().zip(&b).map(|(x, b0)| x - b0).collect::<Vec<_>>());
        }
        Ok(b)
    });
    for &(p, d, k) in unknowns {
        table.remove(p, d, k);
    }
    let b = result?;
    let a = (0..eqs.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok((a, b))
}

fn to_gq(m: &[Vec<BigRational>]) -> Vec<Vec<Gq>> {
    m.iter().map(|r| r.iter().map(|x| Gq::from_rational(x.clone())).collect()).collect()
}

/// Solves one step and stores the unknowns.
fn solve_step(table: &mut CoeffTable, unknowns: &[Unknown], eqs: &[Equation]) -> Result<Vec<Vec<BigRational>>> {
    let (a, b) = linearize(table, unknowns, eqs)?;
    let rhs: Vec<Gq> = b.iter().map(|x| -Gq::from_rational(x.clone())).collect();
    match linalg::solve(&to_gq(&a), &rhs, unknowns.len()) {
        Solution::Unique(x) => {
            for (&(p, d, k), v) in unknowns.iter().zip(x) {
                table.set(p, d, k, v.re);
            }
            Ok(a)
        }
        Solution::Inconsistent => Err(Error::Verification(format!("inconsistent equations {eqs:?} for {unknowns:?}"))),
        Solution::Underdetermined { .. } => {
            let (_, d, k) = eqs[0];
            Err(Error::DegeneratePivot { d, k })
        }
    }
}

/// Checks that each generated row is a nonzero multiple of the closed-form row.
fn proportional(gen: &[BigRational], printed: &[BigRational]) -> bool {
    let Some(i) = printed.iter().position(|x| !x.is_zero()) else { return false };
    if gen[i].is_zero() {
        return false;
    }
    let lambda = &gen[i] / &printed[i];
    gen.iter().zip(printed).all(|(g, p)| *g == &lambda * p)
}

/// One step of the main induction at `(d, k)`.
fn claim2_step(table: &mut CoeffTable, d: i64, k: i64) -> Result<()> {
    let expected = claim2_determinant(d, k);
    if expected.is_zero() {
        return Err(Error::DegeneratePivot { d, k });
    }
    let unknowns = [(Pot::H, d, k), (Pot::I, d, k), (Pot::T, d, k + 1)];
    let eqs = [(Wdvv::W1, d, k), (Wdvv::W6, d, k), (Wdvv::W5, d, k)];
    let (a, _) = linearize(table, &unknowns, &eqs)?;
    let printed = printed_claim2_matrix(d, k);
    for (row, p) in a.iter().zip(&printed) {
        if !proportional(row, p) {
            return Err(Error::Verification(format!("system at (d,k) = ({d},{k}) differs from the closed-form matrix")));
        }
    }
    let det = linalg::det(&to_gq(&printed.iter().map(|r| r.to_vec()).collect::<Vec<_>>()));
    if det != Gq::from_rational(expected) {
        return Err(Error::Verification(format!("determinant at (d,k) = ({d},{k}) is {det}")));
    }
    solve_step(table, &unknowns, &eqs)?;
    Ok(())
}

/// Solves for all `H_{d,k}`, `I_{d,k}`, `T_{d,k}` with `d ≤ q_max` and
/// `k ≤ k_window + 2(q_max − d)`.
pub fn solve(q_max: i64, k_window: i64) -> Result<CoeffTable> {
    if q_max < 1 {
        return Err(Error::InvalidArgument(format!("q_max must be at least 1, got {q_max}")));
    }
    if k_window < 2 * q_max {
        return Err(Error::InvalidArgument(format!("k_window must be at least 2·q_max = {}, got {k_window}", 2 * q_max)));
    }
    let mut t = initial_conditions(q_max, k_window);
    solve_step(&mut t, &[(Pot::I, 0, 0)], &[(Wdvv::W2, 0, 0)])?;
    let h = determine_h00(&t)?;
    t.set(Pot::H, 0, 0, h);
    let k_top = t.k_max(0);
    claim1(&mut t, k_top)?;
    for d in 1..=q_max {
        for k in -2 * d..=t.k_max(d) {
            claim2_step(&mut t, d, k)?;
        }
    }
    Ok(t)
}

/// `H_{0,k}`, `I_{0,k}` for `1 ≤ k ≤ k_top` from W3 and W4.
fn claim1(t: &mut CoeffTable, k_top: i64) -> Result<()> {
    for k in 1..=k_top {
        solve_step(t, &[(Pot::H, 0, k), (Pot::I, 0, k)], &[(Wdvv::W3, 0, k), (Wdvv::W4, 0, k)])?;
    }
    Ok(())
}

/// Residuals of W1–W6 at `(0, k)` for `−1 ≤ k ≤ 2` and at `(1, k)` for `−2 ≤ k ≤ 0` when
/// `H_{0,0} = h`.
fn seed_residuals(base: &CoeffTable, h: &BigRational) -> Result<Vec<BigRational>> {
    let mut t = base.clone();
    t.set(Pot::H, 0, 0, h.clone());
    claim2_step(&mut t, 1, -2)?;
    claim1(&mut t, 2)?;
    claim2_step(&mut t, 1, -1)?;
    claim2_step(&mut t, 1, 0)?;
    let points = [(0, -1), (0, 0), (0, 1), (0, 2), (1, -2), (1, -1), (1, 0)];
    let mut out = Vec::new();
    for (d, k) in points {
        for eq in Wdvv::ALL {
            out.push(coefficient(&t, eq, d, k).map_err(|m| missing(m, (eq, d, k)))?);
        }
    }
    Ok(out)
}

/// Number of sample points; the residuals have degree at most 3 in `h`.
const SAMPLES: i64 = 7;

/// The values of `H_{0,0}` compatible with W1–W6 near `(1, −2)`, in increasing order.
pub fn h00_candidates(q_max: i64, k_window: i64) -> Result<Vec<BigRational>> {
    let mut t = initial_conditions(q_max, k_window);
    solve_step(&mut t, &[(Pot::I, 0, 0)], &[(Wdvv::W2, 0, 0)])?;
    h00_roots(&t)
}

fn h00_roots(base: &CoeffTable) -> Result<Vec<BigRational>> {
    let xs: Vec<BigRational> = (0..SAMPLES).map(|x| BigRational::from_integer(x.into())).collect();
    let samples: Vec<Vec<BigRational>> = xs.iter().map(|x| seed_residuals(base, x)).collect::<Result<_>>()?;
    let mut g: Vec<BigRational> = Vec::new();
    for e in 0..samples[0].len() {
        let ys: Vec<BigRational> = samples.iter().map(|s| s[e].clone()).collect();
        g = poly::gcd(&g, &poly::interpolate(&xs, &ys));
    }
    if g.is_empty() {
        return Err(Error::Underdetermined("H_{0,0} is not fixed by the equations near (1,-2)".into()));
    }
    poly::rational_roots(&g)
}

fn determine_h00(base: &CoeffTable) -> Result<BigRational> {
    let roots = h00_roots(base)?;
    let nonzero: Vec<BigRational> = roots.into_iter().filter(|r| !r.is_zero()).collect();
    match nonzero.as_slice() {
        [h] => Ok(h.clone()),
        [] => Err(Error::Verification("no nonzero rational value of H_{0,0} solves the equations".into())),
        _ => Err(Error::Underdetermined(format!("several nonzero candidates for H_{{0,0}}: {nonzero:?}"))),
    }
}

/// Dense univariate polynomials over `ℚ`, lowest degree first, with no trailing zeros.
mod poly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    /// The polynomial of degree `< xs.len()` through the points `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
        let n = xs.len();
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            // Basis polynomial ∏_{j≠i} (x − x_j)/(x_i − x_j).
            let mut basis = vec![BigRational::from_integer(1.into())];
            let mut denom = BigRational::from_integer(1.into());
            for j in (0..n).filter(|&j| j != i) {
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * &xs[j];
                }
                basis = next;
                denom *= &xs[i] - &xs[j];
            }
            let f = &ys[i] / denom;
            for (o, c) in out.iter_mut().zip(basis) {
                *o += c * &f;
            }
        }
        trim(out)
    }

    fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut r = a.to_vec();
        let lead = b.last().unwrap();
        while r.len() >= b.len() {
            let f = r.last().unwrap() / lead;
            let shift = r.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                r[k + shift] -= c * &f;
            }
            r.pop();
            r = trim(r);
        }
        r
    }

    /// The distinct rational roots of a polynomial with rational coefficients, in increasing order.
    pub fn rational_roots(p: &[BigRational]) -> crate::error::Result<Vec<BigRational>> {
        use num_integer::Integer;
        use num_traits::{One, Signed};
        let p = trim(p.to_vec());
        // Clear denominators to get an integer polynomial.
        let l = p.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut roots = Vec::new();
        let zeros = ints.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push(BigRational::zero());
        }
        let ints = &ints[zeros..];
        let (Some(c0), Some(cn)) = (ints.first(), ints.last()) else { return Ok(roots) };
        let divs = |n: &num_bigint::BigInt| -> crate::error::Result<Vec<u64>> {
            let n = n.abs().to_string().parse::<u64>().map_err(|_| {
                crate::error::Error::InvalidArgument("coefficient too large for root search".into())
            })?;
            Ok(crate::arith::divisors(n))
        };
        for a in divs(c0)? {
            for b in divs(cn)? {
                for sign in [1i64, -1] {
                    let x = BigRational::new((sign * a as i64).into(), (b as i64).into());
                    let v = p.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c);
                    if v.is_zero() && !roots.contains(&x) {
                        roots.push(x);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Monic greatest common divisor; the gcd with the zero polynomial is the other argument.
    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.last().cloned() {
            for c in a.iter_mut() {
                *c /= &lead;
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn first_values() {
        let t = solve(2, 4).unwrap();
        assert_eq!(t.get(Pot::I, 0, 0), Some(rat(2, 1)));
        assert_eq!(t.get(Pot::H, 0, 0), Some(rat(2, 1)));
        assert_eq!(t.get(Pot::H, 0, 1), Some(rat(1, 1)));
        assert_eq!(t.get(Pot::H, 0, 2), Some(rat(0, 1)));
        assert_eq!(t.get(Pot::T, 1, -1), Some(rat(8, 1)));
    }

    #[test]
    fn two_candidate_seeds() {
        assert_eq!(h00_candidates(1, 2).unwrap(), vec![rat(0, 1), rat(2, 1)]);
    }

    #[test]
    fn claim2_determinant_example() {
        assert_eq!(claim2_determinant(1, -1), rat(-2, 1));
        let m = printed_claim2_matrix(1, -1);
        let det = linalg::det(&to_gq(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()));
        assert_eq!(det, Gq::from_int(-2));
    }

    #[test]
    fn enlarging_the_window_keeps_entries() {
        let small = solve(2, 4).unwrap();
        let big = solve(3, 6).unwrap();
        for pot in [Pot::H, Pot::I, Pot::T] {
            for (&(d, k), v) in small.entries(pot) {
                assert_eq!(big.get(pot, d, k).as_ref(), Some(v), "{pot}_{{{d},{k}}}");
            }
        }
    }

    #[test]
    fn rejects_small_window() {
        assert!(solve(3, 5).is_err());
    }
}
