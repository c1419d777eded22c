//! The theta function with characteristics of the `D₄` lattice.
//!
//! With Gram matrix `M` and characteristic `α = 2e₁ + e₂ + e₃ + e₄` one has `Mα = e₁`,
//! `⟨α, α⟩ = 2` and `⟨x + α/2, x + α/2⟩ = ⟨x, x⟩ + x₁ + 1/2`. Both series below therefore carry
//! the prefactor `q^{1/2}` and are returned without it.

use super::generators::{eta_product, theta1_series};
use crate::arith::rat;
use crate::coeff::{Gq, QSeries, SLaurent, SRat};
use crate::report::Report;
use rayon::prelude::*;

/// Gram matrix of `D₄`.
pub const D4_GRAM: [[i64; 4]; 4] = [[2, -1, -1, -1], [-1, 2, 0, 0], [-1, 0, 2, 0], [-1, 0, 0, 2]];

/// The characteristic vector `α`.
pub const D4_ALPHA: [i64; 4] = [2, 1, 1, 1];

fn quad(x: &[i64; 4]) -> i64 {
    let mut acc = 0;
    for i in 0..4 {
        for j in 0..4 {
            acc += x[i] * D4_GRAM[i][j] * x[j];
        }
    }
    acc
}

/// All `x ∈ ℤ⁴` with `⟨x, x⟩ + x₁ ≤ n_max`, paired with that value and `(Mx)₁`.
///
/// The smallest eigenvalue of `M` is `2 − √3 > 1/4`, so `|x + α/2|² < 4(n_max + 1)` bounds the
/// search box.
fn lattice_points(n_max: i64) -> Vec<(i64, i64)> {
    let r = ((4 * (n_max + 1)) as f64).sqrt().ceil() as i64 + 2;
    let xs: Vec<i64> = (-r..=r).collect();
    xs.par_iter()
        .flat_map_iter(|&x0| {
            let mut out = Vec::new();
            for x1 in -r..=r {
                for x2 in -r..=r {
                    for x3 in -r..=r {
                        let x = [x0, x1, x2, x3];
                        let n = quad(&x) + x0;
                        if n <= n_max {
                            let mx1 = 2 * x0 - x1 - x2 - x3;
                            out.push((n, mx1));
                        }
                    }
                }
            }
            out
        })
        .collect()
}

/// `Θ(z, τ)/q^{1/2}` through `q^{q_max}`.
///
/// The point `x` contributes `exp(−2πi(z + 1/2)(n + 1/2)) q^{⟨x,x⟩ + x₁}` with `n = (Mx)₁`,
/// which is `−i(−1)^n s^{−2n−1}`.
pub fn theta_d4(q_max: i64) -> QSeries {
    let mut rows: Vec<Vec<(i64, Gq)>> = vec![Vec::new(); q_max as usize + 1];
    for (e, n) in lattice_points(q_max) {
        let c = if n.rem_euclid(2) == 0 { -Gq::i() } else { Gq::i() };
        rows[e as usize].push((-2 * n - 1, c));
    }
    let rows = rows.into_iter().map(|t| SRat::from_laurent(SLaurent::from_terms(t))).collect();
    QSeries::from_rows(0, q_max, rows)
}

/// `Σ_x q^{⟨x + α/2, x + α/2⟩} / q^{1/2}` through `q^{q_max}`.
pub fn d4_lattice_sum(q_max: i64) -> QSeries {
    let mut c = vec![0i64; q_max as usize + 1];
    for (e, _) in lattice_points(q_max) {
        c[e as usize] += 1;
    }
    QSeries::from_scalars(0, q_max, c.into_iter().map(Gq::from_int).collect())
}

/// Checks `Θ = −θ₁ η(2τ)⁶/η(τ)³`, the lattice sum `= 2η(2τ)⁸/η(τ)⁴` and `Θ(0, τ) = 0` through
/// `q^{q_max}` (all prefactors equal `q^{1/2}` and are divided out).
pub fn verify_theta_identities(q_max: i64) -> Report {
    let mut rep = Report::new();
    let theta = theta_d4(q_max);
    let (eta_quot, off) = eta_product(&[(6, 2), (-3, 1)], q_max);
    debug_assert_eq!(off + rat(1, 8), rat(1, 2));
    let rhs = theta1_series(q_max).mul(&eta_quot).neg().truncate(q_max);
    rep.push_series_eq("Theta_D4 = -theta1 eta(2tau)^6/eta(tau)^3", &theta, &rhs, q_max);

    let (eta8, off8) = eta_product(&[(8, 2), (-4, 1)], q_max);
    debug_assert_eq!(off8, rat(1, 2));
    rep.push_series_eq(
        "D4 lattice sum = 2 eta(2tau)^8/eta(tau)^4",
        &d4_lattice_sum(q_max),
        &eta8.scale(&Gq::from_int(2)),
        q_max,
    );

    let at_zero = theta.eval_s(&Gq::one()).expect("Theta_D4 rows are Laurent polynomials");
    let zero_rows: Vec<i64> = at_zero.rows().filter(|(_, r)| !r.is_zero()).map(|(n, _)| n).collect();
    rep.push(
        "Theta_D4(0, tau) = 0",
        zero_rows.is_empty(),
        if zero_rows.is_empty() { format!("vanishes through q^{q_max}") } else { format!("nonzero at q^{zero_rows:?}") },
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_identities_through_q8() {
        let rep = verify_theta_identities(8);
        assert!(rep.all_ok(), "{rep}");
    }

    #[test]
    fn lattice_sum_leading_terms() {
        // 2η(2τ)⁸/η(τ)⁴ / q^{1/2} = 2 + 8q + 24q² + …
        let s = d4_lattice_sum(2);
        assert_eq!(s.coeff(0).as_constant(), Some(Gq::from_int(2)));
        assert_eq!(s.coeff(1).as_constant(), Some(Gq::from_int(8)));
    }
}
