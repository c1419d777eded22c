//! Verification of a solved table: residuals of W1–W6, the closed forms, the relation between
//! `I` and `H`, the third derivatives of `T` and the `y ↔ y⁻¹` symmetry of `H`.

use super::equations::{coefficient, printed_coefficient, printed_scale, terms, Term, Wdvv};
use super::table::{CoeffTable, Pot};
use crate::arith::{divisors, rat};
use crate::coeff::{Gq, QSeries};
use crate::jacobi::generators::{eisenstein_series, f_series, g_form_series, gn_series, j2n_series};
use crate::report::Report;
use num_rational::BigRational;
use num_traits::Zero;

/// The `q^d y^k` coefficient of a series in `s`, reading `y^k = (−1)^k s^{2k}` and expanding
/// rational rows around `y = 0`.
pub fn y_coeff(x: &QSeries, d: i64, k: i64) -> BigRational {
    let row = x.coeff(d);
    let c = match row.as_laurent() {
        Some(l) => l.coeff(2 * k),
        None => row.expand_s(2 * k.max(0) + 2).coeff(2 * k),
    };
    debug_assert!(c.is_real());
    if k.rem_euclid(2) == 0 {
        c.re
    } else {
        -c.re
    }
}

/// `T_{d,k}` from its closed form:
/// `8Σ y^k/k³ + 12Σ q^{kn}/k³ + 8Σ (y^k + y^{−k})q^{kn}/k³ + 2Σ (y^{2k} + y^{−2k})q^{(2n−1)k}/k³`.
pub fn closed_form_t(d: i64, k: i64) -> BigRational {
    let cube = |m: i64| rat(1, m * m * m);
    if d == 0 {
        return if k >= 1 { cube(k) * rat(8, 1) } else { BigRational::zero() };
    }
    let mut acc = BigRational::zero();
    for m in divisors(d as u64).into_iter().map(|m| m as i64) {
        if k == 0 {
            acc += rat(12, 1) * cube(m);
        }
        if k.abs() == m {
            acc += rat(8, 1) * cube(m);
        }
        if k.abs() == 2 * m && (d / m) % 2 == 1 {
            acc += rat(2, 1) * cube(m);
        }
    }
    acc
}

fn k_range(table: &CoeffTable, pot: Pot, d: i64) -> std::ops::RangeInclusive<i64> {
    CoeffTable::k_min(pot, d)..=table.k_max(d)
}

/// Coefficient-level residuals: each of W1–W6 at every `(d, k)` of the table, in both the
/// function form and the printed coefficient form.
pub fn coefficient_residuals(table: &CoeffTable) -> Report {
    let mut rep = Report::new();
    for eq in Wdvv::ALL {
        let mut first_bad = None;
        let mut form_mismatch = None;
        let mut count = 0usize;
        'outer: for d in 0..=table.q_max {
            for k in -2 * d - 1..=table.k_max(d) {
                let v = match coefficient(table, eq, d, k) {
                    Ok(v) => v,
                    Err(m) => {
                        first_bad = Some(format!("(d,k) = ({d},{k}) needs {}_{{{},{}}}", m.pot, m.d, m.k));
                        break 'outer;
                    }
                };
                count += 1;
                if !v.is_zero() && first_bad.is_none() {
                    first_bad = Some(format!("residual {v} at (d,k) = ({d},{k})"));
                }
                if form_mismatch.is_none() {
                    if let Ok(p) = printed_coefficient(table, eq, d, k) {
                        if v != printed_scale(eq) * p {
                            form_mismatch = Some(format!("(d,k) = ({d},{k})"));
                        }
                    }
                }
            }
        }
        match first_bad {
            None => rep.push(format!("{eq} coefficients vanish"), true, format!("{count} coefficients")),
            Some(msg) => rep.push(format!("{eq} coefficients vanish"), false, msg),
        }
        match form_mismatch {
            None => rep.push(format!("{eq} printed coefficient form agrees"), true, "on the whole table"),
            Some(at) => rep.push(format!("{eq} printed coefficient form agrees"), false, format!("differs at {at}")),
        }
    }
    rep
}

/// `∂_z^a ∂_τ^b T` from the deformed Eisenstein series, for `a + b = 3`.
pub fn t_third_derivative(a: u32, b: u32, q_max: i64) -> QSeries {
    let c = |n: i64, m: i64| Gq::frac(n, m);
    let (j, g) = (b + 1, b + 1);
    let j2 = j2n_series(j, q_max);
    let gs = gn_series(g, q_max);
    match (a, b) {
        (3, 0) => QSeries::constant(crate::coeff::SRat::from_int(-4))
            .add(&j2.scale(&c(-8, 1)))
            .add(&gs.scale(&c(-16, 1)))
            .truncate(q_max),
        (2, 1) => j2.scale(&c(-4, 1)).add(&gs.scale(&c(-8, 1))),
        (1, 2) => j2.scale(&c(-8, 3)).add(&gs.scale(&c(-16, 3))),
        (0, 3) => j2.scale(&c(-2, 1)).add(&gs.scale(&c(-4, 1))).add(&eisenstein_series(2, q_max).scale(&c(1, 20))),
        _ => panic!("only third derivatives of T enter the equations"),
    }
}

/// Evaluates `eq` in function form on the series `h`, `i`, with `T` entering only through
/// its third derivatives.
pub fn function_residual(eq: Wdvv, h: &QSeries, i: &QSeries, q_max: i64) -> QSeries {
    let mut acc = QSeries::zero(q_max);
    for term in terms(eq) {
        let (num, den, x, a, b, t) = match term {
            Term::Lin { num, den, x, a, b } => (num, den, x, a, b, None),
            Term::Bil { num, den, x, a, b, ta, tb } => (num, den, x, a, b, Some((ta, tb))),
        };
        let base = if x == Pot::H { h } else { i };
        let mut v = base.dz_dq(a, b);
        if let Some((ta, tb)) = t {
            v = v.mul(&t_third_derivative(ta, tb, q_max));
        }
        acc = acc.add(&v.scale(&Gq::frac(num, den)));
    }
    acc.truncate(q_max)
}

/// First `(d, k)` at which a residual series is nonzero.
fn first_nonzero(x: &QSeries) -> Option<(i64, i64)> {
    let (d, row) = x.rows().find(|(_, r)| !r.is_zero())?;
    let lead = match row.as_laurent() {
        Some(l) => l.min_exp(),
        None => row.expand_s(64).min_exp(),
    };
    Some((d, lead.map_or(0, |e| e.div_euclid(2))))
}

/// Assembles `H` and `I` from the table, trades `T` for deformed Eisenstein series and evaluates
/// W1–W6 through `q^{q_max}`. Coefficient-level residuals are included.
pub fn residual_check(table: &CoeffTable) -> Report {
    let mut rep = Report::new();
    let q_max = table.q_max;
    let h = table.to_series(Pot::H);
    let i = table.to_series(Pot::I);
    for eq in Wdvv::ALL {
        let r = function_residual(eq, &h, &i, q_max);
        match first_nonzero(&r) {
            None => rep.push(format!("{eq} residual"), true, format!("zero through q^{q_max}")),
            Some((d, k)) => rep.push(format!("{eq} residual"), false, format!("first nonzero at (d,k) = ({d},{k})")),
        }
    }
    rep.extend(coefficient_residuals(table));
    rep
}

/// Compares every stored coefficient with `H = F²`, `I = 2G` and the closed form of `T`.
pub fn verify_closed_forms(table: &CoeffTable) -> Report {
    let mut rep = Report::new();
    let q_max = table.q_max;
    let f = f_series(q_max);
    let h_ref = f.mul(&f);
    let i_ref = g_form_series(q_max).scale(&Gq::from_int(2));
    for (pot, name, reference) in [(Pot::H, "H = F^2", Some(&h_ref)), (Pot::I, "I = 2G", Some(&i_ref)), (Pot::T, "T closed form", None)] {
        let mut bad = None;
        let mut count = 0usize;
        'outer: for d in 0..=q_max {
            let top = if pot == Pot::T { table.k_max(d) + 1 } else { table.k_max(d) };
            for k in CoeffTable::k_min(pot, d)..=top {
                let Some(v) = table.get(pot, d, k) else {
                    bad = Some(format!("{pot}_{{{d},{k}}} not solved"));
                    break 'outer;
                };
                let expected = match reference {
                    Some(s) => y_coeff(s, d, k),
                    None => closed_form_t(d, k),
                };
                count += 1;
                if v != expected {
                    bad = Some(format!("{pot}_{{{d},{k}}} = {v}, closed form gives {expected}"));
                    break 'outer;
                }
            }
        }
        match bad {
            None => rep.push(name, true, format!("{count} coefficients equal")),
            Some(msg) => rep.push(name, false, msg),
        }
    }
    rep
}

/// `I = 4∂_τH − ∂_z²H + E₂H` on the table.
pub fn verify_i_to_h(table: &CoeffTable) -> Report {
    let mut rep = Report::new();
    let e2 = eisenstein_series(1, table.q_max);
    let e2c: Vec<BigRational> = (0..=table.q_max).map(|n| e2.coeff(n).as_constant().unwrap().re).collect();
    let mut bad = None;
    'outer: for d in 0..=table.q_max {
        for k in k_range(table, Pot::I, d) {
            let h = |l: i64| table.get(Pot::H, l, k).unwrap_or_default();
            let mut rhs = rat(4 * d - k * k, 1) * h(d);
            for l in 0..=d {
                rhs += &e2c[l as usize] * h(d - l);
            }
            let lhs = table.get(Pot::I, d, k).unwrap_or_default();
            if lhs != rhs {
                bad = Some(format!("(d,k) = ({d},{k}): I = {lhs}, right side {rhs}"));
                break 'outer;
            }
        }
    }
    rep.push("I = 4 d_tau H - d_z^2 H + E2 H", bad.is_none(), bad.unwrap_or_else(|| "on the whole table".into()));
    rep
}

/// The four third-derivative relations of `T` on the table.
pub fn verify_t_relations(table: &CoeffTable) -> Report {
    let mut rep = Report::new();
    for (a, b, name) in [
        (3, 0, "d_z^3 T = -4 - 8 J_{2,1} - 16 G_1"),
        (2, 1, "d_z^2 d_tau T = -4 J_{2,2} - 8 G_2"),
        (1, 2, "d_z d_tau^2 T = -8/3 J_{2,3} - 16/3 G_3"),
        (0, 3, "d_tau^3 T = -2 J_{2,4} - 4 G_4 + E4/20"),
    ] {
        let series = t_third_derivative(a, b, table.q_max);
        let mut bad = None;
        'outer: for d in 0..=table.q_max {
            for k in k_range(table, Pot::T, d) {
                let t = table.get(Pot::T, d, k).unwrap_or_default();
                let lhs = t * rat(k.pow(a) * d.pow(b), 1);
                let rhs = y_coeff(&series, d, k);
                if lhs != rhs {
                    bad = Some(format!("(d,k) = ({d},{k}): {lhs} vs {rhs}"));
                    break 'outer;
                }
            }
        }
        rep.push(name, bad.is_none(), bad.unwrap_or_else(|| "on the whole table".into()));
    }
    rep
}

/// `H_{d,k} = H_{d,−k}` on the table.
pub fn verify_symmetry(table: &CoeffTable) -> Report {
    let mut rep = Report::new();
    let mut bad = None;
    'outer: for d in 0..=table.q_max {
        for k in 0..=table.k_max(d) {
            if table.get(Pot::H, d, k) != table.get(Pot::H, d, -k) {
                bad = Some(format!("H_{{{d},{k}}} != H_{{{d},{}}}", -k));
                break 'outer;
            }
        }
    }
    rep.push("H_{d,k} = H_{d,-k}", bad.is_none(), bad.unwrap_or_else(|| "on the whole table".into()));
    rep
}

/// All checks on a solved table.
pub fn verify_all(table: &CoeffTable) -> Report {
    let mut rep = residual_check(table);
    rep.extend(verify_closed_forms(table));
    rep.extend(verify_i_to_h(table));
    rep.extend(verify_t_relations(table));
    rep.extend(verify_symmetry(table));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wdvv::solve;

    #[test]
    fn closed_form_t_values() {
        assert_eq!(closed_form_t(0, 1), rat(8, 1));
        assert_eq!(closed_form_t(0, 2), rat(1, 1));
        assert_eq!(closed_form_t(1, -2), rat(2, 1));
        assert_eq!(closed_form_t(2, -4), rat(1, 4));
        assert_eq!(closed_form_t(1, 0), rat(12, 1));
    }

    #[test]
    fn solved_table_passes_everything() {
        let t = solve(3, 6).unwrap();
        let rep = verify_all(&t);
        assert!(rep.all_ok(), "{rep}");
    }

    #[test]
    fn perturbation_is_detected() {
        let mut t = solve(2, 4).unwrap();
        let h = t.get(Pot::H, 1, 0).unwrap();
        t.set(Pot::H, 1, 0, h + rat(1, 1));
        let rep = residual_check(&t);
        let w1 = rep.checks.iter().find(|c| c.name == "W1 residual").unwrap();
        assert!(!w1.ok);
        assert!(w1.detail.contains("(d,k) = (1,0)"), "{}", w1.detail);
    }

    #[test]
    fn closed_forms_solve_the_equations() {
        let q_max = 3;
        let f = f_series(q_max);
        let h = f.mul(&f);
        let i = g_form_series(q_max).scale(&Gq::from_int(2));
        for eq in Wdvv::ALL {
            assert!(first_nonzero(&function_residual(eq, &h, &i, q_max)).is_none(), "{eq}");
        }
    }
}
