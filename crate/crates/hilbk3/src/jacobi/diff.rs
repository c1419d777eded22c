//! Differentiation of quasi-Jacobi forms and the identities relating the generators.

use super::form::QuasiJacobiForm;
use super::generators::{eisenstein_series, euler_product, f_series, j1_series, wp_prime_series, wp_series, GeneratorName};
use crate::coeff::{pseries, Gq, QSeries, WSeries};
use crate::error::{Error, Result};
use crate::arith::bernoulli;
use crate::report::Report;

/// Differentiation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// `∂_z = y d/dy`.
    Z,
    /// `∂_τ = q d/dq`.
    Tau,
}

/// Applies `∂_z` or `∂_τ`, updating the grading.
pub fn diff(form: &QuasiJacobiForm, var: Var) -> QuasiJacobiForm {
    match var {
        Var::Z => form.dz(),
        Var::Tau => form.dtau(),
    }
}

/// The series needed for the closure relations, all through `q^{q_max}`.
struct Gens {
    f: QSeries,
    j1: QSeries,
    wp: QSeries,
    wpp: QSeries,
    e2: QSeries,
    e4: QSeries,
}

impl Gens {
    fn new(q_max: i64) -> Self {
        Self {
            f: f_series(q_max),
            j1: j1_series(q_max),
            wp: wp_series(q_max),
            wpp: wp_prime_series(q_max),
            e2: eisenstein_series(1, q_max),
            e4: eisenstein_series(2, q_max),
        }
    }
}

fn c(n: i64, d: i64) -> Gq {
    Gq::frac(n, d)
}

/// Right-hand side of the closure relation for `∂_var(name)`, or `None` if `name` is not one of
/// `F, J₁, ℘, ℘•`.
fn closure_rhs(g: &Gens, name: GeneratorName, var: Var) -> Option<QSeries> {
    use GeneratorName::*;
    let (f, j1, wp, wpp, e2, e4) = (&g.f, &g.j1, &g.wp, &g.wpp, &g.e2, &g.e4);
    Some(match (name, var) {
        (F, Var::Tau) => {
            let inner = j1.mul(j1).scale(&c(1, 2)).sub(&wp.scale(&c(1, 2))).sub(&e2.scale(&c(1, 12)));
            f.mul(&inner)
        }
        (F, Var::Z) => j1.mul(f),
        (J1, Var::Tau) => j1.mul(&e2.scale(&c(1, 12)).sub(wp)).sub(&wpp.scale(&c(1, 2))),
        (J1, Var::Z) => wp.neg().add(&e2.scale(&c(1, 12))),
        (Wp, Var::Tau) => wp
            .mul(wp)
            .scale(&c(2, 1))
            .add(&wp.mul(e2).scale(&c(1, 6)))
            .add(&j1.mul(wpp))
            .sub(&e4.scale(&c(1, 36))),
        (Wp, Var::Z) => wpp.clone(),
        (WpPrime, Var::Tau) => j1
            .mul(&wp.mul(wp))
            .scale(&c(6, 1))
            .sub(&j1.mul(e4).scale(&c(1, 24)))
            .add(&wp.mul(wpp).scale(&c(3, 1)))
            .add(&e2.mul(wpp).scale(&c(1, 4))),
        (WpPrime, Var::Z) => wp.mul(wp).scale(&c(6, 1)).sub(&e4.scale(&c(1, 24))),
        _ => return None,
    })
}

fn base(g: &Gens, name: GeneratorName) -> Option<&QSeries> {
    use GeneratorName::*;
    match name {
        F => Some(&g.f),
        J1 => Some(&g.j1),
        Wp => Some(&g.wp),
        WpPrime => Some(&g.wpp),
        _ => None,
    }
}

/// Differentiates a generator and verifies its closure relation through `q^{q_max}`.
pub fn diff_generator(name: GeneratorName, var: Var, q_max: i64) -> Result<QuasiJacobiForm> {
    let form = super::generators::generator(name, q_max)?;
    let out = diff(&form, var);
    let g = Gens::new(q_max);
    if let Some(rhs) = closure_rhs(&g, name, var) {
        if !out.series.agrees_through(&rhs, q_max) {
            return Err(Error::Verification(format!("closure relation for d/d{var:?} {name} fails")));
        }
    }
    Ok(out)
}

/// The eight closure relations, the heat equation and the Weierstrass cubic through `q^{q_max}`.
pub fn verify_differential_identities(q_max: i64) -> Report {
    use GeneratorName::*;
    let g = Gens::new(q_max);
    let mut rep = Report::new();
    for name in [F, J1, Wp, WpPrime] {
        for var in [Var::Tau, Var::Z] {
            let x = base(&g, name).unwrap();
            let lhs = match var {
                Var::Z => x.dz(),
                Var::Tau => x.dq(),
            };
            let rhs = closure_rhs(&g, name, var).unwrap();
            let v = if var == Var::Z { "z" } else { "tau" };
            rep.push_series_eq(format!("d_{v} {name}"), &lhs, &rhs, q_max);
        }
    }
    // ∂_τF = ½∂_z²F − (1/8)E₂F.
    let heat_rhs = g.f.dz().dz().scale(&c(1, 2)).sub(&g.e2.mul(&g.f).scale(&c(1, 8)));
    rep.push_series_eq("heat equation", &g.f.dq(), &heat_rhs, q_max);
    let e6 = e6_from_cubic(&g);
    rep.push_series_eq("Weierstrass cubic (E6 = Eisenstein E6)", &e6, &eisenstein_series(3, q_max), q_max);
    rep.push("E6 from cubic is s-free", e6.rows().all(|(_, r)| r.is_constant()), "all rows constant in s");
    rep
}

/// `E₆ = 216((℘•)² − 4℘³ + (1/12)E₄℘)`.
fn e6_from_cubic(g: &Gens) -> QSeries {
    let wp3 = g.wp.mul(&g.wp).mul(&g.wp);
    g.wpp.mul(&g.wpp).sub(&wp3.scale(&c(4, 1))).add(&g.e4.mul(&g.wp).scale(&c(1, 12))).scale(&c(216, 1))
}

/// `E₆` defined through the Weierstrass cubic.
pub fn e6_via_weierstrass(q_max: i64) -> QSeries {
    e6_from_cubic(&Gens::new(q_max))
}

/// `F(1/2, τ)`: evaluating at `s = i` (so `y = 1`, `y^{1/2} = 1`) gives `2η(2τ)²/η(τ)⁴`.
pub fn verify_half_period(q_max: i64) -> Report {
    let mut rep = Report::new();
    let f_half = f_series(q_max).eval_s(&Gq::i()).expect("F is a Laurent polynomial in s");
    let e = euler_product(q_max);
    let e2 = euler_product(q_max / 2 + 1).subs_q_power(2).truncate(q_max);
    let rhs = e2.mul(&e2).mul(&e.pow(4).invert().unwrap()).scale(&c(2, 1));
    rep.push_series_eq("F(1/2, tau) = 2 eta(2tau)^2/eta(tau)^4", &f_half, &rhs, q_max);
    rep
}

/// `F` in the variable `u = 2πz`:
/// `u · exp(Σ_{k≥1} (−1)^k B_{2k}/(2k (2k)!) E_{2k}(τ) u^{2k})` through `u^{u_order}`.
pub fn f_u_expansion(q_max: i64, u_order: i64) -> Result<WSeries> {
    if u_order < 1 {
        return Err(Error::InvalidArgument("u_order must be at least 1".into()));
    }
    let n = u_order as usize; // exponent series through u^{u_order − 1}
    // f = Σ_k a_k u^{2k}, coefficients are q-series.
    let mut f: Vec<QSeries> = vec![QSeries::exact_zero(); n];
    for k in 1.. {
        let e = 2 * k;
        if e >= n {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let b = bernoulli(e);
        let fact = crate::arith::factorial(e as u64);
        let coef = Gq::from_rational(
            b * num_rational::BigRational::new(sign.into(), num_bigint::BigInt::from(e) * fact),
        );
        f[e] = eisenstein_series(k as u32, q_max).scale(&coef);
    }
    // g = exp(f) via g_m = (1/m) Σ_{j=1}^{m} j f_j g_{m−j}.
    let mut g: Vec<QSeries> = Vec::with_capacity(n);
    g.push(QSeries::one());
    for m in 1..n {
        let mut acc = QSeries::exact_zero();
        for j in 1..=m {
            if f[j].is_zero() || g[m - j].is_zero() {
                continue;
            }
            acc = acc.add(&f[j].mul(&g[m - j]).scale(&Gq::from_int(j as i64)));
        }
        g.push(acc.scale(&Gq::frac(1, m as i64)));
    }
    let mut coeffs = vec![QSeries::zero(q_max)];
    coeffs.extend(g.into_iter().map(|x| x.truncate(q_max)));
    Ok(WSeries::new(0, u_order, coeffs))
}

/// `F` in `u` obtained from its `s`-expansion: `s = e^{w/2}` with `w = iu`.
pub fn f_u_via_substitution(q_max: i64, u_order: i64) -> WSeries {
    f_series(q_max).substitute_w(u_order).rescale(&Gq::i())
}

/// Taylor coefficients of `2 sin(u/2)` through `u^{n}`.
pub fn two_sin_half(n: usize) -> Vec<Gq> {
    let e = pseries::exp_linear(&Gq::frac(1, 2), n + 1);
    (0..=n)
        .map(|k| {
            // 2 sin(u/2) = Σ_{k odd} 2 (−1)^{(k−1)/2} (1/2)^k u^k / k!.
            if k % 2 == 0 {
                Gq::zero()
            } else {
                let sign = if (k / 2) % 2 == 0 { 2 } else { -2 };
                &e[k] * &Gq::from_int(sign)
            }
        })
        .collect()
}

/// Checks that the `q⁰` part of [`f_u_expansion`] is `2 sin(u/2)` and that the exponential
/// form agrees with the `s`-expansion under `w = iu`.
pub fn verify_f_u_expansion(q_max: i64, u_order: i64) -> Report {
    let mut rep = Report::new();
    let fu = match f_u_expansion(q_max, u_order) {
        Ok(x) => x,
        Err(e) => {
            rep.push("f_u_expansion", false, e.to_string());
            return rep;
        }
    };
    let sin = two_sin_half(u_order as usize);
    let q0_ok = (0..=u_order).all(|k| fu.coeff(k).coeff(0).as_constant() == Some(sin[k as usize].clone()));
    rep.push("q^0 part of F(u) equals 2 sin(u/2)", q0_ok, format!("through u^{u_order}"));
    let sub = f_u_via_substitution(q_max, u_order);
    match fu.eq_to(&sub) {
        Ok(()) => rep.push("exponential form equals s-substitution with w = iu", true, format!("through u^{u_order}")),
        Err((k, n)) => rep.push("exponential form equals s-substitution with w = iu", false, format!("differs at u^{k} q^{n}")),
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_heat_and_cubic() {
        let rep = verify_differential_identities(6);
        assert!(rep.all_ok(), "{rep}");
    }

    #[test]
    fn half_period() {
        let rep = verify_half_period(8);
        assert!(rep.all_ok(), "{rep}");
    }

    #[test]
    fn u_expansion() {
        let rep = verify_f_u_expansion(4, 7);
        assert!(rep.all_ok(), "{rep}");
        let s = two_sin_half(5);
        assert_eq!(s[1], Gq::one());
        assert_eq!(s[3], Gq::frac(-1, 24));
        assert_eq!(s[5], Gq::frac(1, 1920));
    }

    #[test]
    fn grading_under_differentiation() {
        let j1 = diff_generator(GeneratorName::J1, Var::Z, 4).unwrap();
        assert_eq!((j1.weight(), j1.pole_order), (Some(2), 2));
        let f = diff_generator(GeneratorName::F, Var::Tau, 4).unwrap();
        assert_eq!(f.weight(), Some(1));
    }
}
