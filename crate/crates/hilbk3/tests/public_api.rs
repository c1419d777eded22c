//! End-to-end checks through the public API: generators, the WDVV table, Fock-space brackets
//! and the assembled Gromov–Witten tables.

use hilbk3::coeff::{Gq, QSeries, SLaurent, SRat};
use hilbk3::fock::nakajima::parse_monomial;
use hilbk3::fock::{ehilb_bracket, Engine, Evaluator, SurfaceModel};
use hilbk3::gw::{genus1_closed_form, hyperelliptic_tables, theorem_series, yau_zaslow, Theorem};
use hilbk3::jacobi::{series, GeneratorName};
use hilbk3::wdvv::{self, Pot};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A Laurent row from `(power of y, integer coefficient)` pairs, using `y = −s²`.
fn y_row(terms: &[(i64, i64)]) -> SRat {
    let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    SRat::from_laurent(SLaurent::from_terms(terms.iter().map(|&(k, c)| (2 * k, Gq::from_int(sign(k) * c)))))
}

fn bracket(q_max: i64, mu: &str, nu: &str) -> QSeries {
    let model = SurfaceModel::k3();
    let mu = parse_monomial(&model, mu).unwrap();
    let nu = parse_monomial(&model, nu).unwrap();
    let engine = Engine::new(model);
    let eval = Evaluator::new(q_max).unwrap();
    ehilb_bracket(&engine, &eval, &mu, &nu).unwrap()
}

fn inv_delta(q_max: i64) -> QSeries {
    series(GeneratorName::Delta, q_max + 2).invert().unwrap()
}

#[test]
fn delta_and_its_inverse() {
    let delta = series(GeneratorName::Delta, 4);
    let c: Vec<SRat> = (1..=4).map(|n| delta.coeff(n)).collect();
    assert_eq!(c, [1, -24, 252, -1472].map(SRat::from_int));
    let n: Vec<BigInt> = yau_zaslow(3);
    assert_eq!(n, [1, 24, 324, 3200].map(BigInt::from));
}

#[test]
fn g_form_rows() {
    let g = series(GeneratorName::GForm, 2);
    assert_eq!(g.coeff(0), SRat::one());
    assert_eq!(g.coeff(1), y_row(&[(-2, 1), (-1, 4), (0, 6), (1, 4), (2, 1)]));
    assert_eq!(g.coeff(2), y_row(&[(-2, 6), (-1, 24), (0, 36), (1, 24), (2, 6)]));
}

#[test]
fn wdvv_initial_values() {
    let t = wdvv::solve(2, 14).unwrap();
    assert_eq!(t.get(Pot::T, 0, 1), Some(rat(8, 1)));
    assert_eq!(t.get(Pot::T, 0, 2), Some(rat(1, 1)));
    assert_eq!(t.get(Pot::T, 1, -2), Some(rat(2, 1)));
    assert_eq!(t.get(Pot::T, 2, -4), Some(rat(1, 4)));
    assert_eq!(t.get(Pot::H, 0, -1), Some(rat(1, 1)));
    assert_eq!(t.get(Pot::H, 0, 0), Some(rat(2, 1)));
    assert_eq!(t.get(Pot::H, 0, 1), Some(rat(1, 1)));
    assert_eq!(t.get(Pot::I, 0, 0), Some(rat(2, 1)));
    assert!(wdvv::verify_all(&t).all_ok());
}

#[test]
fn hilb2_brackets() {
    let q = 3;
    let f = series(GeneratorName::F, q + 2);
    let g = series(GeneratorName::GForm, q + 2);
    let w = inv_delta(q);

    let ff = bracket(q, "p(-1,F) p(-1,F) 1", "p(-1,F) p(-1,F) 1");
    assert!(ff.agrees_through(&f.pow(2).mul(&w), q));

    let a = bracket(q, "p(-2,w) 1", "p(-1,F) p(-1,e) 1");
    assert!(a.agrees_through(&g.dz().scale(&Gq::frac(-1, 2)).mul(&w), q));

    let inc = bracket(q, "p(-1,F) p(-1,F) 1", "p(-1,w) p(-1,e) 1");
    assert!(inc.agrees_through(&f.mul(&f.dq()).mul(&w), q));
}

#[test]
fn assembled_tables() {
    let fibers = theorem_series(Theorem::Fibers(1), 4).unwrap();
    let yz: Vec<BigRational> = (0..=4).map(|h| fibers.get(h, 0)).collect();
    assert_eq!(yz, yau_zaslow(4).into_iter().map(BigRational::from_integer).collect::<Vec<_>>());

    let hyp = hyperelliptic_tables(6, 4).unwrap();
    assert_eq!(hyp.bps(2, 2), rat(1, 1));
    assert_eq!(hyp.bps(2, 3), rat(36, 1));
    assert_eq!(hyp.bps(3, 4), rat(6, 1));
    assert_eq!(hyp.virtual_count(3, 2), rat(-1, 4));
    assert_eq!(hyp.virtual_count(3, 1), rat(0, 1));

    let g1 = genus1_closed_form(1).unwrap();
    assert_eq!(g1.q_min(), -1);
    assert_eq!(g1.coeff(-1), y_row(&[(-1, 3), (0, -48), (1, 3)]));
}
