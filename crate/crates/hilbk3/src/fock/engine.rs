//! Matrix elements `⟨μ | E^(r) ν⟩` of the quantum operators.
//!
//! `E^(r)` is determined by `⟨1 | E^(r) 1⟩ = δ_{0r}/(F²Δ)` and the commutator
//! `[𝔭_m(γ), E^(r)] = Σ_ℓ (ℓ/m)^{k(γ)} :𝔭_ℓ(γ) E^(r+m−ℓ): φ_{m,ℓ}`, where the normal ordering
//! puts `𝔭_ℓ` on the left for `ℓ ≤ 0` and on the right for `ℓ > 0`. The operator is not linear
//! over `q`, because `𝔭₀` acts on scalars through `q d/dq`. A matrix element is therefore kept
//! symbolically as a sum of atoms `(y d/dy)^a (q d/dq)^b (f · ∏ φ · 1/(F²Δ))`, where `f` is the
//! scalar sitting on `ν`. Multiplying `f` by `φ` appends to the product, and `𝔭₀` raises `b`.

use super::model::SurfaceModel;
use super::nakajima::{FockVector, NakMonomial};
use super::phi::{phi_key, PhiTable};
use crate::arith::{binomial, rat};
use crate::coeff::{Gq, QSeries, SRat};
use crate::error::{Error, Result};
use crate::jacobi::{series, GeneratorName};
use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::Mutex;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// One atom `(y d/dy)^dy (q d/dq)^dq (∏ φ_{phis} / (F²Δ))`; `phis` are sorted base indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    /// Sorted indices into the base list of structure series.
    pub phis: Vec<u8>,
    /// Power of `q d/dq`.
    pub dq: u8,
    /// Power of `y d/dy`.
    pub dy: u8,
}

impl Atom {
    /// The atom `1/(F²Δ)`.
    pub fn unit() -> Self {
        Self { phis: Vec::new(), dq: 0, dy: 0 }
    }
}

/// A rational combination of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Elem {
    terms: BTreeMap<Atom, BigRational>,
}

impl Elem {
    /// The zero element.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1/(F²Δ)`.
    pub fn unit() -> Self {
        let mut e = Self::zero();
        e.add_term(Atom::unit(), BigRational::one());
        e
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(atom, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &BigRational)> {
        self.terms.iter()
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True if there are no atoms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · atom`.
    pub fn add_term(&mut self, a: Atom, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(a) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · o`.
    pub fn add_scaled(&mut self, o: &Self, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (a, v) in &o.terms {
            self.add_term(a.clone(), v * c);
        }
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &BigRational::one());
        out
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &-BigRational::one());
        out
    }

    /// Multiplication by a rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Multiplies the scalar on the input by the base entry `φ_idx`.
    pub fn mul_phi(&self, idx: u8) -> Self {
        let mut out = Self::zero();
        for (a, v) in &self.terms {
            let mut phis = a.phis.clone();
            let pos = phis.partition_point(|x| *x < idx);
            phis.insert(pos, idx);
            out.add_term(Atom { phis, ..*a }, v.clone());
        }
        out
    }

    /// Applies `a + b · q d/dq` on the output.
    pub fn p0(&self, a: &BigRational, b: &BigRational) -> Self {
        let mut out = Self::zero();
        for (atom, v) in &self.terms {
            out.add_term(atom.clone(), v * a);
            if !b.is_zero() {
                out.add_term(Atom { dq: atom.dq + 1, ..atom.clone() }, v * b);
            }
        }
        out
    }

    /// Applies `y d/dy` on the output.
    pub fn dy(&self) -> Self {
        let mut out = Self::zero();
        for (atom, v) in &self.terms {
            out.add_term(Atom { dy: atom.dy + 1, ..atom.clone() }, v.clone());
        }
        out
    }

    /// `G^d · 1/(F²Δ)` with `G = φ_{1,1} + 1` expanded binomially.
    pub fn g_power(d: u32) -> Self {
        let idx = super::phi::base_index(1, 1).expect("base pair") as u8;
        let mut out = Self::zero();
        for j in 0..=d {
            out.add_term(
                Atom { phis: vec![idx; j as usize], dq: 0, dy: 0 },
                BigRational::from_integer(binomial(u64::from(d), u64::from(j))),
            );
        }
        out
    }
}

/// Which side of the matrix element the recursion peels first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Peel a creator off `ν`, reaching the vacuum on the right first.
    PeelRight,
    /// Peel a creator off `μ`, reaching the vacuum on the left first.
    PeelLeft,
}

type Key = (i64, NakMonomial, NakMonomial);

/// Memoized symbolic matrix elements over a fixed surface model.
pub struct Engine {
    model: Arc<SurfaceModel>,
    memo: [Mutex<HashMap<Key, Arc<Elem>>>; 2],
}

/// `(ℓ/m)^{k}` for `k ∈ {−1, 0, 1}`.
fn k_factor(l: i64, m: i64, k: i32) -> BigRational {
    match k {
        0 => BigRational::one(),
        1 => rat(l, m),
        _ => rat(m, l),
    }
}

impl Engine {
    /// An engine with empty memo tables.
    pub fn new(model: SurfaceModel) -> Self {
        Self::shared(Arc::new(model))
    }

    /// An engine over a shared model.
    pub fn shared(model: Arc<SurfaceModel>) -> Self {
        Self { model, memo: [Mutex::new(HashMap::new()), Mutex::new(HashMap::new())] }
    }

    /// The surface model.
    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    /// Number of memoized entries for a strategy.
    pub fn memo_len(&self, strategy: Strategy) -> usize {
        self.memo[strategy as usize].lock().len()
    }

    /// `⟨μ | E^(r) ν⟩` as atoms, with the default strategy.
    pub fn element(&self, r: i64, mu: &NakMonomial, nu: &NakMonomial) -> Result<Arc<Elem>> {
        self.element_with(Strategy::PeelRight, r, mu, nu)
    }

    /// `⟨μ | E^(r) ν⟩` as atoms.
    pub fn element_with(&self, st: Strategy, r: i64, mu: &NakMonomial, nu: &NakMonomial) -> Result<Arc<Elem>> {
        let m = &*self.model;
        if mu.energy() != nu.energy() - r || mu.k_grading(m) + nu.k_grading(m) != 0 {
            return Ok(Arc::new(Elem::zero()));
        }
        if mu.is_vacuum() && nu.is_vacuum() {
            return Ok(Arc::new(if r == 0 { Elem::unit() } else { Elem::zero() }));
        }
        let key = (r, mu.clone(), nu.clone());
        if let Some(e) = self.memo[st as usize].lock().get(&key) {
            return Ok(e.clone());
        }
        let peel_right = match st {
            Strategy::PeelRight => !nu.is_vacuum(),
            Strategy::PeelLeft => mu.is_vacuum(),
        };
        let e = Arc::new(if peel_right { self.peel_right(st, r, mu, nu)? } else { self.peel_left(st, r, mu, nu)? });
        self.memo[st as usize].lock().insert(key, e.clone());
        Ok(e)
    }

    /// `ν = 𝔭_{−n}(γ) ν'`: `E 𝔭_{−n} = 𝔭_{−n} E − [𝔭_{−n}, E]`.
    fn peel_right(&self, st: Strategy, r: i64, mu: &NakMonomial, nu: &NakMonomial) -> Result<Elem> {
        let model = &*self.model;
        let ((n, g), rest) = nu.split_last().expect("nonempty");
        let n = i64::from(n);
        let k = model.k_degree(g);
        let mut out = Elem::zero();
        let sign_n = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        // 𝔭_{−n}(γ) moved to the left, then adjoint onto μ.
        for (kappa, c) in mu.annihilate(n as u32, g, model) {
            let e = self.element_with(st, r, &kappa, &rest)?;
            out.add_scaled(&e, &(&sign_n * rat(c, 1)));
        }
        // ℓ < 0: 𝔭_ℓ(γ) on the left, adjoint (−1)^ℓ 𝔭_{−ℓ}(γ) on μ.
        for lm in mu.part_sizes() {
            let l = -i64::from(lm);
            let states = mu.annihilate(lm, g, model);
            if states.is_empty() {
                continue;
            }
            let (pc, pi) = self.phi(-n, l)?;
            let sign_l = if l % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let coef = -(k_factor(l, -n, k) * pc * sign_l);
            for (kappa, c) in states {
                let e = self.element_with(st, r - n - l, &kappa, &rest)?;
                out.add_scaled(&e.mul_phi(pi), &(&coef * rat(c, 1)));
            }
        }
        // ℓ > 0: 𝔭_ℓ(γ) on the right, acting on ν'.
        for lp in rest.part_sizes() {
            let l = i64::from(lp);
            let states = rest.annihilate(lp, g, model);
            if states.is_empty() {
                continue;
            }
            let (pc, pi) = self.phi(-n, l)?;
            let coef = -(k_factor(l, -n, k) * pc);
            for (kappa, c) in states {
                let e = self.element_with(st, r - n - l, mu, &kappa)?;
                out.add_scaled(&e.mul_phi(pi), &(&coef * rat(c, 1)));
            }
        }
        // ℓ = 0: 𝔭₀(γ) on the scalars.
        if k == 0 {
            let (a, b) = model.p0_data(g);
            if a != 0 || b != 0 {
                let (pc, pi) = self.phi(-n, 0)?;
                let e = self.element_with(st, r - n, mu, &rest)?;
                out.add_scaled(&e.mul_phi(pi).p0(&rat(a, 1), &rat(b, 1)), &-pc);
            }
        }
        Ok(out)
    }

    /// `μ = 𝔭_{−n}(γ) μ'`: `⟨μ'| 𝔭_n E ν⟩ = ⟨μ'| E 𝔭_n ν⟩ + ⟨μ'| [𝔭_n, E] ν⟩`.
    fn peel_left(&self, st: Strategy, r: i64, mu: &NakMonomial, nu: &NakMonomial) -> Result<Elem> {
        let model = &*self.model;
        let ((n, g), rest) = mu.split_last().expect("nonempty");
        let n = i64::from(n);
        let k = model.k_degree(g);
        let mut out = Elem::zero();
        for (kappa, c) in nu.annihilate(n as u32, g, model) {
            let e = self.element_with(st, r, &rest, &kappa)?;
            out.add_scaled(&e, &rat(c, 1));
        }
        for lm in rest.part_sizes() {
            let l = -i64::from(lm);
            let states = rest.annihilate(lm, g, model);
            if states.is_empty() {
                continue;
            }
            let (pc, pi) = self.phi(n, l)?;
            let sign_l = if l % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let coef = k_factor(l, n, k) * pc * sign_l;
            for (kappa, c) in states {
                let e = self.element_with(st, r + n - l, &kappa, nu)?;
                out.add_scaled(&e.mul_phi(pi), &(&coef * rat(c, 1)));
            }
        }
        for lp in nu.part_sizes() {
            let l = i64::from(lp);
            let states = nu.annihilate(lp, g, model);
            if states.is_empty() {
                continue;
            }
            let (pc, pi) = self.phi(n, l)?;
            let coef = k_factor(l, n, k) * pc;
            for (kappa, c) in states {
                let e = self.element_with(st, r + n - l, &rest, &kappa)?;
                out.add_scaled(&e.mul_phi(pi), &(&coef * rat(c, 1)));
            }
        }
        if k == 0 {
            let (a, b) = model.p0_data(g);
            if a != 0 || b != 0 {
                let (pc, pi) = self.phi(n, 0)?;
                let e = self.element_with(st, r + n, &rest, nu)?;
                out.add_scaled(&e.mul_phi(pi).p0(&rat(a, 1), &rat(b, 1)), &pc);
            }
        }
        let sign_n = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        Ok(out.scale(&sign_n))
    }

    fn phi(&self, m: i64, l: i64) -> Result<(BigRational, u8)> {
        match phi_key(m, l)? {
            Some((c, i)) => Ok((c, i as u8)),
            None => unreachable!("m is never zero here"),
        }
    }

    /// `⟨μ | E^(r) ν⟩` extended bilinearly to vectors.
    pub fn element_vec(&self, r: i64, mu: &FockVector, nu: &FockVector) -> Result<Elem> {
        let mut out = Elem::zero();
        for (a, ca) in mu.terms() {
            for (b, cb) in nu.terms() {
                let e = self.element(r, a, b)?;
                out.add_scaled(&e, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `⟨μ | E^(0) ν⟩ − G^{|ν|}/(F²Δ) ⟨μ | ν⟩` as atoms.
    pub fn ehilb_elem(&self, mu: &FockVector, nu: &FockVector) -> Result<Elem> {
        let (Some(dm), Some(dn)) = (mu.energy(), nu.energy()) else {
            return Ok(Elem::zero());
        };
        if dm != dn || !mu.is_homogeneous() || !nu.is_homogeneous() {
            return Err(Error::InvalidArgument(format!("bracket needs equal energies, got {dm} and {dn}")));
        }
        let mut out = self.element_vec(0, mu, nu)?;
        let pairing = super::nakajima::inner(&self.model, mu, nu);
        if !pairing.is_zero() {
            out.add_scaled(&Elem::g_power(dn as u32), &-pairing);
        }
        Ok(out)
    }
}

/// Turns atoms into `q`-series through a fixed order.
pub struct Evaluator {
    q_max: i64,
    phi: PhiTable,
    weight: QSeries,
    products: Mutex<HashMap<Vec<u8>, Arc<QSeries>>>,
}

impl Evaluator {
    /// An evaluator producing series known through `q^{q_max}`.
    pub fn new(q_max: i64) -> Result<Self> {
        if q_max < -1 {
            return Err(Error::InvalidArgument(format!("q_max must be at least -1, got {q_max}")));
        }
        let phi = PhiTable::new(q_max + 1)?;
        let f = series(GeneratorName::F, q_max + 2);
        let delta = series(GeneratorName::Delta, q_max + 2);
        let weight = f.mul(&f).mul(&delta).invert()?.truncate(q_max);
        Ok(Self { q_max, phi, weight, products: Mutex::new(HashMap::new()) })
    }

    /// The `q`-order of evaluated series.
    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    /// `1/(F²Δ)` through `q^{q_max}`.
    pub fn weight(&self) -> &QSeries {
        &self.weight
    }

    /// The structure series used for evaluation.
    pub fn phi_table(&self) -> &PhiTable {
        &self.phi
    }

    /// `∏ φ_{phis}` through `q^{q_max + 1}`.
    pub fn product(&self, phis: &[u8]) -> Arc<QSeries> {
        if let Some(p) = self.products.lock().get(phis) {
            return p.clone();
        }
        let p = match phis.split_last() {
            None => QSeries::one().truncate(self.q_max + 1),
            Some((&last, rest)) => self.product(rest).mul(self.phi.base(usize::from(last))).truncate(self.q_max + 1),
        };
        let p = Arc::new(p);
        self.products.lock().insert(phis.to_vec(), p.clone());
        p
    }

    /// The series of a combination of atoms.
    pub fn eval(&self, e: &Elem) -> QSeries {
        let mut groups: BTreeMap<(u8, u8), QSeries> = BTreeMap::new();
        for (a, c) in e.terms() {
            let p = self.product(&a.phis).scale(&Gq::from_rational(c.clone()));
            let slot = groups.entry((a.dy, a.dq)).or_insert_with(|| QSeries::zero(self.q_max + 1));
            *slot = slot.add(&p);
        }
        let mut out = QSeries::zero(self.q_max);
        for ((dy, dq), p) in groups {
            if p.is_zero() {
                continue;
            }
            let x = p.mul(&self.weight).truncate(self.q_max).dz_dq(u32::from(dy), u32::from(dq));
            out = out.add(&x);
        }
        out
    }

    /// The `q^{-1}` coefficient, which only involves the `q⁰` rows of the `φ`.
    pub fn eval_leading(&self, e: &Elem) -> SRat {
        let w = self.weight.coeff(-1);
        let mut acc = SRat::zero();
        for (a, c) in e.terms() {
            let mut x = w.scale(&Gq::from_rational(c.clone()));
            for &i in &a.phis {
                x = x.mul(&self.phi.base(usize::from(i)).coeff(0));
            }
            for _ in 0..a.dy {
                x = x.dz();
            }
            if a.dq % 2 == 1 {
                x = x.neg();
            }
            acc = acc.add(&x);
        }
        acc
    }
}

/// `⟨μ | E^(r) ν⟩` through `q^{q_max}`.
pub fn e_matrix_element(
    engine: &Engine,
    eval: &Evaluator,
    r: i64,
    mu: &NakMonomial,
    nu: &NakMonomial,
) -> Result<QSeries> {
    Ok(eval.eval(&*engine.element(r, mu, nu)?))
}

/// The bracket `⟨μ | E^(0) ν⟩ − G^{|ν|}/(F²Δ) ⟨μ | ν⟩` through `q^{q_max}`.
pub fn ehilb_bracket(engine: &Engine, eval: &Evaluator, mu: &FockVector, nu: &FockVector) -> Result<QSeries> {
    Ok(eval.eval(&engine.ehilb_elem(mu, nu)?))
}

#[cfg(test)]
mod tests {
    use super::super::model::{E, F};
    use super::super::nakajima::{basis, create};
    use super::*;
    use crate::arith::factorial;

    fn fact(n: u32) -> BigRational {
        BigRational::from_integer(factorial(u64::from(n)))
    }

    #[test]
    fn vacuum_elements() {
        let eng = Engine::new(SurfaceModel::k3());
        let ev = Evaluator::new(3).unwrap();
        let v = NakMonomial::vacuum();
        assert_eq!(e_matrix_element(&eng, &ev, 0, &v, &v).unwrap(), ev.weight().clone());
        assert!(e_matrix_element(&eng, &ev, 1, &v, &v).unwrap().is_zero());
        assert!(e_matrix_element(&eng, &ev, -2, &v, &v).unwrap().is_zero());
    }

    #[test]
    fn f_powers_give_theta_powers() {
        let m = SurfaceModel::k3();
        let eng = Engine::new(m.clone());
        let ev = Evaluator::new(3).unwrap();
        let f = series(GeneratorName::F, 5);
        let delta = series(GeneratorName::Delta, 5);
        for d in 1..=3u32 {
            let x = create(&m, &vec![(1, m.basis_class(F)); d as usize]);
            let got = ehilb_bracket(&eng, &ev, &x, &x).unwrap();
            let want = f.pow(2 * d - 2).div(&delta).unwrap();
            assert!(got.agrees_through(&want, 3), "d = {d}");
        }
    }

    #[test]
    fn strategies_agree() {
        let m = SurfaceModel::small();
        let eng = Engine::new(m.clone());
        for d in 1..=3u32 {
            let b = basis(&m, d);
            for (i, x) in b.iter().enumerate() {
                for y in b.iter().skip(i % 3).step_by(3) {
                    {
                        let r = 0i64;
                        let a = eng.element_with(Strategy::PeelRight, r, x, y).unwrap();
                        let c = eng.element_with(Strategy::PeelLeft, r, x, y).unwrap();
                        assert_eq!(a, c, "d = {d}, {x:?} {y:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn divisor_against_curve_gives_g_power() {
        let m = SurfaceModel::k3();
        let eng = Engine::new(m.clone());
        let ev = Evaluator::new(3).unwrap();
        let g = series(GeneratorName::GForm, 5);
        let delta = series(GeneratorName::Delta, 5);
        for d in 2..=3u32 {
            let mut cv = vec![(1, m.basis_class(F))];
            let mut dv = vec![(1, m.basis_class(F))];
            for _ in 1..d {
                cv.push((1, m.basis_class(m.omega())));
                dv.push((1, m.basis_class(E)));
            }
            let c = create(&m, &cv);
            let dd = create(&m, &dv).scale(&fact(d - 1).recip());
            let got = ehilb_bracket(&eng, &ev, &c, &dd).unwrap();
            let want = g.pow(d - 1).div(&delta).unwrap();
            assert!(got.agrees_through(&want, 3), "d = {d}: {got}");
        }
    }
}
