//! Nakajima monomials, vectors of the Fock space and the operators `𝔭_m`, `L₀`, `∂`, `𝔭₀`.
//!
//! A monomial `∏ 𝔭_{−m_i}(γ_i) 1` is stored as the sorted multiset of its parts `(m_i, γ_i)`
//! with `γ_i` a basis class of the [`SurfaceModel`]. Creation operators commute, and
//! `[𝔭_m(α), 𝔭_n(β)] = −m δ_{m+n,0} ⟨α, β⟩`.

use super::model::{Class, SurfaceModel};
use crate::arith::rat;
use crate::coeff::{Gq, QSeries};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// A Nakajima basis monomial: the multiset of parts `(m, class)` with `m ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NakMonomial {
    parts: Vec<(u8, u8)>,
}

impl NakMonomial {
    /// The vacuum `1_S`.
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Builds a monomial from parts `(m, class)` in any order.
    pub fn new(parts: impl IntoIterator<Item = (u32, usize)>) -> Self {
        let mut parts: Vec<(u8, u8)> = parts
            .into_iter()
            .map(|(m, c)| {
                assert!((1..256).contains(&m) && c < 256, "part out of range");
                (m as u8, c as u8)
            })
            .collect();
        parts.sort_unstable();
        Self { parts }
    }

    /// Parts `(m, class)` in canonical order.
    pub fn parts(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.parts.iter().map(|&(m, c)| (u32::from(m), usize::from(c)))
    }

    /// True for the vacuum `1_S`.
    pub fn is_vacuum(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of creation operators.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// True for the vacuum.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Energy `|μ| = Σ m_i`.
    pub fn energy(&self) -> i64 {
        self.parts.iter().map(|&(m, _)| i64::from(m)).sum()
    }

    /// The grading `k(μ) = Σ k(γ_i)`.
    pub fn k_grading(&self, model: &SurfaceModel) -> i32 {
        self.parts.iter().map(|&(_, c)| model.k_degree(usize::from(c))).sum()
    }

    /// `𝔭_{−m}(γ_c) · self`.
    pub fn with_part(&self, m: u32, c: usize) -> Self {
        let mut parts = self.parts.clone();
        let p = (m as u8, c as u8);
        let pos = parts.partition_point(|x| *x < p);
        parts.insert(pos, p);
        Self { parts }
    }

    /// The last part in canonical order and the monomial without it.
    pub fn split_last(&self) -> Option<((u32, usize), Self)> {
        let (&(m, c), rest) = self.parts.split_last()?;
        Some(((u32::from(m), usize::from(c)), Self { parts: rest.to_vec() }))
    }

    /// Distinct part sizes.
    pub fn part_sizes(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.parts.iter().map(|&(m, _)| u32::from(m)).collect();
        v.dedup();
        v
    }

    /// `𝔭_m(γ_c) · self` for `m > 0`: contracts against every matching part.
    pub fn annihilate(&self, m: u32, c: usize, model: &SurfaceModel) -> Vec<(Self, i64)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let (pm, pc) = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == (pm, pc) {
                j += 1;
            }
            if u32::from(pm) == m {
                let g = model.pairing(c, usize::from(pc));
                if g != 0 {
                    let mult = (j - i) as i64;
                    let mut parts = self.parts.clone();
                    parts.remove(i);
                    out.push((Self { parts }, -(m as i64) * g * mult));
                }
            }
            i = j;
        }
        out
    }

    /// Renders the monomial in the grammar `p(-2,w) p(-1,F) 1`.
    pub fn display<'a>(&'a self, model: &'a SurfaceModel) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, model }
    }
}

/// Display adapter for a monomial with class names.
pub struct MonomialDisplay<'a> {
    mono: &'a NakMonomial,
    model: &'a SurfaceModel,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in self.mono.parts().collect::<Vec<_>>().into_iter().rev() {
            write!(f, "p(-{m},{}) ", self.model.class_name(c))?;
        }
        write!(f, "1")
    }
}

/// A finite rational combination of Nakajima monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<NakMonomial, BigRational>,
}

impl FockVector {
    /// The zero vector.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The vacuum `1_S`.
    pub fn vacuum() -> Self {
        Self::from_monomial(NakMonomial::vacuum())
    }

    /// A single monomial with coefficient one.
    pub fn from_monomial(m: NakMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, BigRational::one());
        Self { terms }
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&NakMonomial, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &NakMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c · m`.
    pub fn add_term(&mut self, m: NakMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    /// Multiplication by a rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Energy of the first term (all terms share it for vectors of a fixed `Hilb^d`).
    pub fn energy(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.energy())
    }

    /// True if every term has energy `d`.
    pub fn is_homogeneous(&self) -> bool {
        let e = self.energy();
        self.terms.keys().all(|m| Some(m.energy()) == e)
    }

    /// Renders the vector with class names.
    pub fn display(&self, model: &SurfaceModel) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if c.is_one() {
                    m.display(model).to_string()
                } else {
                    format!("({c}) {}", m.display(model))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `𝔭_m(γ) v` for `m ≠ 0`.
pub fn nak_apply(model: &SurfaceModel, m: i64, gamma: &Class, v: &FockVector) -> FockVector {
    assert!(m != 0, "use p0_apply for m = 0");
    let mut out = FockVector::zero();
    for (i, gi) in gamma.iter().enumerate() {
        if gi.is_zero() {
            continue;
        }
        for (mono, c) in v.terms() {
            if m < 0 {
                out.add_term(mono.with_part((-m) as u32, i), gi * c);
            } else {
                for (r, k) in mono.annihilate(m as u32, i, model) {
                    out.add_term(r, gi * c * rat(k, 1));
                }
            }
        }
    }
    out
}

/// `∏ 𝔭_{−m_i}(γ_i) 1` for arbitrary classes, applied right to left.
pub fn create(model: &SurfaceModel, parts: &[(u32, Class)]) -> FockVector {
    let mut v = FockVector::vacuum();
    for (m, g) in parts.iter().rev() {
        v = nak_apply(model, -i64::from(*m), g, &v);
    }
    v
}

/// `⟨μ | ν⟩` for monomials, using `𝔭_m(γ)† = (−1)^m 𝔭_{−m}(γ)`.
pub fn inner_monomials(model: &SurfaceModel, mu: &NakMonomial, nu: &NakMonomial) -> BigRational {
    if mu.energy() != nu.energy() || mu.k_grading(model) + nu.k_grading(model) != 0 {
        return BigRational::zero();
    }
    let Some(((n, c), rest)) = mu.split_last() else {
        return if nu.is_vacuum() { BigRational::one() } else { BigRational::zero() };
    };
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mut acc = BigRational::zero();
    for (r, k) in nu.annihilate(n, c, model) {
        acc += rat(sign * k, 1) * inner_monomials(model, &rest, &r);
    }
    acc
}

/// `⟨μ | ν⟩ = ∫_{Hilb^d} μ ∪ ν`, extended bilinearly.
pub fn inner(model: &SurfaceModel, mu: &FockVector, nu: &FockVector) -> BigRational {
    let mut acc = BigRational::zero();
    for (a, ca) in mu.terms() {
        for (b, cb) in nu.terms() {
            let v = inner_monomials(model, a, b);
            if !v.is_zero() {
                acc += ca * cb * v;
            }
        }
    }
    acc
}

/// `L₀(γ) v`: the derivation sending each part `𝔭_{−k}(α)` to `k 𝔭_{−k}(α ∪ γ)`.
///
/// On `F_d` this is cup product with `D(γ)`; `L₀(e)` is the energy operator.
pub fn l0_apply(model: &SurfaceModel, gamma: &Class, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (mono, c) in v.terms() {
        let parts: Vec<(u32, usize)> = mono.parts().collect();
        for idx in 0..parts.len() {
            if idx > 0 && parts[idx] == parts[idx - 1] {
                continue;
            }
            let mult = parts.iter().filter(|p| **p == parts[idx]).count() as i64;
            let (k, a) = parts[idx];
            let mut rest = parts.clone();
            rest.remove(idx);
            let base = NakMonomial::new(rest);
            for (g, gv) in gamma.iter().enumerate() {
                if gv.is_zero() {
                    continue;
                }
                for (t, tv) in model.cup_basis(a, g).into_iter().enumerate() {
                    if tv.is_zero() {
                        continue;
                    }
                    out.add_term(base.with_part(k, t), c * gv * tv * rat(k as i64 * mult, 1));
                }
            }
        }
    }
    out
}

/// Lehn's diagonal operator
/// `∂ = −½ Σ_{i,j ≥ 1} (𝔭_{−i}𝔭_{−j}𝔭_{i+j} + 𝔭_i𝔭_j𝔭_{−(i+j)}) τ₃*[S]`.
pub fn lehn_delta_apply(model: &SurfaceModel, v: &FockVector) -> FockVector {
    let tau = model.small_diagonal();
    lehn_delta_with(model, &tau, v)
}

/// [`lehn_delta_apply`] with a precomputed `τ₃*[S]`.
pub fn lehn_delta_with(
    model: &SurfaceModel,
    tau: &[(BigRational, usize, usize, usize)],
    v: &FockVector,
) -> FockVector {
    let mut out = FockVector::zero();
    let half = rat(-1, 2);
    for (mono, c) in v.terms() {
        let d = mono.energy() as u32;
        let single = FockVector::from_monomial(mono.clone());
        for i in 1..=d {
            for j in 1..=d {
                for (t, x, y, z) in tau {
                    let coef = &half * t * c;
                    // 𝔭_{−i}(x) 𝔭_{−j}(y) 𝔭_{i+j}(z)
                    if i + j <= d {
                        let mut w = FockVector::zero();
                        for (mm, cc) in single.terms() {
                            for (r, k) in mm.annihilate(i + j, *z, model) {
                                w.add_term(r.with_part(j, *y).with_part(i, *x), cc * rat(k, 1));
                            }
                        }
                        for (mm, cc) in w.terms() {
                            out.add_term(mm.clone(), cc * &coef);
                        }
                    }
                    // 𝔭_i(x) 𝔭_j(y) 𝔭_{−(i+j)}(z)
                    let created = mono.with_part(i + j, *z);
                    for (r1, k1) in created.annihilate(j, *y, model) {
                        for (r2, k2) in r1.annihilate(i, *x, model) {
                            out.add_term(r2, &coef * rat(k1 * k2, 1));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `𝔭₀(γ)` on a scalar series: `⟨γ, B⟩ x + ⟨γ, F⟩ (q d/dq + 1) x`, for `γ ∈ H²`.
pub fn p0_apply(model: &SurfaceModel, gamma: &Class, x: &QSeries) -> Result<QSeries> {
    if !model.is_degree_two(gamma) {
        return Err(Error::InvalidArgument(format!(
            "p0 is defined here for degree-2 classes only, got {}",
            model.format_class(gamma)
        )));
    }
    let b = model.pair(gamma, &model.basis_class(super::model::B));
    let f = model.pair(gamma, &model.basis_class(super::model::F));
    let bf = &b + &f;
    Ok(x.scale(&Gq::from_rational(bf)).add(&x.dq().scale(&Gq::from_rational(f))))
}

/// The Nakajima basis of `F_d`: all monomials of energy `d`, in canonical order.
pub fn basis(model: &SurfaceModel, d: u32) -> Vec<NakMonomial> {
    // Parts (m, c) in nondecreasing order.
    fn rec(
        model: &SurfaceModel,
        left: u32,
        min: (u32, usize),
        acc: &mut Vec<(u32, usize)>,
        out: &mut Vec<NakMonomial>,
    ) {
        if left == 0 {
            out.push(NakMonomial::new(acc.iter().copied()));
            return;
        }
        for m in min.0..=left {
            let c0 = if m == min.0 { min.1 } else { 0 };
            for c in c0..model.rank() {
                acc.push((m, c));
                rec(model, left - m, (m, c), acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(model, d, (1, 0), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Parses the monomial grammar `p(-2,w) p(-1,F) 1` into a vector; classes may be sums such as
/// `p(-1,B+F)`. Errors carry a caret under the offending position.
pub fn parse_monomial(model: &SurfaceModel, text: &str) -> Result<FockVector> {
    let caret = |pos: usize, msg: &str| -> Error {
        Error::Parse(format!("{msg}\n  {text}\n  {}^", " ".repeat(pos)))
    };
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut parts: Vec<(u32, Class)> = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            return Err(caret(i, "expected `1` to close the monomial"));
        }
        if chars[i] == '1' {
            i += 1;
            skip_ws(&mut i);
            if i != chars.len() {
                return Err(caret(i, "unexpected text after `1`"));
            }
            break;
        }
        if chars[i] != 'p' {
            return Err(caret(i, "expected `p(` or `1`"));
        }
        i += 1;
        if i >= chars.len() || chars[i] != '(' {
            return Err(caret(i, "expected `(`"));
        }
        i += 1;
        skip_ws(&mut i);
        let start = i;
        if i < chars.len() && chars[i] == '-' {
            i += 1;
        }
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let num: String = chars[start..i].iter().collect();
        let m: i64 = num.parse().map_err(|_| caret(start, "expected a negative integer"))?;
        if m >= 0 {
            return Err(caret(start, "only creation operators p(-m, class) with m ≥ 1 are allowed"));
        }
        skip_ws(&mut i);
        if i >= chars.len() || chars[i] != ',' {
            return Err(caret(i, "expected `,`"));
        }
        i += 1;
        let cs = i;
        while i < chars.len() && chars[i] != ')' {
            i += 1;
        }
        if i >= chars.len() {
            return Err(caret(i, "expected `)`"));
        }
        let cname: String = chars[cs..i].iter().collect();
        let class = model.parse_class(cname.trim()).map_err(|e| caret(cs, &e.to_string()))?;
        i += 1;
        parts.push(((-m) as u32, class));
    }
    Ok(create(model, &parts))
}

#[cfg(test)]
mod tests {
    use super::super::model::{B, E, F};
    use super::*;

    fn k3() -> SurfaceModel {
        SurfaceModel::k3()
    }

    fn cls(m: &SurfaceModel, i: usize) -> Class {
        m.basis_class(i)
    }

    #[test]
    fn annihilation_examples() {
        let m = k3();
        let w = m.omega();
        let v = create(&m, &[(1, cls(&m, E))]);
        let r = nak_apply(&m, 1, &cls(&m, w), &v);
        assert_eq!(r, FockVector::vacuum().scale(&rat(-1, 1)));
        let v = create(&m, &[(2, cls(&m, w))]);
        let r = nak_apply(&m, 2, &cls(&m, E), &v);
        assert_eq!(r, FockVector::vacuum().scale(&rat(-2, 1)));
        assert!(nak_apply(&m, 1, &cls(&m, F), &FockVector::vacuum()).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let m = k3();
        let w = m.omega();
        let a = create(&m, &[(1, cls(&m, w))]);
        let b = create(&m, &[(1, cls(&m, E))]);
        assert_eq!(inner(&m, &a, &b), rat(1, 1));
        for d in 2..=4u32 {
            // Diagonal class against the exceptional curve.
            let mut delta = vec![(2, cls(&m, E))];
            let mut a = vec![(2, cls(&m, w))];
            for _ in 0..d - 2 {
                delta.push((1, cls(&m, E)));
                a.push((1, cls(&m, w)));
            }
            let fact = crate::arith::factorial(u64::from(d - 2));
            let delta = create(&m, &delta).scale(&BigRational::from_integer(fact).recip());
            assert_eq!(inner(&m, &delta, &create(&m, &a)), rat(-2, 1), "d = {d}");
            // Divisor against curve: ⟨D(γ), C(β)⟩ = ⟨γ, β⟩.
            for (g, bb) in [(B, F), (B, B), (F, F), (3, 4)] {
                let mut dv = vec![(1, cls(&m, g))];
                let mut cv = vec![(1, cls(&m, bb))];
                for _ in 0..d - 1 {
                    dv.push((1, cls(&m, E)));
                    cv.push((1, cls(&m, w)));
                }
                let fact = crate::arith::factorial(u64::from(d - 1));
                let dv = create(&m, &dv).scale(&BigRational::from_integer(fact).recip());
                assert_eq!(inner(&m, &dv, &create(&m, &cv)), rat(m.pairing(g, bb), 1));
            }
        }
    }

    #[test]
    fn commutation_relation_on_states() {
        let m = SurfaceModel::small();
        let states = basis(&m, 3);
        for (mm, nn) in [(1i64, -1i64), (2, -2), (1, -2), (-1, -1), (3, -3), (2, 1)] {
            for a in 0..m.rank() {
                for b in 0..m.rank() {
                    for s in states.iter().step_by(7) {
                        let v = FockVector::from_monomial(s.clone());
                        let (ca, cb) = (cls(&m, a), cls(&m, b));
                        let ab = nak_apply(&m, mm, &ca, &nak_apply(&m, nn, &cb, &v));
                        let ba = nak_apply(&m, nn, &cb, &nak_apply(&m, mm, &ca, &v));
                        let expect = if mm + nn == 0 { v.scale(&rat(-mm * m.pairing(a, b), 1)) } else { FockVector::zero() };
                        assert_eq!(ab.sub(&ba), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_rule_matches_basis_pairing() {
        let m = SurfaceModel::small();
        let b1 = basis(&m, 1);
        let b2 = basis(&m, 2);
        for x in &b1 {
            for y in &b2 {
                for (n, a) in [(1u32, B), (1, E), (1, m.omega()), (1, F)] {
                    let lhs = inner(&m, &FockVector::from_monomial(x.with_part(n, a)), &FockVector::from_monomial(y.clone()));
                    let rhs = inner(
                        &m,
                        &FockVector::from_monomial(x.clone()),
                        &nak_apply(&m, i64::from(n), &cls(&m, a), &FockVector::from_monomial(y.clone())),
                    );
                    let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
                    assert_eq!(lhs, sign * rhs);
                }
            }
        }
    }

    #[test]
    fn l0_commutator_and_energy() {
        let m = SurfaceModel::small();
        let states = basis(&m, 3);
        for g in 0..m.rank() {
            let gamma = cls(&m, g);
            for s in states.iter().step_by(5) {
                let v = FockVector::from_monomial(s.clone());
                for k in 1..=3i64 {
                    for a in 0..m.rank() {
                        let alpha = cls(&m, a);
                        let lhs = nak_apply(&m, k, &alpha, &l0_apply(&m, &gamma, &v))
                            .sub(&l0_apply(&m, &gamma, &nak_apply(&m, k, &alpha, &v)));
                        let rhs = nak_apply(&m, k, &m.cup(&alpha, &gamma), &v).scale(&rat(k, 1));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        let v = FockVector::from_monomial(states[10].clone());
        assert_eq!(l0_apply(&m, &cls(&m, E), &v), v.scale(&rat(3, 1)));
        assert!(l0_apply(&m, &cls(&m, B), &FockVector::vacuum()).is_zero());
    }

    #[test]
    fn l0_is_cup_with_divisor_on_the_unit() {
        // L₀(γ) applied to the unit 1/d! p_{-1}(e)^d gives D(γ).
        let m = k3();
        for d in 1..=3u32 {
            let unit = create(&m, &vec![(1, cls(&m, E)); d as usize])
                .scale(&BigRational::from_integer(crate::arith::factorial(u64::from(d))).recip());
            let mut dv = vec![(1, cls(&m, F))];
            dv.extend(vec![(1, cls(&m, E)); d as usize - 1]);
            let dv = create(&m, &dv).scale(&BigRational::from_integer(crate::arith::factorial(u64::from(d - 1))).recip());
            assert_eq!(l0_apply(&m, &cls(&m, F), &unit), dv);
        }
    }

    #[test]
    fn lehn_operator_on_the_unit_is_minus_half_diagonal() {
        let m = k3();
        assert!(lehn_delta_apply(&m, &FockVector::vacuum()).is_zero());
        for s in basis(&m, 1) {
            assert!(lehn_delta_apply(&m, &FockVector::from_monomial(s)).is_zero());
        }
        for d in 2..=4u32 {
            let unit = create(&m, &vec![(1, cls(&m, E)); d as usize])
                .scale(&BigRational::from_integer(crate::arith::factorial(u64::from(d))).recip());
            let mut dv = vec![(2, cls(&m, E))];
            dv.extend(vec![(1, cls(&m, E)); d as usize - 2]);
            let delta =
                create(&m, &dv).scale(&BigRational::from_integer(crate::arith::factorial(u64::from(d - 2))).recip());
            assert_eq!(lehn_delta_apply(&m, &unit), delta.scale(&rat(-1, 2)), "d = {d}");
        }
    }

    #[test]
    fn lehn_operator_is_self_adjoint() {
        let m = SurfaceModel::small();
        let states = basis(&m, 3);
        let tau = m.small_diagonal();
        for x in states.iter().step_by(11) {
            let vx = FockVector::from_monomial(x.clone());
            let dx = lehn_delta_with(&m, &tau, &vx);
            for y in states.iter().step_by(13) {
                let vy = FockVector::from_monomial(y.clone());
                assert_eq!(inner(&m, &dx, &vy), inner(&m, &vx, &lehn_delta_with(&m, &tau, &vy)));
            }
        }
    }

    #[test]
    fn basis_sizes() {
        let m = k3();
        assert_eq!(basis(&m, 1).len(), 24);
        assert_eq!(basis(&m, 2).len(), 324);
        assert_eq!(basis(&m, 3).len(), 3200);
    }

    #[test]
    fn parses_monomials() {
        let m = k3();
        let v = parse_monomial(&m, "p(-2,w) p(-1,F) 1").unwrap();
        assert_eq!(v.terms().count(), 1);
        let (mono, _) = v.terms().next().unwrap();
        assert_eq!(mono.display(&m).to_string(), "p(-2,w) p(-1,F) 1");
        let v = parse_monomial(&m, "p(-1,B+F) 1").unwrap();
        assert_eq!(v.terms().count(), 2);
        let err = parse_monomial(&m, "p(-1,Q) 1").unwrap_err().to_string();
        assert!(err.contains('^'));
        assert!(parse_monomial(&m, "p(1,F) 1").is_err());
        assert!(parse_monomial(&m, "p(-1,F)").is_err());
    }

    #[test]
    fn p0_examples() {
        let m = k3();
        let x = crate::jacobi::series(crate::jacobi::GeneratorName::Delta, 4).invert().unwrap();
        assert_eq!(p0_apply(&m, &cls(&m, F), &x).unwrap(), x);
        let w = m.parse_class("B+F").unwrap();
        assert_eq!(p0_apply(&m, &w, &x).unwrap(), x.dq());
        assert!(p0_apply(&m, &cls(&m, 3), &x).unwrap().is_zero());
        assert!(p0_apply(&m, &cls(&m, E), &x).is_err());
    }
}
