//! Truncated univariate power series `Σ_{k≥0} c_k t^k` over the Gaussian rationals.
//!
//! A series is a plain `Vec<Gq>` whose length is the number of retained coefficients.

use super::gauss::Gq;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// `1/k!` as a Gaussian rational.
pub fn inv_factorial(k: u32) -> Gq {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= i;
    }
    Gq::from_rational(BigRational::new(BigInt::one(), f))
}

/// Product truncated to `n` coefficients.
pub fn mul(a: &[Gq], b: &[Gq], n: usize) -> Vec<Gq> {
    let mut out = vec![Gq::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Multiplicative inverse truncated to `n` coefficients; `None` if the constant term vanishes.
pub fn inv(a: &[Gq], n: usize) -> Option<Vec<Gq>> {
    let c0 = a.first()?.inv()?;
    let mut out: Vec<Gq> = Vec::with_capacity(n);
    if n == 0 {
        return Some(out);
    }
    out.push(c0.clone());
    for m in 1..n {
        let mut acc = Gq::zero();
        for j in 1..=m.min(a.len().saturating_sub(1)) {
            if a[j].is_zero() {
                continue;
            }
            acc += &(&a[j] * &out[m - j]);
        }
        out.push(-(&acc * &c0));
    }
    Some(out)
}

/// `a^e` truncated to `n` coefficients (`e` may be negative when the constant term is nonzero).
pub fn pow(a: &[Gq], e: i64, n: usize) -> Option<Vec<Gq>> {
    let base = if e < 0 { inv(a, n)? } else { a[..a.len().min(n)].to_vec() };
    let mut e = e.unsigned_abs();
    let mut acc = one(n);
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &b, n);
        }
        e >>= 1;
        if e > 0 {
            b = mul(&b, &b, n);
        }
    }
    Some(acc)
}

/// The constant series `1` with `n` retained coefficients.
pub fn one(n: usize) -> Vec<Gq> {
    let mut v = vec![Gq::zero(); n];
    if n > 0 {
        v[0] = Gq::one();
    }
    v
}

/// `exp(f)` truncated to `n` coefficients; `f` must have zero constant term.
pub fn exp(f: &[Gq], n: usize) -> Vec<Gq> {
    assert!(f.first().is_none_or(|c| c.is_zero()), "exp needs a series without constant term");
    let mut g: Vec<Gq> = Vec::with_capacity(n);
    if n == 0 {
        return g;
    }
    g.push(Gq::one());
    for m in 1..n {
        let mut acc = Gq::zero();
        for k in 1..=m.min(f.len().saturating_sub(1)) {
            if f[k].is_zero() {
                continue;
            }
            acc += &(&(&f[k] * &Gq::from_int(k as i64)) * &g[m - k]);
        }
        g.push(&acc * &Gq::frac(1, m as i64));
    }
    g
}

/// `e^{c t}` truncated to `n` coefficients.
pub fn exp_linear(c: &Gq, n: usize) -> Vec<Gq> {
    let mut out = Vec::with_capacity(n);
    let mut p = Gq::one();
    for k in 0..n {
        out.push(&p * &inv_factorial(k as u32));
        p = &p * c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_geometric() {
        let a = vec![Gq::one(), Gq::from_int(-1)];
        let b = inv(&a, 6).unwrap();
        assert!(b.iter().all(|c| c.is_one()));
    }

    #[test]
    fn exp_of_linear_matches_closed_form() {
        let f = vec![Gq::zero(), Gq::from_int(2)];
        assert_eq!(exp(&f, 7), exp_linear(&Gq::from_int(2), 7));
    }

    #[test]
    fn negative_power() {
        let a = vec![Gq::from_int(2), Gq::one()];
        let p = pow(&a, -2, 5).unwrap();
        let back = mul(&p, &mul(&a, &a, 5), 5);
        assert_eq!(back, one(5));
    }
}
