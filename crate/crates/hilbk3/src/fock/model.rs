//! Cohomology of the surface: a basis with its intersection form and cup products.

use crate::arith::rat;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A cohomology class as a dense coefficient vector in the basis of a [`SurfaceModel`].
pub type Class = Vec<BigRational>;

/// Index of the unit class `e` in every model.
pub const E: usize = 0;
/// Index of the section class `B` in every model.
pub const B: usize = 1;
/// Index of the fiber class `F` in every model.
pub const F: usize = 2;

/// A basis `e, B, F, g1, …, gn, ω` of `H*(S, ℚ)` together with the intersection form.
///
/// `e` spans `H⁰`, `ω` spans `H⁴`, and the remaining classes span `H²` with
/// `B² = −2`, `B·F = 1`, `F² = 0`. The shifted degree `k(γ)` is `−1, 0, +1` on `H⁰, H², H⁴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    name: String,
    names: Vec<String>,
    gram: Vec<Vec<i64>>,
    gram_inv: Vec<Vec<BigRational>>,
}

/// `E₈(−1)`: negative of the Cartan matrix, branch node 4 with arms `3‑2‑1‑0`, `5‑6` and `7`.
fn e8_minus() -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    g
}

fn invert(g: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = g.len();
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| rat(x, 1)).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl SurfaceModel {
    /// Builds a model from the Gram matrix of the degree-2 classes after `B, F`.
    ///
    /// `extra` is the Gram block of `g1, …, gn`; they are taken orthogonal to `B` and `F`.
    pub fn with_extra(name: &str, extra: &[Vec<i64>]) -> Result<Self> {
        let n2 = 2 + extra.len();
        let n = n2 + 2;
        let mut gram = vec![vec![0i64; n]; n];
        gram[E][n - 1] = 1;
        gram[n - 1][E] = 1;
        gram[B][B] = -2;
        gram[B][F] = 1;
        gram[F][B] = 1;
        for (i, row) in extra.iter().enumerate() {
            if row.len() != extra.len() {
                return Err(Error::InvalidArgument("extra Gram block is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                gram[3 + i][3 + j] = x;
            }
        }
        if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        let gram_inv =
            invert(&gram).ok_or_else(|| Error::InvalidArgument("degenerate intersection form".into()))?;
        let mut names = vec!["e".to_string(), "B".to_string(), "F".to_string()];
        names.extend((1..=extra.len()).map(|i| format!("g{i}")));
        names.push("w".to_string());
        Ok(Self { name: name.to_string(), names, gram, gram_inv })
    }

    /// The K3 lattice `U ⊕ U^{⊕2} ⊕ E₈(−1)^{⊕2}` (rank 22 in degree 2, rank 24 in total),
    /// with `B, F` spanning the first `U` and `g1, …, g20` the rest.
    pub fn k3() -> Self {
        let mut extra = vec![vec![0i64; 20]; 20];
        for u in 0..2 {
            extra[2 * u][2 * u + 1] = 1;
            extra[2 * u + 1][2 * u] = 1;
        }
        let e8 = e8_minus();
        for block in 0..2 {
            let off = 4 + 8 * block;
            for i in 0..8 {
                for j in 0..8 {
                    extra[off + i][off + j] = e8[i][j];
                }
            }
        }
        Self::with_extra("k3-rank24", &extra).expect("the K3 lattice is unimodular")
    }

    /// A small model `e, B, F, g1, ω` with `g1² = −2`, for fast tests.
    pub fn small() -> Self {
        Self::with_extra("small", &[vec![-2]]).expect("nondegenerate")
    }

    /// Looks up a model by name: `k3-rank24` or `small`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "k3-rank24" | "k3" => Ok(Self::k3()),
            "small" => Ok(Self::small()),
            _ => Err(Error::InvalidArgument(format!("unknown surface model {name:?}; use k3-rank24 or small"))),
        }
    }

    /// The model's name, as accepted on the command line.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of basis classes.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Index of the point class `ω`.
    pub fn omega(&self) -> usize {
        self.rank() - 1
    }

    /// Name of basis class `i` (`e`, `B`, `F`, `g1`, …, `w`).
    pub fn class_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Index of a basis class by name; `ω` may be written `w`.
    pub fn class_index(&self, name: &str) -> Option<usize> {
        let name = if name == "ω" || name == "omega" { "w" } else { name };
        self.names.iter().position(|n| n == name)
    }

    /// `⟨γ_i, γ_j⟩` for basis classes.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    /// The Gram matrix `g_{ij}`.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// The inverse Gram matrix `g^{ij}`.
    pub fn gram_inverse(&self) -> &[Vec<BigRational>] {
        &self.gram_inv
    }

    /// Shifted degree `k(γ_i) ∈ {−1, 0, 1}`.
    pub fn k_degree(&self, i: usize) -> i32 {
        if i == E {
            -1
        } else if i == self.omega() {
            1
        } else {
            0
        }
    }

    /// Real cohomological degree of basis class `i` (0, 2 or 4).
    pub fn degree(&self, i: usize) -> u32 {
        (2 * (self.k_degree(i) + 1)) as u32
    }

    /// Basis class `i` as a coefficient vector.
    pub fn basis_class(&self, i: usize) -> Class {
        (0..self.rank()).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()
    }

    /// Parses a class name or a sum like `B+F`, `2g1-F`.
    pub fn parse_class(&self, text: &str) -> Result<Class> {
        let mut out = vec![BigRational::zero(); self.rank()];
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty class".into()));
        }
        let mut i = 0;
        let bytes: Vec<char> = t.chars().collect();
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start { bytes[start..i].iter().collect::<String>().parse().unwrap() } else { 1 };
            let ns = i;
            while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                i += 1;
            }
            let name: String = bytes[ns..i].iter().collect();
            let idx = self
                .class_index(&name)
                .ok_or_else(|| Error::Parse(format!("unknown class {name:?} in {text:?}")))?;
            out[idx] += rat(sign * coeff, 1);
        }
        Ok(out)
    }

    /// `⟨α, β⟩` for arbitrary classes.
    pub fn pair(&self, a: &Class, b: &Class) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && self.gram[i][j] != 0 {
                    acc += ai * bj * rat(self.gram[i][j], 1);
                }
            }
        }
        acc
    }

    /// Cup product of basis classes: `e` is the unit, `γ ∪ γ' = ⟨γ, γ'⟩ω` in degree 2,
    /// and everything of total degree above 4 vanishes.
    pub fn cup_basis(&self, i: usize, j: usize) -> Class {
        let mut out = vec![BigRational::zero(); self.rank()];
        let w = self.omega();
        if i == E {
            out[j] = BigRational::one();
        } else if j == E {
            out[i] = BigRational::one();
        } else if i != w && j != w {
            out[w] = rat(self.gram[i][j], 1);
        }
        out
    }

    /// Cup product of arbitrary classes.
    pub fn cup(&self, a: &Class, b: &Class) -> Class {
        let mut out = vec![BigRational::zero(); self.rank()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                for (k, c) in self.cup_basis(i, j).into_iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += ai * bj * c;
                    }
                }
            }
        }
        out
    }

    /// True if the class lies in `H²`.
    pub fn is_degree_two(&self, a: &Class) -> bool {
        a[E].is_zero() && a[self.omega()].is_zero()
    }

    /// `⟨γ, B + F⟩` and `⟨γ, F⟩` for a basis class: the data of `𝔭₀(γ)`.
    pub fn p0_data(&self, i: usize) -> (i64, i64) {
        if self.k_degree(i) != 0 {
            return (0, 0);
        }
        (self.gram[i][B] + self.gram[i][F], self.gram[i][F])
    }

    /// `τ₃*[S]` expanded in the basis: entries `(t, a, b, c)` with
    /// `τ₃*[S] = Σ t · γ_a ⊗ γ_b ⊗ γ_c`.
    pub fn small_diagonal(&self) -> Vec<(BigRational, usize, usize, usize)> {
        // ∫ γ_a γ_b γ_c is nonzero only for (e, x, y) up to order, where it equals ⟨x, y⟩.
        let n = self.rank();
        let triple = |a: usize, b: usize, c: usize| -> i64 {
            if a == E {
                self.gram[b][c]
            } else if b == E {
                self.gram[a][c]
            } else if c == E {
                self.gram[a][b]
            } else {
                0
            }
        };
        // τ₃*[S] = Σ_{abc} (∫ γ_a γ_b γ_c) γ^a ⊗ γ^b ⊗ γ^c with γ^a = Σ_x g^{ax} γ_x.
        let ginv = &self.gram_inv;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut t = BigRational::zero();
                    for a in 0..n {
                        if ginv[a][x].is_zero() {
                            continue;
                        }
                        for b in 0..n {
                            if ginv[b][y].is_zero() {
                                continue;
                            }
                            for c in 0..n {
                                if ginv[c][z].is_zero() {
                                    continue;
                                }
                                let v = triple(a, b, c);
                                if v != 0 {
                                    t += &ginv[a][x] * &ginv[b][y] * &ginv[c][z] * rat(v, 1);
                                }
                            }
                        }
                    }
                    if !t.is_zero() {
                        out.push((t, x, y, z));
                    }
                }
            }
        }
        out
    }

    /// Renders a class vector like `B + F`.
    pub fn format_class(&self, a: &Class) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = self.class_name(i);
            if c.is_one() {
                parts.push(name.to_string());
            } else if *c == -BigRational::one() {
                parts.push(format!("-{name}"));
            } else {
                parts.push(format!("{c}{name}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.name, self.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_lattice_is_unimodular_of_signature_3_19() {
        let m = SurfaceModel::k3();
        assert_eq!(m.rank(), 24);
        assert_eq!(m.pairing(B, B), -2);
        assert_eq!(m.pairing(B, F), 1);
        assert_eq!(m.pairing(F, F), 0);
        assert_eq!(m.pairing(E, m.omega()), 1);
        // The inverse of a unimodular form is integral.
        assert!(m.gram_inverse().iter().flatten().all(|x| x.is_integer()));
        // Even lattice in degree 2.
        assert!((1..23).all(|i| m.pairing(i, i) % 2 == 0));
    }

    #[test]
    fn cup_products() {
        let m = SurfaceModel::k3();
        let w = m.omega();
        assert_eq!(m.cup_basis(B, F), m.basis_class(w));
        assert_eq!(m.cup_basis(E, F), m.basis_class(F));
        assert!(m.cup_basis(w, F).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn parses_class_sums() {
        let m = SurfaceModel::small();
        let c = m.parse_class("B+F").unwrap();
        assert_eq!(m.pair(&c, &c), rat(0, 1));
        assert_eq!(m.format_class(&c), "B + F");
        assert!(m.parse_class("Q").is_err());
        assert_eq!(m.parse_class("2g1-F").unwrap()[3], rat(2, 1));
    }

    #[test]
    fn small_diagonal_pairs_like_the_triple_integral() {
        // Σ t ⟨γ_a,x⟩⟨γ_b,y⟩⟨γ_c,z⟩ = ∫ xyz.
        let m = SurfaceModel::small();
        let t = m.small_diagonal();
        let w = m.omega();
        let eval = |x: usize, y: usize, z: usize| -> BigRational {
            t.iter()
                .map(|(c, a, b, cc)| {
                    c * rat(m.pairing(*a, x) * m.pairing(*b, y) * m.pairing(*cc, z), 1)
                })
                .fold(BigRational::zero(), |s, v| s + v)
        };
        assert_eq!(eval(E, E, w), rat(1, 1));
        assert_eq!(eval(B, E, F), rat(1, 1));
        assert_eq!(eval(B, B, E), rat(-2, 1));
        assert_eq!(eval(B, F, F), rat(0, 1));
    }
}
