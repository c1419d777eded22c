//! Virtual hyperelliptic counts `H_{g,h}` from `(q d/dq F)²/Δ` in the variable `u = 2πz`,
//! and the BPS counts `h_{g,h}` obtained by rewriting `u^{2g+2}` in powers of `2 sin(u/2)`.

use crate::arith::rat;
use crate::coeff::{Gq, QSeries};
use crate::error::{Error, Result};
use crate::jacobi::diff::two_sin_half;
use crate::jacobi::{f_u_expansion, series, GeneratorName};
use crate::report::Report;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Virtual and BPS hyperelliptic counts for `2 ≤ g ≤ g_max` and `0 ≤ h ≤ h_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypTable {
    /// The largest `h` covered.
    pub h_max: i64,
    /// The largest `g` covered.
    pub g_max: i64,
    /// `H_{g,h}`: the coefficient of `u^{2g+2} q^{h−1}`.
    pub virtual_counts: BTreeMap<(i64, i64), BigRational>,
    /// `h_{g,h}`: the BPS counts.
    pub bps_counts: BTreeMap<(i64, i64), BigRational>,
}

impl HypTable {
    /// `H_{g,h}`.
    pub fn virtual_count(&self, g: i64, h: i64) -> BigRational {
        self.virtual_counts.get(&(g, h)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `h_{g,h}`.
    pub fn bps(&self, g: i64, h: i64) -> BigRational {
        self.bps_counts.get(&(g, h)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The BPS counts laid out like the printed table: one row per `h`, one column per `g`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h");
        for g in 2..=self.g_max {
            out.push_str(&format!(",g={g}"));
        }
        out.push('\n');
        for h in 0..=self.h_max {
            out.push_str(&h.to_string());
            for g in 2..=self.g_max {
                out.push_str(&format!(",{}", Gq::fmt_rational(&self.bps(g, h))));
            }
            out.push('\n');
        }
        out
    }

    /// The virtual counts in the same layout as [`HypTable::to_csv`].
    pub fn virtual_csv(&self) -> String {
        let mut out = String::from("h");
        for g in 2..=self.g_max {
            out.push_str(&format!(",g={g}"));
        }
        out.push('\n');
        for h in 0..=self.h_max {
            out.push_str(&h.to_string());
            for g in 2..=self.g_max {
                out.push_str(&format!(",{}", Gq::fmt_rational(&self.virtual_count(g, h))));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for HypTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>4}", "h\\g")?;
        for g in 2..=self.g_max {
            write!(f, " {:>14}", g)?;
        }
        writeln!(f)?;
        for h in 0..=self.h_max {
            write!(f, "{h:>4}")?;
            for g in 2..=self.g_max {
                write!(f, " {:>14}", Gq::fmt_rational(&self.bps(g, h)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `c[j][g]`: the coefficient of `u^{2g+2}` in `(2 sin(u/2))^{2j+2}`, for `2 ≤ j ≤ g ≤ g_max`.
fn sine_powers(g_max: i64) -> BTreeMap<(i64, i64), BigRational> {
    let n = (2 * g_max + 2) as usize;
    let s = two_sin_half(n);
    let mul = |a: &[Gq], b: &[Gq]| -> Vec<Gq> {
        let mut out = vec![Gq::zero(); n + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n + 1 - i) {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        out
    };
    let s2 = mul(&s, &s);
    let mut p = mul(&s2, &s2);
    p = mul(&p, &s2); // (2 sin(u/2))^6
    let mut out = BTreeMap::new();
    for j in 2..=g_max {
        for g in j..=g_max {
            out.insert((j, g), p[(2 * g + 2) as usize].re.clone());
        }
        p = mul(&p, &s2);
    }
    out
}

/// Expands `(q d/dq F)²/Δ` in `(u, q)` and converts to BPS counts.
pub fn hyperelliptic_tables(h_max: i64, g_max: i64) -> Result<HypTable> {
    if h_max < 0 || g_max < 2 {
        return Err(Error::InvalidArgument("need h_max >= 0 and g_max >= 2".into()));
    }
    // The product is divided by Δ = q + …, so it is needed through q^{h_max}.
    let q_max = h_max;
    let u_order = 2 * g_max + 2;
    let fu = f_u_expansion(q_max, u_order)?;
    // (q d/dq F)² in u, coefficient by coefficient.
    let df: Vec<QSeries> = (0..=u_order).map(|k| fu.coeff(k).dq()).collect();
    let inv_delta = series(GeneratorName::Delta, q_max + 2).invert()?;
    let mut virtual_counts = BTreeMap::new();
    for g in 2..=g_max {
        let e = 2 * g + 2;
        let mut acc = QSeries::zero(q_max);
        for a in 0..=e {
            let (x, y) = (&df[a as usize], &df[(e - a) as usize]);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = acc.add(&x.mul(y));
        }
        let full = acc.mul(&inv_delta);
        for h in 0..=h_max {
            let c = full.coeff(h - 1).as_constant().ok_or_else(|| Error::Verification("non-scalar u-coefficient".into()))?;
            if !c.is_real() {
                return Err(Error::Verification(format!("H_({g},{h}) is not real")));
            }
            if !c.re.is_zero() {
                virtual_counts.insert((g, h), c.re);
            }
        }
    }
    let bps_counts = bps_from_virtual(&virtual_counts, h_max, g_max);
    Ok(HypTable { h_max, g_max, virtual_counts, bps_counts })
}

/// Solves `Σ_j h_{j,h} (2 sin(u/2))^{2j+2} = Σ_g H_{g,h} u^{2g+2}` by forward substitution in `g`.
pub fn bps_from_virtual(
    virtual_counts: &BTreeMap<(i64, i64), BigRational>,
    h_max: i64,
    g_max: i64,
) -> BTreeMap<(i64, i64), BigRational> {
    let c = sine_powers(g_max);
    let mut out = BTreeMap::new();
    for h in 0..=h_max {
        for g in 2..=g_max {
            let mut v = virtual_counts.get(&(g, h)).cloned().unwrap_or_else(BigRational::zero);
            for j in 2..g {
                if let Some(x) = out.get(&(j, h)) {
                    v -= x * &c[&(j, g)];
                }
            }
            if !v.is_zero() {
                out.insert((g, h), v);
            }
        }
    }
    out
}

/// Re-expands BPS counts in powers of `u`.
pub fn virtual_from_bps(
    bps_counts: &BTreeMap<(i64, i64), BigRational>,
    h_max: i64,
    g_max: i64,
) -> BTreeMap<(i64, i64), BigRational> {
    let c = sine_powers(g_max);
    let mut out = BTreeMap::new();
    for h in 0..=h_max {
        for g in 2..=g_max {
            let mut v = BigRational::zero();
            for j in 2..=g {
                if let Some(x) = bps_counts.get(&(j, h)) {
                    v += x * &c[&(j, g)];
                }
            }
            if !v.is_zero() {
                out.insert((g, h), v);
            }
        }
    }
    out
}

/// The smallest `h` with a genus-`g` hyperelliptic curve: `g + ⌊g/2⌋(g − 1 − ⌊g/2⌋)`.
pub fn hyperelliptic_threshold(g: i64) -> i64 {
    g + (g / 2) * (g - 1 - g / 2)
}

/// The published BPS counts for `2 ≤ h ≤ 15` (rows) and `2 ≤ g ≤ 6` (columns).
pub const PRINTED_BPS: [[u64; 5]; 14] = [
    [1, 0, 0, 0, 0],
    [36, 0, 0, 0, 0],
    [672, 6, 0, 0, 0],
    [8728, 204, 0, 0, 0],
    [88830, 3690, 9, 0, 0],
    [754992, 47160, 300, 0, 0],
    [5573456, 476700, 5460, 0, 0],
    [36693360, 4048200, 70848, 36, 0],
    [219548277, 29979846, 730107, 1134, 0],
    [1210781880, 198559080, 6333204, 19640, 0],
    [6221679552, 1197526770, 47948472, 244656, 36],
    [30045827616, 6666313920, 324736392, 2438736, 1176],
    [137312404502, 34612452966, 2002600623, 20589506, 20895],
    [597261371616, 169017136848, 11396062440, 152487720, 265860],
];

/// Checks a table against the printed counts, `H_{3,1} = −1/4`, the vanishing for
/// `h ≤ 1`, the threshold pattern and the round trip of the basis change.
pub fn verify_hyperelliptic(table: &HypTable) -> Report {
    let mut rep = Report::new();
    let g_top = table.g_max.min(6);
    let h_top = table.h_max.min(15);
    let mut mismatch = None;
    for h in 2..=h_top {
        for g in 2..=g_top {
            let want = BigRational::from_integer(BigInt::from(PRINTED_BPS[(h - 2) as usize][(g - 2) as usize]));
            let got = table.bps(g, h);
            if got != want && mismatch.is_none() {
                mismatch = Some(format!("h_({g},{h}) = {got}, printed {want}"));
            }
        }
    }
    rep.push(
        format!("BPS counts match the printed table for h <= {h_top}, g <= {g_top}"),
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("{} cells", (h_top - 1).max(0) * (g_top - 1))),
    );
    if table.h_max >= 1 && table.g_max >= 3 {
        let v = table.virtual_count(3, 1);
        rep.push("H_(3,1) = -1/4", v == rat(-1, 4), format!("H_(3,1) = {v}"));
    }
    if table.h_max >= 2 && table.g_max >= 3 {
        let v = table.virtual_count(3, 2);
        rep.push("H_(3,2) = -1/4", v == rat(-1, 4), format!("H_(3,2) = {v}"));
    }
    let low: Vec<String> = (0..=table.h_max.min(1))
        .flat_map(|h| (2..=table.g_max).map(move |g| (g, h)))
        .filter(|&(g, h)| !table.bps(g, h).is_zero())
        .map(|(g, h)| format!("h_({g},{h})"))
        .collect();
    rep.push("h_(g,0) = h_(g,1) = 0", low.is_empty(), low.join(", "));
    let mut pattern = None;
    for h in 0..=table.h_max {
        for g in 2..=table.g_max {
            let expected_nonzero = h >= hyperelliptic_threshold(g);
            if table.bps(g, h).is_zero() == expected_nonzero && pattern.is_none() {
                pattern = Some(format!("h_({g},{h}) = {}", table.bps(g, h)));
            }
        }
    }
    rep.push(
        "h_(g,h) != 0 exactly when h >= g + floor(g/2)(g - 1 - floor(g/2))",
        pattern.is_none(),
        pattern.unwrap_or_else(|| format!("h <= {}, g <= {}", table.h_max, table.g_max)),
    );
    let back = virtual_from_bps(&table.bps_counts, table.h_max, table.g_max);
    rep.push(
        "BPS basis change round trip",
        back == table.virtual_counts,
        "sine expansion of h_(g,h) reproduces H_(g,h)",
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!((2..=6).map(hyperelliptic_threshold).collect::<Vec<_>>(), vec![2, 4, 6, 9, 12]);
    }

    #[test]
    fn sine_power_leading_coefficients() {
        let c = sine_powers(5);
        for j in 2..=5 {
            assert_eq!(c[&(j, j)], rat(1, 1));
        }
        // (2 sin(u/2))^6 = u^6 (1 − u²/24 + …)^6 = u^6 − u^8/4 + …
        assert_eq!(c[&(2, 3)], rat(-1, 4));
    }

    #[test]
    fn first_counts() {
        let t = hyperelliptic_tables(4, 3).unwrap();
        // (q d/dq F)² = O(q²), so the h = 1 row of the virtual counts vanishes.
        assert_eq!(t.virtual_count(3, 1), rat(0, 1));
        assert_eq!(t.virtual_count(3, 2), rat(-1, 4));
        assert_eq!(t.bps(2, 2), rat(1, 1));
        assert_eq!(t.bps(2, 3), rat(36, 1));
        assert_eq!(t.bps(3, 4), rat(6, 1));
    }

    #[test]
    fn printed_table() {
        let t = hyperelliptic_tables(15, 6).unwrap();
        let rep = verify_hyperelliptic(&t);
        let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["H_(3,1) = -1/4"], "{rep}");
    }
}
