//! Headline generating series and hyperelliptic counts.
//!
//! * [`series`]: the Yau–Zaslow numbers, the closed-form two-point series and the genus-one
//!   series, read off as `(h, k)` tables.
//! * [`hyperelliptic`]: virtual counts `H_{g,h}` and BPS counts `h_{g,h}`.

pub mod hyperelliptic;
pub mod series;

pub use hyperelliptic::{hyperelliptic_tables, verify_hyperelliptic, HypTable};
pub use series::{
    genus1_closed_form, genus1_leading_row, theorem_qseries, theorem_series, yau_zaslow, yz_by_product, yz_by_sigma,
    GWTable, Theorem,
};

use crate::report::Report;
use num_bigint::BigInt;

/// Compares the Yau–Zaslow numbers through `h_max` with both independent expansions and with
/// `N_1, N_2, N_3 = 24, 324, 3200`.
pub fn verify_yau_zaslow(h_max: usize) -> Report {
    let mut rep = Report::new();
    let yz = yau_zaslow(h_max);
    let product = yz_by_product(h_max);
    let sigma = yz_by_sigma(h_max);
    let first_diff = |o: &[BigInt]| yz.iter().zip(o).position(|(a, b)| a != b);
    match first_diff(&product) {
        None => rep.push("1/Delta equals the product expansion", true, format!("through q^{}", h_max as i64 - 1)),
        Some(h) => rep.push("1/Delta equals the product expansion", false, format!("N_{h}: {} vs {}", yz[h], product[h])),
    }
    match first_diff(&sigma) {
        None => rep.push("1/Delta equals the divisor-sum recursion", true, format!("through q^{}", h_max as i64 - 1)),
        Some(h) => rep.push("1/Delta equals the divisor-sum recursion", false, format!("N_{h}: {} vs {}", yz[h], sigma[h])),
    }
    if h_max >= 3 {
        let ok = yz[1] == BigInt::from(24) && yz[2] == BigInt::from(324) && yz[3] == BigInt::from(3200);
        rep.push("N_1, N_2, N_3 = 24, 324, 3200", ok, format!("{}, {}, {}", yz[1], yz[2], yz[3]));
    }
    rep
}
