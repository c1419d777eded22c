//! Exact coefficient arithmetic: Gaussian rationals, Laurent polynomials and rational
//! functions in `s`, truncated `q`-series and their `w`-expansions.

pub mod gauss;
pub mod json;
pub mod laurent;
pub mod pseries;
pub mod qseries;
pub mod srat;
pub mod wseries;

pub use gauss::{GaussianRational, Gq};
pub use laurent::SLaurent;
pub use qseries::QSeries;
pub use srat::SRat;
pub use wseries::WSeries;
