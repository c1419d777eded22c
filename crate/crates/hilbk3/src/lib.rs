#![warn(missing_docs)]
//! Exact series arithmetic for Gromov–Witten theory of Hilbert schemes of points on K3 surfaces.
//!
//! * [`coeff`]: Gaussian rationals, rational functions of `s = (−y)^{1/2}`, truncated `q`-series.
//! * [`jacobi`]: theta functions, Eisenstein series and the quasi-Jacobi generators.
//! * [`wdvv`]: the coefficient recursion for the potentials `H`, `I`, `T`.
//! * [`fock`]: Nakajima operators and the quantum operators `E^(r)`.
//! * [`gw`]: assembled generating series and BPS tables.

pub mod arith;
pub mod coeff;
pub mod error;
pub mod fock;
pub mod gw;
pub mod jacobi;
pub mod linalg;
pub mod report;
pub mod wdvv;

pub use error::{Error, Result};
