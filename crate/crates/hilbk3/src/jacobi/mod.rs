//! Quasi-Jacobi forms: the generators, their derivatives, the `D₄` theta function and
//! polynomial fitting in the generators.

pub mod diff;
pub mod fit;
pub mod form;
pub mod generators;
pub mod theta;

pub use diff::{diff, diff_generator, f_u_expansion, verify_differential_identities, Var};
pub use fit::{qjac_fit, qjac_fit_with, Monomial, QJacFit};
pub use form::QuasiJacobiForm;
pub use generators::{eta_and_delta, eta_product, generator, series, GeneratorName};
pub use theta::{d4_lattice_sum, theta_d4, verify_theta_identities};
