//! The Fock space of a K3 surface and the quantum operators `E^(r)`.
//!
//! * [`checks`]: verification suites for the operator identities and worked brackets.
//! * [`engine`]: symbolic matrix elements of `E^(r)` and their evaluation.
//! * [`model`]: the cohomology lattice, cup product and the small diagonal.
//! * [`nakajima`]: Nakajima monomials and operators.
//! * [`phi`]: the structure series `φ_{m,ℓ}`.

pub mod checks;
pub mod engine;
pub mod model;
pub mod nakajima;
pub mod phi;

pub use model::{Class, SurfaceModel};
pub use nakajima::{basis, inner, l0_apply, lehn_delta_apply, nak_apply, p0_apply, FockVector, NakMonomial};
pub use phi::{phi_closed_forms, phi_key, PhiTable};
pub use engine::{e_matrix_element, ehilb_bracket, Elem, Engine, Evaluator};
