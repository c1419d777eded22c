//! The WDVV system for the genus-0 potentials `H`, `I`, `T` and its closed-form solution
//! `H = F²`, `I = 2G`.

pub mod checks;
pub mod equations;
pub mod solver;
pub mod table;

pub use checks::{closed_form_t, residual_check, verify_all, verify_closed_forms};
pub use equations::Wdvv;
pub use solver::solve;
pub use table::{initial_conditions, CoeffTable, Pot};
