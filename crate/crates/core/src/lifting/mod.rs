//! Lifting model solutions to arc deformations, and the finite oracle.

pub mod lift;
pub mod oracle;
pub mod truncate;

pub use lift::{lift_arc_precision, lift_solution, truncation_margin};
pub use oracle::{oracle_bijection_check, oracle_enumerate, OracleReport, Verdict, DEFAULT_BUDGET};
pub use truncate::{truncate_to_solution, Truncation};
