//! Construction and diagnostics of the finite model.

pub mod builder;
pub mod diagnostics;
pub mod equivalence;

pub use builder::{
    build_model, required_precision, BuildOutcome, EquationLabel, Family, FiniteModel, Residues,
};
pub use diagnostics::{diagnostics, ModelDiagnostics};
pub use equivalence::{equivalence_check_ii_iii, EquivalenceReport};
