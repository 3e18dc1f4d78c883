//! Jet schemes through Hasse–Schmidt components.

pub mod derivation;
pub mod presentation;
pub mod universal;

pub use derivation::{jet_name, JetRing};
pub use presentation::{jet_components, jet_presentation, JetPresentation, JetPresentationFile};
pub use universal::{hs_universal_check, HsReport};
