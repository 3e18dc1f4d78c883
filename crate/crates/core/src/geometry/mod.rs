//! Varieties, arcs, Jacobian minors and complete-intersection reduction.

pub mod arc;
pub mod minor;
pub mod reduce;
pub mod variety;

pub use arc::{check_arc, ord_along_arc, ArcCheck, FormalArc, Order};
pub use minor::{select_minor, MinorSelection, DEFAULT_SEARCH_CAP};
pub use reduce::{reduce_to_complete_intersection, Reduction};
pub use variety::Variety;
