//! Finite models of formal neighbourhoods of arcs.

pub mod algebra;
pub mod error;
pub mod format;
pub mod geometry;
pub mod jets;
pub mod lifting;
pub mod local;
pub mod model;

pub use error::{Error, Result};
