//! Exact arithmetic: fields, polynomials, truncated series and matrices.

pub mod matrix;
pub mod multipoly;
pub mod parse;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod unipoly;

pub use matrix::{det_bareiss, rank, Matrix};
pub use multipoly::{CompiledPoly, MultiPoly, PolyRing};
pub use parse::parse_poly;
pub use ring::{Algebra, ExactDivision, LocalRing, Ring};
pub use scalar::{Fp, Rational, Scalar};
pub use series::{SeriesCtx, TruncSeries};
pub use unipoly::UniPoly;
