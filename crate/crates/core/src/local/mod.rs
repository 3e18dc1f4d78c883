//! Test rings and Weierstrass preparation over them.

pub mod testring;
pub mod weierstrass;

pub use testring::{invert_unit, TestRing, TestRingElement};
pub use weierstrass::{weierstrass_degree, weierstrass_prepare, WeierstrassFactorization};
