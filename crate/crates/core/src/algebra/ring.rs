//! Ring abstractions shared by every algebraic container in the crate.
//!
//! Elements carry enough context to build `zero` and `one` of their own ring
//! (the variable list of a polynomial ring, the multiplication table of a
//! test ring, the precision of a truncated series). Scalars have a unit
//! context.

use std::fmt;

/// A commutative ring with unit whose elements know their ring.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;

    fn is_zero(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ctx())
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.minus(rhs);
    }

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = a.times(b);
        self.add_assign_ref(&p);
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// A ring receiving a structure map from the scalar field `F`.
pub trait Algebra<F: Ring>: Ring {
    fn from_scalar(ctx: &Self::Ctx, c: &F) -> Self;
    fn scale(&self, c: &F) -> Self;
}

/// Local rings with residue field `k` and nilpotent maximal ideal.
///
/// Fields are the case `m = 0`.
pub trait LocalRing: Ring {
    /// Whether the element lies in the maximal ideal.
    fn in_maximal_ideal(&self) -> bool;
    /// Inverse of a unit; `None` on elements of the maximal ideal.
    fn inverse(&self) -> Option<Self>;
    /// Least `c` with `m^c = 0`.
    fn nilpotency_class(ctx: &Self::Ctx) -> usize;
}

/// Integral domains with exact division, used by fraction-free elimination.
pub trait ExactDivision: Ring {
    /// `Some(q)` with `q * divisor == self`, `None` when no such `q` exists.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}
