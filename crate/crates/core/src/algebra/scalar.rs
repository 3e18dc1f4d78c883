//! Exact base fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng as _;

use super::ring::{Algebra, ExactDivision, LocalRing, Ring};

/// Arbitrary-precision rational number, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// An exact field usable as the coefficient field `k`.
pub trait Scalar:
    Ring<Ctx = ()>
    + LocalRing
    + ExactDivision
    + Algebra<Self>
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
    + fmt::Display
{
    /// 0 for characteristic zero.
    const CHARACTERISTIC: u64;

    fn inv(&self) -> Option<Self>;
    fn from_bigint(n: &BigInt) -> Self;
    /// `num / den`, or `None` if `den` vanishes in the field.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;
    /// Every element, for finite fields.
    fn elements() -> Option<Vec<Self>>;
    /// A draw from the finite sample set used for "general" coefficients:
    /// `{-3..3}` over the rationals, all residues over a prime field.
    fn sample(rng: &mut dyn rand::RngCore) -> Self;
    fn field_name() -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }
}

/// Residue class modulo the prime `P` (`P < 2^31`), stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const MODULUS: u32 = P;

    pub fn new(v: u64) -> Self {
        Fp((v % P as u64) as u32)
    }

    pub fn from_signed(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow_u64(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u64 + rhs.0 as u64;
        Fp(if s >= P as u64 { s - P as u64 } else { s } as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp((self.0 as u64 + P as u64 - rhs.0 as u64) as u32)
        }
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 as u64 * rhs.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> FromStr for Fp<P> {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = BigInt::from_str(s)?;
        Ok(Self::from_bigint(&n))
    }
}

impl<const P: u32> Scalar for Fp<P> {
    const CHARACTERISTIC: u64 = P as u64;

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow_u64(P as u64 - 2))
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u32().expect("residue fits in u32"))
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den);
        d.inv().map(|di| Self::from_bigint(num) * di)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn sample(rng: &mut dyn rand::RngCore) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn field_name() -> String {
        format!("F_{P}")
    }
}

impl Scalar for Rational {
    const CHARACTERISTIC: u64 = 0;

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn sample(rng: &mut dyn rand::RngCore) -> Self {
        BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)))
    }

    fn field_name() -> String {
        "Q".to_string()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

macro_rules! scalar_ring_impls {
    ([$($gen:tt)*] $ty:ty) => {
        impl<$($gen)*> Ring for $ty {
            type Ctx = ();

            #[inline]
            fn ctx(&self) {}
            #[inline]
            fn zero(_: &()) -> Self {
                <$ty as Zero>::zero()
            }
            #[inline]
            fn one(_: &()) -> Self {
                <$ty as One>::one()
            }
            fn from_int(_: &(), n: i64) -> Self {
                <$ty as Scalar>::from_i64(n)
            }
            #[inline]
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            #[inline]
            fn plus(&self, rhs: &Self) -> Self {
                self.clone() + rhs.clone()
            }
            #[inline]
            fn minus(&self, rhs: &Self) -> Self {
                self.clone() - rhs.clone()
            }
            #[inline]
            fn times(&self, rhs: &Self) -> Self {
                self.clone() * rhs.clone()
            }
            #[inline]
            fn negate(&self) -> Self {
                -self.clone()
            }
        }

        impl<$($gen)*> Algebra<$ty> for $ty {
            fn from_scalar(_: &(), c: &$ty) -> Self {
                c.clone()
            }
            fn scale(&self, c: &$ty) -> Self {
                self.clone() * c.clone()
            }
        }

        impl<$($gen)*> LocalRing for $ty {
            fn in_maximal_ideal(&self) -> bool {
                Zero::is_zero(self)
            }
            fn inverse(&self) -> Option<Self> {
                Scalar::inv(self)
            }
            fn nilpotency_class(_: &()) -> usize {
                1
            }
        }

        impl<$($gen)*> ExactDivision for $ty {
            fn exact_div(&self, divisor: &Self) -> Option<Self> {
                Scalar::inv(divisor).map(|i| self.clone() * i)
            }
        }
    };
}

scalar_ring_impls!([const P: u32] Fp<P>);
scalar_ring_impls!([] Rational);
