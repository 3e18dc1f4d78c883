//! Power series in `t` truncated at a finite precision.

use std::fmt;

use super::ring::{Algebra, LocalRing, Ring};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCtx<C> {
    pub ring: C,
    pub precision: usize,
}

/// `Σ_{i<N} coeffs[i] t^i + O(t^N)` with `N = coeffs.len()`.
#[derive(Clone)]
pub struct TruncSeries<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Pads with zeros or truncates `coeffs` to length `precision`.
    pub fn new(ctx: &R::Ctx, mut coeffs: Vec<R>, precision: usize) -> Self {
        coeffs.truncate(precision);
        coeffs.resize(precision, R::zero(ctx));
        TruncSeries {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero_in(ctx: &R::Ctx, precision: usize) -> Self {
        Self::new(ctx, Vec::new(), precision)
    }

    pub fn from_poly(p: &UniPoly<R>, precision: usize) -> Self {
        Self::new(p.ring_ctx(), p.coeffs().to_vec(), precision)
    }

    pub fn ring_ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: R) {
        self.coeffs[i] = c;
    }

    /// The known coefficients as a polynomial.
    pub fn to_poly(&self) -> UniPoly<R> {
        UniPoly::new(&self.ctx, self.coeffs.clone())
    }

    /// Drops knowledge beyond `precision` (which must not exceed the current one).
    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision <= self.precision(), "cannot raise precision");
        Self::new(&self.ctx, self.coeffs[..precision].to_vec(), precision)
    }

    /// Index of the first nonzero coefficient, `None` if all known ones vanish.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            ctx: ctx.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.precision();
        let mut coeffs = vec![R::zero(&self.ctx); k.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn mul_poly(&self, p: &UniPoly<R>) -> Self {
        self.times(&Self::from_poly(p, self.precision()))
    }

    /// Division by a monic `q` whose lower coefficients are nilpotent of class
    /// at most `c`: `self = q * quot + rem`. The remainder is exact when the
    /// precision is at least `c * deg q`; the quotient is known to precision
    /// `N - c * deg q`.
    pub fn div_by_distinguished(&self, q: &UniPoly<R>, c: usize) -> Result<(Self, UniPoly<R>)> {
        let d = q.degree().ok_or(Error::NonMonicDivisor)?;
        let loss = c * d;
        if self.precision() < loss {
            return Err(Error::PrecisionInsufficient {
                required: loss,
                available: self.precision(),
            });
        }
        let (quot, rem) = self.to_poly().divmod(q)?;
        let qp = self.precision() - loss;
        Ok((Self::from_poly(&quot, qp), rem))
    }
}

impl<R: LocalRing> TruncSeries<R> {
    /// Inverse of a series with unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        let a0inv = self.coeffs[0].inverse().ok_or(Error::NotAUnit)?;
        let mut inv: Vec<R> = Vec::with_capacity(n);
        inv.push(a0inv.clone());
        for k in 1..n {
            let mut s = R::zero(&self.ctx);
            for j in 1..=k {
                s.add_product(&self.coeffs[j], &inv[k - j]);
            }
            inv.push(s.times(&a0inv).negate());
        }
        Ok(TruncSeries {
            ctx: self.ctx.clone(),
            coeffs: inv,
        })
    }
}

impl<R: Ring> PartialEq for TruncSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Ring for TruncSeries<R> {
    type Ctx = SeriesCtx<R::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        SeriesCtx {
            ring: self.ctx.clone(),
            precision: self.precision(),
        }
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::zero_in(&ctx.ring, ctx.precision)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::new(&ctx.ring, vec![R::one(&ctx.ring)], ctx.precision)
    }

    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::new(&ctx.ring, vec![R::from_int(&ctx.ring, n)], ctx.precision)
    }

    fn is_zero(&self) -> bool {
        self.is_zero_to_precision()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs: (0..n)
                .map(|i| self.coeffs[i].plus(&rhs.coeffs[i]))
                .collect(),
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs: (0..n)
                .map(|i| self.coeffs[i].minus(&rhs.coeffs[i]))
                .collect(),
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        self.coeffs.truncate(rhs.precision());
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign_ref(b);
        }
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.coeffs.truncate(rhs.precision());
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.sub_assign_ref(b);
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let mut out = vec![R::zero(&self.ctx); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs: out,
        }
    }

    fn negate(&self) -> Self {
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }
}

impl<F: Ring, R: Algebra<F>> Algebra<F> for TruncSeries<R> {
    fn from_scalar(ctx: &Self::Ctx, c: &F) -> Self {
        Self::new(&ctx.ring, vec![R::from_scalar(&ctx.ring, c)], ctx.precision)
    }

    fn scale(&self, c: &F) -> Self {
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }
}

impl<R: Ring> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(t^{})", self.coeffs, self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{Fp, Scalar};

    type F = Fp<7>;

    fn s(v: &[i64], n: usize) -> TruncSeries<F> {
        TruncSeries::new(&(), v.iter().map(|&x| F::from_i64(x)).collect(), n)
    }

    #[test]
    fn product_precision_is_the_minimum() {
        let a = s(&[1, 1], 5);
        let b = s(&[1, 2, 3], 3);
        let p = a.times(&b);
        assert_eq!(p.precision(), 3);
        assert_eq!(p, s(&[1, 3, 5], 3));
        assert_eq!(a.plus(&b).precision(), 3);
    }

    #[test]
    fn inverse_multiplies_back_to_one() {
        let a = s(&[3, 1, 4, 1, 5], 5);
        let inv = a.inverse().unwrap();
        assert_eq!(a.times(&inv), s(&[1], 5));
        assert!(s(&[0, 1], 3).inverse().is_err());
    }

    #[test]
    fn shift_drops_overflow() {
        assert_eq!(s(&[1, 2, 3], 3).shift(2), s(&[0, 0, 1], 3));
    }
}
