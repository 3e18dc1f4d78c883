//! Univariate polynomials in `t` over a commutative ring.

use std::fmt;

use super::ring::{Algebra, Ring};
use crate::error::{Error, Result};

/// Polynomial `Σ coeffs[i] t^i`; trailing zero coefficients are never stored.
#[derive(Clone)]
pub struct UniPoly<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ctx: &R::Ctx, coeffs: Vec<R>) -> Self {
        let mut p = UniPoly {
            ctx: ctx.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero_in(ctx: &R::Ctx) -> Self {
        UniPoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: R) -> Self {
        let ctx = c.ctx();
        Self::new(&ctx, vec![c])
    }

    /// `t^k`
    pub fn t_pow(ctx: &R::Ctx, k: usize) -> Self {
        let mut coeffs = vec![R::zero(ctx); k + 1];
        coeffs[k] = R::one(ctx);
        UniPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring_ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| R::zero(&self.ctx))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Coefficients `0..len`, padded with zeros.
    pub fn padded(&self, len: usize) -> Vec<R> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(ctx, self.coeffs.iter().map(f).collect())
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    /// Euclidean division by a monic divisor: `self = q * quot + rem` with
    /// `deg rem < deg q`.
    pub fn divmod(&self, q: &Self) -> Result<(Self, Self)> {
        if !q.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let dq = q.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((Self::zero_in(&self.ctx), self.clone()));
        }
        let mut quot = vec![R::zero(&self.ctx); rem.len() - dq];
        for k in (dq..rem.len()).rev() {
            let lead = std::mem::replace(&mut rem[k], R::zero(&self.ctx));
            if lead.is_zero() {
                continue;
            }
            for (j, qc) in q.coeffs[..dq].iter().enumerate() {
                let p = lead.times(qc);
                rem[k - dq + j].sub_assign_ref(&p);
            }
            quot[k - dq] = lead;
        }
        rem.truncate(dq);
        Ok((Self::new(&self.ctx, quot), Self::new(&self.ctx, rem)))
    }

    pub fn rem(&self, q: &Self) -> Result<Self> {
        Ok(self.divmod(q)?.1)
    }

    /// Truncation modulo `t^k`.
    pub fn mod_t_pow(&self, k: usize) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().take(k).cloned().collect())
    }

    /// Evaluates at `t = a`.
    pub fn eval_at(&self, a: &R) -> R {
        let mut acc = R::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.times(a).plus(c);
        }
        acc
    }
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    type Ctx = R::Ctx;

    fn ctx(&self) -> R::Ctx {
        self.ctx.clone()
    }

    fn zero(ctx: &R::Ctx) -> Self {
        Self::zero_in(ctx)
    }

    fn one(ctx: &R::Ctx) -> Self {
        Self::new(ctx, vec![R::one(ctx)])
    }

    fn from_int(ctx: &R::Ctx, n: i64) -> Self {
        Self::new(ctx, vec![R::from_int(ctx, n)])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }

    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero(&self.ctx));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign_ref(b);
        }
        self.trim();
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero(&self.ctx));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.sub_assign_ref(b);
        }
        self.trim();
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero_in(&self.ctx);
        }
        let mut out = vec![R::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        Self::new(&self.ctx, out)
    }

    fn negate(&self) -> Self {
        UniPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }
}

impl<F: Ring, R: Algebra<F>> Algebra<F> for UniPoly<R> {
    fn from_scalar(ctx: &R::Ctx, c: &F) -> Self {
        Self::new(ctx, vec![R::from_scalar(ctx, c)])
    }

    fn scale(&self, c: &F) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|x| x.scale(c)).collect())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multipoly::{MultiPoly, PolyRing};
    use crate::algebra::parse::parse_poly;
    use crate::algebra::scalar::Rational;
    use std::sync::Arc;

    type P = MultiPoly<Rational>;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(["alpha", "beta", "x0"])
    }

    fn poly(coeffs: &[&str]) -> UniPoly<P> {
        let r = ring();
        UniPoly::new(
            &r,
            coeffs.iter().map(|s| parse_poly(s, &r).unwrap()).collect(),
        )
    }

    #[test]
    fn divide_t_squared_by_t() {
        let (q, r) = poly(&["0", "0", "1"]).divmod(&poly(&["0", "1"])).unwrap();
        assert_eq!(q, poly(&["0", "1"]));
        assert!(r.is_zero());
    }

    #[test]
    fn synthetic_division_by_linear_factor() {
        let (q, r) = poly(&["1", "0", "1"])
            .divmod(&poly(&["-alpha", "1"]))
            .unwrap();
        assert_eq!(q, poly(&["alpha", "1"]));
        assert_eq!(r, poly(&["alpha^2 + 1"]));
    }

    #[test]
    fn low_degree_dividend_is_its_own_remainder() {
        let f = poly(&["beta*x0", "beta"]);
        let q = poly(&["alpha^2", "-2*alpha", "1"]);
        let (quot, rem) = f.divmod(&q).unwrap();
        assert!(quot.is_zero());
        assert_eq!(rem, f);
    }

    #[test]
    fn non_monic_divisor_is_rejected() {
        let e = poly(&["1", "1"]).divmod(&poly(&["1", "2"])).unwrap_err();
        assert_eq!(e, Error::NonMonicDivisor);
        assert_eq!(
            poly(&["1"]).divmod(&poly(&[])).unwrap_err(),
            Error::NonMonicDivisor
        );
    }
}
