//! Weierstrass preparation of truncated series over test rings.

use crate::algebra::ring::{LocalRing, Ring};
use crate::algebra::series::TruncSeries;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};

/// `f = q * u` with `q` monic of degree `d`, lower coefficients in `m`, and
/// `u` a unit.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassFactorization<R: Ring> {
    pub q: UniPoly<R>,
    pub u: TruncSeries<R>,
    pub d: usize,
}

/// Index of the first coefficient outside the maximal ideal.
pub fn weierstrass_degree<R: LocalRing>(f: &TruncSeries<R>) -> Option<usize> {
    f.coeffs().iter().position(|c| !c.in_maximal_ideal())
}

/// Prepares `f`, known modulo `t^N`, as `q * u`.
///
/// The factorization is exact for the truncation of `f` viewed as a
/// polynomial, so `q * u` agrees with `f` through precision `N`. Each pass
/// corrects `q` by one power of the maximal ideal.
///
/// Over a ring of class `c`, `q` depends only on `f mod t^(c d)` and `u` is
/// determined modulo `t^(N - c d)`.
pub fn weierstrass_prepare<R: LocalRing>(
    f: &TruncSeries<R>,
) -> Result<WeierstrassFactorization<R>> {
    let n = f.precision();
    let d = weierstrass_degree(f).ok_or(Error::AllCoefficientsNilpotent { precision: n })?;
    let ctx = f.ring_ctx().clone();
    let class = R::nilpotency_class(&ctx);
    let fp = f.to_poly();
    let mut q = UniPoly::t_pow(&ctx, d);
    for _ in 0..=class {
        let (u, r) = fp.divmod(&q)?;
        if r.is_zero() {
            return Ok(WeierstrassFactorization {
                q,
                u: TruncSeries::from_poly(&u, n),
                d,
            });
        }
        let uinv = TruncSeries::from_poly(&u, d).inverse()?;
        let delta = TruncSeries::from_poly(&r, d).times(&uinv).to_poly();
        q.add_assign_ref(&delta);
    }
    Err(Error::DivisionNotExact(
        "Weierstrass layers did not terminate within the nilpotency class".into(),
    ))
}
