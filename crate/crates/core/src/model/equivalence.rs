//! Agreement of the membership and adjugate forms of the second condition.

use serde::Serialize;

use super::builder::FiniteModel;
use crate::algebra::ring::{Algebra, LocalRing, Ring};
use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncSeries;
use crate::algebra::unipoly::UniPoly;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    /// `det(B) ≡ 0 mod q`
    pub det_condition: bool,
    /// `p ≡ 0 mod q^e`
    pub residual_condition: bool,
    /// `p ∈ q^e B A[t]^r mod q^(e+1)`; `None` when `det(B)/q` is not a unit
    /// modulo `q`, where the constructive division does not apply.
    pub membership: Option<bool>,
    /// `adj(B) p ≡ 0 mod q^(e+1)`
    pub adjugate: bool,
    pub agree: bool,
}

/// Inverse of `h` in `A[t]/(q)`, if `h(0)` is a unit.
fn inverse_mod_q<R: LocalRing>(
    h: &UniPoly<R>,
    q: &UniPoly<R>,
    class: usize,
) -> Result<Option<UniPoly<R>>> {
    let d = q.degree().unwrap_or(0);
    let prec = (class * d).max(1);
    let hs = TruncSeries::from_poly(h, prec);
    if hs.coeff(0).in_maximal_ideal() {
        return Ok(None);
    }
    // t^{cd} lies in (q), so A[t]/(q) is a quotient of A[t]/(t^{cd})
    Ok(Some(hs.inverse()?.to_poly().rem(q)?))
}

/// Checks the second condition of the system in both forms for a candidate
/// assignment `values` over a test ring.
pub fn equivalence_check_ii_iii<F, R>(
    m: &FiniteModel<F>,
    ctx: &R::Ctx,
    values: &[R],
) -> Result<EquivalenceReport>
where
    F: Scalar,
    R: Algebra<F> + LocalRing,
{
    if m.num_unknowns() == 0 {
        return Ok(EquivalenceReport {
            det_condition: true,
            residual_condition: true,
            membership: Some(true),
            adjugate: true,
            agree: true,
        });
    }
    let res = m.residues(ctx, values)?;
    let det_condition = res.det_rem.is_zero();
    let residual_condition = res.p_rem.iter().all(Ring::is_zero);
    let adjugate = res.adj_rem.iter().all(Ring::is_zero);

    let membership = if !(det_condition && residual_condition) {
        Some(false)
    } else {
        let q = &res.q;
        let qe = q.pow(m.e() as u32);
        let class = R::nilpotency_class(ctx);
        // p = q^e p', det B = q h
        let p1: Vec<UniPoly<R>> = res
            .p
            .iter()
            .map(|pi| pi.divmod(&qe).map(|(quot, _)| quot))
            .collect::<Result<_>>()?;
        let (h, _) = res.b.det()?.divmod(q)?;
        match inverse_mod_q(&h, q, class)? {
            None => None,
            Some(hinv) => {
                let w = res.b.adjugate()?.mul_vec(&p1)?;
                let mut v = Vec::with_capacity(w.len());
                let mut divisible = true;
                for wi in &w {
                    let (quot, rem) = wi.divmod(q)?;
                    divisible &= rem.is_zero();
                    v.push(hinv.times(&quot).rem(q)?);
                }
                if !divisible {
                    Some(false)
                } else {
                    let qe1 = qe.times(q);
                    let bv = res.b.mul_vec(&v)?;
                    let mut ok = true;
                    for (bvi, pi) in bv.iter().zip(&res.p) {
                        ok &= qe.times(bvi).minus(pi).rem(&qe1)?.is_zero();
                    }
                    Some(ok)
                }
            }
        }
    };
    let route_b = det_condition && residual_condition && adjugate;
    let agree = membership.map_or(true, |mb| mb == route_b);
    Ok(EquivalenceReport {
        det_condition,
        residual_condition,
        membership,
        adjugate,
        agree,
    })
}
