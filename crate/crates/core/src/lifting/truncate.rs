//! From an arc deformation back to a solution of the finite system.

use crate::algebra::matrix::Matrix;
use crate::algebra::ring::{Algebra, LocalRing, Ring};
use crate::algebra::scalar::Scalar;
use crate::algebra::series::{SeriesCtx, TruncSeries};
use crate::error::{Error, Result};
use crate::local::weierstrass::weierstrass_prepare;
use crate::model::{required_precision, FiniteModel};

use super::lift::truncation_margin;

/// Projection of a deformation: the model solution and the free part `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncation<R: Ring> {
    pub values: Vec<R>,
    /// `ξ` per kept variable, known to precision `K - c (e+1) d`.
    pub xi: Vec<TruncSeries<R>>,
}

/// Recovers `q` from the Jacobian minor of the deformation, then
/// `xbar = x mod q^(e+1)`, `ξ = x div q^(e+1)` and `ybar = y mod q^e`.
pub fn truncate_to_solution<F, R>(
    model: &FiniteModel<F>,
    ctx: &R::Ctx,
    components: &[TruncSeries<R>],
) -> Result<Truncation<R>>
where
    F: Scalar,
    R: Algebra<F> + LocalRing,
{
    let (d, e) = (model.d(), model.e());
    let class = R::nilpotency_class(ctx);
    if components.len() != model.variety().ambient_dim() {
        return Err(Error::DimensionMismatch(
            "deformation has the wrong number of components".into(),
        ));
    }
    let k = components
        .iter()
        .map(TruncSeries::precision)
        .min()
        .unwrap_or(0);
    let need = required_precision(d, e) + truncation_margin(class, d, e);
    if k < need {
        return Err(Error::PrecisionInsufficient {
            required: need,
            available: k,
        });
    }
    let comps: Vec<TruncSeries<R>> = components.iter().map(|c| c.truncate(k)).collect();
    let sel = model.selection();
    let sctx = SeriesCtx {
        ring: ctx.clone(),
        precision: k,
    };
    let eqs = model.variety().equations();
    let r = model.r();
    let c = Matrix::from_fn(&sctx, r, r, |i, j| {
        eqs[i]
            .partial_derivative(sel.eliminated[j])
            .eval(&sctx, &comps)
    });
    let wf = weierstrass_prepare(&c.det()?)?;
    if wf.d != d {
        return Err(Error::NotASolution(format!(
            "Jacobian minor has Weierstrass degree {} instead of {d}",
            wf.d
        )));
    }
    let q = wf.q;
    let qe = q.pow(e as u32);
    let qe1 = qe.times(&q);
    let mut values: Vec<R> = q.coeffs()[..d].to_vec();
    let mut xi = Vec::with_capacity(model.n());
    for &i in &sel.kept {
        let (quot, rem) = comps[i].div_by_distinguished(&qe1, class)?;
        values.extend(rem.padded(model.xbar_len()));
        xi.push(quot);
    }
    for &i in &sel.eliminated {
        let (_, rem) = comps[i].div_by_distinguished(&qe, class)?;
        values.extend(rem.padded(model.ybar_len()));
    }
    if !model.reduces_to_base(ctx, &values) {
        return Err(Error::NotASolution(
            "projection does not reduce to the base point".into(),
        ));
    }
    if !model.is_solution(ctx, &values) {
        return Err(Error::NotASolution(
            "projection violates the model equations".into(),
        ));
    }
    Ok(Truncation { values, xi })
}
