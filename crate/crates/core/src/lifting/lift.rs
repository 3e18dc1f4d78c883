//! From a solution of the finite system to an arc deformation.

use crate::algebra::matrix::Matrix;
use crate::algebra::ring::{Algebra, LocalRing, Ring};
use crate::algebra::scalar::Scalar;
use crate::algebra::series::{SeriesCtx, TruncSeries};
use crate::error::{Error, Result};
use crate::geometry::FormalArc;
use crate::local::weierstrass::weierstrass_prepare;
use crate::model::{required_precision, FiniteModel};

/// Arc precision needed by [`lift_solution`] for target precision `n` over a
/// test ring of nilpotency class `c`.
pub fn lift_arc_precision(n: usize, c: usize, d: usize, e: usize) -> usize {
    n + c * c * d + 1 + (e + 1) * d
}

/// Extra `t`-precision lost when projecting a deformation back to the model.
pub fn truncation_margin(c: usize, d: usize, e: usize) -> usize {
    c * (e + 1) * d
}

/// `Σ_j coeff_j t^j` where known coefficients come from `given` and the rest
/// from the arc component `comp` shifted down by `shift`.
fn extend_with_base<F, R>(
    ctx: &R::Ctx,
    given: Option<&TruncSeries<R>>,
    arc: &FormalArc<F>,
    comp: usize,
    shift: usize,
    precision: usize,
) -> Result<TruncSeries<R>>
where
    F: Scalar,
    R: Algebra<F> + LocalRing,
{
    let mut coeffs = Vec::with_capacity(precision);
    for j in 0..precision {
        let base = R::from_scalar(ctx, &arc.coeff(comp, j + shift));
        match given {
            Some(g) if j < g.precision() => {
                let c = g.coeff(j).clone();
                if !c.minus(&base).in_maximal_ideal() {
                    return Err(Error::InvalidInput(
                        "free part does not reduce to the base arc".into(),
                    ));
                }
                coeffs.push(c);
            }
            _ => coeffs.push(base),
        }
    }
    Ok(TruncSeries::new(ctx, coeffs, precision))
}

/// Lifts a solution `values` of the model over a test ring to a deformation
/// of the arc, solving the equations modulo `t^n`.
///
/// The kept coordinates are `x = q^(e+1) ξ + xbar`; `xi` supplies leading
/// coefficients of `ξ` per kept variable (the base arc supplies the rest).
/// The eliminated coordinates start at `ybar + q^e η` with `η` taken from
/// `eta` or the base arc, then are corrected by
/// `z = u^{-1} (adj(C) p / q)` where `det C = q u`.
pub fn lift_solution<F, R>(
    model: &FiniteModel<F>,
    ctx: &R::Ctx,
    values: &[R],
    xi: Option<&[TruncSeries<R>]>,
    eta: Option<&[TruncSeries<R>]>,
    n: usize,
) -> Result<Vec<TruncSeries<R>>>
where
    F: Scalar,
    R: Algebra<F> + LocalRing,
{
    let (d, e) = (model.d(), model.e());
    let class = R::nilpotency_class(ctx);
    let big_d = model.xbar_len();
    let need = required_precision(d, e);
    if n < need {
        return Err(Error::PrecisionInsufficient {
            required: need,
            available: n,
        });
    }
    let arc = model.arc();
    let w0 = n + class * class * d + 1;
    let arc_need = lift_arc_precision(n, class, d, e);
    if arc.precision() < arc_need {
        return Err(Error::PrecisionInsufficient {
            required: arc_need,
            available: arc.precision(),
        });
    }
    if values.len() != model.num_unknowns() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} unknowns",
            values.len(),
            model.num_unknowns()
        )));
    }
    if xi.is_some_and(|x| x.len() != model.n()) || eta.is_some_and(|y| y.len() != model.r()) {
        return Err(Error::DimensionMismatch(
            "free part has the wrong number of components".into(),
        ));
    }
    let sel = model.selection();
    let q = model.q_poly(ctx, values);
    let qe = q.pow(e as u32);
    let qe1 = qe.times(&q);
    let qe_s = TruncSeries::from_poly(&qe, w0);
    let qe1_s = TruncSeries::from_poly(&qe1, w0);

    let mut comps: Vec<TruncSeries<R>> =
        vec![TruncSeries::zero_in(ctx, w0); model.variety().ambient_dim()];
    for (k, &i) in sel.kept.iter().enumerate() {
        let xi_k = extend_with_base(ctx, xi.map(|x| &x[k]), arc, i, big_d, w0)?;
        let xbar = TruncSeries::from_poly(&model.xbar_poly(ctx, values, k), w0);
        comps[i] = qe1_s.times(&xi_k).plus(&xbar);
    }
    for (k, &i) in sel.eliminated.iter().enumerate() {
        let eta_k = extend_with_base(ctx, eta.map(|y| &y[k]), arc, i, model.ybar_len(), w0)?;
        let ybar = TruncSeries::from_poly(&model.ybar_poly(ctx, values, k), w0);
        comps[i] = qe_s.times(&eta_k).plus(&ybar);
    }

    let eqs = model.variety().equations();
    let derivs: Vec<Vec<_>> = eqs
        .iter()
        .map(|p| {
            sel.eliminated
                .iter()
                .map(|&j| p.partial_derivative(j))
                .collect()
        })
        .collect();
    let r = model.r();
    for iteration in 0..=class {
        let prec = comps[0].precision();
        let sctx = SeriesCtx {
            ring: ctx.clone(),
            precision: prec,
        };
        let p_val: Vec<TruncSeries<R>> = eqs.iter().map(|p| p.eval(&sctx, &comps)).collect();
        if p_val.iter().all(|s| s.is_zero_to_precision()) {
            break;
        }
        if iteration == class {
            return Err(Error::NoConvergence { iterations: class });
        }
        let c = Matrix::from_fn(&sctx, r, r, |i, j| derivs[i][j].eval(&sctx, &comps));
        let wf = weierstrass_prepare(&c.det()?)?;
        if wf.q != q {
            return Err(Error::DivisionNotExact(
                "the Jacobian minor of the lift does not factor through q".into(),
            ));
        }
        let uinv = wf.u.inverse()?;
        let w = c.adjugate()?.mul_vec(&p_val)?;
        for (k, wk) in w.iter().enumerate() {
            let (quot, rem) = wk.div_by_distinguished(&q, class)?;
            if !rem.is_zero() {
                return Err(Error::DivisionNotExact(
                    "adj(C) p is not divisible by q".into(),
                ));
            }
            let z = uinv.times(&quot);
            let (_, zrem) = z.div_by_distinguished(&qe, class)?;
            if !zrem.is_zero() {
                return Err(Error::DivisionNotExact(
                    "the correction is not divisible by q^e".into(),
                ));
            }
            let i = sel.eliminated[k];
            comps[i] = comps[i].minus(&z);
        }
        let newp = comps.iter().map(TruncSeries::precision).min().unwrap_or(0);
        for s in comps.iter_mut() {
            *s = s.truncate(newp);
        }
    }
    if comps[0].precision() < n {
        return Err(Error::PrecisionInsufficient {
            required: n,
            available: comps[0].precision(),
        });
    }
    let out: Vec<TruncSeries<R>> = comps.iter().map(|s| s.truncate(n)).collect();
    let sctx = SeriesCtx {
        ring: ctx.clone(),
        precision: n,
    };
    if !eqs
        .iter()
        .all(|p| p.eval(&sctx, &out).is_zero_to_precision())
    {
        return Err(Error::NoConvergence { iterations: class });
    }
    Ok(out)
}
