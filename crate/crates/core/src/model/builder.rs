//! The finite system whose solutions present the model `Y`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::matrix::Matrix;
use crate::algebra::multipoly::{MultiPoly, PolyRing};
use crate::algebra::ring::{Algebra, LocalRing, Ring};
use crate::algebra::scalar::Scalar;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::geometry::{FormalArc, MinorSelection, Variety};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `det(B) mod q`
    Det,
    /// `p mod q^e`
    Residual,
    /// `adj(B) p mod q^(e+1)`
    Adjugate,
}

/// Where an equation comes from: family, defining-equation index, power of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquationLabel {
    pub family: Family,
    pub index: usize,
    pub t_power: usize,
}

impl fmt::Display for EquationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::Det => "det",
            Family::Residual => "p",
            Family::Adjugate => "adj",
        };
        write!(f, "{fam}[{}] t^{}", self.index, self.t_power)
    }
}

/// Presentation of `Y`: unknowns `a_l`, `xbar_<v>_j`, `ybar_<v>_j`, the
/// polynomial equations in them, and the base point.
#[derive(Clone, Debug)]
pub struct FiniteModel<F: Scalar> {
    variety: Variety<F>,
    arc: FormalArc<F>,
    selection: MinorSelection,
    e: usize,
    unknowns: Arc<PolyRing>,
    equations: Vec<MultiPoly<F>>,
    labels: Vec<EquationLabel>,
    base_point: Vec<F>,
}

/// Result of building: a genuine model, or the smooth case `d = 0` where `Y`
/// is a point and the model below is empty.
#[derive(Clone, Debug)]
pub enum BuildOutcome<F: Scalar> {
    Model(FiniteModel<F>),
    SmoothPoint(FiniteModel<F>),
}

impl<F: Scalar> BuildOutcome<F> {
    pub fn model(&self) -> &FiniteModel<F> {
        match self {
            BuildOutcome::Model(m) | BuildOutcome::SmoothPoint(m) => m,
        }
    }

    pub fn into_model(self) -> FiniteModel<F> {
        match self {
            BuildOutcome::Model(m) | BuildOutcome::SmoothPoint(m) => m,
        }
    }

    pub fn is_smooth_point(&self) -> bool {
        matches!(self, BuildOutcome::SmoothPoint(_))
    }
}

/// Remainders of the three families, before coefficient extraction.
pub struct Residues<R: Ring> {
    pub q: UniPoly<R>,
    pub xbar: Vec<UniPoly<R>>,
    pub ybar: Vec<UniPoly<R>>,
    /// `B = (∂p_i/∂y_j)(xbar, ybar)`
    pub b: Matrix<UniPoly<R>>,
    /// `p_i(xbar, ybar)`
    pub p: Vec<UniPoly<R>>,
    pub det_rem: UniPoly<R>,
    pub p_rem: Vec<UniPoly<R>>,
    pub adj_rem: Vec<UniPoly<R>>,
}

/// Smallest arc precision accepted for `d` and `e`.
pub fn required_precision(d: usize, e: usize) -> usize {
    2 * d * (e + 1) + 2
}

impl<F: Scalar> FiniteModel<F> {
    fn layout(
        variety: &Variety<F>,
        arc: &FormalArc<F>,
        selection: &MinorSelection,
        e: usize,
    ) -> Self {
        let d = selection.d;
        let mut names: Vec<String> = (0..d).map(|l| format!("a_{l}")).collect();
        for &i in &selection.kept {
            for j in 0..(e + 1) * d {
                names.push(format!("xbar_{}_{}", variety.variables()[i], j));
            }
        }
        for &i in &selection.eliminated {
            for j in 0..e * d {
                names.push(format!("ybar_{}_{}", variety.variables()[i], j));
            }
        }
        let mut base_point = vec![F::from_i64(0); d];
        for &i in &selection.kept {
            base_point.extend((0..(e + 1) * d).map(|j| arc.coeff(i, j)));
        }
        for &i in &selection.eliminated {
            base_point.extend((0..e * d).map(|j| arc.coeff(i, j)));
        }
        FiniteModel {
            variety: variety.clone(),
            arc: arc.clone(),
            selection: selection.clone(),
            e,
            unknowns: PolyRing::new(names),
            equations: Vec::new(),
            labels: Vec::new(),
            base_point,
        }
    }

    pub fn variety(&self) -> &Variety<F> {
        &self.variety
    }

    pub fn arc(&self) -> &FormalArc<F> {
        &self.arc
    }

    pub fn selection(&self) -> &MinorSelection {
        &self.selection
    }

    /// Number of kept variables.
    pub fn n(&self) -> usize {
        self.selection.kept.len()
    }

    /// Number of eliminated variables (the codimension).
    pub fn r(&self) -> usize {
        self.selection.eliminated.len()
    }

    pub fn d(&self) -> usize {
        self.selection.d
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// Degree bound `(e+1) d` of `xbar`.
    pub fn xbar_len(&self) -> usize {
        (self.e + 1) * self.d()
    }

    /// Degree bound `e d` of `ybar`.
    pub fn ybar_len(&self) -> usize {
        self.e * self.d()
    }

    pub fn unknowns(&self) -> &Arc<PolyRing> {
        &self.unknowns
    }

    pub fn unknown_names(&self) -> &[String] {
        self.unknowns.vars()
    }

    pub fn num_unknowns(&self) -> usize {
        self.unknowns.nvars()
    }

    pub fn equations(&self) -> &[MultiPoly<F>] {
        &self.equations
    }

    pub fn labels(&self) -> &[EquationLabel] {
        &self.labels
    }

    pub fn base_point(&self) -> &[F] {
        &self.base_point
    }

    /// Closed-form unknown count `d(e+1)n + edr + d`.
    pub fn expected_unknowns(&self) -> usize {
        let (n, r, d, e) = (self.n(), self.r(), self.d(), self.e);
        d * (e + 1) * n + e * d * r + d
    }

    /// Closed-form equation count `d + edr + (e+1)dr`.
    pub fn expected_equations(&self) -> usize {
        let (r, d, e) = (self.r(), self.d(), self.e);
        d + e * d * r + (e + 1) * d * r
    }

    fn xbar_offset(&self, i: usize) -> usize {
        self.d() + i * self.xbar_len()
    }

    fn ybar_offset(&self, i: usize) -> usize {
        self.d() + self.n() * self.xbar_len() + i * self.ybar_len()
    }

    /// Index of `a_l`.
    pub fn a_index(&self, l: usize) -> usize {
        l
    }

    /// Index of `xbar_{i,j}` (`i` counts kept variables).
    pub fn xbar_index(&self, i: usize, j: usize) -> usize {
        self.xbar_offset(i) + j
    }

    /// Index of `ybar_{i,j}` (`i` counts eliminated variables).
    pub fn ybar_index(&self, i: usize, j: usize) -> usize {
        self.ybar_offset(i) + j
    }

    /// `q = t^d + Σ a_l t^l` for an assignment of the unknowns.
    pub fn q_poly<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R]) -> UniPoly<R> {
        let mut c: Vec<R> = values[..self.d()].to_vec();
        c.push(R::one(ctx));
        UniPoly::new(ctx, c)
    }

    pub fn xbar_poly<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R], i: usize) -> UniPoly<R> {
        let o = self.xbar_offset(i);
        UniPoly::new(ctx, values[o..o + self.xbar_len()].to_vec())
    }

    pub fn ybar_poly<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R], i: usize) -> UniPoly<R> {
        let o = self.ybar_offset(i);
        UniPoly::new(ctx, values[o..o + self.ybar_len()].to_vec())
    }

    /// The three remainders of the system for an assignment over any `F`-algebra.
    pub fn residues<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R]) -> Result<Residues<R>> {
        if values.len() != self.num_unknowns() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} unknowns",
                values.len(),
                self.num_unknowns()
            )));
        }
        let q = self.q_poly(ctx, values);
        let xbar: Vec<UniPoly<R>> = (0..self.n())
            .map(|i| self.xbar_poly(ctx, values, i))
            .collect();
        let ybar: Vec<UniPoly<R>> = (0..self.r())
            .map(|i| self.ybar_poly(ctx, values, i))
            .collect();
        let mut ambient: Vec<UniPoly<R>> = vec![UniPoly::zero_in(ctx); self.variety.ambient_dim()];
        for (k, &i) in self.selection.kept.iter().enumerate() {
            ambient[i] = xbar[k].clone();
        }
        for (k, &i) in self.selection.eliminated.iter().enumerate() {
            ambient[i] = ybar[k].clone();
        }
        let eqs = self.variety.equations();
        let b = Matrix::from_fn(ctx, self.r(), self.r(), |i, j| {
            eqs[i]
                .partial_derivative(self.selection.eliminated[j])
                .eval(ctx, &ambient)
        });
        let p: Vec<UniPoly<R>> = eqs.iter().map(|f| f.eval(ctx, &ambient)).collect();
        let qe = q.pow(self.e as u32);
        let qe1 = qe.times(&q);
        let det_rem = b.det()?.rem(&q)?;
        let p_rem = p.iter().map(|pi| pi.rem(&qe)).collect::<Result<Vec<_>>>()?;
        let adj_p = b.adjugate()?.mul_vec(&p)?;
        let adj_rem = adj_p
            .iter()
            .map(|w| w.rem(&qe1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Residues {
            q,
            xbar,
            ybar,
            b,
            p,
            det_rem,
            p_rem,
            adj_rem,
        })
    }

    /// Values of the model equations at an assignment.
    pub fn evaluate<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R]) -> Vec<R> {
        self.equations.iter().map(|g| g.eval(ctx, values)).collect()
    }

    pub fn is_solution<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R]) -> bool {
        values.len() == self.num_unknowns()
            && self.equations.iter().all(|g| g.eval(ctx, values).is_zero())
    }

    /// Whether every value reduces to the base point modulo the maximal ideal.
    pub fn reduces_to_base<R: Algebra<F> + LocalRing>(&self, ctx: &R::Ctx, values: &[R]) -> bool {
        values.len() == self.num_unknowns()
            && values
                .iter()
                .zip(&self.base_point)
                .all(|(v, b)| v.minus(&R::from_scalar(ctx, b)).in_maximal_ideal())
    }

    /// The base point lifted into an `F`-algebra.
    pub fn base_point_in<R: Algebra<F>>(&self, ctx: &R::Ctx) -> Vec<R> {
        self.base_point
            .iter()
            .map(|b| R::from_scalar(ctx, b))
            .collect()
    }
}

/// Builds the finite model for the complete intersection `x`, the arc and the
/// selected minor, with parameter `e >= 1`.
pub fn build_model<F: Scalar>(
    x: &Variety<F>,
    arc: &FormalArc<F>,
    sel: &MinorSelection,
    e: usize,
) -> Result<BuildOutcome<F>> {
    if e == 0 {
        return Err(Error::InvalidInput("e must be positive".into()));
    }
    if !x.is_complete_intersection() || sel.eliminated.len() != x.equations().len() {
        return Err(Error::InvalidInput(
            "the model needs a complete intersection with one eliminated variable per equation"
                .into(),
        ));
    }
    if arc.ring().vars() != x.variables() {
        return Err(Error::DimensionMismatch(
            "arc and variety use different variables".into(),
        ));
    }
    let need = required_precision(sel.d, e);
    if arc.precision() < need {
        return Err(Error::PrecisionInsufficient {
            required: need,
            available: arc.precision(),
        });
    }
    let mut model = FiniteModel::layout(x, arc, sel, e);
    if sel.d == 0 {
        return Ok(BuildOutcome::SmoothPoint(model));
    }
    let ring = model.unknowns.clone();
    let vars: Vec<MultiPoly<F>> = (0..ring.nvars())
        .map(|k| MultiPoly::var(&ring, k))
        .collect();
    let res = model.residues::<MultiPoly<F>>(&ring, &vars)?;
    let (d, ed, d1) = (model.d(), model.ybar_len(), model.xbar_len());
    let mut equations = Vec::with_capacity(model.expected_equations());
    let mut labels = Vec::with_capacity(model.expected_equations());
    for (k, c) in res.det_rem.padded(d).into_iter().enumerate() {
        equations.push(c);
        labels.push(EquationLabel {
            family: Family::Det,
            index: 0,
            t_power: k,
        });
    }
    for (i, pr) in res.p_rem.iter().enumerate() {
        for (k, c) in pr.padded(ed).into_iter().enumerate() {
            equations.push(c);
            labels.push(EquationLabel {
                family: Family::Residual,
                index: i,
                t_power: k,
            });
        }
    }
    for (i, ar) in res.adj_rem.iter().enumerate() {
        for (k, c) in ar.padded(d1).into_iter().enumerate() {
            equations.push(c);
            labels.push(EquationLabel {
                family: Family::Adjugate,
                index: i,
                t_power: k,
            });
        }
    }
    model.equations = equations;
    model.labels = labels;
    if let Some(k) = model
        .equations
        .iter()
        .position(|g| !Ring::is_zero(&g.eval_scalar(&model.base_point)))
    {
        return Err(Error::NotASolution(format!(
            "base point violates equation {} ({})",
            k, model.labels[k]
        )));
    }
    Ok(BuildOutcome::Model(model))
}
