//! Jacobian rank and dimension bounds at the base point.

use serde::Serialize;

use super::builder::FiniteModel;
use crate::algebra::matrix::{rank, Matrix};
use crate::algebra::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelDiagnostics {
    pub jacobian_rank: usize,
    pub tangent_dim: usize,
    /// `[d(2n - 2r), d(2n + r + 1)]`, reported for `e = 1` only.
    pub bounds: Option<(i64, i64)>,
}

pub fn diagnostics<F: Scalar>(m: &FiniteModel<F>) -> ModelDiagnostics {
    let u = m.num_unknowns();
    let bp = m.base_point();
    let jac = Matrix::from_fn(&(), m.equations().len(), u, |i, j| {
        m.equations()[i].partial_derivative(j).eval_scalar(bp)
    });
    let jacobian_rank = rank(&jac);
    let bounds = (m.e() == 1).then(|| {
        let (n, r, d) = (m.n() as i64, m.r() as i64, m.d() as i64);
        (d * (2 * n - 2 * r), d * (2 * n + r + 1))
    });
    ModelDiagnostics {
        jacobian_rank,
        tangent_dim: u - jacobian_rank,
        bounds,
    }
}
