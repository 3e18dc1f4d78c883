//! Polynomial rings in jet variables and the total derivative.

use std::sync::Arc;

use crate::algebra::multipoly::{MultiPoly, PolyRing};
use crate::algebra::ring::{Algebra, Ring};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};

/// `k[x_i^(j) : i < n, j <= order]`, variable `x_i^(j)` named `<x_i>__<j>`
/// at index `j * n + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetRing {
    ambient: Arc<PolyRing>,
    order: usize,
    ring: Arc<PolyRing>,
}

pub fn jet_name(var: &str, level: usize) -> String {
    format!("{var}__{level}")
}

impl JetRing {
    pub fn new(ambient: &Arc<PolyRing>, order: usize) -> Result<Self> {
        let n = ambient.nvars();
        let mut names = Vec::with_capacity(n * (order + 1));
        for j in 0..=order {
            for v in ambient.vars() {
                names.push(jet_name(v, j));
            }
        }
        if let Some(v) = ambient.vars().iter().find(|v| names.contains(v)) {
            return Err(Error::InvalidInput(format!(
                "ambient variable `{v}` collides with a jet variable name"
            )));
        }
        Ok(JetRing {
            ambient: ambient.clone(),
            order,
            ring: PolyRing::new(names),
        })
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.nvars()
    }

    /// Index of `x_i^(j)`.
    pub fn index(&self, i: usize, level: usize) -> usize {
        level * self.ambient.nvars() + i
    }

    pub fn var<F: Scalar>(&self, i: usize, level: usize) -> MultiPoly<F> {
        MultiPoly::var(&self.ring, self.index(i, level))
    }

    /// Relabels a polynomial in the ambient variables as one in level 0.
    pub fn level_zero<F: Scalar>(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        f.extend_to(&self.ring)
    }

    /// Highest level occurring in `g`.
    pub fn max_level<F: Scalar>(&self, g: &MultiPoly<F>) -> Option<usize> {
        let n = self.ambient.nvars();
        g.terms()
            .flat_map(|(e, _)| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(k, _)| k / n)
                    .collect::<Vec<_>>()
            })
            .max()
    }

    fn derive_with<F: Scalar>(
        &self,
        g: &MultiPoly<F>,
        weight: impl Fn(usize) -> i64,
    ) -> Result<MultiPoly<F>> {
        let n = self.ambient.nvars();
        if self.max_level(g).is_some_and(|l| l >= self.order) {
            return Err(Error::InvalidInput(format!(
                "jet ring of order {} has no level above the input",
                self.order
            )));
        }
        let mut out = MultiPoly::zero_in(&self.ring);
        for k in 0..self.order * n {
            if !g.involves(k) {
                continue;
            }
            let (i, j) = (k % n, k / n);
            let dk = g.partial_derivative(k);
            let next = self.var::<F>(i, j + 1).scale(&F::from_i64(weight(j)));
            out.add_product(&dk, &next);
        }
        Ok(out)
    }

    /// The derivation with `D(x_i^(j)) = x_i^(j+1)`.
    pub fn total_derivative<F: Scalar>(&self, g: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        self.derive_with(g, |_| 1)
    }

    /// The derivation with `D(x_i^(j)) = (j+1) x_i^(j+1)`, under which the
    /// components `f^(l)` satisfy `(l+1) f^(l+1) = D f^(l)`.
    pub fn divided_total_derivative<F: Scalar>(&self, g: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        self.derive_with(g, |j| j as i64 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::scalar::Rational;

    fn jr(m: usize) -> JetRing {
        JetRing::new(&PolyRing::new(["x", "y"]), m).unwrap()
    }

    fn p(j: &JetRing, s: &str) -> MultiPoly<Rational> {
        parse_poly(s, j.ring()).unwrap()
    }

    #[test]
    fn leibniz_on_a_product() {
        let j = jr(2);
        let d = j.total_derivative(&p(&j, "x__0*y__0")).unwrap();
        assert_eq!(d, p(&j, "x__1*y__0 + x__0*y__1"));
        assert!(j.total_derivative(&p(&j, "5")).unwrap().is_zero());
    }

    #[test]
    fn second_derivative_of_a_square() {
        let j = jr(2);
        let once = j.total_derivative(&p(&j, "x__0^2")).unwrap();
        let twice = j.total_derivative(&once).unwrap();
        assert_eq!(twice, p(&j, "2*x__1^2 + 2*x__0*x__2"));
    }

    #[test]
    fn top_level_cannot_be_derived() {
        let j = jr(1);
        assert!(j.total_derivative(&p(&j, "x__1")).is_err());
    }

    #[test]
    fn colliding_names_are_rejected() {
        assert!(JetRing::new(&PolyRing::new(["x", "x__0"]), 1).is_err());
    }
}
