//! Presentation of the jet scheme `J_m(X)`.

use serde::Serialize;

use super::derivation::JetRing;
use crate::algebra::multipoly::MultiPoly;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::{SeriesCtx, TruncSeries};
use crate::error::Result;
use crate::geometry::Variety;

/// Jet variables up to level `m` and, per defining equation `f`, the
/// components `f^(0..=m)` with `f(Σ_j x^(j) t^j) = Σ_l f^(l) t^l mod t^(m+1)`.
#[derive(Clone, Debug)]
pub struct JetPresentation<F: Scalar> {
    pub jets: JetRing,
    /// `generators[k][l] = f_k^(l)`
    pub generators: Vec<Vec<MultiPoly<F>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JetPresentationFile {
    pub order: usize,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
}

/// Components `g^(0..=m)` of `g` in the given jet ring.
pub fn jet_components<F: Scalar>(jets: &JetRing, g: &MultiPoly<F>, m: usize) -> Vec<MultiPoly<F>> {
    let ring = jets.ring();
    let sctx = SeriesCtx {
        ring: ring.clone(),
        precision: m + 1,
    };
    let vals: Vec<TruncSeries<MultiPoly<F>>> = (0..jets.ambient_dim())
        .map(|i| TruncSeries::new(ring, (0..=m).map(|j| jets.var(i, j)).collect(), m + 1))
        .collect();
    g.eval(&sctx, &vals).coeffs().to_vec()
}

pub fn jet_presentation<F: Scalar>(x: &Variety<F>, m: usize) -> Result<JetPresentation<F>> {
    let jets = JetRing::new(x.ring(), m)?;
    let generators = x
        .equations()
        .iter()
        .map(|f| jet_components(&jets, f, m))
        .collect();
    Ok(JetPresentation { jets, generators })
}

impl<F: Scalar> JetPresentation<F> {
    pub fn order(&self) -> usize {
        self.jets.order()
    }

    /// Generators listed level by level.
    pub fn flat_generators(&self) -> Vec<&MultiPoly<F>> {
        (0..=self.order())
            .flat_map(|l| self.generators.iter().map(move |g| &g[l]))
            .collect()
    }

    pub fn to_file(&self) -> JetPresentationFile {
        JetPresentationFile {
            order: self.order(),
            variables: self.jets.ring().vars().to_vec(),
            equations: self
                .flat_generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
        }
    }
}
