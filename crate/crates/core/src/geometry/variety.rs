//! Affine varieties given by explicit equations.

use std::sync::Arc;

use crate::algebra::multipoly::{MultiPoly, PolyRing};
use crate::algebra::parse::parse_poly;
use crate::algebra::ring::{Algebra, Ring};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Variety<F: Scalar> {
    ring: Arc<PolyRing>,
    equations: Vec<MultiPoly<F>>,
    codim: Option<usize>,
}

impl<F: Scalar> Variety<F> {
    pub fn new(
        ring: Arc<PolyRing>,
        equations: Vec<MultiPoly<F>>,
        codim: Option<usize>,
    ) -> Result<Self> {
        if equations.is_empty() {
            return Err(Error::InvalidInput(
                "a variety needs at least one equation".into(),
            ));
        }
        if let Some(i) = equations.iter().position(Ring::is_zero) {
            return Err(Error::InvalidInput(format!(
                "equation {i} is the zero polynomial"
            )));
        }
        if equations.iter().any(|p| p.ring().vars() != ring.vars()) {
            return Err(Error::DimensionMismatch(
                "equation ring differs from ambient ring".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(v) = ring.vars().iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::InvalidInput(format!(
                "variable `{v}` is declared twice"
            )));
        }
        if let Some(r) = codim {
            if r == 0 || r > ring.nvars() {
                return Err(Error::InvalidInput(format!(
                    "codimension {r} is out of range"
                )));
            }
            if r > equations.len() {
                return Err(Error::InvalidInput(format!(
                    "codimension {r} exceeds the number of equations {}",
                    equations.len()
                )));
            }
        }
        Ok(Variety {
            ring,
            equations,
            codim,
        })
    }

    pub fn parse<S: AsRef<str>>(
        variables: &[String],
        equations: &[S],
        codim: Option<usize>,
    ) -> Result<Self> {
        let ring = PolyRing::new(variables.iter().cloned());
        let eqs = equations
            .iter()
            .map(|s| parse_poly(s.as_ref(), &ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, eqs, codim)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn variables(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn equations(&self) -> &[MultiPoly<F>] {
        &self.equations
    }

    /// Declared codimension, or the equation count when none is given.
    pub fn codim(&self) -> usize {
        self.codim.unwrap_or(self.equations.len())
    }

    pub fn declared_codim(&self) -> Option<usize> {
        self.codim
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.equations.len() == self.codim()
    }

    /// Number of ambient variables.
    pub fn ambient_dim(&self) -> usize {
        self.ring.nvars()
    }

    /// Multiplies equation `i` by the constant `c`.
    pub fn scale_equation(&self, i: usize, c: &F) -> Result<Self> {
        let mut eqs = self.equations.clone();
        eqs[i] = eqs[i].scale(c);
        Self::new(self.ring.clone(), eqs, self.codim)
    }
}
