//! File formats read and written by the command-line tool.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::multipoly::PolyRing;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncSeries;
use crate::error::{Error, Result};
use crate::geometry::{FormalArc, Variety};
use crate::local::testring::{TestRing, TestRingElement};
use crate::model::{FiniteModel, ModelDiagnostics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// `rational` or `p=<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        let p = s
            .strip_prefix("p=")
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(|| {
                Error::InvalidInput(format!("field `{s}` is neither `rational` nor `p=<prime>`"))
            })?;
        Ok(FieldSpec::Prime { p })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime { p } => write!(f, "p={p}"),
        }
    }
}

pub fn from_json<T: DeserializeOwned>(src: &str, what: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyFile {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim: Option<usize>,
}

impl VarietyFile {
    pub fn to_variety<F: Scalar>(&self) -> Result<Variety<F>> {
        Variety::parse(&self.variables, &self.equations, self.codim)
    }

    pub fn from_variety<F: Scalar>(field: FieldSpec, x: &Variety<F>) -> Self {
        VarietyFile {
            field,
            variables: x.variables().to_vec(),
            equations: x.equations().iter().map(|f| f.to_string()).collect(),
            codim: x.declared_codim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcFile {
    pub t_precision: usize,
    pub components: BTreeMap<String, String>,
}

impl ArcFile {
    pub fn to_arc<F: Scalar>(&self, x: &Variety<F>) -> Result<FormalArc<F>> {
        FormalArc::parse(x.ring(), self.t_precision, &self.components)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestRingFile {
    pub generators: Vec<String>,
    pub nilpotency: u32,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl TestRingFile {
    pub fn to_ring(&self) -> Result<&'static TestRing> {
        TestRing::from_spec(&self.generators, self.nilpotency, &self.relations)
    }

    pub fn from_ring(ring: &TestRing) -> Self {
        let gens = ring.generators();
        let relations = ring
            .relations()
            .iter()
            .map(|e| {
                e.iter()
                    .zip(gens)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, g)| {
                        if k == 1 {
                            g.clone()
                        } else {
                            format!("{g}^{k}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        TestRingFile {
            generators: gens.to_vec(),
            nilpotency: ring.nilpotency_bound(),
            relations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub vars: usize,
    pub eqs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelFile {
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
    pub base_point: BTreeMap<String, String>,
    pub counts: Counts,
    pub bounds: Option<(i64, i64)>,
    pub tangent_dim: usize,
    pub d: usize,
    pub e: usize,
    pub minor: Vec<String>,
    pub smooth: bool,
    pub field: FieldSpec,
}

impl ModelFile {
    pub fn new<F: Scalar>(field: FieldSpec, m: &FiniteModel<F>, diag: &ModelDiagnostics) -> Self {
        ModelFile {
            unknowns: m.unknown_names().to_vec(),
            equations: m.equations().iter().map(|f| f.to_string()).collect(),
            base_point: m
                .unknown_names()
                .iter()
                .cloned()
                .zip(m.base_point().iter().map(|c| c.to_string()))
                .collect(),
            counts: Counts {
                vars: m.num_unknowns(),
                eqs: m.equations().len(),
            },
            bounds: diag.bounds,
            tangent_dim: diag.tangent_dim,
            d: m.d(),
            e: m.e(),
            minor: m.selection().eliminated_names.clone(),
            smooth: m.d() == 0,
            field,
        }
    }
}

/// A model solution over a test ring, with optional leading coefficients of
/// the free part `ξ` per kept variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_ring: Option<TestRingFile>,
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub xi: BTreeMap<String, Vec<String>>,
}

pub struct ParsedSolution<F: Scalar> {
    pub ring: &'static TestRing,
    pub values: Vec<TestRingElement<F>>,
    pub xi: Option<Vec<TruncSeries<TestRingElement<F>>>>,
}

impl SolutionFile {
    pub fn from_values<F: Scalar>(
        m: &FiniteModel<F>,
        ring: &TestRing,
        values: &[TestRingElement<F>],
    ) -> Self {
        SolutionFile {
            test_ring: Some(TestRingFile::from_ring(ring)),
            values: m
                .unknown_names()
                .iter()
                .cloned()
                .zip(values.iter().map(|v| v.to_string()))
                .collect(),
            xi: BTreeMap::new(),
        }
    }

    pub fn parse<F: Scalar>(
        &self,
        m: &FiniteModel<F>,
        default_ring: &'static TestRing,
    ) -> Result<ParsedSolution<F>> {
        let ring = match &self.test_ring {
            Some(t) => t.to_ring()?,
            None => default_ring,
        };
        if let Some(extra) = self.values.keys().find(|k| !m.unknown_names().contains(k)) {
            return Err(Error::UnknownVariable(extra.clone()));
        }
        let values = m
            .unknown_names()
            .iter()
            .map(|name| {
                let src = self.values.get(name).ok_or_else(|| {
                    Error::DimensionMismatch(format!("no value for unknown `{name}`"))
                })?;
                TestRingElement::parse(ring, src)
            })
            .collect::<Result<Vec<_>>>()?;
        let xi = if self.xi.is_empty() {
            None
        } else {
            let x = m.variety();
            if let Some(extra) = self.xi.keys().find(|k| x.ring().index_of(k).is_none()) {
                return Err(Error::UnknownVariable(extra.clone()));
            }
            let series = m
                .selection()
                .kept
                .iter()
                .map(|&i| {
                    let coeffs = match self.xi.get(&x.variables()[i]) {
                        Some(cs) => cs
                            .iter()
                            .map(|c| TestRingElement::parse(ring, c))
                            .collect::<Result<Vec<_>>>()?,
                        None => Vec::new(),
                    };
                    let len = coeffs.len();
                    Ok(TruncSeries::new(&ring, coeffs, len))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(series)
        };
        Ok(ParsedSolution { ring, values, xi })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationFile {
    pub test_ring: TestRingFile,
    pub precision: usize,
    pub components: BTreeMap<String, Vec<String>>,
    pub verified: bool,
}

impl DeformationFile {
    pub fn new<F: Scalar>(
        ring: &PolyRing,
        test_ring: &TestRing,
        comps: &[TruncSeries<TestRingElement<F>>],
        verified: bool,
    ) -> Self {
        DeformationFile {
            test_ring: TestRingFile::from_ring(test_ring),
            precision: comps.iter().map(TruncSeries::precision).min().unwrap_or(0),
            components: ring
                .vars()
                .iter()
                .cloned()
                .zip(
                    comps
                        .iter()
                        .map(|s| s.coeffs().iter().map(|c| c.to_string()).collect()),
                )
                .collect(),
            verified,
        }
    }
}
