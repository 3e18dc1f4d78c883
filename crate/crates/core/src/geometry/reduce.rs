//! Reduction of an arbitrary presentation to a complete intersection
//! containing it, certified along the arc.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::arc::{check_arc, FormalArc};
use super::minor::{select_minor, MinorSelection};
use super::variety::Variety;
use crate::algebra::multipoly::MultiPoly;
use crate::algebra::ring::{Algebra, Ring};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<F: Scalar> {
    pub variety: Variety<F>,
    /// Row `i` holds the coefficients of `F_i = Σ_j a_ij f_j`.
    pub coefficients: Vec<Vec<F>>,
    pub trials: usize,
    pub certificate: MinorSelection,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub trials: usize,
    pub coefficients: Vec<Vec<String>>,
    pub arc_on_reduction: bool,
    pub minor: Vec<String>,
    pub d: usize,
}

impl<F: Scalar> Reduction<F> {
    pub fn report(&self) -> ReductionReport {
        ReductionReport {
            trials: self.trials,
            coefficients: self
                .coefficients
                .iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect())
                .collect(),
            arc_on_reduction: true,
            minor: self.certificate.eliminated_names.clone(),
            d: self.certificate.d,
        }
    }
}

/// The generator used for coefficient draws.
pub fn coefficient_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One `r x s` draw from the sample set of `F`.
pub fn draw_coefficients<F: Scalar>(rng: &mut ChaCha8Rng, r: usize, s: usize) -> Vec<Vec<F>> {
    (0..r)
        .map(|_| (0..s).map(|_| F::sample(rng)).collect())
        .collect()
}

fn combine<F: Scalar>(x: &Variety<F>, a: &[Vec<F>]) -> Vec<MultiPoly<F>> {
    a.iter()
        .map(|row| {
            let mut acc = MultiPoly::zero_in(x.ring());
            for (c, f) in row.iter().zip(x.equations()) {
                acc.add_assign_ref(&f.scale(c));
            }
            acc
        })
        .collect()
}

/// Replaces the `s` equations by `r = codim` random combinations, retrying
/// until the arc lies on the result with a Jacobian minor of finite order.
pub fn reduce_to_complete_intersection<F: Scalar>(
    x: &Variety<F>,
    arc: &FormalArc<F>,
    seed: u64,
    max_trials: usize,
    cap: u128,
) -> Result<Reduction<F>> {
    let r = x.codim();
    let s = x.equations().len();
    if s == r {
        let certificate = select_minor(x, arc, None, cap)?;
        let identity = (0..r)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        if i == j {
                            F::from_i64(1)
                        } else {
                            F::from_i64(0)
                        }
                    })
                    .collect()
            })
            .collect();
        return Ok(Reduction {
            variety: x.clone(),
            coefficients: identity,
            trials: 0,
            certificate,
        });
    }
    if !check_arc(x, arc)?.pass {
        return Err(Error::InvalidInput(
            "the arc does not lie on the variety".into(),
        ));
    }
    let mut rng = coefficient_rng(seed);
    for trial in 1..=max_trials {
        let a = draw_coefficients::<F>(&mut rng, r, s);
        let eqs = combine(x, &a);
        if eqs.iter().any(Ring::is_zero) {
            continue;
        }
        let m = Variety::new(x.ring().clone(), eqs, Some(r))?;
        if !check_arc(&m, arc)?.pass {
            continue;
        }
        match select_minor(&m, arc, None, cap) {
            Ok(certificate) => {
                return Ok(Reduction {
                    variety: m,
                    coefficients: a,
                    trials: trial,
                    certificate,
                })
            }
            Err(Error::NoFiniteMinor { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ReductionFailed {
        trials: max_trials,
        best_d: None,
    })
}
