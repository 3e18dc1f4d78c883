//! Choice of the Jacobian minor that defines the eliminated variables.

use itertools::Itertools;
use serde::Serialize;

use super::arc::{FormalArc, Order};
use super::variety::Variety;
use crate::algebra::matrix::Matrix;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::{SeriesCtx, TruncSeries};
use crate::error::{Error, Result};

pub const DEFAULT_SEARCH_CAP: u128 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorSelection {
    /// Ambient indices of the eliminated variables `y`, ascending.
    pub eliminated: Vec<usize>,
    /// Ambient indices of the kept variables `x`, ascending.
    pub kept: Vec<usize>,
    pub eliminated_names: Vec<String>,
    pub d: usize,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The Jacobian `∂p_i/∂v_j` evaluated along the arc.
pub fn jacobian_along_arc<F: Scalar>(
    x: &Variety<F>,
    arc: &FormalArc<F>,
) -> Vec<Vec<TruncSeries<F>>> {
    x.equations()
        .iter()
        .map(|p| {
            (0..x.ambient_dim())
                .map(|j| arc.evaluate(&p.partial_derivative(j)))
                .collect()
        })
        .collect()
}

/// Order along the arc of the minor on the given columns.
pub fn minor_order<F: Scalar>(
    jac: &[Vec<TruncSeries<F>>],
    cols: &[usize],
    precision: usize,
) -> Order {
    let ctx = SeriesCtx {
        ring: (),
        precision,
    };
    let m = Matrix::from_fn(&ctx, jac.len(), cols.len(), |i, j| jac[i][cols[j]].clone());
    Order::of(&m.det().expect("square minor"))
}

fn selection<F: Scalar>(x: &Variety<F>, eliminated: Vec<usize>, d: usize) -> MinorSelection {
    let kept = (0..x.ambient_dim())
        .filter(|i| !eliminated.contains(i))
        .collect();
    let eliminated_names = eliminated
        .iter()
        .map(|&i| x.variables()[i].clone())
        .collect();
    MinorSelection {
        eliminated,
        kept,
        eliminated_names,
        d,
    }
}

/// Picks the `r`-subset of variables whose Jacobian minor has least finite
/// order along `arc`; ties go to the lexicographically least set of names.
/// An explicit `choice` of names bypasses the search.
pub fn select_minor<F: Scalar>(
    x: &Variety<F>,
    arc: &FormalArc<F>,
    choice: Option<&[String]>,
    cap: u128,
) -> Result<MinorSelection> {
    if !x.is_complete_intersection() {
        return Err(Error::InvalidInput(format!(
            "{} equations for codimension {}: reduce to a complete intersection first",
            x.equations().len(),
            x.codim()
        )));
    }
    let r = x.equations().len();
    let n_amb = x.ambient_dim();
    let jac = jacobian_along_arc(x, arc);
    let prec = arc.precision();
    if let Some(names) = choice {
        if names.len() != r {
            return Err(Error::InvalidInput(format!(
                "minor needs {r} variables, got {}",
                names.len()
            )));
        }
        let mut cols = names
            .iter()
            .map(|v| {
                x.ring()
                    .index_of(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        cols.sort_unstable();
        if cols.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("minor variables repeat".into()));
        }
        return match minor_order(&jac, &cols, prec) {
            Order::Finite(d) => Ok(selection(x, cols, d)),
            Order::AtLeast(_) => Err(Error::NoFiniteMinor { precision: prec }),
        };
    }
    let subsets = binomial(n_amb, r);
    if subsets > cap {
        return Err(Error::SearchCapExceeded { subsets, cap });
    }
    let mut best: Option<(usize, Vec<String>, Vec<usize>)> = None;
    for cols in (0..n_amb).combinations(r) {
        let Order::Finite(d) = minor_order(&jac, &cols, prec) else {
            continue;
        };
        let mut key: Vec<String> = cols.iter().map(|&i| x.variables()[i].clone()).collect();
        key.sort();
        let better = match &best {
            None => true,
            Some((bd, bkey, _)) => (d, &key) < (*bd, bkey),
        };
        if better {
            best = Some((d, key, cols));
        }
    }
    match best {
        Some((d, _, cols)) => Ok(selection(x, cols, d)),
        None => Err(Error::NoFiniteMinor { precision: prec }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multipoly::PolyRing;
    use crate::algebra::scalar::Rational;
    use std::collections::BTreeMap;

    fn setup(
        vars: &[&str],
        eqs: &[&str],
        comps: &[&str],
    ) -> (Variety<Rational>, FormalArc<Rational>) {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let x = Variety::parse(&names, eqs, None).unwrap();
        let map: BTreeMap<String, String> = names
            .iter()
            .cloned()
            .zip(comps.iter().map(|s| s.to_string()))
            .collect();
        let ring = PolyRing::new(names);
        (x, FormalArc::parse(&ring, 10, &map).unwrap())
    }

    #[test]
    fn node_eliminates_y() {
        let (x, g) = setup(&["x", "y"], &["x*y"], &["t", "0"]);
        let s = select_minor(&x, &g, None, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(s.eliminated_names, ["y"]);
        assert_eq!(s.d, 1);
    }

    #[test]
    fn cone_eliminates_z() {
        let (x, g) = setup(&["x", "y", "z"], &["x^2 - y*z"], &["0", "t", "0"]);
        let s = select_minor(&x, &g, None, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(s.eliminated_names, ["z"]);
        assert_eq!((s.d, s.kept.clone()), (1, vec![0, 1]));
    }

    #[test]
    fn smooth_point_has_order_zero() {
        let (x, g) = setup(&["x", "y"], &["x - y^2"], &["t^2", "t"]);
        let s = select_minor(&x, &g, None, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(
            (s.d, s.eliminated_names.clone()),
            (0, vec!["x".to_string()])
        );
    }

    #[test]
    fn singular_arc_and_cap() {
        let (x, g) = setup(&["x", "y"], &["x*y"], &["0", "0"]);
        assert_eq!(
            select_minor(&x, &g, None, DEFAULT_SEARCH_CAP).unwrap_err(),
            Error::NoFiniteMinor { precision: 10 }
        );
        let (x, g) = setup(&["x", "y"], &["x*y"], &["t", "0"]);
        assert_eq!(
            select_minor(&x, &g, None, 1).unwrap_err(),
            Error::SearchCapExceeded { subsets: 2, cap: 1 }
        );
        let forced = select_minor(&x, &g, Some(&["y".to_string()]), 1).unwrap();
        assert_eq!(forced.d, 1);
        assert!(select_minor(&x, &g, Some(&["x".to_string()]), 1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 20), 137846528820);
        assert_eq!(binomial(2, 3), 0);
    }
}
