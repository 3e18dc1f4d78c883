//! Arcs `γ(t)` known to a finite `t`-precision, and orders along them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::variety::Variety;
use crate::algebra::multipoly::{MultiPoly, PolyRing};
use crate::algebra::parse::parse_poly;
use crate::algebra::ring::{Algebra, Ring};
use crate::algebra::scalar::Scalar;
use crate::algebra::series::{SeriesCtx, TruncSeries};
use crate::error::{Error, Result};

/// An arc over `k`, one truncated series per ambient variable.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalArc<F: Scalar> {
    ring: Arc<PolyRing>,
    components: Vec<TruncSeries<F>>,
}

/// `ord_t` of a series: finite, or at least the precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    AtLeast(usize),
}

impl Order {
    pub fn of<R: Ring>(s: &TruncSeries<R>) -> Order {
        match s.order() {
            Some(k) => Order::Finite(k),
            None => Order::AtLeast(s.precision()),
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(k) => Some(k),
            Order::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => s.serialize_u64(*k as u64),
            Order::AtLeast(_) => s.serialize_str(&self.to_string()),
        }
    }
}

impl<F: Scalar> FormalArc<F> {
    pub fn new(ring: Arc<PolyRing>, components: Vec<TruncSeries<F>>) -> Result<Self> {
        if components.len() != ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "arc has {} components for {} variables",
                components.len(),
                ring.nvars()
            )));
        }
        let n = components.first().map_or(0, TruncSeries::precision);
        if n == 0 || components.iter().any(|c| c.precision() != n) {
            return Err(Error::InvalidInput(
                "arc components need one common positive precision".into(),
            ));
        }
        Ok(FormalArc { ring, components })
    }

    /// Builds an arc from polynomials in `t`, keyed by variable name.
    pub fn parse(
        ring: &Arc<PolyRing>,
        precision: usize,
        components: &BTreeMap<String, String>,
    ) -> Result<Self> {
        if let Some(extra) = components.keys().find(|k| ring.index_of(k).is_none()) {
            return Err(Error::DimensionMismatch(format!(
                "arc component `{extra}` is not a variable"
            )));
        }
        let tring = PolyRing::new(["t"]);
        let mut comps = Vec::with_capacity(ring.nvars());
        for v in ring.vars() {
            let src = components.get(v).ok_or_else(|| {
                Error::DimensionMismatch(format!("arc has no component for `{v}`"))
            })?;
            let p: MultiPoly<F> = parse_poly(src, &tring)?;
            let mut coeffs = vec![<F as num_traits::Zero>::zero(); precision];
            for (e, c) in p.terms() {
                if let Some(slot) = coeffs.get_mut(e[0] as usize) {
                    *slot = c.clone();
                }
            }
            comps.push(TruncSeries::new(&(), coeffs, precision));
        }
        Self::new(ring.clone(), comps)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.components[0].precision()
    }

    pub fn components(&self) -> &[TruncSeries<F>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &TruncSeries<F> {
        &self.components[i]
    }

    /// Coefficient of `t^j` in component `i`, zero beyond the precision.
    pub fn coeff(&self, i: usize, j: usize) -> F {
        let c = &self.components[i];
        if j < c.precision() {
            c.coeff(j).clone()
        } else {
            <F as num_traits::Zero>::zero()
        }
    }

    /// `g(γ(t))`.
    pub fn evaluate(&self, g: &MultiPoly<F>) -> TruncSeries<F> {
        let ctx = SeriesCtx {
            ring: (),
            precision: self.precision(),
        };
        g.eval(&ctx, &self.components)
    }

    /// The same arc viewed over an `F`-algebra `R` (constant deformation).
    pub fn map_into<R: Algebra<F>>(&self, ctx: &R::Ctx) -> Vec<TruncSeries<R>> {
        self.components
            .iter()
            .map(|c| c.map(ctx, |x| R::from_scalar(ctx, x)))
            .collect()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        FormalArc {
            ring: self.ring.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.truncate(precision))
                .collect(),
        }
    }

    fn check_ring(&self, ring: &PolyRing) -> Result<()> {
        if ring.vars() != self.ring.vars() {
            return Err(Error::DimensionMismatch(format!(
                "arc variables {:?} differ from {:?}",
                self.ring.vars(),
                ring.vars()
            )));
        }
        Ok(())
    }
}

/// Index of the first nonzero coefficient of `g(γ)`, or `>= N`.
pub fn ord_along_arc<F: Scalar>(g: &MultiPoly<F>, arc: &FormalArc<F>) -> Order {
    Order::of(&arc.evaluate(g))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcCheck {
    pub precision: usize,
    pub orders: Vec<Order>,
    pub pass: bool,
}

/// Orders of the defining equations along the arc; passes iff all are `>= N`.
pub fn check_arc<F: Scalar>(x: &Variety<F>, arc: &FormalArc<F>) -> Result<ArcCheck> {
    arc.check_ring(x.ring())?;
    let orders: Vec<Order> = x
        .equations()
        .iter()
        .map(|p| ord_along_arc(p, arc))
        .collect();
    let pass = orders.iter().all(|o| matches!(o, Order::AtLeast(_)));
    Ok(ArcCheck {
        precision: arc.precision(),
        orders,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Rational;

    fn arc(vars: &[&str], comps: &[&str], n: usize) -> FormalArc<Rational> {
        let ring = PolyRing::new(vars.iter().copied());
        let map = vars
            .iter()
            .zip(comps)
            .map(|(v, c)| (v.to_string(), c.to_string()))
            .collect();
        FormalArc::parse(&ring, n, &map).unwrap()
    }

    fn variety(vars: &[&str], eqs: &[&str]) -> Variety<Rational> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Variety::parse(&vars, eqs, None).unwrap()
    }

    #[test]
    fn node_and_cone_arcs_lie_on_their_varieties() {
        let c = check_arc(
            &variety(&["x", "y"], &["x*y"]),
            &arc(&["x", "y"], &["t", "0"], 8),
        )
        .unwrap();
        assert!(c.pass);
        let w = variety(&["x", "y", "z"], &["x^2 - y*z"]);
        let c = check_arc(&w, &arc(&["x", "y", "z"], &["0", "t", "0"], 8)).unwrap();
        assert!(c.pass);
    }

    #[test]
    fn off_variety_arc_fails_with_its_order() {
        let c = check_arc(
            &variety(&["x", "y"], &["x*y"]),
            &arc(&["x", "y"], &["t", "t"], 8),
        )
        .unwrap();
        assert!(!c.pass);
        assert_eq!(c.orders, vec![Order::Finite(2)]);
    }

    #[test]
    fn orders_along_arcs() {
        let g = arc(&["x", "y"], &["t", "0"], 8);
        let r = g.ring().clone();
        assert_eq!(
            ord_along_arc(&parse_poly("x", &r).unwrap(), &g),
            Order::Finite(1)
        );
        assert_eq!(
            ord_along_arc(&parse_poly("1", &r).unwrap(), &g),
            Order::Finite(0)
        );
        assert_eq!(
            ord_along_arc(&parse_poly("y", &r).unwrap(), &g),
            Order::AtLeast(8)
        );
        let w = arc(&["x", "y", "z"], &["0", "t", "0"], 8);
        let mz = parse_poly("-y", w.ring()).unwrap();
        assert_eq!(ord_along_arc(&mz, &w), Order::Finite(1));
    }

    #[test]
    fn component_mismatch_is_reported() {
        let ring = PolyRing::new(["x", "y"]);
        let map: BTreeMap<String, String> = [("x".to_string(), "t".to_string())].into();
        let e = FormalArc::<Rational>::parse(&ring, 8, &map).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch(_)));
        let x3 = variety(&["x", "y", "z"], &["x"]);
        let e = check_arc(&x3, &arc(&["x", "y"], &["t", "0"], 8)).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch(_)));
    }
}
