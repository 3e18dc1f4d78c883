use std::sync::Arc;

use proptest::prelude::*;

use fnarc::algebra::{Algebra, MultiPoly, PolyRing, Rational, Ring, Scalar};
use fnarc::jets::{jet_components, JetRing};

fn build(ring: &Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> MultiPoly<Rational> {
    let mut p = MultiPoly::zero_in(ring);
    for (e, c) in terms {
        p.add_term(e.clone(), Rational::from_i64(*c));
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, 2), -4i64..=4), 0..4)
}

proptest! {
    #[test]
    fn components_obey_the_graded_leibniz_rule(a in poly_strategy(), b in poly_strategy(), m in 0usize..4) {
        let ambient = PolyRing::new(["x", "y"]);
        let jets = JetRing::new(&ambient, m).unwrap();
        let (f, g) = (build(&ambient, &a), build(&ambient, &b));
        let fg = jet_components(&jets, &f.times(&g), m);
        let cf = jet_components(&jets, &f, m);
        let cg = jet_components(&jets, &g, m);
        for k in 0..=m {
            let mut sum = MultiPoly::zero_in(jets.ring());
            for i in 0..=k {
                sum.add_product(&cf[i], &cg[k - i]);
            }
            prop_assert_eq!(&fg[k], &sum);
        }
    }

    #[test]
    fn components_follow_the_divided_derivative(a in poly_strategy(), m in 1usize..4) {
        let ambient = PolyRing::new(["x", "y"]);
        let jets = JetRing::new(&ambient, m).unwrap();
        let f = build(&ambient, &a);
        let c = jet_components(&jets, &f, m);
        prop_assert_eq!(&c[0], &jets.level_zero(&f));
        for l in 0..m {
            let lhs = c[l + 1].scale(&Rational::from_i64(l as i64 + 1));
            prop_assert_eq!(lhs, jets.divided_total_derivative(&c[l]).unwrap());
        }
    }
}
