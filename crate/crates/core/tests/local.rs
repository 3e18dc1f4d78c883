use proptest::prelude::*;

use fnarc::algebra::{Fp, LocalRing, Ring, TruncSeries};
use fnarc::local::{invert_unit, weierstrass_degree, weierstrass_prepare, TestRing, TestRingElement};

type E = TestRingElement<Fp<5>>;

fn rings() -> [&'static TestRing; 4] {
    [
        TestRing::truncated("e", 2),
        TestRing::truncated("e", 3),
        TestRing::truncated("e", 4),
        TestRing::from_spec(&["a".into(), "b".into()], 3, &["b^2".into()]).unwrap(),
    ]
}

fn element(ring: &'static TestRing, coords: &[u64], residue: Option<u64>) -> E {
    let mut c: Vec<Fp<5>> = coords.iter().take(ring.dim()).map(|&v| Fp::new(v)).collect();
    if let Some(r) = residue {
        c[0] = Fp::new(r);
    }
    TestRingElement::from_coords(ring, c)
}

/// Series with the first `d` coefficients in `m` and a unit at `d`.
fn series(ring: &'static TestRing, raw: &[Vec<u64>], d: usize, unit: u64) -> TruncSeries<E> {
    let coeffs = raw
        .iter()
        .enumerate()
        .map(|(j, c)| match j {
            j if j < d => element(ring, c, Some(0)),
            j if j == d => element(ring, c, Some(unit)),
            _ => element(ring, c, None),
        })
        .collect();
    TruncSeries::new(&ring, coeffs, raw.len())
}

fn coeffs() -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0u64..5, 6), 14)
}

proptest! {
    #[test]
    fn preparation_reconstructs(k in 0usize..4, d in 0usize..4, unit in 1u64..5, raw in coeffs()) {
        let ring = rings()[k];
        let n = (ring.class() * d).max(d + 1) + 2;
        let f = series(ring, &raw[..n], d, unit);
        prop_assert_eq!(weierstrass_degree(&f), Some(d));
        let w = weierstrass_prepare(&f).unwrap();
        prop_assert!(w.q.is_monic() && w.q.degree() == Some(d));
        prop_assert!((0..d).all(|j| w.q.coeff(j).in_maximal_ideal()));
        prop_assert!(!w.u.coeff(0).in_maximal_ideal());
        prop_assert_eq!(w.u.mul_poly(&w.q), f);
    }

    #[test]
    fn distinguished_part_is_unique(k in 0usize..4, d in 0usize..4, unit in 1u64..5, raw in coeffs(),
                                    vraw in coeffs(), vunit in 1u64..5) {
        let ring = rings()[k];
        let n = (ring.class() * d).max(d + 1) + 2;
        let f = series(ring, &raw[..n], d, unit);
        let v = series(ring, &vraw[..n], 0, vunit);
        let w = weierstrass_prepare(&f).unwrap();
        let w2 = weierstrass_prepare(&f.times(&v)).unwrap();
        prop_assert_eq!(&w2.q, &w.q);
        let known = n - ring.class() * d;
        prop_assert_eq!(w2.u.truncate(known), w.u.times(&v).truncate(known));
    }

    #[test]
    fn units_invert(k in 0usize..4, c in prop::collection::vec(0u64..5, 6), r in 1u64..5) {
        let ring = rings()[k];
        let a = element(ring, &c, Some(r));
        let inv = invert_unit(&a).unwrap();
        prop_assert!(a.times(&inv).is_one());
    }
}
