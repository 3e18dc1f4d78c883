use std::collections::BTreeMap;

use fnarc::algebra::{Fp, PolyRing, Scalar, SeriesCtx, TruncSeries};
use fnarc::geometry::{select_minor, FormalArc, Variety, DEFAULT_SEARCH_CAP};
use fnarc::lifting::{
    lift_solution, oracle_bijection_check, oracle_enumerate, truncate_to_solution, Verdict,
    DEFAULT_BUDGET,
};
use fnarc::local::{TestRing, TestRingElement};
use fnarc::model::{build_model, FiniteModel};
use fnarc::Error;

fn model<F: Scalar>(vars: &[&str], eqs: &[&str], comps: &[&str], prec: usize) -> FiniteModel<F> {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let x = Variety::parse(&names, eqs, None).unwrap();
    let map: BTreeMap<String, String> = names
        .iter()
        .cloned()
        .zip(comps.iter().map(|s| s.to_string()))
        .collect();
    let arc = FormalArc::parse(&PolyRing::new(names), prec, &map).unwrap();
    let sel = select_minor(&x, &arc, None, DEFAULT_SEARCH_CAP).unwrap();
    build_model(&x, &arc, &sel, 1).unwrap().into_model()
}

fn node<F: Scalar>() -> FiniteModel<F> {
    model(&["x", "y"], &["x*y"], &["t", "0"], 40)
}

fn cone<F: Scalar>() -> FiniteModel<F> {
    model(&["x", "y", "z"], &["x^2 - y*z"], &["0", "t", "0"], 40)
}

#[test]
fn enumeration_counts_on_the_node() {
    let a = TestRing::dual_numbers();
    assert_eq!(
        oracle_enumerate(&node::<Fp<2>>(), a, DEFAULT_BUDGET)
            .unwrap()
            .len(),
        4
    );
    assert_eq!(
        oracle_enumerate(&node::<Fp<3>>(), a, DEFAULT_BUDGET)
            .unwrap()
            .len(),
        9
    );
    let k = TestRing::field();
    let sols = oracle_enumerate(&node::<Fp<3>>(), k, DEFAULT_BUDGET).unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0], node::<Fp<3>>().base_point_in(&k));
}

#[test]
fn enumeration_respects_budget() {
    let err = oracle_enumerate(&node::<Fp<2>>(), TestRing::dual_numbers(), 1).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { .. }));
}

#[test]
fn base_point_lifts_to_the_arc() {
    type F = Fp<5>;
    let m = cone::<F>();
    let k = TestRing::field();
    let lift = lift_solution(
        &m,
        &k,
        &m.base_point_in::<TestRingElement<F>>(&k),
        None,
        None,
        12,
    )
    .unwrap();
    for (i, s) in lift.iter().enumerate() {
        for j in 0..12 {
            assert_eq!(s.coeff(j).residue(), m.arc().coeff(i, j));
        }
    }
}

#[test]
fn node_lift_of_a_shifted_root() {
    type F = Fp<5>;
    let m = node::<F>();
    let a = TestRing::dual_numbers();
    let el = |s: &str| TestRingElement::<F>::parse(a, s).unwrap();
    let s = vec![el("e"), el("e"), el("1"), el("0")];
    assert!(m.is_solution(&a, &s));
    let lift = lift_solution(&m, &a, &s, None, None, 10).unwrap();
    assert_eq!(lift[0].coeff(0), &el("e"));
    assert_eq!(lift[0].coeff(1), &el("1"));
    assert!(lift[1].is_zero_to_precision());
    let back = truncate_to_solution(&m, &a, &lift).unwrap();
    assert_eq!(back.values, s);
}

#[test]
fn truncation_of_a_given_deformation() {
    type F = Fp<3>;
    let m = node::<F>();
    let a = TestRing::dual_numbers();
    let el = |s: &str| TestRingElement::<F>::parse(a, s).unwrap();
    let x = TruncSeries::new(&a, vec![el("-e"), el("1")], 12);
    let y = TruncSeries::zero_in(&a, 12);
    let back = truncate_to_solution(&m, &a, &[x, y]).unwrap();
    assert_eq!(back.values, vec![el("-e"), el("-e"), el("1"), el("0")]);
}

#[test]
fn tampered_solution_is_rejected() {
    type F = Fp<3>;
    let m = node::<F>();
    let a = TestRing::dual_numbers();
    let el = |s: &str| TestRingElement::<F>::parse(a, s).unwrap();
    let s = vec![el("0"), el("0"), el("1"), el("e")];
    assert!(lift_solution(&m, &a, &s, None, None, 10).is_err());
}

#[test]
fn cone_lifts_are_sound_over_cubic_truncation() {
    type F = Fp<3>;
    let m = cone::<F>();
    let a = TestRing::truncated("e", 3);
    let sctx = SeriesCtx {
        ring: a,
        precision: 10,
    };
    let sols = oracle_enumerate(&m, a, DEFAULT_BUDGET).unwrap();
    assert!(sols.len() > 1);
    for s in sols.iter().step_by(37) {
        let lift = lift_solution(&m, &a, s, None, None, 10).unwrap();
        for f in m.variety().equations() {
            assert!(f.eval(&sctx, &lift).is_zero_to_precision());
        }
        let longer = lift_solution(&m, &a, s, None, None, 14).unwrap();
        for (l, w) in lift.iter().zip(&longer) {
            assert_eq!(*l, w.truncate(10));
        }
    }
}

#[test]
fn node_bijection_over_f2() {
    let r = oracle_bijection_check(
        &node::<Fp<2>>(),
        TestRing::dual_numbers(),
        6,
        DEFAULT_BUDGET,
    )
    .unwrap();
    assert_eq!(
        (r.model_solutions, r.free_dims, r.jet_points_extendable),
        (4, 4, 64)
    );
    assert_eq!(r.bijection, Verdict::Pass);
}

#[test]
fn field_bijection_is_a_singleton() {
    let r = oracle_bijection_check(&cone::<Fp<3>>(), TestRing::field(), 6, DEFAULT_BUDGET).unwrap();
    assert_eq!((r.model_solutions, r.jet_points_extendable), (1, 1));
    assert_eq!(r.bijection, Verdict::Pass);
}

#[test]
fn oracle_budget() {
    let err = oracle_bijection_check(&node::<Fp<2>>(), TestRing::dual_numbers(), 6, 1).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { .. }));
}

mod properties {
    use super::*;
    use fnarc::algebra::{Algebra, Ring};
    use fnarc::lifting::truncation_margin;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    type F = Fp<3>;
    type E = TestRingElement<F>;

    fn cone_solutions() -> &'static Vec<Vec<E>> {
        static SOLS: OnceLock<Vec<Vec<E>>> = OnceLock::new();
        SOLS.get_or_init(|| oracle_enumerate(&cone::<F>(), TestRing::dual_numbers(), DEFAULT_BUDGET).unwrap())
    }

    /// Free parts reducing to the base arc: `base + e * offsets`.
    fn free_part(m: &FiniteModel<F>, vars: &[usize], shift: usize, offs: &[u64]) -> Vec<TruncSeries<E>> {
        let a = TestRing::dual_numbers();
        let e = E::generator(a, 0);
        vars.iter()
            .enumerate()
            .map(|(k, &i)| {
                let coeffs = (0..3)
                    .map(|j| E::scalar(a, m.arc().coeff(i, j + shift)).plus(&e.scale(&F::new(offs[3 * k + j]))))
                    .collect();
                TruncSeries::new(&a, coeffs, 3)
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn lift_then_truncate_is_the_identity(k in 0usize..81, offs in prop::collection::vec(0u64..3, 6)) {
            let m = cone::<F>();
            let a = TestRing::dual_numbers();
            let s = &cone_solutions()[k];
            let xi = free_part(&m, &m.selection().kept, m.xbar_len(), &offs);
            let lift = lift_solution(&m, &a, s, Some(&xi), None, 14).unwrap();
            let back = truncate_to_solution(&m, &a, &lift).unwrap();
            prop_assert_eq!(&back.values, s);
            for (got, given) in back.xi.iter().zip(&xi) {
                let p = got.precision().min(given.precision());
                prop_assert_eq!(got.truncate(p), given.truncate(p));
            }
        }

        #[test]
        fn lift_does_not_depend_on_the_initial_guess(k in 0usize..81, o1 in prop::collection::vec(0u64..3, 3),
                                                     o2 in prop::collection::vec(0u64..3, 3)) {
            let m = cone::<F>();
            let a = TestRing::dual_numbers();
            let s = &cone_solutions()[k];
            let n = 10;
            let keep = n - truncation_margin(a.class(), m.d(), m.e());
            let y = m.selection().eliminated.clone();
            let l1 = lift_solution(&m, &a, s, None, Some(&free_part(&m, &y, m.ybar_len(), &o1)), n).unwrap();
            let l2 = lift_solution(&m, &a, s, None, Some(&free_part(&m, &y, m.ybar_len(), &o2)), n).unwrap();
            for (p, q) in l1.iter().zip(&l2) {
                prop_assert_eq!(p.truncate(keep), q.truncate(keep));
            }
        }
    }
}
