use std::collections::BTreeMap;

use fnarc::algebra::{parse_poly, Fp, MultiPoly, PolyRing, Rational, Ring, Scalar};
use fnarc::geometry::{select_minor, FormalArc, Variety, DEFAULT_SEARCH_CAP};
use fnarc::local::{TestRing, TestRingElement};
use fnarc::model::{build_model, diagnostics, equivalence_check_ii_iii, BuildOutcome, FiniteModel};
use fnarc::Error;

fn setup<F: Scalar>(
    vars: &[&str],
    eqs: &[&str],
    comps: &[&str],
    n: usize,
) -> (Variety<F>, FormalArc<F>) {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let x = Variety::parse(&names, eqs, None).unwrap();
    let map: BTreeMap<String, String> = names
        .iter()
        .cloned()
        .zip(comps.iter().map(|s| s.to_string()))
        .collect();
    let arc = FormalArc::parse(&PolyRing::new(names), n, &map).unwrap();
    (x, arc)
}

fn model<F: Scalar>(vars: &[&str], eqs: &[&str], comps: &[&str], e: usize) -> BuildOutcome<F> {
    let (x, arc) = setup::<F>(vars, eqs, comps, 24);
    let sel = select_minor(&x, &arc, None, DEFAULT_SEARCH_CAP).unwrap();
    build_model(&x, &arc, &sel, e).unwrap()
}

fn node<F: Scalar>() -> FiniteModel<F> {
    model::<F>(&["x", "y"], &["x*y"], &["t", "0"], 1).into_model()
}

#[test]
fn node_model_matches_hand_elimination() {
    let m = node::<Rational>();
    assert_eq!(
        m.unknown_names(),
        ["a_0", "xbar_x_0", "xbar_x_1", "ybar_y_0"]
    );
    let ring = m.unknowns().clone();
    let p = |s: &str| -> MultiPoly<Rational> { parse_poly(s, &ring).unwrap() };
    let expected = [
        "xbar_x_0 - a_0*xbar_x_1",
        "ybar_y_0*xbar_x_0 - a_0*ybar_y_0*xbar_x_1",
        "ybar_y_0*xbar_x_0",
        "ybar_y_0*xbar_x_1",
    ];
    let got: Vec<_> = m.equations().to_vec();
    assert_eq!(got.len(), 4);
    for (g, e) in got.iter().zip(expected) {
        assert_eq!(*g, p(e), "expected {e}, got {g}");
    }
    let one = Rational::from_i64(1);
    let zero = Rational::from_i64(0);
    assert_eq!(m.base_point(), [zero.clone(), zero.clone(), one, zero]);
    let diag = diagnostics(&m);
    assert_eq!(
        (diag.jacobian_rank, diag.tangent_dim, diag.bounds),
        (2, 2, Some((0, 4)))
    );
}

#[test]
fn cone_counts() {
    let m = model::<Rational>(&["x", "y", "z"], &["x^2 - y*z"], &["0", "t", "0"], 1).into_model();
    assert_eq!((m.num_unknowns(), m.equations().len()), (6, 4));
    assert_eq!(m.selection().eliminated_names, ["z"]);
}

#[test]
fn counts_for_larger_e() {
    for e in 1..=3 {
        let m = model::<Fp<7>>(&["x", "y", "z"], &["x^2 - y*z"], &["0", "t", "0"], e).into_model();
        assert_eq!(m.num_unknowns(), m.expected_unknowns());
        assert_eq!(m.equations().len(), m.expected_equations());
        let diag = diagnostics(&m);
        assert_eq!(diag.bounds.is_some(), e == 1);
    }
}

#[test]
fn smooth_point_outcome() {
    let out = model::<Rational>(&["x", "y"], &["x - y^2"], &["t^2", "t"], 1);
    assert!(out.is_smooth_point());
    let m = out.model();
    assert_eq!((m.num_unknowns(), m.equations().len()), (0, 0));
    let diag = diagnostics(m);
    assert_eq!((diag.tangent_dim, diag.bounds), (0, Some((0, 0))));
}

#[test]
fn order_two_minor_bounds() {
    let m = model::<Rational>(&["x", "y"], &["x^2*y + y^2"], &["t", "0"], 1).into_model();
    assert_eq!((m.n(), m.r(), m.d()), (1, 1, 2));
    assert_eq!(diagnostics(&m).bounds, Some((0, 8)));
}

#[test]
fn precision_is_enforced() {
    let (x, arc) = setup::<Rational>(&["x", "y"], &["x*y"], &["t", "0"], 5);
    let sel = select_minor(&x, &arc, None, DEFAULT_SEARCH_CAP).unwrap();
    assert_eq!(
        build_model(&x, &arc, &sel, 1).unwrap_err(),
        Error::PrecisionInsufficient {
            required: 6,
            available: 5
        }
    );
}

#[test]
fn equivalence_on_node_examples() {
    type F = Fp<3>;
    let m = node::<F>();
    let a = TestRing::truncated("e", 2);
    let el = |s: &str| TestRingElement::<F>::parse(a, s).unwrap();
    let base = m.base_point_in::<TestRingElement<F>>(&a);
    let r = equivalence_check_ii_iii(&m, &a, &base).unwrap();
    assert!(r.agree && r.adjugate && r.membership == Some(true));
    // q = t + e, x = t
    let s = vec![el("e"), el("0"), el("1"), el("0")];
    let r = equivalence_check_ii_iii(&m, &a, &s).unwrap();
    assert!(r.agree);
    // q = t, x = t, y = e
    let s = vec![el("0"), el("0"), el("1"), el("e")];
    let r = equivalence_check_ii_iii(&m, &a, &s).unwrap();
    assert!(r.agree && !r.adjugate && r.membership == Some(false));
    assert!(!m.is_solution(&a, &s));
    assert!(Ring::is_zero(&m.evaluate(&a, &s)[0]));
}

mod properties {
    use super::*;
    use fnarc::algebra::Algebra;
    use fnarc::geometry::{check_arc, reduce_to_complete_intersection};
    use proptest::prelude::*;

    /// `x1^d y1 + y1^2` and `y_i + y_i^2 + x_n y_i` along `x1 = t, x_j = 1 + t^j, y = 0`.
    fn synthetic<F: Scalar>(n: usize, r: usize, d: usize) -> (Variety<F>, FormalArc<F>) {
        let mut vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        vars.extend((1..=r).map(|i| format!("y{i}")));
        let mut eqs = vec![format!("x1^{d}*y1 + y1^2")];
        eqs.extend((2..=r).map(|i| format!("y{i} + y{i}^2 + x{n}*y{i}")));
        let mut comps = vec!["t".to_string()];
        comps.extend((2..=n).map(|j| format!("1 + t^{j}")));
        comps.extend((0..r).map(|_| "0".to_string()));
        let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
        let eqs: Vec<&str> = eqs.iter().map(String::as_str).collect();
        let comps: Vec<&str> = comps.iter().map(String::as_str).collect();
        setup(&vars, &eqs, &comps, 40)
    }

    fn offsets() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..3, 6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn counts_match_closed_forms(n in 1usize..=3, r in 1usize..=2, d in 1usize..=2, e in 1usize..=2) {
            let (x, arc) = synthetic::<Fp<7>>(n, r, d);
            let sel = select_minor(&x, &arc, None, DEFAULT_SEARCH_CAP).unwrap();
            let m = build_model(&x, &arc, &sel, e).unwrap().into_model();
            prop_assert_eq!((m.n(), m.r(), m.d()), (n, r, d));
            prop_assert_eq!(m.num_unknowns(), d * (e + 1) * n + e * d * r + d);
            prop_assert_eq!(m.equations().len(), d + e * d * r + (e + 1) * d * r);
            let k = TestRing::field();
            prop_assert!(m.is_solution(&k, &m.base_point_in::<TestRingElement<Fp<7>>>(&k)));
        }

        #[test]
        fn minor_is_invariant_under_scaling(n in 1usize..=3, r in 1usize..=2, d in 1usize..=3,
                                            scales in prop::collection::vec(1u64..7, 2)) {
            let (x, arc) = synthetic::<Fp<7>>(n, r, d);
            let scaled: Vec<MultiPoly<Fp<7>>> =
                x.equations().iter().zip(&scales).map(|(f, &c)| f.scale(&Fp::new(c))).collect();
            let y = Variety::new(x.ring().clone(), scaled, None).unwrap();
            let a = select_minor(&x, &arc, None, DEFAULT_SEARCH_CAP).unwrap();
            let b = select_minor(&y, &arc, None, DEFAULT_SEARCH_CAP).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn reduction_is_deterministic(seed in 0u64..1000) {
            let vars = ["x", "y", "z", "w"];
            let (_, arc) = setup::<Fp<7>>(&vars, &["x"], &["1", "1 + t", "1 + 2*t + t^2", "1 + 3*t + 3*t^2 + t^3"], 24);
            let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
            let x = Variety::<Fp<7>>::parse(&names, &["x*z - y^2", "x*w - y*z", "y*w - z^2"], Some(2)).unwrap();
            let a = reduce_to_complete_intersection(&x, &arc, seed, 100, DEFAULT_SEARCH_CAP).unwrap();
            let b = reduce_to_complete_intersection(&x, &arc, seed, 100, DEFAULT_SEARCH_CAP).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a.variety.is_complete_intersection());
            prop_assert!(check_arc(&a.variety, &arc).unwrap().pass);
        }

        #[test]
        fn equivalence_on_random_candidates(cone in any::<bool>(), offs in offsets()) {
            type F = Fp<3>;
            let m = if cone {
                model::<F>(&["x", "y", "z"], &["x^2 - y*z"], &["0", "t", "0"], 1).into_model()
            } else {
                node::<F>()
            };
            let a = TestRing::dual_numbers();
            let e = TestRingElement::<F>::generator(a, 0);
            let values: Vec<TestRingElement<F>> = m
                .base_point_in::<TestRingElement<F>>(&a)
                .iter()
                .zip(&offs)
                .map(|(b, &o)| b.plus(&e.scale(&F::new(o))))
                .collect();
            let r = equivalence_check_ii_iii(&m, &a, &values).unwrap();
            prop_assert!(r.agree, "{:?}", r);
        }
    }
}
