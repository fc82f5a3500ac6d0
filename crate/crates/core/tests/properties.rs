use proptest::prelude::*;

use degspivey::sequences::{falling_factorial_deg, Families};
use degspivey::series::{deg_exp, Series};
use degspivey::{Bindings, Monomial, Poly, Rat, Var};

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d).unwrap())
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(([0u32..3, 0..3, 0..2, 0..2], rat()), 0..6).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), c)),
        )
    })
}

fn full_binding() -> impl Strategy<Value = Bindings> {
    (rat(), rat(), rat(), rat())
        .prop_map(|(l, x, y, t)| [(Var::Lambda, l), (Var::X, x), (Var::Y, y), (Var::T, t)].into())
}

fn small_series() -> impl Strategy<Value = Series> {
    prop::collection::vec(poly(), 4..=4).prop_map(Series::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), point in full_binding()) {
        let ev = |p: &Poly| p.eval(&point);
        prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
        prop_assert!(ev(&a).is_constant());
    }

    #[test]
    fn canonical_form_is_stable(a in poly()) {
        let renormalized = Poly::from_terms(a.terms().map(|(m, c)| (*m, c.clone())));
        prop_assert_eq!(&renormalized, &a);
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        let ms: Vec<Monomial> = a.terms().map(|(m, _)| *m).collect();
        prop_assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn json_roundtrip(a in poly()) {
        let js = a.to_json();
        let back = Poly::from_json(&js).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_json(), js);
    }

    #[test]
    fn substitution_commutes_with_evaluation(a in poly(), q in poly(), point in full_binding()) {
        // eval(a[x := q]) = eval(a) with x bound to eval(q)
        let lhs = a.substitute(Var::X, &q).eval(&point);
        let mut shifted = point.clone();
        shifted.insert(Var::X, q.eval(&point).constant_value().unwrap());
        prop_assert_eq!(lhs, a.eval(&shifted));
    }

    #[test]
    fn series_product_commutes_and_associates(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn reciprocal_is_two_sided(mut coeffs in prop::collection::vec(poly(), 5..=5), c0 in rat()) {
        prop_assume!(!c0.is_zero());
        coeffs[0] = Poly::constant(c0);
        let a = Series::from_coeffs(coeffs);
        let inv = a.reciprocal().unwrap();
        prop_assert_eq!(a.mul(&inv), Series::one(4));
        prop_assert_eq!(inv.mul(&a), Series::one(4));
    }

    #[test]
    fn degenerate_exponentials_multiply(a in poly(), b in poly()) {
        prop_assert_eq!(deg_exp(&a, 4).mul(&deg_exp(&b, 4)), deg_exp(&(&a + &b), 4));
        prop_assert_eq!(deg_exp(&a, 4).coeffs()[3].clone(), falling_factorial_deg(&a, 3));
    }
}

#[test]
fn shared_families_are_thread_safe() {
    let fam = std::sync::Arc::new(Families::new(8, 3));
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let fam = fam.clone();
            std::thread::spawn(move || (0..=8).map(|n| fam.bell_fully_deg(n)).collect::<Vec<_>>())
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(results.windows(2).all(|w| w[0] == w[1]));
}
