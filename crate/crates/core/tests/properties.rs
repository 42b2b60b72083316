use proptest::prelude::*;

use vtl_core::diagram::Generator;
use vtl_core::{BigRational, Diagram, Element, Polynomial, RationalFunction};

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(Polynomial::from_ints)
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn point() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=9).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn diagram(n: usize) -> impl Strategy<Value = Diagram> {
    Just((0..2 * n).collect::<Vec<usize>>()).prop_shuffle().prop_map(move |order| {
        let mut partner = vec![0; 2 * n];
        for pair in order.chunks(2) {
            partner[pair[0]] = pair[1];
            partner[pair[1]] = pair[0];
        }
        Diagram::from_partner(n, &partner).unwrap()
    })
}

fn element(n: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((diagram(n), -4i64..=4, 0u32..2), 0..6).prop_map(move |terms| {
        let mut acc = Element::zero(n);
        for (d, c, shift) in terms {
            // c or c/(d+1)
            let coeff = if shift == 0 {
                RationalFunction::from_int(c)
            } else {
                RationalFunction::new(Polynomial::from_ints([c]), Polynomial::from_ints([1, 1])).unwrap()
            };
            acc = acc.add(&Element::from_diagram(d).scale(&coeff)).unwrap();
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).num().is_zero());
        if !a.num().is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RationalFunction::from_int(1));
        }
    }

    #[test]
    fn normalization_is_canonical(a in ratfunc(), k in nonzero_poly()) {
        // scaling numerator and denominator by a common factor changes nothing
        let again = RationalFunction::new(a.num() * &k, a.den() * &k).unwrap();
        prop_assert_eq!(&again, &a);
        let twice = RationalFunction::new(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&twice, &a);
        prop_assert!(a.den().leading().is_some_and(|c| *c == BigRational::from_integer(1.into())));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), v in point()) {
        if let (Ok(x), Ok(y)) = (a.eval(&v), b.eval(&v)) {
            prop_assert_eq!((&a + &b).eval(&v).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval(&v).unwrap(), &x * &y);
        }
    }

    #[test]
    fn rational_function_json_round_trip(a in ratfunc()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<RationalFunction>(&s).unwrap(), a);
    }

    #[test]
    fn composition_is_associative((a, b, c) in (2usize..=6).prop_flat_map(|n| (diagram(n), diagram(n), diagram(n)))) {
        let ab = a.compose(&b).unwrap();
        let left = ab.diagram.compose(&c).unwrap();
        let bc = b.compose(&c).unwrap();
        let right = a.compose(&bc.diagram).unwrap();
        prop_assert_eq!(left.diagram, right.diagram);
        prop_assert_eq!(ab.loops + left.loops, bc.loops + right.loops);
    }

    #[test]
    fn identity_is_neutral(a in (1usize..=7).prop_flat_map(diagram)) {
        let one = Diagram::identity(a.n()).unwrap();
        prop_assert_eq!(one.compose(&a).unwrap().diagram, a);
        prop_assert_eq!(a.compose(&one).unwrap().loops, 0);
    }

    #[test]
    fn diagram_text_and_json_round_trip(a in (1usize..=8).prop_flat_map(diagram)) {
        prop_assert_eq!(a.to_text().parse::<Diagram>().unwrap(), a);
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Diagram>(&s).unwrap(), a);
    }

    #[test]
    fn trace_is_cyclic((a, b) in (2usize..=5).prop_flat_map(|n| (element(n), element(n)))) {
        prop_assert_eq!(a.mul(&b).unwrap().markov_trace(), b.mul(&a).unwrap().markov_trace());
    }

    #[test]
    fn trace_embedding_and_partial_closure(a in (1usize..=4).prop_flat_map(element)) {
        let n = a.n();
        let up = a.embed(n + 1).unwrap();
        let d = RationalFunction::var();
        prop_assert_eq!(up.markov_trace(), &d * &a.markov_trace());
        let e = Element::generator(n + 1, Generator::E(n)).unwrap();
        let v = Element::generator(n + 1, Generator::V(n)).unwrap();
        prop_assert_eq!(up.mul(&e).unwrap().markov_trace(), a.markov_trace());
        prop_assert_eq!(up.mul(&v).unwrap().markov_trace(), a.markov_trace());
    }

    #[test]
    fn product_is_bilinear((a, b, c) in (2usize..=4).prop_flat_map(|n| (element(n), element(n), element(n)))) {
        let left = a.add(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn element_evaluation_commutes_with_product(
        (a, b) in (2usize..=4).prop_flat_map(|n| (element(n), element(n))),
        v in point(),
    ) {
        if let (Ok(x), Ok(y)) = (a.eval(&v), b.eval(&v)) {
            prop_assert_eq!(a.mul(&b).unwrap().eval(&v).unwrap(), x.mul_at(&y, &v).unwrap());
        }
    }

    #[test]
    fn element_json_round_trip(a in (1usize..=5).prop_flat_map(element)) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Element>(&s).unwrap(), a);
    }

    #[test]
    fn combine_cancels(a in (1usize..=4).prop_flat_map(element)) {
        let one = RationalFunction::from_int(1);
        prop_assert!(a.combine(&a, &one, &-&one).unwrap().is_zero());
    }
}

fn generators(n: usize) -> Vec<Element> {
    let mut out = vec![Element::identity(n).unwrap()];
    for i in 1..n {
        out.push(Element::generator(n, Generator::E(i)).unwrap());
        out.push(Element::generator(n, Generator::V(i)).unwrap());
    }
    out
}

#[test]
fn trace_cyclic_on_generator_pairs() {
    for n in 2..=4 {
        let gens = generators(n);
        for a in &gens {
            for b in &gens {
                assert_eq!(a.mul(b).unwrap().markov_trace(), b.mul(a).unwrap().markov_trace());
            }
        }
    }
}

#[test]
fn class_expand_inverts_decompose() {
    for n in 1..=5 {
        let f = vtl_core::projector::f_recursive(n).unwrap();
        assert_eq!(f.class_decompose().unwrap().expand().unwrap(), *f);
    }
}

#[test]
fn perturbed_projector_fails_exactly_and_at_sample_points() {
    let f = vtl_core::projector::f_recursive(3).unwrap();
    let bump = Element::generator(3, Generator::E(1)).unwrap().scale(&RationalFunction::ratio(1, 7));
    let g = f.add(&bump).unwrap();
    assert_ne!(g.mul(&g).unwrap(), g);
    let points = vtl_core::verify::sample_points(3, vtl_core::verify::DEFAULT_SEED, 3, &[&g]);
    for p in &points {
        let x = g.eval(p).unwrap();
        assert_ne!(x.mul_at(&x, p).unwrap(), x, "d = {p}");
    }
}
