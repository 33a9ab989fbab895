use proptest::prelude::*;
use sl2betti::grammar::{parse_poly_file, write_poly_file};
use sl2betti_core::poly::{GradedRing, Monomial, OrderKind, Polynomial};
use sl2betti_core::Rational;

fn ring() -> GradedRing {
    GradedRing::new(vec!["a".into(), "b".into(), "x1".into(), "x10".into()], vec![1, 2, 2, 3]).unwrap()
}

fn term() -> impl Strategy<Value = (Vec<u16>, i64, i64)> {
    (prop::collection::vec(0u16..4, 4), -50i64..50, 1i64..9)
}

proptest! {
    #[test]
    fn written_files_read_back(
        polys in prop::collection::vec(prop::collection::vec(term(), 0..6), 0..5),
        lex in any::<bool>(),
    ) {
        let r = ring();
        let kind = if lex { OrderKind::Lex } else { OrderKind::WeightedRevLex };
        let ord = r.order(kind);
        let polys: Vec<Polynomial> = polys
            .into_iter()
            .map(|ts| {
                let terms: Vec<(Monomial, Rational)> = ts
                    .into_iter()
                    .map(|(e, n, d)| (Monomial::from_exponents(&e), Rational::new(n, d)))
                    .collect();
                Polynomial::from_terms(4, terms, &ord)
            })
            .filter(|p| !p.is_zero())
            .collect();
        let text = write_poly_file(&r, kind, &polys);
        let file = parse_poly_file(&text, None).unwrap();
        prop_assert_eq!(file.ring.names(), r.names());
        prop_assert_eq!(file.ring.weights(), r.weights());
        prop_assert_eq!(file.order, kind);
        prop_assert_eq!(file.polys, polys);
    }
}
