use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::groebner::{hilbert_series_quotient, ideals_equal, minimal_generators};
use crate::testutil::{j_ideal, l_names, l_polys, parse};

fn ring(names: &[&str], weights: &[u32]) -> GradedRing {
    GradedRing::new(names.iter().map(|s| s.to_string()).collect(), weights.to_vec()).unwrap()
}

fn parabola() -> AlgebraMap {
    let t = ring(&["t"], &[1]);
    let ord = t.default_order();
    let images = vec![parse("t^2", t.names(), &ord), parse("t^3", t.names(), &ord)];
    AlgebraMap::new(t, images).unwrap()
}

#[test]
fn parabola_kernel() {
    let map = parabola();
    assert_eq!(map.weights(), &[2, 3]);
    let k = kernel(&map).unwrap();
    let ord = map.source().default_order();
    let expected = parse("x2^2 - x1^3", map.source().names(), &ord);
    assert!(ideals_equal(k.generators(), core::slice::from_ref(&expected), &ord));
    let d = kernel_by_degree(&map, None, None).unwrap();
    assert_eq!(d.generators, vec![expected.normalize().unwrap()]);
    assert_eq!(d.verified_through, 12);
    // the image has one monomial t^e in every degree except 1
    let series = hilbert_series_quotient(&k).unwrap().expand(30);
    for (e, v) in series.iter().enumerate() {
        assert_eq!(*v, if e == 1 { 0 } else { 1 }, "degree {e}");
    }
}

#[test]
fn image_checks() {
    let t = ring(&["s", "t"], &[1, 1]);
    let ord = t.default_order();
    let bad = parse("s^2 + t", t.names(), &ord);
    assert_eq!(
        AlgebraMap::new(t.clone(), vec![bad]).unwrap_err(),
        PresentationError::NotHomogeneous(0)
    );
    let zero = Polynomial::zero(2);
    assert_eq!(AlgebraMap::new(t.clone(), vec![zero]).unwrap_err(), PresentationError::ZeroImage(0));
    let f = parse("s*t", t.names(), &ord);
    assert!(matches!(
        AlgebraMap::with_weights(t, vec![f], &[3]),
        Err(PresentationError::WeightMismatch { index: 0, expected: 3, found: 2 })
    ));
}

fn printed_map() -> AlgebraMap {
    let names = l_names();
    let target = GradedRing::new(names, vec![1; 9]).unwrap();
    let images = l_polys(&target.default_order());
    AlgebraMap::new(target, images).unwrap()
}

#[test]
fn printed_generators_give_printed_relations() {
    let map = printed_map();
    assert_eq!(map.weights(), &crate::testutil::J_WEIGHTS);
    let k = kernel(&map).unwrap();
    let ord = map.source().default_order();
    assert!(ideals_equal(k.generators(), &j_ideal(), &ord));
    for g in k.generators() {
        assert!(map.apply(g).is_zero());
    }
    let d = kernel_by_degree(&map, None, None).unwrap();
    assert_eq!(d.generators.len(), 9);
    assert!(ideals_equal(&d.generators, &j_ideal(), &ord));
}

#[test]
fn free_case_has_zero_kernel() {
    let p = present(&ProblemSpec::new(vec![2], 2).unwrap()).unwrap();
    assert_eq!(p.weights(), &[2]);
    assert!(p.kernel.generators().is_empty());
    assert!(kernel(&p.map).unwrap().generators().is_empty());
}

#[test]
fn worked_example_presentation() {
    let p = present(&ProblemSpec::new(vec![1, 1, 1, 2], 3).unwrap()).unwrap();
    let mut w = p.weights().to_vec();
    w.sort();
    assert_eq!(w, vec![2, 2, 2, 2, 3, 3, 3, 3, 3, 3]);
    assert_eq!(p.kernel.degrees(), vec![5, 5, 5, 6, 6, 6, 6, 6, 6]);
    for g in p.kernel.generators() {
        assert!(g.is_homogeneous(p.weights()));
        assert!(p.map.apply(g).is_zero());
    }
    assert_eq!(minimal_generators(&p.kernel).unwrap().len(), 9);
    // same ideal as elimination
    let ord = p.map.source().default_order();
    assert!(ideals_equal(p.kernel.generators(), kernel(&p.map).unwrap().generators(), &ord));
    assert_eq!(p.verified_through, 17);
}

#[test]
fn two_cubics() {
    let p = present(&ProblemSpec::new(vec![3, 3], 6).unwrap()).unwrap();
    assert_eq!(p.kernel.degrees(), vec![8, 12]);
    for g in p.kernel.generators() {
        assert!(p.map.apply(g).is_zero());
    }
}

#[test]
fn incomplete_generators_are_detected() {
    let gens = minimal_invariant_generators(&ProblemSpec::new(vec![1, 1, 1, 2], 3).unwrap()).unwrap();
    let mut short = gens.clone();
    short.generators.pop();
    let map = invariant_map(&short).unwrap();
    let dims = InvariantDimensions { degrees: vec![1, 1, 1, 2] };
    assert_eq!(
        kernel_by_degree(&map, Some(&dims), None).unwrap_err(),
        PresentationError::MissingGenerators(3)
    );
}

fn monomial_images() -> impl Strategy<Value = Vec<Vec<u16>>> {
    // a few monomials of one degree in three variables
    (1u16..4).prop_flat_map(|d| {
        prop::collection::vec(
            (0..=d, 0..=d).prop_filter_map("degree", move |(a, b)| (a + b <= d).then(|| vec![a, b, d - a - b])),
            1..5,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn degreewise_kernel_matches_elimination(exps in monomial_images(), coef in prop::collection::vec(-3i64..4, 4)) {
        let t = ring(&["r", "s", "t"], &[1, 1, 1]);
        let ord = t.default_order();
        let mut images: Vec<Polynomial> = Vec::new();
        for (i, e) in exps.iter().enumerate() {
            // monomial plus a multiple of the next one keeps things non-toric
            let m = Polynomial::term(Monomial::from_exponents(e), Rational::one());
            let next = &exps[(i + 1) % exps.len()];
            let n = Polynomial::term(Monomial::from_exponents(next), Rational::from_i64(coef[i]));
            let f = m.add(&n, &ord);
            if !f.is_zero() {
                images.push(f);
            }
        }
        prop_assume!(!images.is_empty());
        let map = AlgebraMap::new(t, images).unwrap();
        let sord = map.source().default_order();
        let full = kernel(&map).unwrap();
        let d = kernel_by_degree(&map, None, None).unwrap();
        for g in &d.generators {
            prop_assert!(map.apply(g).is_zero());
        }
        let gb = crate::groebner::groebner_basis(&d.generators, &sord);
        for g in full.generators() {
            if g.homogeneous_degree(map.weights()).unwrap() <= d.verified_through {
                prop_assert!(gb.contains(g));
            }
        }
        let mins = minimal_generators(&full).unwrap();
        let low = mins.iter().filter(|g| g.homogeneous_degree(map.weights()).unwrap() <= d.verified_through).count();
        prop_assert_eq!(low, d.generators.len());
    }
}
