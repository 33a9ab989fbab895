use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::groebner::minimal::independent_in_span;
use crate::testutil::{l_names, l_polys, parse};

fn ring(d: &[u32]) -> CoefficientRing {
    CoefficientRing::new(d)
}

fn p(r: &CoefficientRing, s: &str) -> Polynomial {
    parse(s, r.ring().names(), r.order())
}

#[test]
fn constants_are_killed() {
    let r = ring(&[3]);
    let c = Polynomial::constant(r.nvars(), Rational::from_i64(7));
    assert!(apply_operator(&r, Operator::Raising, &c).is_zero());
    assert!(apply_operator(&r, Operator::Lowering, &c).is_zero());
}

#[test]
fn printed_generators_are_annihilated() {
    let r = ring(&[1, 1, 1, 2]);
    // the printed names x,y,u,v line up with the forms a,b,c,d
    assert_eq!(l_names().len(), r.nvars());
    for f in l_polys(r.order()) {
        assert!(apply_operator(&r, Operator::Raising, &f).is_zero());
        assert!(apply_operator(&r, Operator::Lowering, &f).is_zero());
        for (m, _) in f.terms() {
            assert_eq!(r.monomial_weight(m), 0);
        }
    }
}

#[test]
fn raising_a_non_invariant() {
    let r = ring(&[2]);
    // D(a2) = 2 a1, D(a1^2) = 2 a0 a1
    assert_eq!(apply_operator(&r, Operator::Raising, &p(&r, "a2")), p(&r, "2*a1"));
    assert_eq!(apply_operator(&r, Operator::Raising, &p(&r, "a1^2")), p(&r, "2*a0*a1"));
    assert_eq!(apply_operator(&r, Operator::Lowering, &p(&r, "a0")), p(&r, "2*a1"));
}

#[test]
fn basis_examples() {
    let r = ring(&[2]);
    assert_eq!(invariant_basis(&r, &[2]).unwrap(), vec![p(&r, "a1^2 - a0*a2").normalize().unwrap()]);
    assert!(invariant_basis(&ring(&[3]), &[1]).unwrap().is_empty());
    let r = ring(&[1, 1]);
    assert_eq!(invariant_basis(&r, &[1, 1]).unwrap(), vec![p(&r, "a0*b1 - a1*b0").normalize().unwrap()]);
    assert!(invariant_basis(&r, &[1]).is_err());
}

#[test]
fn brute_force_quadratic_discriminant() {
    // the six degree-2 monomials of a binary quadratic, weight-0 ones are
    // a1^2 and a0*a2; the raising operator sends them to 2a0a1 and 2a0a1
    let r = ring(&[2]);
    let w0: Vec<Monomial> = r.weight_monomials(&[2], 2);
    assert_eq!(w0.len(), 2);
    let total: usize = (0..=4).map(|s| r.weight_monomials(&[2], s).len()).sum();
    assert_eq!(total, 6);
}

#[test]
fn cayley_sylvester_examples() {
    assert_eq!(cayley_sylvester_dim(&[4], &[2]), 1);
    assert_eq!(cayley_sylvester_dim(&[3], &[4]), 1);
    assert_eq!(cayley_sylvester_dim(&[3], &[3]), 0);
    assert_eq!(cayley_sylvester_dim(&[1, 2], &[1, 0]), 0);
    // 15 monomials of degree 2 in 5 variables: weights 8,6,4,4,2,2,0,0,0,-2,...
    let r = ring(&[4]);
    let counts: Vec<usize> = (0..=8).map(|s| r.weight_monomials(&[2], s).len()).collect();
    assert_eq!(counts.iter().sum::<usize>(), 15);
    assert_eq!(counts[4] - counts[3], 1);
}

/// Every spec with forms of degree at most 4, and every piece with
/// `sum mu_i d_i <= 12`.
#[test]
fn dimension_oracles_agree_on_small_pieces() {
    let specs: [&[u32]; 12] = [
        &[1], &[2], &[3], &[4], &[5], &[6], &[1, 1], &[1, 2], &[2, 2], &[1, 3], &[1, 1, 1, 2], &[3, 3],
    ];
    let mut pieces = 0;
    for d in specs {
        let r = ring(d);
        for e in 0..=12u32 {
            for mu in multidegrees(d.len(), e) {
                let weight: u32 = mu.iter().zip(d).map(|(m, d)| m * d).sum();
                if weight > 12 {
                    continue;
                }
                let basis = invariant_basis(&r, &mu).unwrap();
                assert_eq!(basis.len() as u128, cayley_sylvester_dim(d, &mu), "{d:?} {mu:?}");
                pieces += 1;
            }
        }
    }
    assert!(pieces > 100);
}

#[test]
fn quadratic_has_one_generator() {
    let g = minimal_invariant_generators(&ProblemSpec::new(vec![2], 2).unwrap()).unwrap();
    assert_eq!(g.degrees(), vec![2]);
    assert!(!g.unverified_beyond_bound);
    assert_eq!(g.verified_through, 4);
    let g = minimal_invariant_generators(&ProblemSpec::new(vec![1, 1], 2).unwrap()).unwrap();
    assert_eq!(g.degrees(), vec![2]);
    assert_eq!(g.generators[0].multidegree, vec![1, 1]);
}

#[test]
fn worked_example_generators() {
    let spec = ProblemSpec::new(vec![1, 1, 1, 2], 3).unwrap();
    let g = minimal_invariant_generators(&spec).unwrap();
    assert_eq!(g.degrees(), vec![2, 2, 2, 2, 3, 3, 3, 3, 3, 3]);
    assert!(!g.unverified_beyond_bound);
    let r = &g.ring;
    for gen in &g.generators {
        assert!(apply_operator(r, Operator::Raising, &gen.poly).is_zero());
        assert!(apply_operator(r, Operator::Lowering, &gen.poly).is_zero());
    }
    // degree by degree the printed list spans the same space
    let printed = l_polys(r.order());
    for e in 2..=3u32 {
        let ours: Vec<Polynomial> = g.generators.iter().filter(|x| x.degree == e).map(|x| x.poly.clone()).collect();
        let theirs: Vec<Polynomial> = printed.iter().filter(|x| x.homogeneous_degree(&[1; 9]) == Some(e)).cloned().collect();
        assert_eq!(ours.len(), theirs.len());
        // lower-degree products are absent from these degrees, so span equality
        // of the pieces is mutual linear membership
        let refs: Vec<&Polynomial> = theirs.iter().collect();
        assert!(independent_in_span(&ours, &refs, r.order()).is_empty());
        let refs: Vec<&Polynomial> = ours.iter().collect();
        assert!(independent_in_span(&theirs, &refs, r.order()).is_empty());
    }
}

#[test]
fn completeness_report() {
    let spec = ProblemSpec::new(vec![2], 2).unwrap();
    let g = minimal_invariant_generators(&spec).unwrap();
    let rep = verify_completeness(&g, &spec, 8);
    assert!(rep.agrees());
    assert_eq!(rep.checked_through, 8);

    let spec = ProblemSpec::new(vec![1, 1, 1, 2], 3).unwrap();
    let mut g = minimal_invariant_generators(&spec).unwrap();
    assert!(verify_completeness(&g, &spec, 8).agrees());
    g.generators.pop();
    let rep = verify_completeness(&g, &spec, 8);
    assert_eq!(rep.first_discrepancy.unwrap().degree, 3);
}

#[test]
fn generator_degrees_ignore_form_order() {
    let a = minimal_invariant_generators(&ProblemSpec::new(vec![1, 1, 1, 2], 3).unwrap()).unwrap();
    let b = minimal_invariant_generators(&ProblemSpec::new(vec![2, 1, 1, 1], 3).unwrap()).unwrap();
    assert_eq!(a.degrees(), b.degrees());
}

#[test]
fn bound_too_small_is_flagged() {
    // the binary cubic needs its degree-4 discriminant
    let g = minimal_invariant_generators(&ProblemSpec::new(vec![3], 2).unwrap()).unwrap();
    assert!(g.generators.is_empty());
    assert!(g.unverified_beyond_bound);
    assert_eq!(g.verified_through, 3);
}

proptest! {
    #[test]
    fn raising_shifts_weight_by_two(e in prop::collection::vec(0u16..3, 7)) {
        let r = ring(&[2, 3]);
        let m = Monomial::from_exponents(&e);
        let w = r.monomial_weight(&m);
        for (kind, shift) in [(Operator::Raising, 2), (Operator::Lowering, -2)] {
            let img = apply_operator(&r, kind, &Polynomial::term(m.clone(), Rational::one()));
            for (t, _) in img.terms() {
                prop_assert_eq!(r.monomial_weight(t), w + shift);
            }
        }
    }
}
