use sl2betti_core::groebner::hilbert_series_quotient;
use sl2betti_core::invariants::ProblemSpec;
use sl2betti_core::presentation::present;
use sl2betti_core::report::{check_palindromy, poincare_from_betti};
use sl2betti_core::resolution::{betti, koszul_betti, minimize, resolve, verify_complex};

#[test]
fn quartic_is_free_on_two_generators() {
    let p = present(&ProblemSpec::new(vec![4], 4).unwrap()).unwrap();
    assert_eq!(p.weights(), &[2, 3]);
    assert!(p.kernel.generators().is_empty());
    let t = betti(&minimize(&resolve(&p.kernel).unwrap())).unwrap();
    assert_eq!(t.entries().len(), 1);
    assert_eq!(t.get(0, 0), 1);
}

#[test]
fn three_linear_forms_and_a_quadratic() {
    let p = present(&ProblemSpec::new(vec![1, 1, 1, 2], 3).unwrap()).unwrap();
    assert_eq!(p.weights(), &[2, 2, 2, 2, 3, 3, 3, 3, 3, 3]);
    let mut kd: Vec<u32> = p
        .kernel
        .generators()
        .iter()
        .map(|f| f.homogeneous_degree(p.weights()).unwrap())
        .collect();
    kd.sort();
    assert_eq!(kd, [5, 5, 5, 6, 6, 6, 6, 6, 6]);

    let res = minimize(&resolve(&p.kernel).unwrap());
    assert!(res.is_minimal());
    let t = betti(&res).unwrap();
    assert_eq!(t.length(), 4);
    assert_eq!(t.j_star(), 17);

    let cap = t.j_star();
    assert!(verify_complex(&res, cap).is_ok());
    assert_eq!(koszul_betti(&p.kernel, cap).unwrap(), t);
    assert!(check_palindromy(&t).holds);

    let ours = poincare_from_betti(&t, p.weights()).expand(30);
    let theirs = hilbert_series_quotient(&p.kernel).unwrap().expand(30);
    assert_eq!(ours, theirs);
}
