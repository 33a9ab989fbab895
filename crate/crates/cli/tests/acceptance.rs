//! One line per acceptance criterion. Run with
//! `cargo test -p sl2betti --test acceptance`.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};
use sl2betti::catalog::{CaseRecord, CATALOG};
use sl2betti::grammar::parse_poly_file;
use sl2betti::pipeline::{self, Computed};
use sl2betti_core::groebner::Ideal;
use sl2betti_core::invariants::{
    apply_operator, cayley_sylvester_dim, invariant_basis, multidegrees, CoefficientRing, Operator, ProblemSpec,
};
use sl2betti_core::poly::{monomials_of_degree, GradedRing, Polynomial};
use sl2betti_core::report::{check_palindromy, invariant_dimension};
use sl2betti_core::resolution::{
    betti, koszul_betti, minimize, minimize_shuffled, resolve, verify_complex, BettiTable, Resolution,
};
use sl2betti_core::Rational;

fn table(entries: &[(usize, u32, u64)]) -> BettiTable {
    BettiTable::new(std::iter::once(((0, 0), 1)).chain(entries.iter().map(|&(i, j, b)| ((i, j), b))))
}

fn j_table() -> BettiTable {
    table(&[(1, 5, 3), (1, 6, 6), (2, 8, 8), (2, 9, 8), (3, 11, 6), (3, 12, 3), (4, 17, 1)])
}

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    std::fs::read_to_string(p).unwrap()
}

struct Run {
    case: &'static CaseRecord,
    computed: Result<Computed, String>,
    elapsed: Duration,
}

impl Run {
    fn betti(&self) -> Option<&BettiTable> {
        self.computed.as_ref().ok().map(|c| &c.betti)
    }
}

fn find<'a>(runs: &'a [Run], label: &str) -> &'a Run {
    runs.iter().find(|r| r.case.label == label).unwrap()
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn criterion_1() -> (bool, String) {
    let t0 = Instant::now();
    let file = parse_poly_file(&data("J.txt"), Some(&[3, 3, 2, 3, 2, 3, 3, 2, 2, 3])).unwrap();
    let ideal = Ideal::new(file.ring, file.polys).unwrap();
    let (_, t) = pipeline::resolve_ideal(&ideal).unwrap();
    let el = t0.elapsed();
    let ok = t == j_table() && t.length() == 4 && t.j_star() == 17 && el < Duration::from_secs(120);
    (ok, format!("printed J: l = {}, j* = {}, table exact: {} ({})", t.length(), t.j_star(), t == j_table(), secs(el)))
}

fn criterion_2() -> (bool, String) {
    let t0 = Instant::now();
    let c = pipeline::compute(&[1, 1, 1, 2], None).unwrap();
    let el = t0.elapsed();
    let mut w = c.presentation.weights().to_vec();
    w.sort_unstable();
    let mut k = c.presentation.kernel.degrees();
    k.sort_unstable();
    let ok = w == [2, 2, 2, 2, 3, 3, 3, 3, 3, 3]
        && k == [5, 5, 5, 6, 6, 6, 6, 6, 6]
        && c.betti == j_table()
        && el < Duration::from_secs(600);
    (ok, format!("1,1,1,2: weights {w:?}, kernel degrees {k:?}, table exact: {} ({})", c.betti == j_table(), secs(el)))
}

fn criterion_3(runs: &[Run]) -> (bool, String) {
    let hyper: [(&str, u32); 11] = [
        ("V5", 36), ("V6", 30), ("V1+V3", 12), ("V1+V4", 18), ("V2+V3", 14), ("V2+V4", 12),
        ("V4+V4", 12), ("2V1+V2", 6), ("V1+2V2", 8), ("3V2", 6), ("4V1", 4),
    ];
    let free = ["V1", "V2", "V3", "V4", "2V1", "V1+V2", "2V2", "3V1"];
    let mut bad = Vec::new();
    let mut slowest = (Duration::ZERO, "");
    for (label, w) in hyper {
        let r = find(runs, label);
        let limit = if label == "V5" || label == "V6" { 1800 } else { 300 };
        if r.betti() != Some(&table(&[(1, w, 1)])) || r.elapsed > Duration::from_secs(limit) {
            bad.push(label);
        }
        slowest = slowest.max((r.elapsed, label));
    }
    for label in free {
        let r = find(runs, label);
        if r.betti() != Some(&table(&[])) || r.elapsed > Duration::from_secs(300) {
            bad.push(label);
        }
        slowest = slowest.max((r.elapsed, label));
    }
    (
        bad.is_empty(),
        format!("11 hypersurfaces and 8 free cases, mismatches {bad:?}; slowest {} ({})", slowest.1, secs(slowest.0)),
    )
}

fn criterion_4(runs: &[Run]) -> (bool, String) {
    let golden = [
        ("V3+V3", table(&[(1, 8, 1), (1, 12, 1), (2, 20, 1)])),
        ("5V1", table(&[(1, 4, 5), (2, 6, 5), (3, 10, 1)])),
        (
            "V1+3V2",
            table(&[
                (1, 6, 4), (1, 7, 4), (1, 8, 6), (2, 9, 3), (2, 10, 12), (2, 11, 12), (2, 12, 8),
                (3, 13, 8), (3, 14, 12), (3, 15, 12), (3, 16, 3), (4, 17, 6), (4, 18, 4), (4, 19, 4), (5, 25, 1),
            ]),
        ),
        (
            "4V2",
            table(&[
                (1, 5, 4), (1, 6, 10), (2, 8, 15), (2, 9, 20), (3, 11, 20), (3, 12, 15), (4, 14, 10), (4, 15, 4),
                (5, 20, 1),
            ]),
        ),
    ];
    let bad: Vec<&str> = golden
        .iter()
        .filter(|(l, t)| find(runs, l).betti() != Some(t) || find(runs, l).case.betti() != *t)
        .map(|(l, _)| *l)
        .collect();
    (bad.is_empty(), format!("V3+V3, 5V1, V1+3V2, 4V2 exact; mismatches {bad:?}"))
}

/// A homogeneous ideal with at most 4 variables and 4 generators of degree
/// at most 3.
fn random_ideal(rng: &mut ChaCha8Rng) -> Ideal {
    loop {
        let n = 2 + (rng.next_u64() % 3) as usize;
        let weights: Vec<u32> = (0..n).map(|_| 1 + rng.next_u64().is_multiple_of(4) as u32).collect();
        let ring = GradedRing::with_prefix("x", weights.clone()).unwrap();
        let ord = ring.default_order();
        let k = 1 + (rng.next_u64() % 4) as usize;
        let mut gens = Vec::new();
        for _ in 0..k {
            let d = 1 + (rng.next_u64() % 3) as u32;
            let ms = monomials_of_degree(&weights, d);
            if ms.is_empty() {
                continue;
            }
            let terms = (0..1 + rng.next_u64() % 3).map(|_| {
                let m = ms[(rng.next_u64() % ms.len() as u64) as usize].clone();
                (m, Rational::from_i64((rng.next_u64() % 7) as i64 - 3))
            });
            let p = Polynomial::from_terms(n, terms, &ord);
            if !p.is_zero() {
                gens.push(p);
            }
        }
        if !gens.is_empty() {
            return Ideal::new(ring, gens).unwrap();
        }
    }
}

fn random_ideals() -> Vec<Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_97);
    (0..50).map(|_| random_ideal(&mut rng)).collect()
}

fn criterion_5(runs: &[Run], ideals: &[Ideal]) -> (bool, String) {
    let mut bad = Vec::new();
    for r in runs {
        let Ok(c) = &r.computed else {
            bad.push(r.case.label.to_string());
            continue;
        };
        if koszul_betti(&c.presentation.kernel, c.betti.j_star()).ok().as_ref() != Some(&c.betti) {
            bad.push(r.case.label.to_string());
        }
    }
    for (k, ideal) in ideals.iter().enumerate() {
        let t = betti(&minimize(&resolve(ideal).unwrap())).unwrap();
        if koszul_betti(ideal, t.j_star()).unwrap() != t {
            bad.push(format!("random #{k}"));
        }
    }
    (bad.is_empty(), format!("{} catalog cases and {} random ideals; mismatches {bad:?}", runs.len(), ideals.len()))
}

fn criterion_6(runs: &[Run]) -> (bool, String) {
    let mut bad = Vec::new();
    for r in runs {
        let ok = r.computed.as_ref().is_ok_and(|c| {
            let js = c.betti.j_star();
            let series = sl2betti_core::report::poincare_from_betti(&c.betti, c.presentation.weights());
            pipeline::hilbert_identity(&c.presentation.kernel, &c.betti, js).unwrap_or(false)
                && series.expand(js as usize) == pipeline::invariant_dims(r.case.degrees, js)
        });
        if !ok {
            bad.push(r.case.label);
        }
    }
    (bad.is_empty(), format!("numerator over prod(1 - z^w) vs R/J and Cayley-Sylvester through j*; mismatches {bad:?}"))
}

fn criterion_7(runs: &[Run]) -> (bool, String) {
    let bad: Vec<&str> = runs
        .iter()
        .filter(|r| !r.betti().is_some_and(|t| check_palindromy(t).holds))
        .map(|r| r.case.label)
        .collect();
    let v = check_palindromy(&table(&[(1, 2, 2), (2, 5, 1)]));
    let rejected = !v.holds && v.witness == Some((1, 2));
    (
        bad.is_empty() && rejected,
        format!("palindromic on all {} cases, failures {bad:?}; counterexample rejected at {:?}", runs.len(), v.witness),
    )
}

/// The literal law `l = m - (sum (d_i + 1) - 3)`, and the law with the
/// Krull dimension of the invariant ring in place of `sum (d_i + 1) - 3`.
fn criterion_8(runs: &[Run]) -> (bool, String, bool) {
    let mut literal = Vec::new();
    let mut literal_labels = Vec::new();
    let mut krull = Vec::new();
    for r in runs {
        let Ok(c) = &r.computed else {
            literal.push(r.case.label.to_string());
            literal_labels.push(r.case.label);
            krull.push(r.case.label);
            continue;
        };
        let spec = ProblemSpec::new(r.case.degrees.to_vec(), r.case.bound).unwrap();
        let m = c.presentation.weights().len() as i64;
        let l = c.betti.length() as i64;
        let formula = m - (spec.dimension() as i64 - 3);
        if formula != l {
            literal.push(format!("{} (l = {l}, formula {formula})", r.case.label));
            literal_labels.push(r.case.label);
        }
        if m - invariant_dimension(&spec) != l {
            krull.push(r.case.label);
        }
    }
    let by_example = |label: &str| find(runs, label).betti().map(|t| t.length());
    let examples = by_example("3V1+V2") == Some(4) && by_example("5V1") == Some(3);
    let explained = examples && krull.is_empty() && literal_labels == ["V1", "V2"];
    (
        literal.is_empty() && examples,
        format!(
            "literal law holds on {} of {} cases, fails on {literal:?} (their invariant rings have dimension 0 and 1, \
             not sum - 3); with the actual dimension it fails on {krull:?}",
            runs.len() - literal.len(),
            runs.len()
        ),
        explained,
    )
}

/// `d_{i-1} d_i = 0` and every column of `d_i` homogeneous of its shift.
fn complex_laws(res: &Resolution) -> bool {
    let ord = res.ring().default_order();
    let w = res.ring().weights();
    (1..=res.length()).all(|i| {
        res.differential(i).iter().enumerate().all(|(k, col)| {
            let hom = col.is_zero() || col.degree(res.module(i - 1), w) == Some(res.module(i).shift(k));
            let dd = i == 1 || col.apply(res.differential(i - 1), &ord).is_zero();
            hom && dd
        })
    })
}

fn criterion_9(runs: &[Run], ideals: &[Ideal]) -> (bool, String) {
    // the printed generators of the 3V1+V2 case
    let file = parse_poly_file(&data("L.txt"), None).unwrap();
    let ring = CoefficientRing::new(&[1, 1, 1, 2]);
    let annihilated = file.polys.iter().all(|p| {
        let p = p.reorder(ring.order());
        apply_operator(&ring, Operator::Raising, &p).is_zero() && apply_operator(&ring, Operator::Lowering, &p).is_zero()
    });

    let j = {
        let f = parse_poly_file(&data("J.txt"), None).unwrap();
        Ideal::new(f.ring, f.polys).unwrap()
    };
    let mut frames: Vec<Resolution> = vec![resolve(&j).unwrap()];
    frames.extend(ideals.iter().take(10).map(|i| resolve(i).unwrap()));
    let mut complexes: Vec<Resolution> = frames.iter().map(minimize).collect();
    complexes.extend(runs.iter().filter_map(|r| r.computed.as_ref().ok().map(|c| c.resolution.clone())));
    let laws = complexes.iter().all(complex_laws) && frames.iter().all(complex_laws);
    let exact = verify_complex(&complexes[0], 17).is_ok();

    let permutations = frames.iter().all(|f| {
        let t = betti(&minimize(f)).unwrap();
        (0..20).all(|s| betti(&minimize_shuffled(f, s)).unwrap() == t)
    });

    let specs: [&[u32]; 12] = [&[1], &[2], &[3], &[4], &[5], &[6], &[1, 1], &[1, 2], &[2, 2], &[1, 3], &[1, 1, 1, 2], &[3, 3]];
    let mut pieces = 0;
    let mut cs_ok = true;
    for d in specs {
        let r = CoefficientRing::new(d);
        for e in 0..=12u32 {
            for mu in multidegrees(d.len(), e) {
                if mu.iter().zip(d).map(|(m, d)| m * d).sum::<u32>() > 12 {
                    continue;
                }
                pieces += 1;
                cs_ok &= invariant_basis(&r, &mu).unwrap().len() as u128 == cayley_sylvester_dim(d, &mu);
            }
        }
    }
    (
        annihilated && laws && exact && permutations && cs_ok,
        format!(
            "L annihilated: {annihilated}; d^2 = 0 and homogeneity on {} complexes: {laws}; J exact through 17: {exact}; \
             20 shuffled minimizations of {} frames agree: {permutations}; Cayley-Sylvester = nullspace on {pieces} pieces: {cs_ok}",
            complexes.len() + frames.len(),
            frames.len()
        ),
    )
}

fn main() -> ExitCode {
    let runs: Vec<Run> = CATALOG
        .iter()
        .filter(|c| !c.stretch)
        .map(|case| {
            let t0 = Instant::now();
            let computed = pipeline::compute(case.degrees, Some(case.bound)).map_err(|e| e.to_string());
            Run {
                case,
                computed,
                elapsed: t0.elapsed(),
            }
        })
        .collect();
    let ideals = random_ideals();
    let (ok8, detail8, explained8) = criterion_8(&runs);
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(&runs),
        criterion_4(&runs),
        criterion_5(&runs, &ideals),
        criterion_6(&runs),
        criterion_7(&runs),
        (ok8, detail8),
        criterion_9(&runs, &ideals),
    ];
    let mut unexpected = false;
    for (k, (ok, detail)) in results.iter().enumerate() {
        let n = k + 1;
        println!("criterion {n}: {}  {detail}", if *ok { "PASS" } else { "FAIL" });
        // the literal length law is false for a single linear or quadratic
        // form; that failure, and only that one, is expected
        unexpected |= !ok && !(n == 8 && explained8);
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
