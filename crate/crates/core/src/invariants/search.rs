use alloc::vec::Vec;

use super::{cayley_sylvester_dim, invariant_basis, multidegrees, CoefficientRing, InvariantError, ProblemSpec};
use crate::modp::{self, ModEchelon};
use crate::poly::Polynomial;

const SEED: u64 = 0x5eed_1a2b_3c4d_5e6f;
const ATTEMPTS: usize = 4;

/// One generator of an invariant algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub poly: Polynomial,
    pub multidegree: Vec<u32>,
    pub degree: u32,
}

/// A minimal generating set found up to a degree bound.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub ring: CoefficientRing,
    pub generators: Vec<Generator>,
    /// Every degree up to this one has been checked against the invariant
    /// dimensions.
    pub verified_through: u32,
    /// Set when the check past the search bound found missing invariants.
    pub unverified_beyond_bound: bool,
}

impl GeneratorSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }
}

/// Generator values at a growing, seeded list of points of `F_P^n`.
struct Evaluations {
    nvars: usize,
    points: Vec<Vec<u64>>,
    /// `values[g][k]`: generator `g` at point `k`
    values: Vec<Vec<u64>>,
    polys: Vec<Polynomial>,
    seed: u64,
}

impl Evaluations {
    fn new(nvars: usize, seed: u64) -> Self {
        Evaluations {
            nvars,
            points: Vec::new(),
            values: Vec::new(),
            polys: Vec::new(),
            seed,
        }
    }

    fn ensure(&mut self, count: usize) {
        if self.points.len() >= count {
            return;
        }
        let start = self.points.len();
        let fresh = modp::random_points(self.nvars, count - start, self.seed.wrapping_add(start as u64));
        for pt in fresh {
            self.points.push(pt);
        }
        for (g, p) in self.polys.iter().enumerate() {
            for k in start..count {
                let v = modp::eval(p, &self.points[k]).unwrap_or(0);
                self.values[g].push(v);
            }
        }
    }

    fn push(&mut self, p: Polynomial) {
        let vals = self.points.iter().map(|pt| modp::eval(&p, pt).unwrap_or(0)).collect();
        self.values.push(vals);
        self.polys.push(p);
    }

    fn eval_poly(&self, p: &Polynomial, window: core::ops::Range<usize>) -> Vec<u64> {
        self.points[window]
            .iter()
            .map(|pt| modp::eval(p, pt).unwrap_or(0))
            .collect()
    }
}

/// Calls `visit` with every multiset of generators (as index lists, in
/// nondecreasing order) whose multidegrees add up to `mu`; stops early when
/// `visit` returns `false`.
fn for_each_product(
    gens: &[Vec<u32>],
    mu: &[u32],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn rec(
        gens: &[Vec<u32>],
        start: usize,
        left: &mut Vec<u32>,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if left.iter().all(|&v| v == 0) {
            return chosen.is_empty() || visit(chosen);
        }
        for g in start..gens.len() {
            if gens[g].iter().zip(left.iter()).all(|(a, b)| a <= b) {
                for (l, a) in left.iter_mut().zip(&gens[g]) {
                    *l -= a;
                }
                chosen.push(g);
                let go = rec(gens, g, left, chosen, visit);
                chosen.pop();
                for (l, a) in left.iter_mut().zip(&gens[g]) {
                    *l += a;
                }
                if !go {
                    return false;
                }
            }
        }
        true
    }
    let mut left = mu.to_vec();
    rec(gens, 0, &mut left, &mut Vec::new(), visit);
}

/// Rank (mod P) of the products of generators in multidegree `mu`,
/// evaluated at the points of `window`; stops once `cap` is reached.
fn product_rank(
    ev: &Evaluations,
    gen_mdeg: &[Vec<u32>],
    mu: &[u32],
    window: core::ops::Range<usize>,
    cap: usize,
    ech: &mut ModEchelon,
) {
    if cap == 0 {
        return;
    }
    for_each_product(gen_mdeg, mu, &mut |idx| {
        let row: Vec<u64> = window
            .clone()
            .map(|k| idx.iter().fold(1u64, |acc, &g| modp::mul(acc, ev.values[g][k])))
            .collect();
        ech.insert(row);
        ech.rank() < cap
    });
}

/// Searches generators degree by degree up to the bound, then checks the
/// degrees up to twice the bound for missing invariants.
///
/// Within a multidegree the products of earlier generators are evaluated at
/// random points mod a large prime; their modular rank is a lower bound for
/// the dimension of their span, so reaching the Cayley–Sylvester dimension
/// proves that nothing new is needed. Otherwise the exact invariant basis is
/// computed and its elements are added greedily until the rank is full.
pub fn minimal_invariant_generators(spec: &ProblemSpec) -> Result<GeneratorSet, InvariantError> {
    let ring = CoefficientRing::new(spec.degrees());
    let n = spec.degrees().len();
    let mut ev = Evaluations::new(ring.nvars(), SEED);
    let mut gens: Vec<Generator> = Vec::new();
    let mut gen_mdeg: Vec<Vec<u32>> = Vec::new();
    for e in 1..=spec.degree_bound() {
        for mu in multidegrees(n, e) {
            let cs = cayley_sylvester_dim(spec.degrees(), &mu) as usize;
            if cs == 0 {
                continue;
            }
            let new = piece_generators(&ring, &mut ev, &gen_mdeg, &mu, cs)?;
            for p in new {
                ev.push(p.clone());
                gen_mdeg.push(mu.clone());
                gens.push(Generator {
                    poly: p,
                    multidegree: mu.clone(),
                    degree: e,
                });
            }
        }
    }
    let mut set = GeneratorSet {
        ring,
        generators: gens,
        verified_through: spec.degree_bound(),
        unverified_beyond_bound: false,
    };
    let report = verify_completeness(&set, spec, 2 * spec.degree_bound());
    match report.first_discrepancy {
        Some(d) => {
            set.verified_through = d.degree - 1;
            set.unverified_beyond_bound = true;
        }
        None => set.verified_through = report.checked_through,
    }
    Ok(set)
}

fn piece_generators(
    ring: &CoefficientRing,
    ev: &mut Evaluations,
    gen_mdeg: &[Vec<u32>],
    mu: &[u32],
    cs: usize,
) -> Result<Vec<Polynomial>, InvariantError> {
    let width = cs + 4;
    let mut basis: Option<Vec<Polynomial>> = None;
    for attempt in 0..ATTEMPTS {
        let window = attempt * width..(attempt + 1) * width;
        ev.ensure(window.end);
        let mut ech = ModEchelon::new();
        product_rank(ev, gen_mdeg, mu, window.clone(), cs, &mut ech);
        if ech.rank() == cs {
            return Ok(Vec::new());
        }
        let b = match &basis {
            Some(b) => b,
            None => basis.insert(invariant_basis(ring, mu)?),
        };
        let mut new = Vec::new();
        for p in b {
            if ech.insert(ev.eval_poly(p, window.clone())) {
                new.push(p.clone());
                if ech.rank() == cs {
                    return Ok(new);
                }
            }
        }
    }
    Err(InvariantError::RankDeficient(mu.to_vec()))
}

/// First degree where the subalgebra falls short of the invariant ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub degree: u32,
    /// Dimension of the invariants of this degree.
    pub expected: u128,
    /// Dimension spanned by products of the generators.
    pub found: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub checked_through: u32,
    pub first_discrepancy: Option<Discrepancy>,
}

impl CompletenessReport {
    pub fn agrees(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

/// Compares, degree by degree up to `check_bound`, the span of products of
/// the generators with the Cayley–Sylvester dimension of the invariants.
pub fn verify_completeness(
    genset: &GeneratorSet,
    spec: &ProblemSpec,
    check_bound: u32,
) -> CompletenessReport {
    let n = spec.degrees().len();
    let mut ev = Evaluations::new(genset.ring.nvars(), SEED ^ 0x9e37_79b9_7f4a_7c15);
    for g in &genset.generators {
        ev.push(g.poly.clone());
    }
    let gen_mdeg: Vec<Vec<u32>> = genset.generators.iter().map(|g| g.multidegree.clone()).collect();
    for e in 1..=check_bound {
        let mut expected = 0u128;
        let mut found = 0u128;
        for mu in multidegrees(n, e) {
            let cs = cayley_sylvester_dim(spec.degrees(), &mu) as usize;
            if cs == 0 {
                continue;
            }
            expected += cs as u128;
            let width = cs + 4;
            let mut best = 0;
            for attempt in 0..ATTEMPTS {
                let window = attempt * width..(attempt + 1) * width;
                ev.ensure(window.end);
                let mut ech = ModEchelon::new();
                product_rank(&ev, &gen_mdeg, &mu, window, cs, &mut ech);
                best = best.max(ech.rank());
                if best == cs {
                    break;
                }
            }
            found += best as u128;
        }
        if found != expected {
            return CompletenessReport {
                checked_through: e - 1,
                first_discrepancy: Some(Discrepancy {
                    degree: e,
                    expected,
                    found,
                }),
            };
        }
    }
    CompletenessReport {
        checked_through: check_bound,
        first_discrepancy: None,
    }
}
