//! The computation behind each subcommand, and the checks run by `verify`.

use sl2betti_core::groebner::{hilbert_series_quotient, minimal_generators, Ideal};
use sl2betti_core::invariants::{
    cayley_sylvester_dim, minimal_invariant_generators, multidegrees, GeneratorSet, ProblemSpec,
};
use sl2betti_core::poly::{GradedRing, Polynomial};
use sl2betti_core::presentation::{kernel, present, AlgebraMap, Presentation, PresentationError};
use sl2betti_core::report::{check_palindromy, expected_hd, invariant_dimension, poincare_from_betti};
use sl2betti_core::resolution::{betti, koszul_betti, minimize, resolve, verify_complex, BettiTable, Resolution};

use crate::catalog::{self, CaseRecord};
use crate::Error;

/// Largest bound tried when no catalog entry fixes one.
pub const MAX_BOUND: u32 = 32;
/// Degree cap for the exactness check unless one is given.
pub const COMPLEX_CAP: u32 = 20;

/// Comma-separated positive integers, e.g. `1,1,1,2`.
pub fn parse_list(text: &str) -> Result<Vec<u32>, Error> {
    let bad = || Error::Input(format!("expected comma-separated positive integers, got `{text}`"));
    let v: Vec<u32> = text
        .split(',')
        .map(|s| s.trim().parse::<u32>().ok().filter(|&d| d > 0))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    Ok(v)
}

/// Generators up to `bound`, or, without one, up to the catalog bound or
/// the first of 2, 4, 8, ... that the completeness check accepts.
pub fn generators(degrees: &[u32], bound: Option<u32>) -> Result<GeneratorSet, Error> {
    let spec = |b| ProblemSpec::new(degrees.to_vec(), b).map_err(|e| Error::Input(e.to_string()));
    match bound.or_else(|| catalog::by_degrees(degrees).map(|c| c.bound)) {
        Some(b) => Ok(minimal_invariant_generators(&spec(b)?)?),
        None => doubling_search(degrees),
    }
}

/// Generators for the first bound among 2, 4, 8, ... whose completeness
/// check passes, or for [`MAX_BOUND`].
pub fn doubling_search(degrees: &[u32]) -> Result<GeneratorSet, Error> {
    let spec = |b| ProblemSpec::new(degrees.to_vec(), b).map_err(|e| Error::Input(e.to_string()));
    let mut b = 2;
    loop {
        let g = minimal_invariant_generators(&spec(b)?)?;
        if !g.unverified_beyond_bound || b >= MAX_BOUND {
            return Ok(g);
        }
        b *= 2;
    }
}

/// Generators and minimal kernel, with the bound chosen as in [`generators`].
pub fn presentation(degrees: &[u32], bound: Option<u32>) -> Result<Presentation, Error> {
    let spec = |b| ProblemSpec::new(degrees.to_vec(), b).map_err(|e| Error::Input(e.to_string()));
    if let Some(b) = bound.or_else(|| catalog::by_degrees(degrees).map(|c| c.bound)) {
        return Ok(present(&spec(b)?)?);
    }
    let mut b = 2;
    loop {
        match present(&spec(b)?) {
            Err(PresentationError::Unverified(_)) if b < MAX_BOUND => b *= 2,
            r => return Ok(r?),
        }
    }
}

/// Minimal generators of the kernel of `x_i -> images[i]`.
pub fn kernel_of_images(ring: GradedRing, images: Vec<Polynomial>, weights: Option<&[u32]>) -> Result<Ideal, Error> {
    let map = match weights {
        Some(w) => AlgebraMap::with_weights(ring, images, w)?,
        None => AlgebraMap::new(ring, images)?,
    };
    let k = kernel(&map)?;
    let gens = minimal_generators(&k)?;
    Ok(Ideal::new(map.source().clone(), gens)?)
}

/// A minimal resolution of `R/I` and its Betti numbers.
pub fn resolve_ideal(ideal: &Ideal) -> Result<(Resolution, BettiTable), Error> {
    let res = minimize(&resolve(ideal)?);
    let t = betti(&res)?;
    Ok((res, t))
}

/// The full pipeline for a list of form degrees.
#[derive(Clone, Debug)]
pub struct Computed {
    pub presentation: Presentation,
    pub resolution: Resolution,
    pub betti: BettiTable,
}

pub fn compute(degrees: &[u32], bound: Option<u32>) -> Result<Computed, Error> {
    let presentation = presentation(degrees, bound)?;
    let (resolution, betti) = resolve_ideal(&presentation.kernel)?;
    Ok(Computed {
        presentation,
        resolution,
        betti,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Outcome of `verify` for one case.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: &'static CaseRecord,
    pub computed: Option<Computed>,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

/// `sum (-1)^i beta_{i,j} z^j / prod (1 - z^w)` against the Hilbert series
/// of `R/I` from its Gröbner basis through degree `upto`.
pub fn hilbert_identity(ideal: &Ideal, t: &BettiTable, upto: u32) -> Result<bool, Error> {
    let ours = poincare_from_betti(t, ideal.ring().weights()).expand(upto as usize);
    let theirs = hilbert_series_quotient(ideal)?.expand(upto as usize);
    Ok(ours == theirs)
}

/// Dimensions of the invariants of each total degree through `upto`.
pub fn invariant_dims(degrees: &[u32], upto: u32) -> Vec<i128> {
    (0..=upto)
        .map(|e| {
            multidegrees(degrees.len(), e)
                .iter()
                .map(|mu| cayley_sylvester_dim(degrees, mu) as i128)
                .sum()
        })
        .collect()
}

pub fn run_case(case: &'static CaseRecord, jcap: Option<u32>) -> CaseReport {
    let mut checks = Vec::new();
    let computed = match compute(case.degrees, Some(case.bound)) {
        Ok(c) => c,
        Err(e) => {
            checks.push(check("pipeline", false, e.to_string()));
            return CaseReport {
                case,
                computed: None,
                checks,
            };
        }
    };
    checks.extend(case_checks(case, &computed, jcap));
    CaseReport {
        case,
        computed: Some(computed),
        checks,
    }
}

pub fn case_checks(case: &CaseRecord, c: &Computed, jcap: Option<u32>) -> Vec<Check> {
    let mut out = Vec::new();
    let mut w = c.presentation.weights().to_vec();
    w.sort_unstable();
    out.push(check("weights", w == case.weights, format!("[{}]", crate::output::exponent_list(&w))));

    let golden = case.betti();
    let t = &c.betti;
    let detail = if *t == golden {
        String::from("matches the catalog")
    } else {
        let diff: Vec<String> = golden
            .entries()
            .keys()
            .chain(t.entries().keys())
            .filter(|&&(i, j)| t.get(i, j) != golden.get(i, j))
            .map(|&(i, j)| format!("({i},{j}): {} vs {}", t.get(i, j), golden.get(i, j)))
            .collect();
        diff.join(", ")
    };
    out.push(check("betti", *t == golden, detail));

    let js = t.j_star();
    let cap = jcap.unwrap_or(js);
    let kernel = &c.presentation.kernel;
    out.push(match koszul_betti(kernel, cap) {
        Ok(k) => check("koszul", k == t.truncated(cap), format!("j <= {cap}")),
        Err(e) => check("koszul", false, e.to_string()),
    });

    let upto = jcap.unwrap_or(js);
    let identity = hilbert_identity(kernel, t, upto);
    let cs = invariant_dims(case.degrees, upto) == poincare_from_betti(t, c.presentation.weights()).expand(upto as usize);
    out.push(match identity {
        Ok(h) => check("hilbert", h && cs, format!("through degree {upto}")),
        Err(e) => check("hilbert", false, e.to_string()),
    });

    let vcap = jcap.unwrap_or(js.min(COMPLEX_CAP));
    let rep = verify_complex(&c.resolution, vcap);
    out.push(match rep.failure {
        None => check("complex", true, format!("exact through degree {vcap}")),
        Some(f) => check("complex", false, format!("{f:?}")),
    });

    let m = c.presentation.weights().len();
    let spec = ProblemSpec::new(case.degrees.to_vec(), case.bound).expect("catalog spec");
    out.push(match expected_hd(&spec, m) {
        Ok(l) => check(
            "length",
            l == t.length(),
            format!("l = {} = {m} - {}", t.length(), invariant_dimension(&spec)),
        ),
        Err(e) => check("length", false, e.to_string()),
    });

    let p = check_palindromy(t);
    out.push(check(
        "palindromy",
        p.holds,
        match p.witness {
            None => format!("l = {}, j* = {}", p.length, p.j_star),
            Some((i, j)) => format!("fails at ({i},{j})"),
        },
    ));
    out
}

/// Runs cases on up to `threads` threads; reports come back in input order.
pub fn run_cases(cases: &[&'static CaseRecord], jcap: Option<u32>, threads: usize) -> Vec<CaseReport> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<CaseReport>>> = Mutex::new(vec![None; cases.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(cases.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&case) = cases.get(k) else { break };
                let r = run_case(case, jcap);
                slots.lock().unwrap()[k] = Some(r);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|r| r.expect("every case ran")).collect()
}

/// Value of `SL2BETTI_THREADS`, default 1.
pub fn threads_from_env() -> usize {
    std::env::var("SL2BETTI_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(1)
}
