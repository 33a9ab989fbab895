//! SL2-invariants of systems of binary forms by weight-space linear algebra.
//!
//! A form of degree `d` is written `sum_k C(d,k) a_k x^(d-k) y^k`. The
//! coefficient `a_k` has sl2-weight `d - 2k`; the raising operator
//! `sum_k k a_(k-1) d/da_k` and the lowering operator
//! `sum_k (d-k) a_(k+1) d/da_k` act as derivations. Invariants are the
//! weight-0 polynomials killed by the raising operator.

mod search;

use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::linalg::{nullspace, SparseVec};
use crate::modp;
use crate::poly::{GradedRing, Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

pub use search::{
    minimal_invariant_generators, verify_completeness, CompletenessReport, Discrepancy,
    Generator, GeneratorSet,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("a form must have degree at least 1")]
    ZeroDegree,
    #[error("at least one form is required")]
    NoForms,
    #[error("degree bound must be at least 1")]
    ZeroBound,
    #[error("multidegree has {found} entries for {expected} forms")]
    MultidegreeLength { expected: usize, found: usize },
    #[error("evaluation ranks stayed below the invariant dimension in multidegree {0:?}")]
    RankDeficient(Vec<u32>),
}

/// The forms `d_1, ..., d_n` and a cap on the degree of generators searched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    degrees: Vec<u32>,
    degree_bound: u32,
}

impl ProblemSpec {
    pub fn new(degrees: Vec<u32>, degree_bound: u32) -> Result<Self, InvariantError> {
        if degrees.is_empty() {
            return Err(InvariantError::NoForms);
        }
        if degrees.contains(&0) {
            return Err(InvariantError::ZeroDegree);
        }
        if degree_bound == 0 {
            return Err(InvariantError::ZeroBound);
        }
        Ok(ProblemSpec {
            degrees,
            degree_bound,
        })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn with_bound(&self, degree_bound: u32) -> Result<Self, InvariantError> {
        Self::new(self.degrees.clone(), degree_bound)
    }

    /// Number of coefficient variables, `sum (d_i + 1)`.
    pub fn dimension(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize + 1).sum()
    }
}

/// `K[a^(i)_k]`, the coordinate ring of the space of forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRing {
    degrees: Vec<u32>,
    offsets: Vec<usize>,
    ring: GradedRing,
    order: MonomialOrder,
}

fn form_prefix(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvw";
    if i < LETTERS.len() {
        String::from(LETTERS[i] as char)
    } else {
        alloc::format!("f{i}_")
    }
}

impl CoefficientRing {
    /// Variables `a0..a{d_1}`, `b0..b{d_2}`, ... with total-degree weights.
    pub fn new(degrees: &[u32]) -> Self {
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut names = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            offsets.push(names.len());
            let p = form_prefix(i);
            for k in 0..=d {
                names.push(alloc::format!("{p}{k}"));
            }
        }
        let weights = alloc::vec![1; names.len()];
        let ring = GradedRing::new(names, weights).expect("distinct generated names");
        let order = ring.default_order();
        CoefficientRing {
            degrees: degrees.to_vec(),
            offsets,
            ring,
            order,
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Index of `a^(form)_k`.
    pub fn var(&self, form: usize, k: u32) -> usize {
        self.offsets[form] + k as usize
    }

    /// `(form, k)` of a variable index.
    pub fn locate(&self, var: usize) -> (usize, u32) {
        let f = self.offsets.partition_point(|&o| o <= var) - 1;
        (f, (var - self.offsets[f]) as u32)
    }

    pub fn sl2_weight(&self, var: usize) -> i64 {
        let (f, k) = self.locate(var);
        self.degrees[f] as i64 - 2 * k as i64
    }

    pub fn monomial_weight(&self, m: &Monomial) -> i64 {
        m.exponents()
            .iter()
            .enumerate()
            .map(|(v, &e)| e as i64 * self.sl2_weight(v))
            .sum()
    }

    /// Degree in each form's coefficients.
    pub fn multidegree(&self, m: &Monomial) -> Vec<u32> {
        (0..self.degrees.len())
            .map(|f| {
                let lo = self.offsets[f];
                let hi = lo + self.degrees[f] as usize + 1;
                m.exponents()[lo..hi].iter().map(|&e| e as u32).sum()
            })
            .collect()
    }

    /// Monomials of multidegree `mu` with index sum `sum k e_(i,k)` equal to
    /// `index_sum`, i.e. of sl2-weight `sum mu_i d_i - 2 index_sum`.
    pub fn weight_monomials(&self, mu: &[u32], index_sum: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = Monomial::one(self.nvars());
        // capacity[f]: largest index sum reachable by forms f..
        let mut capacity = alloc::vec![0u32; mu.len() + 1];
        for f in (0..mu.len()).rev() {
            capacity[f] = capacity[f + 1] + mu[f] * self.degrees[f];
        }
        self.weight_rec(mu, &capacity, 0, 0, mu.first().copied().unwrap_or(0), index_sum, &mut cur, &mut out);
        out.sort_unstable_by(|a, b| self.order.cmp(b, a));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn weight_rec(
        &self,
        mu: &[u32],
        capacity: &[u32],
        form: usize,
        k: u32,
        count_left: u32,
        sum_left: u32,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if form == mu.len() {
            if sum_left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = self.degrees[form];
        if k == d {
            // the last coefficient takes the remaining count
            if count_left * d > sum_left || sum_left - count_left * d > capacity[form + 1] {
                return;
            }
            let v = self.var(form, k);
            cur.exponents_mut()[v] = count_left as u16;
            let next = mu.get(form + 1).copied().unwrap_or(0);
            self.weight_rec(mu, capacity, form + 1, 0, next, sum_left - count_left * d, cur, out);
            cur.exponents_mut()[v] = 0;
            return;
        }
        let v = self.var(form, k);
        for e in 0..=count_left {
            if e * k > sum_left {
                break;
            }
            // what the rest of this form can still contribute, at most
            let rest_max = (count_left - e) * d + capacity[form + 1];
            if sum_left - e * k > rest_max {
                continue;
            }
            cur.exponents_mut()[v] = e as u16;
            self.weight_rec(mu, capacity, form, k + 1, count_left - e, sum_left - e * k, cur, out);
        }
        cur.exponents_mut()[v] = 0;
    }
}

/// Which sl2 operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Raising,
    Lowering,
}

/// Image of a single monomial: `(coefficient, monomial)` pairs.
fn operator_on_monomial(ring: &CoefficientRing, kind: Operator, m: &Monomial) -> Vec<(i64, Monomial)> {
    let mut out = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (f, k) = ring.locate(v);
        let d = ring.degrees[f];
        let (coef, target) = match kind {
            Operator::Raising if k >= 1 => (k as i64, ring.var(f, k - 1)),
            Operator::Lowering if k < d => ((d - k) as i64, ring.var(f, k + 1)),
            _ => continue,
        };
        let mut t = m.clone();
        t.exponents_mut()[v] -= 1;
        t.exponents_mut()[target] += 1;
        out.push((coef * e as i64, t));
    }
    out
}

/// Exact image of `p` under the raising or lowering derivation.
pub fn apply_operator(ring: &CoefficientRing, kind: Operator, p: &Polynomial) -> Polynomial {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        for (k, t) in operator_on_monomial(ring, kind, m) {
            terms.push((t, c * &Rational::from_i64(k)));
        }
    }
    Polynomial::from_terms(ring.nvars(), terms, &ring.order)
}

/// Basis of the invariants of multidegree `mu`: the kernel of the raising
/// operator on the weight-0 part, one normalized element per free column of
/// the reduced echelon form (columns ordered by decreasing monomial).
pub fn invariant_basis(
    ring: &CoefficientRing,
    mu: &[u32],
) -> Result<Vec<Polynomial>, InvariantError> {
    if mu.len() != ring.degrees.len() {
        return Err(InvariantError::MultidegreeLength {
            expected: ring.degrees.len(),
            found: mu.len(),
        });
    }
    let total: u32 = mu.iter().zip(&ring.degrees).map(|(m, d)| m * d).sum();
    if total % 2 == 1 {
        return Ok(Vec::new());
    }
    let half = total / 2;
    let sources = ring.weight_monomials(mu, half);
    let mut rows: HashMap<Monomial, SparseVec> = HashMap::new();
    for (j, m) in sources.iter().enumerate() {
        for (c, t) in operator_on_monomial(ring, Operator::Raising, m) {
            rows.entry(t).or_default().push((j, Rational::from_i64(c)));
        }
    }
    let mut keyed: Vec<(Monomial, SparseVec)> = rows.into_iter().collect();
    keyed.sort_unstable_by(|a, b| ring.order.cmp(&b.0, &a.0));
    let mut rows: Vec<SparseVec> = Vec::with_capacity(keyed.len());
    for (_, mut r) in keyed {
        r.sort_unstable_by_key(|t| t.0);
        // merge repeated columns (a monomial reached twice)
        let mut merged: SparseVec = Vec::with_capacity(r.len());
        for (c, v) in r {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += &v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|t| !t.1.is_zero());
        if !merged.is_empty() {
            rows.push(merged);
        }
    }
    if let Some(b) = modular_basis(ring, &rows, &sources) {
        return Ok(b);
    }
    let null = nullspace(rows, sources.len());
    Ok(null
        .into_iter()
        .map(|v| {
            let p = Polynomial::from_terms(
                ring.nvars(),
                v.into_iter().map(|(j, c)| (sources[j].clone(), c)),
                &ring.order,
            );
            p.normalize().expect("nonzero kernel vector")
        })
        .collect())
}

/// The kernel computed mod P and lifted by rational reconstruction. The
/// lifts are accepted only if each is exactly killed by the raising
/// operator; as they are independent and at least as many as the rational
/// kernel dimension, they then form a basis.
fn modular_basis(ring: &CoefficientRing, rows: &[SparseVec], sources: &[Monomial]) -> Option<Vec<Polynomial>> {
    let mrows: Vec<Vec<(usize, u64)>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| Some((*c, modp::from_rational(v)?))).collect())
        .collect::<Option<_>>()?;
    let null = modp::nullspace(&mrows, sources.len());
    let mut out = Vec::with_capacity(null.len());
    for v in null {
        let mut terms = Vec::new();
        for (j, &a) in v.iter().enumerate() {
            if a != 0 {
                let (n, d) = modp::reconstruct(a)?;
                terms.push((sources[j].clone(), Rational::new(n, d)));
            }
        }
        let p = Polynomial::from_terms(ring.nvars(), terms, &ring.order);
        if !apply_operator(ring, Operator::Raising, &p).is_zero() {
            return None;
        }
        out.push(p.normalize()?);
    }
    Some(out)
}

/// Number of multisets of size `m` from `{0..=d}` with each possible sum.
fn gaussian_counts(d: u32, m: u32) -> Vec<u128> {
    // dp[c][s]: multisets of size c drawn from the values seen so far
    let (d, m) = (d as usize, m as usize);
    let smax = d * m;
    let mut dp = alloc::vec![alloc::vec![0u128; smax + 1]; m + 1];
    dp[0][0] = 1;
    for k in 0..=d {
        // allow any number of copies of value k
        for c in 1..=m {
            for s in k..=smax {
                let add = dp[c - 1][s - k];
                dp[c][s] += add;
            }
        }
    }
    dp.swap_remove(m)
}

/// `dim` of the invariants of multidegree `mu`, by counting monomials of
/// weight 0 and weight 2: `N(0) - N(2)`.
pub fn cayley_sylvester_dim(degrees: &[u32], mu: &[u32]) -> u128 {
    let total: u32 = mu.iter().zip(degrees).map(|(m, d)| m * d).sum();
    if total % 2 == 1 || mu.len() != degrees.len() {
        return 0;
    }
    let mut acc = alloc::vec![1u128];
    for (&d, &m) in degrees.iter().zip(mu) {
        let g = gaussian_counts(d, m);
        let mut next = alloc::vec![0u128; acc.len() + g.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    let half = (total / 2) as usize;
    let n0 = acc[half];
    let n2 = if half == 0 { 0 } else { acc[half - 1] };
    n0 - n2
}

/// Multidegrees `mu` with `sum mu = total`, in increasing lexicographic order.
pub fn multidegrees(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, total, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

#[cfg(test)]
mod tests;
