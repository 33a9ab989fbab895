use alloc::vec;
use alloc::vec::Vec;

use super::{groebner_basis, GroebnerError, Ideal};
use crate::poly::Monomial;

/// `numerator(z) / prod_w (1 - z^w)` with integer numerator coefficients,
/// `numerator[k]` being the coefficient of `z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: Vec<i128>,
    denominator_weights: Vec<u32>,
}

impl RationalSeries {
    /// Trailing zero coefficients are trimmed.
    pub fn new(mut numerator: Vec<i128>, denominator_weights: Vec<u32>) -> Self {
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        RationalSeries {
            numerator,
            denominator_weights,
        }
    }

    pub fn numerator(&self) -> &[i128] {
        &self.numerator
    }

    pub fn denominator_weights(&self) -> &[u32] {
        &self.denominator_weights
    }

    /// Power-series coefficients of degrees `0..=upto`.
    pub fn expand(&self, upto: usize) -> Vec<i128> {
        let mut c = vec![0i128; upto + 1];
        for (k, &a) in self.numerator.iter().enumerate().take(upto + 1) {
            c[k] = a;
        }
        for &w in &self.denominator_weights {
            let w = w as usize;
            for k in w..=upto {
                c[k] += c[k - w];
            }
        }
        c
    }
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &y) in b.iter().enumerate() {
        a[k + shift] += y;
    }
}

/// Drops generators divisible by another one.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N` of the Hilbert series `N / prod(1 - z^{w_i})` of `R / (gens)`
/// for a monomial ideal, by pivot recursion:
/// `N(I) = N(I + (p)) + z^deg(p) N(I : p)` with `p` a power of a variable.
pub fn hilbert_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i128> {
    let mut n = numerator_rec(minimalize(gens.to_vec()), weights);
    while n.last() == Some(&0) {
        n.pop();
    }
    n
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let nv = weights.len();
    // pairwise coprime generators form a regular sequence
    let mut used = vec![false; nv];
    let mut coprime = true;
    'outer: for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                if used[i] {
                    coprime = false;
                    break 'outer;
                }
                used[i] = true;
            }
        }
    }
    if coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let d = g.degree(weights) as usize;
            let mut f = vec![0i128; d + 1];
            f[0] = 1;
            f[d] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot variable: most frequent among generators that are not pure powers
    let mut count = vec![0usize; nv];
    for g in &gens {
        let support = g.exponents().iter().filter(|&&e| e > 0).count();
        if support >= 2 {
            for (i, &e) in g.exponents().iter().enumerate() {
                if e > 0 {
                    count[i] += 1;
                }
            }
        }
    }
    let x = (0..nv).max_by_key(|&i| (count[i], core::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exp(x)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let mut e = exps[(exps.len() - 1) / 2];
    // a pure power x^a already in the ideal must stay out of reach
    let pure = gens
        .iter()
        .filter(|g| g.exp(x) > 0 && g.exponents().iter().filter(|&&t| t > 0).count() == 1)
        .map(|g| g.exp(x))
        .min();
    if let Some(a) = pure {
        e = e.min(a - 1);
    }
    let p = Monomial::var(nv, x, e);
    let mut sum_gens = gens.clone();
    sum_gens.push(p.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut q = g.clone();
            let t = q.exp(x).saturating_sub(e);
            q.exponents_mut()[x] = t;
            q
        })
        .collect();
    let mut out = numerator_rec(minimalize(sum_gens), weights);
    let c = numerator_rec(minimalize(colon), weights);
    add_shifted(&mut out, &c, p.degree(weights) as usize);
    out
}

/// Hilbert series of `R / I` for a homogeneous ideal, from the leading
/// monomials of a Gröbner basis under the ring's default order.
pub fn hilbert_series_quotient(ideal: &Ideal) -> Result<RationalSeries, GroebnerError> {
    ideal.check_homogeneous()?;
    let weights = ideal.ring().weights();
    let gb = groebner_basis(ideal.generators(), &ideal.ring().default_order());
    let n = hilbert_numerator(&gb.leading_monomials(), weights);
    Ok(RationalSeries::new(n, weights.to_vec()))
}
