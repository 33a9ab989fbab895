use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{GroebnerError, Ideal};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Rational;
use crate::poly::{for_each_monomial_of_degree, Grading, Monomial, MonomialOrder, Polynomial};

/// Minimal homogeneous generating set of a homogeneous ideal.
///
/// Degree pieces are visited in increasing weighted degree (and, inside a
/// degree, by the finest multigrading of the generators). A generator is
/// kept when it is independent of the products of previously kept
/// generators with monomials. Kept generators are normalized.
pub fn minimal_generators(ideal: &Ideal) -> Result<Vec<Polynomial>, GroebnerError> {
    ideal.check_homogeneous()?;
    let ring = ideal.ring();
    let weights = ring.weights();
    let ord = ring.default_order();
    let gens = ideal.generators();
    let grading = Grading::finest(gens, ring.nvars(), weights);
    let mut pieces: BTreeMap<(u32, Vec<i64>), Vec<&Polynomial>> = BTreeMap::new();
    for g in gens {
        let d = g.homogeneous_degree(weights).unwrap();
        let md = grading.poly_degree(g).unwrap().to_vec();
        pieces.entry((d, md)).or_default().push(g);
    }
    let mut out: Vec<(Polynomial, u32, Vec<i64>)> = Vec::new();
    for ((e, md), cands) in pieces {
        let mut rows: Vec<Polynomial> = Vec::new();
        for (h, dh, mh) in &out {
            if *dh >= e {
                continue;
            }
            let want: Vec<i64> = md.iter().zip(mh).map(|(a, b)| a - b).collect();
            for_each_monomial_of_degree(weights, e - dh, &mut |m| {
                if grading.degree(m).as_slice() == want.as_slice() {
                    rows.push(h.mul_term(m, &Rational::one()));
                }
            });
        }
        let kept = independent_in_span(&rows, &cands, &ord);
        for k in kept {
            let g = cands[k].normalize().unwrap();
            out.push((g, e, md.clone()));
        }
    }
    Ok(out.into_iter().map(|(g, _, _)| g).collect())
}

/// Indices of `cands` that are kept, scanning in order, when each must be
/// independent of `span` and of the previously kept candidates.
pub(crate) fn independent_in_span(
    span: &[Polynomial],
    cands: &[&Polynomial],
    ord: &MonomialOrder,
) -> Vec<usize> {
    let mut monos: Vec<&Monomial> = span
        .iter()
        .chain(cands.iter().copied())
        .flat_map(|p| p.terms().iter().map(|t| &t.0))
        .collect();
    monos.sort_unstable_by(|a, b| ord.cmp(b, a));
    monos.dedup();
    let col: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let to_row = |p: &Polynomial| -> SparseVec {
        let mut v: SparseVec = p.terms().iter().map(|(m, c)| (col[m], c.clone())).collect();
        v.sort_unstable_by_key(|t| t.0);
        v
    };
    let mut ech = Echelon::new();
    for p in span {
        ech.insert(to_row(p));
    }
    let mut kept = Vec::new();
    for (k, p) in cands.iter().enumerate() {
        if ech.insert(to_row(p)) {
            kept.push(k);
        }
    }
    kept
}
