//! Buchberger Gröbner bases, graded minimalization and Hilbert series.

mod hilbert;
pub(crate) mod minimal;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::poly::{GradedRing, Monomial, MonomialOrder, PolyError, Polynomial};
use crate::rational::Rational;

pub use hilbert::{hilbert_numerator, hilbert_series_quotient, RationalSeries};
pub use minimal::minimal_generators;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator {0} is not homogeneous for the ring weights")]
    NotHomogeneous(usize),
}

/// An ideal given by generators in a graded ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: GradedRing,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: GradedRing, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        for g in &generators {
            if g.nvars() != ring.nvars() {
                return Err(PolyError::VariableCount {
                    expected: ring.nvars(),
                    found: g.nvars(),
                }
                .into());
            }
        }
        let ord = ring.default_order();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.reorder(&ord))
            .collect();
        Ok(Ideal { ring, generators })
    }

    pub fn zero(ring: GradedRing) -> Self {
        Ideal {
            ring,
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Polynomial> {
        self.generators
    }

    /// Fails on the first generator that is not homogeneous.
    pub fn check_homogeneous(&self) -> Result<(), GroebnerError> {
        match self
            .generators
            .iter()
            .position(|g| !g.is_homogeneous(self.ring.weights()))
        {
            Some(i) => Err(GroebnerError::NotHomogeneous(i)),
            None => Ok(()),
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators
            .iter()
            .map(|g| g.max_degree(self.ring.weights()).unwrap_or(0))
            .collect()
    }
}

/// A reduced Gröbner basis, optionally with the expression of each element
/// in the input generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    cofactors: Option<Vec<Vec<Polynomial>>>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// `cofactors()[k][i]` multiplies input generator `i` in element `k`.
    pub fn cofactors(&self) -> Option<&[Vec<Polynomial>]> {
        self.cofactors.as_deref()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lm().clone()).collect()
    }

    /// Fully reduced remainder of `p`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        Reducer::new(&self.elements).remainder(p, &self.order)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }
}

/// Divisor lookup over a fixed list of nonzero polynomials.
pub(crate) struct Reducer<'a> {
    polys: &'a [Polynomial],
    masks: Vec<u64>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(polys: &'a [Polynomial]) -> Self {
        let masks = polys.iter().map(|g| g.lm().support_mask()).collect();
        Reducer { polys, masks }
    }

    /// First element whose leading monomial divides `m`.
    pub(crate) fn divisor(&self, m: &Monomial) -> Option<usize> {
        let mm = m.support_mask();
        (0..self.polys.len())
            .find(|&k| self.masks[k] & !mm == 0 && self.polys[k].lm().divides(m))
    }

    pub(crate) fn remainder(&self, p: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        reduce_full(p, self, ord, |_, _, _| {})
    }
}

/// Subtracts `f * q * g` from `cur`, both in ascending term order; `g` is in
/// the usual descending order. The leading terms are assumed to cancel.
fn sub_multiple_ascending(
    cur: &mut Vec<(Monomial, Rational)>,
    f: &Rational,
    q: &Monomial,
    g: &Polynomial,
    ord: &MonomialOrder,
) {
    let old = core::mem::take(cur);
    let gt = g.terms();
    let mut out = Vec::with_capacity(old.len() + gt.len());
    let mut i = 0;
    // skip g's leading term: it cancels the top of `old`
    let mut j = gt.len() - 1;
    let end_i = old.len() - 1;
    let mut next: Option<Monomial> = (j > 0).then(|| gt[j].0.mul(q));
    while i < end_i || next.is_some() {
        let o = match (old.get(i).filter(|_| i < end_i), &next) {
            (Some(a), Some(b)) => ord.cmp(&a.0, b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match o {
            Ordering::Less => {
                out.push(old[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let m = next.take().unwrap();
                out.push((m, -(&gt[j].1 * f)));
                j -= 1;
                next = (j > 0).then(|| gt[j].0.mul(q));
            }
            Ordering::Equal => {
                let v = old[i].1.sub_mul(&gt[j].1, f);
                let m = next.take().unwrap();
                if !v.is_zero() {
                    out.push((m, v));
                }
                i += 1;
                j -= 1;
                next = (j > 0).then(|| gt[j].0.mul(q));
            }
        }
    }
    *cur = out;
}

/// Full reduction of `p`. `record(k, q, f)` is told every step
/// `p -= f * q * polys[k]`.
pub(crate) fn reduce_full(
    p: &Polynomial,
    red: &Reducer<'_>,
    ord: &MonomialOrder,
    mut record: impl FnMut(usize, &Monomial, &Rational),
) -> Polynomial {
    let mut cur: Vec<(Monomial, Rational)> = p.terms().iter().rev().cloned().collect();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = cur.last() {
        match red.divisor(m) {
            Some(k) => {
                let g = &red.polys[k];
                let q = m.div_unchecked(g.lm());
                let f = c / g.lc();
                record(k, &q, &f);
                sub_multiple_ascending(&mut cur, &f, &q, g, ord);
            }
            None => rem.push(cur.pop().unwrap()),
        }
    }
    Polynomial::from_sorted_terms(p.nvars(), rem)
}

/// Reduces only while the leading term is divisible.
pub(crate) fn reduce_top(
    p: &Polynomial,
    red: &Reducer<'_>,
    ord: &MonomialOrder,
    mut record: impl FnMut(usize, &Monomial, &Rational),
) -> Polynomial {
    let mut cur: Vec<(Monomial, Rational)> = p.terms().iter().rev().cloned().collect();
    while let Some((m, c)) = cur.last() {
        let Some(k) = red.divisor(m) else { break };
        let g = &red.polys[k];
        let q = m.div_unchecked(g.lm());
        let f = c / g.lc();
        record(k, &q, &f);
        sub_multiple_ascending(&mut cur, &f, &q, g, ord);
    }
    cur.reverse();
    Polynomial::from_sorted_terms(p.nvars(), cur)
}

/// Division with remainder: `p = sum cofactors[i] * g[i] + remainder`, always
/// dividing by the first `g[i]` whose leading monomial divides the current
/// term. Zero entries of `g` are ignored.
pub fn normal_form(
    p: &Polynomial,
    g: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<(Polynomial, Vec<Polynomial>), PolyError> {
    for q in core::iter::once(p).chain(g) {
        if q.nvars() != ord.nvars() {
            return Err(PolyError::VariableCount {
                expected: ord.nvars(),
                found: q.nvars(),
            });
        }
    }
    let idx: Vec<usize> = (0..g.len()).filter(|&i| !g[i].is_zero()).collect();
    let polys: Vec<Polynomial> = idx.iter().map(|&i| g[i].reorder(ord)).collect();
    let red = Reducer::new(&polys);
    let n = ord.nvars();
    let mut cof: Vec<Vec<(Monomial, Rational)>> = alloc::vec![Vec::new(); g.len()];
    let r = reduce_full(&p.reorder(ord), &red, ord, |k, q, f| {
        cof[idx[k]].push((q.clone(), f.clone()));
    });
    let cof = cof
        .into_iter()
        .map(|t| Polynomial::from_terms(n, t, ord))
        .collect();
    Ok((r, cof))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Working state of Buchberger's algorithm.
struct Engine<'a> {
    ord: &'a MonomialOrder,
    ngens: usize,
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    cofactors: Option<Vec<Vec<Polynomial>>>,
    /// indices of the current, not yet superseded basis elements
    active: Vec<usize>,
    /// copies of the active elements, in the same order
    basis: Vec<Polynomial>,
    pairs: BTreeMap<(u32, u64), Pair>,
    seq: u64,
}

impl<'a> Engine<'a> {
    fn weighted(&self, m: &Monomial) -> u32 {
        self.ord.degree(m)
    }

    fn sugar_of(&self, p: &Polynomial) -> u32 {
        p.max_degree(self.ord.weights()).unwrap_or(0)
    }

    /// Gebauer–Möller update with a new element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm().clone();
        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lg = self.polys[g].lm();
                (g, lg.lcm(&lh), lg.is_coprime(&lh))
            })
            .collect();
        // chain criterion among the new pairs: keep (g, h) unless some other
        // new pair has a strictly dividing lcm, or an equal lcm appeared earlier
        let mut keep: Vec<bool> = alloc::vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].1.divides(&cands[a].1) && (cands[b].1 != cands[a].1 || b < a || cands[b].2) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // drop coprime-lcm classes: if any pair with this lcm is coprime, the
        // whole class is redundant
        for a in 0..cands.len() {
            if keep[a] && !cands[a].2 {
                let coprime_twin = cands
                    .iter()
                    .any(|c| c.2 && c.1 == cands[a].1);
                if coprime_twin {
                    keep[a] = false;
                }
            }
        }
        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|_, p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lm().lcm(&lh);
            let lj = polys[p.j].lm().lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        for (k, (g, lcm, coprime)) in cands.into_iter().enumerate() {
            if !keep[k] || coprime {
                continue;
            }
            let sg = self.sugar[g] + self.weighted(&lcm) - self.weighted(self.polys[g].lm());
            let sh = self.sugar[h] + self.weighted(&lcm) - self.weighted(&lh);
            let s = sg.max(sh);
            self.seq += 1;
            self.pairs.insert((s, self.seq), Pair { i: g, j: h, lcm });
        }
        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
        self.basis = self.active.iter().map(|&k| self.polys[k].clone()).collect();
    }

    fn spoly(&self, p: &Pair) -> (Polynomial, Option<Vec<Polynomial>>) {
        let (a, b) = (&self.polys[p.i], &self.polys[p.j]);
        let qa = p.lcm.div_unchecked(a.lm());
        let qb = p.lcm.div_unchecked(b.lm());
        let fa = a.lc().recip();
        let fb = -b.lc().recip();
        let s = a.mul_term(&qa, &fa).add_scaled(&fb, Some(&qb), b, self.ord);
        let cof = self.cofactors.as_ref().map(|c| {
            (0..self.ngens)
                .map(|t| {
                    c[p.i][t]
                        .mul_term(&qa, &fa)
                        .add_scaled(&fb, Some(&qb), &c[p.j][t], self.ord)
                })
                .collect()
        });
        (s, cof)
    }

    /// Reduces by the active basis, tracking cofactors when enabled.
    fn reduce(&self, p: &Polynomial, cof: Option<Vec<Polynomial>>, full: bool) -> (Polynomial, Option<Vec<Polynomial>>) {
        let red = Reducer::new(&self.basis);
        let mut steps: Vec<(usize, Monomial, Rational)> = Vec::new();
        let track = cof.is_some();
        let rec = |k: usize, q: &Monomial, f: &Rational| {
            if track {
                steps.push((k, q.clone(), f.clone()));
            }
        };
        let r = if full {
            reduce_full(p, &red, self.ord, rec)
        } else {
            reduce_top(p, &red, self.ord, rec)
        };
        let cof = cof.map(|mut c| {
            let all = self.cofactors.as_ref().unwrap();
            for (k, q, f) in steps {
                let src = &all[self.active[k]];
                for t in 0..self.ngens {
                    c[t] = c[t].add_scaled(&-f.clone(), Some(&q), &src[t], self.ord);
                }
            }
            c
        });
        (r, cof)
    }

    fn push(&mut self, p: Polynomial, sugar: u32, cof: Option<Vec<Polynomial>>) -> usize {
        let k = self.polys.len();
        self.polys.push(p);
        self.sugar.push(sugar);
        if let (Some(all), Some(c)) = (self.cofactors.as_mut(), cof) {
            all.push(c);
        }
        k
    }
}

/// Scales a basis element (and its cofactor row) to primitive form.
fn normalize_with(p: Polynomial, cof: Option<Vec<Polynomial>>) -> (Polynomial, Option<Vec<Polynomial>>) {
    let n = p.normalize().expect("nonzero");
    let factor = n.lc() / p.lc();
    let cof = cof.map(|c| c.iter().map(|q| q.scale(&factor)).collect());
    (n, cof)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
///
/// Pairs are treated by increasing sugar, first-in first-out among equal
/// sugar; Buchberger's coprime and chain criteria prune pairs. Elements are
/// normalized and sorted by weighted degree, then by the order.
pub fn groebner_basis(gens: &[Polynomial], ord: &MonomialOrder) -> GroebnerBasis {
    run(gens, ord, false, None)
}

/// Gröbner basis of a homogeneous ideal truncated at weighted degree `cap`:
/// pairs and inputs of larger degree are never treated, so the result
/// agrees with the full basis in every degree up to `cap`.
pub fn groebner_basis_truncated(gens: &[Polynomial], ord: &MonomialOrder, cap: u32) -> GroebnerBasis {
    run(gens, ord, false, Some(cap))
}

/// Like [`groebner_basis`], also recording each element as a combination of
/// the inputs.
pub fn buchberger(ideal: &Ideal, ord: &MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    if ord.nvars() != ideal.ring().nvars() {
        return Err(PolyError::VariableCount {
            expected: ideal.ring().nvars(),
            found: ord.nvars(),
        }
        .into());
    }
    Ok(run(ideal.generators(), ord, true, None))
}

fn run(gens: &[Polynomial], ord: &MonomialOrder, track: bool, cap: Option<u32>) -> GroebnerBasis {
    let n = ord.nvars();
    let ngens = gens.len();
    let mut eng = Engine {
        ord,
        ngens,
        polys: Vec::new(),
        sugar: Vec::new(),
        cofactors: track.then(Vec::new),
        active: Vec::new(),
        basis: Vec::new(),
        pairs: BTreeMap::new(),
        seq: 0,
    };
    // inputs enter as pseudo-pairs so that they are processed by sugar too
    let mut pending: BTreeMap<(u32, u64), (Polynomial, Option<Vec<Polynomial>>)> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let g = g.reorder(ord);
        let cof = track.then(|| {
            (0..ngens)
                .map(|t| if t == i { Polynomial::one(n) } else { Polynomial::zero(n) })
                .collect()
        });
        let s = eng.sugar_of(&g);
        pending.insert((s, i as u64), (g, cof));
    }
    eng.seq = gens.len() as u64;
    loop {
        let next_pair = eng.pairs.first_key_value().map(|(k, _)| *k);
        let next_input = pending.first_key_value().map(|(k, _)| *k);
        let (sugar, p, cof) = match (next_pair, next_input) {
            (None, None) => break,
            (Some(kp), ki) if ki.is_none_or(|ki| kp.0 < ki.0) => {
                let pair = eng.pairs.remove(&kp).unwrap();
                let (s, c) = eng.spoly(&pair);
                (kp.0, s, c)
            }
            _ => {
                let (k, (g, c)) = pending.pop_first().unwrap();
                (k.0, g, c)
            }
        };
        if cap.is_some_and(|c| sugar > c) {
            break;
        }
        let (r, cof) = eng.reduce(&p, cof, false);
        if r.is_zero() {
            continue;
        }
        let (r, cof) = normalize_with(r, cof);
        let h = eng.push(r, sugar, cof);
        eng.update(h);
    }
    // interreduce the minimal basis
    let mut idx = eng.active.clone();
    idx.sort_by(|&a, &b| ord.cmp(eng.polys[a].lm(), eng.polys[b].lm()));
    let mut elements: Vec<Polynomial> = Vec::with_capacity(idx.len());
    let mut cofs: Vec<Vec<Polynomial>> = Vec::new();
    for (pos, &k) in idx.iter().enumerate() {
        let others: Vec<Polynomial> = idx
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &o)| eng.polys[o].clone())
            .collect();
        let other_idx: Vec<usize> = idx.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &o)| o).collect();
        let g = &eng.polys[k];
        let red = Reducer::new(&others);
        let mut steps = Vec::new();
        // the leading term is irreducible, so only the tail changes
        let r = reduce_full(g, &red, ord, |j, q, f| steps.push((other_idx[j], q.clone(), f.clone())));
        let cof = eng.cofactors.as_ref().map(|all| {
            let mut c = all[k].clone();
            for (j, q, f) in steps {
                for t in 0..ngens {
                    c[t] = c[t].add_scaled(&-f.clone(), Some(&q), &all[j][t], ord);
                }
            }
            c
        });
        let (r, cof) = normalize_with(r, cof);
        elements.push(r);
        if let Some(c) = cof {
            cofs.push(c);
        }
    }
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|&a, &b| {
        let (la, lb) = (elements[a].lm(), elements[b].lm());
        ord.degree(la).cmp(&ord.degree(lb)).then(ord.cmp(la, lb))
    });
    let elements: Vec<Polynomial> = order.iter().map(|&i| elements[i].clone()).collect();
    let cofactors = track.then(|| order.iter().map(|&i| cofs[i].clone()).collect());
    GroebnerBasis {
        elements,
        order: ord.clone(),
        cofactors,
    }
}

/// Equality of ideals by mutual reduction against Gröbner bases.
pub fn ideals_equal(a: &[Polynomial], b: &[Polynomial], ord: &MonomialOrder) -> bool {
    let ga = groebner_basis(a, ord);
    let gb = groebner_basis(b, ord);
    b.iter().all(|p| ga.contains(p)) && a.iter().all(|p| gb.contains(p))
}
