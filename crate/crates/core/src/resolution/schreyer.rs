use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;

use super::{FreeModule, ModuleElement, Resolution, ResolutionError};
use crate::groebner::{groebner_basis, Ideal};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

/// A monomial order on the terms `m e_k` of a free module: terms compare by
/// `m * multiplier_k` in the ring order, ties going to the smaller path.
///
/// With unit multipliers and paths `[k]` this is term-over-position. The
/// Schreyer order induced by a list of elements takes their leading
/// monomials (times their own multipliers) as multipliers and extends the
/// paths of their leading basis elements by their index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    ring_order: MonomialOrder,
    multipliers: Vec<Monomial>,
    paths: Vec<Vec<u32>>,
}

impl ModuleOrder {
    /// Term-over-position on a module of rank `rank`, `e_0 > e_1 > ...` on
    /// equal monomials.
    pub fn term_over_position(ring_order: MonomialOrder, rank: usize) -> Self {
        let n = ring_order.nvars();
        ModuleOrder {
            ring_order,
            multipliers: alloc::vec![Monomial::one(n); rank],
            paths: (0..rank as u32).map(|k| alloc::vec![k]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.multipliers.len()
    }

    pub fn ring_order(&self) -> &MonomialOrder {
        &self.ring_order
    }

    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.ring_order
            .cmp(&a.total, &b.total)
            .then_with(|| self.paths[b.comp].cmp(&self.paths[a.comp]))
    }

    fn term(&self, m: Monomial, comp: usize, c: Rational) -> Term {
        let total = m.mul(&self.multipliers[comp]);
        Term { m, total, comp, c }
    }
}

#[derive(Clone, Debug)]
struct Term {
    m: Monomial,
    total: Monomial,
    comp: usize,
    c: Rational,
}

/// Module element as a list of terms sorted decreasingly.
#[derive(Clone, Debug, Default)]
struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    fn from_terms(mut terms: Vec<Term>, ord: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.m == t.m => last.c += &t.c,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.c.is_zero());
        Vector { terms: out }
    }

    fn from_element(e: &ModuleElement, ord: &ModuleOrder) -> Self {
        let terms = e
            .entries()
            .iter()
            .flat_map(|(k, p)| p.terms().iter().map(move |(m, c)| (k, m, c)))
            .map(|(k, m, c)| ord.term(m.clone(), *k, c.clone()))
            .collect();
        Self::from_terms(terms, ord)
    }

    fn to_element(&self, ring_order: &MonomialOrder) -> ModuleElement {
        let mut by: BTreeMap<usize, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for t in &self.terms {
            by.entry(t.comp).or_default().push((t.m.clone(), t.c.clone()));
        }
        let n = ring_order.nvars();
        ModuleElement::new(
            by.into_iter()
                .map(|(k, ts)| (k, Polynomial::from_terms(n, ts, ring_order)))
                .collect(),
        )
    }

    fn lead(&self) -> &Term {
        &self.terms[0]
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].c.recip();
        for t in self.terms.iter_mut() {
            t.c = &t.c * &inv;
        }
    }
}

/// `a - f * q * b`, where `q * b` lives in the same module as `a`.
fn sub_scaled(a: &[Term], f: &Rational, q: &Monomial, b: &[Term], ord: &ModuleOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let shifted = |t: &Term| Term {
        m: t.m.mul(q),
        total: t.total.mul(q),
        comp: t.comp,
        c: -(&t.c * f),
    };
    let (mut i, mut j) = (0, 0);
    let mut next = b.first().map(shifted);
    while i < a.len() || next.is_some() {
        let o = match (a.get(i), &next) {
            (Some(x), Some(y)) => ord.cmp(x, y),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match o {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(next.take().unwrap());
                j += 1;
                next = b.get(j).map(shifted);
            }
            Ordering::Equal => {
                let mut t = next.take().unwrap();
                t.c += &a[i].c;
                if !t.c.is_zero() {
                    out.push(t);
                }
                i += 1;
                j += 1;
                next = b.get(j).map(shifted);
            }
        }
    }
    out
}

/// Divisor lookup among the leading terms of a list of vectors.
struct Divisors {
    by_comp: HashMap<usize, Vec<(usize, u64)>>,
}

impl Divisors {
    fn new(elems: &[Vector]) -> Self {
        let mut by_comp: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
        for (k, v) in elems.iter().enumerate() {
            let l = v.lead();
            by_comp.entry(l.comp).or_default().push((k, l.m.support_mask()));
        }
        Divisors { by_comp }
    }

    fn push(&mut self, k: usize, v: &Vector) {
        let l = v.lead();
        self.by_comp.entry(l.comp).or_default().push((k, l.m.support_mask()));
    }

    fn find(&self, elems: &[Vector], t: &Term) -> Option<usize> {
        let mask = t.m.support_mask();
        self.by_comp.get(&t.comp)?.iter().find_map(|&(k, km)| {
            (km & !mask == 0 && elems[k].lead().m.divides(&t.m)).then_some(k)
        })
    }
}

/// Reduces the leading term of `v` while possible, reporting each step
/// `v -= f * q * elems[k]`.
fn reduce_top(
    mut v: Vec<Term>,
    elems: &[Vector],
    div: &Divisors,
    ord: &ModuleOrder,
    mut record: impl FnMut(usize, &Monomial, &Rational),
) -> Vec<Term> {
    while let Some(t) = v.first() {
        let Some(k) = div.find(elems, t) else { break };
        let g = elems[k].lead();
        let q = t.m.div_unchecked(&g.m);
        let f = &t.c / &g.c;
        record(k, &q, &f);
        v = sub_scaled(&v, &f, &q, &elems[k].terms, ord);
    }
    v
}

/// A Gröbner basis of a submodule of a free module, under a module order.
#[derive(Clone, Debug)]
pub struct ModuleGb {
    elements: Vec<Vector>,
    order: ModuleOrder,
    module: FreeModule,
}

impl ModuleGb {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    /// The ambient free module.
    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.elements.iter().map(|v| v.to_element(&self.order.ring_order)).collect()
    }

    /// Leading term of each element as `(basis index, monomial)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|v| (v.lead().comp, v.lead().m.clone())).collect()
    }

    /// Degree of each element.
    pub fn degrees(&self) -> Vec<u32> {
        self.elements
            .iter()
            .map(|v| self.order.ring_order.degree(&v.lead().m) + self.module.shift(v.lead().comp))
            .collect()
    }

    /// Sorts by leading basis index, then by decreasing lexicographic
    /// leading monomial: this keeps Schreyer resolutions within the number
    /// of variables.
    fn sort(&mut self) {
        self.elements.sort_by(|a, b| {
            let (x, y) = (a.lead(), b.lead());
            x.comp.cmp(&y.comp).then_with(|| y.m.exponents().cmp(x.m.exponents()))
        });
    }
}

/// Gröbner basis of the submodule generated by homogeneous `elements` of
/// `module`, by Buchberger's algorithm with pairs treated by increasing
/// degree. The result is minimal (no leading term divides another) with
/// monic leading terms.
pub fn module_groebner(
    elements: &[ModuleElement],
    module: &FreeModule,
    order: &ModuleOrder,
) -> Result<ModuleGb, ResolutionError> {
    let weights = order.ring_order.weights().to_vec();
    for (i, e) in elements.iter().enumerate() {
        if !e.is_zero() && e.degree(module, &weights).is_none() {
            return Err(ResolutionError::NotHomogeneous(i));
        }
        if let Some((k, _)) = e.entries().last() {
            if *k >= module.rank() {
                return Err(ResolutionError::ComponentRange { index: *k, rank: module.rank() });
            }
        }
    }
    if module.rank() == 1 && order.multipliers[0].is_one() {
        // the ideal engine is faster on a rank-one module
        let polys: Vec<Polynomial> = elements
            .iter()
            .filter_map(|e| e.component(0).cloned())
            .collect();
        let gb = groebner_basis(&polys, &order.ring_order);
        let elems = gb
            .elements()
            .iter()
            .map(|g| Vector::from_element(&ModuleElement::new(alloc::vec![(0, g.clone())]), order))
            .collect();
        let mut out = ModuleGb {
            elements: elems,
            order: order.clone(),
            module: module.clone(),
        };
        out.sort();
        return Ok(out);
    }
    let degree = |v: &Vector| order.ring_order.degree(&v.lead().m) + module.shift(v.lead().comp);
    let mut basis: Vec<Vector> = Vec::new();
    let mut div = Divisors { by_comp: HashMap::new() };
    let mut pending: BTreeMap<(u32, usize), Pending> = BTreeMap::new();
    let mut seq = 0;
    for e in elements {
        let v = Vector::from_element(e, order);
        if !v.is_zero() {
            pending.insert((degree(&v), seq), Pending::Input(v));
            seq += 1;
        }
    }
    while let Some((_, item)) = pending.pop_first() {
        let s = match item {
            Pending::Input(v) => v.terms,
            Pending::Pair(i, j) => {
                let (a, b) = (basis[i].lead(), basis[j].lead());
                let l = a.m.lcm(&b.m);
                let qa = l.div_unchecked(&a.m);
                let qb = l.div_unchecked(&b.m);
                let t = sub_scaled(&[], &-Rational::one(), &qa, &basis[i].terms, order);
                sub_scaled(&t, &(&a.c / &b.c), &qb, &basis[j].terms, order)
            }
        };
        let r = reduce_top(s, &basis, &div, order, |_, _, _| {});
        if r.is_empty() {
            continue;
        }
        let mut v = Vector { terms: r };
        v.make_monic();
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if b.lead().comp == v.lead().comp {
                let l = b.lead().m.lcm(&v.lead().m);
                let d = order.ring_order.degree(&l) + module.shift(v.lead().comp);
                pending.insert((d, seq), Pending::Pair(i, k));
                seq += 1;
            }
        }
        div.push(k, &v);
        basis.push(v);
    }
    // drop elements whose leading term is divisible by another's
    let keep: Vec<bool> = (0..basis.len())
        .map(|k| {
            let l = basis[k].lead();
            !basis.iter().enumerate().any(|(o, b)| {
                let bl = b.lead();
                o != k && bl.comp == l.comp && bl.m.divides(&l.m) && (bl.m != l.m || o < k)
            })
        })
        .collect();
    let elements = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(v, k)| k.then_some(v))
        .collect();
    let mut out = ModuleGb {
        elements,
        order: order.clone(),
        module: module.clone(),
    };
    out.sort();
    Ok(out)
}

enum Pending {
    Input(Vector),
    Pair(usize, usize),
}

/// Schreyer syzygies of a Gröbner basis: for each element `g_i` and each
/// minimal monomial `q = lcm(in g_i, in g_j) / in g_i` with `j > i` and the
/// same leading basis element, the reduction of the S-pair to zero gives a
/// syzygy with leading term `q e_i` in the induced order. They form a
/// Gröbner basis of the syzygy module for that order, returned sorted.
pub fn syzygies(gb: &ModuleGb) -> Result<ModuleGb, ResolutionError> {
    let ring_order = &gb.order.ring_order;
    let n = gb.elements.len();
    let module = FreeModule::new(gb.degrees());
    let order = ModuleOrder {
        ring_order: ring_order.clone(),
        multipliers: gb.elements.iter().map(|v| v.lead().total.clone()).collect(),
        paths: gb
            .elements
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut p = gb.order.paths[v.lead().comp].clone();
                p.push(k as u32);
                p
            })
            .collect(),
    };
    let div = Divisors::new(&gb.elements);
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, v) in gb.elements.iter().enumerate() {
        groups.entry(v.lead().comp).or_default().push(k);
    }
    let mut out: Vec<Vector> = Vec::new();
    for group in groups.values() {
        for (pos, &i) in group.iter().enumerate() {
            let gi = gb.elements[i].lead();
            let mut cands: Vec<(Monomial, usize)> = group[pos + 1..]
                .iter()
                .map(|&j| (gi.m.lcm(&gb.elements[j].lead().m).div_unchecked(&gi.m), j))
                .collect();
            cands.sort_by_key(|(q, _)| ring_order.degree(q));
            let mut kept: Vec<(Monomial, usize)> = Vec::new();
            for (q, j) in cands {
                if !kept.iter().any(|(k, _)| k.divides(&q)) {
                    kept.push((q, j));
                }
            }
            for (q, j) in kept {
                out.push(pair_syzygy(gb, &div, &order, i, j, &q)?);
            }
        }
    }
    debug_assert!(out.iter().all(|v| v.lead().comp < n));
    let mut next = ModuleGb {
        elements: out,
        order,
        module,
    };
    next.sort();
    Ok(next)
}

fn pair_syzygy(
    gb: &ModuleGb,
    div: &Divisors,
    order: &ModuleOrder,
    i: usize,
    j: usize,
    qi: &Monomial,
) -> Result<Vector, ResolutionError> {
    let (a, b) = (gb.elements[i].lead(), gb.elements[j].lead());
    let qj = a.m.mul(qi).div_unchecked(&b.m);
    let s = sub_scaled(&[], &-b.c.clone(), qi, &gb.elements[i].terms, &gb.order);
    let s = sub_scaled(&s, &a.c, &qj, &gb.elements[j].terms, &gb.order);
    let mut terms = alloc::vec![
        order.term(qi.clone(), i, b.c.clone()),
        order.term(qj, j, -a.c.clone()),
    ];
    let rest = reduce_top(s, &gb.elements, div, &gb.order, |k, q, f| {
        terms.push(order.term(q.clone(), k, -f.clone()));
    });
    if !rest.is_empty() {
        return Err(ResolutionError::NotGroebner);
    }
    let mut v = Vector::from_terms(terms, order);
    debug_assert!(v.lead().comp == i && &v.lead().m == qi);
    v.make_monic();
    Ok(v)
}

/// Free resolution of `R/I` by iterated Schreyer syzygies, starting from a
/// reduced Gröbner basis of `I` as `F_1`. Generally not minimal.
pub fn resolve(ideal: &Ideal) -> Result<Resolution, ResolutionError> {
    ideal.check_homogeneous()?;
    let ring = ideal.ring().clone();
    let ord = ring.default_order();
    let f0 = FreeModule::new(alloc::vec![0]);
    let gens: Vec<ModuleElement> = ideal
        .generators()
        .iter()
        .map(|g| ModuleElement::new(alloc::vec![(0, g.clone())]))
        .collect();
    let mut level = module_groebner(&gens, &f0, &ModuleOrder::term_over_position(ord, 1))?;
    if level.is_empty() {
        return Ok(Resolution::trivial(ring));
    }
    let mut modules = alloc::vec![f0, FreeModule::new(level.degrees())];
    let mut diffs = alloc::vec![level.elements()];
    loop {
        let next = syzygies(&level)?;
        if next.is_empty() {
            break;
        }
        modules.push(FreeModule::new(next.degrees()));
        diffs.push(next.elements());
        level = next;
    }
    Resolution::new(ring, modules, diffs)
}
