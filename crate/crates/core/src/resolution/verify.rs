use alloc::vec::Vec;

use hashbrown::HashMap;

use super::koszul::regular_cuts;
use super::{ModuleElement, Resolution};
use crate::groebner::Ideal;
use crate::linalg::{self, SparseVec};
use crate::modp;
use crate::poly::{monomials_of_degree, Grading, Monomial, MultiDegree, Polynomial};
use crate::rational::Rational;

/// First defect found by [`verify_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexFailure {
    /// `d_{index-1}(d_index(e_column)) != 0`.
    NotAComplex { index: usize, column: usize },
    /// Column `column` of `d_index` does not have the degree of its basis
    /// element.
    NotHomogeneous { index: usize, column: usize },
    /// Nonzero homology at `F_index` in degree `degree`.
    NotExact { index: usize, degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    /// Exactness at every `F_i`, `i >= 1`, holds in all degrees up to this.
    pub exact_through: u32,
    pub failure: Option<ComplexFailure>,
}

impl ComplexReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `res` is a graded complex (exactly, `d_{i-1} d_i = 0` and
/// homogeneous differentials) and that it is exact at `F_i` for `i >= 1`
/// in every degree up to `degree_cap`.
///
/// Exactness in a degree is decided from ranks of the graded pieces of the
/// differentials, split by the finest multigrading the complex admits.
/// Ranks mod `P` are lower bounds, and with `d^2 = 0` reaching
/// `rank d_i + rank d_{i+1} = dim F_i` proves it; pieces where that fails
/// are recomputed exactly.
///
/// The ranks are first taken in `F / lF` for variables `l` certified
/// regular on the cokernel of `d_1` as in [`super::artinian_reduction`]
/// (variables only, so that the multigrading survives). From
/// `0 -> F(-w) -> F -> F/lF -> 0`, homology of `F/lF` vanishing at `i` in
/// degrees up to `e` gives `H_i(F)_d = l H_i(F)_{d-w}` there, so `H_i(F)`
/// vanishes in those degrees too. Only when the smaller complex is not
/// exact is `F` itself examined.
pub fn verify_complex(res: &Resolution, degree_cap: u32) -> ComplexReport {
    let l = res.length();
    let ord = res.ring().default_order();
    let weights = res.ring().weights();
    for i in 1..=l {
        let d = res.differential(i);
        for (column, col) in d.iter().enumerate() {
            let target = res.module(i - 1);
            let ok = col.entries().iter().all(|(r, p)| {
                p.terms()
                    .iter()
                    .all(|(m, _)| m.degree(weights) + target.shift(*r) == res.module(i).shift(column))
            });
            if !ok {
                return fail(ComplexFailure::NotHomogeneous { index: i, column });
            }
            if i >= 2 && !col.apply(res.differential(i - 1), &ord).is_zero() {
                return fail(ComplexFailure::NotAComplex { index: i, column });
            }
        }
    }
    if let Some(small) = cut_complex(res) {
        if exactness(&small, degree_cap).is_none() {
            return ComplexReport {
                exact_through: degree_cap,
                failure: None,
            };
        }
    }
    match exactness(res, degree_cap) {
        None => ComplexReport {
            exact_through: degree_cap,
            failure: None,
        },
        Some(degree_failure) => degree_failure,
    }
}

/// `F / (l_1, ..., l_k) F` for a regular sequence on the cokernel of `d_1`.
fn cut_complex(res: &Resolution) -> Option<Resolution> {
    if res.length() == 0 || res.module(0).rank() != 1 {
        return None;
    }
    let gens: Vec<Polynomial> = res.differential(1).iter().filter_map(|c| c.component(0).cloned()).collect();
    let ideal = Ideal::new(res.ring().clone(), gens).ok()?;
    let (cuts, _) = regular_cuts(&ideal, false).ok()?;
    if cuts.is_empty() {
        return None;
    }
    let mut differentials: Vec<Vec<ModuleElement>> = (1..=res.length()).map(|i| res.differential(i).to_vec()).collect();
    for c in &cuts {
        let ord = c.ring.default_order();
        for d in differentials.iter_mut() {
            for col in d.iter_mut() {
                *col = ModuleElement::new(
                    col.entries()
                        .iter()
                        .map(|(r, p)| (*r, p.substitute(&c.images, &ord)))
                        .collect(),
                );
            }
        }
    }
    let ring = cuts.last().unwrap().ring.clone();
    Resolution::new(ring, res.modules().to_vec(), differentials).ok()
}

/// First degree and index where `res` fails to be exact at some `F_i`,
/// `i >= 1`, up to `degree_cap`.
fn exactness(res: &Resolution, degree_cap: u32) -> Option<ComplexReport> {
    let l = res.length();
    let ord = res.ring().default_order();
    let (grading, basis) = module_grading(res);
    let mut monomials: HashMap<u32, Vec<Monomial>> = HashMap::new();
    for e in 0..=degree_cap {
        let mut pieces: Vec<HashMap<MultiDegree, Vec<(usize, Monomial)>>> = (0..=l)
            .map(|i| piece(res, i, e, &grading, &basis[i], &mut monomials))
            .collect();
        for p in pieces.iter_mut() {
            for v in p.values_mut() {
                v.sort_by(|a, b| ord.cmp(&b.1, &a.1).then(a.0.cmp(&b.0)));
            }
        }
        // ranks[i] is the rank of d_i in this degree
        let mut ranks_p = alloc::vec![HashMap::<MultiDegree, usize>::new(); l + 2];
        for i in 1..=l {
            for (mu, src) in &pieces[i] {
                let Some(tgt) = pieces[i - 1].get(mu) else { continue };
                ranks_p[i].insert(mu.clone(), matrix_rank(res, i, src, tgt, false));
            }
        }
        for i in 1..=l {
            for (mu, src) in &pieces[i] {
                let rank = |ranks: &[HashMap<MultiDegree, usize>], k: usize| ranks[k].get(mu).copied().unwrap_or(0);
                if rank(&ranks_p, i) + rank(&ranks_p, i + 1) == src.len() {
                    continue;
                }
                let exact_i = pieces[i - 1].get(mu).map_or(0, |t| matrix_rank(res, i, src, t, true));
                let exact_next = match pieces.get(i + 1).and_then(|p| p.get(mu)) {
                    Some(s) => matrix_rank(res, i + 1, s, src, true),
                    None => 0,
                };
                if exact_i + exact_next != src.len() {
                    return Some(ComplexReport {
                        exact_through: e.saturating_sub(1),
                        failure: Some(ComplexFailure::NotExact { index: i, degree: e }),
                    });
                }
            }
        }
    }
    None
}

fn fail(f: ComplexFailure) -> ComplexReport {
    ComplexReport {
        exact_through: 0,
        failure: Some(f),
    }
}

/// The finest multigrading making every differential homogeneous, with the
/// induced degrees of all basis elements; the weight grading when the
/// finer one is not consistent.
fn module_grading(res: &Resolution) -> (Grading, Vec<Vec<MultiDegree>>) {
    let weights = res.ring().weights();
    let polys: Vec<Polynomial> = (1..=res.length())
        .flat_map(|i| res.differential(i).iter())
        .flat_map(|c| c.entries().iter().map(|(_, p)| p.clone()))
        .collect();
    let fine = Grading::finest(&polys, res.ring().nvars(), weights);
    if let Some(b) = basis_degrees(res, &fine) {
        return (fine, b);
    }
    let coarse = Grading::from_weights(weights);
    let b = basis_degrees(res, &coarse).unwrap_or_else(|| {
        res.modules()
            .iter()
            .map(|f| f.shifts().iter().map(|&s| MultiDegree::from_slice(&[s as i64])).collect())
            .collect()
    });
    (coarse, b)
}

fn basis_degrees(res: &Resolution, g: &Grading) -> Option<Vec<Vec<MultiDegree>>> {
    let zero = MultiDegree::from_elem(0, g.rank());
    let mut out: Vec<Vec<MultiDegree>> = alloc::vec![alloc::vec![zero.clone(); res.module(0).rank()]];
    for i in 1..=res.length() {
        let mut level = Vec::new();
        for col in res.differential(i) {
            let mut deg: Option<MultiDegree> = None;
            for (r, p) in col.entries() {
                for (m, _) in p.terms() {
                    let mut d = g.degree(m);
                    for (x, y) in d.iter_mut().zip(&out[i - 1][*r]) {
                        *x += y;
                    }
                    if *deg.get_or_insert_with(|| d.clone()) != d {
                        return None;
                    }
                }
            }
            level.push(deg.unwrap_or_else(|| zero.clone()));
        }
        out.push(level);
    }
    Some(out)
}

/// Basis `(basis index, monomial)` of `(F_i)_e`, split by multidegree.
fn piece(
    res: &Resolution,
    i: usize,
    e: u32,
    grading: &Grading,
    basis: &[MultiDegree],
    cache: &mut HashMap<u32, Vec<Monomial>>,
) -> HashMap<MultiDegree, Vec<(usize, Monomial)>> {
    let weights = res.ring().weights();
    let mut out: HashMap<MultiDegree, Vec<(usize, Monomial)>> = HashMap::new();
    for (k, &s) in res.module(i).shifts().iter().enumerate() {
        if s > e {
            continue;
        }
        let ms = cache.entry(e - s).or_insert_with(|| monomials_of_degree(weights, e - s));
        for m in ms.iter() {
            let mut d = grading.degree(m);
            for (x, y) in d.iter_mut().zip(&basis[k]) {
                *x += y;
            }
            out.entry(d).or_default().push((k, m.clone()));
        }
    }
    out
}

/// Rank of `d_i` from the span of `src` to the span of `tgt`, mod `P` or
/// exactly.
fn matrix_rank(res: &Resolution, i: usize, src: &[(usize, Monomial)], tgt: &[(usize, Monomial)], exact: bool) -> usize {
    let rows = matrix_rows(res, i, src, tgt);
    if !exact {
        let modular: Option<Vec<Vec<(usize, u64)>>> = rows
            .iter()
            .map(|row| row.iter().map(|(n, c)| modp::from_rational(c).map(|x| (*n, x))).collect())
            .collect();
        if let Some(m) = modular {
            return modp::sparse_rank(m);
        }
    }
    linalg::rank(rows)
}

fn matrix_rows(res: &Resolution, i: usize, src: &[(usize, Monomial)], tgt: &[(usize, Monomial)]) -> Vec<SparseVec> {
    let index: HashMap<(usize, &Monomial), usize> = tgt.iter().enumerate().map(|(n, (r, m))| ((*r, m), n)).collect();
    let d = res.differential(i);
    src.iter()
        .map(|(k, m)| {
            let mut row: Vec<(usize, Rational)> = d[*k]
                .entries()
                .iter()
                .flat_map(|(r, p)| p.terms().iter().map(move |(t, c)| (*r, t, c)))
                .map(|(r, t, c)| (index[&(r, &t.mul(m))], c.clone()))
                .collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect()
}
