use alloc::vec::Vec;

use hashbrown::HashMap;
use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use super::{BettiTable, ResolutionError};
use crate::groebner::{groebner_basis, hilbert_series_quotient, GroebnerBasis, Ideal};
use crate::linalg::{self, SparseVec};
use crate::poly::{monomials_of_degree, GradedRing, Grading, Monomial, MultiDegree, Polynomial};
use crate::rational::Rational;

const SEED: u64 = 0x6b6f_737a_756c_0001;
const ATTEMPTS: usize = 3;

/// Graded Betti numbers `beta_{i,j}` of `R/I` with `j <= jcap`, as the
/// dimensions of the homology of the Koszul complex of the variables
/// tensored with `R/I`, computed over the full ring.
pub fn koszul_betti_plain(ideal: &Ideal, jcap: u32) -> Result<BettiTable, ResolutionError> {
    ideal.check_homogeneous()?;
    let gb = groebner_basis(ideal.generators(), &ideal.ring().default_order());
    Ok(koszul_strands(ideal.ring().weights(), &gb, jcap))
}

/// Same numbers as [`koszul_betti_plain`], after first cutting `R/I` down
/// by a regular sequence of forms `x_p + sum c_q x_q` (all variables of one
/// weight) as long as one is found. Each form is certified regular by the
/// Hilbert series: modding out a form of degree `w` multiplies it by
/// `1 - z^w` exactly when the form is a nonzerodivisor, and Betti numbers
/// over `R` of `R/I` equal those over `R/(l)` of `R/(I + l)` for such `l`.
/// When the quotient is Artinian the strands are small.
pub fn koszul_betti(ideal: &Ideal, jcap: u32) -> Result<BettiTable, ResolutionError> {
    ideal.check_homogeneous()?;
    let reduced = artinian_reduction(ideal)?;
    koszul_betti_plain(&reduced, jcap)
}

/// Multiplicity of `z = 1` as a root.
fn order_at_one(mut n: Vec<i128>) -> usize {
    let mut k = 0;
    while !n.is_empty() && n.iter().sum::<i128>() == 0 {
        let mut acc = 0;
        for c in n.iter_mut() {
            acc += *c;
            *c = acc;
        }
        n.pop();
        while n.last() == Some(&0) {
            n.pop();
        }
        k += 1;
    }
    k
}

/// `R/I` cut down by certified regular forms (see [`koszul_betti`]) while
/// possible, up to the Krull dimension. Betti numbers are unchanged.
pub fn artinian_reduction(ideal: &Ideal) -> Result<Ideal, ResolutionError> {
    Ok(regular_cuts(ideal, true)?.1)
}

/// Substitution killing one form: the variables of `ring` are those before
/// the cut minus one, and `images[i]` is the image of the old variable `i`.
#[derive(Clone, Debug)]
pub(crate) struct Cut {
    pub ring: GradedRing,
    pub images: Vec<Polynomial>,
}

/// The cuts made by [`artinian_reduction`], in order, and the cut ideal;
/// without `dense` only single variables are tried.
pub(crate) fn regular_cuts(ideal: &Ideal, dense: bool) -> Result<(Vec<Cut>, Ideal), ResolutionError> {
    let numer = hilbert_series_quotient(ideal)?.numerator().to_vec();
    if numer.is_empty() {
        return Ok((Vec::new(), ideal.clone()));
    }
    let dim = ideal.ring().nvars() - order_at_one(numer.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cur = ideal.clone();
    let mut cuts = Vec::new();
    'steps: for _ in 0..dim {
        let mut classes: Vec<u32> = cur.ring().weights().to_vec();
        classes.sort_unstable();
        classes.dedup();
        // single variables keep the cut ideal sparse; dense forms are the
        // generic fallback
        for dense in [false, true].into_iter().take(1 + dense as usize) {
            for &w in &classes {
                let class: Vec<usize> = (0..cur.ring().nvars()).filter(|&i| cur.ring().weights()[i] == w).collect();
                let tries = if dense { ATTEMPTS } else { class.len() };
                for t in 0..tries {
                    let coeffs: Vec<(usize, i64)> = if dense {
                        class.iter().map(|&q| (q, (rng.next_u64() % 9) as i64 - 4)).collect()
                    } else {
                        alloc::vec![(class[t], 1)]
                    };
                    let Some(c) = cut_form(cur.ring(), &coeffs)? else { continue };
                    let cand = apply_cut(&cur, &c)?;
                    if hilbert_series_quotient(&cand)?.numerator() == numer.as_slice() {
                        cur = cand;
                        cuts.push(c);
                        continue 'steps;
                    }
                }
            }
        }
        break;
    }
    Ok((cuts, cur))
}

/// The cut by `l = sum c_q x_q`, eliminating the first variable with a
/// nonzero coefficient; `None` when `l = 0`.
fn cut_form(ring: &GradedRing, coeffs: &[(usize, i64)]) -> Result<Option<Cut>, ResolutionError> {
    let Some(&(p, cp)) = coeffs.iter().find(|c| c.1 != 0) else { return Ok(None) };
    let keep: Vec<usize> = (0..ring.nvars()).filter(|&i| i != p).collect();
    let sub = GradedRing::new(
        keep.iter().map(|&i| ring.names()[i].clone()).collect(),
        keep.iter().map(|&i| ring.weights()[i]).collect(),
    )?;
    let n = sub.nvars();
    let ord = sub.default_order();
    let shift = |i: usize| if i < p { i } else { i - 1 };
    let images: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| {
            if i != p {
                return Polynomial::var(n, shift(i));
            }
            let terms = coeffs
                .iter()
                .filter(|c| c.0 != p)
                .map(|&(q, c)| (Monomial::var(n, shift(q), 1), Rational::new(-c, cp)));
            Polynomial::from_terms(n, terms, &ord)
        })
        .collect();
    Ok(Some(Cut { ring: sub, images }))
}

pub(crate) fn apply_cut(ideal: &Ideal, c: &Cut) -> Result<Ideal, ResolutionError> {
    let ord = c.ring.default_order();
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.substitute(&c.images, &ord))
        .filter(|g| !g.is_zero())
        .collect();
    Ok(Ideal::new(c.ring.clone(), gens)?)
}

type Piece = HashMap<MultiDegree, Vec<(u64, Monomial)>>;

fn koszul_strands(weights: &[u32], gb: &GroebnerBasis, jcap: u32) -> BettiTable {
    let n = weights.len();
    let grading = Grading::finest(gb.elements(), n, weights);
    let leads = gb.leading_monomials();
    let mut standard: HashMap<u32, Vec<Monomial>> = HashMap::new();
    let mut normal: HashMap<Monomial, Polynomial> = HashMap::new();
    // subsets of the variables by size, with weight and multidegree
    let mut subsets: Vec<Vec<(u64, u32, MultiDegree)>> = alloc::vec![Vec::new(); n + 1];
    for s in 0..(1u64 << n) {
        let vars = (0..n).filter(|&v| s >> v & 1 == 1);
        let w = vars.clone().map(|v| weights[v]).sum();
        let mut d = MultiDegree::from_elem(0, grading.rank());
        for v in vars {
            for (x, y) in d.iter_mut().zip(grading.var_degree(v)) {
                *x += y;
            }
        }
        subsets[s.count_ones() as usize].push((s, w, d));
    }
    let mut out = Vec::new();
    for j in 0..=jcap {
        let pieces: Vec<Piece> = (0..=n)
            .map(|i| {
                let mut piece = Piece::new();
                for (s, w, d) in &subsets[i] {
                    if *w > j {
                        continue;
                    }
                    let ms = standard.entry(j - w).or_insert_with(|| {
                        monomials_of_degree(weights, j - w)
                            .into_iter()
                            .filter(|m| !leads.iter().any(|l| l.divides(m)))
                            .collect()
                    });
                    for m in ms.iter() {
                        let mut md = grading.degree(m);
                        for (x, y) in md.iter_mut().zip(d) {
                            *x += y;
                        }
                        piece.entry(md).or_default().push((*s, m.clone()));
                    }
                }
                piece
            })
            .collect();
        let mut ranks: Vec<HashMap<MultiDegree, usize>> = alloc::vec![HashMap::new(); n + 2];
        for i in 1..=n {
            for (mu, src) in &pieces[i] {
                let Some(tgt) = pieces[i - 1].get(mu) else { continue };
                let rows = boundary_rows(src, tgt, gb, &mut normal);
                ranks[i].insert(mu.clone(), linalg::rank(rows));
            }
        }
        for i in 0..=n {
            let mut b = 0;
            for (mu, src) in &pieces[i] {
                let r = |k: usize| ranks[k].get(mu).copied().unwrap_or(0);
                b += src.len() - r(i) - r(i + 1);
            }
            out.push(((i, j), b as u64));
        }
    }
    BettiTable::new(out)
}

/// Rows of the Koszul boundary `m e_S -> sum_t (-1)^{#{s in S: s < t}} NF(x_t m) e_{S - t}`.
fn boundary_rows(
    src: &[(u64, Monomial)],
    tgt: &[(u64, Monomial)],
    gb: &GroebnerBasis,
    normal: &mut HashMap<Monomial, Polynomial>,
) -> Vec<SparseVec> {
    let index: HashMap<(u64, &Monomial), usize> = tgt.iter().enumerate().map(|(k, (s, m))| ((*s, m), k)).collect();
    src.iter()
        .map(|(s, m)| {
            let mut row: SparseVec = Vec::new();
            for t in 0..64 {
                if s >> t & 1 == 0 {
                    continue;
                }
                let below = (s & ((1u64 << t) - 1)).count_ones();
                let xm = m.mul_var(t, 1);
                let nf = normal
                    .entry(xm.clone())
                    .or_insert_with(|| gb.reduce(&Polynomial::term(xm, Rational::one())));
                for (mm, c) in nf.terms() {
                    let k = index[&(s & !(1u64 << t), mm)];
                    row.push((k, if below.is_multiple_of(2) { c.clone() } else { -c.clone() }));
                }
            }
            row.sort_by_key(|e| e.0);
            row
        })
        .collect()
}
