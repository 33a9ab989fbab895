//! Exact sparse linear algebra over the rationals.
//!
//! Rows are kept as primitive integer vectors and reduced fraction-free:
//! eliminating a leading entry `a` against a pivot `p` replaces the row by
//! `(p/g) * row - (a/g) * pivot_row` with `g = gcd(a, p)`, followed by content
//! removal. Pivots are the leftmost surviving column of each inserted row,
//! so the echelon form is a deterministic function of the insertion order.

use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::modp;
use crate::rational::{big_gcd, big_lcm, Rational};

/// Sparse vector: `(column, value)` pairs with strictly increasing columns
/// and nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

/// `x*a + y*b` for sparse vectors.
pub fn combine(x: &Rational, a: &[(usize, Rational)], y: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push((ca, x * &a[i].1));
            i += 1;
        } else if cb < ca {
            out.push((cb, y * &b[j].1));
            j += 1;
        } else {
            let v = &(x * &a[i].1) + &(y * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Scales `v` to coprime integer entries with a positive leading entry.
pub fn make_primitive(v: &mut SparseVec) {
    if v.is_empty() {
        return;
    }
    let mut den = BigInt::one();
    for (_, c) in v.iter() {
        if !c.is_integer() {
            den = big_lcm(&den, &c.denom());
        }
    }
    let mut g = BigInt::zero();
    for (_, c) in v.iter() {
        g = big_gcd(&g, &c.numer());
        if g.is_one() {
            break;
        }
    }
    let mut f = Rational::from_big(den, g);
    if v[0].1.is_negative() {
        f = -f;
    }
    if !f.is_one() {
        for (_, c) in v.iter_mut() {
            *c = &*c * &f;
        }
    }
}

/// Builds a sparse vector from a dense slice.
pub fn sparse_from_dense(d: &[Rational]) -> SparseVec {
    d.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Incremental row-echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Pivot column of each stored row.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Eliminates pivot columns from the front of `v` until its leading
    /// column is not a pivot. The result is primitive, or empty iff `v` lies
    /// in the row space.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        make_primitive(&mut v);
        while let Some((c, a)) = v.first() {
            let Some(&r) = self.pivot_row.get(c) else {
                break;
            };
            let row = &self.rows[r];
            let p = &row[0].1;
            let (pa, aa) = (p.numer(), a.numer());
            let g = big_gcd(&pa, &aa);
            let x = Rational::from_bigint(pa / &g);
            let y = -Rational::from_bigint(aa / &g);
            v = combine(&x, &v, &y, row);
            make_primitive(&mut v);
        }
        v
    }

    /// Inserts `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.pivot_row.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduced row-echelon form: every row is zero at every other row's
    /// pivot column. Rows are returned sorted by pivot column.
    pub fn into_reduced(self) -> Vec<SparseVec> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivot_idx: HashMap<usize, usize> =
            rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        for i in (0..rows.len()).rev() {
            // rows after i are already reduced
            loop {
                let hit = rows[i]
                    .iter()
                    .skip(1)
                    .find(|(c, _)| pivot_idx.get(c).is_some_and(|&k| k > i))
                    .map(|(c, a)| (*c, a.clone()));
                let Some((c, a)) = hit else { break };
                let k = pivot_idx[&c];
                let p = rows[k][0].1.clone();
                let g = big_gcd(&p.numer(), &a.numer());
                let x = Rational::from_bigint(p.numer() / &g);
                let y = -Rational::from_bigint(a.numer() / &g);
                let mut v = combine(&x, &rows[i], &y, &rows[k]);
                make_primitive(&mut v);
                rows[i] = v;
            }
        }
        rows
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{x : A x = 0}` for the matrix whose rows are `rows` and which
/// has `ncols` columns. One primitive integer vector per free column, in
/// increasing order of the free column, which carries a positive entry.
pub fn nullspace(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let reduced = e.into_reduced();
    let mut is_pivot = alloc::vec![false; ncols];
    for r in &reduced {
        is_pivot[r[0].0] = true;
    }
    // for each free column, the pivot rows touching it
    let mut touching: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for r in &reduced {
        let (pc, pv) = (&r[0].0, &r[0].1);
        for (c, a) in r.iter().skip(1) {
            touching.entry(*c).or_default().push((*pc, -(a / pv)));
        }
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v: SparseVec = touching.remove(&f).unwrap_or_default();
        v.push((f, Rational::one()));
        v.sort_by_key(|t| t.0);
        let mut w = v;
        // primitive scaling without flipping the free entry's sign
        make_primitive(&mut w);
        let free_neg = w.iter().find(|t| t.0 == f).is_some_and(|t| t.1.is_negative());
        if free_neg {
            for t in w.iter_mut() {
                t.1 = -t.1.clone();
            }
        }
        out.push(w);
    }
    out
}

/// Null space as in [`nullspace`], found mod P first: the modular basis is
/// lifted by rational reconstruction and kept only if every lift is exactly
/// annihilated by the rows. The lifts are then independent and at least as
/// many as the rational nullity, so they are a basis; otherwise the exact
/// elimination runs.
pub fn certified_nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    if let Some(v) = modular_nullspace(rows, ncols) {
        return v;
    }
    nullspace(rows.iter().cloned(), ncols)
}

fn modular_nullspace(rows: &[SparseVec], ncols: usize) -> Option<Vec<SparseVec>> {
    let mrows: Vec<Vec<(usize, u64)>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| Some((*c, modp::from_rational(v)?))).collect())
        .collect::<Option<_>>()?;
    let null = modp::nullspace(&mrows, ncols);
    let mut out = Vec::with_capacity(null.len());
    for v in null {
        let mut w: SparseVec = Vec::new();
        for (j, &a) in v.iter().enumerate() {
            if a != 0 {
                let (n, d) = modp::reconstruct(a)?;
                w.push((j, Rational::new(n, d)));
            }
        }
        if rows.iter().any(|r| !dot(r, &w).is_zero()) {
            return None;
        }
        make_primitive(&mut w);
        out.push(w);
    }
    // make_primitive gives a positive leading entry; the exact routine keeps
    // the free entry positive instead, and the free entry is the last one
    for w in out.iter_mut() {
        if w.last().is_some_and(|t| t.1.is_negative()) {
            for t in w.iter_mut() {
                t.1 = -t.1.clone();
            }
        }
    }
    Some(out)
}

/// Dot product of two sparse vectors.
pub fn dot(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> Rational {
    let mut acc = Rational::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Fraction-free Bareiss elimination of a dense integer matrix in place;
/// returns the rank. Row swaps pick the first nonzero entry at or below the
/// current row in the leftmost remaining column.
pub fn bareiss_rank(m: &mut [Vec<Rational>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = Rational::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = &v / &prev;
            }
            m[i][c] = Rational::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}
