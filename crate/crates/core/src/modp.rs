//! Arithmetic modulo the Mersenne prime `2^61 - 1`.
//!
//! Results are never trusted on their own. The rank of an integer matrix
//! reduced mod `P` never exceeds its rank over the rationals, so a modular
//! rank that reaches a known upper bound certifies the rational rank; and
//! modular kernels are only used after lifting and exact verification.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use crate::poly::Polynomial;
use crate::rational::Rational;

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    let lo = (t as u64) & P;
    let hi = (t >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn from_i64(v: i64) -> u64 {
    let r = v.rem_euclid(P as i64);
    r as u64
}

fn from_big(v: &BigInt) -> u64 {
    let m = BigInt::from(P);
    let mut r = v % &m;
    if r < BigInt::from(0) {
        r += &m;
    }
    r.to_u64().unwrap()
}

/// Image of a rational, or `None` when `P` divides the denominator.
pub fn from_rational(q: &Rational) -> Option<u64> {
    let (n, d) = match q.small_parts() {
        Some((n, d)) => (from_i64(n), from_i64(d)),
        None => (from_big(&q.numer()), from_big(&q.denom())),
    };
    (d != 0).then(|| mul(n, inv(d)))
}

/// Value of `p` at a point of `F_P^n`.
pub fn eval(p: &Polynomial, point: &[u64]) -> Option<u64> {
    let mut powers: Vec<Vec<u64>> = point.iter().map(|&v| alloc::vec![1, v]).collect();
    let mut acc = 0;
    for (m, c) in p.terms() {
        let mut t = from_rational(c)?;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = &mut powers[i];
            while pw.len() <= e as usize {
                let next = mul(pw[pw.len() - 1], point[i]);
                pw.push(next);
            }
            t = mul(t, pw[e as usize]);
        }
        acc = add(acc, t);
    }
    Some(acc)
}

/// Seeded uniform points of `F_P^n`.
pub fn random_points(n: usize, count: usize, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rng.next_u64() % P).collect())
        .collect()
}

/// Incremental echelon form of dense vectors over `F_P`.
#[derive(Clone, Debug, Default)]
pub struct ModEchelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns `true` when it was independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for (piv, row) in &self.rows {
            let a = v[*piv];
            if a != 0 {
                // rows are scaled to a unit pivot
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = sub(*x, mul(a, y));
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[piv]);
        for x in v.iter_mut() {
            *x = mul(*x, s);
        }
        self.rows.push((piv, v));
        true
    }
}

/// Basis of the null space of a sparse matrix over `F_P` (`rows` hold
/// `(column, value)` pairs), one vector per free column of the reduced
/// echelon form, with a 1 in that column.
pub fn nullspace(rows: &[Vec<(usize, u64)>], ncols: usize) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut d = alloc::vec![0u64; ncols];
            for &(c, v) in r {
                d[c] = add(d[c], v);
            }
            d
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let s = inv(m[r][c]);
        for x in m[r][c..].iter_mut() {
            *x = mul(*x, s);
        }
        let (head, tail) = m.split_at_mut(r);
        let (prow, below) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(below.iter_mut()) {
            let a = row[c];
            if a == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                if y != 0 {
                    *x = sub(*x, mul(a, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut is_pivot = alloc::vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = alloc::vec![0u64; ncols];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = sub(0, m[i][f]);
            }
            v
        })
        .collect()
}

/// Incremental echelon form of sparse vectors over `F_P`, as
/// `(column, value)` pairs sorted by column.
#[derive(Clone, Debug, Default)]
pub struct SparseModEchelon {
    pivots: hashbrown::HashMap<usize, Vec<(usize, u64)>>,
}

impl SparseModEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts `v`; returns `true` when it was independent.
    pub fn insert(&mut self, mut v: Vec<(usize, u64)>) -> bool {
        v.retain(|e| e.1 != 0);
        while let Some(&(c, a)) = v.first() {
            let Some(row) = self.pivots.get(&c) else {
                let s = inv(a);
                for e in v.iter_mut() {
                    e.1 = mul(e.1, s);
                }
                self.pivots.insert(c, v);
                return true;
            };
            let mut out = Vec::with_capacity(v.len() + row.len());
            let (mut i, mut j) = (0, 0);
            while i < v.len() || j < row.len() {
                let ci = v.get(i).map_or(usize::MAX, |e| e.0);
                let cj = row.get(j).map_or(usize::MAX, |e| e.0);
                if ci < cj {
                    out.push(v[i]);
                    i += 1;
                } else if cj < ci {
                    out.push((cj, sub(0, mul(a, row[j].1))));
                    j += 1;
                } else {
                    let x = sub(v[i].1, mul(a, row[j].1));
                    if x != 0 {
                        out.push((ci, x));
                    }
                    i += 1;
                    j += 1;
                }
            }
            v = out;
        }
        false
    }
}

/// Rank over `F_P` of sparse rows with sorted columns.
pub fn sparse_rank(rows: impl IntoIterator<Item = Vec<(usize, u64)>>) -> usize {
    let mut e = SparseModEchelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// The fraction `n/d` with `|n|, d < 2^30` congruent to `a`, if any.
pub fn reconstruct(a: u64) -> Option<(i64, i64)> {
    const BOUND: i128 = 1 << 30;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= BOUND {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((n as i64, d as i64))
}
