use alloc::vec::Vec;

use smallvec::SmallVec;

use super::{Monomial, Polynomial};
use crate::linalg::{nullspace, SparseVec};
use crate::rational::Rational;

/// Degree vector in a multigrading.
pub type MultiDegree = SmallVec<[i64; 6]>;

/// A grading of a polynomial ring by a free abelian group `Z^r`, given by the
/// degree vector of each variable.
///
/// Splitting graded pieces by a finer grading than the weight grading keeps
/// linear-algebra problems small; every grading here refines the weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    var_degrees: Vec<MultiDegree>,
    rank: usize,
}

impl Grading {
    /// Grading given explicitly by per-variable degree vectors.
    pub fn from_var_degrees(var_degrees: Vec<MultiDegree>) -> Self {
        let rank = var_degrees.first().map_or(0, |v| v.len());
        debug_assert!(var_degrees.iter().all(|v| v.len() == rank));
        Grading { var_degrees, rank }
    }

    /// The plain weight grading.
    pub fn from_weights(weights: &[u32]) -> Self {
        Self::from_var_degrees(
            weights
                .iter()
                .map(|&w| SmallVec::from_slice(&[w as i64]))
                .collect(),
        )
    }

    /// The finest grading in which every given polynomial is homogeneous.
    ///
    /// Its degree functionals span the rational solutions `w` of
    /// `w . (a - b) = 0` for every pair of exponents `a`, `b` occurring in a
    /// common polynomial. The inputs must be homogeneous for `weights`, so the
    /// weight functional is in the span.
    pub fn finest(polys: &[Polynomial], nvars: usize, weights: &[u32]) -> Self {
        let mut rows: Vec<SparseVec> = Vec::new();
        for p in polys {
            let Some((m0, _)) = p.leading() else { continue };
            for (m, _) in p.terms().iter().skip(1) {
                let v: SparseVec = (0..nvars)
                    .filter_map(|i| {
                        let d = m.exp(i) as i64 - m0.exp(i) as i64;
                        (d != 0).then(|| (i, Rational::from_i64(d)))
                    })
                    .collect();
                rows.push(v);
            }
        }
        let basis = nullspace(rows, nvars);
        if basis.is_empty() {
            return Self::from_weights(weights);
        }
        let var_degrees = (0..nvars)
            .map(|i| {
                basis
                    .iter()
                    .map(|v| {
                        v.iter()
                            .find(|t| t.0 == i)
                            .map(|t| t.1.to_i64().expect("grading entries are small integers"))
                            .unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        Self::from_var_degrees(var_degrees)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn var_degree(&self, i: usize) -> &MultiDegree {
        &self.var_degrees[i]
    }

    pub fn degree(&self, m: &Monomial) -> MultiDegree {
        let mut d: MultiDegree = SmallVec::from_elem(0, self.rank);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            for (k, v) in self.var_degrees[i].iter().enumerate() {
                d[k] += e as i64 * v;
            }
        }
        d
    }

    /// Degree of a homogeneous polynomial (of its leading term otherwise).
    pub fn poly_degree(&self, p: &Polynomial) -> Option<MultiDegree> {
        p.leading().map(|(m, _)| self.degree(m))
    }

    pub fn is_homogeneous(&self, p: &Polynomial) -> bool {
        let Some(d) = self.poly_degree(p) else { return true };
        p.terms().iter().all(|(m, _)| self.degree(m) == d)
    }
}
