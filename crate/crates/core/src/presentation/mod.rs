//! Presentations of subalgebras `K[f_1..f_m]`: the kernel of `x_i -> f_i`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use crate::groebner::{groebner_basis, groebner_basis_truncated, GroebnerError, Ideal};
use crate::invariants::{
    cayley_sylvester_dim, minimal_invariant_generators, multidegrees, GeneratorSet, InvariantError, ProblemSpec,
};
use crate::linalg::{self, SparseVec};
use crate::modp;
use crate::poly::{
    monomials_of_degree, GradedRing, Grading, Monomial, MonomialOrder, MultiDegree, OrderKind,
    PolyError, Polynomial,
};
use crate::rational::Rational;

#[cfg(test)]
mod tests;

const SEED: u64 = 0x0dd5_eed5_7a11_0c8e;
const ATTEMPTS: usize = 4;
const POINT_RANGE: u64 = 2001;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("image {0} is zero")]
    ZeroImage(usize),
    #[error("image {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("{weights} weights for {images} images")]
    ImageCount { images: usize, weights: usize },
    #[error("image {index} has degree {found} but weight {expected}")]
    WeightMismatch { index: usize, expected: u32, found: u32 },
    #[error("the generators miss invariants of degree {0}")]
    MissingGenerators(u32),
    #[error("evaluation rank stayed below the image dimension in degree {0}")]
    RankDeficient(u32),
    #[error("generating set only verified through degree {0}; raise the degree bound")]
    Unverified(u32),
}

/// The map `K[x_1..x_m] -> target`, `x_i -> f_i`, with `deg x_i = deg f_i`.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: GradedRing,
    target: GradedRing,
    images: Vec<Polynomial>,
    /// Degree of each `x_i` in a grading of the source for which the kernel
    /// is homogeneous.
    multidegrees: Vec<MultiDegree>,
}

impl AlgebraMap {
    /// Source variables `x1..xm` weighted by the degrees of the images.
    pub fn new(target: GradedRing, images: Vec<Polynomial>) -> Result<Self, PresentationError> {
        let weights = image_degrees(&target, &images)?;
        Self::build(target, images, weights)
    }

    /// Like [`AlgebraMap::new`], checking the images against given weights.
    pub fn with_weights(
        target: GradedRing,
        images: Vec<Polynomial>,
        weights: &[u32],
    ) -> Result<Self, PresentationError> {
        if weights.len() != images.len() {
            return Err(PresentationError::ImageCount {
                images: images.len(),
                weights: weights.len(),
            });
        }
        let found = image_degrees(&target, &images)?;
        for (index, (&e, &f)) in weights.iter().zip(&found).enumerate() {
            if e != f {
                return Err(PresentationError::WeightMismatch {
                    index,
                    expected: e,
                    found: f,
                });
            }
        }
        Self::build(target, images, found)
    }

    fn build(target: GradedRing, images: Vec<Polynomial>, weights: Vec<u32>) -> Result<Self, PresentationError> {
        let source = GradedRing::with_prefix("x", weights)?;
        let ord = target.default_order();
        let images: Vec<Polynomial> = images.into_iter().map(|f| f.reorder(&ord)).collect();
        let grading = Grading::finest(&images, target.nvars(), target.weights());
        let multidegrees = images.iter().map(|f| grading.poly_degree(f).unwrap()).collect();
        Ok(AlgebraMap {
            source,
            target,
            images,
            multidegrees,
        })
    }

    /// Replaces the source grading; each image must be homogeneous of the
    /// given degree in some grading of the target.
    pub(crate) fn with_multidegrees(mut self, multidegrees: Vec<MultiDegree>) -> Self {
        debug_assert_eq!(multidegrees.len(), self.images.len());
        self.multidegrees = multidegrees;
        self
    }

    pub fn source(&self) -> &GradedRing {
        &self.source
    }

    pub fn target(&self) -> &GradedRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn weights(&self) -> &[u32] {
        self.source.weights()
    }

    pub fn multidegrees(&self) -> &[MultiDegree] {
        &self.multidegrees
    }

    /// `phi(p)`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.images, &self.target.default_order())
    }

    fn monomial_multidegree(&self, m: &Monomial) -> MultiDegree {
        let r = self.multidegrees.first().map_or(0, |d| d.len());
        let mut out: MultiDegree = smallvec::smallvec![0; r];
        for (e, d) in m.exponents().iter().zip(&self.multidegrees) {
            for (o, v) in out.iter_mut().zip(d) {
                *o += *e as i64 * v;
            }
        }
        out
    }
}

fn image_degrees(target: &GradedRing, images: &[Polynomial]) -> Result<Vec<u32>, PresentationError> {
    images
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if f.nvars() != target.nvars() {
                return Err(PolyError::VariableCount {
                    expected: target.nvars(),
                    found: f.nvars(),
                }
                .into());
            }
            if f.is_zero() {
                return Err(PresentationError::ZeroImage(i));
            }
            match f.homogeneous_degree(target.weights()) {
                Some(d) if d > 0 => Ok(d),
                _ => Err(PresentationError::NotHomogeneous(i)),
            }
        })
        .collect()
}

/// The kernel of `map` by elimination: a Gröbner basis of `(x_i - f_i)` in
/// the combined ring under a block order with the target variables in front,
/// intersected with the source ring.
pub fn kernel(map: &AlgebraMap) -> Result<Ideal, PresentationError> {
    let nt = map.target.nvars();
    let m = map.source.nvars();
    let n = nt + m;
    let mut weights = map.target.weights().to_vec();
    weights.extend_from_slice(map.source.weights());
    let ord = MonomialOrder::new(OrderKind::Elimination { front: nt }, weights);
    let gens: Vec<Polynomial> = map
        .images
        .iter()
        .enumerate()
        .map(|(i, f)| Polynomial::var(n, nt + i).sub(&f.embed(n, 0, &ord), &ord))
        .collect();
    let gb = groebner_basis(&gens, &ord);
    let sord = map.source.default_order();
    let rels = gb
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(t, _)| t.exponents()[..nt].iter().all(|&e| e == 0)))
        .map(|g| g.project(nt..n, &sord))
        .collect();
    Ok(Ideal::new(map.source.clone(), rels)?)
}

/// Minimal generators of a kernel found degree by degree, with the degree
/// through which the search was carried out.
#[derive(Clone, Debug)]
pub struct CertifiedKernel {
    pub generators: Vec<Polynomial>,
    pub verified_through: u32,
}

/// Dimensions of the image of a map, known in advance.
pub trait ImageDimension {
    /// In a multidegree of the source grading.
    fn dim(&self, nu: &[i64]) -> usize;
    /// In a weighted degree.
    fn total(&self, degree: u32) -> usize;
}

/// Invariant dimensions of binary forms, by the Cayley–Sylvester count;
/// multidegrees are form multidegrees.
#[derive(Clone, Debug)]
pub struct InvariantDimensions {
    pub degrees: Vec<u32>,
}

impl ImageDimension for InvariantDimensions {
    fn dim(&self, nu: &[i64]) -> usize {
        let mu: Vec<u32> = nu.iter().map(|&v| v as u32).collect();
        cayley_sylvester_dim(&self.degrees, &mu) as usize
    }

    fn total(&self, degree: u32) -> usize {
        multidegrees(self.degrees.len(), degree)
            .iter()
            .map(|mu| cayley_sylvester_dim(&self.degrees, mu) as usize)
            .sum()
    }
}

/// The kernel of `map`, minimally generated, computed one multidegree at a
/// time.
///
/// In each multidegree the monomials that are standard for the relations
/// found so far are evaluated at random integer points of the target. The
/// kernel of the evaluation matrix is found mod P and lifted; a lift is
/// accepted when it is certified:
///
/// - with `image_dim`, the pieces must account for the whole image in each
///   degree, and the modular rank must reach the image dimension,
///   which makes the rational kernel of the evaluation matrix equal to the
///   kernel of the map, so an exact check at the points suffices;
/// - without it, each lift is substituted into the map.
///
/// Relations found in a multidegree are independent modulo lower degrees,
/// so they are minimal generators. The search runs through `min_bound`,
/// through twice the largest image degree, and through twice the degree of
/// every relation found.
pub fn kernel_by_degree(
    map: &AlgebraMap,
    image_dim: Option<&dyn ImageDimension>,
    min_bound: Option<u32>,
) -> Result<CertifiedKernel, PresentationError> {
    let weights = map.weights().to_vec();
    let sord = map.source.default_order();
    let maxw = weights.iter().copied().max().unwrap_or(0);
    let mut emax = min_bound.unwrap_or(0).max(2 * maxw);
    let mut ev = Evaluator::new(map);
    let mut rels: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut dirty = false;
    let mut e = 1;
    while e <= emax {
        if dirty {
            let gb = groebner_basis_truncated(&rels, &sord, emax);
            leads = gb.leading_monomials();
            dirty = false;
        }
        let mut pieces: BTreeMap<MultiDegree, Vec<Monomial>> = BTreeMap::new();
        for m in monomials_of_degree(&weights, e) {
            if leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            pieces.entry(map.monomial_multidegree(&m)).or_default().push(m);
        }
        if let Some(d) = image_dim {
            let covered: usize = pieces.keys().map(|nu| d.dim(nu)).sum();
            if covered < d.total(e) {
                return Err(PresentationError::MissingGenerators(e));
            }
        }
        let mut found = false;
        for (nu, mut std) in pieces {
            // decreasing order, so pivots of the echelon form are leading terms
            std.sort_unstable_by(|a, b| sord.cmp(b, a));
            let expected = image_dim.map(|d| d.dim(&nu));
            if let Some(cs) = expected {
                if std.len() < cs {
                    return Err(PresentationError::MissingGenerators(e));
                }
            }
            for r in ev.piece(&std, expected, e)? {
                rels.push(r);
                found = true;
            }
        }
        if found {
            dirty = true;
            emax = emax.max(2 * e);
        }
        e += 1;
    }
    Ok(CertifiedKernel {
        generators: rels,
        verified_through: emax,
    })
}

/// Values of the images at a growing list of random integer points.
struct Evaluator<'a> {
    map: &'a AlgebraMap,
    rng: ChaCha8Rng,
    exact: Vec<Vec<Rational>>,
    modular: Vec<Vec<u64>>,
}

impl<'a> Evaluator<'a> {
    fn new(map: &'a AlgebraMap) -> Self {
        Evaluator {
            map,
            rng: ChaCha8Rng::seed_from_u64(SEED),
            exact: Vec::new(),
            modular: Vec::new(),
        }
    }

    fn ensure(&mut self, count: usize) {
        while self.exact.len() < count {
            let pt: Vec<Rational> = (0..self.map.target.nvars())
                .map(|_| Rational::from_i64((self.rng.next_u64() % POINT_RANGE) as i64 - (POINT_RANGE / 2) as i64))
                .collect();
            let vals: Vec<Rational> = self.map.images.iter().map(|f| f.evaluate(&pt)).collect();
            self.modular
                .push(vals.iter().map(|v| modp::from_rational(v).expect("integer value")).collect());
            self.exact.push(vals);
        }
    }

    fn value_mod(&self, k: usize, m: &Monomial) -> u64 {
        let vals = &self.modular[k];
        m.exponents()
            .iter()
            .zip(vals)
            .filter(|(e, _)| **e > 0)
            .fold(1, |acc, (&e, &v)| modp::mul(acc, modp::pow(v, e as u64)))
    }

    fn value(&self, k: usize, m: &Monomial) -> Rational {
        let vals = &self.exact[k];
        let mut acc = Rational::one();
        for (&e, v) in m.exponents().iter().zip(vals) {
            if e > 0 {
                acc *= &v.pow(e as u32);
            }
        }
        acc
    }

    /// New relations among the standard monomials `std` of one multidegree.
    fn piece(
        &mut self,
        std: &[Monomial],
        expected: Option<usize>,
        degree: u32,
    ) -> Result<Vec<Polynomial>, PresentationError> {
        let s = std.len();
        let width = s + 4;
        for attempt in 0..ATTEMPTS {
            let window = attempt * width..(attempt + 1) * width;
            self.ensure(window.end);
            let rows: Vec<Vec<(usize, u64)>> = window
                .clone()
                .map(|k| {
                    std.iter()
                        .enumerate()
                        .map(|(j, m)| (j, self.value_mod(k, m)))
                        .filter(|t| t.1 != 0)
                        .collect()
                })
                .collect();
            let null = modp::nullspace(&rows, s);
            let rank = s - null.len();
            if let Some(cs) = expected {
                if rank < cs {
                    continue;
                }
                if rank > cs {
                    return Err(PresentationError::MissingGenerators(degree));
                }
            }
            if null.is_empty() {
                return Ok(Vec::new());
            }
            let lifted = lift(&null).filter(|vs| vs.iter().all(|v| self.certify(std, v, expected, window.clone())));
            let vectors = match lifted {
                Some(vs) => vs,
                None => match expected {
                    Some(_) => self.exact_kernel_at_points(std, window),
                    None => self.exact_kernel(std),
                },
            };
            return Ok(vectors.into_iter().map(|v| self.relation(std, &v)).collect());
        }
        Err(PresentationError::RankDeficient(degree))
    }

    fn certify(
        &self,
        std: &[Monomial],
        v: &SparseVec,
        expected: Option<usize>,
        window: core::ops::Range<usize>,
    ) -> bool {
        match expected {
            Some(_) => window.into_iter().all(|k| {
                let mut acc = Rational::zero();
                for (j, c) in v {
                    acc += &(c * &self.value(k, &std[*j]));
                }
                acc.is_zero()
            }),
            None => self.map.apply(&self.relation(std, v)).is_zero(),
        }
    }

    fn relation(&self, std: &[Monomial], v: &SparseVec) -> Polynomial {
        let ord = self.map.source.default_order();
        let p = Polynomial::from_terms(
            self.map.source.nvars(),
            v.iter().map(|(j, c)| (std[*j].clone(), c.clone())),
            &ord,
        );
        p.normalize().expect("nonzero kernel vector")
    }

    /// Kernel of the exact evaluation matrix on `window`.
    fn exact_kernel_at_points(&self, std: &[Monomial], window: core::ops::Range<usize>) -> Vec<SparseVec> {
        let rows: Vec<SparseVec> = window
            .map(|k| {
                std.iter()
                    .enumerate()
                    .map(|(j, m)| (j, self.value(k, m)))
                    .filter(|t| !t.1.is_zero())
                    .collect()
            })
            .collect();
        linalg::nullspace(rows, std.len())
    }

    /// Kernel of the map on the span of `std`, by expanding the images.
    fn exact_kernel(&self, std: &[Monomial]) -> Vec<SparseVec> {
        let mut rows: BTreeMap<Monomial, SparseVec> = BTreeMap::new();
        for (j, m) in std.iter().enumerate() {
            let img = self.map.apply(&Polynomial::term(m.clone(), Rational::one()));
            for (t, c) in img.terms() {
                rows.entry(t.clone()).or_default().push((j, c.clone()));
            }
        }
        linalg::nullspace(rows.into_values(), std.len())
    }
}

/// Rational reconstruction of modular vectors.
fn lift(null: &[Vec<u64>]) -> Option<Vec<SparseVec>> {
    null.iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, a)| **a != 0)
                .map(|(j, &a)| modp::reconstruct(a).map(|(n, d)| (j, Rational::new(n, d))))
                .collect()
        })
        .collect()
}

/// A minimal invariant generating set, the map it defines and its kernel.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: GeneratorSet,
    pub map: AlgebraMap,
    /// Minimal homogeneous generators, by increasing degree.
    pub kernel: Ideal,
    /// Degree through which the kernel generators were searched and the
    /// invariant dimensions matched.
    pub verified_through: u32,
}

impl Presentation {
    pub fn weights(&self) -> &[u32] {
        self.map.weights()
    }
}

/// The map `x_i -> f_i` for a generating set, graded by form multidegree.
pub fn invariant_map(gens: &GeneratorSet) -> Result<AlgebraMap, PresentationError> {
    let map = AlgebraMap::new(gens.ring.ring().clone(), gens.polys())?;
    let md = gens
        .generators
        .iter()
        .map(|g| g.multidegree.iter().map(|&v| v as i64).collect())
        .collect();
    Ok(map.with_multidegrees(md))
}

/// `sum w_i - sum (d_i + 1)`: the degree of the Hilbert series numerator of
/// the invariant ring, hence the largest shift in its resolution, for the
/// Gorenstein invariant rings of binary forms (0 when negative).
pub fn socle_degree(degrees: &[u32], weights: &[u32]) -> u32 {
    let w: u32 = weights.iter().sum();
    let v: u32 = degrees.iter().map(|d| d + 1).sum();
    w.saturating_sub(v)
}

/// Generators, map and minimal kernel for `spec`. The kernel search runs
/// at least through [`socle_degree`].
///
/// Fails when the generating set is not verified past its search bound, and
/// when the kernel search meets invariants the generators do not reach.
pub fn present(spec: &ProblemSpec) -> Result<Presentation, PresentationError> {
    let generators = minimal_invariant_generators(spec)?;
    if generators.unverified_beyond_bound {
        return Err(PresentationError::Unverified(generators.verified_through));
    }
    let map = invariant_map(&generators)?;
    let dims = InvariantDimensions {
        degrees: spec.degrees().to_vec(),
    };
    let k = kernel_by_degree(&map, Some(&dims), Some(socle_degree(spec.degrees(), map.weights())))?;
    let kernel = Ideal::new(map.source.clone(), k.generators)?;
    Ok(Presentation {
        generators,
        map,
        kernel,
        verified_through: k.verified_through,
    })
}
