//! Graded free resolutions of cyclic modules `R/I`: Schreyer frames,
//! minimization, Betti tables and independent checks.

mod koszul;
mod minimize;
mod schreyer;
mod verify;


use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::groebner::GroebnerError;
use crate::poly::{GradedRing, MonomialOrder, PolyError, Polynomial};

pub use koszul::{artinian_reduction, koszul_betti, koszul_betti_plain};
pub use minimize::{minimize, minimize_shuffled};
pub use schreyer::{module_groebner, resolve, syzygies, ModuleGb, ModuleOrder};
pub use verify::{verify_complex, ComplexFailure, ComplexReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("differential {index} has a unit entry at ({row}, {col}); minimize first")]
    NotMinimal { index: usize, row: usize, col: usize },
    #[error("element {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("component index {index} out of range for rank {rank}")]
    ComponentRange { index: usize, rank: usize },
    #[error("S-pair did not reduce to zero; the input is not a Gröbner basis")]
    NotGroebner,
}

/// `⊕_k R(-shift_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeModule {
    shifts: Vec<u32>,
}

impl FreeModule {
    pub fn new(shifts: Vec<u32>) -> Self {
        FreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    pub fn shift(&self, k: usize) -> u32 {
        self.shifts[k]
    }
}

/// An element of a free module, stored sparsely: `(basis index, component)`
/// pairs with increasing indices and nonzero components.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleElement {
    entries: Vec<(usize, Polynomial)>,
}

impl ModuleElement {
    /// Zero components are dropped; indices must be distinct.
    pub fn new(mut entries: Vec<(usize, Polynomial)>) -> Self {
        entries.retain(|e| !e.1.is_zero());
        entries.sort_by_key(|e| e.0);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        ModuleElement { entries }
    }

    pub fn from_components(components: Vec<Polynomial>) -> Self {
        Self::new(components.into_iter().enumerate().collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[(usize, Polynomial)] {
        &self.entries
    }

    pub fn component(&self, k: usize) -> Option<&Polynomial> {
        self.entries
            .binary_search_by_key(&k, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Dense list of `rank` components.
    pub fn components(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = (0..rank).map(|_| Polynomial::zero(nvars)).collect();
        for (k, p) in &self.entries {
            out[*k] = p.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The common value of `deg(c_k) + shift_k`, if the element is nonzero
    /// and homogeneous.
    pub fn degree(&self, module: &FreeModule, weights: &[u32]) -> Option<u32> {
        let mut d = None;
        for (k, p) in &self.entries {
            let e = p.homogeneous_degree(weights)? + module.shift(*k);
            if *d.get_or_insert(e) != e {
                return None;
            }
        }
        d
    }

    /// `sum_k c_k * images[k]`.
    pub fn apply(&self, images: &[ModuleElement], ord: &MonomialOrder) -> ModuleElement {
        let mut acc: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (k, c) in &self.entries {
            for (r, p) in images[*k].entries() {
                let prod = c.mul(p, ord);
                match acc.get_mut(r) {
                    Some(v) => *v = v.add(&prod, ord),
                    None => {
                        acc.insert(*r, prod);
                    }
                }
            }
        }
        ModuleElement::new(acc.into_iter().collect())
    }
}

/// A chain `0 -> F_l -> ... -> F_1 -> F_0 = R` of graded free modules.
/// `differential(i)` lists the images of the basis of `F_i` in `F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    ring: GradedRing,
    modules: Vec<FreeModule>,
    differentials: Vec<Vec<ModuleElement>>,
}

impl Resolution {
    /// `differentials[i - 1]` is `d_i`, with one column per basis element of
    /// `modules[i]`.
    pub fn new(ring: GradedRing, modules: Vec<FreeModule>, differentials: Vec<Vec<ModuleElement>>) -> Result<Self, ResolutionError> {
        debug_assert_eq!(modules.len(), differentials.len() + 1);
        for (i, d) in differentials.iter().enumerate() {
            debug_assert_eq!(d.len(), modules[i + 1].rank());
            let rank = modules[i].rank();
            for col in d {
                for (k, p) in col.entries() {
                    if *k >= rank {
                        return Err(ResolutionError::ComponentRange { index: *k, rank });
                    }
                    if p.nvars() != ring.nvars() {
                        return Err(PolyError::VariableCount {
                            expected: ring.nvars(),
                            found: p.nvars(),
                        }
                        .into());
                    }
                }
            }
        }
        Ok(Resolution {
            ring,
            modules,
            differentials,
        })
    }

    /// The complex `0 -> R`.
    pub fn trivial(ring: GradedRing) -> Self {
        Resolution {
            ring,
            modules: alloc::vec![FreeModule::new(alloc::vec![0])],
            differentials: Vec::new(),
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &FreeModule {
        &self.modules[i]
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &[ModuleElement] {
        &self.differentials[i - 1]
    }

    /// First unit entry `(i, row, col)`, if any.
    pub fn unit_entry(&self) -> Option<(usize, usize, usize)> {
        for i in 1..=self.length() {
            for (c, col) in self.differential(i).iter().enumerate() {
                for (r, p) in col.entries() {
                    if p.terms().iter().any(|(m, _)| m.is_one()) {
                        return Some((i, *r, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_minimal(&self) -> bool {
        self.unit_entry().is_none()
    }
}

/// Graded Betti numbers `beta_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    /// Zero entries are dropped.
    pub fn new(entries: impl IntoIterator<Item = ((usize, u32), u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *map.entry(k).or_insert(0) += v;
            }
        }
        BettiTable { entries: map }
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), u64> {
        &self.entries
    }

    /// Largest homological index present.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Largest shift present.
    pub fn j_star(&self) -> u32 {
        self.entries.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Shifts occurring in some column, increasing.
    pub fn shifts(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.entries.keys().map(|k| k.1).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Sum of `beta_{i,j}` over `j`.
    pub fn rank(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// Entries with `j <= cap`.
    pub fn truncated(&self, cap: u32) -> BettiTable {
        BettiTable::new(self.entries.iter().filter(|(k, _)| k.1 <= cap).map(|(k, v)| (*k, *v)))
    }
}

/// Betti numbers of a minimal resolution: `beta_{i,j}` counts the basis
/// elements of `F_i` with shift `j`.
pub fn betti(res: &Resolution) -> Result<BettiTable, ResolutionError> {
    if let Some((index, row, col)) = res.unit_entry() {
        return Err(ResolutionError::NotMinimal { index, row, col });
    }
    Ok(BettiTable::new(res.modules.iter().enumerate().flat_map(|(i, f)| {
        f.shifts().iter().map(move |&j| ((i, j), 1))
    })))
}
