//! Sparse exact polynomials over the rationals on positively weighted rings.

mod grading;
mod monomial;
mod order;
mod polynomial;

use alloc::string::String;
use alloc::vec::Vec;

pub use grading::{Grading, MultiDegree};
pub use monomial::{for_each_monomial_of_degree, monomials_of_degree, Monomial};
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::Polynomial;

/// Structural errors raised by the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("variable weight must be at least 1 (variable `{0}`)")]
    NonPositiveWeight(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("{names} variable names but {weights} weights")]
    WeightCount { names: usize, weights: usize },
}

/// A polynomial ring `K[x_1..x_m]` positively graded by `deg(x_i) = w_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl GradedRing {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self, PolyError> {
        if names.len() != weights.len() {
            return Err(PolyError::WeightCount {
                names: names.len(),
                weights: weights.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if weights[i] == 0 {
                return Err(PolyError::NonPositiveWeight(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(GradedRing { names, weights })
    }

    /// Variables `prefix1..prefixm` with the given weights.
    pub fn with_prefix(prefix: &str, weights: Vec<u32>) -> Result<Self, PolyError> {
        let names = (1..=weights.len())
            .map(|i| alloc::format!("{prefix}{i}"))
            .collect();
        Self::new(names, weights)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> Result<u32, PolyError> {
        if m.nvars() != self.nvars() {
            return Err(PolyError::VariableCount {
                expected: self.nvars(),
                found: m.nvars(),
            });
        }
        Ok(m.degree(&self.weights))
    }

    pub fn order(&self, kind: OrderKind) -> MonomialOrder {
        MonomialOrder::new(kind, self.weights.clone())
    }

    /// The default order: weighted degree, then reverse lexicographic.
    pub fn default_order(&self) -> MonomialOrder {
        self.order(OrderKind::WeightedRevLex)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }
}
