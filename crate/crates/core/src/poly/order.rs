use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Monomial, PolyError};

/// The families of monomial orders used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Weighted degree first, ties broken reverse-lexicographically.
    WeightedRevLex,
    /// Pure lexicographic order, `x_0 > x_1 > ...`.
    Lex,
    /// Block order eliminating the first `front` variables: compare the
    /// front block by weighted revlex, then the back block by weighted revlex.
    Elimination { front: usize },
}

/// A monomial order together with the variable weights it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    weights: Vec<u32>,
}

fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable is the larger monomial
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn wdeg(e: &[u16], w: &[u32]) -> u32 {
    e.iter().zip(w).map(|(&a, &b)| a as u32 * b).sum()
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, weights: Vec<u32>) -> Self {
        if let OrderKind::Elimination { front } = kind {
            assert!(front <= weights.len());
        }
        MonomialOrder { kind, weights }
    }

    pub fn weighted_revlex(weights: Vec<u32>) -> Self {
        Self::new(OrderKind::WeightedRevLex, weights)
    }

    /// Degree-reverse-lexicographic order with unit weights.
    pub fn degrevlex(nvars: usize) -> Self {
        Self::weighted_revlex(alloc::vec![1; nvars])
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.degree(&self.weights)
    }

    /// Unchecked comparison; both monomials must live in this order's ring.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        debug_assert_eq!(ea.len(), self.weights.len());
        debug_assert_eq!(eb.len(), self.weights.len());
        match self.kind {
            OrderKind::WeightedRevLex => wdeg(ea, &self.weights)
                .cmp(&wdeg(eb, &self.weights))
                .then_with(|| revlex_tail(ea, eb)),
            OrderKind::Lex => ea.cmp(eb),
            OrderKind::Elimination { front } => {
                let (wf, wb) = self.weights.split_at(front);
                wdeg(&ea[..front], wf)
                    .cmp(&wdeg(&eb[..front], wf))
                    .then_with(|| revlex_tail(&ea[..front], &eb[..front]))
                    .then_with(|| wdeg(&ea[front..], wb).cmp(&wdeg(&eb[front..], wb)))
                    .then_with(|| revlex_tail(&ea[front..], &eb[front..]))
            }
        }
    }

    /// Checked comparison that reports monomials from a different ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        for m in [a, b] {
            if m.nvars() != self.nvars() {
                return Err(PolyError::VariableCount {
                    expected: self.nvars(),
                    found: m.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }
}
