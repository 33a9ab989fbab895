use core::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial, indexed by ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 20]>);

impl Monomial {
    /// The monomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// `x_var^exp` in `nvars` variables.
    pub fn var(nvars: usize, var: usize, exp: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponents_mut(&mut self) -> &mut [u16] {
        &mut self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Weighted degree `sum_i e_i * w_i`; the weights must have the same length.
    pub fn degree(&self, weights: &[u32]) -> u32 {
        debug_assert_eq!(weights.len(), self.0.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), o.0.len());
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, var: usize, exp: u16) -> Monomial {
        let mut m = self.clone();
        m.0[var] += exp;
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `self / o`, if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if o.divides(self) {
            Some(self.div_unchecked(o))
        } else {
            None
        }
    }

    pub fn div_unchecked(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` is set when variable `i mod 64` occurs; used to reject divisibility fast.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// Restriction to the variables in `range`.
    pub fn slice(&self, range: core::ops::Range<usize>) -> Monomial {
        Monomial::from_exponents(&self.0[range])
    }

    /// Concatenation `(self, o)` as a monomial in the union of the variable sets.
    pub fn concat(&self, o: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Monomial(v)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Calls `visit` on every monomial of weighted degree exactly `degree`.
pub fn for_each_monomial_of_degree(
    weights: &[u32],
    degree: u32,
    visit: &mut dyn FnMut(&Monomial),
) {
    fn rec(
        weights: &[u32],
        var: usize,
        left: u32,
        cur: &mut Monomial,
        visit: &mut dyn FnMut(&Monomial),
    ) {
        if var + 1 == weights.len() {
            if left.is_multiple_of(weights[var]) {
                cur.0[var] = (left / weights[var]) as u16;
                visit(cur);
                cur.0[var] = 0;
            }
            return;
        }
        let w = weights[var];
        let mut e = 0u32;
        while e * w <= left {
            cur.0[var] = e as u16;
            rec(weights, var + 1, left - e * w, cur, visit);
            e += 1;
        }
        cur.0[var] = 0;
    }
    if weights.is_empty() {
        if degree == 0 {
            visit(&Monomial::one(0));
        }
        return;
    }
    let mut cur = Monomial::one(weights.len());
    rec(weights, 0, degree, &mut cur, visit);
}

/// All monomials of weighted degree exactly `degree`.
pub fn monomials_of_degree(weights: &[u32], degree: u32) -> alloc::vec::Vec<Monomial> {
    let mut out = alloc::vec::Vec::new();
    for_each_monomial_of_degree(weights, degree, &mut |m| out.push(m.clone()));
    out
}
