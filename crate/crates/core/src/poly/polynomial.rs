use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, MonomialOrder, PolyError};
use crate::rational::{big_gcd, big_lcm, Rational};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in decreasing order under the monomial order that
/// built the polynomial, with no zero coefficients. Operations that create
/// new monomials take that order explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            alloc::vec![(m, c)]
        };
        Polynomial { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i, 1), Rational::one())
    }

    /// Collects arbitrary terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
        ord: &MonomialOrder,
    ) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, acc, ord)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Rational>, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { nvars, terms }
    }

    /// Wraps terms that are already sorted decreasingly and nonzero.
    pub fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Leading monomial; panics on zero.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Re-sorts the terms under another order.
    pub fn reorder(&self, ord: &MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    /// `self + c * m * other`, merged in one pass.
    pub fn add_scaled(
        &self,
        c: &Rational,
        m: Option<&Monomial>,
        other: &Polynomial,
        ord: &MonomialOrder,
    ) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |j: usize| -> Monomial {
            match m {
                Some(m) => other.terms[j].0.mul(m),
                None => other.terms[j].0.clone(),
            }
        };
        let mut next_other = if other.terms.is_empty() {
            None
        } else {
            Some(shifted(0))
        };
        while i < self.terms.len() || j < other.terms.len() {
            let ord_ij = match (self.terms.get(i), &next_other) {
                (Some(a), Some(b)) => ord.cmp(&a.0, b),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match ord_ij {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let mono = next_other.take().unwrap();
                    out.push((mono, &other.terms[j].1 * c));
                    j += 1;
                    next_other = (j < other.terms.len()).then(|| shifted(j));
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 + &(&other.terms[j].1 * c);
                    let mono = next_other.take().unwrap();
                    if !v.is_zero() {
                        out.push((mono, v));
                    }
                    i += 1;
                    j += 1;
                    next_other = (j < other.terms.len()).then(|| shifted(j));
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, o: &Polynomial, ord: &MonomialOrder) -> Self {
        self.add_scaled(&Rational::one(), None, o, ord)
    }

    pub fn sub(&self, o: &Polynomial, ord: &MonomialOrder) -> Self {
        self.add_scaled(&-Rational::one(), None, o, ord)
    }

    pub fn mul(&self, o: &Polynomial, ord: &MonomialOrder) -> Self {
        debug_assert_eq!(self.nvars, o.nvars);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let c = ca * cb;
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc, ord)
    }

    /// Checked product that rejects operands from different rings.
    pub fn product(&self, o: &Polynomial, ord: &MonomialOrder) -> Result<Self, PolyError> {
        if self.nvars != o.nvars || self.nvars != ord.nvars() {
            return Err(PolyError::VariableCount {
                expected: ord.nvars(),
                found: if self.nvars != ord.nvars() {
                    self.nvars
                } else {
                    o.nvars
                },
            });
        }
        Ok(self.mul(o, ord))
    }

    pub fn pow(&self, e: u32, ord: &MonomialOrder) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self, ord);
        }
        acc
    }

    /// Weighted degree when every term has the same one.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.iter().map(|(m, _)| m.degree(weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.is_zero() || self.homogeneous_degree(weights).is_some()
    }

    /// Largest weighted degree of a term.
    pub fn max_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree(weights)).max()
    }

    /// Scales to coprime integer coefficients with a positive leading
    /// coefficient. Returns `None` for the zero polynomial.
    pub fn normalize(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if !c.is_integer() {
                den = big_lcm(&den, &c.denom());
            }
        }
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            num = big_gcd(&num, &c.numer());
            if num.is_one() && den.is_one() {
                break;
            }
        }
        let mut factor = Rational::from_big(den, num);
        if self.lc().is_negative() {
            factor = -factor;
        }
        Some(self.scale(&factor))
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|v| alloc::vec![Rational::one(), v.clone()]).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &mut powers[i];
                while p.len() <= e as usize {
                    let next = &p[p.len() - 1] * &point[i];
                    p.push(next);
                }
                t *= &p[e as usize];
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `x_i -> images[i]`; the images live in the ring of `ord`.
    pub fn substitute(&self, images: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
        debug_assert_eq!(images.len(), self.nvars);
        let target = ord.nvars();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| alloc::vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &mut powers[i];
                while p.len() <= e as usize {
                    let next = p[p.len() - 1].mul(&images[i], ord);
                    p.push(next);
                }
                t = t.mul(&p[e as usize], ord);
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v += &tc,
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Self::from_map(target, acc, ord)
    }

    /// Re-embeds into a ring with `nvars` variables, placing this ring's
    /// variables starting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize, ord: &MonomialOrder) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Monomial::one(nvars);
            e.exponents_mut()[offset..offset + self.nvars].copy_from_slice(m.exponents());
            (e, c.clone())
        });
        let mut p: Vec<_> = terms.collect();
        p.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { nvars, terms: p }
    }

    /// Restricts to the variables `range`, assuming no other variable occurs.
    pub fn project(&self, range: core::ops::Range<usize>, ord: &MonomialOrder) -> Polynomial {
        let n = range.len();
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.slice(range.clone()), c.clone()))
            .collect();
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { nvars: n, terms }
    }

    /// Plain-text rendering, e.g. `-x5*x7 + 1/2*x3*x9^2`.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(alloc::format!("{abs}"));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    e => factors.push(alloc::format!("{}^{}", names[i], e)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}
