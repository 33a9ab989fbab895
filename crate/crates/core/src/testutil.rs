//! Test fixtures: a small polynomial reader and the worked 3V1+V2 example.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::poly::{GradedRing, Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

/// Reads sums of terms like `-1/2*x3*x9^2`; spaces are ignored.
pub fn parse(text: &str, names: &[String], ord: &MonomialOrder) -> Polynomial {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let n = names.len();
    let mut terms = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let mut c = Rational::one();
        let mut m = Monomial::one(n);
        for f in term.split('*') {
            if f.starts_with(|ch: char| ch.is_ascii_digit()) {
                c = &c * &f.parse::<Rational>().unwrap();
                continue;
            }
            let (v, e) = match f.split_once('^') {
                Some((v, e)) => (v, e.parse::<u16>().unwrap()),
                None => (f, 1),
            };
            let i = names.iter().position(|x| x == v).unwrap_or_else(|| panic!("unknown variable {v}"));
            m.exponents_mut()[i] += e;
        }
        if neg {
            c = -c;
        }
        terms.push((m, c));
    }
    Polynomial::from_terms(n, terms, ord)
}

pub const J_WEIGHTS: [u32; 10] = [3, 3, 2, 3, 2, 3, 3, 2, 2, 3];

pub const J_TEXT: [&str; 10] = [
    "-x5*x7 + x6*x8 + x9*x10",
    "x5*x6 - x2*x8 - x1*x9",
    "-x1*x8 + x4*x9 + x5*x10",
    "-x6^2 + x2*x7 - 1/2*x3*x9^2",
    "-x4*x6 - 1/2*x3*x5*x8 - x1*x10",
    "-x1*x6 - 1/2*x3*x5*x9 + x2*x10",
    "-x1*x7 - 1/2*x3*x8*x9 + x6*x10",
    "-x1^2 - x2*x4 - 1/2*x3*x5^2",
    "-x4*x7 - 1/2*x3*x8^2 - x10^2",
    "x2*x4*x8 + 1/2*x3*x5^2*x8 + x1*x4*x9 + x1*x5*x10",
];

pub fn j_ring() -> GradedRing {
    GradedRing::with_prefix("x", J_WEIGHTS.to_vec()).unwrap()
}

pub fn j_ideal() -> Vec<Polynomial> {
    let ring = j_ring();
    let ord = ring.default_order();
    J_TEXT.iter().map(|t| parse(t, ring.names(), &ord)).collect()
}

/// Coefficient variables of three linear forms and one quadratic form.
pub const L_VARS: [&str; 9] = ["x0", "x1", "y0", "y1", "u0", "u1", "v0", "v1", "v2"];

pub const L_TEXT: [&str; 10] = [
    "-x0*u1*v1 + x0*u0*v2 - x1*u0*v1 + x1*u1*v0",
    "-2*u0*u1*v1 + u0^2*v2 + u1^2*v0",
    "-2*v1^2 + 2*v0*v2",
    "-x1^2*v0 - x0^2*v2 + 2*x0*x1*v1",
    "-x0*u1 + x1*u0",
    "y1*u1*v0 - y1*u0*v1 - y0*u1*v1 + y0*u0*v2",
    "y1^2*v0 - 2*y0*y1*v1 + y0^2*v2",
    "-x0*y1 + x1*y0",
    "-y0*u1 + y1*u0",
    "x0*y0*v2 - x0*y1*v1 - x1*y0*v1 + x1*y1*v0",
];

pub fn l_names() -> Vec<String> {
    L_VARS.iter().map(|s| s.to_string()).collect()
}

pub fn l_polys(ord: &MonomialOrder) -> Vec<Polynomial> {
    let names = l_names();
    L_TEXT.iter().map(|t| parse(t, &names, ord)).collect()
}
