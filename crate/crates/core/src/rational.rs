//! Exact rational numbers with a machine-word fast path.
//!
//! Almost every coefficient met while computing with invariant rings fits in
//! an `i64`, so the common case never touches the heap. Values that overflow
//! are promoted to a pair of [`BigInt`]s and demoted again as soon as they
//! fit. The representation is canonical (reduced, positive denominator,
//! small whenever possible), which makes derived equality and hashing exact.

use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    /// `den > 0`, `gcd(num, den) = 1`, `num != i64::MIN`.
    Small(i64, i64),
    Big(Box<(BigInt, BigInt)>),
}

/// An exact element of the field of rationals.
#[derive(Clone)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn fits(v: i128) -> Option<i64> {
    if v > i64::MIN as i128 && v <= i64::MAX as i128 {
        Some(v as i64)
    } else {
        None
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_i64(v: i64) -> Self {
        if v == i64::MIN {
            return Self::from_big(BigInt::from(v), BigInt::one());
        }
        Rational(Repr::Small(v, 1))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if n == 0 {
            return Self::zero();
        }
        if d < 0 {
            n = -n;
            d = -d;
        }
        if d != 1 {
            let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        match (fits(n), fits(d)) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new((BigInt::from(n), BigInt::from(d))))),
        }
    }

    /// Builds a rational from arbitrary-precision parts.
    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Self::canonical_big(n, d)
    }

    fn canonical_big(n: BigInt, d: BigInt) -> Self {
        if let (Some(a), Some(b)) = (n.to_i64(), d.to_i64()) {
            if a != i64::MIN {
                return Rational(Repr::Small(a, b));
            }
        }
        Rational(Repr::Big(Box::new((n, d))))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::canonical_big(v, BigInt::one())
    }

    fn parts_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    /// Numerator and denominator when both fit in an `i64`.
    pub fn small_parts(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, *d)),
            Repr::Big(_) => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        self.parts_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.parts_big().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small(_, 1)) || matches!(&self.0, Repr::Big(b) if b.1.is_one())
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => match b.0.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(0, _) => panic!("inverse of zero"),
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.1.clone(), b.0.clone()),
        }
    }

    /// Small integer value, if this is an integer that fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(v) if v != i64::MIN => Rational(Repr::Small(v, 1)),
                _ => Self::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => {
                let (a, b) = self.parts_big();
                let (c, d) = o.parts_big();
                if b == d {
                    Self::from_big(a + c, b)
                } else {
                    Self::from_big(a * &d + c * &b, b * d)
                }
            }
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(v) if v != i64::MIN => Rational(Repr::Small(v, 1)),
                _ => Self::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                if self.is_zero() || o.is_zero() {
                    return Self::zero();
                }
                let (a, b) = self.parts_big();
                let (c, d) = o.parts_big();
                Self::from_big(a * c, b * d)
            }
        }
    }

    /// `self - a * b`, the inner step of every elimination loop.
    pub fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self - &(a * b)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Self) -> bool {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(h);
                n.hash(h);
                d.hash(h);
            }
            Repr::Big(b) => {
                1u8.hash(h);
                b.0.hash(h);
                b.1.hash(h);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => {
                let (a, b) = self.parts_big();
                let (c, d) = o.parts_big();
                (a * d).cmp(&(c * b))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Self::from_i64(v as i64)
    }
}

impl From<u32> for Rational {
    fn from(v: u32) -> Self {
        Self::from_i64(v as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Self::from_bigint(v)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, d)),
            Repr::Big(b) => {
                let (n, d) = *b;
                Self::canonical_big(-n, d)
            }
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -self.clone()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, o)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                (&self).$m(&o)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&-b));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.mul_ref(&b.recip()));

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, o: &Rational) {
        *self = self.add_ref(&-o);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, o: &Rational) {
        *self = self.mul_ref(o);
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when a string is not of the form `[-]int[/int]`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.into());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = match d {
            Some(d) => d.parse().map_err(|_| err())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(err());
        }
        Ok(Self::from_big(n, d))
    }
}

/// Greatest common divisor of big integers, always non-negative.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Least common multiple of big integers, always non-negative.
pub fn big_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_forms() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, 7), Rational::zero());
        assert!(Rational::new(6, 3).is_integer());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_i64(i64::MAX);
        let sq = &big * &big;
        assert!(sq.to_i64().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert_eq!(back.to_i64(), Some(i64::MAX));
        let m = Rational::from_i64(i64::MIN);
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn parse_and_display() {
        let q: Rational = "-3/6".parse().unwrap();
        assert_eq!(q.to_string(), "-1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(Rational::new(-1, 2) < Rational::zero());
    }
}
