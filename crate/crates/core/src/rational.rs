//! Exact rational numbers.
//!
//! Values whose reduced numerator and denominator fit in an `i64` are kept
//! inline; anything larger spills into a boxed [`BigRational`]. The
//! representation is canonical (lowest terms, positive denominator, inline
//! whenever possible), so structural equality and hashing are value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

#[derive(Clone)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

/// An exact rational number in lowest terms.
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
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small { num: 0, den: 1 });
    pub const ONE: Rational = Rational(Repr::Small { num: 1, den: 1 });

    pub const fn from_int(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if den == 1 {
            if let Ok(n) = i64::try_from(num) {
                return Rational(Repr::Small { num: n, den: 1 });
            }
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(num.unsigned_abs(), den as u128);
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small { num: n, den: d }),
            _ => Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new reduces; callers pass reduced values.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Rational(Repr::Small { num: n, den: d });
        }
        Rational(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// Numerator and denominator when both fit in `i64`.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small { num, den } => Some((num, den)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small { num, den: 1 } => Some(num),
            _ => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn add_impl(&self, other: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            if b == d {
                return Self::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
            return Self::from_i128(n, *b as i128 * *d as i128);
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            if *a == 0 || *c == 0 {
                return Rational::ZERO;
            }
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Self::from_big(self.to_big() * other.to_big())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(n))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    /// Always `p/q`, including integers (`3/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:expr) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $imp(self, rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $imp(&self, rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Rational, b: &Rational| a.add_impl(b));
forward_binop!(Sub, sub, |a: &Rational, b: &Rational| a.add_impl(&-b));
forward_binop!(Mul, mul, |a: &Rational, b: &Rational| a.mul_impl(b));
forward_binop!(Div, div, |a: &Rational, b: &Rational| a
    .mul_impl(&b.recip().expect("division by zero")));

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Rational(Repr::Small { num: n, den: *den }),
                None => Rational::from_i128(-(*num as i128), *den as i128),
            },
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.add_impl(&-rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_impl(rhs);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ONE, |acc, x| acc * x)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}

/// Shorthand for `Rational::new(n, d)`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(q(6, -4), q(-3, 2));
        assert_eq!(q(-3, 2).as_small(), Some((-3, 2)));
        assert_eq!(q(0, -5), Rational::ZERO);
    }

    #[test]
    fn spills_to_big_and_back() {
        let big = Rational::from_int(i64::MAX) * Rational::from_int(i64::MAX);
        assert!(big.as_small().is_none());
        let back = &big / &Rational::from_int(i64::MAX);
        assert_eq!(back, Rational::from_int(i64::MAX));
        assert!(back.as_small().is_some());
        let neg_min = -Rational::from_int(i64::MIN);
        assert_eq!(neg_min.numer(), BigInt::from(i64::MIN).abs());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("-4".parse::<Rational>().unwrap(), Rational::from_int(-4));
        assert_eq!(q(2, 1).to_string(), "2/1");
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < Rational::ZERO);
        let big = Rational::from_int(i64::MAX) * Rational::from_int(3);
        assert!(big > Rational::from_int(i64::MAX));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..60).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn display_roundtrip(a in small()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
