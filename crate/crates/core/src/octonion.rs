//! Octonions over the basis `{i_t | t in PL(7)}`.
//!
//! Coefficients are stored in slot order `(∞, 0, 1, …, 6)`: slot 0 is the real
//! unit `i_∞ = 1`, slot `1 + t` is `i_t`. Products of imaginary units follow
//! `i_t = i_{t+1} i_{t+3} = i_{t+2} i_{t+6} = i_{t+4} i_{t+5}` (indices mod 7),
//! each reversed product carrying a minus sign.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::linalg::Echelon;
use crate::rational::Rational;
use crate::Error;

/// An element of the projective line over F₇, used to index the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    Infinity,
    Finite(u8),
}

impl BasisIndex {
    /// All eight indices in storage order `∞, 0, …, 6`.
    pub const ALL: [BasisIndex; 8] = [
        BasisIndex::Infinity,
        BasisIndex::Finite(0),
        BasisIndex::Finite(1),
        BasisIndex::Finite(2),
        BasisIndex::Finite(3),
        BasisIndex::Finite(4),
        BasisIndex::Finite(5),
        BasisIndex::Finite(6),
    ];

    /// `i_t` for `t` reduced mod 7.
    pub fn finite(t: i64) -> Self {
        BasisIndex::Finite(t.rem_euclid(7) as u8)
    }

    pub fn slot(self) -> usize {
        match self {
            BasisIndex::Infinity => 0,
            BasisIndex::Finite(t) => 1 + t as usize,
        }
    }

    pub fn from_slot(slot: usize) -> Self {
        assert!(slot < 8, "basis slot out of range");
        BasisIndex::ALL[slot]
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Infinity => write!(f, "inf"),
            BasisIndex::Finite(t) => write!(f, "{t}"),
        }
    }
}

/// `(sign, slot)` with `e_a * e_b = sign * e_slot`.
pub type TableEntry = (i8, u8);

const fn build_table() -> [[TableEntry; 8]; 8] {
    let mut m = [[(0i8, 0u8); 8]; 8];
    let mut a = 0;
    while a < 8 {
        m[0][a] = (1, a as u8);
        m[a][0] = (1, a as u8);
        a += 1;
    }
    let mut t = 1;
    while t < 8 {
        m[t][t] = (-1, 0);
        t += 1;
    }
    let offsets = [(1usize, 3usize), (2, 6), (4, 5)];
    let mut t = 0;
    while t < 7 {
        let mut k = 0;
        while k < 3 {
            let a = 1 + (t + offsets[k].0) % 7;
            let b = 1 + (t + offsets[k].1) % 7;
            let c = (1 + t) as u8;
            if m[a][b].0 != 0 && (m[a][b].0 != 1 || m[a][b].1 != c) {
                panic!("inconsistent octonion relations");
            }
            m[a][b] = (1, c);
            m[b][a] = (-1, c);
            k += 1;
        }
        t += 1;
    }
    m
}

/// Basis multiplication table in slot order.
pub const MUL_TABLE: [[TableEntry; 8]; 8] = build_table();

/// Coefficient ring for [`Octonion`]. Implemented for [`Rational`] (the exact
/// general-purpose path) and for `i32`/`i64` (scaled-integer fast paths).
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

macro_rules! int_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn zero() -> Self {
                0
            }
            fn one() -> Self {
                1
            }
            fn is_zero(&self) -> bool {
                *self == 0
            }
            fn add_ref(&self, o: &Self) -> Self {
                self + o
            }
            fn sub_ref(&self, o: &Self) -> Self {
                self - o
            }
            fn mul_ref(&self, o: &Self) -> Self {
                self * o
            }
            fn neg_ref(&self) -> Self {
                -self
            }
        }
    };
}

int_scalar!(i32);
int_scalar!(i64);

/// An octonion with coefficients `c[slot]`, slot order `(∞, 0, …, 6)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Octonion<T = Rational> {
    pub c: [T; 8],
}

impl<T: Scalar> Octonion<T> {
    pub fn new(c: [T; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero() -> Self {
        Octonion { c: std::array::from_fn(|_| T::zero()) }
    }

    pub fn one() -> Self {
        Self::unit(BasisIndex::Infinity)
    }

    pub fn unit(i: BasisIndex) -> Self {
        let mut o = Self::zero();
        o.c[i.slot()] = T::one();
        o
    }

    pub fn real(x: T) -> Self {
        let mut o = Self::zero();
        o.c[0] = x;
        o
    }

    pub fn coeff(&self, i: BasisIndex) -> &T {
        &self.c[i.slot()]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(T::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.c[1..].iter().all(T::is_zero)
    }

    pub fn real_part(&self) -> T {
        self.c[0].clone()
    }

    /// The imaginary part `x - Re(x)`.
    pub fn imag(&self) -> Self {
        let mut o = self.clone();
        o.c[0] = T::zero();
        o
    }

    pub fn scale(&self, k: &T) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].mul_ref(k)) }
    }

    /// Negates the imaginary coefficients.
    pub fn conj(&self) -> Self {
        Octonion {
            c: std::array::from_fn(|i| if i == 0 { self.c[0].clone() } else { self.c[i].neg_ref() }),
        }
    }

    /// The composition norm `a * conj(a)`, i.e. the sum of squared coefficients.
    pub fn norm(&self) -> T {
        self.dot(self)
    }

    /// Euclidean inner product of coefficient vectors, `Re(a * conj(b))`.
    pub fn dot(&self, o: &Self) -> T {
        let mut acc = T::zero();
        for i in 0..8 {
            if !self.c[i].is_zero() && !o.c[i].is_zero() {
                acc = acc.add_ref(&self.c[i].mul_ref(&o.c[i]));
            }
        }
        acc
    }

    pub fn mul_oct(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for a in 0..8 {
            let x = &self.c[a];
            if x.is_zero() {
                continue;
            }
            for b in 0..8 {
                let y = &o.c[b];
                if y.is_zero() {
                    continue;
                }
                let (sign, slot) = MUL_TABLE[a][b];
                let p = x.mul_ref(y);
                let slot = slot as usize;
                r.c[slot] = if sign > 0 { r.c[slot].add_ref(&p) } else { r.c[slot].sub_ref(&p) };
            }
        }
        r
    }

    /// The automorphism `i_t -> i_{t+1}`, fixing `i_∞`.
    pub fn shift(&self) -> Self {
        self.permute_imag(|t| (t + 1) % 7)
    }

    /// The automorphism `i_t -> i_{2t}`, fixing `i_∞`.
    pub fn double(&self) -> Self {
        self.permute_imag(|t| (2 * t) % 7)
    }

    fn permute_imag(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut o = Self::zero();
        o.c[0] = self.c[0].clone();
        for t in 0..7 {
            o.c[1 + f(t)] = self.c[1 + t].clone();
        }
        o
    }
}

impl Octonion<Rational> {
    /// `s = ½(−1 + i_0 + … + i_6)`.
    pub fn s() -> Self {
        let h = Rational::new(1, 2);
        let mut c: [Rational; 8] = std::array::from_fn(|_| h.clone());
        c[0] = -&h;
        Octonion { c }
    }

    /// `conj(s) = ½(−1 − i_0 − … − i_6)`.
    pub fn s_bar() -> Self {
        Self::s().conj()
    }

    /// Octonion from small integer coefficients divided by `den`.
    pub fn from_ints(c: [i64; 8], den: i64) -> Self {
        Octonion { c: c.map(|x| Rational::new(x, den)) }
    }

    /// Two-sided inverse `conj(a) / N(a)`; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm().recip()?;
        Some(self.conj().scale(&n))
    }

    /// Coefficients multiplied by `scale`, if they are all integers fitting in `i64`.
    pub fn to_scaled_ints(&self, scale: i64) -> Option<[i64; 8]> {
        let k = Rational::from_int(scale);
        let mut out = [0i64; 8];
        for (o, x) in out.iter_mut().zip(&self.c) {
            *o = (x * &k).to_i64()?;
        }
        Some(out)
    }
}

impl<T: Scalar> Default for Octonion<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, o: &Octonion<T>) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| self.c[i].add_ref(&o.c[i])) }
    }
}

impl<T: Scalar> Sub for &Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, o: &Octonion<T>) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| self.c[i].sub_ref(&o.c[i])) }
    }
}

impl<T: Scalar> Mul for &Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, o: &Octonion<T>) -> Octonion<T> {
        self.mul_oct(o)
    }
}

impl<T: Scalar> Neg for &Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| self.c[i].neg_ref()) }
    }
}

impl<T: Scalar> Add for Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, o: Octonion<T>) -> Octonion<T> {
        &self + &o
    }
}

impl<T: Scalar> Sub for Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, o: Octonion<T>) -> Octonion<T> {
        &self - &o
    }
}

impl<T: Scalar> Mul for Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, o: Octonion<T>) -> Octonion<T> {
        self.mul_oct(&o)
    }
}

impl<T: Scalar> Neg for Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        -&self
    }
}

impl<T: Scalar> AddAssign<&Octonion<T>> for Octonion<T> {
    fn add_assign(&mut self, o: &Octonion<T>) {
        for i in 0..8 {
            self.c[i] = self.c[i].add_ref(&o.c[i]);
        }
    }
}

impl<T: Scalar> SubAssign<&Octonion<T>> for Octonion<T> {
    fn sub_assign(&mut self, o: &Octonion<T>) {
        for i in 0..8 {
            self.c[i] = self.c[i].sub_ref(&o.c[i]);
        }
    }
}

impl fmt::Display for Octonion<Rational> {
    /// Eight `p/q` rationals separated by single spaces, slot order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Octonion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl FromStr for Octonion<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 8 {
            return Err(Error::Parse(format!("octonion needs 8 coefficients, got {}", parts.len())));
        }
        let mut c: [Rational; 8] = Default::default();
        for (slot, p) in c.iter_mut().zip(parts) {
            *slot = p.parse()?;
        }
        Ok(Octonion { c })
    }
}

/// `(ab)c − a(bc)`.
pub fn associator<T: Scalar>(a: &Octonion<T>, b: &Octonion<T>, c: &Octonion<T>) -> Octonion<T> {
    &(&(a * b) * c) - &(a * &(b * c))
}

/// The common complex subalgebra of a set of octonions, when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexSubalgebra {
    /// Every element is real.
    Real,
    /// Imaginary parts are all rational multiples of this imaginary octonion,
    /// scaled so its first nonzero coefficient is 1.
    Direction(Octonion),
}

/// Finds a single imaginary direction containing the imaginary parts of all
/// of `vs`, or `None` if two of them are independent.
pub fn common_complex_subalgebra(vs: &[Octonion]) -> Option<ComplexSubalgebra> {
    let mut dir: Option<Octonion> = None;
    for v in vs {
        let im = v.imag();
        if im.is_zero() {
            continue;
        }
        match &dir {
            None => {
                let lead = im.c.iter().find(|x| !x.is_zero()).cloned().expect("nonzero");
                dir = Some(im.scale(&lead.recip().expect("nonzero")));
            }
            Some(d) => {
                let k = (1..8).find(|&i| !d.c[i].is_zero()).expect("nonzero direction");
                let ratio = &im.c[k] / &d.c[k];
                if im != d.scale(&ratio) {
                    return None;
                }
            }
        }
    }
    Some(match dir {
        None => ComplexSubalgebra::Real,
        Some(d) => ComplexSubalgebra::Direction(d),
    })
}

/// Dimension of the real subalgebra generated by `{1} ∪ vs`, capped at one
/// past `limit` (generation stops as soon as the cap is exceeded).
pub fn generated_subalgebra_dim(vs: &[Octonion], limit: usize) -> usize {
    let mut span = Echelon::new(8);
    let mut basis: Vec<Octonion> = Vec::new();
    let push = |x: Octonion, span: &mut Echelon, basis: &mut Vec<Octonion>| {
        if span.insert(x.c.to_vec()) {
            basis.push(x);
        }
    };
    push(Octonion::one(), &mut span, &mut basis);
    for v in vs {
        push(v.clone(), &mut span, &mut basis);
        if basis.len() > limit {
            return basis.len();
        }
    }
    let mut done = 0;
    while done < basis.len() {
        // close under products involving at least one unprocessed element
        let hi = basis.len();
        for i in done..hi {
            for j in 0..hi {
                let p = &basis[i] * &basis[j];
                let r = &basis[j] * &basis[i];
                push(p, &mut span, &mut basis);
                push(r, &mut span, &mut basis);
                if basis.len() > limit {
                    return basis.len();
                }
            }
        }
        done = hi;
    }
    basis.len()
}

/// True iff `{1} ∪ vs` generates a subalgebra of dimension at most 4, i.e.
/// all of `vs` lie in one quaternion (hence associative) subalgebra.
pub fn common_quaternion_subalgebra(vs: &[Octonion]) -> bool {
    generated_subalgebra_dim(vs, 4) <= 4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn i(t: i64) -> Octonion {
        Octonion::unit(BasisIndex::finite(t))
    }

    fn one() -> Octonion {
        Octonion::one()
    }

    #[test]
    fn table_rules() {
        assert_eq!(&i(1) * &i(2), i(4));
        assert_eq!(&i(4) * &i(1), i(2));
        assert_eq!(&i(1) * &i(4), -i(2));
        for t in 0..7 {
            assert_eq!(&i(t) * &i(t), -one());
            assert_eq!(&i(t + 1) * &i(t + 3), i(t));
            assert_eq!(&i(t + 3) * &i(t + 1), -i(t));
            assert_eq!(&i(t + 2) * &i(t + 6), i(t));
            assert_eq!(&i(t + 4) * &i(t + 5), i(t));
        }
        let x = Octonion::from_ints([1, -2, 3, 0, 5, 1, 1, -7], 3);
        assert_eq!(&one() * &x, x);
        assert_eq!(&x * &one(), x);
    }

    #[test]
    fn conjugation_and_norm() {
        assert_eq!(i(3).conj(), -i(3));
        assert_eq!(one().conj(), one());
        let s = Octonion::s();
        assert_eq!(s.conj(), Octonion::from_ints([-1, -1, -1, -1, -1, -1, -1, -1], 2));
        assert_eq!(i(2).norm(), Rational::ONE);
        assert_eq!(s.norm(), q(2, 1));
        assert_eq!((one() + i(0)).norm(), q(2, 1));
        assert_eq!(&s * &s.conj(), Octonion::real(q(2, 1)));
    }

    #[test]
    fn s_is_a_root_of_x2_x_2() {
        let s = Octonion::s();
        let lhs = &(&(&s * &s) + &s) + &Octonion::real(q(2, 1));
        assert!(lhs.is_zero());
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(i(6).shift(), i(0));
        assert_eq!(Octonion::s().shift(), Octonion::s());
        assert_eq!(i(3).double(), i(6));
        assert_eq!(one().double(), one());
    }

    #[test]
    fn automorphisms_on_all_basis_pairs() {
        for a in BasisIndex::ALL {
            for b in BasisIndex::ALL {
                let (x, y) = (Octonion::<Rational>::unit(a), Octonion::unit(b));
                let p = &x * &y;
                assert_eq!(&x.shift() * &y.shift(), p.shift());
                assert_eq!(&x.double() * &y.double(), p.double());
                assert_eq!(p.shift().norm(), p.norm());
                assert_eq!(p.double().norm(), p.norm());
            }
        }
    }

    #[test]
    fn associator_examples() {
        assert!(associator(&i(0), &i(0), &i(1)).is_zero());
        assert!(!associator(&i(0), &i(1), &i(2)).is_zero());
        let a = Octonion::from_ints([1, 2, 0, -1, 3, 0, 0, 1], 2);
        assert!(associator(&one(), &a, &i(5)).is_zero());
    }

    #[test]
    fn complex_subalgebra_examples() {
        let v = [Octonion::real(q(2, 1)), i(3).scale(&q(-2, 1))];
        assert_eq!(common_complex_subalgebra(&v), Some(ComplexSubalgebra::Direction(i(3))));
        let s = Octonion::s();
        let dir = Octonion::from_ints([0, 1, 1, 1, 1, 1, 1, 1], 1);
        assert_eq!(
            common_complex_subalgebra(&[s.clone(), s.conj(), one()]),
            Some(ComplexSubalgebra::Direction(dir))
        );
        assert_eq!(common_complex_subalgebra(&[i(0), i(1)]), None);
        assert_eq!(common_complex_subalgebra(&[]), Some(ComplexSubalgebra::Real));
    }

    #[test]
    fn quaternion_subalgebra_examples() {
        assert!(common_quaternion_subalgebra(&[i(0), i(1), i(3)]));
        assert!(!common_quaternion_subalgebra(&[i(0), i(1), i(2)]));
        assert!(common_quaternion_subalgebra(&[Octonion::s()]));
        let a = Octonion::from_ints([1, 2, 0, -1, 3, 0, 0, 1], 2);
        let b = Octonion::from_ints([0, 0, 5, 1, 0, 2, 0, 1], 3);
        assert!(common_quaternion_subalgebra(&[a.clone(), b.clone()]));
        assert!(common_quaternion_subalgebra(&[a.clone(), b.clone(), &a * &b]));
        assert_eq!(generated_subalgebra_dim(&[a, b], 8), 4);
    }

    #[test]
    fn text_roundtrip() {
        let s = Octonion::s();
        assert_eq!(s.to_string(), "-1/2 1/2 1/2 1/2 1/2 1/2 1/2 1/2");
        assert_eq!(s.to_string().parse::<Octonion>().unwrap(), s);
        assert!("1 2 3".parse::<Octonion>().is_err());
    }

    #[test]
    fn integer_path_matches_rational_path() {
        let a = [3i64, -1, 0, 2, 1, -4, 0, 1];
        let b = [0i64, 1, 1, -1, 2, 0, 3, -2];
        let ia = Octonion::new(a);
        let ib = Octonion::new(b);
        let ra = Octonion::from_ints(a, 1);
        let rb = Octonion::from_ints(b, 1);
        assert_eq!(Octonion::from_ints((&ia * &ib).c, 1), &ra * &rb);
    }

    prop_compose! {
        fn arb_oct()(c in proptest::array::uniform8(-6i64..7), d in 1i64..4) -> Octonion {
            Octonion::from_ints(c, d)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn alternative(a in arb_oct(), b in arb_oct()) {
            prop_assert!(associator(&a, &a, &b).is_zero());
            prop_assert!(associator(&b, &a, &a).is_zero());
        }

        #[test]
        fn moufang(a in arb_oct(), b in arb_oct(), c in arb_oct()) {
            let lhs = &(&(&a * &b) * &a) * &c;
            let rhs = &a * &(&b * &(&a * &c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn composition(a in arb_oct(), b in arb_oct()) {
            prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
        }

        #[test]
        fn conjugation_reverses_products(a in arb_oct(), b in arb_oct()) {
            prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
        }

        #[test]
        fn automorphisms(a in arb_oct(), b in arb_oct()) {
            prop_assert_eq!(&a.shift() * &b.shift(), (&a * &b).shift());
            prop_assert_eq!(&a.double() * &b.double(), (&a * &b).double());
        }

        #[test]
        fn two_generated_is_associative(a in arb_oct(), b in arb_oct()) {
            prop_assert!(common_quaternion_subalgebra(&[a.clone(), b.clone()]));
            prop_assert!(associator(&a, &b, &(&a * &b)).is_zero());
        }
    }
}
