//! The Albert algebra `Herm(3, O)` and the octonion projective plane.
//!
//! An element `(d, e, f | D, E, F)` stands for the Hermitian matrix
//!
//! ```text
//! [ d   F   Ē ]
//! [ F̄   e   D ]
//! [ E   D̄   f ]
//! ```

use std::fmt;
use std::str::FromStr;

use crate::lattice::leech::OctVec3;
use crate::octonion::{common_quaternion_subalgebra, Octonion};
use crate::rational::Rational;
use crate::Error;

/// A plain 3×3 octonion matrix, row-major.
pub type OctMatrix = [[Octonion; 3]; 3];

/// Ordinary matrix product; no associativity is assumed between entries.
pub fn mat_mul(a: &OctMatrix, b: &OctMatrix) -> OctMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Octonion::zero();
            for (k, row) in b.iter().enumerate() {
                if !a[i][k].is_zero() && !row[j].is_zero() {
                    acc += &(&a[i][k] * &row[j]);
                }
            }
            acc
        })
    })
}

/// A Hermitian 3×3 octonion matrix stored as `(d, e, f | D, E, F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HermOct3 {
    pub diag: [Rational; 3],
    /// `[D, E, F]`
    pub off: [Octonion; 3],
}

impl HermOct3 {
    pub fn new(diag: [Rational; 3], off: [Octonion; 3]) -> Self {
        HermOct3 { diag, off }
    }

    pub fn zero() -> Self {
        HermOct3 { diag: Default::default(), off: Default::default() }
    }

    pub fn identity() -> Self {
        Self::diagonal([Rational::ONE, Rational::ONE, Rational::ONE])
    }

    pub fn diagonal(diag: [Rational; 3]) -> Self {
        HermOct3 { diag, off: Default::default() }
    }

    /// The diagonal idempotent with a single 1 in position `k`.
    pub fn unit(k: usize) -> Self {
        let mut diag: [Rational; 3] = Default::default();
        diag[k] = Rational::ONE;
        Self::diagonal(diag)
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(Rational::is_zero) && self.off.iter().all(Octonion::is_zero)
    }

    pub fn to_matrix(&self) -> OctMatrix {
        let [d, e, f] = self.diag.clone().map(Octonion::real);
        let [dd, ee, ff] = self.off.clone();
        [
            [d, ff.clone(), ee.conj()],
            [ff.conj(), e, dd.clone()],
            [ee, dd.conj(), f],
        ]
    }

    /// Reads back a matrix, failing unless it is Hermitian.
    pub fn from_matrix(m: &OctMatrix) -> Result<Self, Error> {
        for (i, row) in m.iter().enumerate() {
            if !row[i].is_real() {
                return Err(Error::Validation(format!("diagonal entry {i} is not real")));
            }
            for j in i + 1..3 {
                if m[j][i] != row[j].conj() {
                    return Err(Error::Validation(format!("entries ({i},{j}) and ({j},{i}) are not conjugate")));
                }
            }
        }
        Ok(HermOct3 {
            diag: std::array::from_fn(|i| m[i][i].real_part()),
            off: [m[1][2].clone(), m[2][0].clone(), m[0][1].clone()],
        })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        HermOct3 { diag: self.diag.clone().map(|x| &x * k), off: self.off.clone().map(|o| o.scale(k)) }
    }

    pub fn add(&self, o: &Self) -> Self {
        HermOct3 {
            diag: std::array::from_fn(|i| &self.diag[i] + &o.diag[i]),
            off: std::array::from_fn(|i| &self.off[i] + &o.off[i]),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HermOct3 {
            diag: std::array::from_fn(|i| &self.diag[i] - &o.diag[i]),
            off: std::array::from_fn(|i| &self.off[i] - &o.off[i]),
        }
    }

    /// The automorphism `i_t -> i_{t+1}` applied to every entry.
    pub fn shift(&self) -> Self {
        HermOct3 { diag: self.diag.clone(), off: self.off.each_ref().map(Octonion::shift) }
    }

    /// The automorphism `i_t -> i_{2t}` applied to every entry.
    pub fn double(&self) -> Self {
        HermOct3 { diag: self.diag.clone(), off: self.off.each_ref().map(Octonion::double) }
    }

    /// The 27 real coordinates in text order.
    pub fn coords(&self) -> impl Iterator<Item = &Rational> {
        self.diag.iter().chain(self.off.iter().flat_map(|o| o.c.iter()))
    }
}

impl fmt::Display for HermOct3 {
    /// `d e f` then the 8 coefficients of each of `D`, `E`, `F`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {} {} {}", self.diag[0], self.diag[1], self.diag[2], self.off[0], self.off[1], self.off[2])
    }
}

impl FromStr for HermOct3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() != 27 {
            return Err(Error::Parse(format!("Albert element needs 27 numbers, got {}", toks.len())));
        }
        let nums = toks.iter().map(|t| t.parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
        Ok(HermOct3 {
            diag: std::array::from_fn(|i| nums[i].clone()),
            off: std::array::from_fn(|k| Octonion::new(std::array::from_fn(|i| nums[3 + 8 * k + i].clone()))),
        })
    }
}

/// `X∘Y = ½(XY + YX)`.
pub fn jordan_mul(x: &HermOct3, y: &HermOct3) -> HermOct3 {
    let (a, b) = (x.to_matrix(), y.to_matrix());
    let (ab, ba) = (mat_mul(&a, &b), mat_mul(&b, &a));
    let half = Rational::new(1, 2);
    let sym: OctMatrix = std::array::from_fn(|i| std::array::from_fn(|j| (&ab[i][j] + &ba[i][j]).scale(&half)));
    HermOct3::from_matrix(&sym).expect("Jordan product is Hermitian")
}

pub fn trace(x: &HermOct3) -> Rational {
    x.diag.iter().sum()
}

/// `⟨X, Y⟩ = Tr(X∘Y) = dd' + ee' + ff' + 2(D·D' + E·E' + F·F')`.
pub fn inner(x: &HermOct3, y: &HermOct3) -> Rational {
    let diag: Rational = x.diag.iter().zip(&y.diag).map(|(a, b)| a * b).sum();
    let off: Rational = x.off.iter().zip(&y.off).map(|(a, b)| a.dot(b)).sum();
    diag + off * Rational::from_int(2)
}

/// The symmetric cross product
/// `X∘Y + ½I(Tr X Tr Y − Tr(X∘Y)) − ½(Tr X·Y + Tr Y·X)`.
pub fn cross(x: &HermOct3, y: &HermOct3) -> HermOct3 {
    let half = Rational::new(1, 2);
    let (tx, ty) = (trace(x), trace(y));
    let xy = jordan_mul(x, y);
    let k = (&tx * &ty - trace(&xy)) * &half;
    let mut out = xy;
    for d in out.diag.iter_mut() {
        *d += &k;
    }
    out.sub(&y.scale(&tx).add(&x.scale(&ty)).scale(&half))
}

/// `X∘X = X` and `Tr X = 1`.
pub fn is_primitive_idempotent(x: &HermOct3) -> bool {
    trace(x) == Rational::ONE && jordan_mul(x, x) == *x
}

/// True iff `y` is a nonzero rational multiple of `x`.
pub fn projectively_equal(x: &HermOct3, y: &HermOct3) -> bool {
    let Some((a, b)) = x.coords().zip(y.coords()).find(|(a, _)| !a.is_zero()) else {
        return false;
    };
    if b.is_zero() {
        return false;
    }
    let ratio = b / a;
    x.scale(&ratio) == *y
}

/// A point of `OP²`: a primitive idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint(HermOct3);

impl PlanePoint {
    /// Accepts `x` only if it is already a primitive idempotent.
    pub fn new(x: HermOct3) -> Result<Self, Error> {
        if is_primitive_idempotent(&x) {
            Ok(PlanePoint(x))
        } else {
            Err(Error::Validation(format!("not a primitive idempotent: {x}")))
        }
    }

    /// The trace-1 representative of the point `[x]`, which requires
    /// `Tr x ≠ 0` and `x × x = 0`.
    pub fn normalize(x: &HermOct3) -> Result<Self, Error> {
        let t = trace(x).recip().ok_or_else(|| Error::Degenerate("trace is zero".into()))?;
        if !cross(x, x).is_zero() {
            return Err(Error::Validation(format!("not a multiple of a primitive idempotent: {x}")));
        }
        Ok(PlanePoint(x.scale(&t)))
    }

    pub(crate) fn new_unchecked(x: HermOct3) -> Self {
        PlanePoint(x)
    }

    pub fn mat(&self) -> &HermOct3 {
        &self.0
    }

    pub fn into_inner(self) -> HermOct3 {
        self.0
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for PlanePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        PlanePoint::new(s.parse()?)
    }
}

/// `v†v / (v v†)`, defined when the components of `v` generate an associative
/// subalgebra.
pub fn point_from_vector(v: &OctVec3) -> Result<PlanePoint, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !common_quaternion_subalgebra(&v.0) {
        return Err(Error::NotAssociative(v.to_string()));
    }
    let inv = v.hermitian_square().recip().expect("nonzero vector");
    Ok(PlanePoint(outer_square(v).scale(&inv)))
}

/// `v†v` without normalization: `(v̄ᵢ vⱼ)`.
pub(crate) fn outer_square(v: &OctVec3) -> HermOct3 {
    let [a, b, c] = &v.0;
    HermOct3 {
        diag: [a.norm(), b.norm(), c.norm()],
        off: [&b.conj() * c, &c.conj() * a, &a.conj() * b],
    }
}

/// The line through two distinct points, as the element `X × Y`; a point
/// `P` lies on it iff [`incident`] holds.
pub fn join(x: &PlanePoint, y: &PlanePoint) -> Result<HermOct3, Error> {
    if x == y {
        return Err(Error::Degenerate("join of a point with itself".into()));
    }
    nonzero_cross(x.mat(), y.mat())
}

/// The common point `M × N` of two distinct lines.
pub fn meet(m: &HermOct3, n: &HermOct3) -> Result<HermOct3, Error> {
    if projectively_equal(m, n) {
        return Err(Error::Degenerate("meet of a line with itself".into()));
    }
    nonzero_cross(m, n)
}

fn nonzero_cross(a: &HermOct3, b: &HermOct3) -> Result<HermOct3, Error> {
    let c = cross(a, b);
    if c.is_zero() {
        Err(Error::Degenerate("cross product vanishes".into()))
    } else {
        Ok(c)
    }
}

pub fn incident(p: &PlanePoint, line: &HermOct3) -> bool {
    inner(p.mat(), line).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::BasisIndex;
    use crate::rational::q;
    use proptest::prelude::*;

    fn r(n: i64) -> Octonion {
        Octonion::real(Rational::from_int(n))
    }

    fn i(t: i64) -> Octonion {
        Octonion::unit(BasisIndex::finite(t))
    }

    fn small_oct() -> impl Strategy<Value = Octonion> {
        prop::array::uniform8(-3i64..=3).prop_map(|c| Octonion::from_ints(c, 1))
    }

    fn small_herm() -> impl Strategy<Value = HermOct3> {
        (prop::array::uniform3(-3i64..=3), small_oct(), small_oct(), small_oct())
            .prop_map(|(d, a, b, c)| HermOct3::new(d.map(Rational::from_int), [a, b, c]))
    }

    /// Octonions in the quaternion subalgebra spanned by `1, i_0, i_1, i_3`.
    fn quaternion() -> impl Strategy<Value = Octonion> {
        prop::array::uniform4(-3i64..=3).prop_map(|[a, b, c, d]| Octonion::from_ints([a, b, c, 0, d, 0, 0, 0], 1))
    }

    fn quaternion_vec() -> impl Strategy<Value = OctVec3> {
        (quaternion(), quaternion(), quaternion())
            .prop_map(|(a, b, c)| OctVec3::new(a, b, c))
            .prop_filter("nonzero", |v| !v.is_zero())
    }

    #[test]
    fn matrix_layout_roundtrip() {
        let x = HermOct3::new([q(1, 2), q(0, 1), q(-3, 1)], [i(0), &r(2) + &i(5), i(3).scale(&q(1, 3))]);
        let m = x.to_matrix();
        assert_eq!(m[0][1], i(3).scale(&q(1, 3)));
        assert_eq!(m[0][2], (&r(2) + &i(5)).conj());
        assert_eq!(m[1][2], i(0));
        assert_eq!(HermOct3::from_matrix(&m).unwrap(), x);
        let mut bad = m.clone();
        bad[1][0] = i(2);
        assert!(HermOct3::from_matrix(&bad).is_err());
        assert_eq!(x.to_string().parse::<HermOct3>().unwrap(), x);
    }

    #[test]
    fn jordan_examples() {
        let id = HermOct3::identity();
        let x = HermOct3::new([q(1, 1), q(2, 1), q(0, 1)], [i(1), i(2), &r(1) - &i(6)]);
        assert_eq!(jordan_mul(&id, &x), x);
        let e1 = HermOct3::unit(0);
        assert_eq!(jordan_mul(&e1, &e1), e1);
    }

    #[test]
    fn trace_and_inner_examples() {
        assert_eq!(trace(&HermOct3::identity()), q(3, 1));
        assert_eq!(inner(&HermOct3::unit(0), &HermOct3::unit(1)), Rational::ZERO);
    }

    #[test]
    fn cross_examples() {
        let e1 = HermOct3::unit(0);
        assert!(cross(&e1, &e1).is_zero());
        let id = HermOct3::identity();
        assert_eq!(cross(&id, &id), id);
    }

    #[test]
    fn idempotent_examples() {
        assert!(is_primitive_idempotent(&HermOct3::unit(0)));
        assert!(!is_primitive_idempotent(&HermOct3::identity()));
        let p = point_from_vector(&OctVec3::new(r(2), r(-2), Octonion::zero())).unwrap();
        let want = HermOct3::new([q(1, 2), q(1, 2), q(0, 1)], [Octonion::zero(), Octonion::zero(), r(-1).scale(&q(1, 2))]);
        assert_eq!(*p.mat(), want);
        assert!(is_primitive_idempotent(p.mat()));
        let p = point_from_vector(&OctVec3::new(r(1), Octonion::zero(), Octonion::zero())).unwrap();
        assert_eq!(*p.mat(), HermOct3::unit(0));
    }

    #[test]
    fn point_from_vector_rejects_non_associative() {
        let v = OctVec3::new(i(0), i(1), i(2));
        assert!(matches!(point_from_vector(&v), Err(Error::NotAssociative(_))));
        assert!(matches!(point_from_vector(&OctVec3::zero()), Err(Error::ZeroVector)));
    }

    #[test]
    fn join_and_meet_of_coordinate_points() {
        let [e1, e2, e3] = [0, 1, 2].map(|k| PlanePoint::new(HermOct3::unit(k)).unwrap());
        let l12 = join(&e1, &e2).unwrap();
        assert_eq!(l12, HermOct3::diagonal([q(0, 1), q(0, 1), q(1, 2)]));
        assert!(incident(&e1, &l12));
        assert!(incident(&e2, &l12));
        assert!(!incident(&e3, &l12));
        let l13 = join(&e1, &e3).unwrap();
        let m = meet(&l12, &l13).unwrap();
        assert_eq!(m, HermOct3::unit(0).scale(&q(1, 8)));
        assert!(projectively_equal(&m, e1.mat()));
        assert!(matches!(join(&e1, &e1), Err(Error::Degenerate(_))));
        assert!(matches!(meet(&l12, &l12.scale(&q(3, 1))), Err(Error::Degenerate(_))));
    }

    #[test]
    fn normalize_scales_to_trace_one() {
        let p = point_from_vector(&OctVec3::new(r(2), i(4).scale(&q(2, 1)), Octonion::zero())).unwrap();
        let scaled = p.mat().scale(&q(-5, 3));
        assert_eq!(PlanePoint::normalize(&scaled).unwrap(), p);
        assert!(PlanePoint::normalize(&HermOct3::identity()).is_err());
        assert!(PlanePoint::normalize(&HermOct3::zero()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn jordan_product_commutes(x in small_herm(), y in small_herm()) {
            prop_assert_eq!(jordan_mul(&x, &y), jordan_mul(&y, &x));
        }

        #[test]
        fn jordan_identity(x in small_herm(), y in small_herm()) {
            let xx = jordan_mul(&x, &x);
            prop_assert_eq!(jordan_mul(&jordan_mul(&x, &y), &xx), jordan_mul(&x, &jordan_mul(&y, &xx)));
        }

        #[test]
        fn inner_is_trace_of_jordan_product(x in small_herm(), y in small_herm()) {
            prop_assert_eq!(inner(&x, &y), trace(&jordan_mul(&x, &y)));
            prop_assert_eq!(inner(&x, &y), inner(&y, &x));
        }

        #[test]
        fn inner_positive_definite(x in small_herm()) {
            prop_assume!(!x.is_zero());
            prop_assert!(inner(&x, &x).signum() > 0);
        }

        #[test]
        fn cross_is_symmetric(x in small_herm(), y in small_herm()) {
            prop_assert_eq!(cross(&x, &y), cross(&y, &x));
        }

        #[test]
        fn quaternionic_points_are_primitive(v in quaternion_vec(), k in 1i64..5, neg in any::<bool>()) {
            let p = point_from_vector(&v).unwrap();
            prop_assert!(is_primitive_idempotent(p.mat()));
            prop_assert!(common_quaternion_subalgebra(&p.mat().off));
            let scaled = p.mat().scale(&Rational::new(if neg { -k } else { k }, 3));
            prop_assert!(cross(&scaled, &scaled).is_zero());
            prop_assert_eq!(PlanePoint::normalize(&scaled).unwrap(), p);
        }

        #[test]
        fn cross_square_detects_points(x in small_herm()) {
            let t = trace(&x);
            prop_assume!(!t.is_zero());
            let is_point = is_primitive_idempotent(&x.scale(&t.recip().unwrap()));
            prop_assert_eq!(cross(&x, &x).is_zero(), is_point);
        }

        #[test]
        fn joins_meet_in_the_common_point(u in quaternion_vec(), v in quaternion_vec(), w in quaternion_vec()) {
            let (x, y, z) = (point_from_vector(&u).unwrap(), point_from_vector(&v).unwrap(), point_from_vector(&w).unwrap());
            prop_assume!(x != y && x != z);
            let (lxy, lxz) = (join(&x, &y).unwrap(), join(&x, &z).unwrap());
            prop_assert!(incident(&x, &lxy) && incident(&y, &lxy));
            prop_assume!(!projectively_equal(&lxy, &lxz));
            let m = meet(&lxy, &lxz).unwrap();
            prop_assert!(projectively_equal(&m, x.mat()));
        }
    }
}
