//! Reflection matrices `W(v) = I − 2 v†v / (v v†)`, the generator families
//! built from Leech short vectors, and their actions on row vectors and on
//! points of the octonion projective plane.
//!
//! Group elements are words of primitive actions applied one after another;
//! octonion matrices are never multiplied together to represent a product.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::albert::{mat_mul, outer_square, trace, HermOct3, OctMatrix, PlanePoint};
use crate::lattice::leech::{LeechVec, OctVec3, PairSet, ShortVectors};
use crate::linalg::{invert, vec_mul, Echelon};
use crate::octonion::{common_complex_subalgebra, common_quaternion_subalgebra, BasisIndex, Octonion};
use crate::permgroup::Permutation;
use crate::rational::Rational;
use crate::Error;

/// `u ↦ u M` for a row vector and a plain octonion matrix.
pub fn right_mul(u: &OctVec3, m: &OctMatrix) -> OctVec3 {
    OctVec3(std::array::from_fn(|j| {
        let mut acc = Octonion::zero();
        for (i, row) in m.iter().enumerate() {
            if !u.0[i].is_zero() && !row[j].is_zero() {
                acc += &(&u.0[i] * &row[j]);
            }
        }
        acc
    }))
}

/// An octonion matrix scaled to integer entries: the matrix is `m / scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    m: [[Octonion<i32>; 3]; 3],
    scale: i32,
}

impl IntMatrix {
    /// Clears denominators; `None` if the common denominator or an entry is too large.
    pub fn from_matrix(m: &OctMatrix) -> Option<Self> {
        let mut scale: i64 = 1;
        for x in m.iter().flatten().flat_map(|o| o.c.iter()) {
            let (_, d) = x.as_small()?;
            scale = num_integer::lcm(scale, d);
            if scale > 1 << 12 {
                return None;
            }
        }
        let mut out: [[Octonion<i32>; 3]; 3] = Default::default();
        for (i, row) in m.iter().enumerate() {
            for (j, o) in row.iter().enumerate() {
                let c = o.to_scaled_ints(scale)?;
                for (dst, x) in out[i][j].c.iter_mut().zip(c) {
                    *dst = i32::try_from(x).ok().filter(|v| v.abs() < 1 << 12)?;
                }
            }
        }
        Some(IntMatrix { m: out, scale: scale as i32 })
    }

    /// `u M` on doubled coordinates, or `None` if the image leaves `½Z²⁴`.
    pub fn apply(&self, u: &LeechVec) -> Option<LeechVec> {
        let comps = [u.component(0), u.component(1), u.component(2)];
        let mut out = [0i8; 24];
        for j in 0..3 {
            let mut acc = Octonion::<i32>::zero();
            for (i, c) in comps.iter().enumerate() {
                if !c.is_zero() && !self.m[i][j].is_zero() {
                    acc += &(c * &self.m[i][j]);
                }
            }
            for (dst, x) in out[8 * j..8 * j + 8].iter_mut().zip(acc.c) {
                if x % self.scale != 0 {
                    return None;
                }
                *dst = i8::try_from(x / self.scale).ok()?;
            }
        }
        Some(LeechVec(out))
    }
}

/// Integer form of `u ↦ (p/q)((u R_a) R_b)` for integral `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedInt {
    a: Octonion<i32>,
    b: Octonion<i32>,
    p: i32,
    q: i32,
}

impl NestedInt {
    fn new(a: &Octonion, b: &Octonion, k: &Rational) -> Option<Self> {
        let conv = |o: &Octonion| -> Option<Octonion<i32>> {
            let c = o.to_scaled_ints(1)?;
            let mut out = Octonion::<i32>::zero();
            for (d, x) in out.c.iter_mut().zip(c) {
                *d = i32::try_from(x).ok().filter(|v| v.abs() < 1 << 8)?;
            }
            Some(out)
        };
        let (p, q) = k.as_small()?;
        Some(NestedInt { a: conv(a)?, b: conv(b)?, p: i32::try_from(p).ok()?, q: i32::try_from(q).ok()? })
    }

    fn apply(&self, u: &LeechVec) -> Option<LeechVec> {
        let mut out = [0i8; 24];
        for k in 0..3 {
            let c = &(&u.component(k) * &self.a) * &self.b;
            for (dst, x) in out[8 * k..8 * k + 8].iter_mut().zip(c.c) {
                let y = x.checked_mul(self.p)?;
                if y % self.q != 0 {
                    return None;
                }
                *dst = i8::try_from(y / self.q).ok()?;
            }
        }
        Some(LeechVec(out))
    }
}

/// `W(v) = I − 2 v†v / (v v†)` for a vector with associative components.
#[derive(Clone, Debug)]
pub struct ReflectionMatrix {
    source: OctVec3,
    mat: HermOct3,
    matrix: OctMatrix,
    int: Option<IntMatrix>,
}

impl ReflectionMatrix {
    pub fn new(v: &OctVec3) -> Result<Self, Error> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !common_quaternion_subalgebra(&v.0) {
            return Err(Error::NotAssociative(v.to_string()));
        }
        let k = Rational::from_int(-2) * v.hermitian_square().recip().expect("nonzero");
        let mut mat = outer_square(v).scale(&k);
        for d in mat.diag.iter_mut() {
            *d += &Rational::ONE;
        }
        let matrix = mat.to_matrix();
        let int = IntMatrix::from_matrix(&matrix);
        Ok(ReflectionMatrix { source: v.clone(), mat, matrix, int })
    }

    pub fn source(&self) -> &OctVec3 {
        &self.source
    }

    pub fn mat(&self) -> &HermOct3 {
        &self.mat
    }

    pub fn matrix(&self) -> &OctMatrix {
        &self.matrix
    }

    pub fn int_matrix(&self) -> Option<&IntMatrix> {
        self.int.as_ref()
    }

    /// `W² = I` under the plain matrix product.
    pub fn is_involution(&self) -> bool {
        mat_mul(&self.matrix, &self.matrix) == HermOct3::identity().to_matrix()
    }

    /// Whether all entries of `W` lie in one complex subalgebra.
    pub fn entries_in_complex_subalgebra(&self) -> bool {
        let entries: Vec<Octonion> = self.matrix.iter().flatten().cloned().collect();
        common_complex_subalgebra(&entries).is_some()
    }
}

pub fn reflection_matrix(v: &OctVec3) -> Result<ReflectionMatrix, Error> {
    ReflectionMatrix::new(v)
}

/// `u W`.
pub fn act_vector(u: &OctVec3, w: &ReflectionMatrix) -> OctVec3 {
    right_mul(u, &w.matrix)
}

/// Order of the two products in `W† U W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parenthesization {
    /// `W†(U W)`
    Right,
    /// `(W† U) W`
    Left,
}

fn conjugate(u: &HermOct3, w: &ReflectionMatrix, how: Parenthesization) -> Result<HermOct3, Error> {
    // W is Hermitian, so W† = W.
    let (um, wm) = (u.to_matrix(), &w.matrix);
    let m = match how {
        Parenthesization::Right => mat_mul(wm, &mat_mul(&um, wm)),
        Parenthesization::Left => mat_mul(&mat_mul(wm, &um), wm),
    };
    HermOct3::from_matrix(&m)
}

/// `U ↦ W†(U W)`; requires the entries of `W` to lie in one complex subalgebra.
pub fn act_albert(u: &PlanePoint, w: &ReflectionMatrix) -> Result<PlanePoint, Error> {
    act_albert_with(u, w, Parenthesization::Right)
}

pub fn act_albert_with(u: &PlanePoint, w: &ReflectionMatrix, how: Parenthesization) -> Result<PlanePoint, Error> {
    if !w.entries_in_complex_subalgebra() {
        return Err(Error::NotAssociative(format!("entries of W({}) span more than a complex subalgebra", w.source)));
    }
    PlanePoint::new(conjugate(u.mat(), w, how)?)
}

/// A primitive map on row vectors (and, where defined, on Albert elements).
#[derive(Clone, Debug)]
pub enum Action {
    Identity,
    /// `u ↦ u W(v)`
    Reflection(ReflectionMatrix),
    /// `u ↦ u M` for a fixed matrix.
    Matrix { label: String, matrix: OctMatrix, int: Option<IntMatrix> },
    /// `u ↦ k((u R_a) R_b)`, right scalar multiplications nested.
    Nested { label: String, a: Octonion, b: Octonion, k: Rational, int: Option<NestedInt> },
    /// The automorphism `i_t ↦ i_{t+1}` on every coordinate.
    Shift,
    /// The automorphism `i_t ↦ i_{2t}` on every coordinate.
    Double,
    /// Apply each action in turn.
    Word(Vec<Action>),
}

impl Action {
    pub fn reflection(v: &OctVec3) -> Result<Self, Error> {
        Ok(Action::Reflection(ReflectionMatrix::new(v)?))
    }

    pub fn matrix(label: impl Into<String>, matrix: OctMatrix) -> Self {
        let int = IntMatrix::from_matrix(&matrix);
        Action::Matrix { label: label.into(), matrix, int }
    }

    pub fn nested(label: impl Into<String>, a: Octonion, b: Octonion, k: Rational) -> Self {
        let int = NestedInt::new(&a, &b, &k);
        Action::Nested { label: label.into(), a, b, k, int }
    }

    pub fn apply_vector(&self, u: &OctVec3) -> OctVec3 {
        match self {
            Action::Identity => u.clone(),
            Action::Reflection(w) => act_vector(u, w),
            Action::Matrix { matrix, .. } => right_mul(u, matrix),
            Action::Nested { a, b, k, .. } => u.map(|x| (&(x * a) * b).scale(k)),
            Action::Shift => u.map(Octonion::shift),
            Action::Double => u.map(Octonion::double),
            Action::Word(ws) => ws.iter().fold(u.clone(), |acc, w| w.apply_vector(&acc)),
        }
    }

    /// Integer evaluation on doubled coordinates. `None` means the image is
    /// not representable (not in `½Z²⁴`); callers fall back to exact rationals
    /// only when [`Action::has_int_path`] is false.
    pub fn apply_leech(&self, u: &LeechVec) -> Option<LeechVec> {
        match self {
            Action::Identity => Some(*u),
            Action::Reflection(w) => match &w.int {
                Some(m) => m.apply(u),
                None => LeechVec::from_oct(&act_vector(&u.to_oct(), w)),
            },
            Action::Matrix { matrix, int, .. } => match int {
                Some(m) => m.apply(u),
                None => LeechVec::from_oct(&right_mul(&u.to_oct(), matrix)),
            },
            Action::Nested { int: Some(n), .. } => n.apply(u),
            Action::Nested { .. } => LeechVec::from_oct(&self.apply_vector(&u.to_oct())),
            Action::Shift => Some(u.permute_slots(&SHIFT_SLOTS)),
            Action::Double => Some(u.permute_slots(&DOUBLE_SLOTS)),
            Action::Word(ws) => ws.iter().try_fold(*u, |acc, w| w.apply_leech(&acc)),
        }
    }

    pub fn has_int_path(&self) -> bool {
        match self {
            Action::Reflection(w) => w.int.is_some(),
            Action::Matrix { int, .. } => int.is_some(),
            Action::Nested { int, .. } => int.is_some(),
            Action::Word(ws) => ws.iter().all(Action::has_int_path),
            _ => true,
        }
    }

    /// The induced map on Albert elements, where one is defined.
    pub fn apply_albert(&self, u: &HermOct3, how: Parenthesization) -> Result<HermOct3, Error> {
        match self {
            Action::Identity => Ok(u.clone()),
            Action::Reflection(w) => {
                if !w.entries_in_complex_subalgebra() {
                    return Err(Error::NotAssociative(format!("W({}) has no common complex subalgebra", w.source)));
                }
                conjugate(u, w, how)
            }
            Action::Shift => Ok(u.shift()),
            Action::Double => Ok(u.double()),
            Action::Word(ws) => ws.iter().try_fold(u.clone(), |acc, w| w.apply_albert(&acc, how)),
            other => Err(Error::InvalidArgument(format!("{other} has no action on the Albert algebra"))),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Identity => write!(f, "identity"),
            Action::Reflection(w) => write!(f, "W({})", w.source),
            Action::Matrix { label, .. } | Action::Nested { label, .. } => f.write_str(label),
            Action::Shift => write!(f, "shift"),
            Action::Double => write!(f, "double"),
            Action::Word(ws) => {
                let parts: Vec<String> = ws.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join(" ; "))
            }
        }
    }
}

/// Slot permutations of the two automorphisms: slot `i` moves to `perm[i]`.
const SHIFT_SLOTS: [usize; 8] = [0, 2, 3, 4, 5, 6, 7, 1];
const DOUBLE_SLOTS: [usize; 8] = [0, 1, 3, 5, 7, 2, 4, 6];

fn unit(t: i64) -> Octonion {
    Octonion::unit(BasisIndex::finite(t))
}

fn real(n: i64) -> Octonion {
    Octonion::real(Rational::from_int(n))
}

/// Wilson's generators of the Leech lattice automorphisms: the nested maps
/// `½((u R_{1−i_0}) R_{1+i_t})`, the diagonal maps `diag(1, i_t, i_t)` and the
/// matrix `−½[[0, s̄, s̄], [s, −1, 1], [s, 1, −1]]`.
pub fn wilson_generators() -> Vec<Action> {
    let mut out = Vec::new();
    let a = &real(1) - &unit(0);
    for t in 0..7 {
        out.push(Action::nested(format!("nested(1-i0, 1+i{t})"), a.clone(), &real(1) + &unit(t), Rational::new(1, 2)));
    }
    for t in 0..7 {
        let z = Octonion::zero();
        let m = [[real(1), z.clone(), z.clone()], [z.clone(), unit(t), z.clone()], [z.clone(), z, unit(t)]];
        out.push(Action::matrix(format!("diag(1, i{t}, i{t})"), m));
    }
    let (s, sb) = (Octonion::s(), Octonion::s_bar());
    let m = [[Octonion::zero(), sb.clone(), sb], [s.clone(), real(-1), real(1)], [s, real(1), real(-1)]];
    let h = Rational::new(-1, 2);
    let m = m.map(|row| row.map(|x| x.scale(&h)));
    out.push(Action::matrix("s-matrix", m));
    out
}

/// The elementary generator sets of the reflection families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyName {
    /// `σ(±2, ∓2, 0)`, a scaled `A₂` root system.
    A2,
    /// `V_∞`, a scaled `A₃` root system.
    Vinf,
    /// `V_t = {σ(±2, ±2 i_t, 0)}` for `t ∈ F₇`.
    V(u8),
    /// The 21 pairs fixed by the shift automorphism.
    S,
}

impl FamilyName {
    /// `V_t` with `t` read mod 7.
    pub fn v(t: i64) -> Self {
        FamilyName::V(t.rem_euclid(7) as u8)
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "A2" => Ok(FamilyName::A2),
            "A3" | "Vinf" => Ok(FamilyName::Vinf),
            "S" => Ok(FamilyName::S),
            _ => match s.strip_prefix('V').and_then(|t| t.parse::<u8>().ok()) {
                Some(t) if t < 7 && s.len() == 2 => Ok(FamilyName::V(t)),
                _ => Err(Error::InvalidArgument(format!(
                    "unknown generator family {s:?} (expected A2, A3, Vinf, S or V0..V6)"
                ))),
            },
        }
    }

    /// Representatives of the opposite pairs in the family.
    pub fn vectors(self) -> Vec<OctVec3> {
        match self {
            FamilyName::A2 => {
                let v = OctVec3::new(real(2), real(-2), Octonion::zero());
                canonical_set(PERMS3.iter().map(|&p| v.permuted(p)))
            }
            FamilyName::Vinf => signed_pair_family(&real(1)),
            FamilyName::V(t) => signed_pair_family(&unit(t as i64)),
            FamilyName::S => s_vectors(),
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyName::A2 => write!(f, "A2"),
            FamilyName::Vinf => write!(f, "Vinf"),
            FamilyName::V(t) => write!(f, "V{t}"),
            FamilyName::S => write!(f, "S"),
        }
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn canonical_set(vs: impl IntoIterator<Item = OctVec3>) -> Vec<OctVec3> {
    let mut out: Vec<OctVec3> = vs.into_iter().map(|v| v.canonical_pair().expect("nonzero")).collect();
    out.sort();
    out.dedup();
    out
}

/// `σ(±2, ±2u, 0)` for all coordinate permutations `σ`.
fn signed_pair_family(u: &Octonion) -> Vec<OctVec3> {
    let two = Rational::from_int(2);
    let mut vs = Vec::new();
    for a in [1, -1] {
        for b in [1, -1] {
            let v = OctVec3::new(real(2 * a), u.scale(&(&two * &Rational::from_int(b))), Octonion::zero());
            vs.extend(PERMS3.iter().map(|&p| v.permuted(p)));
        }
    }
    canonical_set(vs)
}

/// Short vectors of every shape with `λ = ±s` and `j, k = ±1`.
fn s_vectors() -> Vec<OctVec3> {
    let s = Octonion::s();
    let s_bar = Octonion::s_bar();
    let mut vs = Vec::new();
    for lam in [s.clone(), -&s] {
        vs.push(OctVec3::new(lam.scale(&Rational::from_int(2)), Octonion::zero(), Octonion::zero()));
        for j in [real(1), real(-1)] {
            let ls_bar = &lam * &s_bar;
            vs.push(OctVec3::new(ls_bar.clone(), &ls_bar * &j, Octonion::zero()));
            for k in [real(1), real(-1)] {
                vs.push(OctVec3::new(&(&lam * &s) * &j, &lam * &k, &(&lam * &j) * &k));
            }
        }
    }
    canonical_set(vs.into_iter().flat_map(|v| PERMS3.map(|p| v.permuted(p))))
}

/// A union of elementary families, e.g. `S,V0,V1,V3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFamily {
    names: Vec<FamilyName>,
    vectors: Vec<OctVec3>,
}

impl GeneratorFamily {
    pub fn new(names: &[FamilyName]) -> Self {
        let mut uniq: Vec<FamilyName> = Vec::new();
        for &n in names {
            if !uniq.contains(&n) {
                uniq.push(n);
            }
        }
        let vectors = canonical_set(uniq.iter().flat_map(|n| n.vectors()));
        GeneratorFamily { names: uniq, vectors }
    }

    /// Parses a comma-separated list of family names.
    pub fn parse(spec: &str) -> Result<Self, Error> {
        let names = spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(FamilyName::parse)
            .collect::<Result<Vec<_>, _>>()?;
        if names.is_empty() {
            return Err(Error::InvalidArgument("empty generator family".into()));
        }
        Ok(Self::new(&names))
    }

    pub fn names(&self) -> &[FamilyName] {
        &self.names
    }

    /// One canonical vector per opposite pair, sorted.
    pub fn vectors(&self) -> &[OctVec3] {
        &self.vectors
    }

    /// Reflections, one per pair (`W(v) = W(−v)`).
    pub fn actions(&self) -> Result<Vec<Action>, Error> {
        self.vectors.iter().map(Action::reflection).collect()
    }

    /// The points `U(v) = v†v/(v v†)` of all vectors in the family.
    pub fn plane_points(&self) -> Result<Vec<PlanePoint>, Error> {
        self.vectors.iter().map(crate::albert::point_from_vector).collect()
    }
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.names.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn generator_family(spec: &str) -> Result<GeneratorFamily, Error> {
    GeneratorFamily::parse(spec)
}

/// Indices of the pairs mapped to themselves by the shift automorphism.
pub fn fixed_pairs_under_shift(pairs: &PairSet) -> Vec<usize> {
    (0..pairs.len())
        .filter(|&i| {
            let v = pairs.rep(i);
            v.permute_slots(&SHIFT_SLOTS).canonical() == *v
        })
        .collect()
}

fn closure_error(action: &Action, witness: &LeechVec, what: &str) -> Error {
    Error::Closure(format!("{action} maps {} {what}", witness.to_oct()))
}

/// The permutation of the pair set induced by `action`.
pub fn pair_permutation(action: &Action, pairs: &PairSet) -> Result<Permutation, Error> {
    let images: Vec<Option<u32>> = pairs
        .reps()
        .par_iter()
        .map(|v| action.apply_leech(v).and_then(|w| pairs.lookup(&w)).map(|i| i as u32))
        .collect();
    let mut out = Vec::with_capacity(images.len());
    for (i, img) in images.into_iter().enumerate() {
        match img {
            Some(j) => out.push(j),
            None => return Err(closure_error(action, pairs.rep(i), "outside the pair set")),
        }
    }
    Permutation::from_images(out).map_err(|e| Error::Closure(format!("{action} is not injective on pairs: {e}")))
}

/// Checks that `action` maps the full short-vector set bijectively to itself.
pub fn check_closure(action: &Action, sv: &ShortVectors) -> Result<(), Error> {
    let images: Vec<Option<usize>> =
        sv.vectors().par_iter().map(|v| action.apply_leech(&v.vec).and_then(|w| sv.position(&w))).collect();
    let mut hit = vec![false; sv.len()];
    for (i, img) in images.into_iter().enumerate() {
        let v = &sv.vectors()[i].vec;
        match img {
            None => return Err(closure_error(action, v, "outside the short vectors")),
            Some(j) if std::mem::replace(&mut hit[j], true) => {
                return Err(closure_error(action, v, "onto an already hit short vector"))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// A deterministic test set for groups acting linearly on the pair set: 24
/// pairs spanning `R²⁴`, plus pairs whose coordinates in that basis link all
/// basis vectors together. A linear map fixing each of these pairs is `±I`,
/// so it fixes every pair.
pub fn pair_frame(pairs: &PairSet) -> Vec<usize> {
    let to_row = |v: &LeechVec| v.0.iter().map(|&x| Rational::from_int(x as i64)).collect::<Vec<_>>();
    let mut ech = Echelon::new(24);
    let mut basis = Vec::new();
    for (i, v) in pairs.reps().iter().enumerate() {
        if ech.insert(to_row(v)) {
            basis.push(i);
            if basis.len() == 24 {
                break;
            }
        }
    }
    assert_eq!(basis.len(), 24, "pairs do not span R^24");
    let rows: Vec<Vec<Rational>> = basis.iter().map(|&i| to_row(pairs.rep(i))).collect();
    let inv = invert(&rows).expect("independent rows");
    let mut parent: Vec<usize> = (0..24).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut components = 24;
    let mut frame = basis.clone();
    for (i, v) in pairs.reps().iter().enumerate() {
        if components == 1 {
            break;
        }
        if basis.contains(&i) {
            continue;
        }
        let coords = vec_mul(&to_row(v), &inv);
        let support: Vec<usize> = (0..24).filter(|&k| !coords[k].is_zero()).collect();
        let roots: Vec<usize> = support.iter().map(|&k| find(&mut parent, k)).collect();
        let first = roots[0];
        if roots.iter().all(|&r| r == first) {
            continue;
        }
        for &r in &roots {
            let (a, b) = (find(&mut parent, first), find(&mut parent, r));
            if a != b {
                parent[b] = a;
                components -= 1;
            }
        }
        frame.push(i);
    }
    frame
}

/// A finite set of plane points closed under a list of actions, with the
/// permutation each action induces.
#[derive(Clone, Debug)]
pub struct PlaneOrbit {
    points: Vec<PlanePoint>,
    perms: Vec<Permutation>,
}

impl PlaneOrbit {
    /// Closes `seeds` under `actions` (breadth first, deterministic order).
    /// Fails if an image is not a point or more than `limit` points appear.
    pub fn generate(actions: &[Action], seeds: &[PlanePoint], how: Parenthesization, limit: usize) -> Result<Self, Error> {
        let mut points: Vec<PlanePoint> = Vec::new();
        let mut index: FxHashMap<HermOct3, u32> = FxHashMap::default();
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); actions.len()];
        let mut queue = VecDeque::new();
        for p in seeds {
            if !index.contains_key(p.mat()) {
                index.insert(p.mat().clone(), points.len() as u32);
                queue.push_back(points.len());
                points.push(p.clone());
            }
        }
        while let Some(i) = queue.pop_front() {
            let src = points[i].mat().clone();
            let imgs: Vec<Result<HermOct3, Error>> =
                actions.par_iter().map(|a| a.apply_albert(&src, how).and_then(|x| normalize_fast(&x))).collect();
            for (k, img) in imgs.into_iter().enumerate() {
                let img = img?;
                let j = match index.get(&img) {
                    Some(&j) => j,
                    None => {
                        if points.len() >= limit {
                            return Err(Error::Closure(format!("orbit exceeds {limit} points")));
                        }
                        let j = points.len() as u32;
                        index.insert(img.clone(), j);
                        queue.push_back(points.len());
                        points.push(PlanePoint::new_unchecked(img));
                        j
                    }
                };
                if images[k].len() <= i {
                    images[k].resize(i + 1, u32::MAX);
                }
                images[k][i] = j;
            }
        }
        let perms = images
            .into_iter()
            .map(|mut v| {
                v.resize(points.len(), u32::MAX);
                Permutation::from_images(v).map_err(|e| Error::Closure(format!("action is not a bijection of the orbit: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PlaneOrbit { points, perms })
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The permutation induced by the `k`-th action.
    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    /// Checks every point is a primitive idempotent.
    pub fn validate(&self) -> Result<(), Error> {
        match self.points.par_iter().find_first(|p| !crate::albert::is_primitive_idempotent(p.mat())) {
            Some(p) => Err(Error::Validation(format!("orbit element is not a primitive idempotent: {p}"))),
            None => Ok(()),
        }
    }
}

/// Rescales to trace 1 without re-testing idempotence.
fn normalize_fast(x: &HermOct3) -> Result<HermOct3, Error> {
    let t = trace(x);
    if t == Rational::ONE {
        return Ok(x.clone());
    }
    let inv = t.recip().ok_or_else(|| Error::Degenerate(format!("image has trace 0: {x}")))?;
    Ok(x.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::{inner, is_primitive_idempotent, point_from_vector};
    use crate::lattice::leech::leech_norm;
    use crate::permgroup::orbit;
    use crate::rational::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v3(a: Octonion, b: Octonion, c: Octonion) -> OctVec3 {
        OctVec3::new(a, b, c)
    }

    fn all_generators() -> GeneratorFamily {
        GeneratorFamily::parse("S,Vinf,V0,V1,V2,V3,V4,V5,V6").unwrap()
    }

    #[test]
    fn reflection_examples() {
        let w = reflection_matrix(&v3(real(2), real(-2), Octonion::zero())).unwrap();
        let z = Octonion::zero();
        let swap = [[z.clone(), real(1), z.clone()], [real(1), z.clone(), z.clone()], [z.clone(), z, real(1)]];
        assert_eq!(*w.matrix(), swap);
        let w = reflection_matrix(&v3(real(1), Octonion::zero(), Octonion::zero())).unwrap();
        assert_eq!(*w.mat(), HermOct3::diagonal([q(-1, 1), q(1, 1), q(1, 1)]));
        assert!(matches!(reflection_matrix(&OctVec3::zero()), Err(Error::ZeroVector)));
        assert!(matches!(reflection_matrix(&v3(unit(0), unit(1), unit(2))), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn swap_reflection_permutes_components() {
        let w = reflection_matrix(&v3(real(2), real(-2), Octonion::zero())).unwrap();
        let u = v3(Octonion::s(), unit(3), &real(1) + &unit(5));
        assert_eq!(act_vector(&u, &w), v3(unit(3), Octonion::s(), &real(1) + &unit(5)));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(FamilyName::A2.vectors().len(), 3);
        assert_eq!(FamilyName::Vinf.vectors().len(), 6);
        for t in 0..7 {
            assert_eq!(FamilyName::V(t).vectors().len(), 12);
        }
        assert_eq!(FamilyName::S.vectors().len(), 21);
        assert_eq!(GeneratorFamily::parse("A3").unwrap(), GeneratorFamily::parse("Vinf").unwrap());
        assert_eq!(GeneratorFamily::parse("S,V0,V1,V3").unwrap().vectors().len(), 21 + 36);
        assert_eq!(all_generators().vectors().len(), 21 + 7 * 12);
        assert_eq!(FamilyName::v(7), FamilyName::V(0));
        assert!(GeneratorFamily::parse("V7").is_err());
        assert!(GeneratorFamily::parse("").is_err());
        assert!(GeneratorFamily::parse("S,Q").is_err());
    }

    #[test]
    fn vinf_lies_in_s() {
        let s = FamilyName::S.vectors();
        assert!(FamilyName::Vinf.vectors().iter().all(|v| s.contains(v)));
        assert!(FamilyName::A2.vectors().iter().all(|v| s.contains(v)));
    }

    #[test]
    fn family_vectors_are_short_with_complex_components() {
        let sv = ShortVectors::shared();
        let four = Rational::from_int(4);
        for v in all_generators().vectors() {
            assert_eq!(leech_norm(v), four);
            assert!(sv.contains(&LeechVec::from_oct(v).unwrap()));
            assert!(common_complex_subalgebra(&v.0).is_some(), "{v}");
        }
    }

    #[test]
    fn shift_fixed_pairs_are_s() {
        let pairs = PairSet::shared();
        let fixed = fixed_pairs_under_shift(pairs);
        assert_eq!(fixed.len(), 21);
        let mut from_scan: Vec<OctVec3> = fixed.iter().map(|&i| pairs.rep(i).to_oct()).collect();
        from_scan.sort();
        assert_eq!(from_scan, FamilyName::S.vectors());
        let mut shapes = [0; 3];
        for &i in &fixed {
            shapes[pairs.shape(i).unwrap().index()] += 1;
        }
        assert_eq!(shapes, [3, 6, 12]);
        let dir = Octonion::from_ints([0, 1, 1, 1, 1, 1, 1, 1], 1);
        for v in &from_scan {
            for c in &v.0 {
                let im = c.imag();
                assert!(im.is_zero() || im == dir.scale(&im.c[1]), "{c}");
            }
        }
    }

    #[test]
    fn reflections_are_involutions_with_integral_quarter_form() {
        for v in all_generators().vectors() {
            let w = reflection_matrix(v).unwrap();
            assert!(w.is_involution());
            assert!(w.entries_in_complex_subalgebra());
            assert!(w.int_matrix().is_some_and(|m| m.scale <= 4));
        }
    }

    #[test]
    fn integer_and_rational_paths_agree() {
        let sv = ShortVectors::shared();
        let mut actions = all_generators().actions().unwrap();
        actions.extend(wilson_generators());
        actions.push(Action::Shift);
        actions.push(Action::Double);
        for a in &actions {
            for v in sv.vectors().iter().step_by(4999) {
                let exact = a.apply_vector(&v.vec.to_oct());
                assert_eq!(a.apply_leech(&v.vec).map(|w| w.to_oct()), Some(exact), "{a}");
            }
        }
    }

    #[test]
    fn generator_reflections_preserve_short_vectors() {
        let sv = ShortVectors::shared();
        for a in all_generators().actions().unwrap() {
            check_closure(&a, sv).unwrap();
        }
    }

    #[test]
    fn wilson_maps_preserve_short_vectors() {
        let sv = ShortVectors::shared();
        for a in wilson_generators() {
            check_closure(&a, sv).unwrap();
        }
    }

    #[test]
    fn closure_failure_has_witness() {
        let sv = ShortVectors::shared();
        let bad = Action::reflection(&v3(real(1), Octonion::zero(), Octonion::zero())).unwrap();
        assert!(check_closure(&bad, sv).is_ok());
        let bad = Action::reflection(&v3(real(2), real(1), Octonion::zero())).unwrap();
        match check_closure(&bad, sv) {
            Err(Error::Closure(msg)) => assert!(msg.contains("maps")),
            other => panic!("expected closure failure, got {other:?}"),
        }
    }

    #[test]
    fn induced_pair_permutations() {
        let pairs = PairSet::shared();
        let w = Action::reflection(&v3(real(2), real(-2), Octonion::zero())).unwrap();
        let p = pair_permutation(&w, pairs).unwrap();
        assert_eq!(p.order(), 2u32.into());
        let shift = pair_permutation(&Action::Shift, pairs).unwrap();
        assert_eq!(shift.order(), 7u32.into());
        assert_eq!(shift.fixed_points(), 21);
        assert!(pair_permutation(&Action::Identity, pairs).unwrap().is_identity());
        for a in FamilyName::S.vectors().iter().map(|v| Action::reflection(v).unwrap()) {
            assert!(pair_permutation(&a, pairs).unwrap().commutes_with(&shift));
        }
    }

    #[test]
    fn nesting_differs_from_matrix_product() {
        let sv = ShortVectors::shared();
        let v1 = &FamilyName::V(1).vectors()[0];
        let v2 = &FamilyName::V(2).vectors()[0];
        let (w1, w2) = (reflection_matrix(v1).unwrap(), reflection_matrix(v2).unwrap());
        let product = mat_mul(w1.matrix(), w2.matrix());
        let differs = sv.iter().any(|v| {
            let u = v.vec.to_oct();
            act_vector(&act_vector(&u, &w1), &w2) != right_mul(&u, &product)
        });
        assert!(differs);
    }

    #[test]
    fn frame_determines_linear_actions() {
        let pairs = PairSet::shared();
        let frame = pair_frame(pairs);
        assert!(frame.len() > 24 && frame.len() < 48);
        // a nontrivial generator moves some frame pair
        for a in all_generators().actions().unwrap() {
            let p = pair_permutation(&a, pairs).unwrap();
            assert!(frame.iter().any(|&i| p.apply(i) != i), "{a}");
        }
    }

    #[test]
    fn reflection_fixes_its_own_point() {
        for v in all_generators().vectors() {
            let u = point_from_vector(v).unwrap();
            let w = reflection_matrix(v).unwrap();
            assert_eq!(act_albert(&u, &w).unwrap(), u);
        }
    }

    #[test]
    fn albert_action_matches_vector_action_on_complex_vectors() {
        // vectors with all components in C(i_t) ∪ R
        for t in 0..7u8 {
            let fam = GeneratorFamily::new(&[FamilyName::V(t), FamilyName::Vinf]);
            for u in fam.vectors() {
                let pu = point_from_vector(u).unwrap();
                for v in fam.vectors() {
                    let w = reflection_matrix(v).unwrap();
                    let moved = point_from_vector(&act_vector(u, &w)).unwrap();
                    assert_eq!(act_albert(&pu, &w).unwrap(), moved);
                }
            }
        }
    }

    #[test]
    fn albert_action_parenthesizations_agree_and_preserve_inner() {
        let fam = all_generators();
        let actions = fam.actions().unwrap();
        let pts = fam.plane_points().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for a in &actions {
            let Action::Reflection(w) = a else { unreachable!() };
            for _ in 0..4 {
                let x = &pts[rng.gen_range(0..pts.len())];
                let y = &pts[rng.gen_range(0..pts.len())];
                let r = act_albert_with(x, w, Parenthesization::Right).unwrap();
                let l = act_albert_with(x, w, Parenthesization::Left).unwrap();
                assert_eq!(r, l);
                assert!(is_primitive_idempotent(r.mat()));
                let ry = act_albert(y, w).unwrap();
                assert_eq!(inner(r.mat(), ry.mat()), inner(x.mat(), y.mat()));
            }
        }
    }

    #[test]
    fn small_plane_orbits() {
        let fam = GeneratorFamily::parse("Vinf").unwrap();
        let orb = PlaneOrbit::generate(&fam.actions().unwrap(), &fam.plane_points().unwrap(), Parenthesization::Right, 10_000)
            .unwrap();
        assert_eq!(orb.len(), 6);
        orb.validate().unwrap();
        let fam = GeneratorFamily::parse("S").unwrap();
        let orb = PlaneOrbit::generate(&fam.actions().unwrap(), &fam.plane_points().unwrap(), Parenthesization::Right, 10_000)
            .unwrap();
        assert_eq!(orb.len(), 21);
        assert_eq!(orbit(orb.permutations(), 0).len(), 21);
        let seed = &fam.plane_points().unwrap()[..1];
        let tiny = PlaneOrbit::generate(&fam.actions().unwrap(), seed, Parenthesization::Right, 5);
        assert!(matches!(tiny, Err(Error::Closure(_))));
    }

    #[test]
    fn nonassociative_reflection_has_no_albert_action() {
        // components 1, i_0, i_1 lie in a quaternion but not a complex subalgebra
        let v = v3(real(1), unit(0), unit(1));
        let w = reflection_matrix(&v).unwrap();
        assert!(!w.entries_in_complex_subalgebra());
        let p = PlanePoint::new(HermOct3::unit(0)).unwrap();
        assert!(matches!(act_albert(&p, &w), Err(Error::NotAssociative(_))));
    }
}
