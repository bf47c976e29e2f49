//! Wilson's octonionic Leech lattice in `O³` and its 196560 short vectors.
//!
//! A vector `(x, y, z)` is in the lattice when
//! `x, y, z ∈ L`, `x+y, y+z, x+z ∈ L s̄` and `x+y+z ∈ L s`; its norm is
//! `½(N(x) + N(y) + N(z))`.
//!
//! Short vectors are stored as [`LeechVec`], twice their 24 real coordinates
//! in `i8` (every short-vector coordinate lies in `½Z`). The 24 coordinates
//! are ordered `x` then `y` then `z`, each in basis order `∞, 0, …, 6`.

use std::collections::hash_map::Entry;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::OnceLock;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::OctLattice;
use crate::octonion::{common_complex_subalgebra, BasisIndex, Octonion};
use crate::rational::Rational;
use crate::Error;

/// A row vector `(x, y, z)` of octonions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OctVec3(pub [Octonion; 3]);

impl OctVec3 {
    pub fn new(x: Octonion, y: Octonion, z: Octonion) -> Self {
        OctVec3([x, y, z])
    }

    pub fn zero() -> Self {
        OctVec3(Default::default())
    }

    pub fn x(&self) -> &Octonion {
        &self.0[0]
    }

    pub fn y(&self) -> &Octonion {
        &self.0[1]
    }

    pub fn z(&self) -> &Octonion {
        &self.0[2]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Octonion::is_zero)
    }

    /// The 24 real coordinates in storage order.
    pub fn coords(&self) -> Vec<Rational> {
        self.0.iter().flat_map(|o| o.c.iter().cloned()).collect()
    }

    pub fn from_coords(c: &[Rational]) -> Self {
        assert_eq!(c.len(), 24, "need 24 coordinates");
        OctVec3(std::array::from_fn(|k| {
            Octonion::new(std::array::from_fn(|i| c[8 * k + i].clone()))
        }))
    }

    pub fn neg(&self) -> Self {
        OctVec3(std::array::from_fn(|k| -&self.0[k]))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        OctVec3(std::array::from_fn(|i| self.0[i].scale(k)))
    }

    /// `(v[p[0]], v[p[1]], v[p[2]])`.
    pub fn permuted(&self, p: [usize; 3]) -> Self {
        OctVec3(std::array::from_fn(|k| self.0[p[k]].clone()))
    }

    /// Applies an octonion map to each component.
    pub fn map(&self, f: impl Fn(&Octonion) -> Octonion) -> Self {
        OctVec3(std::array::from_fn(|k| f(&self.0[k])))
    }

    /// `v v† = N(x) + N(y) + N(z)`.
    pub fn hermitian_square(&self) -> Rational {
        self.0.iter().map(Octonion::norm).sum()
    }

    /// Euclidean dot product of the 24 real coordinates.
    pub fn dot(&self, o: &OctVec3) -> Rational {
        self.0.iter().zip(&o.0).map(|(a, b)| a.dot(b)).sum()
    }

    /// Returns `v` or `−v`, whichever has a positive first nonzero coordinate.
    pub fn canonical_pair(&self) -> Result<OctVec3, Error> {
        match self.coords().iter().find(|x| !x.is_zero()) {
            None => Err(Error::ZeroVector),
            Some(first) if first.signum() > 0 => Ok(self.clone()),
            Some(_) => Ok(self.neg()),
        }
    }
}

impl fmt::Display for OctVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

/// The Leech norm `½(x x̄ + y ȳ + z z̄)`.
pub fn leech_norm(v: &OctVec3) -> Rational {
    v.hermitian_square() * Rational::new(1, 2)
}

/// Spec-facing alias for [`OctVec3::canonical_pair`].
pub fn canonical_pair(v: &OctVec3) -> Result<OctVec3, Error> {
    v.canonical_pair()
}

/// Outcome of each defining condition, for diagnosing non-members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeechConditions {
    /// `x, y, z ∈ L`
    pub components: [bool; 3],
    /// `x+y, y+z, x+z ∈ L s̄`
    pub pair_sums: [bool; 3],
    /// `x+y+z ∈ L s`
    pub triple_sum: bool,
}

impl LeechConditions {
    pub fn all(&self) -> bool {
        self.components.iter().all(|&b| b) && self.pair_sums.iter().all(|&b| b) && self.triple_sum
    }
}

/// Membership oracle for Wilson's Leech lattice.
#[derive(Clone, Debug)]
pub struct LeechLattice {
    left: OctLattice,
    s_inv: Octonion,
    s_bar_inv: Octonion,
}

impl Default for LeechLattice {
    fn default() -> Self {
        Self::new()
    }
}

impl LeechLattice {
    pub fn new() -> Self {
        LeechLattice {
            left: OctLattice::left(),
            s_inv: Octonion::s().inverse().expect("s invertible"),
            s_bar_inv: Octonion::s_bar().inverse().expect("s̄ invertible"),
        }
    }

    /// Process-wide shared instance.
    pub fn shared() -> &'static LeechLattice {
        static CELL: OnceLock<LeechLattice> = OnceLock::new();
        CELL.get_or_init(LeechLattice::new)
    }

    pub fn left(&self) -> &OctLattice {
        &self.left
    }

    fn in_left_times(&self, inv: &Octonion, v: &Octonion) -> bool {
        self.left.contains(&(v * inv))
    }

    /// Evaluates every defining condition.
    pub fn conditions(&self, v: &OctVec3) -> LeechConditions {
        let [x, y, z] = &v.0;
        LeechConditions {
            components: [self.left.contains(x), self.left.contains(y), self.left.contains(z)],
            pair_sums: [
                self.in_left_times(&self.s_bar_inv, &(x + y)),
                self.in_left_times(&self.s_bar_inv, &(y + z)),
                self.in_left_times(&self.s_bar_inv, &(x + z)),
            ],
            triple_sum: self.in_left_times(&self.s_inv, &(&(x + y) + z)),
        }
    }

    pub fn contains(&self, v: &OctVec3) -> bool {
        let [x, y, z] = &v.0;
        self.left.contains(x)
            && self.left.contains(y)
            && self.left.contains(z)
            && self.in_left_times(&self.s_bar_inv, &(x + y))
            && self.in_left_times(&self.s_bar_inv, &(y + z))
            && self.in_left_times(&self.s_bar_inv, &(x + z))
            && self.in_left_times(&self.s_inv, &(&(x + y) + z))
    }
}

/// Membership in Wilson's Leech lattice.
pub fn leech_contains(v: &OctVec3) -> bool {
    LeechLattice::shared().contains(v)
}

/// Twice the 24 real coordinates of a Leech vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeechVec(pub [i8; 24]);

impl LeechVec {
    pub const ZERO: LeechVec = LeechVec([0; 24]);

    /// `None` unless every coordinate lies in `½Z` and fits the encoding.
    pub fn from_oct(v: &OctVec3) -> Option<Self> {
        let mut out = [0i8; 24];
        for (k, o) in v.0.iter().enumerate() {
            let c = o.to_scaled_ints(2)?;
            for (dst, x) in out[8 * k..8 * k + 8].iter_mut().zip(c) {
                *dst = i8::try_from(x).ok()?;
            }
        }
        Some(LeechVec(out))
    }

    /// From doubled integer coordinates, if they fit.
    pub fn from_doubled(c: &[i64; 24]) -> Option<Self> {
        let mut out = [0i8; 24];
        for (d, &x) in out.iter_mut().zip(c) {
            *d = i8::try_from(x).ok()?;
        }
        Some(LeechVec(out))
    }

    pub fn to_oct(&self) -> OctVec3 {
        OctVec3(std::array::from_fn(|k| {
            Octonion::from_ints(std::array::from_fn(|i| self.0[8 * k + i] as i64), 2)
        }))
    }

    /// Component `k` with doubled integer coefficients.
    pub fn component(&self, k: usize) -> Octonion<i32> {
        Octonion::new(std::array::from_fn(|i| self.0[8 * k + i] as i32))
    }

    pub fn neg(&self) -> Self {
        LeechVec(self.0.map(|x| -x))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    /// The representative of `±self` with positive first nonzero coordinate.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            *self
        } else {
            self.neg()
        }
    }

    /// Dot product of doubled coordinates (four times the real dot product).
    pub fn dot(&self, o: &LeechVec) -> i32 {
        self.0.iter().zip(&o.0).map(|(&a, &b)| a as i32 * b as i32).sum()
    }

    /// Applies an octonion automorphism given as a slot permutation to each
    /// component: coefficient in slot `i` moves to slot `perm[i]`.
    pub fn permute_slots(&self, perm: &[usize; 8]) -> Self {
        let mut out = [0i8; 24];
        for k in 0..3 {
            for i in 0..8 {
                out[8 * k + perm[i]] = self.0[8 * k + i];
            }
        }
        LeechVec(out)
    }
}

impl fmt::Debug for LeechVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeechVec({})", self.to_oct())
    }
}

/// The three short-vector shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// `(2λ, 0, 0)`
    Scaled,
    /// `(λs̄, (λs̄)j, 0)`
    Paired,
    /// `((λs)j, λk, (λj)k)`
    Triple,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Scaled, Shape::Paired, Shape::Triple];

    pub fn index(self) -> usize {
        match self {
            Shape::Scaled => 0,
            Shape::Paired => 1,
            Shape::Triple => 2,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Shape::Scaled => "s1",
            Shape::Paired => "s2",
            Shape::Triple => "s3",
        }
    }

    pub fn from_tag(s: &str) -> Option<Shape> {
        Shape::ALL.into_iter().find(|sh| sh.tag() == s)
    }
}

/// A norm-4 Leech vector tagged with its shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShortVector {
    pub vec: LeechVec,
    pub shape: Shape,
}

impl ShortVector {
    pub fn is_canonical(&self) -> bool {
        self.vec.is_canonical()
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The sixteen units `±i_t`, `t ∈ PL(7)`.
pub fn signed_units() -> Vec<Octonion> {
    BasisIndex::ALL
        .iter()
        .flat_map(|&b| {
            let u = Octonion::unit(b);
            [u.clone(), -u]
        })
        .collect()
}

/// The 196560 short vectors, sorted, with an index for lookups.
#[derive(Clone, Debug)]
pub struct ShortVectors {
    vectors: Vec<ShortVector>,
    index: FxHashMap<LeechVec, u32>,
    overlaps: usize,
}

impl ShortVectors {
    /// Expands the three shapes over all roots `λ ∈ L` and units `j, k`,
    /// under all coordinate permutations, and deduplicates.
    pub fn enumerate() -> Self {
        let left = OctLattice::left();
        let roots = left.roots().expect("L has roots").to_vec();
        let units = signed_units();
        let s = Octonion::s();
        let s_bar = Octonion::s_bar();
        let two = Rational::from_int(2);
        let zero = Octonion::zero();

        let per_root: Vec<Vec<(OctVec3, Shape)>> = roots
            .par_iter()
            .map(|lam| {
                let mut out = Vec::with_capacity(1 + units.len() * (1 + units.len()));
                out.push((OctVec3::new(lam.scale(&two), zero.clone(), zero.clone()), Shape::Scaled));
                let ls_bar = lam * &s_bar;
                for j in &units {
                    out.push((OctVec3::new(ls_bar.clone(), &ls_bar * j, zero.clone()), Shape::Paired));
                }
                let ls = lam * &s;
                for j in &units {
                    let first = &ls * j;
                    let lj = lam * j;
                    for k in &units {
                        out.push((OctVec3::new(first.clone(), lam * k, &lj * k), Shape::Triple));
                    }
                }
                out
            })
            .collect();

        let mut map: FxHashMap<LeechVec, Shape> = FxHashMap::default();
        let mut overlaps = 0;
        for (v, shape) in per_root.into_iter().flatten() {
            for p in PERMS3 {
                let lv = LeechVec::from_oct(&v.permuted(p)).expect("half-integral coordinates");
                match map.entry(lv) {
                    Entry::Vacant(e) => {
                        e.insert(shape);
                    }
                    Entry::Occupied(e) => {
                        if *e.get() != shape {
                            overlaps += 1;
                        }
                    }
                }
            }
        }
        let mut vectors: Vec<ShortVector> = map.into_iter().map(|(vec, shape)| ShortVector { vec, shape }).collect();
        vectors.sort_by_key(|v| v.vec);
        Self::from_sorted(vectors, overlaps)
    }

    fn from_sorted(vectors: Vec<ShortVector>, overlaps: usize) -> Self {
        let index = vectors.iter().enumerate().map(|(i, v)| (v.vec, i as u32)).collect();
        ShortVectors { vectors, index, overlaps }
    }

    /// Process-wide shared enumeration.
    pub fn shared() -> &'static ShortVectors {
        static CELL: OnceLock<ShortVectors> = OnceLock::new();
        CELL.get_or_init(ShortVectors::enumerate)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[ShortVector] {
        &self.vectors
    }

    pub fn iter(&self) -> impl Iterator<Item = &ShortVector> {
        self.vectors.iter()
    }

    pub fn position(&self, v: &LeechVec) -> Option<usize> {
        self.index.get(v).map(|&i| i as usize)
    }

    pub fn contains(&self, v: &LeechVec) -> bool {
        self.index.contains_key(v)
    }

    /// Vectors generated under two different shapes (expected 0).
    pub fn shape_overlaps(&self) -> usize {
        self.overlaps
    }

    /// Deduplicated counts per shape, in shape order.
    pub fn shape_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for v in &self.vectors {
            c[v.shape.index()] += 1;
        }
        c
    }

    /// Re-checks membership and norm for every vector with exact rational
    /// arithmetic, returning the first failure.
    pub fn validate(&self, lattice: &LeechLattice) -> Result<(), Error> {
        let four = Rational::from_int(4);
        let bad = self.vectors.par_iter().find_first(|v| {
            let o = v.vec.to_oct();
            leech_norm(&o) != four || !lattice.contains(&o)
        });
        match bad {
            Some(v) => Err(Error::Validation(format!("short vector fails lattice conditions: {}", v.vec.to_oct()))),
            None => Ok(()),
        }
    }

    /// One canonical representative per opposite pair.
    pub fn pairs(&self) -> PairSet {
        let reps: Vec<(LeechVec, Shape)> =
            self.vectors.iter().filter(|v| v.is_canonical()).map(|v| (v.vec, v.shape)).collect();
        PairSet::from_sorted(reps)
    }

    /// Vectors whose three components lie in one complex subalgebra.
    pub fn in_common_complex_subalgebra(&self) -> Vec<LeechVec> {
        self.vectors
            .par_iter()
            .filter(|v| common_complex_subalgebra(&v.vec.to_oct().0).is_some())
            .map(|v| v.vec)
            .collect()
    }

    /// Writes one vector per line (24 rationals), optionally followed by the
    /// shape tag `s1`/`s2`/`s3`; rows are in sorted order.
    pub fn write_dump<W: Write>(&self, mut w: W, with_shape: bool) -> std::io::Result<()> {
        for v in &self.vectors {
            write!(w, "{}", v.vec.to_oct())?;
            if with_shape {
                write!(w, " {}", v.shape.tag())?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Reads a dump written by [`ShortVectors::write_dump`]. Rows without a
    /// shape tag yield `None` in the second field.
    pub fn read_dump<R: BufRead>(r: R) -> Result<Vec<(OctVec3, Option<Shape>)>, Error> {
        let mut out = Vec::new();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let (nums, shape) = match toks.len() {
                24 => (&toks[..], None),
                25 => {
                    let sh = Shape::from_tag(toks[24])
                        .ok_or_else(|| Error::Parse(format!("line {}: bad shape tag {:?}", n + 1, toks[24])))?;
                    (&toks[..24], Some(sh))
                }
                k => return Err(Error::Parse(format!("line {}: expected 24 or 25 fields, got {k}", n + 1))),
            };
            let coords = nums.iter().map(|t| t.parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
            out.push((OctVec3::from_coords(&coords), shape));
        }
        Ok(out)
    }
}

/// The 98280 opposite pairs, each represented by its canonical vector.
#[derive(Clone, Debug)]
pub struct PairSet {
    reps: Vec<LeechVec>,
    shapes: Vec<Option<Shape>>,
    index: FxHashMap<LeechVec, u32>,
}

impl PairSet {
    fn from_sorted(reps: Vec<(LeechVec, Shape)>) -> Self {
        let index = reps.iter().enumerate().map(|(i, (v, _))| (*v, i as u32)).collect();
        let (reps, shapes) = reps.into_iter().map(|(v, sh)| (v, Some(sh))).unzip();
        PairSet { reps, shapes, index }
    }

    /// Pairs of an arbitrary set of nonzero vectors (sorted, deduplicated).
    pub fn from_vectors(vs: impl IntoIterator<Item = LeechVec>) -> Self {
        let mut reps: Vec<LeechVec> = vs.into_iter().filter(|v| !v.is_zero()).map(|v| v.canonical()).collect();
        reps.sort();
        reps.dedup();
        let shapes = vec![None; reps.len()];
        let index = reps.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        PairSet { reps, shapes, index }
    }

    /// Process-wide pairs of [`ShortVectors::shared`].
    pub fn shared() -> &'static PairSet {
        static CELL: OnceLock<PairSet> = OnceLock::new();
        CELL.get_or_init(|| ShortVectors::shared().pairs())
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> &LeechVec {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[LeechVec] {
        &self.reps
    }

    /// The table row of pair `i`, when built from the enumeration.
    pub fn shape(&self, i: usize) -> Option<Shape> {
        self.shapes[i]
    }

    /// Index of the pair `±v`.
    pub fn lookup(&self, v: &LeechVec) -> Option<usize> {
        self.index.get(&v.canonical()).map(|&i| i as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn r(n: i64) -> Octonion {
        Octonion::real(Rational::from_int(n))
    }

    #[test]
    fn membership_examples() {
        assert!(leech_contains(&OctVec3::zero()));
        assert!(leech_contains(&OctVec3::new(r(2), r(-2), Octonion::zero())));
        assert!(!leech_contains(&OctVec3::new(r(1), Octonion::zero(), Octonion::zero())));
        let c = LeechLattice::shared().conditions(&OctVec3::new(r(1), Octonion::zero(), Octonion::zero()));
        assert!(!c.components[0]);
        assert!(!c.all());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(leech_norm(&OctVec3::new(r(2), r(-2), Octonion::zero())), q(4, 1));
        assert_eq!(leech_norm(&OctVec3::zero()), Rational::ZERO);
        let lam = &Octonion::one() + &Octonion::unit(BasisIndex::Finite(0));
        let v = OctVec3::new(lam.scale(&q(2, 1)), Octonion::zero(), Octonion::zero());
        assert_eq!(leech_norm(&v), q(4, 1));
        assert!(leech_contains(&v));
    }

    #[test]
    fn canonical_pair_examples() {
        let v = OctVec3::new(r(-2), r(2), Octonion::zero());
        assert_eq!(canonical_pair(&v).unwrap(), OctVec3::new(r(2), r(-2), Octonion::zero()));
        assert!(matches!(canonical_pair(&OctVec3::zero()), Err(Error::ZeroVector)));
        let lv = LeechVec::from_oct(&v).unwrap();
        assert_eq!(lv.canonical(), lv.neg().canonical());
        assert_eq!(lv.canonical().canonical(), lv.canonical());
        assert_eq!(LeechVec::from_oct(&canonical_pair(&v).unwrap()).unwrap(), lv.canonical());
    }

    #[test]
    fn leech_vec_encoding() {
        let v = OctVec3::new(Octonion::s(), r(-2), Octonion::zero());
        let lv = LeechVec::from_oct(&v).unwrap();
        assert_eq!(lv.to_oct(), v);
        assert_eq!(lv.dot(&lv), 4 * v.dot(&v).to_i64().unwrap() as i32);
        let third = OctVec3::new(Octonion::real(q(1, 3)), Octonion::zero(), Octonion::zero());
        assert!(LeechVec::from_oct(&third).is_none());
    }

    #[test]
    fn dump_parse_roundtrip() {
        let sv = ShortVectors::shared();
        let mut buf = Vec::new();
        let small = ShortVectors::from_sorted(sv.vectors()[..5].to_vec(), 0);
        small.write_dump(&mut buf, true).unwrap();
        let rows = ShortVectors::read_dump(&buf[..]).unwrap();
        assert_eq!(rows.len(), 5);
        for ((o, sh), v) in rows.iter().zip(small.iter()) {
            assert_eq!(LeechVec::from_oct(o).unwrap(), v.vec);
            assert_eq!(*sh, Some(v.shape));
        }
        assert!(ShortVectors::read_dump(&b"1 2 3\n"[..]).is_err());
    }

    #[test]
    fn census() {
        let sv = ShortVectors::shared();
        assert_eq!(sv.len(), 196560);
        assert_eq!(sv.shape_counts(), [720, 11520, 184320]);
        assert_eq!(sv.shape_overlaps(), 0);
        let pairs = PairSet::shared();
        assert_eq!(pairs.len(), 98280);
        assert!(pairs.reps().iter().all(|v| v.dot(v) == 32));
        assert_eq!(sv.in_common_complex_subalgebra().len(), 2520);
    }

    #[test]
    fn sampled_vectors_pass_exact_conditions() {
        let sv = ShortVectors::shared();
        let lat = LeechLattice::shared();
        for v in sv.vectors().iter().step_by(997) {
            let o = v.vec.to_oct();
            assert!(lat.contains(&o), "{o}");
            assert_eq!(leech_norm(&o), Rational::from_int(4));
        }
    }
}
