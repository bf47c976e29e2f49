//! Octonion E₈ lattices: Kirmse's octonions `B`, the Coxeter–Dickson rings
//! `A_t`, the left and right forms `L`, `R`, and their `D₈` intersection.
//!
//! Membership is decided exactly: coordinates are scaled to integers and
//! tested against the Hermite normal form of the lattice's generating set.

pub mod leech;

use std::collections::BTreeSet;
use std::fmt;

use crate::linalg::IntLattice;
use crate::octonion::{BasisIndex, Octonion};
use crate::rational::Rational;
use crate::Error;

/// Names of the lattices the crate constructs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeName {
    /// Kirmse's octonions.
    B,
    /// Coxeter–Dickson integral octonions `A_t`, `t` in F₇.
    A(u8),
    L,
    R,
    D8,
    /// `k` times another lattice.
    Scaled(Rational, Box<LatticeName>),
    /// Spanned by user-supplied generators.
    Custom(String),
}

impl fmt::Display for LatticeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeName::B => write!(f, "B"),
            LatticeName::A(t) => write!(f, "A{t}"),
            LatticeName::L => write!(f, "L"),
            LatticeName::R => write!(f, "R"),
            LatticeName::D8 => write!(f, "D8"),
            LatticeName::Scaled(k, n) => write!(f, "{k:?}{n}"),
            LatticeName::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A rank-8 (or lower) lattice inside the octonions.
#[derive(Clone, Debug)]
pub struct OctLattice {
    name: LatticeName,
    /// Coordinates are multiplied by `den` before integer tests.
    den: i64,
    hnf: IntLattice,
    roots: Option<Vec<Octonion>>,
}

fn i(t: i64) -> Octonion {
    Octonion::unit(BasisIndex::finite(t))
}

fn dedup(v: impl IntoIterator<Item = Octonion>) -> Vec<Octonion> {
    v.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// The 240 roots of Kirmse's octonions: `±1`, `±i_t`,
/// `½(±1 ± i_t ± i_{t+1} ± i_{t+3})`, `½(±i_{t+2} ± i_{t+4} ± i_{t+5} ± i_{t+6})`.
pub fn kirmse_roots() -> Vec<Octonion> {
    let mut out = Vec::with_capacity(240);
    for b in BasisIndex::ALL {
        let u = Octonion::unit(b);
        out.push(-&u);
        out.push(u);
    }
    let half = Rational::new(1, 2);
    for t in 0..7 {
        let quads = [
            [Octonion::one(), i(t), i(t + 1), i(t + 3)],
            [i(t + 2), i(t + 4), i(t + 5), i(t + 6)],
        ];
        for quad in &quads {
            for mask in 0..16u32 {
                let mut v = Octonion::zero();
                for (k, u) in quad.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        v -= u;
                    } else {
                        v += u;
                    }
                }
                out.push(v.scale(&half));
            }
        }
    }
    dedup(out)
}

/// The 112 `D₈` roots `±i_r ± i_t`, `r ≠ t` in PL(7).
pub fn d8_roots() -> Vec<Octonion> {
    let mut out = Vec::with_capacity(112);
    for a in 0..8 {
        for b in a + 1..8 {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut c = [0i64; 8];
                c[a] = sa;
                c[b] = sb;
                out.push(Octonion::from_ints(c, 1));
            }
        }
    }
    dedup(out)
}

/// The 128 vectors `½(±1 ± i_0 ± … ± i_6)` whose number of minus signs has
/// the given parity (`odd = true` for `L`, `false` for `R`).
pub fn half_roots(odd: bool) -> Vec<Octonion> {
    (0..256u32)
        .filter(|m| (m.count_ones() % 2 == 1) == odd)
        .map(|m| {
            let c = std::array::from_fn(|k| if m >> k & 1 == 1 { -1 } else { 1 });
            Octonion::from_ints(c, 2)
        })
        .collect()
}

fn lcm(a: i64, b: i64) -> i64 {
    a / num_integer::gcd(a, b) * b
}

impl OctLattice {
    /// The lattice spanned by `gens`. `roots`, when given, is the lattice's
    /// set of minimal vectors.
    pub fn from_generators(name: LatticeName, gens: &[Octonion], roots: Option<Vec<Octonion>>) -> Self {
        let mut den = 1i64;
        for g in gens {
            for x in &g.c {
                let d = x.as_small().expect("generator coefficient too large").1;
                den = lcm(den, d);
            }
        }
        let rows: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.to_scaled_ints(den).expect("integral after scaling").to_vec())
            .collect();
        OctLattice { name, den, hnf: IntLattice::span(8, &rows), roots }
    }

    /// Kirmse's octonions `B`.
    pub fn kirmse() -> Self {
        let roots = kirmse_roots();
        Self::from_generators(LatticeName::B, &roots, Some(roots.clone()))
    }

    /// `A_t = ½(1 − i_t) B (1 − i_t)`.
    pub fn coxeter_dickson(t: u8) -> Self {
        let a = &Octonion::one() - &i(t as i64);
        let half = Rational::new(1, 2);
        let roots = dedup(kirmse_roots().iter().map(|b| (&(&a * b) * &a).scale(&half)));
        Self::from_generators(LatticeName::A(t % 7), &roots, Some(roots.clone()))
    }

    /// `L`: the `D₈` roots together with the odd half-roots.
    pub fn left() -> Self {
        let roots = dedup(d8_roots().into_iter().chain(half_roots(true)));
        Self::from_generators(LatticeName::L, &roots, Some(roots.clone()))
    }

    /// `R`: the `D₈` roots together with the even half-roots.
    pub fn right() -> Self {
        let roots = dedup(d8_roots().into_iter().chain(half_roots(false)));
        Self::from_generators(LatticeName::R, &roots, Some(roots.clone()))
    }

    pub fn d8() -> Self {
        let roots = d8_roots();
        Self::from_generators(LatticeName::D8, &roots, Some(roots.clone()))
    }

    /// `B (1 − i_t)`, built by right-multiplying the roots of `B`.
    pub fn kirmse_times_right(t: u8) -> Self {
        let a = &Octonion::one() - &i(t as i64);
        let gens: Vec<_> = kirmse_roots().iter().map(|b| b * &a).collect();
        Self::from_generators(LatticeName::Custom(format!("B(1-i{t})")), &gens, None)
    }

    /// `(1 − i_t) B`.
    pub fn kirmse_times_left(t: u8) -> Self {
        let a = &Octonion::one() - &i(t as i64);
        let gens: Vec<_> = kirmse_roots().iter().map(|b| &a * b).collect();
        Self::from_generators(LatticeName::Custom(format!("(1-i{t})B")), &gens, None)
    }

    pub fn by_name(name: &LatticeName) -> Result<Self, Error> {
        Ok(match name {
            LatticeName::B => Self::kirmse(),
            LatticeName::A(t) if *t < 7 => Self::coxeter_dickson(*t),
            LatticeName::L => Self::left(),
            LatticeName::R => Self::right(),
            LatticeName::D8 => Self::d8(),
            LatticeName::Scaled(k, inner) => Self::by_name(inner)?.scaled(k),
            other => return Err(Error::UnsupportedLattice(other.to_string())),
        })
    }

    /// `k` times this lattice.
    pub fn scaled(&self, k: &Rational) -> Self {
        let gens: Vec<Octonion> = self.basis().into_iter().map(|b| b.scale(k)).collect();
        let roots = self.roots.as_ref().map(|r| r.iter().map(|x| x.scale(k)).collect());
        Self::from_generators(LatticeName::Scaled(k.clone(), Box::new(self.name.clone())), &gens, roots)
    }

    pub fn name(&self) -> &LatticeName {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.hnf.rank()
    }

    /// A Z-basis in Hermite normal form.
    pub fn basis(&self) -> Vec<Octonion> {
        self.hnf
            .basis()
            .into_iter()
            .map(|row| Octonion::from_ints(row.try_into().expect("8 coordinates"), self.den))
            .collect()
    }

    /// The minimal vectors of the lattice.
    pub fn roots(&self) -> Result<&[Octonion], Error> {
        self.roots.as_deref().ok_or_else(|| Error::UnsupportedLattice(self.name.to_string()))
    }

    /// Exact membership test.
    pub fn contains(&self, v: &Octonion) -> bool {
        match v.to_scaled_ints(self.den) {
            Some(c) => self.hnf.contains(&c),
            None => false,
        }
    }

    /// Whether `v = w · multiplier` for some `w` in this lattice. Decided by
    /// testing `v · multiplier⁻¹`, which undoes the right multiplication
    /// exactly in an alternative algebra.
    pub fn scaled_coset_contains(&self, multiplier: &Octonion, v: &Octonion) -> bool {
        match multiplier.inverse() {
            Some(inv) => self.contains(&(v * &inv)),
            None => v.is_zero(),
        }
    }

    /// Same point set, ignoring names.
    pub fn same_lattice(&self, other: &OctLattice) -> bool {
        self.basis().iter().all(|b| other.contains(b)) && other.basis().iter().all(|b| self.contains(b))
    }

    /// Every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &OctLattice) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }
}

/// Spec-facing alias for [`OctLattice::roots`].
pub fn lattice_roots(lat: &OctLattice) -> Result<&[Octonion], Error> {
    lat.roots()
}

/// Spec-facing alias for [`OctLattice::scaled_coset_contains`].
pub fn scaled_coset_contains(base: &OctLattice, multiplier: &Octonion, v: &Octonion) -> bool {
    base.scaled_coset_contains(multiplier, v)
}

/// The three product relations between `B`, `L` and `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoufangRelation {
    /// `LR = 2B`
    LeftRight,
    /// `BL = L`
    KirmseLeft,
    /// `RB = R`
    RightKirmse,
}

impl MoufangRelation {
    pub const ALL: [MoufangRelation; 3] =
        [MoufangRelation::LeftRight, MoufangRelation::KirmseLeft, MoufangRelation::RightKirmse];

    pub fn label(self) -> &'static str {
        match self {
            MoufangRelation::LeftRight => "LR = 2B",
            MoufangRelation::KirmseLeft => "BL = L",
            MoufangRelation::RightKirmse => "RB = R",
        }
    }
}

/// Outcome of a product-relation check at root level.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub relation: MoufangRelation,
    pub products: usize,
    /// Every root product lies in the target lattice.
    pub closed: bool,
    /// The products generate the whole target lattice.
    pub spans: bool,
    /// First product outside the target, if any.
    pub witness: Option<(Octonion, Octonion)>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.closed && self.spans
    }
}

/// Checks one of `LR = 2B`, `BL = L`, `RB = R` over all pairs of roots.
pub fn moufang_relation_check(rel: MoufangRelation) -> RelationReport {
    let (b, l, r) = (OctLattice::kirmse(), OctLattice::left(), OctLattice::right());
    let (lhs, rhs, target) = match rel {
        MoufangRelation::LeftRight => (&l, &r, b.scaled(&Rational::from_int(2))),
        MoufangRelation::KirmseLeft => (&b, &l, l.clone()),
        MoufangRelation::RightKirmse => (&r, &b, r.clone()),
    };
    let mut products = Vec::with_capacity(240 * 240);
    let mut witness = None;
    for x in lhs.roots().expect("named lattice") {
        for y in rhs.roots().expect("named lattice") {
            let p = x * y;
            if witness.is_none() && !target.contains(&p) {
                witness = Some((x.clone(), y.clone()));
            }
            products.push(p);
        }
    }
    let generated = OctLattice::from_generators(LatticeName::Custom("products".into()), &products, None);
    RelationReport {
        relation: rel,
        products: products.len(),
        closed: witness.is_none(),
        spans: target.is_sublattice_of(&generated),
        witness,
    }
}

/// Roots of `L` that also lie in `R`.
pub fn left_right_common_roots() -> Vec<Octonion> {
    let (l, r) = (OctLattice::left(), OctLattice::right());
    l.roots().expect("named").iter().filter(|x| r.contains(x)).cloned().collect()
}

/// Whether the product of every pair of roots stays in the lattice.
pub fn closed_on_roots(lat: &OctLattice) -> Result<bool, Error> {
    let roots = lat.roots()?;
    Ok(roots.iter().all(|x| roots.iter().all(|y| lat.contains(&(x * y)))))
}
