//! Projective t-designs: the polynomials `Q_k`, angle sets, pair
//! distributions and the absolute-bound tightness test.
//!
//! Every sum is exact. A set is a `t`-design when
//! `|T| Q_k(1) + 2 Σ_{pairs} Q_k(⟨a,b⟩) = 0` for `k = 1..t`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::albert::{inner, PlanePoint};
use crate::lattice::leech::LeechVec;
use crate::octonion::{generated_subalgebra_dim, Octonion};
use crate::permgroup::{is_transitive, Permutation};
use crate::rational::Rational;
use crate::Error;

/// The rising factorial `a(a+1)⋯(a+i−1)`.
pub fn pochhammer(a: &Rational, i: i64) -> Result<Rational, Error> {
    if i < 0 {
        return Err(Error::InvalidArgument(format!("rising factorial of negative length {i}")));
    }
    let mut acc = Rational::ONE;
    let mut x = a.clone();
    for _ in 0..i {
        acc *= &x;
        x += &Rational::ONE;
    }
    Ok(acc)
}

/// A polynomial with exact coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::ZERO, |acc, c| &(&acc * x) + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.signum() < 0 { "-" } else { "+" };
            if first {
                if c.signum() < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match r {
                0 => write!(f, "{:?}", c.abs())?,
                1 => write!(f, "{:?}x", c.abs())?,
                _ => write!(f, "{:?}x^{r}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// The projective space `FP^{d−1}` with `m = ½[F:R]`, and `N = md`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    m: Rational,
    d: u32,
}

impl Ambient {
    pub fn new(m: Rational, d: u32) -> Result<Self, Error> {
        let ok = ["1/2", "1", "2", "4"].iter().any(|s| s.parse::<Rational>().ok().as_ref() == Some(&m));
        if !ok {
            return Err(Error::InvalidArgument(format!("m = {m} is not half the dimension of R, C, H or O")));
        }
        let n = &m * &Rational::from_int(d as i64);
        if n <= Rational::ONE {
            return Err(Error::InvalidArgument(format!("N = md = {n} must exceed 1")));
        }
        if m == Rational::from_int(4) && d > 3 {
            return Err(Error::InvalidArgument(format!("no octonion projective space of dimension {}", d - 1)));
        }
        Ok(Ambient { m, d })
    }

    /// `RP²³`, home of the Leech pairs.
    pub fn leech() -> Self {
        Ambient { m: Rational::new(1, 2), d: 24 }
    }

    /// `FP²` for `F` with `[F:R] = 2m`.
    pub fn plane(m: Rational) -> Result<Self, Error> {
        Self::new(m, 3)
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> Rational {
        &self.m * &Rational::from_int(self.d as i64)
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={:?} d={}", self.m, self.d)
    }
}

/// `Q_k(x) = Σ_r (−1)^{k−r} C(k,r) (N+2k−1) (N)_{k+r−1} / ((m)_r k!) x^r`,
/// reading `(N)_{−1}` as `1/(N−1)` so that `Q₀ = 1`.
pub fn q_polynomial(k: u32, amb: &Ambient) -> Poly {
    let n = amb.n();
    let k = k as i64;
    let mut factorial = Rational::ONE;
    for i in 1..=k {
        factorial *= &Rational::from_int(i);
    }
    let lead = &n + &Rational::from_int(2 * k - 1);
    let coeffs = (0..=k)
        .map(|r| {
            let rising = if k + r == 0 {
                (&n - &Rational::ONE).recip().expect("N > 1")
            } else {
                pochhammer(&n, k + r - 1).expect("nonnegative")
            };
            let binom = Rational::from(num_integer::binomial(k, r));
            let sign = if (k - r) % 2 == 0 { Rational::ONE } else { -Rational::ONE };
            let den = &pochhammer(&amb.m, r).expect("nonnegative") * &factorial;
            &(&(&(&sign * &binom) * &lead) * &rising) / &den
        })
        .collect();
    Poly::new(coeffs)
}

/// `FP²` for the smallest composition algebra `F` containing every entry of
/// the given points.
pub fn plane_ambient(points: &[PlanePoint]) -> Result<Ambient, Error> {
    let entries: Vec<Octonion> = points.iter().flat_map(|p| p.mat().off.iter().cloned()).collect();
    let m = match generated_subalgebra_dim(&entries, 8) {
        1 => Rational::new(1, 2),
        2 => Rational::ONE,
        4 => Rational::from_int(2),
        _ => Rational::from_int(4),
    };
    Ambient::plane(m)
}

/// A finite point set in a projective space.
#[derive(Clone, Debug)]
pub enum Points {
    /// Lines through nonzero vectors of `R²⁴`, one representative each.
    Real(Vec<LeechVec>),
    /// Trace-1 primitive idempotents.
    Plane(Vec<PlanePoint>),
}

#[derive(Clone, Debug)]
pub struct PointSet {
    points: Points,
    ambient: Ambient,
    norms: Vec<i32>,
}

impl PointSet {
    pub fn real(vs: Vec<LeechVec>, ambient: Ambient) -> Result<Self, Error> {
        if vs.first().is_some_and(|_| ambient.d != 24) {
            return Err(Error::InvalidArgument(format!("real vectors have 24 coordinates, ambient has d = {}", ambient.d)));
        }
        let norms: Vec<i32> = vs.iter().map(|v| v.dot(v)).collect();
        if let Some(i) = norms.iter().position(|&n| n == 0) {
            return Err(Error::InvalidArgument(format!("point {i} is the zero vector")));
        }
        Ok(PointSet { points: Points::Real(vs), ambient, norms })
    }

    pub fn plane(ps: Vec<PlanePoint>, ambient: Ambient) -> Result<Self, Error> {
        if ambient.d != 3 {
            return Err(Error::InvalidArgument(format!("plane points need d = 3, got {}", ambient.d)));
        }
        Ok(PointSet { points: Points::Plane(ps), ambient, norms: Vec::new() })
    }

    pub fn len(&self) -> usize {
        match &self.points {
            Points::Real(v) => v.len(),
            Points::Plane(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    /// `cos²` of the angle between points `i` and `j`.
    pub fn angle(&self, i: usize, j: usize) -> Rational {
        match &self.points {
            Points::Real(v) => {
                let d = v[i].dot(&v[j]) as i64;
                Rational::new(d * d, self.norms[i] as i64 * self.norms[j] as i64)
            }
            Points::Plane(p) => inner(p[i].mat(), p[j].mat()),
        }
    }

    /// Angle counts from point `i` to every other point.
    pub fn row(&self, i: usize) -> BTreeMap<Rational, u64> {
        match &self.points {
            Points::Real(v) => {
                // group by (dot², norm) before building rationals
                let mut raw: FxHashMap<(i64, i32), u64> = FxHashMap::default();
                for (j, w) in v.iter().enumerate() {
                    if j != i {
                        let d = v[i].dot(w) as i64;
                        *raw.entry((d * d, self.norms[j])).or_default() += 1;
                    }
                }
                let mut out = BTreeMap::new();
                for ((d2, n), c) in raw {
                    *out.entry(Rational::new(d2, self.norms[i] as i64 * n as i64)).or_default() += c;
                }
                out
            }
            Points::Plane(_) => {
                let mut out = BTreeMap::new();
                for j in (0..self.len()).filter(|&j| j != i) {
                    *out.entry(self.angle(i, j)).or_default() += 1;
                }
                out
            }
        }
    }

    /// Checks that the points are pairwise distinct as projective points.
    pub fn check_distinct(&self) -> Result<(), Error> {
        let dup = match &self.points {
            Points::Real(v) => {
                let mut seen = FxHashMap::default();
                v.iter().enumerate().find_map(|(i, x)| seen.insert(x.canonical(), i).map(|j| (j, i)))
            }
            Points::Plane(p) => {
                let mut seen = FxHashMap::default();
                p.iter().enumerate().find_map(|(i, x)| seen.insert(x.clone(), i).map(|j| (j, i)))
            }
        };
        match dup {
            Some((i, j)) => Err(Error::Validation(format!("points {i} and {j} coincide"))),
            None => Ok(()),
        }
    }
}

/// Evidence that a group of isometries acts transitively on a point set.
///
/// Built from permutations of the point indices induced by maps that
/// preserve the angle between points.
#[derive(Clone, Debug)]
pub struct TransitivityCertificate {
    len: usize,
    generators: usize,
}

impl TransitivityCertificate {
    /// Checks transitivity, and that every generator preserves each angle
    /// from point 0 on the set.
    pub fn verify(set: &PointSet, perms: &[Permutation]) -> Result<Self, Error> {
        let n = set.len();
        if let Some(p) = perms.iter().find(|p| p.degree() != n) {
            return Err(Error::InvalidArgument(format!("permutation of degree {} on {n} points", p.degree())));
        }
        if n > 1 && !is_transitive(perms, n) {
            return Err(Error::Validation("generators are not transitive on the point set".into()));
        }
        for (k, p) in perms.iter().enumerate() {
            let p0 = p.apply(0);
            let bad = (1..n).into_par_iter().find_first(|&j| set.angle(p0, p.apply(j)) != set.angle(0, j));
            if let Some(j) = bad {
                return Err(Error::Validation(format!("generator {k} changes the angle between points 0 and {j}")));
            }
        }
        Ok(TransitivityCertificate { len: n, generators: perms.len() })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistributionMode {
    /// Every unordered pair.
    Full,
    /// One row, scaled by `|T|/2`; needs a certificate.
    Transitive,
}

impl FromStr for DistributionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "full" => Ok(DistributionMode::Full),
            "transitive" => Ok(DistributionMode::Transitive),
            _ => Err(Error::Parse(format!("unknown distribution mode {s:?} (full or transitive)"))),
        }
    }
}

/// The number of unordered pairs of distinct points at each angle.
pub fn pair_distribution(
    set: &PointSet,
    mode: DistributionMode,
    cert: Option<&TransitivityCertificate>,
) -> Result<BTreeMap<Rational, u64>, Error> {
    let n = set.len();
    match mode {
        DistributionMode::Full => {
            let rows: Vec<BTreeMap<Rational, u64>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut out = BTreeMap::new();
                    for j in i + 1..n {
                        *out.entry(set.angle(i, j)).or_default() += 1;
                    }
                    out
                })
                .collect();
            let mut total = BTreeMap::new();
            for row in rows {
                for (a, c) in row {
                    *total.entry(a).or_default() += c;
                }
            }
            Ok(total)
        }
        DistributionMode::Transitive => {
            let cert = cert.ok_or_else(|| {
                Error::InvalidArgument("transitive mode needs a transitivity certificate".into())
            })?;
            if cert.len != n {
                return Err(Error::InvalidArgument(format!("certificate covers {} points, set has {n}", cert.len)));
            }
            set.row(0)
                .into_iter()
                .map(|(a, c)| {
                    let twice = c * n as u64;
                    if twice % 2 == 1 {
                        return Err(Error::Validation(format!("odd pair count at angle {a}")));
                    }
                    Ok((a, twice / 2))
                })
                .collect()
        }
    }
}

/// The double sum `Σ_{a,b ∈ T} Q_k(⟨a,b⟩)` from a pair distribution.
pub fn design_sum(len: usize, dist: &BTreeMap<Rational, u64>, k: u32, amb: &Ambient) -> Rational {
    let q = q_polynomial(k, amb);
    let mut sum = &Rational::from_int(len as i64) * &q.eval(&Rational::ONE);
    for (a, &c) in dist {
        sum += &(&Rational::from_int(2 * c as i64) * &q.eval(a));
    }
    sum
}

/// The largest `t ≤ t_max` with vanishing design sums for `k = 1..t`.
pub fn design_strength(len: usize, dist: &BTreeMap<Rational, u64>, amb: &Ambient, t_max: u32) -> u32 {
    (1..=t_max).take_while(|&k| design_sum(len, dist, k, amb).is_zero()).count() as u32
}

/// `Q₀(1) + … + Q_l(1)`.
pub fn q_sum(l: u32, amb: &Ambient) -> Rational {
    (0..=l).map(|k| q_polynomial(k, amb).eval(&Rational::ONE)).sum()
}

/// The absolute bound `(N)_{l+ε} (N−m+1)_l / ((m)_{l+ε} l!)` for an angle
/// set with `l` nonzero angles, `ε = 1` when 0 is an angle. For `ε = 0` this
/// equals [`q_sum`].
pub fn absolute_bound(l: u32, epsilon: u32, amb: &Ambient) -> Rational {
    let (l, e) = (l as i64, epsilon as i64);
    let n = amb.n();
    let shifted = &(&n - amb.m()) + &Rational::ONE;
    let top = &pochhammer(&n, l + e).expect("nonnegative") * &pochhammer(&shifted, l).expect("nonnegative");
    let bottom = &pochhammer(amb.m(), l + e).expect("nonnegative") * &pochhammer(&Rational::ONE, l).expect("nonnegative");
    &top / &bottom
}

/// The angles occurring in a pair distribution.
pub fn angle_set(dist: &BTreeMap<Rational, u64>) -> Vec<Rational> {
    dist.iter().filter(|(_, &c)| c > 0).map(|(a, _)| a.clone()).collect()
}

/// The summary verifying a point set as a (tight) projective design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    pub points: usize,
    pub ambient: Ambient,
    pub angles: Vec<Rational>,
    pub distribution: BTreeMap<Rational, u64>,
    /// Largest verified strength, at most `t_max`.
    pub strength: u32,
    pub t_max: u32,
    pub l: u32,
    pub epsilon: u32,
    pub q_sum: Rational,
    pub bound: Rational,
    /// `t = 2l + ε` and `|T|` meets the absolute bound.
    pub tight: bool,
}

impl DesignReport {
    /// Analyses `set`; `t_max` defaults to one past the absolute bound.
    pub fn analyse(
        set: &PointSet,
        mode: DistributionMode,
        cert: Option<&TransitivityCertificate>,
        t_max: Option<u32>,
    ) -> Result<Self, Error> {
        if set.len() < 2 {
            return Err(Error::InvalidArgument("a design needs at least two points".into()));
        }
        let distribution = pair_distribution(set, mode, cert)?;
        let angles = angle_set(&distribution);
        let epsilon = angles.iter().any(Rational::is_zero) as u32;
        let l = angles.len() as u32 - epsilon;
        let t_max = t_max.unwrap_or(2 * l + epsilon + 1);
        let amb = set.ambient().clone();
        let strength = design_strength(set.len(), &distribution, &amb, t_max);
        let bound = absolute_bound(l, epsilon, &amb);
        let q_sum = q_sum(l, &amb);
        let tight = strength == 2 * l + epsilon && bound == Rational::from_int(set.len() as i64);
        Ok(DesignReport { points: set.len(), ambient: amb, angles, distribution, strength, t_max, l, epsilon, q_sum, bound, tight })
    }

    /// The first `k ≤ t_max` whose design sum is nonzero.
    pub fn first_failure(&self) -> Option<u32> {
        (self.strength < self.t_max).then_some(self.strength + 1)
    }
}

impl fmt::Display for DesignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points {}", self.points)?;
        writeln!(f, "ambient {}", self.ambient)?;
        let angles: Vec<String> = self.angles.iter().map(|a| format!("{a:?}")).collect();
        writeln!(f, "angles {}", angles.join(" "))?;
        for (a, c) in &self.distribution {
            writeln!(f, "pairs {a:?} {c}")?;
        }
        writeln!(f, "strength {}", self.strength)?;
        match self.first_failure() {
            Some(k) => writeln!(f, "fails_at {k}")?,
            None => writeln!(f, "checked_to {}", self.t_max)?,
        }
        writeln!(f, "l {}", self.l)?;
        writeln!(f, "epsilon {}", self.epsilon)?;
        writeln!(f, "q_sum {:?}", self.q_sum)?;
        writeln!(f, "bound {:?}", self.bound)?;
        writeln!(f, "tight {}", self.tight)
    }
}
