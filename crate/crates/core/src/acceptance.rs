//! The end-to-end verification suite: ten exact checks covering the
//! short-vector census, the lattice relations, closure of the generator
//! reflections, group orders, both tight 5-designs and the algebra laws.
//!
//! Shared by the `acceptance` test target and `octoleech selftest`.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::action::{
    act_albert_with, check_closure, fixed_pairs_under_shift, pair_frame, pair_permutation, reflection_matrix, Action,
    FamilyName, GeneratorFamily, Parenthesization, PlaneOrbit,
};
use crate::albert::{cross, is_primitive_idempotent, jordan_mul, point_from_vector, trace, HermOct3, PlanePoint};
use crate::design::{pair_distribution, Ambient, DesignReport, DistributionMode, PointSet, TransitivityCertificate};
use crate::lattice::leech::{OctVec3, PairSet, ShortVectors};
use crate::lattice::{d8_roots, left_right_common_roots, moufang_relation_check, MoufangRelation};
use crate::octonion::{associator, common_complex_subalgebra, BasisIndex, ComplexSubalgebra, Octonion};
use crate::permgroup::{is_transitive, schreier_sims, Permutation};
use crate::rational::Rational;

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {} ({:.1}s)", self.id, self.title, self.detail, self.elapsed.as_secs_f64())
    }
}

pub const TITLES: [&str; 10] = [
    "short-vector census",
    "lattice relations",
    "generator closure",
    "monomial group orders",
    "Suzuki chain orders",
    "shift-fixed pairs",
    "real tight 5-design",
    "Albert orbits",
    "seven-design intersection",
    "algebra properties",
];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Cached data shared between criteria.
pub struct Suite {
    frame: Option<Vec<usize>>,
    perms: FxHashMap<OctVec3, Permutation>,
    plane: FxHashMap<String, PlaneOrbit>,
    seed: u64,
}

impl Default for Suite {
    fn default() -> Self {
        Self::new()
    }
}

impl Suite {
    pub fn new() -> Self {
        Suite { frame: None, perms: FxHashMap::default(), plane: FxHashMap::default(), seed: 2024 }
    }

    /// Runs one criterion (1 to 10).
    pub fn run(&mut self, id: u8) -> Outcome {
        let start = Instant::now();
        let result = match id {
            1 => self.census(),
            2 => self.relations(),
            3 => self.closure(),
            4 => self.monomial(),
            5 => self.suzuki(),
            6 => self.shift_fixed(),
            7 => self.real_design(),
            8 => self.albert_orbits(),
            9 => self.intersection(),
            10 => self.algebra(),
            _ => Err(format!("no criterion {id}")),
        };
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let title = TITLES.get(id as usize - 1).copied().unwrap_or("unknown");
        Outcome { id, title, passed, detail, elapsed: start.elapsed() }
    }

    /// Runs every criterion in order, passing each outcome to `report`.
    pub fn run_all(&mut self, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
        (1..=10)
            .map(|id| {
                let o = self.run(id);
                report(&o);
                o
            })
            .collect()
    }

    fn frame(&mut self) -> &[usize] {
        self.frame.get_or_insert_with(|| pair_frame(PairSet::shared()))
    }

    fn perms_for(&mut self, fam: &GeneratorFamily) -> Result<Vec<Permutation>, String> {
        let mut out = Vec::with_capacity(fam.vectors().len());
        for v in fam.vectors() {
            if !self.perms.contains_key(v) {
                let a = Action::reflection(v).map_err(|e| e.to_string())?;
                let p = pair_permutation(&a, PairSet::shared()).map_err(|e| e.to_string())?;
                self.perms.insert(v.clone(), p);
            }
            out.push(self.perms[v].clone());
        }
        Ok(out)
    }

    fn group_order(&mut self, names: &[FamilyName]) -> Result<(num_bigint::BigUint, Vec<Permutation>), String> {
        let fam = GeneratorFamily::new(names);
        let perms = self.perms_for(&fam)?;
        let frame = self.frame().to_vec();
        let g = schreier_sims(PairSet::shared().len(), &perms, Some(&frame)).map_err(|e| e.to_string())?;
        Ok((g.order(), perms))
    }

    fn expect_order(&mut self, names: &[FamilyName], want: u64) -> Result<(), String> {
        let (order, _) = self.group_order(names)?;
        let label = GeneratorFamily::new(names).to_string();
        ensure(order == want.into(), || format!("|<{label}>| = {order}, expected {want}"))
    }

    fn plane_orbit(&mut self, names: &[FamilyName]) -> Result<&PlaneOrbit, String> {
        let fam = GeneratorFamily::new(names);
        let key = fam.to_string();
        if !self.plane.contains_key(&key) {
            let actions = fam.actions().map_err(|e| e.to_string())?;
            let seeds = fam.plane_points().map_err(|e| e.to_string())?;
            let orb = PlaneOrbit::generate(&actions, &seeds, Parenthesization::Right, 100_000).map_err(|e| e.to_string())?;
            orb.validate().map_err(|e| e.to_string())?;
            self.plane.insert(key.clone(), orb);
        }
        Ok(&self.plane[&key])
    }

    fn census(&mut self) -> Check {
        let sv = ShortVectors::shared();
        ensure(sv.len() == 196560, || format!("{} short vectors", sv.len()))?;
        let shapes = sv.shape_counts();
        ensure(shapes == [720, 11520, 184320], || format!("shape subtotals {shapes:?}"))?;
        ensure(sv.shape_overlaps() == 0, || format!("{} vectors have two shapes", sv.shape_overlaps()))?;
        ensure(PairSet::shared().len() == 98280, || format!("{} pairs", PairSet::shared().len()))?;
        Ok(format!("196560 vectors ({} / {} / {}), 98280 pairs", shapes[0], shapes[1], shapes[2]))
    }

    fn relations(&mut self) -> Check {
        for rel in MoufangRelation::ALL {
            let r = moufang_relation_check(rel);
            ensure(r.holds(), || format!("{} fails: closed={} spans={} witness={:?}", rel.label(), r.closed, r.spans, r.witness))?;
        }
        let common: BTreeSet<Octonion> = left_right_common_roots().into_iter().collect();
        let d8: BTreeSet<Octonion> = d8_roots().into_iter().collect();
        ensure(common.len() == 112 && common == d8, || format!("L ∩ R has {} roots, D8 has {}", common.len(), d8.len()))?;
        Ok("LR = 2B, BL = L, RB = R; L ∩ R roots = 112 D8 roots".into())
    }

    fn closure(&mut self) -> Check {
        let sv = ShortVectors::shared();
        let fam = GeneratorFamily::parse("S,Vinf,V0,V1,V2,V3,V4,V5,V6").map_err(|e| e.to_string())?;
        let mut vectors = 0;
        for v in fam.vectors() {
            let (w, w_neg) = (reflection_matrix(v), reflection_matrix(&v.neg()));
            let (w, w_neg) = (w.map_err(|e| e.to_string())?, w_neg.map_err(|e| e.to_string())?);
            ensure(w.matrix() == w_neg.matrix(), || format!("W({v}) differs from W(-v)"))?;
            check_closure(&Action::Reflection(w), sv).map_err(|e| e.to_string())?;
            vectors += 2;
        }
        let by_family: Vec<usize> = [FamilyName::S, FamilyName::Vinf]
            .into_iter()
            .chain((0..7).map(FamilyName::V))
            .map(|n| 2 * n.vectors().len())
            .collect();
        ensure(by_family[0] == 42 && by_family[1] == 12 && by_family[2..].iter().all(|&n| n == 24), || {
            format!("family sizes {by_family:?}")
        })?;
        Ok(format!("{vectors} reflections (42 + 12 + 7x24) map all 196560 short vectors bijectively"))
    }

    fn monomial(&mut self) -> Check {
        use FamilyName::*;
        let v = FamilyName::v;
        self.expect_order(&[A2], 6)?;
        self.expect_order(&[Vinf], 24)?;
        for t in 0..7 {
            self.expect_order(&[v(t)], 96)?;
            for u in t + 1..7 {
                self.expect_order(&[v(t), v(u)], 384)?;
            }
            self.expect_order(&[v(t), v(t + 1), v(t + 3)], 1536)?;
            self.expect_order(&[v(t + 2), v(t + 5), v(t + 6), v(t + 7)], 6144)?;
        }
        let all: Vec<FamilyName> = std::iter::once(Vinf).chain((0..7).map(V)).collect();
        self.expect_order(&all, 98304)?;
        Ok("6, 24, 96, 384, 1536, 6144, 98304 (every t, t')".into())
    }

    fn suzuki(&mut self) -> Check {
        use FamilyName::S;
        let v = FamilyName::v;
        self.expect_order(&[S], 168)?;
        for t in 0..7 {
            self.expect_order(&[S, v(t)], 6048)?;
            for u in t + 1..7 {
                self.expect_order(&[S, v(t), v(u)], 604800)?;
            }
        }
        let n = PairSet::shared().len();
        for t in 0..7 {
            let (order, perms) = self.group_order(&[S, v(t), v(t + 1), v(t + 3)])?;
            ensure(order == 251596800u64.into(), || format!("G2(4) family t={t}: order {order}"))?;
            ensure(is_transitive(&perms, n), || format!("G2(4) family t={t} is not transitive"))?;
        }
        Ok("168, 6048, 604800, 251596800; G2(4) families transitive on 98280 pairs".into())
    }

    fn shift_fixed(&mut self) -> Check {
        let fixed = fixed_pairs_under_shift(PairSet::shared());
        ensure(fixed.len() == 21, || format!("{} fixed pairs", fixed.len()))?;
        // R(s) = span{1, i_0 + ... + i_6}
        let dir = Octonion::from_ints([0, 1, 1, 1, 1, 1, 1, 1], 1);
        for &i in &fixed {
            let v = PairSet::shared().rep(i).to_oct();
            let ok = match common_complex_subalgebra(&v.0) {
                Some(ComplexSubalgebra::Direction(d)) => d == dir,
                Some(ComplexSubalgebra::Real) => true,
                None => false,
            };
            ensure(ok, || format!("fixed pair {v} is not in R(s)"))?;
        }
        let complex = ShortVectors::shared().in_common_complex_subalgebra().len();
        ensure(complex == 2 * 1260, || format!("{complex} vectors in a common complex subalgebra"))?;
        Ok("21 fixed pairs in R(s); 2 x 1260 complex short vectors".into())
    }

    fn real_design(&mut self) -> Check {
        let set = PointSet::real(PairSet::shared().reps().to_vec(), Ambient::leech()).map_err(|e| e.to_string())?;
        let fam = GeneratorFamily::parse("S,V0,V1,V3").map_err(|e| e.to_string())?;
        let perms = self.perms_for(&fam)?;
        let cert = TransitivityCertificate::verify(&set, &perms).map_err(|e| e.to_string())?;
        let rep = DesignReport::analyse(&set, DistributionMode::Transitive, Some(&cert), Some(6)).map_err(|e| e.to_string())?;
        let want: Vec<Rational> = vec![Rational::ZERO, Rational::new(1, 16), Rational::new(1, 4)];
        ensure(rep.angles == want, || format!("angle set {:?}", rep.angles))?;
        ensure(rep.strength == 5 && rep.first_failure() == Some(6), || {
            format!("strength {} (first failure {:?})", rep.strength, rep.first_failure())
        })?;
        ensure(rep.bound == Rational::from_int(98280) && rep.tight, || format!("bound {:?}, tight {}", rep.bound, rep.tight))?;
        let dist = pair_distribution(&set, DistributionMode::Transitive, Some(&cert)).map_err(|e| e.to_string())?;
        let base = set.row(0);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..8 {
            let i = rng.gen_range(1..set.len());
            ensure(set.row(i) == base, || format!("row {i} differs from row 0"))?;
        }
        Ok(format!(
            "angles {{0, 1/16, 1/4}}, sums vanish for k = 1..5, k = 6 fails, bound {:?} (l = 2, eps = 1, Q-sum {:?}); {} pairs at 0",
            rep.bound, rep.q_sum, dist[&Rational::ZERO]
        ))
    }

    fn plane_report(&mut self, names: &[FamilyName], m: Rational) -> Result<DesignReport, String> {
        let orb = self.plane_orbit(names)?.clone();
        let set = PointSet::plane(orb.points().to_vec(), Ambient::plane(m).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        set.check_distinct().map_err(|e| e.to_string())?;
        let cert = TransitivityCertificate::verify(&set, orb.permutations()).map_err(|e| e.to_string())?;
        let trans =
            DesignReport::analyse(&set, DistributionMode::Transitive, Some(&cert), None).map_err(|e| e.to_string())?;
        let full = DesignReport::analyse(&set, DistributionMode::Full, None, None).map_err(|e| e.to_string())?;
        ensure(trans == full, || format!("{}: full and transitive distributions differ", GeneratorFamily::new(names)))?;
        Ok(full)
    }

    fn albert_orbits(&mut self) -> Check {
        use FamilyName::*;
        let rows: [(&[FamilyName], Rational, usize, u32); 5] = [
            (&[Vinf], Rational::new(1, 2), 6, 1),
            (&[S], Rational::ONE, 21, 2),
            (&[S, V(0)], Rational::from_int(2), 63, 3),
            (&[S, V(0), V(1)], Rational::from_int(4), 819, 5),
            (&[S, V(0), V(1), V(3)], Rational::from_int(4), 819, 5),
        ];
        let mut summary = Vec::new();
        for (names, m, n, t) in rows {
            let rep = self.plane_report(names, m)?;
            let label = GeneratorFamily::new(names).to_string();
            ensure(rep.points == n && rep.strength == t, || {
                format!("{label}: {} points, strength {} (expected {n}, {t})", rep.points, rep.strength)
            })?;
            summary.push(format!("{n}:t={t}"));
            if n == 819 {
                let want = vec![Rational::ZERO, Rational::new(1, 4), Rational::new(1, 2)];
                ensure(rep.angles == want, || format!("{label}: angle set {:?}", rep.angles))?;
                ensure(rep.bound == Rational::from_int(819) && rep.tight, || {
                    format!("{label}: bound {:?}, tight {}", rep.bound, rep.tight)
                })?;
            }
        }
        Ok(format!("{}; 819-point angles {{0, 1/4, 1/2}}, bound 819, tight", summary.join(" ")))
    }

    fn intersection(&mut self) -> Check {
        use FamilyName::S;
        let v = FamilyName::v;
        let mut designs: Vec<BTreeSet<PlanePoint>> = Vec::new();
        for t in 0..7 {
            let orb = self.plane_orbit(&[S, v(t), v(t + 1), v(t + 3)])?;
            ensure(orb.len() == 819, || format!("design t={t} has {} points", orb.len()))?;
            designs.push(orb.points().iter().cloned().collect());
        }
        for a in 0..7 {
            for b in a + 1..7 {
                ensure(designs[a] != designs[b], || format!("designs {a} and {b} coincide"))?;
            }
        }
        let mut common = designs[0].clone();
        for d in &designs[1..] {
            common = common.intersection(d).cloned().collect();
        }
        let s_orbit: BTreeSet<PlanePoint> = self.plane_orbit(&[S])?.points().iter().cloned().collect();
        ensure(common == s_orbit, || format!("intersection has {} points, S-orbit {}", common.len(), s_orbit.len()))?;
        Ok("seven distinct 819-point designs; intersection = the 21-point S-orbit".into())
    }

    fn algebra(&mut self) -> Check {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed);
        let mut cases = 0usize;
        let oct = |rng: &mut ChaCha8Rng| {
            let den = rng.gen_range(1..4);
            Octonion::from_ints(std::array::from_fn(|_| rng.gen_range(-5..6)), den)
        };
        for _ in 0..2000 {
            let (a, b, c) = (oct(&mut rng), oct(&mut rng), oct(&mut rng));
            ensure(associator(&a, &a, &b).is_zero() && associator(&a, &b, &b).is_zero(), || format!("alternativity fails at {a}, {b}"))?;
            let lhs = &(&(&c * &a) * &c) * &b;
            let rhs = &c * &(&a * &(&c * &b));
            ensure(lhs == rhs, || format!("Moufang identity fails at {a}, {b}, {c}"))?;
            ensure((&a * &b).norm() == &a.norm() * &b.norm(), || format!("norm not multiplicative at {a}, {b}"))?;
            ensure((&a * &b).conj() == &b.conj() * &a.conj(), || format!("conjugation not anti-automorphic at {a}, {b}"))?;
            cases += 4;
        }
        let herm = |rng: &mut ChaCha8Rng| {
            let diag = std::array::from_fn(|_| Rational::new(rng.gen_range(-4..5), rng.gen_range(1..3)));
            HermOct3::new(diag, std::array::from_fn(|_| oct(rng)))
        };
        for _ in 0..800 {
            let (x, y) = (herm(&mut rng), herm(&mut rng));
            let xx = jordan_mul(&x, &x);
            ensure(jordan_mul(&jordan_mul(&x, &y), &xx) == jordan_mul(&x, &jordan_mul(&y, &xx)), || {
                format!("Jordan identity fails at {x}, {y}")
            })?;
            cases += 1;
        }
        let units: Vec<Octonion> = BasisIndex::ALL.iter().map(|&i| Octonion::unit(i)).collect();
        for k in 0..1500 {
            // a vector over a random quaternion subalgebra gives a point
            let (p, q) = (rng.gen_range(1..8), rng.gen_range(1..8));
            let basis = [units[0].clone(), units[p].clone(), units[q].clone(), &units[p] * &units[q]];
            let comp = |rng: &mut ChaCha8Rng| {
                basis.iter().fold(Octonion::zero(), |acc, b| &acc + &b.scale(&Rational::from_int(rng.gen_range(-3..4))))
            };
            let v = OctVec3::new(comp(&mut rng), comp(&mut rng), comp(&mut rng));
            if v.is_zero() {
                continue;
            }
            let pt = point_from_vector(&v).map_err(|e| e.to_string())?.into_inner();
            let x = match k % 3 {
                0 => pt,
                1 => pt.scale(&Rational::from_int(rng.gen_range(2..5))),
                _ => pt.add(&herm(&mut rng).scale(&Rational::new(1, 7))),
            };
            let criterion = cross(&x, &x).is_zero() && trace(&x) == Rational::ONE;
            ensure(criterion == is_primitive_idempotent(&x), || format!("cross-product test disagrees at {x}"))?;
            cases += 1;
        }
        let fam = GeneratorFamily::parse("S,Vinf,V0,V1,V2,V3,V4,V5,V6").map_err(|e| e.to_string())?;
        let pts = self.plane_orbit(&[FamilyName::S, FamilyName::V(0), FamilyName::V(1)])?.points().to_vec();
        let mut albert_cases = 0;
        for v in fam.vectors() {
            let w = reflection_matrix(v).map_err(|e| e.to_string())?;
            for _ in 0..50 {
                let x = &pts[rng.gen_range(0..pts.len())];
                let r = act_albert_with(x, &w, Parenthesization::Right).map_err(|e| e.to_string())?;
                let l = act_albert_with(x, &w, Parenthesization::Left).map_err(|e| e.to_string())?;
                ensure(r == l, || format!("parenthesizations of W({v}) disagree at {x}"))?;
                albert_cases += 1;
            }
        }
        cases += albert_cases;
        ensure(cases >= 10_000, || format!("only {cases} cases"))?;
        Ok(format!("{cases} random cases, including {albert_cases} Albert actions in both orders"))
    }
}

/// Runs the whole suite, printing one line per criterion.
pub fn run_and_print() -> bool {
    let mut suite = Suite::new();
    let outcomes = suite.run_all(|o| println!("{o}"));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    failed == 0
}
