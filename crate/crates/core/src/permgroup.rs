//! Permutation groups: orbits, transitivity and a deterministic
//! Schreier–Sims with Schreier-vector transversals.
//!
//! Permutations act on the right: `(g * h)(p) = h(g(p))`.
//!
//! [`schreier_sims`] accepts an optional *test set*: points on which any
//! element of the group generated by the inputs is determined, in the sense
//! that an element fixing every test point is the identity. Sifting then
//! only tracks images of test points, which makes large degrees affordable.
//! Without a test set every point is tracked.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::Error;

/// A bijection of `{0, …, n−1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (p, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidArgument(format!("image {x} of point {p} out of range {n}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument(format!("point {x} is hit twice")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &x)| p == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (p, &x) in self.images.iter().enumerate() {
            inv[x as usize] = p as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Lengths of all cycles, fixed points included, in order of least element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.cycle_lengths().into_iter().fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(p, &x)| *p == x as usize).count()
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, o: &Permutation) -> Permutation {
        self.then(o)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    /// The 0-based image array on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let images = s
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("bad image {t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<(), Error> {
    match gens.iter().find(|g| g.degree() != degree) {
        Some(g) => Err(Error::InvalidArgument(format!("generator of degree {} on domain of size {degree}", g.degree()))),
        None => Ok(()),
    }
}

/// The orbit of `point` in breadth-first order.
pub fn orbit(gens: &[Permutation], point: usize) -> Vec<usize> {
    let n = gens.first().map_or(point + 1, Permutation::degree);
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut out = vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
                queue.push_back(q);
            }
        }
    }
    out
}

/// All orbits, each sorted, listed by least element.
pub fn orbits(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if seen[p] {
            continue;
        }
        let mut o = if gens.is_empty() { vec![p] } else { orbit(gens, p) };
        for &q in &o {
            seen[q] = true;
        }
        o.sort_unstable();
        out.push(o);
    }
    out
}

pub fn is_transitive(gens: &[Permutation], degree: usize) -> bool {
    degree <= 1 || (!gens.is_empty() && orbit(gens, 0).len() == degree)
}

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct StrongGen {
    fwd: Vec<u32>,
    inv: Vec<u32>,
}

impl StrongGen {
    fn new(fwd: Vec<u32>) -> Self {
        let mut inv = vec![0u32; fwd.len()];
        for (p, &x) in fwd.iter().enumerate() {
            inv[x as usize] = p as u32;
        }
        StrongGen { fwd, inv }
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// Strong generators fixing all earlier base points.
    gens: Vec<u32>,
    /// Per generator: orbit rows whose Schreier generators have been sifted.
    cursor: Vec<usize>,
    orbit: Vec<u32>,
    /// The generator whose image of the tree parent is this point.
    label: Vec<u32>,
    /// Row-major images of the test points under each transversal element,
    /// when affordable.
    test_images: Option<Vec<u32>>,
}

impl Level {
    fn new(degree: usize, base: u32, test: &[u32], cache: bool) -> Self {
        let mut label = vec![NONE; degree];
        label[base as usize] = ROOT;
        Level {
            base,
            gens: Vec::new(),
            cursor: Vec::new(),
            orbit: vec![base],
            label,
            test_images: cache.then(|| test.to_vec()),
        }
    }

    fn contains(&self, p: u32) -> bool {
        self.label[p as usize] != NONE
    }

    /// `u_x⁻¹(q)` where `u_x` maps the base point to `x`.
    fn apply_inverse(&self, gens: &[StrongGen], mut x: u32, mut q: u32) -> u32 {
        loop {
            let e = self.label[x as usize];
            if e == ROOT {
                return q;
            }
            let g = &gens[e as usize];
            q = g.inv[q as usize];
            x = g.inv[x as usize];
        }
    }

    /// The tree path from the base point to `x`, as generator indices in
    /// application order.
    fn path(&self, gens: &[StrongGen], mut x: u32) -> Vec<u32> {
        let mut labels = Vec::new();
        loop {
            let e = self.label[x as usize];
            if e == ROOT {
                labels.reverse();
                return labels;
            }
            labels.push(e);
            x = gens[e as usize].inv[x as usize];
        }
    }

    fn add_gen(&mut self, gi: u32, gens: &[StrongGen], tlen: usize) {
        self.gens.push(gi);
        self.cursor.push(0);
        let old = self.orbit.len();
        for r in 0..old {
            self.try_extend(r, gi, gens, tlen);
        }
        let mut r = old;
        while r < self.orbit.len() {
            for k in 0..self.gens.len() {
                self.try_extend(r, self.gens[k], gens, tlen);
            }
            r += 1;
        }
    }

    fn try_extend(&mut self, r: usize, gi: u32, gens: &[StrongGen], tlen: usize) {
        let g = &gens[gi as usize];
        let y = g.fwd[self.orbit[r] as usize];
        if self.label[y as usize] != NONE {
            return;
        }
        self.label[y as usize] = gi;
        self.orbit.push(y);
        if let Some(t) = self.test_images.as_mut() {
            for k in 0..tlen {
                let img = g.fwd[t[r * tlen + k] as usize];
                t.push(img);
            }
        }
    }
}

/// A base and strong generating set with Schreier-vector transversals.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    test: Vec<u32>,
    /// Position of each point in `test`, or `NONE`.
    test_slot: Vec<u32>,
    gens: Vec<StrongGen>,
    levels: Vec<Level>,
    sifted: usize,
}

/// Test sets at most this large get per-orbit-point image tables.
const CACHE_LIMIT: usize = 256;

impl Bsgs {
    fn empty(degree: usize, test: Vec<u32>) -> Self {
        let mut test_slot = vec![NONE; degree];
        for (k, &p) in test.iter().enumerate() {
            test_slot[p as usize] = k as u32;
        }
        Bsgs { degree, test, test_slot, gens: Vec::new(), levels: Vec::new(), sifted: 0 }
    }

    fn cache(&self) -> bool {
        self.test.len() <= CACHE_LIMIT
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize).collect()
    }

    /// Lengths of the basic orbits, whose product is the group order.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.gens.iter().map(|g| Permutation { images: g.fwd.clone() }).collect()
    }

    /// Number of Schreier generators sifted while building.
    pub fn sifted_count(&self) -> usize {
        self.sifted
    }

    /// Images of the test points under the transversal element `u_x` of level `l`.
    fn transversal_on_test(&self, l: usize, row: usize, out: &mut [u32]) {
        let lv = &self.levels[l];
        let tlen = self.test.len();
        if let Some(t) = &lv.test_images {
            out.copy_from_slice(&t[row * tlen..(row + 1) * tlen]);
            return;
        }
        out.copy_from_slice(&self.test);
        for e in lv.path(&self.gens, lv.orbit[row]) {
            let g = &self.gens[e as usize];
            for p in out.iter_mut() {
                *p = g.fwd[*p as usize];
            }
        }
    }

    /// Sifts an element given by its images of the test points, starting at
    /// level `from`. Returns the level where sifting stopped (`levels.len()`
    /// if it passed them all) and whether the residue is the identity.
    fn sift_test(&self, img: &mut [u32], from: usize) -> (usize, bool) {
        for l in from..self.levels.len() {
            let lv = &self.levels[l];
            let x = img[self.test_slot[lv.base as usize] as usize];
            if !lv.contains(x) {
                return (l, false);
            }
            if x != lv.base {
                for q in img.iter_mut() {
                    *q = lv.apply_inverse(&self.gens, x, *q);
                }
            }
        }
        let trivial = img.iter().zip(&self.test).all(|(a, b)| a == b);
        (self.levels.len(), trivial)
    }

    /// Full-permutation sift from level `from`; returns the stop level.
    fn sift_full(&self, h: &mut [u32], from: usize) -> usize {
        for l in from..self.levels.len() {
            let lv = &self.levels[l];
            let x = h[lv.base as usize];
            if !lv.contains(x) {
                return l;
            }
            if x != lv.base {
                for q in h.iter_mut() {
                    *q = lv.apply_inverse(&self.gens, x, *q);
                }
            }
        }
        self.levels.len()
    }

    /// Exact membership test for an arbitrary permutation of the domain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.images.clone();
        self.sift_full(&mut h, 0) == self.levels.len() && h.iter().enumerate().all(|(p, &x)| p == x as usize)
    }

    /// Adds the residue `h` (fixing base points before `from`) to levels
    /// `from..=stop`, creating a new level if `stop` is past the end.
    fn add_residue(&mut self, h: Vec<u32>, from: usize, stop: usize) {
        if stop == self.levels.len() {
            let base = *self
                .test
                .iter()
                .find(|&&p| h[p as usize] != p)
                .expect("nontrivial residue moves a test point");
            let cache = self.cache();
            self.levels.push(Level::new(self.degree, base, &self.test, cache));
        }
        let gi = self.gens.len() as u32;
        self.gens.push(StrongGen::new(h));
        let tlen = self.test.len();
        for l in from..=stop {
            self.levels[l].add_gen(gi, &self.gens, tlen);
        }
    }

    /// Adds `g` unless it already lies in the group; returns whether it was new.
    fn add_generator(&mut self, g: &Permutation) -> bool {
        let mut img: Vec<u32> = self.test.iter().map(|&p| g.images[p as usize]).collect();
        let (stop, trivial) = self.sift_test(&mut img, 0);
        if trivial {
            return false;
        }
        let mut h = g.images.clone();
        let full_stop = self.sift_full(&mut h, 0);
        debug_assert_eq!(full_stop, stop);
        self.add_residue(h, 0, stop);
        self.complete(stop);
        true
    }

    /// Runs until every Schreier generator at every level sifts through
    /// the levels below it.
    fn complete(&mut self, top: usize) {
        let mut i = top.min(self.levels.len() - 1) as isize;
        while i >= 0 {
            match self.process_level(i as usize) {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    fn process_level(&mut self, i: usize) -> Option<usize> {
        let tlen = self.test.len();
        let mut u = vec![0u32; tlen];
        for k in 0..self.levels[i].gens.len() {
            let gi = self.levels[i].gens[k];
            while self.levels[i].cursor[k] < self.levels[i].orbit.len() {
                let r = self.levels[i].cursor[k];
                self.levels[i].cursor[k] += 1;
                let x = self.levels[i].orbit[r];
                let y = self.gens[gi as usize].fwd[x as usize];
                if self.levels[i].label[y as usize] == gi {
                    continue;
                }
                self.sifted += 1;
                self.transversal_on_test(i, r, &mut u);
                let lv = &self.levels[i];
                let g = &self.gens[gi as usize];
                for q in u.iter_mut() {
                    *q = lv.apply_inverse(&self.gens, y, g.fwd[*q as usize]);
                }
                let (stop, trivial) = self.sift_test(&mut u, i + 1);
                if trivial {
                    continue;
                }
                let mut h = self.schreier_generator(i, x, gi, y);
                let full_stop = self.sift_full(&mut h, i + 1);
                debug_assert_eq!(full_stop, stop);
                self.add_residue(h, i + 1, stop);
                return Some(stop);
            }
        }
        None
    }

    /// `u_x · g · u_y⁻¹` on the whole domain.
    fn schreier_generator(&self, i: usize, x: u32, gi: u32, y: u32) -> Vec<u32> {
        let lv = &self.levels[i];
        let path = lv.path(&self.gens, x);
        let g = &self.gens[gi as usize];
        (0..self.degree as u32)
            .map(|p| {
                let q = path.iter().fold(p, |q, &e| self.gens[e as usize].fwd[q as usize]);
                lv.apply_inverse(&self.gens, y, g.fwd[q as usize])
            })
            .collect()
    }
}

/// Builds a BSGS for the group generated by `gens` on `{0, …, degree−1}`.
///
/// `test_set`, when given, must determine group elements as described in the
/// module docs; the result is then verified only on those points. The first
/// base point is the test point with the largest orbit. Generators already in
/// the group built so far are skipped.
pub fn schreier_sims(degree: usize, gens: &[Permutation], test_set: Option<&[usize]>) -> Result<Bsgs, Error> {
    check_degrees(degree, gens)?;
    let test: Vec<u32> = match test_set {
        None => (0..degree as u32).collect(),
        Some(t) => {
            let mut seen = vec![false; degree];
            let mut out = Vec::with_capacity(t.len());
            for &p in t {
                if p >= degree {
                    return Err(Error::InvalidArgument(format!("test point {p} out of range {degree}")));
                }
                if !std::mem::replace(&mut seen[p], true) {
                    out.push(p as u32);
                }
            }
            out
        }
    };
    let mut bsgs = Bsgs::empty(degree, test);
    let nontrivial: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
    if nontrivial.is_empty() || bsgs.test.is_empty() {
        return Ok(bsgs);
    }
    let owned: Vec<Permutation> = nontrivial.iter().map(|&g| g.clone()).collect();
    let mut best = (0usize, bsgs.test[0]);
    let mut seen = vec![false; degree];
    for &p in &bsgs.test {
        if seen[p as usize] {
            continue;
        }
        let o = orbit(&owned, p as usize);
        for &q in &o {
            seen[q] = true;
        }
        if o.len() > best.0 {
            best = (o.len(), p);
        }
    }
    let cache = bsgs.cache();
    bsgs.levels.push(Level::new(degree, best.1, &bsgs.test, cache));
    for g in nontrivial {
        bsgs.add_generator(g);
    }
    if let Some(g) = gens.iter().find(|g| !bsgs.contains(g)) {
        return Err(Error::Validation(format!("generator does not sift: {g}")));
    }
    Ok(bsgs)
}

pub fn group_order(bsgs: &Bsgs) -> BigUint {
    bsgs.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    fn cycle(n: usize, c: &[u32]) -> Permutation {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for w in 0..c.len() {
            img[c[w] as usize] = c[(w + 1) % c.len()];
        }
        perm(&img)
    }

    /// Order by enumerating the closure (small groups only).
    fn brute_order(n: usize, gens: &[Permutation]) -> usize {
        let id = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    fn order_u64(b: &Bsgs) -> u64 {
        u64::try_from(b.order()).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let a = perm(&[1, 2, 0, 3]);
        let b = perm(&[0, 1, 3, 2]);
        assert_eq!(a.then(&b).images(), &[1, 3, 0, 2]);
        assert_eq!((&a * &a.inverse()), Permutation::identity(4));
        assert_eq!(a.order(), BigUint::from(3u32));
        assert_eq!(a.then(&b).order(), BigUint::from(4u32));
        assert_eq!(a.pow(3), Permutation::identity(4));
        assert_eq!(a.cycle_lengths(), vec![3, 1]);
        assert_eq!(a.fixed_points(), 1);
        assert!(!a.commutes_with(&b));
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert_eq!(a.to_string().parse::<Permutation>().unwrap(), a);
    }

    #[test]
    fn orbit_examples() {
        let id = Permutation::identity(5);
        assert_eq!(orbit(std::slice::from_ref(&id), 3), vec![3]);
        let g = cycle(5, &[0, 2, 4]);
        assert_eq!(orbits(std::slice::from_ref(&g), 5), vec![vec![0, 2, 4], vec![1], vec![3]]);
        assert!(!is_transitive(&[g], 5));
        assert!(is_transitive(&[cycle(5, &[0, 1, 2, 3, 4])], 5));
        assert!(is_transitive(&[], 1));
        assert!(is_transitive(&[Permutation::identity(1)], 1));
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let n = 9;
        let s = [cycle(n, &[0, 1]), cycle(n, &(0..n as u32).collect::<Vec<_>>())];
        assert_eq!(order_u64(&schreier_sims(n, &s, None).unwrap()), 362880);
        let a = [cycle(n, &[0, 1, 2]), cycle(n, &(0..n as u32).collect::<Vec<_>>())];
        assert_eq!(order_u64(&schreier_sims(n, &a, None).unwrap()), 181440);
    }

    #[test]
    fn trivial_groups() {
        let b = schreier_sims(4, &[], None).unwrap();
        assert_eq!(order_u64(&b), 1);
        assert!(b.contains(&Permutation::identity(4)));
        assert!(!b.contains(&cycle(4, &[0, 1])));
        let b = schreier_sims(4, &[Permutation::identity(4)], None).unwrap();
        assert_eq!(order_u64(&b), 1);
    }

    #[test]
    fn membership() {
        let gens = [cycle(6, &[0, 1, 2]), cycle(6, &[3, 4, 5])];
        let b = schreier_sims(6, &gens, None).unwrap();
        assert_eq!(order_u64(&b), 9);
        assert!(b.contains(&cycle(6, &[0, 2, 1]).then(&cycle(6, &[3, 4, 5]))));
        assert!(!b.contains(&cycle(6, &[0, 1])));
        assert!(!b.contains(&Permutation::identity(5)));
    }

    #[test]
    fn test_set_restricted_sifting() {
        // S5 on the 20 ordered pairs; fixing (0,1), (1,2), (2,3), (3,4)
        // fixes every point, so those four pairs determine each element.
        let n = 5;
        let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let idx = |p: (u32, u32)| pairs.iter().position(|&q| q == p).unwrap();
        let lift = |g: &Permutation| {
            perm(&pairs.iter().map(|&(a, b)| idx((g.apply(a as usize) as u32, g.apply(b as usize) as u32)) as u32).collect::<Vec<_>>())
        };
        let gens = [lift(&cycle(5, &[0, 1])), lift(&cycle(5, &[0, 1, 2, 3, 4]))];
        let test: Vec<usize> = [(0, 1), (1, 2), (2, 3), (3, 4)].into_iter().map(idx).collect();
        let b = schreier_sims(pairs.len(), &gens, Some(&test)).unwrap();
        assert_eq!(order_u64(&b), 120);
        let full = schreier_sims(pairs.len(), &gens, None).unwrap();
        assert_eq!(order_u64(&full), 120);
    }

    fn small_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| perm(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn order_matches_closure(gens in prop::collection::vec(small_perm(7), 0..4)) {
            let b = schreier_sims(7, &gens, None).unwrap();
            prop_assert_eq!(order_u64(&b) as usize, brute_order(7, &gens));
            for g in &gens {
                prop_assert!(b.contains(g));
            }
        }

        #[test]
        fn order_ignores_generator_order_and_redundancy(
            gens in prop::collection::vec(small_perm(8), 1..4),
            seed in any::<u64>(),
        ) {
            let base = order_u64(&schreier_sims(8, &gens, None).unwrap());
            let mut shuffled = gens.clone();
            shuffled.rotate_left((seed as usize) % gens.len());
            shuffled.reverse();
            prop_assert_eq!(order_u64(&schreier_sims(8, &shuffled, None).unwrap()), base);
            let mut redundant = gens.clone();
            redundant.push(gens[0].then(&gens[gens.len() - 1]));
            redundant.push(gens[0].inverse());
            prop_assert_eq!(order_u64(&schreier_sims(8, &redundant, None).unwrap()), base);
        }

        #[test]
        fn inverse_and_composition(a in small_perm(9), b in small_perm(9), c in small_perm(9)) {
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
        }
    }
}
