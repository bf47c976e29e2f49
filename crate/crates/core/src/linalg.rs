//! Exact linear algebra: rational row echelon forms and integer Hermite
//! normal forms for lattice membership.

use crate::rational::Rational;

/// An incrementally built reduced row echelon basis over the rationals.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Remainder of `v` after eliminating against the current rows.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let k = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&k * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<Rational>) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let k = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &(&k * r);
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut e = Echelon::new(first.len());
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix not square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip().expect("nonzero pivot");
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let k = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&k * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Rational], m: &[Vec<Rational>]) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rational::ZERO; cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o += &(x * y);
            }
        }
    }
    out
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// A full-rank or partial integer lattice in `Z^dim`, stored as its row
/// Hermite normal form (pivots strictly increasing, positive, entries above
/// each pivot reduced into `[0, pivot)`). Two lattices are equal iff their
/// normal forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl IntLattice {
    /// The Z-span of `gens`.
    pub fn span(dim: usize, gens: &[Vec<i64>]) -> Self {
        let mut pending: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "dimension mismatch");
                g.iter().map(|&x| x as i128).collect()
            })
            .filter(|g: &Vec<i128>| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            let mut pivot: Option<Vec<i128>> = None;
            let mut rest = Vec::with_capacity(pending.len());
            for r in pending.drain(..) {
                if r[col] == 0 {
                    rest.push(r);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(r),
                    Some(p) => {
                        let (g, x, y) = ext_gcd(p[col], r[col]);
                        let (pa, ra) = (p[col] / g, r[col] / g);
                        let np: Vec<i128> = p.iter().zip(&r).map(|(a, b)| x * a + y * b).collect();
                        let nr: Vec<i128> = p.iter().zip(&r).map(|(a, b)| ra * a - pa * b).collect();
                        debug_assert_eq!(nr[col], 0);
                        if nr.iter().any(|&v| v != 0) {
                            rest.push(nr);
                        }
                        pivot = Some(np);
                    }
                }
            }
            pending = rest;
            if let Some(mut p) = pivot {
                if p[col] < 0 {
                    p.iter_mut().for_each(|x| *x = -*x);
                }
                rows.push(p);
                pivots.push(col);
            }
        }
        let mut lat = IntLattice { dim, rows, pivots };
        lat.reduce_above();
        lat
    }

    fn reduce_above(&mut self) {
        for i in (0..self.rows.len()).rev() {
            let pc = self.pivots[i];
            let pv = self.rows[i][pc];
            for j in 0..i {
                let k = self.rows[j][pc].div_euclid(pv);
                if k != 0 {
                    let src = self.rows[i].clone();
                    for (x, y) in self.rows[j].iter_mut().zip(&src) {
                        *x -= k * y;
                    }
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Absolute determinant of the basis (product of pivots); for a full-rank
    /// lattice this is the index of the lattice in `Z^dim`.
    pub fn covolume(&self) -> i128 {
        self.pivots.iter().zip(&self.rows).map(|(&p, r)| r[p]).product()
    }

    pub fn basis(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| i64::try_from(x).expect("basis entry overflow")).collect())
            .collect()
    }

    /// Integer coordinates of `v` in the normal-form basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i128>> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coords = Vec::with_capacity(self.rows.len());
        let mut next = 0;
        for col in 0..self.dim {
            if next < self.pivots.len() && self.pivots[next] == col {
                let row = &self.rows[next];
                let pv = row[col];
                if w[col] % pv != 0 {
                    return None;
                }
                let k = w[col] / pv;
                if k != 0 {
                    for (x, y) in w.iter_mut().zip(row) {
                        *x -= k * y;
                    }
                }
                coords.push(k);
                next += 1;
            } else if w[col] != 0 {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &IntLattice) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(rv(&[1, 2, 3])));
        assert!(e.insert(rv(&[0, 1, 1])));
        assert!(!e.insert(rv(&[2, 5, 7])));
        assert!(e.contains(rv(&[1, 3, 4])));
        assert!(!e.contains(rv(&[0, 0, 1])));
        assert_eq!(e.rank(), 2);
        assert_eq!(rank(&[rv(&[1, 0]), rv(&[2, 0])]), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![rv(&[2, 1, 0]), rv(&[0, 1, 3]), rv(&[1, 0, 1])];
        let inv = invert(&m).unwrap();
        for (i, row) in m.iter().enumerate() {
            let prod = vec_mul(row, &inv);
            for (j, x) in prod.iter().enumerate() {
                assert_eq!(*x, if i == j { Rational::ONE } else { Rational::ZERO });
            }
        }
        assert!(invert(&[rv(&[1, 2]), rv(&[2, 4])]).is_none());
        assert_eq!(invert(&[vec![q(1, 2)]]).unwrap(), vec![vec![q(2, 1)]]);
    }

    #[test]
    fn hnf_membership() {
        // the even-sum sublattice of Z^2 plus (1,1)
        let lat = IntLattice::span(2, &[vec![2, 0], vec![1, 1], vec![3, 1], vec![0, 2]]);
        assert_eq!(lat.rank(), 2);
        assert_eq!(lat.covolume(), 2);
        assert!(lat.contains(&[1, -1]));
        assert!(!lat.contains(&[1, 0]));
        let same = IntLattice::span(2, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(lat, same);
        let sub = IntLattice::span(2, &[vec![2, 2], vec![2, -2]]);
        assert!(sub.is_sublattice_of(&lat));
        assert!(!lat.is_sublattice_of(&sub));
        let line = IntLattice::span(3, &[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(line.rank(), 1);
        assert!(!line.contains(&[1, 2, 4]));
        assert_eq!(line.coordinates(&[-3, -6, -9]), Some(vec![-3]));
    }
}
