//! Symmetrizable Cartan data `(C, D, Omega)`, the exchange matrix `B(C, Omega)`
//! and finite/affine classification.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Finite,
    Affine,
    Indefinite,
}

/// Validated Cartan triple. Vertices are 0-indexed; a pair `(i, j)` in
/// `omega` is an arrow `j -> i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanTriple {
    n: usize,
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    omega: BTreeSet<(usize, usize)>,
    b: Vec<Vec<i64>>,
    kind: Kind,
}

/// JSON input form, 1-indexed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CartanInput {
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub orientation: Vec<[usize; 2]>,
}

impl CartanTriple {
    /// Validates and relabels vertices so that `(i, j) in omega` implies `i < j`.
    /// Returns the triple and `labels`, where new vertex `v` is old vertex `labels[v]`.
    pub fn validate(
        c: Vec<Vec<i64>>,
        d: Vec<i64>,
        omega: &[(usize, usize)],
    ) -> Result<(Self, Vec<usize>)> {
        let t = Self::from_parts(c, d, omega.iter().copied().collect())?;
        let order = t.topological_order();
        Ok((t.relabel(&order), order))
    }

    /// Validates without relabeling (the orientation only has to be acyclic).
    pub fn from_parts(c: Vec<Vec<i64>>, d: Vec<i64>, omega: BTreeSet<(usize, usize)>) -> Result<Self> {
        let n = c.len();
        if n == 0 {
            return Err(Error::NonCartan("empty matrix".into()));
        }
        if c.iter().any(|r| r.len() != n) {
            return Err(Error::NonCartan("matrix is not square".into()));
        }
        if d.len() != n || d.iter().any(|&x| x <= 0) {
            return Err(Error::NonCartan("symmetrizer must have n positive entries".into()));
        }
        for i in 0..n {
            if c[i][i] != 2 {
                return Err(Error::NonCartan(format!("c[{i}][{i}] != 2")));
            }
            for j in 0..n {
                if i != j && (c[i][j] > 0 || ((c[i][j] == 0) != (c[j][i] == 0))) {
                    return Err(Error::NonCartan(format!("sign pattern violated at ({i},{j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if d[i] * c[i][j] != d[j] * c[j][i] {
                    return Err(Error::NotSymmetrizer);
                }
            }
        }
        for &(i, j) in &omega {
            if i >= n || j >= n || i == j {
                return Err(Error::BadOrientation(format!("invalid pair ({}, {})", i + 1, j + 1)));
            }
            if c[i][j] == 0 {
                return Err(Error::BadOrientation(format!("pair ({}, {}) is not an edge", i + 1, j + 1)));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if c[i][j] != 0 && (omega.contains(&(i, j)) == omega.contains(&(j, i))) {
                    return Err(Error::BadOrientation(format!(
                        "edge {{{}, {}}} needs exactly one direction",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let kind = classify(&c, &d);
        let mut t = CartanTriple { n, c, d, omega, b: Vec::new(), kind };
        if t.topological_order_checked().is_none() {
            return Err(Error::BadOrientation("oriented cycle".into()));
        }
        t.b = t.compute_b();
        Ok(t)
    }

    pub fn from_input(inp: &CartanInput) -> Result<(Self, Vec<usize>)> {
        let mut omega = Vec::new();
        for &[i, j] in &inp.orientation {
            if i == 0 || j == 0 {
                return Err(Error::Input("orientation pairs are 1-indexed".into()));
            }
            omega.push((i - 1, j - 1));
        }
        Self::validate(inp.cartan.clone(), inp.symmetrizer.clone(), &omega)
    }

    pub fn to_input(&self) -> CartanInput {
        CartanInput {
            cartan: self.c.clone(),
            symmetrizer: self.d.clone(),
            orientation: self.omega.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
    }

    fn compute_b(&self) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0; self.n]; self.n];
        for &(i, j) in &self.omega {
            b[i][j] = -self.c[i][j];
            b[j][i] = self.c[j][i];
        }
        b
    }

    fn topological_order_checked(&self) -> Option<Vec<usize>> {
        // (i, j) in omega forces i before j
        let mut pending = vec![0usize; self.n];
        for &(_, j) in &self.omega {
            pending[j] += 1;
        }
        let mut placed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        while order.len() < self.n {
            let v = (0..self.n).find(|&v| !placed[v] && pending[v] == 0)?;
            placed[v] = true;
            order.push(v);
            for &(i, j) in &self.omega {
                if i == v {
                    pending[j] -= 1;
                }
            }
        }
        Some(order)
    }

    fn topological_order(&self) -> Vec<usize> {
        self.topological_order_checked().expect("acyclic")
    }

    /// New vertex `v` is old vertex `order[v]`.
    pub fn relabel(&self, order: &[usize]) -> Self {
        let n = self.n;
        let mut inv = vec![0; n];
        for (v, &o) in order.iter().enumerate() {
            inv[o] = v;
        }
        let c = (0..n).map(|i| (0..n).map(|j| self.c[order[i]][order[j]]).collect()).collect();
        let d = order.iter().map(|&o| self.d[o]).collect();
        let omega = self.omega.iter().map(|&(i, j)| (inv[i], inv[j])).collect();
        let mut t = CartanTriple { n, c, d, omega, b: Vec::new(), kind: self.kind };
        t.b = t.compute_b();
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn c(&self) -> &[Vec<i64>] {
        &self.c
    }
    pub fn cij(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }
    pub fn d(&self) -> &[i64] {
        &self.d
    }
    pub fn omega(&self) -> &BTreeSet<(usize, usize)> {
        &self.omega
    }
    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }
    pub fn bij(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_normalized(&self) -> bool {
        self.omega.iter().all(|&(i, j)| i < j)
    }

    /// No arrow leaves `k`.
    pub fn is_sink(&self, k: usize) -> bool {
        !self.omega.iter().any(|&(_, j)| j == k)
    }

    /// No arrow enters `k`.
    pub fn is_source(&self, k: usize) -> bool {
        !self.omega.iter().any(|&(i, _)| i == k)
    }

    pub fn reflect_orientation(&self, k: usize) -> Result<Self> {
        if k >= self.n || !(self.is_sink(k) || self.is_source(k)) {
            return Err(Error::NotSinkOrSource(k + 1));
        }
        let omega = self
            .omega
            .iter()
            .map(|&(i, j)| if i == k || j == k { (j, i) } else { (i, j) })
            .collect();
        let mut t = CartanTriple { omega, ..self.clone() };
        t.b = t.compute_b();
        Ok(t)
    }

    /// Full subtriple on `keep` (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let pos = |v: usize| keep.iter().position(|&x| x == v);
        let c = keep.iter().map(|&i| keep.iter().map(|&j| self.c[i][j]).collect()).collect();
        let d = keep.iter().map(|&i| self.d[i]).collect();
        let omega = self
            .omega
            .iter()
            .filter_map(|&(i, j)| Some((pos(i)?, pos(j)?)))
            .collect();
        Self::from_parts(c, d, omega)
    }

    /// Symmetrized form `d_i c_ij`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.d[i] * self.c[i][j]).collect()).collect()
    }

    pub fn require_affine(&self) -> Result<()> {
        if self.kind != Kind::Affine {
            return Err(Error::NotAffine(format!(
                "{:?}; only affine type is covered by the supported theory",
                self.kind
            )));
        }
        Ok(())
    }

    /// Primitive positive generator of the radical.
    pub fn null_root(&self) -> Result<Vec<i64>> {
        self.require_affine()?;
        let ker = rational_kernel(&self.c);
        if ker.len() != 1 {
            return Err(Error::Invariant("affine kernel is not one-dimensional".into()));
        }
        let v = &ker[0];
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for x in ints.iter_mut() {
            *x /= &g;
        }
        if ints.iter().any(|x| x.is_negative()) {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
        if ints.iter().any(|x| !x.is_positive()) {
            return Err(Error::Invariant("null root is not positive".into()));
        }
        Ok(ints.iter().map(|x| i64::try_from(x).expect("small null root")).collect())
    }

    /// Vertices `k` whose complement is of finite type.
    pub fn admissible_extended_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| {
                let keep: Vec<usize> = (0..self.n).filter(|&v| v != k).collect();
                classify_sub(&self.c, &self.d, &keep) == Kind::Finite
            })
            .collect()
    }
}

fn to_q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn classify_sub(c: &[Vec<i64>], d: &[i64], keep: &[usize]) -> Kind {
    let sc: Vec<Vec<i64>> = keep.iter().map(|&i| keep.iter().map(|&j| c[i][j]).collect()).collect();
    let sd: Vec<i64> = keep.iter().map(|&i| d[i]).collect();
    classify(&sc, &sd)
}

/// Finite: positive definite; Affine: positive semidefinite with one-dimensional kernel.
pub fn classify(c: &[Vec<i64>], d: &[i64]) -> Kind {
    let n = c.len();
    if n == 0 {
        return Kind::Finite;
    }
    let mut s: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| to_q(d[i] * c[i][j])).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        if active.is_empty() {
            return Kind::Finite;
        }
        if active.iter().any(|&i| s[i][i].is_negative()) {
            return Kind::Indefinite;
        }
        let piv = active.iter().copied().find(|&i| s[i][i].is_positive());
        let p = match piv {
            Some(p) => p,
            None => {
                let nonzero = active.iter().any(|&i| active.iter().any(|&j| !s[i][j].is_zero()));
                if nonzero {
                    return Kind::Indefinite;
                }
                return if active.len() == 1 { Kind::Affine } else { Kind::Indefinite };
            }
        };
        active.retain(|&i| i != p);
        let pv = s[p][p].clone();
        for &i in &active {
            let f = &s[i][p] / &pv;
            for &j in &active {
                let delta = &f * &s[p][j];
                s[i][j] -= delta;
            }
        }
    }
}

/// Basis of the rational kernel of an integer matrix.
pub fn rational_kernel(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| to_q(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let pv = a[r][col].clone();
        for x in a[r].iter_mut() {
            *x /= &pv;
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of an integer matrix over the rationals.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    cols - rational_kernel(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn b3tilde_exchange_matrix() {
        let t = fixtures::b3tilde();
        assert_eq!(t.kind(), Kind::Affine);
        let b = t.b();
        assert_eq!((b[0][1], b[1][0], b[1][2], b[2][1], b[2][3], b[3][2]), (2, -1, 1, -1, 1, -2));
        assert_eq!(t.null_root().unwrap(), vec![1, 1, 1, 1]);
        assert!(t.is_sink(0) && t.is_source(3));
    }

    #[test]
    fn small_kinds() {
        let (a2, _) = CartanTriple::validate(vec![vec![2, -1], vec![-1, 2]], vec![1, 1], &[(0, 1)]).unwrap();
        assert_eq!(a2.kind(), Kind::Finite);
        let k = fixtures::kronecker();
        assert_eq!(k.kind(), Kind::Affine);
        assert_eq!(k.null_root().unwrap(), vec![1, 1]);
        let bad = CartanTriple::validate(vec![vec![2, -1], vec![-4, 2]], vec![1, 4], &[(0, 1)]);
        assert_eq!(bad.unwrap_err(), Error::NotSymmetrizer);
        let (tw, _) = CartanTriple::validate(vec![vec![2, -1], vec![-4, 2]], vec![4, 1], &[(0, 1)]).unwrap();
        assert_eq!(tw.null_root().unwrap(), vec![1, 2]);
        let (hyp, _) = CartanTriple::validate(vec![vec![2, -3], vec![-3, 2]], vec![1, 1], &[(0, 1)]).unwrap();
        assert_eq!(hyp.kind(), Kind::Indefinite);
        assert!(matches!(hyp.null_root(), Err(Error::NotAffine(_))));
    }

    #[test]
    fn orientation_errors() {
        let c = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        let cyc = CartanTriple::validate(c.clone(), vec![1, 1, 1], &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(cyc, Err(Error::BadOrientation(_))));
        let missing = CartanTriple::validate(c.clone(), vec![1, 1, 1], &[(0, 1), (1, 2)]);
        assert!(matches!(missing, Err(Error::BadOrientation(_))));
        let nc = CartanTriple::validate(vec![vec![2, 1], vec![1, 2]], vec![1, 1], &[(0, 1)]);
        assert!(matches!(nc, Err(Error::NonCartan(_))));
    }

    #[test]
    fn relabeling_makes_arrows_increase() {
        let c = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        // 1 -> 2 -> 3 means pairs (2,1), (3,2)
        let (t, labels) = CartanTriple::validate(c, vec![1, 1, 1], &[(1, 0), (2, 1)]).unwrap();
        assert!(t.is_normalized());
        assert_eq!(labels, vec![2, 1, 0]);
    }

    #[test]
    fn reflections_of_b3tilde() {
        let t = fixtures::b3tilde();
        let t1 = t.reflect_orientation(0).unwrap();
        let want: BTreeSet<_> = [(2, 3), (1, 2), (1, 0)].into_iter().collect();
        assert_eq!(t1.omega(), &want);
        assert_eq!((t1.bij(0, 1), t1.bij(1, 0)), (-2, 1));
        assert_eq!(t1.reflect_orientation(0).unwrap(), t);
        let t4 = t.reflect_orientation(3).unwrap();
        let want4: BTreeSet<_> = [(3, 2), (1, 2), (0, 1)].into_iter().collect();
        assert_eq!(t4.omega(), &want4);
        assert!(matches!(t.reflect_orientation(1), Err(Error::NotSinkOrSource(2))));
    }
}
