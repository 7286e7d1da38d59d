//! Explicit locally free modules over prime fields.
//!
//! `H_i = F_p[eps]/(eps^{d_i})`. For an arrow `(i, j)` with
//! `g = gcd(|c_ij|, |c_ji|)`, `a = |c_ji| / g` and `b = |c_ij| / g`, each of the
//! `g` summands of `iH_j` is `A = F_p[tau]/(tau^N)` with `eps_i = tau^b`,
//! `eps_j = tau^a` and `N = d_i b = d_j a`. As a left `H_i`-module `A` has basis
//! `tau^s` (`s < b`); as a right `H_j`-module, basis `tau^t` (`t < a`).
//! The structure map of `(i, j)` is an `r_i x (|c_ij| r_j)` matrix over `H_i`
//! whose columns are indexed by `(u, sigma, s)`: vertex basis vector,
//! summand, `tau`-power.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanInput, CartanTriple};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Element of `F_p[eps]/(eps^d)`, lowest degree first.
pub type Elem = Vec<u64>;

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

fn h_mul(a: &[u64], b: &[u64], p: u64) -> Elem {
    let d = a.len();
    let mut out = vec![0; d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(d - i) {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn h_axpy(acc: &mut [u64], x: &[u64], y: &[u64], p: u64) {
    let d = acc.len();
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate().take(d - i) {
            acc[i + j] = (acc[i + j] + a * b) % p;
        }
    }
}

fn h_val(a: &[u64]) -> usize {
    a.iter().position(|&x| x != 0).unwrap_or(a.len())
}

fn h_inv(a: &[u64], p: u64) -> Elem {
    let d = a.len();
    let c0 = inv_mod(a[0], p);
    let mut out = vec![0; d];
    out[0] = c0;
    for k in 1..d {
        let s = (1..=k).fold(0, |s, i| (s + a[i] * out[k - i]) % p);
        out[k] = (p - s) % p * c0 % p;
    }
    out
}

fn h_shift_down(a: &[u64], v: usize) -> Elem {
    let mut out = vec![0; a.len()];
    out[..a.len() - v].copy_from_slice(&a[v..]);
    out
}

/// Matrix over `F_p[eps]/(eps^d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMat {
    pub rows: usize,
    pub cols: usize,
    pub d: usize,
    data: Vec<u64>,
}

impl HMat {
    pub fn zeros(rows: usize, cols: usize, d: usize) -> Self {
        HMat { rows, cols, d, data: vec![0; rows * cols * d] }
    }

    pub fn identity(n: usize, d: usize) -> Self {
        let mut m = Self::zeros(n, n, d);
        for i in 0..n {
            m.entry_mut(i, i)[0] = 1;
        }
        m
    }

    pub fn random<R: Rng>(rows: usize, cols: usize, d: usize, p: u64, rng: &mut R) -> Self {
        HMat { rows, cols, d, data: (0..rows * cols * d).map(|_| rng.gen_range(0..p)).collect() }
    }

    pub fn entry(&self, r: usize, c: usize) -> &[u64] {
        let o = (r * self.cols + c) * self.d;
        &self.data[o..o + self.d]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut [u64] {
        let o = (r * self.cols + c) * self.d;
        &mut self.data[o..o + self.d]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.entry(r, c).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &HMat, p: u64) -> HMat {
        assert_eq!(self.cols, o.rows, "matrix shapes");
        let mut out = HMat::zeros(self.rows, o.cols, self.d);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.entry(r, k).to_vec();
                if x.iter().all(|&v| v == 0) {
                    continue;
                }
                for c in 0..o.cols {
                    h_axpy(out.entry_mut(r, c), &x, o.entry(k, c), p);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem], p: u64) -> Vec<Elem> {
        (0..self.rows)
            .map(|r| {
                let mut acc = vec![0; self.d];
                for (c, x) in v.iter().enumerate() {
                    h_axpy(&mut acc, self.entry(r, c), x, p);
                }
                acc
            })
            .collect()
    }

    fn select_rows(&self, rows: &[usize]) -> HMat {
        let mut out = HMat::zeros(rows.len(), self.cols, self.d);
        for (a, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.entry_mut(a, c).copy_from_slice(self.entry(r, c));
            }
        }
        out
    }

    fn select_cols(&self, cols: &[usize]) -> HMat {
        let mut out = HMat::zeros(self.rows, cols.len(), self.d);
        for r in 0..self.rows {
            for (a, &c) in cols.iter().enumerate() {
                out.entry_mut(r, a).copy_from_slice(self.entry(r, c));
            }
        }
        out
    }

    fn col_range(&self, lo: usize, hi: usize) -> HMat {
        self.select_cols(&(lo..hi).collect::<Vec<_>>())
    }

    fn row_op(&mut self, dst: usize, src: usize, f: &[u64], p: u64) {
        // row_dst -= f * row_src
        for c in 0..self.cols {
            let prod = h_mul(f, self.entry(src, c), p);
            let e = self.entry_mut(dst, c);
            for (x, y) in e.iter_mut().zip(prod) {
                *x = (*x + p - y) % p;
            }
        }
    }

    fn col_op(&mut self, dst: usize, src: usize, f: &[u64], p: u64) {
        for r in 0..self.rows {
            let prod = h_mul(f, self.entry(r, src), p);
            let e = self.entry_mut(r, dst);
            for (x, y) in e.iter_mut().zip(prod) {
                *x = (*x + p - y) % p;
            }
        }
    }

    fn scale_row(&mut self, r: usize, f: &[u64], p: u64) {
        for c in 0..self.cols {
            let v = h_mul(f, self.entry(r, c), p);
            self.entry_mut(r, c).copy_from_slice(&v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            for l in 0..self.d {
                let (i, j) = ((a * self.cols + c) * self.d + l, (b * self.cols + c) * self.d + l);
                self.data.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            for l in 0..self.d {
                let (i, j) = ((r * self.cols + a) * self.d + l, (r * self.cols + b) * self.d + l);
                self.data.swap(i, j);
            }
        }
    }

    /// Inverse over the local ring, if the reduction mod `eps` is invertible.
    pub fn inverse(&self, p: u64) -> Option<HMat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut w = self.clone();
        let mut inv = HMat::identity(n, self.d);
        for c in 0..n {
            let r = (c..n).find(|&r| w.entry(r, c)[0] != 0)?;
            w.swap_rows(c, r);
            inv.swap_rows(c, r);
            let u = h_inv(w.entry(c, c), p);
            w.scale_row(c, &u, p);
            inv.scale_row(c, &u, p);
            for r in 0..n {
                if r != c {
                    let f = w.entry(r, c).to_vec();
                    if f.iter().any(|&x| x != 0) {
                        w.row_op(r, c, &f, p);
                        inv.row_op(r, c, &f, p);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<Vec<u64>>> =
            (0..self.rows).map(|r| (0..self.cols).map(|c| self.entry(r, c).to_vec()).collect()).collect();
        serde_json::json!(rows)
    }
}

/// Smith form `P A Q = diag(eps^{v_t})` over the chain ring.
struct Smith {
    p_mat: HMat,
    vals: Vec<usize>,
    q_mat: HMat,
}

fn smith(a: &HMat, p: u64) -> Smith {
    let (rows, cols, d) = (a.rows, a.cols, a.d);
    let mut w = a.clone();
    let mut pm = HMat::identity(rows, d);
    let mut qm = HMat::identity(cols, d);
    let mut vals = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best = (d, t, t);
        for r in t..rows {
            for c in t..cols {
                let v = h_val(w.entry(r, c));
                if v < best.0 {
                    best = (v, r, c);
                }
            }
        }
        let (v, r, c) = best;
        if v == d {
            vals.extend(std::iter::repeat(d).take(rows.min(cols) - t));
            break;
        }
        w.swap_rows(t, r);
        pm.swap_rows(t, r);
        w.swap_cols(t, c);
        qm.swap_cols(t, c);
        let u = h_inv(&h_shift_down(w.entry(t, t), v), p);
        w.scale_row(t, &u, p);
        pm.scale_row(t, &u, p);
        for r in 0..rows {
            if r != t && h_val(w.entry(r, t)) < d {
                let f = h_shift_down(w.entry(r, t), v);
                w.row_op(r, t, &f, p);
                pm.row_op(r, t, &f, p);
            }
        }
        for c in 0..cols {
            if c != t && h_val(w.entry(t, c)) < d {
                let f = h_shift_down(w.entry(t, c), v);
                w.col_op(c, t, &f, p);
                qm.col_op(c, t, &f, p);
            }
        }
        vals.push(v);
    }
    Smith { p_mat: pm, vals, q_mat: qm }
}

/// Bimodule data of one arrow `(i, j)`, i.e. `j -> i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArrowModel {
    pub i: usize,
    pub j: usize,
    pub g: usize,
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub di: usize,
    pub dj: usize,
}

impl ArrowModel {
    pub fn new(t: &CartanTriple, i: usize, j: usize) -> Result<Self> {
        let cij = t.cij(i, j).unsigned_abs() as usize;
        let cji = t.cij(j, i).unsigned_abs() as usize;
        let g = num_integer::gcd(cij, cji);
        let (a, b) = (cji / g, cij / g);
        let (di, dj) = (t.d()[i] as usize, t.d()[j] as usize);
        if a.min(b) != 1 {
            return Err(Error::Input(format!("bimodule model needs |c_ij| or |c_ji| to divide the other at ({}, {})", i + 1, j + 1)));
        }
        if di * b != dj * a {
            return Err(Error::Invariant("bimodule dimensions disagree".into()));
        }
        Ok(ArrowModel { i, j, g, a, b, n: di * b, di, dj })
    }

    /// `H_i`-rank of `iH_j (x) H_j^{r_j}`.
    pub fn width(&self, rj: usize) -> usize {
        self.g * self.b * rj
    }

    fn col(&self, u: usize, sigma: usize, s: usize) -> usize {
        (u * self.g + sigma) * self.b + s
    }

    /// `H_i`-coordinates (length `b`) of a `tau`-polynomial.
    fn to_hi(&self, x: &[u64]) -> Vec<Elem> {
        (0..self.b).map(|s| (0..self.di).map(|l| x[s + self.b * l]).collect()).collect()
    }

    fn from_hi(&self, coords: &[Elem]) -> Vec<u64> {
        let mut x = vec![0; self.n];
        for (s, h) in coords.iter().enumerate() {
            for (l, &c) in h.iter().enumerate() {
                x[s + self.b * l] = c;
            }
        }
        x
    }

    /// `tau^t h(tau^a)` for `h` in `H_j`.
    fn hj_to_tau(&self, h: &[u64], t: usize) -> Vec<u64> {
        let mut x = vec![0; self.n];
        for (l, &c) in h.iter().enumerate() {
            let e = t + self.a * l;
            if e < self.n {
                x[e] = c;
            }
        }
        x
    }

    fn tau_mul(&self, x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
        h_mul(x, y, p)
    }

    /// `(id (x) f)` on `H_i`-coordinates, for `f` an `s_j x r_j` matrix over `H_j`.
    fn tensor_map(&self, f: &HMat, v: &[Elem], p: u64) -> Vec<Elem> {
        let (sj, rj) = (f.rows, f.cols);
        let mut out = vec![vec![0; self.di]; self.width(sj)];
        for u in 0..rj {
            for sigma in 0..self.g {
                let c0 = self.col(u, sigma, 0);
                let x = self.from_hi(&v[c0..c0 + self.b]);
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                for up in 0..sj {
                    let phi = f.entry(up, u);
                    if phi.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let y = self.tau_mul(&x, &self.hj_to_tau(phi, 0), p);
                    let c1 = self.col(up, sigma, 0);
                    for (s, h) in self.to_hi(&y).into_iter().enumerate() {
                        for (acc, c) in out[c1 + s].iter_mut().zip(h) {
                            *acc = (*acc + c) % p;
                        }
                    }
                }
            }
        }
        out
    }

    fn tensor_matrix(&self, f: &HMat, p: u64) -> HMat {
        let w = self.width(f.cols);
        let mut out = HMat::zeros(self.width(f.rows), w, self.di);
        for c in 0..w {
            let mut unit = vec![vec![0; self.di]; w];
            unit[c][0] = 1;
            for (r, e) in self.tensor_map(f, &unit, p).into_iter().enumerate() {
                out.entry_mut(r, c).copy_from_slice(&e);
            }
        }
        out
    }
}

/// Arrow models for every `(i, j)` in the orientation.
#[derive(Clone, Debug)]
pub struct BimoduleModel {
    pub arrows: BTreeMap<(usize, usize), ArrowModel>,
}

impl BimoduleModel {
    pub fn new(t: &CartanTriple) -> Result<Self> {
        let arrows = t.omega().iter().map(|&(i, j)| Ok(((i, j), ArrowModel::new(t, i, j)?))).collect::<Result<_>>()?;
        Ok(BimoduleModel { arrows })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqModule {
    pub p: u64,
    pub triple: CartanTriple,
    pub rank: Vec<usize>,
    pub maps: BTreeMap<(usize, usize), HMat>,
}

/// Shape `(rows, cols, d)` expected for the structure map of `(i, j)`.
fn map_shape(t: &CartanTriple, rank: &[usize], i: usize, j: usize) -> (usize, usize, usize) {
    let cij = t.cij(i, j).unsigned_abs() as usize;
    (rank[i], cij * rank[j], t.d()[i] as usize)
}

pub fn make_module(t: &CartanTriple, rank: &[usize], maps: BTreeMap<(usize, usize), HMat>, p: u64) -> Result<FqModule> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not a prime")));
    }
    if rank.len() != t.n() {
        return Err(Error::ShapeMismatch("rank length".into()));
    }
    BimoduleModel::new(t)?;
    let mut full = BTreeMap::new();
    for &(i, j) in t.omega() {
        let (r, c, d) = map_shape(t, rank, i, j);
        let m = maps.get(&(i, j)).cloned().unwrap_or_else(|| HMat::zeros(r, c, d));
        if (m.rows, m.cols, m.d) != (r, c, d) {
            return Err(Error::ShapeMismatch(format!(
                "map ({}, {}) should be {r} x {c} over eps^{d}, got {} x {} over eps^{}",
                i + 1,
                j + 1,
                m.rows,
                m.cols,
                m.d
            )));
        }
        if m.data.iter().any(|&x| x >= p) {
            return Err(Error::ShapeMismatch("entries must be reduced mod p".into()));
        }
        full.insert((i, j), m);
    }
    if maps.keys().any(|k| !t.omega().contains(k)) {
        return Err(Error::ShapeMismatch("map given for a pair outside the orientation".into()));
    }
    Ok(FqModule { p, triple: t.clone(), rank: rank.to_vec(), maps: full })
}

pub fn random_module<R: Rng>(t: &CartanTriple, rank: &[usize], p: u64, rng: &mut R) -> Result<FqModule> {
    let maps = t
        .omega()
        .iter()
        .map(|&(i, j)| {
            let (r, c, d) = map_shape(t, rank, i, j);
            ((i, j), HMat::random(r, c, d, p, rng))
        })
        .collect();
    make_module(t, rank, maps, p)
}

/// Ranks of the two terms and the map of the complex
/// `(+)_i Hom(M_i, N_i) -> (+)_{(i,j)} Hom(iH_j (x) M_j, N_i)`.
fn hom_complex(m: &FqModule, n: &FqModule) -> Result<(usize, usize, usize)> {
    if m.triple != n.triple || m.p != n.p {
        return Err(Error::ShapeMismatch("modules over different algebras".into()));
    }
    let t = &m.triple;
    let p = m.p;
    let model = BimoduleModel::new(t)?;
    let nv = t.n();
    let d: Vec<usize> = t.d().iter().map(|&x| x as usize).collect();
    let c0: usize = (0..nv).map(|i| n.rank[i] * m.rank[i] * d[i]).sum();
    let c1: usize = model
        .arrows
        .values()
        .map(|am| n.rank[am.i] * am.width(m.rank[am.j]) * d[am.i])
        .sum();
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(c0);
    for v in 0..nv {
        for a in 0..n.rank[v] {
            for b in 0..m.rank[v] {
                for l in 0..d[v] {
                    let mut f = HMat::zeros(n.rank[v], m.rank[v], d[v]);
                    f.entry_mut(a, b)[l] = 1;
                    let mut col = Vec::with_capacity(c1);
                    for (&(i, j), am) in &model.arrows {
                        let w = am.width(m.rank[j]);
                        let mm = &m.maps[&(i, j)];
                        let nm = &n.maps[&(i, j)];
                        let tens = if j == v { Some(am.tensor_matrix(&f, p)) } else { None };
                        let lhs = if i == v { Some(f.mul(mm, p)) } else { None };
                        let rhs = tens.map(|tm| nm.mul(&tm, p));
                        for c in 0..w {
                            for r in 0..n.rank[i] {
                                let mut e = vec![0; d[i]];
                                if let Some(l) = &lhs {
                                    e.copy_from_slice(l.entry(r, c));
                                }
                                if let Some(rm) = &rhs {
                                    for (x, y) in e.iter_mut().zip(rm.entry(r, c)) {
                                        *x = (*x + p - y) % p;
                                    }
                                }
                                col.extend(e);
                            }
                        }
                    }
                    columns.push(col);
                }
            }
        }
    }
    let rank = rank_mod_p(columns, p);
    Ok((c0, c1, rank))
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `dim_F Hom(M, N)`.
pub fn hom_dim(m: &FqModule, n: &FqModule) -> Result<usize> {
    let (c0, _, r) = hom_complex(m, n)?;
    Ok(c0 - r)
}

pub fn end_dim(m: &FqModule) -> Result<usize> {
    hom_dim(m, m)
}

/// `dim_F Ext^1(M, N)`, from the standard two-term projective resolution.
pub fn ext_dim(m: &FqModule, n: &FqModule) -> Result<usize> {
    let (_, c1, r) = hom_complex(m, n)?;
    Ok(c1 - r)
}

/// `<m, n> = sum_i d_i m_i n_i - sum_{(i,j)} d_i |c_ij| m_j n_i`.
pub fn euler_form(t: &CartanTriple, m: &[usize], n: &[usize]) -> i64 {
    let d = t.d();
    let diag: i64 = (0..t.n()).map(|i| d[i] * (m[i] * n[i]) as i64).sum();
    let off: i64 = t.omega().iter().map(|&(i, j)| d[i] * t.cij(i, j).abs() * (m[j] * n[i]) as i64).sum();
    diag - off
}

/// Open-orbit criterion: `dim End = sum d_i r_i^2 - sum_{(i,j)} d_i b_ij r_i r_j`.
pub fn is_rigid(m: &FqModule) -> Result<bool> {
    let e = end_dim(m)? as i64;
    Ok(e == euler_form(&m.triple, &m.rank, &m.rank))
}

impl FqModule {
    pub fn direct_sum(&self, o: &FqModule) -> Result<FqModule> {
        if self.triple != o.triple || self.p != o.p {
            return Err(Error::ShapeMismatch("modules over different algebras".into()));
        }
        let rank: Vec<usize> = self.rank.iter().zip(&o.rank).map(|(a, b)| a + b).collect();
        let mut maps = BTreeMap::new();
        for (&(i, j), a) in &self.maps {
            let b = &o.maps[&(i, j)];
            let mut m = HMat::zeros(a.rows + b.rows, a.cols + b.cols, a.d);
            for r in 0..a.rows {
                for c in 0..a.cols {
                    m.entry_mut(r, c).copy_from_slice(a.entry(r, c));
                }
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.entry_mut(a.rows + r, a.cols + c).copy_from_slice(b.entry(r, c));
                }
            }
            maps.insert((i, j), m);
        }
        make_module(&self.triple, &rank, maps, self.p)
    }

    /// The same module after a random change of `H_i`-bases at every vertex.
    pub fn base_change<R: Rng>(&self, rng: &mut R) -> Result<FqModule> {
        let t = &self.triple;
        let model = BimoduleModel::new(t)?;
        let mut gs = Vec::new();
        for v in 0..t.n() {
            let d = t.d()[v] as usize;
            let g = loop {
                let g = HMat::random(self.rank[v], self.rank[v], d, self.p, rng);
                if let Some(inv) = g.inverse(self.p) {
                    break (g, inv);
                }
            };
            gs.push(g);
        }
        let mut maps = BTreeMap::new();
        for (&(i, j), m) in &self.maps {
            let tens_inv = model.arrows[&(i, j)].tensor_matrix(&gs[j].1, self.p);
            maps.insert((i, j), gs[i].0.mul(m, self.p).mul(&tens_inv, self.p));
        }
        make_module(t, &self.rank, maps, self.p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let maps: Vec<serde_json::Value> = self
            .maps
            .iter()
            .map(|(&(i, j), m)| serde_json::json!({"arrow": [i + 1, j + 1], "entries": m.to_json()}))
            .collect();
        serde_json::json!({
            "triple": self.triple.to_input(),
            "p": self.p,
            "rank": self.rank,
            "maps": maps,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FqModule> {
        #[derive(Deserialize)]
        struct MapJson {
            arrow: [usize; 2],
            entries: Vec<Vec<Vec<u64>>>,
        }
        #[derive(Deserialize)]
        struct ModJson {
            triple: CartanInput,
            p: u64,
            rank: Vec<usize>,
            #[serde(default)]
            maps: Vec<MapJson>,
        }
        let mj: ModJson = serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("module JSON: {e}")))?;
        let (t, labels) = CartanTriple::from_input(&mj.triple)?;
        if labels.iter().enumerate().any(|(a, &b)| a != b) {
            return Err(Error::Input("module JSON needs a triple whose arrows point to smaller labels".into()));
        }
        let mut maps = BTreeMap::new();
        for m in mj.maps {
            let (i, j) = (m.arrow[0].wrapping_sub(1), m.arrow[1].wrapping_sub(1));
            if i >= t.n() || j >= t.n() {
                return Err(Error::Input("arrow out of range".into()));
            }
            let (r, c, d) = map_shape(&t, &mj.rank, i, j);
            let mut h = HMat::zeros(r, c, d);
            if m.entries.len() != r || m.entries.iter().any(|row| row.len() != c || row.iter().any(|e| e.len() != d)) {
                return Err(Error::ShapeMismatch(format!("map ({}, {}) should be {r} x {c} with {d} coefficients", i + 1, j + 1)));
            }
            for (a, row) in m.entries.iter().enumerate() {
                for (b, e) in row.iter().enumerate() {
                    h.entry_mut(a, b).copy_from_slice(e);
                }
            }
            maps.insert((i, j), h);
        }
        make_module(&t, &mj.rank, maps, mj.p)
    }
}

/// Reflection functor at a sink (kernel of `M_{k,in}`) or source (cokernel of `M_{k,out}`).
pub fn reflect_module(m: &FqModule, k: usize) -> Result<FqModule> {
    let t = &m.triple;
    let p = m.p;
    let sink = t.is_sink(k);
    if k >= t.n() || (!sink && !t.is_source(k)) {
        return Err(Error::NotSinkOrSource(k + 1));
    }
    let t2 = t.reflect_orientation(k)?;
    let dk = t.d()[k] as usize;
    let mut rank = m.rank.clone();
    let mut maps: BTreeMap<(usize, usize), HMat> =
        m.maps.iter().filter(|(&(i, j), _)| i != k && j != k).map(|(&a, b)| (a, b.clone())).collect();
    let neighbours: Vec<usize> = (0..t.n()).filter(|&j| j != k && t.cij(k, j) != 0).collect();
    if sink {
        // old arrows (k, j); concatenate the structure maps into M_{k,in}
        let olds: Vec<ArrowModel> = neighbours.iter().map(|&j| ArrowModel::new(t, k, j)).collect::<Result<_>>()?;
        let widths: Vec<usize> = olds.iter().map(|am| am.width(m.rank[am.j])).collect();
        let total: usize = widths.iter().sum();
        let mut a_in = HMat::zeros(m.rank[k], total, dk);
        let mut off = 0;
        for (am, &w) in olds.iter().zip(&widths) {
            let mm = &m.maps[&(k, am.j)];
            for r in 0..m.rank[k] {
                for c in 0..w {
                    a_in.entry_mut(r, off + c).copy_from_slice(mm.entry(r, c));
                }
            }
            off += w;
        }
        let sm = smith(&a_in, p);
        if sm.vals.iter().any(|&v| v > 0 && v < dk) {
            return Err(Error::NotLocallyFreeResult(k + 1));
        }
        let free: Vec<usize> = (0..total).filter(|&c| c >= sm.vals.len() || sm.vals[c] == dk).collect();
        let iota = sm.q_mat.select_cols(&free);
        rank[k] = free.len();
        let mut off = 0;
        for (am, &w) in olds.iter().zip(&widths) {
            let j = am.j;
            let block = iota.select_rows(&(off..off + w).collect::<Vec<_>>());
            off += w;
            let new = ArrowModel::new(&t2, j, k)?;
            let beta = new.b;
            let mut out = HMat::zeros(m.rank[j], new.width(rank[k]), new.di);
            for up in 0..rank[k] {
                for sigma in 0..am.g {
                    for u in 0..m.rank[j] {
                        let c0 = am.col(u, sigma, 0);
                        let coords: Vec<Elem> = (0..am.b).map(|s| block.entry(c0 + s, up).to_vec()).collect();
                        let x = am.from_hi(&coords);
                        for sp in 0..beta {
                            let mut shift = vec![0; new.n];
                            shift[sp] = 1;
                            let y = new.tau_mul(&shift, &x, p);
                            let lam = new.to_hi(&y)[beta - 1].clone();
                            out.entry_mut(u, new.col(up, sigma, sp)).copy_from_slice(&lam);
                        }
                    }
                }
            }
            maps.insert((j, k), out);
        }
    } else {
        // old arrows (j, k): adjoint maps M_k -> kH_j (x) M_j, stacked into M_{k,out}
        let news: Vec<ArrowModel> = neighbours.iter().map(|&j| ArrowModel::new(&t2, k, j)).collect::<Result<_>>()?;
        let widths: Vec<usize> = news.iter().map(|am| am.width(m.rank[am.j])).collect();
        let total: usize = widths.iter().sum();
        let mut a_out = HMat::zeros(total, m.rank[k], dk);
        let mut off = 0;
        for (new, &w) in news.iter().zip(&widths) {
            let j = new.j;
            let old = ArrowModel::new(t, j, k)?;
            let beta = old.b;
            let mm = &m.maps[&(j, k)];
            for up in 0..m.rank[k] {
                for sigma in 0..old.g {
                    for u in 0..m.rank[j] {
                        let mut x = vec![0; old.n];
                        for tt in 0..beta {
                            let h = mm.entry(u, old.col(up, sigma, tt));
                            let y = old.hj_to_tau_i(h, beta - 1 - tt);
                            for (acc, c) in x.iter_mut().zip(y) {
                                *acc = (*acc + c) % p;
                            }
                        }
                        let c0 = new.col(u, sigma, 0);
                        for (s, e) in new.to_hi(&x).into_iter().enumerate() {
                            a_out.entry_mut(off + c0 + s, up).copy_from_slice(&e);
                        }
                    }
                }
            }
            off += w;
        }
        let sm = smith(&a_out, p);
        if sm.vals.iter().any(|&v| v > 0 && v < dk) {
            return Err(Error::NotLocallyFreeResult(k + 1));
        }
        let free: Vec<usize> = (0..total).filter(|&r| r >= sm.vals.len() || sm.vals[r] == dk).collect();
        let proj = sm.p_mat.select_rows(&free);
        rank[k] = free.len();
        let mut off = 0;
        for (new, &w) in news.iter().zip(&widths) {
            maps.insert((k, new.j), proj.col_range(off, off + w));
            off += w;
        }
    }
    make_module(&t2, &rank, maps, p)
}

impl ArrowModel {
    /// `tau^t h(tau^b)` for `h` in `H_i`.
    fn hj_to_tau_i(&self, h: &[u64], t: usize) -> Vec<u64> {
        let mut x = vec![0; self.n];
        for (l, &c) in h.iter().enumerate() {
            let e = t + self.b * l;
            if e < self.n {
                x[e] = c;
            }
        }
        x
    }
}

/// Processing order in which every arrow's tail precedes its head.
fn tails_first(t: &CartanTriple) -> Vec<usize> {
    let n = t.n();
    let mut placed = vec![false; n];
    let mut order = Vec::new();
    while order.len() < n {
        let v = (0..n)
            .find(|&v| !placed[v] && t.omega().iter().all(|&(i, j)| i != v || placed[j]))
            .expect("acyclic");
        placed[v] = true;
        order.push(v);
    }
    order
}

/// Canonical generator matrices of the free rank-`e` submodules of `H^r`:
/// identity on the pivot rows, entries above a pivot in `eps H`.
fn for_each_free_submodule(r: usize, e: usize, d: usize, p: u64, f: &mut dyn FnMut(&HMat, &[usize]) -> Result<()>) -> Result<()> {
    let mut pivots: Vec<usize> = (0..e).collect();
    loop {
        let mut slots: Vec<(usize, usize, usize)> = Vec::new();
        for (c, &pc) in pivots.iter().enumerate() {
            for row in 0..r {
                if pivots.contains(&row) {
                    continue;
                }
                let lo = if row > pc { 0 } else { 1 };
                for l in lo..d {
                    slots.push((row, c, l));
                }
            }
        }
        let mut x = HMat::zeros(r, e, d);
        for (c, &pc) in pivots.iter().enumerate() {
            x.entry_mut(pc, c)[0] = 1;
        }
        let mut digits = vec![0u64; slots.len()];
        loop {
            f(&x, &pivots)?;
            let mut pos = 0;
            loop {
                if pos == slots.len() {
                    break;
                }
                digits[pos] += 1;
                let (row, c, l) = slots[pos];
                if digits[pos] == p {
                    digits[pos] = 0;
                    x.entry_mut(row, c)[l] = 0;
                    pos += 1;
                } else {
                    x.entry_mut(row, c)[l] = digits[pos];
                    break;
                }
            }
            if pos == slots.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = e;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if pivots[i] < r - e + i {
                pivots[i] += 1;
                for k in i + 1..e {
                    pivots[k] = pivots[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of `F_p`-points of the locally free quiver Grassmannian `Gr_e(M)`.
pub fn enumerate_submodules(m: &FqModule, e: &[usize], budget: u64) -> Result<u64> {
    let t = &m.triple;
    if e.len() != t.n() || e.iter().zip(&m.rank).any(|(a, b)| a > b) {
        return Err(Error::ShapeMismatch("subrank must be at most the rank".into()));
    }
    let model = BimoduleModel::new(t)?;
    let order = tails_first(t);
    let mut chosen: Vec<Option<HMat>> = vec![None; t.n()];
    let mut nodes = 0u64;
    let mut count = 0u64;
    dfs_sub(m, e, &model, &order, 0, &mut chosen, &mut nodes, budget, &mut count)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn dfs_sub(
    m: &FqModule,
    e: &[usize],
    model: &BimoduleModel,
    order: &[usize],
    depth: usize,
    chosen: &mut Vec<Option<HMat>>,
    nodes: &mut u64,
    budget: u64,
    count: &mut u64,
) -> Result<()> {
    if depth == order.len() {
        *count += 1;
        return Ok(());
    }
    let p = m.p;
    let i = order[depth];
    let d = m.triple.d()[i] as usize;
    // images of the already chosen submodules under arrows into i
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    for (&(a, j), am) in &model.arrows {
        if a != i {
            continue;
        }
        let xj = chosen[j].as_ref().expect("tails first");
        let mm = &m.maps[&(i, j)];
        for c in 0..xj.cols {
            let col = xj.column(c);
            for sigma in 0..am.g {
                for s in 0..am.b {
                    let mut coords = vec![vec![0; am.di]; am.width(m.rank[j])];
                    for (u, h) in col.iter().enumerate() {
                        let mut sh = vec![0; am.n];
                        sh[s] = 1;
                        let y = am.tau_mul(&sh, &am.hj_to_tau(h, 0), p);
                        let c0 = am.col(u, sigma, 0);
                        for (k, hh) in am.to_hi(&y).into_iter().enumerate() {
                            coords[c0 + k] = hh;
                        }
                    }
                    let w = mm.mul_vec(&coords, p);
                    if w.iter().any(|x| x.iter().any(|&v| v != 0)) {
                        gens.push(w);
                    }
                }
            }
        }
    }
    let mut out: Result<()> = Ok(());
    let mut visit = |x: &HMat, piv: &[usize]| -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::TooLarge(format!("submodule enumeration exceeded {budget} nodes")));
        }
        for w in &gens {
            let wp: Vec<Elem> = piv.iter().map(|&r| w[r].clone()).collect();
            if x.mul_vec(&wp, p) != *w {
                return Ok(());
            }
        }
        chosen[i] = Some(x.clone());
        dfs_sub(m, e, model, order, depth + 1, chosen, nodes, budget, count)
    };
    let r = for_each_free_submodule(m.rank[i], e[i], d, p, &mut visit);
    if let Err(err) = r {
        out = Err(err);
    }
    chosen[i] = None;
    out
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub primes: Vec<u64>,
    pub node_budget: u64,
    pub generic_samples: usize,
    pub rigid_tries: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            primes: vec![2, 3, 5, 7, 11, 13, 17, 19, 23],
            node_budget: 20_000_000,
            generic_samples: 9,
            rigid_tries: 2000,
            seed: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// The rigid module of the given rank (random sampling until rigid).
    Rigid,
    /// Random modules, majority count over samples.
    Generic,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRecord {
    pub e: Vec<usize>,
    pub points: Vec<(u64, u64)>,
    /// Coefficients of the counting polynomial, constant term first.
    pub poly: Vec<String>,
    pub chi: String,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub f: LaurentPoly,
    pub records: Vec<CountRecord>,
    pub nonneg_integer_counts: bool,
}

/// A rigid module of `rank` over `F_p`, by random sampling.
pub fn rigid_module<R: Rng>(t: &CartanTriple, rank: &[usize], p: u64, tries: usize, rng: &mut R) -> Result<FqModule> {
    for _ in 0..tries {
        let m = random_module(t, rank, p, rng)?;
        if is_rigid(&m)? {
            return Ok(m);
        }
    }
    Err(Error::TooLarge(format!("no rigid module of rank {rank:?} over F_{p} in {tries} samples")))
}

fn subranks(rank: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in rank {
        out = out.into_iter().flat_map(|v| (0..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Lagrange interpolation through `pts`; returns coefficients, constant first.
fn interpolate(pts: &[(u64, u64)]) -> Vec<BigRational> {
    let n = pts.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (k, &(xk, yk)) in pts.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut den = BigRational::one();
        for (m, &(xm, _)) in pts.iter().enumerate() {
            if m == k {
                continue;
            }
            let xm = BigRational::from_integer(BigInt::from(xm));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c.clone();
                next[i] -= c * &xm;
            }
            basis = next;
            den *= BigRational::from_integer(BigInt::from(xk)) - xm;
        }
        let scale = BigRational::from_integer(BigInt::from(yk)) / den;
        for (i, c) in basis.into_iter().enumerate() {
            coeffs[i] += c * &scale;
        }
    }
    coeffs
}

fn eval_poly(c: &[BigRational], x: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * &x + a)
}

/// F-polynomial `sum_e chi(Gr_e(M)) y^e` from point counts over several primes.
///
/// The count for subrank `e` is fitted by a polynomial of degree at most
/// `sum_i d_i e_i (r_i - e_i)` and must reproduce one extra prime.
pub fn f_poly_oracle(t: &CartanTriple, rank: &[usize], family: Family, cfg: &OracleConfig) -> Result<OracleReport> {
    let n = t.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut modules: HashMap<u64, Vec<FqModule>> = HashMap::new();
    let mut f = LaurentPoly::zero(n);
    let mut records = Vec::new();
    let mut nonneg = true;
    let degree = |e: &[usize]| -> usize { (0..n).map(|i| t.d()[i] as usize * e[i] * (rank[i] - e[i])).sum() };
    // reject up front what the enumeration cannot finish: about q^deg candidates at the largest q used
    for e in subranks(rank) {
        let deg = degree(&e);
        if cfg.primes.len() < deg + 2 {
            return Err(Error::TooLarge(format!("subrank {e:?} needs {} primes", deg + 2)));
        }
        if (cfg.primes[deg + 1] as f64).powi(deg as i32) > cfg.node_budget as f64 {
            return Err(Error::TooLarge(format!("subrank {e:?} has about {}^{deg} candidates", cfg.primes[deg + 1])));
        }
    }
    for e in subranks(rank) {
        let deg = degree(&e);
        let mut pts = Vec::new();
        for &q in &cfg.primes[..deg + 2] {
            if !modules.contains_key(&q) {
                let ms = match family {
                    Family::Rigid => vec![rigid_module(t, rank, q, cfg.rigid_tries, &mut rng)?],
                    Family::Generic => {
                        // dim End is upper semicontinuous: keep the samples in the open stratum
                        let ms: Vec<FqModule> = (0..cfg.generic_samples)
                            .map(|_| random_module(t, rank, q, &mut rng))
                            .collect::<Result<_>>()?;
                        let ends: Vec<usize> = ms.iter().map(end_dim).collect::<Result<_>>()?;
                        let least = *ends.iter().min().expect("samples");
                        ms.into_iter().zip(ends).filter(|(_, e)| *e == least).map(|(m, _)| m).collect()
                    }
                };
                modules.insert(q, ms);
            }
            let counts: Vec<u64> = modules[&q]
                .iter()
                .map(|m| enumerate_submodules(m, &e, cfg.node_budget))
                .collect::<Result<_>>()?;
            let mut tally: BTreeMap<u64, usize> = BTreeMap::new();
            for c in &counts {
                *tally.entry(*c).or_default() += 1;
            }
            let (&best, &hits) = tally.iter().max_by_key(|(_, &h)| h).expect("samples");
            if 2 * hits <= counts.len() && counts.len() > 1 {
                return Err(Error::InterpolationInconsistent(format!("no majority count for {e:?} over F_{q}: {counts:?}")));
            }
            pts.push((q, best));
        }
        let poly = interpolate(&pts[..deg + 1]);
        let (xq, yq) = pts[deg + 1];
        if eval_poly(&poly, xq as i64) != BigRational::from_integer(BigInt::from(yq)) {
            return Err(Error::InterpolationInconsistent(format!("subrank {e:?}: counts {pts:?} are not a polynomial of degree <= {deg}")));
        }
        if poly.iter().any(|c| !c.is_integer() || c < &BigRational::zero()) {
            nonneg = false;
        }
        let chi = eval_poly(&poly, 1);
        if !chi.is_integer() {
            return Err(Error::InterpolationInconsistent(format!("subrank {e:?}: non-integral value at q = 1")));
        }
        let chi = chi.to_integer();
        if !chi.is_zero() {
            f.add_term(e.iter().map(|&x| x as i64).collect(), chi.clone());
        }
        records.push(CountRecord { e, points: pts, poly: poly.iter().map(|c| c.to_string()).collect(), chi: chi.to_string() });
    }
    Ok(OracleReport { f, records, nonneg_integer_counts: nonneg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn local_ring_arithmetic() {
        let p = 5;
        let a = vec![2, 3, 1];
        let inv = h_inv(&a, p);
        assert_eq!(h_mul(&a, &inv, p), vec![1, 0, 0]);
        let m = HMat::random(3, 3, 2, p, &mut rng());
        if let Some(mi) = m.inverse(p) {
            assert_eq!(m.mul(&mi, p), HMat::identity(3, 2));
        }
    }

    #[test]
    fn smith_form_reconstructs() {
        let p = 3;
        let mut r = rng();
        for _ in 0..10 {
            let a = HMat::random(3, 4, 2, p, &mut r);
            let s = smith(&a, p);
            let dmat = s.p_mat.mul(&a, p).mul(&s.q_mat, p);
            for i in 0..3 {
                for j in 0..4 {
                    let mut want = vec![0; 2];
                    if i == j && s.vals[i] < 2 {
                        want[s.vals[i]] = 1;
                    }
                    assert_eq!(dmat.entry(i, j), &want[..]);
                }
            }
        }
    }

    #[test]
    fn pseudo_simples() {
        let t = fixtures::b3tilde();
        let es: Vec<FqModule> = (0..4)
            .map(|i| make_module(&t, &crate::rootsys::unit(4, i).iter().map(|&x| x as usize).collect::<Vec<_>>(), BTreeMap::new(), 3).unwrap())
            .collect();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { t.d()[i] as usize } else { 0 };
                assert_eq!(hom_dim(&es[i], &es[j]).unwrap(), want);
            }
            assert!(is_rigid(&es[i]).unwrap());
            assert_eq!(enumerate_submodules(&es[i], &crate::rootsys::unit(4, i).iter().map(|&x| x as usize).collect::<Vec<_>>(), 100).unwrap(), 1);
        }
    }

    #[test]
    fn free_submodule_counts() {
        // free rank-1 submodules of (F_q[eps]/eps^2)^2: unimodular vectors over units, q (q + 1)
        for q in [2u64, 3] {
            let mut c = 0;
            for_each_free_submodule(2, 1, 2, q, &mut |_, _| {
                c += 1;
                Ok(())
            })
            .unwrap();
            assert_eq!(c, q * (q + 1));
        }
    }

    #[test]
    fn euler_form_matches_complex() {
        let mut r = rng();
        for (_, t) in fixtures::all() {
            for _ in 0..6 {
                let a: Vec<usize> = (0..t.n()).map(|_| r.gen_range(0..3)).collect();
                let b: Vec<usize> = (0..t.n()).map(|_| r.gen_range(0..3)).collect();
                let m = random_module(&t, &a, 3, &mut r).unwrap();
                let n = random_module(&t, &b, 3, &mut r).unwrap();
                let h = hom_dim(&m, &n).unwrap() as i64;
                let e = ext_dim(&m, &n).unwrap() as i64;
                assert_eq!(h - e, euler_form(&t, &a, &b));
            }
        }
    }

    #[test]
    fn hom_additivity() {
        let t = fixtures::b3tilde();
        let mut r = rng();
        let m = random_module(&t, &[1, 1, 0, 0], 5, &mut r).unwrap();
        let mm = m.direct_sum(&m).unwrap();
        assert_eq!(hom_dim(&m, &mm).unwrap(), 2 * end_dim(&m).unwrap());
    }

    #[test]
    fn generic_eta_module_is_not_rigid() {
        let t = fixtures::b3tilde();
        let m = random_module(&t, &[1, 1, 1, 1], 7, &mut rng()).unwrap();
        assert!(!is_rigid(&m).unwrap());
    }

    #[test]
    fn reflection_round_trip() {
        let t = fixtures::b3tilde();
        let mut r = rng();
        let m = rigid_module(&t, &[0, 1, 1, 0], 5, 500, &mut r).unwrap();
        let m1 = reflect_module(&m, 0).unwrap();
        assert_eq!(m1.rank, vec![2, 1, 1, 0]);
        assert!(is_rigid(&m1).unwrap());
        let back = reflect_module(&m1, 0).unwrap();
        assert_eq!(back.rank, m.rank);
        let probe = random_module(&t, &[1, 1, 1, 0], 5, &mut r).unwrap();
        assert_eq!(hom_dim(&back, &probe).unwrap(), hom_dim(&m, &probe).unwrap());
        assert_eq!(hom_dim(&probe, &back).unwrap(), hom_dim(&probe, &m).unwrap());
        assert_eq!(hom_dim(&back, &m).unwrap(), end_dim(&m).unwrap());
    }

    #[test]
    fn oracle_on_pseudo_simple() {
        let t = fixtures::b3tilde();
        let rep = f_poly_oracle(&t, &[0, 1, 0, 0], Family::Rigid, &OracleConfig::default()).unwrap();
        assert_eq!(rep.f, crate::laurent::one_plus_var(4, 1));
    }

    #[test]
    fn json_round_trip() {
        let t = fixtures::b3tilde();
        let m = random_module(&t, &[1, 1, 1, 1], 3, &mut rng()).unwrap();
        assert_eq!(FqModule::from_json(&m.to_json()).unwrap(), m);
    }
}
