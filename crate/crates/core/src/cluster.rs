//! Seed mutation with extended exchange matrices, principal-coefficient
//! invariants (F, g, d, h), the separation formula and exchange-graph search.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cartan::{rational_rank, CartanTriple};
use crate::error::{Error, Result};
use crate::laurent::{one_plus_var, LaurentPoly, MonomialSub};

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// An `m x n` matrix whose top `n x n` block is the exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtMatrix {
    m: usize,
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl ExtMatrix {
    pub fn new(rows: Vec<Vec<i64>>, n: usize) -> Result<Self> {
        let m = rows.len();
        if m < n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected m x {n} with m >= {n}")));
        }
        for i in 0..n {
            if rows[i][i] != 0 {
                return Err(Error::Input("exchange matrix needs zero diagonal".into()));
            }
            for j in 0..n {
                if rows[i][j].signum() != -rows[j][i].signum() {
                    return Err(Error::Input("exchange matrix is not sign-skew-symmetric".into()));
                }
            }
        }
        Ok(ExtMatrix { m, n, rows })
    }

    /// `[B; I]`.
    pub fn principal(b: &[Vec<i64>]) -> Self {
        let n = b.len();
        let mut rows: Vec<Vec<i64>> = b.to_vec();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            rows.push(r);
        }
        ExtMatrix { m: 2 * n, n, rows }
    }

    pub fn coefficient_free(b: &[Vec<i64>]) -> Self {
        ExtMatrix { m: b.len(), n: b.len(), rows: b.to_vec() }
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        self.rows[..self.n].to_vec()
    }

    pub fn is_full_rank(&self) -> bool {
        rational_rank(&self.rows) == self.n
    }

    pub fn mutate(&self, k: usize) -> Self {
        let rows = (0..self.m)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let b = self.rows[i][j];
                        if i == k || j == k {
                            -b
                        } else {
                            let bik = self.rows[i][k];
                            b + bik.signum() * pos(bik * self.rows[k][j])
                        }
                    })
                    .collect()
            })
            .collect();
        ExtMatrix { m: self.m, n: self.n, rows }
    }

    /// Exponent vector of `hat y_i = prod_j x_j^{b_ji}`.
    pub fn yhat(&self, i: usize) -> Vec<i64> {
        (0..self.m).map(|j| self.rows[j][i]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub matrix: ExtMatrix,
    /// Cluster variables as Laurent polynomials in the `m` initial variables.
    pub vars: Vec<LaurentPoly>,
    pub path: Vec<usize>,
}

/// Order-independent identity of a seed.
pub type SeedKey = Vec<(LaurentPoly, Vec<i64>)>;

impl Seed {
    pub fn initial(matrix: ExtMatrix) -> Self {
        let m = matrix.m();
        let vars = (0..matrix.n()).map(|i| LaurentPoly::var(m, i)).collect();
        Seed { matrix, vars, path: Vec::new() }
    }

    /// Exchange relation at `k`, reduced exactly in the Laurent ring.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let (m, n) = (self.matrix.m(), self.matrix.n());
        let mut plus = LaurentPoly::one(m);
        let mut minus = LaurentPoly::one(m);
        let mut fplus = vec![0; m];
        let mut fminus = vec![0; m];
        for j in 0..m {
            let b = self.matrix.get(j, k);
            if j < n {
                if b > 0 {
                    plus = &plus * &self.vars[j].pow(b as u32);
                } else if b < 0 {
                    minus = &minus * &self.vars[j].pow((-b) as u32);
                }
            } else if b > 0 {
                fplus[j] = b;
            } else {
                fminus[j] = -b;
            }
        }
        let num = &plus.shift(&fplus) + &minus.shift(&fminus);
        let new = num
            .divide_exact(&self.vars[k])
            .map_err(|e| Error::NotLaurent(format!("mutation at {}: {e}", k + 1)))?;
        let frozen: Vec<usize> = (n..m).collect();
        if !new.is_polynomial_in(&frozen) {
            return Err(Error::NotLaurent(format!("negative frozen exponent after mutation at {}", k + 1)));
        }
        let matrix = self.matrix.mutate(k);
        if !matrix.is_full_rank() && self.matrix.is_full_rank() {
            return Err(Error::Invariant("mutation lost full rank".into()));
        }
        let mut vars = self.vars.clone();
        vars[k] = new;
        let mut path = self.path.clone();
        path.push(k);
        Ok(Seed { matrix, vars, path })
    }

    pub fn mutate_word(&self, word: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in word {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    pub fn key(&self) -> SeedKey {
        let n = self.matrix.n();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| self.vars[a].cmp_canonical(&self.vars[b]));
        idx.iter()
            .map(|&a| {
                let mut col: Vec<i64> = idx.iter().map(|&r| self.matrix.get(r, a)).collect();
                col.extend((n..self.matrix.m()).map(|r| self.matrix.get(r, a)));
                (self.vars[a].clone(), col)
            })
            .collect()
    }
}

impl LaurentPoly {
    /// Total order used for seed canonicalization.
    pub fn cmp_canonical(&self, other: &Self) -> std::cmp::Ordering {
        let a: Vec<_> = self.terms().collect();
        let b: Vec<_> = other.terms().collect();
        a.cmp(&b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalData {
    #[serde(skip)]
    pub f: Option<LaurentPoly>,
    pub g: Vec<i64>,
    pub d: Vec<i64>,
    pub h: Vec<i64>,
}

impl PrincipalData {
    pub fn f(&self) -> &LaurentPoly {
        self.f.as_ref().expect("F-polynomial present")
    }
}

/// `h_k = min over terms r of F of (-r_k + sum_i [-b_ki]_+ r_i)`.
pub fn h_vector(f: &LaurentPoly, b: &[Vec<i64>]) -> Vec<i64> {
    let n = b.len();
    let images: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| pos(-b[j][i]) - i64::from(i == j)).collect())
        .collect();
    f.tropical_eval(&images)
}

/// F, g, d and h of a variable expressed in a principal-coefficient ring of `2n` variables.
pub fn principal_data(var: &LaurentPoly, b: &[Vec<i64>]) -> Result<PrincipalData> {
    let n = b.len();
    if var.nvars() != 2 * n {
        return Err(Error::ArityMismatch(2 * n, var.nvars()));
    }
    let xs: Vec<usize> = (0..n).collect();
    let ys: Vec<usize> = (n..2 * n).collect();
    let f = var.specialize_ones(&xs).extract(&ys)?;
    let mut g: Option<Vec<i64>> = None;
    for (e, _) in var.terms() {
        let deg: Vec<i64> = (0..n).map(|j| e[j] - (0..n).map(|i| e[n + i] * b[j][i]).sum::<i64>()).collect();
        match &g {
            None => g = Some(deg),
            Some(g0) if *g0 != deg => {
                return Err(Error::NotHomogeneous(format!("degrees {g0:?} and {deg:?}")));
            }
            _ => {}
        }
    }
    let g = g.ok_or_else(|| Error::NotHomogeneous("zero variable".into()))?;
    let d = var.d_vector(&xs);
    let h = h_vector(&f, b);
    Ok(PrincipalData { f: Some(f), g, d, h })
}

/// `x^{g_ext} F(hat y)` with `hat y_i = prod_j x_j^{b_ji}` over all `m` rows.
pub fn pointed_element(f: &LaurentPoly, g_ext: &[i64], mat: &ExtMatrix) -> Result<LaurentPoly> {
    let m = mat.m();
    if g_ext.len() != m || f.nvars() != mat.n() {
        return Err(Error::ShapeMismatch("pointed element dimensions".into()));
    }
    let sub = MonomialSub {
        target_nvars: m,
        images: (0..mat.n()).map(|i| (mat.yhat(i), 0)).collect(),
        factor: LaurentPoly::one(m),
    };
    Ok(f.substitute(&sub)?.shift(g_ext))
}

/// Separation formula: returns the variable and its extended g-vector.
/// The tropical denominator must have non-positive exponents.
pub fn separation(f: &LaurentPoly, g: &[i64], mat: &ExtMatrix) -> Result<(LaurentPoly, Vec<i64>)> {
    let (m, n) = (mat.m(), mat.n());
    if g.len() != n {
        return Err(Error::ShapeMismatch("g-vector length".into()));
    }
    if f.constant_term() != BigInt::one() {
        return Err(Error::Invariant("F-polynomial must have constant term 1".into()));
    }
    let images: Vec<Vec<i64>> = (0..n).map(|i| (n..m).map(|j| mat.get(j, i)).collect()).collect();
    let den = if m > n { f.tropical_eval(&images) } else { Vec::new() };
    if den.iter().any(|&x| x > 0) {
        return Err(Error::Invariant(format!("tropical denominator {den:?} has a positive exponent")));
    }
    let mut g_ext = g.to_vec();
    g_ext.extend(den.iter().map(|x| -x));
    let x = pointed_element(f, &g_ext, mat)?;
    Ok((x, g_ext))
}

/// `F'(y')` from `(1+y_k)^{hk} F(y) = (1+y'_k)^{hk2} F'(y')`, where
/// `y'_k = y_k^{-1}` and `y'_i = y_i y_k^{[b_ki]+} (1+y_k)^{-b_ki}`.
pub fn f_transition(f: &LaurentPoly, hk: i64, hk2: i64, b: &[Vec<i64>], k: usize) -> Result<LaurentPoly> {
    let n = b.len();
    let images = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            if i == k {
                e[k] = -1;
                (e, 0)
            } else {
                e[i] = 1;
                e[k] = pos(-b[k][i]);
                (e, b[k][i])
            }
        })
        .collect();
    let sub = MonomialSub { target_nvars: n, images, factor: one_plus_var(n, k) };
    let (num, p) = f.substitute_raw(&sub)?;
    let mut shift = vec![0; n];
    shift[k] = -hk;
    let num = num.shift(&shift);
    let e = p + hk - hk2;
    if e >= 0 {
        Ok(&num * &sub.factor.pow(e as u32))
    } else {
        num.divide_exact(&sub.factor.pow((-e) as u32))
    }
}

/// Whether `(1+y_k)^{hk} F(y) = (1+y'_k)^{hk2} F'(y')`.
pub fn f_transition_holds(
    f: &LaurentPoly,
    hk: i64,
    f2: &LaurentPoly,
    hk2: i64,
    b: &[Vec<i64>],
    k: usize,
) -> Result<bool> {
    match f_transition(f, hk, hk2, b, k) {
        Ok(p) => Ok(&p == f2),
        Err(Error::NotDivisible(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Outcome of the change-of-initial-seed identities across edge `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DwzReport {
    pub g_rule: bool,
    pub gk_from_h: bool,
    pub f_identity: bool,
}

impl DwzReport {
    pub fn all(&self) -> bool {
        self.g_rule && self.gk_from_h && self.f_identity
    }
}

/// Compares data of one variable seen from `t0` (matrix `b`) and from `t1 = mu_k(t0)`.
pub fn dwz_recurrence_check(b: &[Vec<i64>], k: usize, at_t0: &PrincipalData, at_t1: &PrincipalData) -> Result<DwzReport> {
    let n = b.len();
    let (g, g2, h, h2) = (&at_t0.g, &at_t1.g, &at_t0.h, &at_t1.h);
    let g_rule = (0..n).all(|i| {
        if i == k {
            g2[k] == -g[k]
        } else {
            g2[i] == g[i] + pos(b[i][k]) * g[k] - b[i][k] * h[k]
        }
    });
    let gk_from_h = g[k] == h[k] - h2[k];
    let f_identity = f_transition_holds(at_t0.f(), h[k], at_t1.f(), h2[k], b, k)?;
    Ok(DwzReport { g_rule, gk_from_h, f_identity })
}

#[derive(Clone, Debug)]
pub struct ClusterVar {
    pub poly: LaurentPoly,
    pub data: PrincipalData,
    pub word: Vec<usize>,
}

/// Exchange-graph exploration from the principal-coefficient seed of `b`,
/// collecting cluster variables keyed by d-vector.
pub struct Explorer {
    b: Vec<Vec<i64>>,
    pub vars: BTreeMap<Vec<i64>, ClusterVar>,
    visited: HashSet<SeedKey>,
    pub mutations: usize,
}

impl Explorer {
    pub fn new(b: &[Vec<i64>]) -> Self {
        Explorer { b: b.to_vec(), vars: BTreeMap::new(), visited: HashSet::new(), mutations: 0 }
    }

    pub fn for_triple(t: &CartanTriple) -> Self {
        Self::new(t.b())
    }

    pub fn initial_seed(&self) -> Seed {
        Seed::initial(ExtMatrix::principal(&self.b))
    }

    fn record(&mut self, seed: &Seed) -> Result<()> {
        for v in &seed.vars {
            let d = v.d_vector(&(0..self.b.len()).collect::<Vec<_>>());
            if let Some(old) = self.vars.get(&d) {
                if &old.poly != v {
                    return Err(Error::Invariant(format!("two cluster variables share d-vector {d:?}")));
                }
                continue;
            }
            let data = principal_data(v, &self.b)?;
            self.vars.insert(d, ClusterVar { poly: v.clone(), data, word: seed.path.clone() });
        }
        Ok(())
    }

    /// Breadth-first search to `depth`, mutating only at `allowed` vertices
    /// (all when `None`). Returns every distinct seed reached.
    pub fn bfs(&mut self, start: &Seed, depth: usize, allowed: Option<&[usize]>) -> Result<Vec<Seed>> {
        let n = self.b.len();
        let dirs: Vec<usize> = allowed.map_or_else(|| (0..n).collect(), |a| a.to_vec());
        let mut local: HashSet<SeedKey> = HashSet::new();
        local.insert(start.key());
        self.visited.insert(start.key());
        self.record(start)?;
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([(start.clone(), 0usize, usize::MAX)]);
        while let Some((s, dep, last)) = queue.pop_front() {
            if dep == depth {
                continue;
            }
            for &k in &dirs {
                if k == last {
                    continue;
                }
                let t = s.mutate(k)?;
                self.mutations += 1;
                let key = t.key();
                if !local.insert(key.clone()) {
                    continue;
                }
                self.visited.insert(key);
                self.record(&t)?;
                out.push(t.clone());
                queue.push_back((t, dep + 1, k));
            }
        }
        Ok(out)
    }

    /// Mutates along `word`, recording every intermediate seed.
    pub fn walk(&mut self, start: &Seed, word: &[usize]) -> Result<Seed> {
        let mut s = start.clone();
        self.record(&s)?;
        for &k in word {
            s = s.mutate(k)?;
            self.mutations += 1;
            self.visited.insert(s.key());
            self.record(&s)?;
        }
        Ok(s)
    }

    pub fn seeds_visited(&self) -> usize {
        self.visited.len()
    }

    pub fn get(&self, d: &[i64]) -> Option<&ClusterVar> {
        self.vars.get(d)
    }
}

/// Cluster variables found within `depth` mutations, keyed by d-vector.
pub fn bfs_explore(t: &CartanTriple, depth: usize) -> Result<BTreeMap<Vec<i64>, PrincipalData>> {
    let mut ex = Explorer::for_triple(t);
    let s0 = ex.initial_seed();
    ex.bfs(&s0, depth, None)?;
    Ok(ex.vars.into_iter().map(|(d, v)| (d, v.data)).collect())
}
