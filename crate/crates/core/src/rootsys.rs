//! Root lattice of a Cartan triple: the symmetric form, simple reflections,
//! the Coxeter element `c = s_1 ... s_n`, c-orbits, tubes and real Schur roots
//! in affine type.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanTriple;
use crate::error::{Error, Result};

pub type RootVec = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchurRootLabel {
    /// `c^r beta_ell` (0-indexed `ell`).
    Preprojective { ell: usize, r: usize },
    /// `c^{-r} gamma_ell`.
    Preinjective { ell: usize, r: usize },
    /// Root of `tube` at `level`, `slot` in `Z / period`.
    Tube { tube: usize, level: usize, slot: usize },
}

impl fmt::Display for SchurRootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SchurRootLabel::Preprojective { ell, r } => write!(f, "P{}:{}", ell + 1, r),
            SchurRootLabel::Preinjective { ell, r } => write!(f, "I{}:{}", ell + 1, r),
            SchurRootLabel::Tube { tube, level, slot } => write!(f, "T{}:{}:{}", tube + 1, level, slot),
        }
    }
}

impl std::str::FromStr for SchurRootLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("bad root label '{s}' (expected P<l>:<r>, I<l>:<r> or T<i>:<level>:<slot>)"));
        let (head, rest) = s.split_at(1);
        let nums: Vec<usize> = rest
            .split(':')
            .map(|x| x.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (head, nums.as_slice()) {
            ("P", [l, r]) if *l >= 1 => Ok(SchurRootLabel::Preprojective { ell: l - 1, r: *r }),
            ("I", [l, r]) if *l >= 1 => Ok(SchurRootLabel::Preinjective { ell: l - 1, r: *r }),
            ("T", [i, lv, sl]) if *i >= 1 => Ok(SchurRootLabel::Tube { tube: i - 1, level: *lv, slot: *sl }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Preprojective,
    Preinjective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tube {
    pub period: usize,
    /// `bottom[m]` is the level-one root in slot `m`.
    pub bottom: Vec<RootVec>,
    /// Keyed by `(level, slot)` for `1 <= level <= period - 1`.
    pub roots: BTreeMap<(usize, usize), RootVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TubeFamily {
    pub extended_vertex: Option<usize>,
    pub tubes: Vec<Tube>,
}

impl TubeFamily {
    pub fn all_roots(&self) -> Vec<(RootVec, SchurRootLabel)> {
        let mut out = Vec::new();
        for (i, tube) in self.tubes.iter().enumerate() {
            for (&(level, slot), r) in &tube.roots {
                out.push((r.clone(), SchurRootLabel::Tube { tube: i, level, slot }));
            }
        }
        out
    }

    pub fn root(&self, tube: usize, level: usize, slot: usize) -> Option<&RootVec> {
        self.tubes.get(tube)?.roots.get(&(level, slot))
    }
}

pub fn unit(n: usize, i: usize) -> RootVec {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

pub fn add(a: &[i64], b: &[i64]) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `(a, b) = sum a_i b_j d_i c_ij`.
pub fn bilinear(t: &CartanTriple, a: &[i64], b: &[i64]) -> i64 {
    let n = t.n();
    let mut s = 0;
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += a[i] * b[j] * t.d()[i] * t.cij(i, j);
        }
    }
    s
}

/// `s_i(v) = v - (sum_j c_ij v_j) alpha_i`.
pub fn simple_reflection(t: &CartanTriple, i: usize, v: &[i64]) -> RootVec {
    let pairing: i64 = (0..t.n()).map(|j| t.cij(i, j) * v[j]).sum();
    let mut w = v.to_vec();
    w[i] -= pairing;
    w
}

/// `c^power(v)` for `c = s_1 s_2 ... s_n`.
pub fn coxeter(t: &CartanTriple, v: &[i64], power: i64) -> RootVec {
    let n = t.n();
    let mut w = v.to_vec();
    for _ in 0..power.unsigned_abs() {
        if power > 0 {
            for i in (0..n).rev() {
                w = simple_reflection(t, i, &w);
            }
        } else {
            for i in 0..n {
                w = simple_reflection(t, i, &w);
            }
        }
    }
    w
}

/// `beta_ell = s_1 ... s_{ell-1}(alpha_ell)` or `gamma_ell = s_n ... s_{ell+1}(alpha_ell)`.
pub fn infinite_orbit_seed(t: &CartanTriple, ell: usize, side: Side) -> RootVec {
    let n = t.n();
    let mut v = unit(n, ell);
    match side {
        Side::Preprojective => {
            for i in (0..ell).rev() {
                v = simple_reflection(t, i, &v);
            }
        }
        Side::Preinjective => {
            for i in (ell + 1)..n {
                v = simple_reflection(t, i, &v);
            }
        }
    }
    v
}

/// Finite period at most `n`, or infinite.
pub fn orbit_kind(t: &CartanTriple, v: &[i64]) -> OrbitKind {
    let mut w = v.to_vec();
    for p in 1..=t.n() {
        w = coxeter(t, &w, 1);
        if w == v {
            return OrbitKind::Finite(p);
        }
    }
    OrbitKind::Infinite
}

/// Positive roots of the finite type subsystem on `keep`, by reflection closure.
pub fn finite_positive_roots(t: &CartanTriple, keep: &[usize]) -> Vec<RootVec> {
    let n = t.n();
    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for &i in keep {
        let a = unit(n, i);
        seen.insert(a.clone());
        queue.push_back(a);
    }
    while let Some(r) = queue.pop_front() {
        for &i in keep {
            let s = simple_reflection(t, i, &r);
            if is_positive(&s) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    seen.into_iter().collect()
}

/// Tubes of finite c-orbits, computed inside the finite subsystem on `I \ {k}`.
pub fn build_tubes(t: &CartanTriple, k: usize) -> Result<TubeFamily> {
    t.require_affine()?;
    if !t.is_normalized() {
        return Err(Error::Input("triple must be normalized (arrows point to smaller labels)".into()));
    }
    let n = t.n();
    if n == 2 {
        return Ok(TubeFamily { extended_vertex: None, tubes: Vec::new() });
    }
    if k >= n || !t.admissible_extended_vertices().contains(&k) {
        return Err(Error::BadExtendedVertex(k + 1));
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != k).collect();
    let fin: Vec<RootVec> = finite_positive_roots(t, &keep)
        .into_iter()
        .filter(|r| matches!(orbit_kind(t, r), OrbitKind::Finite(_)))
        .collect();
    let members: HashSet<&RootVec> = fin.iter().collect();
    let simples: Vec<RootVec> = fin
        .iter()
        .filter(|v| {
            !fin.iter().any(|a| {
                let b = sub(v, a);
                is_positive(&b) && members.contains(&b)
            })
        })
        .cloned()
        .collect();
    if simples.len() != n - 2 {
        return Err(Error::Invariant(format!(
            "expected {} simple roots of the finite-orbit subsystem, found {}",
            n - 2,
            simples.len()
        )));
    }
    let m = simples.len();
    let adj: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).filter(|&b| b != a && bilinear(t, &simples[a], &simples[b]) < 0).collect())
        .collect();
    let mut seen = vec![false; m];
    let mut tubes = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(a) = stack.pop() {
            comp.push(a);
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        let chain = order_chain(t, &simples, &adj, &comp)?;
        tubes.push(make_tube(t, chain)?);
    }
    tubes.sort_by(|a, b| b.period.cmp(&a.period).then(a.bottom.cmp(&b.bottom)));
    let fam = TubeFamily { extended_vertex: Some(k), tubes };
    check_tubes(t, &fam)?;
    Ok(fam)
}

/// Orders an A-type component so that `c` moves each simple to the next one.
fn order_chain(t: &CartanTriple, simples: &[RootVec], adj: &[Vec<usize>], comp: &[usize]) -> Result<Vec<RootVec>> {
    let edges: usize = comp.iter().map(|&a| adj[a].len()).sum::<usize>() / 2;
    if edges + 1 != comp.len() || comp.iter().any(|&a| adj[a].len() > 2) {
        return Err(Error::Invariant("finite-orbit simples do not form an A-type chain".into()));
    }
    let end = *comp.iter().find(|&&a| adj[a].len() <= 1).expect("path has an end");
    let mut path = vec![end];
    while path.len() < comp.len() {
        let last = *path.last().unwrap();
        let next = adj[last].iter().copied().find(|b| !path.contains(b)).expect("path continues");
        path.push(next);
    }
    let forward: Vec<RootVec> = path.iter().map(|&a| simples[a].clone()).collect();
    let mut backward = forward.clone();
    backward.reverse();
    let fits = |ch: &[RootVec]| ch.windows(2).all(|w| coxeter(t, &w[0], 1) == w[1]);
    match (fits(&forward), fits(&backward)) {
        (true, false) => Ok(forward),
        (false, true) => Ok(backward),
        (true, true) if forward.len() == 1 => Ok(forward),
        _ => Err(Error::Invariant("ambiguous chain order under the Coxeter element".into())),
    }
}

fn make_tube(t: &CartanTriple, chain: Vec<RootVec>) -> Result<Tube> {
    let d = chain.len() + 1;
    let mut bottom = Vec::with_capacity(d);
    bottom.push(coxeter(t, chain.last().unwrap(), 1));
    bottom.extend(chain);
    let n = t.n();
    let mut roots: BTreeMap<(usize, usize), RootVec> = BTreeMap::new();
    for slot in 0..d {
        roots.insert((1, slot), bottom[slot].clone());
    }
    for level in 1..(d - 1) {
        for slot in 0..d {
            let below = if level == 1 { vec![0; n] } else { roots[&(level - 1, (slot + 1) % d)].clone() };
            let v = sub(&add(&roots[&(level, slot)], &roots[&(level, (slot + 1) % d)]), &below);
            roots.insert((level + 1, slot), v);
        }
    }
    Ok(Tube { period: d, bottom, roots })
}

fn check_tubes(t: &CartanTriple, fam: &TubeFamily) -> Result<()> {
    let n = t.n();
    let total: usize = fam.tubes.iter().map(|tb| tb.period - 1).sum();
    if total != n - 2 {
        return Err(Error::Invariant(format!("tube ranks sum to {total}, expected {}", n - 2)));
    }
    for tube in &fam.tubes {
        let d = tube.period;
        for (&(level, slot), r) in &tube.roots {
            if coxeter(t, r, 1) != tube.roots[&(level, (slot + 1) % d)] {
                return Err(Error::Invariant("Coxeter element does not rotate the tube".into()));
            }
            if !is_positive(r) || !is_real_root_norm(t, r) {
                return Err(Error::Invariant(format!("tube entry {r:?} is not a positive real root")));
            }
            if level + 1 < d {
                let up = &tube.roots[&(level + 1, slot)];
                let below =
                    if level == 1 { vec![0; n] } else { tube.roots[&(level - 1, (slot + 1) % d)].clone() };
                let lhs = add(r, &tube.roots[&(level, (slot + 1) % d)]);
                if lhs != add(up, &below) {
                    return Err(Error::Invariant("mesh relation fails".into()));
                }
            }
        }
    }
    Ok(())
}

/// `(v, v) = 2 d_i` for some `i`.
pub fn is_real_root_norm(t: &CartanTriple, v: &[i64]) -> bool {
    let q = bilinear(t, v, v);
    t.d().iter().any(|&d| q == 2 * d)
}

/// Tubes for the first admissible extended vertex (empty in rank two).
pub fn default_tubes(t: &CartanTriple) -> Result<TubeFamily> {
    t.require_affine()?;
    if t.n() == 2 {
        return Ok(TubeFamily::default());
    }
    // not every vertex with eta_k = 1 leaves the quasi-simples inside I \ {k}
    let mut last = Error::Invariant("no admissible extended vertex".into());
    for k in t.admissible_extended_vertices() {
        match build_tubes(t, k) {
            Ok(f) => return Ok(f),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// All `c^r beta_ell`, `c^{-r} gamma_ell` with `r <= depth`, plus every tube root.
pub fn enumerate_real_schur(t: &CartanTriple, depth: usize) -> Result<Vec<(RootVec, SchurRootLabel)>> {
    t.require_affine()?;
    let n = t.n();
    let mut out: Vec<(RootVec, SchurRootLabel)> = Vec::new();
    let mut seen: HashSet<RootVec> = HashSet::new();
    let mut push = |v: RootVec, l: SchurRootLabel, out: &mut Vec<_>| -> Result<()> {
        if !is_positive(&v) {
            return Err(Error::Invariant(format!("{l} gives non-positive {v:?}")));
        }
        if seen.insert(v.clone()) {
            out.push((v, l));
        }
        Ok(())
    };
    for r in 0..=depth {
        for ell in 0..n {
            let b = coxeter(t, &infinite_orbit_seed(t, ell, Side::Preprojective), r as i64);
            push(b, SchurRootLabel::Preprojective { ell, r }, &mut out)?;
        }
    }
    for r in 0..=depth {
        for ell in 0..n {
            let g = coxeter(t, &infinite_orbit_seed(t, ell, Side::Preinjective), -(r as i64));
            push(g, SchurRootLabel::Preinjective { ell, r }, &mut out)?;
        }
    }
    for (v, l) in default_tubes(t)?.all_roots() {
        push(v, l, &mut out)?;
    }
    Ok(out)
}

/// Every real Schur root that is componentwise at most `bound`.
pub fn real_schur_below(t: &CartanTriple, bound: &[i64]) -> Result<Vec<(RootVec, SchurRootLabel)>> {
    t.require_affine()?;
    let n = t.n();
    let limit: i64 = bound.iter().sum();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for side in [Side::Preprojective, Side::Preinjective] {
        for ell in 0..n {
            let seed = infinite_orbit_seed(t, ell, side);
            let mut r = 0usize;
            loop {
                let pw = if side == Side::Preprojective { r as i64 } else { -(r as i64) };
                let v = coxeter(t, &seed, pw);
                if leq(&v, bound) && seen.insert(v.clone()) {
                    let l = match side {
                        Side::Preprojective => SchurRootLabel::Preprojective { ell, r },
                        Side::Preinjective => SchurRootLabel::Preinjective { ell, r },
                    };
                    out.push((v.clone(), l));
                }
                if r >= 2 * n && v.iter().sum::<i64>() > limit {
                    break;
                }
                r += 1;
            }
        }
    }
    for (v, l) in default_tubes(t)?.all_roots() {
        if leq(&v, bound) && seen.insert(v.clone()) {
            out.push((v, l));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn b3tilde_form_and_reflections() {
        let t = fixtures::b3tilde();
        assert_eq!(bilinear(&t, &unit(4, 0), &unit(4, 0)), 2);
        assert_eq!(bilinear(&t, &unit(4, 0), &unit(4, 1)), -2);
        assert_eq!(bilinear(&t, &unit(4, 1), &unit(4, 0)), -2);
        assert_eq!(simple_reflection(&t, 0, &unit(4, 0)), vec![-1, 0, 0, 0]);
        assert_eq!(simple_reflection(&t, 0, &unit(4, 1)), vec![2, 1, 0, 0]);
        assert_eq!(coxeter(&t, &[0, 1, 1, 0], 1), vec![2, 1, 2, 2]);
        assert_eq!(coxeter(&t, &[1, 1, 1, 1], 5), vec![1, 1, 1, 1]);
    }

    #[test]
    fn b3tilde_seeds_and_orbits() {
        let t = fixtures::b3tilde();
        assert_eq!(infinite_orbit_seed(&t, 0, Side::Preprojective), vec![1, 0, 0, 0]);
        assert_eq!(infinite_orbit_seed(&t, 1, Side::Preprojective), vec![2, 1, 0, 0]);
        assert_eq!(infinite_orbit_seed(&t, 3, Side::Preinjective), vec![0, 0, 0, 1]);
        assert_eq!(orbit_kind(&t, &[0, 1, 1, 0]), OrbitKind::Finite(3));
        assert_eq!(orbit_kind(&t, &[1, 0, 0, 0]), OrbitKind::Infinite);
        assert_eq!(orbit_kind(&t, &[1, 1, 1, 1]), OrbitKind::Finite(1));
    }

    #[test]
    fn b3tilde_tube() {
        let t = fixtures::b3tilde();
        let fam = build_tubes(&t, 3).unwrap();
        assert_eq!(fam.tubes.len(), 1);
        let tube = &fam.tubes[0];
        assert_eq!(tube.period, 3);
        let bottom: BTreeSet<_> = tube.bottom.iter().cloned().collect();
        let want: BTreeSet<RootVec> = [vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![2, 1, 1, 2]].into_iter().collect();
        assert_eq!(bottom, want);
        let level2: BTreeSet<_> = (0..3).map(|s| tube.roots[&(2, s)].clone()).collect();
        let want2: BTreeSet<RootVec> = [vec![0, 1, 1, 0], vec![2, 1, 2, 2], vec![2, 2, 1, 2]].into_iter().collect();
        assert_eq!(level2, want2);
        assert_eq!(tube.roots.len(), 6);
    }

    #[test]
    fn rank_two_has_no_tubes() {
        assert!(build_tubes(&fixtures::kronecker(), 0).unwrap().tubes.is_empty());
        assert!(build_tubes(&fixtures::twisted_a2(), 0).unwrap().tubes.is_empty());
    }

    #[test]
    fn enumeration_counts() {
        let t = fixtures::b3tilde();
        let roots = enumerate_real_schur(&t, 0).unwrap();
        assert_eq!(roots.len(), 4 + 4 + 6);
        for (r, _) in &roots {
            assert!(is_real_root_norm(&t, r));
        }
    }

    #[test]
    fn label_parsing() {
        for l in ["P1:0", "I4:3", "T1:2:0"] {
            let parsed: SchurRootLabel = l.parse().unwrap();
            assert_eq!(parsed.to_string(), l);
        }
        assert!("X1".parse::<SchurRootLabel>().is_err());
    }
}
