//! Module-side data for locally free modules, tracked through reflection
//! functors at the level of `(rank, F, g)`.
//!
//! A [`CCDatum`] records the rank vector, F-polynomial and injective g-vector
//! of a module over the GLS algebra of its triple. Reflections at sinks and
//! sources update all three and check the h-vector identities on the way.
//! Builders produce a datum for every real Schur root; [`cc_function`] turns a
//! datum into its Laurent expression.

use serde::Serialize;

use crate::cartan::CartanTriple;
use crate::cluster::{f_transition, h_vector, pointed_element, ExtMatrix};
use crate::error::{Error, Result};
use crate::laurent::{one_plus_var, LaurentPoly};
use crate::rootsys::{coxeter, is_positive, simple_reflection, unit, RootVec, SchurRootLabel, TubeFamily};

pub mod generic;

pub use generic::*;

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// `g_i = -v_i + sum_j [-b_ij]_+ v_j^+`; the injective g-vector for `v >= 0`.
pub fn g_from_rank(t: &CartanTriple, v: &[i64]) -> Vec<i64> {
    let n = t.n();
    (0..n)
        .map(|i| -v[i] + (0..n).map(|j| pos(-t.bij(i, j)) * pos(v[j])).sum::<i64>())
        .collect()
}

/// Inverse of [`g_from_rank`], solved in sink order.
pub fn rank_from_g(t: &CartanTriple, g: &[i64]) -> DecoratedRank {
    let n = t.n();
    let mut v = vec![0i64; n];
    let mut done = vec![false; n];
    for _ in 0..n {
        let k = (0..n)
            .find(|&k| !done[k] && !t.omega().iter().any(|&(j, kk)| kk == k && !done[j]))
            .expect("acyclic orientation");
        v[k] = -g[k] + (0..n).filter(|&j| done[j]).map(|j| pos(-t.bij(k, j)) * pos(v[j])).sum::<i64>();
        done[k] = true;
    }
    DecoratedRank { v }
}

/// An integer vector read as `v+ - v-`: a module rank `v+` with decoration `v-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DecoratedRank {
    pub v: Vec<i64>,
}

impl DecoratedRank {
    pub fn plus(&self) -> Vec<i64> {
        self.v.iter().map(|&x| pos(x)).collect()
    }
    pub fn minus(&self) -> Vec<i64> {
        self.v.iter().map(|&x| pos(-x)).collect()
    }
}

/// `v'_k = -v_k + sum_j [b_kj]_+ v_j^+` at a sink `k`; other entries unchanged.
pub fn decorated_reflect(v: &DecoratedRank, t: &CartanTriple, k: usize) -> Result<DecoratedRank> {
    if k >= t.n() || !t.is_sink(k) {
        return Err(Error::NotSink(k + 1));
    }
    let plus = v.plus();
    let mut w = v.v.clone();
    w[k] = -v.v[k] + (0..t.n()).map(|j| pos(t.bij(k, j)) * plus[j]).sum::<i64>();
    Ok(DecoratedRank { v: w })
}

/// The piecewise-linear map on extended g-vectors for mutation at `k`.
pub fn t_map(g: &[i64], mat: &ExtMatrix, k: usize) -> Vec<i64> {
    let gk = g[k];
    (0..g.len())
        .map(|i| {
            if i == k {
                -gk
            } else {
                let b = mat.get(i, k);
                if gk <= 0 {
                    g[i] + pos(-b) * gk
                } else {
                    g[i] + pos(b) * gk
                }
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCDatum {
    pub triple: CartanTriple,
    pub rank: RootVec,
    pub f: LaurentPoly,
    pub g: Vec<i64>,
    pub label: Option<SchurRootLabel>,
    /// Reflections applied since the base case, each one checked.
    pub reflections: usize,
}

#[derive(Serialize)]
struct CCDatumJson {
    label: Option<String>,
    rank: RootVec,
    g: Vec<i64>,
    f: serde_json::Value,
    f_display: String,
}

impl CCDatum {
    /// The pseudo-simple `E_k` of `t`.
    pub fn pseudo_simple(t: &CartanTriple, k: usize) -> Self {
        let n = t.n();
        let rank = unit(n, k);
        CCDatum { g: g_from_rank(t, &rank), triple: t.clone(), rank, f: one_plus_var(n, k), label: None, reflections: 0 }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CCDatumJson {
            label: self.label.map(|l| l.to_string()),
            rank: self.rank.clone(),
            g: self.g.clone(),
            f: self.f.to_json(),
            f_display: self.f.to_string(),
        })
        .expect("serializable")
    }

    /// Builder invariants: g from rank, constant term 1, unique top term at `rank`.
    pub fn check_invariants(&self) -> Result<()> {
        if self.g != g_from_rank(&self.triple, &self.rank) {
            return Err(Error::Invariant(format!("g-vector of {:?} disagrees with its rank", self.rank)));
        }
        if !self.f.constant_term().is_one_value() {
            return Err(Error::Invariant("F-polynomial constant term is not 1".into()));
        }
        let top = self.f.terms().filter(|(e, _)| e.iter().zip(&self.rank).any(|(a, b)| a > b)).count();
        if top != 0 || !self.f.coeff(&self.rank).is_one_value() {
            return Err(Error::Invariant(format!("F-polynomial of {:?} lacks a unique top term", self.rank)));
        }
        Ok(())
    }
}

trait OneValue {
    fn is_one_value(&self) -> bool;
}

impl OneValue for num_bigint::BigInt {
    fn is_one_value(&self) -> bool {
        *self == num_bigint::BigInt::from(1)
    }
}

/// Reflection at a sink or source `k` of the datum's orientation.
///
/// The h-vector identities are checked on both sides: `h_k` before is `-m_k`
/// at a sink and `0` at a source, `h_k h'_k = 0`, and `g_k = h_k - h'_k`.
pub fn reflect_ccdatum(d: &CCDatum, k: usize) -> Result<CCDatum> {
    let t = &d.triple;
    let sink = t.is_sink(k);
    if !sink && !t.is_source(k) {
        return Err(Error::NotSinkOrSource(k + 1));
    }
    let b = t.b();
    let t2 = t.reflect_orientation(k)?;
    let rank2 = simple_reflection(t, k, &d.rank);
    if !is_positive(&rank2) {
        return Err(Error::NegativeRank(rank2));
    }
    let hk = if sink { -d.rank[k] } else { 0 };
    let hk2 = if sink { 0 } else { -rank2[k] };
    if h_vector(&d.f, b)[k] != hk {
        return Err(Error::Invariant(format!("h_{} of {:?} is not {hk}", k + 1, d.rank)));
    }
    let f2 = f_transition(&d.f, hk, hk2, b, k)?;
    if h_vector(&f2, t2.b())[k] != hk2 {
        return Err(Error::Invariant(format!("h'_{} after reflecting {:?} is not {hk2}", k + 1, d.rank)));
    }
    if hk * hk2 != 0 || d.g[k] != hk - hk2 {
        return Err(Error::Invariant(format!("h-vector identities fail at {}", k + 1)));
    }
    let g2: Vec<i64> = (0..t.n())
        .map(|i| if i == k { -d.g[k] } else { d.g[i] + pos(b[i][k]) * d.g[k] - b[i][k] * hk })
        .collect();
    if g2 != g_from_rank(&t2, &rank2) {
        return Err(Error::Invariant(format!("g-rule disagrees with rank after reflecting at {}", k + 1)));
    }
    if !f2.constant_term().is_one_value() {
        return Err(Error::Invariant("reflected F lost constant term 1".into()));
    }
    Ok(CCDatum { triple: t2, rank: rank2, f: f2, g: g2, label: d.label, reflections: d.reflections + 1 })
}

fn require_normalized(t: &CartanTriple) -> Result<()> {
    if !t.is_normalized() {
        return Err(Error::Input("triple must be normalized (arrows point to smaller labels)".into()));
    }
    Ok(())
}

/// Datum of `c^r beta_ell` (`tau^{-r} P_ell`).
pub fn build_preprojective(t: &CartanTriple, ell: usize, r: usize) -> Result<CCDatum> {
    require_normalized(t)?;
    let n = t.n();
    let mut base = t.clone();
    for i in 0..ell {
        base = base.reflect_orientation(i)?;
    }
    let mut d = CCDatum::pseudo_simple(&base, ell);
    for i in (0..ell).rev() {
        d = reflect_ccdatum(&d, i)?;
    }
    for _ in 0..r {
        for i in (0..n).rev() {
            d = reflect_ccdatum(&d, i)?;
        }
    }
    debug_assert_eq!(&d.triple, t);
    d.label = Some(SchurRootLabel::Preprojective { ell, r });
    Ok(d)
}

/// Datum of `c^{-r} gamma_ell` (`tau^r I_ell`).
pub fn build_preinjective(t: &CartanTriple, ell: usize, r: usize) -> Result<CCDatum> {
    require_normalized(t)?;
    let n = t.n();
    let mut base = t.clone();
    for i in ((ell + 1)..n).rev() {
        base = base.reflect_orientation(i)?;
    }
    let mut d = CCDatum::pseudo_simple(&base, ell);
    for i in (ell + 1)..n {
        d = reflect_ccdatum(&d, i)?;
    }
    for _ in 0..r {
        for i in 0..n {
            d = reflect_ccdatum(&d, i)?;
        }
    }
    debug_assert_eq!(&d.triple, t);
    d.label = Some(SchurRootLabel::Preinjective { ell, r });
    Ok(d)
}

/// `tau^{-1}` at datum level: source reflections at `n, ..., 1`; rank goes to `c(rank)`.
pub fn tau_inverse(d: &CCDatum) -> Result<CCDatum> {
    let mut e = d.clone();
    for i in (0..d.triple.n()).rev() {
        e = reflect_ccdatum(&e, i)?;
    }
    Ok(e)
}

/// Every indecomposable rigid datum of a finite type triple, found along
/// preprojective orbits until ranks leave the positive cone.
pub fn finite_type_data(t: &CartanTriple) -> Result<Vec<CCDatum>> {
    let mut out: Vec<CCDatum> = Vec::new();
    for ell in 0..t.n() {
        for r in 0.. {
            match build_preprojective(t, ell, r) {
                Ok(d) => out.push(d),
                Err(Error::NegativeRank(_)) => break,
                Err(e) => return Err(e),
            }
            if r > 4 * t.n() + 4 {
                return Err(Error::Invariant("preprojective orbit does not terminate".into()));
            }
        }
    }
    Ok(out)
}

/// Data for every tube root, built in the finite subsystem away from the
/// extended vertex and carried around each tube by `tau^{-1}`.
pub fn build_tube_data(t: &CartanTriple, tubes: &TubeFamily) -> Result<Vec<CCDatum>> {
    t.require_affine()?;
    require_normalized(t)?;
    let n = t.n();
    let Some(k) = tubes.extended_vertex else {
        return Ok(Vec::new());
    };
    let keep: Vec<usize> = (0..n).filter(|&v| v != k).collect();
    let sub = t.restrict(&keep)?;
    let lift = |d: &CCDatum| -> CCDatum {
        let mut rank = vec![0; n];
        for (a, &v) in keep.iter().enumerate() {
            rank[v] = d.rank[a];
        }
        CCDatum {
            triple: t.clone(),
            g: g_from_rank(t, &rank),
            rank,
            f: d.f.embed(n, &keep),
            label: None,
            reflections: d.reflections,
        }
    };
    let fin: Vec<CCDatum> = finite_type_data(&sub)?.iter().map(lift).collect();
    let mut out = Vec::new();
    for (ti, tube) in tubes.tubes.iter().enumerate() {
        let p = tube.period;
        for level in 1..p {
            let start_slot = (0..p)
                .find(|&s| fin.iter().any(|d| d.rank == tube.roots[&(level, s)]))
                .ok_or_else(|| Error::Invariant(format!("tube {} level {level} misses the finite subsystem", ti + 1)))?;
            let mut d = fin.iter().find(|d| d.rank == tube.roots[&(level, start_slot)]).unwrap().clone();
            let first = d.clone();
            for step in 0..p {
                let slot = (start_slot + step) % p;
                if d.rank != tube.roots[&(level, slot)] {
                    return Err(Error::Invariant(format!("tau-transport left tube {} at slot {slot}", ti + 1)));
                }
                let mut rec = d.clone();
                rec.label = Some(SchurRootLabel::Tube { tube: ti, level, slot });
                out.push(rec);
                d = tau_inverse(&d)?;
            }
            if (d.rank.clone(), d.f.clone(), d.g.clone()) != (first.rank, first.f, first.g) {
                return Err(Error::Invariant(format!("tube {} level {level} is not tau-periodic", ti + 1)));
            }
        }
    }
    Ok(out)
}

/// Datum for a label; tube labels use `tubes`.
pub fn build_label(t: &CartanTriple, label: SchurRootLabel, tubes: &TubeFamily) -> Result<CCDatum> {
    match label {
        SchurRootLabel::Preprojective { ell, r } if ell < t.n() => build_preprojective(t, ell, r),
        SchurRootLabel::Preinjective { ell, r } if ell < t.n() => build_preinjective(t, ell, r),
        SchurRootLabel::Tube { .. } => build_tube_data(t, tubes)?
            .into_iter()
            .find(|d| d.label == Some(label))
            .ok_or_else(|| Error::Input(format!("no tube root {label}"))),
        _ => Err(Error::Input(format!("vertex out of range in {label}"))),
    }
}

/// `X = F(hat y) prod_{i<=n} x_i^{g_i}` for an extended exchange matrix.
pub fn cc_function(d: &CCDatum, mat: &ExtMatrix) -> Result<LaurentPoly> {
    let mut g = d.g.clone();
    g.resize(mat.m(), 0);
    pointed_element(&d.f, &g, mat)
}

/// Product of CC functions times `prod x_i^{a_i}` for the injective part.
pub fn cluster_monomial_cc(summands: &[(CCDatum, u32)], a: &[i64], mat: &ExtMatrix) -> Result<LaurentPoly> {
    let mut x = LaurentPoly::one(mat.m());
    for (d, mult) in summands {
        x = &x * &cc_function(d, mat)?.pow(*mult);
    }
    let mut shift = a.to_vec();
    shift.resize(mat.m(), 0);
    Ok(x.shift(&shift))
}

/// Rank the root system predicts for a non-tube label.
pub fn expected_rank(t: &CartanTriple, label: SchurRootLabel) -> RootVec {
    use crate::rootsys::{infinite_orbit_seed, Side};
    match label {
        SchurRootLabel::Preprojective { ell, r } => coxeter(t, &infinite_orbit_seed(t, ell, Side::Preprojective), r as i64),
        SchurRootLabel::Preinjective { ell, r } => coxeter(t, &infinite_orbit_seed(t, ell, Side::Preinjective), -(r as i64)),
        SchurRootLabel::Tube { .. } => Vec::new(),
    }
}
