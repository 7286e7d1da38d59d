//! Multivariate Laurent polynomials with big-integer coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by dense exponent vectors, so the
//! lexicographically largest term is the leading term and equality/hashing
//! is canonical.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Exp = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exp, BigInt>,
}

/// Substitution `z_i -> x^{mono_i} * factor^{pow_i}`.
#[derive(Clone, Debug)]
pub struct MonomialSub {
    pub target_nvars: usize,
    pub images: Vec<(Exp, i64)>,
    pub factor: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: Vec<i64>,
    coef: String,
}

fn add_exp(a: &[i64], b: &[i64]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exp: Exp, coef: BigInt) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length");
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        LaurentPoly { nvars, terms }
    }

    /// `x^exp` with coefficient one.
    pub fn mono(exp: Exp) -> Self {
        let n = exp.len();
        Self::monomial(n, exp, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, BigInt)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn leading(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut acc: HashMap<Exp, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = add_exp(e1, e2);
                let c = c1 * c2;
                match acc.get_mut(&e) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// Multiply by the monomial `x^exp`.
    pub fn shift(&self, exp: &[i64]) -> Self {
        assert_eq!(exp.len(), self.nvars, "exponent length");
        let terms = self.terms.iter().map(|(e, c)| (add_exp(e, exp), c.clone())).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative powers are only defined for monomials.
    pub fn pow_i(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let (e, c) = match self.terms.iter().next() {
            Some(t) if self.terms.len() == 1 => t,
            _ => return Err(Error::NotDivisible("negative power of a non-monomial".into())),
        };
        if !c.abs().is_one() {
            return Err(Error::NotDivisible("negative power of a non-unit monomial".into()));
        }
        let inv = LaurentPoly::monomial(
            self.nvars,
            e.iter().map(|x| -x).collect(),
            if c.is_negative() { -BigInt::one() } else { BigInt::one() },
        );
        Ok(inv.pow((-k) as u32))
    }

    /// Per-variable (min, max) exponents; `None` for the zero polynomial.
    pub fn exponent_box(&self) -> Option<(Exp, Exp)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for e in it {
            for i in 0..self.nvars {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / q`; fails unless `q` divides `self` in the Laurent ring.
    pub fn divide_exact(&self, q: &Self) -> Result<Self> {
        self.check_arity(q)?;
        let n = self.nvars;
        if q.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(n));
        }
        if q.is_monomial() {
            let (qe, qc) = q.leading().unwrap();
            let mut terms = BTreeMap::new();
            for (e, c) in &self.terms {
                let (d, r) = c.div_rem(qc);
                if !r.is_zero() {
                    return Err(Error::NotDivisible("coefficient not divisible".into()));
                }
                terms.insert(e.iter().zip(qe).map(|(a, b)| a - b).collect(), d);
            }
            return Ok(LaurentPoly { nvars: n, terms });
        }
        let (plo, phi) = self.exponent_box().unwrap();
        let (qlo, qhi) = q.exponent_box().unwrap();
        let lo: Exp = (0..n).map(|i| plo[i] - qlo[i]).collect();
        let hi: Exp = (0..n).map(|i| phi[i] - qhi[i]).collect();
        if (0..n).any(|i| lo[i] > hi[i]) {
            return Err(Error::NotDivisible("degree box empty".into()));
        }
        let (lq_e, lq_c) = {
            let (e, c) = q.leading().unwrap();
            (e.clone(), c.clone())
        };
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back() {
            let qe: Exp = e.iter().zip(&lq_e).map(|(a, b)| a - b).collect();
            if (0..n).any(|i| qe[i] < lo[i] || qe[i] > hi[i]) {
                return Err(Error::NotDivisible("quotient term outside degree box".into()));
            }
            let (qc, r) = c.div_rem(&lq_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible("coefficient not divisible".into()));
            }
            for (f, d) in &q.terms {
                let key = add_exp(&qe, f);
                let delta = &qc * d;
                use std::collections::btree_map::Entry;
                match rem.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.insert(qe, qc);
        }
        Ok(LaurentPoly { nvars: n, terms: quot })
    }

    /// Applies `sub` without resolving negative factor powers: returns `(N, P)`
    /// with `sub(self) = N * factor^P`.
    pub fn substitute_raw(&self, sub: &MonomialSub) -> Result<(Self, i64)> {
        if sub.images.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, sub.images.len()));
        }
        let m = sub.target_nvars;
        if sub.factor.nvars != m {
            return Err(Error::ArityMismatch(m, sub.factor.nvars));
        }
        if self.is_zero() {
            return Ok((Self::zero(m), 0));
        }
        let mapped: Vec<(Exp, i64, &BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut mono = vec![0i64; m];
                let mut fp = 0i64;
                for (i, &a) in e.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let (img, p) = &sub.images[i];
                    for (t, &x) in img.iter().enumerate() {
                        mono[t] += a * x;
                    }
                    fp += a * p;
                }
                (mono, fp, c)
            })
            .collect();
        let pmin = mapped.iter().map(|t| t.1).min().unwrap();
        let mut powers: HashMap<i64, LaurentPoly> = HashMap::new();
        let mut out = Self::zero(m);
        for (mono, fp, c) in mapped {
            let k = fp - pmin;
            if k == 0 {
                out.add_term(mono, c.clone());
                continue;
            }
            let fpow = powers.entry(k).or_insert_with(|| sub.factor.pow(k as u32));
            for (e, d) in &fpow.terms {
                out.add_term(add_exp(e, &mono), d * c);
            }
        }
        Ok((out, pmin))
    }

    /// Applies `sub`, resolving negative factor powers by exact division.
    pub fn substitute(&self, sub: &MonomialSub) -> Result<Self> {
        let (num, p) = self.substitute_raw(sub)?;
        if p >= 0 {
            Ok(&num * &sub.factor.pow(p as u32))
        } else {
            num.divide_exact(&sub.factor.pow((-p) as u32))
        }
    }

    /// Sets the listed variables to 1 (arity is kept).
    pub fn specialize_ones(&self, which: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            for &i in which {
                e[i] = 0;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Re-indexes onto the listed variables: variable `vars[t]` becomes `t`.
    /// All other exponents must vanish.
    pub fn extract(&self, vars: &[usize]) -> Result<Self> {
        let mut out = Self::zero(vars.len());
        for (e, c) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 && !vars.contains(&i) {
                    return Err(Error::Invariant(format!("variable {i} still present")));
                }
            }
            out.add_term(vars.iter().map(|&i| e[i]).collect(), c.clone());
        }
        Ok(out)
    }

    /// Places variable `t` at position `map[t]` of an `nvars`-variable ring.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars, "embedding map length");
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (t, &x) in e.iter().enumerate() {
                f[map[t]] += x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Tropical (min-plus) value after `z_i -> x^{images[i]}`.
    pub fn tropical_eval(&self, images: &[Exp]) -> Exp {
        assert_eq!(images.len(), self.nvars, "image count");
        let m = images.first().map_or(0, |v| v.len());
        let mut best: Option<Exp> = None;
        for e in self.terms.keys() {
            let mut v = vec![0i64; m];
            for (i, &a) in e.iter().enumerate() {
                for t in 0..m {
                    v[t] += a * images[i][t];
                }
            }
            best = Some(match best {
                None => v,
                Some(b) => b.iter().zip(&v).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        best.unwrap_or_else(|| vec![0; m])
    }

    /// Negated componentwise minimum exponent, over the listed variables.
    pub fn d_vector(&self, vars: &[usize]) -> Exp {
        match self.exponent_box() {
            None => vec![0; vars.len()],
            Some((lo, _)) => vars.iter().map(|&i| -lo[i]).collect(),
        }
    }

    pub fn newton_support(&self) -> BTreeSet<Exp> {
        self.terms.keys().cloned().collect()
    }

    /// Evaluates all variables at 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn is_polynomial_in(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|e| vars.iter().all(|&i| e[i] >= 0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(e, c)| JsonTerm { exp: e.clone(), coef: c.to_string() })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }

    pub fn from_json(nvars: usize, v: &serde_json::Value) -> Result<Self> {
        let ts: Vec<JsonTerm> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Input(e.to_string()))?;
        let mut p = Self::zero(nvars);
        for t in ts {
            if t.exp.len() != nvars {
                return Err(Error::ArityMismatch(nvars, t.exp.len()));
            }
            let c: BigInt = t.coef.parse().map_err(|_| Error::Input(format!("bad coef {}", t.coef)))?;
            p.add_term(t.exp, c);
        }
        Ok(p)
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut mono = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => mono.push(names[i].clone()),
                    _ => mono.push(format!("{}^{}", names[i], x)),
                }
            }
            let body = mono.join("*");
            let s = if body.is_empty() {
                c.to_string()
            } else if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{body}")
            } else {
                format!("{c}*{body}")
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("arity mismatch in add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("arity mismatch in sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("arity mismatch in mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigInt::one())
    }
}

impl MonomialSub {
    pub fn identity(nvars: usize) -> Self {
        MonomialSub {
            target_nvars: nvars,
            images: (0..nvars)
                .map(|i| {
                    let mut e = vec![0; nvars];
                    e[i] = 1;
                    (e, 0)
                })
                .collect(),
            factor: LaurentPoly::one(nvars),
        }
    }
}

/// `1 + z_k` in `nvars` variables.
pub fn one_plus_var(nvars: usize, k: usize) -> LaurentPoly {
    &LaurentPoly::one(nvars) + &LaurentPoly::var(nvars, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i)
    }

    #[test]
    fn product_of_binomials() {
        let p = &one_plus_var(2, 0) * &one_plus_var(2, 1);
        assert_eq!(p.len(), 4);
        assert_eq!(p.coeff(&[1, 1]), BigInt::one());
        let cube = one_plus_var(1, 0).pow(3);
        assert_eq!(cube.coeff(&[2]), BigInt::from(3));
        assert_eq!(&p * &LaurentPoly::one(2), p);
    }

    #[test]
    fn exact_division() {
        let f = one_plus_var(1, 0);
        assert_eq!(f.pow(2).divide_exact(&f).unwrap(), f);
        assert!(f.divide_exact(&f).unwrap().is_one());
        let g = &(&LaurentPoly::one(2) + &y(2, 0)) + &(&y(2, 0) * &y(2, 1));
        assert!(matches!(g.divide_exact(&one_plus_var(2, 0)), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn substitution_resolves_factor() {
        // y2 -> y2*y1*(1+y1)^{-1}, y1 -> y1, applied to (1+y1)(1+y2)
        let n = 2;
        let sub = MonomialSub {
            target_nvars: n,
            images: vec![(vec![1, 0], 0), (vec![1, 1], -1)],
            factor: one_plus_var(n, 0),
        };
        let p = &one_plus_var(n, 0) * &one_plus_var(n, 1);
        let r = p.substitute(&sub).unwrap();
        let expect = &(&LaurentPoly::one(n) + &y(n, 0)) + &(&y(n, 0) * &y(n, 1));
        assert_eq!(r, expect);
        let id = MonomialSub::identity(n);
        assert_eq!(p.substitute(&id).unwrap(), p);
    }

    #[test]
    fn monomial_image() {
        let sub = MonomialSub { target_nvars: 2, images: vec![(vec![1, 2], 0)], factor: LaurentPoly::one(2) };
        let r = one_plus_var(1, 0).substitute(&sub).unwrap();
        assert_eq!(r, &LaurentPoly::one(2) + &LaurentPoly::mono(vec![1, 2]));
    }

    #[test]
    fn specialization_and_vectors() {
        let p = &LaurentPoly::mono(vec![-1, 2]) + &LaurentPoly::mono(vec![-1, 0]);
        assert_eq!(p.specialize_ones(&[0, 1]).constant_term(), BigInt::from(2));
        assert_eq!(p.specialize_ones(&[]), p);
        assert_eq!(p.d_vector(&[0]), vec![1]);
        let q = &LaurentPoly::mono(vec![-2, 1]) + &LaurentPoly::mono(vec![-1, 0]);
        assert_eq!(q.d_vector(&[0, 1]), vec![2, 0]);
        assert_eq!(LaurentPoly::one(2).d_vector(&[0, 1]), vec![0, 0]);
    }

    #[test]
    fn tropical_values() {
        let p = one_plus_var(1, 0);
        assert_eq!(p.tropical_eval(&[vec![-1]]), vec![-1]);
        assert_eq!(LaurentPoly::one(2).tropical_eval(&[vec![1, 0], vec![0, 1]]), vec![0, 0]);
        let f = &(&LaurentPoly::one(2) + &y(2, 0)) + &(&y(2, 0) * &y(2, 1));
        assert_eq!(f.tropical_eval(&[vec![-1, 1], vec![0, -1]]), vec![-1, 0]);
    }

    #[test]
    fn json_round_trip() {
        let p = &one_plus_var(2, 0).pow(5) * &LaurentPoly::mono(vec![-3, 1]);
        let v = p.to_json();
        assert_eq!(LaurentPoly::from_json(2, &v).unwrap(), p);
    }
}
