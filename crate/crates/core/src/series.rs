//! Truncated multivariate power series, graded by total degree.
//!
//! A [`TruncatedSeries`] with cap `T` stands for a residue class modulo
//! `(x)^{T+1}`. Binary operations return the smaller cap.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::hpoly::{Exp, HPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    nvars: usize,
    cap: u32,
    comps: Vec<HPoly>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        TruncatedSeries { nvars, cap, comps: (0..=cap).map(|k| HPoly::zero(nvars, k)).collect() }
    }

    pub fn constant(nvars: usize, cap: u32, c: Gq) -> Self {
        let mut s = TruncatedSeries::zero(nvars, cap);
        s.comps[0] = HPoly::constant(nvars, c);
        s
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        TruncatedSeries::constant(nvars, cap, Gq::one())
    }

    pub fn var(nvars: usize, cap: u32, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        TruncatedSeries::monomial(cap, e, Gq::one())
    }

    pub fn monomial(cap: u32, e: Exp, c: Gq) -> Self {
        let nvars = e.len();
        let mut s = TruncatedSeries::zero(nvars, cap);
        s.add_term(e, c);
        s
    }

    pub fn from_hpoly(h: &HPoly, cap: u32) -> Self {
        let mut s = TruncatedSeries::zero(h.nvars(), cap);
        if h.degree() <= cap {
            s.comps[h.degree() as usize] = h.clone();
        }
        s
    }

    /// Builds from components `0..=cap`; missing components are zero.
    pub fn from_components(nvars: usize, cap: u32, comps: Vec<HPoly>) -> Self {
        let mut s = TruncatedSeries::zero(nvars, cap);
        for (k, c) in comps.into_iter().enumerate() {
            if k as u32 > cap {
                break;
            }
            assert!(c.is_zero() || c.degree() == k as u32, "component degree mismatch");
            assert_eq!(c.nvars(), nvars);
            s.comps[k] = c.with_degree(k as u32);
        }
        s
    }

    /// Builds from sparse terms, dropping those above the cap.
    pub fn from_terms(nvars: usize, cap: u32, terms: impl IntoIterator<Item = (Exp, Gq)>) -> Result<Self> {
        let mut s = TruncatedSeries::zero(nvars, cap);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PfError::VarCountMismatch(e.len(), nvars));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// Adds `c·x^e` (ignored when above the cap).
    pub fn add_term(&mut self, e: Exp, c: Gq) {
        let d: u32 = e.iter().sum();
        if d <= self.cap {
            self.comps[d as usize].add_term(e, c);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn component(&self, k: u32) -> &HPoly {
        &self.comps[k as usize]
    }

    pub fn components(&self) -> &[HPoly] {
        &self.comps
    }

    /// All stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Gq)> {
        self.comps.iter().flat_map(|c| c.terms().iter())
    }

    pub fn coeff(&self, e: &[u32]) -> Gq {
        let d: u32 = e.iter().sum();
        if d > self.cap {
            return Gq::zero();
        }
        self.comps[d as usize].coeff(e)
    }

    pub fn constant_term(&self) -> Gq {
        self.comps[0].as_constant().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Lowers the cap (never raises it).
    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        TruncatedSeries { nvars: self.nvars, cap, comps: self.comps[..=cap as usize].to_vec() }
    }

    /// Raises the cap by declaring the unknown components zero: the series is
    /// read as the polynomial it stores.
    pub fn extend_exact(&self, cap: u32) -> Self {
        if cap <= self.cap {
            return self.truncate(cap);
        }
        let mut comps = self.comps.clone();
        for k in self.cap + 1..=cap {
            comps.push(HPoly::zero(self.nvars, k));
        }
        TruncatedSeries { nvars: self.nvars, cap, comps }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(PfError::VarCountMismatch(self.nvars, o.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let cap = self.cap.min(o.cap);
        let comps = (0..=cap as usize).map(|k| self.comps[k].add(&o.comps[k])).collect();
        Ok(TruncatedSeries { nvars: self.nvars, cap, comps })
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("series add")
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let cap = self.cap.min(o.cap);
        let comps = (0..=cap as usize).map(|k| self.comps[k].sub(&o.comps[k])).collect();
        TruncatedSeries { nvars: self.nvars, cap, comps }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { nvars: self.nvars, cap: self.cap, comps: self.comps.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, s: &Gq) -> Self {
        TruncatedSeries { nvars: self.nvars, cap: self.cap, comps: self.comps.iter().map(|c| c.scale(s)).collect() }
    }

    /// `s_mul`: product at the smaller cap.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let cap = self.cap.min(o.cap);
        Ok(self.mul_to(o, cap))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("series mul")
    }

    /// Product computed through degree `cap` (caller guarantees validity).
    pub(crate) fn mul_to(&self, o: &Self, cap: u32) -> Self {
        let mut r = TruncatedSeries::zero(self.nvars, cap);
        for i in 0..=cap.min(self.cap) {
            let a = &self.comps[i as usize];
            if a.is_zero() {
                continue;
            }
            for j in 0..=(cap - i).min(o.cap) {
                let b = &o.comps[j as usize];
                if b.is_zero() {
                    continue;
                }
                r.comps[(i + j) as usize].add_assign(&a.mul(b));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TruncatedSeries::one(self.nvars, self.cap);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `c·x^e`; the result is known through `cap + |e|`.
    pub fn mul_monomial(&self, e: &[u32], c: &Gq) -> Self {
        let d: u32 = e.iter().sum();
        let mut r = TruncatedSeries::zero(self.nvars, self.cap + d);
        for k in 0..=self.cap {
            r.comps[(k + d) as usize] = self.comps[k as usize].shift(e).scale(c);
        }
        r
    }

    /// Exact division by `x^e`, or `None` if some stored term is not divisible.
    pub fn div_monomial(&self, e: &[u32]) -> Option<Self> {
        let d: u32 = e.iter().sum();
        if d > self.cap {
            return Some(TruncatedSeries::zero(self.nvars, 0)).filter(|_| self.is_zero());
        }
        let mut r = TruncatedSeries::zero(self.nvars, self.cap - d);
        for (te, c) in self.terms() {
            if te.iter().zip(e).any(|(a, b)| a < b) {
                return None;
            }
            r.add_term(te.iter().zip(e).map(|(a, b)| a - b).collect(), c.clone());
        }
        Some(r)
    }

    /// `s_inv_unit`.
    pub fn inv_unit(&self) -> Result<Self> {
        let f0 = self.constant_term();
        if f0.is_zero() {
            return Err(PfError::NotAUnit);
        }
        let inv0 = f0.inv();
        let mut r = TruncatedSeries::zero(self.nvars, self.cap);
        r.comps[0] = HPoly::constant(self.nvars, inv0.clone());
        for k in 1..=self.cap {
            let mut acc = HPoly::zero(self.nvars, k);
            for j in 0..k {
                let a = &self.comps[(k - j) as usize];
                if a.is_zero() || r.comps[j as usize].is_zero() {
                    continue;
                }
                acc.add_assign(&a.mul(&r.comps[j as usize]));
            }
            r.comps[k as usize] = acc.scale(&(-&inv0));
        }
        Ok(r)
    }

    /// `f^α` for rational `α`, with `f(0)^α` taken as the principal root in
    /// ℚ(i). Uses the Euler-operator identity `f·D(r) = α·r·D(f)`.
    pub fn pow_rational(&self, alpha: &BigRational) -> Result<Self> {
        let f0 = self.constant_term();
        if f0.is_zero() {
            return Err(PfError::NotAUnit);
        }
        let den = alpha.denom().clone();
        let num = alpha.numer().clone();
        let e: u32 = num_traits::ToPrimitive::to_u32(&den)
            .ok_or_else(|| PfError::InvalidInput("exponent denominator too large".into()))?;
        let n: i64 = num_traits::ToPrimitive::to_i64(&num)
            .ok_or_else(|| PfError::InvalidInput("exponent numerator too large".into()))?;
        let root0 = f0.nth_root(e).ok_or_else(|| PfError::BaseFieldRootMissing(f0.to_string(), e))?;
        let r0 = root0.powi(n);
        let alpha_q = Gq::from_rational(alpha.clone());
        let mut r = TruncatedSeries::zero(self.nvars, self.cap);
        r.comps[0] = HPoly::constant(self.nvars, r0);
        let inv0 = f0.inv();
        for k in 1..=self.cap {
            let mut acc = HPoly::zero(self.nvars, k);
            for j in 0..k {
                let a = &self.comps[(k - j) as usize];
                if a.is_zero() || r.comps[j as usize].is_zero() {
                    continue;
                }
                let w = &(&alpha_q * &Gq::int((k - j) as i64)) - &Gq::int(j as i64);
                if w.is_zero() {
                    continue;
                }
                acc.add_assign(&a.mul(&r.comps[j as usize]).scale(&w));
            }
            r.comps[k as usize] = acc.scale(&(&inv0 / &Gq::int(k as i64)));
        }
        Ok(r)
    }

    /// `s_root_unit`: the `e`-th root whose constant term is the principal
    /// root of `f(0)`.
    pub fn root_unit(&self, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(PfError::InvalidInput("root index must be positive".into()));
        }
        self.pow_rational(&BigRational::new(1.into(), e.into()))
    }

    /// `s_order_initial`: `(ν(f), in(f))`, both `None` when zero up to cap.
    pub fn order_initial(&self) -> (Option<u32>, Option<HPoly>) {
        for (k, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                return (Some(k as u32), Some(c.clone()));
            }
        }
        (None, None)
    }

    pub fn order(&self) -> Option<u32> {
        self.comps.iter().position(|c| !c.is_zero()).map(|k| k as u32)
    }

    /// `s_subst`: `f(images)`. Every image must vanish at the origin.
    pub fn subst(&self, images: &[TruncatedSeries]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(PfError::VarCountMismatch(images.len(), self.nvars));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let m = first.nvars;
        let mut cap = self.cap;
        for (i, g) in images.iter().enumerate() {
            if g.nvars != m {
                return Err(PfError::VarCountMismatch(g.nvars, m));
            }
            if !g.comps[0].is_zero() {
                return Err(PfError::ConstantTermNonzero(i));
            }
            cap = cap.min(g.cap);
        }
        let images: Vec<TruncatedSeries> = images.iter().map(|g| g.truncate(cap)).collect();
        let mut cache = PowerCache::new(&images, cap);
        let mut out = TruncatedSeries::zero(m, cap);
        for k in 0..=cap.min(self.cap) {
            for (e, c) in self.comps[k as usize].terms() {
                let t = cache.monomial(e);
                for d in k..=cap {
                    let comp = &t.comps[d as usize];
                    if !comp.is_zero() {
                        out.comps[d as usize].add_assign(&comp.scale(c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Partial derivative in variable `i`; known through `cap − 1`.
    pub fn derivative(&self, i: usize) -> Self {
        let cap = self.cap.saturating_sub(1);
        let mut r = TruncatedSeries::zero(self.nvars, cap);
        for k in 1..=self.cap {
            if k - 1 <= cap {
                r.comps[(k - 1) as usize] = self.comps[k as usize].derivative(i);
            }
        }
        r
    }

    /// Adds variables (at the end) on which the series does not depend.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mut r = TruncatedSeries::zero(nvars, self.cap);
        for (e, c) in self.terms() {
            let mut ne = e.clone();
            ne.resize(nvars, 0);
            r.add_term(ne, c.clone());
        }
        r
    }
}

/// Memoized monomials in substitution images.
pub(crate) struct PowerCache<'a> {
    images: &'a [TruncatedSeries],
    cap: u32,
    pows: Vec<Vec<TruncatedSeries>>,
    monos: HashMap<Exp, TruncatedSeries>,
}

impl<'a> PowerCache<'a> {
    pub fn new(images: &'a [TruncatedSeries], cap: u32) -> Self {
        let m = images.first().map(|g| g.nvars).unwrap_or(0);
        PowerCache {
            images,
            cap,
            pows: images.iter().map(|_| vec![TruncatedSeries::one(m, cap)]).collect(),
            monos: HashMap::new(),
        }
    }

    fn power(&mut self, i: usize, k: u32) -> TruncatedSeries {
        while self.pows[i].len() <= k as usize {
            let last = self.pows[i].last().unwrap().clone();
            let next = last.mul_to(&self.images[i], self.cap);
            self.pows[i].push(next);
        }
        self.pows[i][k as usize].clone()
    }

    pub fn monomial(&mut self, e: &Exp) -> TruncatedSeries {
        if let Some(t) = self.monos.get(e) {
            return t.clone();
        }
        let m = self.images.first().map(|g| g.nvars).unwrap_or(0);
        let mut t = TruncatedSeries::one(m, self.cap);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                let p = self.power(i, k);
                t = t.mul_to(&p, self.cap);
            }
        }
        self.monos.insert(e.clone(), t.clone());
        t
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().filter(|c| !c.is_zero()).map(|c| format!("({c})")).collect();
        if parts.is_empty() {
            write!(f, "0 + O({})", self.cap + 1)
        } else {
            write!(f, "{} + O({})", parts.join(" + "), self.cap + 1)
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of ℂ⟦x^{1/e}⟧ stored as a series in `X_i = x_i^{1/e}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RamifiedSeries {
    pub base: TruncatedSeries,
    pub ram: u32,
}

impl RamifiedSeries {
    pub fn new(base: TruncatedSeries, ram: u32) -> Self {
        assert!(ram >= 1);
        RamifiedSeries { base, ram }
    }

    pub fn unramified(s: TruncatedSeries) -> Self {
        RamifiedSeries { base: s, ram: 1 }
    }

    /// Re-expresses with ramification `ram·m` (substitutes `X ↦ X^m`).
    pub fn refine(&self, m: u32) -> RamifiedSeries {
        if m == 1 {
            return self.clone();
        }
        let n = self.base.nvars();
        let mut b = TruncatedSeries::zero(n, self.base.cap() * m);
        for (e, c) in self.base.terms() {
            b.add_term(e.iter().map(|a| a * m).collect(), c.clone());
        }
        RamifiedSeries { base: b, ram: self.ram * m }
    }

    /// Brings two elements to a common ramification index.
    pub fn align(a: &RamifiedSeries, b: &RamifiedSeries) -> (RamifiedSeries, RamifiedSeries) {
        let l = num_integer::lcm(a.ram, b.ram);
        (a.refine(l / a.ram), b.refine(l / b.ram))
    }

    pub fn mul(&self, o: &RamifiedSeries) -> RamifiedSeries {
        let (a, b) = RamifiedSeries::align(self, o);
        RamifiedSeries { base: a.base.mul(&b.base), ram: a.ram }
    }

    pub fn add(&self, o: &RamifiedSeries) -> RamifiedSeries {
        let (a, b) = RamifiedSeries::align(self, o);
        RamifiedSeries { base: a.base.add(&b.base), ram: a.ram }
    }

    pub fn sub(&self, o: &RamifiedSeries) -> RamifiedSeries {
        let (a, b) = RamifiedSeries::align(self, o);
        RamifiedSeries { base: a.base.sub(&b.base), ram: a.ram }
    }

    /// Back to an ordinary series when every exponent is divisible by `ram`;
    /// the cap becomes `⌊cap/ram⌋`.
    pub fn try_unramify(&self) -> Option<TruncatedSeries> {
        let e = self.ram;
        let n = self.base.nvars();
        let cap = self.base.cap() / e;
        let mut r = TruncatedSeries::zero(n, cap);
        for (x, c) in self.base.terms() {
            if x.iter().any(|a| a % e != 0) {
                return None;
            }
            r.add_term(x.iter().map(|a| a / e).collect(), c.clone());
        }
        Some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, cap: u32) -> TruncatedSeries {
        TruncatedSeries::var(2, cap, i)
    }

    fn one(cap: u32) -> TruncatedSeries {
        TruncatedSeries::one(2, cap)
    }

    #[test]
    fn difference_of_squares() {
        let a = one(6).add(&x(0, 6));
        let b = one(6).sub(&x(0, 6));
        assert_eq!(a.mul(&b), one(6).sub(&x(0, 6).mul(&x(0, 6))));
    }

    #[test]
    fn geometric_inverse() {
        let f = one(7).sub(&x(0, 7));
        let g = f.inv_unit().unwrap();
        for k in 0..=7 {
            assert_eq!(g.coeff(&[k, 0]), Gq::one());
        }
        assert_eq!(TruncatedSeries::constant(2, 3, Gq::int(2)).inv_unit().unwrap().constant_term(), Gq::frac(1, 2));
        assert_eq!(x(0, 3).inv_unit(), Err(PfError::NotAUnit));
    }

    #[test]
    fn binomial_root() {
        let f = one(6).add(&x(0, 6));
        let r = f.root_unit(2).unwrap();
        assert_eq!(r.coeff(&[1, 0]), Gq::frac(1, 2));
        assert_eq!(r.coeff(&[2, 0]), Gq::frac(-1, 8));
        assert_eq!(r.mul(&r), f);
        let sq = one(6).add(&x(1, 6)).pow(2);
        assert_eq!(sq.root_unit(2).unwrap(), one(6).add(&x(1, 6)));
    }

    #[test]
    fn substitution_examples() {
        let f = x(0, 6).mul(&x(1, 6));
        let u = TruncatedSeries::var(2, 6, 0);
        let uv = u.mul(&TruncatedSeries::var(2, 6, 1));
        let r = f.subst(&[u.clone(), uv.clone()]).unwrap();
        assert_eq!(r, TruncatedSeries::monomial(6, vec![2, 1], Gq::one()));
        let cusp = x(1, 6).pow(2).sub(&x(0, 6).pow(3));
        let r = cusp.subst(&[u.clone(), uv]).unwrap();
        let w = TruncatedSeries::var(2, 6, 1);
        let expect = u.mul(&u).mul(&w.mul(&w).sub(&u));
        assert_eq!(r, expect);
        assert_eq!(f.subst(&[one(6), u]).unwrap_err(), PfError::ConstantTermNonzero(0));
    }

    #[test]
    fn order_and_initial() {
        let f = x(0, 5).pow(2).add(&x(1, 5).pow(3));
        let (o, i) = f.order_initial();
        assert_eq!(o, Some(2));
        assert_eq!(i.unwrap(), HPoly::var(2, 0).pow(2));
        assert_eq!(TruncatedSeries::zero(2, 10).order_initial(), (None, None));
    }
}
