//! Radical towers over ℚ(i)(x) and their truncated elements.
//!
//! Generator `j` satisfies `γ_j^{e_j} = h_j · Π_{i<j} γ_i^{c_{ji}}` with
//! `h_j` a homogeneous polynomial, so every product of generators reduces to
//! a fraction times a normal monomial `γ^r`, `r_j < e_j`.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::field::Gq;
use crate::hfrac::{FracSeries, HFrac};
use crate::hpoly::HPoly;
use crate::series::TruncatedSeries;

/// Valuations and caps.
pub type Val = Rational64;

pub(crate) type Key = Vec<u32>;

pub(crate) fn floor(v: Val) -> i64 {
    v.floor().to_integer()
}

fn trim(mut k: Key) -> Key {
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

#[derive(Clone, Debug)]
pub struct Gen {
    pub e: u32,
    pub h: HPoly,
    pub deps: Vec<u32>,
    pub omega: Val,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub nvars: usize,
    pub gens: Vec<Gen>,
}

impl Tower {
    pub fn new(nvars: usize) -> Self {
        Tower { nvars, gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Appends `γ^e = h · γ^deps`.
    pub fn push(&mut self, e: u32, h: HPoly, deps: Key) -> usize {
        let deps = trim(deps);
        assert!(deps.len() <= self.gens.len());
        let mut w = Val::from_integer(h.degree() as i64);
        for (i, &c) in deps.iter().enumerate() {
            w += self.gens[i].omega * Val::from_integer(c as i64);
        }
        self.gens.push(Gen { e, h, deps, omega: w / Val::from_integer(e as i64) });
        self.gens.len() - 1
    }

    pub fn truncate_gens(&mut self, n: usize) {
        self.gens.truncate(n);
    }

    pub fn wdeg(&self, k: &[u32]) -> Val {
        k.iter().zip(&self.gens).map(|(&r, g)| g.omega * Val::from_integer(r as i64)).sum()
    }

    pub fn degree(&self) -> usize {
        self.gens.iter().map(|g| g.e as usize).product()
    }

    pub fn unit(&self, j: usize, r: u32) -> Key {
        let mut k = vec![0; j + 1];
        k[j] = r;
        trim(k)
    }

    /// Normal form of `γ^k`.
    pub fn reduce(&self, k: &[u32]) -> (HPoly, Key) {
        let mut k: Key = k.to_vec();
        k.resize(self.gens.len().max(k.len()), 0);
        let mut coef = HPoly::one(self.nvars);
        for j in (0..self.gens.len()).rev() {
            let g = &self.gens[j];
            let q = k[j] / g.e;
            if q > 0 {
                k[j] %= g.e;
                coef = coef.mul(&g.h.pow(q));
                for (i, &c) in g.deps.iter().enumerate() {
                    k[i] += q * c;
                }
            }
        }
        (coef, trim(k))
    }

    pub fn mono_mul(&self, a: &[u32], b: &[u32]) -> (HPoly, Key) {
        let n = a.len().max(b.len());
        let s: Key = (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect();
        self.reduce(&s)
    }

    /// Product of two monomials `f·γ^a`.
    pub fn mono_mul_frac(&self, a: &(HFrac, Key), b: &(HFrac, Key)) -> (HFrac, Key) {
        let (c, k) = self.mono_mul(&a.1, &b.1);
        (a.0.mul(&b.0).mul_poly(&c), k)
    }

    pub fn mono_pow(&self, m: &(HFrac, Key), e: u32) -> (HFrac, Key) {
        let mut acc = (HFrac::one(self.nvars), Key::new());
        for _ in 0..e {
            acc = self.mono_mul_frac(&acc, m);
        }
        acc
    }

    /// `γ^{-k}` as a monomial.
    pub fn mono_inv(&self, k: &[u32]) -> (HFrac, Key) {
        let mut acc = (HFrac::one(self.nvars), Key::new());
        for (j, &r) in k.iter().enumerate() {
            if r > 0 {
                let g = self.inv_gen(j);
                acc = self.mono_mul_frac(&acc, &self.mono_pow(&g, r));
            }
        }
        acc
    }

    fn inv_gen(&self, j: usize) -> (HFrac, Key) {
        let g = &self.gens[j];
        let (c, kk) = self.mono_inv(&g.deps);
        let (c2, k2) = self.mono_mul(&self.unit(j, g.e - 1), &kk);
        (c.mul_poly(&c2).div_poly(&g.h, 1), k2)
    }

    pub fn mono_val(&self, m: &(HFrac, Key)) -> Val {
        Val::from_integer(m.0.degree()) + self.wdeg(&m.1)
    }

    /// A monomial `δ` with `δ^k = ρ`, appending one generator when the tower
    /// has none. The new generator `G` satisfies `G^t = σ` for the smallest
    /// `t | k` such that `σ^{k/t} = ρ` has a monomial solution `σ`.
    pub fn root_monomial(&mut self, rho: &(HFrac, Key), k: u32) -> (HFrac, Key) {
        for t in (1..=k).filter(|t| k % t == 0) {
            let m = k / t;
            for s in self.basis() {
                let sm: Key = s.iter().map(|x| x * m).collect();
                let (c, key) = self.reduce(&sm);
                if key != rho.1 {
                    continue;
                }
                let Some(g) = rho.0.div_poly(&c, 1).nth_root(m) else { continue };
                if t == 1 {
                    return (g, s);
                }
                let (d, h) = integralize(&g, t);
                let j = self.push(t, h, s);
                return (HFrac::one(self.nvars).div_poly(&d, 1), self.unit(j, 1));
            }
        }
        unreachable!("t = k always has a solution")
    }

    /// All normal monomials, in lexicographic order of keys.
    pub fn basis(&self) -> Vec<Key> {
        let mut out = vec![Vec::new()];
        for g in &self.gens {
            let mut next = Vec::new();
            for k in &out {
                for r in 0..g.e {
                    let mut k2 = k.clone();
                    k2.push(r);
                    next.push(k2);
                }
            }
            out = next;
        }
        let mut out: Vec<Key> = out.into_iter().map(trim).collect();
        out.sort();
        out
    }
}

/// `Σ_r A_r γ^r`, correct for every term of valuation `≤ cap`.
#[derive(Clone, Debug)]
pub struct TElem {
    pub terms: BTreeMap<Key, FracSeries>,
    pub cap: Val,
}

impl TElem {
    pub fn zero(cap: Val) -> Self {
        TElem { terms: BTreeMap::new(), cap }
    }

    pub fn from_frac(f: HFrac, cap: Val) -> Self {
        TElem::mono(&(f, Key::new()), cap)
    }

    pub fn constant(nvars: usize, c: Gq, cap: Val) -> Self {
        TElem::from_frac(HFrac::constant(nvars, c), cap)
    }

    pub fn mono(m: &(HFrac, Key), cap: Val) -> Self {
        let mut terms = BTreeMap::new();
        if !m.0.is_zero() {
            terms.insert(m.1.clone(), FracSeries::single(m.0.clone()));
        }
        TElem { terms, cap }
    }

    /// Components of `s` through `cap`, read as exact.
    pub fn from_series(s: &TruncatedSeries, cap: Val) -> Self {
        let mut fs = FracSeries::zero();
        let top = floor(cap).min(s.cap() as i64);
        for k in 0..=top.max(-1) {
            let c = s.component(k as u32);
            if !c.is_zero() {
                fs.add_comp(HFrac::from_hpoly(c.clone()));
            }
        }
        let mut terms = BTreeMap::new();
        if !fs.is_zero() {
            terms.insert(Key::new(), fs);
        }
        TElem { terms, cap }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self, t: &Tower) -> Option<Val> {
        self.terms.iter().filter_map(|(k, s)| s.order().map(|o| Val::from_integer(o) + t.wdeg(k))).min()
    }

    /// Valuation known for certain: the stored one, or the cap for a zero.
    pub fn nu(&self, t: &Tower) -> Val {
        match self.valuation(t) {
            Some(v) => v.min(self.cap),
            None => self.cap,
        }
    }

    pub fn truncated(mut self, t: &Tower, cap: Val) -> Self {
        let cap = cap.min(self.cap);
        self.cap = cap;
        let terms = std::mem::take(&mut self.terms);
        for (k, s) in terms {
            let s = s.truncate(floor(cap - t.wdeg(&k)));
            if !s.is_zero() {
                self.terms.insert(k, s);
            }
        }
        self
    }

    pub fn add(&self, o: &TElem, t: &Tower) -> TElem {
        let mut r = self.clone();
        r.cap = self.cap.min(o.cap);
        for (k, s) in &o.terms {
            let v = match r.terms.remove(k) {
                Some(a) => a.add(s),
                None => s.clone(),
            };
            if !v.is_zero() {
                r.terms.insert(k.clone(), v);
            }
        }
        let cap = r.cap;
        r.truncated(t, cap)
    }

    pub fn neg(&self) -> TElem {
        TElem { terms: self.terms.iter().map(|(k, s)| (k.clone(), s.neg())).collect(), cap: self.cap }
    }

    pub fn sub(&self, o: &TElem, t: &Tower) -> TElem {
        self.add(&o.neg(), t)
    }

    pub fn scale(&self, c: &Gq) -> TElem {
        if c.is_zero() {
            return TElem::zero(self.cap);
        }
        TElem { terms: self.terms.iter().map(|(k, s)| (k.clone(), s.scale(c))).collect(), cap: self.cap }
    }

    pub fn mul(&self, o: &TElem, t: &Tower, limit: Val) -> TElem {
        let cap = (self.cap + o.nu(t)).min(o.cap + self.nu(t)).min(limit);
        let mut r = TElem::zero(cap);
        for (ka, sa) in &self.terms {
            let wa = t.wdeg(ka);
            for (kb, sb) in &o.terms {
                let wb = t.wdeg(kb);
                let top = floor(cap - wa - wb);
                let (Some(oa), Some(ob)) = (sa.order(), sb.order()) else { continue };
                if oa + ob > top {
                    continue;
                }
                let (c, k) = t.mono_mul(ka, kb);
                let prod = sa.mul_to(sb, Some(top));
                let prod = if c.degree() == 0 && c.as_constant() == Some(Gq::one()) {
                    prod
                } else {
                    prod.mul_frac(&HFrac::from_hpoly(c))
                };
                let v = match r.terms.remove(&k) {
                    Some(a) => a.add(&prod),
                    None => prod,
                };
                if !v.is_zero() {
                    r.terms.insert(k, v);
                }
            }
        }
        r
    }

    /// Product with the monomial `f·γ^k`.
    pub fn mul_mono(&self, m: &(HFrac, Key), t: &Tower, limit: Val) -> TElem {
        let vm = t.mono_val(m);
        let cap = (self.cap + vm).min(limit);
        let mut r = TElem::zero(cap);
        for (ka, sa) in &self.terms {
            let (c, k) = t.mono_mul(ka, &m.1);
            let prod = sa.mul_frac(&m.0.mul_poly(&c));
            let v = match r.terms.remove(&k) {
                Some(a) => a.add(&prod),
                None => prod,
            };
            if !v.is_zero() {
                r.terms.insert(k, v);
            }
        }
        r.truncated(t, cap)
    }

    /// The terms of exact valuation `v`.
    pub fn part_at(&self, t: &Tower, v: Val) -> Vec<(Key, HFrac)> {
        let mut out = Vec::new();
        for (k, s) in &self.terms {
            let d = v - t.wdeg(k);
            if d.is_integer() {
                if let Some(f) = s.comp(d.to_integer()) {
                    out.push((k.clone(), f.clone()));
                }
            }
        }
        out
    }

    pub fn initial(&self, t: &Tower) -> Vec<(Key, HFrac)> {
        match self.valuation(t) {
            Some(v) => self.part_at(t, v),
            None => Vec::new(),
        }
    }

    /// Whether only the trivial monomial occurs.
    pub fn is_base(&self) -> bool {
        self.terms.keys().all(|k| k.is_empty())
    }
}

/// `(D, H)` with `H = D^t·g` a polynomial.
pub(crate) fn integralize(g: &HFrac, t: u32) -> (HPoly, HPoly) {
    let mut d = HPoly::one(g.nvars());
    for (a, m) in g.den() {
        d = d.mul(&a.pow(m.div_ceil(t)));
    }
    let h = g.mul_poly(&d.pow(t));
    debug_assert!(h.den().is_empty());
    (d, h.num().clone())
}
