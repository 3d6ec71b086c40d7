//! Projective rings, integral homogeneous elements and the valued
//! extensions they generate.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::hfrac::{FracSeries, HFrac};
use crate::hpoly::HPoly;
use crate::linalg::{adjugate, Ring};
use crate::series::TruncatedSeries;
use crate::tower::{floor, Key, TElem, Tower, Val};
use crate::upoly::UPoly;

/// Cap used for values that are known exactly.
pub(crate) fn exact_cap() -> Val {
    Val::from_integer(1 << 24)
}

/// `A = Σ_{k ≥ k0} a_k / h^{αk+β}` with `deg(a_k) − (αk+β)·deg(h) = k`.
#[derive(Clone, Debug)]
pub struct PhElem {
    h: HPoly,
    alpha: u32,
    beta: u32,
    k0: i64,
    terms: Vec<HPoly>,
}

impl PhElem {
    pub fn new(h: HPoly, alpha: u32, beta: u32, k0: i64, terms: Vec<HPoly>) -> Result<Self> {
        if k0 < 0 {
            return Err(PfError::InvalidInput("k0 must be non-negative".into()));
        }
        PhElem::new_laurent(h, alpha, beta, k0, terms)
    }

    /// As [`PhElem::new`], allowing a negative starting index.
    pub(crate) fn new_laurent(h: HPoly, alpha: u32, beta: u32, k0: i64, terms: Vec<HPoly>) -> Result<Self> {
        if h.is_zero() {
            return Err(PfError::InvalidInput("h is zero".into()));
        }
        let a = PhElem { h, alpha, beta, k0, terms };
        for (i, t) in a.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let k = a.k0 + i as i64;
            let e = a.exponent(k);
            if e < 0 || t.nvars() != a.h.nvars() || t.degree() as i64 - e * a.h.degree() as i64 != k {
                return Err(PfError::InvalidInput(format!("term a_{k} has the wrong degree")));
            }
        }
        Ok(a)
    }

    pub fn one(h: HPoly) -> Self {
        let n = h.nvars();
        PhElem { h, alpha: 0, beta: 0, k0: 0, terms: vec![HPoly::one(n)] }
    }

    pub fn h(&self) -> &HPoly {
        &self.h
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn k0(&self) -> i64 {
        self.k0
    }

    /// Last index carried.
    pub fn cap(&self) -> i64 {
        self.k0 + self.terms.len() as i64 - 1
    }

    pub fn terms(&self) -> &[HPoly] {
        &self.terms
    }

    pub fn term(&self, k: i64) -> Option<&HPoly> {
        if k < self.k0 {
            return None;
        }
        self.terms.get((k - self.k0) as usize)
    }

    fn exponent(&self, k: i64) -> i64 {
        self.alpha as i64 * k + self.beta as i64
    }

    pub fn to_frac_series(&self) -> FracSeries {
        let mut s = FracSeries::zero();
        for (i, a) in self.terms.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = self.exponent(self.k0 + i as i64) as u32;
            s.add_comp(HFrac::from_hpoly(a.clone()).div_poly(&self.h, e));
        }
        s
    }

    /// Writes a graded fraction series over powers of `h`, with the least
    /// slope `α` and then the least `β` that work.
    pub fn from_frac_series(h: &HPoly, s: &FracSeries, k0: i64, cap: i64) -> Option<PhElem> {
        let mut need: Vec<(i64, i64)> = Vec::new();
        for (&k, f) in s.comps.range(k0..=cap) {
            need.push((k, h_exponent_needed(f, h)?));
        }
        let alpha = match need.first() {
            None => 0,
            Some(&(k1, e1)) => {
                need.iter().skip(1).map(|&(k, e)| (e - e1 + (k - k1) - 1).div_euclid(k - k1)).max().unwrap_or(0).max(0)
            }
        };
        let beta = need.iter().map(|&(k, e)| e - alpha * k).max().unwrap_or(0).max(0);
        let mut terms = Vec::new();
        for k in k0..=cap {
            let t = match s.comp(k) {
                None => HPoly::zero(h.nvars(), 0),
                Some(f) => {
                    let g = f.mul_poly(&h.pow((alpha * k + beta) as u32));
                    if !g.den().is_empty() {
                        return None;
                    }
                    g.num().clone()
                }
            };
            terms.push(t);
        }
        PhElem::new_laurent(h.clone(), alpha as u32, beta as u32, k0, terms).ok()
    }

    /// Value equality through `min(cap)`, by cross-multiplication.
    pub fn value_eq(&self, o: &PhElem) -> bool {
        let lo = self.k0.min(o.k0);
        let hi = self.cap().min(o.cap());
        for k in lo..=hi {
            let a = self.term(k).filter(|t| !t.is_zero());
            let b = o.term(k).filter(|t| !t.is_zero());
            match (a, b) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    let l = a.mul(&o.h.pow(o.exponent(k) as u32));
                    let r = b.mul(&self.h.pow(self.exponent(k) as u32));
                    if l != r {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Divides out the largest common power of `h` the invariant allows.
    fn normalized(self) -> PhElem {
        if self.h.degree() == 0 {
            return self;
        }
        let mults: Vec<(i64, u32)> = self
            .terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| (self.k0 + i as i64, multiplicity(t, &self.h)))
            .collect();
        let fits = |a: u32, b: u32| {
            mults.iter().all(|&(k, m)| {
                let drop = (self.alpha - a) as i64 * k + (self.beta - b) as i64;
                drop >= 0 && drop <= m as i64 && a as i64 * k + b as i64 >= 0
            })
        };
        for a in 0..=self.alpha {
            for b in 0..=self.beta {
                if fits(a, b) {
                    if a == self.alpha && b == self.beta {
                        return self;
                    }
                    let terms = self
                        .terms
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            if t.is_zero() {
                                return t.clone();
                            }
                            let k = self.k0 + i as i64;
                            let drop = (self.alpha - a) as i64 * k + (self.beta - b) as i64;
                            t.div_exact(&self.h.pow(drop as u32)).unwrap()
                        })
                        .collect();
                    return PhElem { h: self.h, alpha: a, beta: b, k0: self.k0, terms };
                }
            }
        }
        self
    }
}

fn multiplicity(t: &HPoly, h: &HPoly) -> u32 {
    let mut m = 0;
    let mut cur = t.clone();
    while let Some(q) = cur.div_exact(h) {
        if cur.degree() < h.degree() {
            break;
        }
        cur = q;
        m += 1;
    }
    m
}

fn h_exponent_needed(f: &HFrac, h: &HPoly) -> Option<i64> {
    if f.den().is_empty() {
        return Some(0);
    }
    let max_m = f.den().iter().map(|(_, m)| *m).max().unwrap_or(0);
    for e in 0..=(max_m * 4 + 4) {
        if f.mul_poly(&h.pow(e)).den().is_empty() {
            return Some(e as i64);
        }
    }
    None
}

/// Product in `ℙ_h`.
pub fn ph_mul(a: &PhElem, b: &PhElem) -> Result<PhElem> {
    if a.h != b.h {
        return Err(PfError::DenominatorMismatch);
    }
    let k0 = a.k0 + b.k0;
    let cap = (a.cap() + b.k0).min(b.cap() + a.k0);
    let n = a.h.nvars();
    let mut terms = Vec::new();
    for k in k0..=cap {
        let mut acc: Option<HPoly> = None;
        for i in a.k0..=a.cap() {
            let j = k - i;
            let (Some(ai), Some(bj)) = (a.term(i), b.term(j)) else { continue };
            if ai.is_zero() || bj.is_zero() {
                continue;
            }
            let pad = a.alpha as i64 * j + b.alpha as i64 * i;
            let t = ai.mul(bj).mul(&a.h.pow(pad as u32));
            acc = Some(match acc {
                None => t,
                Some(s) => s.add(&t),
            });
        }
        terms.push(acc.unwrap_or_else(|| HPoly::zero(n, 0)));
    }
    let r = PhElem { h: a.h.clone(), alpha: a.alpha + b.alpha, beta: a.beta + b.beta, k0, terms };
    Ok(r.normalized())
}

/// The same element of `ℙ_{h·h₂}`.
pub fn ph_rebase(a: &PhElem, h2: &HPoly) -> PhElem {
    let terms = a
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| if t.is_zero() { t.clone() } else { t.mul(&h2.pow(a.exponent(a.k0 + i as i64) as u32)) })
        .collect();
    PhElem { h: a.h.mul(h2), alpha: a.alpha, beta: a.beta, k0: a.k0, terms }
}

/// Root of `Γ(x, z) = z^d + Σ f_i(x) z^{d−i}` with `deg f_i = ω·i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomElem {
    nvars: usize,
    f: Vec<HPoly>,
    omega: Val,
    pure: bool,
}

impl HomElem {
    /// `z − 1`.
    pub fn trivial(nvars: usize) -> Self {
        HomElem { nvars, f: vec![HPoly::constant(nvars, -Gq::one())], omega: Val::zero(), pure: true }
    }

    /// `z^e − h`.
    pub fn pure(e: u32, h: HPoly) -> Self {
        let n = h.nvars();
        let mut f: Vec<HPoly> = (1..e).map(|_| HPoly::zero(n, 0)).collect();
        let omega = Val::new(h.degree() as i64, e as i64);
        f.push(h.neg());
        HomElem { nvars: n, f, omega, pure: true }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.f.len()
    }

    pub fn omega(&self) -> Val {
        self.omega
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    /// `f_1 .. f_d`.
    pub fn coeffs(&self) -> &[HPoly] {
        &self.f
    }

    /// Coefficients by ascending power of `z`, ending in `1`.
    pub fn ascending(&self) -> Vec<HPoly> {
        let mut v: Vec<HPoly> = self.f.iter().rev().cloned().collect();
        v.push(HPoly::one(self.nvars));
        v
    }

    /// `(e, h)` for `z^e − h`.
    pub fn radicand(&self) -> Option<(u32, HPoly)> {
        if self.pure {
            Some((self.f.len() as u32, self.f.last().unwrap().neg()))
        } else {
            None
        }
    }
}

/// Builds the homogeneous element defined by `Γ`, given by ascending powers
/// of `z`.
pub fn gamma_adjoin(gamma: &[HPoly]) -> Result<HomElem> {
    if gamma.len() < 2 {
        return Err(PfError::InvalidInput("Γ must have degree at least 1".into()));
    }
    let d = gamma.len() - 1;
    if gamma[d].as_constant() != Some(Gq::one()) {
        return Err(PfError::InvalidInput("Γ must be monic in z".into()));
    }
    let nvars = gamma[d].nvars();
    let f: Vec<HPoly> = (1..=d).map(|i| gamma[d - i].clone()).collect();
    if f.iter().any(|p| p.nvars() != nvars) {
        return Err(PfError::VarCountMismatch(nvars, f.iter().find(|p| p.nvars() != nvars).unwrap().nvars()));
    }
    if f[d - 1].is_zero() {
        return Err(PfError::InvalidInput("Γ(x, 0) vanishes".into()));
    }
    let mut omega: Option<Val> = None;
    for (i, p) in f.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let w = Val::new(p.degree() as i64, i as i64 + 1);
        match omega {
            None => omega = Some(w),
            Some(o) if o != w => return Err(PfError::NotWeightedHomogeneous(i + 1)),
            _ => {}
        }
    }
    let pure = f[..d - 1].iter().all(|p| p.is_zero());
    Ok(HomElem { nvars, f, omega: omega.unwrap(), pure })
}

/// `Σ_{k<d} A_k γ^k`, correct for terms of valuation `≤ cap`.
#[derive(Clone, Debug)]
pub struct VGammaElem {
    gamma: HomElem,
    coeffs: Vec<FracSeries>,
    cap: Val,
}

impl VGammaElem {
    pub fn new(gamma: HomElem, mut coeffs: Vec<FracSeries>, cap: Val) -> Self {
        coeffs.resize(gamma.degree(), FracSeries::zero());
        VGammaElem { gamma, coeffs, cap }.truncated(cap)
    }

    pub fn from_base(gamma: HomElem, a: FracSeries, cap: Val) -> Self {
        VGammaElem::new(gamma, vec![a], cap)
    }

    pub fn gamma(&self) -> &HomElem {
        &self.gamma
    }

    pub fn coeffs(&self) -> &[FracSeries] {
        &self.coeffs
    }

    pub fn cap(&self) -> Val {
        self.cap
    }

    fn kw(&self, k: usize) -> Val {
        self.gamma.omega * Val::from_integer(k as i64)
    }

    pub fn truncated(mut self, cap: Val) -> Self {
        self.cap = self.cap.min(cap);
        for k in 0..self.coeffs.len() {
            let top = floor(self.cap - self.kw(k));
            self.coeffs[k] = self.coeffs[k].truncate(top);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Whether every `γ^k`, `k ≥ 1`, has a zero coefficient.
    pub fn is_base(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn valuation(&self) -> Option<Val> {
        vg_valuation(self)
    }

    fn nu(&self) -> Val {
        self.valuation().map(|v| v.min(self.cap)).unwrap_or(self.cap)
    }

    pub fn add(&self, o: &VGammaElem) -> VGammaElem {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        VGammaElem::new(self.gamma.clone(), coeffs, self.cap.min(o.cap))
    }

    pub fn neg(&self) -> VGammaElem {
        VGammaElem { gamma: self.gamma.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), cap: self.cap }
    }

    pub fn sub(&self, o: &VGammaElem) -> VGammaElem {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Gq) -> VGammaElem {
        VGammaElem {
            gamma: self.gamma.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
            cap: self.cap,
        }
    }

    /// Product, reduced modulo `Γ`.
    pub fn mul(&self, o: &VGammaElem) -> VGammaElem {
        let d = self.gamma.degree();
        let cap = (self.cap + o.nu()).min(o.cap + self.nu());
        let mut acc = vec![FracSeries::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let top = floor(cap - self.kw(i + j));
                acc[i + j] = acc[i + j].add(&a.mul_to(b, Some(top)));
            }
        }
        for m in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut acc[m]);
            if c.is_zero() {
                continue;
            }
            for (i, fi) in self.gamma.f.iter().enumerate() {
                if !fi.is_zero() {
                    let t = c.mul_frac(&HFrac::from_hpoly(fi.clone()));
                    acc[m - i - 1] = acc[m - i - 1].sub(&t);
                }
            }
        }
        acc.truncate(d);
        VGammaElem::new(self.gamma.clone(), acc, cap)
    }

    /// Equality of every coefficient through the common cap.
    pub fn agrees(&self, o: &VGammaElem) -> bool {
        let c = self.cap.min(o.cap);
        let a = self.clone().truncated(c);
        let b = o.clone().truncated(c);
        a.coeffs == b.coeffs
    }

    /// Coefficients as elements of `ℙ_h`, through ν-degree `cap`.
    pub fn to_ph(&self, h: &HPoly) -> Option<Vec<PhElem>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let lo = c.order().unwrap_or(0).min(0);
                let top = floor(self.cap - self.kw(k));
                PhElem::from_frac_series(h, c, lo, top.max(lo))
            })
            .collect()
    }
}

/// `min_k ν(A_k) + kω`, or `None` when every coefficient is zero.
pub fn vg_valuation(x: &VGammaElem) -> Option<Val> {
    x.coeffs.iter().enumerate().filter_map(|(k, c)| c.order().map(|o| Val::from_integer(o) + x.kw(k))).min()
}

/// Image of `ξ` under `γ ↦ ζ^j γ` for a primitive `e`-th root of unity `ζ`.
pub fn gamma_conjugate(x: &VGammaElem, j: u32) -> Result<VGammaElem> {
    let Some((e, _)) = x.gamma.radicand() else { return Err(PfError::NonPureUnsupported) };
    let zeta = match e {
        1 => Gq::one(),
        2 => -Gq::one(),
        4 => Gq::i(),
        _ => return Err(PfError::CyclotomicUnsupported(e)),
    };
    let coeffs = x.coeffs.iter().enumerate().map(|(k, c)| c.scale(&zeta.pow((j * k as u32) % e))).collect();
    Ok(VGammaElem { gamma: x.gamma.clone(), coeffs, cap: x.cap })
}

/// A single homogeneous element generating a whole tower, with every normal
/// monomial of the tower written in its powers.
#[derive(Clone, Debug)]
pub(crate) struct Primitive {
    pub gamma: HomElem,
    pub expr: BTreeMap<Key, Vec<HFrac>>,
}

const PRIMITIVE_TRIES: usize = 32;

pub(crate) fn primitive_of_tower(t: &Tower, seed: u64) -> Result<Primitive> {
    let n = t.nvars;
    match t.len() {
        0 => {
            let mut expr = BTreeMap::new();
            expr.insert(Key::new(), vec![HFrac::one(n)]);
            return Ok(Primitive { gamma: HomElem::trivial(n), expr });
        }
        1 => {
            let g = &t.gens[0];
            let gamma = HomElem::pure(g.e, g.h.clone());
            let mut expr = BTreeMap::new();
            for r in 0..g.e {
                let mut v = vec![HFrac::constant(n, Gq::zero()); g.e as usize];
                v[r as usize] = HFrac::one(n);
                expr.insert(t.unit(0, r), v);
            }
            return Ok(Primitive { gamma, expr });
        }
        _ => {}
    }
    let basis = t.basis();
    let nb = basis.len();
    let wd: Vec<Val> = basis.iter().map(|k| t.wdeg(k)).collect();
    let l = wd.iter().map(|w| *w.denom()).fold(1i64, num_integer::lcm);
    let r0 = wd.iter().position(|w| *w.denom() == l).unwrap();
    let coset: Vec<usize> = (0..nb).filter(|&i| (wd[i] - wd[r0]).is_integer()).collect();
    let omega = coset.iter().map(|&i| wd[i]).max().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PRIMITIVE_TRIES {
        let mut g0: BTreeMap<Key, HPoly> = BTreeMap::new();
        for &i in &coset {
            let c = loop {
                let c = Gq::gauss(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                if !c.is_zero() {
                    break c;
                }
            };
            let mut e = vec![0u32; n];
            e[0] = (omega - wd[i]).to_integer() as u32;
            g0.insert(basis[i].clone(), HPoly::monomial(e, c));
        }
        if let Some(p) = try_primitive(t, &basis, &wd, omega, &g0)? {
            return Ok(p);
        }
    }
    Err(PfError::PrimitiveCheckFailed(PRIMITIVE_TRIES))
}

fn exact_mul(t: &Tower, a: &BTreeMap<Key, HPoly>, b: &BTreeMap<Key, HPoly>) -> BTreeMap<Key, HPoly> {
    let mut r: BTreeMap<Key, HPoly> = BTreeMap::new();
    for (ka, pa) in a {
        for (kb, pb) in b {
            let (c, k) = t.mono_mul(ka, kb);
            let v = pa.mul(pb).mul(&c);
            match r.get_mut(&k) {
                Some(s) => s.add_assign(&v),
                None => {
                    r.insert(k, v);
                }
            }
        }
    }
    r.retain(|_, p| !p.is_zero());
    r
}

fn try_primitive(
    t: &Tower,
    basis: &[Key],
    wd: &[Val],
    omega: Val,
    g0: &BTreeMap<Key, HPoly>,
) -> Result<Option<Primitive>> {
    let n = t.nvars;
    let nb = basis.len();
    let mut powers = vec![BTreeMap::from([(Key::new(), HPoly::one(n))])];
    for k in 1..=nb {
        let next = exact_mul(t, &powers[k - 1], g0);
        powers.push(next);
    }
    let zero = HPoly::zero(n, 0);
    let a: Vec<Vec<HPoly>> = basis
        .iter()
        .map(|s| (0..nb).map(|k| powers[k].get(s).cloned().unwrap_or_else(|| zero.clone())).collect())
        .collect();
    let top: Vec<HPoly> = basis.iter().map(|s| powers[nb].get(s).cloned().unwrap_or_else(|| zero.clone())).collect();
    let kw = |k: usize| omega * Val::from_integer(k as i64);
    let ddet = (0..nb).map(kw).sum::<Val>() - wd.iter().sum::<Val>();
    if !ddet.is_integer() || ddet < Val::zero() {
        return Ok(None);
    }
    let ddet = ddet.to_integer();
    let solved = if n <= 2 {
        solve_dehom(&a, &top, &dehom_u)
    } else {
        let bound = (nb * nb) as i64 * (omega.ceil().to_integer() + 1) + ddet + 2;
        let cap = bound as u32;
        solve_dehom(&a, &top, &|p: &HPoly| dehom_s(p, cap))
    };
    let Some((det, adj, ytop)) = solved else { return Ok(None) };
    let det_h = rehom_any(&det, ddet);
    let det_f = HFrac::from_hpoly(det_h);
    // λ_k: γ₀^N = Σ λ_k γ₀^k
    let mut f: Vec<HFrac> = Vec::with_capacity(nb);
    for i in 1..=nb {
        let k = nb - i;
        let deg = ddet + (kw(nb) - kw(k)).to_integer();
        let lam = HFrac::from_hpoly(rehom_any(&ytop[k], deg)).mul(&det_f.inv().unwrap());
        f.push(lam.neg());
    }
    // clear denominators: γ₀' = c₀γ₀
    let mut c0 = HPoly::one(n);
    for fi in &f {
        for (g, m) in fi.den() {
            c0 = c0.mul(&g.pow(*m));
        }
    }
    let c0f = HFrac::from_hpoly(c0.clone());
    let fpoly: Vec<HPoly> = f
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            let v = fi.mul(&c0f.pow(i as u32 + 1));
            debug_assert!(v.den().is_empty());
            v.num().clone()
        })
        .collect();
    let omega0 = omega + Val::from_integer(c0.degree() as i64);
    let pure = fpoly[..nb - 1].iter().all(|p| p.is_zero());
    let gamma = HomElem { nvars: n, f: fpoly, omega: omega0, pure };
    let mut expr = BTreeMap::new();
    for (si, s) in basis.iter().enumerate() {
        let mut v = Vec::with_capacity(nb);
        for k in 0..nb {
            let d = ddet - (kw(k) - wd[si]).to_integer();
            let num = if d < 0 { HFrac::constant(n, Gq::zero()) } else { HFrac::from_hpoly(rehom_any(&adj[k][si], d)) };
            let mu = num.mul(&det_f.inv().unwrap()).mul(&c0f.pow(k as u32).inv().unwrap());
            v.push(mu);
        }
        expr.insert(s.clone(), v);
    }
    Ok(Some(Primitive { gamma, expr }))
}

/// Dehomogenized values kept together with a rehomogenizer.
enum Dehom {
    U(UPoly, usize),
    S(TruncatedSeries, usize),
}

fn rehom_any(d: &Dehom, deg: i64) -> HPoly {
    match d {
        Dehom::U(u, n) => rehom_u(u, *n, deg),
        Dehom::S(s, n) => rehom_s(s, *n, deg),
    }
}

trait Wrap: Ring {
    fn wrap(&self, n: usize) -> Dehom;
}

impl Wrap for UPoly {
    fn wrap(&self, n: usize) -> Dehom {
        Dehom::U(self.clone(), n)
    }
}

impl Wrap for TruncatedSeries {
    fn wrap(&self, n: usize) -> Dehom {
        Dehom::S(self.clone(), n)
    }
}

type Solved = (Dehom, Vec<Vec<Dehom>>, Vec<Dehom>);

fn solve_dehom<R: Wrap>(a: &[Vec<HPoly>], top: &[HPoly], deh: &dyn Fn(&HPoly) -> R) -> Option<Solved> {
    let n = a[0][0].nvars();
    let m: Vec<Vec<R>> = a.iter().map(|row| row.iter().map(deh).collect()).collect();
    let adj = adjugate(&m);
    let nb = m.len();
    let zero = m[0][0].zero_like();
    let det = (0..nb).fold(zero.clone(), |acc, k| acc.r_add(&m[0][k].r_mul(&adj[k][0])));
    if det.r_is_zero() {
        return None;
    }
    let v: Vec<R> = top.iter().map(deh).collect();
    let y: Vec<R> = (0..nb).map(|k| (0..nb).fold(zero.clone(), |acc, s| acc.r_add(&adj[k][s].r_mul(&v[s])))).collect();
    let adj_w = adj.iter().map(|r| r.iter().map(|x| x.wrap(n)).collect()).collect();
    Some((det.wrap(n), adj_w, y.iter().map(|x| x.wrap(n)).collect()))
}

fn dehom_u(p: &HPoly) -> UPoly {
    match p.nvars() {
        1 => UPoly::constant(p.terms().values().fold(Gq::zero(), |a, c| &a + c)),
        _ => {
            if p.is_zero() {
                UPoly::zero()
            } else {
                p.dehomogenize()
            }
        }
    }
}

fn rehom_u(u: &UPoly, n: usize, deg: i64) -> HPoly {
    if u.is_zero() {
        return HPoly::zero(n, deg.max(0) as u32);
    }
    assert!(deg >= 0, "negative degree for a nonzero polynomial");
    if n == 1 {
        return HPoly::monomial(vec![deg as u32], u.coeff(0));
    }
    HPoly::homogenize(u, deg as u32)
}

fn dehom_s(p: &HPoly, cap: u32) -> TruncatedSeries {
    let n = p.nvars();
    let mut s = TruncatedSeries::zero(n - 1, cap);
    for (e, c) in p.terms() {
        s.add_term(e[..n - 1].to_vec(), c.clone());
    }
    s
}

fn rehom_s(s: &TruncatedSeries, n: usize, deg: i64) -> HPoly {
    let mut p = HPoly::zero(n, deg.max(0) as u32);
    for (e, c) in s.terms() {
        let tot: u32 = e.iter().sum();
        assert!(tot as i64 <= deg, "degree bound exceeded while rehomogenizing");
        let mut full = e.clone();
        full.push(deg as u32 - tot);
        p.add_term(full, c.clone());
    }
    p
}

/// Converts a tower element into powers of the primitive element.
pub(crate) fn to_vgamma(p: &Primitive, x: &TElem) -> VGammaElem {
    let d = p.gamma.degree();
    let mut coeffs = vec![FracSeries::zero(); d];
    for (k, a) in &x.terms {
        let mu = &p.expr[k];
        for (j, m) in mu.iter().enumerate() {
            if !m.is_zero() {
                coeffs[j] = coeffs[j].add(&a.mul_frac(m));
            }
        }
    }
    VGammaElem::new(p.gamma.clone(), coeffs, x.cap)
}

/// A common integral homogeneous element for two pure ones, with both
/// written in its powers.
pub fn primitive_element(g1: &HomElem, g2: &HomElem, seed: u64) -> Result<(HomElem, VGammaElem, VGammaElem)> {
    let (Some((e1, h1)), Some((e2, h2))) = (g1.radicand(), g2.radicand()) else {
        return Err(PfError::NonPureUnsupported);
    };
    if g1.nvars != g2.nvars {
        return Err(PfError::VarCountMismatch(g1.nvars, g2.nvars));
    }
    let mut t = Tower::new(g1.nvars);
    let m1 = t.root_monomial(&(HFrac::from_hpoly(h1), Key::new()), e1);
    let m2 = t.root_monomial(&(HFrac::from_hpoly(h2), Key::new()), e2);
    let p = primitive_of_tower(&t, seed)?;
    let x1 = to_vgamma(&p, &TElem::mono(&m1, exact_cap()));
    let x2 = to_vgamma(&p, &TElem::mono(&m2, exact_cap()));
    Ok((p.gamma, x1, x2))
}
