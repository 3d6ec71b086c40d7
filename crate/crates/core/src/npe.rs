//! Newton–Puiseux–Eisenstein factorization and Abhyankar–Jung roots.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::hfrac::HFrac;
use crate::homogeneous::{primitive_of_tower, to_vgamma, HomElem, VGammaElem};
use crate::hpoly::HPoly;
use crate::rank::Morphism;
use crate::residue::{self, FPoly};
use crate::series::{RamifiedSeries, TruncatedSeries};
use crate::tower::{Key, TElem, Tower, Val};
use crate::upoly::UPoly;
use crate::weierstrass::{is_monomial_unit, MonicPoly};

pub const DEFAULT_SEED: u64 = 0x5eed;

const CAP_RETRIES: usize = 6;

/// Coefficients `c₀..c_d`, lowest first.
type TPoly = Vec<TElem>;

/// Roots of `P` over a common homogeneous element, grouped into factors
/// defined over the base.
#[derive(Clone, Debug)]
pub struct NpeFactorization {
    pub gamma: HomElem,
    pub roots: Vec<VGammaElem>,
    pub orbits: Vec<Vec<usize>>,
    pub h: HPoly,
    pub cap: u32,
}

impl NpeFactorization {
    /// `Π (y − ξ_i)` over the given root indices, lowest coefficient first.
    pub fn factor_of(&self, idx: &[usize]) -> Vec<VGammaElem> {
        let capv = Val::from_integer(self.cap as i64);
        let n = self.gamma.nvars();
        let one = VGammaElem::from_base(self.gamma.clone(), crate::hfrac::FracSeries::single(HFrac::one(n)), capv);
        let mut acc = vec![one.clone()];
        for &i in idx {
            let r = &self.roots[i];
            let mut next = vec![VGammaElem::new(self.gamma.clone(), vec![], capv); acc.len() + 1];
            for (j, a) in acc.iter().enumerate() {
                next[j + 1] = next[j + 1].add(a);
                next[j] = next[j].sub(&a.mul(r));
            }
            acc = next;
        }
        acc
    }

    /// One factor per orbit.
    pub fn factors(&self) -> Vec<Vec<VGammaElem>> {
        self.orbits.iter().map(|o| self.factor_of(o)).collect()
    }
}

struct Run {
    t: Tower,
    limit: Val,
}

impl Run {
    fn n(&self) -> usize {
        self.t.nvars
    }

    fn konst(&self, c: Gq) -> TElem {
        TElem::constant(self.n(), c, self.limit)
    }

    fn zero(&self) -> TElem {
        TElem::zero(self.limit)
    }

    fn pmul(&self, a: &[TElem], b: &[TElem]) -> TPoly {
        let mut r = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = r[i + j].add(&x.mul(y, &self.t, self.limit), &self.t);
            }
        }
        r
    }

    /// `q(y + s)`.
    fn shift(&self, q: &[TElem], s: &TElem) -> TPoly {
        let d = q.len() - 1;
        let mut acc = vec![q[d].clone()];
        for i in (0..d).rev() {
            let mut next = vec![self.zero(); acc.len() + 1];
            for (j, a) in acc.iter().enumerate() {
                next[j + 1] = next[j + 1].add(a, &self.t);
                next[j] = next[j].add(&a.mul(s, &self.t, self.limit), &self.t);
            }
            next[0] = next[0].add(&q[i], &self.t);
            acc = next;
        }
        acc
    }

    /// Every valuation `≤ cap` a term can have in the current tower.
    fn levels(&self, cap: Val) -> Vec<Val> {
        let mut out = std::collections::BTreeSet::new();
        for k in self.t.basis() {
            let w = self.t.wdeg(&k);
            let mut j = (-w).ceil();
            while j + w <= cap {
                out.insert(j + w);
                j += Val::one();
            }
        }
        out.into_iter().collect()
    }

    /// Hensel lifting of `q ≡ r1·r2`, one valuation level at a time.
    fn hensel(&self, q: &[TElem], r1: &FPoly, r2: &FPoly) -> Result<(TPoly, TPoly)> {
        let (g, s, _) = residue::fxgcd(r1, r2);
        if g.len() != 1 {
            return Err(PfError::NotCoprime);
        }
        let n = self.n();
        let d = q.len() - 1;
        let (d1, d2) = (r1.len() - 1, r2.len() - 1);
        let cap = q.iter().map(|c| c.cap).min().unwrap().min(self.limit);
        if q.iter().any(|c| c.valuation(&self.t).is_some_and(|v| v < Val::zero())) {
            return Err(PfError::InvalidInput("coefficient of negative valuation".into()));
        }
        let r12 = residue::fmul(r1, r2);
        for i in 0..d {
            let mut c = HFrac::constant(n, Gq::zero());
            for (k, f) in q[i].part_at(&self.t, Val::zero()) {
                if !k.is_empty() {
                    return Err(PfError::InvalidInput("residue split does not match the polynomial".into()));
                }
                c = c.add(&f);
            }
            let want = r12.get(i).cloned().unwrap_or_else(|| HFrac::constant(n, Gq::zero()));
            if !c.value_eq(&want) {
                return Err(PfError::InvalidInput("residue split does not match the polynomial".into()));
            }
        }
        // level -> y-power -> key -> fraction
        type Level = Vec<BTreeMap<Key, HFrac>>;
        let mut l1: BTreeMap<Val, Level> = BTreeMap::new();
        let mut l2: BTreeMap<Val, Level> = BTreeMap::new();
        for v in self.levels(cap) {
            if v <= Val::zero() {
                continue;
            }
            let mut e: Level = vec![BTreeMap::new(); d];
            for (i, ei) in e.iter_mut().enumerate() {
                for (k, f) in q[i].part_at(&self.t, v) {
                    acc_into(ei, k, f);
                }
            }
            for (a, pa) in &l1 {
                let b = v - a;
                let Some(pb) = l2.get(&b) else { continue };
                for (i, xa) in pa.iter().enumerate() {
                    for (j, xb) in pb.iter().enumerate() {
                        if i + j >= d {
                            continue;
                        }
                        for (ka, fa) in xa {
                            for (kb, fb) in xb {
                                let (f, k) = self.t.mono_mul_frac(&(fa.clone(), ka.clone()), &(fb.clone(), kb.clone()));
                                acc_into(&mut e[i + j], k, f.neg());
                            }
                        }
                    }
                }
            }
            let keys: std::collections::BTreeSet<Key> = e.iter().flat_map(|m| m.keys().cloned()).collect();
            if keys.is_empty() {
                continue;
            }
            let mut a_lv: Level = vec![BTreeMap::new(); d1];
            let mut b_lv: Level = vec![BTreeMap::new(); d2];
            for key in keys {
                let zero = HFrac::constant(n, Gq::zero());
                let ek: FPoly =
                    residue::trim((0..d).map(|i| e[i].get(&key).cloned().unwrap_or(zero.clone())).collect());
                let (_, b) = residue::fdivrem(&residue::fmul(&s, &ek), r2);
                let (a, rem) = residue::fdivrem(&residue::fsub(&ek, &residue::fmul(r1, &b)), r2);
                debug_assert!(rem.is_empty());
                for (i, f) in a.into_iter().enumerate() {
                    acc_into(&mut a_lv[i], key.clone(), f);
                }
                for (i, f) in b.into_iter().enumerate() {
                    acc_into(&mut b_lv[i], key.clone(), f);
                }
            }
            l1.insert(v, a_lv);
            l2.insert(v, b_lv);
        }
        let assemble = |r: &FPoly, lv: &BTreeMap<Val, Level>| -> TPoly {
            let mut out: TPoly = r.iter().map(|c| TElem::from_frac(c.clone(), cap)).collect();
            for part in lv.values() {
                for (i, m) in part.iter().enumerate() {
                    for (k, f) in m {
                        out[i].terms.entry(k.clone()).or_default().add_comp(f.clone());
                    }
                }
            }
            for c in out.iter_mut() {
                c.terms.retain(|_, s| !s.is_zero());
            }
            out
        };
        Ok((assemble(r1, &l1), assemble(r2, &l2)))
    }

    fn roots(&mut self, q: &[TElem]) -> Result<Vec<TElem>> {
        let d = q.len() - 1;
        match d {
            0 => return Ok(vec![]),
            1 => return Ok(vec![q[0].neg()]),
            _ => {}
        }
        let s = q[d - 1].scale(&Gq::frac(-1, d as i64));
        let mut p = if s.is_zero() { q.to_vec() } else { self.shift(q, &s) };
        p[d - 1] = TElem::zero(p[d - 1].cap);

        let mut best: Option<(Val, usize)> = None;
        for k in 2..=d {
            if let Some(v) = p[d - k].valuation(&self.t) {
                let r = v / Val::from_integer(k as i64);
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, k));
                }
            }
        }
        let Some((slope, k0)) = best else {
            let cap = (2..=d).map(|k| p[d - k].cap / Val::from_integer(k as i64)).min().unwrap();
            let r = s.truncated(&self.t, cap);
            return Ok(vec![r; d]);
        };
        for k in 2..=d {
            if p[d - k].is_zero() && p[d - k].cap / Val::from_integer(k as i64) < slope {
                return Err(PfError::PrecisionExhausted(format!("coefficient {k} unknown below slope {slope}")));
            }
        }
        let init = p[d - k0].initial(&self.t);
        if init.len() != 1 {
            return Err(PfError::NotSupported(format!("initial form with {} distinct radical monomials", init.len())));
        }
        let (r, f) = init.into_iter().next().unwrap();
        let mut attempts = Vec::new();
        let on_slope: Vec<usize> =
            (2..=d).filter(|&k| p[d - k].valuation(&self.t) == Some(slope * Val::from_integer(k as i64))).collect();
        if on_slope.len() > 1 && slope.is_integer() {
            let mut e = vec![0u32; self.n()];
            e[0] = slope.to_integer() as u32;
            attempts.push(Scale::Fixed((HFrac::from_hpoly(HPoly::monomial(e, Gq::one())), Key::new())));
        }
        attempts.push(Scale::Root((f.neg(), r.clone())));
        let monic = f.scale(&f.num().lc().inv());
        if !monic.value_eq(&f.neg()) {
            attempts.push(Scale::Root((monic, r)));
        }
        let mark = self.t.len();
        let mut last = None;
        for sc in attempts {
            self.t.truncate_gens(mark);
            let delta = match sc {
                Scale::Fixed(m) => m,
                Scale::Root(rho) => self.t.root_monomial(&rho, k0 as u32),
            };
            match self.level(&p, &delta) {
                Ok(xs) => return Ok(xs.iter().map(|x| s.add(x, &self.t)).collect()),
                Err(e @ PfError::BaseFieldFactorizationUnsupported(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.unwrap())
    }

    /// Roots of `p` (with `a₁ = 0`) after the substitution `y = δ·y`.
    fn level(&mut self, p: &[TElem], delta: &(HFrac, Key)) -> Result<Vec<TElem>> {
        let d = p.len() - 1;
        let n = self.n();
        let (ci, ki) = self.t.mono_inv(&delta.1);
        let dinv = (delta.0.inv().unwrap().mul(&ci), ki);
        let mut qn = vec![self.zero(); d + 1];
        qn[d] = self.konst(Gq::one());
        let mut pw = (HFrac::one(n), Key::new());
        for k in 1..=d {
            pw = self.t.mono_mul_frac(&pw, &dinv);
            qn[d - k] = p[d - k].mul_mono(&pw, &self.t, self.limit);
        }

        let mut res = vec![HFrac::constant(n, Gq::zero()); d + 1];
        res[d] = HFrac::one(n);
        for k in 1..=d {
            let c = &qn[d - k];
            if c.cap < Val::zero() {
                return Err(PfError::PrecisionExhausted("residue coefficient beyond cap".into()));
            }
            for (key, f) in c.part_at(&self.t, Val::zero()) {
                if !key.is_empty() {
                    return Err(PfError::BaseFieldFactorizationUnsupported(format!(
                        "residue coefficient {f} involves an adjoined radical"
                    )));
                }
                res[d - k] = res[d - k].add(&f);
            }
        }
        let rr = residue::roots(&res, n)?;
        if rr.len() < 2 {
            return Err(PfError::NotSupported("residue polynomial is a single power".into()));
        }
        let groups: Vec<FPoly> = rr.iter().map(|(c, m)| residue::linear_power(c, *m)).collect();

        let mut factors = Vec::new();
        let mut cur = qn;
        for i in 0..groups.len() - 1 {
            let rest = groups[i + 1..].iter().fold(vec![HFrac::one(n)], |a, g| residue::fmul(&a, g));
            let (f1, f2) = self.hensel(&cur, &groups[i], &rest)?;
            factors.push(f1);
            cur = f2;
        }
        factors.push(cur);

        let mut out = Vec::new();
        for f in factors {
            for eta in self.roots(&f)? {
                out.push(eta.mul_mono(&delta, &self.t, self.limit));
            }
        }
        Ok(out)
    }

    fn linear_product(&self, roots: &[TElem], idx: &[usize]) -> TPoly {
        let mut acc = vec![self.konst(Gq::one())];
        for &i in idx {
            acc = self.pmul(&acc, &[roots[i].neg(), self.konst(Gq::one())]);
        }
        acc
    }
}

fn acc_into(m: &mut BTreeMap<Key, HFrac>, k: Key, f: HFrac) {
    if f.is_zero() {
        return;
    }
    let v = match m.remove(&k) {
        Some(o) => o.add(&f),
        None => f,
    };
    if !v.is_zero() {
        m.insert(k, v);
    }
}

enum Scale {
    Fixed((HFrac, Key)),
    Root((HFrac, Key)),
}

fn to_tpoly(p: &MonicPoly, cap: Val) -> TPoly {
    let d = p.degree();
    let mut q: TPoly = (0..d).map(|i| TElem::from_series(&p.coeff(d - i), cap)).collect();
    q.push(TElem::constant(p.nvars(), Gq::one(), cap));
    q
}

/// Roots of `P` as tower elements, correct through valuation `cap`.
fn solve(p: &MonicPoly, cap: u32) -> Result<(Tower, Vec<TElem>)> {
    let (t, mut rs) = solve_all(&[p], cap)?;
    Ok((t, rs.pop().unwrap()))
}

/// Roots of several polynomials inside one tower.
fn solve_all(ps: &[&MonicPoly], cap: u32) -> Result<(Tower, Vec<Vec<TElem>>)> {
    let target = Val::from_integer(cap as i64);
    let mut w = cap as i64 + 4;
    'retry: for _ in 0..CAP_RETRIES {
        let mut run = Run { t: Tower::new(ps[0].nvars()), limit: Val::from_integer(w) };
        let mut all = Vec::with_capacity(ps.len());
        for p in ps {
            let q = to_tpoly(p, run.limit);
            match run.roots(&q) {
                Ok(rs) if rs.iter().all(|r| r.cap >= target) => all.push(rs),
                Ok(_) | Err(PfError::PrecisionExhausted(_)) => {
                    w += cap as i64 / 2 + 4;
                    continue 'retry;
                }
                Err(e) => return Err(e),
            }
        }
        let all = all.into_iter().map(|rs| rs.into_iter().map(|r| r.truncated(&run.t, target)).collect()).collect();
        return Ok((run.t, all));
    }
    Err(PfError::PrecisionExhausted(format!("working cap {w} was not enough")))
}

fn orbits(t: &Tower, roots: &[TElem], cap: Val) -> Vec<Vec<usize>> {
    let run = Run { t: t.clone(), limit: cap };
    let d = roots.len();
    let mut assigned = vec![false; d];
    let mut out = Vec::new();
    for i in 0..d {
        if assigned[i] {
            continue;
        }
        let free: Vec<usize> = (i + 1..d).filter(|&j| !assigned[j]).collect();
        let mut masks: Vec<u32> = (0..1u32 << free.len()).collect();
        masks.sort_by_key(|m| m.count_ones());
        let mut chosen = None;
        for m in masks {
            let mut set = vec![i];
            set.extend(free.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &j)| j));
            if run.linear_product(roots, &set).iter().all(|c| c.is_base()) {
                chosen = Some(set);
                break;
            }
        }
        let set = chosen.unwrap_or_else(|| std::iter::once(i).chain(free).collect());
        for &j in &set {
            assigned[j] = true;
        }
        out.push(set);
    }
    out
}

pub fn npe_factor(p: &MonicPoly, cap: u32) -> Result<NpeFactorization> {
    npe_factor_seeded(p, cap, DEFAULT_SEED)
}

/// Factorization of `P` into linear factors over a homogeneous element;
/// `seed` drives the primitive-element search.
pub fn npe_factor_seeded(p: &MonicPoly, cap: u32, seed: u64) -> Result<NpeFactorization> {
    Ok(npe_factor_joint(&[p], cap, seed)?.pop().unwrap())
}

/// Factorizations of several polynomials over one common homogeneous
/// element, so that their roots can be compared.
pub fn npe_factor_joint(ps: &[&MonicPoly], cap: u32, seed: u64) -> Result<Vec<NpeFactorization>> {
    let Some(first) = ps.first() else {
        return Err(PfError::InvalidInput("no polynomial given".into()));
    };
    let n = first.nvars();
    let cap = ps.iter().map(|p| p.cap()).fold(cap, u32::min);
    for p in ps {
        if p.nvars() != n {
            return Err(PfError::VarCountMismatch(p.nvars(), n));
        }
        if p.truncate(cap).discriminant().is_zero() {
            return Err(PfError::NotReduced);
        }
    }
    let (tower, all) = solve_all(ps, cap)?;
    let prim = primitive_of_tower(&tower, seed)?;
    let capv = Val::from_integer(cap as i64);
    let mut out = Vec::with_capacity(ps.len());
    for troots in &all {
        let orbits = orbits(&tower, troots, capv);
        let mut atoms: Vec<HPoly> = Vec::new();
        for r in troots {
            for s in r.terms.values() {
                for f in s.comps.values() {
                    for (a, _) in f.den() {
                        if !atoms.contains(a) {
                            atoms.push(a.clone());
                        }
                    }
                }
            }
        }
        let h = atoms.iter().fold(HPoly::one(n), |acc, a| acc.mul(a));
        let roots = troots.iter().map(|r| to_vgamma(&prim, r)).collect();
        out.push(NpeFactorization { gamma: prim.gamma.clone(), roots, orbits, h, cap });
    }
    Ok(out)
}

fn telem_to_series(x: &TElem, nvars: usize, cap: u32) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(nvars, cap);
    for (k, fs) in &x.terms {
        if !k.is_empty() {
            return Err(PfError::NotSupported("coefficient outside the base ring".into()));
        }
        for f in fs.comps.values() {
            if !f.den().is_empty() {
                return Err(PfError::NotSupported("coefficient with a denominator".into()));
            }
            for (e, c) in f.num().terms() {
                s.add_term(e.clone(), c.clone());
            }
        }
    }
    Ok(s)
}

/// Lifts a coprime split `R₁·R₂` of the residue of `Q` to `Q = Q₁·Q₂`.
pub fn hensel_lift(q: &MonicPoly, r1: &UPoly, r2: &UPoly) -> Result<(MonicPoly, MonicPoly)> {
    let (Some(d1), Some(d2)) = (r1.degree(), r2.degree()) else {
        return Err(PfError::InvalidInput("zero residue factor".into()));
    };
    if !r1.lc().is_one() || !r2.lc().is_one() || d1 + d2 != q.degree() || d1 == 0 || d2 == 0 {
        return Err(PfError::InvalidInput("residue factors must be monic of positive degree summing to deg Q".into()));
    }
    let d = q.degree();
    let prod = r1.mul(r2);
    for k in 1..=d {
        if q.coeff(k).constant_term() != prod.coeff(d - k) {
            return Err(PfError::InvalidInput("R1*R2 is not the residue of Q".into()));
        }
    }
    let cap = Val::from_integer(q.cap() as i64);
    let run = Run { t: Tower::new(q.nvars()), limit: cap };
    let n = q.nvars();
    let (f1, f2) = run.hensel(&to_tpoly(q, cap), &residue::from_upoly(r1, n), &residue::from_upoly(r2, n))?;
    let back = |f: &TPoly| -> Result<MonicPoly> {
        let dd = f.len() - 1;
        let c = (1..=dd).map(|k| telem_to_series(&f[dd - k], q.nvars(), q.cap())).collect::<Result<Vec<_>>>()?;
        MonicPoly::new(c)
    };
    Ok((back(&f1)?, back(&f2)?))
}

/// Roots of a quasi-ordinary polynomial as series in `x^{1/e}` with a
/// common `e`.
pub fn aj_roots(p: &MonicPoly, cap: u32) -> Result<Vec<RamifiedSeries>> {
    let cap = cap.min(p.cap());
    let disc = p.truncate(cap).discriminant();
    match is_monomial_unit(&disc) {
        Ok(Some(_)) => {}
        Ok(None) => return Err(PfError::NotQuasiOrdinary(disc.to_string())),
        Err(PfError::ZeroUpToCap) => return Err(PfError::NotReduced),
        Err(e) => return Err(e),
    }
    let n = p.nvars();
    let (t, roots) = solve(p, cap)?;
    let mut gm: Vec<(Gq, Vec<Val>)> = Vec::new();
    for g in &t.gens {
        let Some((e, c)) = g.h.as_monomial() else {
            return Err(PfError::NotSupported(format!("radicand {} is not a monomial", g.h)));
        };
        let mut c = c;
        let mut mu: Vec<Val> = e.iter().map(|&a| Val::from_integer(a as i64)).collect();
        for (i, &dep) in g.deps.iter().enumerate() {
            c = &c * &gm[i].0.pow(dep);
            for (m, a) in mu.iter_mut().zip(&gm[i].1) {
                *m += *a * Val::from_integer(dep as i64);
            }
        }
        let Some(r) = c.nth_root(g.e) else {
            return Err(PfError::BaseFieldRootMissing(c.to_string(), g.e));
        };
        let ev = Val::from_integer(g.e as i64);
        gm.push((r, mu.into_iter().map(|m| m / ev).collect()));
    }
    let ram = gm.iter().flat_map(|(_, mu)| mu.iter().map(|m| *m.denom())).fold(1i64, num_integer::lcm);
    let ramv = Val::from_integer(ram);
    let xcap = cap * ram as u32;
    let mut out = Vec::new();
    for r in &roots {
        let mut base = TruncatedSeries::zero(n, xcap);
        for (key, fs) in &r.terms {
            let mut c0 = Gq::one();
            let mut mu = vec![Val::zero(); n];
            for (j, &kj) in key.iter().enumerate() {
                c0 = &c0 * &gm[j].0.pow(kj);
                for (m, a) in mu.iter_mut().zip(&gm[j].1) {
                    *m += *a * Val::from_integer(kj as i64);
                }
            }
            for f in fs.comps.values() {
                let Some((num, den)) = f.as_laurent() else {
                    return Err(PfError::NotSupported(format!("denominator of {f} is not a monomial")));
                };
                for (e, c) in num.terms() {
                    let mut xe = Vec::with_capacity(n);
                    for i in 0..n {
                        let v = (Val::from_integer(e[i] as i64 - den[i] as i64) + mu[i]) * ramv;
                        if !v.is_integer() || v < Val::zero() {
                            return Err(PfError::NotSupported("root exponent outside the ramified ring".into()));
                        }
                        xe.push(v.to_integer() as u32);
                    }
                    if xe.iter().sum::<u32>() <= xcap {
                        base.add_term(xe, c * &c0);
                    }
                }
            }
        }
        out.push(RamifiedSeries::new(base, ram as u32));
    }
    Ok(out)
}

/// Which root of a quasi-ordinary `P` the morphism picks, with the order of
/// `φ(y) − ξ_i(φ(x))` for every candidate (`None` when zero up to cap).
#[derive(Clone, Debug, PartialEq)]
pub struct RootMatch {
    pub index: usize,
    pub residual_orders: Vec<Option<u32>>,
}

/// `φ` sends `(x₁, …, x_n, y)`; each `φ(x_k)` must be a monomial times a unit
/// whose exponents the ramification index divides.
pub fn match_root(p: &MonicPoly, phi: &Morphism, cap: u32) -> Result<RootMatch> {
    let n = p.nvars();
    if phi.source_vars() != n + 1 {
        return Err(PfError::VarCountMismatch(phi.source_vars(), n + 1));
    }
    let roots = aj_roots(p, cap)?;
    let mut orders = Vec::with_capacity(roots.len());
    for r in &roots {
        let e = r.ram;
        let mut imgs = Vec::with_capacity(n);
        for k in 0..n {
            let Some((alpha, unit)) = is_monomial_unit(phi.component(k))? else {
                return Err(PfError::NotSupported(format!("phi(x{}) is not a monomial times a unit", k + 1)));
            };
            if alpha.iter().any(|a| a % e != 0) {
                return Err(PfError::NotSupported(format!("phi(x{}) has no {e}-th root", k + 1)));
            }
            let mono: Vec<u32> = alpha.iter().map(|a| a / e).collect();
            let w = unit.root_unit(e)?;
            let mut img = TruncatedSeries::zero(w.nvars(), w.cap() + mono.iter().sum::<u32>());
            for (a, c) in w.terms() {
                img.add_term(a.iter().zip(&mono).map(|(x, y)| x + y).collect(), c.clone());
            }
            imgs.push(img);
        }
        let val = r.base.subst(&imgs)?;
        let y = phi.component(n);
        let c = val.cap().min(y.cap()).min(cap);
        let res = y.truncate(c).sub(&val.truncate(c));
        orders.push(res.order());
    }
    let hits: Vec<usize> = orders.iter().enumerate().filter(|(_, o)| o.is_none()).map(|(i, _)| i).collect();
    match hits.as_slice() {
        [] => Err(PfError::NoMatch),
        [i] => Ok(RootMatch { index: *i, residual_orders: orders }),
        _ => Err(PfError::PrecisionExhausted("several roots agree with the morphism at this cap".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, cap: u32) -> TruncatedSeries {
        TruncatedSeries::var(2, cap, i)
    }

    fn c(v: i64, cap: u32) -> TruncatedSeries {
        TruncatedSeries::constant(2, cap, Gq::int(v))
    }

    #[test]
    fn split_linear_roots() {
        let t = 8;
        let p = MonicPoly::from_roots(&[x(0, t), x(1, t)]).unwrap();
        let f = npe_factor(&p, t).unwrap();
        assert_eq!(f.gamma.degree(), 1);
        assert_eq!(f.orbits.len(), 2);
        let mut got: Vec<String> = f.roots.iter().map(|r| format!("{:?}", r.coeffs()[0])).collect();
        got.sort();
        assert_eq!(got.len(), 2);
        for o in f.factors() {
            assert_eq!(o.len(), 2);
        }
    }

    #[test]
    fn square_root_of_product() {
        let t = 8;
        let p = MonicPoly::new(vec![c(0, t), x(0, t).mul(&x(1, t)).neg()]).unwrap();
        let f = npe_factor(&p, t).unwrap();
        assert_eq!(f.gamma.degree(), 2);
        assert_eq!(f.gamma.omega(), Val::one());
        assert_eq!(f.orbits, vec![vec![0, 1]]);
        for r in &f.roots {
            let sq = r.mul(r);
            assert!(sq.is_base());
        }
    }

    #[test]
    fn hensel_square_root() {
        let t = 8;
        let q = MonicPoly::new(vec![c(0, t), c(-1, t).sub(&x(0, t))]).unwrap();
        let r1 = UPoly::linear(&Gq::one());
        let r2 = UPoly::linear(&Gq::int(-1));
        let (q1, q2) = hensel_lift(&q, &r1, &r2).unwrap();
        assert_eq!(q1.mul(&q2), q);
        let s = c(1, t).add(&x(0, t)).root_unit(2).unwrap();
        assert_eq!(q1.coeff(1), s.neg());
        assert!(matches!(hensel_lift(&q, &r1, &r1), Err(PfError::InvalidInput(_))));
    }

    #[test]
    fn quasi_ordinary_roots() {
        let t = 6;
        let p = MonicPoly::new(vec![c(0, t), x(0, t).mul(&x(1, t)).neg()]).unwrap();
        let rs = aj_roots(&p, t).unwrap();
        assert_eq!(rs.len(), 2);
        for r in &rs {
            assert_eq!(r.ram, 2);
            let sq = r.mul(r).try_unramify().unwrap();
            assert_eq!(sq, x(0, t).mul(&x(1, t)).truncate(sq.cap()));
        }
        let z4 = MonicPoly::new(vec![c(0, t), c(0, t), c(0, t), x(0, t).pow(2).add(&x(1, t).pow(2)).neg()]).unwrap();
        assert!(matches!(aj_roots(&z4, t), Err(PfError::NotQuasiOrdinary(_))));
    }

    #[test]
    fn morphism_picks_a_root() {
        let t = 8;
        let p = MonicPoly::new(vec![c(0, t), x(0, t).mul(&x(1, t)).neg()]).unwrap();
        let u1 = x(0, t);
        let u2 = x(1, t);
        for sign in [1i64, -1] {
            let y = u1.mul(&u2).scale(&Gq::int(sign));
            let phi = Morphism::new(vec![u1.pow(2), u2.pow(2), y]).unwrap();
            let m = match_root(&p, &phi, t).unwrap();
            let r = &aj_roots(&p, t).unwrap()[m.index];
            assert_eq!(r.base.coeff(&[1, 1]), Gq::int(sign));
            assert_eq!(m.residual_orders.iter().filter(|o| o.is_none()).count(), 1);
        }
        let t = 12;
        let p = MonicPoly::new(vec![c(0, t), x(0, t).mul(&x(1, t)).neg()]).unwrap();
        let (u1, u2) = (x(0, t), x(1, t));
        let y = u1.mul(&u2).add(&u1.pow(8));
        let phi = Morphism::new(vec![u1.pow(2), u2.pow(2), y]).unwrap();
        assert_eq!(match_root(&p, &phi, t), Err(PfError::NoMatch));
    }
}
