//! Homogeneous rational functions with factored denominators, and graded
//! series of them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::field::Gq;
use crate::hpoly::HPoly;

/// `num / Π g_i^{m_i}` with every `g_i` homogeneous, lex-monic and distinct.
#[derive(Clone)]
pub struct HFrac {
    num: HPoly,
    den: Vec<(HPoly, u32)>,
}

impl HFrac {
    pub fn from_hpoly(p: HPoly) -> Self {
        HFrac { num: p, den: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Gq) -> Self {
        HFrac::from_hpoly(HPoly::constant(nvars, c))
    }

    pub fn one(nvars: usize) -> Self {
        HFrac::constant(nvars, Gq::one())
    }

    pub fn new(num: HPoly, den: Vec<(HPoly, u32)>) -> Self {
        let mut f = HFrac::from_hpoly(num);
        for (g, m) in den {
            f = f.mul(&HFrac::one(g.nvars()).div_poly(&g, m));
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &HPoly {
        &self.num
    }

    pub fn den(&self) -> &[(HPoly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg(num) − deg(den)`.
    pub fn degree(&self) -> i64 {
        self.num.degree() as i64 - self.den.iter().map(|(g, m)| (g.degree() * m) as i64).sum::<i64>()
    }

    pub fn den_product(&self) -> HPoly {
        let mut d = HPoly::one(self.nvars());
        for (g, m) in &self.den {
            d = d.mul(&g.pow(*m));
        }
        d
    }

    fn merged_den(&self, o: &HFrac, combine: impl Fn(u32, u32) -> u32) -> Vec<(HPoly, u32)> {
        let mut out = self.den.clone();
        for (g, m) in &o.den {
            match out.iter_mut().find(|(h, _)| h == g) {
                Some(entry) => entry.1 = combine(entry.1, *m),
                None => out.push((g.clone(), combine(0, *m))),
            }
        }
        out
    }

    /// Numerator over a larger denominator.
    fn num_over(&self, den: &[(HPoly, u32)]) -> HPoly {
        let mut n = self.num.clone();
        for (g, m) in den {
            let have = self.den.iter().find(|(h, _)| h == g).map(|(_, k)| *k).unwrap_or(0);
            if *m > have {
                n = n.mul(&g.pow(m - have));
            }
        }
        n
    }

    /// Cancels atoms that divide the numerator.
    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (g, m) in self.den.iter_mut() {
            while *m > 0 && self.num.may_be_divisible_by(g) {
                match self.num.div_exact(g) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, m)| *m > 0);
        self
    }

    pub fn add(&self, o: &HFrac) -> HFrac {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        debug_assert_eq!(self.degree(), o.degree(), "adding fractions of different degrees");
        let den = self.merged_den(o, |a, b| a.max(b));
        let num = self.num_over(&den).add(&o.num_over(&den));
        HFrac { num, den }.normalize()
    }

    pub fn neg(&self) -> HFrac {
        HFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &HFrac) -> HFrac {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Gq) -> HFrac {
        if c.is_zero() {
            return HFrac::constant(self.nvars(), Gq::zero());
        }
        HFrac { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, o: &HFrac) -> HFrac {
        if self.is_zero() || o.is_zero() {
            return HFrac::constant(self.nvars(), Gq::zero());
        }
        let den = self.merged_den(o, |a, b| a + b);
        HFrac { num: self.num.mul(&o.num), den }.normalize()
    }

    pub fn mul_poly(&self, p: &HPoly) -> HFrac {
        HFrac { num: self.num.mul(p), den: self.den.clone() }.normalize()
    }

    /// `self / g^m`.
    pub fn div_poly(&self, g: &HPoly, m: u32) -> HFrac {
        if m == 0 {
            return self.clone();
        }
        let mut f = self.clone();
        let (mono, rest) = split_monomial(g);
        let c = rest.lc();
        let rest = rest.monic();
        f.num = f.num.scale(&c.pow(m).inv());
        let mut atoms: Vec<(HPoly, u32)> = Vec::new();
        for (i, &k) in mono.iter().enumerate() {
            if k > 0 {
                atoms.push((HPoly::var(g.nvars(), i), k * m));
            }
        }
        if rest.degree() > 0 {
            atoms.push((rest, m));
        }
        for (a, k) in atoms {
            match f.den.iter_mut().find(|(h, _)| *h == a) {
                Some(entry) => entry.1 += k,
                None => f.den.push((a, k)),
            }
        }
        f.normalize()
    }

    pub fn inv(&self) -> Option<HFrac> {
        if self.is_zero() {
            return None;
        }
        let mut r = HFrac::from_hpoly(self.den_product());
        r = r.div_poly(&self.num, 1);
        Some(r)
    }

    pub fn pow(&self, k: u32) -> HFrac {
        let mut acc = HFrac::one(self.nvars());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value equality, by cross-multiplication.
    pub fn value_eq(&self, o: &HFrac) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        self.num.mul(&o.den_product()) == o.num.mul(&self.den_product())
    }

    /// The constant this fraction equals, if it is one.
    pub fn as_constant(&self) -> Option<Gq> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        if self.degree() != 0 {
            return None;
        }
        let d = self.den_product();
        let lam = &self.num.lc() / &d.lc();
        if self.num == d.scale(&lam) {
            Some(lam)
        } else {
            None
        }
    }

    /// An exact `k`-th root, if the fraction is a `k`-th power.
    pub fn nth_root(&self, k: u32) -> Option<HFrac> {
        if k == 1 {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (g, m) in &self.den {
            let pad = (k - m % k) % k;
            num = num.mul(&g.pow(pad));
            den.push((g.clone(), (m + pad) / k));
        }
        let root = num.nth_root(k)?;
        Some(HFrac { num: root, den }.normalize())
    }

    /// Brings the fraction to the form `num / x^μ` when every denominator
    /// atom is a variable.
    pub fn as_laurent(&self) -> Option<(HPoly, Vec<u32>)> {
        let mut mu = vec![0u32; self.nvars()];
        for (g, m) in &self.den {
            let (e, c) = g.as_monomial()?;
            if !c.is_one() || e.iter().sum::<u32>() != 1 {
                return None;
            }
            let i = e.iter().position(|&a| a == 1).unwrap();
            mu[i] += m;
        }
        Some((self.num.clone(), mu))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Gq) -> Gq) -> HFrac {
        HFrac { num: self.num.map_coeffs(f), den: self.den.clone() }
    }
}

/// `g = x^μ · rest` with `rest` free of monomial factors.
fn split_monomial(g: &HPoly) -> (Vec<u32>, HPoly) {
    let mu = g.monomial_content();
    if mu.iter().all(|&a| a == 0) {
        return (mu, g.clone());
    }
    let xm = HPoly::monomial(mu.clone(), Gq::one());
    (mu, g.div_exact(&xm).unwrap())
}

impl PartialEq for HFrac {
    fn eq(&self, o: &HFrac) -> bool {
        self.value_eq(o)
    }
}

impl fmt::Display for HFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (g, m)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if *m == 1 {
                write!(f, "({g})")?;
            } else {
                write!(f, "({g})^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for HFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Σ_k F_k` with `F_k` a homogeneous fraction of degree `k`; zero entries
/// are never stored.
#[derive(Clone, Default, PartialEq)]
pub struct FracSeries {
    pub comps: BTreeMap<i64, HFrac>,
}

impl FracSeries {
    pub fn zero() -> Self {
        FracSeries { comps: BTreeMap::new() }
    }

    /// Every component of `s`, read as exact.
    pub fn from_series(s: &crate::series::TruncatedSeries) -> Self {
        let mut out = FracSeries::zero();
        for c in s.components() {
            if !c.is_zero() {
                out.add_comp(HFrac::from_hpoly(c.clone()));
            }
        }
        out
    }

    pub fn single(f: HFrac) -> Self {
        let mut s = FracSeries::zero();
        s.add_comp(f);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn order(&self) -> Option<i64> {
        self.comps.keys().next().copied()
    }

    pub fn add_comp(&mut self, f: HFrac) {
        if f.is_zero() {
            return;
        }
        let k = f.degree();
        let v = match self.comps.remove(&k) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !v.is_zero() {
            self.comps.insert(k, v);
        }
    }

    pub fn add(&self, o: &FracSeries) -> FracSeries {
        let mut r = self.clone();
        for f in o.comps.values() {
            r.add_comp(f.clone());
        }
        r
    }

    pub fn neg(&self) -> FracSeries {
        FracSeries { comps: self.comps.iter().map(|(k, f)| (*k, f.neg())).collect() }
    }

    pub fn sub(&self, o: &FracSeries) -> FracSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Gq) -> FracSeries {
        if c.is_zero() {
            return FracSeries::zero();
        }
        FracSeries { comps: self.comps.iter().map(|(k, f)| (*k, f.scale(c))).collect() }
    }

    pub fn mul_frac(&self, g: &HFrac) -> FracSeries {
        let mut r = FracSeries::zero();
        for f in self.comps.values() {
            r.add_comp(f.mul(g));
        }
        r
    }

    /// Product keeping only degrees `≤ max_deg`.
    pub fn mul_to(&self, o: &FracSeries, max_deg: Option<i64>) -> FracSeries {
        let mut r = FracSeries::zero();
        for (i, a) in &self.comps {
            for (j, b) in &o.comps {
                if let Some(m) = max_deg {
                    if i + j > m {
                        break;
                    }
                }
                r.add_comp(a.mul(b));
            }
        }
        r
    }

    /// Drops degrees above `max_deg`.
    pub fn truncate(&self, max_deg: i64) -> FracSeries {
        FracSeries { comps: self.comps.range(..=max_deg).map(|(k, f)| (*k, f.clone())).collect() }
    }

    pub fn comp(&self, k: i64) -> Option<&HFrac> {
        self.comps.get(&k)
    }
}

impl fmt::Debug for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.comps.values().map(|c| format!("{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
