//! Homogeneous polynomials over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::field::Gq;
use crate::upoly::UPoly;

pub type Exp = Vec<u32>;

/// A homogeneous polynomial of fixed degree; the zero polynomial keeps a
/// nominal degree so that it can live in a graded slot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exp, Gq>,
}

impl HPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HPoly { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Gq) -> Self {
        let mut p = HPoly::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        HPoly::constant(nvars, Gq::one())
    }

    pub fn monomial(exp: Exp, c: Gq) -> Self {
        let nvars = exp.len();
        let degree = exp.iter().sum();
        let mut p = HPoly::zero(nvars, degree);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        HPoly::monomial(e, Gq::one())
    }

    /// Builds from terms, checking homogeneity; zero coefficients are dropped.
    pub fn from_terms(nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Exp, Gq)>) -> Result<Self, String> {
        let mut p = HPoly::zero(nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(format!("exponent {:?} has wrong length (expected {nvars})", e));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(format!("exponent {:?} not of degree {degree}", e));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exp, Gq> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exp, Gq> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Gq {
        self.terms.get(e).cloned().unwrap_or_else(Gq::zero)
    }

    /// Constant value when the degree is 0.
    pub fn as_constant(&self) -> Option<Gq> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        if self.degree == 0 {
            Some(self.coeff(&vec![0; self.nvars]))
        } else {
            None
        }
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        assert!(self.is_zero() || self.degree == degree);
        self.degree = degree;
        self
    }

    pub fn add_term(&mut self, e: Exp, c: Gq) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.iter().sum::<u32>(), self.degree);
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, o: &HPoly) -> u32 {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        if self.is_zero() {
            return o.degree;
        }
        if o.is_zero() {
            return self.degree;
        }
        assert_eq!(self.degree, o.degree, "adding homogeneous polynomials of different degrees");
        self.degree
    }

    pub fn add(&self, o: &HPoly) -> HPoly {
        let d = self.check_compatible(o);
        let mut r = self.clone();
        r.degree = d;
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &HPoly) -> HPoly {
        let d = self.check_compatible(o);
        let mut r = self.clone();
        r.degree = d;
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn add_assign(&mut self, o: &HPoly) {
        let d = self.check_compatible(o);
        self.degree = d;
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> HPoly {
        HPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Gq) -> HPoly {
        if s.is_zero() {
            return HPoly::zero(self.nvars, self.degree);
        }
        HPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &HPoly) -> HPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut r = HPoly::zero(self.nvars, self.degree + o.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> HPoly {
        let mut acc = HPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by a monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> HPoly {
        let d: u32 = e.iter().sum();
        HPoly {
            nvars: self.nvars,
            degree: self.degree + d,
            terms: self.terms.iter().map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Lex-greatest term.
    pub fn leading(&self) -> Option<(&Exp, &Gq)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &HPoly) -> Option<HPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(HPoly::zero(self.nvars, self.degree.saturating_sub(d.degree)));
        }
        if d.degree > self.degree {
            return None;
        }
        let (le, lc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let lci = lc.inv();
        let mut r = self.clone();
        let mut q = HPoly::zero(self.nvars, self.degree - d.degree);
        while let Some((e, c)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exp = e.iter().zip(&le).map(|(a, b)| a - b).collect();
            let qc = &c * &lci;
            for (de, dc) in &d.terms {
                let te: Exp = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                r.add_term(te, -(&qc * dc));
            }
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Necessary condition for `d | self`, checked on a plane section
    /// modulo a prime.
    pub fn may_be_divisible_by(&self, d: &HPoly) -> bool {
        static PRIME: std::sync::OnceLock<(u64, u64)> = std::sync::OnceLock::new();
        let &(p, s) = PRIME.get_or_init(|| crate::linalg::gaussian_primes().next().unwrap());
        let (Some(f), Some(g)) = (self.section_mod(p, s), d.section_mod(p, s)) else { return true };
        let Some(dg) = g.iter().rposition(|&c| c != 0) else { return true };
        let mut r = f;
        let inv = crate::linalg::inv_mod(g[dg], p);
        while let Some(dr) = r.iter().rposition(|&c| c != 0) {
            if dr < dg {
                return false;
            }
            let q = r[dr] * inv % p;
            for (j, &gc) in g.iter().enumerate().take(dg + 1) {
                let k = dr - dg + j;
                r[k] = (r[k] + p - q * gc % p) % p;
            }
        }
        true
    }

    /// `self(1, t, 3t, 5t, …)` modulo `p`, lowest coefficient first.
    fn section_mod(&self, p: u64, s: u64) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.degree as usize + 1];
        for (e, c) in &self.terms {
            let mut v = crate::linalg::gq_mod(c, p, s)?;
            let mut deg = 0usize;
            for (i, &k) in e.iter().enumerate().skip(1) {
                let r = (2 * i as u64 - 1) % p;
                for _ in 0..k {
                    v = v * r % p;
                }
                deg += k as usize;
            }
            out[deg] = (out[deg] + v) % p;
        }
        Some(out)
    }

    /// Exact `e`-th root in ℚ(i)[x] if one exists (the branch whose lex-leading
    /// coefficient is the principal root of the leading coefficient).
    pub fn nth_root(&self, e: u32) -> Option<HPoly> {
        self.nth_roots_leading(e).into_iter().next()
    }

    /// All `e`-th roots, one per root of the leading coefficient in ℚ(i).
    pub fn nth_roots_leading(&self, e: u32) -> Vec<HPoly> {
        if e == 1 {
            return vec![self.clone()];
        }
        if self.is_zero() {
            return if self.degree % e == 0 { vec![HPoly::zero(self.nvars, self.degree / e)] } else { vec![] };
        }
        if self.degree % e != 0 {
            return vec![];
        }
        let (le, lc) = self.leading().map(|(a, b)| (a.clone(), b.clone())).unwrap();
        if le.iter().any(|a| a % e != 0) {
            return vec![];
        }
        let mut lead_roots = lc.all_nth_roots(e);
        if let Some(p) = lc.nth_root(e) {
            lead_roots.retain(|r| r != &p);
            lead_roots.insert(0, p);
        }
        let ge: Exp = le.iter().map(|a| a / e).collect();
        let mut out = Vec::new();
        'outer: for c0 in lead_roots {
            let lead = HPoly::monomial(ge.clone(), c0.clone());
            let denom = lead.pow(e - 1).scale(&Gq::int(e as i64));
            let (de, dc) = denom.leading().map(|(a, b)| (a.clone(), b.clone())).unwrap();
            let mut g = lead;
            let max_terms = binomial_count(self.nvars, self.degree / e) + 1;
            for _ in 0..max_terms {
                let r = self.sub(&g.pow(e));
                let Some((re, rc)) = r.leading().map(|(a, b)| (a.clone(), b.clone())) else {
                    out.push(g);
                    continue 'outer;
                };
                if re.iter().zip(&de).any(|(a, b)| a < b) {
                    continue 'outer;
                }
                let te: Exp = re.iter().zip(&de).map(|(a, b)| a - b).collect();
                if te >= ge {
                    continue 'outer;
                }
                g.add_term(te, &rc / &dc);
            }
            if self.sub(&g.pow(e)).is_zero() {
                out.push(g);
            }
        }
        out
    }

    pub fn eval(&self, pt: &[Gq]) -> Gq {
        let mut acc = Gq::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in pt.iter().zip(e) {
                if *k > 0 {
                    t = &t * &x.pow(*k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> HPoly {
        let mut r = HPoly::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                r.add_term(ne, c * &Gq::int(e[i] as i64));
            }
        }
        r
    }

    /// Restriction `p(1, w)` for two variables, as a polynomial in `w`.
    pub fn dehomogenize(&self) -> UPoly {
        assert_eq!(self.nvars, 2, "dehomogenize expects two variables");
        let mut coeffs = vec![Gq::zero(); self.degree as usize + 1];
        for (e, c) in &self.terms {
            coeffs[e[1] as usize] += c;
        }
        UPoly::new(coeffs)
    }

    /// Inverse of [`HPoly::dehomogenize`] at a given degree.
    pub fn homogenize(u: &UPoly, degree: u32) -> HPoly {
        let mut p = HPoly::zero(2, degree);
        for (k, c) in u.coeffs().iter().enumerate() {
            assert!(k as u32 <= degree, "degree too small to homogenize");
            p.add_term(vec![degree - k as u32, k as u32], c.clone());
        }
        p
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Exp {
        let mut m: Option<Exp> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Is this `c·x^e` for a single monomial?
    pub fn as_monomial(&self) -> Option<(Exp, Gq)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.clone(), c.clone()))
        } else {
            None
        }
    }

    /// Leading coefficient (lex), or zero.
    pub fn lc(&self) -> Gq {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Gq::zero)
    }

    /// Scales so that the lex-leading coefficient is 1.
    pub fn monic(&self) -> HPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Gq) -> Gq) -> HPoly {
        let mut r = HPoly::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }
}

fn binomial_count(nvars: usize, degree: u32) -> usize {
    // number of monomials of the given degree
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let n = degree as u128 + nvars as u128 - 1;
    let k = (nvars as u128).saturating_sub(1);
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    (num / den).min(1 << 20) as usize
}

pub fn monomial_count(nvars: usize, degree: u32) -> usize {
    binomial_count(nvars, degree)
}

/// All exponent vectors of a given degree, in lexicographic order.
pub fn exponents_of_degree(nvars: usize, degree: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exp>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}
