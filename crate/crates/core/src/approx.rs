//! Perturbation of roots and factors, and the `ℓ¹`-type norms.

use serde_json::{json, Value};

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::homogeneous::VGammaElem;
use crate::hpoly::{Exp, HPoly};
use crate::npe::npe_factor_joint;
use crate::series::{RamifiedSeries, TruncatedSeries};
use crate::tower::Val;
use crate::weierstrass::MonicPoly;

/// A root representation whose differences have a valuation.
pub trait Root {
    /// Valuation of `self − o`; `None` when they agree through the common cap.
    fn gap(&self, o: &Self) -> Option<Val>;
}

impl Root for VGammaElem {
    fn gap(&self, o: &Self) -> Option<Val> {
        let d = self.sub(o);
        d.valuation().filter(|v| *v < d.cap())
    }
}

impl Root for RamifiedSeries {
    fn gap(&self, o: &Self) -> Option<Val> {
        let d = self.sub(o);
        d.base.order().map(|k| Val::new(k as i64, d.ram as i64))
    }
}

impl Root for TruncatedSeries {
    fn gap(&self, o: &Self) -> Option<Val> {
        self.sub(o).order().map(|k| Val::from_integer(k as i64))
    }
}

fn show(v: Option<Val>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "inf".into())
}

/// `ν(P − Q)/d`, after checking `2ν(P − Q) > d·ν(Δ_P)`. `None` means `P = Q` at cap.
pub fn perturbation_threshold(p: &MonicPoly, q: &MonicPoly) -> Result<Option<Val>> {
    if p.nvars() != q.nvars() {
        return Err(PfError::VarCountMismatch(p.nvars(), q.nvars()));
    }
    let d = p.degree();
    if q.degree() != d {
        return Err(PfError::InvalidInput(format!("degrees differ: {} vs {}", d, q.degree())));
    }
    let cap = p.cap().min(q.cap());
    let (p, q) = (p.truncate(cap), q.truncate(cap));
    let nd = p.discriminant().order().ok_or(PfError::NotReduced)?;
    let rhs = d as u64 * nd as u64;
    match p.diff_order(&q)? {
        None => Ok(None),
        Some(npq) => {
            let lhs = 2 * npq as u64;
            if lhs <= rhs {
                return Err(PfError::HypothesisViolated { lhs: lhs.to_string(), rhs: rhs.to_string() });
            }
            Ok(Some(Val::new(npq as i64, d as i64)))
        }
    }
}

fn at_least(g: Option<Val>, t: Option<Val>) -> bool {
    match (g, t) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(g), Some(t)) => g >= t,
    }
}

/// Bijection between the roots of `P` and of a nearby `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootPairing {
    /// `(i, j, ν(ξ_i − ξ'_j))`, sorted by `i`.
    pub pairs: Vec<(usize, usize, Option<Val>)>,
    pub threshold: Option<Val>,
}

impl RootPairing {
    pub fn image(&self, i: usize) -> usize {
        self.pairs[i].1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "threshold": show(self.threshold),
            "pairs": self.pairs.iter().map(|(i, j, g)| json!({"p": i, "q": j, "gap": show(*g)})).collect::<Vec<_>>(),
        })
    }
}

/// Pairs roots greedily by largest gap and checks the pairing is forced.
pub fn pair_roots<R: Root>(p: &MonicPoly, q: &MonicPoly, rp: &[R], rq: &[R]) -> Result<RootPairing> {
    let threshold = perturbation_threshold(p, q)?;
    let d = p.degree();
    if rp.len() != d || rq.len() != d {
        return Err(PfError::InvalidInput(format!("expected {d} roots each, got {} and {}", rp.len(), rq.len())));
    }
    let gaps: Vec<Vec<Option<Val>>> = rp.iter().map(|a| rq.iter().map(|b| a.gap(b)).collect()).collect();
    for i in 0..d {
        let row = (0..d).filter(|&j| at_least(gaps[i][j], threshold)).count();
        let col = (0..d).filter(|&k| at_least(gaps[k][i], threshold)).count();
        if row > 1 || col > 1 {
            return Err(PfError::PairingAmbiguous);
        }
    }
    let mut cand: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    // None sorts as infinite
    cand.sort_by(|a, b| {
        let (ga, gb) = (gaps[a.0][a.1], gaps[b.0][b.1]);
        match (ga, gb) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, _) => std::cmp::Ordering::Less,
            (_, None) => std::cmp::Ordering::Greater,
            (Some(x), Some(y)) => y.cmp(&x),
        }
        .then(a.cmp(b))
    });
    let mut to = vec![None; d];
    let mut taken = vec![false; d];
    for (i, j) in cand {
        if to[i].is_none() && !taken[j] {
            to[i] = Some(j);
            taken[j] = true;
        }
    }
    let mut pairs = Vec::with_capacity(d);
    for (i, j) in to.into_iter().enumerate() {
        let j = j.unwrap();
        if !at_least(gaps[i][j], threshold) {
            return Err(PfError::PairingAmbiguous);
        }
        pairs.push((i, j, gaps[i][j]));
    }
    Ok(RootPairing { pairs, threshold })
}

/// One irreducible factor of `P` and its partner in `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorMatch {
    pub p_roots: Vec<usize>,
    pub q_roots: Vec<usize>,
    /// `ν(P_i − Q_i)`.
    pub gap: Option<Val>,
}

#[derive(Clone, Debug)]
pub struct FactorMatching {
    pub pairing: RootPairing,
    pub factors: Vec<FactorMatch>,
}

impl FactorMatching {
    pub fn to_json(&self) -> Value {
        json!({
            "threshold": show(self.pairing.threshold),
            "rootPairs": self.pairing.to_json()["pairs"],
            "factors": self.factors.iter().map(|f| json!({
                "degree": f.p_roots.len(),
                "pRoots": f.p_roots,
                "qRoots": f.q_roots,
                "gap": show(f.gap),
            })).collect::<Vec<_>>(),
        })
    }
}

fn factor_gap(a: &[VGammaElem], b: &[VGammaElem]) -> Option<Val> {
    a.iter().zip(b).filter_map(|(x, y)| x.gap(y)).min()
}

/// Matches the irreducible factors of `P` and `Q` through the root pairing.
pub fn match_factors(p: &MonicPoly, q: &MonicPoly, cap: u32, seed: u64) -> Result<FactorMatching> {
    perturbation_threshold(p, q)?;
    let mut fs = npe_factor_joint(&[p, q], cap, seed)?;
    let fq = fs.pop().unwrap();
    let fp = fs.pop().unwrap();
    let pairing = pair_roots(p, q, &fp.roots, &fq.roots)?;
    if fp.orbits.len() != fq.orbits.len() {
        return Err(PfError::FactorCountMismatch(fp.orbits.len(), fq.orbits.len()));
    }
    let mut factors = Vec::new();
    for o in &fp.orbits {
        let mut img: Vec<usize> = o.iter().map(|&i| pairing.image(i)).collect();
        img.sort();
        let Some(oq) = fq.orbits.iter().find(|oq| {
            let mut s = (*oq).clone();
            s.sort();
            s == img
        }) else {
            return Err(PfError::FactorCountMismatch(fp.orbits.len(), fq.orbits.len()));
        };
        let gap = factor_gap(&fp.factor_of(o), &fq.factor_of(oq));
        if !at_least(gap, pairing.threshold) {
            return Err(PfError::PairingAmbiguous);
        }
        factors.push(FactorMatch { p_roots: o.clone(), q_roots: oq.clone(), gap });
    }
    Ok(FactorMatching { pairing, factors })
}

/// 17 significant digits.
pub fn dec17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A float together with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub error: f64,
}

impl Approx {
    pub fn to_json(&self) -> Value {
        json!({"value": dec17(self.value), "error": dec17(self.error)})
    }
}

/// `Σ |c_α| ρ^{|α|}` over the given terms.
pub fn norm_rho<'a>(terms: impl IntoIterator<Item = (&'a Exp, &'a Gq)>, rho: f64) -> Approx {
    let eps = f64::EPSILON;
    let mut s = 0.0f64;
    let mut err = 0.0f64;
    for (e, c) in terms {
        let k: u32 = e.iter().sum();
        let t = c.abs_f64() * rho.powi(k as i32);
        err += (k as f64 + 4.0) * eps * t;
        s += t;
        err += eps * s;
    }
    Approx { value: s, error: err }
}

pub fn series_norm(f: &TruncatedSeries, rho: f64) -> Approx {
    norm_rho(f.terms(), rho)
}

pub fn hpoly_norm(f: &HPoly, rho: f64) -> Approx {
    norm_rho(f.terms().iter(), rho)
}

#[derive(Clone, Debug)]
pub struct MahlerReport {
    /// `|hb|₁`.
    pub product: Approx,
    /// `|h|₁|b|₁`.
    pub lhs: Approx,
    /// `2^{deg h + deg b}|hb|₁`.
    pub rhs_mahler: Approx,
    pub ratio: f64,
    pub submultiplicative: bool,
    pub mahler: bool,
}

impl MahlerReport {
    pub fn to_json(&self) -> Value {
        json!({
            "product": self.product.to_json(),
            "lhs": self.lhs.to_json(),
            "rhsMahler": self.rhs_mahler.to_json(),
            "ratio": dec17(self.ratio),
            "submultiplicative": self.submultiplicative,
            "mahler": self.mahler,
        })
    }
}

pub fn mahler_check(h: &HPoly, b: &HPoly) -> Result<MahlerReport> {
    if h.is_zero() || b.is_zero() {
        return Err(PfError::InvalidInput("zero polynomial".into()));
    }
    if h.nvars() != b.nvars() {
        return Err(PfError::VarCountMismatch(h.nvars(), b.nvars()));
    }
    let hb = hpoly_norm(&h.mul(b), 1.0);
    let nh = hpoly_norm(h, 1.0);
    let nb = hpoly_norm(b, 1.0);
    let lv = nh.value * nb.value;
    let lhs = Approx { value: lv, error: nh.error * nb.value + nb.error * nh.value + f64::EPSILON * lv };
    let k = 2f64.powi((h.degree() + b.degree()) as i32);
    let rhs_mahler = Approx { value: k * hb.value, error: k * hb.error };
    Ok(MahlerReport {
        product: hb,
        lhs,
        rhs_mahler,
        ratio: lv / hb.value,
        submultiplicative: hb.value - hb.error <= lhs.value + lhs.error,
        mahler: lhs.value - lhs.error <= rhs_mahler.value + rhs_mahler.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, cap: u32, t: &[(&[u32], i64)]) -> TruncatedSeries {
        let mut f = TruncatedSeries::zero(n, cap);
        for (e, c) in t {
            f.add_term(e.to_vec(), Gq::int(*c));
        }
        f
    }

    fn mp(cs: Vec<TruncatedSeries>) -> MonicPoly {
        MonicPoly::new(cs).unwrap()
    }

    #[test]
    fn threshold() {
        let p = mp(vec![s(1, 10, &[]), s(1, 10, &[(&[2], -1)])]);
        let q = mp(vec![s(1, 10, &[]), s(1, 10, &[(&[2], -1), (&[5], -1)])]);
        assert_eq!(perturbation_threshold(&p, &q).unwrap(), Some(Val::new(5, 2)));
        assert_eq!(perturbation_threshold(&p, &p).unwrap(), None);
        let q = mp(vec![s(1, 10, &[]), s(1, 10, &[(&[2], -1), (&[1], 1)])]);
        assert_eq!(
            perturbation_threshold(&p, &q),
            Err(PfError::HypothesisViolated { lhs: "2".into(), rhs: "4".into() })
        );
    }

    #[test]
    fn norms() {
        let f = s(2, 6, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(series_norm(&f, 1.0).value, 2.0);
        let mut g = TruncatedSeries::zero(2, 6);
        g.add_term(vec![2, 0], Gq::int(3));
        g.add_term(vec![0, 2], Gq::gauss(0, -4));
        assert_eq!(series_norm(&g, 0.5).value, 1.75);
        let h = HPoly::var(2, 0).sub(&HPoly::var(2, 1));
        let b = HPoly::var(2, 0).add(&HPoly::var(2, 1));
        let r = mahler_check(&h, &b).unwrap();
        assert_eq!((r.product.value, r.lhs.value, r.ratio), (2.0, 4.0, 2.0));
        assert!(r.submultiplicative && r.mahler);
    }

    #[test]
    fn pairs_plus_minus() {
        let p = mp(vec![s(1, 12, &[]), s(1, 12, &[(&[2], -1)])]);
        let q = mp(vec![s(1, 12, &[]), s(1, 12, &[(&[2], -1), (&[5], -1)])]);
        let x = TruncatedSeries::var(1, 12, 0);
        // sqrt(1 + x^3) by the binomial series
        let mut u = TruncatedSeries::zero(1, 12);
        for (k, c) in [(0, Gq::int(1)), (3, Gq::frac(1, 2)), (6, Gq::frac(-1, 8)), (9, Gq::frac(1, 16))] {
            u.add_term(vec![k], c);
        }
        let rp = vec![x.clone(), x.neg()];
        let rq = vec![x.mul(&u).neg(), x.mul(&u)];
        let r = pair_roots(&p, &q, &rp, &rq).unwrap();
        let four = Some(Val::from_integer(4));
        assert_eq!(r.pairs, vec![(0, 1, four), (1, 0, four)]);
        let r = pair_roots(&p, &p, &rp, &rp).unwrap();
        assert_eq!(r.pairs, vec![(0, 0, None), (1, 1, None)]);
    }

    #[test]
    fn factors_of_split_product() {
        let p = mp(vec![s(2, 12, &[(&[1, 0], -1), (&[0, 1], -1)]), s(2, 12, &[(&[1, 1], 1)])]);
        let q =
            mp(vec![s(2, 12, &[(&[1, 0], -1), (&[0, 1], -1), (&[9, 0], -1)]), s(2, 12, &[(&[1, 1], 1), (&[9, 1], 1)])]);
        let m = match_factors(&p, &q, 12, 7).unwrap();
        let mut gaps: Vec<_> = m.factors.iter().map(|f| f.gap).collect();
        gaps.sort();
        assert_eq!(gaps, vec![None, Some(Val::from_integer(9))]);
    }

    #[test]
    fn ramified_factor() {
        let p = mp(vec![s(2, 10, &[]), s(2, 10, &[(&[1, 1], -1)])]);
        let q = mp(vec![s(2, 10, &[]), s(2, 10, &[(&[1, 1], -1), (&[7, 0], 1)])]);
        let m = match_factors(&p, &q, 10, 7).unwrap();
        assert_eq!(m.factors.len(), 1);
        assert!(at_least(m.factors[0].gap, Some(Val::new(7, 2))));
        let m = match_factors(&p, &p, 10, 7).unwrap();
        assert_eq!(m.factors[0].gap, None);
    }
}
