//! Monic polynomials over truncated series: Weierstrass division and
//! preparation, discriminants and resultants, Tschirnhaus shifts.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::hpoly::Exp;
use crate::linalg::DetStrategy;
use crate::registry::default_det;
use crate::series::TruncatedSeries;

/// `y^d + a₁y^{d−1} + … + a_d` with series coefficients sharing one cap.
#[derive(Clone)]
pub struct MonicPoly {
    nvars: usize,
    cap: u32,
    coeffs: Vec<TruncatedSeries>,
    disc: OnceLock<TruncatedSeries>,
}

impl PartialEq for MonicPoly {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.cap == o.cap && self.coeffs == o.coeffs
    }
}

impl Eq for MonicPoly {}

impl MonicPoly {
    /// From `a₁..a_d`; all coefficients are cut to the smallest cap.
    pub fn new(coeffs: Vec<TruncatedSeries>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(PfError::InvalidInput("monic polynomial needs degree at least 1".into()));
        };
        let nvars = first.nvars();
        let mut cap = first.cap();
        for c in &coeffs {
            if c.nvars() != nvars {
                return Err(PfError::VarCountMismatch(c.nvars(), nvars));
            }
            cap = cap.min(c.cap());
        }
        let coeffs = coeffs.into_iter().map(|c| c.truncate(cap)).collect();
        Ok(MonicPoly { nvars, cap, coeffs, disc: OnceLock::new() })
    }

    /// `Π (y − r_i)`.
    pub fn from_roots(roots: &[TruncatedSeries]) -> Result<Self> {
        let Some(r0) = roots.first() else {
            return Err(PfError::InvalidInput("no roots".into()));
        };
        let mut full = vec![TruncatedSeries::one(r0.nvars(), r0.cap())];
        for r in roots {
            full = poly_mul(&full, &[TruncatedSeries::one(r.nvars(), r.cap()), r.neg()]);
        }
        MonicPoly::new(full.into_iter().skip(1).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// `a₁..a_d`.
    pub fn coeffs(&self) -> &[TruncatedSeries] {
        &self.coeffs
    }

    /// `a_k`, with `a₀ = 1`.
    pub fn coeff(&self, k: usize) -> TruncatedSeries {
        if k == 0 {
            TruncatedSeries::one(self.nvars, self.cap)
        } else {
            self.coeffs[k - 1].clone()
        }
    }

    /// `[1, a₁, …, a_d]`, highest power first.
    pub fn full_coeffs(&self) -> Vec<TruncatedSeries> {
        (0..=self.degree()).map(|k| self.coeff(k)).collect()
    }

    pub fn truncate(&self, cap: u32) -> MonicPoly {
        MonicPoly::new(self.coeffs.iter().map(|c| c.truncate(cap)).collect()).unwrap()
    }

    pub fn mul(&self, o: &MonicPoly) -> MonicPoly {
        let p = poly_mul(&self.full_coeffs(), &o.full_coeffs());
        MonicPoly::new(p.into_iter().skip(1).collect()).unwrap()
    }

    pub fn eval(&self, y: &TruncatedSeries) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(self.nvars, self.cap.min(y.cap()));
        for a in &self.coeffs {
            acc = acc.mul(y).add(a);
        }
        acc
    }

    /// `P − Q` coefficientwise (`a_k − b_k`, k = 1..d).
    pub fn diff(&self, o: &MonicPoly) -> Result<Vec<TruncatedSeries>> {
        if self.degree() != o.degree() {
            return Err(PfError::InvalidInput("degree mismatch".into()));
        }
        Ok(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect())
    }

    /// `ν(P − Q)`, or `None` when they agree at the common cap.
    pub fn diff_order(&self, o: &MonicPoly) -> Result<Option<u32>> {
        Ok(self.diff(o)?.iter().filter_map(|c| c.order()).min())
    }

    /// Substitutes the x-variables in every coefficient.
    pub fn subst_x(&self, images: &[TruncatedSeries]) -> Result<MonicPoly> {
        let c = self.coeffs.iter().map(|a| a.subst(images)).collect::<Result<Vec<_>>>()?;
        MonicPoly::new(c)
    }

    /// `P(y + t)`.
    pub fn shift(&self, t: &TruncatedSeries) -> MonicPoly {
        let lin = vec![TruncatedSeries::one(self.nvars, self.cap), t.truncate(self.cap)];
        let mut acc = vec![TruncatedSeries::one(self.nvars, self.cap)];
        for a in &self.coeffs {
            acc = poly_mul(&acc, &lin);
            let last = acc.len() - 1;
            acc[last] = acc[last].add(a);
        }
        MonicPoly::new(acc.into_iter().skip(1).collect()).unwrap()
    }

    /// `∂P/∂y` as a full coefficient list, highest first.
    pub fn derivative_coeffs(&self) -> Vec<TruncatedSeries> {
        let d = self.degree();
        (0..d).map(|k| self.coeff(k).scale(&Gq::int((d - k) as i64))).collect()
    }

    /// `Δ_P` with the default determinant strategy, cached.
    pub fn discriminant(&self) -> TruncatedSeries {
        self.disc.get_or_init(|| discriminant_with(self, default_det())).clone()
    }

    /// `P` as a series in `(x, y)`, `y` last.
    pub fn to_series(&self) -> TruncatedSeries {
        let n = self.nvars + 1;
        let d = self.degree() as u32;
        let mut s = TruncatedSeries::zero(n, self.cap);
        for k in 0..=self.degree() {
            let c = self.coeff(k);
            for (e, v) in c.terms() {
                let mut ne = e.clone();
                ne.push(d - k as u32);
                s.add_term(ne, v.clone());
            }
        }
        s
    }
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{}", self.degree())?;
        for (k, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                write!(f, " + [{a}]·y^{}", self.degree() - k - 1)?;
            }
        }
        Ok(())
    }
}

/// Product of coefficient lists (highest power first).
pub(crate) fn poly_mul(a: &[TruncatedSeries], b: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    let n = a[0].nvars();
    let cap = a.iter().chain(b).map(|s| s.cap()).min().unwrap();
    let mut out = vec![TruncatedSeries::zero(n, cap); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// Sylvester matrix of two coefficient lists (highest first).
pub fn sylvester(p: &[TruncatedSeries], q: &[TruncatedSeries]) -> Vec<Vec<TruncatedSeries>> {
    let d = p.len() - 1;
    let e = q.len() - 1;
    let n = d + e;
    let zero = TruncatedSeries::zero(p[0].nvars(), p.iter().chain(q).map(|s| s.cap()).min().unwrap());
    let mut m = vec![vec![zero; n]; n];
    for i in 0..e {
        for (k, c) in p.iter().enumerate() {
            m[i][i + k] = c.truncate(m[i][i + k].cap());
        }
    }
    for i in 0..d {
        for (k, c) in q.iter().enumerate() {
            m[e + i][i + k] = c.truncate(m[e + i][i + k].cap());
        }
    }
    m
}

/// `det Syl(P, Q)`.
pub fn resultant(p: &MonicPoly, q: &MonicPoly) -> TruncatedSeries {
    resultant_with(&p.full_coeffs(), &q.full_coeffs(), default_det())
}

pub fn resultant_with(p: &[TruncatedSeries], q: &[TruncatedSeries], det: &dyn DetStrategy) -> TruncatedSeries {
    let m = sylvester(p, q);
    if m.is_empty() {
        let cap = p.iter().chain(q).map(|s| s.cap()).min().unwrap();
        return TruncatedSeries::one(p[0].nvars(), cap);
    }
    det.det(&m)
}

/// `Δ_P = (−1)^{d(d−1)/2} · det Syl(P, P′)`.
pub fn discriminant_with(p: &MonicPoly, det: &dyn DetStrategy) -> TruncatedSeries {
    let d = p.degree();
    let r = resultant_with(&p.full_coeffs(), &p.derivative_coeffs(), det);
    if (d * (d.saturating_sub(1)) / 2) % 2 == 1 {
        r.neg()
    } else {
        r
    }
}

/// `(P(y − a₁/d), a₁/d)`.
pub fn tschirnhaus(p: &MonicPoly) -> (MonicPoly, TruncatedSeries) {
    let s = p.coeff(1).scale(&Gq::int(p.degree() as i64).inv());
    (p.shift(&s.neg()), s)
}

/// Order `d` and coefficient of the first nonzero term of `f(0,…,0,x_n)`.
pub fn xn_order(f: &TruncatedSeries) -> Option<(u32, Gq)> {
    let n = f.nvars();
    for b in 0..=f.cap() {
        let mut e = vec![0; n];
        e[n - 1] = b;
        let c = f.coeff(&e);
        if !c.is_zero() {
            return Some((b, c));
        }
    }
    None
}

/// Result of `f = q·g + r`.
#[derive(Clone, Debug, PartialEq)]
pub struct WDivision {
    pub q: TruncatedSeries,
    /// `r` as a series in all variables.
    pub r: TruncatedSeries,
    /// `r = Σ_{b<d} r_b(x′) x_n^b`; `r_b` in the first `n − 1` variables.
    pub r_coeffs: Vec<TruncatedSeries>,
    pub d: u32,
    /// Weight of `x′` in the grading that makes the division exact.
    pub weight: u32,
}

type Terms = BTreeMap<Exp, Gq>;

fn terms_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exp = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e).or_insert_with(Gq::zero);
            *v += &(ca * cb);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn terms_sub_assign(a: &mut Terms, b: &Terms) {
    for (e, c) in b {
        let v = a.entry(e.clone()).or_insert_with(Gq::zero);
        *v -= c;
    }
    a.retain(|_, v| !v.is_zero());
}

/// `w_division`. The division is carried out degree by degree in the
/// grading where `x′` has weight `W` and `x_n` weight 1, with `W` the least
/// integer making the weighted initial form of `g` contain `x_n^d`; in that
/// grading each step is a polynomial division by a monic-in-`x_n` form.
pub fn w_division(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<WDivision> {
    if f.nvars() != g.nvars() {
        return Err(PfError::VarCountMismatch(f.nvars(), g.nvars()));
    }
    let n = g.nvars();
    if n == 0 {
        return Err(PfError::InvalidInput("division needs at least one variable".into()));
    }
    let cap = f.cap().min(g.cap());
    let g = g.truncate(cap);
    let (d, c) = xn_order(&g).ok_or(PfError::NotRegular)?;
    let wdeg = |e: &[u32], w: u32| -> u32 { e[..n - 1].iter().sum::<u32>() * w + e[n - 1] };
    let mut w = 1u32;
    for (e, _) in g.terms() {
        let a: u32 = e[..n - 1].iter().sum();
        let b = e[n - 1];
        if a > 0 && b < d {
            w = w.max((d - b).div_ceil(a));
        }
    }
    let mut gp: Vec<Terms> = vec![Terms::new(); cap as usize + 1];
    for (e, v) in g.terms() {
        let k = wdeg(e, w);
        if k <= cap {
            gp[k as usize].insert(e.clone(), v.clone());
        }
    }
    let mut fp: Vec<Terms> = vec![Terms::new(); cap as usize + 1];
    for (e, v) in f.terms() {
        let k = wdeg(e, w);
        if k <= cap {
            fp[k as usize].insert(e.clone(), v.clone());
        }
    }
    let gd = gp[d as usize].clone();
    let cinv = c.inv();
    let mut qp: Vec<Terms> = Vec::new();
    let mut rp: Vec<Terms> = Vec::new();
    for k in 0..=cap {
        let mut e = fp[k as usize].clone();
        for j in d + 1..=k {
            let qi = (k - j) as usize;
            if qi < qp.len() && !qp[qi].is_empty() && !gp[j as usize].is_empty() {
                terms_sub_assign(&mut e, &terms_mul(&qp[qi], &gp[j as usize]));
            }
        }
        let mut quot = Terms::new();
        loop {
            let top = e.iter().filter(|(x, _)| x[n - 1] >= d).map(|(x, _)| x[n - 1]).max();
            let Some(bmax) = top else { break };
            let lead: Terms = e.iter().filter(|(x, _)| x[n - 1] == bmax).map(|(x, v)| (x.clone(), v.clone())).collect();
            let mut qt = Terms::new();
            for (x, v) in lead {
                let mut qe = x.clone();
                qe[n - 1] -= d;
                qt.insert(qe, &v * &cinv);
            }
            terms_sub_assign(&mut e, &terms_mul(&qt, &gd));
            for (x, v) in qt {
                let s = quot.entry(x).or_insert_with(Gq::zero);
                *s += &v;
            }
        }
        quot.retain(|_, v| !v.is_zero());
        if k >= d {
            qp.push(quot);
        } else {
            debug_assert!(quot.is_empty());
        }
        rp.push(e);
    }
    let qcap = (cap - d) / w;
    let rcap = cap / w;
    let mut q = TruncatedSeries::zero(n, qcap);
    for piece in &qp {
        for (e, v) in piece {
            q.add_term(e.clone(), v.clone());
        }
    }
    let mut r = TruncatedSeries::zero(n, rcap);
    let mut r_coeffs: Vec<TruncatedSeries> = (0..d).map(|b| TruncatedSeries::zero(n - 1, (cap - b) / w)).collect();
    for piece in &rp {
        for (e, v) in piece {
            r.add_term(e.clone(), v.clone());
            let b = e[n - 1] as usize;
            r_coeffs[b].add_term(e[..n - 1].to_vec(), v.clone());
        }
    }
    Ok(WDivision { q, r, r_coeffs, d, weight: w })
}

/// `f = unit · (x_n^d + a₁(x′)x_n^{d−1} + … + a_d(x′))`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    pub unit: TruncatedSeries,
    pub poly: MonicPoly,
}

/// `w_preparation`, via `x_n^d = Q·f + R`.
pub fn w_preparation(f: &TruncatedSeries) -> Result<WeierstrassData> {
    let n = f.nvars();
    let (d, _) = xn_order(f).ok_or(PfError::NotRegular)?;
    if d == 0 {
        return Err(PfError::InvalidInput("series is a unit; nothing to prepare".into()));
    }
    let mut e = vec![0; n];
    e[n - 1] = d;
    let xd = TruncatedSeries::monomial(f.cap(), e, Gq::one());
    let div = w_division(&xd, f)?;
    let unit = div.q.inv_unit()?;
    let coeffs: Vec<TruncatedSeries> = (1..=d as usize).map(|k| div.r_coeffs[d as usize - k].neg()).collect();
    Ok(WeierstrassData { unit, poly: MonicPoly::new(coeffs)? })
}

/// `f = x^α · unit` in the given coordinates, if so.
pub fn is_monomial_unit(f: &TruncatedSeries) -> Result<Option<(Exp, TruncatedSeries)>> {
    if f.is_zero() {
        return Err(PfError::ZeroUpToCap);
    }
    let n = f.nvars();
    let mut alpha = vec![u32::MAX; n];
    for (e, _) in f.terms() {
        for (a, x) in alpha.iter_mut().zip(e) {
            *a = (*a).min(*x);
        }
    }
    if f.coeff(&alpha).is_zero() {
        return Ok(None);
    }
    let u = f.div_monomial(&alpha).expect("divisible by the minimal monomial");
    Ok(Some((alpha, u)))
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
    fn division_examples() {
        let t = 8;
        let r = w_division(&x(1, t).pow(2), &x(1, t)).unwrap();
        assert_eq!(r.q, x(1, t).truncate(r.q.cap()));
        assert!(r.r.is_zero());

        let f = x(1, t).pow(2).add(&x(0, t));
        let g = x(1, t).sub(&x(0, t));
        let r = w_division(&f, &g).unwrap();
        assert_eq!(r.q, x(1, t).add(&x(0, t)).truncate(r.q.cap()));
        assert_eq!(r.r, x(0, t).pow(2).add(&x(0, t)).truncate(r.r.cap()));

        let geo = c(1, t).sub(&x(0, t)).inv_unit().unwrap();
        let r = w_division(&x(1, t).mul(&geo), &x(1, t)).unwrap();
        assert_eq!(r.q, geo.truncate(r.q.cap()));
        assert!(r.r.is_zero());
    }

    #[test]
    fn not_regular() {
        let g = x(0, 6).mul(&x(1, 6));
        assert_eq!(w_division(&x(1, 6), &g).unwrap_err(), PfError::NotRegular);
    }

    #[test]
    fn preparation_examples() {
        let t = 8;
        let w = w_preparation(&x(1, t)).unwrap();
        assert_eq!(w.unit, c(1, w.unit.cap()));
        assert_eq!(w.poly.degree(), 1);
        assert!(w.poly.coeffs()[0].is_zero());

        let w = w_preparation(&x(1, t).mul(&c(1, t).add(&x(0, t)))).unwrap();
        assert_eq!(w.unit, c(1, t).add(&x(0, t)).truncate(w.unit.cap()));
        assert!(w.poly.coeffs()[0].is_zero());

        let f = x(1, t).pow(2).add(&x(0, t).mul(&x(1, t))).add(&x(0, t).pow(3));
        let w = w_preparation(&f).unwrap();
        assert_eq!(w.unit, c(1, w.unit.cap()));
        let x1 = TruncatedSeries::var(1, w.poly.cap(), 0);
        assert_eq!(w.poly.coeffs(), &[x1.clone(), x1.pow(3)]);
    }

    fn p1(coeffs: Vec<TruncatedSeries>) -> MonicPoly {
        MonicPoly::new(coeffs).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        let t = 10;
        let p = p1(vec![c(0, t), x(0, t).mul(&x(1, t)).neg()]);
        assert_eq!(p.discriminant(), x(0, t).mul(&x(1, t)).scale(&Gq::int(4)));
        let a = x(0, t).add(&x(1, t).pow(2));
        let b = x(1, t).pow(3);
        let p = p1(vec![a.clone(), b.clone()]);
        assert_eq!(p.discriminant(), a.mul(&a).sub(&b.scale(&Gq::int(4))));
        let s = x(0, t).pow(2).add(&x(1, t).pow(2));
        let p = p1(vec![c(0, t), c(0, t), c(0, t), s.neg()]);
        assert_eq!(p.discriminant(), s.pow(3).scale(&Gq::int(-256)));
    }

    #[test]
    fn tschirnhaus_examples() {
        let t = 8;
        let p = p1(vec![x(0, t).scale(&Gq::int(2)), x(1, t)]);
        let (q, s) = tschirnhaus(&p);
        assert_eq!(s, x(0, t));
        assert!(q.coeffs()[0].is_zero());
        assert_eq!(q.coeffs()[1], x(1, t).sub(&x(0, t).pow(2)));
        let (q, s) = tschirnhaus(&q);
        assert!(s.is_zero());
        assert_eq!(q.coeffs()[1], x(1, t).sub(&x(0, t).pow(2)));
    }

    #[test]
    fn monomial_unit_examples() {
        let t = 8;
        let f = x(0, t).pow(2).mul(&x(1, t)).mul(&c(1, t).add(&x(0, t)));
        let (a, u) = is_monomial_unit(&f).unwrap().unwrap();
        assert_eq!(a, vec![2, 1]);
        assert_eq!(u, c(1, t - 3).add(&x(0, t - 3)));
        let mut g = x(1, t);
        let mut fact = 1i64;
        for n in 1..=t as i64 {
            fact *= n;
            g = g.sub(&x(0, t).pow(n as u32).scale(&Gq::int(fact)));
        }
        assert_eq!(is_monomial_unit(&x(0, t).mul(&g)).unwrap(), None);
        assert_eq!(is_monomial_unit(&x(0, t).pow(2).add(&x(1, t).pow(2))).unwrap(), None);
        assert_eq!(is_monomial_unit(&c(0, t)).unwrap_err(), PfError::ZeroUpToCap);
    }
}
