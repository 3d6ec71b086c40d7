//! Univariate polynomials over ℚ(i): gcd, square-free splitting and roots.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::field::{GaussInt, Gq};

/// Dense univariate polynomial, coefficients from degree 0 upwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    c: Vec<Gq>,
}

impl UPoly {
    pub fn new(mut c: Vec<Gq>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn constant(a: Gq) -> Self {
        UPoly::new(vec![a])
    }

    /// `y − a`.
    pub fn linear(a: &Gq) -> Self {
        UPoly::new(vec![-a, Gq::one()])
    }

    pub fn coeffs(&self) -> &[Gq] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Gq {
        self.c.get(k).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn lc(&self) -> Gq {
        self.c.last().cloned().unwrap_or_else(Gq::zero)
    }

    pub fn eval(&self, x: &Gq) -> Gq {
        let mut acc = Gq::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn scale(&self, s: &Gq) -> UPoly {
        UPoly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut r = vec![Gq::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += &(a * b);
            }
        }
        UPoly::new(r)
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::constant(Gq::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a * &Gq::int(k as i64)).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let inv = d.lc().inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Gq::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &(&t * b);
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn xgcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::constant(Gq::one()), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::constant(Gq::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `p(y + a)`.
    pub fn taylor_shift(&self, a: &Gq) -> UPoly {
        let mut out = UPoly::zero();
        let lin = UPoly::new(vec![a.clone(), Gq::one()]);
        for c in self.c.iter().rev() {
            out = out.mul(&lin).add(&UPoly::constant(c.clone()));
        }
        out
    }

    /// Order of vanishing at `a`.
    pub fn order_at(&self, a: &Gq) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let s = self.taylor_shift(a);
        s.c.iter().position(|c| !c.is_zero())
    }

    /// Square-free factorization (Yun): list of `(factor, multiplicity)` with
    /// monic, pairwise coprime, square-free factors.
    pub fn squarefree(&self) -> Vec<(UPoly, usize)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.divrem(&a).0;
        let mut c = df.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.divrem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.divrem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
            a = a.divrem(&g).0;
        }
        let _ = a;
        out
    }

    /// Roots in ℚ(i) with multiplicity, sorted; `Err` carries the product of
    /// the irreducible factors without roots in ℚ(i).
    pub fn roots_gq(&self) -> Result<Vec<(Gq, usize)>, UPoly> {
        let mut out = Vec::new();
        let mut missing = UPoly::constant(Gq::one());
        for (fac, m) in self.squarefree() {
            let (rs, rest) = squarefree_roots(&fac);
            for r in rs {
                out.push((r, m));
            }
            if rest.degree().unwrap_or(0) > 0 {
                missing = missing.mul(&rest);
            }
        }
        if missing.degree().unwrap_or(0) > 0 {
            return Err(missing);
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// All roots in ℚ(i) (distinct), ignoring any factor without such roots.
    pub fn rational_roots(&self) -> Vec<Gq> {
        let mut out = Vec::new();
        for (fac, _) in self.squarefree() {
            out.extend(squarefree_roots(&fac).0);
        }
        out.sort();
        out
    }

    /// Approximate complex roots (Durand–Kerner).
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let Some(n) = self.degree() else { return vec![] };
        if n == 0 {
            return vec![];
        }
        let lc = self.lc().to_c64();
        let a: Vec<Complex64> = self.c.iter().map(|x| x.to_c64() / lc).collect();
        let bound = 1.0 + a[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound.min(4.0)).collect();
        let ev = |x: Complex64| a.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c);
        for _ in 0..500 {
            let mut delta: f64 = 0.0;
            for i in 0..n {
                let mut den = Complex64::one();
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                if den.norm() == 0.0 {
                    den = Complex64::new(1e-12, 1e-12);
                }
                let step = ev(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 * bound {
                break;
            }
        }
        z
    }
}

fn squarefree_roots(f: &UPoly) -> (Vec<Gq>, UPoly) {
    let mut f = f.monic();
    let mut roots = Vec::new();
    loop {
        match f.degree() {
            None | Some(0) => return (roots, f),
            Some(1) => {
                roots.push(-f.coeff(0));
                return (roots, UPoly::constant(Gq::one()));
            }
            Some(2) => {
                let b = f.coeff(1);
                let c = f.coeff(0);
                let disc = &(&b * &b) - &(&Gq::int(4) * &c);
                if let Some(s) = disc.nth_root(2) {
                    let two = Gq::int(2);
                    roots.push(&(&(-&b) + &s) / &two);
                    roots.push(&(&(-&b) - &s) / &two);
                    return (roots, UPoly::constant(Gq::one()));
                }
                return (roots, f);
            }
            Some(_) => {
                let Some(r) = find_gq_root(&f) else { return (roots, f) };
                roots.push(r.clone());
                f = f.divrem(&UPoly::linear(&r)).0;
            }
        }
    }
}

/// Candidate roots from floating point, certified exactly.
fn find_gq_root(f: &UPoly) -> Option<Gq> {
    // Clear denominators: for a root p/q of a polynomial with Gaussian-integer
    // coefficients, q divides the leading coefficient, so lc·root is integral.
    let mut den = num_bigint::BigInt::one();
    for c in f.coeffs() {
        den = num_integer::Integer::lcm(&den, &c.denom_lcm());
    }
    let g = f.scale(&Gq::from_rational(num_rational::BigRational::from_integer(den)));
    let lc = g.lc();
    for z in g.complex_roots() {
        let w = z * lc.to_c64();
        for dr in -1..=1i64 {
            for di in -1..=1i64 {
                let cand = GaussInt::new(
                    num_bigint::BigInt::from(w.re.round() as i64 + dr),
                    num_bigint::BigInt::from(w.im.round() as i64 + di),
                );
                let r = &cand.to_gq() / &lc;
                if f.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.c.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("{c}*y^{k}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| Gq::int(x)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (y-1)^2 (y+2)
        let f = p(&[2, -3, 0, 1]);
        let sf = f.squarefree();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (p(&[2, 1]), 1));
        assert_eq!(sf[1], (p(&[-1, 1]), 2));
        let roots = f.roots_gq().unwrap();
        assert_eq!(roots, vec![(Gq::int(-2), 1), (Gq::int(1), 2)]);
    }

    #[test]
    fn gaussian_roots() {
        // y^4 - 1
        let r = p(&[-1, 0, 0, 0, 1]).roots_gq().unwrap();
        assert_eq!(r.len(), 4);
        // y^3 - 1 has non-Gaussian roots
        let e = p(&[-1, 0, 0, 1]).roots_gq().unwrap_err();
        assert_eq!(e, p(&[1, 1, 1]));
        // (2y - 1)(y - i)(y + 3)
        let f = p(&[-1, 2]).mul(&UPoly::linear(&Gq::i())).mul(&p(&[3, 1]));
        let r: Vec<Gq> = f.roots_gq().unwrap().into_iter().map(|x| x.0).collect();
        assert!(r.contains(&Gq::frac(1, 2)) && r.contains(&Gq::i()) && r.contains(&Gq::int(-3)));
    }

    #[test]
    fn xgcd_identity() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, p(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
