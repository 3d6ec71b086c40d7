//! Polynomials over the field of degree-zero homogeneous fractions, and
//! their roots.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::hfrac::HFrac;
use crate::hpoly::HPoly;
use crate::series::TruncatedSeries;
use crate::upoly::UPoly;

/// Lowest coefficient first, no trailing zeros.
pub(crate) type FPoly = Vec<HFrac>;

const SAMPLE_POINTS: usize = 6;

pub(crate) fn trim(mut a: FPoly) -> FPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn from_upoly(u: &UPoly, n: usize) -> FPoly {
    trim(u.coeffs().iter().map(|c| HFrac::constant(n, c.clone())).collect())
}

pub(crate) fn fdeg(a: &FPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn fadd(a: &FPoly, b: &FPoly) -> FPoly {
    let m = a.len().max(b.len());
    trim(
        (0..m)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x.add(y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect(),
    )
}

pub(crate) fn fsub(a: &FPoly, b: &FPoly) -> FPoly {
    fadd(a, &b.iter().map(|c| c.neg()).collect())
}

pub(crate) fn fmul(a: &FPoly, b: &FPoly) -> FPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].nvars();
    let mut r = vec![HFrac::constant(n, Gq::zero()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = r[i + j].add(&x.mul(y));
        }
    }
    trim(r)
}

fn fscale(a: &FPoly, c: &HFrac) -> FPoly {
    trim(a.iter().map(|x| x.mul(c)).collect())
}

pub(crate) fn fdivrem(a: &FPoly, b: &FPoly) -> (FPoly, FPoly) {
    let db = fdeg(b).expect("division by zero polynomial");
    let inv = b[db].inv().unwrap();
    let mut rem = a.clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let n = b[0].nvars();
    let mut q = vec![HFrac::constant(n, Gq::zero()); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].mul(&inv);
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            rem[i - db + j] = rem[i - db + j].sub(&c.mul(&b[j]));
        }
        q[i - db] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub(crate) fn fxgcd(a: &FPoly, b: &FPoly) -> (FPoly, FPoly, FPoly) {
    let n = a.first().or(b.first()).map(|c| c.nvars()).unwrap_or(1);
    let one = vec![HFrac::one(n)];
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = fdivrem(&r0, &r1);
        let s2 = fsub(&s0, &fmul(&q, &s1));
        let t2 = fsub(&t0, &fmul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = r0.last().unwrap().inv().unwrap();
    (fscale(&r0, &inv), fscale(&s0, &inv), fscale(&t0, &inv))
}

/// `(y − ρ)^m`.
pub(crate) fn linear_power(rho: &HFrac, m: usize) -> FPoly {
    let lin = vec![rho.neg(), HFrac::one(rho.nvars())];
    let mut acc = vec![HFrac::one(rho.nvars())];
    for _ in 0..m {
        acc = fmul(&acc, &lin);
    }
    acc
}

fn unsupported(r: &FPoly) -> PfError {
    let s: Vec<String> = r.iter().map(|c| c.to_string()).collect();
    PfError::BaseFieldFactorizationUnsupported(format!("[{}]", s.join(", ")))
}

/// Roots with multiplicity of a monic polynomial whose coefficients are
/// degree-zero fractions; every root must lie in the same field.
pub(crate) fn roots(r: &FPoly, n: usize) -> Result<Vec<(HFrac, usize)>> {
    let consts: Option<Vec<Gq>> = r.iter().map(|c| c.as_constant()).collect();
    if let Some(cs) = consts {
        let u = UPoly::new(cs);
        let rs = u.roots_gq().map_err(|_| unsupported(r))?;
        return Ok(rs.into_iter().map(|(c, m)| (HFrac::constant(n, c), m)).collect());
    }
    let d = fdeg(r).unwrap();
    let mut den: Vec<(HPoly, u32)> = Vec::new();
    for c in r {
        for (a, m) in c.den() {
            match den.iter_mut().find(|(b, _)| b == a) {
                Some(e) => e.1 = e.1.max(*m),
                None => den.push((a.clone(), *m)),
            }
        }
    }
    let dpoly = den.iter().fold(HPoly::one(n), |acc, (a, m)| acc.mul(&a.pow(*m)));
    let e = dpoly.degree();
    // Y = D·y turns r into a monic polynomial with polynomial coefficients,
    // whose roots in the fraction field are homogeneous of degree e.
    let f: Vec<HPoly> = (0..=d)
        .map(|j| {
            let v = r[j].mul_poly(&dpoly.pow((d - j) as u32));
            debug_assert!(v.den().is_empty());
            v.num().clone().with_degree((d - j) as u32 * e)
        })
        .collect();
    for attempt in 0..SAMPLE_POINTS {
        let a: Vec<Gq> = (1..n).map(|i| Gq::int(((attempt * 5 + i * 3) % 11) as i64 - 5)).collect();
        if let Some(found) = roots_at(&f, &a, n, e) {
            return Ok(found
                .into_iter()
                .map(|(y, m)| {
                    let mut q = HFrac::from_hpoly(y);
                    for (g, k) in &den {
                        q = q.div_poly(g, *k);
                    }
                    (q, m)
                })
                .collect());
        }
    }
    Err(unsupported(r))
}

fn roots_at(f: &[HPoly], a: &[Gq], n: usize, e: u32) -> Option<Vec<(HPoly, usize)>> {
    let d = f.len() - 1;
    let fa: Vec<TruncatedSeries> = f.iter().map(|p| dehom_shift(p, a, e)).collect();
    let f0 = UPoly::new(fa.iter().map(|s| s.constant_term()).collect());
    let r0 = f0.roots_gq().ok()?;
    let mut out = Vec::new();
    for (c, m) in r0 {
        let g = derivative(&fa, m - 1);
        let dg = derivative(&g, 1);
        let mut y = TruncatedSeries::constant(n - 1, e, c);
        for _ in 0..=e {
            let num = eval(&g, &y);
            if num.is_zero() {
                break;
            }
            let den = eval(&dg, &y).inv_unit().ok()?;
            y = y.sub(&num.mul(&den));
        }
        let yh = unshift(&y, a, n, e);
        let fh: Vec<HPoly> = f.iter().enumerate().map(|(j, p)| p.clone().with_degree((d - j) as u32 * e)).collect();
        for k in 0..m {
            if !eval_h(&derivative_h(&fh, k), &yh).is_zero() {
                return None;
            }
        }
        out.push((yh, m));
    }
    (out.iter().map(|(_, m)| m).sum::<usize>() == d).then_some(out)
}

/// `p(1, a + z)` as a series in `z`.
fn dehom_shift(p: &HPoly, a: &[Gq], cap: u32) -> TruncatedSeries {
    let m = a.len();
    let mut out = TruncatedSeries::zero(m, cap);
    for (ex, c) in p.terms() {
        let mut t = TruncatedSeries::constant(m, cap, c.clone());
        for i in 0..m {
            if ex[i + 1] > 0 {
                let lin = TruncatedSeries::constant(m, cap, a[i].clone()).add(&TruncatedSeries::var(m, cap, i));
                t = t.mul(&lin.pow(ex[i + 1]));
            }
        }
        out = out.add(&t);
    }
    out
}

/// Inverse of `dehom_shift` for a polynomial of degree `≤ e`.
fn unshift(y: &TruncatedSeries, a: &[Gq], n: usize, e: u32) -> HPoly {
    let mut acc: BTreeMap<Vec<u32>, Gq> = BTreeMap::new();
    for (ex, c) in y.terms() {
        let mut poly: BTreeMap<Vec<u32>, Gq> = BTreeMap::new();
        poly.insert(vec![0; n - 1], c.clone());
        for (i, &k) in ex.iter().enumerate() {
            for _ in 0..k {
                let mut next: BTreeMap<Vec<u32>, Gq> = BTreeMap::new();
                for (pe, pc) in &poly {
                    let mut up = pe.clone();
                    up[i] += 1;
                    *next.entry(up).or_insert_with(Gq::zero) += pc;
                    *next.entry(pe.clone()).or_insert_with(Gq::zero) -= &(pc * &a[i]);
                }
                poly = next;
            }
        }
        for (pe, pc) in poly {
            *acc.entry(pe).or_insert_with(Gq::zero) += pc;
        }
    }
    let mut h = HPoly::zero(n, e);
    for (pe, pc) in acc {
        if pc.is_zero() {
            continue;
        }
        let tot: u32 = pe.iter().sum();
        let mut full = vec![e - tot];
        full.extend(pe);
        h.add_term(full, pc);
    }
    h
}

fn derivative(f: &[TruncatedSeries], k: usize) -> Vec<TruncatedSeries> {
    (k..f.len()).map(|j| f[j].scale(&Gq::int(falling(j, k)))).collect()
}

fn derivative_h(f: &[HPoly], k: usize) -> Vec<HPoly> {
    (k..f.len()).map(|j| f[j].scale(&Gq::int(falling(j, k)))).collect()
}

fn falling(j: usize, k: usize) -> i64 {
    ((j - k + 1)..=j).map(|v| v as i64).product()
}

fn eval(f: &[TruncatedSeries], y: &TruncatedSeries) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(y.nvars(), y.cap());
    for c in f.iter().rev() {
        acc = acc.mul(y).add(c);
    }
    acc
}

fn eval_h(f: &[HPoly], y: &HPoly) -> HPoly {
    let mut acc = HPoly::zero(y.nvars(), 0);
    for c in f.iter().rev() {
        acc = acc.mul(y).add(c);
    }
    acc
}
