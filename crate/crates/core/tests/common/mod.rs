#![allow(dead_code)]

use num_rational::BigRational;
use pf_core::hfrac::{FracSeries, HFrac};
use pf_core::homogeneous::VGammaElem;
use pf_core::npe::NpeFactorization;
use pf_core::tower::Val;
use pf_core::{Gq, HPoly, MonicPoly, TruncatedSeries};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn s(n: usize, cap: u32, terms: &[(&[u32], i64)]) -> TruncatedSeries {
    let mut f = TruncatedSeries::zero(n, cap);
    for (e, c) in terms {
        f.add_term(e.to_vec(), Gq::int(*c));
    }
    f
}

pub fn x(n: usize, cap: u32, i: usize) -> TruncatedSeries {
    TruncatedSeries::var(n, cap, i)
}

pub fn monic(cs: Vec<TruncatedSeries>) -> MonicPoly {
    MonicPoly::new(cs).unwrap()
}

pub fn gauss(rng: &mut ChaCha8Rng) -> Gq {
    loop {
        let c = Gq::gauss(rng.gen_range(-3..=3), rng.gen_range(-2..=2));
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// A random polynomial in two variables with terms of degree in `lo..=hi`.
pub fn random_poly(rng: &mut ChaCha8Rng, cap: u32, lo: u32, hi: u32, nterms: usize) -> TruncatedSeries {
    let mut f = TruncatedSeries::zero(2, cap);
    for _ in 0..nterms {
        let d = rng.gen_range(lo..=hi);
        let i = rng.gen_range(0..=d);
        f.add_term(vec![i, d - i], gauss(rng));
    }
    f
}

/// `a² − 4b` for `y² + ay + b`, by hand.
pub fn quadratic_disc(p: &MonicPoly) -> TruncatedSeries {
    let (a, b) = (p.coeff(1), p.coeff(2));
    a.mul(&a).sub(&b.scale(&Gq::int(4)))
}

pub fn random_quadratic(rng: &mut ChaCha8Rng, cap: u32) -> MonicPoly {
    loop {
        let a = random_poly(rng, cap, 1, 3, 2);
        let b = random_poly(rng, cap, 2, 6, 3);
        let p = monic(vec![a, b]);
        match quadratic_disc(&p).order() {
            Some(k) if k <= 6 => return p,
            _ => continue,
        }
    }
}

pub fn binomial_half(j: u32) -> Gq {
    let mut c = BigRational::from_integer(1.into());
    for i in 0..j {
        c = c * (BigRational::new(1.into(), 2.into()) - BigRational::from_integer(i.into()))
            / BigRational::from_integer((i + 1).into());
    }
    Gq::from_rational(c)
}

/// `−P₁/2 ± √δ₀·√(1 + Σ δ_k/δ₀)/2`, written over the element `γ` of `f`.
pub fn deg2_formula_roots(p: &MonicPoly, f: &NpeFactorization) -> Option<[VGammaElem; 2]> {
    let cap = p.cap();
    let delta = quadratic_disc(p);
    let (k0, d0) = delta.order_initial();
    let (k0, d0) = (k0?, d0?);
    let mut t = FracSeries::zero();
    for (k, c) in delta.components().iter().enumerate() {
        if k as u32 > k0 && !c.is_zero() {
            t.add_comp(HFrac::from_hpoly(c.clone()).div_poly(&d0, 1));
        }
    }
    let top = cap as i64 + 2;
    let mut u = FracSeries::single(HFrac::one(2));
    let mut tj = FracSeries::single(HFrac::one(2));
    for j in 1..=top as u32 {
        tj = tj.mul_to(&t, Some(top));
        if tj.is_zero() {
            break;
        }
        u = u.add(&tj.scale(&binomial_half(j)));
    }
    let g = &f.gamma;
    let half = Gq::frac(1, 2);
    let base = FracSeries::from_series(&p.coeff(1).scale(&-half.clone()));
    let capv = Val::from_integer(cap as i64);
    let root = |sign: i64| -> Option<VGammaElem> {
        let sh = half.clone() * Gq::int(sign);
        if g.degree() == 1 {
            let r = HFrac::from_hpoly(d0.clone()).nth_root(2)?;
            let c = base.add(&u.mul_frac(&r).scale(&sh));
            Some(VGammaElem::new(g.clone(), vec![c], capv))
        } else if g.degree() == 2 && g.coeffs()[0].is_zero() {
            let gg = g.coeffs()[1].neg();
            let mu = HFrac::from_hpoly(d0.clone()).mul(&HFrac::one(2).div_poly(&gg, 1)).nth_root(2)?;
            let c1 = u.mul_frac(&mu).scale(&sh);
            Some(VGammaElem::new(g.clone(), vec![base.clone(), c1], capv))
        } else {
            None
        }
    };
    Some([root(1)?, root(-1)?])
}

/// Multiplies every linear factor back and compares with `P` through cap.
pub fn product_reproduces(f: &NpeFactorization, p: &MonicPoly) -> bool {
    let all: Vec<usize> = (0..f.roots.len()).collect();
    let full = f.factor_of(&all);
    let d = p.degree();
    (1..=d).all(|k| {
        let a = &full[d - k];
        let pk = FracSeries::from_series(&p.coeff(k));
        a.is_base() && a.coeffs()[0].sub(&pk).truncate(f.cap as i64).is_zero()
    })
}

/// Reduced monic polynomials of degree at most 4 that factor inside `ℚ(i)`-towers.
pub fn factor_corpus(rng: &mut ChaCha8Rng, cap: u32) -> Vec<(String, MonicPoly)> {
    let x0 = x(2, cap, 0);
    let x1 = x(2, cap, 1);
    let zero = TruncatedSeries::zero(2, cap);
    let one = TruncatedSeries::one(2, cap);
    let mut out: Vec<(String, MonicPoly)> = vec![
        ("y2-x1x2".into(), monic(vec![zero.clone(), x0.mul(&x1).neg()])),
        ("y2-x1^3".into(), monic(vec![zero.clone(), x0.pow(3).neg()])),
        ("y2-x1^2-x2^3".into(), monic(vec![zero.clone(), x0.pow(2).add(&x1.pow(3)).neg()])),
        (
            "z4-(x1^2+x2^2)".into(),
            monic(vec![zero.clone(), zero.clone(), zero.clone(), x0.pow(2).add(&x1.pow(2)).neg()]),
        ),
        (
            "z4-u2(1+v2)".into(),
            monic(vec![zero.clone(), zero.clone(), zero.clone(), x0.pow(2).mul(&one.add(&x1.pow(2))).neg()]),
        ),
        ("cubic".into(), MonicPoly::from_roots(&[x0.clone(), x1.clone(), x0.add(&x1).add(&x0.pow(3))]).unwrap()),
        ("(y2-x1^3)(y-x2)".into(), monic(vec![zero.clone(), x0.pow(3).neg()]).mul(&monic(vec![x1.neg()]))),
        (
            "(y2-x1x2)(y2+x1x2)".into(),
            monic(vec![zero.clone(), x0.mul(&x1).neg()]).mul(&monic(vec![zero.clone(), x0.mul(&x1)])),
        ),
    ];
    for k in 0..10 {
        let d = 2 + k % 3;
        let roots: Vec<TruncatedSeries> = (0..d).map(|_| random_poly(rng, cap, 1, 3, 3)).collect();
        let p = MonicPoly::from_roots(&roots).unwrap();
        if p.discriminant().order().is_some() {
            out.push((format!("split-{k}"), p));
        }
    }
    // products whose residue data leaves Q(i) are dropped
    let mut k = 0;
    while k < 6 {
        let q = random_quadratic(rng, cap);
        let l = monic(vec![random_poly(rng, cap, 1, 2, 2)]);
        let p = q.mul(&l);
        match pf_core::npe::npe_factor(&p, cap) {
            Err(e) if e.class() == pf_core::ErrorClass::Unsupported => continue,
            _ => {}
        }
        out.push((format!("quadratic-times-linear-{k}"), p));
        k += 1;
    }
    for k in 0..8 {
        out.push((format!("quadratic-{k}"), random_quadratic(rng, cap)));
    }
    out
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32) -> HPoly {
    loop {
        let mut f = HPoly::zero(n, d);
        for e in pf_core::hpoly::exponents_of_degree(n, d) {
            if rng.gen_bool(0.6) {
                f.add_term(e, gauss(rng));
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn hpoly_pair(rng: &mut ChaCha8Rng, n: usize) -> (HPoly, HPoly) {
    let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    (random_form(rng, n, a), random_form(rng, n, b))
}

/// Reduced polynomials small enough that an admissible perturbation fits below cap.
pub fn unperturbed(rng: &mut ChaCha8Rng, cap: u32) -> MonicPoly {
    loop {
        let p = if rng.gen_bool(0.5) {
            random_quadratic(rng, cap)
        } else {
            let d = rng.gen_range(2..=3);
            let roots: Vec<TruncatedSeries> = (0..d).map(|_| random_poly(rng, cap, 1, 2, 2)).collect();
            MonicPoly::from_roots(&roots).unwrap()
        };
        match p.discriminant().order() {
            Some(k) if (p.degree() as u32 * k) / 2 < cap => return p,
            _ => continue,
        }
    }
}

/// Adds to one coefficient a term of order `k` with `2k > d·ν(Δ_P)`; returns `Q` and `ν(P − Q)`.
pub fn perturb(rng: &mut ChaCha8Rng, p: &MonicPoly, cap: u32) -> (MonicPoly, u32) {
    let d = p.degree() as u32;
    let nd = p.discriminant().order().unwrap();
    let k = rng.gen_range(d * nd / 2 + 1..=cap);
    let mut eps = random_poly(rng, cap, k, cap, 3);
    eps.add_term(vec![k, 0], gauss(rng));
    let j = rng.gen_range(1..=p.degree());
    let mut cs = p.coeffs().to_vec();
    cs[j - 1] = cs[j - 1].add(&eps);
    let q = MonicPoly::new(cs).unwrap();
    let k = p.diff_order(&q).unwrap().unwrap();
    (q, k)
}
