//! Analytic map germs as morphisms of truncated series rings: generic rank,
//! truncated kernels, preparation to normal form, and two classical
//! examples.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::hpoly::{exponents_of_degree, Exp};
use crate::linalg::{gq_mod, DetStrategy, KernelSolver, LinearSystem};
use crate::series::{PowerCache, TruncatedSeries};
use crate::weierstrass::MonicPoly;

/// `φ: ℂ{x₁..x_n} → ℂ{u₁..u_m}`, given by the images `φ(x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    phi: Vec<TruncatedSeries>,
    target: usize,
    cap: u32,
}

impl Morphism {
    pub fn new(phi: Vec<TruncatedSeries>) -> Result<Self> {
        let Some(first) = phi.first() else {
            return Err(PfError::InvalidInput("morphism needs at least one component".into()));
        };
        let target = first.nvars();
        let mut cap = first.cap();
        for (i, f) in phi.iter().enumerate() {
            if f.nvars() != target {
                return Err(PfError::VarCountMismatch(f.nvars(), target));
            }
            if !f.constant_term().is_zero() {
                return Err(PfError::ConstantTermNonzero(i));
            }
            cap = cap.min(f.cap());
        }
        let phi = phi.into_iter().map(|f| f.truncate(cap)).collect();
        Ok(Morphism { phi, target, cap })
    }

    pub fn source_vars(&self) -> usize {
        self.phi.len()
    }

    pub fn target_vars(&self) -> usize {
        self.target
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.phi
    }

    pub fn component(&self, i: usize) -> &TruncatedSeries {
        &self.phi[i]
    }

    /// `φ̂(f)` through `min(cap(f), cap(φ))`.
    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        f.subst(&self.phi)
    }

    /// `σ∘φ` for a substitution `u ↦ σ(u)` in the target.
    pub fn then(&self, sigma: &[TruncatedSeries]) -> Result<Morphism> {
        Morphism::new(self.phi.iter().map(|f| f.subst(sigma)).collect::<Result<_>>()?)
    }

    fn is_real(&self) -> bool {
        self.phi.iter().all(|f| f.terms().all(|(_, c)| c.is_real()))
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Largest `r` with an `r×r` Jacobian minor that is nonzero up to `cap − 1`.
pub fn generic_rank(phi: &Morphism, det: &dyn DetStrategy) -> usize {
    let jac: Vec<Vec<TruncatedSeries>> =
        phi.phi.iter().map(|f| (0..phi.target).map(|j| f.derivative(j)).collect()).collect();
    let n = phi.source_vars();
    for r in (1..=n.min(phi.target)).rev() {
        for rows in subsets(n, r) {
            for cols in subsets(phi.target, r) {
                let m: Vec<Vec<TruncatedSeries>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| jac[i][j].clone()).collect()).collect();
                if !det.det(&m).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

/// Monomials `x^a` with `|a| ≤ D`, graded, lexicographic within a degree.
pub fn kernel_columns(n: usize, deg_x: u32) -> Vec<Exp> {
    (0..=deg_x).flat_map(|d| exponents_of_degree(n, d)).collect()
}

/// The linear conditions on `c_a` for `Σ c_a φ^a ≡ 0` through degree `T`.
struct KernelSystem<'a> {
    phi: &'a Morphism,
    cols: Vec<Exp>,
    cap: u32,
    exact: RefCell<HashMap<Exp, TruncatedSeries>>,
}

impl KernelSystem<'_> {
    fn images(&self) -> Vec<TruncatedSeries> {
        self.phi.phi.iter().map(|f| f.truncate(self.cap)).collect()
    }

    fn exact_power(&self, e: &Exp) -> TruncatedSeries {
        if let Some(s) = self.exact.borrow().get(e) {
            return s.clone();
        }
        let imgs = self.images();
        let mut cache = PowerCache::new(&imgs, self.cap);
        let s = cache.monomial(e);
        self.exact.borrow_mut().insert(e.clone(), s.clone());
        s
    }

    /// Dense box of side `T + 1` in the target exponents.
    fn box_index(&self, e: &[u32]) -> usize {
        let side = self.cap as usize + 1;
        e.iter().rev().fold(0, |acc, &a| acc * side + a as usize)
    }
}

impl LinearSystem for KernelSystem<'_> {
    fn ncols(&self) -> usize {
        self.cols.len()
    }

    fn exact_rows(&self) -> Vec<Vec<Gq>> {
        let imgs = self.images();
        let mut cache = PowerCache::new(&imgs, self.cap);
        let cols: Vec<TruncatedSeries> = self.cols.iter().map(|e| cache.monomial(e)).collect();
        let mut rows = Vec::new();
        for d in 0..=self.cap {
            for b in exponents_of_degree(self.phi.target, d) {
                let row: Vec<Gq> = cols.iter().map(|s| s.coeff(&b)).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    fn modp_rows(&self, p: u64, s: u64) -> Option<Vec<Vec<u64>>> {
        let m = self.phi.target;
        let side = self.cap as usize + 1;
        let size = side.checked_pow(m as u32)?;
        let mut deg = vec![u32::MAX; size];
        let mut live = Vec::new();
        for d in 0..=self.cap {
            for b in exponents_of_degree(m, d) {
                let k = self.box_index(&b);
                deg[k] = d;
                live.push(k);
            }
        }
        let mut sparse: Vec<Vec<(usize, u32, u64)>> = Vec::new();
        for f in &self.phi.phi {
            let mut t = Vec::new();
            for (e, c) in f.terms() {
                let d: u32 = e.iter().sum();
                if d <= self.cap {
                    let v = gq_mod(c, p, s)?;
                    if v != 0 {
                        t.push((self.box_index(e), d, v));
                    }
                }
            }
            sparse.push(t);
        }
        let pos: HashMap<&Exp, usize> = self.cols.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut vals: Vec<Vec<u64>> = Vec::with_capacity(self.cols.len());
        for a in &self.cols {
            let mut out = vec![0u64; size];
            let Some(i) = (0..a.len()).filter(|&i| a[i] > 0).min_by_key(|&i| sparse[i].len()) else {
                out[0] = 1;
                vals.push(out);
                continue;
            };
            let mut prev = a.clone();
            prev[i] -= 1;
            let src = &vals[pos[&prev]];
            for &k in &live {
                let x = src[k];
                if x == 0 {
                    continue;
                }
                for &(off, d, c) in &sparse[i] {
                    if deg[k] + d <= self.cap {
                        let t = k + off;
                        out[t] = (out[t] + x * c % p) % p;
                    }
                }
            }
            vals.push(out);
        }
        let mut rows = Vec::new();
        for &k in &live {
            let row: Vec<u64> = vals.iter().map(|v| v[k]).collect();
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
        Some(rows)
    }

    fn is_real(&self) -> bool {
        self.phi.is_real()
    }

    fn verify(&self, v: &[Gq]) -> bool {
        let mut acc = TruncatedSeries::zero(self.phi.target, self.cap);
        for (c, e) in v.iter().zip(&self.cols) {
            if !c.is_zero() {
                acc = acc.add(&self.exact_power(e).scale(c));
            }
        }
        acc.is_zero()
    }
}

fn relation_from(cols: &[Exp], v: &[Gq], n: usize, deg_x: u32) -> TruncatedSeries {
    let mut r = TruncatedSeries::zero(n, deg_x);
    for (e, c) in cols.iter().zip(v) {
        if !c.is_zero() {
            r.add_term(e.clone(), c.clone());
        }
    }
    r
}

/// Basis (reduced echelon, graded columns) of the polynomials `K` of degree
/// `≤ D` with `K(φ) ≡ 0` through degree `T`.
pub fn kernel_search(
    phi: &Morphism,
    deg_x: u32,
    cap_u: u32,
    solver: &dyn KernelSolver,
) -> Result<Vec<TruncatedSeries>> {
    if cap_u > phi.cap {
        return Err(PfError::CapTooSmall(phi.cap, cap_u));
    }
    let cols = kernel_columns(phi.source_vars(), deg_x);
    let sys = KernelSystem { phi, cols: cols.clone(), cap: cap_u, exact: RefCell::new(HashMap::new()) };
    let basis = solver.nullspace(&sys)?;
    Ok(basis.iter().map(|v| relation_from(&cols, v, phi.source_vars(), deg_x)).collect())
}

/// `K(φ) ≡ 0` through degree `T`, by direct substitution.
pub fn relation_holds(k: &TruncatedSeries, phi: &Morphism, cap_u: u32) -> Result<bool> {
    let imgs: Vec<TruncatedSeries> = phi.phi.iter().map(|f| f.truncate(cap_u)).collect();
    Ok(k.extend_exact(cap_u).subst(&imgs)?.is_zero())
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub generic: usize,
    pub kernel_basis: Vec<TruncatedSeries>,
    pub deg_x: u32,
    pub cap_u: u32,
}

impl RankReport {
    pub fn evidence(&self) -> String {
        if self.kernel_basis.is_empty() {
            format!("no relation up to degree {} (capU {})", self.deg_x, self.cap_u)
        } else {
            format!(
                "{} independent relation(s) up to degree {} (capU {})",
                self.kernel_basis.len(),
                self.deg_x,
                self.cap_u
            )
        }
    }
}

pub fn rank_report(
    phi: &Morphism,
    deg_x: u32,
    cap_u: u32,
    solver: &dyn KernelSolver,
    det: &dyn DetStrategy,
) -> Result<RankReport> {
    let generic = generic_rank(phi, det);
    let kernel_basis = kernel_search(phi, deg_x, cap_u, solver)?;
    Ok(RankReport { generic, kernel_basis, deg_x, cap_u })
}

/// `x_i ↦ u^{M_i}`: each exponent `a` goes to `Mᵀa`.
pub fn monomial_map(f: &TruncatedSeries, m: &[Vec<u32>]) -> Result<TruncatedSeries> {
    let n = f.nvars();
    if m.len() != n {
        return Err(PfError::VarCountMismatch(m.len(), n));
    }
    let k = m[0].len();
    if m.iter().any(|r| r.len() != k || r.iter().all(|&x| x == 0)) {
        return Err(PfError::InvalidInput("exponent rows must be nonzero and of equal length".into()));
    }
    let imgs: Vec<TruncatedSeries> =
        m.iter().map(|r| TruncatedSeries::monomial(f.cap(), r.clone(), Gq::one())).collect();
    f.subst(&imgs)
}

// ------------------------------------------------------------ preparation

/// One step of the preparation pipeline.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    /// Renames the source variable `x_i` as `x₁`.
    SwapSource(usize),
    /// `u₂ ↦ u₂ + t·u₁`.
    LinearTarget(Gq),
    /// `u₂ ↦ u₁u₂`.
    Quadratic,
    /// `x₁ ↦ c·x₁`.
    ScaleSource(Gq),
    /// `x_i ↦ x_i^e`.
    PowerSource(usize, u32),
    /// Target isomorphism inverting `u₁ ↦ u₁·V(u)`.
    StraightenFirst,
    /// `x_j ↦ x_j − φ_j(x₁, 0)`.
    ShiftSource(usize),
    /// Target isomorphism `u₂ ↦ u₂·W(u)^{1/b}`.
    StraightenSecond(u32),
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::SwapSource(i) => write!(f, "swap x1 <-> x{}", i + 1),
            Transform::LinearTarget(t) => write!(f, "u2 -> u2 + ({t})*u1"),
            Transform::Quadratic => write!(f, "u2 -> u1*u2"),
            Transform::ScaleSource(c) => write!(f, "x1 -> ({c})*x1"),
            Transform::PowerSource(i, e) => write!(f, "x{} -> x{}^{e}", i + 1, i + 1),
            Transform::StraightenFirst => write!(f, "u1*V(u) -> u1"),
            Transform::ShiftSource(j) => write!(f, "x{} -> x{} - phi_{}(x1, 0)", j + 1, j + 1, j + 1),
            Transform::StraightenSecond(b) => write!(f, "u2*W(u)^(1/{b}) -> u2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalForm {
    /// `φ(x₁) = u₁`, `φ(x_j) = 0`.
    RankOne,
    /// `φ(x₁) = u₁`, `φ(x₂) = u₁^a·u₂^b`.
    Monomial { a: u32, b: u32 },
    /// `φ(x₁) = u₁`, `φ(x_j) = u₁^{a_j}·g_j(u)` with `g_j(0, u₂) ≠ 0`.
    Injective { a: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct Prepared {
    pub phi: Morphism,
    pub log: Vec<Transform>,
    pub form: NormalForm,
}

fn u(cap: u32, i: usize) -> TruncatedSeries {
    TruncatedSeries::var(2, cap, i)
}

fn apply_target(phi: &mut [TruncatedSeries], sigma: &[TruncatedSeries]) -> Result<()> {
    for f in phi.iter_mut() {
        *f = f.subst(sigma)?;
    }
    Ok(())
}

/// Inverse of `(u₁, u₂) ↦ (u₁·V, u₂)` as the substitution `u₁ ↦ G(u)`.
fn invert_first(v: &TruncatedSeries) -> Result<TruncatedSeries> {
    let cap = v.cap();
    let vinv = v.inv_unit()?;
    let mut g = u(cap, 0);
    for _ in 0..=cap {
        g = u(cap, 0).mul(&vinv.subst(&[g.clone(), u(cap, 1)])?);
    }
    Ok(g)
}

fn min_exp(f: &TruncatedSeries, i: usize) -> u32 {
    f.terms().map(|(e, _)| e[i]).min().unwrap_or(0)
}

/// Brings `φ` with two target variables to the normal forms of the
/// preparation lemma by the same sequence of moves as its proof.
pub fn prepare_morphism(phi: &Morphism, det: &dyn DetStrategy) -> Result<Prepared> {
    if phi.target != 2 {
        return Err(PfError::NotSupported("preparation needs two target variables".into()));
    }
    if phi.cap < 2 {
        return Err(PfError::CapTooSmall(phi.cap, 2));
    }
    let rank = generic_rank(phi, det);
    if rank == 0 {
        return Err(PfError::NotSupported("generic rank 0".into()));
    }
    let n = phi.source_vars();
    let mut comps = phi.phi.clone();
    let mut log = Vec::new();
    let first = comps.iter().position(|f| !f.is_zero()).expect("positive rank");
    if first != 0 {
        comps.swap(0, first);
        log.push(Transform::SwapSource(first));
    }
    if comps[0] != u(comps[0].cap(), 0) {
        let (e, init) = comps[0].order_initial();
        let e = e.expect("nonzero");
        let init = init.expect("nonzero");
        let r = init.dehomogenize();
        if r.coeff(0).is_zero() {
            let t = (1i64..).map(Gq::int).find(|t| !r.eval(t).is_zero()).unwrap();
            let cap = comps[0].cap();
            apply_target(&mut comps, &[u(cap, 0), u(cap, 1).add(&u(cap, 0).scale(&t))])?;
            log.push(Transform::LinearTarget(t));
        }
        if comps[0].div_monomial(&[e, 0]).is_none_or(|q| q.constant_term().is_zero()) {
            let cap = comps[0].cap();
            apply_target(&mut comps, &[u(cap, 0), u(cap, 0).mul(&u(cap, 1))])?;
            log.push(Transform::Quadratic);
        }
        let mut unit = comps[0].div_monomial(&[e, 0]).expect("divisible after the quadratic transform");
        let c0 = unit.constant_term();
        if !c0.is_one() {
            let s = c0.inv();
            comps[0] = comps[0].scale(&s);
            unit = unit.scale(&s);
            log.push(Transform::ScaleSource(s));
        }
        let v = unit.root_unit(e)?;
        if e > 1 {
            log.push(Transform::PowerSource(0, e));
        }
        let cap = v.cap() + 1;
        if !v.truncate(cap - 1).sub(&TruncatedSeries::one(2, cap - 1)).is_zero() {
            let g = invert_first(&v)?;
            let gc = g.cap();
            let sigma = [g, u(gc, 1)];
            for f in comps.iter_mut().skip(1) {
                *f = f.truncate(cap).subst(&sigma)?;
            }
            log.push(Transform::StraightenFirst);
        }
        let cap = comps[1..].iter().map(|f| f.cap()).min().unwrap_or(cap).min(cap);
        comps[0] = u(cap, 0);
        for f in comps.iter_mut() {
            *f = f.truncate(cap);
        }
    }
    for (j, f) in comps.iter_mut().enumerate().skip(1) {
        let mut s = TruncatedSeries::zero(2, f.cap());
        for (e, c) in f.terms() {
            if e[1] == 0 {
                s.add_term(e.clone(), c.clone());
            }
        }
        if !s.is_zero() {
            *f = f.sub(&s);
            log.push(Transform::ShiftSource(j));
        }
    }
    if rank == 1 {
        if comps[1..].iter().any(|f| !f.is_zero()) {
            return Err(PfError::NotSupported("rank-one normal form not reached at this cap".into()));
        }
        return Ok(Prepared { phi: Morphism::new(comps)?, log, form: NormalForm::RankOne });
    }
    if comps[1..].iter().any(|f| f.is_zero()) {
        return Err(PfError::NotSupported("a component vanishes: the morphism is not injective".into()));
    }
    if n == 2 {
        let mut f = comps[1].clone();
        let (a, b) = loop {
            let (a, b) = (min_exp(&f, 0), min_exp(&f, 1));
            if !f.coeff(&[a, b]).is_zero() {
                break (a, b);
            }
            let cap = f.cap();
            f = f.subst(&[u(cap, 0), u(cap, 0).mul(&u(cap, 1))])?;
            log.push(Transform::Quadratic);
            if f.order().is_none_or(|o| o >= cap) {
                return Err(PfError::PrecisionExhausted("quadratic transforms ran past the cap".into()));
            }
        };
        let w = f.div_monomial(&[a, b]).expect("minimal monomial divides");
        w.root_unit(b)?;
        if w.cap() > 0 && !w.sub(&TruncatedSeries::one(2, w.cap())).is_zero() {
            log.push(Transform::StraightenSecond(b));
        }
        let cap = f.cap();
        let out = vec![u(cap, 0), TruncatedSeries::monomial(cap, vec![a, b], Gq::one())];
        return Ok(Prepared { phi: Morphism::new(out)?, log, form: NormalForm::Monomial { a, b } });
    }
    let a = comps[1..].iter().map(|f| min_exp(f, 0)).collect();
    Ok(Prepared { phi: Morphism::new(comps)?, log, form: NormalForm::Injective { a } })
}

/// `P(λ₂x₂ + … + λ_nx_n, x₂, …, x_n, y)` in the variables `x₂..x_n`.
pub fn hyperplane_restrict(p: &MonicPoly, lambda: &[Gq]) -> Result<MonicPoly> {
    let n = p.nvars();
    if n < 2 || lambda.len() != n - 1 {
        return Err(PfError::InvalidInput(format!("need {} coefficients", n.saturating_sub(1))));
    }
    let cap = p.cap();
    let mut first = TruncatedSeries::zero(n - 1, cap);
    for (i, l) in lambda.iter().enumerate() {
        first = first.add(&TruncatedSeries::var(n - 1, cap, i).scale(l));
    }
    let mut imgs = vec![first];
    imgs.extend((0..n - 1).map(|i| TruncatedSeries::var(n - 1, cap, i)));
    p.subst_x(&imgs)
}

// ---------------------------------------------------------------- gallery

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn inv_factorial(i: u32) -> Gq {
    Gq::from_rational(BigRational::new(BigInt::one(), factorial(i)))
}

/// `φ = (u, uv, uv·e^v)`.
pub fn example_osgood(cap: u32) -> Morphism {
    let x1 = TruncatedSeries::monomial(cap, vec![1, 0], Gq::one());
    let x2 = TruncatedSeries::monomial(cap, vec![1, 1], Gq::one());
    let mut x3 = TruncatedSeries::zero(2, cap);
    for i in 0..=cap {
        x3.add_term(vec![1, 1 + i], inv_factorial(i));
    }
    Morphism::new(vec![x1, x2, x3]).expect("well-formed")
}

/// `ψ = (u, uv, uv·e^v, h)` with `h = Σ_{n ≤ N} (n+1)!·u^{n+1}v·Σ_{i>n} v^i/i!`.
pub fn example_gabrielov(cap: u32, n_max: u32) -> Result<Morphism> {
    if cap < n_max + 2 {
        return Err(PfError::CapTooSmall(cap, n_max + 2));
    }
    let osgood = example_osgood(cap);
    let mut h = TruncatedSeries::zero(2, cap);
    for n in 0..=n_max {
        let f = Gq::from_rational(BigRational::from_integer(factorial(n + 1)));
        for i in n + 1..=cap {
            if n + 2 + i > cap {
                break;
            }
            h.add_term(vec![n + 1, 1 + i], &f * &inv_factorial(i));
        }
    }
    let mut comps = osgood.phi;
    comps.push(h);
    Morphism::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Berkowitz, ModularSolver};

    #[test]
    fn ranks() {
        assert_eq!(generic_rank(&example_osgood(6), &Berkowitz), 2);
        let p = Morphism::new(vec![u(6, 0), u(6, 0).pow(2)]).unwrap();
        assert_eq!(generic_rank(&p, &Berkowitz), 1);
    }

    #[test]
    fn monomial_curve_relation() {
        let cap = 10;
        let u1 = TruncatedSeries::var(2, cap, 0);
        let u2 = TruncatedSeries::var(2, cap, 1);
        let p = Morphism::new(vec![u1.clone(), u1.mul(&u2), u1.mul(&u2).mul(&u2)]).unwrap();
        let basis = kernel_search(&p, 2, 8, &ModularSolver::default()).unwrap();
        assert_eq!(basis.len(), 1);
        let k = &basis[0];
        assert_eq!(k.coeff(&[0, 2, 0]), -k.coeff(&[1, 0, 1]));
        assert!(relation_holds(k, &p, 10).unwrap());
    }

    #[test]
    fn prepared_forms() {
        let cap = 8;
        let p = Morphism::new(vec![u(cap, 0), TruncatedSeries::monomial(cap, vec![2, 1], Gq::one())]).unwrap();
        let r = prepare_morphism(&p, &Berkowitz).unwrap();
        assert!(r.log.is_empty());
        assert_eq!(r.form, NormalForm::Monomial { a: 2, b: 1 });

        let p = Morphism::new(vec![u(cap, 0).pow(2), u(cap, 1)]).unwrap();
        let r = prepare_morphism(&p, &Berkowitz).unwrap();
        assert_eq!(r.form, NormalForm::Monomial { a: 0, b: 1 });
        assert_eq!(r.log, vec![Transform::PowerSource(0, 2)]);

        let p = Morphism::new(vec![u(cap, 0), u(cap, 0).pow(3)]).unwrap();
        let r = prepare_morphism(&p, &Berkowitz).unwrap();
        assert_eq!(r.form, NormalForm::RankOne);
        assert!(r.phi.component(1).is_zero());
    }
}
