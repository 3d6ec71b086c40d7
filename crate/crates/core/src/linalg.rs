//! Exact linear algebra: determinants over commutative rings, and
//! nullspaces over ℚ(i) (fraction-free or multi-modular).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{PfError, Result};
use crate::field::{GaussInt, Gq};
use crate::series::TruncatedSeries;
use crate::upoly::UPoly;

/// Minimal commutative ring interface for the division-free algorithms.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn r_add(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_is_zero(&self) -> bool;
}

impl Ring for Gq {
    fn zero_like(&self) -> Self {
        Gq::zero()
    }
    fn one_like(&self) -> Self {
        Gq::one()
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for UPoly {
    fn zero_like(&self) -> Self {
        UPoly::zero()
    }
    fn one_like(&self) -> Self {
        UPoly::constant(Gq::one())
    }
    fn r_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn r_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for TruncatedSeries {
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(self.nvars(), self.cap())
    }
    fn one_like(&self) -> Self {
        TruncatedSeries::one(self.nvars(), self.cap())
    }
    fn r_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn r_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Determinant by Berkowitz's division-free algorithm.
pub fn det_berkowitz<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let vect = charpoly_berkowitz(m);
    if n % 2 == 0 {
        vect[n].clone()
    } else {
        vect[n].zero_like().r_sub(&vect[n])
    }
}

/// Coefficients of `det(λ − A)`, highest first.
pub fn charpoly_berkowitz<R: Ring>(m: &[Vec<R>]) -> Vec<R> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let one = m[0][0].one_like();
    let zero = m[0][0].zero_like();
    // coefficients of det(λ − A_r), highest first
    let mut vect = vec![one.clone(), zero.r_sub(&m[0][0])];
    for r in 1..n {
        // C = column above the diagonal, R = row left of it
        let col: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        let mut t = vec![one.clone(), zero.r_sub(&m[r][r])];
        let mut cur = col;
        for k in 0..r {
            let rc = (0..r).fold(zero.clone(), |acc, j| acc.r_add(&m[r][j].r_mul(&cur[j])));
            t.push(zero.r_sub(&rc));
            if k + 1 < r {
                cur = (0..r).map(|i| (0..r).fold(zero.clone(), |acc, j| acc.r_add(&m[i][j].r_mul(&cur[j])))).collect();
            }
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = zero.clone();
            for j in 0..=i.min(r) {
                if i - j < t.len() && !vect[j].r_is_zero() {
                    acc = acc.r_add(&t[i - j].r_mul(&vect[j]));
                }
            }
            next.push(acc);
        }
        vect = next;
    }
    vect
}

/// Adjugate matrix, from the characteristic polynomial.
pub fn adjugate<R: Ring>(m: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = m.len();
    let c = charpoly_berkowitz(m);
    let zero = m[0][0].zero_like();
    let ident = |v: &R| -> Vec<Vec<R>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { v.clone() } else { zero.clone() }).collect()).collect()
    };
    // Horner: B = A^{n-1} + c1 A^{n-2} + ... + c_{n-1}
    let mut b = ident(&c[0]);
    for ck in c.iter().take(n).skip(1) {
        let mut nb = ident(ck);
        for i in 0..n {
            for j in 0..n {
                let mut acc = nb[i][j].clone();
                for (k, row) in m.iter().enumerate() {
                    if !b[i][k].r_is_zero() && !row[j].r_is_zero() {
                        acc = acc.r_add(&b[i][k].r_mul(&row[j]));
                    }
                }
                nb[i][j] = acc;
            }
        }
        b = nb;
    }
    if n % 2 == 0 {
        b.iter().map(|r| r.iter().map(|v| zero.r_sub(v)).collect()).collect()
    } else {
        b
    }
}

/// Determinant by cofactor expansion, memoized over column subsets.
pub fn det_laplace<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n > 0 && n < 24 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let mut memo: HashMap<u32, R> = HashMap::new();
    laplace_rec(m, 0, &mut memo)
}

fn laplace_rec<R: Ring>(m: &[Vec<R>], used: u32, memo: &mut HashMap<u32, R>) -> R {
    let n = m.len();
    let row = used.count_ones() as usize;
    if row == n {
        return m[0][0].one_like();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = m[0][0].zero_like();
    let mut free_before = 0;
    for j in 0..n {
        if used & (1 << j) != 0 {
            continue;
        }
        if !m[row][j].r_is_zero() {
            let minor = laplace_rec(m, used | (1 << j), memo);
            let t = m[row][j].r_mul(&minor);
            acc = if free_before % 2 == 0 { acc.r_add(&t) } else { acc.r_sub(&t) };
        }
        free_before += 1;
    }
    memo.insert(used, acc.clone());
    acc
}

/// A named determinant algorithm for series matrices.
pub trait DetStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn det(&self, m: &[Vec<TruncatedSeries>]) -> TruncatedSeries;
}

pub struct Berkowitz;
pub struct Laplace;

impl DetStrategy for Berkowitz {
    fn name(&self) -> &'static str {
        "berkowitz"
    }
    fn det(&self, m: &[Vec<TruncatedSeries>]) -> TruncatedSeries {
        det_berkowitz(m)
    }
}

impl DetStrategy for Laplace {
    fn name(&self) -> &'static str {
        "laplace"
    }
    fn det(&self, m: &[Vec<TruncatedSeries>]) -> TruncatedSeries {
        det_laplace(m)
    }
}

/// A homogeneous linear system `A·c = 0` over ℚ(i), presented lazily so a
/// solver can ask for exact rows or for reductions modulo a prime.
pub trait LinearSystem {
    fn ncols(&self) -> usize;
    /// All rows, exactly.
    fn exact_rows(&self) -> Vec<Vec<Gq>>;
    /// All rows reduced mod `p` with `i ↦ s` (`s² = −1`); `None` when some
    /// denominator vanishes mod `p`.
    fn modp_rows(&self, p: u64, s: u64) -> Option<Vec<Vec<u64>>>;
    /// Whether every entry is real.
    fn is_real(&self) -> bool;
    /// Exact check that `v` solves the system.
    fn verify(&self, v: &[Gq]) -> bool;
}

/// A named nullspace algorithm. Returns the reduced row echelon basis of
/// the nullspace in the system's column order.
pub trait KernelSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn nullspace(&self, sys: &dyn LinearSystem) -> Result<Vec<Vec<Gq>>>;
}

/// Fraction-free elimination over ℤ[i], exact throughout.
pub struct BareissSolver;

/// Multi-modular elimination with rational reconstruction, certified by an
/// exact substitution check.
pub struct ModularSolver {
    pub max_primes: usize,
}

impl Default for ModularSolver {
    fn default() -> Self {
        ModularSolver { max_primes: 16 }
    }
}

impl KernelSolver for BareissSolver {
    fn name(&self) -> &'static str {
        "bareiss"
    }
    fn nullspace(&self, sys: &dyn LinearSystem) -> Result<Vec<Vec<Gq>>> {
        Ok(nullspace_exact(&sys.exact_rows(), sys.ncols()))
    }
}

impl KernelSolver for ModularSolver {
    fn name(&self) -> &'static str {
        "modular"
    }
    fn nullspace(&self, sys: &dyn LinearSystem) -> Result<Vec<Vec<Gq>>> {
        nullspace_modular(sys, self.max_primes)
    }
}

/// Reduced row echelon form over ℚ(i); returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Gq>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (head, tail) = if i < r { rows.split_at_mut(r) } else { rows.split_at_mut(i) };
                let (src, dst) = if i < r { (&tail[0], &mut head[i]) } else { (&head[r], &mut tail[0]) };
                for j in c..ncols {
                    if !src[j].is_zero() {
                        dst[j] = &dst[j] - &(&f * &src[j]);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Nullspace basis read off a reduced matrix, then itself put in reduced
/// echelon form.
fn nullspace_from_rref(rows: &[Vec<Gq>], pivots: &[usize], ncols: usize) -> Vec<Vec<Gq>> {
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![Gq::zero(); ncols];
        v[f] = Gq::one();
        for (r, &c) in pivots.iter().enumerate() {
            if !rows[r][f].is_zero() {
                v[c] = -&rows[r][f];
            }
        }
        basis.push(v);
    }
    rref(&mut basis, ncols);
    basis
}

/// Exact nullspace via fraction-free (Bareiss) forward elimination over
/// Gaussian integers.
pub fn nullspace_exact(rows: &[Vec<Gq>], ncols: usize) -> Vec<Vec<Gq>> {
    let mut a: Vec<Vec<GaussInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
            let lq = Gq::from_rational(BigRational::from_integer(l));
            r.iter().map(|x| GaussInt::from_gq(&(x * &lq)).unwrap()).collect()
        })
        .collect();
    let mut prev = GaussInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let piv = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = piv[c].mul(&row[j]).sub(&f.mul(&piv[j]));
                row[j] = if v.is_zero() { v } else { v.div_exact(&prev) };
            }
            row[c] = GaussInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    a.truncate(r);
    let mut q: Vec<Vec<Gq>> = a.iter().map(|row| row.iter().map(|x| x.to_gq()).collect()).collect();
    let pivots = rref(&mut q, ncols);
    nullspace_from_rref(&q, &pivots, ncols)
}

// ---------------------------------------------------------------- mod p

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `p ≡ 1 (mod 4)` just below `2^31`, descending, with a square root
/// of −1.
pub fn gaussian_primes() -> impl Iterator<Item = (u64, u64)> {
    let mut n = (1u64 << 31) - 1;
    std::iter::from_fn(move || loop {
        n -= 1;
        if n % 4 == 1 && is_prime(n) {
            let p = n;
            let mut g = 2;
            loop {
                let s = pow_mod(g, (p - 1) / 4, p);
                if mul_mod(s, s, p) == p - 1 {
                    return Some((p, s));
                }
                g += 1;
            }
        }
    })
}

/// Image of a Gaussian rational mod `p` under `i ↦ s`.
pub fn gq_mod(x: &Gq, p: u64, s: u64) -> Option<u64> {
    let r = rat_mod(&x.re, p)?;
    let i = rat_mod(&x.im, p)?;
    Some((r + mul_mod(i, s, p)) % p)
}

fn rat_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let d = x.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    Some(mul_mod(n, inv_mod(d, p), p))
}

/// Reduced echelon form mod `p`; returns pivot columns.
pub fn rref_mod(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut piv_row: Vec<Option<usize>> = vec![None; ncols];
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for mut row in rows {
        let mut lead = None;
        for c in 0..ncols {
            if row[c] == 0 {
                continue;
            }
            match piv_row[c] {
                Some(b) => {
                    let f = p - row[c];
                    let src = &basis[b];
                    for j in c..ncols {
                        if src[j] != 0 {
                            row[j] = (row[j] + f * src[j]) % p;
                        }
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        if let Some(c) = lead {
            let inv = inv_mod(row[c], p);
            for x in row[c..].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            piv_row[c] = Some(basis.len());
            basis.push(row);
            if basis.len() == ncols {
                break;
            }
        }
    }
    // back substitution, latest pivot first
    let mut order: Vec<(usize, usize)> = piv_row.iter().enumerate().filter_map(|(c, r)| r.map(|r| (c, r))).collect();
    order.sort();
    for idx in (0..order.len()).rev() {
        let (c, b) = order[idx];
        let src = basis[b].clone();
        for &(_, other) in order[..idx].iter() {
            let f = basis[other][c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            let dst = &mut basis[other];
            for j in c..ncols {
                if src[j] != 0 {
                    dst[j] = (dst[j] + f * src[j]) % p;
                }
            }
        }
    }
    let rows: Vec<Vec<u64>> = order.iter().map(|&(_, b)| basis[b].clone()).collect();
    let pivots = order.iter().map(|&(c, _)| c).collect();
    (rows, pivots)
}

/// Nullspace mod `p` in reduced echelon form, with its pivot columns.
pub fn nullspace_mod(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let (r, pivots) = rref_mod(rows, ncols, p);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![0; ncols];
        v[f] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            if r[i][f] != 0 {
                v[c] = p - r[i][f];
            }
        }
        basis.push(v);
    }
    rref_mod(basis, ncols, p)
}

/// Rational number `n/d ≡ a (mod m)` with `|n|, d ≤ √(m/2)`, if any.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let g = r1.gcd(&t1);
    if !g.is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    // x ≡ a (m), x ≡ b (p)
    let pb = BigInt::from(p);
    let am = a.mod_floor(&pb).to_u64().unwrap();
    let mm = m.mod_floor(&pb).to_u64().unwrap();
    let k = mul_mod((b + p - am) % p, inv_mod(mm, p), p);
    a + m * BigInt::from(k)
}

struct Accum {
    pivots: Vec<usize>,
    modulus: BigInt,
    re: Vec<Vec<BigInt>>,
    im: Vec<Vec<BigInt>>,
}

fn nullspace_modular(sys: &dyn LinearSystem, max_primes: usize) -> Result<Vec<Vec<Gq>>> {
    let n = sys.ncols();
    let real = sys.is_real();
    let mut acc: Option<Accum> = None;
    let mut used = 0;
    for (p, s) in gaussian_primes() {
        if used >= max_primes {
            break;
        }
        used += 1;
        let Some(rows) = sys.modp_rows(p, s) else { continue };
        let (plus, piv) = nullspace_mod(rows, n, p);
        let (re, im): (Vec<Vec<u64>>, Vec<Vec<u64>>) = if real {
            (plus, vec![vec![0; n]; piv.len()])
        } else {
            let Some(rows2) = sys.modp_rows(p, p - s) else { continue };
            let (minus, piv2) = nullspace_mod(rows2, n, p);
            if piv2 != piv {
                continue;
            }
            let half = inv_mod(2, p);
            let half_s = inv_mod(mul_mod(2, s, p), p);
            let re = plus
                .iter()
                .zip(&minus)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| mul_mod((x + y) % p, half, p)).collect())
                .collect();
            let im = plus
                .iter()
                .zip(&minus)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| mul_mod((x + p - y) % p, half_s, p)).collect())
                .collect();
            (re, im)
        };
        if piv.is_empty() {
            // full column rank mod p implies full rank over ℚ(i)
            return Ok(Vec::new());
        }
        let replace = match &acc {
            None => true,
            Some(a) => piv.len() < a.pivots.len() || (piv.len() == a.pivots.len() && piv < a.pivots),
        };
        if replace {
            acc = Some(Accum {
                pivots: piv,
                modulus: BigInt::from(p),
                re: re.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                im: im.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            });
        } else {
            let a = acc.as_mut().unwrap();
            if piv != a.pivots {
                continue;
            }
            for (dst, src) in a.re.iter_mut().zip(&re).chain(a.im.iter_mut().zip(&im)) {
                for (x, &y) in dst.iter_mut().zip(src) {
                    *x = crt(x, &a.modulus, y, p);
                }
            }
            a.modulus *= BigInt::from(p);
        }
        let a = acc.as_ref().unwrap();
        if let Some(basis) = reconstruct(a) {
            if basis.iter().all(|v| sys.verify(v)) {
                return Ok(basis);
            }
        }
    }
    Err(PfError::PrecisionExhausted(format!("modular nullspace did not certify after {max_primes} primes")))
}

fn reconstruct(a: &Accum) -> Option<Vec<Vec<Gq>>> {
    let mut out = Vec::new();
    for (re, im) in a.re.iter().zip(&a.im) {
        let mut v = Vec::with_capacity(re.len());
        for (x, y) in re.iter().zip(im) {
            let r = if x.is_zero() { BigRational::zero() } else { rational_reconstruct(x, &a.modulus)? };
            let i = if y.is_zero() { BigRational::zero() } else { rational_reconstruct(y, &a.modulus)? };
            v.push(Gq::new(r, i));
        }
        out.push(v);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Gq>> {
        rows.iter().map(|r| r.iter().map(|&x| Gq::int(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let a = m(&[&[2, -1, 0, 3], &[1, 4, 2, -2], &[0, 5, -3, 1], &[7, 0, 1, 1]]);
        let b = det_berkowitz(&a);
        let l = det_laplace(&a);
        assert_eq!(b, l);
        assert_eq!(b, Gq::int(343));
    }

    #[test]
    fn small_dets() {
        assert_eq!(det_berkowitz(&m(&[&[5]])), Gq::int(5));
        assert_eq!(det_berkowitz(&m(&[&[1, 2], &[3, 4]])), Gq::int(-2));
        assert_eq!(det_laplace(&m(&[&[1, 2], &[3, 4]])), Gq::int(-2));
    }

    #[test]
    fn adjugate_inverts() {
        for a in [m(&[&[1, 2], &[3, 4]]), m(&[&[2, -1, 0], &[1, 4, 2], &[0, 5, -3]])] {
            let d = det_berkowitz(&a);
            let adj = adjugate(&a);
            let n = a.len();
            for i in 0..n {
                for j in 0..n {
                    let s = (0..n).fold(Gq::zero(), |acc, k| &acc + &(&a[i][k] * &adj[k][j]));
                    assert_eq!(s, if i == j { d.clone() } else { Gq::zero() });
                }
            }
        }
    }

    struct Dense(Vec<Vec<Gq>>, usize);

    impl LinearSystem for Dense {
        fn ncols(&self) -> usize {
            self.1
        }
        fn exact_rows(&self) -> Vec<Vec<Gq>> {
            self.0.clone()
        }
        fn modp_rows(&self, p: u64, s: u64) -> Option<Vec<Vec<u64>>> {
            self.0.iter().map(|r| r.iter().map(|x| gq_mod(x, p, s)).collect()).collect()
        }
        fn is_real(&self) -> bool {
            self.0.iter().flatten().all(|x| x.is_real())
        }
        fn verify(&self, v: &[Gq]) -> bool {
            self.0.iter().all(|r| r.iter().zip(v).fold(Gq::zero(), |a, (x, y)| &a + &(x * y)).is_zero())
        }
    }

    #[test]
    fn solvers_agree() {
        let rows = vec![
            vec![Gq::int(1), Gq::int(2), Gq::gauss(0, 1), Gq::frac(1, 3)],
            vec![Gq::int(2), Gq::int(4), Gq::gauss(0, 2), Gq::frac(2, 3)],
            vec![Gq::int(0), Gq::int(1), Gq::int(-1), Gq::frac(5, 7)],
        ];
        let sys = Dense(rows, 4);
        let a = BareissSolver.nullspace(&sys).unwrap();
        let b = ModularSolver::default().nullspace(&sys).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a, b);
        for v in &a {
            assert!(sys.verify(v));
        }
    }

    #[test]
    fn reconstruct_fraction() {
        let m = BigInt::from(1_000_003u64);
        let x = BigRational::new(BigInt::from(-17), BigInt::from(29));
        let a = (x.numer() * BigInt::from(inv_mod(29, 1_000_003))).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(x));
    }
}
