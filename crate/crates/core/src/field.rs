//! Gaussian rationals ℚ(i), the exact coefficient field.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gq {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Gq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gq { re, im }
    }

    pub fn int(n: i64) -> Self {
        Gq { re: rat(n), im: BigRational::zero() }
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Gq { re: BigRational::new(BigInt::from(p), BigInt::from(q)), im: BigRational::zero() }
    }

    pub fn gauss(re: i64, im: i64) -> Self {
        Gq { re: rat(re), im: rat(im) }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Gq { re: r, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Gq::gauss(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Gq");
        let n = self.norm();
        Gq { re: &self.re / &n, im: -&self.im / &n }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Gq::one();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow((-e) as u32)
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Common denominator of both parts (positive integer).
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Exact `e`-th root in ℚ(i), if one exists. Among several roots the one
    /// closest to the principal complex root is returned.
    pub fn nth_root(&self, e: u32) -> Option<Gq> {
        assert!(e >= 1);
        if self.is_zero() || e == 1 {
            return Some(self.clone());
        }
        let roots = self.all_nth_roots(e);
        if roots.is_empty() {
            return None;
        }
        let principal = self.to_c64().powf(1.0 / e as f64);
        roots.into_iter().min_by(|a, b| {
            let da = (a.to_c64() - principal).norm();
            let db = (b.to_c64() - principal).norm();
            da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
        })
    }

    /// Every `e`-th root of `self` lying in ℚ(i).
    pub fn all_nth_roots(&self, e: u32) -> Vec<Gq> {
        if self.is_zero() {
            return vec![Gq::zero()];
        }
        // z = Z/D with D the common denominator; (Z/D)^e = w  <=>  Z^e = w·D^e,
        // and a root of a Gaussian integer lying in ℚ(i) is a Gaussian integer.
        let d = self.denom_lcm();
        let scale = Gq::from_rational(BigRational::from_integer(d.clone()));
        let w = self * &scale.pow(e);
        let wi = GaussInt::from_gq(&w).expect("integral after scaling");
        let mut out: Vec<Gq> = Vec::new();
        for cand in wi.approx_nth_roots(e) {
            for dr in -1..=1i64 {
                for di in -1..=1i64 {
                    let c = GaussInt { re: &cand.re + dr, im: &cand.im + di };
                    if c.pow(e) == wi {
                        let g = &c.to_gq() / &scale;
                        if !out.contains(&g) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Parses `"p"` or `"p/q"`.
    pub fn parse_rational(s: &str) -> Option<BigRational> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        } else {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }

    pub fn parse_pair(re: &str, im: &str) -> Option<Gq> {
        Some(Gq { re: Gq::parse_rational(re)?, im: Gq::parse_rational(im)? })
    }

    pub fn rational_string(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators and denominators together
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = (nb.max(db) - 60).max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if n >= 0.0 {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

impl Zero for Gq {
    fn zero() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gq {
    fn one() -> Self {
        Gq { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = Gq::rational_string(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im = Gq::rational_string(&self.im.abs());
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let s = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{s}{im}i")
        } else {
            write!(f, "({re}{sign}{im}i)")
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: &'a Gq) -> Gq {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Gq> for &'a Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                self.$m(&o)
            }
        }
    };
}

impl<'a, 'b> Add<&'b Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, o: &'b Gq) -> Gq {
        Gq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}
impl<'a, 'b> Sub<&'b Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, o: &'b Gq) -> Gq {
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}
impl<'a, 'b> Mul<&'b Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, o: &'b Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Gq { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}
impl<'a, 'b> Div<&'b Gq> for &'a Gq {
    type Output = Gq;
    fn div(self, o: &'b Gq) -> Gq {
        if o.im.is_zero() {
            assert!(!o.re.is_zero(), "division by zero in Gq");
            return Gq { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv()
    }
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re, im: -self.im }
    }
}
impl<'a> Neg for &'a Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
}
impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl AddAssign<Gq> for Gq {
    fn add_assign(&mut self, o: Gq) {
        self.re += o.re;
        self.im += o.im;
    }
}
impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, o: &Gq) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl MulAssign<&Gq> for Gq {
    fn mul_assign(&mut self, o: &Gq) {
        *self = &*self * o;
    }
}

/// Gaussian integer `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    pub fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn from_gq(g: &Gq) -> Option<Self> {
        if g.re.denom().is_one() && g.im.denom().is_one() {
            Some(GaussInt { re: g.re.numer().clone(), im: g.im.numer().clone() })
        } else {
            None
        }
    }

    pub fn to_gq(&self) -> Gq {
        Gq { re: BigRational::from_integer(self.re.clone()), im: BigRational::from_integer(self.im.clone()) }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient; panics when `o` does not divide `self`.
    pub fn div_exact(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&o.re);
            let (qi, ri) = self.im.div_rem(&o.re);
            assert!(rr.is_zero() && ri.is_zero(), "inexact Gaussian division");
            return GaussInt { re: qr, im: qi };
        }
        let n = o.norm();
        let num = self.mul(&GaussInt { re: o.re.clone(), im: -o.im.clone() });
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        assert!(rr.is_zero() && ri.is_zero(), "inexact Gaussian division");
        GaussInt { re: qr, im: qi }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussInt::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rounded approximations of all complex `e`-th roots.
    fn approx_nth_roots(&self, e: u32) -> Vec<GaussInt> {
        // Newton refinement in exact arithmetic from a floating start, so that
        // large inputs are handled without relying on f64 range.
        let bits = self.re.bits().max(self.im.bits()) as i64;
        let shift = ((bits - 900).max(0) / e as i64 + 1) * e as i64;
        let shift = if bits > 900 { shift } else { 0 };
        let scaled = GaussInt { re: &self.re >> shift as usize, im: &self.im >> shift as usize };
        let z = Complex64::new(scaled.re.to_f64().unwrap_or(0.0), scaled.im.to_f64().unwrap_or(0.0));
        let r0 = z.powf(1.0 / e as f64) * 2f64.powi(32);
        let back =
            Gq::from_rational(BigRational::new(BigInt::one() << (shift / e as i64) as usize, BigInt::one() << 32usize));
        let w = self.to_gq();
        let mut out = Vec::new();
        for k in 0..e {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / e as f64;
            let c = r0 * Complex64::new(ang.cos(), ang.sin());
            let mut g = round_gq(&(&complex_to_gq(c) * &back));
            if bits > 40 {
                for _ in 0..(2 + (bits as f64).log2() as usize) {
                    if g.is_zero() {
                        break;
                    }
                    let gp = g.pow(e - 1);
                    let step = &(&(&gp * &g) - &w) / &(&Gq::int(e as i64) * &gp);
                    g = round_gq(&(&g - &step));
                }
            }
            out.push(GaussInt::from_gq(&round_gq(&g)).unwrap());
        }
        out
    }
}

fn complex_to_gq(c: Complex64) -> Gq {
    let f = |x: f64| -> BigRational {
        if !x.is_finite() {
            return BigRational::zero();
        }
        BigRational::from_float(x.round()).unwrap_or_else(BigRational::zero)
    };
    Gq { re: f(c.re), im: f(c.im) }
}

fn round_rat(r: &BigRational) -> BigRational {
    BigRational::from_integer(r.round().to_integer())
}

fn round_gq(g: &Gq) -> Gq {
    Gq { re: round_rat(&g.re), im: round_rat(&g.im) }
}

/// Sign of a big integer as -1, 0, 1.
pub fn sign_of(b: &BigInt) -> i32 {
    match b.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = Gq::gauss(1, 2);
        let b = Gq::gauss(3, -1);
        assert_eq!(&a * &b, Gq::gauss(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(Gq::i().pow(2), Gq::int(-1));
        assert_eq!(a.inv() * a.clone(), Gq::one());
    }

    #[test]
    fn roots() {
        assert_eq!(Gq::int(4).nth_root(2), Some(Gq::int(2)));
        assert_eq!(Gq::int(-1).nth_root(2), Some(Gq::i()));
        assert_eq!(Gq::int(2).nth_root(2), None);
        assert_eq!(Gq::frac(9, 4).nth_root(2), Some(Gq::frac(3, 2)));
        let z = Gq::gauss(3, 4);
        assert_eq!(z.nth_root(2).unwrap().pow(2), z);
        assert_eq!(Gq::int(1).all_nth_roots(4).len(), 4);
        assert_eq!(Gq::int(1).all_nth_roots(3), vec![Gq::int(1)]);
        assert_eq!(Gq::int(-8).nth_root(3), Some(Gq::int(-2)));
        let big = Gq::from_rational(BigRational::from_integer(BigInt::from(10).pow(400)));
        assert_eq!(big.nth_root(2).unwrap().pow(2), big);
    }

    #[test]
    fn display() {
        assert_eq!(Gq::frac(-3, 6).to_string(), "-1/2");
        assert_eq!(Gq::gauss(0, -2).to_string(), "-2i");
    }
}
