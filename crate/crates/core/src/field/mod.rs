//! Exact arithmetic in the real cyclotomic field K = Q(a), a = 2cos(π/N).
//!
//! Elements are rational coefficient vectors modulo the minimal polynomial of
//! `a`. Signs are decided at the distinguished real embedding (the largest
//! real root of the minimal polynomial) by rational interval evaluation,
//! refining the isolating interval until the value interval excludes zero.

mod ext;
mod poly;
mod zint;

pub use ext::{ExtContext, ExtElement, ExtField};
pub use poly::{cyclotomic, palindromic_reduction};
pub use zint::{eval_mod, pow_mod, IntPoly};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use poly::{eval_int_sign, euler_phi, qpoly_inverse_mod, sign_of, trim};

/// Bits of precision of the isolating interval stored in the context.
const INITIAL_PRECISION_BITS: u32 = 96;
/// Bisection steps added per refinement round when a sign is not yet decided.
const REFINE_STEP_BITS: u32 = 64;

pub type Field = Arc<FieldContext>;

/// The trace field Q(2cos(π/N)) for odd N ≥ 5.
#[derive(Debug)]
pub struct FieldContext {
    n: u32,
    degree: usize,
    minpoly: Vec<BigInt>,
    minpoly_q: Vec<BigRational>,
    /// Level j isolates the root to INITIAL_PRECISION_BITS + j·REFINE_STEP_BITS
    /// bisections; grown on demand and shared by all elements.
    levels: RwLock<Vec<Arc<PowerLevel>>>,
}

/// Power bounds of the root at one refinement level. `num_lo[k] / den` and
/// `num_hi[k] / den` are lo^k and hi^k over a common positive denominator.
#[derive(Debug)]
struct PowerLevel {
    root: RootInterval,
    lo_pows: Vec<BigRational>,
    hi_pows: Vec<BigRational>,
    num_lo: Vec<BigInt>,
    num_hi: Vec<BigInt>,
}

impl PowerLevel {
    fn new(root: RootInterval, degree: usize) -> Self {
        let (lo_pows, hi_pows) = root.powers(degree);
        let den = lo_pows
            .iter()
            .chain(&hi_pows)
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scale = |r: &BigRational| r.numer() * (&den / r.denom());
        let num_lo = lo_pows.iter().map(scale).collect();
        let num_hi = hi_pows.iter().map(scale).collect();
        PowerLevel {
            root,
            lo_pows,
            hi_pows,
            num_lo,
            num_hi,
        }
    }
}

/// A rational interval isolating the distinguished root, together with the
/// sign of the minimal polynomial at its lower end.
#[derive(Debug, Clone)]
struct RootInterval {
    lo: BigRational,
    hi: BigRational,
    sign_lo: i32,
}

impl RootInterval {
    fn bisect(&mut self, minpoly: &[BigInt], steps: u32) {
        let two = BigRational::from_integer(BigInt::from(2));
        for _ in 0..steps {
            let mid = (&self.lo + &self.hi) / &two;
            let s = eval_int_sign(minpoly, &mid);
            assert!(s != 0, "irreducible minimal polynomial has a rational root");
            if s == self.sign_lo {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    fn powers(&self, degree: usize) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut lo = Vec::with_capacity(degree);
        let mut hi = Vec::with_capacity(degree);
        let (mut l, mut h) = (BigRational::one(), BigRational::one());
        for _ in 0..degree {
            lo.push(l.clone());
            hi.push(h.clone());
            l *= &self.lo;
            h *= &self.hi;
        }
        (lo, hi)
    }
}

/// Builds the context for N (odd, ≥ 5).
///
/// The minimal polynomial of `a` comes from Φ_{2N} by palindromic reduction;
/// the distinguished root is isolated by a sign-change scan of (-2, 2)
/// followed by rational bisection.
pub fn make_field(n: u32) -> Result<Field> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidOrder(n));
    }
    let phi = cyclotomic(2 * n as u64);
    let minpoly = palindromic_reduction(&phi);
    let degree = minpoly.len() - 1;
    debug_assert_eq!(degree as u64, euler_phi(2 * n as u64) / 2);

    let mut root = isolate_largest_root(&minpoly, degree, n);
    root.bisect(&minpoly, INITIAL_PRECISION_BITS);
    let minpoly_q = minpoly.iter().cloned().map(BigRational::from_integer).collect();
    let level0 = Arc::new(PowerLevel::new(root, degree));
    Ok(Arc::new(FieldContext {
        n,
        degree,
        minpoly,
        minpoly_q,
        levels: RwLock::new(vec![level0]),
    }))
}

fn isolate_largest_root(minpoly: &[BigInt], degree: usize, n: u32) -> RootInterval {
    let mut steps_per_unit = 8 * (n as i64) * (n as i64);
    loop {
        let mut brackets = Vec::new();
        let start = BigRational::from_integer(BigInt::from(-2));
        let step = BigRational::new(BigInt::one(), BigInt::from(steps_per_unit));
        let mut x = start;
        let mut sx = eval_int_sign(minpoly, &x);
        for _ in 0..(4 * steps_per_unit) {
            let y = &x + &step;
            let sy = eval_int_sign(minpoly, &y);
            if sy != 0 && sx != 0 && sx != sy {
                brackets.push((x.clone(), y.clone(), sx));
            }
            // roots of an irreducible polynomial of degree ≥ 2 are irrational,
            // so no grid point is ever a root
            assert!(sy != 0);
            x = y;
            sx = sy;
        }
        if brackets.len() == degree {
            let (lo, hi, sign_lo) = brackets.pop().unwrap();
            return RootInterval { lo, hi, sign_lo };
        }
        steps_per_unit *= 2;
    }
}

impl FieldContext {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Minimal polynomial coefficients, lowest degree first (monic).
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Half-width `n` of the staircase: N = 2n + 1.
    pub fn half_order(&self) -> usize {
        (self.n as usize - 1) / 2
    }

    /// The isolating interval of the distinguished root.
    pub fn embedding(&self) -> (BigRational, BigRational) {
        let l = self.level(0);
        (l.root.lo.clone(), l.root.hi.clone())
    }

    fn level(&self, j: usize) -> Arc<PowerLevel> {
        {
            let levels = self.levels.read().expect("level cache poisoned");
            if let Some(l) = levels.get(j) {
                return l.clone();
            }
        }
        let mut levels = self.levels.write().expect("level cache poisoned");
        while levels.len() <= j {
            let mut root = levels.last().expect("level 0 exists").root.clone();
            root.bisect(&self.minpoly, REFINE_STEP_BITS);
            levels.push(Arc::new(PowerLevel::new(root, self.degree)));
        }
        levels[j].clone()
    }

    /// Minimal polynomial in `x`, e.g. `x^3 - x^2 - 2x + 1`.
    pub fn minpoly_string(&self) -> String {
        let q: Vec<BigRational> = self.minpoly_q.clone();
        format_poly(&q, "x", "")
    }

    /// Degree of the field over Q as `n` claims it for prime N.
    pub fn naive_degree(&self) -> usize {
        self.half_order()
    }
}

/// An element of K, coefficients c_0 + c_1 a + ... + c_{d-1} a^{d-1}.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Field,
    coeffs: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}({})", self.ctx.n, self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.coeffs, "a", "*"))
    }
}

impl FieldElement {
    /// Element from coefficients of any length; higher powers are reduced.
    pub fn from_coeffs(ctx: &Field, coeffs: Vec<BigRational>) -> Self {
        let mut e = FieldElement {
            ctx: ctx.clone(),
            coeffs,
        };
        e.reduce();
        e
    }

    pub fn from_ints(ctx: &Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            ctx,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(ctx: &Field) -> Self {
        Self::from_coeffs(ctx, Vec::new())
    }

    pub fn one(ctx: &Field) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Field, v: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(v.into()))
    }

    pub fn from_rational(ctx: &Field, v: BigRational) -> Self {
        Self::from_coeffs(ctx, vec![v])
    }

    /// The generator a = 2cos(π/N).
    pub fn generator(ctx: &Field) -> Self {
        Self::from_ints(ctx, &[0, 1])
    }

    pub fn context(&self) -> &Field {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn reduce(&mut self) {
        let d = self.ctx.degree;
        let m = &self.ctx.minpoly;
        trim(&mut self.coeffs);
        // x^k = x^{k-d} * x^d and x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        while self.coeffs.len() > d {
            let top = self.coeffs.pop().unwrap();
            let k = self.coeffs.len() - d;
            if !top.is_zero() {
                for (j, mj) in m[..d].iter().enumerate() {
                    if !mj.is_zero() {
                        self.coeffs[k + j] -= &top * BigRational::from_integer(mj.clone());
                    }
                }
            }
        }
        self.coeffs.resize(d, BigRational::zero());
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx.n != other.ctx.n {
            Err(Error::ContextMismatch(self.ctx.n, other.ctx.n))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(FieldElement {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        Ok(FieldElement {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.ctx.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_coeffs(&self.ctx, prod))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.ctx, r.recip()));
        }
        let inv = qpoly_inverse_mod(&self.coeffs, &self.ctx.minpoly_q)
            .expect("nonzero element of a field is invertible");
        Ok(Self::from_coeffs(&self.ctx, inv))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        FieldElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Interval enclosure of the value using precomputed power bounds.
    fn value_interval(
        &self,
        lo_pows: &[BigRational],
        hi_pows: &[BigRational],
    ) -> (BigRational, BigRational) {
        let mut low = self.coeffs[0].clone();
        let mut high = self.coeffs[0].clone();
        for k in 1..self.coeffs.len() {
            let c = &self.coeffs[k];
            if c.is_positive() {
                low += c * &lo_pows[k];
                high += c * &hi_pows[k];
            } else if c.is_negative() {
                low += c * &hi_pows[k];
                high += c * &lo_pows[k];
            }
        }
        (low, high)
    }

    /// Sign at the distinguished embedding: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if let Some(r) = self.as_rational() {
            return sign_of(r);
        }
        // the common denominator is positive
        let (num, _) = self.to_int_parts();
        self.ctx.sign_int(&num)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison of real values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Value enclosure refined until its width is at most `width`.
    pub fn enclose(&self, width: &BigRational) -> (BigRational, BigRational) {
        if let Some(r) = self.as_rational() {
            return (r.clone(), r.clone());
        }
        for j in 0.. {
            let level = self.ctx.level(j);
            let (low, high) = self.value_interval(&level.lo_pows, &level.hi_pows);
            if &(&high - &low) <= width {
                return (low, high);
            }
        }
        unreachable!()
    }

    /// Decimal approximation with `digits` digits after the point, correctly
    /// rounded (half up).
    pub fn approx(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let scale_q = BigRational::from_integer(scale.clone());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut width = BigRational::new(BigInt::one(), scale.clone() * BigInt::from(100));
        loop {
            let (low, high) = self.enclose(&width);
            let rl = (&low * &scale_q + &half).floor().to_integer();
            let rh = (&high * &scale_q + &half).floor().to_integer();
            if rl == rh {
                return format_scaled(&rl, digits);
            }
            width /= BigRational::from_integer(BigInt::from(1u64 << 32));
        }
    }

    pub fn to_f64(&self) -> f64 {
        let w = BigRational::new(BigInt::one(), BigInt::from(1u64) << 60);
        let (low, high) = self.enclose(&w);
        let mid = (low + high) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest absolute numerator or denominator among the coefficients.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .flat_map(|c| [c.numer().abs(), c.denom().abs()])
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

fn format_scaled(v: &BigInt, digits: usize) -> String {
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Polynomial in descending powers; `star` separates coefficient and variable.
pub(crate) fn format_poly(coeffs: &[BigRational], var: &str, star: &str) -> String {
    let mut out = String::new();
    for k in (0..coeffs.len()).rev() {
        let c = &coeffs[k];
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let coef = if mag.is_integer() {
            mag.numer().to_string()
        } else if k == 0 {
            format!("{}/{}", mag.numer(), mag.denom())
        } else {
            format!("({}/{})", mag.numer(), mag.denom())
        };
        if k == 0 {
            out.push_str(&coef);
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&coef);
            out.push_str(star);
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            /// Panics when the operands come from different fields.
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Rational `p/q` as a BigRational; panics on q = 0.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: u32) -> Field {
        make_field(n).unwrap()
    }

    fn el(ctx: &Field, c: &[i64]) -> FieldElement {
        FieldElement::from_ints(ctx, c)
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(k(7).minpoly_string(), "x^3 - x^2 - 2x + 1");
        assert_eq!(k(5).minpoly_string(), "x^2 - x - 1");
        assert_eq!(k(9).minpoly_string(), "x^3 - 3x - 1");
        assert_eq!(k(11).degree(), 5);
        assert_eq!(k(15).degree(), 4);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(make_field(6).unwrap_err(), Error::InvalidOrder(6));
        assert_eq!(make_field(3).unwrap_err(), Error::InvalidOrder(3));
        assert!(make_field(1).is_err());
    }

    #[test]
    fn root_is_two_cos() {
        for n in [5u32, 7, 9, 11, 13, 15] {
            let ctx = k(n);
            let target = 2.0 * (std::f64::consts::PI / n as f64).cos();
            let (lo, hi) = ctx.embedding();
            assert!(lo.to_f64().unwrap() <= target + 1e-15);
            assert!(hi.to_f64().unwrap() >= target - 1e-15);
            let p: f64 = ctx
                .minpoly()
                .iter()
                .enumerate()
                .map(|(i, c)| c.to_f64().unwrap() * target.powi(i as i32))
                .sum();
            assert!(p.abs() < 1e-12, "N={n}: {p}");
        }
    }

    #[test]
    fn cube_of_generator_reduces() {
        let c = k(7);
        let a = FieldElement::generator(&c);
        assert_eq!(&(&a * &a) * &a, el(&c, &[-1, 2, 1]));
        assert_eq!(a.pow(3), el(&c, &[-1, 2, 1]));
    }

    #[test]
    fn inverse_of_generator() {
        let c = k(7);
        let a = FieldElement::generator(&c);
        let inv = a.inv().unwrap();
        assert_eq!(inv, el(&c, &[2, 1, -1]));
        assert!(((&a * &inv).to_f64() - 1.0).abs() < 1e-12);
        assert!((a.to_f64() * inv.to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_identity_and_errors() {
        let c = k(7);
        let x = el(&c, &[3, -1, 2]);
        assert_eq!(&x + &FieldElement::zero(&c), x);
        assert_eq!(FieldElement::zero(&c).inv().unwrap_err(), Error::DivisionByZero);
        let other = FieldElement::one(&k(5));
        assert_eq!(x.try_add(&other).unwrap_err(), Error::ContextMismatch(7, 5));
    }

    #[test]
    fn signs() {
        let c = k(7);
        assert_eq!(el(&c, &[-1, -1, 1]).signum(), 1);
        assert_eq!(FieldElement::zero(&c).signum(), 0);
        assert_eq!(el(&c, &[2, -1]).signum(), 1);
        assert_eq!(el(&c, &[-2, 1]).signum(), -1);
    }

    #[test]
    fn sign_needs_refinement() {
        // a - p/q with p/q within 2^-100 of a forces refinement past the
        // stored interval
        let c = k(7);
        let (lo, hi) = c.embedding();
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let close = FieldElement::generator(&c) - FieldElement::from_rational(&c, mid.clone());
        let s = close.signum();
        assert!(s != 0);
        let mut fine = c.level(0).root.clone();
        fine.bisect(c.minpoly(), 200);
        let expected = if fine.lo > mid { 1 } else { -1 };
        assert_eq!(s, expected);
    }

    #[test]
    fn approximations() {
        let c = k(7);
        assert_eq!(FieldElement::generator(&c).approx(7), "1.8019377");
        assert_eq!(FieldElement::from_rational(&c, rat(1, 2)).approx(3), "0.500");
        assert_eq!(el(&c, &[-1, 0, 1]).approx(5), "2.24698");
        assert_eq!(el(&c, &[-2, 0]).approx(2), "-2.00");
        assert_eq!(el(&c, &[2, -1]).approx(5), "0.19806");
    }

    #[test]
    fn canonical_strings() {
        let c = k(7);
        assert_eq!(el(&c, &[-1, 2, 1]).to_string(), "a^2 + 2*a - 1");
        let x = FieldElement::from_coeffs(&c, vec![rat(-3, 1), rat(1, 2)]);
        assert_eq!(x.to_string(), "(1/2)*a - 3");
        let y = FieldElement::from_coeffs(&c, vec![rat(1, 3), rat(-1, 2), rat(-1, 1)]);
        assert_eq!(y.to_string(), "-a^2 - (1/2)*a + 1/3");
        assert_eq!(FieldElement::zero(&c).to_string(), "0");
    }

    #[test]
    fn reduction_is_idempotent() {
        let c = k(9);
        let x = el(&c, &[1, 2, 3, 4, 5, 6, 7]);
        let again = FieldElement::from_coeffs(&c, x.coeffs().to_vec());
        assert_eq!(x, again);
    }
}
