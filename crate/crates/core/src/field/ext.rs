//! The quadratic extension L = K(β), β = sin(π/N) > 0, β² = (4 - a²)/4.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{rat, Field, FieldElement};
use crate::error::{Error, Result};

pub type ExtField = Arc<ExtContext>;

#[derive(Debug)]
pub struct ExtContext {
    base: Field,
    beta_squared: FieldElement,
}

impl ExtContext {
    pub fn new(base: &Field) -> ExtField {
        let a = FieldElement::generator(base);
        let beta_squared = FieldElement::one(base) - (&a * &a).scale(&rat(1, 4));
        Arc::new(ExtContext {
            base: base.clone(),
            beta_squared,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn beta_squared(&self) -> &FieldElement {
        &self.beta_squared
    }
}

/// u + vβ with u, v in K.
#[derive(Clone)]
pub struct ExtElement {
    ctx: ExtField,
    u: FieldElement,
    v: FieldElement,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v
    }
}

impl Eq for ExtElement {}

impl Hash for ExtElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.u.hash(state);
        self.v.hash(state);
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({self})")
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        let beta = if self.v.is_one() {
            "b".to_string()
        } else {
            format!("({})*b", self.v)
        };
        if self.u.is_zero() {
            f.write_str(&beta)
        } else {
            write!(f, "{} + {}", self.u, beta)
        }
    }
}

impl ExtElement {
    pub fn new(ctx: &ExtField, u: FieldElement, v: FieldElement) -> Self {
        ExtElement {
            ctx: ctx.clone(),
            u,
            v,
        }
    }

    pub fn from_base(ctx: &ExtField, u: FieldElement) -> Self {
        let v = FieldElement::zero(&ctx.base);
        Self::new(ctx, u, v)
    }

    pub fn zero(ctx: &ExtField) -> Self {
        Self::from_base(ctx, FieldElement::zero(&ctx.base))
    }

    pub fn one(ctx: &ExtField) -> Self {
        Self::from_base(ctx, FieldElement::one(&ctx.base))
    }

    pub fn beta(ctx: &ExtField) -> Self {
        Self::new(
            ctx,
            FieldElement::zero(&ctx.base),
            FieldElement::one(&ctx.base),
        )
    }

    pub fn context(&self) -> &ExtField {
        &self.ctx
    }

    /// Rational part u of u + vβ.
    pub fn u(&self) -> &FieldElement {
        &self.u
    }

    /// β-part v of u + vβ.
    pub fn v(&self) -> &FieldElement {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.ctx, &self.u + &o.u, &self.v + &o.v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.ctx, &self.u - &o.u, &self.v - &o.v)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ctx, -&self.u, -&self.v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let uu = &self.u * &o.u;
        let vv = &(&self.v * &o.v) * &self.ctx.beta_squared;
        let uv = &(&self.u * &o.v) + &(&o.u * &self.v);
        Self::new(&self.ctx, uu + vv, uv)
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        Self::new(&self.ctx, &self.u * k, &self.v * k)
    }

    /// (u - vβ) / (u² - v²β²).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.ctx.beta_squared);
        let ninv = norm.inv()?;
        Ok(Self::new(&self.ctx, &self.u * &ninv, -(&self.v * &ninv)))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Exact sign: when u and v disagree, compare u² with v²β².
    pub fn signum(&self) -> i32 {
        let su = self.u.signum();
        let sv = self.v.signum();
        if sv == 0 {
            return su;
        }
        if su == 0 || su == sv {
            return sv;
        }
        let diff = &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.ctx.beta_squared);
        let sd = diff.signum();
        assert!(sd != 0, "β lies outside K, so u + vβ = 0 forces u = v = 0");
        su * sd
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.ctx.beta_squared.to_f64().sqrt();
        self.u.to_f64() + self.v.to_f64() * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn ext7() -> ExtField {
        ExtContext::new(&make_field(7).unwrap())
    }

    #[test]
    fn beta_squared_value() {
        let l = ext7();
        let b = ExtElement::beta(&l);
        let b2 = b.mul(&b);
        assert_eq!(b2.u(), l.beta_squared());
        assert!(b2.v().is_zero());
        let s = (std::f64::consts::PI / 7.0).sin();
        assert!((b2.to_f64() - s * s).abs() < 1e-12);
        assert!((b2.to_f64() - 0.18825).abs() < 1e-5);
    }

    #[test]
    fn signs() {
        let l = ext7();
        let k = l.base().clone();
        assert_eq!(ExtElement::beta(&l).signum(), 1);
        assert_eq!(ExtElement::beta(&l).neg().signum(), -1);
        assert_eq!(ExtElement::zero(&l).signum(), 0);
        // (a^2 - 1)β = sin(3π/7)
        let x = ExtElement::new(&l, FieldElement::zero(&k), FieldElement::from_ints(&k, &[-1, 0, 1]));
        assert!((x.to_f64() - 0.97493).abs() < 1e-5);
        // 1 - 2β ≈ 0.132 and 1 - 3β ≈ -0.302: mixed-sign parts
        let y = ExtElement::new(&l, FieldElement::one(&k), FieldElement::from_int(&k, -2));
        assert_eq!(y.signum(), 1);
        let z = ExtElement::new(&l, FieldElement::one(&k), FieldElement::from_int(&k, -3));
        assert_eq!(z.signum(), -1);
        assert_eq!(z.neg().signum(), 1);
    }

    #[test]
    fn inverse() {
        let l = ext7();
        let k = l.base().clone();
        let x = ExtElement::new(&l, FieldElement::from_ints(&k, &[1, 1]), FieldElement::from_ints(&k, &[0, -2, 1]));
        assert_eq!(x.mul(&x.inv().unwrap()), ExtElement::one(&l));
        assert_eq!(ExtElement::zero(&l).inv().unwrap_err(), Error::DivisionByZero);
        assert_eq!(x.div(&x).unwrap(), ExtElement::one(&l));
    }

    #[test]
    fn display() {
        let l = ext7();
        let k = l.base().clone();
        assert_eq!(ExtElement::beta(&l).to_string(), "b");
        let x = ExtElement::new(&l, FieldElement::from_int(&k, 2), FieldElement::generator(&k));
        assert_eq!(x.to_string(), "2 + (a)*b");
    }
}
