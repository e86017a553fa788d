//! 2-vectors and 2×2 matrices over an exact scalar field.
//!
//! Matrices act on column vectors: M·(x, y) = (m11 x + m12 y, m21 x + m22 y).

use std::fmt;
use std::hash::Hash;

use crate::error::Result;
use crate::field::{ExtElement, FieldElement};

/// Exact ordered-field operations shared by K and L.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
    /// -1, 0 or +1 at the distinguished embedding.
    fn sign(&self) -> i32;
    fn approx_f64(&self) -> f64;

    fn is_zero_value(&self) -> bool {
        self.sign() == 0
    }

    fn divided(&self, o: &Self) -> Result<Self> {
        Ok(self.times(&o.inverse()?))
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(self.context())
    }
    fn one_like(&self) -> Self {
        FieldElement::one(self.context())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
    fn sign(&self) -> i32 {
        self.signum()
    }
    fn approx_f64(&self) -> f64 {
        self.to_f64()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for ExtElement {
    fn zero_like(&self) -> Self {
        ExtElement::zero(self.context())
    }
    fn one_like(&self) -> Self {
        ExtElement::one(self.context())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
    fn sign(&self) -> i32 {
        self.signum()
    }
    fn approx_f64(&self) -> f64 {
        self.to_f64()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

impl<S: fmt::Debug> fmt::Debug for Vec2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl<S: fmt::Display> fmt::Display for Vec2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<S: Scalar> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Vec2 { x, y }
    }

    pub fn plus(&self, o: &Self) -> Self {
        Vec2::new(self.x.plus(&o.x), self.y.plus(&o.y))
    }

    pub fn minus(&self, o: &Self) -> Self {
        Vec2::new(self.x.minus(&o.x), self.y.minus(&o.y))
    }

    pub fn negated(&self) -> Self {
        Vec2::new(self.x.negated(), self.y.negated())
    }

    pub fn scaled(&self, k: &S) -> Self {
        Vec2::new(self.x.times(k), self.y.times(k))
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.times(&o.x).plus(&self.y.times(&o.y))
    }

    /// ps - qr for (p, q) × (r, s).
    pub fn cross(&self, o: &Self) -> S {
        self.x.times(&o.y).minus(&self.y.times(&o.x))
    }

    pub fn norm_squared(&self) -> S {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero_value() && self.y.is_zero_value()
    }

    /// True when `o` is a positive multiple of `self`.
    pub fn same_ray(&self, o: &Self) -> bool {
        self.cross(o).is_zero_value() && self.dot(o).sign() > 0
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.approx_f64(), self.y.approx_f64())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2<S> {
    pub m11: S,
    pub m12: S,
    pub m21: S,
    pub m22: S,
}

impl<S: fmt::Debug> fmt::Debug for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

impl<S: fmt::Display> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

impl<S: Scalar> Mat2<S> {
    pub fn new(m11: S, m12: S, m21: S, m22: S) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    /// The matrix whose columns are `c1` and `c2`.
    pub fn from_columns(c1: &Vec2<S>, c2: &Vec2<S>) -> Self {
        Mat2::new(c1.x.clone(), c2.x.clone(), c1.y.clone(), c2.y.clone())
    }

    pub fn identity(like: &S) -> Self {
        Mat2::new(
            like.one_like(),
            like.zero_like(),
            like.zero_like(),
            like.one_like(),
        )
    }

    pub fn det(&self) -> S {
        self.m11.times(&self.m22).minus(&self.m12.times(&self.m21))
    }

    pub fn trace(&self) -> S {
        self.m11.plus(&self.m22)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.m11.times(&o.m11).plus(&self.m12.times(&o.m21)),
            self.m11.times(&o.m12).plus(&self.m12.times(&o.m22)),
            self.m21.times(&o.m11).plus(&self.m22.times(&o.m21)),
            self.m21.times(&o.m12).plus(&self.m22.times(&o.m22)),
        )
    }

    pub fn apply(&self, v: &Vec2<S>) -> Vec2<S> {
        Vec2::new(
            self.m11.times(&v.x).plus(&self.m12.times(&v.y)),
            self.m21.times(&v.x).plus(&self.m22.times(&v.y)),
        )
    }

    /// Adjugate; equals the inverse when det = 1.
    pub fn adjugate(&self) -> Self {
        Mat2::new(
            self.m22.clone(),
            self.m12.negated(),
            self.m21.negated(),
            self.m11.clone(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let dinv = self.det().inverse()?;
        let adj = self.adjugate();
        Ok(Mat2::new(
            adj.m11.times(&dinv),
            adj.m12.times(&dinv),
            adj.m21.times(&dinv),
            adj.m22.times(&dinv),
        ))
    }

    /// J·M·J with J the coordinate swap.
    pub fn swap_conjugate(&self) -> Self {
        Mat2::new(
            self.m22.clone(),
            self.m21.clone(),
            self.m12.clone(),
            self.m11.clone(),
        )
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    pub fn rows(&self) -> [[&S; 2]; 2] {
        [[&self.m11, &self.m12], [&self.m21, &self.m22]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn inverse_and_det() {
        let k = make_field(7).unwrap();
        let a = FieldElement::generator(&k);
        let one = FieldElement::one(&k);
        let m = Mat2::new(a.clone(), one.clone(), &a * &a - &one, a.clone());
        assert!(m.det().is_one());
        let inv = m.inverse().unwrap();
        assert_eq!(inv, m.adjugate());
        assert_eq!(m.mul(&inv), Mat2::identity(&a));
    }
}
