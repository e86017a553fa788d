//! Integer-coefficient elements of Z[a] ⊂ K, used on hot paths where
//! rational normalization would dominate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::sign_of;
use super::{FieldContext, FieldElement};

/// Coefficients c_0..c_{d-1} of an element of Z[a].
pub type IntPoly = Vec<BigInt>;

impl FieldContext {
    /// Reduces an integer polynomial in `a` modulo the (monic) minimal polynomial.
    pub fn reduce_int(&self, mut p: IntPoly) -> IntPoly {
        let d = self.degree;
        let m = &self.minpoly;
        while p.len() > d {
            let top = p.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let k = p.len() - d;
            for (j, mj) in m[..d].iter().enumerate() {
                if !mj.is_zero() {
                    p[k + j] -= &top * mj;
                }
            }
        }
        p.resize(d, BigInt::zero());
        p
    }

    pub fn mul_int(&self, x: &[BigInt], y: &[BigInt]) -> IntPoly {
        let mut prod = vec![BigInt::zero(); x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.reduce_int(prod)
    }

    /// Sign of an element of Z[a] at the distinguished embedding.
    pub fn sign_int(&self, x: &[BigInt]) -> i32 {
        if x.iter().skip(1).all(Zero::is_zero) {
            return x.first().map_or(0, sign_of);
        }
        for j in 0.. {
            let level = self.level(j);
            let mut low = BigInt::zero();
            let mut high = BigInt::zero();
            for (k, c) in x.iter().enumerate() {
                if c.is_positive() {
                    low += c * &level.num_lo[k];
                    high += c * &level.num_hi[k];
                } else if c.is_negative() {
                    low += c * &level.num_hi[k];
                    high += c * &level.num_lo[k];
                }
            }
            if low.is_positive() {
                return 1;
            }
            if high.is_negative() {
                return -1;
            }
        }
        unreachable!()
    }

    /// y / x as (numerator, denominator) in lowest terms with denominator > 0,
    /// or None when x = 0. Solves (mult-by-x)·z = y by fraction-free
    /// Gauss–Jordan elimination.
    pub fn div_int(&self, y: &[BigInt], x: &[BigInt]) -> Option<(IntPoly, BigInt)> {
        let d = self.degree;
        if x.iter().all(Zero::is_zero) {
            return None;
        }
        // column j of the multiplication matrix is x·a^j
        let mut cols = Vec::with_capacity(d);
        let mut col: IntPoly = x.to_vec();
        col.resize(d, BigInt::zero());
        for _ in 0..d {
            cols.push(col.clone());
            let mut shifted = vec![BigInt::zero()];
            shifted.extend(col);
            col = self.reduce_int(shifted);
        }
        // augmented rows [A | y]
        let mut m: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigInt> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(y.get(i).cloned().unwrap_or_else(BigInt::zero));
                row
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..d {
            let piv = (k..d).find(|&r| !m[r][k].is_zero())?;
            m.swap(k, piv);
            for i in 0..d {
                if i == k {
                    continue;
                }
                let f = m[i][k].clone();
                for j in 0..=d {
                    let v = (&m[k][k] * &m[i][j] - &f * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        // now m = det·I | det·z, with the same det on every diagonal entry
        let mut den = m[d - 1][d - 1].clone();
        let mut num: IntPoly = m.iter().map(|row| row[d].clone()).collect();
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        Some((num, den))
    }

    /// A prime p ≡ 1 mod 2N below 2^61 and a root r of the minimal polynomial
    /// mod p, so that a ↦ r is a ring map Z[a] → F_p.
    pub fn split_prime(&self) -> (u64, u64) {
        let m = 2 * u64::from(self.n);
        let mut p = ((1u64 << 61) - 1) / m * m + 1;
        loop {
            p -= m;
            if !primal_check::miller_rabin(p) {
                continue;
            }
            // ζ of order exactly 2N, then r = ζ + ζ^{-1}
            for g in 2..p {
                let z = pow_mod(g, (p - 1) / m, p);
                if (1..m).all(|d| m % d != 0 || pow_mod(z, d, p) != 1) {
                    let r = (z + pow_mod(z, m - 1, p)) % p;
                    debug_assert_eq!(eval_mod(&self.minpoly, p, r), 0);
                    return (p, r);
                }
            }
        }
    }
}

fn mul_mod(x: u64, y: u64, p: u64) -> u64 {
    (u128::from(x) * u128::from(y) % u128::from(p)) as u64
}

pub fn pow_mod(mut x: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, x, p);
        }
        x = mul_mod(x, x, p);
        e >>= 1;
    }
    acc
}

/// x(r) mod p.
pub fn eval_mod(x: &[BigInt], p: u64, r: u64) -> u64 {
    let big_p = BigInt::from(p);
    x.iter().rev().fold(0, |acc, c| {
        let c: u64 = c.mod_floor(&big_p).try_into().expect("reduced below p");
        (mul_mod(acc, r, p) + c) % p
    })
}

impl FieldElement {
    /// (numerator, denominator) with integer numerator coefficients and a
    /// positive common denominator, in lowest terms.
    pub fn to_int_parts(&self) -> (IntPoly, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (num, den)
    }

    pub fn from_int_parts(ctx: &super::Field, num: &[BigInt], den: &BigInt) -> Self {
        let coeffs = num
            .iter()
            .map(|c| BigRational::new(c.clone(), den.clone()))
            .collect();
        FieldElement::from_coeffs(ctx, coeffs)
    }
}
