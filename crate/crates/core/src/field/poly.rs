//! Dense univariate polynomials used to set up and operate in the trace field.
//!
//! Coefficient vectors are stored lowest degree first and kept trimmed (no
//! trailing zeros), so the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Divisors of `n` in ascending order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "cyclotomic division left a remainder");
    quot
}

/// The m-th cyclotomic polynomial, by dividing z^m - 1 by every Φ_d with d a
/// proper divisor of m.
pub fn cyclotomic(m: u64) -> Vec<BigInt> {
    let mut memo: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in divisors(m) {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = -BigInt::one();
        p[d as usize] = BigInt::one();
        for (e, phi_e) in &memo {
            if d % e == 0 {
                p = exact_div_monic(&p, phi_e);
            }
        }
        memo.push((d, p));
    }
    memo.pop().map(|(_, p)| p).unwrap()
}

/// Minimal polynomial of w = z + 1/z given a palindromic Φ of even degree 2d:
/// z^{-d}Φ(z) = e_d + Σ_k e_{d-k} (z^k + z^{-k}), and z^k + z^{-k} = V_k(w)
/// with V_0 = 2, V_1 = w, V_k = w V_{k-1} - V_{k-2}.
pub fn palindromic_reduction(phi: &[BigInt]) -> Vec<BigInt> {
    let two_d = phi.len() - 1;
    assert!(two_d.is_multiple_of(2), "palindromic reduction needs even degree");
    let d = two_d / 2;
    let mut v_prev = vec![BigInt::from(2)];
    let mut v_cur = vec![BigInt::zero(), BigInt::one()];
    let mut out = vec![BigInt::zero(); d + 1];
    out[0] += &phi[d];
    for k in 1..=d {
        let e = &phi[d - k];
        for (j, c) in v_cur.iter().enumerate() {
            out[j] += e * c;
        }
        // V_{k+1} = w V_k - V_{k-1}
        let mut next = vec![BigInt::zero(); v_cur.len() + 1];
        for (j, c) in v_cur.iter().enumerate() {
            next[j + 1] += c;
        }
        for (j, c) in v_prev.iter().enumerate() {
            next[j] -= c;
        }
        v_prev = std::mem::replace(&mut v_cur, next);
    }
    trim(&mut out);
    out
}

pub(crate) fn eval_int_sign(p: &[BigInt], x: &BigRational) -> i32 {
    // Horner on numerator after clearing the denominator: q^deg p(n/q).
    let n = x.numer();
    let q = x.denom();
    let deg = p.len() - 1;
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    let mut terms = vec![BigInt::zero(); p.len()];
    // term_k = c_k n^k q^{deg-k}
    for k in (0..=deg).rev() {
        terms[k] = qpow.clone();
        qpow *= q;
    }
    let mut npow = BigInt::one();
    for k in 0..=deg {
        acc += &p[k] * &npow * &terms[k];
        npow *= n;
    }
    sign_of(&acc)
}

pub(crate) fn sign_of<T: Signed>(x: &T) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`, `b` nonzero.
pub(crate) fn qpoly_divmod(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] / &lead;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
        // the leading term cancels exactly
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `x` modulo `m` via the extended Euclidean algorithm, or `None`
/// when gcd(x, m) is not a unit.
pub(crate) fn qpoly_inverse_mod(x: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = x.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = qpoly_divmod(&r0, &r1);
        let s = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 = gcd = s0 * x (mod m)
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|v| v / &c).collect())
}
