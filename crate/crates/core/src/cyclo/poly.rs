//! Small dense-polynomial helpers: integer cyclotomic polynomials and the
//! extended Euclidean algorithm over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // X^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = div_monic_exact(&num, &div);
        }
    }
    num
}

fn div_monic_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub(crate) type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub_scaled_shift(a: &mut QPoly, b: &QPoly, scale: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        a[i + shift] -= bi * scale;
    }
    trim(a);
}

fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut rem = a.clone();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] / &lead;
        quot[shift] = c.clone();
        poly_sub_scaled_shift(&mut rem, b, &c, shift);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo the (irreducible) `modulus`, or `None` when `a` is
/// zero modulo it.
pub(crate) fn inverse_mod(a: &QPoly, modulus: &[i64]) -> Option<QPoly> {
    let m: QPoly = modulus
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    let mut r0 = m;
    let mut r1 = a.clone();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: QPoly = Vec::new();
    let mut s1: QPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let mut s2 = s0.clone();
        if s2.len() < qs.len() {
            s2.resize(qs.len(), BigRational::zero());
        }
        for (i, c) in qs.iter().enumerate() {
            s2[i] -= c;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; for an irreducible modulus it is a nonzero constant
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].clone();
    Some(s0.into_iter().map(|c| c / &g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(16), vec![1, 0, 0, 0, 0, 0, 0, 0, 1]);
        // Phi_20 = X^8 - X^6 + X^4 - X^2 + 1
        assert_eq!(cyclotomic_polynomial(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
        // Phi_24 = X^8 - X^4 + 1
        assert_eq!(cyclotomic_polynomial(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
    }
}
