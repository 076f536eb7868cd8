//! Exact arithmetic in the cyclotomic field Q(A), A a primitive 2p-th root
//! of unity, realised as Q[X]/Phi_{2p}(X) with A the class of X.
//!
//! Elements are stored as an integer numerator vector over a single positive
//! denominator, normalised so that the content of the numerators is coprime
//! to the denominator. That form is canonical, so structural equality is
//! field equality.

mod int;
mod poly;

pub(crate) use int::IntCyclo;
pub use poly::cyclotomic_polynomial;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The field Q(zeta_{2p}) for one even level `p`.
#[derive(Debug)]
pub struct CycloContext {
    p: u32,
    degree: usize,
    modulus: Vec<i64>,
    /// `powers[k]` is X^k reduced mod Phi_{2p}, for 0 <= k < 2p.
    powers: Vec<Vec<i64>>,
}

static REGISTRY: Lazy<Mutex<HashMap<u32, Arc<CycloContext>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

impl CycloContext {
    /// Shared context for level `p`. Contexts are interned, so two calls with
    /// the same level return the same allocation.
    pub fn new(p: u32) -> Result<Arc<Self>> {
        if p % 2 != 0 {
            return Err(Error::InvalidLevel { p, reason: "p must be even" });
        }
        if p < 6 {
            return Err(Error::InvalidLevel { p, reason: "p must be at least 6" });
        }
        let mut reg = REGISTRY.lock().expect("cyclo registry poisoned");
        if let Some(ctx) = reg.get(&p) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::build(p));
        reg.insert(p, ctx.clone());
        Ok(ctx)
    }

    fn build(p: u32) -> Self {
        let order = 2 * p as usize;
        let modulus = cyclotomic_polynomial(2 * p);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by X and reduce the overflow term with the monic modulus
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        Self { p, degree, modulus, powers }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// phi(2p), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Phi_{2p}, lowest degree first (monic).
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Largest color allowed at this level, p/2 - 2.
    pub fn max_color(&self) -> u32 {
        self.p / 2 - 2
    }

    pub(crate) fn power(&self, k: i64) -> &[i64] {
        let order = 2 * self.p as i64;
        &self.powers[k.rem_euclid(order) as usize]
    }
}

impl PartialEq for CycloContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for CycloContext {}

/// An element of Q(zeta_{2p}) in reduced power-basis form.
#[derive(Clone)]
pub struct CycloNum {
    ctx: Arc<CycloContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        Self { ctx: ctx.clone(), num: vec![BigInt::zero(); ctx.degree], den: BigInt::one() }
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<CycloContext>, v: i64) -> Self {
        let mut x = Self::zero(ctx);
        x.num[0] = BigInt::from(v);
        x
    }

    pub fn from_rational(ctx: &Arc<CycloContext>, q: &BigRational) -> Self {
        let mut x = Self::zero(ctx);
        x.num[0] = q.numer().clone();
        x.den = q.denom().clone();
        x.normalize();
        x
    }

    /// A^k for any integer k.
    pub fn a_pow(ctx: &Arc<CycloContext>, k: i64) -> Self {
        let num = ctx.power(k).iter().map(|&c| BigInt::from(c)).collect();
        Self { ctx: ctx.clone(), num, den: BigInt::one() }
    }

    /// Build from rational coefficients of an arbitrary-length polynomial in A
    /// (lowest degree first); the result is reduced mod Phi_{2p}.
    pub fn from_poly(ctx: &Arc<CycloContext>, coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); ctx.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for (slot, &r) in num.iter_mut().zip(ctx.power(k as i64)) {
                if r != 0 {
                    *slot += &scaled * r;
                }
            }
        }
        let mut x = Self { ctx: ctx.clone(), num, den };
        x.normalize();
        x
    }

    pub(crate) fn from_parts(ctx: &Arc<CycloContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.degree);
        let mut x = Self { ctx: ctx.clone(), num, den };
        x.normalize();
        x
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Power-basis coefficients of A^0 .. A^{phi(2p)-1}.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for n in &mut self.num {
                *n /= &g;
            }
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.p != other.ctx.p {
            return Err(Error::ContextMismatch { left: self.ctx.p, right: other.ctx.p });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &fa, b * &fb);
                    if subtract {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, l)
        };
        let mut x = Self { ctx: self.ctx.clone(), num, den };
        x.normalize();
        x
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.ctx.degree;
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(self.ctx.power(k as i64)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut x = Self { ctx: self.ctx.clone(), num, den: &self.den * &other.den };
        x.normalize();
        x
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against
    /// the cyclotomic modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { p: self.ctx.p });
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.ctx, &q.recip()));
        }
        let a: Vec<BigRational> = self.num.iter().map(|n| BigRational::from_integer(n.clone())).collect();
        let inv = poly::inverse_mod(&a, &self.ctx.modulus)
            .ok_or(Error::DivisionByZero { p: self.ctx.p })?;
        // (num/den)^{-1} = den * num^{-1}
        let scale = BigRational::from_integer(self.den.clone());
        let coeffs: Vec<BigRational> = inv.into_iter().map(|c| c * &scale).collect();
        Ok(Self::from_poly(&self.ctx, &coeffs))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.ctx);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// The field automorphism A -> A^{-1}, i.e. complex conjugation under any
    /// embedding.
    pub fn conj(&self) -> Self {
        let d = self.ctx.degree;
        let mut num = vec![BigInt::zero(); d];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(self.ctx.power(-(i as i64))) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        Self { ctx: self.ctx.clone(), num, den: self.den.clone() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let num = self.num.iter().map(|n| n * k).collect();
        let mut x = Self { ctx: self.ctx.clone(), num, den: self.den.clone() };
        x.normalize();
        x
    }

    /// Numerical value at A = exp(i pi / p). Debug aid only.
    pub fn approx(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = std::f64::consts::PI * k as f64 / self.ctx.p as f64;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }
}

/// Quantum integer [n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2}).
pub fn quantum_int(ctx: &Arc<CycloContext>, n: i64) -> Result<CycloNum> {
    if n < 0 {
        return Err(Error::NegativeQuantumInt(n));
    }
    let mut acc = CycloNum::zero(ctx);
    for j in 0..n {
        acc = acc.add_unchecked(&CycloNum::a_pow(ctx, 2 * (n - 1) - 4 * j), false);
    }
    Ok(acc)
}

/// Quantum factorial [n]! = [1][2]...[n].
pub fn quantum_factorial(ctx: &Arc<CycloContext>, n: i64) -> Result<CycloNum> {
    if n < 0 {
        return Err(Error::NegativeQuantumInt(n));
    }
    let mut acc = CycloNum::one(ctx);
    for j in 1..=n {
        acc = acc.mul_unchecked(&quantum_int(ctx, j)?);
    }
    Ok(acc)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.p == other.ctx.p && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.p.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum(p={}, {})", self.ctx.p, self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*A")?,
                _ => write!(f, "{c}*A^{k}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    };
}

// Operator sugar panics on a context mismatch or division by zero; use the
// `checked_*` methods where either can occur.
forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    p: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs()
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect();
        CycloWire { p: self.ctx.p, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = CycloWire::deserialize(deserializer)?;
        let ctx = CycloContext::new(wire.p).map_err(D::Error::custom)?;
        if wire.coeffs.len() != ctx.degree {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for p = {}, got {}",
                ctx.degree,
                wire.p,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(CycloNum::from_poly(&ctx, &coeffs))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u32) -> Arc<CycloContext> {
        CycloContext::new(p).unwrap()
    }

    fn a(c: &Arc<CycloContext>, k: i64) -> CycloNum {
        CycloNum::a_pow(c, k)
    }

    #[test]
    fn level_validation() {
        assert!(CycloContext::new(7).is_err());
        assert!(CycloContext::new(4).is_err());
        assert_eq!(ctx(6).degree(), 4);
        assert_eq!(ctx(8).degree(), 8);
        assert_eq!(ctx(10).degree(), 8);
        assert_eq!(ctx(12).degree(), 8);
        assert!(Arc::ptr_eq(&ctx(8), &ctx(8)));
    }

    #[test]
    fn root_of_unity_order() {
        for p in [6u32, 8, 10, 12] {
            let c = ctx(p);
            let one = CycloNum::one(&c);
            assert_eq!(&a(&c, 1) * &a(&c, 2 * p as i64 - 1), one);
            assert_eq!(a(&c, p as i64), -one.clone());
            assert_ne!(a(&c, 2), one);
        }
    }

    #[test]
    fn p6_a2_plus_a_minus2_is_one() {
        let c = ctx(6);
        assert_eq!(&a(&c, 2) + &a(&c, -2), CycloNum::one(&c));
    }

    #[test]
    fn conjugation() {
        let c = ctx(8);
        assert_eq!(a(&c, 1).conj(), a(&c, 15));
        let q = CycloNum::from_rational(&c, &BigRational::new(3.into(), 7.into()));
        assert_eq!(q.conj(), q);
        let d = -(&a(&c, 2) + &a(&c, -2));
        assert_eq!(d.conj(), d);
    }

    #[test]
    fn quantum_integers() {
        for p in [6u32, 8, 10, 12] {
            let c = ctx(p);
            assert!(quantum_int(&c, 0).unwrap().is_zero());
            assert!(quantum_int(&c, 1).unwrap().is_one());
            assert_eq!(quantum_int(&c, 2).unwrap(), &a(&c, 2) + &a(&c, -2));
            assert!(quantum_int(&c, p as i64 / 2).unwrap().is_zero());
            let denom = &a(&c, 2) - &a(&c, -2);
            for n in 0..=2 * p as i64 {
                let lhs = &quantum_int(&c, n).unwrap() * &denom;
                assert_eq!(lhs, &a(&c, 2 * n) - &a(&c, -2 * n), "n = {n}");
            }
        }
        assert!(matches!(quantum_int(&ctx(8), -1), Err(Error::NegativeQuantumInt(-1))));
        let c = ctx(10);
        let f3 = quantum_factorial(&c, 3).unwrap();
        assert_eq!(f3, &quantum_int(&c, 2).unwrap() * &quantum_int(&c, 3).unwrap());
    }

    #[test]
    fn division_errors() {
        let c = ctx(8);
        let z = CycloNum::zero(&c);
        assert!(matches!(CycloNum::one(&c).checked_div(&z), Err(Error::DivisionByZero { .. })));
        let other = CycloNum::one(&ctx(10));
        assert!(matches!(
            CycloNum::one(&c).checked_add(&other),
            Err(Error::ContextMismatch { left: 8, right: 10 })
        ));
    }

    #[test]
    fn serialization_round_trip_is_bit_exact() {
        let c = ctx(10);
        let x = &(&a(&c, 3) / &quantum_int(&c, 3).unwrap()) - &CycloNum::from_int(&c, 2);
        let s = serde_json::to_string(&x).unwrap();
        let y: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string(&y).unwrap(), s);
        assert!(s.starts_with("{\"p\":10,\"coeffs\":[\""));
        let one = serde_json::to_string(&CycloNum::one(&ctx(6))).unwrap();
        assert_eq!(one, r#"{"p":6,"coeffs":["1/1","0/1","0/1","0/1"]}"#);
    }

    #[test]
    fn deserialize_rejects_bad_input() {
        assert!(serde_json::from_str::<CycloNum>(r#"{"p":6,"coeffs":["1/1"]}"#).is_err());
        assert!(serde_json::from_str::<CycloNum>(r#"{"p":6,"coeffs":["1/0","0","0","0"]}"#).is_err());
        assert!(serde_json::from_str::<CycloNum>(r#"{"p":7,"coeffs":[]}"#).is_err());
    }

    // Deterministic xorshift stream for the inverse sweep; no RNG crate needed
    // for 200 fixed samples.
    fn sample_elements(c: &Arc<CycloContext>, count: usize, seed: u64) -> Vec<CycloNum> {
        let mut s = seed;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        (0..count)
            .map(|_| {
                let coeffs: Vec<BigRational> = (0..c.degree())
                    .map(|_| {
                        let n = (next() % 21) as i64 - 10;
                        let d = (next() % 5) as i64 + 1;
                        BigRational::new(n.into(), d.into())
                    })
                    .collect();
                CycloNum::from_poly(c, &coeffs)
            })
            .filter(|x| !x.is_zero())
            .collect()
    }

    #[test]
    fn inverse_sweep() {
        for p in [6u32, 8, 10] {
            let c = ctx(p);
            let xs = sample_elements(&c, 200, 0x9e37_79b9_7f4a_7c15 ^ p as u64);
            assert!(xs.len() >= 195);
            for x in xs {
                assert!((&x * &x.inv().unwrap()).is_one(), "{x}");
            }
        }
    }

    fn arb_elem(p: u32) -> impl Strategy<Value = CycloNum> {
        let c = ctx(p);
        let d = c.degree();
        proptest::collection::vec((-20i64..20, 1i64..6), d + 3).prop_map(move |v| {
            let coeffs: Vec<BigRational> =
                v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
            CycloNum::from_poly(&c, &coeffs)
        })
    }

    proptest! {
        #[test]
        fn conj_is_involutive_ring_automorphism(x in arb_elem(10), y in arb_elem(10)) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }

        #[test]
        fn reduction_is_idempotent(x in arb_elem(12)) {
            let again = CycloNum::from_poly(x.ctx(), &x.coeffs());
            prop_assert_eq!(again, x);
        }

        #[test]
        fn field_axioms(x in arb_elem(8), y in arb_elem(8), z in arb_elem(8)) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x);
            }
        }
    }
}
