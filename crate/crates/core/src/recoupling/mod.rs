//! Closed-form recoupling theory at level p: admissibility, colored loop
//! values, theta and tetrahedron evaluations, 6j symbols and twist scalars.
//! Every closed form is checked against the Temperley-Lieb evaluator by
//! [`gate`].

mod cache;
pub mod gate;

pub use cache::{cache_file_name, CacheEntry, CacheFile, CACHE_VERSION};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cyclo::{quantum_factorial, quantum_int, CycloContext, CycloNum};
use crate::error::{Error, Result};

/// Level-p admissibility of a vertex triple: even sum, triangle inequality,
/// a + b + c <= p - 4 and every color at most p/2 - 2.
pub fn admissible(a: u32, b: u32, c: u32, p: u32) -> bool {
    let max = (p / 2).saturating_sub(2);
    (a + b + c) % 2 == 0
        && a <= b + c
        && b <= a + c
        && c <= a + b
        && a + b + c + 4 <= p
        && a.max(b).max(c) <= max
}

fn check_color(ctx: &CycloContext, c: u32) -> Result<()> {
    if c > ctx.max_color() {
        return Err(Error::ColorOutOfRange { color: c, p: ctx.p(), max: ctx.max_color() });
    }
    Ok(())
}

fn check_triple(ctx: &CycloContext, a: u32, b: u32, c: u32) -> Result<()> {
    if !admissible(a, b, c, ctx.p()) {
        return Err(Error::Inadmissible { a, b, c, p: ctx.p() });
    }
    Ok(())
}

fn fact(ctx: &Arc<CycloContext>, n: u32) -> CycloNum {
    quantum_factorial(ctx, n as i64).expect("non-negative")
}

fn sign(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Delta_c = (-1)^c [c+1], the colored loop value.
pub fn delta(ctx: &Arc<CycloContext>, c: u32) -> Result<CycloNum> {
    check_color(ctx, c)?;
    Ok(quantum_int(ctx, c as i64 + 1)?.scale_int(sign(c)))
}

/// theta(a, b, c) with inner colors i, j, k:
/// (-1)^{i+j+k} [i+j+k+1]! [i]! [j]! [k]! / ([i+j]! [j+k]! [i+k]!).
pub fn theta(ctx: &Arc<CycloContext>, a: u32, b: u32, c: u32) -> Result<CycloNum> {
    check_triple(ctx, a, b, c)?;
    Ok(theta_unchecked(ctx, a, b, c))
}

fn theta_unchecked(ctx: &Arc<CycloContext>, a: u32, b: u32, c: u32) -> CycloNum {
    let i = (b + c - a) / 2;
    let j = (a + c - b) / 2;
    let k = (a + b - c) / 2;
    let num = &(&(&fact(ctx, i + j + k + 1) * &fact(ctx, i)) * &fact(ctx, j)) * &fact(ctx, k);
    let den = &(&fact(ctx, i + j) * &fact(ctx, j + k)) * &fact(ctx, i + k);
    (&num / &den).scale_int(sign(i + j + k))
}

/// Labels (A, B, E; C, D, F) of a tetrahedron whose vertex triples are
/// (A,B,E), (C,D,E), (A,C,F), (B,D,F).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Six(pub [u32; 6]);

impl Six {
    pub fn new(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> Self {
        Self([a, b, e, c, d, f])
    }

    pub fn triples(&self) -> [(u32, u32, u32); 4] {
        let [a, b, e, c, d, f] = self.0;
        [(a, b, e), (c, d, e), (a, c, f), (b, d, f)]
    }

    pub fn is_admissible(&self, p: u32) -> bool {
        self.triples().iter().all(|&(x, y, z)| admissible(x, y, z, p))
    }
}

/// The tetrahedral evaluation. With a_i the half-sums of the four vertex
/// triples and b_j the half-sums over the three pairs of opposite edges,
/// Tet = prod_{i,j} [b_j - a_i]! / prod_e [e]!
///       * sum_{max a <= s <= min b} (-1)^s [s+1]! / (prod [s - a_i]! prod [b_j - s]!).
pub fn tet(ctx: &Arc<CycloContext>, six: Six) -> Result<CycloNum> {
    for (x, y, z) in six.triples() {
        check_triple(ctx, x, y, z)?;
    }
    Ok(tet_unchecked(ctx, six))
}

fn tet_unchecked(ctx: &Arc<CycloContext>, six: Six) -> CycloNum {
    let [a, b, e, c, d, f] = six.0;
    let aa = [(a + b + e) / 2, (c + d + e) / 2, (a + c + f) / 2, (b + d + f) / 2];
    let bb = [(a + d + b + c) / 2, (a + d + e + f) / 2, (b + c + e + f) / 2];
    let mut pre = CycloNum::one(ctx);
    for &bj in &bb {
        for &ai in &aa {
            pre = &pre * &fact(ctx, bj - ai);
        }
    }
    let mut labels = CycloNum::one(ctx);
    for &x in &six.0 {
        labels = &labels * &fact(ctx, x);
    }
    let lo = *aa.iter().max().unwrap();
    let hi = *bb.iter().min().unwrap();
    let mut sum = CycloNum::zero(ctx);
    for s in lo..=hi {
        let mut den = CycloNum::one(ctx);
        for &ai in &aa {
            den = &den * &fact(ctx, s - ai);
        }
        for &bj in &bb {
            den = &den * &fact(ctx, bj - s);
        }
        let term = (&fact(ctx, s + 1) / &den).scale_int(sign(s));
        sum = &sum + &term;
    }
    &(&pre / &labels) * &sum
}

/// {A B E; C D F} = Tet(A,B,E;C,D,F) Delta_F / (theta(A,C,F) theta(B,D,F)).
pub fn sixj(ctx: &Arc<CycloContext>, six: Six) -> Result<CycloNum> {
    let [a, b, _, c, d, f] = six.0;
    let t = tet(ctx, six)?;
    let den = &theta(ctx, a, c, f)? * &theta(ctx, b, d, f)?;
    (&t * &delta(ctx, f)?).checked_div(&den)
}

/// mu_c = (-1)^c A^{c^2 + 2c}, the action of a positive curl on color c.
pub fn twist_coeff(ctx: &Arc<CycloContext>, c: u32) -> Result<CycloNum> {
    check_color(ctx, c)?;
    let k = c as i64;
    Ok(CycloNum::a_pow(ctx, k * k + 2 * k).scale_int(sign(c)))
}

/// lambda_c = -A^{2c+2} - A^{-2c-2}: a curve around an edge of color c acts
/// by this scalar.
pub fn curve_eigenvalue(ctx: &Arc<CycloContext>, c: u32) -> Result<CycloNum> {
    check_color(ctx, c)?;
    let k = 2 * c as i64 + 2;
    Ok(-(&CycloNum::a_pow(ctx, k) + &CycloNum::a_pow(ctx, -k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Delta,
    Theta,
    Tet,
    Sixj,
}

/// Memoized recoupling values at one level, optionally seeded from a cache
/// file. Thread-safe.
pub struct Recoupling {
    ctx: Arc<CycloContext>,
    table: Mutex<HashMap<(Kind, Vec<u32>), CycloNum>>,
}

impl Recoupling {
    pub fn new(ctx: &Arc<CycloContext>) -> Self {
        Self { ctx: ctx.clone(), table: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    fn memo(
        &self,
        kind: Kind,
        labels: Vec<u32>,
        f: impl FnOnce() -> Result<CycloNum>,
    ) -> Result<CycloNum> {
        let key = (kind, labels);
        if let Some(v) = self.table.lock().expect("recoupling table").get(&key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.table.lock().expect("recoupling table").insert(key, v.clone());
        Ok(v)
    }

    pub fn delta(&self, c: u32) -> Result<CycloNum> {
        self.memo(Kind::Delta, vec![c], || delta(&self.ctx, c))
    }

    pub fn theta(&self, a: u32, b: u32, c: u32) -> Result<CycloNum> {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.memo(Kind::Theta, key.to_vec(), || theta(&self.ctx, a, b, c))
    }

    pub fn tet(&self, six: Six) -> Result<CycloNum> {
        self.memo(Kind::Tet, six.0.to_vec(), || tet(&self.ctx, six))
    }

    pub fn sixj(&self, six: Six) -> Result<CycloNum> {
        self.memo(Kind::Sixj, six.0.to_vec(), || {
            let [a, b, _, c, d, f] = six.0;
            let t = self.tet(six)?;
            let den = &self.theta(a, c, f)? * &self.theta(b, d, f)?;
            (&t * &self.delta(f)?).checked_div(&den)
        })
    }

    pub fn twist(&self, c: u32) -> Result<CycloNum> {
        twist_coeff(&self.ctx, c)
    }

    pub fn eigenvalue(&self, c: u32) -> Result<CycloNum> {
        curve_eigenvalue(&self.ctx, c)
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("recoupling table").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl std::fmt::Debug for Recoupling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Recoupling(p = {}, {} entries)", self.ctx.p(), self.len())
    }
}
