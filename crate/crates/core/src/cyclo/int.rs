//! Fixed-width elements of Z[A] used by the diagram evaluator's fast path.
//! Every operation is overflow-checked; callers fall back to [`CycloNum`]
//! when a `None` comes back.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{CycloContext, CycloNum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntCyclo(Vec<i128>);

impl IntCyclo {
    pub fn from_vec(v: Vec<i128>) -> Self {
        Self(v)
    }

    pub fn a_pow(ctx: &CycloContext, k: i64) -> Self {
        Self(ctx.power(k).iter().map(|&c| c as i128).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn negate(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn add_assign(&mut self, other: &Self) -> Option<()> {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.checked_add(*b)?;
        }
        Some(())
    }

    pub fn mul(&self, other: &Self, ctx: &CycloContext) -> Option<Self> {
        let d = self.0.len();
        let mut conv = vec![0i128; 2 * d - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                if b != 0 {
                    conv[i + j] = conv[i + j].checked_add(a.checked_mul(b)?)?;
                }
            }
        }
        let mut out = conv[..d].to_vec();
        for (k, &c) in conv.iter().enumerate().skip(d) {
            if c == 0 {
                continue;
            }
            for (slot, &r) in out.iter_mut().zip(ctx.power(k as i64)) {
                if r != 0 {
                    *slot = slot.checked_add(c.checked_mul(r as i128)?)?;
                }
            }
        }
        Some(Self(out))
    }

    pub fn to_cyclo(&self, ctx: &Arc<CycloContext>, den: BigInt) -> CycloNum {
        CycloNum::from_parts(ctx, self.0.iter().map(|&c| BigInt::from(c)).collect(), den)
    }
}
