//! Linear combinations of diagrams over a pluggable coefficient ring. The
//! exact ring is `CycloNum`; the fast ring is overflow-checked `i128`
//! vectors over Z[A], which reports `None` so callers can retry exactly.

use std::collections::HashMap;
use std::sync::Arc;

use super::diagram::{compose_unchecked, TLDiagram};
use crate::cyclo::{CycloContext, CycloNum, IntCyclo};

pub(crate) trait Ring: Sync {
    type Elem: Clone + Send + Sync;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add_assign(&self, x: &mut Self::Elem, y: &Self::Elem) -> Option<()>;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
    /// delta^k with delta = -A^2 - A^{-2}.
    fn delta_pow(&self, k: usize) -> Option<Self::Elem>;
}

const DELTA_POWERS: usize = 48;

pub(crate) struct ExactRing {
    pub ctx: Arc<CycloContext>,
    delta: Vec<CycloNum>,
}

impl ExactRing {
    pub fn new(ctx: &Arc<CycloContext>) -> Self {
        let d = -(&CycloNum::a_pow(ctx, 2) + &CycloNum::a_pow(ctx, -2));
        let mut delta = vec![CycloNum::one(ctx)];
        for k in 1..DELTA_POWERS {
            delta.push(&delta[k - 1] * &d);
        }
        Self { ctx: ctx.clone(), delta }
    }
}

impl Ring for ExactRing {
    type Elem = CycloNum;
    fn one(&self) -> CycloNum {
        CycloNum::one(&self.ctx)
    }
    fn is_zero(&self, x: &CycloNum) -> bool {
        x.is_zero()
    }
    fn add_assign(&self, x: &mut CycloNum, y: &CycloNum) -> Option<()> {
        *x = &*x + y;
        Some(())
    }
    fn mul(&self, x: &CycloNum, y: &CycloNum) -> Option<CycloNum> {
        Some(x * y)
    }
    fn delta_pow(&self, k: usize) -> Option<CycloNum> {
        match self.delta.get(k) {
            Some(v) => Some(v.clone()),
            None => self.delta[1].pow(k as i64).ok(),
        }
    }
}

pub(crate) struct IntRing {
    pub ctx: Arc<CycloContext>,
    delta: Vec<Option<IntCyclo>>,
}

impl IntRing {
    pub fn new(ctx: &Arc<CycloContext>) -> Self {
        let mut d = IntCyclo::a_pow(ctx, 2);
        d.add_assign(&IntCyclo::a_pow(ctx, -2)).expect("small");
        let d = d.negate();
        let mut delta = vec![Some(IntCyclo::a_pow(ctx, 0))];
        for k in 1..DELTA_POWERS {
            let next = delta[k - 1].as_ref().and_then(|prev| prev.mul(&d, ctx));
            delta.push(next);
        }
        Self { ctx: ctx.clone(), delta }
    }
}

impl Ring for IntRing {
    type Elem = IntCyclo;
    fn one(&self) -> IntCyclo {
        IntCyclo::a_pow(&self.ctx, 0)
    }
    fn is_zero(&self, x: &IntCyclo) -> bool {
        x.is_zero()
    }
    fn add_assign(&self, x: &mut IntCyclo, y: &IntCyclo) -> Option<()> {
        x.add_assign(y)
    }
    fn mul(&self, x: &IntCyclo, y: &IntCyclo) -> Option<IntCyclo> {
        x.mul(y, &self.ctx)
    }
    fn delta_pow(&self, k: usize) -> Option<IntCyclo> {
        self.delta.get(k).cloned().flatten()
    }
}

/// A linear combination of diagrams sharing one boundary shape.
#[derive(Clone)]
pub(crate) struct LinComb<E> {
    pub bottom: usize,
    pub top: usize,
    pub terms: HashMap<TLDiagram, E>,
}

impl<E: Clone> LinComb<E> {
    pub fn single(d: TLDiagram, c: E) -> Self {
        let (bottom, top) = (d.bottom(), d.top());
        let mut terms = HashMap::new();
        terms.insert(d, c);
        Self { bottom, top, terms }
    }

    /// Sorted view, for deterministic iteration.
    pub fn sorted(&self) -> Vec<(&TLDiagram, &E)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

/// Apply `op` (a combination of diagrams on `op_width` strands) at strand
/// offset `offset` of the state's top boundary. When `projector` is set the
/// operator is a Jones-Wenzl idempotent, which annihilates any state term with
/// a turn-back inside its window; those terms are skipped.
pub(crate) fn apply_at<R: Ring>(
    ring: &R,
    state: &LinComb<R::Elem>,
    op: &[(TLDiagram, R::Elem)],
    offset: usize,
    projector: bool,
) -> Option<LinComb<R::Elem>> {
    let Some((first, _)) = op.first() else {
        return Some(LinComb { bottom: state.bottom, top: state.top, terms: HashMap::new() });
    };
    let width = first.bottom();
    let right = state.top - offset - width;
    let padded: Vec<(TLDiagram, &R::Elem)> =
        op.iter().map(|(d, c)| (d.pad(offset, right), c)).collect();
    let new_top = padded[0].0.top();
    let mut out: HashMap<TLDiagram, R::Elem> = HashMap::with_capacity(state.terms.len());
    for (sd, sc) in &state.terms {
        if projector && width > 1 && sd.has_top_turnback_in(offset, width) {
            continue;
        }
        for (pd, pc) in &padded {
            let (loops, d) = compose_unchecked(sd, pd);
            let mut c = ring.mul(sc, pc)?;
            if loops > 0 {
                c = ring.mul(&c, &ring.delta_pow(loops)?)?;
            }
            match out.get_mut(&d) {
                Some(slot) => ring.add_assign(slot, &c)?,
                None => {
                    out.insert(d, c);
                }
            }
        }
    }
    out.retain(|_, c| !ring.is_zero(c));
    Some(LinComb { bottom: state.bottom, top: new_top, terms: out })
}
