use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::diagram::{compose, TLDiagram};
use crate::cyclo::{CycloContext, CycloNum};
use crate::error::{Error, Result};

/// Formal linear combination of diagrams with a common boundary shape.
/// Zero coefficients are never stored.
#[derive(Clone)]
pub struct TLElement {
    ctx: Arc<CycloContext>,
    bottom: usize,
    top: usize,
    terms: BTreeMap<TLDiagram, CycloNum>,
}

/// The loop value -A^2 - A^{-2}.
pub fn loop_value(ctx: &Arc<CycloContext>) -> CycloNum {
    -(&CycloNum::a_pow(ctx, 2) + &CycloNum::a_pow(ctx, -2))
}

impl TLElement {
    pub fn zero(ctx: &Arc<CycloContext>, bottom: usize, top: usize) -> Self {
        Self { ctx: ctx.clone(), bottom, top, terms: BTreeMap::new() }
    }

    pub fn from_diagram(ctx: &Arc<CycloContext>, d: TLDiagram) -> Self {
        Self::from_term(d, CycloNum::one(ctx))
    }

    pub fn from_term(d: TLDiagram, c: CycloNum) -> Self {
        let mut x = Self::zero(c.ctx(), d.bottom(), d.top());
        if !c.is_zero() {
            x.terms.insert(d, c);
        }
        x
    }

    pub fn identity(ctx: &Arc<CycloContext>, n: usize) -> Self {
        Self::from_diagram(ctx, TLDiagram::identity(n))
    }

    pub fn generator(ctx: &Arc<CycloContext>, n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(ctx, TLDiagram::generator(n, i)?))
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &CycloNum)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> CycloNum {
        self.terms.get(d).cloned().unwrap_or_else(|| CycloNum::zero(&self.ctx))
    }

    /// The scalar of a closed (0 -> 0) element.
    pub fn scalar(&self) -> Result<CycloNum> {
        if self.bottom != 0 || self.top != 0 {
            return Err(Error::OpenNetwork(format!("boundary {} -> {}", self.bottom, self.top)));
        }
        Ok(self.coefficient(&TLDiagram::identity(0)))
    }

    pub(crate) fn add_term(&mut self, d: TLDiagram, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if (self.bottom, self.top) != (other.bottom, other.top) {
            return Err(Error::ArityMismatch(format!(
                "adding {}->{} to {}->{}",
                other.bottom, other.top, self.bottom, self.top
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-CycloNum::one(&self.ctx)))
    }

    pub fn scale(&self, k: &CycloNum) -> Self {
        let mut out = Self::zero(&self.ctx, self.bottom, self.top);
        if k.is_zero() {
            return out;
        }
        for (d, c) in &self.terms {
            out.terms.insert(d.clone(), c * k);
        }
        out
    }

    /// `upper` stacked on `lower`; each closed loop contributes -A^2 - A^{-2}.
    pub fn stack(lower: &Self, upper: &Self) -> Result<Self> {
        if lower.top != upper.bottom {
            return Err(Error::ArityMismatch(format!(
                "stacking {}->{} on {}->{}",
                upper.bottom, upper.top, lower.bottom, lower.top
            )));
        }
        let delta = loop_value(&lower.ctx);
        let mut out = Self::zero(&lower.ctx, lower.bottom, upper.top);
        for (ld, lc) in &lower.terms {
            for (ud, uc) in &upper.terms {
                let (loops, d) = compose(ld, ud)?;
                let mut c = lc * uc;
                if loops > 0 {
                    c = &c * &delta.pow(loops as i64)?;
                }
                out.add_term(d, c);
            }
        }
        Ok(out)
    }

    /// Algebra product `self * other`: `other` is applied first (drawn
    /// below).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::stack(other, self)
    }

    pub fn tensor(&self, right: &Self) -> Self {
        let mut out = Self::zero(&self.ctx, self.bottom + right.bottom, self.top + right.top);
        for (ld, lc) in &self.terms {
            for (rd, rc) in &right.terms {
                out.add_term(ld.tensor(rd), lc * rc);
            }
        }
        out
    }

    pub fn reflect(&self) -> Self {
        let mut out = Self::zero(&self.ctx, self.top, self.bottom);
        for (d, c) in &self.terms {
            out.terms.insert(d.reflect(), c.clone());
        }
        out
    }

    /// Markov closure: join top i to bottom i and evaluate.
    pub fn markov_trace(&self) -> Result<CycloNum> {
        let delta = loop_value(&self.ctx);
        let mut acc = CycloNum::zero(&self.ctx);
        for (d, c) in &self.terms {
            acc = &acc + &(c * &delta.pow(d.markov_loops()? as i64)?);
        }
        Ok(acc)
    }
}

impl PartialEq for TLElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.p() == other.ctx.p()
            && (self.bottom, self.top) == (other.bottom, other.top)
            && self.terms == other.terms
    }
}

impl Eq for TLElement {}

impl fmt::Debug for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TLElement {} -> {} ({} terms)", self.bottom, self.top, self.terms.len())?;
        for (d, c) in &self.terms {
            writeln!(f, "  ({c}) {d:?}")?;
        }
        Ok(())
    }
}
