use std::sync::Arc;

use super::diagram::TLDiagram;
use super::element::TLElement;
use crate::cyclo::{quantum_int, CycloContext};
use crate::error::{Error, Result};

/// The Jones-Wenzl idempotent f_n, by Wenzl's recursion
/// f_{k+1} = f_k (x) 1 + ([k]/[k+1]) (f_k (x) 1) e_k (f_k (x) 1),
/// written for the loop value -A^2 - A^{-2}.
pub fn jones_wenzl(ctx: &Arc<CycloContext>, n: usize) -> Result<TLElement> {
    let half = (ctx.p() / 2) as usize;
    if n >= half {
        return Err(Error::JonesWenzlOutOfRange { n, p: ctx.p(), vanishing: half });
    }
    let mut f = TLElement::identity(ctx, n.min(1));
    for k in 1..n {
        let ext = f.tensor(&TLElement::identity(ctx, 1));
        let e = TLElement::from_diagram(ctx, TLDiagram::generator(k + 1, k)?);
        let coeff = quantum_int(ctx, k as i64)?.checked_div(&quantum_int(ctx, k as i64 + 1)?)?;
        let sandwich = ext.mul(&e)?.mul(&ext)?;
        f = ext.add(&sandwich.scale(&coeff))?;
    }
    Ok(f)
}
