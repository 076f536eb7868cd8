//! Oracle equality gate: every closed-form value is compared with the
//! brute-force Temperley-Lieb evaluation of the corresponding network.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{admissible, delta, tet, theta, Six};
use crate::cyclo::CycloContext;
use crate::error::Result;
use crate::tldiag::{Admissibility, Arithmetic, ColoredNetwork, TlEngine};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateEntry {
    /// `delta`, `theta`, `tet`, or `admissible` (predicate vs oracle theta != 0).
    pub kind: String,
    pub labels: Vec<u32>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateReport {
    pub p: u32,
    pub max_color: u32,
    pub entries: Vec<GateEntry>,
}

impl GateReport {
    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn count(&self, kind: &str) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }
}

/// Admissible triples with every color at most `max`, in lexicographic order.
pub fn admissible_triples(p: u32, max: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                if admissible(a, b, c, p) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Tetrahedra with all four vertices admissible and colors at most `max`.
pub fn admissible_sixes(p: u32, max: u32) -> Vec<Six> {
    let triples = admissible_triples(p, max);
    let mut out = Vec::new();
    for &[a, b, e] in &triples {
        for c in 0..=max {
            for d in 0..=max {
                if !admissible(c, d, e, p) {
                    continue;
                }
                for f in 0..=max {
                    let six = Six::new(a, b, e, c, d, f);
                    if six.is_admissible(p) {
                        out.push(six);
                    }
                }
            }
        }
    }
    out
}

/// Run the gate at level p for colors up to `max_color`.
pub fn run(p: u32, max_color: u32) -> Result<GateReport> {
    let ctx = CycloContext::new(p)?;
    let engine = TlEngine::new(&ctx);
    let mut entries = Vec::new();

    for c in 0..=max_color.min(ctx.max_color()) {
        let oracle = engine.evaluate_network(&ColoredNetwork::colored_loop(c))?;
        entries.push(GateEntry { kind: "delta".into(), labels: vec![c], pass: oracle == delta(&ctx, c)? });
    }

    let triples = admissible_triples(p, max_color);
    let thetas: Vec<GateEntry> = triples
        .par_iter()
        .map(|&[a, b, c]| {
            let oracle = engine.evaluate_network(&ColoredNetwork::theta(a, b, c))?;
            Ok(GateEntry { kind: "theta".into(), labels: vec![a, b, c], pass: oracle == theta(&ctx, a, b, c)? })
        })
        .collect::<Result<_>>()?;
    entries.extend(thetas);

    // relaxed evaluation admits colors up to p/2 - 1, the largest idempotent
    let relaxed_max = max_color.min(p / 2 - 1);
    let mut all = Vec::new();
    for a in 0..=relaxed_max {
        for b in 0..=relaxed_max {
            for c in 0..=relaxed_max {
                all.push([a, b, c]);
            }
        }
    }
    let equiv: Vec<GateEntry> = all
        .par_iter()
        .map(|&[a, b, c]| {
            let net = ColoredNetwork::theta(a, b, c);
            let v = engine.evaluate_with(&net, Admissibility::Relaxed, Arithmetic::Auto)?;
            Ok(GateEntry {
                kind: "admissible".into(),
                labels: vec![a, b, c],
                pass: admissible(a, b, c, p) == !v.is_zero(),
            })
        })
        .collect::<Result<_>>()?;
    entries.extend(equiv);

    let sixes = admissible_sixes(p, max_color);
    let tets: Vec<GateEntry> = sixes
        .par_iter()
        .map(|&six| {
            let [a, b, e, c, d, f] = six.0;
            let oracle = engine.evaluate_network(&ColoredNetwork::tetrahedron(a, b, e, c, d, f))?;
            Ok(GateEntry { kind: "tet".into(), labels: six.0.to_vec(), pass: oracle == tet(&ctx, six)? })
        })
        .collect::<Result<_>>()?;
    entries.extend(tets);

    Ok(GateReport { p, max_color, entries })
}
