//! Generated matrix algebras: saturation to a linear basis, commutants,
//! span membership, and the irreducibility report for a surface.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloContext, CycloNum};
use crate::error::{Error, Result};
use crate::matrix::{Echelon, Matrix};
use crate::recoupling::Recoupling;
use crate::spine::SurfaceSpec;
use crate::tqft_ops::{Operator, Tqft};

/// Linear basis (reduced echelon form over the flattened entries) of the
/// unital algebra generated by some matrices.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    dim: usize,
    echelon: Echelon,
    rounds: usize,
    spec: Option<SurfaceSpec>,
}

impl AlgebraBasis {
    /// Dimension of the algebra as a vector space.
    pub fn algebra_dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Size of the matrices.
    pub fn matrix_dim(&self) -> usize {
        self.dim
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn spec(&self) -> Option<&SurfaceSpec> {
        self.spec.as_ref()
    }

    pub fn elements(&self, ctx: &Arc<CycloContext>) -> Vec<Matrix> {
        self.echelon
            .rows()
            .map(|r| Matrix::from_flat(ctx, self.dim, r.to_vec()).expect("square"))
            .collect()
    }

    pub fn contains_matrix(&self, x: &Matrix) -> Result<bool> {
        if x.rows() != self.dim || x.cols() != self.dim {
            return Err(Error::ArityMismatch(format!("{}x{} matrix vs algebra on {}", x.rows(), x.cols(), self.dim)));
        }
        Ok(self.echelon.contains(&x.flatten()))
    }
}

fn check_square(gens: &[Matrix], d: usize, ctx: &CycloContext) -> Result<()> {
    for g in gens {
        if g.rows() != d || g.cols() != d {
            return Err(Error::ArityMismatch(format!("generator is {}x{}, expected {d}x{d}", g.rows(), g.cols())));
        }
        if g.ctx().p() != ctx.p() {
            return Err(Error::ContextMismatch { left: ctx.p(), right: g.ctx().p() });
        }
    }
    Ok(())
}

/// Start from the identity and the generators; left-multiply every newly
/// found basis element by every generator and reduce, until a full round
/// adds nothing.
pub fn saturate_matrices(ctx: &Arc<CycloContext>, d: usize, gens: &[Matrix]) -> Result<AlgebraBasis> {
    check_square(gens, d, ctx)?;
    let mut echelon = Echelon::new(ctx, d * d);
    let mut frontier = Vec::new();
    for m in std::iter::once(Matrix::identity(ctx, d)).chain(gens.iter().cloned()) {
        if echelon.insert(&m.flatten()) {
            frontier.push(m);
        }
    }
    let mut rounds = 0;
    while !frontier.is_empty() && echelon.rank() < d * d {
        rounds += 1;
        let products: Vec<Matrix> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |g| g.mul(x)))
            .collect::<Result<_>>()?;
        frontier = products.into_iter().filter(|y| echelon.insert(&y.flatten())).collect();
    }
    Ok(AlgebraBasis { dim: d, echelon, rounds, spec: None })
}

/// Basis of { X : X M = M X for every M in `ms` }.
pub fn commutant_matrices(ctx: &Arc<CycloContext>, d: usize, ms: &[Matrix]) -> Result<Vec<Matrix>> {
    check_square(ms, d, ctx)?;
    // (XM - MX)_{ij} = sum_b X_{ib} M_{bj} - sum_a M_{ia} X_{aj}
    let rows: Vec<Vec<CycloNum>> = ms
        .par_iter()
        .flat_map_iter(|m| {
            (0..d * d).map(move |ij| {
                let (i, j) = (ij / d, ij % d);
                let mut row = vec![CycloNum::zero(ctx); d * d];
                for b in 0..d {
                    row[i * d + b] = &row[i * d + b] + m.get(b, j);
                }
                for a in 0..d {
                    row[a * d + j] = &row[a * d + j] - m.get(i, a);
                }
                row
            })
        })
        .collect();
    let mut echelon = Echelon::new(ctx, d * d);
    for r in &rows {
        echelon.insert(r);
    }
    echelon.nullspace().into_iter().map(|v| Matrix::from_flat(ctx, d, v)).collect()
}

fn same_spec(ops: &[Operator]) -> Result<Option<&SurfaceSpec>> {
    let spec = ops.first().map(Operator::spec);
    if ops.iter().any(|o| Some(o.spec()) != spec) {
        return Err(Error::SpecMismatch);
    }
    Ok(spec)
}

/// The unital algebra generated by operators on one surface. An empty
/// generator list needs the space itself: use [`saturate_matrices`].
pub fn saturate(gens: &[Operator]) -> Result<AlgebraBasis> {
    let spec = same_spec(gens)?.ok_or_else(|| Error::Unsupported("no generators: the space is unknown".into()))?;
    let ctx = gens[0].matrix().ctx().clone();
    let ms: Vec<Matrix> = gens.iter().map(|g| g.matrix().clone()).collect();
    let mut basis = saturate_matrices(&ctx, gens[0].dim(), &ms)?;
    basis.spec = Some(spec.clone());
    Ok(basis)
}

pub fn commutant_dim(gens: &[Operator]) -> Result<usize> {
    Ok(commutant(gens)?.len())
}

pub fn commutant(gens: &[Operator]) -> Result<Vec<Matrix>> {
    same_spec(gens)?.ok_or_else(|| Error::Unsupported("no generators: the space is unknown".into()))?;
    let ctx = gens[0].matrix().ctx().clone();
    let ms: Vec<Matrix> = gens.iter().map(|g| g.matrix().clone()).collect();
    commutant_matrices(&ctx, gens[0].dim(), &ms)
}

pub fn contains(x: &Operator, basis: &AlgebraBasis) -> Result<bool> {
    if let Some(spec) = basis.spec() {
        if spec != x.spec() {
            return Err(Error::SpecMismatch);
        }
    }
    basis.contains_matrix(x.matrix())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorMode {
    PointPushing,
    Curves,
    Both,
}

impl FromStr for GeneratorMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "point-pushing" => Ok(Self::PointPushing),
            "curves" => Ok(Self::Curves),
            "both" => Ok(Self::Both),
            _ => Err(Error::Parse(format!("unknown generator mode `{s}`"))),
        }
    }
}

impl fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PointPushing => "point-pushing",
            Self::Curves => "curves",
            Self::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Saturation,
    Commutant,
    Both,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "saturation" => Ok(Self::Saturation),
            "commutant" => Ok(Self::Commutant),
            "both" => Ok(Self::Both),
            _ => Err(Error::Parse(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Irreducible,
    Reducible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub spec: SurfaceSpec,
    pub mode: GeneratorMode,
    pub dim: usize,
    pub generators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutant_dim: Option<usize>,
    pub verdict: Verdict,
    /// A basis of the commutant, present for reducible results when asked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Matrix>>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub mode: GeneratorMode,
    pub method: Method,
    pub certificate: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Recoupling table to share (e.g. loaded from a cache file).
    pub recoupling: Option<Arc<Recoupling>>,
}

impl AnalyzeOptions {
    pub fn new(mode: GeneratorMode) -> Self {
        Self { mode, method: Method::Both, certificate: false, threads: None, recoupling: None }
    }
}

/// The generators of a mode: pushes delta_2..delta_{n-1}, all band curves,
/// or both.
pub fn generators(t: &Tqft, mode: GeneratorMode) -> Result<Vec<Operator>> {
    let mut gens = Vec::new();
    if matches!(mode, GeneratorMode::PointPushing | GeneratorMode::Both) {
        gens.extend(t.point_push_generators()?);
    }
    if matches!(mode, GeneratorMode::Curves | GeneratorMode::Both) {
        for c in t.band_curves() {
            gens.push(t.curve_operator(&c)?);
        }
    }
    Ok(gens)
}

pub fn analyze(spec: &SurfaceSpec, opts: &AnalyzeOptions) -> Result<AlgebraReport> {
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Unsupported(e.to_string()))?;
            pool.install(|| analyze_inner(spec, opts))
        }
        None => analyze_inner(spec, opts),
    }
}

fn analyze_inner(spec: &SurfaceSpec, opts: &AnalyzeOptions) -> Result<AlgebraReport> {
    if spec.genus() != 0 {
        return Err(Error::Unsupported("algebra analysis is available in genus 0".into()));
    }
    let t = match &opts.recoupling {
        Some(rec) => Tqft::with_recoupling(spec, rec.clone())?,
        None => Tqft::new(spec)?,
    };
    let d = t.dim();
    if d == 0 {
        return Err(Error::EmptySpace);
    }
    let gens = generators(&t, opts.mode)?;
    let ctx = t.ctx().clone();
    let ms: Vec<Matrix> = gens.iter().map(|g| g.matrix().clone()).collect();

    let saturated = match opts.method {
        Method::Commutant => None,
        _ => Some(saturate_matrices(&ctx, d, &ms)?),
    };
    let comm = match opts.method {
        Method::Saturation => None,
        _ => Some(commutant_matrices(&ctx, d, &ms)?),
    };
    if let (Some(alg), Some(comm)) = (&saturated, &comm) {
        let via_basis = commutant_matrices(&ctx, d, &alg.elements(&ctx))?;
        if via_basis.len() != comm.len() {
            return Err(Error::Integrity(format!(
                "commutant of generators has dimension {}, of the saturated algebra {}",
                comm.len(),
                via_basis.len()
            )));
        }
        if (alg.algebra_dim() == d * d) != (comm.len() == 1) {
            return Err(Error::Integrity(format!(
                "algebra dimension {} of {} but commutant dimension {}",
                alg.algebra_dim(),
                d * d,
                comm.len()
            )));
        }
    }
    let irreducible = match (&saturated, &comm) {
        (_, Some(c)) => c.len() == 1,
        (Some(a), None) => a.algebra_dim() == d * d,
        (None, None) => unreachable!("a method always runs"),
    };
    let verdict = if irreducible { Verdict::Irreducible } else { Verdict::Reducible };
    let certificate = match (&comm, opts.certificate && !irreducible) {
        (Some(c), true) => {
            for x in c {
                for m in &ms {
                    if x.mul(m)? != m.mul(x)? {
                        return Err(Error::Integrity("commutant certificate does not commute".into()));
                    }
                }
            }
            Some(c.clone())
        }
        _ => None,
    };
    Ok(AlgebraReport {
        spec: spec.clone(),
        mode: opts.mode,
        dim: d,
        generators: gens.len(),
        algebra_dim: saturated.as_ref().map(AlgebraBasis::algebra_dim),
        rounds: saturated.as_ref().map(AlgebraBasis::rounds),
        commutant_dim: comm.as_ref().map(Vec::len),
        verdict,
        certificate,
    })
}

#[cfg(test)]
mod tests;
