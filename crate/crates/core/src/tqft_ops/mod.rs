//! Operators on V_p(S, k): curve operators, recoupling transport between
//! fusion trees, Dehn twists by spectral projection, point-pushing maps,
//! and the hermitian form on the colored-spine basis.

mod curve;

pub use curve::{CurveDesc, LoopDesc};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloContext, CycloNum};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::recoupling::{Recoupling, Six};
use crate::spine::{Coloring, FusionTree, Interval, Move, Rotation, Spine, SurfaceSpec, TreeShape};
use crate::tldiag::{ColoredNetwork, Layer, Piece, TlEngine};

/// A square matrix acting on V_p(S, k), indexed by the caterpillar basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Operator {
    spec: SurfaceSpec,
    matrix: Matrix,
}

impl Operator {
    pub fn new(spec: &SurfaceSpec, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.ctx().p() != spec.p() {
            return Err(Error::ArityMismatch("operator matrix must be square at the surface level".into()));
        }
        Ok(Self { spec: spec.clone(), matrix })
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// self * other (other acts first).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self { spec: self.spec.clone(), matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self { spec: self.spec.clone(), matrix: self.matrix.add(&other.matrix)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self { spec: self.spec.clone(), matrix: self.matrix.sub(&other.matrix)? })
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        Self { spec: self.spec.clone(), matrix: self.matrix.scale(s) }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { spec: self.spec.clone(), matrix: self.matrix.inverse()? })
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }
}

/// Basis norms <G^c, G^c>; the basis is orthogonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianData {
    pub norms: Vec<CycloNum>,
}

impl HermitianData {
    /// <Mu, v> = <u, Mv> for all u, v, i.e. M_ab N_a = conj(M_ba) N_b.
    pub fn is_self_adjoint(&self, m: &Matrix) -> bool {
        let n = self.norms.len();
        (0..n).all(|a| {
            (0..n).all(|b| &(m.get(a, b) * &self.norms[a]) == &(&m.get(b, a).conj() * &self.norms[b]))
        })
    }
}

struct TreeBasis {
    spine: Spine,
    basis: Vec<Coloring>,
    index: HashMap<Coloring, usize>,
}

/// The space V_p(S, k) with its caterpillar basis, plus caches for the
/// recoupling data needed to build operators.
pub struct Tqft {
    spec: SurfaceSpec,
    ctx: Arc<CycloContext>,
    rec: Arc<Recoupling>,
    spine: Spine,
    basis: Vec<Coloring>,
    trees: Mutex<HashMap<FusionTree, Arc<TreeBasis>>>,
}

impl Tqft {
    pub fn new(spec: &SurfaceSpec) -> Result<Self> {
        let ctx = CycloContext::new(spec.p())?;
        let rec = Arc::new(Recoupling::new(&ctx));
        Self::with_recoupling(spec, rec)
    }

    /// Share a recoupling table (possibly loaded from a cache file).
    pub fn with_recoupling(spec: &SurfaceSpec, rec: Arc<Recoupling>) -> Result<Self> {
        if rec.ctx().p() != spec.p() {
            return Err(Error::ContextMismatch { left: spec.p(), right: rec.ctx().p() });
        }
        let spine = Spine::build(spec, TreeShape::Caterpillar)?;
        let basis = spine.enumerate(spec.colors(), spec.p())?;
        Ok(Self { spec: spec.clone(), ctx: rec.ctx().clone(), rec, spine, basis, trees: Mutex::new(HashMap::new()) })
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn recoupling(&self) -> &Arc<Recoupling> {
        &self.rec
    }

    pub fn spine(&self) -> &Spine {
        &self.spine
    }

    pub fn basis(&self) -> &[Coloring] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn operator(&self, m: Matrix) -> Operator {
        Operator { spec: self.spec.clone(), matrix: m }
    }

    pub fn identity(&self) -> Operator {
        self.operator(Matrix::identity(&self.ctx, self.dim()))
    }

    fn scalar(&self, s: &CycloNum) -> Operator {
        self.operator(Matrix::scalar(&self.ctx, self.dim(), s))
    }

    fn genus0(&self, what: &str) -> Result<()> {
        if self.spec.genus() != 0 {
            return Err(Error::Unsupported(format!("{what} is only available in genus 0")));
        }
        Ok(())
    }

    /// The curve around a spine edge acts diagonally by lambda of its color.
    pub fn edge_curve_operator(&self, name: &str) -> Result<Operator> {
        let e = self.spine.edge_index(name)?;
        let diag = self
            .basis
            .iter()
            .map(|c| self.rec.eigenvalue(self.spine.edge_colors(self.spec.colors(), c)[e]))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.operator(Matrix::diagonal(&self.ctx, &diag)))
    }

    fn tree_basis(&self, tree: &FusionTree) -> Result<Arc<TreeBasis>> {
        if let Some(t) = self.trees.lock().expect("tree cache").get(tree) {
            return Ok(t.clone());
        }
        let spine = Spine::planar(tree.clone())?;
        let basis = spine.enumerate(self.spec.colors(), self.spec.p())?;
        if basis.len() != self.dim() {
            return Err(Error::Integrity(format!(
                "tree {:?} has {} basis vectors, caterpillar has {}",
                tree,
                basis.len(),
                self.dim()
            )));
        }
        let index = basis.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let tb = Arc::new(TreeBasis { spine, basis, index });
        self.trees.lock().expect("tree cache").insert(tree.clone(), tb.clone());
        Ok(tb)
    }

    fn interval_color(&self, tb: &TreeBasis, c: &Coloring, iv: Interval) -> u32 {
        let n = self.spec.n();
        if iv.0 == iv.1 {
            self.spec.color(iv.0)
        } else if iv == (1, n - 1) {
            self.spec.color(n)
        } else {
            c.0[tb.spine.interval_slot(iv).expect("interval of the tree")]
        }
    }

    /// Change of basis for one rotation: column b holds the image of the
    /// old basis vector b expanded in the new tree's basis.
    fn move_matrix(&self, tree: &FusionTree, m: Move) -> Result<(FusionTree, Matrix)> {
        let site = tree.rotation_site(m)?;
        let new_tree = tree.apply(m)?;
        let old = self.tree_basis(tree)?;
        let new = self.tree_basis(&new_tree)?;
        let slot_new = new.spine.interval_slot(site.new_inner).expect("new inner interval");
        let mut p = Matrix::zeros(&self.ctx, self.dim(), self.dim());
        let max = self.ctx.max_color();
        for (col, c) in old.basis.iter().enumerate() {
            let x = self.interval_color(&old, c, site.x);
            let y = self.interval_color(&old, c, site.y);
            let z = self.interval_color(&old, c, site.z);
            let d = self.interval_color(&old, c, m.node);
            let inner = self.interval_color(&old, c, site.old_inner);
            // the new coloring agrees with the old one off the rotated edge
            let mut template = vec![0u32; new.basis.first().map_or(0, |b| b.0.len())];
            for iv in new_tree.internal() {
                if iv != site.new_inner {
                    template[new.spine.interval_slot(iv).expect("slot")] = self.interval_color(&old, c, iv);
                }
            }
            for f in 0..=max {
                template[slot_new] = f;
                let Some(&row) = new.index.get(&Coloring(template.clone())) else { continue };
                let six = match m.rotation {
                    Rotation::Right => Six::new(y, x, inner, z, d, f),
                    Rotation::Left => Six::new(y, z, inner, x, d, f),
                };
                p.set(row, col, self.rec.sixj(six)?);
            }
        }
        Ok((new_tree, p))
    }

    /// Apply a sequence of moves starting from the caterpillar. Returns the
    /// final tree and the transport matrix from caterpillar coordinates to
    /// coordinates in that tree.
    pub fn fusion_transport(&self, moves: &[Move]) -> Result<(FusionTree, Matrix)> {
        self.genus0("fusion transport")?;
        let mut tree = self.spine.tree().clone();
        let mut p = Matrix::identity(&self.ctx, self.dim());
        for &m in moves {
            let (next, step) = self.move_matrix(&tree, m)?;
            p = step.mul(&p)?;
            tree = next;
        }
        Ok((tree, p))
    }

    /// Transport to `target` and back, along the canonical path.
    pub fn transport_to(&self, target: &FusionTree) -> Result<(Matrix, Matrix)> {
        let path = target.path_from_caterpillar();
        let (reached, p) = self.fusion_transport(&path)?;
        debug_assert_eq!(&reached, target);
        let mut back = Matrix::identity(&self.ctx, self.dim());
        let mut tree = reached;
        for m in path.iter().rev().map(|m| m.inverse()) {
            let (next, step) = self.move_matrix(&tree, m)?;
            back = step.mul(&back)?;
            tree = next;
        }
        Ok((p, back))
    }

    /// The standard tree in which band(i..j) (2 <= i < j <= n-1) is an edge:
    /// the caterpillar on x_1..x_{i-1}, G, x_{j+1}..x_{n-1} with G the
    /// caterpillar on x_i..x_j.
    pub fn band_tree(&self, i: usize, j: usize) -> Result<FusionTree> {
        let m = self.spec.n() - 1;
        let mut blocks: Vec<Interval> = (1..i).map(|a| (a, a)).collect();
        blocks.push((i, j));
        blocks.extend((j + 1..=m).map(|a| (a, a)));
        let mut internal = BTreeSet::new();
        for t in 2..blocks.len() {
            internal.insert((1, blocks[t - 1].1));
        }
        for b in i + 1..=j {
            if (i, b) != (1, m) {
                internal.insert((i, b));
            }
        }
        FusionTree::new(m, internal)
    }

    /// The band as an interval of leaves, or the scalar color when the band
    /// bounds a disk containing a single point (or none) on either side.
    fn normalize_band(&self, i: usize, j: usize) -> Result<BandForm> {
        self.genus0("band curves")?;
        let n = self.spec.n();
        if !(1 <= i && i <= j && j <= n) {
            return Err(Error::InvalidCurve(format!("band {i}..{j} needs 1 <= i <= j <= {n}")));
        }
        let (i, j) = match (i, j) {
            (1, j) if j == n => return Ok(BandForm::Scalar(0)),
            (i, j) if j == n => (1, i - 1),
            ij => ij,
        };
        if i == j {
            return Ok(BandForm::Scalar(self.spec.color(i)));
        }
        if (i, j) == (1, n - 1) {
            return Ok(BandForm::Scalar(self.spec.color(n)));
        }
        Ok(BandForm::Interval((i, j)))
    }

    /// The operator of band(iv) computed by transporting into `tree`, which
    /// must contain the interval as an edge.
    pub fn band_operator_in(&self, tree: &FusionTree, iv: Interval) -> Result<Operator> {
        if !tree.internal().any(|x| x == iv) {
            return Err(Error::InvalidMove(format!("tree does not contain {iv:?}")));
        }
        let (p, back) = self.transport_to(tree)?;
        let tb = self.tree_basis(tree)?;
        let diag = tb
            .basis
            .iter()
            .map(|c| self.rec.eigenvalue(self.interval_color(&tb, c, iv)))
            .collect::<Result<Vec<_>>>()?;
        let d = Matrix::diagonal(&self.ctx, &diag);
        Ok(self.operator(back.mul(&d)?.mul(&p)?))
    }

    /// The colors that can flow through the band: lambda of these is the
    /// spectrum of its operator.
    fn band_channel(&self, form: &BandForm) -> Result<Vec<u32>> {
        match *form {
            BandForm::Scalar(c) => Ok(vec![c]),
            BandForm::Interval(iv) => {
                let tree = self.tree_for(iv)?;
                let tb = self.tree_basis(&tree)?;
                let set: BTreeSet<u32> = tb.basis.iter().map(|c| self.interval_color(&tb, c, iv)).collect();
                Ok(set.into_iter().collect())
            }
        }
    }

    fn tree_for(&self, iv: Interval) -> Result<FusionTree> {
        if iv.0 == 1 {
            Ok(self.spine.tree().clone())
        } else {
            self.band_tree(iv.0, iv.1)
        }
    }

    pub fn curve_operator(&self, curve: &CurveDesc) -> Result<Operator> {
        match curve {
            CurveDesc::Edge(name) => self.edge_curve_operator(name),
            CurveDesc::Band { i, j } => match self.normalize_band(*i, *j)? {
                BandForm::Scalar(c) => Ok(self.scalar(&self.rec.eigenvalue(c)?)),
                BandForm::Interval(iv) if iv.0 == 1 => {
                    let slot = self.spine.interval_slot(iv).expect("caterpillar edge");
                    let diag = self
                        .basis
                        .iter()
                        .map(|c| self.rec.eigenvalue(c.0[slot]))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(self.operator(Matrix::diagonal(&self.ctx, &diag)))
                }
                BandForm::Interval(iv) => self.band_operator_in(&self.band_tree(iv.0, iv.1)?, iv),
            },
            CurveDesc::Cable { curve, color } => {
                // S_0 = 1, S_1 = Z, S_{c+1} = Z S_c - S_{c-1}
                let z = self.curve_operator(curve)?;
                let mut prev = self.identity();
                let mut cur = z.clone();
                if *color == 0 {
                    return Ok(prev);
                }
                for _ in 1..*color {
                    let next = z.mul(&cur)?.sub(&prev)?;
                    prev = cur;
                    cur = next;
                }
                Ok(cur)
            }
        }
    }

    /// Colors c such that lambda_c may occur in the spectrum of the curve.
    pub fn curve_channel(&self, curve: &CurveDesc) -> Result<Vec<u32>> {
        match curve {
            CurveDesc::Edge(name) => {
                let e = self.spine.edge_index(name)?;
                let set: BTreeSet<u32> =
                    self.basis.iter().map(|c| self.spine.edge_colors(self.spec.colors(), c)[e]).collect();
                Ok(set.into_iter().collect())
            }
            CurveDesc::Band { i, j } => self.band_channel(&self.normalize_band(*i, *j)?),
            CurveDesc::Cable { .. } => Err(Error::InvalidCurve("a cable is not a simple closed curve".into())),
        }
    }

    /// Spectral projections of a curve operator: (color, projection) pairs,
    /// after checking that prod (Z - lambda_c) vanishes.
    pub fn spectral_projections(&self, curve: &CurveDesc) -> Result<Vec<(u32, Operator)>> {
        let z = self.curve_operator(curve)?;
        let colors = self.curve_channel(curve)?;
        let lambdas = colors.iter().map(|&c| self.rec.eigenvalue(c)).collect::<Result<Vec<_>>>()?;
        let shifted: Vec<Operator> = lambdas.iter().map(|l| z.sub(&self.scalar(l))).collect::<Result<_>>()?;
        let mut min_poly = self.identity();
        for s in &shifted {
            min_poly = min_poly.mul(s)?;
        }
        if !min_poly.matrix().is_zero() {
            return Err(Error::Integrity(format!("spectrum of {curve} is not inside lambda_c, c in {colors:?}")));
        }
        let mut out = Vec::new();
        for (a, &c) in colors.iter().enumerate() {
            let mut proj = self.identity();
            for (b, s) in shifted.iter().enumerate() {
                if a != b {
                    let denom = (&lambdas[a] - &lambdas[b]).inv()?;
                    proj = proj.mul(s)?.scale(&denom);
                }
            }
            out.push((c, proj));
        }
        Ok(out)
    }

    fn twist_power(&self, curve: &CurveDesc, sign: i64) -> Result<Operator> {
        let mut t = self.operator(Matrix::zeros(&self.ctx, self.dim(), self.dim()));
        for (c, proj) in self.spectral_projections(curve)? {
            t = t.add(&proj.scale(&self.rec.twist(c)?.pow(sign)?))?;
        }
        Ok(t)
    }

    /// Dehn twist along a simple curve: sum_c mu_c Pi_c.
    pub fn dehn_twist(&self, curve: &CurveDesc) -> Result<Operator> {
        self.twist_power(curve, 1)
    }

    pub fn dehn_twist_inverse(&self, curve: &CurveDesc) -> Result<Operator> {
        self.twist_power(curve, -1)
    }

    /// Push(delta_j) = T_{band(1..j)} T_{band(2..j)}^{-1}.
    pub fn point_push(&self, l: LoopDesc) -> Result<Operator> {
        self.genus0("point pushing")?;
        let n = self.spec.n();
        if n < 4 || !(2 <= l.j && l.j < n) {
            return Err(Error::InvalidCurve(format!("push generator {} needs 2 <= j <= n-1 with n >= 4 (n = {n})", l.j)));
        }
        let outer = self.dehn_twist(&CurveDesc::band(1, l.j))?;
        let inner = self.dehn_twist_inverse(&CurveDesc::band(2, l.j))?;
        outer.mul(&inner)
    }

    pub fn point_push_generators(&self) -> Result<Vec<Operator>> {
        (2..self.spec.n()).map(|j| self.point_push(LoopDesc { j })).collect()
    }

    /// All band curves band(i..j), 1 <= i <= j <= n.
    pub fn band_curves(&self) -> Vec<CurveDesc> {
        let n = self.spec.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                out.push(CurveDesc::band(i, j));
            }
        }
        out
    }

    /// The caterpillar glued to its mirror image along all legs, for the
    /// given basis vector.
    pub fn doubled_network(&self, c: &Coloring) -> Result<ColoredNetwork> {
        self.genus0("the doubled network")?;
        let n = self.spec.n();
        let k = self.spec.colors();
        let node = |t: usize| if t == n - 1 { k[n - 1] } else { c.0[t - 2] };
        let tail = |t: usize| -> Vec<Piece> { k[t..].iter().map(|&x| Piece::Id(x)).collect() };
        let mut layers = vec![Layer(vec![Piece::Cup(k[n - 1])])];
        for t in (2..n).rev() {
            let mut l = vec![Piece::Split { input: node(t), left: if t == 2 { k[0] } else { node(t - 1) }, right: k[t - 1] }];
            l.extend(tail(t));
            layers.push(Layer(l));
        }
        for t in 2..n {
            let mut l = vec![Piece::Merge { left: if t == 2 { k[0] } else { node(t - 1) }, right: k[t - 1], out: node(t) }];
            l.extend(tail(t));
            layers.push(Layer(l));
        }
        layers.push(Layer(vec![Piece::Cap(k[n - 1])]));
        ColoredNetwork::closed(layers)
    }

    /// prod over vertices of theta / prod over internal edges of Delta.
    pub fn basis_norms_closed_form(&self) -> Result<HermitianData> {
        let norms = self
            .basis
            .iter()
            .map(|c| {
                let colors = self.spine.edge_colors(self.spec.colors(), c);
                let mut v = CycloNum::one(&self.ctx);
                for t in self.spine.vertices() {
                    v = &v * &self.rec.theta(colors[t[0]], colors[t[1]], colors[t[2]])?;
                }
                for &e in self.spine.internal_edges() {
                    v = v.checked_div(&self.rec.delta(colors[e])?)?;
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HermitianData { norms })
    }

    /// Norms by evaluating each doubled network, checked against the
    /// closed form.
    pub fn basis_norms(&self) -> Result<HermitianData> {
        self.genus0("the hermitian form")?;
        let engine = TlEngine::new(&self.ctx);
        let norms = self
            .basis
            .iter()
            .map(|c| engine.evaluate_network(&self.doubled_network(c)?))
            .collect::<Result<Vec<_>>>()?;
        let closed = self.basis_norms_closed_form()?;
        if closed.norms != norms {
            return Err(Error::Integrity("doubled-network norms disagree with theta/Delta products".into()));
        }
        if norms.iter().any(CycloNum::is_zero) {
            return Err(Error::Integrity("a basis vector has zero norm".into()));
        }
        Ok(HermitianData { norms })
    }

    /// Internal-edge color maps of the basis, for dumps.
    pub fn basis_maps(&self) -> Vec<BTreeMap<String, u32>> {
        self.basis.iter().map(|c| self.spine.coloring_map(c)).collect()
    }
}

enum BandForm {
    Scalar(u32),
    Interval(Interval),
}

#[cfg(test)]
mod tests;
