//! Surfaces with colored banded points, their trivalent spines, and the
//! admissible colorings that index the TQFT basis.

mod tree;

pub use tree::{FusionTree, Interval, Move, Rotation, RotationSite, TreeShape};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recoupling::admissible;

/// A genus-g surface with n banded points colored k_1..k_n, at level p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    genus: u32,
    colors: Vec<u32>,
    p: u32,
}

impl SurfaceSpec {
    pub fn new(genus: u32, colors: Vec<u32>, p: u32) -> Result<Self> {
        if p < 6 || p % 2 != 0 {
            return Err(Error::InvalidSurface(format!("level must be even and p >= 6 (got p = {p})")));
        }
        if colors.is_empty() {
            return Err(Error::InvalidSurface("n >= 1 banded points required".into()));
        }
        if let Some(j) = colors.iter().position(|&c| c == 0) {
            return Err(Error::InvalidSurface(format!("colors must be positive integers (k_{} = 0)", j + 1)));
        }
        let n = colors.len() as u32;
        if 2 * genus + n < 4 {
            return Err(Error::InvalidSurface(format!("2g+n >= 4 required (2*{genus}+{n} = {})", 2 * genus + n)));
        }
        let max = *colors.iter().max().expect("nonempty");
        if p < max + 4 {
            return Err(Error::InvalidSurface(format!("p >= max_j k_j + 4 required (p = {p}, max k_j = {max})")));
        }
        Ok(Self { genus, colors, p })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// k_1..k_n.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// k_j, 1-based.
    pub fn color(&self, j: usize) -> u32 {
        self.colors[j - 1]
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    /// The edge ending at banded point x_j (1-based).
    Leg(usize),
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpineEdge {
    pub name: String,
    pub kind: EdgeKind,
}

/// A uni-trivalent graph onto which the handlebody retracts: legs x1..xn,
/// a backbone tree e1.., and for each handle a stick s_i ending in a loop
/// l_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spine {
    genus: u32,
    n: usize,
    edges: Vec<SpineEdge>,
    vertices: Vec<[usize; 3]>,
    internal: Vec<usize>,
    tree: FusionTree,
    /// Backbone edge index of each internal tree interval.
    tree_edges: BTreeMap<Interval, usize>,
}

/// One basis vector: a color for each internal edge, in the spine's
/// internal-edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring(pub Vec<u32>);

impl Spine {
    /// The spine for a validated surface.
    pub fn build(spec: &SurfaceSpec, shape: TreeShape) -> Result<Self> {
        if spec.genus() > 0 && shape != TreeShape::Caterpillar {
            return Err(Error::Unsupported("only the caterpillar spine exists for genus >= 1".into()));
        }
        Self::with_tree(spec.genus(), spec.n(), FusionTree::with_shape(spec.n() + spec.genus() as usize - 1, shape))
    }

    /// A genus-0 spine on n points whose backbone is `tree` (on leaves
    /// x1..x_{n-1}, root x_n).
    pub fn planar(tree: FusionTree) -> Result<Self> {
        let n = tree.leaves() + 1;
        Self::with_tree(0, n, tree)
    }

    /// The caterpillar spine without the 2g+n >= 4 restriction; any surface
    /// with at least two attachments (banded points plus handles) and at
    /// least three points in genus 0.
    pub fn caterpillar(genus: u32, n: usize) -> Result<Self> {
        Self::with_tree(genus, n, FusionTree::with_shape((n + genus as usize).max(2) - 1, TreeShape::Caterpillar))
    }

    fn with_tree(genus: u32, n: usize, tree: FusionTree) -> Result<Self> {
        let g = genus as usize;
        let m = n + g;
        if n < 1 || m < 2 || (g == 0 && n < 3) {
            return Err(Error::InvalidSurface(format!("no trivalent spine for genus {genus} with {n} points")));
        }
        let mut edges: Vec<SpineEdge> = (1..=n)
            .map(|j| SpineEdge { name: format!("x{j}"), kind: EdgeKind::Leg(j) })
            .collect();
        let mut vertices = Vec::new();
        let push = |edges: &mut Vec<SpineEdge>, name: String| {
            edges.push(SpineEdge { name, kind: EdgeKind::Internal });
            edges.len() - 1
        };
        let mut tree_edges = BTreeMap::new();
        if m == 2 {
            // one point and one handle: the leg ends on the loop
            let l = push(&mut edges, "l1".into());
            vertices.push([0, l, l]);
        } else {
            for (t, iv) in tree.internal().enumerate() {
                tree_edges.insert(iv, push(&mut edges, format!("e{}", t + 1)));
            }
            let sticks: Vec<usize> = (1..=g).map(|i| push(&mut edges, format!("s{i}"))).collect();
            let loops: Vec<usize> = (1..=g).map(|i| push(&mut edges, format!("l{i}"))).collect();
            let attachment = |a: usize| if a <= n { a - 1 } else { sticks[a - n - 1] };
            let edge_of = |iv: Interval| {
                if iv.0 == iv.1 {
                    attachment(iv.0)
                } else if iv == tree.root() {
                    attachment(m)
                } else {
                    tree_edges[&iv]
                }
            };
            for node in tree.nodes() {
                let (l, r) = tree.children(node)?;
                vertices.push([edge_of(l), edge_of(r), edge_of(node)]);
            }
            for i in 0..g {
                vertices.push([sticks[i], loops[i], loops[i]]);
            }
        }
        let internal = (0..edges.len()).filter(|&e| edges[e].kind == EdgeKind::Internal).collect();
        Ok(Self { genus, n, edges, vertices, internal, tree, tree_edges })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[SpineEdge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    /// Indices (into `edges`) of the internal edges, in coloring order.
    pub fn internal_edges(&self) -> &[usize] {
        &self.internal
    }

    pub fn internal_names(&self) -> Vec<&str> {
        self.internal.iter().map(|&e| self.edges[e].name.as_str()).collect()
    }

    /// The backbone tree on attachments 1..m-1 (root attachment m).
    pub fn tree(&self) -> &FusionTree {
        &self.tree
    }

    pub fn edge_index(&self, name: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.name == name).ok_or_else(|| Error::UnknownEdge(name.into()))
    }

    /// Position of an internal tree interval in the coloring vector.
    pub fn interval_slot(&self, iv: Interval) -> Option<usize> {
        let e = *self.tree_edges.get(&iv)?;
        self.internal.iter().position(|&x| x == e)
    }

    /// Colors of all edges for a coloring of the internal ones.
    pub fn edge_colors(&self, k: &[u32], c: &Coloring) -> Vec<u32> {
        let mut out = vec![0; self.edges.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if let EdgeKind::Leg(j) = edge.kind {
                out[e] = k[j - 1];
            }
        }
        for (slot, &e) in self.internal.iter().enumerate() {
            out[e] = c.0[slot];
        }
        out
    }

    /// Color of the named edge under a coloring.
    pub fn edge_color(&self, k: &[u32], c: &Coloring, name: &str) -> Result<u32> {
        let e = self.edge_index(name)?;
        Ok(self.edge_colors(k, c)[e])
    }

    pub fn is_admissible(&self, k: &[u32], c: &Coloring, p: u32) -> bool {
        let colors = self.edge_colors(k, c);
        self.vertices.iter().all(|v| admissible(colors[v[0]], colors[v[1]], colors[v[2]], p))
    }

    /// All level-p admissible colorings with legs colored by k, in
    /// lexicographic order of internal colors.
    pub fn enumerate(&self, k: &[u32], p: u32) -> Result<Vec<Coloring>> {
        if k.len() != self.n {
            return Err(Error::InvalidSurface(format!("{} leg colors for {} legs", k.len(), self.n)));
        }
        let max = (p / 2).saturating_sub(2);
        let mut colors = vec![None; self.edges.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if let EdgeKind::Leg(j) = edge.kind {
                colors[e] = Some(k[j - 1]);
            }
        }
        // vertices become checkable once their last internal edge is set
        let slot_of = |e: usize| self.internal.iter().position(|&x| x == e);
        let mut ready: Vec<Vec<usize>> = vec![Vec::new(); self.internal.len() + 1];
        for (vi, v) in self.vertices.iter().enumerate() {
            let last = v.iter().filter_map(|&e| slot_of(e)).map(|s| s + 1).max().unwrap_or(0);
            ready[last].push(vi);
        }
        let ok = |colors: &[Option<u32>], vi: usize| {
            let v = self.vertices[vi];
            admissible(colors[v[0]].unwrap(), colors[v[1]].unwrap(), colors[v[2]].unwrap(), p)
        };
        if !ready[0].iter().all(|&vi| ok(&colors, vi)) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut stack = vec![0u32; self.internal.len()];
        fn go(
            spine: &Spine,
            depth: usize,
            max: u32,
            colors: &mut Vec<Option<u32>>,
            stack: &mut Vec<u32>,
            ready: &[Vec<usize>],
            ok: &dyn Fn(&[Option<u32>], usize) -> bool,
            out: &mut Vec<Coloring>,
        ) {
            if depth == spine.internal.len() {
                out.push(Coloring(stack.clone()));
                return;
            }
            let e = spine.internal[depth];
            for c in 0..=max {
                colors[e] = Some(c);
                stack[depth] = c;
                if ready[depth + 1].iter().all(|&vi| ok(colors, vi)) {
                    go(spine, depth + 1, max, colors, stack, ready, ok, out);
                }
            }
            colors[e] = None;
        }
        go(self, 0, max, &mut colors, &mut stack, &ready, &ok, &mut out);
        Ok(out)
    }

    /// Internal-edge name to color, for basis dumps.
    pub fn coloring_map(&self, c: &Coloring) -> BTreeMap<String, u32> {
        self.internal.iter().zip(&c.0).map(|(&e, &col)| (self.edges[e].name.clone(), col)).collect()
    }
}

pub fn enumerate_colorings(spine: &Spine, spec: &SurfaceSpec) -> Result<Vec<Coloring>> {
    if spine.genus() != spec.genus() || spine.n() != spec.n() {
        return Err(Error::InvalidSurface("spine does not match the surface".into()));
    }
    spine.enumerate(spec.colors(), spec.p())
}

/// dim V_p(S, k).
pub fn dim(spec: &SurfaceSpec) -> Result<usize> {
    dim_with_shape(spec, TreeShape::Caterpillar)
}

pub fn dim_with_shape(spec: &SurfaceSpec, shape: TreeShape) -> Result<usize> {
    Ok(enumerate_colorings(&Spine::build(spec, shape)?, spec)?.len())
}
