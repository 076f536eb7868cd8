//! Binary fusion trees on an ordered list of leaves, stored as laminar
//! families of intervals.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interval of leaves `[start..=end]`, 1-based.
pub type Interval = (usize, usize);

/// The binary tree shapes offered for genus-0 spines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeShape {
    /// ((..((x1 x2) x3)..) x_{m-1}): every internal edge is [1..i].
    Caterpillar,
    /// (x1 (x2 (.. (x_{m-2} x_{m-1})..))).
    RightComb,
    /// Recursive halving.
    Balanced,
}

/// A rooted binary tree on leaves 1..=m. Only the internal nodes other than
/// the root are stored; leaves and the root (the full interval) are implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FusionTree {
    leaves: usize,
    internal: BTreeSet<Interval>,
}

/// Direction of a rotation at a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rotation {
    /// ((X Y) Z) -> (X (Y Z)).
    Right,
    /// (X (Y Z)) -> ((X Y) Z).
    Left,
}

/// An elementary move: a rotation at the node with the given interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub node: Interval,
    pub rotation: Rotation,
}

impl Move {
    pub fn inverse(self) -> Self {
        let rotation = match self.rotation {
            Rotation::Right => Rotation::Left,
            Rotation::Left => Rotation::Right,
        };
        Self { node: self.node, rotation }
    }
}

/// The pieces of a node touched by a rotation: X, Y, Z and the inner
/// interval before and after.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RotationSite {
    pub x: Interval,
    pub y: Interval,
    pub z: Interval,
    pub old_inner: Interval,
    pub new_inner: Interval,
}

impl FusionTree {
    pub fn new(leaves: usize, internal: impl IntoIterator<Item = Interval>) -> Result<Self> {
        if leaves < 1 {
            return Err(Error::InvalidMove("a tree needs at least one leaf".into()));
        }
        let internal: BTreeSet<Interval> = internal.into_iter().collect();
        for &(i, j) in &internal {
            if i < 1 || j > leaves || j <= i || (i, j) == (1, leaves) {
                return Err(Error::InvalidMove(format!("bad internal interval {i}..{j}")));
            }
        }
        let t = Self { leaves, internal };
        let expected = leaves.saturating_sub(2);
        let laminar = t.internal.iter().all(|&(a, b)| {
            t.internal.iter().all(|&(c, d)| b < c || d < a || (a <= c && d <= b) || (c <= a && b <= d))
        });
        if !laminar || t.internal.len() != expected {
            return Err(Error::InvalidMove(format!("{:?} is not a binary tree on {leaves} leaves", t.internal)));
        }
        Ok(t)
    }

    pub fn with_shape(leaves: usize, shape: TreeShape) -> Self {
        let mut internal = BTreeSet::new();
        match shape {
            TreeShape::Caterpillar => {
                for j in 2..leaves {
                    internal.insert((1, j));
                }
            }
            TreeShape::RightComb => {
                for i in 2..leaves {
                    internal.insert((i, leaves));
                }
            }
            TreeShape::Balanced => {
                fn split(i: usize, j: usize, out: &mut BTreeSet<Interval>, root: Interval) {
                    if j <= i {
                        return;
                    }
                    if (i, j) != root {
                        out.insert((i, j));
                    }
                    let mid = (i + j) / 2;
                    split(i, mid, out, root);
                    split(mid + 1, j, out, root);
                }
                split(1, leaves, &mut internal, (1, leaves));
            }
        }
        Self { leaves, internal }
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn root(&self) -> Interval {
        (1, self.leaves)
    }

    /// Internal (non-leaf, non-root) intervals in sorted order.
    pub fn internal(&self) -> impl Iterator<Item = Interval> + '_ {
        self.internal.iter().copied()
    }

    pub fn contains(&self, iv: Interval) -> bool {
        iv.0 == iv.1 || iv == self.root() || self.internal.contains(&iv)
    }

    /// Every node with two children: internal intervals plus the root.
    pub fn nodes(&self) -> Vec<Interval> {
        let mut v: Vec<Interval> = self.internal.iter().copied().collect();
        if self.leaves >= 2 {
            v.push(self.root());
        }
        v
    }

    /// The two children of a node.
    pub fn children(&self, node: Interval) -> Result<(Interval, Interval)> {
        if node.0 >= node.1 || !self.contains(node) {
            return Err(Error::InvalidMove(format!("{node:?} is not a node")));
        }
        let left_end = self
            .internal
            .iter()
            .filter(|&&(a, b)| a == node.0 && b < node.1)
            .map(|&(_, b)| b)
            .max()
            .unwrap_or(node.0);
        Ok(((node.0, left_end), (left_end + 1, node.1)))
    }

    pub fn rotation_site(&self, m: Move) -> Result<RotationSite> {
        let (l, r) = self.children(m.node)?;
        match m.rotation {
            Rotation::Right => {
                if l.0 == l.1 {
                    return Err(Error::InvalidMove(format!("no left subtree to rotate at {:?}", m.node)));
                }
                let (x, y) = self.children(l)?;
                Ok(RotationSite { x, y, z: r, old_inner: l, new_inner: (y.0, r.1) })
            }
            Rotation::Left => {
                if r.0 == r.1 {
                    return Err(Error::InvalidMove(format!("no right subtree to rotate at {:?}", m.node)));
                }
                let (y, z) = self.children(r)?;
                Ok(RotationSite { x: l, y, z, old_inner: r, new_inner: (l.0, y.1) })
            }
        }
    }

    pub fn apply(&self, m: Move) -> Result<Self> {
        let site = self.rotation_site(m)?;
        let mut internal = self.internal.clone();
        internal.remove(&site.old_inner);
        internal.insert(site.new_inner);
        Ok(Self { leaves: self.leaves, internal })
    }

    /// Moves carrying `self` to the caterpillar: left rotations at each node
    /// of the left spine until its right child is a leaf.
    pub fn path_to_caterpillar(&self) -> Vec<Move> {
        let mut moves = Vec::new();
        let mut tree = self.clone();
        let mut node = self.root();
        while node.0 < node.1 {
            loop {
                let (_, r) = tree.children(node).expect("node");
                if r.0 == r.1 {
                    break;
                }
                let m = Move { node, rotation: Rotation::Left };
                tree = tree.apply(m).expect("valid rotation");
                moves.push(m);
            }
            node = tree.children(node).expect("node").0;
        }
        moves
    }

    /// Moves carrying the caterpillar to `self`.
    pub fn path_from_caterpillar(&self) -> Vec<Move> {
        self.path_to_caterpillar().into_iter().rev().map(Move::inverse).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_binary_trees() {
        for m in 1..=8 {
            for shape in [TreeShape::Caterpillar, TreeShape::RightComb, TreeShape::Balanced] {
                let t = FusionTree::with_shape(m, shape);
                assert!(FusionTree::new(m, t.internal()).is_ok(), "{m} {shape:?}");
            }
        }
        assert_eq!(FusionTree::with_shape(4, TreeShape::Caterpillar).internal().collect::<Vec<_>>(), vec![(1, 2), (1, 3)]);
        assert_eq!(FusionTree::with_shape(4, TreeShape::RightComb).internal().collect::<Vec<_>>(), vec![(2, 4), (3, 4)]);
    }

    #[test]
    fn rejects_non_laminar_families() {
        assert!(FusionTree::new(4, [(1, 2), (2, 3)]).is_err());
        assert!(FusionTree::new(4, [(1, 2)]).is_err());
        assert!(FusionTree::new(4, [(1, 4), (1, 2)]).is_err());
    }

    #[test]
    fn rotations_invert() {
        let t = FusionTree::with_shape(5, TreeShape::Caterpillar);
        let m = Move { node: (1, 5), rotation: Rotation::Right };
        let u = t.apply(m).unwrap();
        assert_eq!(u.internal().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (4, 5)]);
        assert_eq!(u.apply(m.inverse()).unwrap(), t);
        assert!(t.apply(Move { node: (1, 5), rotation: Rotation::Left }).is_err());
    }

    #[test]
    fn paths_reach_the_target() {
        for shape in [TreeShape::RightComb, TreeShape::Balanced] {
            for m in 2..=7 {
                let target = FusionTree::with_shape(m, shape);
                let cat = FusionTree::with_shape(m, TreeShape::Caterpillar);
                let mut t = cat.clone();
                for mv in target.path_from_caterpillar() {
                    t = t.apply(mv).unwrap();
                }
                assert_eq!(t, target);
                let mut back = target.clone();
                for mv in target.path_to_caterpillar() {
                    back = back.apply(mv).unwrap();
                }
                assert_eq!(back, cat);
            }
        }
    }
}
