use std::fmt;

use crate::error::{Error, Result};

/// A crossingless matching between `bottom` lower and `top` upper boundary
/// points.
///
/// Points are numbered `0..bottom` left to right along the bottom edge,
/// then `bottom..bottom + top` left to right along the top edge; `pairing`
/// is the fixed-point-free involution giving each point's partner. Since the
/// involution is stored verbatim, equal diagrams compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    bottom: usize,
    top: usize,
    pairing: Vec<u16>,
}

impl TLDiagram {
    pub fn from_pairing(bottom: usize, top: usize, pairing: Vec<u16>) -> Result<Self> {
        let n = bottom + top;
        if pairing.len() != n {
            return Err(Error::ArityMismatch(format!(
                "pairing has {} entries for {} points",
                pairing.len(),
                n
            )));
        }
        for (i, &j) in pairing.iter().enumerate() {
            let j = j as usize;
            if j >= n || j == i || pairing[j] as usize != i {
                return Err(Error::ArityMismatch(format!("point {i} is not properly paired")));
            }
        }
        let d = Self { bottom, top, pairing };
        if !d.is_planar() {
            return Err(Error::ArityMismatch("pairing has crossing arcs".into()));
        }
        Ok(d)
    }

    pub fn identity(n: usize) -> Self {
        let pairing = (0..2 * n).map(|i| ((i + n) % (2 * n)) as u16).collect();
        Self { bottom: n, top: n, pairing }
    }

    /// The generator e_i (1-based, 1 <= i < n): cap over strands i, i+1 below
    /// a cup over the same strands above.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::ArityMismatch(format!("e_{i} does not exist on {n} strands")));
        }
        let mut d = Self::identity(n);
        let (l, r) = (i - 1, i);
        d.pairing[l] = r as u16;
        d.pairing[r] = l as u16;
        d.pairing[n + l] = (n + r) as u16;
        d.pairing[n + r] = (n + l) as u16;
        Ok(d)
    }

    /// `c` nested cups: 0 bottom points, 2c top points.
    pub fn cups(c: usize) -> Self {
        let pairing = (0..2 * c).map(|t| (2 * c - 1 - t) as u16).collect();
        Self { bottom: 0, top: 2 * c, pairing }
    }

    /// `c` nested caps: 2c bottom points, 0 top points.
    pub fn caps(c: usize) -> Self {
        Self::cups(c).reflect()
    }

    /// Trivalent vertex fusing `a` and `b` strands into `c`: the innermost
    /// (a + b - c)/2 strands of the two bundles turn back, the rest go up.
    /// `None` when parity or the triangle inequality fails.
    pub fn vertex(a: usize, b: usize, c: usize) -> Option<Self> {
        if (a + b + c) % 2 != 0 || c > a + b || a > b + c || b > a + c {
            return None;
        }
        let turn = (a + b - c) / 2;
        let n = a + b + c;
        let mut pairing = vec![0u16; n];
        let mut link = |x: usize, y: usize| {
            pairing[x] = y as u16;
            pairing[y] = x as u16;
        };
        for t in 0..turn {
            link(a - 1 - t, a + t);
        }
        let bot = a + b;
        for s in 0..a - turn {
            link(s, bot + s);
        }
        for s in 0..b - turn {
            link(a + turn + s, bot + (a - turn) + s);
        }
        Some(Self { bottom: a + b, top: c, pairing })
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn pairing(&self) -> &[u16] {
        &self.pairing
    }

    /// Position of a point when the boundary is read counterclockwise:
    /// bottom left to right, then top right to left.
    fn circle_pos(&self, i: usize) -> usize {
        if i < self.bottom {
            i
        } else {
            self.bottom + (self.top - 1 - (i - self.bottom))
        }
    }

    pub fn is_planar(&self) -> bool {
        let n = self.bottom + self.top;
        let mut at = vec![0usize; n];
        for i in 0..n {
            at[self.circle_pos(i)] = i;
        }
        let mut stack: Vec<usize> = Vec::new();
        for &pt in &at {
            let partner = self.pairing[pt] as usize;
            if stack.last() == Some(&partner) {
                stack.pop();
            } else {
                stack.push(pt);
            }
        }
        stack.is_empty()
    }

    /// Mirror in a horizontal line.
    pub fn reflect(&self) -> Self {
        let (b, t) = (self.bottom, self.top);
        let swap = |i: usize| if i < b { t + i } else { i - b };
        let mut pairing = vec![0u16; b + t];
        for i in 0..b + t {
            pairing[swap(i)] = swap(self.pairing[i] as usize) as u16;
        }
        Self { bottom: t, top: b, pairing }
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, right: &Self) -> Self {
        let (b1, t1, b2, t2) = (self.bottom, self.top, right.bottom, right.top);
        let map_left = |i: usize| if i < b1 { i } else { b1 + b2 + (i - b1) };
        let map_right = |i: usize| if i < b2 { b1 + i } else { b1 + b2 + t1 + (i - b2) };
        let mut pairing = vec![0u16; b1 + b2 + t1 + t2];
        for i in 0..b1 + t1 {
            pairing[map_left(i)] = map_left(self.pairing[i] as usize) as u16;
        }
        for i in 0..b2 + t2 {
            pairing[map_right(i)] = map_right(right.pairing[i] as usize) as u16;
        }
        Self { bottom: b1 + b2, top: t1 + t2, pairing }
    }

    /// `id_left (x) self (x) id_right`.
    pub fn pad(&self, left: usize, right: usize) -> Self {
        let mut d = self.clone();
        if left > 0 {
            d = Self::identity(left).tensor(&d);
        }
        if right > 0 {
            d = d.tensor(&Self::identity(right));
        }
        d
    }

    /// Number of loops formed by joining top point i to bottom point i.
    pub fn markov_loops(&self) -> Result<usize> {
        if self.bottom != self.top {
            return Err(Error::ArityMismatch("closure of a non-square diagram".into()));
        }
        let n = self.bottom;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut pt = start;
            loop {
                seen[pt] = true;
                let q = self.pairing[pt] as usize;
                seen[q] = true;
                // the closing strand joins top i to bottom i
                pt = if q < n { q + n } else { q - n };
                if pt == start {
                    break;
                }
            }
        }
        Ok(loops)
    }

    /// True when two top points inside `window` are joined to each other.
    pub(crate) fn has_top_turnback_in(&self, start: usize, len: usize) -> bool {
        let lo = self.bottom + start;
        let hi = lo + len;
        (lo..hi).any(|i| {
            let q = self.pairing[i] as usize;
            q >= lo && q < hi
        })
    }
}

/// Stack `upper` on top of `lower`. Returns the number of closed loops
/// removed and the resulting diagram.
pub fn compose(lower: &TLDiagram, upper: &TLDiagram) -> Result<(usize, TLDiagram)> {
    if lower.top != upper.bottom {
        return Err(Error::ArityMismatch(format!(
            "cannot stack a diagram with {} bottom points on one with {} top points",
            upper.bottom, lower.top
        )));
    }
    Ok(compose_unchecked(lower, upper))
}

pub(crate) fn compose_unchecked(lower: &TLDiagram, upper: &TLDiagram) -> (usize, TLDiagram) {
    let a = lower.bottom;
    let b = lower.top;
    let c = upper.top;
    let mut visited = vec![false; b];
    let mut out = vec![u16::MAX; a + c];

    let walk = |mut in_lower: bool, mut pt: usize, visited: &mut Vec<bool>| -> usize {
        loop {
            if in_lower {
                let q = lower.pairing[pt] as usize;
                if q < a {
                    return q;
                }
                let m = q - a;
                visited[m] = true;
                in_lower = false;
                pt = m;
            } else {
                let q = upper.pairing[pt] as usize;
                if q >= b {
                    return a + (q - b);
                }
                visited[q] = true;
                in_lower = true;
                pt = a + q;
            }
        }
    };

    for i in 0..a {
        if out[i] == u16::MAX {
            let e = walk(true, i, &mut visited);
            out[i] = e as u16;
            out[e] = i as u16;
        }
    }
    for j in 0..c {
        if out[a + j] == u16::MAX {
            let e = walk(false, b + j, &mut visited);
            out[a + j] = e as u16;
            out[e] = (a + j) as u16;
        }
    }
    let mut loops = 0;
    for start in 0..b {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut m = start;
        loop {
            visited[m] = true;
            let q = upper.pairing[m] as usize;
            visited[q] = true;
            let r = lower.pairing[a + q] as usize - a;
            if r == start {
                break;
            }
            m = r;
        }
    }
    (loops, TLDiagram { bottom: a, top: c, pairing: out })
}

impl fmt::Debug for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TL[{}->{}:", self.bottom, self.top)?;
        for i in 0..self.bottom + self.top {
            let j = self.pairing[i] as usize;
            if i < j {
                let name = |k: usize| {
                    if k < self.bottom {
                        format!("b{k}")
                    } else {
                        format!("t{}", k - self.bottom)
                    }
                };
                write!(f, " {}-{}", name(i), name(j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generator_squares_to_one_loop() {
        let e1 = TLDiagram::generator(2, 1).unwrap();
        let (loops, d) = compose(&e1, &e1).unwrap();
        assert_eq!(loops, 1);
        assert_eq!(d, e1);
    }

    #[test]
    fn identity_is_neutral() {
        for n in 1..5 {
            for i in 1..n {
                let e = TLDiagram::generator(n, i).unwrap();
                assert_eq!(compose(&TLDiagram::identity(n), &e).unwrap(), (0, e.clone()));
                assert_eq!(compose(&e, &TLDiagram::identity(n)).unwrap(), (0, e.clone()));
            }
        }
    }

    #[test]
    fn cup_cap_closure() {
        let (loops, d) = compose(&TLDiagram::cups(1), &TLDiagram::caps(1)).unwrap();
        assert_eq!(loops, 1);
        assert_eq!(d.bottom() + d.top(), 0);
        assert_eq!(TLDiagram::identity(1).markov_loops().unwrap(), 1);
        assert_eq!(compose(&TLDiagram::cups(3), &TLDiagram::caps(3)).unwrap().0, 3);
    }

    #[test]
    fn jones_relations() {
        // e1 e2 e1 = e1 on three strands
        let e1 = TLDiagram::generator(3, 1).unwrap();
        let e2 = TLDiagram::generator(3, 2).unwrap();
        let (l1, x) = compose(&e1, &e2).unwrap();
        let (l2, y) = compose(&x, &e1).unwrap();
        assert_eq!((l1 + l2, y), (0, e1.clone()));
        // far commutativity e1 e3 = e3 e1
        let f1 = TLDiagram::generator(4, 1).unwrap();
        let f3 = TLDiagram::generator(4, 3).unwrap();
        assert_eq!(compose(&f1, &f3).unwrap(), compose(&f3, &f1).unwrap());
    }

    #[test]
    fn arity_errors() {
        assert!(compose(&TLDiagram::identity(2), &TLDiagram::identity(3)).is_err());
        assert!(TLDiagram::generator(2, 2).is_err());
        // crossing: b0-t1, b1-t0
        assert!(TLDiagram::from_pairing(2, 2, vec![3, 2, 1, 0]).is_err());
        assert!(TLDiagram::from_pairing(2, 2, vec![2, 3, 0, 1]).is_ok());
    }

    #[test]
    fn vertex_shape() {
        let v = TLDiagram::vertex(1, 1, 0).unwrap();
        assert_eq!(v, TLDiagram::caps(1));
        let v = TLDiagram::vertex(2, 2, 2).unwrap();
        assert!(v.is_planar());
        assert_eq!((v.bottom(), v.top()), (4, 2));
        assert!(TLDiagram::vertex(1, 1, 1).is_none());
        assert!(TLDiagram::vertex(1, 1, 4).is_none());
        assert!(TLDiagram::vertex(3, 1, 0).is_none());
    }

    // Random planar diagrams as products of generators.
    fn arb_word(n: usize) -> impl Strategy<Value = TLDiagram> {
        proptest::collection::vec(1..n, 0..8).prop_map(move |word| {
            word.into_iter().fold(TLDiagram::identity(n), |acc, i| {
                compose(&acc, &TLDiagram::generator(n, i).unwrap()).unwrap().1
            })
        })
    }

    proptest! {
        #[test]
        fn stacking_preserves_planarity(x in arb_word(5), y in arb_word(5), z in arb_word(5)) {
            let (l1, xy) = compose(&x, &y).unwrap();
            prop_assert!(xy.is_planar());
            let (l2, left) = compose(&xy, &z).unwrap();
            let (l3, yz) = compose(&y, &z).unwrap();
            let (l4, right) = compose(&x, &yz).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(l1 + l2, l3 + l4);
        }

        #[test]
        fn reflection_is_antihomomorphism(x in arb_word(4), y in arb_word(4)) {
            let (l, xy) = compose(&x, &y).unwrap();
            let (l2, yx) = compose(&y.reflect(), &x.reflect()).unwrap();
            prop_assert_eq!(l, l2);
            prop_assert_eq!(xy.reflect(), yx);
        }
    }
}
