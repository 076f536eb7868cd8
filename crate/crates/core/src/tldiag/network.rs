use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One elementary piece of a layer. Colors count parallel strands; every
/// edge created by a piece (or entering at the bottom boundary) is cabled by
/// its Jones-Wenzl idempotent during evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Piece {
    /// Pass an edge through unchanged.
    Id(u32),
    /// An explicit idempotent box on an edge.
    Proj(u32),
    /// Create an arc of color c: no input edges, two output edges.
    Cup(u32),
    /// Close two edges of color c.
    Cap(u32),
    /// Trivalent vertex fusing `left` and `right` into `out`.
    Merge { left: u32, right: u32, out: u32 },
    /// Trivalent vertex splitting `input` into `left` and `right`.
    Split { input: u32, left: u32, right: u32 },
}

impl Piece {
    pub fn inputs(&self) -> Vec<u32> {
        match *self {
            Piece::Id(c) | Piece::Proj(c) => vec![c],
            Piece::Cup(_) => vec![],
            Piece::Cap(c) => vec![c, c],
            Piece::Merge { left, right, .. } => vec![left, right],
            Piece::Split { input, .. } => vec![input],
        }
    }

    pub fn outputs(&self) -> Vec<u32> {
        match *self {
            Piece::Id(c) | Piece::Proj(c) => vec![c],
            Piece::Cup(c) => vec![c, c],
            Piece::Cap(_) => vec![],
            Piece::Merge { out, .. } => vec![out],
            Piece::Split { left, right, .. } => vec![left, right],
        }
    }

    /// The vertex triple, for the two vertex pieces.
    pub fn triple(&self) -> Option<(u32, u32, u32)> {
        match *self {
            Piece::Merge { left, right, out } => Some((left, right, out)),
            Piece::Split { input, left, right } => Some((left, right, input)),
            _ => None,
        }
    }

    pub(crate) fn colors(&self) -> Vec<u32> {
        let mut v = self.inputs();
        v.extend(self.outputs());
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer(pub Vec<Piece>);

/// A planar colored trivalent network given as a bottom-to-top sequence of
/// layers. `bottom` lists the colors of the edges entering from below; a
/// closed network has an empty bottom and an empty top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredNetwork {
    bottom: Vec<u32>,
    layers: Vec<Layer>,
}

impl ColoredNetwork {
    pub fn new(bottom: Vec<u32>, layers: Vec<Layer>) -> Result<Self> {
        let mut boundary = bottom.clone();
        for (li, layer) in layers.iter().enumerate() {
            let consumed: Vec<u32> = layer.0.iter().flat_map(Piece::inputs).collect();
            if consumed != boundary {
                return Err(Error::ArityMismatch(format!(
                    "layer {li} expects edges {consumed:?} but receives {boundary:?}"
                )));
            }
            boundary = layer.0.iter().flat_map(Piece::outputs).collect();
        }
        Ok(Self { bottom, layers })
    }

    /// Closed network from layers.
    pub fn closed(layers: Vec<Layer>) -> Result<Self> {
        let net = Self::new(Vec::new(), layers)?;
        if !net.top().is_empty() {
            return Err(Error::OpenNetwork(format!("top boundary {:?}", net.top())));
        }
        Ok(net)
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn top(&self) -> Vec<u32> {
        match self.layers.last() {
            Some(l) => l.0.iter().flat_map(Piece::outputs).collect(),
            None => self.bottom.clone(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top().is_empty()
    }

    /// The same network with every non-identity piece moved into a layer of
    /// its own (left to right within each original layer).
    pub fn one_piece_per_layer(&self) -> Self {
        let mut layers = Vec::new();
        for layer in &self.layers {
            for (i, piece) in layer.0.iter().enumerate() {
                if matches!(piece, Piece::Id(_)) {
                    continue;
                }
                let mut pieces = Vec::new();
                for done in &layer.0[..i] {
                    pieces.extend(done.outputs().into_iter().map(Piece::Id));
                }
                pieces.push(piece.clone());
                for todo in &layer.0[i + 1..] {
                    pieces.extend(todo.inputs().into_iter().map(Piece::Id));
                }
                layers.push(Layer(pieces));
            }
        }
        Self { bottom: self.bottom.clone(), layers }
    }

    /// Merge consecutive layers whose non-identity pieces touch disjoint
    /// edges into single layers (the inverse of `one_piece_per_layer` where
    /// possible). The result is a different bracketing of the same network.
    pub fn coarsened(&self) -> Self {
        let mut out: Vec<Layer> = Vec::new();
        for layer in &self.layers {
            if let Some(prev) = out.last() {
                if let Some(merged) = merge_layers(prev, layer) {
                    *out.last_mut().unwrap() = merged;
                    continue;
                }
            }
            out.push(layer.clone());
        }
        Self { bottom: self.bottom.clone(), layers: out }
    }

    /// A loop of color c.
    pub fn colored_loop(c: u32) -> Self {
        Self::closed(vec![Layer(vec![Piece::Cup(c)]), Layer(vec![Piece::Cap(c)])])
            .expect("well-formed")
    }

    /// The theta graph with edges a, b, c.
    pub fn theta(a: u32, b: u32, c: u32) -> Self {
        Self::closed(vec![
            Layer(vec![Piece::Cup(c)]),
            Layer(vec![Piece::Split { input: c, left: a, right: b }, Piece::Id(c)]),
            Layer(vec![Piece::Merge { left: a, right: b, out: c }, Piece::Id(c)]),
            Layer(vec![Piece::Cap(c)]),
        ])
        .expect("well-formed")
    }

    /// The tetrahedral network with vertex triples (a,b,e), (c,d,e),
    /// (a,c,f), (b,d,f).
    pub fn tetrahedron(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> Self {
        Self::closed(vec![
            Layer(vec![Piece::Cup(d)]),
            Layer(vec![Piece::Split { input: d, left: b, right: f }, Piece::Id(d)]),
            Layer(vec![
                Piece::Id(b),
                Piece::Split { input: f, left: a, right: c },
                Piece::Id(d),
            ]),
            Layer(vec![Piece::Merge { left: b, right: a, out: e }, Piece::Id(c), Piece::Id(d)]),
            Layer(vec![Piece::Merge { left: e, right: c, out: d }, Piece::Id(d)]),
            Layer(vec![Piece::Cap(d)]),
        ])
        .expect("well-formed")
    }

    /// The open tree ((x y)_e z)_d with inputs x, y, z and output d.
    pub fn left_tree(x: u32, y: u32, z: u32, e: u32, d: u32) -> Self {
        Self::new(
            vec![x, y, z],
            vec![
                Layer(vec![Piece::Merge { left: x, right: y, out: e }, Piece::Id(z)]),
                Layer(vec![Piece::Merge { left: e, right: z, out: d }]),
            ],
        )
        .expect("well-formed")
    }

    /// The open tree (x (y z)_f)_d.
    pub fn right_tree(x: u32, y: u32, z: u32, f: u32, d: u32) -> Self {
        Self::new(
            vec![x, y, z],
            vec![
                Layer(vec![Piece::Id(x), Piece::Merge { left: y, right: z, out: f }]),
                Layer(vec![Piece::Merge { left: x, right: f, out: d }]),
            ],
        )
        .expect("well-formed")
    }
}

fn merge_layers(lower: &Layer, upper: &Layer) -> Option<Layer> {
    let single_active = |l: &Layer| {
        let active: Vec<usize> =
            (0..l.0.len()).filter(|&i| !matches!(l.0[i], Piece::Id(_))).collect();
        (active.len() == 1).then(|| active[0])
    };
    let pi = single_active(lower)?;
    let qi = single_active(upper)?;
    let (p, q) = (&lower.0[pi], &upper.0[qi]);
    let p_start: usize = lower.0[..pi].iter().map(|x| x.outputs().len()).sum();
    let p_len = p.outputs().len();
    let q_start: usize = upper.0[..qi].iter().map(|x| x.inputs().len()).sum();
    let q_len = q.inputs().len();
    let disjoint = q_start + q_len <= p_start || p_start + p_len <= q_start;
    let inside = q_len == 0 && q_start > p_start && q_start < p_start + p_len;
    let tied_empty = (p_len == 0 || q_len == 0) && p_start == q_start;
    if !disjoint || inside || tied_empty {
        return None;
    }
    // tokens in lower-output coordinates: (start, nonempty, piece)
    let lower_out: Vec<u32> = lower.0.iter().flat_map(Piece::outputs).collect();
    let mut tokens: Vec<(usize, bool, Piece)> = vec![(p_start, p_len > 0, p.clone())];
    tokens.push((q_start, q_len > 0, q.clone()));
    for (k, &c) in lower_out.iter().enumerate() {
        let in_p = k >= p_start && k < p_start + p_len;
        let in_q = k >= q_start && k < q_start + q_len;
        if !in_p && !in_q {
            tokens.push((k, true, Piece::Id(c)));
        }
    }
    tokens.sort_by_key(|t| (t.0, t.1));
    Some(Layer(tokens.into_iter().map(|t| t.2).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_arity_is_checked() {
        let bad = ColoredNetwork::closed(vec![
            Layer(vec![Piece::Cup(2)]),
            Layer(vec![Piece::Cap(1)]),
        ]);
        assert!(matches!(bad, Err(Error::ArityMismatch(_))));
        let open = ColoredNetwork::closed(vec![Layer(vec![Piece::Cup(1)])]);
        assert!(matches!(open, Err(Error::OpenNetwork(_))));
    }

    #[test]
    fn builders_are_closed() {
        assert!(ColoredNetwork::colored_loop(3).is_closed());
        assert!(ColoredNetwork::theta(1, 1, 2).is_closed());
        assert!(ColoredNetwork::tetrahedron(1, 1, 2, 1, 1, 2).is_closed());
        assert!(!ColoredNetwork::left_tree(1, 1, 1, 2, 1).is_closed());
    }

    #[test]
    fn rebracketing_preserves_shape() {
        let t = ColoredNetwork::tetrahedron(2, 1, 1, 1, 2, 1);
        let fine = t.one_piece_per_layer();
        assert!(fine.layers().len() >= t.layers().len());
        assert!(fine.is_closed());
        let coarse = fine.coarsened();
        assert!(coarse.is_closed());
        assert!(coarse.layers().len() <= fine.layers().len());
        assert!(ColoredNetwork::new(coarse.bottom().to_vec(), coarse.layers().to_vec()).is_ok());
    }
}
