//! Temperley-Lieb diagrams over Q(A) with the Kauffman loop value
//! delta = -A^2 - A^{-2}, Jones-Wenzl idempotents, and brute-force evaluation
//! of colored trivalent networks. This is the reference against which the
//! closed-form recoupling kernel is checked.

mod diagram;
mod element;
pub(crate) mod engine;
mod jw;
mod network;

pub use diagram::{compose, TLDiagram};
pub use element::{loop_value, TLElement};
pub use jw::jones_wenzl;
pub use network::{ColoredNetwork, Layer, Piece};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::cyclo::{CycloContext, CycloNum, IntCyclo};
use crate::error::{Error, Result};
use crate::recoupling::admissible;
use engine::{apply_at, ExactRing, IntRing, LinComb, Ring};

/// How vertex and color constraints are enforced during evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// Every color at most p/2 - 2 and every vertex admissible at level p;
    /// violations are errors.
    Strict,
    /// Colors up to p/2 - 1 (the largest idempotent that exists); a vertex
    /// failing parity or the triangle inequality makes the network zero.
    Relaxed,
}

/// Which coefficient arithmetic to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    /// Fixed-width integers over Z[A] with an exact fallback on overflow.
    Auto,
    /// `CycloNum` throughout.
    Exact,
}

struct Projector {
    exact: Vec<(TLDiagram, CycloNum)>,
    /// f_n scaled by a positive integer so every coefficient lies in Z[A].
    scaled: Option<(Vec<(TLDiagram, IntCyclo)>, BigInt)>,
}

/// An evaluation session for one level: holds the idempotent cache.
pub struct TlEngine {
    ctx: Arc<CycloContext>,
    exact: ExactRing,
    int: IntRing,
    projectors: Mutex<HashMap<usize, Arc<Projector>>>,
}

impl TlEngine {
    pub fn new(ctx: &Arc<CycloContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            exact: ExactRing::new(ctx),
            int: IntRing::new(ctx),
            projectors: Mutex::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    fn projector(&self, n: usize) -> Result<Arc<Projector>> {
        if let Some(p) = self.projectors.lock().expect("projector cache").get(&n) {
            return Ok(p.clone());
        }
        let f = jones_wenzl(&self.ctx, n)?;
        let exact: Vec<(TLDiagram, CycloNum)> =
            f.terms().map(|(d, c)| (d.clone(), c.clone())).collect();
        let scale = exact.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denominator()));
        let scaled = exact
            .iter()
            .map(|(d, c)| {
                let factor = &scale / c.denominator();
                let v = c
                    .numerators()
                    .iter()
                    .map(|n| i128::try_from(n * &factor).ok())
                    .collect::<Option<Vec<_>>>()?;
                Some((d.clone(), IntCyclo::from_vec(v)))
            })
            .collect::<Option<Vec<_>>>()
            .map(|terms| (terms, scale));
        let proj = Arc::new(Projector { exact, scaled });
        self.projectors.lock().expect("projector cache").insert(n, proj.clone());
        Ok(proj)
    }

    /// f_n as a diagram combination (cached).
    pub fn jones_wenzl(&self, n: usize) -> Result<TLElement> {
        let proj = self.projector(n)?;
        let mut out = TLElement::zero(&self.ctx, n, n);
        for (d, c) in &proj.exact {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    /// Bracket value of a closed network, with strict admissibility.
    pub fn evaluate_network(&self, net: &ColoredNetwork) -> Result<CycloNum> {
        self.evaluate_with(net, Admissibility::Strict, Arithmetic::Auto)
    }

    pub fn evaluate_with(
        &self,
        net: &ColoredNetwork,
        mode: Admissibility,
        arith: Arithmetic,
    ) -> Result<CycloNum> {
        if !net.is_closed() {
            return Err(Error::OpenNetwork(format!(
                "bottom {:?}, top {:?}",
                net.bottom(),
                net.top()
            )));
        }
        self.expand_with(net, mode, arith)?.scalar()
    }

    /// Expand an open network into a diagram combination from its bottom
    /// strands to its top strands.
    pub fn expand(&self, net: &ColoredNetwork) -> Result<TLElement> {
        self.expand_with(net, Admissibility::Strict, Arithmetic::Auto)
    }

    pub fn expand_with(
        &self,
        net: &ColoredNetwork,
        mode: Admissibility,
        arith: Arithmetic,
    ) -> Result<TLElement> {
        let bottom: usize = net.bottom().iter().map(|&c| c as usize).sum();
        let top: usize = net.top().iter().map(|&c| c as usize).sum();
        if !self.check(net, mode)? {
            return Ok(TLElement::zero(&self.ctx, bottom, top));
        }
        if arith == Arithmetic::Auto {
            if let Some((state, scale)) = self.run_int(net)? {
                let mut out = TLElement::zero(&self.ctx, bottom, top);
                for (d, c) in state.sorted() {
                    out.add_term(d.clone(), c.to_cyclo(&self.ctx, scale.clone()));
                }
                return Ok(out);
            }
        }
        let state = self.run_exact(net)?;
        let mut out = TLElement::zero(&self.ctx, bottom, top);
        for (d, c) in state.sorted() {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    /// Validate colors and vertices. `Ok(false)` means the network is
    /// structurally zero (relaxed mode only).
    fn check(&self, net: &ColoredNetwork, mode: Admissibility) -> Result<bool> {
        let p = self.ctx.p();
        let max = match mode {
            Admissibility::Strict => p / 2 - 2,
            Admissibility::Relaxed => p / 2 - 1,
        };
        let pieces = net.layers().iter().flat_map(|l| l.0.iter());
        for c in net.bottom().iter().copied().chain(pieces.clone().flat_map(Piece::colors)) {
            if c > max {
                return Err(Error::ColorOutOfRange { color: c, p, max });
            }
        }
        for piece in pieces {
            if let Some((a, b, c)) = piece.triple() {
                match mode {
                    Admissibility::Strict => {
                        if !admissible(a, b, c, p) {
                            return Err(Error::Inadmissible { a, b, c, p });
                        }
                    }
                    Admissibility::Relaxed => {
                        if TLDiagram::vertex(a as usize, b as usize, c as usize).is_none() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    fn run_exact(&self, net: &ColoredNetwork) -> Result<LinComb<CycloNum>> {
        let ring = &self.exact;
        let run = run_network(ring, net, |n| {
            let proj = self.projector(n)?;
            Ok(Some((proj.exact.clone(), BigInt::one())))
        })?;
        Ok(run.expect("exact arithmetic cannot overflow").0)
    }

    fn run_int(&self, net: &ColoredNetwork) -> Result<Option<(LinComb<IntCyclo>, BigInt)>> {
        run_network(&self.int, net, |n| {
            let proj = self.projector(n)?;
            Ok(proj.scaled.clone())
        })
    }
}

type ProjectorTerms<E> = Option<(Vec<(TLDiagram, E)>, BigInt)>;

/// Evaluate layer by layer. Returns `None` if the ring overflowed; the
/// second component is the product of projector scale factors to divide by.
fn run_network<R: Ring>(
    ring: &R,
    net: &ColoredNetwork,
    projector: impl Fn(usize) -> Result<ProjectorTerms<R::Elem>>,
) -> Result<Option<(LinComb<R::Elem>, BigInt)>> {
    let mut scale = BigInt::one();
    let width: usize = net.bottom().iter().map(|&c| c as usize).sum();
    let mut state = LinComb::single(TLDiagram::identity(width), ring.one());
    let mut cache: HashMap<usize, Vec<(TLDiagram, R::Elem)>> = HashMap::new();

    macro_rules! project {
        ($n:expr, $offset:expr) => {{
            let n: usize = $n;
            if n >= 2 {
                if !cache.contains_key(&n) {
                    match projector(n)? {
                        Some((terms, s)) => {
                            cache.insert(n, terms);
                            let _ = s;
                        }
                        None => return Ok(None),
                    }
                }
                let s = projector(n)?.map(|(_, s)| s).unwrap_or_else(BigInt::one);
                scale *= s;
                match apply_at(ring, &state, &cache[&n], $offset, true) {
                    Some(next) => state = next,
                    None => return Ok(None),
                }
            }
        }};
    }
    macro_rules! apply_diagram {
        ($d:expr, $offset:expr) => {{
            let op = [($d, ring.one())];
            match apply_at(ring, &state, &op, $offset, false) {
                Some(next) => state = next,
                None => return Ok(None),
            }
        }};
    }

    let mut offset = 0;
    for &c in net.bottom() {
        project!(c as usize, offset);
        offset += c as usize;
    }
    for layer in net.layers() {
        let mut offset = 0usize;
        for piece in &layer.0 {
            match *piece {
                Piece::Id(c) => offset += c as usize,
                Piece::Proj(c) => {
                    project!(c as usize, offset);
                    offset += c as usize;
                }
                Piece::Cup(c) => {
                    apply_diagram!(TLDiagram::cups(c as usize), offset);
                    project!(c as usize, offset);
                    offset += 2 * c as usize;
                }
                Piece::Cap(c) => {
                    apply_diagram!(TLDiagram::caps(c as usize), offset);
                }
                Piece::Merge { left, right, out } => {
                    let v = TLDiagram::vertex(left as usize, right as usize, out as usize)
                        .ok_or(Error::Inadmissible { a: left, b: right, c: out, p: 0 })?;
                    apply_diagram!(v, offset);
                    project!(out as usize, offset);
                    offset += out as usize;
                }
                Piece::Split { input, left, right } => {
                    let v = TLDiagram::vertex(left as usize, right as usize, input as usize)
                        .ok_or(Error::Inadmissible { a: left, b: right, c: input, p: 0 })?
                        .reflect();
                    apply_diagram!(v, offset);
                    project!(left as usize, offset);
                    project!(right as usize, offset + left as usize);
                    offset += (left + right) as usize;
                }
            }
        }
    }
    Ok(Some((state, scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::quantum_int;

    fn engine(p: u32) -> TlEngine {
        TlEngine::new(&CycloContext::new(p).unwrap())
    }

    #[test]
    fn colored_loops() {
        let e = engine(8);
        let ctx = e.ctx().clone();
        assert!(e.evaluate_network(&ColoredNetwork::colored_loop(0)).unwrap().is_one());
        assert_eq!(e.evaluate_network(&ColoredNetwork::colored_loop(1)).unwrap(), loop_value(&ctx));
        assert_eq!(
            e.evaluate_network(&ColoredNetwork::colored_loop(2)).unwrap(),
            quantum_int(&ctx, 3).unwrap()
        );
    }

    #[test]
    fn theta_with_zero_edge_is_a_loop() {
        let e = engine(6);
        let ctx = e.ctx().clone();
        assert_eq!(e.evaluate_network(&ColoredNetwork::theta(1, 1, 0)).unwrap(), loop_value(&ctx));
    }

    #[test]
    fn fast_and_exact_paths_agree() {
        let e = engine(12);
        for net in [
            ColoredNetwork::theta(2, 3, 3),
            ColoredNetwork::tetrahedron(2, 2, 2, 2, 2, 2),
            ColoredNetwork::tetrahedron(1, 2, 3, 2, 3, 1),
        ] {
            let fast = e.evaluate_with(&net, Admissibility::Strict, Arithmetic::Auto).unwrap();
            let slow = e.evaluate_with(&net, Admissibility::Strict, Arithmetic::Exact).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn projector_shortcut_matches_plain_stacking() {
        // expand an open tree through the engine and by explicit TLElement
        // products; the engine skips annihilated terms, stacking does not.
        let e = engine(10);
        let ctx = e.ctx().clone();
        let net = ColoredNetwork::left_tree(1, 2, 1, 1, 2);
        let fast = e.expand(&net).unwrap();
        let f = |n| e.jones_wenzl(n).unwrap();
        let id = |n| TLElement::identity(&ctx, n);
        let vertex = |a, b, c| TLElement::from_diagram(&ctx, TLDiagram::vertex(a, b, c).unwrap());
        let inputs = f(1).tensor(&f(2)).tensor(&f(1));
        let first = f(1).mul(&vertex(1, 2, 1)).unwrap().tensor(&id(1));
        let second = f(2).mul(&vertex(1, 1, 2)).unwrap();
        let slow = second.mul(&first).unwrap().mul(&inputs).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn rebracketing_invariance() {
        let e = engine(10);
        for net in [ColoredNetwork::tetrahedron(1, 2, 1, 2, 1, 1), ColoredNetwork::theta(3, 2, 1)] {
            let v = e.evaluate_network(&net).unwrap();
            let fine = net.one_piece_per_layer();
            assert_eq!(e.evaluate_network(&fine).unwrap(), v);
            assert_eq!(e.evaluate_network(&fine.coarsened()).unwrap(), v);
        }
    }

    #[test]
    fn strict_mode_rejects_bad_vertices() {
        let e = engine(6);
        assert!(matches!(
            e.evaluate_network(&ColoredNetwork::theta(1, 1, 1)),
            Err(Error::Inadmissible { .. })
        ));
        assert!(matches!(
            e.evaluate_network(&ColoredNetwork::colored_loop(2)),
            Err(Error::ColorOutOfRange { .. })
        ));
        let open = ColoredNetwork::left_tree(1, 1, 1, 0, 1);
        assert!(matches!(e.evaluate_network(&open), Err(Error::OpenNetwork(_))));
        // relaxed: structurally impossible vertices evaluate to zero
        let z = e
            .evaluate_with(&ColoredNetwork::theta(1, 1, 1), Admissibility::Relaxed, Arithmetic::Auto)
            .unwrap();
        assert!(z.is_zero());
    }
}
