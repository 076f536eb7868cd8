use super::*;
use crate::recoupling::{delta, theta, twist_coeff};

fn tqft(k: &[u32], p: u32) -> Tqft {
    Tqft::new(&SurfaceSpec::new(0, k.to_vec(), p).unwrap()).unwrap()
}

fn lambda(t: &Tqft, c: u32) -> CycloNum {
    t.recoupling().eigenvalue(c).unwrap()
}

fn mu(t: &Tqft, c: u32) -> CycloNum {
    twist_coeff(t.ctx(), c).unwrap()
}

#[test]
fn edge_operators_are_diagonal() {
    let t = tqft(&[1, 1, 1, 1], 8);
    let e1 = t.edge_curve_operator("e1").unwrap();
    assert_eq!(e1.matrix().diag(), vec![lambda(&t, 0), lambda(&t, 2)]);
    assert!(e1.matrix().is_diagonal());
    let x2 = t.edge_curve_operator("x2").unwrap();
    assert_eq!(x2, t.scalar(&lambda(&t, 1)));
    assert_eq!(lambda(&t, 0), crate::tldiag::loop_value(t.ctx()));
    assert!(matches!(t.edge_curve_operator("e9"), Err(Error::UnknownEdge(_))));
}

#[test]
fn scalar_bands() {
    let t = tqft(&[1, 2, 2, 1], 10);
    assert_eq!(t.curve_operator(&CurveDesc::band(1, 4)).unwrap(), t.scalar(&lambda(&t, 0)));
    for j in 1..=4 {
        let k = t.spec().color(j);
        assert_eq!(t.curve_operator(&CurveDesc::band(j, j)).unwrap(), t.scalar(&lambda(&t, k)));
        assert_eq!(t.dehn_twist(&CurveDesc::band(j, j)).unwrap(), t.scalar(&mu(&t, k)));
    }
    // band(2..4) bounds x_1 on the other side
    assert_eq!(t.curve_operator(&CurveDesc::band(2, 4)).unwrap(), t.scalar(&lambda(&t, 1)));
    assert_eq!(t.curve_operator(&CurveDesc::band(1, 3)).unwrap(), t.scalar(&lambda(&t, 1)));
    let cable0 = t.curve_operator(&CurveDesc::cable(CurveDesc::band(2, 3), 0)).unwrap();
    assert_eq!(cable0, t.identity());
    assert!(t.curve_operator(&CurveDesc::band(0, 2)).is_err());
    assert!(t.curve_operator(&CurveDesc::band(3, 2)).is_err());
    assert!(t.curve_operator(&CurveDesc::band(1, 5)).is_err());
}

#[test]
fn transport_examples() {
    let t = tqft(&[1, 1, 1, 1], 8);
    let (tree, p) = t.fusion_transport(&[]).unwrap();
    assert_eq!(&tree, t.spine().tree());
    assert!(p.is_identity());
    let m = Move { node: (1, 3), rotation: Rotation::Right };
    let (tree, f) = t.fusion_transport(&[m]).unwrap();
    assert_eq!(f.rows(), 2);
    let (_, back) = t.move_matrix(&tree, m.inverse()).unwrap();
    assert!(back.mul(&f).unwrap().is_identity());
    assert!(f.mul(&back).unwrap().is_identity());
    let small = tqft(&[1, 1, 1, 1], 6);
    let (_, f) = small.fusion_transport(&[m]).unwrap();
    assert_eq!(f.rows(), 1);
    assert!(!f.get(0, 0).is_zero());
}

#[test]
fn twists_and_pushes() {
    let t = tqft(&[1, 1, 1, 1], 8);
    let e = CurveDesc::edge("e1");
    let te = t.dehn_twist(&e).unwrap();
    assert_eq!(te.matrix().diag(), vec![CycloNum::one(t.ctx()), CycloNum::a_pow(t.ctx(), 8)]);
    assert!(te.matrix().is_diagonal());
    for curve in [e, CurveDesc::band(2, 3), CurveDesc::band(1, 2)] {
        let tw = t.dehn_twist(&curve).unwrap();
        assert_eq!(tw.mul(&t.dehn_twist_inverse(&curve).unwrap()).unwrap(), t.identity());
    }
    // spectral calculus agrees with conjugating the diagonal twist
    let tree = t.band_tree(2, 3).unwrap();
    let (p, back) = t.transport_to(&tree).unwrap();
    let tb = t.tree_basis(&tree).unwrap();
    let diag: Vec<CycloNum> = tb.basis.iter().map(|c| mu(&t, t.interval_color(&tb, c, (2, 3)))).collect();
    let direct = back.mul(&Matrix::diagonal(t.ctx(), &diag)).unwrap().mul(&p).unwrap();
    assert_eq!(t.dehn_twist(&CurveDesc::band(2, 3)).unwrap().matrix(), &direct);
    // Push(delta_2) is the band(1..2) twist up to mu_{k_2}
    let push = t.point_push(LoopDesc { j: 2 }).unwrap();
    let expect = t.dehn_twist(&CurveDesc::band(1, 2)).unwrap().scale(&mu(&t, 1).inv().unwrap());
    assert_eq!(push, expect);
    assert!(t.point_push(LoopDesc { j: 1 }).is_err());
    assert!(t.point_push(LoopDesc { j: 4 }).is_err());
}

#[test]
fn cable_is_chebyshev() {
    let t = tqft(&[1, 1, 1, 1, 2], 10);
    let z = t.curve_operator(&CurveDesc::band(2, 3)).unwrap();
    let z2 = t.curve_operator(&CurveDesc::cable(CurveDesc::band(2, 3), 2)).unwrap();
    assert_eq!(z2, z.mul(&z).unwrap().sub(&t.identity()).unwrap());
    let z3 = t.curve_operator(&CurveDesc::cable(CurveDesc::band(2, 3), 3)).unwrap();
    assert_eq!(z3, z.mul(&z2).unwrap().sub(&z).unwrap());
}

#[test]
fn norms() {
    let t = tqft(&[1, 1, 1, 1], 8);
    let h = t.basis_norms().unwrap();
    let k = t.ctx();
    let d1 = delta(k, 1).unwrap();
    assert_eq!(h.norms[0], &d1 * &d1);
    let th = theta(k, 1, 1, 2).unwrap();
    assert_eq!(h.norms[1], (&th * &th).checked_div(&delta(k, 2).unwrap()).unwrap());
    for curve in t.band_curves() {
        assert!(h.is_self_adjoint(t.curve_operator(&curve).unwrap().matrix()), "{curve}");
    }
}

#[test]
fn path_independence_on_five_points() {
    let t = tqft(&[1, 1, 1, 1, 2], 8);
    assert_eq!(t.dim(), 2);
    let alt = FusionTree::new(4, [(2, 3), (2, 4)]).unwrap();
    let a = t.band_operator_in(&t.band_tree(2, 3).unwrap(), (2, 3)).unwrap();
    let b = t.band_operator_in(&alt, (2, 3)).unwrap();
    assert_eq!(a, b);
    let right = FusionTree::with_shape(4, TreeShape::RightComb);
    assert_eq!(
        t.band_operator_in(&right, (2, 4)).unwrap(),
        t.curve_operator(&CurveDesc::band(2, 4)).unwrap()
    );
}

#[test]
fn genus_one_supports_edges_only() {
    let t = Tqft::new(&SurfaceSpec::new(1, vec![1, 1], 8).unwrap()).unwrap();
    assert_eq!(t.dim(), 4);
    let l = t.edge_curve_operator("l1").unwrap();
    assert!(l.matrix().is_diagonal());
    assert!(matches!(t.curve_operator(&CurveDesc::band(1, 2)), Err(Error::Unsupported(_))));
    assert!(matches!(t.point_push(LoopDesc { j: 2 }), Err(Error::Unsupported(_))));
    assert!(t.dehn_twist(&CurveDesc::edge("s1")).is_ok());
}
