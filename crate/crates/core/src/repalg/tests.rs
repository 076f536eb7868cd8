use super::*;
use crate::tqft_ops::CurveDesc;
use proptest::prelude::*;

fn ctx() -> Arc<CycloContext> {
    CycloContext::new(8).unwrap()
}

fn unit(d: usize, i: usize, j: usize) -> Matrix {
    let k = ctx();
    let mut m = Matrix::zeros(&k, d, d);
    m.set(i, j, CycloNum::one(&k));
    m
}

#[test]
fn trivial_saturations() {
    let k = ctx();
    assert_eq!(saturate_matrices(&k, 2, &[]).unwrap().algebra_dim(), 1);
    let units = [unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0)];
    assert_eq!(saturate_matrices(&k, 2, &units).unwrap().algebra_dim(), 4);
    // E12 alone: span{1, E12}, nilpotent
    assert_eq!(saturate_matrices(&k, 2, &[unit(2, 0, 1)]).unwrap().algebra_dim(), 2);
}

#[test]
fn trivial_commutants() {
    let k = ctx();
    assert_eq!(commutant_matrices(&k, 3, &[Matrix::identity(&k, 3)]).unwrap().len(), 9);
    let l0 = CycloNum::a_pow(&k, 2);
    let l2 = CycloNum::a_pow(&k, 6);
    let diag = Matrix::diagonal(&k, &[l0, l2]);
    assert_eq!(commutant_matrices(&k, 2, &[diag.clone()]).unwrap().len(), 2);
    let alg = saturate_matrices(&k, 2, &[diag]).unwrap();
    assert!(alg.contains_matrix(&Matrix::identity(&k, 2)).unwrap());
    assert!(!alg.contains_matrix(&unit(2, 0, 1)).unwrap());
    assert!(alg.contains_matrix(&unit(2, 1, 1)).unwrap());
}

#[test]
fn desk_instance_four_points() {
    let spec = SurfaceSpec::new(0, vec![1, 1, 1, 1], 8).unwrap();
    let t = Tqft::new(&spec).unwrap();
    let pushes = t.point_push_generators().unwrap();
    assert_eq!(pushes.len(), 2);
    let alg = saturate(&pushes).unwrap();
    assert_eq!(alg.algebra_dim(), 4);
    assert_eq!(commutant_dim(&pushes).unwrap(), 1);
    let band = t.curve_operator(&CurveDesc::band(2, 3)).unwrap();
    assert!(contains(&band, &alg).unwrap());
    let r = analyze(&spec, &AnalyzeOptions::new(GeneratorMode::PointPushing)).unwrap();
    assert_eq!((r.algebra_dim, r.commutant_dim, r.verdict), (Some(4), Some(1), Verdict::Irreducible));
}

#[test]
fn one_dimensional_space_is_irreducible() {
    let spec = SurfaceSpec::new(0, vec![1, 1, 1, 1], 6).unwrap();
    let r = analyze(&spec, &AnalyzeOptions::new(GeneratorMode::PointPushing)).unwrap();
    assert_eq!(r.dim, 1);
    assert_eq!((r.algebra_dim, r.commutant_dim, r.verdict), (Some(1), Some(1), Verdict::Irreducible));
}

#[test]
fn empty_space_is_an_error() {
    let spec = SurfaceSpec::new(0, vec![1, 1, 1, 1, 1], 8).unwrap();
    assert_eq!(analyze(&spec, &AnalyzeOptions::new(GeneratorMode::Curves)), Err(Error::EmptySpace));
}

#[test]
fn mixed_specs_are_rejected() {
    let a = Tqft::new(&SurfaceSpec::new(0, vec![1, 1, 1, 1], 8).unwrap()).unwrap();
    let b = Tqft::new(&SurfaceSpec::new(0, vec![1, 1, 1, 1], 10).unwrap()).unwrap();
    let gens = [a.identity(), b.identity()];
    assert_eq!(saturate(&gens).unwrap_err(), Error::SpecMismatch);
    assert_eq!(commutant_dim(&gens).unwrap_err(), Error::SpecMismatch);
}

#[test]
fn methods_and_threads_agree() {
    let spec = SurfaceSpec::new(0, vec![1, 1, 1, 1, 2], 10).unwrap();
    let mut opts = AnalyzeOptions::new(GeneratorMode::Both);
    let both = analyze(&spec, &opts).unwrap();
    opts.threads = Some(1);
    assert_eq!(analyze(&spec, &opts).unwrap(), both);
    opts.threads = Some(4);
    opts.method = Method::Commutant;
    let c = analyze(&spec, &opts).unwrap();
    assert_eq!(c.commutant_dim, both.commutant_dim);
    assert_eq!(c.verdict, both.verdict);
    opts.method = Method::Saturation;
    let s = analyze(&spec, &opts).unwrap();
    assert_eq!(s.algebra_dim, both.algebra_dim);
}

fn small_gens() -> Vec<Matrix> {
    let spec = SurfaceSpec::new(0, vec![1, 1, 1, 1, 2], 10).unwrap();
    let t = Tqft::new(&spec).unwrap();
    generators(&t, GeneratorMode::Both).unwrap().into_iter().map(Operator::into_matrix).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn scalar_multiples_change_nothing(idx in 0usize..8, k in 1i64..16, sign in prop::bool::ANY) {
        let gens = small_gens();
        let c = gens[0].ctx().clone();
        let d = gens[0].rows();
        let i = idx % gens.len();
        let mut scaled = gens.clone();
        let s = CycloNum::a_pow(&c, k).scale_int(if sign { 3 } else { -2 });
        scaled[i] = scaled[i].scale(&s);
        prop_assert_eq!(
            saturate_matrices(&c, d, &scaled).unwrap().algebra_dim(),
            saturate_matrices(&c, d, &gens).unwrap().algebra_dim()
        );
        prop_assert_eq!(
            commutant_matrices(&c, d, &scaled).unwrap().len(),
            commutant_matrices(&c, d, &gens).unwrap().len()
        );
    }

    #[test]
    fn adding_generators_is_monotone(mask in 0u32..(1 << 10), extra in 0usize..10) {
        let gens = small_gens();
        let c = gens[0].ctx().clone();
        let d = gens[0].rows();
        let subset: Vec<Matrix> = gens.iter().enumerate().filter(|(i, _)| mask >> (i % 10) & 1 == 1).map(|(_, g)| g.clone()).collect();
        let mut bigger = subset.clone();
        bigger.push(gens[extra % gens.len()].clone());
        let a0 = saturate_matrices(&c, d, &subset).unwrap().algebra_dim();
        let a1 = saturate_matrices(&c, d, &bigger).unwrap().algebra_dim();
        prop_assert!(a1 >= a0);
        let c0 = commutant_matrices(&c, d, &subset).unwrap().len();
        let c1 = commutant_matrices(&c, d, &bigger).unwrap().len();
        prop_assert!(c1 <= c0);
    }
}
