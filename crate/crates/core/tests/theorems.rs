use hallforge::frobcat::{ComplexCategory, ComplexDimCap, ComplexKind};
use hallforge::quiverrep::Quiver;
use hallforge::sdh::{Sdh, SdhElement};
use hallforge::{Caps, Exec, Field};

fn bounded(n: usize) -> Sdh {
    let cat = ComplexCategory::new(
        ComplexKind::bounded(0, 1),
        Quiver::linear_a(n),
        Field::new(2).unwrap(),
        Caps::default(),
    )
    .unwrap();
    Sdh::new(cat, Exec::Parallel).unwrap()
}

#[test]
fn comparison_on_a2_grid() {
    let s = bounded(2);
    let objs = s
        .category()
        .enumerate_projective_free(&ComplexDimCap::total(2))
        .unwrap();
    let ids = s.register_stable_all(&objs).unwrap();
    let pairs: Vec<_> = ids
        .iter()
        .flat_map(|&a| ids.iter().map(move |&b| (a, b)))
        .collect();
    let report = s.compare_toen(&pairs).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
    assert_eq!(report.checks, pairs.len());
}

#[test]
fn twisted_associativity_a1() {
    let s = bounded(1);
    let objs = s
        .category()
        .enumerate_complexes(&ComplexDimCap::per_degree(1))
        .unwrap();
    let elems = s.normalize_all(&objs).unwrap();
    let report = s.verify_sdh_associativity(&elems, true).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
}

#[test]
fn twisted_product_of_torus_and_basis_commutes_on_a2() {
    let s = bounded(2);
    let objs = s
        .category()
        .enumerate_projective_free(&ComplexDimCap::total(2))
        .unwrap();
    let ids = s.register_stable_all(&objs).unwrap();
    for g in s.category().contractible_generators() {
        let t = SdhElement::torus([(g, 1)].into());
        for &m in &ids {
            let x = SdhElement::basis(m);
            assert_eq!(
                s.sdh_tw_product(&t, &x).unwrap(),
                s.sdh_tw_product(&x, &t).unwrap()
            );
        }
    }
}

#[test]
fn derived_associativity_a2() {
    let s = bounded(2);
    let objs = s
        .category()
        .enumerate_projective_free(&ComplexDimCap::total(1))
        .unwrap();
    let ids = s.register_stable_all(&objs).unwrap();
    let report = s.verify_dh_associativity(&ids).unwrap();
    assert!(report.passed(), "{:?}", report.failures.first());
}
