use super::*;
use crate::config::Exec;
use crate::frobcat::ComplexDimCap;
use crate::quiverrep::Quiver;
use crate::scalar::{int, rat, ScalarExt};

fn a2_algebra(exec: Exec) -> HallAlgebra<AbelianBackend> {
    let cat = RepCategory::new(Quiver::linear_a(2), Field::new(2).unwrap(), Caps::default());
    HallAlgebra::new(AbelianBackend::new(cat), exec).unwrap()
}

fn z2_algebra(exec: Exec) -> HallAlgebra<ComplexCategory> {
    let cat = ComplexCategory::new(
        ComplexKind::periodic(2),
        Quiver::linear_a(1),
        Field::new(2).unwrap(),
        Caps::default(),
    )
    .unwrap();
    HallAlgebra::new(cat, exec).unwrap()
}

#[test]
fn a2_products() {
    let h = a2_algebra(Exec::Sequential);
    let cat = h.backend().category().clone();
    let s1 = h.register(&cat.simple(0)).unwrap();
    let s2 = h.register(&cat.simple(1)).unwrap();
    let sum = h.register(&cat.direct_sum(&cat.simple(0), &cat.simple(1))).unwrap();
    let p1 = h.register(&cat.proj_indec(0)).unwrap();
    let q = h.q();
    let e = |id| HallElement::basis(q, id);

    // unit
    assert_eq!(h.hall_product(&e(0), &e(s1)).unwrap(), e(s1));
    assert_eq!(h.hall_product(&e(s2), &e(0)).unwrap(), e(s2));

    let prod = h.hall_product(&e(s1), &e(s2)).unwrap();
    assert_eq!(prod, e(sum).add(&e(p1)));
    let entry = h.entry(s1, s2).unwrap();
    assert_eq!(entry.ext_size(), 2);

    let tw = h.twisted_product(&e(s1), &e(s2)).unwrap();
    assert_eq!(tw, e(sum).add(&e(p1)).scale(&ScalarExt::v_pow(q, -1)));
}

#[test]
fn a1_square() {
    let cat = RepCategory::new(Quiver::linear_a(1), Field::new(2).unwrap(), Caps::default());
    let h = HallAlgebra::new(AbelianBackend::new(cat.clone()), Exec::Sequential).unwrap();
    let s = h.register(&cat.simple(0)).unwrap();
    let s2 = h.register(&cat.direct_sum(&cat.simple(0), &cat.simple(0))).unwrap();
    let q = h.q();
    let e = HallElement::basis(q, s);
    assert_eq!(
        h.hall_product(&e, &e).unwrap(),
        HallElement::basis(q, s2).scale_rational(&rat(1, 2))
    );
    let v = ScalarExt::v_pow(q, 1);
    assert_eq!(
        h.twisted_product(&e, &e).unwrap(),
        HallElement::basis(q, s2).scale(&v.scale(&rat(1, 2)))
    );
    // twisting by a trivial form changes nothing
    let z = HallElement::basis(q, 0);
    assert_eq!(h.twisted_product(&z, &e).unwrap(), e);
    assert_eq!(
        HallElement::basis(q, s).scale_rational(&int(0)),
        HallElement::zero(q)
    );
}

#[test]
fn a2_associativity() {
    let h = a2_algebra(Exec::Parallel);
    let classes = h.backend().category().enumerate_reps(&[1, 1]).unwrap();
    let ids = h.register_all(&classes).unwrap();
    assert_eq!(ids, vec![0, 1, 2, 3, 4]);
    let report = h.verify_associativity(&ids);
    assert_eq!(report.triples, 125);
    assert!(report.passed(), "{report:?}");
}

#[test]
fn z2_associativity_and_invariants() {
    let h = z2_algebra(Exec::Parallel);
    let objs = h
        .backend()
        .enumerate_complexes(&ComplexDimCap::per_degree(1))
        .unwrap();
    let ids = h.register_all(&objs).unwrap();
    let report = h.verify_associativity(&ids);
    assert_eq!(report.triples, 216);
    assert!(report.passed(), "{report:?}");
    for &a in &ids {
        for &c in &ids {
            let e = h.entry(a, c).unwrap();
            let (xa, xc) = (h.object(a).unwrap(), h.object(c).unwrap());
            let ext = h.backend().ext1_dim(&xa, &xc).unwrap();
            assert_eq!(e.ext_size(), 1u128 << ext);
            let g: Vec<usize> = h
                .backend()
                .grade(&xa)
                .iter()
                .zip(h.backend().grade(&xc))
                .map(|(x, y)| x + y)
                .collect();
            for &(b, _) in &e.terms {
                assert_eq!(h.backend().grade(&h.object(b).unwrap()), g);
            }
        }
    }
}

#[test]
fn periodic_twist_is_undefined() {
    let h = z2_algebra(Exec::Sequential);
    let x = h.backend().stalk(0, &[1]).unwrap();
    let id = h.register(&x).unwrap();
    let e = HallElement::basis(h.q(), id);
    assert!(matches!(
        h.twisted_product(&e, &e),
        Err(HallError::EulerUndefined(_))
    ));
}

#[test]
fn parallel_and_sequential_agree() {
    let run = |exec| {
        let h = a2_algebra(exec);
        let classes = h.backend().category().enumerate_reps(&[2, 1]).unwrap();
        let ids = h.register_all(&classes).unwrap();
        let pairs: Vec<_> = ids.iter().flat_map(|&a| ids.iter().map(move |&c| (a, c))).collect();
        h.precompute(&pairs).unwrap();
        (h.export_cache().unwrap(), h.class_count())
    };
    assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
}

#[test]
fn cache_round_trip() {
    let h = a2_algebra(Exec::Sequential);
    let classes = h.backend().category().enumerate_reps(&[1, 1]).unwrap();
    let ids = h.register_all(&classes).unwrap();
    let pairs: Vec<_> = ids.iter().flat_map(|&a| ids.iter().map(move |&c| (a, c))).collect();
    h.precompute(&pairs).unwrap();
    let records = h.export_cache().unwrap();

    let fresh = a2_algebra(Exec::Sequential);
    fresh.register_all(&classes).unwrap();
    fresh.preload(records.clone());
    fresh.precompute(&pairs).unwrap();
    assert_eq!(fresh.cache_hits(), pairs.len());
    assert_eq!(fresh.export_cache().unwrap(), records);
    for &(a, c) in &pairs {
        assert_eq!(fresh.entry(a, c).unwrap(), h.entry(a, c).unwrap());
    }
}
