use num_bigint::BigUint;

use super::*;

fn z2_a1() -> ComplexCategory {
    ComplexCategory::new(
        ComplexKind::periodic(2),
        Quiver::linear_a(1),
        Field::new(2).unwrap(),
        Caps::default(),
    )
    .unwrap()
}

fn bounded_a1(lo: i64, hi: i64) -> ComplexCategory {
    ComplexCategory::new(
        ComplexKind::bounded(lo, hi),
        Quiver::linear_a(1),
        Field::new(2).unwrap(),
        Caps::default(),
    )
    .unwrap()
}

struct Z2 {
    cat: ComplexCategory,
    x: Complex,
    y: Complex,
    k: Complex,
    k2: Complex,
}

fn z2() -> Z2 {
    let cat = z2_a1();
    let x = cat.stalk(0, &[1]).unwrap();
    let y = cat.stalk(1, &[1]).unwrap();
    let k = cat.cone(Gen { degree: 0, vertex: 0 }).unwrap();
    let k2 = cat.cone(Gen { degree: 1, vertex: 0 }).unwrap();
    Z2 { cat, x, y, k, k2 }
}

fn big(n: u32) -> BigUint {
    BigUint::from(n)
}

#[test]
fn rejects_bad_configs() {
    let q = Quiver::linear_a(1);
    let f = Field::new(2).unwrap();
    assert!(ComplexCategory::new(ComplexKind::periodic(1), q.clone(), f, Caps::default()).is_err());
    assert!(ComplexCategory::new(ComplexKind::bounded(2, 1), q, f, Caps::default()).is_err());
}

#[test]
fn hom_examples() {
    let Z2 { cat, x, y, k, .. } = z2();
    assert!(cat.hom_space(&x, &y).unwrap().is_empty());
    assert_eq!(cat.hom_space(&k, &x).unwrap().len(), 1);
    assert!(cat.hom_space(&x, &k).unwrap().is_empty());
    let id = cat.flat().identity(x.flat());
    assert!(cat.flat().is_morphism(x.flat(), x.flat(), &id));
}

#[test]
fn stable_hom_examples() {
    let Z2 { cat, x, y, k, .. } = z2();
    assert_eq!(cat.stable_hom_card(&x, &x).unwrap(), big(2));
    assert_eq!(cat.stable_hom_card(&x, &y).unwrap(), big(1));
    for z in [&x, &y, &k] {
        assert_eq!(cat.stable_hom_card(&k, z).unwrap(), big(1));
    }
}

#[test]
fn ext_examples() {
    let Z2 { cat, x, y, k, k2 } = z2();
    let classes = cat.ext1_classes(&x, &y).unwrap();
    assert_eq!(classes.len(), 2);
    assert!(classes[0].blocks.iter().all(|m| m.is_zero()));
    assert_eq!(cat.ext1_classes(&k, &x).unwrap().len(), 1);
    assert_eq!(cat.ext1_classes(&k2, &y).unwrap().len(), 1);

    let b = bounded_a1(0, 1);
    let s = b.stalk(0, &[1]).unwrap();
    assert_eq!(b.ext1_classes(&s, &s).unwrap().len(), 1);
}

#[test]
fn middle_terms_are_cones() {
    let Z2 { cat, x, y, k, k2 } = z2();
    let f = &cat.ext1_classes(&x, &y).unwrap()[1];
    let b = cat.middle_term_cx(&x, &y, f).unwrap();
    assert!(cat.iso_test_cx(&b, &k).unwrap());
    assert!(cat.is_contractible(&b).unwrap());
    let g = &cat.ext1_classes(&y, &x).unwrap()[1];
    assert!(cat.iso_test_cx(&cat.middle_term_cx(&y, &x, g).unwrap(), &k2).unwrap());
    let zero = &cat.ext1_classes(&x, &y).unwrap()[0];
    let split = cat.middle_term_cx(&x, &y, zero).unwrap();
    assert!(cat.iso_test_cx(&split, &cat.direct_sum(&y, &x)).unwrap());
}

#[test]
fn shift_examples() {
    let Z2 { cat, x, y, k, k2 } = z2();
    assert_eq!(cat.shift(&x, 0).unwrap(), x);
    assert!(cat.iso_test_cx(&cat.shift(&x, 1).unwrap(), &y).unwrap());
    assert!(cat.iso_test_cx(&cat.shift(&k, 1).unwrap(), &k2).unwrap());
    let twice = cat.shift(&cat.shift(&k, 1).unwrap(), 1).unwrap();
    assert!(cat.iso_test_cx(&twice, &k).unwrap());

    let b = bounded_a1(0, 1);
    let s = b.stalk(0, &[1]).unwrap();
    assert_eq!(b.support(&b.shift(&s, 1).unwrap()), Some((-1, -1)));
    assert!(matches!(
        b.shift(&s, 10),
        Err(HallError::WindowOverflow { .. })
    ));
}

#[test]
fn contractibility() {
    let Z2 { cat, x, k, .. } = z2();
    assert!(cat.is_contractible(&k).unwrap());
    assert!(!cat.is_contractible(&x).unwrap());
    let kx = cat.direct_sum(&k, &x);
    assert!(!cat.is_contractible(&kx).unwrap());
    assert!(cat.stable_hom_card(&kx, &kx).unwrap() > big(1));
}

#[test]
fn strip_examples() {
    let Z2 { cat, x, k, .. } = z2();
    let (t, rest) = cat.strip_contractibles(&k).unwrap();
    assert_eq!(t, TorusClass::from([(Gen { degree: 0, vertex: 0 }, 1)]));
    assert!(rest.is_zero());
    let (t, rest) = cat.strip_contractibles(&x).unwrap();
    assert!(t.is_empty());
    assert!(cat.iso_test_cx(&rest, &x).unwrap());
    let (t, rest) = cat.strip_contractibles(&cat.direct_sum(&k, &x)).unwrap();
    assert_eq!(t, TorusClass::from([(Gen { degree: 0, vertex: 0 }, 1)]));
    assert!(cat.iso_test_cx(&rest, &x).unwrap());
}

#[test]
fn higher_ext() {
    let Z2 { cat, x, y, k, .. } = z2();
    for (a, b) in [(&x, &y), (&y, &x), (&x, &x)] {
        assert_eq!(
            cat.extp_card(a, b, 1).unwrap(),
            big(cat.ext1_classes(a, b).unwrap().len() as u32)
        );
    }
    for p in 1..4 {
        assert_eq!(cat.extp_card(&k, &x, p).unwrap(), big(1));
    }
    let b = bounded_a1(0, 1);
    let s = b.stalk(0, &[1]).unwrap();
    for p in 2..4 {
        assert_eq!(b.extp_card(&s, &s, p).unwrap(), big(1));
    }
}

#[test]
fn generator_counts() {
    assert_eq!(z2_a1().contractible_generators().len(), 2);
    let a2 = ComplexCategory::new(
        ComplexKind::periodic(2),
        Quiver::linear_a(2),
        Field::new(2).unwrap(),
        Caps::default(),
    )
    .unwrap();
    assert_eq!(a2.contractible_generators().len(), 4);
    assert_eq!(bounded_a1(0, 2).contractible_generators().len(), 2);
}

#[test]
fn iso_and_decompose() {
    let Z2 { cat, x, k, k2, .. } = z2();
    assert!(cat.iso_test_cx(&x, &x).unwrap());
    assert!(!cat.iso_test_cx(&k, &k2).unwrap());
    let parts = cat.decompose_cx(&cat.direct_sum_cx(&k, &x)).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().any(|p| cat.iso_test_cx(p, &k).unwrap()));
    assert!(parts.iter().any(|p| cat.iso_test_cx(p, &x).unwrap()));
}

#[test]
fn enumeration_counts() {
    let cat = z2_a1();
    assert_eq!(cat.enumerate_complexes(&ComplexDimCap::per_degree(1)).unwrap().len(), 6);
    assert_eq!(cat.enumerate_complexes(&ComplexDimCap::per_degree(2)).unwrap().len(), 20);
    let b = bounded_a1(0, 1);
    let free = b.enumerate_projective_free(&ComplexDimCap::per_degree(1)).unwrap();
    // 0, the two stalks, and their sum
    assert_eq!(free.len(), 4);
}

#[test]
fn frobenius_spot_check() {
    let cat = z2_a1();
    let objs = cat.enumerate_complexes(&ComplexDimCap::per_degree(1)).unwrap();
    for g in cat.contractible_generators() {
        let k = cat.cone(g).unwrap();
        for x in &objs {
            assert_eq!(cat.ext1_classes(&k, x).unwrap().len(), 1);
            assert_eq!(cat.ext1_classes(x, &k).unwrap().len(), 1);
            let y = cat.shift(x, 2).unwrap();
            assert_eq!(
                cat.stable_hom_card(&k, &y).unwrap(),
                cat.stable_hom_card(&k, x).unwrap()
            );
        }
    }
}

#[test]
fn encoding_round_trip() {
    let Z2 { cat, x, k, .. } = z2();
    let kx = cat.direct_sum(&k, &x);
    assert_eq!(cat.decode(&cat.encode(&kx)).unwrap(), kx);
    assert!(cat.decode("cx:1,1|1x1:1|1x1:1").is_err());
}

#[test]
fn construction_checks() {
    let cat = z2_a1();
    let p = cat.base().proj_indec(0);
    let id = cat.base().identity(&p);
    // d o d = id is rejected
    assert!(cat
        .complex(0, vec![p.clone(), p.clone()], vec![id.clone(), id.clone()])
        .is_err());
    let zero: Morphism = vec![Matrix::zeros(1, 1)];
    let k = cat.complex(0, vec![p.clone(), p], vec![id, zero]).unwrap();
    assert!(cat.is_contractible(&k).unwrap());
}
