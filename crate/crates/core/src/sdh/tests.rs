use super::*;
use crate::config::Caps;
use crate::ffla::Field;
use crate::frobcat::{ComplexDimCap, ComplexKind};
use crate::quiverrep::Quiver;
use crate::scalar::{int, rat};

fn sdh(kind: ComplexKind, n: usize, exec: Exec) -> Sdh {
    let cat = ComplexCategory::new(kind, Quiver::linear_a(n), Field::new(2).unwrap(), Caps::default())
        .unwrap();
    Sdh::new(cat, exec).unwrap()
}

fn g(degree: i64) -> Gen {
    Gen { degree, vertex: 0 }
}

fn t1(gen: Gen) -> TorusClass {
    TorusClass::from([(gen, 1)])
}

struct Z2 {
    s: Sdh,
    x: StableId,
    y: StableId,
    k: Gen,
    k2: Gen,
}

fn z2() -> Z2 {
    let s = sdh(ComplexKind::periodic(2), 1, Exec::Sequential);
    let cat = s.category();
    let xs = [cat.stalk(0, &[1]).unwrap(), cat.stalk(1, &[1]).unwrap()];
    let ids = s.register_stable_all(&xs).unwrap();
    Z2 {
        x: ids[0],
        y: ids[1],
        s,
        k: g(0),
        k2: g(1),
    }
}

#[test]
fn torus_pairing_and_inverse() {
    let z = z2();
    assert_eq!(z.s.pairing_exp(z.k, z.k2).unwrap(), 1);
    assert_eq!(z.s.pairing_exp(z.k, z.k).unwrap(), 1);
    let t = TorusElement::monomial(t1(z.k));
    let inv = z.s.torus_inverse(&t).unwrap();
    assert_eq!(z.s.torus_mul(&t, &inv).unwrap(), TorusElement::one());
    assert_eq!(z.s.torus_mul(&inv, &t).unwrap(), TorusElement::one());
    // t_K t_K = q^{-1} t_K^2
    let sq = z.s.torus_mul(&t, &t).unwrap();
    assert_eq!(sq.coeff, rat(1, 2));
    assert_eq!(sq.exponents, TorusClass::from([(z.k, 2)]));
}

#[test]
fn normalize_examples() {
    let z = z2();
    let cat = z.s.category();
    let k = cat.cone(z.k).unwrap();
    assert_eq!(z.s.normalize(&k).unwrap(), SdhElement::torus(t1(z.k)));
    let x = z.s.stable_object(z.x).unwrap();
    assert_eq!(z.s.normalize(&x).unwrap(), SdhElement::basis(z.x));
    let kx = cat.direct_sum(&k, &x);
    assert_eq!(
        z.s.normalize(&kx).unwrap(),
        SdhElement::monomial(t1(z.k), z.x, int(2))
    );
}

#[test]
fn z2_products() {
    let z = z2();
    let (x, y) = (SdhElement::basis(z.x), SdhElement::basis(z.y));
    let cat = z.s.category();
    let xy_obj = cat.direct_sum(
        &z.s.stable_object(z.x).unwrap(),
        &z.s.stable_object(z.y).unwrap(),
    );
    let xy_id = z.s.normal_form(&xy_obj).unwrap().1;

    let xy = z.s.sdh_product(&x, &y).unwrap();
    let expected = SdhElement::basis(xy_id).add(&SdhElement::torus(t1(z.k)));
    assert_eq!(xy, expected);

    let yx = z.s.sdh_product(&y, &x).unwrap();
    let comm = xy.sub(&yx);
    let expected = SdhElement::torus(t1(z.k)).sub(&SdhElement::torus(t1(z.k2)));
    assert_eq!(comm, expected);

    // localization inverse
    let tk = SdhElement::torus(t1(z.k));
    let inv = z.s.torus_inverse(&TorusElement::monomial(t1(z.k))).unwrap();
    let tinv = SdhElement::monomial(inv.exponents, 0, inv.coeff);
    let m = SdhElement::basis(z.x);
    let lhs = z.s.sdh_product(&tinv, &z.s.sdh_product(&tk, &m).unwrap()).unwrap();
    assert_eq!(lhs, m);
    assert_eq!(z.s.torus_left(&t1(z.k), &m).unwrap(), z.s.sdh_product(&tk, &m).unwrap());
}

#[test]
fn ore_relation_via_direct_sum() {
    let z = z2();
    let cat = z.s.category();
    let k = cat.cone(z.k).unwrap();
    let x = z.s.stable_object(z.x).unwrap();
    let tk = SdhElement::torus(t1(z.k));
    let m = SdhElement::basis(z.x);
    let kx = z.s.normalize(&cat.direct_sum(&k, &x)).unwrap();
    // [K (+) m] = |Hom(K, m)| t_K <> [m]
    let h = z.s.torus_hom_exp(&t1(z.k), z.x).unwrap();
    assert_eq!(kx, z.s.sdh_product(&tk, &m).unwrap().scale(&scalar::q_pow(2, h)));
    // [m] <> t_K = (|Hom(K, m)| / |Hom(m, K)|) t_K <> [m]
    let h2 = z.s.hom_torus_exp(z.x, &t1(z.k)).unwrap();
    assert_eq!(
        z.s.sdh_product(&m, &tk).unwrap(),
        z.s.sdh_product(&tk, &m).unwrap().scale(&scalar::q_pow(2, h - h2))
    );
}

#[test]
fn sdh_associativity_z2() {
    let s = sdh(ComplexKind::periodic(2), 1, Exec::Parallel);
    let objs = s
        .category()
        .enumerate_complexes(&ComplexDimCap::per_degree(1))
        .unwrap();
    let elems = s.normalize_all(&objs).unwrap();
    let report = s.verify_sdh_associativity(&elems, false).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.checks, 216);
}

#[test]
fn periodic_rejections() {
    let z = z2();
    let x = SdhElement::basis(z.x);
    assert!(z.s.sdh_tw_product(&x, &x).unwrap_err().is_euler_undefined());
    let d = DhElement::basis(z.x);
    assert!(z.s.dh_product(&d, &d).unwrap_err().is_euler_undefined());
    let obj = z.s.stable_object(z.x).unwrap();
    assert!(matches!(
        z.s.rel_euler(&obj, &obj),
        Err(HallError::RelEulerUndefined(_))
    ));
}

struct A1 {
    s: Sdh,
    lo: StableId,
    hi: StableId,
}

/// Bounded A1 on `[0, 1]`: `lo` is the stalk in degree 0 and `hi = Sigma^{-1} lo`.
fn a1(exec: Exec) -> A1 {
    let s = sdh(ComplexKind::bounded(0, 1), 1, exec);
    let cat = s.category();
    let xs = [cat.stalk(0, &[1]).unwrap(), cat.stalk(1, &[1]).unwrap()];
    let ids = s.register_stable_all(&xs).unwrap();
    A1 {
        lo: ids[0],
        hi: ids[1],
        s,
    }
}

#[test]
fn rel_euler_examples() {
    let a = a1(Exec::Sequential);
    let cat = a.s.category();
    let p = cat.stalk(0, &[1]).unwrap();
    assert_eq!(a.s.rel_euler(&p, &p).unwrap(), int(1));
    let k = cat.cone(g(0)).unwrap();
    assert_eq!(a.s.rel_euler(&k, &k).unwrap(), int(2));
    assert_eq!(a.s.rel_euler(&cat.zero(), &p).unwrap(), int(1));
    assert_eq!(a.s.rel_euler(&k, &p).unwrap(), int(2));
}

#[test]
fn rel_euler_multiplicativity() {
    let s = sdh(ComplexKind::bounded(0, 1), 2, Exec::Parallel);
    let objs = s
        .category()
        .enumerate_complexes(&ComplexDimCap::total(2))
        .unwrap();
    let report = s.verify_rel_euler(&objs, &objs[..5], 50).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.checks, 50 * 5 * 2);
}

#[test]
fn dh_examples() {
    let a = a1(Exec::Sequential);
    let cat = a.s.category();
    // S in degree 1, Sigma S in degree 0
    let (s, ss) = (a.hi, a.lo);
    let sum = a
        .s
        .normal_form(&cat.direct_sum(
            &a.s.stable_object(s).unwrap(),
            &a.s.stable_object(ss).unwrap(),
        ))
        .unwrap()
        .1;
    let b = DhElement::basis;
    assert_eq!(a.s.dh_product(&b(0), &b(s)).unwrap(), b(s));
    assert_eq!(a.s.dh_product(&b(s), &b(0)).unwrap(), b(s));
    assert_eq!(a.s.dh_product(&b(s), &b(ss)).unwrap(), b(sum).scale(&int(2)));
    assert_eq!(
        a.s.dh_product(&b(ss), &b(s)).unwrap(),
        b(sum).add(&b(0))
    );
}

#[test]
fn dh_associativity_a1() {
    let a = a1(Exec::Parallel);
    let objs = a
        .s
        .category()
        .enumerate_projective_free(&ComplexDimCap::per_degree(1))
        .unwrap();
    let ids = a.s.register_stable_all(&objs).unwrap();
    let report = a.s.verify_dh_associativity(&ids).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.checks, ids.len().pow(3));
}

#[test]
fn twisted_centrality() {
    let a = a1(Exec::Sequential);
    let cat = a.s.category();
    for gen in cat.contractible_generators() {
        let t = SdhElement::torus(t1(gen));
        for m in [0, a.lo, a.hi] {
            let x = SdhElement::basis(m);
            assert_eq!(
                a.s.sdh_tw_product(&t, &x).unwrap(),
                a.s.sdh_tw_product(&x, &t).unwrap()
            );
        }
    }
    let x = SdhElement::basis(a.lo);
    assert_eq!(a.s.sdh_tw_product(&SdhElement::one(), &x).unwrap(), x);
}

#[test]
fn toen_comparison_a1() {
    let a = a1(Exec::Parallel);
    let objs = a
        .s
        .category()
        .enumerate_projective_free(&ComplexDimCap::per_degree(1))
        .unwrap();
    let ids = a.s.register_stable_all(&objs).unwrap();
    let pairs: Vec<_> = ids
        .iter()
        .flat_map(|&x| ids.iter().map(move |&y| (x, y)))
        .collect();
    let report = a.s.compare_toen(&pairs).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.checks, pairs.len());
    assert!(report.notes.iter().any(|n| n.contains("bare basis map")));
}

#[test]
fn pushforward_examples() {
    let z = z2();
    let x = SdhElement::basis(z.x);
    assert_eq!(z.s.pushforward_shift(0, &x).unwrap(), x);
    assert_eq!(z.s.pushforward_shift(1, &x).unwrap(), SdhElement::basis(z.y));
    assert_eq!(
        z.s.pushforward_shift(1, &SdhElement::torus(t1(z.k))).unwrap(),
        SdhElement::torus(t1(z.k2))
    );
    let objs = z
        .s
        .category()
        .enumerate_complexes(&ComplexDimCap::per_degree(1))
        .unwrap();
    let report = z.s.verify_shift_functor(1, &objs).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
fn freeness_z2() {
    let s = sdh(ComplexKind::periodic(2), 1, Exec::Parallel);
    let objs = s
        .category()
        .enumerate_complexes(&ComplexDimCap::per_degree(2))
        .unwrap();
    let report = s.verify_freeness(&objs).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
fn parallel_matches_sequential() {
    let run = |exec| {
        let a = a1(exec);
        let objs = a
            .s
            .category()
            .enumerate_projective_free(&ComplexDimCap::per_degree(1))
            .unwrap();
        let ids = a.s.register_stable_all(&objs).unwrap();
        let mut out = Vec::new();
        for &x in &ids {
            for &y in &ids {
                let p = a
                    .s
                    .sdh_tw_product(&SdhElement::basis(x), &SdhElement::basis(y))
                    .unwrap();
                out.push(p.to_string());
            }
        }
        (out, (0..a.s.stable_count()).map(|i| a.s.encode_stable(i).unwrap()).collect::<Vec<_>>())
    };
    assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
}
