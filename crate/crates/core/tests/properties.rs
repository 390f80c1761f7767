use hallforge::ffla::{kernel_basis, rref, solve_linear, Elem};
use hallforge::frobcat::{Complex, ComplexCategory, ComplexDimCap, ComplexKind, Gen};
use hallforge::hallcore::{HallAlgebra, HallBackend, HallElement};
use hallforge::quiverrep::{Quiver, Rep, RepCategory};
use hallforge::sdh::{Sdh, SdhElement};
use hallforge::{Caps, Exec, Field, Matrix};
use proptest::prelude::*;
use std::sync::OnceLock;

fn matrix(p: u32, max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(0..p, r * c).prop_map(move |d| Matrix::from_vec(r, c, d))
    })
}

fn field_and_matrix() -> impl Strategy<Value = (Field, Matrix)> {
    prop_oneof![Just(2u32), Just(3u32)]
        .prop_flat_map(|p| (Just(Field::new(p).unwrap()), matrix(p, 6)))
}

/// Random representation of `1 -> 2 -> 3` with dims at most 2.
fn a3_rep() -> impl Strategy<Value = Rep> {
    proptest::collection::vec(0usize..=2, 3).prop_flat_map(|dims| {
        let d = dims.clone();
        let sizes = [d[1] * d[0], d[2] * d[1]];
        (
            proptest::collection::vec(0u32..2, sizes[0]),
            proptest::collection::vec(0u32..2, sizes[1]),
        )
            .prop_map(move |(m1, m2)| {
                let maps = vec![
                    Matrix::from_vec(d[1], d[0], m1),
                    Matrix::from_vec(d[2], d[1], m2),
                ];
                Rep::new(&Quiver::linear_a(3), d.clone(), maps).unwrap()
            })
    })
}

fn a3() -> RepCategory {
    RepCategory::new(Quiver::linear_a(3), Field::new(2).unwrap(), Caps::default())
}

struct Grid {
    cat: ComplexCategory,
    objs: Vec<Complex>,
}

fn z2_cat() -> ComplexCategory {
    ComplexCategory::new(
        ComplexKind::periodic(2),
        Quiver::linear_a(1),
        Field::new(2).unwrap(),
        Caps::default(),
    )
    .unwrap()
}

fn z2_grid() -> &'static Grid {
    static G: OnceLock<Grid> = OnceLock::new();
    G.get_or_init(|| {
        let cat = z2_cat();
        let objs = cat.enumerate_complexes(&ComplexDimCap::per_degree(2)).unwrap();
        Grid { cat, objs }
    })
}

fn a2_bounded_grid() -> &'static Grid {
    static G: OnceLock<Grid> = OnceLock::new();
    G.get_or_init(|| {
        let cat = ComplexCategory::new(
            ComplexKind::bounded(0, 1),
            Quiver::linear_a(2),
            Field::new(2).unwrap(),
            Caps::default(),
        )
        .unwrap();
        let objs = cat.enumerate_complexes(&ComplexDimCap::total(2)).unwrap();
        Grid { cat, objs }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity((f, m) in field_and_matrix()) {
        let k = kernel_basis(f, &m);
        prop_assert_eq!(m.rank(f) + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(f, v).iter().all(|&x| x == 0));
        }
        if !k.is_empty() {
            let rows = Matrix::from_vec(k.len(), m.cols(), k.concat());
            prop_assert_eq!(rref(f, &rows).1.len(), k.len());
        }
    }

    #[test]
    fn solve_matches_brute_force(a in matrix(2, 4), seed in proptest::collection::vec(0u32..2, 4)) {
        let f = Field::new(2).unwrap();
        let b: Vec<Elem> = seed[..a.rows()].to_vec();
        match solve_linear(f, &a, &b) {
            Some(x) => prop_assert_eq!(a.mul_vec(f, &x), b),
            None => {
                let n = a.cols();
                let found = (0u32..1 << n).any(|bits| {
                    let x: Vec<Elem> = (0..n).map(|i| (bits >> i) & 1).collect();
                    a.mul_vec(f, &x) == b
                });
                prop_assert!(!found);
            }
        }
    }

    #[test]
    fn hereditary_two_term_identity(a in a3_rep(), b in a3_rep()) {
        let cat = a3();
        let h = cat.hom_dim(&a, &b).unwrap() as i64;
        let e = cat.ext1_dim(&a, &b).unwrap() as i64;
        prop_assert_eq!(h - e, cat.euler_exponent(a.dims(), b.dims()));
    }

    #[test]
    fn decomposition_reassembles(a in a3_rep()) {
        let cat = a3();
        let parts = cat.decompose(&a).unwrap();
        let sum = cat.direct_sum_all(parts.iter());
        prop_assert!(cat.iso_test(&sum, &a).unwrap());
        for p in &parts {
            prop_assert!(cat.is_indecomposable(p).unwrap());
        }
    }

    #[test]
    fn middle_terms_add_dimensions(a in a3_rep(), c in a3_rep()) {
        let cat = a3();
        let ext = cat.ext1_space(&a, &c).unwrap();
        prop_assert_eq!(ext.classes.len(), 1usize << ext.dim);
        for f in &ext.classes {
            let b = cat.middle_term(&a, &c, f).unwrap();
            let want: Vec<usize> = a.dims().iter().zip(c.dims()).map(|(x, y)| x + y).collect();
            prop_assert_eq!(b.dims(), &want[..]);
        }
    }

    #[test]
    fn lemma_ext_comparison(i in 0usize..20, j in 0usize..20) {
        let g = z2_grid();
        let (x, y) = (&g.objs[i % g.objs.len()], &g.objs[j % g.objs.len()]);
        let classes = g.cat.ext1_classes(x, y).unwrap().len();
        let shifted = g.cat.stable_hom_card(x, &g.cat.shift(y, 1).unwrap()).unwrap();
        let ext1 = g.cat.extp_card(x, y, 1).unwrap();
        prop_assert_eq!(num_bigint::BigUint::from(classes), shifted.clone());
        prop_assert_eq!(ext1, shifted);
    }

    #[test]
    fn periodicity_of_stable_hom(i in 0usize..20, j in 0usize..20) {
        let g = z2_grid();
        let (x, y) = (&g.objs[i % g.objs.len()], &g.objs[j % g.objs.len()]);
        prop_assert_eq!(
            g.cat.stable_hom_card(x, &g.cat.shift(y, 2).unwrap()).unwrap(),
            g.cat.stable_hom_card(x, y).unwrap()
        );
    }

    #[test]
    fn contractible_iff_strips_to_zero(i in 0usize..64) {
        for g in [z2_grid(), a2_bounded_grid()] {
            let x = &g.objs[i % g.objs.len()];
            let (_, rest) = g.cat.strip_contractibles(x).unwrap();
            prop_assert_eq!(g.cat.is_contractible(x).unwrap(), rest.is_zero());
        }
    }

    #[test]
    fn conflations_split_degreewise(i in 0usize..64, j in 0usize..64) {
        let g = a2_bounded_grid();
        let (x, y) = (&g.objs[i % g.objs.len()], &g.objs[j % g.objs.len()]);
        for f in g.cat.ext1_classes(x, y).unwrap() {
            let b = g.cat.middle_term_cx(x, y, &f).unwrap();
            let want: Vec<usize> = g.cat.grade(x).iter().zip(g.cat.grade(y)).map(|(p, q)| p + q).collect();
            prop_assert_eq!(g.cat.grade(&b), want);
        }
    }

    #[test]
    fn projectives_are_injective(i in 0usize..20) {
        let g = z2_grid();
        let x = &g.objs[i % g.objs.len()];
        for gen in g.cat.contractible_generators() {
            let k = g.cat.cone(gen).unwrap();
            prop_assert_eq!(g.cat.ext1_classes(&k, x).unwrap().len(), 1);
            prop_assert_eq!(g.cat.ext1_classes(x, &k).unwrap().len(), 1);
        }
    }

    #[test]
    fn localization_consistency(i in 0usize..20, degree in 0i64..2) {
        let g = z2_grid();
        let sdh = Sdh::new(z2_cat(), Exec::Sequential).unwrap();
        let x = &g.objs[i % g.objs.len()];
        let gen = Gen { degree, vertex: 0 };
        let k = g.cat.cone(gen).unwrap();
        let lhs = sdh.normalize(&g.cat.direct_sum(&k, x)).unwrap();
        let nx = sdh.normalize(x).unwrap();
        let h = g.cat.hom_dim(&k, x).unwrap() as i64;
        let tk = SdhElement::torus([(gen, 1)].into());
        let rhs = sdh
            .sdh_product(&tk, &nx)
            .unwrap()
            .scale(&hallforge::scalar::q_pow(2, h));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn hall_unit_and_grading_laws() {
    let g = z2_grid();
    let h = HallAlgebra::new(z2_cat(), Exec::Parallel).unwrap();
    let ids = h.register_all(&g.objs).unwrap();
    let q = h.q();
    let mut pairs = Vec::new();
    for &a in &ids {
        for &c in &ids {
            pairs.push((a, c));
        }
    }
    h.precompute(&pairs).unwrap();
    for &a in &ids {
        let e = HallElement::basis(q, a);
        let unit = HallElement::basis(q, 0);
        assert_eq!(h.hall_product(&unit, &e).unwrap(), e);
        assert_eq!(h.hall_product(&e, &unit).unwrap(), e);
    }
    for &(a, c) in &pairs {
        let entry = h.entry(a, c).unwrap();
        let total: u128 = entry.terms.iter().map(|t| t.1).sum();
        assert_eq!(total, entry.ext_size());
        let want: Vec<usize> = g
            .cat
            .grade(&h.object(a).unwrap())
            .iter()
            .zip(g.cat.grade(&h.object(c).unwrap()))
            .map(|(x, y)| x + y)
            .collect();
        for &(b, _) in &entry.terms {
            assert_eq!(g.cat.grade(&h.object(b).unwrap()), want);
        }
    }
}
