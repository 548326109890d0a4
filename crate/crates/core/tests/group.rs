mod common;

use common::{element, rng, word};
use hallforge_core::group::conventions::GENERATOR_COMMUTATOR_SIGN;
use hallforge_core::group::{Collector, GroupWord, NilpotentGroup};
use hallforge_core::hall_poly::derive_structure_polys_with;
use hallforge_core::magnus::HallIndex;
use hallforge_core::ring::{Ring, RingElement};
use hallforge_core::Error;
use proptest::prelude::*;
use rand::Rng;

type M3 = [[i64; 3]; 3];

fn mat_mul(a: &M3, b: &M3) -> M3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn unipotent(e12: i64, e23: i64, e13: i64) -> M3 {
    [[1, e12, e13], [0, 1, e23], [0, 0, 1]]
}

fn mat_inv(m: &M3) -> M3 {
    let (a, b, c) = (m[0][1], m[1][2], m[0][2]);
    unipotent(-a, -b, a * b - c)
}

fn mat_pow(m: &M3, n: i64) -> M3 {
    let base = if n < 0 { mat_inv(m) } else { *m };
    (0..n.abs()).fold(unipotent(0, 0, 0), |acc, _| mat_mul(&acc, &base))
}

// N_{2,2}(Z) ≅ UT_3(Z) with x1 ↦ 1 + E12 and x2 ↦ 1 + E23. The weight-2
// basic commutator [x2, x1] maps to the central matrix computed below.
fn central_entry() -> i64 {
    let (x, y) = (unipotent(1, 0, 0), unipotent(0, 1, 0));
    let comm = mat_mul(&mat_mul(&mat_inv(&y), &mat_inv(&x)), &mat_mul(&y, &x));
    assert_eq!((comm[0][1], comm[1][2]), (0, 0));
    comm[0][2]
}

fn to_matrix(a: i64, b: i64, c: i64) -> M3 {
    let z = central_entry();
    mat_mul(
        &mat_mul(&mat_pow(&unipotent(1, 0, 0), a), &mat_pow(&unipotent(0, 1, 0), b)),
        &unipotent(0, 0, c * z),
    )
}

fn from_matrix(m: &M3) -> [i64; 3] {
    let (a, b) = (m[0][1], m[1][2]);
    let z = central_entry();
    let rest = m[0][2] - a * b;
    assert_eq!(rest % z, 0);
    [a, b, rest / z]
}

fn coords_i64(g: &hallforge_core::group::GroupElement) -> Vec<i64> {
    g.coords()
        .iter()
        .map(|x| i64::try_from(x.as_integer().unwrap()).unwrap())
        .collect()
}

#[test]
fn matrix_oracle_mul_pow_inv() {
    let g = NilpotentGroup::new(2, 2, Ring::Integers).unwrap();
    let mut r = rng(11);
    for _ in 0..300 {
        let (x, y) = (element(&g, &mut r, 9), element(&g, &mut r, 9));
        let (cx, cy) = (coords_i64(&x), coords_i64(&y));
        let (mx, my) = (to_matrix(cx[0], cx[1], cx[2]), to_matrix(cy[0], cy[1], cy[2]));
        assert_eq!(coords_i64(&g.mul(&x, &y).unwrap()), from_matrix(&mat_mul(&mx, &my)));
        assert_eq!(coords_i64(&g.inv(&x).unwrap()), from_matrix(&mat_inv(&mx)));
        let n = r.gen_range(-5..=5);
        assert_eq!(coords_i64(&g.pow_i64(&x, n).unwrap()), from_matrix(&mat_pow(&mx, n)));
    }
}

#[test]
fn swapped_generators_differ_in_weight_two() {
    let g = NilpotentGroup::new(2, 2, Ring::Integers).unwrap();
    let (a, b) = (g.from_i64s(&[1, 0, 0]).unwrap(), g.from_i64s(&[0, 1, 0]).unwrap());
    let ab = coords_i64(&g.mul(&a, &b).unwrap());
    let ba = coords_i64(&g.mul(&b, &a).unwrap());
    assert_eq!(&ab[..2], &ba[..2]);
    assert_eq!((ab[2] - ba[2]).abs(), 1);
    assert_eq!(ab, from_matrix(&mat_mul(&to_matrix(1, 0, 0), &to_matrix(0, 1, 0))));
}

#[test]
fn generator_commutator_sign() {
    let g = NilpotentGroup::new(2, 2, Ring::Integers).unwrap();
    let c = g.commutator(&g.generator(0), &g.generator(1)).unwrap();
    assert_eq!(coords_i64(&c), [0, 0, GENERATOR_COMMUTATOR_SIGN]);
    let x = unipotent(1, 0, 0);
    let y = unipotent(0, 1, 0);
    let m = mat_mul(&mat_mul(&mat_inv(&x), &mat_inv(&y)), &mat_mul(&x, &y));
    assert_eq!(from_matrix(&m), [0, 0, GENERATOR_COMMUTATOR_SIGN]);
}

#[test]
fn power_of_product_matches_binomial() {
    let g = NilpotentGroup::new(2, 2, Ring::Integers).unwrap();
    let x = g.from_i64s(&[1, 1, 0]).unwrap();
    for n in -5i64..=5 {
        let p = coords_i64(&g.pow_i64(&x, n).unwrap());
        let expect = from_matrix(&mat_pow(&to_matrix(1, 1, 0), n));
        assert_eq!(p, expect);
        assert_eq!(p[2].abs(), (n * (n - 1) / 2).abs());
    }
}

#[test]
fn collection_matches_magnus_oracle() {
    for (r, c) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let g = NilpotentGroup::new(r, c, Ring::Integers).unwrap();
        let s = derive_structure_polys_with(g.tables().clone()).unwrap();
        let col = Collector::new(&g, &s).unwrap();
        let mut rn = rng(100 + r as u64 * 10 + c as u64);
        for _ in 0..60 {
            let len = rn.gen_range(0..8);
            let w = word(&g, &mut rn, len, 5);
            assert_eq!(col.collect(&w).unwrap(), g.evaluate_word(&w).unwrap());
        }
    }
}

#[test]
fn collection_over_rationals() {
    let g = NilpotentGroup::new(2, 3, Ring::Rationals).unwrap();
    let s = derive_structure_polys_with(g.tables().clone()).unwrap();
    let col = Collector::new(&g, &s).unwrap();
    let half = Ring::Rationals.parse("1/2").unwrap();
    let third = Ring::Rationals.parse("-1/3").unwrap();
    let w = GroupWord::from_letters([
        (HallIndex::new(1, 2), half.clone()),
        (HallIndex::new(1, 1), third.clone()),
        (HallIndex::new(2, 1), half),
        (HallIndex::new(1, 2), third),
    ]);
    assert_eq!(col.collect(&w).unwrap(), g.evaluate_word(&w).unwrap());
}

#[test]
fn collector_rejects_foreign_tables() {
    let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
    let other = NilpotentGroup::new(3, 2, Ring::Integers).unwrap();
    let s = derive_structure_polys_with(other.tables().clone()).unwrap();
    assert!(matches!(Collector::new(&g, &s), Err(Error::ShapeMismatch(_))));
}

#[test]
fn shape_and_ring_contracts() {
    let g = NilpotentGroup::new(2, 2, Ring::Integers).unwrap();
    let h = NilpotentGroup::new(3, 2, Ring::Integers).unwrap();
    let q = NilpotentGroup::new(2, 2, Ring::Rationals).unwrap();
    assert!(matches!(g.from_i64s(&[1, 2]), Err(Error::ShapeMismatch(_))));
    assert!(matches!(
        g.mul(&g.identity(), &h.identity()),
        Err(Error::ShapeMismatch(_))
    ));
    assert_eq!(g.mul(&g.identity(), &q.identity()), Err(Error::MixedRings));
    let half = Ring::Rationals.parse("1/2").unwrap();
    assert_eq!(
        g.element(vec![half, RingElement::from(0), RingElement::from(0)]),
        Err(Error::MixedRings)
    );
}

#[test]
fn gamma_weights() {
    let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
    assert_eq!(g.gamma_weight(&g.identity()), 4);
    assert_eq!(g.gamma_weight(&g.generator(1)), 1);
    let (x, y) = (g.generator(0), g.generator(1));
    let c = g.commutator(&g.commutator(&x, &y).unwrap(), &x).unwrap();
    assert_eq!(g.gamma_weight(&c), 3);
}

#[test]
fn simple_commutators_lie_in_gamma() {
    let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
    let gens = g.generators();
    assert_eq!(g.simple_commutators(1, &gens).unwrap(), gens);
    assert_eq!(g.simple_commutators(2, &gens).unwrap().len(), 4);
    for w in g.simple_commutators(3, &gens).unwrap() {
        assert!(g.gamma_weight(&w) >= 3);
    }
}

#[test]
fn basic_powers_add_above_weight_one() {
    let g = NilpotentGroup::new(3, 3, Ring::Integers).unwrap();
    for p in g.basis().weight_range(2).chain(g.basis().weight_range(3)) {
        let a = g.basic_power(p, RingElement::from(4)).unwrap();
        let b = g.basic_power(p, RingElement::from(-7)).unwrap();
        assert_eq!(g.mul(&a, &b).unwrap(), g.basic_power(p, RingElement::from(-3)).unwrap());
    }
}

#[test]
fn series_round_trip() {
    let g = NilpotentGroup::new(2, 4, Ring::Integers).unwrap();
    let mut r = rng(5);
    for _ in 0..20 {
        let x = element(&g, &mut r, 9);
        assert_eq!(g.from_series(&g.to_series(&x).unwrap()).unwrap(), x);
    }
    let bad = g.to_series(&g.generator(0)).unwrap().scale(&RingElement::from(2));
    assert!(g.from_series(&bad.unwrap()).is_err());
}

fn configs() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 2)), Just((2, 3)), Just((3, 2)), Just((2, 4))]
}

fn coords(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-9i64..=9, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms((r, c) in configs(), seed in any::<u64>()) {
        let g = NilpotentGroup::new(r, c, Ring::Integers).unwrap();
        let mut rn = rng(seed);
        let (x, y, z) = (element(&g, &mut rn, 9), element(&g, &mut rn, 9), element(&g, &mut rn, 9));
        let lhs = g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap();
        let rhs = g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.mul(&x, &g.identity()).unwrap(), x.clone());
        prop_assert_eq!(g.mul(&g.identity(), &x).unwrap(), x.clone());
        let xi = g.inv(&x).unwrap();
        prop_assert!(g.mul(&x, &xi).unwrap().is_identity());
        prop_assert!(g.mul(&xi, &x).unwrap().is_identity());
        prop_assert_eq!(g.inv(&xi).unwrap(), x);
    }

    #[test]
    fn weight_one_coordinates_add(a in coords(5), b in coords(5)) {
        let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
        let (x, y) = (g.from_i64s(&a).unwrap(), g.from_i64s(&b).unwrap());
        let p = g.mul(&x, &y).unwrap();
        for j in 0..2 {
            prop_assert_eq!(p.coord(j), &RingElement::from(a[j] + b[j]));
        }
    }

    #[test]
    fn pow_is_exponent_homomorphism(v in coords(5), a in -6i64..=6, b in -6i64..=6) {
        let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
        let x = g.from_i64s(&v).unwrap();
        let lhs = g.mul(&g.pow_i64(&x, a).unwrap(), &g.pow_i64(&x, b).unwrap()).unwrap();
        prop_assert_eq!(lhs, g.pow_i64(&x, a + b).unwrap());
        prop_assert!(g.pow_i64(&x, 0).unwrap().is_identity());
        prop_assert_eq!(g.pow_i64(&x, 1).unwrap(), x);
    }

    #[test]
    fn filtration(seed in any::<u64>()) {
        let g = NilpotentGroup::new(2, 4, Ring::Integers).unwrap();
        let mut rn = rng(seed);
        let pick = |rn: &mut rand_chacha::ChaCha8Rng| {
            let x = element(&g, rn, 9);
            let w = rn.gen_range(1..=4usize);
            let mut coords = x.into_coords();
            for x in &mut coords[..g.basis().weight_range(w).start] {
                *x = RingElement::from(0);
            }
            g.element(coords).unwrap()
        };
        let (x, y) = (pick(&mut rn), pick(&mut rn));
        let (wx, wy) = (g.gamma_weight(&x), g.gamma_weight(&y));
        prop_assert!(g.gamma_weight(&g.mul(&x, &y).unwrap()) >= wx.min(wy));
        let wc = g.gamma_weight(&g.commutator(&x, &y).unwrap());
        prop_assert!(wc >= (wx + wy).min(g.class() + 1));
    }

    #[test]
    fn commutator_with_self_is_trivial(v in coords(8)) {
        let g = NilpotentGroup::new(2, 4, Ring::Integers).unwrap();
        let x = g.from_i64s(&v).unwrap();
        prop_assert!(g.commutator(&x, &x).unwrap().is_identity());
        prop_assert!(g.gamma_weight(&g.commutator(&x, &g.generator(0)).unwrap()) >= 2);
    }
}
