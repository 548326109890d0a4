use hallforge_core::lazard::{
    bilinear_from_lie, compare_graded_lie, complete_system_check, free_nilpotent_lie, lazard_lie_ring,
    pf_solution_space, width_probe, BilinearMapData, EndoPair,
};
use hallforge_core::ring::Ring;
use hallforge_core::{BigInt, BigRational, Error};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn lazard_equals_free_nilpotent() {
    for (r, c) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let a = lazard_lie_ring(r, c, &Ring::Integers).unwrap();
        let b = free_nilpotent_lie(r, c).unwrap();
        assert!(compare_graded_lie(&a, &b), "({}, {})", r, c);
        assert!(compare_graded_lie(&a, &a));
        assert_eq!(a, b);
    }
}

#[test]
fn lazard_over_rationals() {
    let a = lazard_lie_ring(2, 3, &Ring::Rationals).unwrap();
    assert!(compare_graded_lie(&a, &free_nilpotent_lie(2, 3).unwrap()));
}

#[test]
fn ring_axioms_and_center() {
    for (r, c) in [(2, 3), (3, 2), (2, 4)] {
        let l = free_nilpotent_lie(r, c).unwrap();
        assert!(l.is_antisymmetric());
        assert!(l.satisfies_jacobi());
        assert!(l.center_is_top_block());
        let top = l.weight_range(c);
        for a in top.clone() {
            for b in top.clone() {
                assert!(l.bracket_basis(a, b).iter().all(|x| x == &q(0)));
            }
        }
    }
}

#[test]
fn generator_bracket_is_weight_two_basis_vector() {
    let l = lazard_lie_ring(2, 2, &Ring::Integers).unwrap();
    let v = l.bracket_basis(0, 1);
    assert_eq!(v[..2], [q(0), q(0)]);
    assert!(v[2] == q(1) || v[2] == q(-1));
}

#[test]
fn shape_mismatch_compares_false() {
    assert!(!compare_graded_lie(
        &free_nilpotent_lie(2, 3).unwrap(),
        &free_nilpotent_lie(3, 2).unwrap()
    ));
}

#[test]
fn bilinear_maps_are_full_and_nondegenerate() {
    for ((r, c), dims) in [((2, 2), (2, 1)), ((2, 3), (3, 3)), ((3, 2), (3, 3)), ((2, 4), (5, 6))] {
        let f = bilinear_from_lie(&free_nilpotent_lie(r, c).unwrap()).unwrap();
        assert_eq!((f.domain_dimension(), f.codomain_dimension()), dims);
        assert!(f.is_full());
        assert!(f.is_nondegenerate());
        for a in 0..f.domain_dimension() {
            assert!(f.value(a, a).iter().all(|x| x == &q(0)));
        }
    }
}

#[test]
fn pf_is_one_dimensional_scalars() {
    for (r, c) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let f = bilinear_from_lie(&free_nilpotent_lie(r, c).unwrap()).unwrap();
        let sols = pf_solution_space(&f).unwrap();
        assert_eq!(sols.len(), 1, "({}, {})", r, c);
        assert!(sols[0].common_scalar().is_some_and(|a| a != q(0)));
        assert!(sols[0].satisfies(&f));
        assert!(EndoPair::identity(&f).satisfies(&f));
    }
}

#[test]
fn pf_of_degenerate_map_is_larger() {
    // f = 0 on a 2-dimensional space: every pair solves
    let zero = vec![vec![vec![q(0)]; 2]; 2];
    let f = BilinearMapData::from_tensor(zero, 1).unwrap();
    assert_eq!(pf_solution_space(&f).unwrap().len(), 5);
    assert!(!f.is_nondegenerate());
}

#[test]
fn complete_systems() {
    let f = bilinear_from_lie(&free_nilpotent_lie(2, 2).unwrap()).unwrap();
    assert!(complete_system_check(&f, &[0, 1]).unwrap());
    // f(u_11, u_11) = 0, so a single generator is never complete
    assert!(!complete_system_check(&f, &[0]).unwrap());
    assert!(!complete_system_check(&f, &[]).unwrap());
    assert!(matches!(complete_system_check(&f, &[7]), Err(Error::InvalidIndex(_))));
    let g = bilinear_from_lie(&free_nilpotent_lie(3, 2).unwrap()).unwrap();
    assert!(complete_system_check(&g, &[0, 1, 2]).unwrap());
}

#[test]
fn width_probe_values() {
    let f = bilinear_from_lie(&free_nilpotent_lie(2, 3).unwrap()).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            assert!(width_probe(&f, f.value(a, b), 1, 1).unwrap());
        }
    }
    let sum: Vec<BigRational> = f.value(0, 1).iter().zip(f.value(0, 2)).map(|(x, y)| x + y).collect();
    assert!(width_probe(&f, &sum, 2, 1).unwrap());
    assert!(matches!(width_probe(&f, &sum, 6, 4), Err(Error::ScaleLimit { .. })));
}

#[test]
fn scale_limit() {
    assert!(matches!(free_nilpotent_lie(4, 4), Err(Error::ScaleLimit { .. })));
    assert!(matches!(
        lazard_lie_ring(5, 3, &Ring::Integers),
        Err(Error::ScaleLimit { .. })
    ));
}
