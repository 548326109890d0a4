mod common;

use common::{element, rng};
use hallforge_core::group::NilpotentGroup;
use hallforge_core::ring::{Ring, RingElement};
use hallforge_core::Error;
use rand::Rng;

#[test]
fn first_two_words() {
    let g = NilpotentGroup::new(2, 2, Ring::Integers).unwrap();
    let (x, y) = (g.generator(0), g.generator(1));
    let xs = [x.clone(), y.clone()];
    assert_eq!(g.petresco_tau(1, &xs).unwrap(), g.mul(&x, &y).unwrap());
    // (xy)^-2 x^2 y^2 in class 2
    let xy = g.mul(&x, &y).unwrap();
    let free = g
        .product(&[
            g.pow_i64(&xy, -2).unwrap(),
            g.pow_i64(&x, 2).unwrap(),
            g.pow_i64(&y, 2).unwrap(),
        ])
        .unwrap();
    let tau2 = g.petresco_tau(2, &xs).unwrap();
    assert_eq!(tau2, free);
    let comm = g.commutator(&x, &y).unwrap();
    assert!(tau2 == comm || tau2 == g.inv(&comm).unwrap());
}

#[test]
fn out_of_class() {
    let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
    let xs = g.generators();
    assert_eq!(g.petresco_tau(4, &xs).unwrap_err(), Error::OutOfClass { k: 4, c: 3 });
    assert_eq!(g.petresco_tau(0, &xs).unwrap_err(), Error::OutOfClass { k: 0, c: 3 });
}

#[test]
fn defining_identity_and_weights() {
    for (r, c) in [(2, 5), (3, 3)] {
        let g = NilpotentGroup::new(r, c, Ring::Integers).unwrap();
        let mut rn = rng(31 + c as u64);
        for _ in 0..4 {
            let m = rn.gen_range(2..=3);
            let xs: Vec<_> = (0..m).map(|_| element(&g, &mut rn, 4)).collect();
            let taus = g.petresco_taus(&xs).unwrap();
            for (k, tau) in taus.iter().enumerate() {
                assert!(g.gamma_weight(tau) > k);
            }
            for n in 1..=6i64 {
                let lhs = g
                    .product(&xs.iter().map(|x| g.pow_i64(x, n).unwrap()).collect::<Vec<_>>())
                    .unwrap();
                assert_eq!(lhs, g.petresco_expand(&taus, &RingElement::from(n)).unwrap());
            }
            let lhs = g
                .product(&xs.iter().map(|x| g.pow_i64(x, -3).unwrap()).collect::<Vec<_>>())
                .unwrap();
            assert_eq!(lhs, g.petresco_expand(&taus, &RingElement::from(-3)).unwrap());
        }
    }
}

#[test]
fn power_commutator_identity() {
    for (r, c) in [(2, 4), (3, 3)] {
        let g = NilpotentGroup::new(r, c, Ring::Integers).unwrap();
        let mut rn = rng(77 + r as u64);
        for _ in 0..5 {
            let (h, x) = (element(&g, &mut rn, 5), element(&g, &mut rn, 5));
            for a in -5i64..=5 {
                assert!(g.verify_maineq(&h, &x, &RingElement::from(a)).unwrap());
            }
        }
    }
}

#[test]
fn power_commutator_trivial_exponents() {
    let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
    let (h, x) = (
        g.from_i64s(&[1, -2, 3, 0, 1]).unwrap(),
        g.from_i64s(&[0, 4, -1, 2, 2]).unwrap(),
    );
    assert!(g.verify_maineq(&h, &x, &RingElement::from(0)).unwrap());
    assert!(g.verify_maineq(&h, &x, &RingElement::from(1)).unwrap());
}
