use hallforge_core::magnus::{hall_basis, lie_element_of, HallBasis, HallIndex};
use hallforge_core::ring::Ring;
use hallforge_core::Error;

fn mobius(n: usize) -> i64 {
    let (mut n, mut k, mut sign) = (n, 2, 1);
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            sign = -sign;
        }
        k += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

// number of Lyndon words of length n over r letters
fn necklace(r: usize, n: usize) -> usize {
    let s: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (r as i64).pow((n / d) as u32))
        .sum();
    (s / n as i64) as usize
}

#[test]
fn counts_match_necklace_formula() {
    for r in 2..=4 {
        for c in 1..=(7 - r) {
            let b = hall_basis(r, c).unwrap();
            let expected: Vec<usize> = (1..=c).map(|n| necklace(r, n)).collect();
            assert_eq!(b.counts(), expected, "r={} c={}", r, c);
        }
    }
}

#[test]
fn known_counts() {
    assert_eq!(hall_basis(2, 5).unwrap().counts(), [2, 1, 2, 3, 6]);
    assert_eq!(hall_basis(3, 2).unwrap().counts(), [3, 3]);
    assert_eq!(hall_basis(2, 5).unwrap().len(), 14);
}

#[test]
fn rank_two_class_two_names() {
    let b = hall_basis(2, 2).unwrap();
    let names: Vec<String> = (0..b.len()).map(|p| b.describe(p)).collect();
    assert_eq!(names, ["x1", "x2", "[x2,x1]"]);
    assert_eq!(b.position(HallIndex::new(2, 1)), Some(2));
}

#[test]
fn weights_are_nondecreasing_and_leaves_match() {
    let b = hall_basis(3, 3).unwrap();
    let mut last = 0;
    for e in b.iter() {
        assert!(e.weight() >= last);
        last = e.weight();
        assert_eq!(b.tree(e.position).leaves(), e.weight());
    }
}

#[test]
fn lie_elements_are_homogeneous() {
    let b = hall_basis(2, 4).unwrap();
    for e in b.iter() {
        let l = lie_element_of(&b, e.position, &Ring::Integers);
        assert_eq!(l.lowest_degree(), Some(e.weight()));
        for d in 0..=4 {
            if d != e.weight() {
                assert!(l.homogeneous(d).iter().all(|x| x.is_zero()));
            }
        }
    }
}

#[test]
fn invalid_shapes() {
    assert_eq!(HallBasis::new(1, 3).unwrap_err(), Error::BadRank(1));
    assert_eq!(HallBasis::new(2, 0).unwrap_err(), Error::BadClass(0));
}
