use alloc::vec::Vec;
use core::fmt;

use crate::magnus::HallIndex;
use crate::ring::{Ring, RingElement};

/// An element `u^a = u_11^{a_11} ⋯ u_{c,n_c}^{a_{c,n_c}}` of `N_{r,c}(R)`,
/// stored as its Hall coordinates `a` in sequence order.
///
/// Standard forms are unique, so equality of elements is equality of
/// coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub(crate) r: usize,
    pub(crate) c: usize,
    pub(crate) ring: Ring,
    pub(crate) coords: Vec<RingElement>,
}

impl GroupElement {
    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn class(&self) -> usize {
        self.c
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[RingElement] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<RingElement> {
        self.coords
    }

    pub fn coord(&self, position: usize) -> &RingElement {
        &self.coords[position]
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(RingElement::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str(")")
    }
}

/// One letter `u_{ij}^e` of a word in the basic commutators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub index: HallIndex,
    pub exponent: RingElement,
}

/// A product of powers of basic commutators, in any order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new() -> Self {
        GroupWord::default()
    }

    /// Letters with zero exponent are dropped.
    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (HallIndex, RingElement)>,
    {
        let mut w = GroupWord::new();
        for (index, exponent) in letters {
            w.push(index, exponent);
        }
        w
    }

    pub fn push(&mut self, index: HallIndex, exponent: RingElement) {
        if !exponent.is_zero() {
            self.letters.push(Letter { index, exponent });
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}
