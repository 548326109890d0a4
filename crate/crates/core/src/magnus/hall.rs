use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use super::TruncatedSeries;
use crate::ring::Ring;
use crate::{Error, Result};

/// A position `(i, j)` in the Hall basic sequence: the `j`-th basic
/// commutator of weight `i`, both counted from 1. Ordered
/// lexicographically, which is the order of the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HallIndex {
    pub weight: usize,
    pub j: usize,
}

impl HallIndex {
    pub fn new(weight: usize, j: usize) -> Self {
        HallIndex { weight, j }
    }
}

impl fmt::Display for HallIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u[{},{}]", self.weight, self.j)
    }
}

/// How a basic commutator is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// The generator `x_{g+1}`.
    Generator(usize),
    /// `[left, right]`, children given by position in the sequence.
    Bracket(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn leaves(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(g) => write!(f, "x{}", g + 1),
            BracketTree::Node(l, r) => write!(f, "[{},{}]", l, r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCommutator {
    pub index: HallIndex,
    pub position: usize,
    pub construction: Construction,
}

impl BasicCommutator {
    pub fn weight(&self) -> usize {
        self.index.weight
    }
}

/// The Hall basic sequence `u_11, …, u_{c,n_c}` for rank `r` and class `c`.
///
/// Convention: weight-one entries are the generators in order. A bracket
/// `[u, v]` of lower entries is basic when `u > v` and, if `u = [a, b]`,
/// also `b <= v`. Entries are ordered by weight, then by discovery, where
/// candidates are scanned with `u` in the outer loop and `v` in the inner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallBasis {
    r: usize,
    c: usize,
    elements: Vec<BasicCommutator>,
    weight_start: Vec<usize>,
}

impl HallBasis {
    pub fn new(r: usize, c: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::BadRank(r));
        }
        Self::build(r, c)
    }

    /// Like [`new`](Self::new) but also accepts rank one.
    pub fn allowing_low_rank(r: usize, c: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::BadRank(r));
        }
        Self::build(r, c)
    }

    fn build(r: usize, c: usize) -> Result<Self> {
        if c < 1 {
            return Err(Error::BadClass(c));
        }
        let mut elements: Vec<BasicCommutator> = (0..r)
            .map(|g| BasicCommutator {
                index: HallIndex::new(1, g + 1),
                position: g,
                construction: Construction::Generator(g),
            })
            .collect();
        let mut weight_start = alloc::vec![0, r];
        for n in 2..=c {
            let mut j = 0;
            let existing = elements.len();
            for u in 0..existing {
                for v in 0..u {
                    if elements[u].weight() + elements[v].weight() != n {
                        continue;
                    }
                    let admissible = match elements[u].construction {
                        Construction::Generator(_) => true,
                        Construction::Bracket(_, b) => b <= v,
                    };
                    if admissible {
                        j += 1;
                        let position = elements.len();
                        elements.push(BasicCommutator {
                            index: HallIndex::new(n, j),
                            position,
                            construction: Construction::Bracket(u, v),
                        });
                    }
                }
            }
            weight_start.push(elements.len());
        }
        Ok(HallBasis {
            r,
            c,
            elements,
            weight_start,
        })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn class(&self) -> usize {
        self.c
    }

    /// `N = Σ n_i`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(n_1, …, n_c)`.
    pub fn counts(&self) -> Vec<usize> {
        (1..=self.c).map(|i| self.weight_range(i).len()).collect()
    }

    /// Positions of the weight-`i` entries.
    pub fn weight_range(&self, i: usize) -> Range<usize> {
        assert!((1..=self.c).contains(&i), "weight {} outside 1..={}", i, self.c);
        self.weight_start[i - 1]..self.weight_start[i]
    }

    pub fn get(&self, position: usize) -> &BasicCommutator {
        &self.elements[position]
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasicCommutator> {
        self.elements.iter()
    }

    pub fn weight_of(&self, position: usize) -> usize {
        self.elements[position].weight()
    }

    pub fn position(&self, index: HallIndex) -> Option<usize> {
        if index.weight < 1 || index.weight > self.c || index.j < 1 {
            return None;
        }
        let range = self.weight_range(index.weight);
        let p = range.start + index.j - 1;
        (p < range.end).then_some(p)
    }

    pub fn tree(&self, position: usize) -> BracketTree {
        match self.elements[position].construction {
            Construction::Generator(g) => BracketTree::Leaf(g),
            Construction::Bracket(a, b) => BracketTree::Node(Box::new(self.tree(a)), Box::new(self.tree(b))),
        }
    }

    pub fn describe(&self, position: usize) -> String {
        alloc::format!("{}", self.tree(position))
    }

    /// The Lie element of a basic commutator in the free associative
    /// algebra: `x_g` for a generator and `ab − ba` for a bracket.
    pub fn lie_element(&self, position: usize, ring: &Ring) -> TruncatedSeries {
        match self.elements[position].construction {
            Construction::Generator(g) => {
                TruncatedSeries::generator(self.r, self.c, ring, g).expect("generator index in range")
            }
            Construction::Bracket(a, b) => {
                let la = self.lie_element(a, ring);
                let lb = self.lie_element(b, ring);
                la.bracket(&lb).expect("same shape")
            }
        }
    }
}

/// Free function form of [`HallBasis::new`].
pub fn hall_basis(r: usize, c: usize) -> Result<HallBasis> {
    HallBasis::new(r, c)
}

/// Free function form of [`HallBasis::lie_element`].
pub fn lie_element_of(basis: &HallBasis, position: usize, ring: &Ring) -> TruncatedSeries {
    basis.lie_element(position, ring)
}
