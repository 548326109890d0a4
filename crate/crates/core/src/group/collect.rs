//! Collection of words into standard form using the defining relations
//!
//! 1. `[u_p^a, u_q^b] = u^{t^{pq}(a, b)}`,
//! 2. `u_p^a u_p^b = u_p^{a+b}` for `p` of weight at least two,
//! 3. `u_p^a u_p^b = u_p^{a+b} · u_c^{f^p(a, b)}` for a generator `u_p`
//!    (with `f = 0` in the undeformed group).
//!
//! The collected prefix is kept strictly increasing. The next letter is
//! moved left past every larger letter with `x y = y x [x, y]`; the tail
//! `[x, y]` only involves letters of weight greater than that of `x`, so
//! the process terminates.

use alloc::vec::Vec;

use super::{GroupElement, GroupWord, NilpotentGroup};
use crate::deformation::Deformation;
use crate::hall_poly::StructurePolynomials;
use crate::ring::RingElement;
use crate::{Error, Result};

pub struct Collector<'a> {
    group: &'a NilpotentGroup,
    structure: &'a StructurePolynomials,
    deformation: Option<&'a Deformation>,
}

impl<'a> Collector<'a> {
    pub fn new(group: &'a NilpotentGroup, structure: &'a StructurePolynomials) -> Result<Self> {
        if structure.basis().rank() != group.rank() || structure.basis().class() != group.class() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "structure polynomials for N_({},{}) used with N_({},{})",
                structure.basis().rank(),
                structure.basis().class(),
                group.rank(),
                group.class()
            )));
        }
        Ok(Collector {
            group,
            structure,
            deformation: None,
        })
    }

    /// Collect in the deformed group `N_{r,c}(R, f̄)` instead.
    pub fn deformed(mut self, deformation: &'a Deformation) -> Result<Self> {
        deformation.check_shape(self.group)?;
        self.deformation = Some(deformation);
        Ok(self)
    }

    /// The standard form of `word`.
    pub fn collect(&self, word: &GroupWord) -> Result<GroupElement> {
        let ring = self.group.ring();
        let basis = self.group.basis();
        let mut stack: Vec<(usize, RingElement)> = Vec::with_capacity(word.len());
        for letter in word.letters().iter().rev() {
            if !ring.contains(&letter.exponent) {
                return Err(Error::MixedRings);
            }
            stack.push((self.group.position(letter.index)?, letter.exponent.clone()));
        }

        let mut collected: Vec<(usize, RingElement)> = Vec::new();
        while let Some((q, b)) = stack.pop() {
            if b.is_zero() {
                continue;
            }
            let Some((p, _)) = collected.last() else {
                collected.push((q, b));
                continue;
            };
            let p = *p;
            if p < q {
                collected.push((q, b));
            } else if p == q {
                let (_, a) = collected.pop().expect("nonempty");
                let sum = &a + &b;
                if let (Some(def), 1) = (self.deformation, basis.weight_of(p)) {
                    let correction = def.cocycle(p).eval(&a, &b, ring)?;
                    let top = basis.weight_range(basis.class());
                    for (pos, x) in top.zip(correction).rev() {
                        stack.push((pos, x));
                    }
                }
                stack.push((p, sum));
            } else {
                // x y = y x [x, y]
                let (_, a) = collected.pop().expect("nonempty");
                let tail = self.structure.eval(p, q, &a, &b, ring)?;
                for (pos, x) in tail.into_iter().enumerate().rev() {
                    if !x.is_zero() {
                        stack.push((pos, x));
                    }
                }
                stack.push((p, a));
                stack.push((q, b));
            }
        }

        let mut coords = alloc::vec![ring.zero(); self.group.dimension()];
        for (p, a) in collected {
            coords[p] = a;
        }
        self.group.element(coords)
    }
}
