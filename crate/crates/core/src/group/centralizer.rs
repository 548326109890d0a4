use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{GroupElement, NilpotentGroup};
use crate::linalg::QMatrix;
use crate::ring::{Ring, RingElement};
use crate::{Error, Result};

/// Outcome of [`NilpotentGroup::centralizer_structure_check`] for one
/// generator `u = u_{1,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    /// 0-based generator index.
    pub generator: usize,
    /// `kernel_dimensions[i - 1]` is the dimension of the kernel of the
    /// linear map sending a weight-`i` block `v` to the weight-`(i+1)`
    /// block of `[u^v, u_{1,j}]`, for `i < c`.
    pub kernel_dimensions: Vec<usize>,
    /// The weight-1 kernel is the line through the `j`-th unit vector.
    pub line_kernel: bool,
    /// Only the weight-`c` block commutes with all generators.
    pub center_is_top_block: bool,
    /// `u^a z` commutes with `u` for symbolic `a` and symbolic central `z`.
    pub symbolic_line_commutes: bool,
    pub samples: usize,
    /// Sampled elements that commute with `u`.
    pub members: usize,
    /// Members that decompose as `u^a z` with `z` central.
    pub decomposed: usize,
    pub failures: Vec<String>,
}

impl CentralizerReport {
    pub fn passed(&self) -> bool {
        self.line_kernel
            && self.center_is_top_block
            && self.symbolic_line_commutes
            && self.members == self.decomposed
            && self.failures.is_empty()
    }
}

fn rational(x: &RingElement) -> Result<BigRational> {
    x.to_rational().ok_or(Error::MixedRings)
}

impl NilpotentGroup {
    /// Matrix of `v ↦ weight-(i+1) block of [u^v, h]` on weight-`i` blocks,
    /// one column per weight-`i` basic commutator.
    fn bracket_matrix(&self, i: usize, h: &GroupElement) -> Result<QMatrix> {
        let q = NilpotentGroup::with_tables(self.tables().clone(), Ring::Rationals);
        let h = q.element(
            h.coords()
                .iter()
                .map(|x| Ok(RingElement::Rat(rational(x)?)))
                .collect::<Result<_>>()?,
        )?;
        let cols = self.basis().weight_range(i).len();
        let rows = self.basis().weight_range(i + 1).len();
        let mut m = QMatrix::zeros(rows, cols);
        for t in 0..cols {
            let mut block = alloc::vec![q.ring().zero(); cols];
            block[t] = q.ring().one();
            let y = q.from_weight_block(i, block)?;
            let comm = q.commutator(&y, &h)?;
            for (s, x) in q.weight_block(&comm, i + 1).iter().enumerate() {
                m[(s, t)] = rational(x)?;
            }
        }
        Ok(m)
    }

    /// Checks `C(u_{1,j}) = u_{1,j}^R · Z` with `Z` the weight-`c` block.
    ///
    /// If `y` commutes with `u` and its lowest nonzero block has weight
    /// `i < c`, that block lies in the kernel computed here. The kernels are
    /// the line through `e_j` for `i = 1` and zero for `1 < i < c`, so
    /// `u^{-a} y` is central for `a` the `j`-th coordinate of `y`.
    /// Each of `samples` is additionally classified and decomposed.
    pub fn centralizer_structure_check(&self, j: usize, samples: &[GroupElement]) -> Result<CentralizerReport> {
        if j >= self.rank() {
            return Err(Error::InvalidIndex(alloc::format!("generator {}", j)));
        }
        let c = self.class();
        let u = self.generator(j);
        let gens = self.generators();
        let mut report = CentralizerReport {
            generator: j,
            kernel_dimensions: Vec::new(),
            line_kernel: false,
            center_is_top_block: true,
            symbolic_line_commutes: false,
            samples: samples.len(),
            members: 0,
            decomposed: 0,
            failures: Vec::new(),
        };

        for i in 1..c {
            let kernel = self.bracket_matrix(i, &u)?.nullspace();
            report.kernel_dimensions.push(kernel.len());
            if i == 1 {
                report.line_kernel =
                    kernel.len() == 1 && kernel[0].iter().enumerate().all(|(t, x)| (t == j) != x.is_zero());
            }
            let mut stacked = QMatrix::zeros(0, self.basis().weight_range(i).len());
            for g in &gens {
                let m = self.bracket_matrix(i, g)?;
                for s in 0..m.nrows() {
                    stacked.push_row(m.row(s).to_vec());
                }
            }
            if !stacked.nullspace().is_empty() {
                report.center_is_top_block = false;
            }
        }
        if c == 1 {
            report.line_kernel = true;
        }
        for p in self.basis().weight_range(c) {
            let z = self.basic(p);
            for g in &gens {
                if !self.commutes(&z, g)? {
                    report.center_is_top_block = false;
                }
            }
        }

        report.symbolic_line_commutes = self.symbolic_line_check(j)?;

        for y in samples {
            self.check(y)?;
            if !self.commutes(y, &u)? {
                continue;
            }
            report.members += 1;
            let a = y.coord(j).clone();
            let z = self.mul(&self.pow(&u, &-&a)?, y)?;
            let central = self.gamma_weight(&z) >= c;
            if central && self.mul(&self.pow(&u, &a)?, &z)? == *y {
                report.decomposed += 1;
            } else {
                report
                    .failures
                    .push(alloc::format!("{} commutes with u_1{} but is not u^a z", y, j + 1));
            }
        }
        Ok(report)
    }

    fn symbolic_line_check(&self, j: usize) -> Result<bool> {
        let top = self.basis().weight_range(self.class());
        let mut names = alloc::vec![String::from("a")];
        names.extend(top.clone().map(|p| alloc::format!("z{}", p)));
        let ring = Ring::polynomial(names)?;
        let g = NilpotentGroup::with_tables(self.tables().clone(), ring.clone());
        let mut coords = alloc::vec![ring.zero(); g.dimension()];
        for (k, p) in top.enumerate() {
            coords[p] = ring.variable(k + 1)?;
        }
        let z = g.element(coords)?;
        let u = g.generator(j);
        let y = g.mul(&g.pow(&u, &ring.variable(0)?)?, &z)?;
        g.commutes(&y, &u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_centralizers() {
        for (r, c) in [(2, 2), (2, 3), (3, 2)] {
            let g = NilpotentGroup::new(r, c, Ring::Integers).unwrap();
            for j in 0..r {
                let samples = [g.identity(), g.generator(j), g.basic(r)];
                let rep = g.centralizer_structure_check(j, &samples).unwrap();
                assert!(rep.passed(), "{:?}", rep);
                assert_eq!(rep.kernel_dimensions[0], 1);
                assert!(rep.kernel_dimensions[1..].iter().all(|&d| d == 0));
            }
        }
    }

    #[test]
    fn weight_two_rejected_below_top() {
        let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
        let y = g.basic(2);
        let rep = g.centralizer_structure_check(0, &[y]).unwrap();
        assert_eq!(rep.members, 0);
    }
}
