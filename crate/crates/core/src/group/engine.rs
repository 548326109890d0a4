use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GroupElement, GroupWord};
use crate::linalg::QMatrix;
use crate::magnus::{Construction, HallBasis, HallIndex, TruncatedSeries, WordLayout};
use crate::ring::{binom_table, Ring, RingElement};
use crate::{Error, Result};

/// Linear solve recovering weight-`i` coordinates from the degree-`i`
/// component of a series: `a_j = (Σ_t v[pivots[t]] · num[j][t]) / den`.
#[derive(Debug)]
struct WeightSolver {
    pivots: Vec<usize>,
    num: Vec<Vec<BigInt>>,
    den: BigInt,
}

/// Ring-independent data for the Magnus representation of `N_{r,c}`:
/// the powers `(û − 1)^k` of every basic commutator image `û`, and one
/// coordinate solver per weight. Build once per `(r, c)` and share.
#[derive(Debug)]
pub struct MagnusTables {
    basis: Arc<HallBasis>,
    layout: WordLayout,
    // augmentation powers per basis element; entry k - 1 holds (û - 1)^k as
    // a sparse list of (word index, coefficient)
    aug_powers: Vec<Vec<Vec<(usize, BigInt)>>>,
    solvers: Vec<WeightSolver>,
}

impl MagnusTables {
    pub fn new(r: usize, c: usize) -> Result<Self> {
        Self::from_basis(Arc::new(HallBasis::new(r, c)?))
    }

    pub fn from_basis(basis: Arc<HallBasis>) -> Result<Self> {
        let (r, c) = (basis.rank(), basis.class());
        let layout = WordLayout { r, c };
        let z = Ring::Integers;

        let mut images: Vec<TruncatedSeries> = Vec::with_capacity(basis.len());
        for e in basis.iter() {
            let image = match e.construction {
                Construction::Generator(g) => {
                    TruncatedSeries::one(r, c, &z).add(&TruncatedSeries::generator(r, c, &z, g)?)?
                }
                Construction::Bracket(a, b) => {
                    let (ia, ib) = (&images[a], &images[b]);
                    ia.group_like_inverse()?
                        .mul(&ib.group_like_inverse()?)?
                        .mul(ia)?
                        .mul(ib)?
                }
            };
            images.push(image);
        }

        let aug_powers = images
            .iter()
            .map(|image| {
                let mut aug = image.clone();
                aug = aug.sub(&TruncatedSeries::one(r, c, &z)).expect("same shape");
                let mut out = Vec::new();
                let mut power = aug.clone();
                for k in 1..=c {
                    if k > 1 {
                        power = power.mul_unchecked(&aug);
                    }
                    let sparse: Vec<(usize, BigInt)> = power
                        .dense()
                        .iter()
                        .enumerate()
                        .filter_map(|(i, x)| {
                            let n = x.as_integer().expect("integer table");
                            (!n.is_zero()).then(|| (i, n.clone()))
                        })
                        .collect();
                    if sparse.is_empty() {
                        break;
                    }
                    out.push(sparse);
                }
                out
            })
            .collect();

        let mut solvers = Vec::with_capacity(c);
        for weight in 1..=c {
            let range = basis.weight_range(weight);
            let width = layout.count(weight);
            let rows: Vec<Vec<BigInt>> = range
                .clone()
                .map(|p| {
                    basis
                        .lie_element(p, &z)
                        .homogeneous(weight)
                        .iter()
                        .map(|x| x.as_integer().expect("integer").clone())
                        .collect()
                })
                .collect();
            let m = QMatrix::from_int_rows(&rows, width);
            let (_, pivot_cols) = m.rref();
            // independence of the Hall Lie elements of one weight
            assert_eq!(
                pivot_cols.len(),
                range.len(),
                "Hall Lie elements of weight {} are dependent",
                weight
            );
            let n = range.len();
            let mut square = QMatrix::zeros(n, n);
            for j in 0..n {
                for (t, &col) in pivot_cols.iter().enumerate() {
                    square[(t, j)] = m[(j, col)].clone();
                }
            }
            // square[t][j] = L_j[w_t]; we need a = square^{-1} v
            let inv = square.inverse().expect("pivot block is invertible");
            let (num, den) = inv.integer_form();
            solvers.push(WeightSolver {
                pivots: pivot_cols.iter().map(|&col| layout.offset(weight) + col).collect(),
                num,
                den,
            });
        }

        Ok(MagnusTables {
            basis,
            layout,
            aug_powers,
            solvers,
        })
    }

    pub fn basis(&self) -> &Arc<HallBasis> {
        &self.basis
    }

    /// The Magnus image of `u_p^a` over `ring`.
    fn power_series(&self, ring: &Ring, position: usize, a: &RingElement) -> TruncatedSeries {
        let powers = &self.aug_powers[position];
        let binoms = binom_table(a, powers.len() as u32).expect("supported rings are binomial");
        let mut coeffs = vec![ring.zero(); self.layout.total()];
        coeffs[0] = ring.one();
        for (k, sparse) in powers.iter().enumerate() {
            let b = &binoms[k + 1];
            if b.is_zero() {
                continue;
            }
            for (i, n) in sparse {
                coeffs[*i].add_mul_int(b, n);
            }
        }
        TruncatedSeries::from_dense(self.layout.r, self.layout.c, ring, coeffs)
    }
}

/// `N_{r,c}(R)` in Hall coordinates.
///
/// Products, powers and inverses are computed in the Magnus algebra and
/// read back by peeling off one weight at a time.
#[derive(Clone, Debug)]
pub struct NilpotentGroup {
    tables: Arc<MagnusTables>,
    ring: Ring,
}

impl NilpotentGroup {
    pub fn new(r: usize, c: usize, ring: Ring) -> Result<Self> {
        Ok(NilpotentGroup {
            tables: Arc::new(MagnusTables::new(r, c)?),
            ring,
        })
    }

    /// Reuses precomputed tables, possibly built for another ring.
    pub fn with_tables(tables: Arc<MagnusTables>, ring: Ring) -> Self {
        NilpotentGroup { tables, ring }
    }

    pub fn tables(&self) -> &Arc<MagnusTables> {
        &self.tables
    }

    pub fn basis(&self) -> &HallBasis {
        &self.tables.basis
    }

    pub fn rank(&self) -> usize {
        self.tables.layout.r
    }

    pub fn class(&self) -> usize {
        self.tables.layout.c
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of Hall coordinates, `N = Σ n_i`.
    pub fn dimension(&self) -> usize {
        self.tables.basis.len()
    }

    /// Builds an element from coordinates in sequence order.
    pub fn element(&self, coords: Vec<RingElement>) -> Result<GroupElement> {
        if coords.len() != self.dimension() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "expected {} coordinates for N_({},{}), found {}",
                self.dimension(),
                self.rank(),
                self.class(),
                coords.len()
            )));
        }
        if coords.iter().any(|x| !self.ring.contains(x)) {
            return Err(Error::MixedRings);
        }
        Ok(self.element_unchecked(coords))
    }

    pub fn from_i64s(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&x| self.ring.from_i64(x)).collect())
    }

    pub(crate) fn element_unchecked(&self, coords: Vec<RingElement>) -> GroupElement {
        GroupElement {
            r: self.rank(),
            c: self.class(),
            ring: self.ring.clone(),
            coords,
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.element_unchecked(vec![self.ring.zero(); self.dimension()])
    }

    /// `u_p^a` for the basic commutator at `position`.
    pub fn basic_power(&self, position: usize, a: RingElement) -> Result<GroupElement> {
        if position >= self.dimension() {
            return Err(Error::InvalidIndex(alloc::format!("position {}", position)));
        }
        let mut coords = vec![self.ring.zero(); self.dimension()];
        coords[position] = a;
        self.element(coords)
    }

    /// The basic commutator `u_p`.
    pub fn basic(&self, position: usize) -> GroupElement {
        self.basic_power(position, self.ring.one()).expect("position in range")
    }

    /// The `g`-th free generator `u_{1,g+1}`.
    pub fn generator(&self, g: usize) -> GroupElement {
        assert!(g < self.rank(), "generator index");
        self.basic(g)
    }

    pub fn position(&self, index: HallIndex) -> Result<usize> {
        self.basis()
            .position(index)
            .ok_or_else(|| Error::InvalidIndex(alloc::format!("{}", index)))
    }

    pub(crate) fn check(&self, g: &GroupElement) -> Result<()> {
        if g.r != self.rank() || g.c != self.class() || g.coords.len() != self.dimension() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "element of N_({},{}) used in N_({},{})",
                g.r,
                g.c,
                self.rank(),
                self.class()
            )));
        }
        if g.ring != self.ring {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    /// The Magnus image `Π û_p^{a_p}` of `g`.
    pub fn to_series(&self, g: &GroupElement) -> Result<TruncatedSeries> {
        self.check(g)?;
        Ok(self.series_of(&g.coords))
    }

    fn series_of(&self, coords: &[RingElement]) -> TruncatedSeries {
        let mut acc: Option<TruncatedSeries> = None;
        for (p, a) in coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let factor = self.tables.power_series(&self.ring, p, a);
            acc = Some(match acc {
                None => factor,
                Some(s) => s.mul_unchecked(&factor),
            });
        }
        acc.unwrap_or_else(|| TruncatedSeries::one(self.rank(), self.class(), &self.ring))
    }

    /// Reads Hall coordinates off a group-like series.
    ///
    /// Fails with [`Error::NotInGroup`] when the series is not the image of
    /// any element.
    pub fn from_series(&self, series: &TruncatedSeries) -> Result<GroupElement> {
        if series.rank() != self.rank() || series.class() != self.class() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "series over ({}, {})",
                series.rank(),
                series.class()
            )));
        }
        if series.ring() != &self.ring {
            return Err(Error::MixedRings);
        }
        if !series.is_group_like() {
            return Err(Error::NotGroupLike);
        }
        let mut rest = series.clone();
        let mut coords = vec![self.ring.zero(); self.dimension()];
        for weight in 1..=self.class() {
            let solver = &self.tables.solvers[weight - 1];
            let range = self.basis().weight_range(weight);
            let dense = rest.dense();
            for (j, p) in range.clone().enumerate() {
                let mut acc = self.ring.zero();
                for (t, &w) in solver.pivots.iter().enumerate() {
                    acc.add_mul_int(&dense[w], &solver.num[j][t]);
                }
                coords[p] = if solver.den.is_one() {
                    acc
                } else {
                    acc.div_int_exact(&solver.den).map_err(|_| Error::NotInGroup)?
                };
            }
            for p in range {
                if !coords[p].is_zero() {
                    let undo = self.tables.power_series(&self.ring, p, &-&coords[p]);
                    rest = undo.mul_unchecked(&rest);
                }
            }
        }
        if !rest.is_one() {
            return Err(Error::NotInGroup);
        }
        Ok(self.element_unchecked(coords))
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        if g.is_identity() {
            return Ok(h.clone());
        }
        if h.is_identity() {
            return Ok(g.clone());
        }
        let s = self.series_of(&g.coords).mul_unchecked(&self.series_of(&h.coords));
        self.from_series(&s)
    }

    /// Product of any number of elements, left to right.
    pub fn product<'a, I>(&self, items: I) -> Result<GroupElement>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut acc = TruncatedSeries::one(self.rank(), self.class(), &self.ring);
        for g in items {
            self.check(g)?;
            acc = acc.mul_unchecked(&self.series_of(&g.coords));
        }
        self.from_series(&acc)
    }

    /// `g^a` for any `a` in the ring.
    pub fn pow(&self, g: &GroupElement, a: &RingElement) -> Result<GroupElement> {
        self.check(g)?;
        if !self.ring.contains(a) {
            return Err(Error::MixedRings);
        }
        if a.is_zero() || g.is_identity() {
            return Ok(self.identity());
        }
        let s = self.series_of(&g.coords).pow(a)?;
        self.from_series(&s)
    }

    pub fn pow_i64(&self, g: &GroupElement, a: i64) -> Result<GroupElement> {
        self.pow(g, &self.ring.from_i64(a))
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        // (u_1^{a_1} ⋯ u_N^{a_N})^{-1} = u_N^{-a_N} ⋯ u_1^{-a_1}
        let mut acc = TruncatedSeries::one(self.rank(), self.class(), &self.ring);
        for (p, a) in g.coords.iter().enumerate().rev() {
            if !a.is_zero() {
                acc = acc.mul_unchecked(&self.tables.power_series(&self.ring, p, &-a));
            }
        }
        self.from_series(&acc)
    }

    /// `[g, h] = g^{-1} h^{-1} g h`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let sg = self.series_of(&g.coords);
        let sh = self.series_of(&h.coords);
        let s = sg
            .group_like_inverse()?
            .mul_unchecked(&sh.group_like_inverse()?)
            .mul_unchecked(&sg)
            .mul_unchecked(&sh);
        self.from_series(&s)
    }

    /// `h^{-1} g h`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let sh = self.series_of(&h.coords);
        let s = sh
            .group_like_inverse()?
            .mul_unchecked(&self.series_of(&g.coords))
            .mul_unchecked(&sh);
        self.from_series(&s)
    }

    /// Evaluates a word by multiplying Magnus images, independently of the
    /// collection process.
    pub fn evaluate_word(&self, word: &GroupWord) -> Result<GroupElement> {
        let mut acc = TruncatedSeries::one(self.rank(), self.class(), &self.ring);
        for letter in word.letters() {
            let p = self.position(letter.index)?;
            if !self.ring.contains(&letter.exponent) {
                return Err(Error::MixedRings);
            }
            acc = acc.mul_unchecked(&self.tables.power_series(&self.ring, p, &letter.exponent));
        }
        self.from_series(&acc)
    }

    pub fn commutes(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        Ok(self.commutator(g, h)?.is_identity())
    }
}
