//! Lie rings attached to `N_{r,c}`: the Lazard ring `⊕ Γ_i / Γ_{i+1}`, the
//! free nilpotent Lie ring, the bilinear map `f: 𝔤/Z(𝔤) × 𝔤/Z(𝔤) → 𝔤²`
//! and the linear system `P(f)` of pairs `(φ_1, φ_0)` with
//! `f(φ_1 x, y) = f(x, φ_1 y) = φ_0 f(x, y)`.
//!
//! All linear algebra is exact over `Q`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::group::{MagnusTables, NilpotentGroup};
use crate::linalg::QMatrix;
use crate::magnus::HallBasis;
use crate::ring::{Ring, RingElement};
use crate::{Error, Result, DESK_SCALE};

type Vector = Vec<BigRational>;

fn check_scale(r: usize, c: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::BadRank(r));
    }
    if c < 1 {
        return Err(Error::BadClass(c));
    }
    if r + c > DESK_SCALE {
        return Err(Error::ScaleLimit {
            r,
            c,
            limit: DESK_SCALE,
        });
    }
    Ok(())
}

fn to_q(x: &RingElement) -> Result<BigRational> {
    x.to_rational().ok_or(Error::MixedRings)
}

/// A graded Lie ring with basis `e_0, …, e_{N−1}` ordered by weight, given
/// by its structure constants `[e_a, e_b] = Σ_s C[a][b][s] e_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieRing {
    rank: usize,
    dims: Vec<usize>,
    weights: Vec<usize>,
    constants: Vec<Vec<Vector>>,
}

impl GradedLieRing {
    /// Builds a ring from explicit constants; `dims[i]` is the dimension of
    /// the weight-`(i+1)` component.
    pub fn from_constants(rank: usize, dims: Vec<usize>, constants: Vec<Vec<Vector>>) -> Result<Self> {
        let n: usize = dims.iter().sum();
        let ok = constants.len() == n
            && constants
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !ok {
            return Err(Error::ShapeMismatch(alloc::format!(
                "structure constants for dimension {}",
                n
            )));
        }
        let weights = dims
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| core::iter::repeat(i + 1).take(d))
            .collect();
        Ok(GradedLieRing {
            rank,
            dims,
            weights,
            constants,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.dims.len()
    }

    /// `(n_1, …, n_c)`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_of(&self, a: usize) -> usize {
        self.weights[a]
    }

    pub fn weight_range(&self, i: usize) -> core::ops::Range<usize> {
        let start: usize = self.dims[..i - 1].iter().sum();
        start..start + self.dims[i - 1]
    }

    /// `[e_a, e_b]` in coordinates.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[BigRational] {
        &self.constants[a][b]
    }

    pub fn bracket(&self, x: &[BigRational], y: &[BigRational]) -> Vector {
        let n = self.dimension();
        let mut out = vec![BigRational::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xa * yb;
                for (o, s) in out.iter_mut().zip(&self.constants[a][b]) {
                    if !s.is_zero() {
                        *o += &coeff * s;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, a: usize) -> Vector {
        let mut v = vec![BigRational::zero(); self.dimension()];
        v[a] = BigRational::one();
        v
    }

    /// `[e_a, e_a] = 0` and `[e_a, e_b] = −[e_b, e_a]` for all basis pairs.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|a| {
            self.constants[a][a].iter().all(Zero::is_zero)
                && (0..n).all(|b| {
                    self.constants[a][b]
                        .iter()
                        .zip(&self.constants[b][a])
                        .all(|(x, y)| (x + y).is_zero())
                })
        })
    }

    /// The Jacobi identity on all basis triples.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dimension();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket(&ea, &self.bracket(&eb, &ec));
                    let t2 = self.bracket(&eb, &self.bracket(&ec, &ea));
                    let t3 = self.bracket(&ec, &self.bracket(&ea, &eb));
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A basis of the centre `{x : [x, e_b] = 0 for all b}`.
    pub fn center(&self) -> Vec<Vector> {
        let n = self.dimension();
        let mut m = QMatrix::zeros(0, n);
        for b in 0..n {
            for s in 0..n {
                m.push_row((0..n).map(|a| self.constants[a][b][s].clone()).collect());
            }
        }
        m.nullspace()
    }

    /// The centre is exactly the top-weight component.
    pub fn center_is_top_block(&self) -> bool {
        let center = self.center();
        let top = self.weight_range(self.class());
        center.len() == top.len()
            && center
                .iter()
                .all(|v| v.iter().enumerate().all(|(a, x)| x.is_zero() || top.contains(&a)))
    }
}

/// `Lie(N_{r,c}(R)) = ⊕ Γ_i/Γ_{i+1}` with the bracket induced by group
/// commutators; basis elements are the images of the basic commutators.
pub fn lazard_lie_ring(r: usize, c: usize, ring: &Ring) -> Result<GradedLieRing> {
    check_scale(r, c)?;
    lazard_lie_ring_with(Arc::new(MagnusTables::new(r, c)?), ring)
}

pub fn lazard_lie_ring_with(tables: Arc<MagnusTables>, ring: &Ring) -> Result<GradedLieRing> {
    let basis = tables.basis().clone();
    check_scale(basis.rank(), basis.class())?;
    if matches!(ring, Ring::Polynomial(_)) {
        return Err(Error::MixedRings);
    }
    let group = NilpotentGroup::with_tables(tables, ring.clone());
    let n = basis.len();
    let c = basis.class();
    let mut constants = vec![vec![vec![BigRational::zero(); n]; n]; n];
    for (a, row) in constants.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let w = basis.weight_of(a) + basis.weight_of(b);
            if w > c {
                continue;
            }
            let comm = group.commutator(&group.basic(a), &group.basic(b))?;
            for (s, x) in basis.weight_range(w).zip(group.weight_block(&comm, w)) {
                slot[s] = to_q(x)?;
            }
        }
    }
    GradedLieRing::from_constants(basis.rank(), basis.counts(), constants)
}

/// The free nilpotent Lie ring `𝔫_{r,c}` in its Hall basis, computed from
/// Lie elements in the free associative algebra.
pub fn free_nilpotent_lie(r: usize, c: usize) -> Result<GradedLieRing> {
    check_scale(r, c)?;
    free_nilpotent_lie_of(&HallBasis::new(r, c)?)
}

pub fn free_nilpotent_lie_of(basis: &HallBasis) -> Result<GradedLieRing> {
    let q = Ring::Rationals;
    let c = basis.class();
    let n = basis.len();
    let lie: Vec<_> = (0..n).map(|p| basis.lie_element(p, &q)).collect();
    // columns: Hall Lie elements of one weight in the word basis of that degree
    let mut systems = Vec::with_capacity(c + 1);
    systems.push(QMatrix::zeros(0, 0));
    for w in 1..=c {
        let range = basis.weight_range(w);
        let words = lie[range.start].homogeneous(w).len();
        let mut m = QMatrix::zeros(words, range.len());
        for (col, p) in range.enumerate() {
            for (row, x) in lie[p].homogeneous(w).iter().enumerate() {
                m[(row, col)] = to_q(x)?;
            }
        }
        systems.push(m);
    }

    let mut constants = vec![vec![vec![BigRational::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            let w = basis.weight_of(a) + basis.weight_of(b);
            if w > c {
                continue;
            }
            let br = lie[a].bracket(&lie[b])?;
            let rhs = br.homogeneous(w).iter().map(to_q).collect::<Result<Vec<_>>>()?;
            let coeffs = systems[w]
                .solve(&rhs)
                .ok_or_else(|| Error::ShapeMismatch("bracket outside the Hall span".into()))?;
            for (s, x) in basis.weight_range(w).zip(coeffs) {
                constants[a][b][s] = x;
            }
        }
    }
    GradedLieRing::from_constants(basis.rank(), basis.counts(), constants)
}

fn apply_signs(l: &GradedLieRing, sigma: &[i32]) -> Vec<Vec<Vector>> {
    let n = l.dimension();
    let mut out = l.constants.clone();
    for a in 0..n {
        for b in 0..n {
            for s in 0..n {
                if sigma[a] * sigma[b] * sigma[s] < 0 {
                    out[a][b][s] = -out[a][b][s].clone();
                }
            }
        }
    }
    out
}

// Given signs on the generators, each further basis element has its sign
// forced by the first nonzero constant producing it.
fn forced_signs(a: &GradedLieRing, b: &GradedLieRing, generator_signs: &[i32]) -> Option<Vec<i32>> {
    let n = a.dimension();
    let mut sigma = vec![1i32; n];
    sigma[..generator_signs.len()].copy_from_slice(generator_signs);
    for t in generator_signs.len()..n {
        let source = (0..t)
            .flat_map(|x| (0..t).map(move |y| (x, y)))
            .find(|&(x, y)| !a.constants[x][y][t].is_zero());
        if let Some((x, y)) = source {
            let (ca, cb) = (&a.constants[x][y][t], &b.constants[x][y][t]);
            sigma[t] = if ca == cb {
                sigma[x] * sigma[y]
            } else if *ca == -cb.clone() {
                -sigma[x] * sigma[y]
            } else {
                return None;
            };
        }
    }
    Some(sigma)
}

/// Equal structure constants in matching bases, allowing a diagonal change
/// of basis `e_a ↦ ±e_a`.
pub fn compare_graded_lie(a: &GradedLieRing, b: &GradedLieRing) -> bool {
    if a.dims != b.dims {
        return false;
    }
    if a.constants == b.constants {
        return true;
    }
    let r = a.dims[0];
    if r > 16 {
        return false;
    }
    (0u32..(1 << r)).any(|mask| {
        let signs: Vec<i32> = (0..r).map(|g| if mask >> g & 1 == 1 { -1 } else { 1 }).collect();
        forced_signs(a, b, &signs).is_some_and(|sigma| apply_signs(a, &sigma) == b.constants)
    })
}

/// `f(x, y) = [x, y]` on `𝔤/Z(𝔤) × 𝔤/Z(𝔤) → 𝔤²`, with `Z(𝔤)` the top
/// weight and `𝔤²` the weights `≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMapData {
    rank: usize,
    class: usize,
    domain: usize,
    codomain: usize,
    tensor: Vec<Vec<Vector>>,
}

pub fn bilinear_from_lie(l: &GradedLieRing) -> Result<BilinearMapData> {
    let c = l.class();
    if c < 2 {
        return Err(Error::BadClass(c));
    }
    let domain = l.weight_range(c).start;
    let shift = l.dims[0];
    let codomain = l.dimension() - shift;
    let tensor = (0..domain)
        .map(|a| (0..domain).map(|b| l.constants[a][b][shift..].to_vec()).collect())
        .collect();
    Ok(BilinearMapData {
        rank: l.rank,
        class: c,
        domain,
        codomain,
        tensor,
    })
}

impl BilinearMapData {
    /// Builds a map from its tensor `T[a][b] = f(e_a, e_b)`.
    pub fn from_tensor(tensor: Vec<Vec<Vector>>, codomain: usize) -> Result<Self> {
        let domain = tensor.len();
        if tensor
            .iter()
            .any(|row| row.len() != domain || row.iter().any(|v| v.len() != codomain))
        {
            return Err(Error::ShapeMismatch("bilinear tensor".into()));
        }
        Ok(BilinearMapData {
            rank: 0,
            class: 0,
            domain,
            codomain,
            tensor,
        })
    }

    pub fn domain_dimension(&self) -> usize {
        self.domain
    }

    pub fn codomain_dimension(&self) -> usize {
        self.codomain
    }

    pub fn value(&self, a: usize, b: usize) -> &[BigRational] {
        &self.tensor[a][b]
    }

    pub fn eval(&self, x: &[BigRational], y: &[BigRational]) -> Vector {
        let mut out = vec![BigRational::zero(); self.codomain];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let k = xa * yb;
                for (o, s) in out.iter_mut().zip(&self.tensor[a][b]) {
                    *o += &k * s;
                }
            }
        }
        out
    }

    /// The values `f(e_a, e_b)` span the codomain.
    pub fn is_full(&self) -> bool {
        let mut m = QMatrix::zeros(0, self.codomain);
        for row in &self.tensor {
            for v in row {
                m.push_row(v.clone());
            }
        }
        m.rank() == self.codomain
    }

    // rows (e, s) for e in `others`, columns a: the coefficients of
    // f(e_a, e)_s, or of f(e, e_a)_s when `left` is false
    fn restriction(&self, others: &[usize], left: bool) -> QMatrix {
        let mut m = QMatrix::zeros(0, self.domain);
        for &e in others {
            for s in 0..self.codomain {
                m.push_row(
                    (0..self.domain)
                        .map(|a| {
                            let v = if left { &self.tensor[a][e] } else { &self.tensor[e][a] };
                            v[s].clone()
                        })
                        .collect(),
                );
            }
        }
        m
    }

    /// `f(x, E) = 0` and `f(E, x) = 0` each force `x = 0`, for `E` given
    /// by domain basis indices.
    pub fn is_complete_system(&self, e: &[usize]) -> Result<bool> {
        if let Some(&bad) = e.iter().find(|&&i| i >= self.domain) {
            return Err(Error::InvalidIndex(alloc::format!("domain index {}", bad)));
        }
        Ok(self.restriction(e, true).nullspace().is_empty() && self.restriction(e, false).nullspace().is_empty())
    }

    pub fn is_nondegenerate(&self) -> bool {
        let all: Vec<usize> = (0..self.domain).collect();
        self.is_complete_system(&all).expect("indices in range")
    }
}

pub fn complete_system_check(b: &BilinearMapData, e: &[usize]) -> Result<bool> {
    b.is_complete_system(e)
}

/// A pair `(φ_1, φ_0)` of endomorphisms of the domain and codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoPair {
    pub phi1: QMatrix,
    pub phi0: QMatrix,
}

fn scalar_of(m: &QMatrix) -> Option<BigRational> {
    let n = m.nrows();
    let alpha = if n == 0 { BigRational::zero() } else { m[(0, 0)].clone() };
    for i in 0..n {
        for j in 0..m.ncols() {
            let expect = if i == j { alpha.clone() } else { BigRational::zero() };
            if m[(i, j)] != expect {
                return None;
            }
        }
    }
    Some(alpha)
}

impl EndoPair {
    pub fn identity(b: &BilinearMapData) -> Self {
        EndoPair {
            phi1: QMatrix::identity(b.domain),
            phi0: QMatrix::identity(b.codomain),
        }
    }

    /// `α` with `φ_1 = α·id` and `φ_0 = α·id`, if there is one.
    pub fn common_scalar(&self) -> Option<BigRational> {
        let a1 = scalar_of(&self.phi1)?;
        let a0 = scalar_of(&self.phi0)?;
        (a1 == a0).then_some(a1)
    }

    /// `f(φ_1 e_a, e_b) = f(e_a, φ_1 e_b) = φ_0 f(e_a, e_b)` for all `a, b`.
    pub fn satisfies(&self, b: &BilinearMapData) -> bool {
        let col = |m: &QMatrix, j: usize| -> Vector { (0..m.nrows()).map(|i| m[(i, j)].clone()).collect() };
        let unit = |a: usize| -> Vector {
            let mut v = vec![BigRational::zero(); b.domain];
            v[a] = BigRational::one();
            v
        };
        for x in 0..b.domain {
            for y in 0..b.domain {
                let rhs = self.phi0.mul_vec(&b.tensor[x][y]);
                if b.eval(&col(&self.phi1, x), &unit(y)) != rhs || b.eval(&unit(x), &col(&self.phi1, y)) != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Largest number of unknowns `m² + n²` accepted by [`pf_solution_space`].
pub const PF_UNKNOWN_LIMIT: usize = 2 * 50 * 50;

/// A basis over `Q` of the solutions of the homogeneous system
/// `f(φ_1 e_a, e_b) = φ_0 f(e_a, e_b) = f(e_a, φ_1 e_b)`.
pub fn pf_solution_space(b: &BilinearMapData) -> Result<Vec<EndoPair>> {
    let (m, n) = (b.domain, b.codomain);
    let unknowns = m * m + n * n;
    if unknowns > PF_UNKNOWN_LIMIT {
        return Err(Error::ScaleLimit {
            r: b.rank,
            c: b.class,
            limit: DESK_SCALE,
        });
    }
    let p1 = |i: usize, j: usize| i * m + j;
    let p0 = |s: usize, t: usize| m * m + s * n + t;
    let mut sys = QMatrix::zeros(0, unknowns);
    for x in 0..m {
        for y in 0..m {
            for s in 0..n {
                let mut left = vec![BigRational::zero(); unknowns];
                let mut right = vec![BigRational::zero(); unknowns];
                for i in 0..m {
                    // f(φ_1 e_x, e_y)_s = Σ_i φ_1[i][x] f(e_i, e_y)_s
                    left[p1(i, x)] += &b.tensor[i][y][s];
                    right[p1(i, y)] += &b.tensor[x][i][s];
                }
                for t in 0..n {
                    let v = &b.tensor[x][y][t];
                    if !v.is_zero() {
                        left[p0(s, t)] -= v;
                        right[p0(s, t)] -= v;
                    }
                }
                for row in [left, right] {
                    if row.iter().any(|v| !v.is_zero()) {
                        sys.push_row(row);
                    }
                }
            }
        }
    }
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut phi1 = QMatrix::zeros(m, m);
            let mut phi0 = QMatrix::zeros(n, n);
            for i in 0..m {
                for j in 0..m {
                    phi1[(i, j)] = v[p1(i, j)].clone();
                }
            }
            for s in 0..n {
                for t in 0..n {
                    phi0[(s, t)] = v[p0(s, t)].clone();
                }
            }
            EndoPair { phi1, phi0 }
        })
        .collect())
}

/// Largest search box accepted by [`width_probe`].
pub const WIDTH_PROBE_LIMIT: u64 = 1 << 20;

/// Searches for `u = Σ_{k ≤ s} f(x_k, y_k)` with integer `x_k` in
/// `[−bound, bound]^m` and rational `y_k` found by an exact solve.
///
/// This is a heuristic: `false` only means no decomposition was found in
/// the box.
pub fn width_probe(b: &BilinearMapData, u: &[BigRational], s: usize, bound: i64) -> Result<bool> {
    if u.len() != b.codomain {
        return Err(Error::ShapeMismatch(alloc::format!("vector of length {}", u.len())));
    }
    if u.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let side = (2 * bound + 1) as u64;
    let points = side
        .checked_pow((b.domain * s) as u32)
        .filter(|&p| p <= WIDTH_PROBE_LIMIT);
    let Some(points) = points else {
        return Err(Error::ScaleLimit {
            r: b.rank,
            c: b.class,
            limit: DESK_SCALE,
        });
    };
    let m = b.domain;
    for code in 0..points {
        let mut rest = code;
        let xs: Vec<Vector> = (0..s)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        let d = (rest % side) as i64 - bound;
                        rest /= side;
                        BigRational::from_integer(BigInt::from(d))
                    })
                    .collect()
            })
            .collect();
        // columns: f(x_k, e_j) for each k, j
        let mut sys = QMatrix::zeros(b.codomain, m * s);
        for (k, x) in xs.iter().enumerate() {
            for j in 0..m {
                let mut e = vec![BigRational::zero(); m];
                e[j] = BigRational::one();
                for (row, v) in b.eval(x, &e).into_iter().enumerate() {
                    sys[(row, k * m + j)] = v;
                }
            }
        }
        if sys.solve(u).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lazard_matches_free_small() {
        for (r, c) in [(2, 2), (2, 3), (3, 2)] {
            let a = lazard_lie_ring(r, c, &Ring::Integers).unwrap();
            let b = free_nilpotent_lie(r, c).unwrap();
            assert!(compare_graded_lie(&a, &b));
            assert!(a.is_antisymmetric() && a.satisfies_jacobi());
            assert!(b.center_is_top_block());
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = free_nilpotent_lie(2, 3).unwrap();
        let b = free_nilpotent_lie(3, 2).unwrap();
        assert!(!compare_graded_lie(&a, &b));
    }

    #[test]
    fn sign_fix_recovers_flipped_basis_element() {
        let a = free_nilpotent_lie(2, 3).unwrap();
        let flipped = apply_signs(&a, &[1, 1, -1, 1, -1]);
        let b = GradedLieRing::from_constants(2, a.dims.clone(), flipped).unwrap();
        assert_ne!(a, b);
        assert!(compare_graded_lie(&a, &b));
        let mut broken = b.constants.clone();
        broken[0][1][2] = BigRational::from_integer(BigInt::from(2));
        broken[1][0][2] = BigRational::from_integer(BigInt::from(-2));
        let c = GradedLieRing::from_constants(2, a.dims.clone(), broken).unwrap();
        assert!(!compare_graded_lie(&a, &c));
    }

    #[test]
    fn bilinear_shape_2_2() {
        let f = bilinear_from_lie(&free_nilpotent_lie(2, 2).unwrap()).unwrap();
        assert_eq!((f.domain_dimension(), f.codomain_dimension()), (2, 1));
        assert!(f.is_full() && f.is_nondegenerate());
        for a in 0..2 {
            assert!(f.value(a, a).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pf_is_scalar() {
        let f = bilinear_from_lie(&free_nilpotent_lie(2, 2).unwrap()).unwrap();
        let sols = pf_solution_space(&f).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].common_scalar().is_some());
        assert!(EndoPair::identity(&f).satisfies(&f));
    }

    #[test]
    fn width_of_values() {
        let f = bilinear_from_lie(&free_nilpotent_lie(2, 2).unwrap()).unwrap();
        let u = f.value(0, 1).to_vec();
        assert!(width_probe(&f, &u, 1, 1).unwrap());
    }
}
