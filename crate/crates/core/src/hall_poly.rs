//! Canonical product and power polynomials, obtained by running the group
//! engine over a polynomial ring with symbolic coordinates.
//!
//! For `g = u^x`, `h = u^y` and an exponent `y`, the engine returns
//! `gh = u^{p(x, y)}` and `g^y = u^{q(x, y)}` with `p`, `q` exact
//! polynomials over `Q`. They are integer-valued, which
//! [`to_binomial_basis`] makes explicit.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::group::{GroupElement, MagnusTables, NilpotentGroup};
use crate::magnus::HallBasis;
use crate::ring::{eval_poly, BinomialForm, Poly, Ring, RingElement, Vars};
use crate::{Error, Result, DESK_SCALE};

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

fn coordinate_names(basis: &HallBasis, prefix: &str) -> Vec<String> {
    basis
        .iter()
        .map(|e| alloc::format!("{}{}_{}", prefix, e.index.weight, e.index.j))
        .collect()
}

fn unwrap_poly(x: RingElement) -> Poly {
    match x {
        RingElement::Poly(p) => p,
        _ => unreachable!("symbolic engine returns polynomials"),
    }
}

/// The polynomials `p_ij(x, y)` and `q_ij(x, y)` of a Hall basic sequence.
#[derive(Clone, Debug)]
pub struct CanonicalPolynomials {
    basis: Arc<HallBasis>,
    product_ring: Ring,
    power_ring: Ring,
    p: Vec<Poly>,
    q: Vec<Poly>,
}

/// Derives `p` and `q` for `N_{r,c}` by symbolic execution.
pub fn derive_hall_polynomials(r: usize, c: usize) -> Result<CanonicalPolynomials> {
    check_scale(r, c)?;
    derive_hall_polynomials_with(Arc::new(MagnusTables::new(r, c)?))
}

/// As [`derive_hall_polynomials`], reusing precomputed tables.
pub fn derive_hall_polynomials_with(tables: Arc<MagnusTables>) -> Result<CanonicalPolynomials> {
    let basis = tables.basis().clone();
    check_scale(basis.rank(), basis.class())?;
    let xs = coordinate_names(&basis, "x");
    let ys = coordinate_names(&basis, "y");
    let n = basis.len();

    let product_ring = Ring::polynomial(xs.iter().chain(&ys).cloned())?;
    let group = NilpotentGroup::with_tables(tables.clone(), product_ring.clone());
    let vars =
        |offset: usize| -> Result<Vec<RingElement>> { (0..n).map(|i| product_ring.variable(offset + i)).collect() };
    let g = group.element(vars(0)?)?;
    let h = group.element(vars(n)?)?;
    let p = group.mul(&g, &h)?.into_coords().into_iter().map(unwrap_poly).collect();

    let power_ring = Ring::polynomial(xs.iter().cloned().chain(["y".to_string()]))?;
    let group = NilpotentGroup::with_tables(tables, power_ring.clone());
    let g = group.element((0..n).map(|i| power_ring.variable(i)).collect::<Result<_>>()?)?;
    let exponent = power_ring.variable(n)?;
    let q = group
        .pow(&g, &exponent)?
        .into_coords()
        .into_iter()
        .map(unwrap_poly)
        .collect();

    Ok(CanonicalPolynomials {
        basis,
        product_ring,
        power_ring,
        p,
        q,
    })
}

impl CanonicalPolynomials {
    pub fn basis(&self) -> &Arc<HallBasis> {
        &self.basis
    }

    /// `p` for every position, over `Q[x.., y..]`.
    pub fn product(&self) -> &[Poly] {
        &self.p
    }

    /// `q` for every position, over `Q[x.., y]`.
    pub fn power(&self) -> &[Poly] {
        &self.q
    }

    pub fn product_ring(&self) -> &Ring {
        &self.product_ring
    }

    pub fn power_ring(&self) -> &Ring {
        &self.power_ring
    }

    fn check(&self, group: &NilpotentGroup) -> Result<()> {
        if group.rank() != self.basis.rank() || group.class() != self.basis.class() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "polynomials for N_({},{}) used with N_({},{})",
                self.basis.rank(),
                self.basis.class(),
                group.rank(),
                group.class()
            )));
        }
        Ok(())
    }

    /// `g h` computed by evaluating `p` instead of going through the
    /// Magnus algebra.
    pub fn eval_product(&self, group: &NilpotentGroup, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(group)?;
        let point: Vec<RingElement> = g.coords().iter().chain(h.coords()).cloned().collect();
        let coords = self
            .p
            .iter()
            .map(|p| eval_poly(p, &point, group.ring()))
            .collect::<Result<Vec<_>>>()?;
        group.element(coords)
    }

    /// `g^l` by evaluating `q`.
    pub fn eval_power(&self, group: &NilpotentGroup, g: &GroupElement, l: &RingElement) -> Result<GroupElement> {
        self.check(group)?;
        let mut point: Vec<RingElement> = g.coords().to_vec();
        point.push(l.clone());
        let coords = self
            .q
            .iter()
            .map(|q| eval_poly(q, &point, group.ring()))
            .collect::<Result<Vec<_>>>()?;
        group.element(coords)
    }

    /// Binomial-basis forms of `p` and of `q`.
    pub fn binomial_forms(&self) -> Result<(Vec<BinomialForm>, Vec<BinomialForm>)> {
        let p = self.p.iter().map(to_binomial_basis).collect::<Result<Vec<_>>>()?;
        let q = self.q.iter().map(to_binomial_basis).collect::<Result<Vec<_>>>()?;
        Ok((p, q))
    }

    /// Substitutes polynomial points into `p`: returns `p(a, b)` computed
    /// in the ring of the arguments. Used for polynomial-level identities
    /// such as `p(p(x, y), z) = p(x, p(y, z))`.
    pub fn compose_product(&self, a: &[RingElement], b: &[RingElement]) -> Result<Vec<RingElement>> {
        let point: Vec<RingElement> = a.iter().chain(b).cloned().collect();
        let ring = point.first().map(RingElement::ring).ok_or(Error::ArityMismatch {
            expected: 2 * self.basis.len(),
            found: 0,
        })?;
        self.p.iter().map(|p| eval_poly(p, &point, &ring)).collect()
    }
}

/// `x^e = Σ_k d_k binom(x, k)` where `d_k` is the `k`-th forward difference
/// of `t ↦ t^e` at zero.
fn power_in_binomial_basis(e: u32) -> Vec<BigInt> {
    let mut values: Vec<BigInt> = (0..=e).map(|t| num_traits::pow(BigInt::from(t), e as usize)).collect();
    let mut out = Vec::with_capacity(e as usize + 1);
    for _ in 0..=e {
        out.push(values[0].clone());
        values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// Rewrites a polynomial over `Q` in the basis of binomial products
/// `Π binom(v_i, r_i)`. Fails when a coefficient is not an integer, that
/// is, when the polynomial is not integer-valued.
pub fn to_binomial_basis(poly: &Poly) -> Result<BinomialForm> {
    let n = poly.nvars();
    let mut cache: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for (m, c) in poly.terms() {
        // expand the product of univariate expansions, one variable at a time
        let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(vec![0; n], c.clone())];
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let row = cache.entry(e).or_insert_with(|| power_in_binomial_basis(e)).clone();
            let mut next = Vec::with_capacity(partial.len() * row.len());
            for (degrees, coeff) in &partial {
                for (k, d) in row.iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    let mut deg = degrees.clone();
                    deg[i] = k as u32;
                    next.push((deg, coeff * BigRational::from_integer(d.clone())));
                }
            }
            partial = next;
        }
        for (deg, coeff) in partial {
            *acc.entry(deg).or_insert_with(BigRational::zero) += coeff;
        }
    }
    let mut form = BinomialForm::zero(n);
    for (deg, coeff) in acc {
        if coeff.is_zero() {
            continue;
        }
        if !coeff.is_integer() {
            return Err(Error::NonIntegerCoefficient(coeff.to_string()));
        }
        form.add_term(deg, coeff.to_integer())?;
    }
    Ok(form)
}

/// Inverse of [`to_binomial_basis`] over the given variables.
pub fn from_binomial_basis(form: &BinomialForm, vars: Vars) -> Result<Poly> {
    form.to_poly(vars)
}

/// Commutators of symbolic powers of basic commutators:
/// `[u_p^x, u_q^y] = u^{t^{pq}(x, y)}` with `t^{pq}` a vector of
/// polynomials in `Q[x, y]`. Pairs whose weights add up to more than `c`
/// commute and are not stored.
#[derive(Clone, Debug)]
pub struct StructurePolynomials {
    basis: Arc<HallBasis>,
    ring: Ring,
    table: BTreeMap<(usize, usize), Vec<Poly>>,
}

pub fn derive_structure_polys(r: usize, c: usize) -> Result<StructurePolynomials> {
    check_scale(r, c)?;
    derive_structure_polys_with(Arc::new(MagnusTables::new(r, c)?))
}

pub fn derive_structure_polys_with(tables: Arc<MagnusTables>) -> Result<StructurePolynomials> {
    let basis = tables.basis().clone();
    check_scale(basis.rank(), basis.class())?;
    let ring = Ring::polynomial(["x", "y"])?;
    let group = NilpotentGroup::with_tables(tables, ring.clone());
    let (x, y) = (ring.variable(0)?, ring.variable(1)?);
    let mut table = BTreeMap::new();
    let n = basis.len();
    for p in 0..n {
        for q in 0..n {
            if p == q || basis.weight_of(p) + basis.weight_of(q) > basis.class() {
                continue;
            }
            let gp = group.basic_power(p, x.clone())?;
            let gq = group.basic_power(q, y.clone())?;
            let t = group.commutator(&gp, &gq)?;
            table.insert((p, q), t.into_coords().into_iter().map(unwrap_poly).collect());
        }
    }
    Ok(StructurePolynomials { basis, ring, table })
}

impl StructurePolynomials {
    pub fn basis(&self) -> &Arc<HallBasis> {
        &self.basis
    }

    /// The ring `Q[x, y]` of the stored polynomials.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `t^{pq}`, or `None` when `[u_p^x, u_q^y]` is trivial for all `x, y`.
    pub fn get(&self, p: usize, q: usize) -> Option<&[Poly]> {
        self.table.get(&(p, q)).map(Vec::as_slice)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Poly>)> {
        self.table.iter()
    }

    /// Weight of the first nonzero component of `t^{pq}`, `c + 1` if none.
    pub fn tail_start(&self, p: usize, q: usize) -> usize {
        let c = self.basis.class();
        self.get(p, q)
            .and_then(|t| t.iter().position(|x| !x.is_zero()))
            .map(|pos| self.basis.weight_of(pos))
            .unwrap_or(c + 1)
    }

    /// `t^{pq}(a, b)` evaluated in `ring`.
    pub fn eval(&self, p: usize, q: usize, a: &RingElement, b: &RingElement, ring: &Ring) -> Result<Vec<RingElement>> {
        match self.get(p, q) {
            None => Ok(vec![ring.zero(); self.basis.len()]),
            Some(t) => {
                let point = [a.clone(), b.clone()];
                t.iter().map(|poly| eval_poly(poly, &point, ring)).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn binomial_basis_of_square() {
        let ring = Ring::polynomial(["x"]).unwrap();
        let x = ring.variable(0).unwrap();
        let sq = unwrap_poly(&x * &x);
        let form = to_binomial_basis(&sq).unwrap();
        let expected = BinomialForm::from_terms(1, [(vec![2], BigInt::from(2)), (vec![1], BigInt::one())]).unwrap();
        assert_eq!(form, expected);
    }

    #[test]
    fn binomial_basis_of_sum() {
        let ring = Ring::polynomial(["x", "y"]).unwrap();
        let s = unwrap_poly(&ring.variable(0).unwrap() + &ring.variable(1).unwrap());
        let form = to_binomial_basis(&s).unwrap();
        let expected = BinomialForm::from_terms(2, [(vec![1, 0], BigInt::one()), (vec![0, 1], BigInt::one())]).unwrap();
        assert_eq!(form, expected);
    }

    #[test]
    fn non_integer_valued_is_rejected() {
        let ring = Ring::polynomial(["x"]).unwrap();
        let half_x = unwrap_poly(
            ring.variable(0)
                .unwrap()
                .scale(&BigRational::new(1.into(), 2.into()))
                .unwrap(),
        );
        assert!(matches!(
            to_binomial_basis(&half_x),
            Err(Error::NonIntegerCoefficient(_))
        ));
    }

    #[test]
    fn power_differences() {
        assert_eq!(power_in_binomial_basis(0), [BigInt::one()]);
        // x^3 = 6 binom(x,3) + 6 binom(x,2) + binom(x,1)
        let v: Vec<i64> = power_in_binomial_basis(3)
            .iter()
            .map(|b| b.try_into().unwrap())
            .collect();
        assert_eq!(v, [0, 1, 6, 6]);
    }

    #[test]
    fn scale_limit() {
        assert!(matches!(derive_hall_polynomials(4, 4), Err(Error::ScaleLimit { .. })));
        assert!(matches!(derive_structure_polys(1, 3), Err(Error::BadRank(1))));
    }
}
