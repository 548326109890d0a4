//! Abelian deformations `N_{r,c}(R, f̄)` of the free nilpotent group.
//!
//! A deformation attaches to every free generator a symmetric normalized
//! 2-cocycle `f^k: R⁺ × R⁺ → R^{n_c}`. The deformed product agrees with the
//! ordinary one below weight `c` and adds `Σ_k f^k(a_1k, b_1k)` to the
//! weight-`c` coordinates. Cocycles are written additively throughout.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::{GroupElement, NilpotentGroup};
use crate::hall_poly::to_binomial_basis;
use crate::ring::{BinomialForm, Poly, Ring, RingElement};
use crate::{Error, Result};

pub type CocycleFn = dyn Fn(&RingElement, &RingElement) -> Result<Vec<RingElement>> + Send + Sync;

/// A symmetric 2-cocycle with values in `R^m`.
#[derive(Clone)]
pub enum SymmetricCocycle {
    /// One integer-valued polynomial per component, in the binomial basis.
    Polynomial(Vec<BinomialForm>),
    /// An arbitrary map, checkable only on samples.
    Table { components: usize, map: Arc<CocycleFn> },
}

impl fmt::Debug for SymmetricCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricCocycle::Polynomial(forms) => f.debug_tuple("Polynomial").field(forms).finish(),
            SymmetricCocycle::Table { components, .. } => f
                .debug_struct("Table")
                .field("components", components)
                .finish_non_exhaustive(),
        }
    }
}

impl SymmetricCocycle {
    pub fn zero(components: usize) -> Self {
        SymmetricCocycle::Polynomial(vec![BinomialForm::zero(2); components])
    }

    pub fn polynomial(forms: Vec<BinomialForm>) -> Result<Self> {
        if let Some(f) = forms.iter().find(|f| f.arity() != 2) {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: f.arity(),
            });
        }
        Ok(SymmetricCocycle::Polynomial(forms))
    }

    /// From polynomials over `Q` in two variables; they must be integer-valued.
    pub fn from_polys(polys: &[Poly]) -> Result<Self> {
        let forms = polys.iter().map(to_binomial_basis).collect::<Result<Vec<_>>>()?;
        Self::polynomial(forms)
    }

    pub fn table<F>(components: usize, map: F) -> Self
    where
        F: Fn(&RingElement, &RingElement) -> Result<Vec<RingElement>> + Send + Sync + 'static,
    {
        SymmetricCocycle::Table {
            components,
            map: Arc::new(map),
        }
    }

    pub fn components(&self) -> usize {
        match self {
            SymmetricCocycle::Polynomial(forms) => forms.len(),
            SymmetricCocycle::Table { components, .. } => *components,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SymmetricCocycle::Polynomial(forms) => forms.iter().all(BinomialForm::is_zero),
            SymmetricCocycle::Table { .. } => false,
        }
    }

    pub fn forms(&self) -> Option<&[BinomialForm]> {
        match self {
            SymmetricCocycle::Polynomial(forms) => Some(forms),
            SymmetricCocycle::Table { .. } => None,
        }
    }

    pub fn eval(&self, a: &RingElement, b: &RingElement, ring: &Ring) -> Result<Vec<RingElement>> {
        let values = match self {
            SymmetricCocycle::Polynomial(forms) => {
                let point = [a.clone(), b.clone()];
                forms
                    .iter()
                    .map(|f| f.eval_in(ring, &point))
                    .collect::<Result<Vec<_>>>()?
            }
            SymmetricCocycle::Table { components, map } => {
                let v = map(a, b)?;
                if v.len() != *components {
                    return Err(Error::ShapeMismatch(alloc::format!(
                        "cocycle returned {} components, expected {}",
                        v.len(),
                        components
                    )));
                }
                v
            }
        };
        if values.iter().any(|x| !ring.contains(x)) {
            return Err(Error::MixedRings);
        }
        Ok(values)
    }
}

/// Outcome of [`check_cocycle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    /// Identities were checked as polynomial identities.
    pub symbolic: bool,
    /// Number of sampled triples (zero for a symbolic check).
    pub checked: usize,
    pub normalized: bool,
    pub symmetric: bool,
    pub cocycle_identity: bool,
    pub counterexample: Option<String>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.normalized && self.symmetric && self.cocycle_identity
    }
}

fn vec_sub(a: &[RingElement], b: &[RingElement]) -> Vec<RingElement> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_add(a: &[RingElement], b: &[RingElement]) -> Vec<RingElement> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn all_zero(v: &[RingElement]) -> bool {
    v.iter().all(RingElement::is_zero)
}

struct Axioms {
    normalized: bool,
    symmetric: bool,
    cocycle_identity: bool,
}

fn axioms_at(f: &SymmetricCocycle, ring: &Ring, x: &RingElement, y: &RingElement, z: &RingElement) -> Result<Axioms> {
    let zero = ring.zero();
    let normalized = all_zero(&f.eval(x, &zero, ring)?) && all_zero(&f.eval(&zero, x, ring)?);
    let fxy = f.eval(x, y, ring)?;
    let symmetric = fxy == f.eval(y, x, ring)?;
    let lhs = vec_add(&f.eval(&(x + y), z, ring)?, &fxy);
    let rhs = vec_add(&f.eval(x, &(y + z), ring)?, &f.eval(y, z, ring)?);
    Ok(Axioms {
        normalized,
        symmetric,
        cocycle_identity: lhs == rhs,
    })
}

fn small_witness(f: &SymmetricCocycle) -> Option<String> {
    let z = Ring::Integers;
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            for w in -3i64..=3 {
                let (a, b, c) = (z.from_i64(x), z.from_i64(y), z.from_i64(w));
                match axioms_at(f, &z, &a, &b, &c) {
                    Ok(ax) if ax.normalized && ax.symmetric && ax.cocycle_identity => {}
                    _ => return Some(alloc::format!("({}, {}, {})", x, y, w)),
                }
            }
        }
    }
    None
}

/// Checks normalization `f(0, x) = f(x, 0) = 0`, symmetry and the identity
/// `f(x + y, z) + f(x, y) = f(x, y + z) + f(y, z)`.
///
/// Polynomial cocycles are checked exactly over `Q[x, y, z]`, independently
/// of `ring`. Table cocycles are checked on `budget` triples drawn from
/// `sample`.
pub fn check_cocycle<S>(f: &SymmetricCocycle, ring: &Ring, budget: usize, mut sample: S) -> Result<CocycleReport>
where
    S: FnMut() -> RingElement,
{
    match f {
        SymmetricCocycle::Polynomial(_) => {
            let q = Ring::polynomial(["x", "y", "z"])?;
            let (x, y, z) = (q.variable(0)?, q.variable(1)?, q.variable(2)?);
            let ax = axioms_at(f, &q, &x, &y, &z)?;
            let failed = !(ax.normalized && ax.symmetric && ax.cocycle_identity);
            Ok(CocycleReport {
                symbolic: true,
                checked: 0,
                normalized: ax.normalized,
                symmetric: ax.symmetric,
                cocycle_identity: ax.cocycle_identity,
                counterexample: if failed { small_witness(f) } else { None },
            })
        }
        SymmetricCocycle::Table { .. } => {
            let triples = (0..budget).map(|_| (sample(), sample(), sample()));
            check_on_triples(f, ring, triples)
        }
    }
}

fn check_on_triples<I>(f: &SymmetricCocycle, ring: &Ring, triples: I) -> Result<CocycleReport>
where
    I: IntoIterator<Item = (RingElement, RingElement, RingElement)>,
{
    let mut report = CocycleReport {
        symbolic: false,
        checked: 0,
        normalized: true,
        symmetric: true,
        cocycle_identity: true,
        counterexample: None,
    };
    for (x, y, z) in triples {
        let ax = axioms_at(f, ring, &x, &y, &z)?;
        report.checked += 1;
        report.normalized &= ax.normalized;
        report.symmetric &= ax.symmetric;
        report.cocycle_identity &= ax.cocycle_identity;
        if !report.passed() {
            report.counterexample = Some(alloc::format!("({}, {}, {})", x, y, z));
            break;
        }
    }
    Ok(report)
}

/// The data `f̄ = (f^1, …, f^r)` of a deformation of `N_{r,c}`.
#[derive(Clone, Debug)]
pub struct Deformation {
    r: usize,
    c: usize,
    top: Range<usize>,
    cocycles: Vec<SymmetricCocycle>,
}

impl Deformation {
    /// `cocycles[k]` is `f^{k+1}`; each must have `n_c` components.
    pub fn new(group: &NilpotentGroup, cocycles: Vec<SymmetricCocycle>) -> Result<Self> {
        let (r, c) = (group.rank(), group.class());
        if c < 2 {
            return Err(Error::BadClass(c));
        }
        let top = group.basis().weight_range(c);
        if cocycles.len() != r {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} cocycles given for rank {}",
                cocycles.len(),
                r
            )));
        }
        if let Some(f) = cocycles.iter().find(|f| f.components() != top.len()) {
            return Err(Error::ShapeMismatch(alloc::format!(
                "cocycle has {} components, n_c = {}",
                f.components(),
                top.len()
            )));
        }
        Ok(Deformation { r, c, top, cocycles })
    }

    pub fn zero(group: &NilpotentGroup) -> Result<Self> {
        let n_c = group.basis().weight_range(group.class()).len();
        Self::new(group, vec![SymmetricCocycle::zero(n_c); group.rank()])
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn class(&self) -> usize {
        self.c
    }

    /// Positions of the weight-`c` coordinates.
    pub fn top(&self) -> Range<usize> {
        self.top.clone()
    }

    pub fn cocycles(&self) -> &[SymmetricCocycle] {
        &self.cocycles
    }

    /// `f^{k+1}`.
    pub fn cocycle(&self, k: usize) -> &SymmetricCocycle {
        &self.cocycles[k]
    }

    pub fn is_zero(&self) -> bool {
        self.cocycles.iter().all(SymmetricCocycle::is_zero)
    }

    pub(crate) fn check_shape(&self, group: &NilpotentGroup) -> Result<()> {
        if group.rank() != self.r || group.class() != self.c {
            return Err(Error::ShapeMismatch(alloc::format!(
                "deformation of N_({},{}) used with N_({},{})",
                self.r,
                self.c,
                group.rank(),
                group.class()
            )));
        }
        Ok(())
    }

    /// `Σ_k f^k(a_1k, b_1k)`.
    pub fn correction(&self, a: &[RingElement], b: &[RingElement], ring: &Ring) -> Result<Vec<RingElement>> {
        let mut acc = vec![ring.zero(); self.top.len()];
        for (k, f) in self.cocycles.iter().enumerate() {
            if a[k].is_zero() || b[k].is_zero() {
                continue;
            }
            for (s, v) in acc.iter_mut().zip(f.eval(&a[k], &b[k], ring)?) {
                *s += &v;
            }
        }
        Ok(acc)
    }

    /// Checks every cocycle: polynomial ones exactly, table ones on all
    /// triples of integers in `[-3, 3]` mapped into `ring`.
    pub fn validate(&self, ring: &Ring) -> Result<()> {
        let grid: Vec<RingElement> = (-3i64..=3).map(|n| ring.from_i64(n)).collect();
        for (k, f) in self.cocycles.iter().enumerate() {
            let report = match f {
                SymmetricCocycle::Polynomial(_) => check_cocycle(f, ring, 0, || ring.zero())?,
                SymmetricCocycle::Table { .. } => {
                    let mut triples = Vec::with_capacity(grid.len().pow(3));
                    for x in &grid {
                        for y in &grid {
                            for z in &grid {
                                triples.push((x.clone(), y.clone(), z.clone()));
                            }
                        }
                    }
                    check_on_triples(f, ring, triples)?
                }
            };
            if !report.passed() {
                return Err(Error::CocycleViolation(alloc::format!(
                    "f^{}: normalized {}, symmetric {}, cocycle identity {}{}",
                    k + 1,
                    report.normalized,
                    report.symmetric,
                    report.cocycle_identity,
                    report
                        .counterexample
                        .map(|w| alloc::format!(", witness {}", w))
                        .unwrap_or_default()
                )));
            }
        }
        Ok(())
    }
}

/// An element of a deformed group: ordinary coordinates, deformed product.
#[derive(Clone, Debug)]
pub struct DeformedElement {
    element: GroupElement,
    deformation: Arc<Deformation>,
}

impl PartialEq for DeformedElement {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element && Arc::ptr_eq(&self.deformation, &other.deformation)
    }
}

impl Eq for DeformedElement {}

impl DeformedElement {
    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    pub fn coords(&self) -> &[RingElement] {
        self.element.coords()
    }

    pub fn into_element(self) -> GroupElement {
        self.element
    }

    pub fn deformation(&self) -> &Arc<Deformation> {
        &self.deformation
    }
}

impl fmt::Display for DeformedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.element.fmt(f)
    }
}

/// The group `N_{r,c}(R, f̄)`.
#[derive(Clone, Debug)]
pub struct DeformedGroup {
    base: NilpotentGroup,
    deformation: Arc<Deformation>,
}

impl DeformedGroup {
    /// Validates the cocycles (see [`Deformation::validate`]) and fails with
    /// [`Error::CocycleViolation`] if any axiom does not hold.
    pub fn new(base: NilpotentGroup, deformation: Deformation) -> Result<Self> {
        deformation.check_shape(&base)?;
        deformation.validate(base.ring())?;
        Ok(DeformedGroup {
            base,
            deformation: Arc::new(deformation),
        })
    }

    pub fn base(&self) -> &NilpotentGroup {
        &self.base
    }

    pub fn deformation(&self) -> &Arc<Deformation> {
        &self.deformation
    }

    pub fn ring(&self) -> &Ring {
        self.base.ring()
    }

    pub fn lift(&self, g: GroupElement) -> Result<DeformedElement> {
        if g.rank() != self.base.rank() || g.class() != self.base.class() || g.ring() != self.base.ring() {
            return Err(Error::ShapeMismatch("element of another group".to_string()));
        }
        Ok(DeformedElement {
            element: g,
            deformation: self.deformation.clone(),
        })
    }

    pub fn element(&self, coords: Vec<RingElement>) -> Result<DeformedElement> {
        self.lift(self.base.element(coords)?)
    }

    pub fn from_i64s(&self, coords: &[i64]) -> Result<DeformedElement> {
        self.lift(self.base.from_i64s(coords)?)
    }

    pub fn identity(&self) -> DeformedElement {
        self.lift(self.base.identity()).expect("same group")
    }

    fn own<'a>(&self, g: &'a DeformedElement) -> Result<&'a GroupElement> {
        if !Arc::ptr_eq(&g.deformation, &self.deformation) {
            return Err(Error::ShapeMismatch("element of another deformed group".to_string()));
        }
        Ok(&g.element)
    }

    /// `d = p(a, b)` with `Σ_k f^k(a_1k, b_1k)` added in weight `c`.
    pub fn mul(&self, g: &DeformedElement, h: &DeformedElement) -> Result<DeformedElement> {
        let (a, b) = (self.own(g)?, self.own(h)?);
        let mut coords = self.base.mul(a, b)?.into_coords();
        let corr = self.deformation.correction(a.coords(), b.coords(), self.ring())?;
        for (x, d) in coords[self.deformation.top()].iter_mut().zip(&corr) {
            *x += d;
        }
        self.element(coords)
    }

    /// `m = q(a, −1)` with `Σ_k f^k(a_1k, −a_1k)` subtracted in weight `c`.
    pub fn inv(&self, g: &DeformedElement) -> Result<DeformedElement> {
        let a = self.own(g)?;
        let mut coords = self.base.inv(a)?.into_coords();
        let neg: Vec<RingElement> = a.coords().iter().map(|x| -x).collect();
        let corr = self.deformation.correction(a.coords(), &neg, self.ring())?;
        for (x, d) in coords[self.deformation.top()].iter_mut().zip(&corr) {
            *x -= d;
        }
        self.element(coords)
    }

    pub fn product<'a, I>(&self, items: I) -> Result<DeformedElement>
    where
        I: IntoIterator<Item = &'a DeformedElement>,
    {
        let mut acc = self.identity();
        for g in items {
            acc = self.mul(&acc, g)?;
        }
        Ok(acc)
    }

    /// `g^n` for an integer `n`, by repeated squaring.
    pub fn pow_int(&self, g: &DeformedElement, n: &BigInt) -> Result<DeformedElement> {
        let mut base = if n.is_negative() { self.inv(g)? } else { g.clone() };
        let mut e = n.abs();
        let mut acc = self.identity();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e /= &two;
        }
        Ok(acc)
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, g: &DeformedElement, h: &DeformedElement) -> Result<DeformedElement> {
        let gi = self.inv(g)?;
        let hi = self.inv(h)?;
        self.product([&gi, &hi, g, h])
    }

    pub fn commutes(&self, g: &DeformedElement, h: &DeformedElement) -> Result<bool> {
        Ok(self.mul(g, h)? == self.mul(h, g)?)
    }
}

/// A splitting `ψ: Z → Z^m` with `f(a, b) = ψ(a + b) − ψ(a) − ψ(b)`.
#[derive(Clone, Debug)]
pub struct IntegerSplitting {
    cocycle: SymmetricCocycle,
    closed_form: Option<Vec<BinomialForm>>,
}

fn int_values(v: Vec<RingElement>) -> Vec<BigInt> {
    v.into_iter()
        .map(|x| x.as_integer().cloned().expect("integer-valued cocycle"))
        .collect()
}

impl IntegerSplitting {
    pub fn components(&self) -> usize {
        self.cocycle.components()
    }

    pub fn cocycle(&self) -> &SymmetricCocycle {
        &self.cocycle
    }

    /// For a polynomial cocycle with `f(t, 1) = Σ_k g_k binom(t, k)`, the
    /// splitting is `ψ(n) = Σ_k g_k binom(n, k + 1)`.
    pub fn closed_form(&self) -> Option<&[BinomialForm]> {
        self.closed_form.as_deref()
    }

    fn f(&self, a: &BigInt, b: &BigInt) -> Result<Vec<BigInt>> {
        let z = Ring::Integers;
        Ok(int_values(self.cocycle.eval(
            &z.from_integer(a.clone()),
            &z.from_integer(b.clone()),
            &z,
        )?))
    }

    /// `ψ(n)` from the recursion `ψ(0) = 0`, `ψ(n + 1) = ψ(n) + f(n, 1)`.
    pub fn psi_recursive(&self, n: &BigInt) -> Result<Vec<BigInt>> {
        let steps = n
            .abs()
            .to_u64()
            .ok_or_else(|| Error::InvalidIndex(alloc::format!("recursion depth {}", n)))?;
        let one = BigInt::one();
        let mut acc = vec![BigInt::zero(); self.components()];
        let mut t = BigInt::zero();
        for _ in 0..steps {
            if n.is_positive() {
                for (s, v) in acc.iter_mut().zip(self.f(&t, &one)?) {
                    *s += v;
                }
                t += 1;
            } else {
                t -= 1;
                for (s, v) in acc.iter_mut().zip(self.f(&t, &one)?) {
                    *s -= v;
                }
            }
        }
        Ok(acc)
    }

    pub fn psi(&self, n: &BigInt) -> Result<Vec<BigInt>> {
        match &self.closed_form {
            Some(forms) => {
                let point = [RingElement::Int(n.clone())];
                Ok(int_values(
                    forms
                        .iter()
                        .map(|f| f.eval_in(&Ring::Integers, &point))
                        .collect::<Result<Vec<_>>>()?,
                ))
            }
            None => self.psi_recursive(n),
        }
    }

    /// `ψ(a + b) − ψ(a) − ψ(b) − f(a, b)`; zero when the splitting holds.
    pub fn defect(&self, a: &BigInt, b: &BigInt) -> Result<Vec<BigInt>> {
        let (pab, pa, pb) = (self.psi(&(a + b))?, self.psi(a)?, self.psi(b)?);
        let f = self.f(a, b)?;
        Ok((0..self.components())
            .map(|j| &pab[j] - &pa[j] - &pb[j] - &f[j])
            .collect())
    }

    pub fn verify(&self, pairs: &[(BigInt, BigInt)]) -> Result<()> {
        for (a, b) in pairs {
            if self.defect(a, b)?.iter().any(|d| !d.is_zero()) {
                return Err(Error::SplitFailure {
                    a: a.to_string(),
                    b: b.to_string(),
                });
            }
        }
        Ok(())
    }
}

fn closed_form_of(forms: &[BinomialForm]) -> Result<Vec<BinomialForm>> {
    forms
        .iter()
        .map(|form| {
            let mut psi = BinomialForm::zero(1);
            let mut g: alloc::collections::BTreeMap<u32, BigInt> = Default::default();
            for (deg, c) in form.terms() {
                // binom(1, m) is 1 for m ≤ 1 and 0 otherwise
                if deg[1] <= 1 {
                    *g.entry(deg[0]).or_default() += c;
                }
            }
            for (k, gk) in g {
                if !gk.is_zero() {
                    psi.add_term(vec![k + 1], gk)?;
                }
            }
            Ok(psi)
        })
        .collect()
}

/// Splits an integer cocycle. Polynomial cocycles are split in closed form
/// and the identity `f = ∂ψ` is checked exactly; every cocycle is further
/// checked on `pairs`. A failure means `f` was not a symmetric cocycle.
pub fn coboundary_split_integers(f: &SymmetricCocycle, pairs: &[(BigInt, BigInt)]) -> Result<IntegerSplitting> {
    let closed_form = match f {
        SymmetricCocycle::Polynomial(forms) => Some(closed_form_of(forms)?),
        SymmetricCocycle::Table { .. } => None,
    };
    let splitting = IntegerSplitting {
        cocycle: f.clone(),
        closed_form,
    };
    if let (Some(psi), Some(forms)) = (&splitting.closed_form, f.forms()) {
        let q = Ring::polynomial(["a", "b"])?;
        let (a, b) = (q.variable(0)?, q.variable(1)?);
        let ab = &a + &b;
        for (p, form) in psi.iter().zip(forms) {
            let at = |x: &RingElement| p.eval_in(&q, core::slice::from_ref(x));
            let d = &(&at(&ab)? - &at(&a)?) - &at(&b)?;
            if d != form.eval_in(&q, &[a.clone(), b.clone()])? {
                let witness = witness_pair(&splitting);
                return Err(witness);
            }
        }
    }
    splitting.verify(pairs)?;
    Ok(splitting)
}

fn witness_pair(s: &IntegerSplitting) -> Error {
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            if let Ok(d) = s.defect(&a, &b) {
                if d.iter().any(|x| !x.is_zero()) {
                    return Error::SplitFailure {
                        a: a.to_string(),
                        b: b.to_string(),
                    };
                }
            }
        }
    }
    Error::SplitFailure {
        a: "a".to_string(),
        b: "b".to_string(),
    }
}

/// The isomorphism `N_{r,c}(Z, f̄) → N_{r,c}(Z)` induced by splittings
/// `f^k = ∂ψ^k`: weight-`c` coordinates become `a_cj − Σ_k ψ^k_j(a_1k)`,
/// all others are unchanged.
#[derive(Clone, Debug)]
pub struct SplittingIsomorphism {
    group: DeformedGroup,
    splittings: Vec<IntegerSplitting>,
}

pub fn iso_from_splittings(group: &DeformedGroup, splittings: Vec<IntegerSplitting>) -> Result<SplittingIsomorphism> {
    if *group.ring() != Ring::Integers {
        return Err(Error::MixedRings);
    }
    let n_c = group.deformation().top().len();
    if splittings.len() != group.base().rank() || splittings.iter().any(|s| s.components() != n_c) {
        return Err(Error::ShapeMismatch(alloc::format!(
            "need {} splittings with {} components",
            group.base().rank(),
            n_c
        )));
    }
    Ok(SplittingIsomorphism {
        group: group.clone(),
        splittings,
    })
}

impl SplittingIsomorphism {
    pub fn group(&self) -> &DeformedGroup {
        &self.group
    }

    fn shift(&self, coords: &[RingElement]) -> Result<Vec<BigInt>> {
        let mut acc = vec![BigInt::zero(); self.group.deformation().top().len()];
        for (k, s) in self.splittings.iter().enumerate() {
            let a = coords[k].as_integer().ok_or(Error::MixedRings)?;
            for (t, v) in acc.iter_mut().zip(s.psi(a)?) {
                *t += v;
            }
        }
        Ok(acc)
    }

    pub fn forward(&self, g: &DeformedElement) -> Result<GroupElement> {
        let a = self.group.own(g)?;
        let shift = self.shift(a.coords())?;
        let mut coords = a.coords().to_vec();
        for (x, s) in coords[self.group.deformation().top()].iter_mut().zip(shift) {
            *x -= &RingElement::Int(s);
        }
        self.group.base().element(coords)
    }

    pub fn backward(&self, h: &GroupElement) -> Result<DeformedElement> {
        let shift = self.shift(h.coords())?;
        let mut coords = h.coords().to_vec();
        for (x, s) in coords[self.group.deformation().top()].iter_mut().zip(shift) {
            *x += &RingElement::Int(s);
        }
        self.group.element(coords)
    }

    /// Checks `Φ(gh) = Φ(g)Φ(h)` and that `Φ` and its inverse compose to
    /// the identity on both sides, for every pair.
    pub fn verify(&self, pairs: &[(DeformedElement, DeformedElement)]) -> Result<()> {
        let base = self.group.base();
        for (g, h) in pairs {
            let lhs = self.forward(&self.group.mul(g, h)?)?;
            let rhs = base.mul(&self.forward(g)?, &self.forward(h)?)?;
            if lhs != rhs {
                return Err(Error::NotAHomomorphism(alloc::format!(
                    "Φ({}·{}) = {} ≠ {}",
                    g,
                    h,
                    lhs,
                    rhs
                )));
            }
            for x in [g, h] {
                if self.backward(&self.forward(x)?)? != *x {
                    return Err(Error::NotAHomomorphism(alloc::format!("Φ⁻¹Φ({}) ≠ {}", x, x)));
                }
                let y = x.element();
                if self.forward(&self.backward(y)?)? != *y {
                    return Err(Error::NotAHomomorphism(alloc::format!("ΦΦ⁻¹({}) ≠ {}", y, y)));
                }
            }
        }
        Ok(())
    }
}

/// The 2-cocycle `k: G/Z × G/Z → Z` of the central extension
/// `Z → N_{r,c}(R, f̄) → N_{r,c−1}(R)`, on the section `a' ↦ (a', 0)`.
///
/// Coset representatives are the coordinates of weight `< c`; central
/// elements are the weight-`c` coordinates.
#[derive(Clone, Debug)]
pub struct ExtensionCocycle {
    group: DeformedGroup,
    split: usize,
}

/// A pair `(b, a)` of the extension group `E(k)`: coset coordinates `b` and
/// central coordinates `a`.
pub type ExtensionPair = (Vec<RingElement>, Vec<RingElement>);

pub fn assemble_extension_cocycle(group: &DeformedGroup) -> ExtensionCocycle {
    ExtensionCocycle {
        split: group.deformation().top().start,
        group: group.clone(),
    }
}

impl ExtensionCocycle {
    pub fn group(&self) -> &DeformedGroup {
        &self.group
    }

    /// Number of coset coordinates.
    pub fn quotient_dimension(&self) -> usize {
        self.split
    }

    /// Number of central coordinates.
    pub fn center_dimension(&self) -> usize {
        self.group.base().dimension() - self.split
    }

    fn section(&self, b: &[RingElement]) -> Result<DeformedElement> {
        if b.len() != self.split {
            return Err(Error::ShapeMismatch(alloc::format!(
                "expected {} coset coordinates, found {}",
                self.split,
                b.len()
            )));
        }
        let mut coords = b.to_vec();
        coords.resize(self.group.base().dimension(), self.group.ring().zero());
        self.group.element(coords)
    }

    /// `k(b1, b2)`: central part of `(b1, 0)(b2, 0)`.
    pub fn k(&self, b1: &[RingElement], b2: &[RingElement]) -> Result<Vec<RingElement>> {
        let p = self.group.mul(&self.section(b1)?, &self.section(b2)?)?;
        Ok(p.coords()[self.split..].to_vec())
    }

    /// Product in the quotient `G/Z`.
    pub fn quotient_mul(&self, b1: &[RingElement], b2: &[RingElement]) -> Result<Vec<RingElement>> {
        let p = self.group.mul(&self.section(b1)?, &self.section(b2)?)?;
        Ok(p.coords()[..self.split].to_vec())
    }

    /// `(b1, a1)(b2, a2) = (b1 b2, a1 + a2 + k(b1, b2))`.
    pub fn extension_mul(&self, x: &ExtensionPair, y: &ExtensionPair) -> Result<ExtensionPair> {
        let k = self.k(&x.0, &y.0)?;
        let a = vec_add(&vec_add(&x.1, &y.1), &k);
        Ok((self.quotient_mul(&x.0, &y.0)?, a))
    }

    pub fn to_pair(&self, g: &DeformedElement) -> ExtensionPair {
        let c = g.coords();
        (c[..self.split].to_vec(), c[self.split..].to_vec())
    }

    pub fn from_pair(&self, x: &ExtensionPair) -> Result<DeformedElement> {
        let mut coords = x.0.clone();
        coords.extend(x.1.iter().cloned());
        self.group.element(coords)
    }

    /// Normalization `k(b, 0) = k(0, b) = 0` and the identity
    /// `k(x, y) + k(xy, z) = k(x, yz) + k(y, z)` at one triple.
    pub fn check_triple(&self, x: &[RingElement], y: &[RingElement], z: &[RingElement]) -> Result<bool> {
        let zero = vec![self.group.ring().zero(); self.split];
        for b in [x, y, z] {
            if !all_zero(&self.k(b, &zero)?) || !all_zero(&self.k(&zero, b)?) {
                return Ok(false);
            }
        }
        let xy = self.quotient_mul(x, y)?;
        let yz = self.quotient_mul(y, z)?;
        let lhs = vec_add(&self.k(x, y)?, &self.k(&xy, z)?);
        let rhs = vec_add(&self.k(x, &yz)?, &self.k(y, z)?);
        Ok(all_zero(&vec_sub(&lhs, &rhs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> SymmetricCocycle {
        SymmetricCocycle::polynomial(vec![BinomialForm::from_terms(2, [(vec![1, 1], BigInt::one())]).unwrap()]).unwrap()
    }

    fn scaled(n: i64) -> SymmetricCocycle {
        SymmetricCocycle::polynomial(vec![
            BinomialForm::from_terms(2, [(vec![1, 1], BigInt::from(n))]).unwrap()
        ])
        .unwrap()
    }

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn zero_and_product_cocycles_pass() {
        for f in [SymmetricCocycle::zero(1), ab()] {
            let rep = check_cocycle(&f, &z(), 0, || unreachable!()).unwrap();
            assert!(rep.passed() && rep.symbolic);
        }
    }

    #[test]
    fn asymmetric_cocycle_fails() {
        // a²b = (2 binom(a,2) + a) b
        let f = SymmetricCocycle::polynomial(vec![BinomialForm::from_terms(
            2,
            [(vec![2, 1], BigInt::from(2)), (vec![1, 1], BigInt::one())],
        )
        .unwrap()])
        .unwrap();
        let rep = check_cocycle(&f, &z(), 0, || unreachable!()).unwrap();
        assert!(!rep.symmetric);
        assert!(rep.counterexample.is_some());
    }

    #[test]
    fn table_cocycle_sampled() {
        let f = SymmetricCocycle::table(1, |a, b| Ok(vec![a * b]));
        let mut n = 0i64;
        let rep = check_cocycle(&f, &z(), 50, || {
            n = (n * 7 + 3) % 19 - 9;
            z().from_i64(n)
        })
        .unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 50);
    }

    #[test]
    fn splittings() {
        let s = coboundary_split_integers(&ab(), &[]).unwrap();
        for n in -6i64..=6 {
            let n = BigInt::from(n);
            let expect: BigInt = (&n * (&n - 1)) / 2;
            assert_eq!(s.psi(&n).unwrap(), vec![expect.clone()]);
            assert_eq!(s.psi_recursive(&n).unwrap(), vec![expect]);
        }
        let s2 = coboundary_split_integers(&scaled(2), &[]).unwrap();
        assert_eq!(s2.psi(&BigInt::from(5)).unwrap(), vec![BigInt::from(20)]);
        let zero = coboundary_split_integers(&SymmetricCocycle::zero(1), &[]).unwrap();
        assert_eq!(zero.psi(&BigInt::from(-7)).unwrap(), vec![BigInt::zero()]);
    }

    #[test]
    fn deformed_group_basics() {
        let base = NilpotentGroup::new(2, 2, z()).unwrap();
        let def = Deformation::new(&base, vec![ab(), SymmetricCocycle::zero(1)]).unwrap();
        let h = DeformedGroup::new(base.clone(), def).unwrap();
        let g = h.from_i64s(&[2, 1, 0]).unwrap();
        let g2 = h.mul(&g, &g).unwrap();
        let plain = base.mul(g.element(), g.element()).unwrap();
        assert_eq!(&g2.coords()[..2], &plain.coords()[..2]);
        assert_eq!(g2.coords()[2], &plain.coords()[2] + &RingElement::from(4));
        assert!(h.mul(&g, &h.inv(&g).unwrap()).unwrap().element().is_identity());
    }

    #[test]
    fn asymmetric_deformation_rejected() {
        let base = NilpotentGroup::new(2, 2, z()).unwrap();
        let f = SymmetricCocycle::table(1, |a, b| Ok(vec![&(a * a) * b]));
        let def = Deformation::new(&base, vec![f, SymmetricCocycle::zero(1)]).unwrap();
        assert!(matches!(DeformedGroup::new(base, def), Err(Error::CocycleViolation(_))));
    }

    #[test]
    fn isomorphism_and_extension() {
        let base = NilpotentGroup::new(2, 2, z()).unwrap();
        let def = Deformation::new(&base, vec![ab(), scaled(2)]).unwrap();
        let h = DeformedGroup::new(base, def).unwrap();
        let splits = h
            .deformation()
            .cocycles()
            .iter()
            .map(|f| coboundary_split_integers(f, &[]).unwrap())
            .collect();
        let phi = iso_from_splittings(&h, splits).unwrap();
        let pairs = [
            (h.from_i64s(&[2, -1, 3]).unwrap(), h.from_i64s(&[-4, 5, 1]).unwrap()),
            (h.from_i64s(&[1, 1, 0]).unwrap(), h.from_i64s(&[1, 1, 0]).unwrap()),
        ];
        phi.verify(&pairs).unwrap();

        let k = assemble_extension_cocycle(&h);
        let (x, y, w) = (
            vec![RingElement::from(2), RingElement::from(-3)],
            vec![RingElement::from(-1), RingElement::from(4)],
            vec![RingElement::from(5), RingElement::from(1)],
        );
        assert!(k.check_triple(&x, &y, &w).unwrap());
        let (g1, g2) = (&pairs[0].0, &pairs[0].1);
        let e = k.extension_mul(&k.to_pair(g1), &k.to_pair(g2)).unwrap();
        assert_eq!(k.from_pair(&e).unwrap(), h.mul(g1, g2).unwrap());
    }
}
