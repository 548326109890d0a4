//! Property suites behind `hallforge verify`. Each suite draws from its own
//! sampler stream, so the report does not depend on execution order.

use std::sync::Arc;

use hallforge_core::deformation::{
    assemble_extension_cocycle, check_cocycle, coboundary_split_integers, iso_from_splittings, Deformation,
    DeformedGroup, SymmetricCocycle,
};
use hallforge_core::group::{Collector, MagnusTables, NilpotentGroup};
use hallforge_core::hall_poly::{derive_hall_polynomials_with, derive_structure_polys_with};
use hallforge_core::lazard::{
    bilinear_from_lie, compare_graded_lie, free_nilpotent_lie_of, lazard_lie_ring_with, pf_solution_space,
};
use hallforge_core::ring::{binom, BinomialForm, Poly, Ring, RingElement};
use hallforge_core::{BigInt, Result};
use serde::{Deserialize, Serialize};

use crate::sampling::Sampler;

/// Sample sizes per suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub triples: usize,
    pub words: usize,
    pub points: usize,
    pub tuples: usize,
    pub pairs: usize,
    pub centralizer: usize,
}

impl Budget {
    pub fn uniform(n: usize) -> Self {
        Budget {
            triples: n,
            words: n,
            points: n,
            tuples: n,
            pairs: n,
            centralizer: n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub r: usize,
    pub c: usize,
    pub ring: String,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn table(&self) -> String {
        let mut out = format!("N_({},{}) over {}  seed {}\n", self.r, self.c, self.ring, self.seed);
        let width = self.suites.iter().map(|s| s.name.len()).max().unwrap_or(0);
        for s in &self.suites {
            out.push_str(&format!(
                "  {:<width$}  {}  {:>7} checks  {:>4} failures  {}\n",
                s.name,
                if s.passed { "PASS" } else { "FAIL" },
                s.checks,
                s.failures,
                s.detail,
                width = width
            ));
        }
        out.push_str(if self.passed() {
            "all suites passed\n"
        } else {
            "some suites FAILED\n"
        });
        out
    }
}

/// Tally of one suite.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < 3 {
                self.notes.push(what());
            }
        }
    }

    fn finish(self, name: &str, summary: String) -> SuiteResult {
        let detail = if self.notes.is_empty() {
            summary
        } else {
            self.notes.join("; ")
        };
        SuiteResult {
            name: name.to_string(),
            passed: self.failures == 0,
            checks: self.checks,
            failures: self.failures,
            detail,
        }
    }
}

fn errored(name: &str, e: hallforge_core::Error) -> SuiteResult {
    SuiteResult {
        name: name.to_string(),
        passed: false,
        checks: 0,
        failures: 1,
        detail: format!("error: {}", e),
    }
}

/// Runs one suite, turning an engine error into a failed result.
fn guarded(name: &str, f: impl FnOnce() -> Result<SuiteResult>) -> SuiteResult {
    f().unwrap_or_else(|e| errored(name, e))
}

/// Everything a suite needs about its configuration.
pub struct Target {
    pub group: NilpotentGroup,
    pub seed: u64,
}

impl Target {
    pub fn new(r: usize, c: usize, ring: Ring, seed: u64) -> Result<Self> {
        Ok(Target {
            group: NilpotentGroup::new(r, c, ring)?,
            seed,
        })
    }

    fn tables(&self) -> Arc<MagnusTables> {
        self.group.tables().clone()
    }

    fn integers(&self) -> NilpotentGroup {
        NilpotentGroup::with_tables(self.tables(), Ring::Integers)
    }

    fn sampler(&self, name: &str) -> Sampler {
        Sampler::for_label(self.seed, name)
    }
}

pub const SUITES: [&str; 9] = [
    "hall-basis",
    "group-axioms",
    "collection",
    "hall-polynomials",
    "petresco",
    "lazard",
    "pf",
    "deformation",
    "centralizer",
];

pub fn run_all(t: &Target, budget: &Budget) -> VerifyReport {
    run_all_named(t, budget, &[])
}

/// Runs the suites in `names`, or all of them when `names` is empty.
/// Unknown names are skipped.
pub fn run_all_named(t: &Target, budget: &Budget, names: &[String]) -> VerifyReport {
    VerifyReport {
        r: t.group.rank(),
        c: t.group.class(),
        ring: t.group.ring().to_string(),
        seed: t.seed,
        suites: SUITES
            .iter()
            .filter(|name| names.is_empty() || names.iter().any(|n| n == *name))
            .filter_map(|name| run(name, t, budget))
            .collect(),
    }
}

pub fn run(name: &str, t: &Target, budget: &Budget) -> Option<SuiteResult> {
    let f: fn(&Target, &Budget) -> Result<SuiteResult> = match name {
        "hall-basis" => hall_basis,
        "group-axioms" => group_axioms,
        "collection" => collection,
        "hall-polynomials" => hall_polynomials,
        "petresco" => petresco,
        "lazard" => lazard,
        "pf" => pf,
        "deformation" => deformation,
        "centralizer" => centralizer,
        _ => return None,
    };
    Some(guarded(name, || f(t, budget)))
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        -result
    } else {
        result
    }
}

/// Witt's formula for the number of basic commutators of weight `n`.
pub fn witt(r: usize, n: usize) -> usize {
    let sum: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (r as i64).pow((n / d) as u32))
        .sum();
    (sum / n as i64) as usize
}

pub fn hall_basis(t: &Target, _: &Budget) -> Result<SuiteResult> {
    let basis = t.group.basis();
    let mut tally = Tally::default();
    for (i, &n) in basis.counts().iter().enumerate() {
        let w = witt(basis.rank(), i + 1);
        tally.check(n == w, || {
            format!("weight {}: {} basic commutators, expected {}", i + 1, n, w)
        });
    }
    for b in basis.iter() {
        let leaves = basis.tree(b.position).leaves();
        tally.check(leaves == b.weight(), || format!("{} has {} leaves", b.index, leaves));
    }
    Ok(tally.finish("hall-basis", format!("{} basic commutators", basis.len())))
}

pub fn group_axioms(t: &Target, budget: &Budget) -> Result<SuiteResult> {
    let g = &t.group;
    let mut s = t.sampler("group-axioms");
    let mut tally = Tally::default();
    let e = g.identity();
    for _ in 0..budget.triples {
        let (x, y, z) = (s.element(g, 9), s.element(g, 9), s.element(g, 9));
        let left = g.mul(&g.mul(&x, &y)?, &z)?;
        let right = g.mul(&x, &g.mul(&y, &z)?)?;
        tally.check(left == right, || format!("associativity fails at {}, {}, {}", x, y, z));
        tally.check(g.mul(&x, &e)? == x && g.mul(&e, &x)? == x, || {
            format!("identity fails at {}", x)
        });
        let xi = g.inv(&x)?;
        tally.check(g.mul(&x, &xi)?.is_identity() && g.mul(&xi, &x)?.is_identity(), || {
            format!("inverse fails at {}", x)
        });
    }
    Ok(tally.finish("group-axioms", format!("{} triples", budget.triples)))
}

pub fn collection(t: &Target, budget: &Budget) -> Result<SuiteResult> {
    let g = &t.group;
    let structure = derive_structure_polys_with(t.tables())?;
    let collector = Collector::new(g, &structure)?;
    let mut s = t.sampler("collection");
    let mut tally = Tally::default();
    for _ in 0..budget.words {
        let len = s.length(10);
        let w = s.word(g, len, 5);
        let collected = collector.collect(&w)?;
        tally.check(collected == g.evaluate_word(&w)?, || {
            format!("collection disagrees on a word of length {}", len)
        });
    }
    Ok(tally.finish("collection", format!("{} words", budget.words)))
}

/// Over `Q[a.., b.., d..]`: `p(p(a, b), d) = p(a, p(b, d))`.
fn polynomial_associativity(polys: &hallforge_core::hall_poly::CanonicalPolynomials) -> Result<bool> {
    let n = polys.basis().len();
    let names: Vec<String> = ["a", "b", "d"]
        .iter()
        .flat_map(|p| (0..n).map(move |i| format!("{}{}", p, i)))
        .collect();
    let ring = Ring::polynomial(names)?;
    let vars = |k: usize| -> Result<Vec<RingElement>> { (0..n).map(|i| ring.variable(k * n + i)).collect() };
    let (a, b, d) = (vars(0)?, vars(1)?, vars(2)?);
    let left = polys.compose_product(&polys.compose_product(&a, &b)?, &d)?;
    let right = polys.compose_product(&a, &polys.compose_product(&b, &d)?)?;
    Ok(left == right)
}

/// Largest dimension at which the symbolic associativity identity is run.
pub const SYMBOLIC_ASSOCIATIVITY_DIMENSION: usize = 5;

pub fn hall_polynomials(t: &Target, budget: &Budget) -> Result<SuiteResult> {
    let g = t.integers();
    let polys = derive_hall_polynomials_with(t.tables())?;
    let mut tally = Tally::default();
    let integral = polys.binomial_forms();
    tally.check(integral.is_ok(), || {
        format!("binomial basis: {}", integral.as_ref().unwrap_err())
    });

    let vars = polys.product_ring().clone();
    let n = g.dimension();
    for j in 0..g.rank() {
        let expect = match (vars.variable(j)?, vars.variable(n + j)?) {
            (RingElement::Poly(x), RingElement::Poly(y)) => x.add(&y),
            _ => unreachable!("polynomial ring"),
        };
        let p: &Poly = &polys.product()[j];
        tally.check(*p == expect, || format!("p_1{} = {}", j + 1, p));
    }
    let symbolic = n <= SYMBOLIC_ASSOCIATIVITY_DIMENSION;
    if symbolic {
        tally.check(polynomial_associativity(&polys)?, || {
            "polynomial associativity fails".into()
        });
    }

    let mut s = t.sampler("hall-polynomials");
    for _ in 0..budget.points {
        let (x, y) = (s.element(&g, 9), s.element(&g, 9));
        let l = RingElement::from(s.int(9));
        tally.check(polys.eval_product(&g, &x, &y)? == g.mul(&x, &y)?, || {
            format!("p disagrees at {}, {}", x, y)
        });
        tally.check(polys.eval_power(&g, &x, &l)? == g.pow(&x, &l)?, || {
            format!("q disagrees at {}, {}", x, l)
        });
    }
    let summary = format!(
        "integral binomial forms, {} points{}",
        budget.points,
        if symbolic { ", symbolic associativity" } else { "" }
    );
    Ok(tally.finish("hall-polynomials", summary))
}

pub fn petresco(t: &Target, budget: &Budget) -> Result<SuiteResult> {
    let g = t.integers();
    let c = g.class();
    let mut s = t.sampler("petresco");
    let mut tally = Tally::default();
    for _ in 0..budget.tuples {
        let m = 2 + s.index(2);
        let xs: Vec<_> = (0..m).map(|_| s.element(&g, 4)).collect();
        let taus = g.petresco_taus(&xs)?;
        for (k, tau) in taus.iter().enumerate().take(c) {
            tally.check(g.gamma_weight(tau) > k, || {
                format!("tau_{} has weight {}", k + 1, g.gamma_weight(tau))
            });
        }
        for n in 1..=6i64 {
            let powers = xs.iter().map(|x| g.pow_i64(x, n)).collect::<Result<Vec<_>>>()?;
            let lhs = g.product(&powers)?;
            let rhs = g.petresco_expand(&taus, &RingElement::from(n))?;
            tally.check(lhs == rhs, || format!("defining identity fails at n = {}", n));
        }
    }
    for _ in 0..budget.pairs {
        let (h, x) = (s.element(&g, 5), s.element(&g, 5));
        let exponents: Vec<RingElement> = (-5i64..=5).map(RingElement::from).collect();
        for (a, ok) in exponents.iter().zip(g.verify_maineq_exponents(&h, &x, &exponents)?) {
            tally.check(ok, || {
                format!("power-commutator identity fails at a = {} for {}, {}", a, h, x)
            });
        }
    }
    Ok(tally.finish(
        "petresco",
        format!("{} tuples, n = 1..6; {} pairs, a = -5..5", budget.tuples, budget.pairs),
    ))
}

pub fn lazard(t: &Target, _: &Budget) -> Result<SuiteResult> {
    let l = lazard_lie_ring_with(t.tables(), t.group.ring())?;
    let free = free_nilpotent_lie_of(t.group.basis())?;
    let mut tally = Tally::default();
    tally.check(l.is_antisymmetric(), || "bracket not alternating".into());
    tally.check(l.satisfies_jacobi(), || "Jacobi identity fails".into());
    tally.check(l.center_is_top_block(), || "centre is not the top weight".into());
    tally.check(compare_graded_lie(&l, &free), || {
        "differs from the free nilpotent Lie ring".into()
    });
    Ok(tally.finish("lazard", "equals the free nilpotent Lie ring".into()))
}

pub fn pf(t: &Target, _: &Budget) -> Result<SuiteResult> {
    let f = bilinear_from_lie(&free_nilpotent_lie_of(t.group.basis())?)?;
    let sols = pf_solution_space(&f)?;
    let mut tally = Tally::default();
    tally.check(f.is_full() && f.is_nondegenerate(), || {
        "bilinear map is degenerate".into()
    });
    tally.check(sols.len() == 1, || {
        format!("solution space has dimension {}", sols.len())
    });
    for s in &sols {
        tally.check(s.common_scalar().is_some() && s.satisfies(&f), || {
            "solution is not a scalar pair".into()
        });
    }
    Ok(tally.finish(
        "pf",
        format!(
            "dimension {} over {}x{} and {}x{} unknowns",
            sols.len(),
            f.domain_dimension(),
            f.domain_dimension(),
            f.codomain_dimension(),
            f.codomain_dimension()
        ),
    ))
}

/// `f^1(a, b) = a b` in the first top coordinate, `f^k = 0` otherwise.
pub fn product_deformation(base: &NilpotentGroup) -> Result<Deformation> {
    let n_c = base.basis().weight_range(base.class()).len();
    let mut forms = vec![BinomialForm::zero(2); n_c];
    forms[0] = BinomialForm::from_terms(2, [(vec![1, 1], BigInt::from(1))])?;
    let mut cocycles = vec![SymmetricCocycle::zero(n_c); base.rank()];
    cocycles[0] = SymmetricCocycle::polynomial(forms)?;
    Deformation::new(base, cocycles)
}

pub fn deformation(t: &Target, budget: &Budget) -> Result<SuiteResult> {
    let base = t.integers();
    let h = DeformedGroup::new(base.clone(), product_deformation(&base)?)?;
    let mut s = t.sampler("deformation");
    let mut tally = Tally::default();

    let f = h.deformation().cocycle(0);
    tally.check(
        check_cocycle(f, &Ring::Integers, 0, || RingElement::from(0))?.passed(),
        || "f(a, b) = ab is not a symmetric cocycle".into(),
    );

    let e = h.identity();
    for _ in 0..budget.triples {
        let mut pick = || h.lift(s.element(&base, 9));
        let (x, y, z) = (pick()?, pick()?, pick()?);
        tally.check(h.mul(&h.mul(&x, &y)?, &z)? == h.mul(&x, &h.mul(&y, &z)?)?, || {
            "deformed associativity fails".into()
        });
        tally.check(h.mul(&x, &e)? == x && h.mul(&e, &x)? == x, || {
            "deformed identity fails".into()
        });
        let xi = h.inv(&x)?;
        tally.check(h.mul(&x, &xi)? == e && h.mul(&xi, &x)? == e, || {
            "deformed inverse fails".into()
        });
    }

    // ψ − binom(·, 2) must be additive
    let split = coboundary_split_integers(f, &[])?;
    let delta = |n: i64| -> Result<BigInt> {
        let b2 = binom(&RingElement::from(n), 2)?;
        Ok(&split.psi(&BigInt::from(n))?[0] - b2.as_integer().expect("integer"))
    };
    for a in -12i64..=12 {
        for b in -12i64..=12 {
            tally.check(delta(a + b)? == delta(a)? + delta(b)?, || {
                format!("psi - binom(., 2) not additive at {}, {}", a, b)
            });
        }
    }

    let splittings = h
        .deformation()
        .cocycles()
        .iter()
        .map(|f| coboundary_split_integers(f, &[]))
        .collect::<Result<Vec<_>>>()?;
    let phi = iso_from_splittings(&h, splittings)?;
    let mut pairs = Vec::with_capacity(budget.pairs);
    for _ in 0..budget.pairs {
        pairs.push((h.lift(s.element(&base, 9))?, h.lift(s.element(&base, 9))?));
    }
    let verdict = phi.verify(&pairs);
    tally.check(verdict.is_ok(), || format!("{}", verdict.as_ref().unwrap_err()));
    tally.checks += pairs.len().saturating_sub(1);

    let k = assemble_extension_cocycle(&h);
    let m = k.quotient_dimension();
    for _ in 0..budget.triples.min(100) {
        let mut draw = || (0..m).map(|_| RingElement::from(s.int(9))).collect::<Vec<_>>();
        let (x, y, z) = (draw(), draw(), draw());
        tally.check(k.check_triple(&x, &y, &z)?, || {
            "extension cocycle identity fails".into()
        });
    }

    let flat = DeformedGroup::new(base.clone(), Deformation::zero(&base)?)?;
    for _ in 0..budget.pairs {
        let (x, y) = (s.element(&base, 9), s.element(&base, 9));
        let (dx, dy) = (flat.lift(x.clone())?, flat.lift(y.clone())?);
        let same = flat.mul(&dx, &dy)?.element() == &base.mul(&x, &y)? && flat.inv(&dx)?.element() == &base.inv(&x)?;
        tally.check(same, || format!("zero deformation differs at {}, {}", x, y));
    }

    Ok(tally.finish(
        "deformation",
        format!(
            "f = ab: {} triples, psi = binom(a,2) + hom, iso on {} pairs, zero deformation identical",
            budget.triples, budget.pairs
        ),
    ))
}

pub fn centralizer(t: &Target, budget: &Budget) -> Result<SuiteResult> {
    let g = t.integers();
    let c = g.class();
    let mut s = t.sampler("centralizer");
    let mut tally = Tally::default();
    for j in 0..g.rank() {
        let u = g.generator(j);
        let mut samples = Vec::with_capacity(budget.centralizer);
        for i in 0..budget.centralizer {
            if i % 2 == 0 {
                samples.push(s.element(&g, 9));
            } else {
                // u^a z with z in the top weight
                let top = g.basis().weight_range(c);
                let mut coords = vec![RingElement::from(0); g.dimension()];
                for p in top {
                    coords[p] = RingElement::from(s.int(9));
                }
                let z = g.element(coords)?;
                samples.push(g.mul(&g.pow_i64(&u, s.int(9))?, &z)?);
            }
        }
        let report = g.centralizer_structure_check(j, &samples)?;
        tally.check(report.passed(), || {
            format!("generator {}: {:?}", j + 1, report.failures)
        });
        tally.check(report.members >= samples.len() / 2, || {
            format!("generator {}: only {} members", j + 1, report.members)
        });
        tally.checks += report.kernel_dimensions.len() + report.samples;
    }
    Ok(tally.finish(
        "centralizer",
        format!("C(u_1j) = u_1j^Z . Z(G) for all {} generators", g.rank()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_numbers() {
        assert_eq!((1..=5).map(|n| witt(2, n)).collect::<Vec<_>>(), vec![2, 1, 2, 3, 6]);
        assert_eq!((1..=3).map(|n| witt(3, n)).collect::<Vec<_>>(), vec![3, 3, 8]);
    }

    #[test]
    fn small_run_passes() {
        let t = Target::new(2, 2, Ring::Integers, 1).unwrap();
        let report = run_all(&t, &Budget::uniform(5));
        assert!(report.passed(), "{}", report.table());
        assert_eq!(report.suites.len(), SUITES.len());
    }

    #[test]
    fn unknown_suite() {
        let t = Target::new(2, 2, Ring::Integers, 1).unwrap();
        assert!(run("nope", &t, &Budget::uniform(1)).is_none());
    }
}
