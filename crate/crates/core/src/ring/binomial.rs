//! The binomial operator and integer combinations of binomial products.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Poly, Ring, RingElement, Vars};
use crate::{Error, Result};

/// `k!` as a big integer.
pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The unique `x` with `k! · x = a (a-1) ⋯ (a-k+1)`.
pub fn binom(a: &RingElement, k: u32) -> Result<RingElement> {
    match a {
        RingElement::Int(n) => {
            // after step i the accumulator is binom(n, i + 1), an integer
            let mut acc = BigInt::one();
            for i in 0..k {
                acc *= n - BigInt::from(i);
                let (q, r) = acc.div_rem(&BigInt::from(i + 1));
                if !r.is_zero() {
                    return Err(Error::NonBinomial {
                        value: n.to_string(),
                        k,
                    });
                }
                acc = q;
            }
            Ok(RingElement::Int(acc))
        }
        RingElement::Rat(q) => {
            let mut acc = BigRational::one();
            for i in 0..k {
                acc = acc * (q - BigRational::from_integer(i.into())) / BigRational::from_integer((i + 1).into());
            }
            Ok(RingElement::Rat(acc))
        }
        RingElement::Poly(p) => {
            let vars = p.vars().clone();
            let mut falling = Poly::constant(vars.clone(), BigRational::one());
            for i in 0..k {
                let shifted = p.sub(&Poly::constant(vars.clone(), BigRational::from_integer(i.into())));
                falling = falling.mul(&shifted);
            }
            Ok(RingElement::Poly(
                falling.scale(&BigRational::new(BigInt::one(), factorial(k))),
            ))
        }
    }
}

/// All of `binom(a, 0), …, binom(a, max_k)`.
pub fn binom_table(a: &RingElement, max_k: u32) -> Result<Vec<RingElement>> {
    let ring = a.ring();
    let mut out = Vec::with_capacity(max_k as usize + 1);
    out.push(ring.one());
    let mut falling = ring.one();
    for k in 1..=max_k {
        let shift = a - &ring.from_integer(BigInt::from(k - 1));
        falling = &falling * &shift;
        let value = falling.div_int_exact(&factorial(k)).map_err(|_| Error::NonBinomial {
            value: a.to_string(),
            k,
        })?;
        out.push(value);
    }
    Ok(out)
}

/// An integer linear combination of binomial products
/// `binom(v_1, r_1) ⋯ binom(v_n, r_n)`, keyed by the degree vector `(r_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BinomialForm {
    arity: usize,
    coeffs: BTreeMap<Vec<u32>, BigInt>,
}

impl BinomialForm {
    pub fn zero(arity: usize) -> Self {
        BinomialForm {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut f = BinomialForm::zero(arity);
        for (k, c) in terms {
            f.add_term(k, c)?;
        }
        Ok(f)
    }

    pub fn add_term(&mut self, degrees: Vec<u32>, c: BigInt) -> Result<()> {
        if degrees.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: degrees.len(),
            });
        }
        let slot = self.coeffs.entry(degrees).or_insert_with(BigInt::zero);
        *slot += c;
        self.coeffs.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, degrees: &[u32]) -> BigInt {
        self.coeffs.get(degrees).cloned().unwrap_or_default()
    }

    fn max_degree(&self, var: usize) -> u32 {
        self.coeffs.keys().map(|k| k[var]).max().unwrap_or(0)
    }

    /// `Σ c · Π binom(point_i, r_i)`, evaluated in `ring`.
    pub fn eval_in(&self, ring: &Ring, point: &[RingElement]) -> Result<RingElement> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        if point.iter().any(|p| !ring.contains(p)) {
            return Err(Error::MixedRings);
        }
        let tables = point
            .iter()
            .enumerate()
            .map(|(i, p)| binom_table(p, self.max_degree(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = ring.zero();
        for (degrees, c) in &self.coeffs {
            let mut term = ring.from_integer(c.clone());
            for (i, &r) in degrees.iter().enumerate() {
                if r > 0 {
                    term = &term * &tables[i][r as usize];
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// The same function written in the monomial basis of `Q[vars]`.
    pub fn to_poly(&self, vars: Vars) -> Result<Poly> {
        if vars.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: vars.len(),
            });
        }
        let ring = Ring::Polynomial(vars.clone());
        let point = (0..self.arity).map(|i| ring.variable(i)).collect::<Result<Vec<_>>>()?;
        match self.eval_in(&ring, &point)? {
            RingElement::Poly(p) => Ok(p),
            _ => unreachable!(),
        }
    }
}

/// Evaluates a binomial-basis form at `point`. The ring is taken from the
/// point; a nullary form evaluates over the integers.
pub fn eval_binomial_form(form: &BinomialForm, point: &[RingElement]) -> Result<RingElement> {
    let ring = point.first().map(RingElement::ring).unwrap_or(Ring::Integers);
    form.eval_in(&ring, point)
}
