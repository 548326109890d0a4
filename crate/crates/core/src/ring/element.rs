use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{same_vars, Poly, Vars};
use crate::{Error, Result};

/// Which binomial domain a value lives in.
#[derive(Clone, Debug)]
pub enum Ring {
    Integers,
    Rationals,
    /// `Q[vars]` with the variables in the given order.
    Polynomial(Vars),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Integers, Ring::Integers) | (Ring::Rationals, Ring::Rationals) => true,
            (Ring::Polynomial(a), Ring::Polynomial(b)) => same_vars(a, b),
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::Polynomial(v) => write!(f, "Q[{}]", v.join(",")),
        }
    }
}

impl Ring {
    /// `Q[names]`; names must be distinct.
    pub fn polynomial<I, S>(names: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Ring::Polynomial(names.into()))
    }

    pub fn zero(&self) -> RingElement {
        self.from_integer(BigInt::zero())
    }

    pub fn one(&self) -> RingElement {
        self.from_integer(BigInt::one())
    }

    /// The image of `n` under the unique homomorphism `Z -> R`.
    pub fn from_integer(&self, n: BigInt) -> RingElement {
        match self {
            Ring::Integers => RingElement::Int(n),
            Ring::Rationals => RingElement::Rat(BigRational::from_integer(n)),
            Ring::Polynomial(v) => RingElement::Poly(Poly::constant(v.clone(), BigRational::from_integer(n))),
        }
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_integer(BigInt::from(n))
    }

    pub fn from_rational(&self, q: BigRational) -> Result<RingElement> {
        match self {
            Ring::Integers => {
                if q.is_integer() {
                    Ok(RingElement::Int(q.to_integer()))
                } else {
                    Err(Error::NotInRing {
                        value: q.to_string(),
                        ring: self.to_string(),
                    })
                }
            }
            Ring::Rationals => Ok(RingElement::Rat(q)),
            Ring::Polynomial(v) => Ok(RingElement::Poly(Poly::constant(v.clone(), q))),
        }
    }

    /// The generator `vars[index]` of a polynomial ring.
    pub fn variable(&self, index: usize) -> Result<RingElement> {
        match self {
            Ring::Polynomial(v) if index < v.len() => Ok(RingElement::Poly(Poly::variable(v.clone(), index))),
            _ => Err(Error::InvalidIndex(alloc::format!("variable {} of {}", index, self))),
        }
    }

    pub fn variable_named(&self, name: &str) -> Result<RingElement> {
        match self {
            Ring::Polynomial(v) => match v.iter().position(|n| n == name) {
                Some(i) => self.variable(i),
                None => Err(Error::InvalidIndex(name.to_string())),
            },
            _ => Err(Error::InvalidIndex(name.to_string())),
        }
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        x.ring() == *self
    }

    /// Parses a decimal integer or a `p/q` rational.
    pub fn parse(&self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(s.to_string()));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(s.to_string()));
                }
                BigRational::new(parse_int(n)?, d)
            }
            None => BigRational::from_integer(parse_int(s)?),
        };
        self.from_rational(q)
    }
}

/// An exact value in one of the supported binomial domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement {
    Int(BigInt),
    Rat(BigRational),
    Poly(Poly),
}

impl From<i64> for RingElement {
    fn from(n: i64) -> Self {
        RingElement::Int(BigInt::from(n))
    }
}

impl From<BigInt> for RingElement {
    fn from(n: BigInt) -> Self {
        RingElement::Int(n)
    }
}

impl RingElement {
    pub fn ring(&self) -> Ring {
        match self {
            RingElement::Int(_) => Ring::Integers,
            RingElement::Rat(_) => Ring::Rationals,
            RingElement::Poly(p) => Ring::Polynomial(p.vars().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Int(n) => n.is_zero(),
            RingElement::Rat(q) => q.is_zero(),
            RingElement::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElement::Int(n) => n.is_one(),
            RingElement::Rat(q) => q.is_one(),
            RingElement::Poly(p) => p.as_constant().is_some_and(|c| c.is_one()),
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            RingElement::Int(n) => Some(n),
            _ => None,
        }
    }

    /// The value as a rational number, if it is a constant.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            RingElement::Int(n) => Some(BigRational::from_integer(n.clone())),
            RingElement::Rat(q) => Some(q.clone()),
            RingElement::Poly(p) => p.as_constant(),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            RingElement::Poly(p) => Some(p),
            _ => None,
        }
    }

    fn check_same(&self, other: &RingElement) -> Result<()> {
        match (self, other) {
            (RingElement::Int(_), RingElement::Int(_)) | (RingElement::Rat(_), RingElement::Rat(_)) => Ok(()),
            (RingElement::Poly(a), RingElement::Poly(b)) if same_vars(a.vars(), b.vars()) => Ok(()),
            _ => Err(Error::MixedRings),
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => RingElement::Int(a + b),
            (RingElement::Rat(a), RingElement::Rat(b)) => RingElement::Rat(a + b),
            (RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => RingElement::Int(a - b),
            (RingElement::Rat(a), RingElement::Rat(b)) => RingElement::Rat(a - b),
            (RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(a.sub(b)),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => RingElement::Int(a * b),
            (RingElement::Rat(a), RingElement::Rat(b)) => RingElement::Rat(a * b),
            (RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(a.mul(b)),
            _ => unreachable!(),
        })
    }

    /// `n · self` for an integer `n`.
    pub fn mul_int(&self, n: &BigInt) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Int(a * n),
            RingElement::Rat(a) => RingElement::Rat(a * BigRational::from_integer(n.clone())),
            RingElement::Poly(p) => RingElement::Poly(p.mul_int(n)),
        }
    }

    /// `self + n · other`, the inner step of every linear combination.
    pub(crate) fn add_mul_int(&mut self, other: &RingElement, n: &BigInt) {
        if n.is_zero() {
            return;
        }
        match (&mut *self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => *a += b * n,
            _ => {
                let t = other.mul_int(n);
                *self += &t;
            }
        }
    }

    /// `q · self`; over the integers the product must be integral.
    pub fn scale(&self, q: &BigRational) -> Result<RingElement> {
        match self {
            RingElement::Int(a) => {
                let p = BigRational::from_integer(a.clone()) * q;
                if p.is_integer() {
                    Ok(RingElement::Int(p.to_integer()))
                } else {
                    Err(Error::NotDivisible {
                        value: a.to_string(),
                        divisor: q.recip().to_string(),
                    })
                }
            }
            RingElement::Rat(a) => Ok(RingElement::Rat(a * q)),
            RingElement::Poly(p) => Ok(RingElement::Poly(p.scale(q))),
        }
    }

    /// Exact division by a nonzero integer.
    pub fn div_int_exact(&self, d: &BigInt) -> Result<RingElement> {
        assert!(!d.is_zero(), "division by zero");
        match self {
            RingElement::Int(a) => {
                let (quot, rem) = a.div_rem(d);
                if rem.is_zero() {
                    Ok(RingElement::Int(quot))
                } else {
                    Err(Error::NotDivisible {
                        value: a.to_string(),
                        divisor: d.to_string(),
                    })
                }
            }
            _ => self.scale(&BigRational::new(BigInt::one(), d.clone())),
        }
    }

    pub fn pow(&self, e: u32) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Int(num_traits::pow(a.clone(), e as usize)),
            RingElement::Rat(a) => RingElement::Rat(num_traits::pow(a.clone(), e as usize)),
            RingElement::Poly(p) => RingElement::Poly(p.pow(e)),
        }
    }

    /// The same value viewed over `Q` (integers become rationals).
    pub(crate) fn promote(&self) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Rat(BigRational::from_integer(a.clone())),
            other => other.clone(),
        }
    }

    /// Inverse of [`promote`](Self::promote) into `ring`.
    pub(crate) fn demote(self, ring: &Ring) -> Result<RingElement> {
        match (self, ring) {
            (RingElement::Rat(q), Ring::Integers) => ring.from_rational(q),
            (x, r) if r.contains(&x) => Ok(x),
            _ => Err(Error::MixedRings),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(a) => write!(f, "{}", a),
            RingElement::Rat(a) => write!(f, "{}", a),
            RingElement::Poly(p) => write!(f, "{}", p),
        }
    }
}

// Operator forms panic on mixed rings; the engine validates operands at its
// boundary and uses these internally. Use the `try_*` methods on unchecked
// input.

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring addition")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring subtraction")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("ring multiplication")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Int(-a),
            RingElement::Rat(a) => RingElement::Rat(-a),
            RingElement::Poly(p) => RingElement::Poly(p.neg()),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Int(-a),
            RingElement::Rat(a) => RingElement::Rat(-a),
            RingElement::Poly(p) => RingElement::Poly(p.neg()),
        }
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        match (&mut *self, rhs) {
            (RingElement::Int(a), RingElement::Int(b)) => *a += b,
            (RingElement::Rat(a), RingElement::Rat(b)) => *a += b,
            (RingElement::Poly(a), RingElement::Poly(b)) if same_vars(a.vars(), b.vars()) => a.add_assign(b),
            _ => panic!("ring addition: {}", Error::MixedRings),
        }
    }
}

impl SubAssign<&RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: &RingElement) {
        match (&mut *self, rhs) {
            (RingElement::Int(a), RingElement::Int(b)) => *a -= b,
            _ => *self += &(-rhs),
        }
    }
}
