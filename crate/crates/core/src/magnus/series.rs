use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::ring::{binom_table, Ring, RingElement};
use crate::{Error, Result};

/// Index arithmetic for the words of length `<= c` over `r` letters.
///
/// Words are stored by length, and within one length in base-`r` order with
/// the first letter most significant, so that the index of a concatenation
/// `uv` is `offset(|uv|) + code(u) · r^|v| + code(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct WordLayout {
    pub r: usize,
    pub c: usize,
}

impl WordLayout {
    pub fn offset(&self, len: usize) -> usize {
        (0..len).map(|l| self.r.pow(l as u32)).sum()
    }

    pub fn count(&self, len: usize) -> usize {
        self.r.pow(len as u32)
    }

    pub fn total(&self) -> usize {
        self.offset(self.c + 1)
    }

    pub fn index(&self, word: &[usize]) -> usize {
        let code = word.iter().fold(0, |acc, &x| acc * self.r + x);
        self.offset(word.len()) + code
    }

    pub fn word(&self, index: usize) -> Vec<usize> {
        let mut len = 0;
        while self.offset(len + 1) <= index {
            len += 1;
        }
        let mut code = index - self.offset(len);
        let mut w = vec![0; len];
        for t in (0..len).rev() {
            w[t] = code % self.r;
            code /= self.r;
        }
        w
    }
}

/// An element of the free associative algebra on `x_1 … x_r`, truncated
/// above degree `c`.
///
/// Coefficients are held densely, one slot per word of length `<= c`; the
/// table view ([`terms`](Self::terms)) lists only nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    layout: WordLayout,
    ring: Ring,
    coeffs: Vec<RingElement>,
}

impl TruncatedSeries {
    pub fn zero(r: usize, c: usize, ring: &Ring) -> Self {
        let layout = WordLayout { r, c };
        TruncatedSeries {
            layout,
            ring: ring.clone(),
            coeffs: vec![ring.zero(); layout.total()],
        }
    }

    pub fn one(r: usize, c: usize, ring: &Ring) -> Self {
        let mut s = TruncatedSeries::zero(r, c, ring);
        s.coeffs[0] = ring.one();
        s
    }

    /// The degree-one monomial `x_i` (`i` counted from zero).
    pub fn generator(r: usize, c: usize, ring: &Ring, i: usize) -> Result<Self> {
        if i >= r {
            return Err(Error::InvalidIndex(alloc::format!("generator {}", i)));
        }
        let mut s = TruncatedSeries::zero(r, c, ring);
        if c >= 1 {
            s.coeffs[1 + i] = ring.one();
        }
        Ok(s)
    }

    /// Sums the given terms; words longer than `c` are discarded.
    pub fn from_terms<I>(r: usize, c: usize, ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, RingElement)>,
    {
        let mut s = TruncatedSeries::zero(r, c, ring);
        for (w, x) in terms {
            if !ring.contains(&x) {
                return Err(Error::MixedRings);
            }
            if w.iter().any(|&l| l >= r) {
                return Err(Error::InvalidIndex(alloc::format!("{:?}", w)));
            }
            if w.len() <= c {
                let i = s.layout.index(&w);
                s.coeffs[i] += &x;
            }
        }
        Ok(s)
    }

    pub(crate) fn from_dense(r: usize, c: usize, ring: &Ring, coeffs: Vec<RingElement>) -> Self {
        let layout = WordLayout { r, c };
        debug_assert_eq!(coeffs.len(), layout.total());
        TruncatedSeries {
            layout,
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn rank(&self) -> usize {
        self.layout.r
    }

    pub fn class(&self) -> usize {
        self.layout.c
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub(crate) fn dense(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// The coefficient of `word`; zero for words longer than `c`.
    pub fn coeff(&self, word: &[usize]) -> RingElement {
        if word.len() > self.layout.c || word.iter().any(|&l| l >= self.layout.r) {
            return self.ring.zero();
        }
        self.coeffs[self.layout.index(word)].clone()
    }

    /// Nonzero coefficients keyed by word, shortest words first.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &RingElement)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (self.layout.word(i), x))
    }

    /// Coefficients of the words of length `degree`, in layout order.
    pub fn homogeneous(&self, degree: usize) -> &[RingElement] {
        let start = self.layout.offset(degree);
        &self.coeffs[start..start + self.layout.count(degree)]
    }

    /// Smallest positive degree carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        (1..=self.layout.c).find(|&d| self.homogeneous(d).iter().any(|x| !x.is_zero()))
    }

    pub fn is_group_like(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_group_like() && self.coeffs[1..].iter().all(RingElement::is_zero)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.layout != other.layout {
            return Err(Error::ShapeMismatch(alloc::format!(
                "series over ({}, {}) and ({}, {})",
                self.layout.r,
                self.layout.c,
                other.layout.r,
                other.layout.c
            )));
        }
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, x: &RingElement) -> Result<Self> {
        if !self.ring.contains(x) {
            return Err(Error::MixedRings);
        }
        let coeffs = self.coeffs.iter().map(|c| c * x).collect();
        Ok(TruncatedSeries::from_dense(
            self.layout.r,
            self.layout.c,
            &self.ring,
            coeffs,
        ))
    }

    /// Product with every word longer than `c` dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let WordLayout { r, c } = self.layout;
        let mut out = TruncatedSeries::zero(r, c, &self.ring);
        let mut offsets = Vec::with_capacity(c + 2);
        let mut powers = Vec::with_capacity(c + 1);
        for l in 0..=c + 1 {
            offsets.push(self.layout.offset(l));
            if l <= c {
                powers.push(r.pow(l as u32));
            }
        }
        for i in 0..=c {
            for code_u in 0..powers[i] {
                let a = &self.coeffs[offsets[i] + code_u];
                if a.is_zero() {
                    continue;
                }
                for j in 0..=c - i {
                    let base = offsets[i + j] + code_u * powers[j];
                    let rhs = &other.coeffs[offsets[j]..offsets[j] + powers[j]];
                    for (code_v, b) in rhs.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let p = a * b;
                        out.coeffs[base + code_v] += &p;
                    }
                }
            }
        }
        out
    }

    /// `s^a = Σ_{k <= c} binom(a, k) (s - 1)^k` for group-like `s`.
    pub fn pow(&self, a: &RingElement) -> Result<Self> {
        if !self.is_group_like() {
            return Err(Error::NotGroupLike);
        }
        if !self.ring.contains(a) {
            return Err(Error::MixedRings);
        }
        let c = self.layout.c;
        let binoms = binom_table(a, c as u32)?;
        let mut aug = self.clone();
        aug.coeffs[0] = self.ring.zero();
        let mut out = TruncatedSeries::one(self.layout.r, c, &self.ring);
        let mut power = aug.clone();
        for (k, b) in binoms.iter().enumerate().skip(1) {
            if k > 1 {
                power = power.mul_unchecked(&aug);
            }
            if b.is_zero() {
                continue;
            }
            for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                if !p.is_zero() {
                    *o += &(b * p);
                }
            }
        }
        Ok(out)
    }

    /// `Σ_k (-1)^k (s - 1)^k`, the inverse of a group-like series.
    pub fn group_like_inverse(&self) -> Result<Self> {
        self.pow(&self.ring.from_integer(BigInt::from(-1)))
    }

    /// `self · other − other · self`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Human-readable form such as `1 + x1 - x1x2`.
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (w, x) in self.terms() {
            let mono: String = if w.is_empty() {
                String::new()
            } else {
                w.iter().map(|l| alloc::format!("x{}", l + 1)).collect()
            };
            let coeff = alloc::format!("{}", x);
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if x.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&alloc::format!("({})*{}", coeff, mono));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
