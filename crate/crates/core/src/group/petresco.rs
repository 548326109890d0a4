//! Hall–Petresco words.
//!
//! For every `n`, `x_1^n ⋯ x_m^n = τ_1^n τ_2^{binom(n,2)} ⋯ τ_c^{binom(n,c)}`
//! with `τ_k ∈ Γ_k`. The words are obtained from this identity at
//! `n = 1, …, c`: at `n = k` every `binom(k, j)` with `j > k` vanishes, so
//! `τ_k` is determined by `τ_1 … τ_{k-1}`.

use alloc::vec::Vec;

use super::{GroupElement, NilpotentGroup};
use crate::ring::{binom, RingElement};
use crate::{Error, Result};

impl NilpotentGroup {
    /// `[τ_1(x̄), …, τ_c(x̄)]`.
    pub fn petresco_taus(&self, xs: &[GroupElement]) -> Result<Vec<GroupElement>> {
        for x in xs {
            self.check(x)?;
        }
        let mut taus: Vec<GroupElement> = Vec::with_capacity(self.class());
        for k in 1..=self.class() {
            let kk = self.ring().from_i64(k as i64);
            let powers = xs.iter().map(|x| self.pow(x, &kk)).collect::<Result<Vec<_>>>()?;
            let target = self.product(&powers)?;
            let mut lower = Vec::with_capacity(k);
            for (j, tau) in taus.iter().enumerate() {
                lower.push(self.pow(tau, &binom(&kk, (j + 1) as u32)?)?);
            }
            let prefix = self.product(&lower)?;
            taus.push(self.mul(&self.inv(&prefix)?, &target)?);
        }
        Ok(taus)
    }

    /// `τ_k(x̄)` for `1 <= k <= c`.
    pub fn petresco_tau(&self, k: usize, xs: &[GroupElement]) -> Result<GroupElement> {
        if k == 0 || k > self.class() {
            return Err(Error::OutOfClass { k, c: self.class() });
        }
        let mut taus = self.petresco_taus(xs)?;
        taus.truncate(k);
        Ok(taus.pop().expect("k >= 1"))
    }

    /// Right-hand side `Π_k τ_k^{binom(n, k)}` of the defining identity.
    pub fn petresco_expand(&self, taus: &[GroupElement], n: &RingElement) -> Result<GroupElement> {
        let factors = taus
            .iter()
            .enumerate()
            .map(|(j, tau)| self.pow(tau, &binom(n, (j + 1) as u32)?))
            .collect::<Result<Vec<_>>>()?;
        self.product(&factors)
    }

    /// Checks `[h, g^a] = [h, g]^a · Π_{m >= 2} τ_m(h^{-1} g^{-1} h, g)^{binom(a, m)}`.
    pub fn verify_maineq(&self, h: &GroupElement, g: &GroupElement, a: &RingElement) -> Result<bool> {
        Ok(self.verify_maineq_exponents(h, g, core::slice::from_ref(a))?[0])
    }

    /// [`Self::verify_maineq`] for several exponents, sharing the words `τ_m`.
    pub fn verify_maineq_exponents(
        &self,
        h: &GroupElement,
        g: &GroupElement,
        exponents: &[RingElement],
    ) -> Result<Vec<bool>> {
        let conj = self.conjugate(&self.inv(g)?, h)?;
        let taus = self.petresco_taus(&[conj, g.clone()])?;
        let hg = self.commutator(h, g)?;
        exponents
            .iter()
            .map(|a| {
                let lhs = self.commutator(h, &self.pow(g, a)?)?;
                let mut factors = Vec::with_capacity(taus.len());
                factors.push(self.pow(&hg, a)?);
                for (j, tau) in taus.iter().enumerate().skip(1) {
                    factors.push(self.pow(tau, &binom(a, (j + 1) as u32)?)?);
                }
                Ok(lhs == self.product(&factors)?)
            })
            .collect()
    }
}
