//! dlog: K^M → Ω, and the maps φ: K^M_{n+1}(R, I) → Ω^n_{R,I}/dΩ^{n−1}_{R,I} and ψ back.

use crate::algebra::{exp_nilpotent, log_one_plus, FinAlgebra, RingElement, SplitNilpotentPair};
use crate::error::{Error, Result};
use crate::kahler::{omega, omega_mod_exact, DifferentialModule, ExactQuotient};
use crate::Scalar;

/// dr_1/r_1 ∧ … ∧ dr_n/r_n in generator coordinates of `w` (which must have degree n).
pub fn dlog_form(w: &DifferentialModule, symbol: &[RingElement]) -> Result<Vec<Scalar>> {
    let r = &w.algebra;
    if symbol.len() != w.degree {
        return Err(Error::DimensionMismatch(format!(
            "symbol of length {} in degree {}",
            symbol.len(),
            w.degree
        )));
    }
    let mut coeff = r.unit().clone();
    for (slot, x) in symbol.iter().enumerate() {
        let inv = r.inverse(x).ok_or(Error::NonUnitEntry(slot))?;
        coeff = r.mul(&coeff, &inv);
    }
    w.form(&coeff, symbol)
}

/// dlog of a symbol, in normal coordinates of Ω^n with n the symbol length.
pub fn dlog(r: &FinAlgebra, symbol: &[RingElement]) -> Result<Vec<Scalar>> {
    let w = omega(r, symbol.len())?;
    w.reduce(&dlog_form(&w, symbol)?)
}

/// First integer k ≤ N that is not invertible in the coefficients, N the nilpotency index.
pub(crate) fn denominator_obstruction(pair: &SplitNilpotentPair) -> Option<u64> {
    let c = pair.r.coeffs();
    (2..=pair.nilpotency_index as u64).find(|&k| !c.integer_invertible(k))
}

/// φ and ψ for a fixed pair and degree.
#[derive(Debug, Clone)]
pub struct GoodwillieMaps {
    pub pair: SplitNilpotentPair,
    pub n: usize,
    pub target: ExactQuotient,
}

impl GoodwillieMaps {
    pub fn new(pair: &SplitNilpotentPair, n: usize) -> Result<GoodwillieMaps> {
        if let Some(k) = denominator_obstruction(pair) {
            return Err(Error::NonInvertibleDenominator(k));
        }
        Ok(GoodwillieMaps {
            pair: pair.clone(),
            n,
            target: omega_mod_exact(pair, n)?,
        })
    }

    fn omega(&self) -> &DifferentialModule {
        &self.target.relative.absolute
    }

    fn in_one_plus_i(&self, x: &RingElement) -> bool {
        let r = &self.pair.r;
        self.pair.in_ideal(&r.sub(x, r.unit()))
    }

    /// φ{r_0, …, r_n} as a form in Ω^n_R generator coordinates: the first entry of (1+I)* is
    /// moved to the front (with the sign of the shift) and log(r_0)·dr_1/r_1∧… is written out.
    pub fn phi_form(&self, symbol: &[RingElement]) -> Result<Vec<Scalar>> {
        let r = &self.pair.r;
        if symbol.len() != self.n + 1 {
            return Err(Error::DimensionMismatch(format!("symbol of length {} for n = {}", symbol.len(), self.n)));
        }
        let mut inverses = Vec::with_capacity(symbol.len());
        for (slot, x) in symbol.iter().enumerate() {
            inverses.push(r.inverse(x).ok_or(Error::NonUnitEntry(slot))?);
        }
        let j = symbol.iter().position(|x| self.in_one_plus_i(x)).ok_or(Error::NoRelativeEntry)?;
        let mut coeff = log_one_plus(r, &r.sub(&symbol[j], r.unit()))?;
        if j % 2 == 1 {
            coeff = r.neg(&coeff);
        }
        let mut diffs = Vec::with_capacity(self.n);
        for (i, x) in symbol.iter().enumerate().filter(|(i, _)| *i != j) {
            coeff = r.mul(&coeff, &inverses[i]);
            diffs.push(x.clone());
        }
        self.omega().form(&coeff, &diffs)
    }

    /// φ of a symbol, in normal coordinates of Ω^n_{R,I}/dΩ^{n−1}_{R,I}.
    pub fn phi(&self, symbol: &[RingElement]) -> Result<Vec<Scalar>> {
        self.target.reduce(&self.phi_form(symbol)?)
    }

    /// ψ(r_0 dr_1∧…∧dr_n) = {e^{r_0 r_{m+1}⋯r_n}, e^{r_1}, …, e^{r_m}, r_{m+1}, …, r_n} where
    /// r_0, …, r_m lie in I and the remaining entries are units.
    pub fn psi(&self, r0: &RingElement, diffs: &[RingElement]) -> Result<Vec<RingElement>> {
        let r = &self.pair.r;
        if diffs.len() != self.n {
            return Err(Error::MalformedGenerator(format!("{} differentials for n = {}", diffs.len(), self.n)));
        }
        if !self.pair.in_ideal(r0) {
            return Err(Error::MalformedGenerator("the coefficient must lie in I".into()));
        }
        let m = diffs.iter().take_while(|x| self.pair.in_ideal(x)).count();
        if let Some(bad) = diffs[m..].iter().position(|x| !r.is_unit(x)) {
            return Err(Error::MalformedGenerator(format!(
                "entry {} is neither in I (before the units) nor a unit",
                m + bad + 1
            )));
        }
        let mut e = r0.clone();
        for x in &diffs[m..] {
            e = r.mul(&e, x);
        }
        let mut symbol = vec![exp_nilpotent(r, &e)?];
        for x in &diffs[..m] {
            symbol.push(exp_nilpotent(r, x)?);
        }
        symbol.extend(diffs[m..].iter().cloned());
        Ok(symbol)
    }
}

/// φ for a single symbol; builds the target quotient.
pub fn phi(pair: &SplitNilpotentPair, n: usize, symbol: &[RingElement]) -> Result<Vec<Scalar>> {
    GoodwillieMaps::new(pair, n)?.phi(symbol)
}

/// ψ for a single generator r_0 dr_1∧…∧dr_n.
pub fn psi(pair: &SplitNilpotentPair, n: usize, r0: &RingElement, diffs: &[RingElement]) -> Result<Vec<RingElement>> {
    GoodwillieMaps::new(pair, n)?.psi(r0, diffs)
}
