//! Terminating exp/log series for nilpotent elements.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FinAlgebra, RingElement};
use crate::error::{Error, Result};

/// Smallest k ≥ 1 with x^k = 0, or None if x is not nilpotent.
pub fn nilpotency_order(r: &FinAlgebra, x: &RingElement) -> Option<usize> {
    let mut pow = x.clone();
    for k in 1..=r.dim() + 1 {
        if r.is_zero(&pow) {
            return Some(k);
        }
        pow = r.mul(&pow, x);
    }
    None
}

fn order_checked(r: &FinAlgebra, x: &RingElement) -> Result<usize> {
    let n = nilpotency_order(r, x).ok_or(Error::NotNilpotent)?;
    if let Some(k) = (2..n as u64).find(|&k| !r.coeffs().integer_invertible(k)) {
        return Err(Error::NonInvertibleDenominator(k));
    }
    Ok(n)
}

fn inv_int(r: &FinAlgebra, k: u64) -> Result<BigRational> {
    r.coeffs()
        .from_rational(&BigRational::new(BigInt::from(1), BigInt::from(k)))
}

/// log(1 + x) = x − x²/2 + x³/3 − … for nilpotent x.
pub fn log_one_plus(r: &FinAlgebra, x: &RingElement) -> Result<RingElement> {
    let n = order_checked(r, x)?;
    let mut out = r.zero();
    let mut pow = x.clone();
    for k in 1..n {
        let c = inv_int(r, k as u64)?;
        let c = if k % 2 == 0 { -c } else { c };
        out = r.add(&out, &r.scale(&r.coeffs().from_rational(&c)?, &pow));
        pow = r.mul(&pow, x);
    }
    Ok(out)
}

/// exp(x) = 1 + x + x²/2! + … for nilpotent x.
pub fn exp_nilpotent(r: &FinAlgebra, x: &RingElement) -> Result<RingElement> {
    let n = order_checked(r, x)?;
    let mut out = r.unit().clone();
    let mut term = r.unit().clone();
    for k in 1..n {
        term = r.scale(&inv_int(r, k as u64)?, &r.mul(&term, x));
        out = r.add(&out, &term);
    }
    Ok(out)
}
