//! Mixed complexes (C, b, B), including Keller's cone of 1 − t.

use crate::error::Result;
use crate::exactalg::{Coefficients, Domain, SparseMatrix};
use crate::Scalar;

use super::ops::{CyclicTarget, OpCache, OperatorKind};

/// Degrees 0..=hi of a mixed complex. `d[n]` : M_n → M_{n−1} (d[0] is empty),
/// `b_op[n]` : M_n → M_{n+1}.
#[derive(Debug, Clone)]
pub struct MixedComplex {
    pub coeffs: Coefficients,
    pub dims: Vec<usize>,
    pub d: Vec<SparseMatrix<Scalar>>,
    pub b_op: Vec<SparseMatrix<Scalar>>,
}

impl MixedComplex {
    pub fn hi(&self) -> usize {
        self.dims.len() - 1
    }

    /// d_{n}∘d_{n+1} (rows: M_{n+1}), expected zero.
    pub fn d_squared(&self, n: usize) -> Result<SparseMatrix<Scalar>> {
        self.d[n + 1].mul(&self.coeffs, &self.d[n])
    }

    /// B∘B from M_n, expected zero.
    pub fn b_squared(&self, n: usize) -> Result<SparseMatrix<Scalar>> {
        self.b_op[n].mul(&self.coeffs, &self.b_op[n + 1])
    }

    /// dB + Bd on M_n, expected zero.
    pub fn anticommutator(&self, n: usize) -> Result<SparseMatrix<Scalar>> {
        let f = &self.coeffs;
        let db = self.b_op[n].mul(f, &self.d[n + 1])?;
        if n == 0 {
            return Ok(db);
        }
        let bd = self.d[n].mul(f, &self.b_op[n - 1])?;
        db.add(f, &bd)
    }

    /// Whether all three identities hold wherever the window allows.
    pub fn identities_hold(&self) -> Result<bool> {
        let hi = self.hi();
        for n in 0..hi.saturating_sub(1) {
            if !self.d_squared(n)?.is_zero() || !self.b_squared(n)?.is_zero() {
                return Ok(false);
            }
        }
        for n in 0..hi {
            if !self.anticommutator(n)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// (C, b, B) in degrees 0..=hi.
pub fn standard_mixed_complex(target: &CyclicTarget, hi: usize) -> Result<MixedComplex> {
    let mut ops = OpCache::new(target);
    let mut dims = Vec::new();
    let mut d = Vec::new();
    let mut b_op = Vec::new();
    for n in 0..=hi as i64 {
        dims.push(ops.dim(n)?);
        d.push(ops.get(OperatorKind::B, n)?);
        if n < hi as i64 {
            b_op.push(ops.get(OperatorKind::ConnesB, n)?);
        }
    }
    Ok(MixedComplex {
        coeffs: target.coeffs(),
        dims,
        d,
        b_op,
    })
}

/// M_n = C_n ⊕ C_{n−1} with d(x, y) = (bx + (1−t)y, −b′y) and B(x, y) = (0, Nx).
pub fn keller_mixed_complex(target: &CyclicTarget, hi: usize) -> Result<MixedComplex> {
    let f = target.coeffs();
    let mut ops = OpCache::new(target);
    let mut dims = Vec::new();
    let mut d = Vec::new();
    let mut b_op = Vec::new();
    let one_minus_t = |ops: &mut OpCache, n: i64| -> Result<SparseMatrix<Scalar>> {
        let t = ops.get(OperatorKind::Cyclic, n)?;
        SparseMatrix::identity(&f, t.rows()).sub(&f, &t)
    };
    for n in 0..=hi as i64 {
        let (c_n, c_n1, c_n2) = (ops.dim(n)?, ops.dim(n - 1)?, ops.dim(n - 2)?);
        dims.push(c_n + c_n1);
        let b = ops.get(OperatorKind::B, n)?;
        let omt = one_minus_t(&mut ops, n - 1)?;
        let bp = ops.get(OperatorKind::BPrime, n - 1)?.scale(&f, &f.from_i64(-1));
        d.push(SparseMatrix::block(
            &[c_n, c_n1],
            &[c_n1, c_n2],
            &[vec![Some(&b), None], vec![Some(&omt), Some(&bp)]],
        )?);
        if n < hi as i64 {
            let norm = ops.get(OperatorKind::Norm, n)?;
            let c_up = ops.dim(n + 1)?;
            b_op.push(SparseMatrix::block(&[c_n, c_n1], &[c_up, c_n], &[vec![None, Some(&norm)], vec![None, None]])?);
        }
    }
    Ok(MixedComplex {
        coeffs: f,
        dims,
        d,
        b_op,
    })
}
