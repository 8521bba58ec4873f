//! Finite windows of chain complexes of free modules and their homology.

use num_traits::Zero;

use super::dense::echelon;
use super::domain::Domain;
use super::group::{FPAbelianGroup, Subquotient};
use super::matrix::{row_to_dense, SparseMatrix};
use super::sparse::field_rank;
use crate::error::{Error, Result};

/// Above this dimension, homology over a field is computed from sparse ranks only.
const DENSE_LIMIT: usize = 400;

/// Chain complex C_lo ← C_lo+1 ← … ← C_hi. `boundaries[k]` is ∂: C_{lo+k+1} → C_{lo+k},
/// stored with one row per source basis vector.
#[derive(Debug, Clone)]
pub struct GradedComplexSlice<D: Domain> {
    pub domain: D,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix<D::Elem>>,
}

impl<D: Domain> GradedComplexSlice<D> {
    pub fn new(domain: D, lo: i64, dims: Vec<usize>, boundaries: Vec<SparseMatrix<D::Elem>>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len() && !(dims.is_empty() && boundaries.is_empty()) {
            return Err(Error::DimensionMismatch("need one boundary between consecutive terms".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[k + 1] || b.cols() != dims[k] {
                return Err(Error::DimensionMismatch(format!("boundary {k} has shape {}x{}", b.rows(), b.cols())));
            }
        }
        Ok(GradedComplexSlice {
            domain,
            lo,
            dims,
            boundaries,
        })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// ∂_n : C_n → C_{n−1}.
    pub fn boundary(&self, n: i64) -> SparseMatrix<D::Elem> {
        if n - 1 < self.lo || n > self.hi() {
            SparseMatrix::zeros(self.dim(n), self.dim(n - 1))
        } else {
            self.boundaries[(n - 1 - self.lo) as usize].clone()
        }
    }

    pub fn check_at(&self, n: i64) -> Result<()> {
        let a = self.boundary(n + 1);
        let b = self.boundary(n);
        if !a.mul(&self.domain, &b)?.is_zero() {
            return Err(Error::NotAComplex { degree: n });
        }
        Ok(())
    }
}

/// Homology as a subquotient of C_n, so its elements can be manipulated.
pub fn homology_subquotient<D: Domain>(c: &GradedComplexSlice<D>, n: i64) -> Result<Subquotient<D>> {
    c.check_at(n)?;
    c.check_at(n - 1)?;
    let d = &c.domain;
    let dn = c.boundary(n);
    let dn1 = c.boundary(n + 1);
    let dim = c.dim(n);
    let cycles = if dn.cols() == 0 {
        (0..dim)
            .map(|i| {
                let mut r = vec![D::Elem::zero(); dim];
                r[i] = d.from_i64(1);
                r
            })
            .collect()
    } else {
        echelon(d, &dn.to_dense(), dn.cols(), true).kernel.unwrap()
    };
    let bounds: Vec<Vec<D::Elem>> = dn1.row_vecs().iter().map(|r| row_to_dense(r, dim)).collect();
    Subquotient::new(d, dim, &cycles, &bounds)
}

/// H_n of the slice.
pub fn complex_homology<D: Domain>(c: &GradedComplexSlice<D>, n: i64) -> Result<FPAbelianGroup<D>> {
    let d = &c.domain;
    if d.is_field() && c.dim(n) > DENSE_LIMIT {
        c.check_at(n)?;
        let r = homology_rank_field(c, n);
        return Ok(FPAbelianGroup::from_invariants(d, r, Vec::new()));
    }
    Ok(homology_subquotient(c, n)?.group)
}

/// dim H_n over a field by sparse rank counting (no composite check).
pub fn homology_rank_field<D: Domain>(c: &GradedComplexSlice<D>, n: i64) -> usize {
    let d = &c.domain;
    let dn = c.boundary(n);
    let dn1 = c.boundary(n + 1);
    let r0 = field_rank(d, dn.cols(), dn.into_rows());
    let r1 = field_rank(d, dn1.cols(), dn1.into_rows());
    c.dim(n) - r0 - r1
}
