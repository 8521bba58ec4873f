//! Row-major sparse matrices. Row i lists the nonzero entries (column, value) sorted by column.
//! Throughout the crate a linear map is stored with row i holding the image of source basis
//! vector i, so composition "f then g" is the product `f · g`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::domain::Domain;
use crate::error::{Error, Result};

pub type SparseRow<T> = Vec<(usize, T)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow<T>>,
}

/// Integer matrices, the input type of the Smith form and of group presentations.
pub type IntMatrix = SparseMatrix<BigInt>;

/// `dst + c·src`, dropping cancellations.
pub fn axpy<D: Domain>(d: &D, dst: &[(usize, D::Elem)], c: &D::Elem, src: &[(usize, D::Elem)]) -> SparseRow<D::Elem> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            let v = d.mul(c, &src[j].1);
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = d.add(&dst[i].1, &d.mul(c, &src[j].1));
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts and merges a list of (column, value) terms.
pub fn normalize_row<D: Domain>(d: &D, mut terms: Vec<(usize, D::Elem)>) -> SparseRow<D::Elem> {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseRow<D::Elem> = Vec::with_capacity(terms.len());
    for (c, v) in terms {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = d.add(&last.1, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

pub fn dense_to_row<T: Clone + Zero>(v: &[T]) -> SparseRow<T> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn row_to_dense<T: Clone + Zero>(row: &[(usize, T)], n: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

impl<T: Clone + Zero + PartialEq> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds from rows that are already sorted, merged and free of zeros.
    pub fn from_sorted_rows(cols: usize, data: Vec<SparseRow<T>>) -> Result<Self> {
        for row in &data {
            for w in row.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(Error::InvalidArgument("row not sorted".into()));
                }
            }
            if row.iter().any(|(c, v)| *c >= cols || v.is_zero()) {
                return Err(Error::IndexOutOfRange("entry outside matrix or explicit zero".into()));
            }
        }
        Ok(SparseMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_dense(m: &[Vec<T>], cols: usize) -> Self {
        SparseMatrix {
            rows: m.len(),
            cols,
            data: m.iter().map(|r| dense_to_row(r)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.data[i]
    }
    pub fn row_vecs(&self) -> &[SparseRow<T>] {
        &self.data
    }
    pub fn into_rows(self) -> Vec<SparseRow<T>> {
        self.data
    }
    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.data[i].binary_search_by_key(&j, |t| t.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        self.data.iter().map(|r| row_to_dense(r, self.cols)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Rows and columns selected (and renumbered) by the given index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: SparseRow<T> = self.data[r]
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, v)| (pos[*c], v.clone()))
                    .collect();
                row.sort_by_key(|t| t.0);
                row
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn push_row(&mut self, row: SparseRow<T>) {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        self.data.push(row);
        self.rows += 1;
    }

    pub fn map<U: Clone + Zero + PartialEq>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, f(v)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }
}

impl<T: Clone + Zero + PartialEq> SparseMatrix<T> {
    pub fn identity<D: Domain<Elem = T>>(_d: &D, n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, _d.from_i64(1))]).collect(),
        }
    }

    pub fn from_triplets<D: Domain<Elem = T>>(d: &D, rows: usize, cols: usize, triplets: Vec<(usize, usize, T)>) -> Result<Self> {
        let mut per_row: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::IndexOutOfRange(format!("({i},{j}) in {rows}x{cols}")));
            }
            per_row[i].push((j, v));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            data: per_row.into_iter().map(|r| normalize_row(d, r)).collect(),
        })
    }

    pub fn from_unsorted_rows<D: Domain<Elem = T>>(d: &D, cols: usize, rows: Vec<Vec<(usize, T)>>) -> Self {
        SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().map(|r| normalize_row(d, r)).collect(),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul<D: Domain<Elem = T>>(&self, d: &D, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().map(|r| vec_mul(d, r, other)).collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn add<D: Domain<Elem = T>>(&self, d: &D, other: &Self) -> Result<Self> {
        self.lin_comb(d, &d.from_i64(1), other)
    }

    pub fn sub<D: Domain<Elem = T>>(&self, d: &D, other: &Self) -> Result<Self> {
        self.lin_comb(d, &d.from_i64(-1), other)
    }

    /// `self + c·other`.
    pub fn lin_comb<D: Domain<Elem = T>>(&self, d: &D, c: &T, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(d, a, c, b))
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale<D: Domain<Elem = T>>(&self, d: &D, c: &T) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(j, v)| (*j, d.mul(c, v)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    /// Block matrix with `blocks[i][j]` of size rows_i × cols_j; `None` is a zero block.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Self>>]) -> Result<Self> {
        let col_off: Vec<usize> = col_sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let total_cols: usize = col_sizes.iter().sum();
        let mut data = Vec::new();
        for (bi, &rs) in row_sizes.iter().enumerate() {
            for r in 0..rs {
                let mut row = Vec::new();
                for (bj, &cs) in col_sizes.iter().enumerate() {
                    if let Some(m) = blocks[bi][bj] {
                        if m.rows != rs || m.cols != cs {
                            return Err(Error::DimensionMismatch(format!(
                                "block ({bi},{bj}) is {}x{}, expected {rs}x{cs}",
                                m.rows, m.cols
                            )));
                        }
                        row.extend(m.data[r].iter().map(|(c, v)| (c + col_off[bj], v.clone())));
                    }
                }
                data.push(row);
            }
        }
        Ok(SparseMatrix {
            rows: data.len(),
            cols: total_cols,
            data,
        })
    }
}

/// Row vector times matrix.
pub fn vec_mul<D: Domain>(d: &D, v: &[(usize, D::Elem)], m: &SparseMatrix<D::Elem>) -> SparseRow<D::Elem> {
    match v.len() {
        0 => Vec::new(),
        1 => {
            let (i, c) = &v[0];
            m.row(*i)
                .iter()
                .map(|(j, x)| (*j, d.mul(c, x)))
                .filter(|(_, x)| !x.is_zero())
                .collect()
        }
        _ => {
            let mut terms = Vec::new();
            for (i, c) in v {
                for (j, x) in m.row(*i) {
                    terms.push((*j, d.mul(c, x)));
                }
            }
            normalize_row(d, terms)
        }
    }
}

/// Dense row vector times sparse matrix, dense result.
pub fn dense_vec_mul<D: Domain>(d: &D, v: &[D::Elem], m: &SparseMatrix<D::Elem>) -> Vec<D::Elem> {
    let mut out = vec![D::Elem::zero(); m.cols()];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, x) in m.row(i) {
            out[*j] = d.add(&out[*j], &d.mul(c, x));
        }
    }
    out
}
