//! Simplicial and cyclic operators on tensor powers R^{⊗n+1}, as matrices on the tuple basis.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{FinAlgebra, SplitNilpotentPair};
use crate::error::{Error, Result};
use crate::exactalg::capacity;
use crate::exactalg::{Coefficients, Domain, SparseMatrix, SparseRow};
use crate::Scalar;

/// R^{⊗n+1} with basis the (n+1)-tuples of algebra basis indices, first index most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSpace {
    pub degree: usize,
    pub factor_dim: usize,
    pub dim: usize,
}

impl TensorSpace {
    pub fn new(r: &FinAlgebra, n: usize) -> Result<TensorSpace> {
        let total = (r.dim() as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
        capacity::check_tensor("tensor power", total)?;
        Ok(TensorSpace {
            degree: n,
            factor_dim: r.dim(),
            dim: total as usize,
        })
    }

    pub fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &i| acc * self.factor_dim + i)
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree + 1];
        for slot in t.iter_mut().rev() {
            *slot = idx % self.factor_dim;
            idx /= self.factor_dim;
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// d^i : degree n → n−1, multiplying factors i and i+1 (the last face wraps around).
    Face(usize),
    /// s^i : degree n → n+1, inserting 1 after factor i.
    Degeneracy(usize),
    /// t = (−1)^n·(move the last factor to the front).
    Cyclic,
    /// N = Σ t^k.
    Norm,
    B,
    BPrime,
    ConnesB,
    /// s^{n+1}: insert 1 in front.
    ExtraDegeneracy,
}

impl OperatorKind {
    fn target_degree(&self, n: usize) -> Result<usize> {
        match self {
            OperatorKind::Face(_) | OperatorKind::B | OperatorKind::BPrime => {
                n.checked_sub(1).ok_or_else(|| Error::IndexOutOfRange(format!("{self:?} needs degree ≥ 1")))
            }
            OperatorKind::Degeneracy(_) | OperatorKind::ConnesB | OperatorKind::ExtraDegeneracy => Ok(n + 1),
            OperatorKind::Cyclic | OperatorKind::Norm => Ok(n),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub kind: OperatorKind,
    pub source: TensorSpace,
    pub target: TensorSpace,
    /// Row k is the image of basis tuple k.
    pub matrix: SparseMatrix<Scalar>,
}

type Combo = BTreeMap<usize, Scalar>;

fn add_term(f: &Coefficients, acc: &mut Combo, k: usize, c: &Scalar) {
    let e = acc.entry(k).or_insert_with(|| Scalar::from_integer(0.into()));
    *e = f.add(e, c);
}

fn finish(f: &Coefficients, acc: Combo) -> SparseRow<Scalar> {
    acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
}

/// Generates operator rows tuple by tuple.
pub(crate) struct OpBuilder<'a> {
    pub r: &'a FinAlgebra,
    f: Coefficients,
    unit: Vec<(usize, Scalar)>,
}

impl<'a> OpBuilder<'a> {
    pub fn new(r: &'a FinAlgebra) -> Self {
        let unit = r
            .unit()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        OpBuilder { r, f: r.coeffs(), unit }
    }

    fn sign(&self, neg: bool) -> Scalar {
        self.f.from_i64(if neg { -1 } else { 1 })
    }

    /// d^i of one tuple, accumulated with coefficient c.
    fn face_into(&self, sp: &TensorSpace, t: &[usize], i: usize, c: &Scalar, acc: &mut Combo) {
        let n = t.len() - 1;
        let out = TensorSpace {
            degree: n - 1,
            factor_dim: sp.factor_dim,
            dim: 0,
        };
        if i < n {
            for (k, v) in self.r.mul_basis(t[i], t[i + 1]) {
                let mut u: Vec<usize> = Vec::with_capacity(n);
                u.extend_from_slice(&t[..i]);
                u.push(*k);
                u.extend_from_slice(&t[i + 2..]);
                add_term(&self.f, acc, out.index(&u), &self.f.mul(c, v));
            }
        } else {
            for (k, v) in self.r.mul_basis(t[n], t[0]) {
                let mut u: Vec<usize> = Vec::with_capacity(n);
                u.push(*k);
                u.extend_from_slice(&t[1..n]);
                add_term(&self.f, acc, out.index(&u), &self.f.mul(c, v));
            }
        }
    }

    fn insert_unit_into(&self, t: &[usize], pos: usize, c: &Scalar, acc: &mut Combo, out: &TensorSpace) {
        for (k, v) in &self.unit {
            let mut u = t.to_vec();
            u.insert(pos, *k);
            add_term(&self.f, acc, out.index(&u), &self.f.mul(c, v));
        }
    }

    /// t^k of a tuple: (sign, rotated tuple).
    fn rotate(&self, t: &[usize], k: usize) -> (bool, Vec<usize>) {
        let n = t.len() - 1;
        let len = t.len();
        let u: Vec<usize> = (0..len).map(|j| t[(j + len - k % len) % len]).collect();
        (n % 2 == 1 && k % 2 == 1, u)
    }

    pub fn row(&self, kind: OperatorKind, sp: &TensorSpace, idx: usize) -> SparseRow<Scalar> {
        let t = sp.tuple(idx);
        let n = sp.degree;
        let f = &self.f;
        let one = f.from_i64(1);
        let mut acc = Combo::new();
        let up = TensorSpace {
            degree: n + 1,
            factor_dim: sp.factor_dim,
            dim: 0,
        };
        match kind {
            OperatorKind::Face(i) => self.face_into(sp, &t, i, &one, &mut acc),
            OperatorKind::Degeneracy(i) => self.insert_unit_into(&t, i + 1, &one, &mut acc, &up),
            OperatorKind::ExtraDegeneracy => self.insert_unit_into(&t, 0, &one, &mut acc, &up),
            OperatorKind::Cyclic => {
                let (neg, u) = self.rotate(&t, 1);
                add_term(f, &mut acc, sp.index(&u), &self.sign(neg));
            }
            OperatorKind::Norm => {
                for k in 0..=n {
                    let (neg, u) = self.rotate(&t, k);
                    add_term(f, &mut acc, sp.index(&u), &self.sign(neg));
                }
            }
            OperatorKind::B | OperatorKind::BPrime => {
                let last = if kind == OperatorKind::B { n } else { n - 1 };
                for i in 0..=last {
                    self.face_into(sp, &t, i, &self.sign(i % 2 == 1), &mut acc);
                }
            }
            OperatorKind::ConnesB => {
                // (1 − t_{n+1})·s^{n+1}·N_n
                for k in 0..=n {
                    let (neg, u) = self.rotate(&t, k);
                    let c = self.sign(neg);
                    let mut ext = Combo::new();
                    self.insert_unit_into(&u, 0, &c, &mut ext, &up);
                    for (j, v) in ext {
                        add_term(f, &mut acc, j, &v);
                        let (neg2, w) = self.rotate(&up.tuple(j), 1);
                        let v2 = if neg2 { v } else { f.neg(&v) };
                        add_term(f, &mut acc, up.index(&w), &v2);
                    }
                }
            }
        }
        finish(f, acc)
    }

    pub fn matrix(&self, kind: OperatorKind, n: usize) -> Result<SparseMatrix<Scalar>> {
        let sp = TensorSpace::new(self.r, n)?;
        let m = kind.target_degree(n)?;
        let tgt = TensorSpace::new(self.r, m)?;
        let rows: Vec<SparseRow<Scalar>> = (0..sp.dim).map(|k| self.row(kind, &sp, k)).collect();
        let nnz: usize = rows.iter().map(|r| r.len()).sum();
        capacity::check_nnz("operator matrix", nnz)?;
        SparseMatrix::from_sorted_rows(tgt.dim, rows)
    }
}

/// The matrix of `kind` on degree-n tuples.
pub fn operator(r: &FinAlgebra, n: usize, kind: OperatorKind) -> Result<OperatorMatrix> {
    match kind {
        OperatorKind::Face(i) if i > n || n == 0 => {
            return Err(Error::IndexOutOfRange(format!("face {i} in degree {n}")));
        }
        OperatorKind::Degeneracy(i) if i > n => {
            return Err(Error::IndexOutOfRange(format!("degeneracy {i} in degree {n}")));
        }
        _ => {}
    }
    let target = TensorSpace::new(r, kind.target_degree(n)?)?;
    let source = TensorSpace::new(r, n)?;
    let matrix = OpBuilder::new(r).matrix(kind, n)?;
    Ok(OperatorMatrix {
        kind,
        source,
        target,
        matrix,
    })
}

/// B: degree n → n+1.
pub fn connes_b(r: &FinAlgebra, n: usize) -> Result<OperatorMatrix> {
    operator(r, n, OperatorKind::ConnesB)
}

/// What a complex is built from: an algebra, or the relative part of a split pair.
#[derive(Debug, Clone)]
pub enum CyclicTarget {
    Absolute(FinAlgebra),
    Relative(SplitNilpotentPair),
}

impl From<FinAlgebra> for CyclicTarget {
    fn from(r: FinAlgebra) -> Self {
        CyclicTarget::Absolute(r)
    }
}

impl From<SplitNilpotentPair> for CyclicTarget {
    fn from(p: SplitNilpotentPair) -> Self {
        CyclicTarget::Relative(p)
    }
}

impl CyclicTarget {
    pub fn algebra(&self) -> &FinAlgebra {
        match self {
            CyclicTarget::Absolute(r) => r,
            CyclicTarget::Relative(p) => &p.r,
        }
    }

    pub fn coeffs(&self) -> Coefficients {
        self.algebra().coeffs()
    }

    /// Tuples spanning the degree-n term: all of them, or for a pair the kernel of
    /// R^{⊗n+1} → S^{⊗n+1}, spanned by tuples with at least one factor in I.
    pub fn basis(&self, n: usize) -> Result<Vec<usize>> {
        let sp = TensorSpace::new(self.algebra(), n)?;
        Ok(match self {
            CyclicTarget::Absolute(_) => (0..sp.dim).collect(),
            CyclicTarget::Relative(p) => {
                let ideal = p.ideal_indices();
                (0..sp.dim)
                    .filter(|&k| sp.tuple(k).iter().any(|i| ideal.contains(i)))
                    .collect()
            }
        })
    }
}

/// Operator matrices restricted to the target's bases, cached by degree.
pub(crate) struct OpCache<'a> {
    target: &'a CyclicTarget,
    builder: OpBuilder<'a>,
    bases: BTreeMap<usize, Vec<usize>>,
    mats: BTreeMap<(usize, u8), SparseMatrix<Scalar>>,
}

impl<'a> OpCache<'a> {
    pub fn new(target: &'a CyclicTarget) -> Self {
        OpCache {
            target,
            builder: OpBuilder::new(target.algebra()),
            bases: BTreeMap::new(),
            mats: BTreeMap::new(),
        }
    }

    pub fn coeffs(&self) -> Coefficients {
        self.target.coeffs()
    }

    pub fn dim(&mut self, n: i64) -> Result<usize> {
        if n < 0 {
            return Ok(0);
        }
        Ok(self.basis(n as usize)?.len())
    }

    fn basis(&mut self, n: usize) -> Result<&Vec<usize>> {
        if !self.bases.contains_key(&n) {
            let b = self.target.basis(n)?;
            self.bases.insert(n, b);
        }
        Ok(&self.bases[&n])
    }

    /// Operator from degree n, restricted; degree −1 or invalid requests give a zero matrix.
    pub fn get(&mut self, kind: OperatorKind, n: i64) -> Result<SparseMatrix<Scalar>> {
        let tag = match kind {
            OperatorKind::B => 0u8,
            OperatorKind::BPrime => 1,
            OperatorKind::Cyclic => 2,
            OperatorKind::Norm => 3,
            OperatorKind::ConnesB => 4,
            _ => return Err(Error::InvalidArgument("only b, b', t, N and B are cached".into())),
        };
        let m = match kind {
            OperatorKind::B | OperatorKind::BPrime => n - 1,
            OperatorKind::ConnesB => n + 1,
            _ => n,
        };
        if n < 0 || m < 0 {
            return Ok(SparseMatrix::zeros(self.dim(n)?, self.dim(m)?));
        }
        if let Some(x) = self.mats.get(&(n as usize, tag)) {
            return Ok(x.clone());
        }
        let src = self.basis(n as usize)?.clone();
        let tgt = self.basis(m as usize)?.clone();
        let sp = TensorSpace::new(self.target.algebra(), n as usize)?;
        let full_tgt = TensorSpace::new(self.target.algebra(), m as usize)?.dim;
        let mut pos = vec![usize::MAX; full_tgt];
        for (k, &j) in tgt.iter().enumerate() {
            pos[j] = k;
        }
        let mut rows = Vec::with_capacity(src.len());
        let mut nnz = 0;
        for &s in &src {
            let row: SparseRow<Scalar> = self
                .builder
                .row(kind, &sp, s)
                .into_iter()
                .map(|(j, v)| {
                    debug_assert!(pos[j] != usize::MAX, "operator leaves the relative subspace");
                    (pos[j], v)
                })
                .collect();
            nnz += row.len();
            rows.push(row);
        }
        capacity::check_nnz("operator matrix", nnz)?;
        let mat = SparseMatrix::from_sorted_rows(tgt.len(), rows)?;
        self.mats.insert((n as usize, tag), mat.clone());
        Ok(mat)
    }
}
