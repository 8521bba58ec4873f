//! Sparse elimination on unit pivots (Tietze moves on a presentation, Gaussian elimination
//! over a field). Pivots follow a Markowitz rule: shortest row first, then the unit entry
//! whose column is least populated.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use super::domain::Domain;
use super::matrix::{axpy, SparseRow};

/// Outcome of eliminating unit pivots from the relation rows `Σ a_j g_j = 0`.
#[derive(Debug, Clone)]
pub struct Elimination<E> {
    pub n_cols: usize,
    /// In order: generator `c` equals the combination `expr` of generators eliminated later
    /// or surviving into the core.
    pub steps: Vec<(usize, SparseRow<E>)>,
    pub eliminated: Vec<bool>,
    /// Relations left over, none of which has a unit entry.
    pub remaining: Vec<SparseRow<E>>,
}

impl<E: Clone> Elimination<E> {
    pub fn rank(&self) -> usize {
        self.steps.len()
    }
    pub fn core_cols(&self) -> Vec<usize> {
        (0..self.n_cols).filter(|&c| !self.eliminated[c]).collect()
    }
}

/// `record` keeps the substitution rules; rank computations pass `false`.
pub fn eliminate<D: Domain>(d: &D, n_cols: usize, rows: Vec<SparseRow<D::Elem>>, record: bool) -> Elimination<D::Elem> {
    let mut rows: Vec<Option<SparseRow<D::Elem>>> = rows.into_iter().map(Some).collect();
    let mut col_occ: Vec<Vec<u32>> = vec![Vec::new(); n_cols];
    let mut heap = BinaryHeap::new();
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_ref().unwrap();
        for (c, _) in r {
            col_occ[*c].push(i as u32);
        }
        heap.push(Reverse((r.len(), i)));
    }
    let mut eliminated = vec![false; n_cols];
    let mut steps = Vec::new();
    while let Some(Reverse((len, ri))) = heap.pop() {
        let Some(row) = rows[ri].as_ref() else { continue };
        if row.len() != len {
            continue;
        }
        if row.is_empty() {
            rows[ri] = None;
            continue;
        }
        let mut pick: Option<(usize, u64, usize)> = None;
        for (k, (c, v)) in row.iter().enumerate() {
            if d.is_unit(v) {
                let key = (col_occ[*c].len(), d.size(v));
                if pick.is_none_or(|(o, s, _)| key < (o, s)) {
                    pick = Some((key.0, key.1, k));
                }
            }
        }
        let Some((_, _, k)) = pick else {
            // no unit entry: left for the dense core unless a later update changes it
            continue;
        };
        let row = rows[ri].take().unwrap();
        let (pc, pv) = row[k].clone();
        let minus_inv = d.neg(&d.unit_inverse(&pv));
        let expr: SparseRow<D::Elem> = row
            .iter()
            .filter(|(c, _)| *c != pc)
            .map(|(c, v)| (*c, d.mul(&minus_inv, v)))
            .collect();
        let occ = std::mem::take(&mut col_occ[pc]);
        for &r in &occ {
            let r = r as usize;
            let Some(target) = rows[r].as_ref() else { continue };
            let Ok(pos) = target.binary_search_by_key(&pc, |t| t.0) else { continue };
            let a = target[pos].1.clone();
            let mut without: SparseRow<D::Elem> = Vec::with_capacity(target.len());
            without.extend_from_slice(&target[..pos]);
            without.extend_from_slice(&target[pos + 1..]);
            let updated = axpy(d, &without, &a, &expr);
            // register new occurrences
            let mut i = 0;
            for (c, _) in &updated {
                while i < without.len() && without[i].0 < *c {
                    i += 1;
                }
                if i >= without.len() || without[i].0 != *c {
                    col_occ[*c].push(r as u32);
                }
            }
            heap.push(Reverse((updated.len(), r)));
            rows[r] = Some(updated);
        }
        eliminated[pc] = true;
        if record {
            steps.push((pc, expr));
        } else {
            steps.push((pc, Vec::new()));
        }
    }
    let remaining = rows.into_iter().flatten().filter(|r| !r.is_empty()).collect();
    Elimination {
        n_cols,
        steps,
        eliminated,
        remaining,
    }
}

/// Applies recorded substitutions to a dense vector in place.
pub fn apply_steps<D: Domain>(d: &D, steps: &[(usize, SparseRow<D::Elem>)], x: &mut [D::Elem]) {
    for (c, expr) in steps {
        if x[*c].is_zero() {
            continue;
        }
        let coef = std::mem::replace(&mut x[*c], D::Elem::zero());
        for (j, e) in expr {
            x[*j] = d.add(&x[*j], &d.mul(&coef, e));
        }
    }
}

/// Rank of a sparse matrix over a field.
pub fn field_rank<D: Domain>(d: &D, n_cols: usize, rows: Vec<SparseRow<D::Elem>>) -> usize {
    assert!(d.is_field());
    eliminate(d, n_cols, rows, false).rank()
}
