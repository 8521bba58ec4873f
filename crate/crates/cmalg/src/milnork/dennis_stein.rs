//! The Dennis–Stein group D₂(R) of a finite ring, optionally relative to an ideal.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{FinAlgebra, FiniteRing, RingElement, SplitNilpotentPair};
use crate::error::{Error, Result};
use crate::exactalg::{capacity, fp_group, FPAbelianGroup, Integers, Invariants, SparseMatrix};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DennisSteinCounts {
    /// ⟨a,b⟩⟨−b,−a⟩ = 1
    pub antisymmetry: usize,
    /// ⟨a,b⟩⟨a,c⟩ = ⟨a, b+c+abc⟩
    pub additivity: usize,
    /// ⟨a,bc⟩ = ⟨ab,c⟩⟨ac,b⟩
    pub product: usize,
}

/// Generators ⟨a,b⟩ for the pairs with 1+ab a unit (and, relative to I, a or b in I), in
/// lexicographic order of element indices.
#[derive(Debug, Clone)]
pub struct DennisSteinPresentation {
    pub ring: Arc<FiniteRing>,
    pub relative: bool,
    pub pairs: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
    pub counts: DennisSteinCounts,
    pub group: FPAbelianGroup<Integers>,
}

impl DennisSteinPresentation {
    /// Generator of ⟨a,b⟩.
    pub fn generator(&self, a: &RingElement, b: &RingElement) -> Result<usize> {
        let (x, y) = (self.ring.index_of(a), self.ring.index_of(b));
        self.index[x * self.ring.size() + y]
            .ok_or_else(|| Error::MalformedGenerator("<a,b> needs 1+ab a unit (and a or b in I when relative)".into()))
    }

    pub fn label(&self, g: usize) -> String {
        let (a, b) = self.pairs[g];
        let alg = self.ring.algebra();
        format!("<{},{}>", alg.fmt_element(&self.ring.element(a)), alg.fmt_element(&self.ring.element(b)))
    }

    pub fn invariants(&self) -> Invariants {
        self.group.invariants()
    }
}

/// D₂(R), or D₂(R, I) when a pair is given. The relative presentation keeps the relations all
/// of whose symbols are relative generators.
pub fn dennis_stein_d2(r: &FinAlgebra, relative_to: Option<&SplitNilpotentPair>) -> Result<DennisSteinPresentation> {
    if relative_to.is_some_and(|p| p.r != *r) {
        return Err(Error::InvalidArgument("the pair must be an ideal of the same algebra".into()));
    }
    let ring = Arc::new(FiniteRing::new(r)?);
    let size = ring.size();
    capacity::check("Dennis-Stein relations", 3 * (size as u128).pow(3), capacity::capacity().max_nnz)?;
    let in_ideal: Vec<bool> = match relative_to {
        Some(p) => (0..size).map(|x| p.in_ideal(&ring.element(x))).collect(),
        None => vec![true; size],
    };
    let one = ring.one();
    let admissible = |a: usize, b: usize| ring.is_unit(ring.add(one, ring.mul(a, b)));
    let mut pairs = Vec::new();
    let mut index = vec![None; size * size];
    for a in 0..size {
        for b in 0..size {
            let rel_ok = relative_to.is_none() || in_ideal[a] || in_ideal[b];
            if rel_ok && admissible(a, b) {
                index[a * size + b] = Some(pairs.len());
                pairs.push((a, b));
            }
        }
    }
    let g = |a: usize, b: usize| index[a * size + b];
    let mut counts = DennisSteinCounts::default();
    let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
    let push = |terms: &[(Option<usize>, i64)], rows: &mut Vec<Vec<(usize, BigInt)>>| -> bool {
        let mut t = Vec::with_capacity(terms.len());
        for (c, v) in terms {
            match c {
                Some(c) => t.push((*c, *v)),
                None => return false,
            }
        }
        t.sort_by_key(|x| x.0);
        let mut out: Vec<(usize, BigInt)> = Vec::new();
        for (c, v) in t {
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => out.push((c, BigInt::from(v))),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        if !out.is_empty() {
            rows.push(out);
        }
        true
    };
    for &(a, b) in &pairs {
        let (na, nb) = (ring.neg(a), ring.neg(b));
        if push(&[(g(a, b), 1), (g(nb, na), 1)], &mut rows) {
            counts.antisymmetry += 1;
        }
    }
    for a in 0..size {
        for b in 0..size {
            if !admissible(a, b) {
                continue;
            }
            for c in 0..size {
                if admissible(a, c) {
                    let s = ring.add(ring.add(b, c), ring.mul(ring.mul(a, b), c));
                    if push(&[(g(a, b), 1), (g(a, c), 1), (g(a, s), -1)], &mut rows) {
                        counts.additivity += 1;
                    }
                }
            }
        }
    }
    for a in 0..size {
        for b in 0..size {
            let ab = ring.mul(a, b);
            for c in 0..size {
                if !ring.is_unit(ring.add(one, ring.mul(ab, c))) {
                    continue;
                }
                let (bc, ac) = (ring.mul(b, c), ring.mul(a, c));
                if push(&[(g(a, bc), 1), (g(ab, c), -1), (g(ac, b), -1)], &mut rows) {
                    counts.product += 1;
                }
            }
        }
    }
    let z = Integers;
    let n = pairs.len();
    let rel = SparseMatrix::from_unsorted_rows(&z, n, rows);
    let group = fp_group(&z, n, &rel)?;
    Ok(DennisSteinPresentation {
        ring,
        relative: relative_to.is_some(),
        pairs,
        index,
        counts,
        group,
    })
}
