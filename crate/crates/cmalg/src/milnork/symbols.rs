//! Milnor K-groups K_n^M(R) of finite rings from symbol presentations, and relative groups.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{FinAlgebra, RingElement, SplitNilpotentPair};
use crate::error::Result;
use crate::exactalg::{capacity, fp_group, map_kernel, FPAbelianGroup, Integers, Invariants, Kernel, SparseMatrix};

use super::units::UnitGroup;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RelationCounts {
    pub multiplicativity: usize,
    pub steinberg: usize,
    pub additive_inverse: usize,
    pub anticommutativity: usize,
}

/// K_n^M(R) presented on all n-tuples of units. Generator index is the tuple of unit numbers
/// read in base |R*|, first slot most significant.
#[derive(Debug, Clone)]
pub struct SymbolPresentation {
    pub n: usize,
    pub units: UnitGroup,
    pub extra_relations: bool,
    pub counts: RelationCounts,
    pub group: FPAbelianGroup<Integers>,
}

impl SymbolPresentation {
    pub fn n_gens(&self) -> usize {
        self.units.len().pow(self.n as u32)
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &k| acc * self.units.len() + k)
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let u = self.units.len();
        let mut t = vec![0; self.n];
        for slot in (0..self.n).rev() {
            t[slot] = idx % u;
            idx /= u;
        }
        t
    }

    /// Generator of the symbol {r_1, …, r_n}.
    pub fn symbol(&self, entries: &[RingElement]) -> Result<usize> {
        let t: Vec<usize> = entries
            .iter()
            .enumerate()
            .map(|(slot, x)| self.units.number_of(x, slot))
            .collect::<Result<_>>()?;
        Ok(self.index(&t))
    }

    /// Generator coordinates of a single symbol.
    pub fn symbol_vector(&self, entries: &[RingElement]) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.n_gens()];
        v[self.symbol(entries)?] = BigInt::one();
        Ok(v)
    }

    pub fn label(&self, idx: usize) -> String {
        let parts: Vec<String> = self.tuple(idx).iter().map(|&k| self.units.label(k)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn invariants(&self) -> Invariants {
        self.group.invariants()
    }
}

fn row(terms: &[(usize, i64)]) -> Vec<(usize, BigInt)> {
    let mut t: Vec<(usize, BigInt)> = terms.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect();
    t.sort_by_key(|x| x.0);
    t
}

/// K_n^M(R): multiplicativity in every slot and the Steinberg relation in adjacent slots.
/// `extra_relations` also imposes {…, u, −u, …} = 0 and anticommutativity of adjacent slots.
pub fn milnor_k(r: &FinAlgebra, n: usize, extra_relations: bool) -> Result<SymbolPresentation> {
    let units = UnitGroup::new(r)?;
    milnor_k_on(units, n, extra_relations)
}

pub(crate) fn milnor_k_on(units: UnitGroup, n: usize, extra_relations: bool) -> Result<SymbolPresentation> {
    let u = units.len();
    let z = Integers;
    let n_gens = (u as u128).pow(n as u32);
    capacity::check("symbol relations", 3 * n as u128 * n_gens * u as u128, capacity::capacity().max_nnz)?;
    let n_gens = n_gens as usize;
    let ring = units.ring.clone();
    let one = ring.one();
    let minus_one = ring.neg(one);
    // unit numbers of 1 − u and −u
    let one_minus: Vec<Option<usize>> = units.units.iter().map(|&x| units.number(ring.sub(one, x))).collect();
    let negated: Vec<usize> = units.units.iter().map(|&x| units.number(ring.mul(minus_one, x)).unwrap()).collect();

    let mut p = SymbolPresentation {
        n,
        units,
        extra_relations,
        counts: RelationCounts::default(),
        group: FPAbelianGroup::free(&z, 1),
    };
    let mut rows = Vec::new();
    if n >= 1 {
        let mut t = vec![0usize; n];
        for rest in 0..u.pow(n as u32 - 1) {
            for slot in 0..n {
                // other slots from `rest`, this slot varies
                let mut k = rest;
                for s in (0..n).rev().filter(|&s| s != slot) {
                    t[s] = k % u;
                    k /= u;
                }
                for a in 0..u {
                    for b in 0..u {
                        t[slot] = p.units.mul(a, b);
                        let ab = p.index(&t);
                        t[slot] = a;
                        let ia = p.index(&t);
                        t[slot] = b;
                        let ib = p.index(&t);
                        rows.push(combine(&[(ab, 1), (ia, -1), (ib, -1)]));
                        p.counts.multiplicativity += 1;
                    }
                }
            }
        }
        let adjacent = n.saturating_sub(1);
        let n_rest = if n >= 2 { u.pow(n as u32 - 2) } else { 0 };
        for slot in 0..adjacent {
            for rest in 0..n_rest {
                let mut k = rest;
                for s in (0..n).rev().filter(|&s| s != slot && s != slot + 1) {
                    t[s] = k % u;
                    k /= u;
                }
                for a in 0..u {
                    if let Some(b) = one_minus[a] {
                        t[slot] = a;
                        t[slot + 1] = b;
                        rows.push(row(&[(p.index(&t), 1)]));
                        p.counts.steinberg += 1;
                    }
                    if extra_relations {
                        t[slot] = a;
                        t[slot + 1] = negated[a];
                        rows.push(row(&[(p.index(&t), 1)]));
                        p.counts.additive_inverse += 1;
                        for b in 0..u {
                            t[slot] = a;
                            t[slot + 1] = b;
                            let x = p.index(&t);
                            t[slot] = b;
                            t[slot + 1] = a;
                            let y = p.index(&t);
                            rows.push(combine(&[(x, 1), (y, 1)]));
                            p.counts.anticommutativity += 1;
                        }
                    }
                }
            }
        }
    }
    let rel = SparseMatrix::from_unsorted_rows(&z, n_gens, rows);
    p.group = fp_group(&z, n_gens, &rel)?;
    Ok(p)
}

/// Sparse row from terms, merging repeated columns.
fn combine(terms: &[(usize, i64)]) -> Vec<(usize, BigInt)> {
    let mut t = terms.to_vec();
    t.sort_by_key(|x| x.0);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(t.len());
    for (c, v) in t {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, BigInt::from(v))),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// K_n^M(R, I) = ker(K_n^M(R) → K_n^M(S)).
#[derive(Debug, Clone)]
pub struct RelativeMilnorK {
    pub absolute: SymbolPresentation,
    pub quotient: SymbolPresentation,
    pub kernel: Kernel<Integers>,
    /// Invariants of K_n^M(R) equal those of K_n^M(S) ⊕ K_n^M(R, I).
    pub split: bool,
}

impl RelativeMilnorK {
    pub fn group(&self) -> &FPAbelianGroup<Integers> {
        &self.kernel.group
    }

    pub fn invariants(&self) -> Invariants {
        self.kernel.group.invariants()
    }

    /// Normal coordinates in K_n^M(R, I) of an element of K_n^M(R) lying in the kernel.
    pub fn coords_of(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.kernel.coords_of(&self.absolute.group, x)
    }
}

pub fn milnor_k_relative(pair: &SplitNilpotentPair, n: usize) -> Result<RelativeMilnorK> {
    let absolute = milnor_k(&pair.r, n, false)?;
    let quotient = milnor_k(&pair.s, n, false)?;
    // projection of each unit of R to a unit of S
    let proj: Vec<usize> = (0..absolute.units.len())
        .map(|k| {
            let y = pair.project(&absolute.units.element(k));
            quotient.units.number_of(&y, 0)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<(usize, BigInt)>> = (0..absolute.n_gens())
        .map(|g| {
            let t: Vec<usize> = absolute.tuple(g).iter().map(|&k| proj[k]).collect();
            vec![(quotient.index(&t), BigInt::one())]
        })
        .collect();
    let images = SparseMatrix::from_sorted_rows(quotient.n_gens(), rows)?;
    let kernel = map_kernel(&absolute.group, &quotient.group, &images)?;
    let split = absolute.invariants() == quotient.invariants().direct_sum(&kernel.group.invariants());
    Ok(RelativeMilnorK {
        absolute,
        quotient,
        kernel,
        split,
    })
}

/// K_n^M(R) from a cyclic decomposition of R*: generators are tuples of cyclic generators,
/// with the tensor relations gcd(m_i, …)·g = 0 and the Steinberg rows expanded multilinearly.
pub fn milnor_k_compact(r: &FinAlgebra, n: usize) -> Result<FPAbelianGroup<Integers>> {
    let units = UnitGroup::new(r)?;
    let st = units.structure()?;
    let z = Integers;
    let k = st.moduli.len();
    if n == 0 {
        return Ok(FPAbelianGroup::free(&z, 1));
    }
    let n_gens = k.pow(n as u32);
    let index = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * k + x);
    let tuple = |mut i: usize, len: usize| {
        let mut t = vec![0; len];
        for s in (0..len).rev() {
            t[s] = i % k.max(1);
            i /= k.max(1);
        }
        t
    };
    let mut rows = Vec::new();
    for g in 0..n_gens {
        let t = tuple(g, n);
        for &c in &t {
            rows.push(vec![(g, st.moduli[c].clone())]);
        }
    }
    let ring = units.ring.clone();
    let one = ring.one();
    for slot in 0..n.saturating_sub(1) {
        for rest in 0..k.pow(n as u32 - 2) {
            let others = tuple(rest, n - 2);
            for a in 0..units.len() {
                let Some(b) = units.number(ring.sub(one, units.units[a])) else { continue };
                let mut acc = std::collections::BTreeMap::<usize, BigInt>::new();
                for (i, x) in st.logs[a].iter().enumerate() {
                    for (j, y) in st.logs[b].iter().enumerate() {
                        let c = x * y;
                        if c.is_zero() {
                            continue;
                        }
                        let mut t = Vec::with_capacity(n);
                        t.extend_from_slice(&others[..slot]);
                        t.push(i);
                        t.push(j);
                        t.extend_from_slice(&others[slot..]);
                        *acc.entry(index(&t)).or_insert_with(BigInt::zero) += c;
                    }
                }
                let r: Vec<(usize, BigInt)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
    }
    let rel = SparseMatrix::from_unsorted_rows(&z, n_gens, rows);
    fp_group(&z, n_gens, &rel)
}
