//! Brute-force arithmetic on algebras over 𝔽_p, with elements encoded as integers.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{FinAlgebra, RingElement};
use crate::error::{Error, Result};
use crate::exactalg::capacity;
use crate::exactalg::Coefficients;

const MUL_TABLE_LIMIT: usize = 2048;

/// A finite algebra over 𝔽_p with every element addressed by an index in `0..p^dim`.
///
/// The index of `(c_0, …, c_{d-1})` is `Σ c_i p^{d-1-i}`, so index order is lexicographic.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    alg: FinAlgebra,
    p: u64,
    dim: usize,
    size: usize,
    /// `consts[i*dim + j]` = b_i·b_j with coefficients in 0..p.
    consts: Vec<Vec<(usize, u64)>>,
    mul_table: Option<Vec<u32>>,
    add_table: Option<Vec<u32>>,
    inverses: Vec<Option<usize>>,
    units: Vec<usize>,
}

impl FiniteRing {
    pub fn new(alg: &FinAlgebra) -> Result<FiniteRing> {
        let p = match alg.coeffs() {
            Coefficients::PrimeField(p) => p,
            _ => return Err(Error::InfiniteCoefficients),
        };
        let dim = alg.dim();
        let size_big = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        capacity::check_units("ring elements", size_big)?;
        let size = size_big as usize;
        let consts = (0..dim * dim)
            .map(|ij| {
                alg.mul_basis(ij / dim, ij % dim)
                    .iter()
                    .map(|(k, c)| (*k, scalar_to_u64(c, p)))
                    .collect()
            })
            .collect();
        let mut ring = FiniteRing {
            alg: alg.clone(),
            p,
            dim,
            size,
            consts,
            mul_table: None,
            add_table: None,
            inverses: Vec::new(),
            units: Vec::new(),
        };
        if size <= MUL_TABLE_LIMIT {
            let mut t = vec![0u32; size * size];
            for a in 0..size {
                for b in a..size {
                    let c = ring.mul_slow(a, b) as u32;
                    t[a * size + b] = c;
                    t[b * size + a] = c;
                }
            }
            ring.mul_table = Some(t);
            let mut t = vec![0u32; size * size];
            for a in 0..size {
                for b in 0..size {
                    t[a * size + b] = ring.add_slow(a, b) as u32;
                }
            }
            ring.add_table = Some(t);
        }
        ring.inverses = (0..size).map(|a| ring.solve_inverse(a)).collect();
        ring.units = (0..size).filter(|&a| ring.inverses[a].is_some()).collect();
        Ok(ring)
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.alg
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn zero(&self) -> usize {
        0
    }
    pub fn one(&self) -> usize {
        self.index_of(self.alg.unit())
    }

    pub fn digits(&self, mut a: usize) -> Vec<u64> {
        let p = self.p as usize;
        let mut d = vec![0u64; self.dim];
        for slot in d.iter_mut().rev() {
            *slot = (a % p) as u64;
            a /= p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u64]) -> usize {
        d.iter().fold(0usize, |acc, &x| acc * self.p as usize + x as usize)
    }

    pub fn index_of(&self, a: &RingElement) -> usize {
        let d: Vec<u64> = a.iter().map(|c| scalar_to_u64(c, self.p)).collect();
        self.from_digits(&d)
    }

    pub fn element(&self, a: usize) -> RingElement {
        self.digits(a)
            .into_iter()
            .map(|x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<u64> = self.digits(a).iter().map(|u| (self.p - u) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// k·a for an integer k.
    pub fn scale_int(&self, k: i64, a: usize) -> usize {
        let k = k.rem_euclid(self.p as i64) as u64;
        let s: Vec<u64> = self.digits(a).iter().map(|u| u * k % self.p).collect();
        self.from_digits(&s)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut out = vec![0u64; self.dim];
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj == 0 {
                    continue;
                }
                let xy = xi * yj % self.p;
                for (k, c) in &self.consts[i * self.dim + j] {
                    out[*k] = (out[*k] + xy * c) % self.p;
                }
            }
        }
        self.from_digits(&out)
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverses[a].is_some()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverses[a]
    }

    /// Indices of the units, in increasing order.
    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        // a nilpotent element of a rank-d algebra satisfies a^d = 0
        self.pow(a, self.dim) == 0
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// Rank over 𝔽_p of the span of the given elements.
    pub fn span_rank(&self, elems: &[usize]) -> usize {
        let rows: Vec<Vec<u64>> = elems.iter().map(|&a| self.digits(a)).collect();
        rank_mod_p(rows, self.dim, self.p)
    }

    /// Rank of the ideal generated by `a`, i.e. of multiplication by `a`.
    pub fn principal_rank(&self, a: usize) -> usize {
        let basis: Vec<usize> = (0..self.dim).map(|i| self.basis_index(i)).collect();
        let prods: Vec<usize> = basis.iter().map(|&b| self.mul(a, b)).collect();
        self.span_rank(&prods)
    }

    pub fn basis_index(&self, i: usize) -> usize {
        let mut d = vec![0u64; self.dim];
        d[i] = 1;
        self.from_digits(&d)
    }

    fn solve_inverse(&self, a: usize) -> Option<usize> {
        // columns of the multiplication matrix are a·b_j; solve M x = 1
        let p = self.p;
        let n = self.dim;
        let cols: Vec<Vec<u64>> = (0..n).map(|j| self.digits(self.mul(a, self.basis_index(j)))).collect();
        let one = self.digits(self.one());
        let mut m: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row: Vec<u64> = (0..n).map(|j| cols[j][i]).collect();
                row.push(one[i]);
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| m[r][c] != 0)?;
            m.swap(c, piv);
            let inv = modpow(m[c][c], p - 2, p);
            for v in m[c].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..n {
                if r != c && m[r][c] != 0 {
                    let f = m[r][c];
                    for k in 0..=n {
                        m[r][k] = (m[r][k] + p * p - f * m[c][k] % p) % p;
                    }
                }
            }
        }
        let x: Vec<u64> = m.iter().map(|row| row[n]).collect();
        Some(self.from_digits(&x))
    }
}

fn scalar_to_u64(c: &BigRational, p: u64) -> u64 {
    // entries are already reduced into 0..p by the coefficient domain
    c.to_integer().to_u64().unwrap_or(0) % p
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = modpow(rows[rank][c], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..ncols {
                    rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every unit of R paired with its inverse.
pub fn enumerate_units(r: &FinAlgebra) -> Result<Vec<(RingElement, RingElement)>> {
    let ring = FiniteRing::new(r)?;
    Ok(ring
        .units()
        .iter()
        .map(|&u| (ring.element(u), ring.element(ring.inverse(u).unwrap())))
        .collect())
}

/// Whether R is m-fold stable, decided by exhaustive search.
///
/// For a unimodular pair (s, s′) let Bad(s, s′) = {x : s + s′x is not a unit}. R fails to be
/// m-fold stable exactly when some m of these sets cover R.
pub fn is_m_fold_stable(r: &FinAlgebra, m: usize) -> Result<bool> {
    let ring = FiniteRing::new(r)?;
    let n = ring.size();
    capacity::check("stability search", (n as u128).pow(3), capacity::capacity().max_nnz * 20)?;
    let words = n.div_ceil(64);
    let mut bad_sets: HashSet<Vec<u64>> = HashSet::new();
    let basis: Vec<usize> = (0..ring.dim()).map(|i| ring.basis_index(i)).collect();
    for s in 0..n {
        for s2 in 0..n {
            let gens: Vec<usize> = basis
                .iter()
                .flat_map(|&b| [ring.mul(s, b), ring.mul(s2, b)])
                .collect();
            if ring.span_rank(&gens) < ring.dim() {
                continue;
            }
            let mut bits = vec![0u64; words];
            for x in 0..n {
                if !ring.is_unit(ring.add(s, ring.mul(s2, x))) {
                    bits[x / 64] |= 1 << (x % 64);
                }
            }
            bad_sets.insert(bits);
        }
    }
    // drop sets contained in another; they never help a cover
    let sets: Vec<Vec<u64>> = bad_sets.into_iter().collect();
    let maximal: Vec<Vec<u64>> = sets
        .iter()
        .filter(|a| {
            !sets
                .iter()
                .any(|b| b != *a && a.iter().zip(b.iter()).all(|(x, y)| x & !y == 0))
        })
        .cloned()
        .collect();
    let covered = vec![0u64; words];
    Ok(!covers(&maximal, covered, m, n))
}

fn covers(sets: &[Vec<u64>], covered: Vec<u64>, budget: usize, n: usize) -> bool {
    let first_free = (0..n).find(|&x| covered[x / 64] & (1 << (x % 64)) == 0);
    let Some(x) = first_free else { return true };
    if budget == 0 {
        return false;
    }
    for s in sets.iter().filter(|s| s[x / 64] & (1 << (x % 64)) != 0) {
        let next: Vec<u64> = covered.iter().zip(s).map(|(a, b)| a | b).collect();
        if covers(sets, next, budget - 1, n) {
            return true;
        }
    }
    false
}

/// Sizes of the residue fields R/𝔪 over all maximal ideals 𝔪.
///
/// R splits as a product of local rings eR over the primitive idempotents e, and the residue
/// field of eR is eR/eN with N the nilradical.
pub fn residue_field_sizes(r: &FinAlgebra) -> Result<Vec<BigInt>> {
    let ring = FiniteRing::new(r)?;
    let n = ring.size();
    let idempotents: Vec<usize> = (1..n).filter(|&a| ring.is_idempotent(a)).collect();
    let primitive: Vec<usize> = idempotents
        .iter()
        .copied()
        .filter(|&e| {
            !idempotents
                .iter()
                .any(|&f| f != e && ring.mul(e, f) == f)
        })
        .collect();
    let nil: Vec<usize> = (0..n).filter(|&a| ring.is_nilpotent(a)).collect();
    let mut sizes: Vec<BigInt> = primitive
        .iter()
        .map(|&e| {
            let er = ring.principal_rank(e);
            let en: Vec<usize> = nil.iter().map(|&x| ring.mul(e, x)).collect();
            let k = er - ring.span_rank(&en);
            BigInt::from(ring.p()).pow(k as u32)
        })
        .collect();
    sizes.sort();
    Ok(sizes)
}

/// The semilocal criterion: every residue field has at least m+1 elements.
pub fn stability_criterion(r: &FinAlgebra, m: usize) -> Result<bool> {
    let sizes = residue_field_sizes(r)?;
    let bound = BigInt::from(m as u64 + 1);
    Ok(!sizes.is_empty() && sizes.iter().all(|s| *s >= bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;

    #[test]
    fn digits_round_trip() {
        let r = truncated_polynomial(Coefficients::PrimeField(3), &[("e".into(), 3)]).unwrap();
        let ring = FiniteRing::new(&r).unwrap();
        for a in 0..ring.size() {
            assert_eq!(ring.from_digits(&ring.digits(a)), a);
            assert_eq!(ring.index_of(&ring.element(a)), a);
        }
    }
}
