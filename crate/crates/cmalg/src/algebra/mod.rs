//! Finite-rank commutative unital algebras over ℚ or 𝔽_p given by structure constants.

mod finite;
mod pair;
mod series;

pub use finite::{enumerate_units, is_m_fold_stable, residue_field_sizes, stability_criterion, FiniteRing};
pub use pair::{split_nilpotent_pair, SplitNilpotentPair};
pub use series::{exp_nilpotent, log_one_plus, nilpotency_order};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::capacity;
use crate::exactalg::{Coefficients, Domain};
use crate::Scalar;

/// Coordinates of an element in the algebra basis.
pub type RingElement = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq)]
pub struct FinAlgebra {
    coeffs: Coefficients,
    dim: usize,
    names: Vec<String>,
    unit: RingElement,
    /// `table[i * dim + j]` = b_i·b_j as sparse coordinates.
    table: Vec<Vec<(usize, Scalar)>>,
}

/// Validates structure constants `table[i][j][k]` = coefficient of b_k in b_i·b_j.
pub fn make_structure_algebra(
    coeffs: Coefficients,
    dim: usize,
    unit: RingElement,
    table: Vec<Vec<Vec<Scalar>>>,
    names: Option<Vec<String>>,
) -> Result<FinAlgebra> {
    if coeffs == Coefficients::Integers {
        return Err(Error::InvalidArgument(
            "algebras are defined over Q or F_p; integer coefficients are not allowed".into(),
        ));
    }
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if unit.len() != dim || table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
        return Err(Error::DimensionMismatch(format!("structure constants must have shape {dim}x{dim}x{dim}")));
    }
    let names = match names {
        Some(n) if n.len() == dim => n,
        Some(_) => return Err(Error::DimensionMismatch("one name per basis element".into())),
        None => (0..dim).map(|i| format!("b{i}")).collect(),
    };
    let reduce = |v: &Scalar| coeffs.from_rational(v);
    let unit = unit.iter().map(reduce).collect::<Result<Vec<_>>>()?;
    let mut sparse = Vec::with_capacity(dim * dim);
    for row in &table {
        for v in row {
            let mut entry = Vec::new();
            for (k, c) in v.iter().enumerate() {
                let c = reduce(c)?;
                if !c.is_zero() {
                    entry.push((k, c));
                }
            }
            sparse.push(entry);
        }
    }
    let alg = FinAlgebra {
        coeffs,
        dim,
        names,
        unit,
        table: sparse,
    };
    for i in 0..dim {
        for j in i + 1..dim {
            if alg.table[i * dim + j] != alg.table[j * dim + i] {
                return Err(Error::NotCommutative(i, j));
            }
        }
    }
    for i in 0..dim {
        if alg.mul(&alg.unit, &alg.basis_vector(i)) != alg.basis_vector(i) {
            return Err(Error::NoUnit);
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            let ij = alg.mul_basis_vec(i, j);
            for l in 0..dim {
                let left = alg.mul(&ij, &alg.basis_vector(l));
                let right = alg.mul(&alg.basis_vector(i), &alg.mul_basis_vec(j, l));
                if left != right {
                    return Err(Error::NotAssociative(i, j, l));
                }
            }
        }
    }
    Ok(alg)
}

/// base[x_1, …, x_r]/(x_1^{e_1}, …, x_r^{e_r}) with the monomial basis, last variable fastest.
pub fn truncated_polynomial(base: Coefficients, vars: &[(String, usize)]) -> Result<FinAlgebra> {
    if vars.iter().any(|(_, e)| *e < 2) {
        return Err(Error::InvalidArgument("truncation powers must be at least 2".into()));
    }
    let dim_big: u128 = vars.iter().map(|(_, e)| *e as u128).product();
    capacity::check_tensor("truncated polynomial dimension", dim_big)?;
    let dim = dim_big as usize;
    let exps: Vec<Vec<usize>> = (0..dim)
        .map(|mut idx| {
            let mut e = vec![0; vars.len()];
            for (v, (_, p)) in vars.iter().enumerate().rev() {
                e[v] = idx % p;
                idx /= p;
            }
            e
        })
        .collect();
    let index_of = |e: &[usize]| -> Option<usize> {
        let mut idx = 0;
        for (v, (_, p)) in vars.iter().enumerate() {
            if e[v] >= *p {
                return None;
            }
            idx = idx * p + e[v];
        }
        Some(idx)
    };
    let names = exps
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .zip(vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, (n, _))| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let zero = BigRational::zero();
    let mut table = vec![vec![vec![zero.clone(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let s: Vec<usize> = exps[i].iter().zip(&exps[j]).map(|(a, b)| a + b).collect();
            if let Some(k) = index_of(&s) {
                table[i][j][k] = BigRational::one();
            }
        }
    }
    let mut unit = vec![zero; dim];
    unit[0] = BigRational::one();
    make_structure_algebra(base, dim, unit, table, Some(names))
}

impl FinAlgebra {
    pub fn coeffs(&self) -> Coefficients {
        self.coeffs
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn unit(&self) -> &RingElement {
        &self.unit
    }
    pub fn zero(&self) -> RingElement {
        vec![Scalar::zero(); self.dim]
    }
    pub fn basis_vector(&self, i: usize) -> RingElement {
        let mut v = self.zero();
        v[i] = Scalar::one();
        v
    }
    pub fn is_zero(&self, a: &RingElement) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    /// b_i·b_j as sparse coordinates.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }
    fn mul_basis_vec(&self, i: usize, j: usize) -> RingElement {
        let mut v = self.zero();
        for (k, c) in self.mul_basis(i, j) {
            v[*k] = c.clone();
        }
        v
    }
    /// Structure constant c_{ijk}.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.mul_basis(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = &self.coeffs;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }
    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a.iter().zip(b).map(|(x, y)| self.coeffs.add(x, y)).collect()
    }
    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a.iter().zip(b).map(|(x, y)| self.coeffs.sub(x, y)).collect()
    }
    pub fn neg(&self, a: &RingElement) -> RingElement {
        a.iter().map(|x| self.coeffs.neg(x)).collect()
    }
    pub fn scale(&self, c: &Scalar, a: &RingElement) -> RingElement {
        a.iter().map(|x| self.coeffs.mul(c, x)).collect()
    }
    pub fn from_int(&self, k: i64) -> RingElement {
        self.scale(&self.coeffs.from_i64(k), &self.unit.clone())
    }
    pub fn pow(&self, a: &RingElement, k: usize) -> RingElement {
        let mut out = self.unit.clone();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }
    /// Brings arbitrary rational coordinates into the coefficient ring.
    pub fn element(&self, coords: &[Scalar]) -> Result<RingElement> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates", self.dim)));
        }
        coords.iter().map(|c| self.coeffs.from_rational(c)).collect()
    }
    pub fn element_from_ints(&self, coords: &[i64]) -> RingElement {
        coords.iter().map(|&c| self.coeffs.from_i64(c)).collect()
    }

    /// Matrix of multiplication by `a`: row i is a·b_i.
    pub fn mult_matrix(&self, a: &RingElement) -> Vec<Vec<Scalar>> {
        (0..self.dim).map(|i| self.mul(a, &self.basis_vector(i))).collect()
    }

    /// Inverse of `a`, if it is a unit.
    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        use crate::exactalg::dense::{echelon, solve_echelon};
        let m = self.mult_matrix(a);
        let ech = echelon(&self.coeffs, &m, self.dim, true);
        if ech.rank() < self.dim {
            return None;
        }
        // c·H = 1 with H = T·M, so x = c·T satisfies x·M = 1, i.e. (Σ x_i b_i)·a = 1.
        let c = solve_echelon(&self.coeffs, &ech, &self.unit)?;
        let t = ech.transform.as_ref().unwrap();
        let f = &self.coeffs;
        let mut x = self.zero();
        for (ci, row) in c.iter().zip(t) {
            for (xj, tj) in x.iter_mut().zip(row) {
                *xj = f.add(xj, &f.mul(ci, tj));
            }
        }
        Some(x)
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        self.inverse(a).is_some()
    }

    /// Parses expressions such as `1+e`, `3 - 2*x*y`, `1/2*e^2` over the basis names.
    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let f = &self.coeffs;
        let mut out = self.zero();
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidArgument("empty element".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for (i, &c) in bytes.iter().enumerate() {
            if (c == b'+' || c == b'-') && i > 0 && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let numeric_end = body
                .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                .unwrap_or(body.len());
            let (num, rest) = body.split_at(numeric_end);
            let rest = rest.strip_prefix('*').unwrap_or(rest);
            let coef = if num.is_empty() {
                BigRational::one()
            } else {
                parse_rational(num)?
            };
            let coef = if neg { -coef } else { coef };
            let coef = f.from_rational(&coef)?;
            let target = if rest.is_empty() {
                self.unit.clone()
            } else {
                let idx = self
                    .names
                    .iter()
                    .position(|n| n == rest)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown basis element '{rest}'")))?;
                self.basis_vector(idx)
            };
            out = self.add(&out, &self.scale(&coef, &target));
        }
        Ok(out)
    }

    pub fn fmt_element(&self, a: &RingElement) -> String {
        let mut parts = Vec::new();
        for (c, n) in a.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            if n == "1" {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(n.clone());
            } else {
                parts.push(format!("{c}*{n}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("bad number '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| bad())?;
            let b: BigInt = b.parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-algebra of dimension {} with basis [{}]", self.coeffs, self.dim, self.names.join(", "))
    }
}
