//! Split nilpotent extensions R → S = R/I with I spanned by basis vectors.

use super::{make_structure_algebra, FinAlgebra, RingElement};
use crate::error::{Error, Result};
use crate::exactalg::dense::{echelon, in_lattice, Echelon};
use crate::Scalar;
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct SplitNilpotentPair {
    pub r: FinAlgebra,
    pub ideal_basis: Vec<RingElement>,
    pub s: FinAlgebra,
    /// dim R × dim S; row i is the image of the R-basis vector i.
    pub projection: Vec<Vec<Scalar>>,
    /// dim S × dim R; row c is the image of the S-basis vector c.
    pub section: Vec<Vec<Scalar>>,
    /// Smallest N with I^N = 0.
    pub nilpotency_index: usize,
    ideal_indices: Vec<usize>,
    complement: Vec<usize>,
}

fn span(r: &FinAlgebra, vecs: &[RingElement]) -> Echelon<Scalar> {
    echelon(&r.coeffs(), vecs, r.dim(), false)
}

pub fn split_nilpotent_pair(r: &FinAlgebra, ideal_basis: &[RingElement]) -> Result<SplitNilpotentPair> {
    let f = r.coeffs();
    let dim = r.dim();
    let ideal_basis: Vec<RingElement> = ideal_basis.iter().map(|v| r.element(v)).collect::<Result<_>>()?;
    let i1 = span(r, &ideal_basis);
    // I^{k+1} = I^k · I; if I generates a nilpotent ideal J then I^{dim+1} ⊆ J^{dim+1} = 0
    let mut power = i1.clone();
    let mut nilpotency_index = 1;
    while power.rank() > 0 {
        let prods: Vec<RingElement> = power
            .rows
            .iter()
            .flat_map(|a| i1.rows.iter().map(move |b| r.mul(a, b)))
            .collect();
        let next = span(r, &prods);
        if nilpotency_index > dim {
            return Err(Error::NotNilpotent);
        }
        power = next;
        nilpotency_index += 1;
    }

    for v in &i1.rows {
        for k in 0..dim {
            if !in_lattice(&f, &i1, &r.mul(v, &r.basis_vector(k))) {
                return Err(Error::NotAnIdeal);
            }
        }
    }

    let mut ideal_indices = Vec::new();
    for v in &ideal_basis {
        let support: Vec<usize> = (0..dim).filter(|&k| !v[k].is_zero()).collect();
        match support.as_slice() {
            [k] => ideal_indices.push(*k),
            [] => {}
            _ => {
                return Err(Error::NotSplitAlongBasis(format!(
                    "ideal generator {} is not a multiple of a basis element",
                    r.fmt_element(v)
                )))
            }
        }
    }
    ideal_indices.sort_unstable();
    ideal_indices.dedup();
    let complement: Vec<usize> = (0..dim).filter(|k| !ideal_indices.contains(k)).collect();
    let pos = |k: usize| complement.iter().position(|&c| c == k);

    // the complement must be a subalgebra containing 1
    let in_complement = |v: &RingElement| (0..dim).all(|k| v[k].is_zero() || pos(k).is_some());
    if !in_complement(r.unit()) {
        return Err(Error::NotSplitAlongBasis("the unit has a component in the ideal".into()));
    }
    for &a in &complement {
        for &b in &complement {
            if !in_complement(&r.mul(&r.basis_vector(a), &r.basis_vector(b))) {
                return Err(Error::NotSplitAlongBasis(format!(
                    "{}*{} leaves the span of the complementary basis",
                    r.names()[a],
                    r.names()[b]
                )));
            }
        }
    }

    let sd = complement.len();
    let restrict = |v: &RingElement| -> RingElement { complement.iter().map(|&k| v[k].clone()).collect() };
    let table: Vec<Vec<Vec<Scalar>>> = complement
        .iter()
        .map(|&a| {
            complement
                .iter()
                .map(|&b| restrict(&r.mul(&r.basis_vector(a), &r.basis_vector(b))))
                .collect()
        })
        .collect();
    let names = complement.iter().map(|&k| r.names()[k].clone()).collect();
    let s = make_structure_algebra(f, sd, restrict(r.unit()), table, Some(names))?;

    let projection = (0..dim)
        .map(|k| {
            let mut row = s.zero();
            if let Some(c) = pos(k) {
                row[c] = Scalar::from_integer(1.into());
            }
            row
        })
        .collect();
    let section = complement.iter().map(|&k| r.basis_vector(k)).collect();
    Ok(SplitNilpotentPair {
        r: r.clone(),
        ideal_basis,
        s,
        projection,
        section,
        nilpotency_index,
        ideal_indices,
        complement,
    })
}

impl SplitNilpotentPair {
    /// Indices of the R-basis vectors spanning I.
    pub fn ideal_indices(&self) -> &[usize] {
        &self.ideal_indices
    }

    /// Indices of the R-basis vectors spanning the image of the section.
    pub fn complement_indices(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, x: &RingElement) -> RingElement {
        self.complement.iter().map(|&k| x[k].clone()).collect()
    }

    pub fn lift(&self, y: &RingElement) -> RingElement {
        let mut x = self.r.zero();
        for (c, &k) in self.complement.iter().enumerate() {
            x[k] = y[c].clone();
        }
        x
    }

    pub fn in_ideal(&self, x: &RingElement) -> bool {
        self.complement.iter().all(|&k| x[k].is_zero())
    }
}
