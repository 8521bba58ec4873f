//! Groups given as subquotients of ℤ^k and handled in their own normal coordinates, with the
//! lattice operations couples are built from.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::dense::{echelon, lattice_basis, solve_echelon};
use crate::exactalg::{Domain, FPAbelianGroup, Integers, Invariants, Subquotient};

/// Integer matrix, one row per source generator.
pub type Mat = Vec<Vec<BigInt>>;

pub(crate) fn unit_rows(k: usize) -> Mat {
    (0..k)
        .map(|i| {
            let mut r = vec![BigInt::zero(); k];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

/// Rows m_i·e_i for the nonzero moduli.
pub(crate) fn mod_rows(moduli: &[BigInt]) -> Mat {
    let k = moduli.len();
    moduli
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| {
            let mut r = vec![BigInt::zero(); k];
            r[i] = m.clone();
            r
        })
        .collect()
}

pub(crate) fn vec_mat(v: &[BigInt], m: &Mat, cols: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

/// Whether every entry vanishes modulo the corresponding modulus (0 meaning ℤ).
pub(crate) fn vanishes_mod(v: &[BigInt], moduli: &[BigInt]) -> bool {
    let z = Integers;
    v.iter().zip(moduli).all(|(x, m)| z.reduce_mod(x, m).is_zero())
}

/// Generators of {x ∈ ⟨a⟩ : x·m ∈ ⟨t⟩}, for `a` in ℤ^k and `m` with `cols` columns.
pub(crate) fn preimage(a: &Mat, k: usize, m: &Mat, cols: usize, t: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    let mut stacked: Mat = a.iter().map(|x| vec_mat(x, m, cols)).collect();
    stacked.extend(t.iter().cloned());
    let ech = echelon(&Integers, &stacked, cols, true);
    ech.kernel
        .unwrap_or_default()
        .into_iter()
        .map(|c| vec_mat(&c[..a.len()], a, k))
        .filter(|x| x.iter().any(|v| !v.is_zero()))
        .collect()
}

/// Whether two generating sets span the same lattice in ℤ^k.
pub(crate) fn same_lattice(k: usize, a: &Mat, b: &Mat) -> bool {
    let z = Integers;
    let ea = lattice_basis(&z, a, k);
    let eb = lattice_basis(&z, b, k);
    a.iter().all(|x| solve_echelon(&z, &eb, x).is_some()) && b.iter().all(|x| solve_echelon(&z, &ea, x).is_some())
}

/// Some x with x·m ≡ y modulo ⟨t⟩, if one exists.
pub(crate) fn solve_mod(m: &Mat, cols: usize, t: &Mat, y: &[BigInt]) -> Option<Vec<BigInt>> {
    let z = Integers;
    let mut stacked = m.clone();
    stacked.extend(t.iter().cloned());
    let ech = echelon(&z, &stacked, cols, true);
    let c = solve_echelon(&z, &ech, y)?;
    let coef = vec_mat(&c, ech.transform.as_ref()?, stacked.len());
    Some(coef[..m.len()].to_vec())
}

/// A group ⟨num⟩/⟨den⟩ inside ℤ^k. Elements are addressed by normal coordinates.
#[derive(Debug, Clone)]
pub struct Node {
    sq: Subquotient<Integers>,
}

impl Node {
    pub(crate) fn new(k: usize, num: &Mat, den: &Mat) -> Result<Node> {
        Ok(Node {
            sq: Subquotient::new(&Integers, k, num, den)?,
        })
    }

    pub fn zero() -> Node {
        Node::new(0, &Vec::new(), &Vec::new()).expect("zero group")
    }

    /// ⊕ ℤ/m_i on the standard generators (m_i = 0 gives ℤ).
    pub fn from_moduli(moduli: &[BigInt]) -> Result<Node> {
        let k = moduli.len();
        Node::new(k, &unit_rows(k), &mod_rows(moduli))
    }

    pub fn group(&self) -> &FPAbelianGroup<Integers> {
        &self.sq.group
    }

    /// Number of normal coordinates.
    pub fn rank(&self) -> usize {
        self.sq.group.rank_nf()
    }

    pub fn moduli(&self) -> Vec<BigInt> {
        self.sq.group.moduli()
    }

    pub fn invariants(&self) -> Invariants {
        self.sq.group.invariants()
    }

    pub fn is_zero(&self) -> bool {
        self.sq.group.is_trivial()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sq.ambient_dim
    }

    /// Ambient vector representing an element given in normal coordinates.
    pub(crate) fn embed(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.sq.group.lift_nf(z)?;
        Ok(self.sq.embed(&c))
    }

    /// Normal coordinates of an ambient vector of the numerator.
    pub(crate) fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.sq.coords_of(x)?;
        self.sq.group.reduce(&c)
    }

    /// Ambient representatives of the normal-form basis.
    pub(crate) fn basis(&self) -> Result<Mat> {
        unit_rows(self.rank()).iter().map(|e| self.embed(e)).collect()
    }

    /// A subquotient of this group, from vectors in its normal coordinates.
    pub(crate) fn sub(&self, num: &Mat, den: &Mat) -> Result<Node> {
        let m = mod_rows(&self.moduli());
        let mut n_all = num.clone();
        n_all.extend(m.iter().cloned());
        let mut d_all = den.clone();
        d_all.extend(m);
        Node::new(self.rank(), &n_all, &d_all)
    }
}

/// Matrix in normal coordinates of the map induced by `f` on ambient vectors. Fails with
/// `IllDefinedMap` if a torsion generator is not sent to an element of matching order, and with
/// `NotExact` if an image leaves the target's numerator.
pub(crate) fn induced(src: &Node, tgt: &Node, f: impl Fn(&[BigInt]) -> Vec<BigInt>) -> Result<Mat> {
    let tm = tgt.moduli();
    let mut rows = Vec::with_capacity(src.rank());
    for (s, x) in src.basis()?.iter().enumerate() {
        let y = f(x);
        let row = if tgt.rank() == 0 {
            Vec::new()
        } else {
            tgt.project(&y).map_err(|_| Error::NotExact(format!("image of generator {s} leaves the target")))?
        };
        rows.push(row);
    }
    check_well_defined(&src.moduli(), &rows, &tm)?;
    Ok(rows)
}

pub(crate) fn check_well_defined(src_moduli: &[BigInt], rows: &Mat, tgt_moduli: &[BigInt]) -> Result<()> {
    for (s, (m, row)) in src_moduli.iter().zip(rows).enumerate() {
        if m.is_zero() {
            continue;
        }
        let scaled: Vec<BigInt> = row.iter().map(|x| x * m).collect();
        if !vanishes_mod(&scaled, tgt_moduli) {
            return Err(Error::IllDefinedMap { relation: s });
        }
    }
    Ok(())
}
