//! Finitely presented abelian groups (modules over the domain) in invariant-factor form.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::capacity;
use super::dense::{echelon, lattice_basis, smith, solve_echelon, Dense, Echelon};
use super::domain::{Domain, Integers};
use super::matrix::{dense_to_row, row_to_dense, SparseMatrix, SparseRow};
use super::sparse::{apply_steps, eliminate};
use crate::error::{Error, Result};

/// Isomorphism type of a finitely generated abelian group: ℤ^free_rank ⊕ ⊕ ℤ/d_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Invariants {
    pub fn trivial() -> Self {
        Invariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Normal form of a direct sum ℤ^r ⊕ ⊕ ℤ/m_i for arbitrary moduli (0 means ℤ, ±1 is dropped).
    pub fn from_moduli(free_rank: usize, moduli: &[BigInt]) -> Self {
        let mut free = free_rank;
        let diag: Vec<BigInt> = moduli
            .iter()
            .filter_map(|m| {
                if m.is_zero() {
                    free += 1;
                    None
                } else if m.abs().is_one() {
                    None
                } else {
                    Some(m.abs())
                }
            })
            .collect();
        let n = diag.len();
        let dense: Dense<BigInt> = (0..n)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = diag[i].clone();
                r
            })
            .collect();
        let s = smith(&Integers, &dense, n, false, false);
        Invariants {
            free_rank: free,
            torsion: s.diag.into_iter().filter(|x| !x.is_one() && !x.is_zero()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Invariants) -> Invariants {
        let mut m = self.torsion.clone();
        m.extend(other.torsion.iter().cloned());
        Invariants::from_moduli(self.free_rank + other.free_rank, &m)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of a finite group.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Normal-form machinery: Tietze substitutions, then the Smith form of the remaining core.
#[derive(Debug, Clone)]
struct Reducer<D: Domain> {
    n_gens: usize,
    steps: Vec<(usize, SparseRow<D::Elem>)>,
    core: Vec<usize>,
    v: Dense<D::Elem>,
    vinv: Dense<D::Elem>,
    /// Indices (into the Smith basis of the core) that survive, torsion first, then free.
    keep: Vec<usize>,
    moduli: Vec<D::Elem>,
}

#[derive(Debug, Clone)]
pub struct FPAbelianGroup<D: Domain = Integers> {
    pub free_rank: usize,
    /// Invariant factors d_1 | d_2 | … (each a non-unit); empty over a field.
    pub torsion: Vec<D::Elem>,
    pub presentation: Option<Arc<SparseMatrix<D::Elem>>>,
    pub basis_labels: Option<Vec<String>>,
    domain: D,
    n_gens: usize,
    reducer: Option<Arc<Reducer<D>>>,
}

/// Presentation with `n_gens` generators and one relation per row of `relations`.
pub fn fp_group<D: Domain>(d: &D, n_gens: usize, relations: &SparseMatrix<D::Elem>) -> Result<FPAbelianGroup<D>> {
    if relations.cols() != n_gens {
        return Err(Error::DimensionMismatch(format!(
            "relations have {} columns, expected {n_gens}",
            relations.cols()
        )));
    }
    capacity::check_nnz("presentation", relations.nnz())?;
    let mut g = build(d, n_gens, relations.row_vecs().to_vec())?;
    g.presentation = Some(Arc::new(relations.clone()));
    Ok(g)
}

fn build<D: Domain>(d: &D, n_gens: usize, rows: Vec<SparseRow<D::Elem>>) -> Result<FPAbelianGroup<D>> {
    let elim = eliminate(d, n_gens, rows, true);
    let core = elim.core_cols();
    let k = core.len();
    let mut pos = vec![usize::MAX; n_gens];
    for (i, &c) in core.iter().enumerate() {
        pos[c] = i;
    }
    let core_rows: Vec<Vec<D::Elem>> = elim
        .remaining
        .iter()
        .map(|r| {
            let mut v = vec![D::Elem::zero(); k];
            for (c, x) in r {
                v[pos[*c]] = x.clone();
            }
            v
        })
        .collect();
    capacity::check_dense("dense core", k, k)?;
    let basis = if core_rows.is_empty() {
        Vec::new()
    } else {
        lattice_basis(d, &core_rows, k).rows
    };
    let s = smith(d, &basis, k, false, true);
    let mut diag = s.diag.clone();
    diag.resize(k, D::Elem::zero());
    let mut keep = Vec::new();
    let mut moduli = Vec::new();
    let mut torsion = Vec::new();
    let mut free_rank = 0;
    for (i, x) in diag.iter().enumerate() {
        if x.is_zero() {
            keep.push(i);
            moduli.push(D::Elem::zero());
            free_rank += 1;
        } else if !d.is_unit(x) {
            keep.push(i);
            moduli.push(x.clone());
            torsion.push(x.clone());
        }
    }
    let reducer = Reducer {
        n_gens,
        steps: elim.steps,
        core: core.clone(),
        v: s.v.unwrap(),
        vinv: s.vinv.unwrap(),
        keep,
        moduli,
    };
    Ok(FPAbelianGroup {
        free_rank,
        torsion,
        presentation: None,
        basis_labels: None,
        domain: d.clone(),
        n_gens,
        reducer: Some(Arc::new(reducer)),
    })
}

impl<D: Domain> FPAbelianGroup<D> {
    /// Free module of the given rank with its standard basis.
    pub fn free(d: &D, rank: usize) -> Self {
        build(d, rank, Vec::new()).expect("free module")
    }

    /// Group known only up to isomorphism (for instance from rank counts); element-level
    /// operations return `NoElementData`.
    pub fn from_invariants(d: &D, free_rank: usize, torsion: Vec<D::Elem>) -> Self {
        FPAbelianGroup {
            free_rank,
            torsion,
            presentation: None,
            basis_labels: None,
            domain: d.clone(),
            n_gens: 0,
            reducer: None,
        }
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }
    pub fn n_gens(&self) -> usize {
        self.n_gens
    }
    pub fn has_elements(&self) -> bool {
        self.reducer.is_some()
    }
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.basis_labels = Some(labels);
        self
    }

    /// Number of normal-form coordinates (torsion ones first, then free ones).
    pub fn rank_nf(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Modulus of each normal-form coordinate; zero for free coordinates.
    pub fn moduli(&self) -> Vec<D::Elem> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat_n(D::Elem::zero(), self.free_rank));
        m
    }

    fn reducer(&self) -> Result<&Reducer<D>> {
        self.reducer.as_deref().ok_or(Error::NoElementData)
    }

    /// Normal-form coordinates of the element with generator coordinates `x`.
    pub fn reduce(&self, x: &[D::Elem]) -> Result<Vec<D::Elem>> {
        let r = self.reducer()?;
        if x.len() != r.n_gens {
            return Err(Error::DimensionMismatch(format!("vector of length {}, {} generators", x.len(), r.n_gens)));
        }
        let d = &self.domain;
        let mut x = x.to_vec();
        apply_steps(d, &r.steps, &mut x);
        let y: Vec<D::Elem> = r.core.iter().map(|&c| x[c].clone()).collect();
        Ok(r
            .keep
            .iter()
            .zip(&r.moduli)
            .map(|(&k, m)| {
                let mut z = D::Elem::zero();
                for (yi, row) in y.iter().zip(&r.v) {
                    if !yi.is_zero() && !row[k].is_zero() {
                        z = d.add(&z, &d.mul(yi, &row[k]));
                    }
                }
                d.reduce_mod(&z, m)
            })
            .collect())
    }

    pub fn reduce_sparse(&self, x: &[(usize, D::Elem)]) -> Result<Vec<D::Elem>> {
        self.reduce(&row_to_dense(x, self.n_gens))
    }

    /// Reduces a vector already in normal coordinates modulo the invariant factors.
    pub fn reduce_nf(&self, z: &[D::Elem]) -> Vec<D::Elem> {
        z.iter()
            .zip(self.moduli())
            .map(|(x, m)| self.domain.reduce_mod(x, &m))
            .collect()
    }

    /// Generator coordinates of the k-th normal-form basis element.
    pub fn lift(&self, k: usize) -> Result<Vec<D::Elem>> {
        let r = self.reducer()?;
        let idx = *r
            .keep
            .get(k)
            .ok_or_else(|| Error::IndexOutOfRange(format!("normal-form index {k}")))?;
        let mut x = vec![D::Elem::zero(); r.n_gens];
        for (j, &c) in r.core.iter().enumerate() {
            x[c] = r.vinv[idx][j].clone();
        }
        Ok(x)
    }

    /// Generator coordinates of an element given in normal coordinates.
    pub fn lift_nf(&self, z: &[D::Elem]) -> Result<Vec<D::Elem>> {
        let d = &self.domain;
        let mut x = vec![D::Elem::zero(); self.n_gens];
        for (k, c) in z.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let l = self.lift(k)?;
            for (xi, li) in x.iter_mut().zip(l) {
                if !li.is_zero() {
                    *xi = d.add(xi, &d.mul(c, &li));
                }
            }
        }
        Ok(x)
    }

    pub fn is_zero_element(&self, x: &[D::Elem]) -> Result<bool> {
        Ok(self.reduce(x)?.iter().all(|v| v.is_zero()))
    }

    /// True iff a − b lies in the relation lattice.
    pub fn element_equal(&self, a: &[D::Elem], b: &[D::Elem]) -> Result<bool> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch("element lengths differ".into()));
        }
        let d = &self.domain;
        let diff: Vec<D::Elem> = a.iter().zip(b).map(|(x, y)| d.sub(x, y)).collect();
        self.is_zero_element(&diff)
    }

    /// Subquotient (⟨num⟩ + L)/(⟨den⟩ + L) of this group, L the relation lattice; vectors are
    /// in generator coordinates and ⟨den⟩ must lie in ⟨num⟩ + L.
    pub fn subquotient(&self, num: &[Vec<D::Elem>], den: &[Vec<D::Elem>]) -> Result<SubgroupQuotient<D>> {
        let num_nf = num.iter().map(|x| self.reduce(x)).collect::<Result<Vec<_>>>()?;
        let den_nf = den.iter().map(|x| self.reduce(x)).collect::<Result<Vec<_>>>()?;
        self.subquotient_nf(&num_nf, &den_nf)
    }

    /// As `subquotient`, with vectors in normal coordinates.
    pub fn subquotient_nf(&self, num: &[Vec<D::Elem>], den: &[Vec<D::Elem>]) -> Result<SubgroupQuotient<D>> {
        let d = &self.domain;
        let k = self.rank_nf();
        let mut mod_rows = Vec::new();
        for (i, m) in self.moduli().iter().enumerate() {
            if !m.is_zero() {
                let mut r = vec![D::Elem::zero(); k];
                r[i] = m.clone();
                mod_rows.push(r);
            }
        }
        let mut n_all = num.to_vec();
        n_all.extend(mod_rows.iter().cloned());
        let mut d_all = den.to_vec();
        d_all.extend(mod_rows);
        let sq = Subquotient::new(d, k, &n_all, &d_all)?;
        Ok(SubgroupQuotient { parent_nf_rank: k, sq })
    }

    /// Isomorphism type seen as an abelian group: a field 𝔽_p contributes ℤ/p per dimension.
    pub fn invariants(&self) -> Invariants
    where
        D: IntegerView,
    {
        self.domain.invariants_of(self)
    }
}

/// Conversion of groups over any domain to abelian-group invariants.
pub trait IntegerView: Domain {
    fn invariants_of(&self, g: &FPAbelianGroup<Self>) -> Invariants;
}

impl IntegerView for Integers {
    fn invariants_of(&self, g: &FPAbelianGroup<Self>) -> Invariants {
        Invariants {
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
        }
    }
}

impl IntegerView for super::domain::Coefficients {
    fn invariants_of(&self, g: &FPAbelianGroup<Self>) -> Invariants {
        match self {
            super::domain::Coefficients::PrimeField(p) => Invariants::from_moduli(0, &vec![BigInt::from(*p); g.free_rank]),
            _ => Invariants {
                free_rank: g.free_rank,
                torsion: g
                    .torsion
                    .iter()
                    .map(|t| self.to_integer(t).expect("integral torsion"))
                    .collect(),
            },
        }
    }
}

impl<D: Domain> fmt::Display for FPAbelianGroup<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let d = &self.domain;
        let base = if d.is_field() {
            match d.characteristic() {
                0 => "Q".to_string(),
                p => format!("F_{p}"),
            }
        } else {
            "Z".to_string()
        };
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.clone()),
            r => parts.push(format!("{base}^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", d.fmt_elem(t)));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The group (⟨num⟩)/(⟨den⟩) inside a free module D^k, with the echelon basis of ⟨num⟩ used
/// as its generating set.
#[derive(Debug, Clone)]
pub struct Subquotient<D: Domain> {
    pub ambient_dim: usize,
    basis: Echelon<D::Elem>,
    pub group: FPAbelianGroup<D>,
}

impl<D: Domain> Subquotient<D> {
    pub fn new(d: &D, k: usize, num: &[Vec<D::Elem>], den: &[Vec<D::Elem>]) -> Result<Self> {
        capacity::check_dense("subquotient", num.len().max(1), k)?;
        let basis = lattice_basis(d, num, k);
        let r = basis.rank();
        let mut rels = Vec::with_capacity(den.len());
        for y in den {
            let c = solve_echelon(d, &basis, y).ok_or(Error::NotInSubgroup)?;
            let row = dense_to_row(&c);
            if !row.is_empty() {
                rels.push(row);
            }
        }
        let mut group = build(d, r, rels.clone())?;
        group.presentation = Some(Arc::new(SparseMatrix::from_sorted_rows(r, rels)?));
        Ok(Subquotient {
            ambient_dim: k,
            basis,
            group,
        })
    }

    /// Generator coordinates (in `group`) of an ambient vector of the numerator.
    pub fn coords_of(&self, x: &[D::Elem]) -> Result<Vec<D::Elem>> {
        solve_echelon(self.group.domain(), &self.basis, x).ok_or(Error::NotInSubgroup)
    }

    /// Ambient vector of an element given in generator coordinates.
    pub fn embed(&self, c: &[D::Elem]) -> Vec<D::Elem> {
        let d = self.group.domain();
        let mut out = vec![D::Elem::zero(); self.ambient_dim];
        for (ci, row) in c.iter().zip(&self.basis.rows) {
            if ci.is_zero() {
                continue;
            }
            for (o, h) in out.iter_mut().zip(row) {
                if !h.is_zero() {
                    *o = d.add(o, &d.mul(ci, h));
                }
            }
        }
        out
    }

    /// Echelon basis of the numerator.
    pub fn numerator_basis(&self) -> &[Vec<D::Elem>] {
        &self.basis.rows
    }

    pub fn contains(&self, x: &[D::Elem]) -> bool {
        solve_echelon(self.group.domain(), &self.basis, x).is_some()
    }
}

/// A subquotient of a group `G`, built in G's normal coordinates.
#[derive(Debug, Clone)]
pub struct SubgroupQuotient<D: Domain> {
    parent_nf_rank: usize,
    pub sq: Subquotient<D>,
}

impl<D: Domain> SubgroupQuotient<D> {
    pub fn group(&self) -> &FPAbelianGroup<D> {
        &self.sq.group
    }

    /// Normal coordinates (in the subquotient) of an element of the parent given in the
    /// parent's generator coordinates.
    pub fn reduce_from_parent(&self, parent: &FPAbelianGroup<D>, x: &[D::Elem]) -> Result<Vec<D::Elem>> {
        let z = parent.reduce(x)?;
        let c = self.sq.coords_of(&z)?;
        self.sq.group.reduce(&c)
    }

    /// Parent generator coordinates of the k-th normal-form element of the subquotient.
    pub fn lift_to_parent(&self, parent: &FPAbelianGroup<D>, k: usize) -> Result<Vec<D::Elem>> {
        debug_assert_eq!(parent.rank_nf(), self.parent_nf_rank);
        let c = self.sq.group.lift(k)?;
        let z = self.sq.embed(&c);
        parent.lift_nf(&z)
    }
}

/// Kernel of a homomorphism, with generators lifted into the source.
#[derive(Debug, Clone)]
pub struct Kernel<D: Domain> {
    pub group: FPAbelianGroup<D>,
    /// Source generator coordinates of each normal-form generator of `group`.
    pub inclusion: Vec<Vec<D::Elem>>,
    sub: SubgroupQuotient<D>,
}

impl<D: Domain> Kernel<D> {
    /// Normal coordinates in the kernel of a source element that lies in it.
    pub fn coords_of(&self, source: &FPAbelianGroup<D>, x: &[D::Elem]) -> Result<Vec<D::Elem>> {
        self.sub.reduce_from_parent(source, x)
    }
    /// The kernel's numerator lattice in the source's normal coordinates.
    pub fn lattice_nf(&self) -> &[Vec<D::Elem>] {
        self.sub.sq.numerator_basis()
    }
}

/// Kernel of f: source → target, where `images` row i holds the target generator coordinates
/// of f(source generator i). Checks that every source relation maps to zero.
pub fn map_kernel<D: Domain>(
    source: &FPAbelianGroup<D>,
    target: &FPAbelianGroup<D>,
    images: &SparseMatrix<D::Elem>,
) -> Result<Kernel<D>> {
    let d = source.domain();
    if images.rows() != source.n_gens() || images.cols() != target.n_gens() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, groups have {} and {} generators",
            images.rows(),
            images.cols(),
            source.n_gens(),
            target.n_gens()
        )));
    }
    let kt = target.rank_nf();
    let tmod = target.moduli();
    // images of source generators in target normal coordinates
    let red: Vec<Vec<D::Elem>> = (0..source.n_gens())
        .map(|i| target.reduce(&row_to_dense(images.row(i), target.n_gens())))
        .collect::<Result<_>>()?;
    if let Some(pres) = &source.presentation {
        for (ri, row) in pres.row_vecs().iter().enumerate() {
            let mut acc = vec![D::Elem::zero(); kt];
            for (c, a) in row {
                for (x, y) in acc.iter_mut().zip(&red[*c]) {
                    if !y.is_zero() {
                        *x = d.add(x, &d.mul(a, y));
                    }
                }
            }
            if acc.iter().zip(&tmod).any(|(x, m)| !d.reduce_mod(x, m).is_zero()) {
                return Err(Error::IllDefinedMap { relation: ri });
            }
        }
    }
    let ks = source.rank_nf();
    // A: source normal basis → target normal coordinates
    let a: Vec<Vec<D::Elem>> = (0..ks)
        .map(|k| {
            let l = source.lift(k)?;
            let mut acc = vec![D::Elem::zero(); kt];
            for (i, c) in l.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in acc.iter_mut().zip(&red[i]) {
                    if !y.is_zero() {
                        *x = d.add(x, &d.mul(c, y));
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let smod = source.moduli();
    for (k, m) in smod.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        let img: Vec<D::Elem> = a[k].iter().map(|x| d.mul(m, x)).collect();
        if img.iter().zip(&tmod).any(|(x, t)| !d.reduce_mod(x, t).is_zero()) {
            return Err(Error::IllDefinedMap { relation: k });
        }
    }
    // left kernel of [A; diag(tmod)]
    let mut stacked = a.clone();
    for (j, m) in tmod.iter().enumerate() {
        if !m.is_zero() {
            let mut r = vec![D::Elem::zero(); kt];
            r[j] = m.clone();
            stacked.push(r);
        }
    }
    let ech = echelon(d, &stacked, kt, true);
    let num: Vec<Vec<D::Elem>> = ech
        .kernel
        .unwrap()
        .into_iter()
        .map(|row| row[..ks].to_vec())
        .collect();
    let sub = source.subquotient_nf(&num, &[])?;
    let inclusion = (0..sub.group().rank_nf())
        .map(|k| sub.lift_to_parent(source, k))
        .collect::<Result<_>>()?;
    Ok(Kernel {
        group: sub.group().clone(),
        inclusion,
        sub,
    })
}

/// Convenience: the element-equality test on generator coordinates.
pub fn element_equal<D: Domain>(g: &FPAbelianGroup<D>, a: &[D::Elem], b: &[D::Elem]) -> Result<bool> {
    g.element_equal(a, b)
}
