//! Kähler differentials Ω^n, the de Rham differential, and relative versions for split pairs.
//!
//! Ω^n is presented on generators b_{i0} db_{i1}∧…∧db_{in} for all index tuples, with the
//! Leibniz rule, d(1) = 0 and alternation as relations. For an 𝔽_p-algebra this computes
//! Ω_{R/𝔽_p}, which equals Ω_{R/ℤ} since d kills the prime ring; `integer_cross_check`
//! recomputes the same presentation over ℤ with p·g = 0 added.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{FinAlgebra, RingElement, SplitNilpotentPair};
use crate::error::{Error, Result};
use crate::exactalg::capacity;
use crate::exactalg::group::{Kernel, SubgroupQuotient};
use crate::exactalg::matrix::{normalize_row, SparseRow};
use crate::exactalg::{fp_group, map_kernel, Coefficients, Domain, FPAbelianGroup, Integers, Invariants, SparseMatrix};
use crate::Scalar;

/// Ω^n of an algebra as a finitely presented module over the coefficient field.
#[derive(Debug, Clone)]
pub struct DifferentialModule {
    pub algebra: FinAlgebra,
    pub degree: usize,
    pub labels: Vec<String>,
    /// Rows are relations in generator coordinates.
    pub relations: SparseMatrix<Scalar>,
    pub group: FPAbelianGroup<Coefficients>,
}

fn tuple_index(d: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * d + i)
}

fn index_tuple(d: usize, n1: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; n1];
    for slot in t.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    t
}

fn all_tuples(d: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = d.pow(len as u32);
    (0..total).map(move |i| index_tuple(d, len, i))
}

fn gen_count(alg: &FinAlgebra, n: usize) -> Result<usize> {
    let total = (alg.dim() as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    capacity::check_tensor("differential generators", total)?;
    Ok(total as usize)
}

/// Relation rows with rational entries, before reduction into a coefficient domain.
fn relation_rows(alg: &FinAlgebra, n: usize) -> Vec<Vec<(usize, Scalar)>> {
    let d = alg.dim();
    let mut rows = Vec::new();
    if n == 0 {
        return rows;
    }
    let g = |t: &[usize]| tuple_index(d, t);
    let one = Scalar::from_integer(1.into());
    for i0 in 0..d {
        for rest in all_tuples(d, n - 1) {
            // b_{i0}·d(b_j b_l) = b_{i0} b_j db_l + b_{i0} b_l db_j
            for j in 0..d {
                for l in 0..d {
                    let mut row = Vec::new();
                    for (k, c) in alg.mul_basis(j, l) {
                        row.push((g(&[&[i0, *k][..], &rest].concat()), c.clone()));
                    }
                    for (k, c) in alg.mul_basis(i0, j) {
                        row.push((g(&[&[*k, l][..], &rest].concat()), -c.clone()));
                    }
                    for (k, c) in alg.mul_basis(i0, l) {
                        row.push((g(&[&[*k, j][..], &rest].concat()), -c.clone()));
                    }
                    rows.push(row);
                }
            }
            // b_{i0}·d(1) = 0
            let row = alg
                .unit()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (g(&[&[i0, k][..], &rest].concat()), c.clone()))
                .collect();
            rows.push(row);
        }
    }
    // alternation in adjacent differential slots
    for t in all_tuples(d, n + 1) {
        for p in 1..n {
            let (a, b) = (t[p], t[p + 1]);
            if a < b {
                let mut s = t.clone();
                s.swap(p, p + 1);
                rows.push(vec![(g(&t), one.clone()), (g(&s), one.clone())]);
            } else if a == b {
                rows.push(vec![(g(&t), one.clone())]);
            }
        }
    }
    rows
}

fn to_domain_rows<D: Domain>(
    dom: &D,
    rows: &[Vec<(usize, Scalar)>],
    conv: impl Fn(&Scalar) -> Result<D::Elem>,
) -> Result<Vec<SparseRow<D::Elem>>> {
    rows.iter()
        .map(|r| {
            let terms = r.iter().map(|(i, c)| Ok((*i, conv(c)?))).collect::<Result<Vec<_>>>()?;
            Ok(normalize_row(dom, terms))
        })
        .collect()
}

fn labels(alg: &FinAlgebra, n: usize) -> Vec<String> {
    let names = alg.names();
    all_tuples(alg.dim(), n + 1)
        .map(|t| {
            let diffs: Vec<String> = t[1..].iter().map(|&i| format!("d{}", names[i])).collect();
            let coef = &names[t[0]];
            match (coef.as_str(), diffs.is_empty()) {
                (_, true) => coef.clone(),
                ("1", false) => diffs.join("^"),
                _ => format!("{coef}*{}", diffs.join("^")),
            }
        })
        .collect()
}

/// Ω^n_R.
pub fn omega(alg: &FinAlgebra, n: usize) -> Result<DifferentialModule> {
    let ngens = gen_count(alg, n)?;
    let f = alg.coeffs();
    let rows = to_domain_rows(&f, &relation_rows(alg, n), |c| f.from_rational(c))?;
    let relations = SparseMatrix::from_sorted_rows(ngens, rows.into_iter().filter(|r| !r.is_empty()).collect())?;
    let lab = labels(alg, n);
    let group = fp_group(&f, ngens, &relations)?.with_labels(lab.clone());
    Ok(DifferentialModule {
        algebra: alg.clone(),
        degree: n,
        labels: lab,
        relations,
        group,
    })
}

/// The same presentation taken over ℤ with p·g = 0 for every generator. For an 𝔽_p-algebra
/// its invariants must agree with those of `omega`.
pub fn integer_cross_check(alg: &FinAlgebra, n: usize) -> Result<FPAbelianGroup<Integers>> {
    let p = alg.coeffs().prime().ok_or(Error::InfiniteCoefficients)?;
    let ngens = gen_count(alg, n)?;
    let mut rows = to_domain_rows(&Integers, &relation_rows(alg, n), |c| {
        // structure constants of an 𝔽_p-algebra are stored as integers in 0..p
        Ok(c.to_integer())
    })?;
    for i in 0..ngens {
        rows.push(vec![(i, BigInt::from(p))]);
    }
    let rel = SparseMatrix::from_sorted_rows(ngens, rows.into_iter().filter(|r| !r.is_empty()).collect())?;
    fp_group(&Integers, ngens, &rel)
}

impl DifferentialModule {
    pub fn n_gens(&self) -> usize {
        self.labels.len()
    }

    pub fn generator(&self, tuple: &[usize]) -> usize {
        tuple_index(self.algebra.dim(), tuple)
    }

    /// Generator coordinates of r₀·dr₁∧…∧drₙ.
    pub fn form(&self, coeff: &RingElement, diffs: &[RingElement]) -> Result<Vec<Scalar>> {
        if diffs.len() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "expected {} differentials, got {}",
                self.degree,
                diffs.len()
            )));
        }
        let f = self.algebra.coeffs();
        let d = self.algebra.dim();
        let mut out = vec![Scalar::zero(); self.n_gens()];
        let factors: Vec<&RingElement> = std::iter::once(coeff).chain(diffs.iter()).collect();
        let supports: Vec<Vec<usize>> = factors
            .iter()
            .map(|v| (0..d).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; factors.len()];
        if supports.iter().any(|s| s.is_empty()) {
            return Ok(out);
        }
        loop {
            let t: Vec<usize> = idx.iter().zip(&supports).map(|(&k, s)| s[k]).collect();
            let c = t
                .iter()
                .zip(&factors)
                .fold(f.from_i64(1), |acc, (&i, v)| f.mul(&acc, &v[i]));
            let g = tuple_index(d, &t);
            out[g] = f.add(&out[g], &c);
            let mut pos = factors.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < supports[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Normal-form coordinates of an element given in generator coordinates.
    pub fn reduce(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.group.reduce(x)
    }

    pub fn is_zero(&self, x: &[Scalar]) -> Result<bool> {
        self.group.is_zero_element(x)
    }

    pub fn element_equal(&self, a: &[Scalar], b: &[Scalar]) -> Result<bool> {
        self.group.element_equal(a, b)
    }

    pub fn invariants(&self) -> Invariants {
        self.group.invariants()
    }

    pub fn rank(&self) -> usize {
        self.group.free_rank
    }

    /// Readable expression for generator coordinates.
    pub fn fmt_element(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c == &Scalar::from_integer(1.into()) { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for DifferentialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Omega^{} = {}", self.degree, self.group)
    }
}

/// d: Ω^n → Ω^{n+1}.
#[derive(Debug, Clone)]
pub struct DeRham {
    pub source: DifferentialModule,
    pub target: DifferentialModule,
    /// Row g is d of generator g in target generator coordinates.
    pub matrix: SparseMatrix<Scalar>,
}

pub fn de_rham_d(alg: &FinAlgebra, n: usize) -> Result<DeRham> {
    let source = omega(alg, n)?;
    let target = omega(alg, n + 1)?;
    de_rham_between(source, target)
}

fn de_rham_matrix(alg: &FinAlgebra, n: usize) -> Result<SparseMatrix<Scalar>> {
    let d = alg.dim();
    let f = alg.coeffs();
    let rows: Vec<SparseRow<Scalar>> = all_tuples(d, n + 1)
        .map(|t| {
            // b_{i0} db_{i1}… ↦ 1·db_{i0}∧db_{i1}…
            let terms = alg
                .unit()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (tuple_index(d, &[&[k][..], &t].concat()), c.clone()))
                .collect();
            normalize_row(&f, terms)
        })
        .collect();
    SparseMatrix::from_sorted_rows(d.pow(n as u32 + 2), rows)
}

fn de_rham_between(source: DifferentialModule, target: DifferentialModule) -> Result<DeRham> {
    let matrix = de_rham_matrix(&source.algebra, source.degree)?;
    // well-definedness: the kernel computation checks every relation
    map_kernel(&source.group, &target.group, &matrix)?;
    Ok(DeRham { source, target, matrix })
}

impl DeRham {
    /// d of an element in source generator coordinates, in target generator coordinates.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        crate::exactalg::matrix::dense_vec_mul(&self.source.algebra.coeffs(), x, &self.matrix)
    }

    /// The map on normal forms: row k is d of the k-th source normal generator.
    pub fn nf_matrix(&self) -> Result<Vec<Vec<Scalar>>> {
        (0..self.source.group.rank_nf())
            .map(|k| {
                let x = self.source.group.lift(k)?;
                self.target.reduce(&self.apply(&x))
            })
            .collect()
    }
}

/// Ω^n_{R,I} = ker(Ω^n_R → Ω^n_S).
#[derive(Debug, Clone)]
pub struct RelativeDifferentials {
    pub absolute: DifferentialModule,
    pub quotient: DifferentialModule,
    pub kernel: Kernel<Coefficients>,
}

fn projection_matrix(pair: &SplitNilpotentPair, n: usize) -> Result<SparseMatrix<Scalar>> {
    let d = pair.r.dim();
    let sd = pair.s.dim();
    let comp = pair.complement_indices();
    let one = Scalar::from_integer(1.into());
    let rows = all_tuples(d, n + 1)
        .map(|t| {
            let img: Option<Vec<usize>> = t.iter().map(|i| comp.iter().position(|c| c == i)).collect();
            match img {
                Some(s) => vec![(tuple_index(sd, &s), one.clone())],
                None => Vec::new(),
            }
        })
        .collect();
    SparseMatrix::from_sorted_rows(sd.pow(n as u32 + 1), rows)
}

pub fn relative_omega(pair: &SplitNilpotentPair, n: usize) -> Result<RelativeDifferentials> {
    let absolute = omega(&pair.r, n)?;
    let quotient = omega(&pair.s, n)?;
    let proj = projection_matrix(pair, n)?;
    let kernel = map_kernel(&absolute.group, &quotient.group, &proj)?;
    Ok(RelativeDifferentials {
        absolute,
        quotient,
        kernel,
    })
}

impl RelativeDifferentials {
    pub fn group(&self) -> &FPAbelianGroup<Coefficients> {
        &self.kernel.group
    }

    pub fn invariants(&self) -> Invariants {
        self.kernel.group.invariants()
    }

    /// Absolute generator coordinates of the relative normal generators.
    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.kernel.inclusion
    }
}

/// Ω^n_{R,I} / dΩ^{n−1}_{R,I}, built inside Ω^n_R.
#[derive(Debug, Clone)]
pub struct ExactQuotient {
    pub relative: RelativeDifferentials,
    pub quotient: SubgroupQuotient<Coefficients>,
}

pub fn omega_mod_exact(pair: &SplitNilpotentPair, n: usize) -> Result<ExactQuotient> {
    let relative = relative_omega(pair, n)?;
    let omega_n = &relative.absolute;
    let num = relative.kernel.lattice_nf().to_vec();
    let mut den = Vec::new();
    if n >= 1 {
        let lower = relative_omega(pair, n - 1)?;
        let dm = de_rham_matrix(&pair.r, n - 1)?;
        let f = pair.r.coeffs();
        for g in lower.generators() {
            let img = crate::exactalg::matrix::dense_vec_mul(&f, g, &dm);
            den.push(omega_n.reduce(&img)?);
        }
    }
    let quotient = omega_n.group.subquotient_nf(&num, &den)?;
    Ok(ExactQuotient { relative, quotient })
}

/// Ω^n_R / dΩ^{n−1}_R.
pub fn omega_mod_d(alg: &FinAlgebra, n: usize) -> Result<FPAbelianGroup<Coefficients>> {
    let omega_n = omega(alg, n)?;
    let k = omega_n.group.rank_nf();
    let zero = Scalar::from_integer(0.into());
    let one = Scalar::from_integer(1.into());
    let num: Vec<Vec<Scalar>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    let den = if n == 0 {
        Vec::new()
    } else {
        de_rham_between(omega(alg, n - 1)?, omega_n.clone())?.nf_matrix()?
    };
    Ok(omega_n.group.subquotient_nf(&num, &den)?.group().clone())
}

impl ExactQuotient {
    pub fn group(&self) -> &FPAbelianGroup<Coefficients> {
        self.quotient.group()
    }

    pub fn invariants(&self) -> Invariants {
        self.group().invariants()
    }

    /// Normal coordinates in the quotient of an element of Ω^n_{R,I} given in Ω^n_R generator
    /// coordinates.
    pub fn reduce(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.quotient.reduce_from_parent(&self.relative.absolute.group, x)
    }

    pub fn is_zero(&self, x: &[Scalar]) -> Result<bool> {
        // a vector space, so normal coordinates are free
        Ok(self.reduce(x)?.iter().all(|c| c.is_zero()))
    }

    /// Ω^n_R generator coordinates of the k-th normal generator of the quotient.
    pub fn lift(&self, k: usize) -> Result<Vec<Scalar>> {
        self.quotient.lift_to_parent(&self.relative.absolute.group, k)
    }
}
