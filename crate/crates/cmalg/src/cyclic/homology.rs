//! Hochschild, cyclic and negative cyclic homology from finite windows of total complexes.

use crate::error::{Error, Result};
use crate::exactalg::dense::echelon;
use crate::exactalg::sparse::field_rank;
use crate::exactalg::{complex_homology, Coefficients, Domain, FPAbelianGroup, GradedComplexSlice, SparseMatrix};
use crate::Scalar;

use super::ops::{CyclicTarget, OpCache, OperatorKind};

/// A total complex: for each degree a list of summands (C_m for the listed m).
struct Total {
    /// summands[n] for the degrees lo..=hi
    lo: i64,
    summands: Vec<Vec<Summand>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Summand {
    /// Column in the bicomplex.
    col: i64,
    /// Tensor degree of the underlying C_m.
    m: i64,
}

fn block_sizes(ops: &mut OpCache, s: &[Summand]) -> Result<Vec<usize>> {
    s.iter().map(|x| ops.dim(x.m)).collect()
}

/// Assembles a total differential degree by degree from a rule giving the block
/// (source summand → target summand), if any.
fn assemble(
    ops: &mut OpCache,
    total: &Total,
    rule: &dyn Fn(&mut OpCache, Summand, Summand) -> Result<Option<SparseMatrix<Scalar>>>,
) -> Result<GradedComplexSlice<Coefficients>> {
    let mut dims = Vec::new();
    let mut bounds = Vec::new();
    for (k, s) in total.summands.iter().enumerate() {
        let sizes = block_sizes(ops, s)?;
        dims.push(sizes.iter().sum());
        if k == 0 {
            continue;
        }
        let below = &total.summands[k - 1];
        let below_sizes = block_sizes(ops, below)?;
        let mut blocks: Vec<Vec<Option<SparseMatrix<Scalar>>>> = Vec::new();
        for src in s {
            let mut row = Vec::new();
            for tgt in below {
                row.push(rule(ops, *src, *tgt)?);
            }
            blocks.push(row);
        }
        let refs: Vec<Vec<Option<&SparseMatrix<Scalar>>>> =
            blocks.iter().map(|r| r.iter().map(|b| b.as_ref()).collect()).collect();
        bounds.push(SparseMatrix::block(&sizes, &below_sizes, &refs)?);
    }
    GradedComplexSlice::new(ops.coeffs(), total.lo, dims, bounds)
}

fn hochschild_slice(ops: &mut OpCache, lo: i64, hi: i64) -> Result<GradedComplexSlice<Coefficients>> {
    let total = Total {
        lo,
        summands: (lo..=hi).map(|n| vec![Summand { col: 0, m: n }]).collect(),
    };
    assemble(ops, &total, &|ops, s, _| Ok(Some(ops.get(OperatorKind::B, s.m)?)))
}

/// The Hochschild complex (C_n, b) in degrees lo..=hi.
pub fn hochschild_complex(target: &CyclicTarget, lo: usize, hi: usize) -> Result<GradedComplexSlice<Coefficients>> {
    let mut ops = OpCache::new(target);
    hochschild_slice(&mut ops, lo as i64, hi as i64)
}

fn window(n: i64) -> (i64, i64) {
    ((n - 1).max(0), n + 1)
}

/// HH_n (relative for a pair).
pub fn hh(target: &CyclicTarget, n: usize) -> Result<FPAbelianGroup<Coefficients>> {
    let mut ops = OpCache::new(target);
    let (lo, hi) = window(n as i64);
    let c = hochschild_slice(&mut ops, lo, hi)?;
    complex_homology(&c, n as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcRoute {
    /// The cyclic bicomplex CC with b and −b′ columns.
    Cyclic,
    /// The B-bicomplex with columns C_{n−2p}.
    Connes,
}

/// Tot CC in degrees lo..=hi: degree n holds C_{n−p} in column p for 0 ≤ p ≤ n.
pub fn cc_total(target: &CyclicTarget, lo: usize, hi: usize) -> Result<GradedComplexSlice<Coefficients>> {
    let mut ops = OpCache::new(target);
    cc_slice(&mut ops, lo as i64, hi as i64)
}

fn cc_slice(ops: &mut OpCache, lo: i64, hi: i64) -> Result<GradedComplexSlice<Coefficients>> {
    let total = Total {
        lo,
        summands: (lo..=hi)
            .map(|n| (0..=n).map(|p| Summand { col: p, m: n - p }).collect())
            .collect(),
    };
    let f = ops.coeffs();
    assemble(ops, &total, &|ops, s, t| {
        if t.col == s.col && t.m == s.m - 1 {
            // vertical: b in even columns, −b′ in odd ones
            if s.col % 2 == 0 {
                Ok(Some(ops.get(OperatorKind::B, s.m)?))
            } else {
                Ok(Some(ops.get(OperatorKind::BPrime, s.m)?.scale(&f, &f.from_i64(-1))))
            }
        } else if t.col == s.col - 1 && t.m == s.m {
            // horizontal: 1 − t out of odd columns, N out of even ones
            if s.col % 2 == 1 {
                let t_mat = ops.get(OperatorKind::Cyclic, s.m)?;
                let id = SparseMatrix::identity(&f, t_mat.rows());
                Ok(Some(id.sub(&f, &t_mat)?))
            } else {
                Ok(Some(ops.get(OperatorKind::Norm, s.m)?))
            }
        } else {
            Ok(None)
        }
    })
}

/// Tot of the B-bicomplex in degrees lo..=hi: degree n holds C_{n−2p} in column p.
pub fn connes_total(target: &CyclicTarget, lo: usize, hi: usize) -> Result<GradedComplexSlice<Coefficients>> {
    let mut ops = OpCache::new(target);
    connes_slice(&mut ops, lo as i64, hi as i64)
}

fn connes_slice(ops: &mut OpCache, lo: i64, hi: i64) -> Result<GradedComplexSlice<Coefficients>> {
    let total = Total {
        lo,
        summands: (lo..=hi)
            .map(|n| (0..=n / 2).map(|p| Summand { col: p, m: n - 2 * p }).collect())
            .collect(),
    };
    assemble(ops, &total, &b_bicomplex_rule)
}

fn b_bicomplex_rule(ops: &mut OpCache, s: Summand, t: Summand) -> Result<Option<SparseMatrix<Scalar>>> {
    if t.col == s.col && t.m == s.m - 1 {
        Ok(Some(ops.get(OperatorKind::B, s.m)?))
    } else if t.col == s.col - 1 && t.m == s.m + 1 {
        Ok(Some(ops.get(OperatorKind::ConnesB, s.m)?))
    } else {
        Ok(None)
    }
}

/// HC_n via the chosen bicomplex.
pub fn hc(target: &CyclicTarget, n: usize, route: HcRoute) -> Result<FPAbelianGroup<Coefficients>> {
    let mut ops = OpCache::new(target);
    let (lo, hi) = window(n as i64);
    let c = match route {
        HcRoute::Cyclic => cc_slice(&mut ops, lo, hi)?,
        HcRoute::Connes => connes_slice(&mut ops, lo, hi)?,
    };
    complex_homology(&c, n as i64)
}

/// Column-truncated negative B-bicomplex T_M: degree n holds C_{n+2j} for 0 ≤ j ≤ M, with
/// (dx)_j = b x_j + B x_{j−1}.
fn negative_slice(ops: &mut OpCache, lo: i64, hi: i64, depth: usize) -> Result<GradedComplexSlice<Coefficients>> {
    let total = Total {
        lo,
        summands: (lo..=hi)
            .map(|n| {
                (0..=depth as i64)
                    .map(|j| Summand { col: j, m: n + 2 * j })
                    .filter(|s| s.m >= 0)
                    .collect()
            })
            .collect(),
    };
    assemble(ops, &total, &|ops, s, t| {
        if t.col == s.col && t.m == s.m - 1 {
            Ok(Some(ops.get(OperatorKind::B, s.m)?))
        } else if t.col == s.col + 1 && t.m == s.m + 1 {
            Ok(Some(ops.get(OperatorKind::ConnesB, s.m)?))
        } else {
            Ok(None)
        }
    })
}

/// The truncated negative complex T_M in degrees lo..=hi.
pub fn negative_total(target: &CyclicTarget, lo: usize, hi: usize, depth: usize) -> Result<GradedComplexSlice<Coefficients>> {
    let mut ops = OpCache::new(target);
    negative_slice(&mut ops, lo as i64, hi as i64, depth)
}

fn rank_of(f: &Coefficients, m: &SparseMatrix<Scalar>) -> usize {
    field_rank(f, m.cols(), m.row_vecs().to_vec())
}

/// Image of H_n(T_{M+1}) → H_n(T_M), the part of H_n(T_M) that survives deeper truncation.
fn stable_image_dim(ops: &mut OpCache, n: i64, depth: usize) -> Result<usize> {
    let f = ops.coeffs();
    let deep = negative_slice(ops, n - 1, n, depth + 1)?;
    let z_deep = deep.dim(n) - rank_of(&f, &deep.boundary(n));
    // cycles of T_{M+1} supported in the dropped column: ker b on C_{n+2M+2}
    let last = n + 2 * (depth as i64 + 1);
    let b_last = ops.get(OperatorKind::B, last)?;
    let z_last = ops.dim(last)? - rank_of(&f, &b_last);
    let shallow = negative_slice(ops, n, n + 1, depth)?;
    let b_shallow = rank_of(&f, &shallow.boundary(n + 1));
    Ok(z_deep - z_last - b_shallow)
}

#[derive(Debug, Clone)]
pub struct TruncatedHn {
    pub group: FPAbelianGroup<Coefficients>,
    pub depth: usize,
    pub stabilized: bool,
}

/// HN_n approximated by the column-truncated negative complex of depth M. The reported group
/// is the image of H_n(T_{M+1}) in H_n(T_M); `stabilized` compares depths M−1 and M.
pub fn hn_truncated(target: &CyclicTarget, n: usize, depth: usize) -> Result<TruncatedHn> {
    if !target.coeffs().is_field() {
        return Err(Error::InvalidArgument("negative cyclic homology needs field coefficients".into()));
    }
    if depth == 0 {
        return Err(Error::InvalidArgument("truncation depth must be at least 1".into()));
    }
    let mut ops = OpCache::new(target);
    let f = ops.coeffs();
    let dim = stable_image_dim(&mut ops, n as i64, depth)?;
    let prev = stable_image_dim(&mut ops, n as i64, depth - 1)?;
    Ok(TruncatedHn {
        group: FPAbelianGroup::from_invariants(&f, dim, Vec::new()),
        depth,
        stabilized: dim == prev,
    })
}

/// dim of the image of H_n(X) → H_m(Y) under `map` (rows: X_n basis), over a field.
fn induced_rank(
    f: &Coefficients,
    x: &GradedComplexSlice<Coefficients>,
    n: i64,
    y: &GradedComplexSlice<Coefficients>,
    m: i64,
    map: &SparseMatrix<Scalar>,
) -> Result<usize> {
    let cycles = cycle_basis(f, x, n);
    let ydim = y.dim(m);
    let mut rows: Vec<Vec<Scalar>> = y.boundary(m + 1).to_dense();
    let by = echelon(f, &rows, ydim, false).rank();
    for z in &cycles {
        rows.push(crate::exactalg::matrix::dense_vec_mul(f, z, map));
    }
    Ok(echelon(f, &rows, ydim, false).rank() - by)
}

fn cycle_basis(f: &Coefficients, c: &GradedComplexSlice<Coefficients>, n: i64) -> Vec<Vec<Scalar>> {
    let dn = c.boundary(n);
    let dim = c.dim(n);
    if dn.cols() == 0 {
        return (0..dim)
            .map(|i| {
                let mut r = vec![f.from_i64(0); dim];
                r[i] = f.from_i64(1);
                r
            })
            .collect();
    }
    echelon(f, &dn.to_dense(), dn.cols(), true).kernel.unwrap()
}

fn homology_dim(f: &Coefficients, c: &GradedComplexSlice<Coefficients>, n: i64) -> usize {
    c.dim(n) - rank_of(f, &c.boundary(n)) - rank_of(f, &c.boundary(n + 1))
}

/// One joint A → B → C of the periodicity sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Joint {
    /// Name of the middle group, e.g. "HC_2".
    pub at: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct PeriodicityReport {
    pub hh: Vec<usize>,
    pub hc: Vec<usize>,
    pub joints: Vec<Joint>,
}

impl PeriodicityReport {
    pub fn all_exact(&self) -> bool {
        self.joints.iter().all(|j| j.exact)
    }
}

/// Checks exactness of … → HH_n →I HC_n →S HC_{n−2} →B HH_{n−1} → … for n ≤ n_max, with the
/// maps induced by 0 → (C, b) → Tot B → Tot B[2] → 0. Over a field, exactness at a joint is
/// rank(in) + rank(out) = dim, together with out∘in = 0 on homology.
pub fn connes_periodicity_check(target: &CyclicTarget, n_max: usize) -> Result<PeriodicityReport> {
    let f = target.coeffs();
    if !f.is_field() {
        return Err(Error::InvalidArgument("periodicity check needs field coefficients".into()));
    }
    let mut ops = OpCache::new(target);
    let top = n_max as i64 + 1;
    let hoch = hochschild_slice(&mut ops, 0, top)?;
    let tot = connes_slice(&mut ops, 0, top)?;
    let hh: Vec<usize> = (0..=n_max as i64).map(|n| homology_dim(&f, &hoch, n)).collect();
    let hc: Vec<usize> = (0..=n_max as i64).map(|n| homology_dim(&f, &tot, n)).collect();
    let hc_at = |n: i64| if n < 0 { 0 } else { hc[n as usize] };

    // I: inclusion of column 0; S: drop column 0 (Tot_n → Tot_{n−2}); ∂: [x] ↦ [B x_1]
    let inclusion = |ops: &mut OpCache, n: i64| -> Result<SparseMatrix<Scalar>> {
        let d = ops.dim(n)?;
        let total = tot.dim(n);
        let rows = (0..d).map(|i| vec![(i, f.from_i64(1))]).collect();
        SparseMatrix::from_sorted_rows(total, rows)
    };
    let shift = |ops: &mut OpCache, n: i64| -> Result<SparseMatrix<Scalar>> {
        let c0 = ops.dim(n)?;
        let total = tot.dim(n);
        let low = tot.dim(n - 2);
        let rows = (0..total)
            .map(|i| if i < c0 { Vec::new() } else { vec![(i - c0, f.from_i64(1))] })
            .collect();
        SparseMatrix::from_sorted_rows(low, rows)
    };
    let connecting = |ops: &mut OpCache, n: i64| -> Result<SparseMatrix<Scalar>> {
        // from Tot_{n−2} (as the quotient in degree n) to C_{n−1}; only column 1 of Tot_n,
        // which is the first summand C_{n−2} of Tot_{n−2}, contributes
        let b = ops.get(OperatorKind::ConnesB, n - 2)?;
        let src = tot.dim(n - 2);
        let mut rows = b.row_vecs().to_vec();
        rows.resize(src, Vec::new());
        SparseMatrix::from_sorted_rows(b.cols(), rows)
    };

    let mut joints = Vec::new();
    for n in 0..=n_max as i64 {
        // at HH_n: HC_{n−1} →∂ HH_n →I HC_n
        let r_in = if n >= 1 {
            let m = connecting(&mut ops, n + 1)?;
            induced_rank(&f, &tot, n - 1, &hoch, n, &m)?
        } else {
            0
        };
        let i_map = inclusion(&mut ops, n)?;
        let r_out = induced_rank(&f, &hoch, n, &tot, n, &i_map)?;
        let comp_zero = r_in == 0 || r_out == 0 || {
            let m = connecting(&mut ops, n + 1)?;
            composite_zero(&f, &tot, n - 1, &m, &i_map, &tot, n)?
        };
        joints.push(joint(format!("HH_{n}"), hh[n as usize], r_in, r_out, comp_zero));

        // at HC_n: HH_n →I HC_n →S HC_{n−2}
        let s_map = shift(&mut ops, n)?;
        let r_s = if n >= 2 { induced_rank(&f, &tot, n, &tot, n - 2, &s_map)? } else { 0 };
        let comp_zero = r_out == 0 || r_s == 0 || composite_zero(&f, &hoch, n, &i_map, &s_map, &tot, n - 2)?;
        joints.push(joint(format!("HC_{n}"), hc[n as usize], r_out, r_s, comp_zero));

        // at HC_{n−2}: HC_n →S HC_{n−2} →∂ HH_{n−1}
        if n >= 2 {
            let m = connecting(&mut ops, n)?;
            let r_b = induced_rank(&f, &tot, n - 2, &hoch, n - 1, &m)?;
            let comp_zero = r_s == 0 || r_b == 0 || composite_zero(&f, &tot, n, &s_map, &m, &hoch, n - 1)?;
            let mut j = joint(format!("HC_{}", n - 2), hc_at(n - 2), r_s, r_b, comp_zero);
            j.at = format!("HC_{} (after S)", n - 2);
            joints.push(j);
        }
    }
    Ok(PeriodicityReport { hh, hc, joints })
}

fn joint(at: String, dim: usize, rank_in: usize, rank_out: usize, comp_zero: bool) -> Joint {
    Joint {
        at,
        dim,
        rank_in,
        rank_out,
        exact: comp_zero && rank_in + rank_out == dim,
    }
}

/// Whether g∘f sends every cycle of X_n to a boundary of Z_m.
fn composite_zero(
    f: &Coefficients,
    x: &GradedComplexSlice<Coefficients>,
    n: i64,
    first: &SparseMatrix<Scalar>,
    second: &SparseMatrix<Scalar>,
    z: &GradedComplexSlice<Coefficients>,
    m: i64,
) -> Result<bool> {
    let comp = first.mul(f, second)?;
    let cycles = cycle_basis(f, x, n);
    let zdim = z.dim(m);
    let mut rows = z.boundary(m + 1).to_dense();
    let base = echelon(f, &rows, zdim, false).rank();
    for c in &cycles {
        rows.push(crate::exactalg::matrix::dense_vec_mul(f, c, &comp));
    }
    Ok(echelon(f, &rows, zdim, false).rank() == base)
}
