//! Finite first-quadrant cohomological bicomplexes of finitely generated abelian groups, their
//! total complexes and the column filtration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{FPAbelianGroup, Integers, Invariants};

use super::lattice::{check_well_defined, mod_rows, preimage, unit_rows, vanishes_mod, vec_mat, Mat, Node};

/// A cochain complex C^0 → C^1 → … of groups ⊕ ℤ/m (m = 0 for ℤ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub moduli: Vec<Vec<BigInt>>,
    /// maps[n]: C^n → C^{n+1}; one row per generator of C^n.
    pub maps: Vec<Mat>,
}

/// Entries C^{p,q} = ⊕ ℤ/m for 0 ≤ p < cols, 0 ≤ q < rows, with d_h of bidegree (1,0) and d_v of
/// bidegree (0,1). Squares anticommute, so the total differential is d_h + d_v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicomplex {
    cols: usize,
    rows: usize,
    moduli: Vec<Vec<Vec<BigInt>>>,
    horizontal: Vec<Vec<Mat>>,
    vertical: Vec<Vec<Mat>>,
}

/// The filtration on H^n(Tot) by columns, computed on the total complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredTotals {
    pub degrees: BTreeMap<i64, DegreeTotals>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTotals {
    pub total: Invariants,
    /// gr^p H^n = F^p H^n / F^{p+1} H^n.
    pub graded: BTreeMap<i64, Invariants>,
}

fn zero_map(rows: usize, cols: usize) -> Mat {
    vec![vec![BigInt::zero(); cols]; rows]
}

fn shape_ok(m: &Mat, rows: usize, cols: usize) -> bool {
    m.len() == rows && m.iter().all(|r| r.len() == cols)
}

impl Bicomplex {
    /// `moduli[p][q]` lists the generators of C^{p,q}; `horizontal[p][q]` and `vertical[p][q]`
    /// hold the generator images (an empty target at the edge).
    pub fn new(moduli: Vec<Vec<Vec<BigInt>>>, horizontal: Vec<Vec<Mat>>, vertical: Vec<Vec<Mat>>) -> Result<Bicomplex> {
        let cols = moduli.len();
        let rows = moduli.first().map_or(0, |c| c.len());
        if moduli.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("columns of different heights".into()));
        }
        let bc = Bicomplex {
            cols,
            rows,
            moduli,
            horizontal,
            vertical,
        };
        bc.validate()?;
        Ok(bc)
    }

    /// The zero bicomplex of the given shape.
    pub fn zero(cols: usize, rows: usize) -> Bicomplex {
        Bicomplex {
            cols,
            rows,
            moduli: vec![vec![Vec::new(); rows]; cols],
            horizontal: vec![vec![Vec::new(); rows]; cols],
            vertical: vec![vec![Vec::new(); rows]; cols],
        }
    }

    fn validate(&self) -> Result<()> {
        if self.horizontal.len() != self.cols || self.vertical.len() != self.cols {
            return Err(Error::DimensionMismatch("map arrays must have one entry per column".into()));
        }
        for p in 0..self.cols {
            if self.horizontal[p].len() != self.rows || self.vertical[p].len() != self.rows {
                return Err(Error::DimensionMismatch(format!("column {p}: map arrays must have one entry per row")));
            }
            for q in 0..self.rows {
                let n = self.dim(p, q);
                if !shape_ok(&self.horizontal[p][q], n, self.dim(p + 1, q)) {
                    return Err(Error::DimensionMismatch(format!("horizontal map at ({p},{q})")));
                }
                if !shape_ok(&self.vertical[p][q], n, self.dim(p, q + 1)) {
                    return Err(Error::DimensionMismatch(format!("vertical map at ({p},{q})")));
                }
                check_well_defined(&self.moduli[p][q], &self.horizontal[p][q], self.entry(p + 1, q))?;
                check_well_defined(&self.moduli[p][q], &self.vertical[p][q], self.entry(p, q + 1))?;
            }
        }
        for p in 0..self.cols {
            for q in 0..self.rows {
                let degree = (p + q) as i64;
                let h = &self.horizontal[p][q];
                let v = &self.vertical[p][q];
                if p + 2 < self.cols {
                    let hh = self.compose(h, &self.horizontal[p + 1][q], self.dim(p + 2, q));
                    if !hh.iter().all(|r| vanishes_mod(r, self.entry(p + 2, q))) {
                        return Err(Error::NotAComplex { degree });
                    }
                }
                if q + 2 < self.rows {
                    let vv = self.compose(v, &self.vertical[p][q + 1], self.dim(p, q + 2));
                    if !vv.iter().all(|r| vanishes_mod(r, self.entry(p, q + 2))) {
                        return Err(Error::NotAComplex { degree });
                    }
                }
                if p + 1 < self.cols && q + 1 < self.rows {
                    let c = self.dim(p + 1, q + 1);
                    let hv = self.compose(h, &self.vertical[p + 1][q], c);
                    let vh = self.compose(v, &self.horizontal[p][q + 1], c);
                    let ok = hv.iter().zip(&vh).all(|(a, b)| {
                        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        vanishes_mod(&s, self.entry(p + 1, q + 1))
                    });
                    if !ok {
                        return Err(Error::NotAComplex { degree });
                    }
                }
            }
        }
        Ok(())
    }

    fn compose(&self, a: &Mat, b: &Mat, cols: usize) -> Mat {
        a.iter().map(|r| vec_mat(r, b, cols)).collect()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Moduli of C^{p,q}; empty outside the support.
    pub fn entry(&self, p: usize, q: usize) -> &[BigInt] {
        if p < self.cols && q < self.rows {
            &self.moduli[p][q]
        } else {
            &[]
        }
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.entry(p, q).len()
    }

    pub fn horizontal(&self, p: usize, q: usize) -> &Mat {
        &self.horizontal[p][q]
    }

    pub fn vertical(&self, p: usize, q: usize) -> &Mat {
        &self.vertical[p][q]
    }

    /// The bicomplex A ⊗ B with d_h = d_A ⊗ 1 and d_v = (−1)^p 1 ⊗ d_B; the generator a ⊗ b
    /// has modulus gcd(m_a, m_b).
    pub fn tensor(a: &Cochain, b: &Cochain) -> Result<Bicomplex> {
        let cols = a.moduli.len();
        let rows = b.moduli.len();
        let mut bc = Bicomplex::zero(cols, rows);
        for p in 0..cols {
            for q in 0..rows {
                bc.moduli[p][q] = a.moduli[p]
                    .iter()
                    .flat_map(|x| b.moduli[q].iter().map(move |y| x.gcd(y)))
                    .collect();
            }
        }
        for p in 0..cols {
            for q in 0..rows {
                let (na, nb) = (a.moduli[p].len(), b.moduli[q].len());
                let na1 = a.moduli.get(p + 1).map_or(0, |m| m.len());
                let nb1 = b.moduli.get(q + 1).map_or(0, |m| m.len());
                let mut h = zero_map(na * nb, na1 * nb);
                if p + 1 < cols {
                    for x in 0..na {
                        for x1 in 0..na1 {
                            for y in 0..nb {
                                h[x * nb + y][x1 * nb + y] = a.maps[p][x][x1].clone();
                            }
                        }
                    }
                }
                let mut v = zero_map(na * nb, na * nb1);
                if q + 1 < rows {
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    for x in 0..na {
                        for y in 0..nb {
                            for y1 in 0..nb1 {
                                v[x * nb + y][x * nb1 + y1] = &b.maps[q][y][y1] * sign;
                            }
                        }
                    }
                }
                bc.horizontal[p][q] = h;
                bc.vertical[p][q] = v;
            }
        }
        bc.validate()?;
        Ok(bc)
    }

    /// Places `other` with its (0,0) entry at (dp, dq) and adds it as a direct summand.
    pub fn add_summand(&mut self, other: &Bicomplex, dp: usize, dq: usize) -> Result<()> {
        if dp + other.cols > self.cols || dq + other.rows > self.rows {
            return Err(Error::DimensionMismatch("summand does not fit".into()));
        }
        let old = self.clone();
        for p in 0..other.cols {
            for q in 0..other.rows {
                self.moduli[p + dp][q + dq].extend(other.moduli[p][q].iter().cloned());
            }
        }
        for p in 0..self.cols {
            for q in 0..self.rows {
                let inside = |p: usize, q: usize| p >= dp && q >= dq && p - dp < other.cols && q - dq < other.rows;
                let block = |m_old: &Mat, m_new: Option<&Mat>, tgt_old: usize, tgt_new: usize, src_new: usize| {
                    let mut out = Vec::new();
                    for r in m_old {
                        let mut row = r.clone();
                        row.extend(std::iter::repeat_n(BigInt::zero(), tgt_new));
                        out.push(row);
                    }
                    for i in 0..src_new {
                        let mut row = vec![BigInt::zero(); tgt_old];
                        match m_new {
                            Some(m) => row.extend(m[i].iter().cloned()),
                            None => row.extend(std::iter::repeat_n(BigInt::zero(), tgt_new)),
                        }
                        out.push(row);
                    }
                    out
                };
                let src_new = if inside(p, q) { other.dim(p - dp, q - dq) } else { 0 };
                let h_new = if inside(p + 1, q) { other.dim(p + 1 - dp, q - dq) } else { 0 };
                let v_new = if inside(p, q + 1) { other.dim(p - dp, q + 1 - dq) } else { 0 };
                let hm = (src_new > 0 && h_new > 0).then(|| &other.horizontal[p - dp][q - dq]);
                let vm = (src_new > 0 && v_new > 0).then(|| &other.vertical[p - dp][q - dq]);
                self.horizontal[p][q] = block(&old.horizontal[p][q], hm, old.dim(p + 1, q), h_new, src_new);
                self.vertical[p][q] = block(&old.vertical[p][q], vm, old.dim(p, q + 1), v_new, src_new);
            }
        }
        self.validate()
    }

    /// Replaces generator i of C^{p,q} by e_i + c·e_j. Needs m_j | c·m_i so that the change of
    /// basis is an automorphism.
    pub fn change_basis(&mut self, p: usize, q: usize, i: usize, j: usize, c: &BigInt) -> Result<()> {
        let m = &self.moduli[p][q];
        let (mi, mj) = (&m[i], &m[j]);
        let ok = if mj.is_zero() { (mi * c).is_zero() } else { (mi * c).is_multiple_of(mj) };
        if i == j || !ok {
            return Err(Error::InvalidArgument(format!("e_{i} + {c}·e_{j} is not a basis change of C^({p},{q})")));
        }
        for maps in [&mut self.horizontal, &mut self.vertical] {
            let rows = &mut maps[p][q];
            let rj = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&rj) {
                *x += c * y;
            }
        }
        // maps into C^{p,q}: coordinates change by column_j −= c·column_i
        if p > 0 {
            for r in self.horizontal[p - 1][q].iter_mut() {
                let t = &r[i] * c;
                r[j] -= t;
            }
        }
        if q > 0 {
            for r in self.vertical[p][q - 1].iter_mut() {
                let t = &r[i] * c;
                r[j] -= t;
            }
        }
        self.validate()
    }

    /// Highest total degree with a nonzero entry possible.
    pub fn top_degree(&self) -> i64 {
        (self.cols + self.rows) as i64 - 2
    }

    /// (p, offset) of each column block of Tot^n, ordered by p.
    fn blocks(&self, n: i64) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in 0..self.cols {
            let q = n - p as i64;
            if q < 0 || q >= self.rows as i64 {
                continue;
            }
            let d = self.dim(p, q as usize);
            out.push((p, q as usize, off));
            off += d;
        }
        out
    }

    pub fn tot_dim(&self, n: i64) -> usize {
        self.blocks(n).iter().map(|&(p, q, _)| self.dim(p, q)).sum()
    }

    pub fn tot_moduli(&self, n: i64) -> Vec<BigInt> {
        self.blocks(n).iter().flat_map(|&(p, q, _)| self.entry(p, q).iter().cloned()).collect()
    }

    /// Column of each generator of Tot^n.
    fn tot_columns(&self, n: i64) -> Vec<usize> {
        self.blocks(n)
            .iter()
            .flat_map(|&(p, q, _)| std::iter::repeat_n(p, self.dim(p, q)))
            .collect()
    }

    /// d: Tot^n → Tot^{n+1}.
    pub fn tot_differential(&self, n: i64) -> Mat {
        let src = self.blocks(n);
        let tgt = self.blocks(n + 1);
        let offset = |p: usize| tgt.iter().find(|b| b.0 == p).map(|b| b.2);
        let mut d = zero_map(self.tot_dim(n), self.tot_dim(n + 1));
        for &(p, q, off) in &src {
            if let Some(t) = offset(p + 1) {
                for (i, row) in self.horizontal[p][q].iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        d[off + i][t + j] += x;
                    }
                }
            }
            if let Some(t) = offset(p) {
                if q + 1 < self.rows {
                    for (i, row) in self.vertical[p][q].iter().enumerate() {
                        for (j, x) in row.iter().enumerate() {
                            d[off + i][t + j] += x;
                        }
                    }
                }
            }
        }
        d
    }

    /// Standard generators of F^p Tot^n (columns ≥ p).
    fn filtration_basis(&self, n: i64, p: i64) -> Mat {
        let cols = self.tot_columns(n);
        unit_rows(cols.len())
            .into_iter()
            .zip(&cols)
            .filter(|(_, &c)| c as i64 >= p)
            .map(|(r, _)| r)
            .collect()
    }

    /// Relations of Tot^n lying in F^p.
    fn filtration_relations(&self, n: i64, p: i64) -> Mat {
        let cols = self.tot_columns(n);
        mod_rows(&self.tot_moduli(n))
            .into_iter()
            .filter(|r| r.iter().zip(&cols).all(|(x, &c)| x.is_zero() || c as i64 >= p))
            .collect()
    }

    /// Drops the coordinates in columns < p.
    fn truncate(&self, n: i64, p: i64, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(self.tot_columns(n))
            .map(|(x, c)| if (c as i64) < p { BigInt::zero() } else { x.clone() })
            .collect()
    }

    /// {x ∈ F^p Tot^n : dx ∈ F^{p+s} Tot^{n+1} + L}, with `None` meaning dx ∈ L.
    fn cycles_to(&self, n: i64, p: i64, s: Option<i64>) -> Mat {
        let k = self.tot_dim(n);
        let cols = self.tot_dim(n + 1);
        let a = self.filtration_basis(n, p);
        let mut t = mod_rows(&self.tot_moduli(n + 1));
        if let Some(s) = s {
            t.extend(self.filtration_basis(n + 1, p + s));
        }
        preimage(&a, k, &self.tot_differential(n), cols, &t)
    }

    fn boundaries_from(&self, n: i64, src: &Mat) -> Mat {
        let d = self.tot_differential(n - 1);
        let k = self.tot_dim(n);
        src.iter().map(|x| vec_mat(x, &d, k)).collect()
    }

    /// E_r^{p,q} = Z_r^p / (Z_{r−1}^{p+1} + d Z_{r−1}^{p−r+1}) with
    /// Z_r^p = {x ∈ F^p Tot : dx ∈ F^{p+r} Tot}, all modulo the relations.
    pub(crate) fn filtration_node(&self, r: usize, p: i64, q: i64) -> Result<Node> {
        if r == 0 {
            return Err(Error::InvalidArgument("pages start at r = 1".into()));
        }
        let n = p + q;
        let r = r as i64;
        let num = self.cycles_to(n, p, Some(r));
        let mut den = self.cycles_to(n, p + 1, Some(r - 1));
        let low = self.cycles_to(n - 1, p - r + 1, Some(r - 1));
        den.extend(self.boundaries_from(n, &low).iter().map(|v| self.truncate(n, p, v)));
        den.extend(self.filtration_relations(n, p));
        Node::new(self.tot_dim(n), &num, &den)
    }

    /// E_r^{p,q} of the column filtration, straight from the total complex.
    pub fn filtration_page(&self, r: usize, p: i64, q: i64) -> Result<FPAbelianGroup<Integers>> {
        Ok(self.filtration_node(r, p, q)?.group().clone())
    }

    /// H^n(F^p Tot), as a subquotient of Tot^n.
    pub(crate) fn filtered_homology_node(&self, n: i64, p: i64) -> Result<Node> {
        let num = self.cycles_to(n, p, None);
        let mut den = self.boundaries_from(n, &self.filtration_basis(n - 1, p));
        den.extend(self.filtration_relations(n, p));
        Node::new(self.tot_dim(n), &num, &den)
    }

    fn total_boundaries(&self, n: i64) -> Mat {
        let mut b = self.boundaries_from(n, &unit_rows(self.tot_dim(n - 1)));
        b.extend(mod_rows(&self.tot_moduli(n)));
        b
    }

    pub fn total_homology(&self, n: i64) -> Result<FPAbelianGroup<Integers>> {
        let num = self.cycles_to(n, 0, None);
        Ok(Node::new(self.tot_dim(n), &num, &self.total_boundaries(n))?.group().clone())
    }

    /// H^n(Tot) and the graded pieces of its column filtration, for every total degree.
    pub fn filtered_totals(&self) -> Result<FilteredTotals> {
        let mut degrees = BTreeMap::new();
        for n in 0..=self.top_degree() {
            let k = self.tot_dim(n);
            let b = self.total_boundaries(n);
            let total = self.total_homology(n)?.invariants();
            let mut graded = BTreeMap::new();
            for &(p, _, _) in &self.blocks(n) {
                let p = p as i64;
                let mut num = self.cycles_to(n, p, None);
                num.extend(b.iter().cloned());
                let mut den = self.cycles_to(n, p + 1, None);
                den.extend(b.iter().cloned());
                graded.insert(p, Node::new(k, &num, &den)?.invariants());
            }
            degrees.insert(n, DegreeTotals { total, graded });
        }
        Ok(FilteredTotals { degrees })
    }
}
