//! Dense elimination: echelon forms with transforms, solving, and the Smith form.

use num_traits::Zero;

use super::domain::Domain;

pub type Dense<E> = Vec<Vec<E>>;

fn identity<D: Domain>(d: &D, n: usize) -> Dense<D::Elem> {
    (0..n)
        .map(|i| {
            let mut r = vec![D::Elem::zero(); n];
            r[i] = d.from_i64(1);
            r
        })
        .collect()
}

/// row_i += c·row_j
fn row_axpy<D: Domain>(d: &D, m: &mut [Vec<D::Elem>], i: usize, c: &D::Elem, j: usize) {
    if c.is_zero() {
        return;
    }
    let (src, dst) = if i < j {
        let (a, b) = m.split_at_mut(j);
        (&b[0], &mut a[i])
    } else {
        let (a, b) = m.split_at_mut(i);
        (&a[j], &mut b[0])
    };
    for (x, y) in dst.iter_mut().zip(src.iter()) {
        if !y.is_zero() {
            *x = d.add(x, &d.mul(c, y));
        }
    }
}

fn col_axpy<D: Domain>(d: &D, m: &mut [Vec<D::Elem>], i: usize, c: &D::Elem, j: usize) {
    if c.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[j].is_zero() {
            let v = d.add(&row[i], &d.mul(c, &row[j]));
            row[i] = v;
        }
    }
}

fn row_scale<D: Domain>(d: &D, m: &mut [Vec<D::Elem>], i: usize, c: &D::Elem) {
    for x in m[i].iter_mut() {
        if !x.is_zero() {
            *x = d.mul(c, x);
        }
    }
}

fn col_swap<E>(m: &mut [Vec<E>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Row echelon form `H = T·A`. Over ℤ the result is in Hermite form (positive pivots, entries
/// above a pivot reduced modulo it); over a field it is reduced.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    pub ncols: usize,
    /// The nonzero rows of H.
    pub rows: Dense<E>,
    pub pivots: Vec<usize>,
    /// Rows of T giving the echelon rows, when tracked.
    pub transform: Option<Dense<E>>,
    /// Basis of the left kernel {x : x·A = 0}, when tracked.
    pub kernel: Option<Dense<E>>,
}

impl<E: Clone> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn echelon<D: Domain>(d: &D, a: &[Vec<D::Elem>], ncols: usize, track: bool) -> Echelon<D::Elem> {
    let m = a.len();
    let mut w: Dense<D::Elem> = a.to_vec();
    let mut t = if track { Some(identity(d, m)) } else { None };
    let mut pivots = Vec::new();
    let mut cur = 0;
    for col in 0..ncols {
        if cur == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in w.iter().enumerate().skip(cur) {
                if !row[col].is_zero() && best.is_none_or(|b| d.smaller(&row[col], &w[b][col])) {
                    best = Some(i);
                }
            }
            let Some(bi) = best else { break };
            w.swap(cur, bi);
            if let Some(t) = t.as_mut() {
                t.swap(cur, bi);
            }
            let mut clean = true;
            for i in cur + 1..m {
                if w[i][col].is_zero() {
                    continue;
                }
                let (q, r) = d.div_rem(&w[i][col], &w[cur][col]);
                let nq = d.neg(&q);
                row_axpy(d, &mut w, i, &nq, cur);
                if let Some(t) = t.as_mut() {
                    row_axpy(d, t, i, &nq, cur);
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if cur < m && !w[cur][col].is_zero() {
            let (_, u) = d.normalize(&w[cur][col]);
            row_scale(d, &mut w, cur, &u);
            if let Some(t) = t.as_mut() {
                row_scale(d, t, cur, &u);
            }
            for k in 0..cur {
                if w[k][col].is_zero() {
                    continue;
                }
                let (q, _) = d.div_rem(&w[k][col], &w[cur][col]);
                let nq = d.neg(&q);
                row_axpy(d, &mut w, k, &nq, cur);
                if let Some(t) = t.as_mut() {
                    row_axpy(d, t, k, &nq, cur);
                }
            }
            pivots.push(col);
            cur += 1;
        }
    }
    let rank = cur;
    w.truncate(rank);
    let (transform, kernel) = match t {
        Some(mut t) => {
            let kernel = t.split_off(rank);
            (Some(t), Some(kernel))
        }
        None => (None, None),
    };
    Echelon {
        ncols,
        rows: w,
        pivots,
        transform,
        kernel,
    }
}

/// Coefficients c with c·H = y, if y lies in the row lattice of H.
pub fn solve_echelon<D: Domain>(d: &D, ech: &Echelon<D::Elem>, y: &[D::Elem]) -> Option<Vec<D::Elem>> {
    let mut y = y.to_vec();
    let mut c = vec![D::Elem::zero(); ech.rows.len()];
    for (k, &p) in ech.pivots.iter().enumerate() {
        if y[p].is_zero() {
            continue;
        }
        let q = d.exact_div(&y[p], &ech.rows[k][p])?;
        let nq = d.neg(&q);
        for (yj, hj) in y.iter_mut().zip(ech.rows[k].iter()).skip(p) {
            if !hj.is_zero() {
                *yj = d.add(yj, &d.mul(&nq, hj));
            }
        }
        c[k] = q;
    }
    if y.iter().all(|v| v.is_zero()) {
        Some(c)
    } else {
        None
    }
}

/// Reduces y against the echelon rows; zero iff y is in the lattice.
pub fn in_lattice<D: Domain>(d: &D, ech: &Echelon<D::Elem>, y: &[D::Elem]) -> bool {
    solve_echelon(d, ech, y).is_some()
}

/// Echelon basis of the lattice spanned by many rows, processed in blocks to bound memory.
pub fn lattice_basis<D: Domain>(d: &D, rows: &[Vec<D::Elem>], ncols: usize) -> Echelon<D::Elem> {
    let block = ncols.max(16);
    let mut basis: Dense<D::Elem> = Vec::new();
    let mut ech = echelon(d, &basis, ncols, false);
    for chunk in rows.chunks(block) {
        let mut all = basis.clone();
        all.extend(chunk.iter().cloned());
        ech = echelon(d, &all, ncols, false);
        basis = ech.rows.clone();
    }
    ech
}

#[derive(Debug, Clone)]
pub struct DenseSmith<E> {
    /// d_1 | d_2 | … ; length min(rows, cols), zeros last.
    pub diag: Vec<E>,
    pub u: Option<Dense<E>>,
    pub v: Option<Dense<E>>,
    pub vinv: Option<Dense<E>>,
}

/// Smith form `U·A·V = diag`.
pub fn smith<D: Domain>(d: &D, a: &[Vec<D::Elem>], ncols: usize, want_u: bool, want_v: bool) -> DenseSmith<D::Elem> {
    if d.is_field() {
        smith_pivot(d, a, ncols, want_u, want_v)
    } else {
        smith_hermite(d, a, ncols, want_u, want_v)
    }
}

fn transpose<E: Clone + Zero>(a: &[Vec<E>], ncols: usize) -> Dense<E> {
    (0..ncols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mat_mul<D: Domain>(d: &D, a: &[Vec<D::Elem>], b: &[Vec<D::Elem>], ncols: usize) -> Dense<D::Elem> {
    a.iter()
        .map(|row| {
            let mut out = vec![D::Elem::zero(); ncols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o = d.add(o, &d.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

/// Hermite form of the rows of `a` padded with zero rows, and the full unimodular transform.
fn hermite_full<D: Domain>(d: &D, a: &[Vec<D::Elem>], ncols: usize) -> (Dense<D::Elem>, Dense<D::Elem>) {
    let ech = echelon(d, a, ncols, true);
    let mut h = ech.rows;
    h.resize(a.len(), vec![D::Elem::zero(); ncols]);
    let mut t = ech.transform.unwrap();
    t.extend(ech.kernel.unwrap());
    (h, t)
}

/// Alternates row and column Hermite reductions until the matrix is diagonal, then fixes the
/// divisibility chain with 2×2 gcd steps. Entries stay reduced throughout, unlike pivoting.
fn smith_hermite<D: Domain>(d: &D, a: &[Vec<D::Elem>], ncols: usize, want_u: bool, want_v: bool) -> DenseSmith<D::Elem> {
    let m = a.len();
    let n = ncols;
    let mut w: Dense<D::Elem> = a.to_vec();
    let mut u = identity(d, m);
    let mut v = identity(d, n);
    let is_diagonal = |w: &Dense<D::Elem>| {
        w.iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    };
    let mut rows_pass = true;
    while !is_diagonal(&w) {
        if rows_pass {
            let (h, t) = hermite_full(d, &w, n);
            w = h;
            if want_u {
                u = mat_mul(d, &t, &u, m);
            }
        } else {
            let (h, t) = hermite_full(d, &transpose(&w, n), m);
            w = transpose(&h, m);
            if want_v {
                v = mat_mul(d, &v, &transpose(&t, n), n);
            }
        }
        rows_pass = !rows_pass;
    }
    let steps = m.min(n);
    let mut diag: Vec<D::Elem> = (0..steps).map(|i| w[i][i].clone()).collect();
    // zeros last
    let mut order: Vec<usize> = (0..steps).filter(|&i| !diag[i].is_zero()).collect();
    order.extend((0..steps).filter(|&i| diag[i].is_zero()));
    if order.iter().enumerate().any(|(k, &i)| k != i) {
        let perm = |x: &Dense<D::Elem>, rows: bool, len: usize| -> Dense<D::Elem> {
            let mut full: Vec<usize> = order.clone();
            full.extend(steps..len);
            if rows {
                full.iter().map(|&i| x[i].clone()).collect()
            } else {
                x.iter().map(|r| full.iter().map(|&j| r[j].clone()).collect()).collect()
            }
        };
        u = perm(&u, true, m);
        v = perm(&v, false, n);
        diag = order.iter().map(|&i| diag[i].clone()).collect();
    }
    for i in 0..steps {
        for j in i + 1..steps {
            if diag[j].is_zero() || d.divides(&diag[i], &diag[j]) {
                continue;
            }
            // s·a + t·b = g
            let (a_, b_) = (diag[i].clone(), diag[j].clone());
            let (g, s, t) = ext_gcd(d, &a_, &b_);
            let ag = d.exact_div(&a_, &g).unwrap();
            let bg = d.exact_div(&b_, &g).unwrap();
            let (ui, uj) = (u[i].clone(), u[j].clone());
            u[i] = lin2(d, &s, &ui, &t, &uj);
            u[j] = lin2(d, &d.neg(&bg), &ui, &ag, &uj);
            let tb = d.mul(&t, &bg);
            let sa = d.mul(&s, &ag);
            for row in v.iter_mut() {
                let (x, y) = (row[i].clone(), row[j].clone());
                row[i] = d.add(&x, &y);
                row[j] = d.add(&d.mul(&d.neg(&tb), &x), &d.mul(&sa, &y));
            }
            diag[j] = d.mul(&ag, &b_);
            diag[i] = g;
        }
        let (norm, unit) = d.normalize(&diag[i]);
        if !diag[i].is_zero() {
            diag[i] = norm;
            u[i] = u[i].iter().map(|x| d.mul(&unit, x)).collect();
        }
    }
    let vinv = if want_v {
        let ech = echelon(d, &v, n, true);
        Some(ech.transform.unwrap())
    } else {
        None
    };
    DenseSmith {
        diag,
        u: want_u.then_some(u),
        v: want_v.then_some(v),
        vinv,
    }
}

fn lin2<D: Domain>(d: &D, a: &D::Elem, x: &[D::Elem], b: &D::Elem, y: &[D::Elem]) -> Vec<D::Elem> {
    x.iter().zip(y).map(|(p, q)| d.add(&d.mul(a, p), &d.mul(b, q))).collect()
}

/// (g, s, t) with s·a + t·b = g = gcd(a, b).
fn ext_gcd<D: Domain>(d: &D, a: &D::Elem, b: &D::Elem) -> (D::Elem, D::Elem, D::Elem) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (d.from_i64(1), D::Elem::zero());
    let (mut t0, mut t1) = (D::Elem::zero(), d.from_i64(1));
    while !r1.is_zero() {
        let (q, r) = d.div_rem(&r0, &r1);
        let s2 = d.sub(&s0, &d.mul(&q, &s1));
        let t2 = d.sub(&t0, &d.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

/// Smith form by pivoting on entries of least size; used over fields.
fn smith_pivot<D: Domain>(d: &D, a: &[Vec<D::Elem>], ncols: usize, want_u: bool, want_v: bool) -> DenseSmith<D::Elem> {
    let m = a.len();
    let n = ncols;
    let mut w: Dense<D::Elem> = a.to_vec();
    let mut u = if want_u { Some(identity(d, m)) } else { None };
    let mut v = if want_v { Some(identity(d, n)) } else { None };
    let mut vinv = if want_v { Some(identity(d, n)) } else { None };
    let steps = m.min(n);
    let mut t = 0;
    while t < steps {
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in w.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() {
                    let s = d.size(x);
                    if best.is_none_or(|(bs, _, _)| s < bs) {
                        best = Some((s, i, j));
                    }
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        w.swap(t, bi);
        if let Some(u) = u.as_mut() {
            u.swap(t, bi);
        }
        col_swap(&mut w, t, bj);
        if let Some(v) = v.as_mut() {
            col_swap(v, t, bj);
        }
        if let Some(vi) = vinv.as_mut() {
            vi.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if w[i][t].is_zero() {
                    continue;
                }
                let (q, r) = d.div_rem(&w[i][t], &w[t][t]);
                let nq = d.neg(&q);
                row_axpy(d, &mut w, i, &nq, t);
                if let Some(u) = u.as_mut() {
                    row_axpy(d, u, i, &nq, t);
                }
                if !r.is_zero() {
                    clean = false;
                    w.swap(t, i);
                    if let Some(u) = u.as_mut() {
                        u.swap(t, i);
                    }
                }
            }
            for j in t + 1..n {
                if w[t][j].is_zero() {
                    continue;
                }
                let (q, r) = d.div_rem(&w[t][j], &w[t][t]);
                let nq = d.neg(&q);
                col_axpy(d, &mut w, j, &nq, t);
                if let Some(v) = v.as_mut() {
                    col_axpy(d, v, j, &nq, t);
                }
                if let Some(vi) = vinv.as_mut() {
                    // V ← V·E with E = I + nq·e_t e_jᵀ, so V⁻¹ ← E⁻¹·V⁻¹
                    row_axpy(d, vi, t, &q, j);
                }
                if !r.is_zero() {
                    clean = false;
                    col_swap(&mut w, t, j);
                    if let Some(v) = v.as_mut() {
                        col_swap(v, t, j);
                    }
                    if let Some(vi) = vinv.as_mut() {
                        vi.swap(t, j);
                    }
                }
            }
            if !clean {
                continue;
            }
            if d.is_field() {
                break;
            }
            // divisibility: pull in a row whose entries the pivot does not divide
            let mut offender = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !w[i][j].is_zero() && !d.divides(&w[t][t], &w[i][j]) {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = d.from_i64(1);
                    row_axpy(d, &mut w, t, &one, i);
                    if let Some(u) = u.as_mut() {
                        row_axpy(d, u, t, &one, i);
                    }
                }
                None => break,
            }
        }
        let (_, unit) = d.normalize(&w[t][t]);
        row_scale(d, &mut w, t, &unit);
        if let Some(u) = u.as_mut() {
            row_scale(d, u, t, &unit);
        }
        t += 1;
    }
    let diag = (0..steps).map(|i| w[i][i].clone()).collect();
    DenseSmith { diag, u, v, vinv }
}
