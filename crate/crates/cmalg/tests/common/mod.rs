#![allow(dead_code)]

use cmalg::algebra::*;
use cmalg::cyclic::{operator, OperatorKind};
use cmalg::exactalg::Coefficients;
use cmalg::{Domain, Scalar, SparseMatrix};
use num_bigint::BigInt;
use num_traits::Zero;

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn trunc(c: Coefficients, vars: &[(&str, usize)]) -> FinAlgebra {
    let v: Vec<(String, usize)> = vars.iter().map(|(n, e)| (n.to_string(), *e)).collect();
    truncated_polynomial(c, &v).unwrap()
}

pub fn square_zero_xy() -> FinAlgebra {
    let mut t = vec![vec![vec![q(0); 3]; 3]; 3];
    for i in 0..3 {
        t[0][i][i] = q(1);
        t[i][0][i] = q(1);
    }
    make_structure_algebra(Coefficients::Rationals, 3, vec![q(1), q(0), q(0)], t, Some(vec!["1".into(), "x".into(), "y".into()]))
        .unwrap()
}

pub fn prime_field(p: u64) -> FinAlgebra {
    make_structure_algebra(Coefficients::PrimeField(p), 1, vec![q(1)], vec![vec![vec![q(1)]]], None).unwrap()
}

pub fn pair(r: &FinAlgebra, names: &[&str]) -> SplitNilpotentPair {
    let gens: Vec<RingElement> = names.iter().map(|n| r.parse_element(n).unwrap()).collect();
    split_nilpotent_pair(r, &gens).unwrap()
}

/// Small commutative algebras of dimension at most 4.
pub fn small_algebras() -> Vec<FinAlgebra> {
    vec![
        prime_field(7),
        trunc(Coefficients::Rationals, &[("e", 2)]),
        trunc(Coefficients::PrimeField(2), &[("x", 2)]),
        trunc(Coefficients::Rationals, &[("e", 3)]),
        square_zero_xy(),
        trunc(Coefficients::PrimeField(3), &[("x", 2), ("y", 2)]),
    ]
}

/// Dense coordinates of r_0 ⊗ … ⊗ r_n on the tuple basis (first factor most significant).
pub fn tensor(r: &FinAlgebra, factors: &[RingElement]) -> Vec<Scalar> {
    let f = r.coeffs();
    let mut acc = vec![q(1)];
    for x in factors {
        let mut next = Vec::with_capacity(acc.len() * x.len());
        for a in &acc {
            for c in x {
                next.push(f.mul(a, c));
            }
        }
        acc = next;
    }
    acc
}

pub fn apply(f: &Coefficients, v: &[Scalar], m: &SparseMatrix<Scalar>) -> Vec<Scalar> {
    let mut out = vec![q(0); m.cols()];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, e) in m.row(i) {
            out[*j] = f.add(&out[*j], &f.mul(c, e));
        }
    }
    out
}

pub fn same(f: &Coefficients, a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| f.is_zero(&f.sub(x, y)))
}

/// Rank by plain Gaussian elimination on dense rows, over ℚ or 𝔽_p.
pub fn dense_rank(f: &Coefficients, mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.unit_inverse(&rows[rank][c]);
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !f.is_zero(&row[c]) {
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// The Hochschild boundary written out directly from the multiplication, as dense rows.
pub fn naive_hochschild_boundary(r: &FinAlgebra, n: usize) -> Vec<Vec<Scalar>> {
    let d = r.dim();
    let f = r.coeffs();
    let basis: Vec<RingElement> = (0..d).map(|i| r.basis_vector(i)).collect();
    let mut rows = Vec::new();
    let total = d.pow(n as u32 + 1);
    for idx in 0..total {
        let mut t = vec![0; n + 1];
        let mut k = idx;
        for slot in (0..=n).rev() {
            t[slot] = k % d;
            k /= d;
        }
        let xs: Vec<RingElement> = t.iter().map(|&i| basis[i].clone()).collect();
        let mut out = vec![q(0); d.pow(n as u32)];
        for i in 0..n {
            let mut ys = xs.clone();
            let prod = r.mul(&ys[i], &ys[i + 1]);
            ys.splice(i..i + 2, [prod]);
            let v = tensor(r, &ys);
            let sign = if i % 2 == 0 { q(1) } else { q(-1) };
            for (o, x) in out.iter_mut().zip(&v) {
                *o = f.add(o, &f.mul(&sign, x));
            }
        }
        let mut ys = xs[..n].to_vec();
        ys[0] = r.mul(&xs[n], &xs[0]);
        let v = tensor(r, &ys);
        let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
        for (o, x) in out.iter_mut().zip(&v) {
            *o = f.add(o, &f.mul(&sign, x));
        }
        rows.push(out);
    }
    rows
}

/// dim HH_n from the directly written boundaries.
pub fn naive_hh_dim(r: &FinAlgebra, n: usize) -> usize {
    let f = r.coeffs();
    let dim_n = r.dim().pow(n as u32 + 1);
    let out = if n == 0 { 0 } else { dense_rank(&f, naive_hochschild_boundary(r, n)) };
    let inc = dense_rank(&f, naive_hochschild_boundary(r, n + 1));
    dim_n - out - inc
}

/// Tally of matrix identities checked.
#[derive(Default)]
pub struct Tally {
    pub passed: usize,
    pub failed: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(what());
        }
    }
}

fn op(r: &FinAlgebra, n: usize, kind: OperatorKind) -> SparseMatrix<Scalar> {
    operator(r, n, kind).unwrap().matrix
}

fn id(r: &FinAlgebra, n: usize) -> SparseMatrix<Scalar> {
    SparseMatrix::identity(&r.coeffs(), r.dim().pow(n as u32 + 1))
}

/// "f then g" as a matrix.
fn then(r: &FinAlgebra, f: &SparseMatrix<Scalar>, g: &SparseMatrix<Scalar>) -> SparseMatrix<Scalar> {
    f.mul(&r.coeffs(), g).unwrap()
}

fn eq(r: &FinAlgebra, a: &SparseMatrix<Scalar>, b: &SparseMatrix<Scalar>) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && a.sub(&r.coeffs(), b).unwrap().is_zero()
}

/// Simplicial, cyclic and mixed-complex identities in degrees ≤ max_deg.
pub fn operator_identities(r: &FinAlgebra, max_deg: usize, tally: &mut Tally) {
    use OperatorKind::*;
    let f = r.coeffs();
    let neg = |m: &SparseMatrix<Scalar>| m.scale(&f, &q(-1));
    for n in 1..=max_deg {
        // faces: d^i d^j = d^{j−1} d^i, i < j, from degree n
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = then(r, &op(r, n, Face(j)), &op(r, n - 1, Face(i)));
                    let rhs = then(r, &op(r, n, Face(i)), &op(r, n - 1, Face(j - 1)));
                    tally.check(eq(r, &lhs, &rhs), || format!("{r}: d{i}d{j} in degree {n}"));
                }
            }
        }
    }
    for n in 0..max_deg {
        // degeneracies: s^i s^j = s^{j+1} s^i, i ≤ j
        if n + 2 <= max_deg {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = then(r, &op(r, n, Degeneracy(j)), &op(r, n + 1, Degeneracy(i)));
                    let rhs = then(r, &op(r, n, Degeneracy(i)), &op(r, n + 1, Degeneracy(j + 1)));
                    tally.check(eq(r, &lhs, &rhs), || format!("{r}: s{i}s{j} in degree {n}"));
                }
            }
        }
        // d^i s^j from degree n
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = then(r, &op(r, n, Degeneracy(j)), &op(r, n + 1, Face(i)));
                let rhs = if i < j {
                    then(r, &op(r, n, Face(i)), &op(r, n - 1, Degeneracy(j - 1)))
                } else if i == j || i == j + 1 {
                    id(r, n)
                } else {
                    then(r, &op(r, n, Face(i - 1)), &op(r, n - 1, Degeneracy(j)))
                };
                tally.check(eq(r, &lhs, &rhs), || format!("{r}: d{i}s{j} in degree {n}"));
            }
        }
    }
    for n in 0..=max_deg {
        let t = op(r, n, Cyclic);
        // t^{n+1} = id
        let mut pow = id(r, n);
        for _ in 0..=n {
            pow = then(r, &pow, &t);
        }
        tally.check(eq(r, &pow, &id(r, n)), || format!("{r}: t^(n+1) in degree {n}"));
        if n >= 1 {
            // d^i t = −t d^{i−1} (i > 0) and d^0 t = (−1)^n d^n, for the signed t
            for i in 1..=n {
                let lhs = then(r, &t, &op(r, n, Face(i)));
                let rhs = neg(&then(r, &op(r, n, Face(i - 1)), &op(r, n - 1, Cyclic)));
                tally.check(eq(r, &lhs, &rhs), || format!("{r}: d{i}t in degree {n}"));
            }
            let lhs = then(r, &t, &op(r, n, Face(0)));
            let dn = op(r, n, Face(n));
            let rhs = if n % 2 == 0 { dn } else { neg(&dn) };
            tally.check(eq(r, &lhs, &rhs), || format!("{r}: d0t in degree {n}"));
        }
        // (1−t)N = N(1−t) = 0
        let omt = id(r, n).sub(&f, &t).unwrap();
        let norm = op(r, n, Norm);
        tally.check(then(r, &omt, &norm).is_zero(), || format!("{r}: N(1-t) in degree {n}"));
        tally.check(then(r, &norm, &omt).is_zero(), || format!("{r}: (1-t)N in degree {n}"));
        if n >= 1 {
            let b = op(r, n, B);
            let bp = op(r, n, BPrime);
            let t_lo = op(r, n - 1, Cyclic);
            let omt_lo = id(r, n - 1).sub(&f, &t_lo).unwrap();
            // b(1−t) = (1−t)b′ and N b = b′ N
            tally.check(eq(r, &then(r, &omt, &b), &then(r, &bp, &omt_lo)), || format!("{r}: b(1-t) in degree {n}"));
            tally.check(eq(r, &then(r, &b, &op(r, n - 1, Norm)), &then(r, &norm, &bp)), || {
                format!("{r}: Nb in degree {n}")
            });
        }
        if n >= 2 {
            tally.check(then(r, &op(r, n, B), &op(r, n - 1, B)).is_zero(), || format!("{r}: b^2 in degree {n}"));
            tally.check(then(r, &op(r, n, BPrime), &op(r, n - 1, BPrime)).is_zero(), || {
                format!("{r}: b'^2 in degree {n}")
            });
        }
        if n + 2 <= max_deg {
            tally.check(then(r, &op(r, n, ConnesB), &op(r, n + 1, ConnesB)).is_zero(), || {
                format!("{r}: B^2 in degree {n}")
            });
        }
        if n < max_deg {
            let bb = then(r, &op(r, n, ConnesB), &op(r, n + 1, B));
            let total = if n == 0 {
                bb
            } else {
                bb.add(&f, &then(r, &op(r, n, B), &op(r, n - 1, ConnesB))).unwrap()
            };
            tally.check(total.is_zero(), || format!("{r}: bB+Bb in degree {n}"));
        }
    }
}
