//! Exact matrix checks of the simplicial, cyclic and mixed-complex identities.

use cmalg::algebra::FinAlgebra;
use cmalg::cyclic::{operator, OperatorKind};
use cmalg::{Domain, Result, Scalar, SparseMatrix};

#[derive(Debug, Default, Clone)]
pub struct IdentityTally {
    pub passed: usize,
    pub failed: Vec<String>,
}

impl IdentityTally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(what());
        }
    }
}

struct Ops<'a> {
    r: &'a FinAlgebra,
}

impl Ops<'_> {
    fn op(&self, n: usize, kind: OperatorKind) -> Result<SparseMatrix<Scalar>> {
        Ok(operator(self.r, n, kind)?.matrix)
    }

    fn id(&self, n: usize) -> SparseMatrix<Scalar> {
        SparseMatrix::identity(&self.r.coeffs(), self.r.dim().pow(n as u32 + 1))
    }

    /// f then g.
    fn then(&self, f: &SparseMatrix<Scalar>, g: &SparseMatrix<Scalar>) -> Result<SparseMatrix<Scalar>> {
        f.mul(&self.r.coeffs(), g)
    }

    fn eq(&self, a: &SparseMatrix<Scalar>, b: &SparseMatrix<Scalar>) -> Result<bool> {
        Ok(a.rows() == b.rows() && a.cols() == b.cols() && a.sub(&self.r.coeffs(), b)?.is_zero())
    }

    fn neg(&self, a: &SparseMatrix<Scalar>) -> SparseMatrix<Scalar> {
        let f = self.r.coeffs();
        a.scale(&f, &f.from_i64(-1))
    }
}

/// Face, degeneracy and cyclic identities, (1−t)N = N(1−t) = 0, b(1−t) = (1−t)b′, b′N = Nb,
/// b² = b′² = 0, B² = 0 and bB + Bb = 0 in degrees ≤ max_deg.
pub fn check_identities(r: &FinAlgebra, max_deg: usize, tally: &mut IdentityTally) -> Result<()> {
    use OperatorKind::*;
    let o = Ops { r };
    let f = r.coeffs();
    for n in 2..=max_deg {
        for j in 0..=n {
            for i in 0..j {
                let lhs = o.then(&o.op(n, Face(j))?, &o.op(n - 1, Face(i))?)?;
                let rhs = o.then(&o.op(n, Face(i))?, &o.op(n - 1, Face(j - 1))?)?;
                tally.check(o.eq(&lhs, &rhs)?, || format!("d{i}d{j} in degree {n}"));
            }
        }
    }
    for n in 0..max_deg {
        if n + 2 <= max_deg {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = o.then(&o.op(n, Degeneracy(j))?, &o.op(n + 1, Degeneracy(i))?)?;
                    let rhs = o.then(&o.op(n, Degeneracy(i))?, &o.op(n + 1, Degeneracy(j + 1))?)?;
                    tally.check(o.eq(&lhs, &rhs)?, || format!("s{i}s{j} in degree {n}"));
                }
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = o.then(&o.op(n, Degeneracy(j))?, &o.op(n + 1, Face(i))?)?;
                let rhs = if i < j {
                    o.then(&o.op(n, Face(i))?, &o.op(n - 1, Degeneracy(j - 1))?)?
                } else if i == j || i == j + 1 {
                    o.id(n)
                } else {
                    o.then(&o.op(n, Face(i - 1))?, &o.op(n - 1, Degeneracy(j))?)?
                };
                tally.check(o.eq(&lhs, &rhs)?, || format!("d{i}s{j} in degree {n}"));
            }
        }
    }
    for n in 0..=max_deg {
        let t = o.op(n, Cyclic)?;
        let mut pow = o.id(n);
        for _ in 0..=n {
            pow = o.then(&pow, &t)?;
        }
        tally.check(o.eq(&pow, &o.id(n))?, || format!("t^(n+1) in degree {n}"));
        if n >= 1 {
            for i in 1..=n {
                let lhs = o.then(&t, &o.op(n, Face(i))?)?;
                let rhs = o.neg(&o.then(&o.op(n, Face(i - 1))?, &o.op(n - 1, Cyclic)?)?);
                tally.check(o.eq(&lhs, &rhs)?, || format!("d{i}t in degree {n}"));
            }
            let lhs = o.then(&t, &o.op(n, Face(0))?)?;
            let dn = o.op(n, Face(n))?;
            let rhs = if n % 2 == 0 { dn } else { o.neg(&dn) };
            tally.check(o.eq(&lhs, &rhs)?, || format!("d0t in degree {n}"));
        }
        let omt = o.id(n).sub(&f, &t)?;
        let norm = o.op(n, Norm)?;
        tally.check(o.then(&omt, &norm)?.is_zero(), || format!("N(1-t) in degree {n}"));
        tally.check(o.then(&norm, &omt)?.is_zero(), || format!("(1-t)N in degree {n}"));
        if n >= 1 {
            let b = o.op(n, B)?;
            let bp = o.op(n, BPrime)?;
            let omt_lo = o.id(n - 1).sub(&f, &o.op(n - 1, Cyclic)?)?;
            tally.check(o.eq(&o.then(&omt, &b)?, &o.then(&bp, &omt_lo)?)?, || format!("b(1-t) in degree {n}"));
            tally.check(o.eq(&o.then(&b, &o.op(n - 1, Norm)?)?, &o.then(&norm, &bp)?)?, || format!("Nb in degree {n}"));
        }
        if n >= 2 {
            tally.check(o.then(&o.op(n, B)?, &o.op(n - 1, B)?)?.is_zero(), || format!("b^2 in degree {n}"));
            tally.check(o.then(&o.op(n, BPrime)?, &o.op(n - 1, BPrime)?)?.is_zero(), || format!("b'^2 in degree {n}"));
        }
        if n + 2 <= max_deg {
            tally.check(o.then(&o.op(n, ConnesB)?, &o.op(n + 1, ConnesB)?)?.is_zero(), || format!("B^2 in degree {n}"));
        }
        if n < max_deg {
            let bb = o.then(&o.op(n, ConnesB)?, &o.op(n + 1, B)?)?;
            let total = if n == 0 {
                bb
            } else {
                bb.add(&f, &o.then(&o.op(n, B)?, &o.op(n - 1, ConnesB)?)?)?
            };
            tally.check(total.is_zero(), || format!("bB+Bb in degree {n}"));
        }
    }
    Ok(())
}
