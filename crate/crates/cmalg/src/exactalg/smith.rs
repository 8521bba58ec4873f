use num_bigint::BigInt;

use super::capacity;
use super::dense::smith;
use super::domain::Integers;
use super::matrix::IntMatrix;
use crate::error::Result;

/// U·m·V = S with U, V unimodular and S diagonal, d_1 | d_2 | ….
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i)).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithNormalForm> {
    capacity::check_dense("smith_normal_form", m.rows(), m.cols())?;
    let res = smith(&Integers, &m.to_dense(), m.cols(), true, true);
    let mut s = IntMatrix::zeros(m.rows(), m.cols());
    let data: Vec<_> = (0..m.rows())
        .map(|i| {
            if i < res.diag.len() && res.diag[i] != BigInt::from(0) {
                vec![(i, res.diag[i].clone())]
            } else {
                Vec::new()
            }
        })
        .collect();
    if m.rows() > 0 {
        s = IntMatrix::from_sorted_rows(m.cols(), data)?;
    }
    Ok(SmithNormalForm {
        s,
        u: IntMatrix::from_dense(&res.u.unwrap(), m.rows()),
        v: IntMatrix::from_dense(&res.v.unwrap(), m.cols()),
    })
}
