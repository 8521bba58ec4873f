//! The unit group R* of a finite algebra, indexed for symbol presentations.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{FinAlgebra, FiniteRing, RingElement};
use crate::error::{Error, Result};
use crate::exactalg::{fp_group, FPAbelianGroup, Integers, SparseMatrix};

/// Units of a finite ring, numbered in increasing element-index order.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    pub ring: Arc<FiniteRing>,
    /// Element index of each unit.
    pub units: Vec<usize>,
    /// Unit number of each element, if it is a unit.
    pos: Vec<Option<usize>>,
}

impl UnitGroup {
    pub fn new(r: &FinAlgebra) -> Result<UnitGroup> {
        let ring = Arc::new(FiniteRing::new(r)?);
        Ok(Self::from_ring(ring))
    }

    pub fn from_ring(ring: Arc<FiniteRing>) -> UnitGroup {
        let units = ring.units().to_vec();
        let mut pos = vec![None; ring.size()];
        for (k, &u) in units.iter().enumerate() {
            pos[u] = Some(k);
        }
        UnitGroup { ring, units, pos }
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// Unit number of an element index.
    pub fn number(&self, elem: usize) -> Option<usize> {
        self.pos[elem]
    }

    /// Unit number of a ring element; `slot` is reported on failure.
    pub fn number_of(&self, x: &RingElement, slot: usize) -> Result<usize> {
        self.pos[self.ring.index_of(x)].ok_or(Error::NonUnitEntry(slot))
    }

    pub fn element(&self, k: usize) -> RingElement {
        self.ring.element(self.units[k])
    }

    /// Unit number of the product of units k and l.
    pub fn mul(&self, k: usize, l: usize) -> usize {
        self.pos[self.ring.mul(self.units[k], self.units[l])].unwrap()
    }

    pub fn label(&self, k: usize) -> String {
        self.ring.algebra().fmt_element(&self.element(k))
    }

    /// R* as an abelian group: the presentation {ab} = {a} + {b} on all units.
    pub fn structure(&self) -> Result<UnitStructure> {
        let u = self.len();
        let z = Integers;
        let mut rows = Vec::with_capacity(u * u);
        for a in 0..u {
            for b in a..u {
                let mut t = vec![(self.mul(a, b), BigInt::from(1)), (a, BigInt::from(-1)), (b, BigInt::from(-1))];
                t.sort_by_key(|x| x.0);
                rows.push(t);
            }
        }
        let rel = SparseMatrix::from_unsorted_rows(&z, u, rows);
        let group = fp_group(&z, u, &rel)?;
        let order = BigInt::from(u);
        // each normal generator as an actual unit
        let mut generators = Vec::new();
        for k in 0..group.rank_nf() {
            let coords = group.lift(k)?;
            let mut acc = self.ring.one();
            for (i, c) in coords.iter().enumerate() {
                let e = c.mod_floor(&order).to_usize().unwrap();
                if e != 0 {
                    acc = self.ring.mul(acc, self.ring.pow(self.units[i], e));
                }
            }
            generators.push(self.pos[acc].unwrap());
        }
        let logs = (0..u)
            .map(|i| {
                let mut e = vec![BigInt::zero(); u];
                e[i] = BigInt::from(1);
                group.reduce(&e)
            })
            .collect::<Result<_>>()?;
        Ok(UnitStructure {
            moduli: group.moduli(),
            generators,
            logs,
            group,
        })
    }
}

/// R* ≅ ⊕ ℤ/m_i with explicit generators and discrete logarithms.
#[derive(Debug, Clone)]
pub struct UnitStructure {
    pub group: FPAbelianGroup<Integers>,
    pub moduli: Vec<BigInt>,
    /// Unit number of the i-th cyclic generator.
    pub generators: Vec<usize>,
    /// Coordinates of every unit in the cyclic generators.
    pub logs: Vec<Vec<BigInt>>,
}
