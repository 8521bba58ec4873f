//! Global limits that turn runaway computations into `CapacityExceeded`.

use std::cell::Cell;
use std::sync::RwLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity {
    /// Nonzero entries in a single presentation or boundary matrix.
    pub max_nnz: u128,
    /// Dimension of a single tensor power R^{⊗n+1}.
    pub max_tensor_dim: u128,
    /// Number of units (and, for enumeration, elements) of a finite ring.
    pub max_units: u128,
    /// rows·cols of a dense matrix handed to the dense Smith form.
    pub max_dense: u128,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity {
            max_nnz: 5_000_000,
            max_tensor_dim: 100_000,
            max_units: 100_000,
            max_dense: 4_000_000,
        }
    }
}

impl Capacity {
    /// Parses `CM_CAPACITY`-style strings: either a bare number (the nnz limit) or a
    /// comma list like `nnz=1000000,tensor=5000,units=200,dense=10000`.
    pub fn parse(s: &str) -> Result<Capacity> {
        let mut cap = Capacity::default();
        let s = s.trim();
        if let Ok(v) = s.parse::<u128>() {
            cap.max_nnz = v;
            return Ok(cap);
        }
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("bad capacity item '{part}'")))?;
            let v: u128 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad capacity value '{v}'")))?;
            match k.trim() {
                "nnz" => cap.max_nnz = v,
                "tensor" => cap.max_tensor_dim = v,
                "units" => cap.max_units = v,
                "dense" => cap.max_dense = v,
                other => return Err(Error::InvalidArgument(format!("unknown capacity key '{other}'"))),
            }
        }
        Ok(cap)
    }
}

static GLOBAL: RwLock<Option<Capacity>> = RwLock::new(None);

thread_local! {
    static LOCAL: Cell<Option<Capacity>> = const { Cell::new(None) };
}

/// The limits in force on this thread.
pub fn capacity() -> Capacity {
    if let Some(c) = LOCAL.with(|l| l.get()) {
        return c;
    }
    GLOBAL.read().ok().and_then(|g| *g).unwrap_or_default()
}

pub fn set_global_capacity(cap: Capacity) {
    if let Ok(mut g) = GLOBAL.write() {
        *g = Some(cap);
    }
}

/// Runs `f` with `cap` in force on the current thread only.
pub fn with_capacity<T>(cap: Capacity, f: impl FnOnce() -> T) -> T {
    let prev = LOCAL.with(|l| l.replace(Some(cap)));
    let out = f();
    LOCAL.with(|l| l.set(prev));
    out
}

pub(crate) fn check(what: &str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::CapacityExceeded {
            what: what.to_string(),
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_nnz(what: &str, n: usize) -> Result<()> {
    check(what, n as u128, capacity().max_nnz)
}

pub(crate) fn check_dense(what: &str, rows: usize, cols: usize) -> Result<()> {
    check(what, rows as u128 * cols as u128, capacity().max_dense)
}

pub(crate) fn check_tensor(what: &str, dim: u128) -> Result<()> {
    check(what, dim, capacity().max_tensor_dim)
}

pub(crate) fn check_units(what: &str, n: u128) -> Result<()> {
    check(what, n, capacity().max_units)
}
