//! Comparison of E_∞ with the graded pieces of the filtration on the limit.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::exactalg::Invariants;

use super::bicomplex::FilteredTotals;
use super::couple::{stabilize, ExactCouple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComparison {
    pub n: i64,
    pub p: i64,
    pub e_infinity: Invariants,
    pub graded: Invariants,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    /// First page equal to E_∞.
    pub stable_page: usize,
    pub pieces: Vec<GradedComparison>,
    /// Per total degree, the E_∞ ranks add up to the rank of H^n and, when everything is
    /// finite, the orders multiply to its order.
    pub extensions_consistent: bool,
    pub converges: bool,
}

/// Stabilizes the couple (at most `max_r` pages) and compares E_∞^{p,n−p} with gr^p H^n.
pub fn converges_check(c: &ExactCouple, totals: &FilteredTotals, max_r: usize) -> Result<ConvergenceReport> {
    let inf = stabilize(c, max_r)?;
    let mut pieces = Vec::new();
    let mut extensions_consistent = true;
    let mut degrees: BTreeSet<i64> = totals.degrees.keys().cloned().collect();
    degrees.extend(inf.e_support().iter().map(|(p, q)| p + q));
    for n in degrees {
        let empty = Default::default();
        let (total, graded) = match totals.degrees.get(&n) {
            Some(t) => (t.total.clone(), &t.graded),
            None => (Invariants::trivial(), &empty),
        };
        let mut ps: BTreeSet<i64> = graded.keys().cloned().collect();
        ps.extend(inf.e_support().iter().filter(|(p, q)| p + q == n).map(|k| k.0));
        let mut rank = 0;
        let mut order = BigInt::one();
        let mut finite = true;
        for p in ps {
            let e = inf.e_term(p, n - p).map_or_else(Invariants::trivial, |g| g.invariants());
            let g = graded.get(&p).cloned().unwrap_or_else(Invariants::trivial);
            rank += e.free_rank;
            match e.order() {
                Some(o) => order *= o,
                None => finite = false,
            }
            pieces.push(GradedComparison {
                n,
                p,
                agree: e == g,
                e_infinity: e,
                graded: g,
            });
        }
        if rank != total.free_rank || (finite && total.order().is_some_and(|o| o != order)) {
            extensions_consistent = false;
        }
    }
    let converges = extensions_consistent && pieces.iter().all(|x| x.agree);
    Ok(ConvergenceReport {
        stable_page: inf.r,
        pieces,
        extensions_consistent,
        converges,
    })
}
