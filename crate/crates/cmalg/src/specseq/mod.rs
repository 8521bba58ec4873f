//! Spectral sequences of exact couples, with the column filtration of a finite bicomplex as the
//! main source and its total homology as the target of convergence.

mod bicomplex;
mod convergence;
mod couple;
mod lattice;
mod random;

pub use bicomplex::{Bicomplex, Cochain, DegreeTotals, FilteredTotals};
pub use convergence::{converges_check, ConvergenceReport, GradedComparison};
pub use couple::{couple_from_bicomplex, derive, page, stabilize, CoupleParts, ExactCouple, Page};
pub use lattice::{Mat, Node};
pub use random::{random_bicomplex, staircase};
