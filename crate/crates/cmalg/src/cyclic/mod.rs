//! Hochschild, cyclic and negative cyclic homology of finite algebras and split pairs.

mod homology;
mod keller;
mod ops;

pub use homology::{
    cc_total, connes_periodicity_check, connes_total, hc, hh, hn_truncated, hochschild_complex, negative_total, HcRoute,
    Joint, PeriodicityReport, TruncatedHn,
};
pub use keller::{keller_mixed_complex, standard_mixed_complex, MixedComplex};
pub use ops::{connes_b, operator, CyclicTarget, OperatorKind, OperatorMatrix, TensorSpace};
