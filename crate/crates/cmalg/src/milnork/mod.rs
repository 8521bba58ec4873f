//! Milnor K-groups, Dennis–Stein groups, dlog, and the comparison of relative Milnor K-theory
//! with Kähler differentials for split nilpotent pairs of finite rings.

mod dennis_stein;
mod maps;
mod symbols;
mod theorem;
mod units;

pub use dennis_stein::{dennis_stein_d2, DennisSteinCounts, DennisSteinPresentation};
pub use maps::{dlog, dlog_form, phi, psi, GoodwillieMaps};
pub use symbols::{milnor_k, milnor_k_compact, milnor_k_relative, RelationCounts, RelativeMilnorK, SymbolPresentation};
pub use theorem::{goodwillie_milnor_check, GoodwillieReport, Verdict, STABILITY_FOLD};
pub use units::{UnitGroup, UnitStructure};
