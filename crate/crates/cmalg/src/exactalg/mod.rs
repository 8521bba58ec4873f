//! Exact linear algebra over ℤ, ℚ and 𝔽_p: sparse and dense elimination, Smith normal form,
//! finitely presented abelian groups and homology of finite complexes.

pub mod capacity;
pub mod complex;
pub mod dense;
pub mod domain;
pub mod group;
pub mod matrix;
pub mod smith;
pub mod sparse;

pub use capacity::{capacity, set_global_capacity, with_capacity, Capacity};
pub use complex::{complex_homology, homology_rank_field, homology_subquotient, GradedComplexSlice};
pub use domain::{is_prime, Coefficients, Domain, Integers};
pub use group::{element_equal, fp_group, map_kernel, FPAbelianGroup, IntegerView, Invariants, Kernel, Subquotient, SubgroupQuotient};
pub use matrix::{IntMatrix, SparseMatrix, SparseRow};
pub use smith::{smith_normal_form, SmithNormalForm};
