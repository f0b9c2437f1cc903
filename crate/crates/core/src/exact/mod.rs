//! Exact integer and rational-mod-1 linear algebra. Everything downstream
//! (group closure, fan geometry, cohomology) reduces to the solvers here.

mod abelian;
mod hnf;
mod matrix;
mod qmodz;
mod snf;
mod solve;
mod sparse;

pub use abelian::AbelianPresentation;
pub use hnf::{hermite_form, hermite_form_cols, intersect_row_lattices, row_space_basis, saturation};
pub use matrix::{Int, IntMatrix};
pub use qmodz::{QmodZ, QmodZVector};
pub use snf::{smith_form, SmithDecomposition};
pub use solve::{in_row_space, left_kernel, right_kernel, solve_integer, solve_left, solve_mod1};
pub use sparse::{sparse_left_kernel, sparse_rank, SparseEchelon, SparseIntMatrix, SparseVec};
