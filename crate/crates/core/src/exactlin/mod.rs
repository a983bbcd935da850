//! Exact rational and integer linear algebra.

mod field;
pub mod lp;
mod matrix;
mod normal_form;
pub mod vecops;

pub use field::{format_rational, parse_rational, Field};
pub use matrix::{det, dot, mat_vec, nullspace, rank, rank_of, rref, solve, to_field, Matrix};
pub use normal_form::{
    cokernel, hermite, in_row_lattice, int_rank, quotient_group, smith, Cokernel, FinAbGroup, IntMat,
    SmithDecomposition,
};
