//! Dense polynomials over F_2 and their factorization.

mod bitpoly;
mod clmul;
mod factor;
mod roots;

pub use bitpoly::BitPoly;
pub use clmul::{clmul64, clmul64_soft};
pub use factor::{
    distinct_degree, equal_degree, factor, factor_seeded, is_irreducible, squarefree_decompose,
    Factorization, SquareModTable, TRACE_RETRY_CAP,
};
pub use roots::{eval, roots_in_field};
