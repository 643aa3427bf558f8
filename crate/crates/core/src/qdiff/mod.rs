//! The q-difference equation satisfied by the divergent series, its
//! convergent solutions at infinity and the q-Stokes decomposition of the
//! resummed solution.

mod operator;
mod stokes;

pub use operator::{apply_operator, OperatorResidual, QOperator, StencilTerm};
pub use stokes::{fundamental_solution, stokes_coefficients, stokes_t_ln, StokesDecomposition};
