//! The graded Lie algebroid `L = ∧W ⊗ CDerEnd(W)`, its ideal `I` and the
//! quotient `E = L/I`.

mod element;
mod ideal;

pub use element::{anchor_matrix, bracket_const, degree_coords, lidx, lsplit, LElement, LDIM};
pub use ideal::{
    anchor_kernel, ideal_basis_explicit, ideal_basis_isotypic, ideal_basis_isotypic_with, mc_defect, mi2_element,
    so_w_action, symmetric_traceless_basis, x_mink, Ideal,
};

use thiserror::Error;

use crate::frames::IsotypicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlaoidError {
    #[error("isotypic component {0} not found")]
    ComponentNotFound(String),
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
    #[error("element is not homogeneous of degree 1")]
    NotGradeOne,
    #[error(transparent)]
    Isotypic(#[from] IsotypicError),
}

#[cfg(test)]
mod tests;
