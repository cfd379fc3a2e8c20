//! Low-dimensional chains of `B(q, G)`: commuting-tuple counts, the
//! normalized bar complex and its integral homology.

mod complex;
mod snf;

pub use complex::{
    build_complex, h1_consistency, hom_count, homology, homology_of, presentation_abelianization, AbelianGroup,
    ChainComplex, H1Consistency, DEFAULT_HOM_BUDGET, DEFAULT_SIMPLEX_BUDGET,
};
pub use snf::{smith_normal_form, SnfResult, SparseMatrix};
