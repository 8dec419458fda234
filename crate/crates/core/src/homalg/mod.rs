//! Exact integer linear algebra: Smith normal form, homology of integer
//! chain complexes, and Hom/Ext of finitely generated abelian groups.

mod chain;
mod group;
mod matrix;
mod snf;

pub use chain::{betti_mod_p, homology, rank_mod_p, ChainComplex, ExplicitComplex};
pub use group::{
    cohomology_from_homology, ext_group, hom_group, max_hom_image_order, poincare_duality_check, AbelianGroup,
    ImageOrder,
};
pub use matrix::{IntegerMatrix, SparseMatrix};
pub use snf::{smith_diagonal, smith_normal_form, SmithForm};
