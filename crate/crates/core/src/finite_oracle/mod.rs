//! Independent ground truth for small even Coxeter groups: explicit tables,
//! coset enumeration, and homology from the bar complex via Smith normal form.

pub mod bar;
pub mod snf;
pub mod table;
pub mod todd_coxeter;

pub use bar::{bar_h, bar_h_capped, boundary_matrix, BarBasis};
pub use snf::{snf, snf_with_left, AbelianGroup, IntMatrix, SmithForm};
pub use table::{
    cyclic, dihedral, direct_product, direct_product_capped, elementary_abelian, GroupTable,
};
pub use todd_coxeter::{todd_coxeter, DEFAULT_MAX_COSETS};
