//! Integral homology and cohomology in low degrees of even Artin groups and
//! even Coxeter groups.
//!
//! Closed-form bases and products are computed from the Coxeter matrix. Each
//! is checked against something independent: free-group reduction, the
//! degree-2 Magnus expansion, bar-complex chain arithmetic, and bar-complex
//! homology of explicit finite groups via Smith normal form.

pub mod artin_h;
pub mod cohomology;
pub mod coxeter_h;
pub mod coxmat;
pub mod error;
pub mod finite_oracle;
pub mod group;
pub mod magnus;
pub mod pontryagin;
pub mod sample;
pub mod words;

pub use artin_h::{
    class_of, coords_via_wedge, flatten, h1, h2, ArtinH1Class, ArtinH2Class, H1Basis, H2Basis,
    H2Generator, RelatorFactor, RelatorProduct,
};
pub use cohomology::{cup, cup_product, cup_table, hopf_pairing, Character, CupTable};
pub use coxeter_h::{cox_h1, cox_h2, cox_pontryagin, rho_star, rho_star_matrix, CoxH2Class};
pub use coxmat::{parse_matrix, CoxeterMatrix, EvenPresentation, Label, Pair};
pub use error::{Error, ErrorKind, Result};
pub use finite_oracle::{bar_h, snf, todd_coxeter, AbelianGroup, GroupTable, IntMatrix};
pub use group::{FreeGroup, Group};
pub use magnus::{class2_trivial, magnus2, wedge_image, MagnusTruncation, WedgeVector};
pub use pontryagin::{
    bar_boundary, bilinearity_witness, hopf_iso_chain, pontryagin_artin, pontryagin_chain,
    BarChain, BoundaryOracle,
};
pub use words::{alt, comm_rel_pair, commutator, parse_word, relator, w_lemma, Word};
