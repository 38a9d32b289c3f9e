//! Classical W-algebras: screening operators, Miura transformations and the
//! generator families they annihilate.

pub mod miura;
pub mod pi0;
pub mod screening;

pub use miura::{
    h_family, miura_closed_form, miura_generators, newton_relation, pfaffian_generator, pseudo_diff_miura_d,
    w_generators_hfamily, PseudoDiffOperator,
};
pub use screening::{screening_apply, screening_apply_tau, screening_coefficient, verify_annihilation, Annihilation};
