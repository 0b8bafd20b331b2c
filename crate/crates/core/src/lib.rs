pub mod cli;
pub mod construct;
pub mod error;
pub mod field;
pub mod matrix;
pub mod meataxe;
pub mod recipe;
pub mod spin;

pub use construct::{build_chain, build_stages, double_s, extend_s1, extend_s2, extend_s3, seed};
pub use error::{Error, Result};
pub use field::{make_field, FieldDescriptor, FieldElement};
pub use matrix::Matrix;
pub use meataxe::{
    chop, decompose_case_ii, end_dim, hom_space, is_equivalent, is_irreducible, spin, ChopReport, HomResult,
    SubmoduleBasis, Verdict,
};
pub use recipe::{Modifier, Recipe, SignChoice, Step};
pub use spin::{
    associate, check_complemma, check_delta, check_relations, check_relations_hat, check_relations_tilde,
    delta_degree, twist_to_hat, Cover, Representation, VerificationReport,
};
