//! Constructors for the classified families, adapted-basis skeletons and
//! their completion.

pub mod families;
pub mod skeleton;

pub use families::{
    csq_model, csq_model_checked, csq_model_with_heads, max_nilindex_leibniz, max_nilindex_super,
    max_nilindex_super_with, thm32_basis_change, thm32_coefficients, thm32_family, thm32_normal,
    thm32_skeleton, zf_adapted,
};
pub use skeleton::{closed_formula_bracket, HeadRows, Skeleton};
