//! Difference operators on Laurent polynomials in `z1..zN`: exchanges,
//! `p`-shifts, the Hecke generators `G`, `Y` and their `γ`-conjugates `g`,
//! `y`, `r`, and symbolic normal forms of operator words.

mod checks;
mod laurent;
mod normal;
mod ops;

pub use checks::{
    affine_hecke_check, conjugation_check, embed_two_site, gamma, hecke_relation_check, macdonald_identity_check,
    symmetric_center_check, y_forms_check, HeckeGenerators,
};
pub use laurent::{apply_G, apply_K, apply_Y, apply_g, apply_shift, apply_y, LaurentVecPoly};
pub use normal::{b_coeff, elementary_y_normalform, elementary_y_word, normal_form, DiffOpExpr, NormalForm, Perm};
pub use ops::{
    apply_op, apply_word, big_y_word, hecke_vars, inverse_word, r_y_word, small_y_word, word_to_string, Op, OpSpace,
    Sign, YForm,
};
