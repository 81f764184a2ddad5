//! Partitions, symmetric polynomials and Macdonald theory in the letters `(p,t)`.

mod macdonald;
mod operator;
mod partition;
mod sympoly;

pub use macdonald::{
    duality_identity_check, eigenvalue_check, expand_in_macdonald, macdonald_P, macdonald_P_ordered,
    macdonald_powersum, swap_pt, LinearExtension,
};
pub use operator::{
    eigenvalue, macdonald_gen_apply, macdonald_operator_apply, macdonald_operator_apply_with, operator_column, subsets,
    OperatorPath,
};
pub use partition::{distinct_permutations, dominance_leq, partitions_of, partitions_up_to, Partition};
pub use sympoly::{monomial_symmetric, powersum_in_monomials, pt_vars, to_powersum, PowerSumPoly, SymPoly};
