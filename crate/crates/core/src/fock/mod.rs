//! Bosonic Fock-space realization of `V(Λ₀) ⊕ V(Λ₁)`, the vertex operator
//! `Φ̃*₊(z)` and the highest weight vectors `ω_{λ,N}`.

mod hwv;
mod space;
mod vertex;

pub use hwv::{
    degree_check, hwv_closed_form, hwv_consistency_check, independence_check, omega_series, EpsScalar, ScaledVector,
};
pub use space::{boson_apply, fock_basis, graded_dimension, lattice_degree, q_pow, q_vars, BasisState, FockVector};
pub use vertex::{eta_series, fusion_vanishing_check, omega_raw, vertex_plus_apply, xi_series, HalfPowerSeries};
