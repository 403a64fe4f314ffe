//! Weyl quantization of the 2n-torus at a rational Planck constant M/N,
//! with the projective action of Sp(2n, Z) on the quantized algebra.
//!
//! Conventions used throughout:
//!
//! * The symbol algebra is spanned by unitaries s(ξ), ξ ∈ Z^{2n}, with
//!   s(ξ)s(η) = (−1)^{εω(ξ,η)} e^{−πi(M/N)ω(ξ,η)} s(ξ+η) and ε = MN mod 2.
//! * ω(ξ, η) = ⟨m_ξ, n_η⟩ − ⟨m_η, n_ξ⟩ in the (position, momentum) split.
//! * The standard representation π acts on C^(N^n); conjugating π by the
//!   operator attached to a symplectic B moves labels forward:
//!   U π(ξ) U⁻¹ = π(Bξ).
//! * Generator words multiply left to right, matching operator order.

pub mod algebra;
pub mod cli;
pub mod intertwiner;
pub mod io;
pub mod lattice;
pub mod numerics;
pub mod phase;
pub mod planck;
pub mod schrodinger;
pub mod symplectic;
pub mod verify;

pub use algebra::{commutation_phase, struct_phase, AlgebraError, TorusElement};
pub use intertwiner::{
    cocycle, egorov_residual, rho_fourier, rho_gl, rho_item, rho_solve, rho_unipotent, rho_word,
    IntertwinerError, RhoMethod, RhoResult,
};
pub use schrodinger::{
    character_map, commutant_dim, inner_product, pi_basis, trace_diagnostic, weyl_quantize,
    PiOp, RepContext, SchrodingerError,
};
pub use lattice::{char_action, Character, LatticeError, LatticePoint};
pub use numerics::{CMatrix, CVector, NumericsError};
pub use planck::{PlanckData, PlanckError};
pub use symplectic::{GeneratorItem, GeneratorWord, SpElement, SymplecticError};
pub use verify::{run_suite, CheckReport, Suite, SuiteReport};
