//! Three-qubit rank-four PPT entangled states: construction, the Lorentz
//! invariant, product-vector geometry and SLOCC classification.
//!
//! Qubits are numbered from 1; qubit 1 is the most significant bit of a basis
//! index. Data-parallel work goes through [`Execution`], which uses rayon when
//! the `parallel` feature is on and runs sequentially otherwise.

pub mod classify;
pub mod constructors;
pub mod error;
pub mod exec;
pub mod lorentz;
pub mod poly;
pub mod qmat;
pub mod sampling;
pub mod sweep;
pub mod vecgeom;

pub use classify::{
    bipartite_products_in_subspace, characteristic_set, classify, classify_many,
    decompose_biseparable, general_position, is_tripartite_product, slocc_compare,
    upb_constructibility, verify_rank4_pptes, ClassificationReport, Partition, ProductVectorRecord,
    SloccVerdict, StateType, UpbVerdict, VerificationReport,
};
pub use constructors::{
    example10_connecting_transform, example10_state, qp_state, type2_ppt_blocks, type2_state,
    upb_invariant_closed_form, upb_state, upb_vectors, AlphaFormula, BranchStatus, QpSpec,
    Type2Spec, UpbSpec,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use lorentz::{
    conjecture_state, epsilon_n, lorentz_invariant, pairwise_pure_invariant, LorentzInvariantValue,
};
pub use qmat::{is_ppt, ComplexMatrix, ComplexVector, MultiQubitState};
pub use vecgeom::{
    bell_permutation_unitary, bell_transform, t_orbit, CharacteristicSet, VectorQuadruple,
};
