//! Group algebra elements, block idempotents of `O G_{l'}`, their reductions and
//! Frobenius twists, and block invariants.

pub mod algebra;
pub mod idempotent;
pub mod invariants;

pub use algebra::{frobenius_twist, reduce_element, AlgebraElement, Scalar};
pub use idempotent::{
    all_blocks, block_partition_check, block_reduction, build_idempotent, reduced_terms, twist_identity_holds,
    BlockDescriptor, CentreAlgebra, PartitionReport, DEFAULT_CENTRE_BOUND,
};
pub use invariants::{
    block_rank, check_cartan, decomposition_from_clifford, decomposition_from_tables, CartanReport,
    DecompositionData, RankReport,
};
