//! Morita equivalence classification, Morita Frobenius numbers, the rank inequality
//! and the consolidated verification suite.

pub mod cartan;
pub mod mfn;
pub mod suite;
pub mod verdict;

pub use cartan::{cartan_equivalent, find_simultaneous_permutation};
pub use mfn::{
    canonical_faithful, construct_theorem_instance, construct_theorem_instance_bounded, morita_frobenius_number,
    theta_of_order, MfnClause, MfnResult, TheoremInstance,
};
pub use suite::{verify_lemma, verify_lemma_suite, Lemma, LemmaOutcome, SuiteOptions};
pub use verdict::{
    compare_invariants, morita_equivalent, rank_bound_check, BlockInvariants, InvariantComparison, MoritaVerdict,
    RankBoundReport, VerdictReason,
};
