//! Exact scalars: cyclotomic fields, finite fields, the reduction map between
//! them, and the integer utilities the constructions rely on.

pub mod cyclo;
pub mod ffield;
pub mod linalg;
pub mod numtheory;
pub mod reduction;

pub use cyclo::{cyclo_field, cyclotomic_polynomial, Cyclo, RootSum};
pub use ffield::{finite_field, FfElem, FiniteField};
pub use numtheory::{
    find_prime, find_prime_bounded, is_power_of, is_prime, l_adic_valuation, multiplicative_order,
    primitive_root, DEFAULT_PRIME_SEARCH_BOUND,
};
pub use reduction::{build_reduction, ReductionMap};
