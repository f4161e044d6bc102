//! The groups `F`, `E`, `Omega_t`, `D`, `G` and `G_{l'}` as tuple arithmetic.

pub mod autos;
pub mod checks;
pub mod classes;
pub mod elements;
pub mod enumerated;
pub mod params;

pub use autos::{apply_automorphism, verify_automorphism, Automorphism, AutomorphismReport, AutomorphismSpec};
pub use checks::{verify_comm_relation, verify_faithful_action, verify_translation_centralizer, CheckReport};
pub use classes::{conjugacy_classes, ConjugacyClasses};
pub use elements::{
    subgroup_membership, DElem, EElem, EGroup, Element, FElem, FGroup, GElem, GGroup, Group, OmegaElem, OmegaGroup,
    SubgroupTag,
};
pub use enumerated::{EnumeratedGroup, DEFAULT_ENUMERATION_BOUND};
pub use params::{ConstructionParams, ParamsEcho};
