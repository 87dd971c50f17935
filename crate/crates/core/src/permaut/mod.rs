//! Permutation groups and graph automorphisms.

mod analysis;
mod automorphism;
mod group;
mod perm;

pub use analysis::{
    cycle_type_census, find_arc_transitive_generators, find_transitive_generators, semiregular_elements,
    stabilizer_analysis, verify_subgroup_action, StabilizerAnalysis, DEFAULT_ELEMENT_BUDGET,
};
pub use automorphism::{
    automorphism_group, is_automorphism, search_automorphisms, AutomorphismSearch, DEFAULT_NODE_BUDGET,
    MAX_AUT_VERTICES,
};
pub use group::{PermGroup, StabChain, MAX_CHAIN_ENTRIES};
pub use perm::Permutation;
