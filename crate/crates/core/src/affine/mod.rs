//! Finite groups of torus automorphisms: torsion translations extended by
//! unimodular matrices, with closure, subgroup enumeration, Sylow theory,
//! and GL_n(Z)-conjugacy testing.

pub mod catalogue;
pub mod conjugacy;
mod element;
mod group;
pub mod json;
pub mod subgroups;

pub use catalogue::{CatalogueEntry, K9Family};
pub use conjugacy::{
    char_poly, contains_conjugate_subgroup, glnz_conjugate, group_invariants,
    h1_invariant_factors, verify_conjugation, ConjugacyVerdict, Distinction, GroupInvariants,
};
pub use element::GroupElement;
pub use group::{AffineGroup, DEFAULT_CLOSURE_CAP};
pub use json::{group_to_json_string, parse_group_json, ElementJson, GroupJson};
pub use subgroups::{
    abelian_subgroups, all_subgroups, conjugate_indices, cyclic_subgroups,
    dedup_up_to_conjugacy, normalizer_indices, sylow, sylow_indices,
};
