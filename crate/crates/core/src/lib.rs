//! Finite-group toolkit for deciding whether `(G ≀ S_n, G ≀ S_{n-1})` is a
//! Gelfand pair.
//!
//! Two independent criteria are provided: commutativity of the double-coset
//! algebra ([`hecke`]) and multiplicity-freeness of the permutation character
//! ([`chartab`]). The [`combinatorics`] module predicts the decomposition of
//! the permutation character from the base group's irreducible degrees.

pub mod chartab;
pub mod combinatorics;
pub mod config;
pub mod error;
pub mod group;
pub mod hecke;
pub mod wreath;

pub use chartab::{
    character_table, character_table_with, decompose_induced_trivial, irrep_dimensions,
    is_gelfand_character, permutation_character, CharacterTable, ChartabOptions,
    InducedTrivialDecomposition,
};
pub use combinatorics::{
    branch_induce, extensions, induced_trivial_prediction, multipartitions, partitions_of,
    predicted_is_multiplicity_free, BranchTerm, BranchingPrediction, Multipartition, Partition,
};
pub use config::Limits;
pub use error::{GroupError, Result};
pub use group::{
    commutator_subgroup, conjugacy_classes, direct_product, make_cyclic, make_dihedral,
    make_symmetric, subgroup_from_generators, ConjugacyClassDecomposition, FiniteGroup,
    GroupElementId, GroupLaw, Permutation, SubgroupEmbedding,
};
pub use hecke::{
    double_cosets, is_commutative, is_gelfand_hecke, structure_constants, DoubleCosetDecomposition,
    HeckeStructureConstants, HeckeVerdict,
};
pub use wreath::{
    embed_wreath_subgroup, embed_wreath_subgroup_with_budget, wreath_inverse, wreath_product,
    wreath_product_with_budget, WreathElement, WreathGroup,
};
