//! Exact-arithmetic kernel for finite-dimensional multiplicative 3-Hom-Lie
//! algebras: validation, twisting, (generalized) representations, the graded
//! bracket on cochains, both coboundary operators and abelian extensions.

pub mod algebra;
pub mod cochain;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod rep;
pub mod report;

pub use algebra::{
    adjoint_rep, fundamental_bracket, twist_algebra, validate_filippov, validate_hom_algebra,
    validate_hom_leibniz, FundamentalObject, HomAlgebra,
};
pub use error::{Error, Result};
pub use linalg::{mat_apply, nullspace, rank, skew_lookup, Matrix, Scalar, SkewTensor2, SkewTensor3, Vector};
pub use rep::{
    conjugate_genrep, equivalent_genreps, generalized_semidirect, semidirect, twist_generalized_rep,
    twist_generalized_rep_preconditions, twist_representation, twist_representation_preconditions,
    validate_generalized_rep, validate_representation, EquivalenceWitness, GeneralizedRep, Representation,
};
pub use report::{Report, Violation};
pub use cochain::{
    cochain_of_bracket, cochain_space_basis, cocycle_space, cohomology_dims, compatible_subspace,
    ordinary_cocycle_space, delta_rho, differential_d, graded_bracket, graded_compose, is_canonical,
    lift_structure, CohomologyDims, CompatibilityConstraint, ComponentCochain2, DenseCochain, Flavor,
};
pub use extension::{
    build_extension_bracket, check_extension_equivalence, split_extension_data, validate_extension_algebra,
    validate_extension_triple, ExtensionData, ExtensionMorphism, SectionWitness,
};
