//! Exact integer tools for homogeneous linear systems over ℤ: normal forms,
//! kernel lattices, nontrivial and weak solvability with certificates, finite
//! presentations of abelian groups and their duals, avoidance homomorphisms,
//! and finite unsolvable-core searches.
//!
//! All arithmetic is on arbitrary-precision integers.

pub mod compactness;
pub mod error;
pub mod exactmat;
pub mod homlift;
pub mod json;
pub mod presentation;
pub mod solver;
pub mod system;

pub use num_bigint::BigInt;

pub use compactness::{
    gen_chain, gen_from_presentation, min_unsolvable_size, minimal_core, sample_unsolvable_size, verify_core,
    CoreReport, DEFAULT_SEARCH_BOUND,
};
pub use error::{Error, Result};
pub use exactmat::{
    hnf, kernel_basis, lattice_intersect, lattice_member, parse_matrix, rank, snf, HnfResult, IntMatrix, KernelBasis,
    SnfResult,
};
pub use homlift::{
    avoid_hom, avoid_hom_in, free_quotient_basis, nontrivial_solution_via_filtration, solve_via_filtration,
    validate_filtration, AvoidanceProblem, Constraint, FiltrationSolution, FreeQuotient, InfiniteDomain,
};
pub use json::JsonInt;
pub use presentation::{
    analyze, dual_basis, parse_presentation, parse_presentation_with_warnings, presentation_to_system,
    system_to_presentation, GroupInfo, Presentation,
};
pub use solver::{solve, solve_nontrivial, solve_weak, SolveReport, Status, UnsolvabilityCertificate};
pub use system::{parse_system, parse_system_with_warnings, Equation, Mode, System, Warning, Witness};
