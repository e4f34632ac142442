//! Exact chain-level isoperimetry for finite cell complexes.
//!
//! The crate computes volumes of cellular chains, chain filling volumes with
//! verifying witnesses, chain isoperimetric profiles, quasi-equivalence fits
//! between sampled profiles, finite covering spaces, and filling volumes and
//! Dehn functions of finite group presentations. All arithmetic is exact.

pub mod complex;
pub mod dehn;
pub mod error;
pub mod filling;
pub mod group;
pub mod io;
pub mod matrix;
pub mod profile;
pub mod simplicial;
pub mod snf;

pub use complex::{boundary, homology_summary, l1_norm, Chain, ChainComplex, HomologySummary};
pub use dehn::{dehn_function, filling_volume_word, FVWordResult, FillLimits, WordFillStatus};
pub use error::{Error, Result};
pub use filling::{
    fill_volume, fill_volume_bruteforce, FillBudget, FillResult, FillStatus, Filler,
};
pub use group::{abelianized_chain, free_reduce, presentation_complex, Letter, Presentation, Word};
pub use matrix::{IntMatrix, SparseMatrix};
pub use profile::{
    chain_profile, quasi_bounded_fit, quasi_equivalent_fit, EntryStatus, FitGrid, ProfileEntry,
    ProfileTable, ProfileValue, QuasiFitWitness,
};
pub use simplicial::{
    barycentric_subdivide, build_cover, edge_path_presentation, to_chain_complex, Cover,
    PermutationAssignment, SimplicialComplex,
};
pub use snf::{smith_normal_form, solve_integer, SnfDecomposition};
