//! Z₂ cohomology algebras of voxel boundary surfaces.
//!
//! The pipeline takes a binary voxel image, builds its cubical complex and
//! the boundary surface of that complex, simplifies the surface into a
//! polyhedral complex by removing non-critical vertices, and then computes
//! Betti numbers, representative cycles and cocycles, and the cup product
//! pairing `H¹ × H¹ → H²` using a closed-form diagonal on polygons.
//!
//! Every simplification step and every homology model is a chain
//! contraction whose defining identities can be checked exactly; see
//! [`ChainContraction::check`].
//!
//! The crate is `no_std` and only needs `alloc`. File formats, export and
//! the command line driver live in the `polycup` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod at_model;
pub mod complex;
pub mod contraction;
pub mod cubical;
pub mod cup;
pub mod diagonal;
mod error;
pub mod fixtures;
pub mod gf2;
pub mod rank;
pub mod simplify;
pub mod voxel;

pub use at_model::{betti, compute_at_model, dual_cocycle, transport_at_model, AtModel, DualCocycle};
pub use complex::{Cell, CellComplex, ComplexId, Differential, GradedSet, Violation};
pub use contraction::{compose_contractions, ChainContraction, IdentityViolation};
pub use cubical::{boundary_subcomplex, boundary_surface, build_cubical_complex};
pub use cup::{
    class_product, cup_matrix, pairing_rank, verify_structure, verify_structure_explicit, ClassProduct, CupPairing,
    StructureReport,
};
pub use diagonal::{aw_diagonal, aw_fan_oracle, polygon_diagonal, serre_diagonal_square, Diagonal};
pub use error::Error;
pub use gf2::{
    chain_add, evaluate, tensor_evaluate, CellId, CellSet, Chain, Cochain, MapDefault, SparseLinearMap, TensorChain,
};
pub use rank::rank_oracle;
pub use simplify::{
    find_critical_vertices, merge_along, remove_vertex, simplify, simplify_with, CriticalitySet, Removal,
    Simplification, SimplifyOptions, Termination,
};
pub use voxel::{adjacency_26, adjacency_6, VoxelImage};

/// Betti numbers `(b₀, b₁, b₂)` over Z₂.
pub type Betti = [usize; 3];
