use alloc::string::String;

use crate::complex::ComplexId;
use crate::gf2::CellId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u8, right: u8 },

    #[error("cell {0} is not a live cell of the complex")]
    DeadCell(CellId),

    #[error("cell {0} still has live cofaces")]
    HasCofaces(CellId),

    #[error("boundary of a {0}-chain is undefined")]
    NoBoundary(u8),

    #[error("complex mismatch: expected state {expected}, found {found}")]
    ComplexMismatch { expected: ComplexId, found: ComplexId },

    #[error("cannot merge along {gamma}: {reason}")]
    MergePrecondition { gamma: CellId, reason: &'static str },

    #[error("cannot collapse {face} into {coface}: {reason}")]
    CollapsePrecondition { face: CellId, coface: CellId, reason: &'static str },

    #[error("cell {0} is not a homology generator of the model")]
    NotAGenerator(CellId),

    #[error("malformed polygon: {0}")]
    MalformedPolygon(String),

    #[error("unordered simplex: vertices must be strictly increasing")]
    UnorderedSimplex,

    #[error("cell {0} is not an axis-aligned unit square")]
    NotASquare(CellId),

    #[error("class index {index} out of range (b1 = {b1})")]
    ClassIndex { index: usize, b1: usize },

    #[error("image dimensions must be positive, got {0:?}")]
    EmptyGrid([u32; 3]),

    #[error("point {point:?} lies outside the {dims:?} grid")]
    OutOfBounds { point: [i64; 3], dims: [u32; 3] },
}
