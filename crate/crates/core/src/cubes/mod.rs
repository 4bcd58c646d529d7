//! Cubes and iterated cochain complexes: faces, degeneracies, the chain
//! differential, degenerate detection, normalization and simple complexes.

pub mod chain;
pub mod compare;
pub mod grid;
pub mod json;
pub mod ops;

use thiserror::Error;

use crate::exactalg::AlgError;
use crate::objects::ObjError;

pub use chain::{ChainElement, CubeChain, Generator};
pub use compare::{canonically_equal, cancels_canonically, compare_chains, compare_sums, untagged_key, Tier};
pub use grid::Grid;
pub use json::{ChainTermJson, GridJson};
pub use ops::{
    cube_from_sequence, degeneracy_chain, differential, face_chain, grid_differential, grid_direct_sum, is_degenerate,
    normalized_project, reduce, scatter, simple_complex, tensor_complex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("direction {direction} squares to a nonzero map at {vertex:?}")]
    NotAComplex { direction: usize, vertex: Vec<usize> },
    #[error("square in directions {directions:?} at {vertex:?} does not commute")]
    NotCommuting { directions: (usize, usize), vertex: Vec<usize> },
    #[error("strand in direction {direction} through {vertex:?} is not exact")]
    NotExact { direction: usize, vertex: Vec<usize> },
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Obj(#[from] ObjError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}
